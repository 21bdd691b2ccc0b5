//! Command-line front end: capacity/route/ratio queries on network files,
//! worst-case example generation, seeded verification runs with CSV
//! output, and MIMO subchannel selection.
//!
//! Exit codes: 0 on success, 1 when a verification run records at least
//! one violation, 2 on usage or input errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use relaycap::constructions::{
    construct_general_tight, construct_layered_tight, save_tight_example,
};
use relaycap::cutset::{approx_capacity_with_cap, DEFAULT_EXHAUSTIVE_CAP};
use relaycap::experiments::{
    csv_string, load_channel, run_mimo_verify, run_stage_count_verify,
    run_submatrix_identity_verify, run_verify, EnsembleSpec, Fading, MimoCheck, Topology,
    TrialRecord, VerifySummary,
};
use relaycap::mimo_select::{best_subchannel_bruteforce, greedy_subchannel};
use relaycap::network::load_network;
use relaycap::routing::{best_route, check_route_guarantee_with_cap};

#[derive(Parser)]
#[command(
    name = "relaycap",
    version,
    about = "Cut-set capacity, best routes and selection guarantees for Gaussian relay networks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate capacity of a network file and one minimum cut.
    Capacity {
        /// Network JSON file.
        #[arg(long)]
        net: PathBuf,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Override the exhaustive enumeration cap.
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        max_relays: usize,
    },
    /// Best route of a network file and its bottleneck capacity.
    Route {
        #[arg(long)]
        net: PathBuf,
    },
    /// Best-route share of the approximate capacity, against the
    /// guaranteed floor.
    Ratio {
        #[arg(long)]
        net: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        max_relays: usize,
    },
    /// Generate a worst-case example network.
    Construct {
        #[command(subcommand)]
        family: ConstructCommand,
    },
    /// Re-verify a guarantee over a seeded random ensemble; emits CSV.
    Verify {
        #[command(subcommand)]
        suite: VerifyCommand,
    },
    /// Select a MIMO subchannel from a channel file.
    MimoSelect(MimoSelectArgs),
}

#[derive(Subcommand)]
enum ConstructCommand {
    /// Arbitrary-topology family: capacity A(floor(N/2)+1), every route
    /// capped at A.
    General {
        /// Number of relays.
        #[arg(long)]
        n: usize,
        /// Weak-link capacity A in bits.
        #[arg(long)]
        a: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Layered family: capacity W, every route capped at the guaranteed
    /// fraction of W.
    Layered {
        /// Relay layers L.
        #[arg(long)]
        l: usize,
        /// Relays per layer N_L.
        #[arg(long)]
        nl: usize,
        /// Design capacity W in bits.
        #[arg(long)]
        w: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct VerifyIo {
    /// Trials to run.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Ensemble seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Also write the records as a JSON array.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Route guarantee on random full-topology networks.
    Thm1 {
        /// Number of relays.
        #[arg(long)]
        n: usize,
        /// Rayleigh scale of the gains.
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[command(flatten)]
        io: VerifyIo,
    },
    /// Route guarantee on random layered networks.
    Thm2 {
        /// Relay layers L.
        #[arg(long)]
        l: usize,
        /// Relays per layer N_L.
        #[arg(long)]
        nl: usize,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[command(flatten)]
        io: VerifyIo,
    },
    /// Best-subchannel lower bound on random channels.
    Thm3 {
        #[arg(long)]
        nt: usize,
        #[arg(long)]
        nr: usize,
        #[command(flatten)]
        io: VerifyIo,
    },
    /// Incremental receiver-selection bounds on random channels.
    Lemma1 {
        #[arg(long)]
        nt: usize,
        #[arg(long)]
        nr: usize,
        #[command(flatten)]
        io: VerifyIo,
    },
    /// Gap-free greedy selection share on random channels, with per-step
    /// checks.
    Lemma2 {
        #[arg(long)]
        nt: usize,
        #[arg(long)]
        nr: usize,
        #[command(flatten)]
        io: VerifyIo,
    },
    /// Exhaustive stage-count bound over all layered shapes up to a relay
    /// budget (deterministic; trials and seed are ignored).
    Prop1 {
        /// Check every (L, N_L) with L * N_L at most this.
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[command(flatten)]
        io: VerifyIo,
    },
    /// Principal-submatrix identities on random Gram matrices.
    Prop2 {
        /// Matrix order.
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[command(flatten)]
        io: VerifyIo,
    },
}

#[derive(Args)]
struct MimoSelectArgs {
    /// Transmit antennas of the channel (must match the file).
    #[arg(long)]
    nt: usize,
    /// Receive antennas of the channel (must match the file).
    #[arg(long)]
    nr: usize,
    /// Transmit antennas to keep.
    #[arg(long)]
    kt: usize,
    /// Receive antennas to keep.
    #[arg(long)]
    kr: usize,
    /// Exhaustive search over all subsets.
    #[arg(long, conflicts_with = "greedy")]
    bruteforce: bool,
    /// Greedy one-antenna-at-a-time pruning.
    #[arg(long)]
    greedy: bool,
    /// Channel JSON file.
    #[arg(long)]
    channel: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> relaycap::Result<usize> {
    match cli.command {
        Command::Capacity {
            net,
            json,
            max_relays,
        } => {
            let network = load_network(&fs::read(net)?)?;
            let (capacity, cut) = approx_capacity_with_cap(&network, max_relays)?;
            if json {
                println!(
                    "{}",
                    serde_json::json!({
                        "capacity_bits": capacity.bits(),
                        "min_cut": cut.members(),
                    })
                );
            } else {
                println!("capacity: {} bits", capacity.bits());
                println!("min cut: {:?}", cut.members());
            }
            Ok(0)
        }
        Command::Route { net } => {
            let network = load_network(&fs::read(net)?)?;
            let (path, bits) = best_route(&network)?;
            println!("route: {:?}", path.nodes());
            println!("bottleneck: {} bits", bits.bits());
            Ok(0)
        }
        Command::Ratio { net, max_relays } => {
            let network = load_network(&fs::read(net)?)?;
            let report = check_route_guarantee_with_cap(&network, max_relays)?;
            println!("best route: {} bits", report.best_route_bits);
            println!("approximate capacity: {} bits", report.approx_capacity_bits);
            println!("achieved fraction: {}", report.fraction_achieved());
            println!(
                "guaranteed floor: {} * capacity - {} bits = {} bits",
                report.fraction,
                report.additive_gap_bits,
                report.bound_bits()
            );
            println!("satisfied: {}", report.satisfied);
            Ok(if report.satisfied { 0 } else { 1 })
        }
        Command::Construct { family } => {
            let (example, out) = match family {
                ConstructCommand::General { n, a, out } => (construct_general_tight(n, a)?, out),
                ConstructCommand::Layered { l, nl, w, out } => {
                    (construct_layered_tight(l, nl, w)?, out)
                }
            };
            fs::write(&out, save_tight_example(&example))?;
            println!(
                "wrote {} ({}, capacity {} bits, route bound {} bits)",
                out.display(),
                example.family.tag(),
                example.designed_capacity_bits.bits(),
                example.designed_route_bound_bits.bits()
            );
            Ok(0)
        }
        Command::Verify { suite } => {
            let (summary, records, io) = run_suite(suite)?;
            emit_records(&records, &io)?;
            eprintln!(
                "records: {}  violations: {}  min fraction: {}  mean fraction: {}  worst slack: {} bits",
                summary.records,
                summary.violations,
                summary.min_fraction,
                summary.mean_fraction,
                summary.worst_slack_bits
            );
            Ok(summary.violations)
        }
        Command::MimoSelect(args) => {
            let h = load_channel(&fs::read(&args.channel)?)?;
            if h.cols() != args.nt || h.rows() != args.nr {
                return Err(relaycap::Error::DimensionMismatch(format!(
                    "channel file is {}x{} (rows x cols), flags say {}x{}",
                    h.rows(),
                    h.cols(),
                    args.nr,
                    args.nt
                )));
            }
            if args.bruteforce == args.greedy {
                return Err(relaycap::Error::InvalidEnsemble(
                    "pass exactly one of --bruteforce and --greedy".into(),
                ));
            }
            let selection = if args.bruteforce {
                best_subchannel_bruteforce(&h, args.kt, args.kr)?
            } else {
                greedy_subchannel(&h, args.kt, args.kr)?.selection
            };
            println!("tx antennas: {:?}", selection.tx_indices.as_slice());
            println!("rx antennas: {:?}", selection.rx_indices.as_slice());
            println!("capacity: {} bits", selection.capacity_bits.bits());
            Ok(0)
        }
    }
}

fn run_suite(
    suite: VerifyCommand,
) -> relaycap::Result<(VerifySummary, Vec<TrialRecord>, VerifyIo)> {
    match suite {
        VerifyCommand::Thm1 { n, scale, io } => {
            let spec = EnsembleSpec {
                topology: Topology::Full,
                num_relays: n,
                fading: Fading::Rayleigh { scale },
                trials: io.trials,
                seed: io.seed,
            };
            let (summary, records) = run_verify(&spec)?;
            Ok((summary, records, io))
        }
        VerifyCommand::Thm2 { l, nl, scale, io } => {
            let spec = EnsembleSpec {
                topology: Topology::Layered {
                    layers: l,
                    per_layer: nl,
                },
                num_relays: l * nl,
                fading: Fading::Rayleigh { scale },
                trials: io.trials,
                seed: io.seed,
            };
            let (summary, records) = run_verify(&spec)?;
            Ok((summary, records, io))
        }
        VerifyCommand::Thm3 { nt, nr, io } => {
            let (summary, records) =
                run_mimo_verify(nt, nr, io.trials, io.seed, MimoCheck::SubchannelBound)?;
            Ok((summary, records, io))
        }
        VerifyCommand::Lemma1 { nt, nr, io } => {
            let (summary, records) =
                run_mimo_verify(nt, nr, io.trials, io.seed, MimoCheck::ReceiverBounds)?;
            Ok((summary, records, io))
        }
        VerifyCommand::Lemma2 { nt, nr, io } => {
            let (summary, records) =
                run_mimo_verify(nt, nr, io.trials, io.seed, MimoCheck::FractionBound)?;
            Ok((summary, records, io))
        }
        VerifyCommand::Prop1 { max_n, io } => {
            let (summary, records) = run_stage_count_verify(max_n)?;
            Ok((summary, records, io))
        }
        VerifyCommand::Prop2 { n, io } => {
            let (summary, records) = run_submatrix_identity_verify(n, io.trials, io.seed, 1e-8)?;
            Ok((summary, records, io))
        }
    }
}

fn emit_records(records: &[TrialRecord], io: &VerifyIo) -> relaycap::Result<()> {
    let csv = csv_string(records);
    match &io.csv {
        Some(path) => fs::write(path, csv)?,
        None => print!("{csv}"),
    }
    if let Some(path) = &io.json {
        let mut bytes = serde_json::to_vec_pretty(records)?;
        bytes.push(b'\n');
        fs::write(path, bytes)?;
    }
    Ok(())
}
