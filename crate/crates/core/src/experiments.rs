//! Seeded random ensembles and the verification harness behind the
//! `verify` subcommands: build networks or channels, recompute the
//! quantities each guarantee relates, and count violations (expected:
//! zero). Records serialize to a fixed CSV schema and to JSON.

use std::io::Write;

use serde::Serialize;

use crate::constructions::construct_layered_tight;
use crate::cutset::{approx_capacity_with_cap, t_max, t_of_cut, Cut, DEFAULT_EXHAUSTIVE_CAP};
use crate::error::{Error, Result};
use crate::linalg::{identity_plus_gram, mimo_capacity, verify_submatrix_identity, ComplexMatrix};
use crate::mimo_select::{
    best_subchannel_bruteforce, greedy_subchannel, receiver_selection_bounds, selection_fraction,
    subchannel_lower_bound,
};
use crate::network::Network;
use crate::rng::CounterRng;
use crate::routing::{best_route, layered_path_guarantee, single_path_guarantee};

/// Tolerance (bits) for inequality checks; matches the capacity-equality
/// tolerance used throughout.
const SLACK: f64 = 1e-9;

/// Network shape of a random ensemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topology {
    /// Any node may reach any other (except into the source and out of
    /// the destination).
    Full,
    /// Links only between successive layers.
    Layered { layers: usize, per_layer: usize },
}

/// Gain distribution of a random ensemble.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Fading {
    /// Circularly symmetric complex Gaussian with the given standard
    /// deviation per link.
    Rayleigh { scale: f64 },
    /// Fixed magnitude sqrt(10^(db/10)) with a uniformly random phase.
    FixedSnr { db: f64 },
}

/// A reproducible Monte Carlo ensemble.
#[derive(Clone, Copy, Debug)]
pub struct EnsembleSpec {
    pub topology: Topology,
    pub num_relays: usize,
    pub fading: Fading,
    pub trials: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::InvalidEnsemble("trials must be at least 1".into()));
        }
        if self.num_relays < 1 {
            return Err(Error::InvalidEnsemble(
                "num_relays must be at least 1".into(),
            ));
        }
        if let Topology::Layered { layers, per_layer } = self.topology {
            if layers < 1 || per_layer < 1 || layers * per_layer != self.num_relays {
                return Err(Error::InvalidEnsemble(format!(
                    "layered spec L={layers}, N_L={per_layer} does not cover {} relays",
                    self.num_relays
                )));
            }
        }
        match self.fading {
            Fading::Rayleigh { scale } => {
                if !scale.is_finite() || scale < 0.0 {
                    return Err(Error::InvalidEnsemble(format!(
                        "Rayleigh scale must be finite and nonnegative, got {scale}"
                    )));
                }
            }
            Fading::FixedSnr { db } => {
                if !db.is_finite() {
                    return Err(Error::InvalidEnsemble("SNR must be finite".into()));
                }
            }
        }
        Ok(())
    }
}

/// Draws the network of one trial. The gain of every allowed link is a
/// pure function of (seed, trial, link position), so trials may be
/// generated in any order and the same (seed, trial) always produces the
/// same network.
pub fn random_network(spec: &EnsembleSpec, trial: usize) -> Result<Network> {
    spec.validate()?;
    let rng = CounterRng::new(spec.seed, trial as u64);
    let mut net = match spec.topology {
        Topology::Full => Network::new(spec.num_relays)?,
        Topology::Layered { layers, per_layer } => Network::new_layered(layers, per_layer)?,
    };
    let nodes = net.num_nodes();
    let layering = net.layering();
    let allowed = move |tx: usize, rx: usize| -> bool {
        if tx == rx || rx == 0 || tx == nodes - 1 {
            return false;
        }
        match layering {
            Some(layers) => layers.layer_of(rx) == layers.layer_of(tx) + 1,
            None => true,
        }
    };
    for tx in 0..nodes {
        for rx in 0..nodes {
            if !allowed(tx, rx) {
                continue;
            }
            let counter = (tx * nodes + rx) as u64;
            let gain = match spec.fading {
                Fading::Rayleigh { scale } => rng.complex_gaussian(counter, scale),
                Fading::FixedSnr { db } => {
                    let magnitude = 10.0_f64.powf(db / 10.0).sqrt();
                    rng.uniform_phase(2 * counter).scale(magnitude)
                }
            };
            net.set_gain(tx, rx, gain)?;
        }
    }
    Ok(net)
}

/// One verification record. The CSV schema is fixed:
/// `trial,cap_bits,route_bits,fraction,bound_bits,satisfied`. For MIMO
/// checks `cap_bits` is the full-channel capacity and `route_bits` the
/// achieved selection; for the stage-count check they hold the exhaustive
/// and designed stage counts; for the submatrix-identity check they hold
/// the two residuals.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TrialRecord {
    pub trial_index: usize,
    pub approx_capacity_bits: f64,
    pub best_route_bits: f64,
    pub fraction_achieved: f64,
    pub theorem_bound_bits: f64,
    pub satisfied: bool,
}

impl TrialRecord {
    pub const CSV_HEADER: &'static str = "trial,cap_bits,route_bits,fraction,bound_bits,satisfied";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.trial_index,
            self.approx_capacity_bits,
            self.best_route_bits,
            self.fraction_achieved,
            self.theorem_bound_bits,
            self.satisfied
        )
    }
}

/// Writes the fixed-header CSV for a record stream.
pub fn write_csv<W: Write>(records: &[TrialRecord], mut out: W) -> Result<()> {
    writeln!(out, "{}", TrialRecord::CSV_HEADER)?;
    for record in records {
        writeln!(out, "{}", record.csv_row())?;
    }
    Ok(())
}

pub fn csv_string(records: &[TrialRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV is ASCII")
}

/// Aggregate outcome of a verification run.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct VerifySummary {
    pub records: usize,
    pub violations: usize,
    pub min_fraction: f64,
    pub mean_fraction: f64,
    /// Smallest achieved-minus-bound margin seen, in bits.
    pub worst_slack_bits: f64,
}

fn summarize(records: &[TrialRecord]) -> VerifySummary {
    let mut violations = 0;
    let mut min_fraction = f64::INFINITY;
    let mut sum_fraction = 0.0;
    let mut worst_slack = f64::INFINITY;
    for r in records {
        if !r.satisfied {
            violations += 1;
        }
        min_fraction = min_fraction.min(r.fraction_achieved);
        sum_fraction += r.fraction_achieved;
        worst_slack = worst_slack.min(r.best_route_bits - r.theorem_bound_bits);
    }
    VerifySummary {
        records: records.len(),
        violations,
        min_fraction,
        mean_fraction: if records.is_empty() {
            f64::NAN
        } else {
            sum_fraction / records.len() as f64
        },
        worst_slack_bits: worst_slack,
    }
}

/// Runs trials in parallel chunks and reassembles the records in trial
/// order. Each trial is a pure function of (spec, trial index).
fn run_trials<F>(trials: usize, run: F) -> Result<Vec<TrialRecord>>
where
    F: Fn(usize) -> Result<Vec<TrialRecord>> + Sync,
{
    let threads = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(trials.max(1));
    let per_trial: Vec<Vec<TrialRecord>> = if threads < 2 || trials < 32 {
        (0..trials).map(&run).collect::<Result<_>>()?
    } else {
        let chunk = trials.div_ceil(threads);
        let results: Vec<Result<Vec<Vec<TrialRecord>>>> = std::thread::scope(|scope| {
            let run = &run;
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    scope.spawn(move || {
                        let from = t * chunk;
                        let to = ((t + 1) * chunk).min(trials);
                        (from..to).map(run).collect::<Result<Vec<_>>>()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let mut all = Vec::with_capacity(trials);
        for r in results {
            all.extend(r?);
        }
        all
    };
    let mut records = Vec::new();
    let mut index = 0;
    for group in per_trial {
        for mut record in group {
            record.trial_index = index;
            index += 1;
            records.push(record);
        }
    }
    Ok(records)
}

/// Route-guarantee verification over a random ensemble: per trial, the
/// approximate capacity, the best route, and the guaranteed floor
/// (layered when the topology is layered, general otherwise).
pub fn run_verify(spec: &EnsembleSpec) -> Result<(VerifySummary, Vec<TrialRecord>)> {
    spec.validate()?;
    if spec.num_relays > DEFAULT_EXHAUSTIVE_CAP {
        return Err(Error::TooManyRelays {
            num_relays: spec.num_relays,
            cap: DEFAULT_EXHAUSTIVE_CAP,
        });
    }
    let (fraction, gap) = match spec.topology {
        Topology::Layered { layers, per_layer } => layered_path_guarantee(layers, per_layer),
        Topology::Full => single_path_guarantee(spec.num_relays),
    };
    let records = run_trials(spec.trials, |trial| {
        let net = random_network(spec, trial)?;
        let (capacity, _) = approx_capacity_with_cap(&net, DEFAULT_EXHAUSTIVE_CAP)?;
        let (_, route) = best_route(&net)?;
        let bound = fraction * capacity.bits() - gap;
        Ok(vec![TrialRecord {
            trial_index: trial,
            approx_capacity_bits: capacity.bits(),
            best_route_bits: route.bits(),
            fraction_achieved: if capacity.bits() > 0.0 {
                route.bits() / capacity.bits()
            } else {
                0.0
            },
            theorem_bound_bits: bound,
            satisfied: route.bits() >= bound - SLACK,
        }])
    })?;
    Ok((summarize(&records), records))
}

/// Which family of MIMO selection bounds to verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MimoCheck {
    /// Brute-force best subchannel against the min-dimension-ratio bound,
    /// for every (k_t, k_r).
    SubchannelBound,
    /// Brute-force receiver selection (all transmitters kept) against the
    /// two incremental bounds, for every k_r.
    ReceiverBounds,
    /// Greedy pruning against the gap-free k_t k_r / (n_t n_r) share,
    /// including the per-step (m-1)/m checks, for every (k_t, k_r).
    FractionBound,
}

/// Cap on the antenna counts accepted by [`run_mimo_verify`], keeping the
/// full brute-force search cheap.
pub const MIMO_VERIFY_CAP: usize = 5;

fn random_channel(rng: &CounterRng, n_r: usize, n_t: usize) -> ComplexMatrix {
    let mut h = ComplexMatrix::zeros(n_r, n_t);
    for r in 0..n_r {
        for c in 0..n_t {
            h.set(r, c, rng.complex_gaussian((r * n_t + c) as u64, 1.0));
        }
    }
    h
}

/// MIMO selection verification over random channels with i.i.d. unit
/// Gaussian entries.
pub fn run_mimo_verify(
    n_t: usize,
    n_r: usize,
    trials: usize,
    seed: u64,
    check: MimoCheck,
) -> Result<(VerifySummary, Vec<TrialRecord>)> {
    if n_t < 1 || n_r < 1 || n_t > MIMO_VERIFY_CAP || n_r > MIMO_VERIFY_CAP {
        return Err(Error::DimensionMismatch(format!(
            "antenna counts must lie in 1..={MIMO_VERIFY_CAP}, got {n_t}x{n_r}"
        )));
    }
    if trials < 1 {
        return Err(Error::InvalidEnsemble("trials must be at least 1".into()));
    }
    let records = run_trials(trials, |trial| {
        let rng = CounterRng::new(seed, trial as u64);
        let h = random_channel(&rng, n_r, n_t);
        let capacity = mimo_capacity(&h).bits();
        let mut out = Vec::new();
        match check {
            MimoCheck::SubchannelBound => {
                for k_t in 1..=n_t {
                    for k_r in 1..=n_r {
                        let best = best_subchannel_bruteforce(&h, k_t, k_r)?;
                        let achieved = best.capacity_bits.bits();
                        let bound = subchannel_lower_bound(capacity, n_t, n_r, k_t, k_r);
                        out.push(TrialRecord {
                            trial_index: 0,
                            approx_capacity_bits: capacity,
                            best_route_bits: achieved,
                            fraction_achieved: if capacity > 0.0 {
                                achieved / capacity
                            } else {
                                0.0
                            },
                            theorem_bound_bits: bound,
                            satisfied: achieved >= bound - SLACK,
                        });
                    }
                }
            }
            MimoCheck::ReceiverBounds => {
                // orient so the transmit side is the smaller one
                let (h, n_t, n_r) = if n_t <= n_r {
                    (h, n_t, n_r)
                } else {
                    (h.conj_transpose(), n_r, n_t)
                };
                for k_r in 1..=n_r {
                    let best = best_subchannel_bruteforce(&h, n_t, k_r)?;
                    let achieved = best.capacity_bits.bits();
                    let bounds = receiver_selection_bounds(capacity, n_t, n_r, k_r)?;
                    let mut ok = achieved >= bounds.lower_bits - SLACK;
                    if let Some(upper) = bounds.upper_bits {
                        ok &= achieved <= upper + SLACK;
                    }
                    out.push(TrialRecord {
                        trial_index: 0,
                        approx_capacity_bits: capacity,
                        best_route_bits: achieved,
                        fraction_achieved: if capacity > 0.0 {
                            achieved / capacity
                        } else {
                            0.0
                        },
                        theorem_bound_bits: bounds.lower_bits,
                        satisfied: ok,
                    });
                }
            }
            MimoCheck::FractionBound => {
                for k_t in 1..=n_t {
                    for k_r in 1..=n_r {
                        let greedy = greedy_subchannel(&h, k_t, k_r)?;
                        let achieved = greedy.selection.capacity_bits.bits();
                        let bound = selection_fraction(n_t, n_r, k_t, k_r) * capacity;
                        let mut ok = achieved >= bound - SLACK;
                        for step in &greedy.steps {
                            let m = step.antennas_before as f64;
                            ok &= step.capacity_after_bits
                                >= (m - 1.0) / m * step.capacity_before_bits - SLACK;
                        }
                        out.push(TrialRecord {
                            trial_index: 0,
                            approx_capacity_bits: capacity,
                            best_route_bits: achieved,
                            fraction_achieved: if capacity > 0.0 {
                                achieved / capacity
                            } else {
                                0.0
                            },
                            theorem_bound_bits: bound,
                            satisfied: ok,
                        });
                    }
                }
            }
        }
        Ok(out)
    })?;
    Ok((summarize(&records), records))
}

/// Exhaustive stage-count verification: for every layered shape with
/// L * N_L at most `max_relays`, the maximum of the stage count over all
/// cuts stays at or below the closed-form bound. `route_bits` carries the
/// stage count of the generated worst-case cut for that shape.
pub fn run_stage_count_verify(max_relays: usize) -> Result<(VerifySummary, Vec<TrialRecord>)> {
    let mut records = Vec::new();
    let mut index = 0;
    for layers in 1..=max_relays {
        for per_layer in 1..=max_relays / layers {
            let net = Network::new_layered(layers, per_layer)?;
            let n = net.num_relays();
            let mut max_t = 0usize;
            for mask in 0..(1u64 << n) {
                let cut = Cut::from_relay_mask(mask, n);
                max_t = max_t.max(t_of_cut(&net, &cut)?);
            }
            let bound = t_max(layers, per_layer);
            let designed = construct_layered_tight(layers, per_layer, 12.0)?;
            let designed_t = t_of_cut(&designed.network, &designed.designed_cut)?;
            records.push(TrialRecord {
                trial_index: index,
                approx_capacity_bits: max_t as f64,
                best_route_bits: designed_t as f64,
                fraction_achieved: max_t as f64 / bound as f64,
                theorem_bound_bits: bound as f64,
                satisfied: max_t <= bound,
            });
            index += 1;
        }
    }
    Ok((summarize(&records), records))
}

/// Random verification of the principal-submatrix identities on matrices
/// I + H H^dagger with i.i.d. Gaussian H, for every subset size. For each
/// record, `cap_bits` holds the polynomial residual, `route_bits` the
/// scalar residual and `bound_bits` the allowed residual at the reported
/// scale.
pub fn run_submatrix_identity_verify(
    order: usize,
    trials: usize,
    seed: u64,
    rel_tol: f64,
) -> Result<(VerifySummary, Vec<TrialRecord>)> {
    if order < 1 {
        return Err(Error::DimensionMismatch("order must be at least 1".into()));
    }
    if trials < 1 {
        return Err(Error::InvalidEnsemble("trials must be at least 1".into()));
    }
    let records = run_trials(trials, |trial| {
        let rng = CounterRng::new(seed, trial as u64);
        let h = random_channel(&rng, order, order);
        let a = identity_plus_gram(&h);
        let mut out = Vec::new();
        for k in 1..=order {
            let report = verify_submatrix_identity(&a, k)?;
            let allowed = rel_tol * report.scale;
            out.push(TrialRecord {
                trial_index: 0,
                approx_capacity_bits: report.poly_residual,
                best_route_bits: report.scalar_residual,
                fraction_achieved: report.poly_residual.max(report.scalar_residual) / report.scale,
                theorem_bound_bits: allowed,
                satisfied: report.within(rel_tol),
            });
        }
        Ok(out)
    })?;
    Ok((summarize(&records), records))
}

/// Channel file schema: row-major complex entries.
#[derive(Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelDocument {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

/// Parses a channel document: `{"rows": n_r, "cols": n_t, "entries":
/// [[re, im], ...]}` in row-major order.
pub fn load_channel(bytes: &[u8]) -> Result<ComplexMatrix> {
    let doc: ChannelDocument = serde_json::from_slice(bytes)?;
    if doc.rows < 1 || doc.cols < 1 {
        return Err(Error::InvalidDocument(
            "a channel needs at least one antenna per side".into(),
        ));
    }
    if doc.entries.len() != doc.rows * doc.cols {
        return Err(Error::InvalidDocument(format!(
            "expected {} entries for a {}x{} channel, got {}",
            doc.rows * doc.cols,
            doc.rows,
            doc.cols,
            doc.entries.len()
        )));
    }
    let mut data = Vec::with_capacity(doc.entries.len());
    for [re, im] in doc.entries {
        data.push(
            crate::complex::Complex::new(re, im)
                .map_err(|e| Error::InvalidDocument(e.to_string()))?,
        );
    }
    ComplexMatrix::from_rows(doc.rows, doc.cols, data)
}

/// Serializes a channel in the channel document schema.
pub fn save_channel(h: &ComplexMatrix) -> Vec<u8> {
    let entries: Vec<[f64; 2]> = (0..h.rows())
        .flat_map(|r| (0..h.cols()).map(move |c| (r, c)))
        .map(|(r, c)| {
            let z = h.get(r, c);
            [z.re(), z.im()]
        })
        .collect();
    let doc = ChannelDocument {
        rows: h.rows(),
        cols: h.cols(),
        entries,
    };
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("channel document serializes");
    bytes.push(b'\n');
    bytes
}
