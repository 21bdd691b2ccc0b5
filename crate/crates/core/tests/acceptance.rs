//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines for passing criteria too.

use relaycap::combin::combinations;
use relaycap::complex::Complex;
use relaycap::constructions::{
    construct_general_tight, construct_layered_tight, verify_tight_example,
};
use relaycap::cutset::{cut_value, t_max, t_of_cut, Cut};
use relaycap::experiments::{
    run_mimo_verify, run_stage_count_verify, run_submatrix_identity_verify, run_verify,
    EnsembleSpec, Fading, MimoCheck, Topology,
};
use relaycap::linalg::{mimo_capacity, ComplexMatrix};
use relaycap::mimo_select::{
    best_subchannel_bruteforce, make_allones_channel, make_parallel_channel, selection_fraction,
};
use relaycap::rng::CounterRng;
use relaycap::routing::{
    best_route, enumerate_paths, layered_path_guarantee, path_capacity, single_path_guarantee,
};

fn criterion(number: usize, label: &str, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("[PASS] criterion {number}: {label}"),
        Err(detail) => {
            println!("[FAIL] criterion {number}: {label} - {detail}");
            panic!("criterion {number} failed: {detail}");
        }
    }
}

fn ensure(ok: bool, detail: impl Fn() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

#[test]
fn criterion_01_general_tight_constructions() {
    criterion(
        1,
        "general tight constructions achieve capacity floor(N/2)+1 with unit routes",
        || {
            for n in 3..=9usize {
                let example = construct_general_tight(n, 1.0).map_err(|e| format!("N={n}: {e}"))?;
                let report = verify_tight_example(&example).map_err(|e| format!("N={n}: {e}"))?;
                let expected = (n / 2 + 1) as f64;
                ensure(
                    (report.recomputed_capacity_bits - expected).abs() <= 1e-9,
                    || {
                        format!(
                            "N={n}: capacity {} != {expected}",
                            report.recomputed_capacity_bits
                        )
                    },
                )?;
                ensure(report.best_route_bits == 1.0, || {
                    format!(
                        "N={n}: best route {} != 1.0 exactly",
                        report.best_route_bits
                    )
                })?;
                let achieved = report.best_route_bits / report.recomputed_capacity_bits;
                let fraction = single_path_guarantee(n).0;
                ensure(achieved == fraction, || {
                    format!("N={n}: fraction {achieved} != {fraction} exactly")
                })?;
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_02_layered_tight_constructions() {
    criterion(
        2,
        "layered tight constructions achieve capacity W with routes at the exact fraction",
        || {
            for (l, nl) in [(1, 4), (2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (5, 2)] {
                let example =
                    construct_layered_tight(l, nl, 12.0).map_err(|e| format!("({l},{nl}): {e}"))?;
                let report =
                    verify_tight_example(&example).map_err(|e| format!("({l},{nl}): {e}"))?;
                ensure(
                    (report.recomputed_capacity_bits - 12.0).abs() <= 1e-9,
                    || {
                        format!(
                            "({l},{nl}): capacity {} != 12",
                            report.recomputed_capacity_bits
                        )
                    },
                )?;
                let fraction = layered_path_guarantee(l, nl).0;
                let expected_route = fraction * 12.0;
                ensure(report.best_route_bits == expected_route, || {
                    format!(
                        "({l},{nl}): best route {} != {expected_route} exactly",
                        report.best_route_bits
                    )
                })?;
            }
            // fraction numerology of the larger shapes
            ensure(layered_path_guarantee(3, 10).0 == 1.0 / 12.0, || {
                "layered (3,10) fraction is not 1/12".to_string()
            })?;
            ensure(layered_path_guarantee(6, 5).0 == 1.0 / 16.0, || {
                "layered (6,5) fraction is not 1/16".to_string()
            })?;
            ensure(single_path_guarantee(30).0 == 1.0 / 16.0, || {
                "general N=30 fraction is not 1/16".to_string()
            })?;
            Ok(())
        },
    );
}

#[test]
fn criterion_03_route_guarantee_random_full_networks() {
    criterion(
        3,
        "route guarantee holds on 1000 random full networks per scale in {0.1, 1, 10}",
        || {
            for (which, scale) in [0.1, 1.0, 10.0].into_iter().enumerate() {
                for n in 1..=8usize {
                    let spec = EnsembleSpec {
                        topology: Topology::Full,
                        num_relays: n,
                        fading: Fading::Rayleigh { scale },
                        trials: 125,
                        seed: 0x5eed_0003 + (1000 * which + n) as u64,
                    };
                    let (summary, _) =
                        run_verify(&spec).map_err(|e| format!("scale {scale} N={n}: {e}"))?;
                    ensure(summary.violations == 0, || {
                        format!(
                            "scale {scale} N={n}: {} violations, worst slack {} bits",
                            summary.violations, summary.worst_slack_bits
                        )
                    })?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_04_route_guarantee_random_layered_networks() {
    criterion(
        4,
        "layered route guarantee holds on 1000 random networks per shape with L*N_L <= 9",
        || {
            for l in 1..=9usize {
                for nl in 1..=9 / l {
                    let spec = EnsembleSpec {
                        topology: Topology::Layered {
                            layers: l,
                            per_layer: nl,
                        },
                        num_relays: l * nl,
                        fading: Fading::Rayleigh { scale: 1.0 },
                        trials: 1000,
                        seed: 0x5eed_0004 + (l * 16 + nl) as u64,
                    };
                    let (summary, _) = run_verify(&spec).map_err(|e| format!("({l},{nl}): {e}"))?;
                    ensure(summary.violations == 0, || {
                        format!(
                            "({l},{nl}): {} violations, worst slack {} bits",
                            summary.violations, summary.worst_slack_bits
                        )
                    })?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_05_selection_bounds_random_channels() {
    criterion(
        5,
        "selection bounds hold on 200 random channels per shape up to 5x5",
        || {
            for n_t in 1..=5usize {
                for n_r in 1..=5usize {
                    let seed = 0x5eed_0005 + (n_t * 8 + n_r) as u64;
                    for check in [
                        MimoCheck::SubchannelBound,
                        MimoCheck::ReceiverBounds,
                        MimoCheck::FractionBound,
                    ] {
                        let (summary, _) = run_mimo_verify(n_t, n_r, 200, seed, check)
                            .map_err(|e| format!("{n_t}x{n_r} {check:?}: {e}"))?;
                        ensure(summary.violations == 0, || {
                            format!(
                                "{n_t}x{n_r} {check:?}: {} violations, worst slack {} bits",
                                summary.violations, summary.worst_slack_bits
                            )
                        })?;
                    }
                    // the gap-free share also holds for the exact optimum
                    for trial in 0..200u64 {
                        let rng = CounterRng::new(seed, trial);
                        let mut h = ComplexMatrix::zeros(n_r, n_t);
                        for r in 0..n_r {
                            for c in 0..n_t {
                                h.set(r, c, rng.complex_gaussian((r * n_t + c) as u64, 1.0));
                            }
                        }
                        let capacity = mimo_capacity(&h).bits();
                        for k_t in 1..=n_t {
                            for k_r in 1..=n_r {
                                let best = best_subchannel_bruteforce(&h, k_t, k_r)
                                    .map_err(|e| e.to_string())?
                                    .capacity_bits
                                    .bits();
                                let floor = selection_fraction(n_t, n_r, k_t, k_r) * capacity;
                                ensure(best >= floor - 1e-9, || {
                                    format!(
                                        "{n_t}x{n_r} trial {trial} ({k_t},{k_r}): optimum {best} below share {floor}"
                                    )
                                })?;
                            }
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_06_tight_channels() {
    criterion(
        6,
        "parallel channels select min(k_t,k_r)/n exactly; all-ones at P=1e-4 hits the share within 1%",
        || {
            for n in 1..=5usize {
                let h = make_parallel_channel(n, 1.0).map_err(|e| e.to_string())?;
                let full = mimo_capacity(&h).bits();
                ensure(full == n as f64, || format!("parallel n={n}: capacity {full}"))?;
                for k_t in 1..=n {
                    for k_r in 1..=n {
                        let best = best_subchannel_bruteforce(&h, k_t, k_r)
                            .map_err(|e| e.to_string())?
                            .capacity_bits
                            .bits();
                        let expected_ratio = k_t.min(k_r) as f64 / n as f64;
                        ensure(best / full == expected_ratio, || {
                            format!(
                                "parallel n={n} ({k_t},{k_r}): ratio {} != {expected_ratio} exactly",
                                best / full
                            )
                        })?;
                    }
                }
            }
            for n_t in 1..=5usize {
                for n_r in 1..=5usize {
                    let h = make_allones_channel(n_t, n_r, 1e-4).map_err(|e| e.to_string())?;
                    let full = mimo_capacity(&h).bits();
                    for k_t in 1..=n_t {
                        for k_r in 1..=n_r {
                            let best = best_subchannel_bruteforce(&h, k_t, k_r)
                                .map_err(|e| e.to_string())?
                                .capacity_bits
                                .bits();
                            let ratio = best / full;
                            let share = selection_fraction(n_t, n_r, k_t, k_r);
                            ensure((ratio - share).abs() <= 0.01 * share, || {
                                format!(
                                    "all-ones {n_t}x{n_r} ({k_t},{k_r}): ratio {ratio} vs share {share}"
                                )
                            })?;
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_07_stage_count_bound() {
    criterion(
        7,
        "exhaustive stage count never exceeds its closed form; the (3,2) worst-case cut attains 4",
        || {
            let (summary, records) = run_stage_count_verify(10).map_err(|e| e.to_string())?;
            ensure(summary.violations == 0, || {
                format!("{} violations", summary.violations)
            })?;
            ensure(!records.is_empty(), || "no shapes checked".to_string())?;
            let example = construct_layered_tight(3, 2, 12.0).map_err(|e| e.to_string())?;
            let designed_t =
                t_of_cut(&example.network, &example.designed_cut).map_err(|e| e.to_string())?;
            ensure(designed_t == 4 && t_max(3, 2) == 4, || {
                format!("designed stage count {designed_t}, bound {}", t_max(3, 2))
            })?;
            Ok(())
        },
    );
}

#[test]
fn criterion_08_submatrix_identities() {
    criterion(
        8,
        "principal-submatrix identities hold to 1e-8 relative on 100 random matrices per order",
        || {
            for order in 1..=6usize {
                let (summary, _) =
                    run_submatrix_identity_verify(order, 100, 0x5eed_0008 + order as u64, 1e-8)
                        .map_err(|e| format!("order {order}: {e}"))?;
                ensure(summary.violations == 0, || {
                    format!("order {order}: {} violations", summary.violations)
                })?;
            }
            Ok(())
        },
    );
}

/// Complex determinant by plain Gaussian elimination with partial
/// pivoting; written as an independent oracle for the log-det path.
fn det_gaussian(m: &ComplexMatrix) -> Complex {
    assert!(m.is_square());
    let n = m.rows();
    let mut a: Vec<Vec<Complex>> = (0..n)
        .map(|r| (0..n).map(|c| m.get(r, c)).collect())
        .collect();
    let mut det = Complex::ONE;
    for j in 0..n {
        let mut p = j;
        for i in j + 1..n {
            if a[i][j].norm_sqr() > a[p][j].norm_sqr() {
                p = i;
            }
        }
        if a[p][j].norm_sqr() == 0.0 {
            return Complex::ZERO;
        }
        if p != j {
            a.swap(p, j);
            det = -det;
        }
        det = det * a[j][j];
        let inv_norm = 1.0 / a[j][j].norm_sqr();
        let inv = a[j][j].conj().scale(inv_norm);
        for i in j + 1..n {
            let factor = a[i][j] * inv;
            for k in j..n {
                let v = a[i][k] - factor * a[j][k];
                a[i][k] = v;
            }
        }
    }
    det
}

fn oracle_capacity(h: &ComplexMatrix) -> f64 {
    let n = h.rows();
    let ht = h.conj_transpose();
    let mut a = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = if i == j { Complex::ONE } else { Complex::ZERO };
            for k in 0..h.cols() {
                acc += h.get(i, k) * ht.get(k, j);
            }
            a.set(i, j, acc);
        }
    }
    det_gaussian(&a).re().log2()
}

#[test]
fn criterion_09_oracle_equivalences() {
    criterion(
        9,
        "search results match independent enumeration oracles",
        || {
            // best route vs exhaustive path enumeration on 500 networks
            for trial in 0..500usize {
                let n = trial % 7 + 1;
                let spec = EnsembleSpec {
                    topology: Topology::Full,
                    num_relays: n,
                    fading: Fading::Rayleigh { scale: 1.0 },
                    trials: 1,
                    seed: 0x5eed_0009,
                };
                let net = relaycap::experiments::random_network(&spec, trial)
                    .map_err(|e| e.to_string())?;
                let (_, bits) = best_route(&net).map_err(|e| format!("trial {trial}: {e}"))?;
                let brute = enumerate_paths(&net, n + 1)
                    .map_err(|e| e.to_string())?
                    .iter()
                    .map(|p| path_capacity(&net, p).unwrap().bits())
                    .fold(f64::NEG_INFINITY, f64::max);
                ensure(bits.bits() == brute, || {
                    format!(
                        "trial {trial}: route {} vs enumeration {brute}",
                        bits.bits()
                    )
                })?;
            }
            // brute-force selection vs an independently coded double loop
            // with a Gaussian-elimination determinant, on 100 channels
            for trial in 0..100u64 {
                let rng = CounterRng::new(0x5eed_0409, trial);
                let mut h = ComplexMatrix::zeros(4, 4);
                for r in 0..4 {
                    for c in 0..4 {
                        h.set(r, c, rng.complex_gaussian((r * 4 + c) as u64, 1.0));
                    }
                }
                let sel = best_subchannel_bruteforce(&h, 2, 2).map_err(|e| e.to_string())?;
                let mut oracle = f64::NEG_INFINITY;
                for tx in combinations(4, 2) {
                    for rx in combinations(4, 2) {
                        oracle = oracle.max(oracle_capacity(&h.select(&rx, &tx)));
                    }
                }
                ensure((sel.capacity_bits.bits() - oracle).abs() <= 1e-9, || {
                    format!(
                        "trial {trial}: selection {} vs oracle {oracle}",
                        sel.capacity_bits.bits()
                    )
                })?;
            }
            // layered stage decomposition vs the whole-cut value on 500
            // networks, all cuts
            let shapes: Vec<(usize, usize)> = (1..=9)
                .flat_map(|l| (1..=9 / l).map(move |nl| (l, nl)))
                .collect();
            for trial in 0..500usize {
                let (l, nl) = shapes[trial % shapes.len()];
                let spec = EnsembleSpec {
                    topology: Topology::Layered {
                        layers: l,
                        per_layer: nl,
                    },
                    num_relays: l * nl,
                    fading: Fading::Rayleigh { scale: 1.0 },
                    trials: 1,
                    seed: 0x5eed_0909,
                };
                let net = relaycap::experiments::random_network(&spec, trial)
                    .map_err(|e| e.to_string())?;
                let relays = net.num_relays();
                for mask in 0..(1u64 << relays) {
                    let cut = Cut::from_relay_mask(mask, relays);
                    let staged = relaycap::cutset::layered_cut_value(&net, &cut)
                        .map_err(|e| e.to_string())?;
                    let whole = cut_value(&net, &cut).map_err(|e| e.to_string())?;
                    ensure((staged.total().bits() - whole.bits()).abs() <= 1e-9, || {
                        format!(
                            "trial {trial} ({l},{nl}) mask {mask}: stages {} vs cut {}",
                            staged.total().bits(),
                            whole.bits()
                        )
                    })?;
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_10_cli_determinism() {
    criterion(
        10,
        "repeated verify invocations with one seed emit byte-identical CSV",
        || {
            let bin = env!("CARGO_BIN_EXE_relaycap");
            let dir =
                std::env::temp_dir().join(format!("relaycap-acceptance-{}", std::process::id()));
            std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
            let runs: [(&str, &[&str]); 3] = [
                (
                    "thm1",
                    &[
                        "verify", "thm1", "--n", "6", "--trials", "200", "--seed", "7",
                    ],
                ),
                (
                    "thm2",
                    &[
                        "verify", "thm2", "--l", "2", "--nl", "3", "--trials", "200", "--seed", "7",
                    ],
                ),
                (
                    "lemma2",
                    &[
                        "verify", "lemma2", "--nt", "4", "--nr", "4", "--trials", "50", "--seed",
                        "7",
                    ],
                ),
            ];
            for (name, args) in runs {
                let mut outputs = Vec::new();
                for pass in 0..2 {
                    let csv = dir.join(format!("{name}-{pass}.csv"));
                    let status = std::process::Command::new(bin)
                        .args(args)
                        .arg("--csv")
                        .arg(&csv)
                        .output()
                        .map_err(|e| e.to_string())?;
                    ensure(status.status.success(), || {
                        format!(
                            "{name} pass {pass} exited with {:?}: {}",
                            status.status.code(),
                            String::from_utf8_lossy(&status.stderr)
                        )
                    })?;
                    outputs.push(std::fs::read(&csv).map_err(|e| e.to_string())?);
                }
                ensure(outputs[0] == outputs[1], || {
                    format!("{name}: CSV bytes differ between runs")
                })?;
                ensure(!outputs[0].is_empty(), || format!("{name}: empty CSV"))?;
            }
            std::fs::remove_dir_all(&dir).ok();
            Ok(())
        },
    );
}
