//! MIMO subchannel selection: the exact brute-force optimum, a greedy
//! antenna-removal procedure with a per-step capacity guarantee, and the
//! closed-form lower bounds the selections are checked against.

use crate::combin::{binomial, combinations, log2_binomial_product};
use crate::error::{Error, Result};
use crate::linalg::{mimo_capacity, ComplexMatrix, IndexSet};
use crate::network::{gain_for_capacity, CapacityBits};

/// Cap on the number of candidate subchannels the brute-force search will
/// enumerate.
pub const BRUTEFORCE_CAP: u128 = 1_000_000;

/// A chosen subchannel: which transmit and receive antennas to keep, and
/// the capacity of the restricted channel.
#[derive(Clone, Debug)]
pub struct SubchannelSelection {
    pub tx_indices: IndexSet,
    pub rx_indices: IndexSet,
    pub capacity_bits: CapacityBits,
}

fn check_subchannel_dims(h: &ComplexMatrix, k_t: usize, k_r: usize) -> Result<()> {
    if k_t < 1 || k_t > h.cols() || k_r < 1 || k_r > h.rows() {
        return Err(Error::DimensionMismatch(format!(
            "subchannel {k_t}x{k_r} does not fit a channel with {} transmit and {} receive antennas",
            h.cols(),
            h.rows()
        )));
    }
    Ok(())
}

/// Exact best k_t x k_r subchannel by exhaustive search over all antenna
/// subsets. Ties go to the lexicographically smallest (transmit, receive)
/// index pair. The search space is capped at [`BRUTEFORCE_CAP`].
pub fn best_subchannel_bruteforce(
    h: &ComplexMatrix,
    k_t: usize,
    k_r: usize,
) -> Result<SubchannelSelection> {
    check_subchannel_dims(h, k_t, k_r)?;
    let space = binomial(h.cols(), k_t) * binomial(h.rows(), k_r);
    if space > BRUTEFORCE_CAP {
        return Err(Error::SearchSpaceTooLarge {
            size: space,
            cap: BRUTEFORCE_CAP,
        });
    }
    let mut best: Option<(f64, Vec<usize>, Vec<usize>)> = None;
    for tx in combinations(h.cols(), k_t) {
        for rx in combinations(h.rows(), k_r) {
            let bits = mimo_capacity(&h.select(&rx, &tx)).bits();
            // strict comparison keeps the first (lexicographically
            // smallest) maximizer
            if best.as_ref().is_none_or(|(b, _, _)| bits > *b) {
                best = Some((bits, tx.clone(), rx));
            }
        }
    }
    let (bits, tx, rx) = best.expect("nonempty search space");
    Ok(SubchannelSelection {
        tx_indices: IndexSet::new(tx).expect("combinations are sorted"),
        rx_indices: IndexSet::new(rx).expect("combinations are sorted"),
        capacity_bits: CapacityBits::new(bits)?,
    })
}

/// Which antenna side a greedy removal acted on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AntennaSide {
    Receive,
    Transmit,
}

/// One greedy removal: the antenna dropped, how many antennas that side
/// had before the drop, and the capacity before and after.
#[derive(Clone, Copy, Debug)]
pub struct RemovalStep {
    pub side: AntennaSide,
    pub removed_index: usize,
    pub antennas_before: usize,
    pub capacity_before_bits: f64,
    pub capacity_after_bits: f64,
}

/// Result of the greedy pruning, with the full removal trace so the
/// per-step (m-1)/m capacity guarantee can be checked.
#[derive(Clone, Debug)]
pub struct GreedySelection {
    pub selection: SubchannelSelection,
    pub steps: Vec<RemovalStep>,
}

/// Greedy subchannel selection: drop one receive antenna at a time (the
/// one whose removal leaves the largest capacity) until k_r remain, then
/// drop transmit antennas the same way until k_t remain. Every removal
/// among m antennas keeps at least an (m-1)/m share of the capacity, so
/// the final selection keeps at least k_t k_r / (n_t n_r) of the full
/// capacity. Ties in the removal choice go to the smallest antenna index.
pub fn greedy_subchannel(h: &ComplexMatrix, k_t: usize, k_r: usize) -> Result<GreedySelection> {
    check_subchannel_dims(h, k_t, k_r)?;
    let mut rx: Vec<usize> = (0..h.rows()).collect();
    let mut tx: Vec<usize> = (0..h.cols()).collect();
    let mut capacity = mimo_capacity(h).bits();
    let mut steps = Vec::new();

    let prune = |keep: usize,
                 side: AntennaSide,
                 kept_rx: &mut Vec<usize>,
                 kept_tx: &mut Vec<usize>,
                 capacity: &mut f64,
                 steps: &mut Vec<RemovalStep>| {
        loop {
            let active = match side {
                AntennaSide::Receive => kept_rx.len(),
                AntennaSide::Transmit => kept_tx.len(),
            };
            if active <= keep {
                break;
            }
            let mut best_bits = f64::NEG_INFINITY;
            let mut best_pos = 0;
            for pos in 0..active {
                let (rows, cols) = match side {
                    AntennaSide::Receive => {
                        let mut rows = kept_rx.clone();
                        rows.remove(pos);
                        (rows, kept_tx.clone())
                    }
                    AntennaSide::Transmit => {
                        let mut cols = kept_tx.clone();
                        cols.remove(pos);
                        (kept_rx.clone(), cols)
                    }
                };
                let bits = mimo_capacity(&h.select(&rows, &cols)).bits();
                if bits > best_bits {
                    best_bits = bits;
                    best_pos = pos;
                }
            }
            let removed_index = match side {
                AntennaSide::Receive => kept_rx.remove(best_pos),
                AntennaSide::Transmit => kept_tx.remove(best_pos),
            };
            steps.push(RemovalStep {
                side,
                removed_index,
                antennas_before: active,
                capacity_before_bits: *capacity,
                capacity_after_bits: best_bits,
            });
            *capacity = best_bits;
        }
    };

    prune(
        k_r,
        AntennaSide::Receive,
        &mut rx,
        &mut tx,
        &mut capacity,
        &mut steps,
    );
    prune(
        k_t,
        AntennaSide::Transmit,
        &mut rx,
        &mut tx,
        &mut capacity,
        &mut steps,
    );

    Ok(GreedySelection {
        selection: SubchannelSelection {
            tx_indices: IndexSet::new(tx).expect("sorted"),
            rx_indices: IndexSet::new(rx).expect("sorted"),
            capacity_bits: CapacityBits::new(capacity)?,
        },
        steps,
    })
}

/// Lower bound on the best k_t x k_r subchannel capacity:
/// min(k_t, k_r)/min(n_t, n_r) * C - log2(C(n_t, k_t) C(n_r, k_r)).
/// May be negative; returned as-is.
pub fn subchannel_lower_bound(
    capacity_bits: f64,
    n_t: usize,
    n_r: usize,
    k_t: usize,
    k_r: usize,
) -> f64 {
    debug_assert!(k_t >= 1 && k_t <= n_t && k_r >= 1 && k_r <= n_r);
    let ratio = k_t.min(k_r) as f64 / n_t.min(n_r) as f64;
    ratio * capacity_bits - log2_binomial_product(&[(n_t, k_t), (n_r, k_r)])
}

/// Which of the two incremental receiver-selection regimes applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReceiverRegime {
    /// Fewer receivers kept than transmit antennas: the capacity scales by
    /// k_r / n_t up to a binomial-ratio gap.
    ReceiverLimited,
    /// At least as many receivers kept as transmit antennas: the capacity
    /// stays within a binomial-ratio gap of the full capacity, and never
    /// exceeds it.
    TransmitterLimited,
}

/// Bounds for keeping all n_t transmit antennas and the best k_r
/// receivers.
#[derive(Clone, Copy, Debug)]
pub struct ReceiverSelectionBounds {
    pub regime: ReceiverRegime,
    pub lower_bits: f64,
    /// The full capacity, when the regime also bounds from above.
    pub upper_bits: Option<f64>,
}

/// Lower (and, where applicable, upper) bound on the best n_t x k_r
/// subchannel of an n_t x n_r channel with n_t <= n_r:
///
/// - k_r <= n_t: C* >= (k_r/n_t) C - log2(C(n_r,k_r) / C(n_t,k_r))
/// - n_t <= k_r: C >= C* >= C - log2(C(n_r,k_r) / C(n_r-n_t, k_r-n_t))
///
/// Channels with n_t > n_r must be passed transposed (capacities agree).
pub fn receiver_selection_bounds(
    capacity_bits: f64,
    n_t: usize,
    n_r: usize,
    k_r: usize,
) -> Result<ReceiverSelectionBounds> {
    if n_t > n_r {
        return Err(Error::DimensionMismatch(format!(
            "requires n_t <= n_r; pass the transposed channel for {n_t}x{n_r}"
        )));
    }
    if k_r < 1 || k_r > n_r {
        return Err(Error::DimensionMismatch(format!(
            "k_r = {k_r} out of range for {n_r} receive antennas"
        )));
    }
    if k_r <= n_t {
        let gap = (binomial(n_r, k_r) as f64 / binomial(n_t, k_r) as f64).log2();
        Ok(ReceiverSelectionBounds {
            regime: ReceiverRegime::ReceiverLimited,
            lower_bits: k_r as f64 / n_t as f64 * capacity_bits - gap,
            upper_bits: if k_r == n_t {
                Some(capacity_bits)
            } else {
                None
            },
        })
    } else {
        let gap = (binomial(n_r, k_r) as f64 / binomial(n_r - n_t, k_r - n_t) as f64).log2();
        Ok(ReceiverSelectionBounds {
            regime: ReceiverRegime::TransmitterLimited,
            lower_bits: capacity_bits - gap,
            upper_bits: Some(capacity_bits),
        })
    }
}

/// The gap-free guaranteed capacity share of the best k_t x k_r
/// subchannel: k_t k_r / (n_t n_r).
pub fn selection_fraction(n_t: usize, n_r: usize, k_t: usize, k_r: usize) -> f64 {
    debug_assert!(k_t >= 1 && k_t <= n_t && k_r >= 1 && k_r <= n_r);
    (k_t * k_r) as f64 / (n_t * n_r) as f64
}

/// n x n channel of n independent links, each carrying `per_link_bits`.
/// Total capacity n * per_link_bits.
pub fn make_parallel_channel(n: usize, per_link_bits: f64) -> Result<ComplexMatrix> {
    if n < 1 {
        return Err(Error::DimensionMismatch(
            "a parallel channel needs at least one link".into(),
        ));
    }
    let gain = gain_for_capacity(per_link_bits)?;
    let mut h = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        h.set(i, i, gain);
    }
    Ok(h)
}

/// n_r x n_t channel with every entry sqrt(power); capacity
/// log2(1 + power * n_t * n_r).
pub fn make_allones_channel(n_t: usize, n_r: usize, power: f64) -> Result<ComplexMatrix> {
    if n_t < 1 || n_r < 1 {
        return Err(Error::DimensionMismatch(
            "an all-ones channel needs at least one antenna per side".into(),
        ));
    }
    if !power.is_finite() || power < 0.0 {
        return Err(Error::NonFinite {
            what: "channel power",
        });
    }
    let v = crate::complex::Complex::real(power.sqrt())?;
    let mut h = ComplexMatrix::zeros(n_r, n_t);
    for r in 0..n_r {
        for c in 0..n_t {
            h.set(r, c, v);
        }
    }
    Ok(h)
}
