//! Cut enumeration and the approximate network capacity.
//!
//! A cut keeps the source on its left side and the destination on its
//! right side; its value is the capacity of the MIMO channel from the
//! left-side transmitters to the right-side receivers. The approximate
//! capacity of a network is the exact minimum of this value over all 2^N
//! relay-side choices.

use crate::error::{Error, Result};
use crate::linalg::{mimo_capacity, ComplexMatrix};
use crate::network::{link_capacity, CapacityBits, Network};

/// Default cap on the number of relays for exhaustive cut enumeration.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;

/// Below this many cuts the enumeration stays single-threaded.
const PARALLEL_THRESHOLD: u64 = 1 << 12;

/// A cut: the set of nodes on the source side. Always contains the source
/// and never the destination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cut {
    num_relays: usize,
    members: Vec<usize>,
}

impl Cut {
    /// Builds a cut from its member nodes for a network with `num_relays`
    /// relays. The members must include node 0, exclude node N+1, and
    /// contain no duplicates.
    pub fn new(members: impl IntoIterator<Item = usize>, num_relays: usize) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        members.sort_unstable();
        for pair in members.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateIndex { index: pair[0] });
            }
        }
        if members.first() != Some(&0) {
            return Err(Error::InvariantViolation {
                field: "cut",
                message: "the source must sit on the left of every cut".into(),
            });
        }
        if let Some(&max) = members.last() {
            if max > num_relays {
                return Err(if max == num_relays + 1 {
                    Error::InvariantViolation {
                        field: "cut",
                        message: "the destination must sit on the right of every cut".into(),
                    }
                } else {
                    Error::NodeOutOfRange {
                        index: max,
                        max: num_relays + 1,
                    }
                });
            }
        }
        Ok(Cut {
            num_relays,
            members,
        })
    }

    /// Cut from a relay bitmask: bit r-1 set means relay r sits on the
    /// source side.
    pub fn from_relay_mask(mask: u64, num_relays: usize) -> Self {
        debug_assert!(num_relays < 64 && mask < (1u64 << num_relays));
        let mut members = Vec::with_capacity(num_relays + 1);
        members.push(0);
        for r in 1..=num_relays {
            if mask >> (r - 1) & 1 == 1 {
                members.push(r);
            }
        }
        Cut {
            num_relays,
            members,
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn num_relays(&self) -> usize {
        self.num_relays
    }

    pub fn contains(&self, node: usize) -> bool {
        self.members.binary_search(&node).is_ok()
    }

    /// Relay bitmask of this cut.
    pub fn relay_mask(&self) -> u64 {
        let mut mask = 0u64;
        for &m in &self.members {
            if m >= 1 && m <= self.num_relays {
                mask |= 1 << (m - 1);
            }
        }
        mask
    }

    /// Nodes on the destination side, in increasing order.
    pub fn complement(&self) -> Vec<usize> {
        (0..=self.num_relays + 1)
            .filter(|n| !self.contains(*n))
            .collect()
    }

    fn check_against(&self, net: &Network) -> Result<()> {
        if self.num_relays != net.num_relays() {
            return Err(Error::DimensionMismatch(format!(
                "cut built for {} relays applied to a network with {}",
                self.num_relays,
                net.num_relays()
            )));
        }
        Ok(())
    }
}

/// The MIMO channel matrix of a cut: rows are the destination-side
/// receivers, columns the source-side transmitters, both sorted by node
/// index.
fn cut_channel(net: &Network, cut: &Cut) -> ComplexMatrix {
    let cols = cut.members();
    let rows = cut.complement();
    let mut h = ComplexMatrix::zeros(rows.len(), cols.len());
    for (ri, &rx) in rows.iter().enumerate() {
        for (ci, &tx) in cols.iter().enumerate() {
            h.set(ri, ci, net.gain(tx, rx));
        }
    }
    h
}

/// Value of a cut: log2 det(I + H H^dagger) for the crossing MIMO channel.
pub fn cut_value(net: &Network, cut: &Cut) -> Result<CapacityBits> {
    cut.check_against(net)?;
    Ok(mimo_capacity(&cut_channel(net, cut)))
}

fn cut_value_from_mask(net: &Network, mask: u64) -> f64 {
    cut_value(net, &Cut::from_relay_mask(mask, net.num_relays()))
        .expect("mask cuts are valid")
        .bits()
}

/// Exact minimum of [`cut_value`] over all cuts, with one minimizing cut.
/// Ties go to the smallest relay bitmask. Exhaustive over 2^N cuts;
/// networks beyond `cap` relays are rejected.
pub fn approx_capacity_with_cap(net: &Network, cap: usize) -> Result<(CapacityBits, Cut)> {
    let n = net.num_relays();
    if n > cap || n >= 64 {
        return Err(Error::TooManyRelays {
            num_relays: n,
            cap: cap.min(63),
        });
    }
    let total: u64 = 1 << n;

    let scan = |from: u64, to: u64| -> (f64, u64) {
        let mut best = f64::INFINITY;
        let mut best_mask = from;
        for mask in from..to {
            let bits = cut_value_from_mask(net, mask);
            if bits < best {
                best = bits;
                best_mask = mask;
            }
        }
        (best, best_mask)
    };

    let threads = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1);
    let (best, best_mask) = if total < PARALLEL_THRESHOLD || threads < 2 {
        scan(0, total)
    } else {
        let chunks = threads as u64 * 4;
        let step = total.div_ceil(chunks);
        let results: Vec<(f64, u64)> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..chunks)
                .map(|c| {
                    let from = c * step;
                    let to = ((c + 1) * step).min(total);
                    scope.spawn(move || {
                        if from < to {
                            scan(from, to)
                        } else {
                            (f64::INFINITY, 0)
                        }
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        // min with bitmask tie-break is associative, so chunk order does
        // not change the outcome
        let mut best = (f64::INFINITY, 0u64);
        for (bits, mask) in results {
            if bits < best.0 || (bits == best.0 && mask < best.1) {
                best = (bits, mask);
            }
        }
        best
    };
    Ok((
        CapacityBits::from_log_sum(best),
        Cut::from_relay_mask(best_mask, n),
    ))
}

/// [`approx_capacity_with_cap`] at the default cap.
pub fn approx_capacity(net: &Network) -> Result<(CapacityBits, Cut)> {
    approx_capacity_with_cap(net, DEFAULT_EXHAUSTIVE_CAP)
}

/// Per-stage decomposition of a cut of a layered network.
#[derive(Clone, Debug)]
pub struct LayeredCutView {
    relays_per_layer: usize,
    parts: Vec<Vec<usize>>,
    stage_bits: Vec<f64>,
    total: CapacityBits,
}

impl LayeredCutView {
    /// Source-side members per layer, indexed 0 ..= L+1. Index 0 is always
    /// `[0]` and index L+1 is always empty.
    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Capacity contributed by each stage l in 0 ..= L (stage l carries
    /// transmissions from layer l into layer l+1).
    pub fn stage_bits(&self) -> &[f64] {
        &self.stage_bits
    }

    /// Destination-side receiver count per stage: |layer l+1| - |part l+1|.
    pub fn receiver_counts(&self) -> Vec<usize> {
        let last = self.parts.len() - 1;
        (1..=last)
            .map(|l| {
                let layer_size = if l == last { 1 } else { self.relays_per_layer };
                layer_size - self.parts[l].len()
            })
            .collect()
    }

    pub fn total(&self) -> CapacityBits {
        self.total
    }
}

/// Splits a cut of a layered network into its per-stage MIMO values. The
/// stage values sum to the whole-cut value. Stages with no transmitters or
/// no receivers contribute exactly zero.
pub fn layered_cut_value(net: &Network, cut: &Cut) -> Result<LayeredCutView> {
    let layers = net.layering().ok_or(Error::NotLayered)?;
    cut.check_against(net)?;
    let l_count = layers.num_layers();
    let mut parts = Vec::with_capacity(l_count + 2);
    for l in 0..=l_count + 1 {
        let part: Vec<usize> = layers
            .layer_nodes(l)
            .into_iter()
            .filter(|&n| cut.contains(n))
            .collect();
        parts.push(part);
    }
    let mut stage_bits = Vec::with_capacity(l_count + 1);
    let mut total = 0.0;
    for l in 0..=l_count {
        let tx = &parts[l];
        let rx: Vec<usize> = layers
            .layer_nodes(l + 1)
            .into_iter()
            .filter(|&n| !cut.contains(n))
            .collect();
        let bits = if tx.is_empty() || rx.is_empty() {
            0.0
        } else {
            let mut h = ComplexMatrix::zeros(rx.len(), tx.len());
            for (ri, &r) in rx.iter().enumerate() {
                for (ci, &t) in tx.iter().enumerate() {
                    h.set(ri, ci, net.gain(t, r));
                }
            }
            mimo_capacity(&h).bits()
        };
        stage_bits.push(bits);
        total += bits;
    }
    Ok(LayeredCutView {
        relays_per_layer: layers.relays_per_layer(),
        parts,
        stage_bits,
        total: CapacityBits::from_log_sum(total),
    })
}

/// Upper bound on a cut value in terms of its strongest crossing link:
/// min(|left|, |right|) * (max crossing link capacity + log2(|left| * |right|)).
pub fn cut_upper_bound_general(net: &Network, cut: &Cut) -> Result<CapacityBits> {
    cut.check_against(net)?;
    let left = cut.members();
    let right = cut.complement();
    let mut max_link = 0.0_f64;
    for &tx in left {
        for &rx in &right {
            let bits = link_capacity(net, tx, rx)?.bits();
            max_link = max_link.max(bits);
        }
    }
    let m = left.len().min(right.len()) as f64;
    let bound = m * max_link + m * ((left.len() * right.len()) as f64).log2();
    CapacityBits::new(bound)
}

/// Number of stage terms a layered cut can accumulate:
/// sum over stages of min(|part l|, |receivers l+1|).
pub fn t_of_cut(net: &Network, cut: &Cut) -> Result<usize> {
    let layers = net.layering().ok_or(Error::NotLayered)?;
    cut.check_against(net)?;
    let mut t = 0;
    for l in 0..=layers.num_layers() {
        let tx = layers
            .layer_nodes(l)
            .into_iter()
            .filter(|&n| cut.contains(n))
            .count();
        let rx = layers
            .layer_nodes(l + 1)
            .into_iter()
            .filter(|&n| !cut.contains(n))
            .count();
        t += tx.min(rx);
    }
    Ok(t)
}

/// Closed-form maximum of [`t_of_cut`] over all cuts of an (L, N_L)
/// layered network. Always an integer: ((L-1) N_L + 4) / 2 for odd L,
/// (L N_L + 2) / 2 for even L.
pub fn t_max(num_layers: usize, relays_per_layer: usize) -> usize {
    assert!(num_layers >= 1 && relays_per_layer >= 1);
    if num_layers % 2 == 1 {
        ((num_layers - 1) * relays_per_layer + 4) / 2
    } else {
        (num_layers * relays_per_layer + 2) / 2
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::gain_for_capacity;
    use crate::rng::CounterRng;

    fn line_network(a: f64, b: f64) -> Network {
        let mut net = Network::new(1).unwrap();
        net.set_link_capacity(0, 1, a).unwrap();
        net.set_link_capacity(1, 2, b).unwrap();
        net
    }

    /// The 5-relay example with one weak source link, weak cross pairs and
    /// strong links everywhere else.
    fn five_relay_example(a: f64) -> Network {
        let strong = 25.0 * a;
        let mut net = Network::new(5).unwrap();
        net.set_link_capacity(0, 1, a).unwrap();
        net.set_link_capacity(1, 6, strong).unwrap();
        for i in 2..=3 {
            net.set_link_capacity(0, i, strong).unwrap();
            net.set_link_capacity(i, i + 2, a).unwrap();
        }
        for i in 4..=5 {
            net.set_link_capacity(i, 6, strong).unwrap();
        }
        net
    }

    #[test]
    fn cut_invariants_are_enforced() {
        assert!(Cut::new([0, 1], 2).is_ok());
        assert!(Cut::new([1], 2).is_err()); // missing source
        assert!(Cut::new([0, 3], 2).is_err()); // destination on the left
        assert!(Cut::new([0, 1, 1], 2).is_err()); // duplicate
        assert!(Cut::new([0, 9], 2).is_err()); // out of range
    }

    #[test]
    fn line_network_cut_values() {
        let net = line_network(2.0, 5.0);
        let source_only = Cut::new([0], 1).unwrap();
        let with_relay = Cut::new([0, 1], 1).unwrap();
        assert!((cut_value(&net, &source_only).unwrap().bits() - 2.0).abs() < 1e-12);
        assert!((cut_value(&net, &with_relay).unwrap().bits() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn five_relay_designed_cut_value() {
        // crossing links 0->1, 2->4, 3->5 have distinct endpoints, so the
        // cut value is the plain sum 3 x 1 bit
        let net = five_relay_example(1.0);
        let cut = Cut::new([0, 2, 3], 5).unwrap();
        let got = cut_value(&net, &cut).unwrap().bits();
        assert!((got - 3.0).abs() < 1e-9, "got {got}");
    }

    #[test]
    fn approx_capacity_of_line_is_bottleneck() {
        let net = line_network(2.0, 5.0);
        let (bits, cut) = approx_capacity(&net).unwrap();
        assert!((bits.bits() - 2.0).abs() < 1e-12);
        assert_eq!(cut.members(), &[0]);
    }

    #[test]
    fn approx_capacity_of_five_relay_example() {
        let net = five_relay_example(1.0);
        let (bits, cut) = approx_capacity(&net).unwrap();
        assert!((bits.bits() - 3.0).abs() < 1e-9);
        assert_eq!(cut.members(), &[0, 2, 3]);
    }

    #[test]
    fn approx_capacity_matches_second_enumeration_pass() {
        // independent oracle: recompute the minimum in a second pass
        let rng = CounterRng::new(11, 0);
        let mut net = Network::new(4).unwrap();
        let mut counter = 0;
        for tx in 0..=4 {
            for rx in 1..=5 {
                if tx != rx {
                    net.set_gain(tx, rx, rng.complex_gaussian(counter, 1.0))
                        .unwrap();
                }
                counter += 1;
            }
        }
        let (bits, cut) = approx_capacity(&net).unwrap();
        let mut oracle = f64::INFINITY;
        let mut oracle_mask = 0;
        for mask in 0..(1u64 << 4) {
            let v = cut_value(&net, &Cut::from_relay_mask(mask, 4))
                .unwrap()
                .bits();
            if v < oracle {
                oracle = v;
                oracle_mask = mask;
            }
        }
        assert_eq!(bits.bits(), oracle);
        assert_eq!(cut.relay_mask(), oracle_mask);
    }

    #[test]
    fn parallel_enumeration_matches_a_sequential_scan() {
        // 12 relays cross the threshold where the bitmask range is split
        // across threads
        let rng = CounterRng::new(31, 0);
        let n = 12;
        let mut net = Network::new(n).unwrap();
        let mut counter = 0;
        for tx in 0..=n {
            for rx in 1..=n + 1 {
                if tx != rx {
                    net.set_gain(tx, rx, rng.complex_gaussian(counter, 1.0))
                        .unwrap();
                }
                counter += 1;
            }
        }
        let (bits, cut) = approx_capacity(&net).unwrap();
        let (bits2, cut2) = approx_capacity(&net).unwrap();
        assert_eq!(bits.bits(), bits2.bits());
        assert_eq!(cut, cut2);
        let mut best = f64::INFINITY;
        let mut best_mask = 0;
        for mask in 0..(1u64 << n) {
            let v = cut_value(&net, &Cut::from_relay_mask(mask, n))
                .unwrap()
                .bits();
            if v < best {
                best = v;
                best_mask = mask;
            }
        }
        assert_eq!(bits.bits(), best);
        assert_eq!(cut.relay_mask(), best_mask);
    }

    #[test]
    fn approx_capacity_respects_cap() {
        let net = Network::new(5).unwrap();
        assert!(matches!(
            approx_capacity_with_cap(&net, 4),
            Err(Error::TooManyRelays { .. })
        ));
    }

    #[test]
    fn relabeling_relays_preserves_approx_capacity() {
        let rng = CounterRng::new(21, 0);
        let mut net = Network::new(4).unwrap();
        let mut counter = 0;
        let mut gains = Vec::new();
        for tx in 0..=4 {
            for rx in 1..=5 {
                let g = rng.complex_gaussian(counter, 1.0);
                counter += 1;
                if tx != rx {
                    net.set_gain(tx, rx, g).unwrap();
                    gains.push((tx, rx, g));
                }
            }
        }
        // permute relays 1..=4 by the cycle (1 2 3 4)
        let perm = |n: usize| -> usize {
            match n {
                1 => 2,
                2 => 3,
                3 => 4,
                4 => 1,
                other => other,
            }
        };
        let mut permuted = Network::new(4).unwrap();
        for (tx, rx, g) in gains {
            permuted.set_gain(perm(tx), perm(rx), g).unwrap();
        }
        let a = approx_capacity(&net).unwrap().0.bits();
        let b = approx_capacity(&permuted).unwrap().0.bits();
        assert!((a - b).abs() < 1e-9);
    }

    fn random_layered(l: usize, nl: usize, seed: u64) -> Network {
        let rng = CounterRng::new(seed, 0);
        let mut net = Network::new_layered(l, nl).unwrap();
        let layers = net.layering().unwrap();
        let mut counter = 0;
        for stage in 0..=l {
            for tx in layers.layer_nodes(stage) {
                for rx in layers.layer_nodes(stage + 1) {
                    net.set_gain(tx, rx, rng.complex_gaussian(counter, 1.0))
                        .unwrap();
                    counter += 1;
                }
            }
        }
        net
    }

    #[test]
    fn layered_stage_values_sum_to_cut_value() {
        for (l, nl, seed) in [(2, 2, 1), (3, 2, 2), (2, 3, 3), (3, 3, 4)] {
            let net = random_layered(l, nl, seed);
            let n = net.num_relays();
            for mask in 0..(1u64 << n) {
                let cut = Cut::from_relay_mask(mask, n);
                let view = layered_cut_value(&net, &cut).unwrap();
                let whole = cut_value(&net, &cut).unwrap().bits();
                assert!(
                    (view.total().bits() - whole).abs() < 1e-9,
                    "L={l} N_L={nl} mask={mask}: {} vs {whole}",
                    view.total().bits()
                );
            }
        }
    }

    #[test]
    fn layered_designed_cut_crosses_one_weak_link_per_stage() {
        // each stage of the alternating cut crosses exactly one weak link
        // with distinct endpoints, so the stage values are all equal
        let ex = crate::constructions::construct_layered_tight(3, 2, 12.0).unwrap();
        let view = layered_cut_value(&ex.network, &ex.designed_cut).unwrap();
        assert_eq!(view.stage_bits().len(), 4);
        for (l, &bits) in view.stage_bits().iter().enumerate() {
            assert!((bits - 3.0).abs() < 1e-9, "stage {l}: {bits}");
        }
        assert!((view.total().bits() - 12.0).abs() < 1e-9);
        assert_eq!(view.receiver_counts(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn general_bound_dominates_on_larger_ensembles() {
        // 1000 random networks with up to 8 relays, every cut
        for trial in 0..1000u64 {
            let n = 1 + (trial as usize % 8);
            let rng = CounterRng::new(0xb0b_0001 + trial, 0);
            let mut net = Network::new(n).unwrap();
            let mut counter = 0;
            for tx in 0..=n {
                for rx in 1..=n + 1 {
                    if tx != rx {
                        net.set_gain(tx, rx, rng.complex_gaussian(counter, 1.0))
                            .unwrap();
                    }
                    counter += 1;
                }
            }
            for mask in 0..(1u64 << n) {
                let cut = Cut::from_relay_mask(mask, n);
                let value = cut_value(&net, &cut).unwrap().bits();
                let bound = cut_upper_bound_general(&net, &cut).unwrap().bits();
                assert!(
                    value <= bound + 1e-9,
                    "trial {trial} mask {mask}: {value} > {bound}"
                );
            }
        }
    }

    #[test]
    fn layered_cut_with_all_relays_only_uses_last_stage() {
        let net = random_layered(2, 2, 9);
        let cut = Cut::new([0, 1, 2, 3, 4], 4).unwrap();
        let view = layered_cut_value(&net, &cut).unwrap();
        assert_eq!(view.stage_bits()[0], 0.0);
        assert_eq!(view.stage_bits()[1], 0.0);
        assert!(view.stage_bits()[2] > 0.0);
    }

    #[test]
    fn layered_cut_value_requires_layers() {
        let net = line_network(1.0, 1.0);
        let cut = Cut::new([0], 1).unwrap();
        assert!(matches!(
            layered_cut_value(&net, &cut),
            Err(Error::NotLayered)
        ));
    }

    #[test]
    fn general_bound_on_line_network() {
        // min(1, 2) * max_link + 1 * log2(1 * 2) = a + 1
        let a = 2.5;
        let net = line_network(a, 7.0);
        let cut = Cut::new([0], 1).unwrap();
        let bound = cut_upper_bound_general(&net, &cut).unwrap().bits();
        assert!((bound - (a + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn general_bound_on_designed_cut() {
        // |left| = 3, |right| = 4, strongest crossing link 1 bit
        let net = five_relay_example(1.0);
        let cut = Cut::new([0, 2, 3], 5).unwrap();
        let bound = cut_upper_bound_general(&net, &cut).unwrap().bits();
        let expected = 3.0 * 1.0 + 3.0 * 12.0_f64.log2();
        assert!((bound - expected).abs() < 1e-12);
    }

    #[test]
    fn general_bound_dominates_cut_value_on_random_networks() {
        for seed in 0..50 {
            let rng = CounterRng::new(1000 + seed, 0);
            let n = 1 + (seed as usize % 5);
            let mut net = Network::new(n).unwrap();
            let mut counter = 0;
            for tx in 0..=n {
                for rx in 1..=n + 1 {
                    if tx != rx {
                        net.set_gain(tx, rx, rng.complex_gaussian(counter, 1.0))
                            .unwrap();
                    }
                    counter += 1;
                }
            }
            for mask in 0..(1u64 << n) {
                let cut = Cut::from_relay_mask(mask, n);
                let value = cut_value(&net, &cut).unwrap().bits();
                let bound = cut_upper_bound_general(&net, &cut).unwrap().bits();
                assert!(
                    value <= bound + 1e-9,
                    "seed {seed} mask {mask}: {value} > {bound}"
                );
            }
        }
    }

    #[test]
    fn t_of_cut_examples() {
        // all relays on the left: only the final stage counts
        let net = random_layered(3, 2, 5);
        let all = Cut::new(0..=6, 6).unwrap();
        assert_eq!(t_of_cut(&net, &all).unwrap(), 1);
        // alternating designed pattern for L=3, N_L=2
        let designed = Cut::new([0, 1, 4, 5], 6).unwrap();
        assert_eq!(t_of_cut(&net, &designed).unwrap(), 4);
    }

    #[test]
    fn t_max_closed_form() {
        assert_eq!(t_max(1, 1), 2);
        assert_eq!(t_max(1, 7), 2);
        assert_eq!(t_max(3, 10), 12);
        assert_eq!(t_max(6, 5), 16);
        assert_eq!(t_max(3, 2), 4);
        assert_eq!(t_max(2, 2), 3);
    }

    #[test]
    fn t_of_cut_never_exceeds_t_max() {
        for (l, nl) in [(1, 3), (2, 2), (3, 2), (2, 3), (4, 2), (3, 3)] {
            let net = random_layered(l, nl, 77);
            let n = l * nl;
            let bound = t_max(l, nl);
            let mut max_seen = 0;
            for mask in 0..(1u64 << n) {
                let cut = Cut::from_relay_mask(mask, n);
                let t = t_of_cut(&net, &cut).unwrap();
                assert!(t <= bound, "L={l} N_L={nl} mask={mask}: T={t} > {bound}");
                max_seen = max_seen.max(t);
            }
            assert!(max_seen >= 1);
        }
    }

    #[test]
    fn zero_capacity_gain_round_trip() {
        assert!(gain_for_capacity(0.0).unwrap().is_zero());
    }
}
