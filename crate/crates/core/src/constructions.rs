//! Generators for the worst-case example networks in which the best route
//! achieves exactly its guaranteed share of the approximate capacity, plus
//! a verifier that re-derives every designed quantity from scratch.

use crate::cutset::{approx_capacity, cut_value, Cut};
use crate::error::{Error, Result};
use crate::network::{CapacityBits, DesignedBlock, Network};
use crate::routing::{best_route, enumerate_paths, layered_path_guarantee, path_capacity};

/// Which worst-case family a generated network belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TightFamily {
    GeneralOdd,
    GeneralEven,
    LayeredOdd,
    LayeredEven,
}

impl TightFamily {
    pub fn tag(self) -> &'static str {
        match self {
            TightFamily::GeneralOdd => "general-odd",
            TightFamily::GeneralEven => "general-even",
            TightFamily::LayeredOdd => "layered-odd",
            TightFamily::LayeredEven => "layered-even",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "general-odd" => Some(TightFamily::GeneralOdd),
            "general-even" => Some(TightFamily::GeneralEven),
            "layered-odd" => Some(TightFamily::LayeredOdd),
            "layered-even" => Some(TightFamily::LayeredEven),
            _ => None,
        }
    }
}

/// A generated worst-case network along with everything it was designed to
/// satisfy: its capacity, the minimum cut realizing it, and the cap on any
/// route's capacity. The designed cut is stored by the generator, never
/// re-derived, so verification is a genuine cross-check.
#[derive(Clone, Debug)]
pub struct TightExample {
    pub network: Network,
    pub designed_capacity_bits: CapacityBits,
    pub designed_cut: Cut,
    pub designed_route_bound_bits: CapacityBits,
    pub family: TightFamily,
}

/// Worst-case network for arbitrary topologies: one weak source link, a
/// bank of weak cross links, and strong (capacity N^2 A) links everywhere
/// else. The approximate capacity is A (floor(N/2) + 1) while every route
/// crosses a capacity-A link.
///
/// For even N an extra relay hangs off the source and destination. N = 1
/// and N = 2 degenerate to a weak source chain (N^2 A = A at N = 1) and
/// follow the same formulas.
///
/// ```rust
/// use relaycap::{construct_general_tight, verify_tight_example};
///
/// let example = construct_general_tight(5, 1.0)?;
/// assert_eq!(example.designed_capacity_bits.bits(), 3.0);
/// let report = verify_tight_example(&example)?;
/// assert_eq!(report.best_route_bits, 1.0); // a third of the capacity
/// # Ok::<(), relaycap::Error>(())
/// ```
pub fn construct_general_tight(num_relays: usize, weak_bits: f64) -> Result<TightExample> {
    if num_relays < 1 {
        return Err(Error::InvalidConstruction(
            "the construction needs at least one relay".into(),
        ));
    }
    if !weak_bits.is_finite() || weak_bits <= 0.0 {
        return Err(Error::InvalidConstruction(format!(
            "the weak-link capacity must be positive, got {weak_bits}"
        )));
    }
    let n = num_relays;
    let dest = n + 1;
    let strong_bits = (n * n) as f64 * weak_bits;
    let n_f = (n - 1) / 2;

    let mut net = Network::new(n)?;
    net.set_link_capacity(0, 1, weak_bits)?;
    net.set_link_capacity(1, dest, strong_bits)?;
    for i in 2..=n_f + 1 {
        net.set_link_capacity(0, i, strong_bits)?;
        net.set_link_capacity(i, i + n_f, weak_bits)?;
    }
    for i in n_f + 2..=2 * n_f + 1 {
        net.set_link_capacity(i, dest, strong_bits)?;
    }
    let even = n % 2 == 0;
    if even {
        net.set_link_capacity(0, n, strong_bits)?;
        net.set_link_capacity(n, dest, weak_bits)?;
    }

    let mut members: Vec<usize> = vec![0];
    members.extend(2..=n_f + 1);
    if even {
        members.push(n);
    }
    let designed_cut = Cut::new(members, n)?;
    let capacity = (n / 2 + 1) as f64 * weak_bits;
    // the bound is the weak-link capacity as actually stored, so the
    // best-route comparison is exact
    let route_bound = crate::network::link_capacity(&net, 0, 1)?;
    Ok(TightExample {
        network: net,
        designed_capacity_bits: CapacityBits::new(capacity)?,
        designed_cut,
        designed_route_bound_bits: route_bound,
        family: if even {
            TightFamily::GeneralEven
        } else {
            TightFamily::GeneralOdd
        },
    })
}

/// Worst-case layered network: strong links carry the full design capacity
/// W, weak links carry the guaranteed fraction of W, and the alternating
/// cut (the first N_L - 1 relays of odd layers, the last relay of even
/// layers) crosses only weak links with pairwise-distinct endpoints.
///
/// N_L = 1 degenerates to a uniform line carrying W on every hop; its
/// designed cut is the bare source and its route bound is W itself.
pub fn construct_layered_tight(
    num_layers: usize,
    relays_per_layer: usize,
    capacity_bits: f64,
) -> Result<TightExample> {
    if num_layers < 1 || relays_per_layer < 1 {
        return Err(Error::InvalidConstruction(format!(
            "invalid layered shape L={num_layers}, N_L={relays_per_layer}"
        )));
    }
    if !capacity_bits.is_finite() || capacity_bits <= 0.0 {
        return Err(Error::InvalidConstruction(format!(
            "the design capacity must be positive, got {capacity_bits}"
        )));
    }
    let l_count = num_layers;
    let nl = relays_per_layer;
    let strong = capacity_bits;
    let (fraction, _) = layered_path_guarantee(l_count, nl);
    let weak = fraction * capacity_bits;
    let family = if l_count % 2 == 1 {
        TightFamily::LayeredOdd
    } else {
        TightFamily::LayeredEven
    };

    let mut net = Network::new_layered(l_count, nl)?;
    let layers = net.layering().expect("just built layered");
    let n = layers.num_relays();
    let dest = n + 1;

    if nl == 1 {
        // uniform line
        net.set_link_capacity(0, 1, strong)?;
        for l in 1..l_count {
            net.set_link_capacity(layers.relay(l, 1), layers.relay(l + 1, 1), strong)?;
        }
        net.set_link_capacity(layers.relay(l_count, 1), dest, strong)?;
        return Ok(TightExample {
            network: net,
            designed_capacity_bits: CapacityBits::new(capacity_bits)?,
            designed_cut: Cut::new([0], n)?,
            designed_route_bound_bits: CapacityBits::new(capacity_bits)?,
            family,
        });
    }

    // stage 0: strong links to all but the last first-layer relay
    for i in 1..nl {
        net.set_link_capacity(0, layers.relay(1, i), strong)?;
    }
    net.set_link_capacity(0, layers.relay(1, nl), weak)?;

    // stages between relay layers
    for l in 1..l_count {
        if l % 2 == 1 {
            for i in 1..nl {
                net.set_link_capacity(layers.relay(l, i), layers.relay(l + 1, i), weak)?;
            }
            for i in 1..=nl {
                net.set_link_capacity(layers.relay(l, nl), layers.relay(l + 1, i), strong)?;
            }
            for i in 1..nl {
                net.set_link_capacity(layers.relay(l, i), layers.relay(l + 1, nl), strong)?;
            }
        } else {
            for i in 1..=nl {
                for j in 1..=nl {
                    if (i, j) != (nl, nl) {
                        net.set_link_capacity(layers.relay(l, i), layers.relay(l + 1, j), strong)?;
                    }
                }
            }
            net.set_link_capacity(layers.relay(l, nl), layers.relay(l + 1, nl), weak)?;
        }
    }

    // final stage into the destination
    if l_count % 2 == 1 {
        net.set_link_capacity(layers.relay(l_count, nl), dest, strong)?;
        net.set_link_capacity(layers.relay(l_count, 1), dest, weak)?;
        // relays 2 .. N_L - 1 of the last layer have no link to D
    } else {
        for i in 1..nl {
            net.set_link_capacity(layers.relay(l_count, i), dest, strong)?;
        }
        net.set_link_capacity(layers.relay(l_count, nl), dest, weak)?;
    }

    // the alternating dark-node cut
    let mut members: Vec<usize> = vec![0];
    for l in 1..=l_count {
        if l % 2 == 1 {
            for i in 1..nl {
                members.push(layers.relay(l, i));
            }
        } else {
            members.push(layers.relay(l, nl));
        }
    }
    // read the bound off a stored weak link so the best-route comparison
    // is exact
    let route_bound = crate::network::link_capacity(&net, 0, layers.relay(1, nl))?;
    Ok(TightExample {
        network: net,
        designed_capacity_bits: CapacityBits::new(capacity_bits)?,
        designed_cut: Cut::new(members, n)?,
        designed_route_bound_bits: route_bound,
        family,
    })
}

/// Everything [`verify_tight_example`] recomputed.
#[derive(Clone, Debug)]
pub struct TightExampleReport {
    pub recomputed_capacity_bits: f64,
    pub designed_cut_value_bits: f64,
    pub best_route_bits: f64,
    pub paths_checked: usize,
}

/// Recomputes every designed quantity of a tight example from scratch:
/// the approximate capacity must equal the designed capacity (to 1e-9
/// bits), the designed cut must attain it, every route must stay at or
/// below the designed route bound, and the best route must attain the
/// bound exactly. Fails with the first violated claim.
pub fn verify_tight_example(example: &TightExample) -> Result<TightExampleReport> {
    let net = &example.network;
    let designed_capacity = example.designed_capacity_bits.bits();
    let (capacity, _) = approx_capacity(net)?;
    if (capacity.bits() - designed_capacity).abs() > 1e-9 {
        return Err(Error::TightExampleMismatch {
            claim: "approximate capacity",
            detail: format!(
                "recomputed {} bits, designed {designed_capacity} bits",
                capacity.bits()
            ),
        });
    }
    let designed_value = cut_value(net, &example.designed_cut)?.bits();
    if (designed_value - capacity.bits()).abs() > 1e-9 {
        return Err(Error::TightExampleMismatch {
            claim: "designed cut attains the capacity",
            detail: format!(
                "designed cut {:?} has value {designed_value} bits, capacity is {} bits",
                example.designed_cut.members(),
                capacity.bits()
            ),
        });
    }
    let bound = example.designed_route_bound_bits.bits();
    let paths = enumerate_paths(net, net.num_relays() + 1)?;
    for path in &paths {
        let bits = path_capacity(net, path)?.bits();
        if bits > bound + 1e-9 {
            return Err(Error::TightExampleMismatch {
                claim: "every route is capped by the designed bound",
                detail: format!(
                    "route {:?} carries {bits} bits, above the bound {bound}",
                    path.nodes()
                ),
            });
        }
    }
    let (_, route_bits) = best_route(net)?;
    if route_bits.bits() != bound {
        return Err(Error::TightExampleMismatch {
            claim: "the best route attains the designed bound",
            detail: format!(
                "best route {} bits, designed bound {bound}",
                route_bits.bits()
            ),
        });
    }
    Ok(TightExampleReport {
        recomputed_capacity_bits: capacity.bits(),
        designed_cut_value_bits: designed_value,
        best_route_bits: route_bits.bits(),
        paths_checked: paths.len(),
    })
}

/// The sidecar block describing a tight example in the network JSON
/// schema.
pub fn designed_block(example: &TightExample) -> DesignedBlock {
    DesignedBlock {
        capacity_bits: example.designed_capacity_bits.bits(),
        cut: example.designed_cut.members().to_vec(),
        route_bound_bits: example.designed_route_bound_bits.bits(),
        family: example.family.tag().to_string(),
    }
}

/// Serializes a tight example as a network document with its designed
/// sidecar.
pub fn save_tight_example(example: &TightExample) -> Vec<u8> {
    crate::network::save_network_with_designed(&example.network, Some(&designed_block(example)))
}

/// Loads a tight example back from a network document carrying a designed
/// sidecar block.
pub fn load_tight_example(bytes: &[u8]) -> Result<TightExample> {
    let (network, designed) = crate::network::load_network_document(bytes)?;
    let designed = designed
        .ok_or_else(|| Error::InvalidDocument("document carries no \"designed\" block".into()))?;
    let family = TightFamily::from_tag(&designed.family).ok_or_else(|| {
        Error::InvalidDocument(format!("unknown construction family {:?}", designed.family))
    })?;
    let designed_cut = Cut::new(designed.cut.iter().copied(), network.num_relays())?;
    Ok(TightExample {
        designed_capacity_bits: CapacityBits::new(designed.capacity_bits)?,
        designed_route_bound_bits: CapacityBits::new(designed.route_bound_bits)?,
        designed_cut,
        network,
        family,
    })
}
