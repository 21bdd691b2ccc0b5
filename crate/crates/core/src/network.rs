//! Domain types for N-relay Gaussian full-duplex networks.
//!
//! Nodes are indexed `0..=N+1`: node 0 is the source, node `N+1` the
//! destination, nodes `1..=N` the relays. The gain matrix stores the complex
//! channel gain from each transmitter to each receiver; the source never
//! receives and the destination never transmits. A network may carry an
//! optional layer structure, in which case links exist only between
//! successive layers.
//!
//! All capacities are in bits per channel use (logarithms base 2). Transmit
//! power is fixed at one, so any SNR scaling is folded into the stored gains.

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};

/// Nonnegative capacity in bits per channel use.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct CapacityBits(f64);

impl CapacityBits {
    pub const ZERO: CapacityBits = CapacityBits(0.0);

    pub fn new(bits: f64) -> Result<Self> {
        if !bits.is_finite() || bits < 0.0 {
            return Err(Error::InvalidCapacity { value: bits });
        }
        Ok(CapacityBits(bits))
    }

    /// Clamps tiny negative rounding noise to zero; still rejects
    /// non-finite values and genuinely negative inputs.
    pub(crate) fn from_log_sum(bits: f64) -> Self {
        debug_assert!(bits.is_finite() && bits > -1e-6, "log-det sum {bits}");
        CapacityBits(bits.max(0.0))
    }

    pub fn bits(self) -> f64 {
        self.0
    }
}

impl std::fmt::Display for CapacityBits {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Layer structure of a layered network: `num_layers` relay layers with
/// `relays_per_layer` relays each.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LayerStructure {
    num_layers: usize,
    relays_per_layer: usize,
}

impl LayerStructure {
    pub fn new(num_layers: usize, relays_per_layer: usize) -> Result<Self> {
        if num_layers < 1 || relays_per_layer < 1 {
            return Err(Error::InvalidConstruction(format!(
                "layer structure requires at least one layer and one relay per layer, got L={num_layers}, N_L={relays_per_layer}"
            )));
        }
        Ok(LayerStructure {
            num_layers,
            relays_per_layer,
        })
    }

    pub fn num_layers(self) -> usize {
        self.num_layers
    }

    pub fn relays_per_layer(self) -> usize {
        self.relays_per_layer
    }

    pub fn num_relays(self) -> usize {
        self.num_layers * self.relays_per_layer
    }

    /// Layer of a node: the source is layer 0, relay k is layer
    /// ceil(k / N_L), the destination is layer L+1.
    pub fn layer_of(self, node: usize) -> usize {
        if node == 0 {
            0
        } else if node > self.num_relays() {
            self.num_layers + 1
        } else {
            (node - 1) / self.relays_per_layer + 1
        }
    }

    /// Node ids making up a layer, in increasing order. Layer 0 is `{0}`
    /// (the source) and layer L+1 is `{N+1}` (the destination).
    pub fn layer_nodes(self, layer: usize) -> Vec<usize> {
        if layer == 0 {
            vec![0]
        } else if layer == self.num_layers + 1 {
            vec![self.num_relays() + 1]
        } else {
            let start = (layer - 1) * self.relays_per_layer + 1;
            (start..start + self.relays_per_layer).collect()
        }
    }

    /// Node id of the i-th relay (1-based) in the given relay layer
    /// (1-based).
    pub fn relay(self, layer: usize, position: usize) -> usize {
        debug_assert!((1..=self.num_layers).contains(&layer));
        debug_assert!((1..=self.relays_per_layer).contains(&position));
        (layer - 1) * self.relays_per_layer + position
    }
}

/// An N-relay Gaussian full-duplex network.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    num_relays: usize,
    /// (N+2) x (N+2) gain matrix, row-major, entry [tx][rx].
    gains: Vec<Complex>,
    layering: Option<LayerStructure>,
}

impl Network {
    pub fn new(num_relays: usize) -> Result<Self> {
        if num_relays < 1 {
            return Err(Error::InvalidConstruction(
                "a network needs at least one relay".into(),
            ));
        }
        let n = num_relays + 2;
        Ok(Network {
            num_relays,
            gains: vec![Complex::ZERO; n * n],
            layering: None,
        })
    }

    pub fn new_layered(num_layers: usize, relays_per_layer: usize) -> Result<Self> {
        let layering = LayerStructure::new(num_layers, relays_per_layer)?;
        let mut net = Network::new(layering.num_relays())?;
        net.layering = Some(layering);
        Ok(net)
    }

    pub fn num_relays(&self) -> usize {
        self.num_relays
    }

    pub fn num_nodes(&self) -> usize {
        self.num_relays + 2
    }

    pub fn source(&self) -> usize {
        0
    }

    pub fn destination(&self) -> usize {
        self.num_relays + 1
    }

    pub fn layering(&self) -> Option<LayerStructure> {
        self.layering
    }

    /// Gain from transmitter `tx` to receiver `rx`. Panics on out-of-range
    /// indices.
    pub fn gain(&self, tx: usize, rx: usize) -> Complex {
        let n = self.num_nodes();
        assert!(tx < n && rx < n, "node index out of range");
        self.gains[tx * n + rx]
    }

    fn check_node(&self, index: usize) -> Result<()> {
        if index >= self.num_nodes() {
            return Err(Error::NodeOutOfRange {
                index,
                max: self.destination(),
            });
        }
        Ok(())
    }

    /// Sets the gain of one directed link. Nonzero gains are rejected on
    /// self links, links into the source, links out of the destination,
    /// and, for layered networks, links that do not go from one layer to
    /// the next.
    pub fn set_gain(&mut self, tx: usize, rx: usize, gain: Complex) -> Result<()> {
        self.check_node(tx)?;
        self.check_node(rx)?;
        // components can be finite while |h|^2 overflows
        if !gain.norm_sqr().is_finite() {
            return Err(Error::NonFinite {
                what: "squared gain magnitude",
            });
        }
        if !gain.is_zero() {
            if tx == rx {
                return Err(Error::ForbiddenEndpoint {
                    reason: format!("self link at node {tx}"),
                });
            }
            if rx == 0 {
                return Err(Error::ForbiddenEndpoint {
                    reason: "the source never receives".into(),
                });
            }
            if tx == self.destination() {
                return Err(Error::ForbiddenEndpoint {
                    reason: "the destination never transmits".into(),
                });
            }
            if let Some(layers) = self.layering {
                if layers.layer_of(rx) != layers.layer_of(tx) + 1 {
                    return Err(Error::InvariantViolation {
                        field: "layers",
                        message: format!(
                            "link {tx}->{rx} does not connect successive layers ({} -> {})",
                            layers.layer_of(tx),
                            layers.layer_of(rx)
                        ),
                    });
                }
            }
        }
        let n = self.num_nodes();
        self.gains[tx * n + rx] = gain;
        Ok(())
    }

    /// Sets one link to the real gain realizing `bits` of point-to-point
    /// capacity.
    pub fn set_link_capacity(&mut self, tx: usize, rx: usize, bits: f64) -> Result<()> {
        self.set_gain(tx, rx, gain_for_capacity(bits)?)
    }

    pub fn relays(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.num_relays
    }

    /// Nonzero-gain out-neighbors of a node, in increasing order.
    pub fn neighbors_out(&self, node: usize) -> Vec<usize> {
        (0..self.num_nodes())
            .filter(|&rx| !self.gain(node, rx).is_zero())
            .collect()
    }
}

/// Point-to-point capacity of the link from `tx` to `rx`:
/// log2(1 + |h|^2).
///
/// Valid transmitters are the source and the relays; valid receivers are
/// the relays and the destination.
pub fn link_capacity(net: &Network, tx: usize, rx: usize) -> Result<CapacityBits> {
    if tx > net.num_relays() {
        return Err(if tx == net.destination() {
            Error::ForbiddenEndpoint {
                reason: "the destination never transmits".into(),
            }
        } else {
            Error::NodeOutOfRange {
                index: tx,
                max: net.destination(),
            }
        });
    }
    if rx == 0 {
        return Err(Error::ForbiddenEndpoint {
            reason: "the source never receives".into(),
        });
    }
    if rx > net.destination() {
        return Err(Error::NodeOutOfRange {
            index: rx,
            max: net.destination(),
        });
    }
    if tx == rx {
        return Err(Error::ForbiddenEndpoint {
            reason: format!("self link at node {tx}"),
        });
    }
    let g = net.gain(tx, rx);
    CapacityBits::new((1.0 + g.norm_sqr()).log2())
}

/// Real nonnegative gain whose point-to-point capacity is `bits`:
/// sqrt(2^bits - 1), adjusted by at most a few ulps so that the round trip
/// through [`link_capacity`] lands as close to `bits` as floating point
/// allows (exactly, for all but pathological targets).
pub fn gain_for_capacity(bits: f64) -> Result<Complex> {
    if !bits.is_finite() || bits < 0.0 {
        return Err(Error::InvalidCapacity { value: bits });
    }
    if bits == 0.0 {
        return Ok(Complex::ZERO);
    }
    let base = (bits.exp2() - 1.0).sqrt();
    let round_trip_error = |g: f64| ((1.0 + g * g).log2() - bits).abs();
    let mut best = base;
    let mut best_err = round_trip_error(base);
    let mut lo = base;
    let mut hi = base;
    for _ in 0..24 {
        if best_err == 0.0 {
            break;
        }
        lo = lo.next_down();
        hi = hi.next_up();
        for cand in [lo, hi] {
            if cand <= 0.0 {
                continue;
            }
            let err = round_trip_error(cand);
            if err < best_err {
                best = cand;
                best_err = err;
            }
        }
    }
    Complex::real(best)
}

// ---------------------------------------------------------------------------
// JSON document
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkDocument {
    num_relays: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    layers: Option<LayersDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gains: Option<Vec<GainEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    link_capacities: Option<Vec<LinkCapacityEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    designed: Option<DesignedBlock>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayersDocument {
    #[serde(rename = "L")]
    num_layers: usize,
    #[serde(rename = "N_L")]
    relays_per_layer: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GainEntry {
    from: usize,
    to: usize,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LinkCapacityEntry {
    from: usize,
    to: usize,
    bits: f64,
}

/// Sidecar block emitted next to generated example networks: the intended
/// capacity, minimum cut, best-route bound and construction family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignedBlock {
    pub capacity_bits: f64,
    pub cut: Vec<usize>,
    pub route_bound_bits: f64,
    pub family: String,
}

/// Parses and validates a network document, returning the network together
/// with its optional `designed` sidecar block.
pub fn load_network_document(bytes: &[u8]) -> Result<(Network, Option<DesignedBlock>)> {
    let doc: NetworkDocument = serde_json::from_slice(bytes)?;
    if doc.num_relays < 1 {
        return Err(Error::InvalidDocument(
            "num_relays must be at least 1".into(),
        ));
    }
    let mut net = match &doc.layers {
        Some(layers) => {
            let structure = LayerStructure::new(layers.num_layers, layers.relays_per_layer)
                .map_err(|e| Error::InvalidDocument(e.to_string()))?;
            if structure.num_relays() != doc.num_relays {
                return Err(Error::InvalidDocument(format!(
                    "layers L={} x N_L={} do not cover num_relays={}",
                    layers.num_layers, layers.relays_per_layer, doc.num_relays
                )));
            }
            Network::new_layered(layers.num_layers, layers.relays_per_layer)?
        }
        None => Network::new(doc.num_relays)?,
    };
    match (&doc.gains, &doc.link_capacities) {
        (Some(_), Some(_)) => {
            return Err(Error::InvalidDocument(
                "document must carry exactly one of \"gains\" and \"link_capacities\", found both"
                    .into(),
            ))
        }
        (None, None) => return Err(Error::InvalidDocument(
            "document must carry exactly one of \"gains\" and \"link_capacities\", found neither"
                .into(),
        )),
        _ => {}
    }
    let mut seen = std::collections::HashSet::new();
    let mut check_pair = |from: usize, to: usize| -> Result<()> {
        if !seen.insert((from, to)) {
            return Err(Error::InvalidDocument(format!(
                "duplicate entry for link {from}->{to}"
            )));
        }
        Ok(())
    };
    if let Some(gains) = &doc.gains {
        for entry in gains {
            check_pair(entry.from, entry.to)?;
            if !(entry.re.is_finite() && entry.im.is_finite()) {
                return Err(Error::InvalidDocument(format!(
                    "non-finite gain on link {}->{}",
                    entry.from, entry.to
                )));
            }
            let gain = Complex::new(entry.re, entry.im)?;
            net.set_gain(entry.from, entry.to, gain)
                .map_err(|e| Error::InvalidDocument(e.to_string()))?;
        }
    }
    if let Some(links) = &doc.link_capacities {
        for entry in links {
            check_pair(entry.from, entry.to)?;
            if !entry.bits.is_finite() || entry.bits < 0.0 {
                return Err(Error::InvalidDocument(format!(
                    "link {}->{} capacity must be finite and nonnegative, got {}",
                    entry.from, entry.to, entry.bits
                )));
            }
            net.set_link_capacity(entry.from, entry.to, entry.bits)
                .map_err(|e| Error::InvalidDocument(e.to_string()))?;
        }
    }
    Ok((net, doc.designed))
}

/// Parses and validates a network document.
pub fn load_network(bytes: &[u8]) -> Result<Network> {
    load_network_document(bytes).map(|(net, _)| net)
}

/// Serializes a network (and an optional `designed` sidecar) as a JSON
/// document. Gains are emitted sorted by (from, to); zero gains are
/// omitted. Loading the result reproduces the network bit for bit.
pub fn save_network_with_designed(net: &Network, designed: Option<&DesignedBlock>) -> Vec<u8> {
    let mut gains = Vec::new();
    for tx in 0..net.num_nodes() {
        for rx in 0..net.num_nodes() {
            let g = net.gain(tx, rx);
            if !g.is_zero() {
                gains.push(GainEntry {
                    from: tx,
                    to: rx,
                    re: g.re(),
                    im: g.im(),
                });
            }
        }
    }
    let doc = NetworkDocument {
        num_relays: net.num_relays(),
        layers: net.layering().map(|l| LayersDocument {
            num_layers: l.num_layers(),
            relays_per_layer: l.relays_per_layer(),
        }),
        gains: Some(gains),
        link_capacities: None,
        designed: designed.cloned(),
    };
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("network document serializes");
    bytes.push(b'\n');
    bytes
}

/// Serializes a network as a JSON document.
pub fn save_network(net: &Network) -> Vec<u8> {
    save_network_with_designed(net, None)
}
