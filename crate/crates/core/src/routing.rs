//! Path capacity, best-route search, and the route-vs-network capacity
//! guarantee calculators.
//!
//! The capacity of a route is its bottleneck link. The best route maximizes
//! that bottleneck; ties go to fewer hops, then to the lexicographically
//! smallest node sequence, so results are reproducible.

use crate::cutset::DEFAULT_EXHAUSTIVE_CAP;
use crate::error::{Error, Result};
use crate::network::{link_capacity, CapacityBits, Network};

/// Cap on the relay count for exhaustive path enumeration.
pub const MAX_ENUMERATION_RELAYS: usize = 10;

/// A simple route from the source to the destination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    nodes: Vec<usize>,
}

impl Path {
    /// Validates a node sequence as a route of `net`: starts at the
    /// source, ends at the destination, visits distinct relays in between,
    /// and every hop has a nonzero gain.
    pub fn new(nodes: Vec<usize>, net: &Network) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidPath(
                "a path needs at least the source and the destination".into(),
            ));
        }
        if nodes[0] != net.source() {
            return Err(Error::InvalidPath("a path starts at the source".into()));
        }
        if *nodes.last().unwrap() != net.destination() {
            return Err(Error::InvalidPath("a path ends at the destination".into()));
        }
        let mut seen = vec![false; net.num_nodes()];
        for (i, &node) in nodes.iter().enumerate() {
            if node >= net.num_nodes() {
                return Err(Error::NodeOutOfRange {
                    index: node,
                    max: net.destination(),
                });
            }
            if i != 0 && i != nodes.len() - 1 && (node == net.source() || node == net.destination())
            {
                return Err(Error::InvalidPath(format!(
                    "interior node {node} must be a relay"
                )));
            }
            if seen[node] {
                return Err(Error::InvalidPath(format!("repeated node {node}")));
            }
            seen[node] = true;
        }
        for hop in nodes.windows(2) {
            if net.gain(hop[0], hop[1]).is_zero() {
                return Err(Error::InvalidPath(format!(
                    "hop {}->{} has zero gain",
                    hop[0], hop[1]
                )));
            }
        }
        Ok(Path { nodes })
    }

    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn hops(&self) -> usize {
        self.nodes.len() - 1
    }
}

/// Bottleneck capacity of a route: the minimum link capacity along it.
pub fn path_capacity(net: &Network, path: &Path) -> Result<CapacityBits> {
    let mut bottleneck = f64::INFINITY;
    for hop in path.nodes().windows(2) {
        let bits = link_capacity(net, hop[0], hop[1])?.bits();
        if bits == 0.0 {
            return Err(Error::InvalidPath(format!(
                "hop {}->{} has zero gain",
                hop[0], hop[1]
            )));
        }
        bottleneck = bottleneck.min(bits);
    }
    CapacityBits::new(bottleneck)
}

/// Link capacities of all nonzero links, as an adjacency table.
fn capacity_table(net: &Network) -> Vec<Vec<(usize, f64)>> {
    let n = net.num_nodes();
    let mut adj = vec![Vec::new(); n];
    for tx in 0..n - 1 {
        for rx in 1..n {
            if tx != rx && !net.gain(tx, rx).is_zero() {
                let bits = link_capacity(net, tx, rx).expect("valid endpoints").bits();
                adj[tx].push((rx, bits));
            }
        }
    }
    adj
}

/// The route maximizing the bottleneck capacity, found by a widest-path
/// search over the nonzero-gain links. Among maximizers the route with the
/// fewest hops wins, then the lexicographically smallest node sequence.
/// A network with no source-destination path is an error, not zero bits.
pub fn best_route(net: &Network) -> Result<(Path, CapacityBits)> {
    let n = net.num_nodes();
    let source = net.source();
    let dest = net.destination();
    let adj = capacity_table(net);

    // Widest-path relaxation: best[v] is the largest bottleneck over paths
    // from the source to v. Capacities are compared exactly as computed.
    let mut best = vec![f64::NEG_INFINITY; n];
    let mut settled = vec![false; n];
    best[source] = f64::INFINITY;
    loop {
        let mut pick = None;
        let mut pick_width = f64::NEG_INFINITY;
        for v in 0..n {
            if !settled[v] && best[v] > pick_width {
                pick_width = best[v];
                pick = Some(v);
            }
        }
        let Some(u) = pick else { break };
        if pick_width == f64::NEG_INFINITY {
            break;
        }
        settled[u] = true;
        if u == dest {
            break;
        }
        for &(v, bits) in &adj[u] {
            let width = best[u].min(bits);
            if width > best[v] {
                best[v] = width;
            }
        }
    }
    let width = best[dest];
    if width == f64::NEG_INFINITY {
        return Err(Error::Disconnected);
    }

    // Restrict to links at least as wide as the optimum; every surviving
    // source-destination path has bottleneck exactly `width`. A reverse
    // breadth-first pass gives hop distances to the destination.
    let mut dist_to_dest = vec![usize::MAX; n];
    dist_to_dest[dest] = 0;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(dest);
    while let Some(v) = queue.pop_front() {
        for u in 0..n {
            if dist_to_dest[u] == usize::MAX
                && adj[u].iter().any(|&(w, bits)| w == v && bits >= width)
            {
                dist_to_dest[u] = dist_to_dest[v] + 1;
                queue.push_back(u);
            }
        }
    }
    debug_assert_ne!(dist_to_dest[source], usize::MAX);

    // Walk greedily toward the destination, always taking the smallest
    // next node that stays on a shortest route.
    let mut nodes = vec![source];
    let mut current = source;
    while current != dest {
        let next = adj[current]
            .iter()
            .filter(|&&(v, bits)| {
                bits >= width
                    && dist_to_dest[v] != usize::MAX
                    && dist_to_dest[v] + 1 == dist_to_dest[current]
            })
            .map(|&(v, _)| v)
            .min()
            .expect("shortest-path step exists");
        nodes.push(next);
        current = next;
    }
    let path = Path::new(nodes, net)?;
    debug_assert_eq!(path_capacity(net, &path)?.bits(), width);
    Ok((path, CapacityBits::new(width)?))
}

/// All simple source-destination routes through nonzero links with at most
/// `max_hops` hops, in lexicographic order. Exhaustive; capped at
/// [`MAX_ENUMERATION_RELAYS`] relays.
pub fn enumerate_paths(net: &Network, max_hops: usize) -> Result<Vec<Path>> {
    if net.num_relays() > MAX_ENUMERATION_RELAYS {
        return Err(Error::TooManyRelays {
            num_relays: net.num_relays(),
            cap: MAX_ENUMERATION_RELAYS,
        });
    }
    let adj = capacity_table(net);
    let dest = net.destination();
    let mut paths = Vec::new();
    let mut stack = vec![net.source()];
    let mut visited = vec![false; net.num_nodes()];
    visited[net.source()] = true;

    fn dfs(
        adj: &[Vec<(usize, f64)>],
        dest: usize,
        max_hops: usize,
        stack: &mut Vec<usize>,
        visited: &mut Vec<bool>,
        paths: &mut Vec<Vec<usize>>,
    ) {
        let current = *stack.last().unwrap();
        if current == dest {
            paths.push(stack.clone());
            return;
        }
        if stack.len() > max_hops {
            return;
        }
        for &(v, _) in &adj[current] {
            if !visited[v] {
                visited[v] = true;
                stack.push(v);
                dfs(adj, dest, max_hops, stack, visited, paths);
                stack.pop();
                visited[v] = false;
            }
        }
    }

    let mut raw = Vec::new();
    dfs(&adj, dest, max_hops, &mut stack, &mut visited, &mut raw);
    for nodes in raw {
        paths.push(Path::new(nodes, net)?);
    }
    Ok(paths)
}

/// Guaranteed fraction and additive gap (bits) for the best route of any
/// network with the given relay count: fraction 1/(floor(N/2)+1), gap
/// 2 log2((N+2)/2).
pub fn single_path_guarantee(num_relays: usize) -> (f64, f64) {
    let denom = (num_relays / 2 + 1) as f64;
    let gap = 2.0 * ((num_relays as f64 + 2.0) / 2.0).log2();
    (1.0 / denom, gap)
}

/// Guaranteed fraction and additive gap (bits) for the best route of a
/// layered network: fraction 2/((L-1) N_L + 4) for odd L and
/// 2/(L N_L + 2) for even L, gap 2 log2(N_L).
pub fn layered_path_guarantee(num_layers: usize, relays_per_layer: usize) -> (f64, f64) {
    let l = num_layers;
    let nl = relays_per_layer;
    let fraction = if l % 2 == 1 {
        2.0 / ((l - 1) as f64 * nl as f64 + 4.0)
    } else {
        2.0 / (l as f64 * nl as f64 + 2.0)
    };
    let gap = 2.0 * (nl as f64).log2();
    (fraction, gap)
}

/// Outcome of checking the best route against its guaranteed share of the
/// approximate network capacity.
#[derive(Clone, Copy, Debug)]
pub struct GuaranteeReport {
    pub best_route_bits: f64,
    pub approx_capacity_bits: f64,
    /// Guaranteed fraction of the approximate capacity.
    pub fraction: f64,
    /// Additive gap of the guarantee, in bits.
    pub additive_gap_bits: f64,
    /// Whether best_route >= fraction * capacity - gap held (to 1e-9 bits).
    pub satisfied: bool,
}

impl GuaranteeReport {
    /// fraction * capacity - gap, the bound the route is compared against.
    pub fn bound_bits(&self) -> f64 {
        self.fraction * self.approx_capacity_bits - self.additive_gap_bits
    }

    /// Achieved route share of the approximate capacity.
    pub fn fraction_achieved(&self) -> f64 {
        if self.approx_capacity_bits > 0.0 {
            self.best_route_bits / self.approx_capacity_bits
        } else {
            0.0
        }
    }
}

/// Computes the best route and the approximate capacity, picks the layered
/// guarantee when the network carries a layer structure and the general
/// one otherwise, and reports whether the guarantee held.
pub fn check_route_guarantee(net: &Network) -> Result<GuaranteeReport> {
    check_route_guarantee_with_cap(net, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn check_route_guarantee_with_cap(net: &Network, cap: usize) -> Result<GuaranteeReport> {
    let (capacity, _) = crate::cutset::approx_capacity_with_cap(net, cap)?;
    let (_, route_bits) = best_route(net)?;
    let (fraction, gap) = match net.layering() {
        Some(layers) => layered_path_guarantee(layers.num_layers(), layers.relays_per_layer()),
        None => single_path_guarantee(net.num_relays()),
    };
    let bound = fraction * capacity.bits() - gap;
    Ok(GuaranteeReport {
        best_route_bits: route_bits.bits(),
        approx_capacity_bits: capacity.bits(),
        fraction,
        additive_gap_bits: gap,
        satisfied: route_bits.bits() >= bound - 1e-9,
    })
}
