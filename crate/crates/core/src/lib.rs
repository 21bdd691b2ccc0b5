//! Capacity analysis for Gaussian full-duplex relay networks.
//!
//! The crate computes the approximate (cut-set) capacity of an N-relay
//! network as the exact minimum over all cuts of the crossing MIMO
//! channel's log-det capacity, finds the best multi-hop route by widest
//! path, and checks the route against its guaranteed share of the network
//! capacity. It also carries the MIMO subchannel-selection machinery the
//! guarantees rest on (brute-force and greedy antenna selection with their
//! bounds), generators for the worst-case networks where the guarantees
//! are attained with equality, and a seeded Monte Carlo harness with CSV
//! output.
//!
//! Everything is deterministic: enumeration tie-breaks are fixed, and the
//! random ensembles are counter-based functions of (seed, trial), so
//! results never depend on thread scheduling.
//!
//! ## Example
//!
//! ```rust
//! use relaycap::{approx_capacity, best_route, check_route_guarantee, Network};
//!
//! // a two-relay network: a strong two-hop branch and a weak one
//! let mut net = Network::new(2)?;
//! net.set_link_capacity(0, 1, 2.0)?;
//! net.set_link_capacity(1, 3, 5.0)?;
//! net.set_link_capacity(0, 2, 1.0)?;
//! net.set_link_capacity(2, 3, 1.0)?;
//!
//! // the source-only cut combines both outgoing links into one SIMO
//! // channel: log2(1 + 3 + 1) bits
//! let (capacity, min_cut) = approx_capacity(&net)?;
//! assert!((capacity.bits() - 5.0_f64.log2()).abs() < 1e-9);
//! assert_eq!(min_cut.members(), &[0]);
//!
//! let (path, bottleneck) = best_route(&net)?;
//! assert_eq!(path.nodes(), &[0, 1, 3]);
//! assert_eq!(bottleneck.bits(), 2.0);
//!
//! let report = check_route_guarantee(&net)?;
//! assert!(report.satisfied);
//! # Ok::<(), relaycap::Error>(())
//! ```

pub mod combin;
pub mod complex;
pub mod constructions;
pub mod cutset;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod mimo_select;
pub mod network;
pub mod rng;
pub mod routing;

pub use complex::Complex;
pub use constructions::{
    construct_general_tight, construct_layered_tight, verify_tight_example, TightExample,
    TightFamily,
};
pub use cutset::{approx_capacity, cut_value, t_max, t_of_cut, Cut};
pub use error::{Error, Result};
pub use linalg::{mimo_capacity, ComplexMatrix, IndexSet, RealPolynomial};
pub use mimo_select::{
    best_subchannel_bruteforce, greedy_subchannel, selection_fraction, SubchannelSelection,
};
pub use network::{
    gain_for_capacity, link_capacity, load_network, save_network, CapacityBits, LayerStructure,
    Network,
};
pub use routing::{best_route, check_route_guarantee, path_capacity, GuaranteeReport, Path};
