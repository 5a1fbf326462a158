//! Continuous-time quantum walks on weighted graphs: spectral decomposition,
//! state transfer between pair and s-pair states, and the graph operations
//! (cluster attachment, complements, joins, products, coronas) that move
//! transfer from one graph to another.

pub mod coherent;
pub mod construct;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod random;
pub mod spectral;
pub mod transfer;

pub use error::{Error, Result};
pub use graph::{
    detect_clusters, pair_state, s_pair_state, vertex_state, Cluster, GraphFile, HamiltonianModel, RealPureState,
    StateKind, WeightedGraph,
};
pub use spectral::{Support, SpectralDecomposition};
pub use transfer::{SignMap, TransferCertificate, Verdict};

pub use nalgebra;
pub use num_complex::Complex64;
