//! Graph embedding under radial centrality constraints.
//!
//! Nodes are placed in ℝᵖ so that pairwise distances approximate target
//! dissimilarities (shortest-path or commute-time) while each node stays
//! inside a ball whose radius shrinks with its centrality. An optional
//! Laplacian smoothness penalty pulls adjacent nodes together.
//!
//! ```
//! use radmds::{centrality, dissimilarity, graph::Graph, solver};
//!
//! let g = Graph::unweighted(4, [(0, 1), (1, 2), (2, 3), (1, 3)]).unwrap();
//! let c = centrality::betweenness(&g).unwrap();
//! let radii = centrality::radius_transform(&c, radmds::graph::diameter(&g).unwrap()).unwrap();
//! let delta = dissimilarity::ectd(&g).unwrap();
//! let sol = solver::solve(&g, &delta, &radii, &solver::SolverConfig::default()).unwrap();
//! assert_eq!(sol.embedding.len(), 4);
//! ```

pub mod centrality;
pub mod dissimilarity;
pub mod error;
pub mod export;
pub mod graph;
pub mod pipeline;
pub mod render;
pub mod solver;

pub use centrality::{CentralityKind, CentralityVector, RadiusVector};
pub use dissimilarity::{DissimilarityKind, DissimilarityMatrix};
pub use error::{Error, ErrorClass, Result};
pub use graph::{EdgeListFormat, Graph};
pub use solver::{Embedding, Solution, SolverConfig, SolverTrace, Termination};
