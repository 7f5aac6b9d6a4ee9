//! Token graphs of weighted graphs and what their extremal spectra say
//! about the QMC, XY, and EPR Hamiltonians.
//!
//! The k-th token graph F_k(G) places k indistinguishable tokens on
//! distinct vertices of G; configurations are adjacent when one token can
//! slide along an edge. The Hamming-weight-k block of the QMC Hamiltonian
//! is the Laplacian of F_k(G), the EPR block is the signless Laplacian, and
//! the XY block is (W/2)I minus the adjacency matrix. This crate builds the
//! token graphs, computes the spectra, evaluates the matching/cut bounds on
//! the extremal energies over graph families and streams, runs the
//! matching-polytope separation oracle, and certifies approximation ratios
//! for the product/matching state algorithms.

pub mod approx;
pub mod conjecture;
pub mod ears;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod hamiltonian;
pub mod matching;
pub mod oracle;
pub mod spectra;
pub mod token;

pub use error::{Error, Result};
pub use graph::{Edge, GraphFamily, GraphPredicates, WeightDistribution, WeightedGraph};
pub use hamiltonian::{Extremum, Problem};
pub use token::TokenGraph;
