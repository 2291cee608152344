//! Partial-twuality polynomials of square matrices over GF(2), GF(p) and Q.
//!
//! Five polynomials are attached to every square matrix `M`, one per
//! non-trivial twuality operator, by summing `z^r(M, A)` over all subsets
//! `A` of the index set, where `r` is a combination of ranks and coranks of
//! `M`, `M + I_A` and their principal submatrices. Grafts (graphs with a
//! marked vertex set) and bouquets (one-vertex ribbon graphs) feed the same
//! machinery: a graft through its GF(2) adjacency matrix, a bouquet through
//! its intersection graft. Bouquets also carry an independent topological
//! route, face tracing, used to cross-check the matrix side.
//!
//! All arithmetic is exact.

pub mod bouquet;
mod dense;
pub mod error;
pub mod field;
pub mod generate;
mod gf2;
pub mod graft;
pub mod matrix;
pub mod poly;
mod rank;
pub mod twuality;
pub mod verify;

pub use bouquet::Bouquet;
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use graft::Graft;
pub use matrix::{Matrix, Subset};
pub use poly::{GapReport, IntPolynomial};
pub use rank::MAX_MASK_BITS;
pub use twuality::{Operator, PolynomialSet, SweepConfig};
