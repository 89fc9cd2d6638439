//! Weak Lefschetz Property of Artinian monomial algebras
//! `A(Δ) = k[x_1..x_n] / (x_1^2, ..., x_n^2, I_Δ)` attached to simplicial
//! complexes, decided both by exact rank and by combinatorial criteria, and
//! Gorenstein algebras failing it built by Nagata idealization.

pub mod complex;
pub mod gorenstein;
pub mod graph;
pub mod lefschetz;
pub mod linalg;
pub mod par;
pub mod validate;

pub use complex::{builtin, Face, FVector, PseudomanifoldStatus, SimplicialComplex};
pub use graph::Graph;
pub use lefschetz::{AlgebraModel, LinearForm, Verdict, WlpReport};
pub use linalg::IntMatrix;
pub use par::Exec;
