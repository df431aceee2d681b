//! Decide the additive Deligne–Simpson problem and construct its rigid
//! solutions.
//!
//! The problem: given conjugacy classes `C₁, …, C_k` of `n × n` matrices,
//! is there an *irreducible* tuple `(A₁, …, A_k)` with `A_i ∈ C_i` and
//! `A₁ + … + A_k = 0`?  (Irreducible: no common invariant subspace other
//! than `0` and the whole space.)
//!
//! The classes are encoded as a star-shaped quiver with a dimension
//! vector `α` and a weight `λ`: the center carries `n`, each arm carries
//! the ranks of the partial products `(A_i − ξ_{i,1}) ⋯ (A_i − ξ_{i,j})`
//! over the distinct eigenvalues `ξ_{i,·}` of `C_i`.  Existence of an
//! irreducible solution is equivalent to membership of `α` in a
//! distinguished set `Σ_λ` of positive roots of the associated Kac–Moody
//! root system, which this crate decides exactly — over the rationals,
//! with no floating point — and certifies:
//!
//! * members that are *real* roots have exactly one solution up to
//!   simultaneous conjugation, and [`rep::construct_rigid`] builds it by
//!   reflection functors;
//! * members that are *imaginary* roots have infinitely many solutions;
//! * non-members come with a checkable witness — a violated trace
//!   condition, failure of `α` to be a root, or a decomposition of `α`
//!   into admissible roots whose defects sum to at least `p(α)`.
//!
//! Specialized deciders exist for nilpotent classes (a purely structural
//! classification) and for generic eigenvalues (membership reduces to the
//! root condition); [`api::decide_tuple`] routes between them.  The
//! `adsp` binary exposes the pipeline as `decide`, `rigid`, `construct`,
//! `verify`, and `roots` subcommands over JSON files, and the companion
//! `adsp-ffi` crate exports the same operations over a C ABI.

pub mod api;
pub mod class;
pub mod cli;
pub mod decide;
pub mod error;
pub mod io;
pub mod matrix;
pub mod rational;
pub mod rep;
pub mod star;

pub use class::{ClassTuple, JordanClass, XiSequence};
pub use decide::{Caps, Certificate, Decision, SolutionCount};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use rational::Rat;
pub use rep::{MatrixSolution, QuiverRep, TieBreak, VerifyReport};
pub use star::{DimVector, Instance, RootClass, StarQuiver, Weight};
