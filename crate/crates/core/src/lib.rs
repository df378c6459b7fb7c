//! Relative rank for matroids.
//!
//! The crate models a matroid through its relative-rank function
//! `r(A|B)`, defined for nested pairs `B ⊆ A`:
//!
//! * [`sets`] holds the ground-set, subset-mask and `ℕ ∪ {∞}` plumbing;
//! * [`matroid`] builds finite matroids (explicit, uniform, graphic, GF(2))
//!   and provides independence, rank, relative rank, minors and duals;
//! * [`relrank`] stores explicit relative-rank tables, checks the relative
//!   rank axioms R1–R5 on them and rebuilds the matroid a table describes;
//! * [`fincof`] realizes two matroids on the integers, over finite/cofinite
//!   sets, which share a rank function but not a relative-rank function;
//! * [`enumeration`] enumerates small matroids up to isomorphism and fuzzes
//!   tables for the reconstruction round trip.

pub mod enumeration;
pub mod error;
pub mod fincof;
pub mod matroid;
pub mod relrank;
pub mod sets;

pub use error::{Error, Result};
pub use matroid::{AxiomReport, IndependenceViolation, Matroid};
pub use relrank::{RelAxiom, RelRankReport, RelRankTable, Violation};
pub use sets::{ExtendedNat, GroundSet, SubsetMask};
