//! Which tame cuspidal parameters of `GL_n(K)` and of its inner forms
//! `GL_μ(Δ)` are distinguished by `GL_n(F)` and `GL_m(D)`.
//!
//! The crate has two halves. The decision engine ([`criterion`], on top of
//! [`localdata`] and [`charlat`]) answers distinction questions from the
//! tame parameter alone. The oracle side ([`oracle`], [`green`]) recomputes
//! the same answers from exact character tables of small finite groups, so
//! that every closed-form rule can be checked against brute force.
//! [`buildings`] models the apartment combinatorics used for the fixed-vertex
//! counts.

mod arith;
pub mod buildings;
pub mod charlat;
pub mod criterion;
mod error;
pub mod ffield;
pub mod green;
pub mod localdata;
pub mod oracle;

pub use buildings::{ApartmentPoint, CaseTag};
pub use charlat::{CycloInt, MultChar, RootOfUnity};
pub use criterion::{Case, Certificate, DistinctionVerdict};
pub use error::{Error, Result};
pub use ffield::{FieldElement, FieldSpec, Mat};
pub use green::CuspidalLabel;
pub use localdata::{LocalSetup, Ramification, TameParameter};
pub use oracle::{CharacterTable, FiniteMatrixGroup, SymmetricPairSpec, XiClass};
