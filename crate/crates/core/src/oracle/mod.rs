//! Brute-force ground truth from finite groups: enumeration, conjugacy
//! classes, exact character tables and restriction multiplicities.

pub mod cache;
pub mod classes;
pub mod dixon;
pub mod group;
pub mod lusztig;
pub mod multiplicity;
pub mod pairs;
pub mod prasad;
pub mod suites;
pub mod table;

pub use classes::{conjugacy_classes, ConjClasses};
pub use dixon::{character_table, dixon_table};
pub use group::{enumerate_gl, FiniteMatrixGroup};
pub use lusztig::{lusztig_xi, XiClass};
pub use multiplicity::{multiplicity_trivial, twisted_multiplicity};
pub use pairs::{build_pair, PairKind, SymmetricPairSpec};
pub use table::CharacterTable;
