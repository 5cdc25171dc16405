//! Finite Brouwer algebras and intermediate propositional logics.
//!
//! - [`poset`]: finite posets, up-sets, enumeration up to isomorphism.
//! - [`algebra`]: table-backed Brouwer algebras `B(P)`, `B_n`, intervals,
//!   factors, homomorphisms.
//! - [`freedist`]: the free distributive lattice `F_n` in normal form.
//! - [`logic`]: formulas, evaluation, validity, countermodel search.
//!
//! Throughout, `+` is the lattice join, `×` the meet, and the least element is
//! the designated truth value.

pub mod algebra;
mod bits;
pub mod error;
pub mod freedist;
pub mod logic;
pub mod poset;

pub use algebra::{bn, AlgebraMap, BrouwerAlgebra};
pub use bits::BitMatrix;
pub use error::{Error, Result};
pub use freedist::FreeElement;
pub use logic::{parse, Formula, ValidityReport, Valuation};
pub use poset::{Poset, UpSet};
