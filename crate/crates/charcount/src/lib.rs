//! Exact point counts of generic character varieties over finite fields.
//!
//! The library computes, for a split reductive group `G` with connected
//! centre and a punctured surface, the polynomial in `q` counting points of
//! the associated generic character variety: a multiplicative version built
//! from principal-series characters, and an additive (Lie-algebra) version
//! built from nilpotent orbits and Green functions.  Everything is exact:
//! big-rational polynomial arithmetic, integer lattice reductions, and
//! combinatorial data tables; no floats, no hidden truncation.

pub mod cartan;
pub mod counting;
pub mod error;
pub mod golden;
pub mod group_data;
pub mod intmat;
pub mod kostka;
pub mod poly;
pub mod poset;
pub mod root_data;
pub mod type_engine;
pub mod typea;
pub mod weyl;

pub use counting::{
    count, count_additive, count_multiplicative, euler_characteristic, CountResult, ExecMode,
    Variant,
};
pub use error::{Error, Result};
pub use golden::{reproduce, CellReport, CellStatus, FIGURES};
pub use group_data::{GroupDataPack, Registry};
pub use intmat::IntMatrix;
pub use poly::{FactoredPoly, QPolynomial, MAX_CYCLOTOMIC_INDEX};
pub use type_engine::{GTypeRecord, LieTypeRecord, TypeContext};
