//! Exact combinatorics of t-quantized Cartan matrices: Cartan data,
//! Weyl-group words, Dynkin and AR quivers, the inverse of the
//! t-quantized Cartan matrix, the associated quantum torus and the
//! compatible pairs of the attached quantum cluster structures.

pub mod cartan;
pub mod error;
pub mod golden;
pub mod laurent;
pub mod pairs;
pub mod quiver;
pub mod suites;
pub mod tcartan;
pub mod torus;
pub mod weyl;

pub use cartan::{build_datum, Basis, CartanDatum, CartanType, Family, LatticeVec};
pub use error::{Error, Result};
pub use quiver::{DynkinQuiver, RepVertex};
pub use torus::{Torus, TorusElement, TorusMonomial};
pub use weyl::{PhiHat, WeylElement, Word};
