//! Arc spaces of algebraic varieties over exact fields.
//!
//! The crate builds equations for the space of morphisms from a fat point
//! into an affine variety, analyses the resulting arc schemes, and
//! classifies deformations of fat points by how far their singular
//! fibres deviate from the expected dimension.

pub mod error;
pub mod arc;
pub mod classify;
pub mod fatpoint;
pub mod field;
pub mod geometry;
pub mod groebner;
pub mod ideal;
pub mod homology;
pub mod matrix;
pub mod module;
pub mod parse;
pub mod poly;
pub mod ring;

pub use error::{AlgebraError, Result};
pub use field::{Coeff, CoefficientField};
pub use groebner::{groebner_basis, normal_form, GroebnerBasis};
pub use ideal::{Ideal, RadicalStatus};
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use ring::{Monomial, MonomialOrder, PolyRing};
