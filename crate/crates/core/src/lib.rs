//! Exact polynomial kernel, ideal operations and graded homology for curves
//! in projective space.

pub mod cohomology;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod resolution;
pub mod poly;
pub mod ring;

pub use error::{Error, Result};
pub use ideal::{Ideal, SingularLocus};
pub use resolution::{BettiTable, Resolution};
pub use field::{Field, FieldSpec, PrimeField, Rationals, DEFAULT_PRIME};
pub use matrix::PolyMatrix;
pub use monomial::Mono;
pub use poly::{Poly, Term};
pub use ring::{Budget, MonoOrder, Ring, RingRef};
