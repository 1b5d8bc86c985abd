//! Exact `(p, q)`-polynomial toolkit for spaces of maps between complex
//! projective spaces: polynomial arithmetic, closed-form invariants of the
//! stabilization spectral sequence, general-position certificates,
//! discriminant membership and least-squares approximation by `(p, q)`-maps.

pub mod approx;
pub mod binary_forms;
pub mod bookkeeping;
pub mod discriminant;
pub mod field;
pub mod gaussian;
pub mod genpos;
pub mod linalg;
pub mod lp;
pub mod poly;
pub mod seeds;

pub use field::{Field, FieldKind};
pub use gaussian::GaussianRational;
pub use poly::{MapTuple, PQMonomial, PQPolynomial, ProjectivePoint};
