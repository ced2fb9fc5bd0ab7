//! Exact computations with graded pieces of Jacobian and complete-intersection
//! ideals.
//!
//! The library works in the polynomial ring `S = K[x0, ..., xn]` over an
//! exact field `K` (see [`Scalar`]). Its central objects are the graded
//! pieces `(I_W)_k` of ideals generated by `n + 1` forms of degree `d - 1`,
//! in particular the Jacobian pieces `E_k(f) = J(f) ∩ S_k` of a form `f` of
//! degree `d`. From a single such piece in a degree `d - 1 <= k <= T`, with
//! `T = (n + 1)(d - 2)` the socle degree, [`reconstruct`] recovers the
//! generators and the form itself (or, when `f` is a Sebastiani-Thom sum,
//! the linear space spanned by its summands).
//!
//! Everything is generic over the scalar type; the aliases at the crate
//! root fix it to [`BigRational`](num_rational::BigRational).

pub mod deformation;
pub mod error;
pub mod ideal;
pub mod inverse;
pub mod json;
pub mod linalg;
pub mod monomial;
mod parse;
pub mod poly;
pub mod reconstruct;
pub mod scalar;
pub mod st;
pub mod suite;

pub use error::{Error, Result};
pub use monomial::{basis_dim, mono_basis, ExponentVector};
pub use poly::HomogeneousPolynomial;
pub use scalar::Scalar;

/// Default coefficient field.
pub type Rational = num_rational::BigRational;
pub type Poly = HomogeneousPolynomial<Rational>;
pub type RationalMatrix = linalg::Matrix<Rational>;
pub type RationalSubspace = linalg::Subspace<Rational>;
pub type Generators = ideal::GeneratorTuple<Rational>;
pub type Fiber = reconstruct::FiberResult<Rational>;
pub type AssociatedForm = inverse::AssociatedForm<Rational>;
pub type StReport = st::StReport<Rational>;
