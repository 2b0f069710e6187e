//! Calculus of polyharmonic functions on the unit disk.
//!
//! * [`symcalc`]: exact Laurent-polynomial algebra in `z, z̄`, the operators
//!   `Δ`, `M = (1-|z|²)·` and `L_θ`, Almansi and cellular decompositions.
//! * [`cellgeom`]: exact piecewise-affine curves of the `(p, α)` plane and the
//!   cell structure of the admissible region.
//! * [`kernelnum`]: numeric evaluation of the kernels `U_{j,N}`, the weighted
//!   integrals `I(a, b)`, kernel norms and annulus asymptotics.
//! * [`quadrature`]: polar adaptive quadrature on the disk, annuli and sectors.
//! * [`verify`]: seeded property suites shared by the CLI and the tests.
//!
//! The algorithms are generic over their scalar types; the aliases below fix
//! the standard choices (big rationals for exact work, `f64` for numerics).

// NaN must fail the domain guards, hence `!(x > 0)` rather than `x <= 0`.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cellgeom;
pub mod kernelnum;
pub mod quadrature;
pub mod scalar;
pub mod symcalc;
pub mod verify;

use num_complex::Complex;

pub use scalar::{Coefficient, ExactReal, Real};

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// `re + i·im` with exact rational parts.
pub type GaussRational = Complex<Rational>;
/// Laurent polynomial in `z, z̄` over the Gaussian rationals.
pub type Poly = symcalc::BiLaurent<GaussRational>;
/// Piecewise-affine function of `p` with exact rational data.
pub type Curve = cellgeom::PiecewiseAffine<Rational>;
/// Point of the `(p, α)` plane with exact coordinates.
pub type Point = cellgeom::CellPoint<Rational>;
/// Double-precision complex number.
pub type C64 = Complex<f64>;
