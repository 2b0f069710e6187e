//! Scalar traits shared by the exact and the floating-point halves of the crate.
//!
//! Three families of scalars show up:
//!
//! * [`Coefficient`]: the coefficient field of symbolic polynomials
//!   (exact rationals, Gaussian rationals).
//! * [`ExactReal`]: ordered exact fields used for the piecewise-affine
//!   geometry of the parameter plane.
//! * [`Real`]: floating-point types (`f32`, `f64`) for numerics.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::ToBigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Exact field used for polynomial coefficients.
pub trait Coefficient:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;

    /// Complex conjugate (identity for real fields).
    fn conj(&self) -> Self;

    /// Nearest floating-point complex value.
    fn to_complex<F: Real>(&self) -> Complex<F>;
}

/// Ordered exact field.
pub trait ExactReal: Clone + Ord + Num + Signed + Debug + Display + Coefficient {
    fn to_real<F: Real>(&self) -> F;
}

/// Floating-point scalar for numeric evaluation.
pub trait Real: Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Lossy conversion from `f64`.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Integer types usable as numerator/denominator of an exact rational.
pub trait RatInt: Clone + Integer + Signed + ToPrimitive + ToBigInt + Debug + Display + FromStr + From<i64> {}

impl<T> RatInt for T where T: Clone + Integer + Signed + ToPrimitive + ToBigInt + Debug + Display + FromStr + From<i64> {}

fn ratio_to_f64<T: RatInt>(q: &Ratio<T>) -> f64 {
    // Ratio<BigInt>::to_f64 handles huge numerators/denominators gracefully.
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl<T: RatInt> Coefficient for Ratio<T>
where
    Ratio<T>: ToPrimitive,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from(n))
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn to_complex<F: Real>(&self) -> Complex<F> {
        Complex::new(F::lit(ratio_to_f64(self)), F::zero())
    }
}

impl<T: RatInt> ExactReal for Ratio<T>
where
    Ratio<T>: ToPrimitive,
{
    fn to_real<F: Real>(&self) -> F {
        F::lit(ratio_to_f64(self))
    }
}

impl<T: RatInt> Coefficient for Complex<Ratio<T>>
where
    Ratio<T>: ToPrimitive,
{
    fn from_int(n: i64) -> Self {
        Complex::new(Ratio::from_integer(T::from(n)), Ratio::zero())
    }

    fn conj(&self) -> Self {
        Complex::conj(self)
    }

    fn to_complex<F: Real>(&self) -> Complex<F> {
        Complex::new(F::lit(ratio_to_f64(&self.re)), F::lit(ratio_to_f64(&self.im)))
    }
}

/// Error raised when a `num/den` string cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("malformed rational `{0}`")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"num/den"` or `"num"` into a reduced rational.
pub fn parse_rational<T: RatInt>(s: &str) -> Result<Ratio<T>, RationalParseError> {
    let s = s.trim();
    let malformed = || RationalParseError::Malformed(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: T = n.parse().map_err(|_| malformed())?;
    let d: T = d.parse().map_err(|_| malformed())?;
    if d.is_zero() {
        return Err(RationalParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Ratio::new(n, d))
}

/// Formats a rational as `"num/den"` (denominator always present).
pub fn format_rational<T: RatInt>(q: &Ratio<T>) -> String {
    format!("{}/{}", q.numer(), q.denom())
}
