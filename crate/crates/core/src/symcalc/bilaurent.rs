use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex;

use crate::scalar::{Coefficient, Real};

/// Exponent pair `(a, b)` of the monomial `z^a z̄^b`.
pub type Exponent = (i32, i32);

/// Sparse bivariate Laurent polynomial `Σ c_{a,b} z^a z̄^b`.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiLaurent<C> {
    terms: BTreeMap<Exponent, C>,
}

impl<C: Coefficient> BiLaurent<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    /// `c z^a z̄^b`.
    pub fn monomial(a: i32, b: i32, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(a, b, c);
        out
    }

    /// The coordinate function `z`.
    pub fn z() -> Self {
        Self::monomial(1, 0, C::one())
    }

    /// The coordinate function `z̄`.
    pub fn zbar() -> Self {
        Self::monomial(0, 1, C::one())
    }

    /// `|z|^2 = z z̄`.
    pub fn abs_sq() -> Self {
        Self::monomial(1, 1, C::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, C)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in terms {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn add_term(&mut self, a: i32, b: i32, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&(a, b)) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert((a, b), s);
                }
            }
            None => {
                self.terms.insert((a, b), c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: i32, b: i32) -> C {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in ascending `(a, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &C)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, v))
    }

    /// Smallest exponent appearing in either variable, `None` for zero.
    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().map(|&(a, b)| a.min(b)).min()
    }

    /// Largest `min(a, b)` over all terms, `None` for zero.
    pub fn max_radial_degree(&self) -> Option<i32> {
        self.terms.keys().map(|&(a, b)| a.min(b)).max()
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(|&(a, b)| a < 0 || b < 0)
    }

    /// Applies `f` to every coefficient, dropping resulting zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(Exponent, &C) -> C) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, c)| (k, f(k, c))))
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        self.map_coeffs(|_, c| c.clone() * s.clone())
    }

    /// Multiplies by `z^da z̄^db`.
    pub fn shift(&self, da: i32, db: i32) -> Self {
        Self { terms: self.terms.iter().map(|(&(a, b), c)| ((a + da, b + db), c.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Complex conjugate `ū`: swaps the roles of `z` and `z̄`.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| ((b, a), c.conj())))
    }

    /// Point evaluation. Negative exponents are evaluated as inverse powers.
    pub fn eval<F: Real>(&self, z: Complex<F>) -> Complex<F> {
        let zb = z.conj();
        let mut acc = Complex::new(F::zero(), F::zero());
        for (&(a, b), c) in &self.terms {
            acc = acc + c.to_complex::<F>() * z.powi(a) * zb.powi(b);
        }
        acc
    }
}

impl<C: Coefficient> Add for &BiLaurent<C> {
    type Output = BiLaurent<C>;
    fn add(self, rhs: Self) -> BiLaurent<C> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<C: Coefficient> Add for BiLaurent<C> {
    type Output = BiLaurent<C>;
    fn add(mut self, rhs: Self) -> BiLaurent<C> {
        self += &rhs;
        self
    }
}

impl<C: Coefficient> AddAssign<&BiLaurent<C>> for BiLaurent<C> {
    fn add_assign(&mut self, rhs: &BiLaurent<C>) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl<C: Coefficient> Neg for &BiLaurent<C> {
    type Output = BiLaurent<C>;
    fn neg(self) -> BiLaurent<C> {
        BiLaurent { terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect() }
    }
}

impl<C: Coefficient> Neg for BiLaurent<C> {
    type Output = BiLaurent<C>;
    fn neg(self) -> BiLaurent<C> {
        -&self
    }
}

impl<C: Coefficient> Sub for &BiLaurent<C> {
    type Output = BiLaurent<C>;
    fn sub(self, rhs: Self) -> BiLaurent<C> {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, -c.clone());
        }
        out
    }
}

impl<C: Coefficient> Sub for BiLaurent<C> {
    type Output = BiLaurent<C>;
    fn sub(self, rhs: Self) -> BiLaurent<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for &BiLaurent<C> {
    type Output = BiLaurent<C>;
    fn mul(self, rhs: Self) -> BiLaurent<C> {
        let mut out = BiLaurent::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> Mul for BiLaurent<C> {
    type Output = BiLaurent<C>;
    fn mul(self, rhs: Self) -> BiLaurent<C> {
        &self * &rhs
    }
}

impl<C: Coefficient + fmt::Display> fmt::Display for BiLaurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            match a {
                0 => {}
                1 => write!(f, "·z")?,
                _ => write!(f, "·z^{a}")?,
            }
            match b {
                0 => {}
                1 => write!(f, "·z̄")?,
                _ => write!(f, "·z̄^{b}")?,
            }
        }
        Ok(())
    }
}

impl<C: fmt::Debug> fmt::Debug for BiLaurent<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::GaussRational;
    use num_rational::BigRational;
    use num_traits::Zero;

    type P = BiLaurent<GaussRational>;

    fn g(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut p = P::monomial(2, 1, g(3));
        p.add_term(2, 1, g(-3));
        assert!(p.is_zero());
        assert_eq!(P::monomial(1, 1, g(0)), P::zero());
    }

    #[test]
    fn arithmetic() {
        let one_minus = &P::one() - &P::abs_sq();
        let sq = &one_minus * &one_minus;
        let expect = P::from_terms([((0, 0), g(1)), ((1, 1), g(-2)), ((2, 2), g(1))]);
        assert_eq!(sq, expect);
        assert_eq!(one_minus.pow(2), expect);
        assert_eq!(&sq - &expect, P::zero());
    }

    #[test]
    fn conj_and_eval() {
        let i = GaussRational::new(BigRational::zero(), BigRational::from_int(1));
        let p = P::monomial(2, 0, i.clone()) + P::monomial(0, -1, g(1));
        let z = Complex::new(0.5, 0.25);
        let direct = Complex::new(0.0, 1.0) * z * z + z.conj().inv();
        assert!((p.eval(z) - direct).norm() < 1e-14);
        assert!((p.conj().eval(z) - direct.conj()).norm() < 1e-14);
    }
}
