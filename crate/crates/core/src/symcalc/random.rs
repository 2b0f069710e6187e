//! Seeded random instances for property checks.
//!
//! Polynomials have at most [`MAX_TERMS`] terms, exponents at most
//! [`MAX_EXPONENT`], and coefficients whose numerators and denominators are
//! bounded by [`MAX_COEFF`] in absolute value.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::cellular::l_solution;
use crate::{GaussRational, Poly, Rational};

pub const MAX_TERMS: usize = 12;
pub const MAX_EXPONENT: i32 = 8;
pub const MAX_COEFF: i64 = 100;

/// Deterministic generator used throughout the property suites.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    let n = rng.gen_range(-MAX_COEFF..=MAX_COEFF);
    let d = rng.gen_range(1..=MAX_COEFF);
    Rational::new(n.into(), d.into())
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let q = rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

/// Gaussian rational; real in roughly a third of draws.
pub fn gauss<R: Rng>(rng: &mut R) -> GaussRational {
    let re = nonzero_rational(rng);
    let im = if rng.gen_bool(1.0 / 3.0) { Rational::zero() } else { rational(rng) };
    GaussRational::new(re, im)
}

fn poly_with<R: Rng>(rng: &mut R, mut exponent: impl FnMut(&mut R) -> (i32, i32)) -> Poly {
    let n_terms = rng.gen_range(1..=MAX_TERMS);
    let mut p = Poly::zero();
    for _ in 0..n_terms {
        let (a, b) = exponent(rng);
        let c = gauss(rng);
        p.add_term(a, b, c);
    }
    p
}

/// Polynomial in `z, z̄` with exponents in `0..=MAX_EXPONENT`.
pub fn polynomial<R: Rng>(rng: &mut R) -> Poly {
    poly_with(rng, |r| (r.gen_range(0..=MAX_EXPONENT), r.gen_range(0..=MAX_EXPONENT)))
}

/// Laurent polynomial with exponents in `-4..=MAX_EXPONENT`.
pub fn laurent<R: Rng>(rng: &mut R) -> Poly {
    poly_with(rng, |r| (r.gen_range(-4..=MAX_EXPONENT), r.gen_range(-4..=MAX_EXPONENT)))
}

/// `N`-harmonic polynomial: every term has `min(a, b) ≤ N − 1`.
pub fn n_harmonic<R: Rng>(rng: &mut R, n: u32) -> Poly {
    let cap = (n as i32 - 1).min(MAX_EXPONENT);
    poly_with(rng, |r| {
        let m = r.gen_range(0..=cap);
        let other = r.gen_range(m..=MAX_EXPONENT);
        if r.gen_bool(0.5) {
            (m, other)
        } else {
            (other, m)
        }
    })
}

pub fn harmonic<R: Rng>(rng: &mut R) -> Poly {
    n_harmonic(rng, 1)
}

/// Random combination of the frequency solutions of `L_θ[w] = 0`
/// (both `z^k` and `z̄^k` families, `k ≤ 6`).
pub fn l_solution_combo<R: Rng>(rng: &mut R, theta: u32) -> Poly {
    let count = rng.gen_range(1..=4);
    let mut out = Poly::zero();
    for _ in 0..count {
        let k = rng.gen_range(0..=6u32);
        let mut w: Poly = l_solution(theta, k);
        if k > 0 && rng.gen_bool(0.5) {
            w = w.conj();
        }
        out += &w.scale(&gauss(rng));
    }
    out
}

/// Small rational in `[-6, 6]` with denominator at most 6, for `θ`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let d = rng.gen_range(1..=6i64);
    let n = rng.gen_range(-6 * d..=6 * d);
    Rational::new(n.into(), d.into())
}
