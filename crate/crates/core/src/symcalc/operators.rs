//! Differential operators acting termwise on [`BiLaurent`] polynomials.

use super::{BiLaurent, SymcalcError};
use crate::scalar::Coefficient;

/// `∂_z`.
pub fn dz<C: Coefficient>(u: &BiLaurent<C>) -> BiLaurent<C> {
    BiLaurent::from_terms(
        u.terms().filter(|&((a, _), _)| a != 0).map(|((a, b), c)| ((a - 1, b), c.clone() * C::from_int(a.into()))),
    )
}

/// `∂̄_z`.
pub fn dzbar<C: Coefficient>(u: &BiLaurent<C>) -> BiLaurent<C> {
    BiLaurent::from_terms(
        u.terms().filter(|&((_, b), _)| b != 0).map(|((a, b), c)| ((a, b - 1), c.clone() * C::from_int(b.into()))),
    )
}

/// `Δ = 4 ∂_z ∂̄_z`.
pub fn laplacian<C: Coefficient>(u: &BiLaurent<C>) -> BiLaurent<C> {
    BiLaurent::from_terms(
        u.terms()
            .filter(|&((a, b), _)| a != 0 && b != 0)
            .map(|((a, b), c)| ((a - 1, b - 1), c.clone() * C::from_int(4 * a as i64 * b as i64))),
    )
}

/// `Δ^n`.
pub fn laplacian_pow<C: Coefficient>(u: &BiLaurent<C>, n: u32) -> BiLaurent<C> {
    let mut out = u.clone();
    for _ in 0..n {
        if out.is_zero() {
            break;
        }
        out = laplacian(&out);
    }
    out
}

/// Radial derivative `r∂_r = z∂_z + z̄∂̄_z`; multiplies each term by `a + b`.
pub fn euler<C: Coefficient>(u: &BiLaurent<C>) -> BiLaurent<C> {
    u.map_coeffs(|(a, b), c| c.clone() * C::from_int((a + b).into()))
}

/// `M^j[u] = (1 - z z̄)^j u`.
pub fn mul_disk_weight<C: Coefficient>(u: &BiLaurent<C>, j: u32) -> BiLaurent<C> {
    if j == 0 {
        return u.clone();
    }
    let weight = (&BiLaurent::one() - &BiLaurent::abs_sq()).pow(j);
    &weight * u
}

/// `L_θ[u] = (1 - |z|²)Δu + 4θ(z∂_z u + z̄∂̄_z u) - 4θ²u`.
pub fn apply_l<C: Coefficient>(u: &BiLaurent<C>, theta: &C) -> BiLaurent<C> {
    let four = C::from_int(4);
    let mut out = mul_disk_weight(&laplacian(u), 1);
    out += &euler(u).scale(&(four.clone() * theta.clone()));
    out += &u.scale(&-(four * theta.clone() * theta.clone()));
    out
}

/// `Δu = 0`. For Laurent polynomials this holds iff every term has `a = 0`
/// or `b = 0`.
pub fn is_harmonic<C: Coefficient>(u: &BiLaurent<C>) -> bool {
    laplacian(u).is_zero()
}

/// `Δ^n u = 0`.
pub fn is_n_harmonic<C: Coefficient>(u: &BiLaurent<C>, n: u32) -> bool {
    laplacian_pow(u, n).is_zero()
}

/// Laurent expansion of `U_{j,N}(1 - ζ)` in `ζ, ζ̄`:
/// `(ζ + ζ̄ - ζζ̄)^{N+j-1} ζ^{-j} ζ̄^{-j}`, returned in the variables `z, z̄`.
pub fn kernel_laurent_at_one<C: Coefficient>(j: u32, n: u32) -> Result<BiLaurent<C>, SymcalcError> {
    if n == 0 || j > n {
        return Err(SymcalcError::BadIndex { j, n });
    }
    let base = &(&BiLaurent::z() + &BiLaurent::zbar()) - &BiLaurent::abs_sq();
    let jj = j as i32;
    Ok(base.pow(n + j - 1).shift(-jj, -jj))
}
