//! Almansi expansion, its alternative `(1-|z|²)`-power form, and the extension
//! operator.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::operators::{is_harmonic, is_n_harmonic};
use super::{BiLaurent, SymcalcError};
use crate::scalar::{Coefficient, Real};

/// `u = Σ_j |z|^{2j} u_j` with harmonic `u_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "BiLaurent<C>: Serialize", deserialize = "BiLaurent<C>: Deserialize<'de>"))]
pub struct AlmansiForm<C> {
    pub order: u32,
    pub pieces: Vec<BiLaurent<C>>,
}

/// `u = Σ_j (1-|z|²)^j v_j` with harmonic `v_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "BiLaurent<C>: Serialize", deserialize = "BiLaurent<C>: Deserialize<'de>"))]
pub struct AltAlmansiForm<C> {
    pub order: u32,
    pub pieces: Vec<BiLaurent<C>>,
}

/// `E[u](z, ρ) = Σ_j ρ^{2j} u_j(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionPoly<C> {
    pub coeffs: Vec<BiLaurent<C>>,
}

fn check_harmonic_pieces<C: Coefficient>(pieces: &[BiLaurent<C>]) -> Result<(), SymcalcError> {
    match pieces.iter().position(|p| !is_harmonic(p)) {
        Some(index) => Err(SymcalcError::NotHarmonic { index }),
        None => Ok(()),
    }
}

impl<C: Coefficient> AlmansiForm<C> {
    /// Validates that there are `order` pieces and each is harmonic.
    pub fn new(order: u32, pieces: Vec<BiLaurent<C>>) -> Result<Self, SymcalcError> {
        if order == 0 || pieces.len() != order as usize {
            return Err(SymcalcError::BadOrder { order, pieces: pieces.len() });
        }
        check_harmonic_pieces(&pieces)?;
        Ok(Self { order, pieces })
    }

    /// `Σ_j |z|^{2j} u_j`.
    pub fn recompose(&self) -> BiLaurent<C> {
        let mut out = BiLaurent::zero();
        for (j, piece) in self.pieces.iter().enumerate() {
            out += &piece.shift(j as i32, j as i32);
        }
        out
    }

    pub fn to_alternative(&self) -> AltAlmansiForm<C> {
        AltAlmansiForm { order: self.order, pieces: binomial_transform(&self.pieces) }
    }

    pub fn extension(&self) -> ExtensionPoly<C> {
        ExtensionPoly { coeffs: self.pieces.clone() }
    }
}

impl<C: Coefficient> AltAlmansiForm<C> {
    pub fn new(order: u32, pieces: Vec<BiLaurent<C>>) -> Result<Self, SymcalcError> {
        if order == 0 || pieces.len() != order as usize {
            return Err(SymcalcError::BadOrder { order, pieces: pieces.len() });
        }
        check_harmonic_pieces(&pieces)?;
        Ok(Self { order, pieces })
    }

    /// `Σ_j (1-|z|²)^j v_j`.
    pub fn recompose(&self) -> BiLaurent<C> {
        let mut out = BiLaurent::zero();
        for (j, piece) in self.pieces.iter().enumerate() {
            out += &super::operators::mul_disk_weight(piece, j as u32);
        }
        out
    }

    pub fn to_almansi(&self) -> AlmansiForm<C> {
        AlmansiForm { order: self.order, pieces: binomial_transform(&self.pieces) }
    }
}

/// `v_j = (-1)^j Σ_{k≥j} C(k, j) u_k`. The transform is an involution.
fn binomial_transform<C: Coefficient>(pieces: &[BiLaurent<C>]) -> Vec<BiLaurent<C>> {
    let n = pieces.len();
    (0..n)
        .map(|j| {
            let mut acc = BiLaurent::zero();
            let mut binom: i64 = 1; // C(k, j), starting at k = j
            for (k, piece) in pieces.iter().enumerate().skip(j) {
                if k > j {
                    binom = binom * k as i64 / (k - j) as i64;
                }
                acc += &piece.scale(&C::from_int(binom));
            }
            if j % 2 == 1 {
                -acc
            } else {
                acc
            }
        })
        .collect()
}

impl<C: Coefficient> ExtensionPoly<C> {
    /// Substitutes `ρ² := z z̄`.
    pub fn restrict(&self) -> BiLaurent<C> {
        AlmansiForm { order: self.coeffs.len() as u32, pieces: self.coeffs.clone() }.recompose()
    }

    /// Evaluates `E[u](z, ρ)`.
    pub fn eval<F: Real>(&self, z: Complex<F>, rho: F) -> Complex<F> {
        let rho2 = rho * rho;
        let mut acc = Complex::new(F::zero(), F::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc * rho2 + c.eval(z);
        }
        acc
    }
}

/// Groups the terms of `u` by `m = min(a, b)`: piece `u_m` receives
/// `c z^{a-m} z̄^{b-m}`.
pub fn almansi_decompose<C: Coefficient>(u: &BiLaurent<C>, n: u32) -> Result<AlmansiForm<C>, SymcalcError> {
    if n == 0 {
        return Err(SymcalcError::BadOrder { order: 0, pieces: 0 });
    }
    if u.has_negative_exponent() {
        return Err(SymcalcError::NegativeExponent);
    }
    if !is_n_harmonic(u, n) {
        return Err(SymcalcError::NotPolyharmonic { order: n });
    }
    let mut pieces = vec![BiLaurent::zero(); n as usize];
    for ((a, b), c) in u.terms() {
        let m = a.min(b);
        pieces[m as usize].add_term(a - m, b - m, c.clone());
    }
    Ok(AlmansiForm { order: n, pieces })
}
