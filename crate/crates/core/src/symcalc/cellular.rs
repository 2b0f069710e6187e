//! Cellular decomposition `u = Σ_j M^j[w_j]` with `L_{N-j-1}[w_j] = 0`.

use serde::{Deserialize, Serialize};

use super::operators::{apply_l, euler, is_harmonic, is_n_harmonic, mul_disk_weight};
use super::{BiLaurent, SymcalcError};
use crate::scalar::Coefficient;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "BiLaurent<C>: Serialize", deserialize = "BiLaurent<C>: Deserialize<'de>"))]
pub struct CellularForm<C> {
    pub order: u32,
    pub pieces: Vec<BiLaurent<C>>,
}

/// Outcome of a single postcondition check on a cellular piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceCheck {
    pub piece: usize,
    pub check: String,
    pub pass: bool,
}

impl<C: Coefficient> CellularForm<C> {
    /// `Σ_j M^j[w_j]`.
    pub fn recompose(&self) -> BiLaurent<C> {
        let mut out = BiLaurent::zero();
        for (j, w) in self.pieces.iter().enumerate() {
            out += &mul_disk_weight(w, j as u32);
        }
        out
    }

    /// The single term `M^j[w_j]`.
    pub fn term(&self, j: usize) -> BiLaurent<C> {
        mul_disk_weight(&self.pieces[j], j as u32)
    }

    /// Annihilation and harmonicity checks for every piece:
    /// `L_{N-j-1}[w_j] = 0` and `Δ^{N-j} w_j = 0`.
    pub fn piece_checks(&self) -> Vec<PieceCheck> {
        let n = self.order as usize;
        let mut out = Vec::with_capacity(2 * n);
        for (j, w) in self.pieces.iter().enumerate() {
            let theta = (n - j - 1) as i64;
            out.push(PieceCheck {
                piece: j,
                check: format!("L_{theta}[w_{j}] = 0"),
                pass: apply_l(w, &C::from_int(theta)).is_zero(),
            });
            out.push(PieceCheck {
                piece: j,
                check: format!("w_{j} is {}-harmonic", n - j),
                pass: is_n_harmonic(w, (n - j) as u32),
            });
        }
        out
    }

    /// All postconditions against the source function.
    pub fn verify(&self, source: &BiLaurent<C>) -> Result<(), SymcalcError> {
        if self.recompose() != *source {
            return Err(SymcalcError::PostconditionFailed("recomposition".into()));
        }
        if let Some(bad) = self.piece_checks().into_iter().find(|c| !c.pass) {
            return Err(SymcalcError::PostconditionFailed(bad.check));
        }
        Ok(())
    }
}

/// Builds the cellular decomposition by induction on `N`.
///
/// For `N = N₀ + 1`, `L_{N₀}[u]` is decomposed at order `N₀` into pieces
/// `h_j`; then `w_0 = u + H` with `H = ¼ Σ_j M^{j+1}[h_j] / ((j+1)(2N₀-j))`
/// and `w_j = -h_{j-1} / (4j(2N₀-j+1))`.
pub fn cellular_decompose<C: Coefficient>(u: &BiLaurent<C>, n: u32) -> Result<CellularForm<C>, SymcalcError> {
    if n == 0 {
        return Err(SymcalcError::BadOrder { order: 0, pieces: 0 });
    }
    if u.has_negative_exponent() {
        return Err(SymcalcError::NegativeExponent);
    }
    if !is_n_harmonic(u, n) {
        return Err(SymcalcError::NotPolyharmonic { order: n });
    }
    let form = CellularForm { order: n, pieces: decompose_rec(u, n) };
    form.verify(u)?;
    Ok(form)
}

fn decompose_rec<C: Coefficient>(u: &BiLaurent<C>, n: u32) -> Vec<BiLaurent<C>> {
    if n == 1 {
        return vec![u.clone()];
    }
    let n0 = (n - 1) as i64;
    let h = decompose_rec(&apply_l(u, &C::from_int(n0)), n - 1);

    let mut big_h = BiLaurent::zero();
    for (j, hj) in h.iter().enumerate() {
        let j = j as i64;
        let denom = C::from_int(4 * (j + 1) * (2 * n0 - j));
        big_h += &mul_disk_weight(hj, (j + 1) as u32).scale(&(C::one() / denom));
    }

    let mut pieces = Vec::with_capacity(n as usize);
    pieces.push(u + &big_h);
    for j in 1..=n0 {
        let denom = C::from_int(-4 * j * (2 * n0 - j + 1));
        pieces.push(h[(j - 1) as usize].scale(&(C::one() / denom)));
    }
    pieces
}

/// Given harmonic `v0`, returns `v1 = ½(z∂_z v0 + z̄∂̄_z v0) - ½v0`, the
/// unique harmonic `v1` with `L_1[v0 + M[v1]] = 0`.
pub fn entangled_v1_from_v0<C: Coefficient>(v0: &BiLaurent<C>) -> Result<BiLaurent<C>, SymcalcError> {
    if !is_harmonic(v0) {
        return Err(SymcalcError::NotHarmonic { index: 0 });
    }
    let half = C::one() / C::from_int(2);
    Ok((&euler(v0) - v0).scale(&half))
}

/// Polynomial solution of `L_θ[w] = 0` in the angular frequency `k`
/// (`w = Σ_i c_i z^k |z|^{2i}`), normalised so that the top coefficient is 1.
///
/// On the span of `z^k|z|^{2i}` the operator is bidiagonal with diagonal
/// `-4(i-θ)(i+k-θ)` and superdiagonal `4i(k+i)`; the top index is the
/// smallest nonnegative root of the diagonal.
pub fn l_solution<C: Coefficient>(theta: u32, k: u32) -> BiLaurent<C> {
    let (theta, k) = (theta as i64, k as i64);
    let top = if k <= theta { theta - k } else { theta };
    let mut coeffs = vec![C::zero(); (top + 1) as usize];
    coeffs[top as usize] = C::one();
    for i in (0..top).rev() {
        let diag = -4 * (i - theta) * (i + k - theta);
        let upper = 4 * (i + 1) * (k + i + 1);
        coeffs[i as usize] = -(coeffs[(i + 1) as usize].clone() * C::from_int(upper)) / C::from_int(diag);
    }
    BiLaurent::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (((k + i as i64) as i32, i as i32), c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{GaussRational, Rational};

    type P = BiLaurent<GaussRational>;

    fn g(n: i64) -> GaussRational {
        GaussRational::from_int(n)
    }

    fn gq(n: i64, d: i64) -> GaussRational {
        GaussRational::new(Rational::new(n.into(), d.into()), Rational::from_int(0))
    }

    #[test]
    fn worked_case_constant_biharmonic() {
        let f = cellular_decompose(&P::one(), 2).unwrap();
        let w0 = P::from_terms([((0, 0), gq(1, 2)), ((1, 1), gq(1, 2))]);
        assert_eq!(f.pieces, vec![w0, P::constant(gq(1, 2))]);
        assert!(f.piece_checks().iter().all(|c| c.pass));
    }

    #[test]
    fn harmonic_base_case() {
        let u = &P::monomial(4, 0, g(3)) + &P::monomial(0, 2, gq(-1, 5));
        let f = cellular_decompose(&u, 1).unwrap();
        assert_eq!(f.pieces, vec![u]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(cellular_decompose(&P::monomial(2, 2, g(1)), 2), Err(SymcalcError::NotPolyharmonic { .. })));
        assert!(matches!(cellular_decompose(&P::monomial(0, -2, g(1)), 2), Err(SymcalcError::NegativeExponent)));
    }

    #[test]
    fn entangled_examples() {
        assert_eq!(entangled_v1_from_v0(&P::one()).unwrap(), P::constant(gq(-1, 2)));
        assert!(entangled_v1_from_v0(&P::z()).unwrap().is_zero());
        let v0 = &P::monomial(2, 0, g(1)) + &P::monomial(0, 2, g(1));
        let v1 = entangled_v1_from_v0(&v0).unwrap();
        assert_eq!(v1, v0.scale(&gq(1, 2)));
        let u = &v0 + &mul_disk_weight(&v1, 1);
        assert!(apply_l(&u, &g(1)).is_zero());
        assert!(entangled_v1_from_v0(&P::abs_sq()).is_err());
    }

    #[test]
    fn l_solutions_are_annihilated() {
        for theta in 0..5u32 {
            for k in 0..7u32 {
                let w: P = l_solution(theta, k);
                assert!(apply_l(&w, &g(theta as i64)).is_zero(), "θ={theta} k={k}");
                assert!(apply_l(&w.conj(), &g(theta as i64)).is_zero());
                assert!(is_n_harmonic(&w, theta + 1));
            }
        }
        // θ = 1, k = 0 gives 1 + |z|².
        assert_eq!(l_solution::<GaussRational>(1, 0), &P::one() + &P::abs_sq());
    }

    #[test]
    fn single_term_redecomposes_to_itself() {
        let n = 3;
        let u = &P::monomial(2, 1, g(2)) + &P::monomial(0, 2, gq(3, 4));
        let f = cellular_decompose(&u, n).unwrap();
        for j in 0..n as usize {
            let term = f.term(j);
            let g2 = cellular_decompose(&term, n).unwrap();
            for (k, piece) in g2.pieces.iter().enumerate() {
                if k == j {
                    assert_eq!(piece, &f.pieces[j]);
                } else {
                    assert!(piece.is_zero());
                }
            }
        }
    }
}
