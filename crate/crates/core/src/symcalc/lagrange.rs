//! Lagrange interpolation of the extension in the radial variable and the
//! resulting Poisson-type reconstruction of a polyharmonic function.

use num_complex::Complex;

use super::operators::is_n_harmonic;
use super::{BiLaurent, SymcalcError};
use crate::scalar::{Coefficient, ExactReal, Real};

/// Relative agreement required between two successive angular refinements.
pub const CIRCLE_REL_TOL: f64 = 1e-12;
/// Upper bound on angular nodes per circle.
pub const MAX_CIRCLE_NODES: usize = 1 << 16;

/// Interpolation radii `0 < ρ_1 < … < ρ_N < 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LagrangeFrame<Q> {
    radii: Vec<Q>,
    delta: Q,
}

impl<Q: ExactReal> LagrangeFrame<Q> {
    pub fn new(radii: Vec<Q>) -> Result<Self, SymcalcError> {
        if radii.is_empty() {
            return Err(SymcalcError::DegenerateRadii("empty frame".into()));
        }
        for r in &radii {
            if *r <= Q::zero() || *r >= Q::one() {
                return Err(SymcalcError::DegenerateRadii(format!("radius {r} outside (0,1)")));
            }
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SymcalcError::DegenerateRadii("radii not strictly increasing".into()));
        }
        // Squares of increasing positive radii are increasing, so the minimum
        // gap is attained by neighbours.
        let sq: Vec<Q> = radii.iter().map(|r| r.clone() * r.clone()).collect();
        let delta = sq.windows(2).map(|w| w[1].clone() - w[0].clone()).min().unwrap_or_else(Q::one);
        Ok(Self { radii, delta })
    }

    pub fn radii(&self) -> &[Q] {
        &self.radii
    }

    /// `min_{j≠k} |ρ_j² − ρ_k²|` (1 for a single radius).
    pub fn delta(&self) -> &Q {
        &self.delta
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }
}

/// Even polynomial in `ρ`, stored by coefficients of `t = ρ²` (ascending).
#[derive(Clone, Debug, PartialEq)]
pub struct EvenPoly<Q> {
    pub coeffs: Vec<Q>,
}

impl<Q: ExactReal> EvenPoly<Q> {
    fn constant(c: Q) -> Self {
        Self { coeffs: vec![c] }
    }

    /// Multiplies by `(t - root)`.
    fn mul_linear(&self, root: &Q) -> Self {
        let mut out = vec![Q::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] = out[i + 1].clone() + c.clone();
            out[i] = out[i].clone() - c.clone() * root.clone();
        }
        Self { coeffs: out }
    }

    fn scale(&self, s: &Q) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| c.clone() * s.clone()).collect() }
    }

    /// Exact value at `ρ`.
    pub fn eval(&self, rho: &Q) -> Q {
        let t = rho.clone() * rho.clone();
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn eval_real<F: Real>(&self, rho: F) -> F {
        let t = rho * rho;
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * t + c.to_real::<F>())
    }

    /// Degree in `ρ`.
    pub fn degree(&self) -> usize {
        let nz = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0);
        2 * nz
    }
}

/// Returns `(L_1..L_N, M_1..M_N)` with
/// `L_j = Π_{k≠j} (ρ² − ρ_k²)/(ρ_j² − ρ_k²)` and `M_j = L_j (ρ_j² − ρ²)/(2ρ_j)`.
pub fn lagrange_polys<Q: ExactReal>(frame: &LagrangeFrame<Q>) -> (Vec<EvenPoly<Q>>, Vec<EvenPoly<Q>>) {
    let sq: Vec<Q> = frame.radii.iter().map(|r| r.clone() * r.clone()).collect();
    let mut ls = Vec::with_capacity(sq.len());
    let mut ms = Vec::with_capacity(sq.len());
    for (j, tj) in sq.iter().enumerate() {
        let mut l = EvenPoly::constant(Q::one());
        let mut denom = Q::one();
        for (k, tk) in sq.iter().enumerate() {
            if k != j {
                l = l.mul_linear(tk);
                denom = denom * (tj.clone() - tk.clone());
            }
        }
        let l = l.scale(&(Q::one() / denom));
        // (t_j - t) = -(t - t_j)
        let two_rho = Q::from_int(2) * frame.radii[j].clone();
        let m = l.mul_linear(tj).scale(&(-Q::one() / two_rho));
        ls.push(l);
        ms.push(m);
    }
    (ls, ms)
}

/// `∫_{|ζ|=ρ} |z − ζ|^{-2} u(ζ) ds(ζ)` by the periodic trapezoid rule, doubling
/// from `nodes` until two successive values agree to [`CIRCLE_REL_TOL`].
fn circle_integral<C: Coefficient, F: Real>(u: &BiLaurent<C>, z: Complex<F>, rho: F, nodes: usize) -> Complex<F> {
    let rule = |n: usize| {
        let h = F::TAU() / F::from_count(n);
        let mut acc = Complex::new(F::zero(), F::zero());
        for i in 0..n {
            let zeta = Complex::from_polar(rho, h * F::from_count(i));
            acc = acc + u.eval(zeta) / (z - zeta).norm_sqr();
        }
        acc * (h * rho)
    };
    let mut n = nodes;
    let mut prev = rule(n);
    while n < MAX_CIRCLE_NODES {
        n *= 2;
        let next = rule(n);
        let scale = next.norm().max(F::min_positive_value());
        let done = (next - prev).norm() <= F::lit(CIRCLE_REL_TOL) * scale;
        prev = next;
        if done {
            break;
        }
    }
    prev
}

/// Evaluates `(1/π) Σ_j M_j(|z|) ∫_{|ζ|=ρ_j} |z − ζ|^{-2} u(ζ) ds(ζ)`, which
/// reproduces `u(z)` for `N`-harmonic `u` and `|z| < ρ_1`.
pub fn lagrange_reconstruct<C: Coefficient, Q: ExactReal, F: Real>(
    u: &BiLaurent<C>,
    n: u32,
    frame: &LagrangeFrame<Q>,
    z: Complex<F>,
    angular_nodes: usize,
) -> Result<Complex<F>, SymcalcError> {
    if angular_nodes < 16 {
        return Err(SymcalcError::TooFewNodes(angular_nodes));
    }
    if frame.len() != n as usize {
        return Err(SymcalcError::DegenerateRadii(format!("frame has {} radii, order is {n}", frame.len())));
    }
    if !is_n_harmonic(u, n) {
        return Err(SymcalcError::NotPolyharmonic { order: n });
    }
    let rho1 = frame.radii[0].to_real::<F>();
    let r = z.norm();
    if r >= rho1 {
        return Err(SymcalcError::RadiusViolation { radius: r.to_f64().unwrap_or(f64::NAN) });
    }
    let (_, ms) = lagrange_polys(frame);
    let mut acc = Complex::new(F::zero(), F::zero());
    for (rho, m) in frame.radii.iter().zip(&ms) {
        let integral = circle_integral(u, z, rho.to_real::<F>(), angular_nodes);
        acc = acc + integral * m.eval_real(r);
    }
    Ok(acc / F::PI())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{GaussRational, Rational};
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    type P = BiLaurent<GaussRational>;

    #[test]
    fn frame_validation() {
        assert!(LagrangeFrame::new(vec![q(1, 2), q(1, 2)]).is_err());
        assert!(LagrangeFrame::new(vec![q(3, 4), q(1, 2)]).is_err());
        assert!(LagrangeFrame::new(vec![q(0, 1)]).is_err());
        assert!(LagrangeFrame::new(vec![q(1, 1)]).is_err());
        assert!(LagrangeFrame::<Rational>::new(vec![]).is_err());
        let f = LagrangeFrame::new(vec![q(1, 2), q(5, 8), q(3, 4)]).unwrap();
        // 25/64 - 16/64 = 9/64, 36/64 - 25/64 = 11/64
        assert_eq!(f.delta(), &q(9, 64));
    }

    #[test]
    fn single_radius() {
        let f = LagrangeFrame::new(vec![q(1, 2)]).unwrap();
        let (ls, ms) = lagrange_polys(&f);
        assert_eq!(ls[0].coeffs, vec![Rational::one()]);
        assert_eq!(ms[0].coeffs, vec![q(1, 4), q(-1, 1)]);
    }

    #[test]
    fn two_radii() {
        let f = LagrangeFrame::new(vec![q(1, 2), q(3, 4)]).unwrap();
        let (ls, ms) = lagrange_polys(&f);
        // (t - 9/16)/(1/4 - 9/16) = -16/5 t + 9/5
        assert_eq!(ls[0].coeffs, vec![q(9, 5), q(-16, 5)]);
        assert_eq!(ls[0].eval(&q(3, 4)), Rational::zero());
        assert_eq!(ls[0].eval(&q(1, 2)), Rational::one());
        for m in &ms {
            assert_eq!(m.degree(), 4);
        }
    }

    #[test]
    fn interpolation_conditions() {
        let f = LagrangeFrame::new(vec![q(1, 3), q(1, 2), q(5, 8), q(7, 9)]).unwrap();
        let (ls, ms) = lagrange_polys(&f);
        for (k, rk) in f.radii().iter().enumerate() {
            let mut sum = Rational::zero();
            for (j, l) in ls.iter().enumerate() {
                let v = l.eval(rk);
                assert_eq!(v, if j == k { Rational::one() } else { Rational::zero() });
                sum += v;
                assert!(ms[j].eval(rk).is_zero());
            }
            assert_eq!(sum, Rational::one());
        }
    }

    #[test]
    fn reconstruct_constant_at_origin() {
        let f = LagrangeFrame::new(vec![q(2, 5)]).unwrap();
        let v = lagrange_reconstruct(&P::one(), 1, &f, Complex::new(0.0, 0.0), 16).unwrap();
        assert!((v - Complex::new(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn reconstruct_biharmonic() {
        let f = LagrangeFrame::new(vec![q(1, 2), q(3, 4)]).unwrap();
        let u = &P::one() - &P::abs_sq();
        let z = Complex::new(0.1, 0.2);
        let v = lagrange_reconstruct(&u, 2, &f, z, 32).unwrap();
        assert!((v - Complex::new(0.95, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn reconstruct_errors() {
        let f = LagrangeFrame::new(vec![q(1, 2), q(3, 4)]).unwrap();
        let u = &P::one() - &P::abs_sq();
        assert!(matches!(
            lagrange_reconstruct(&u, 2, &f, Complex::new(0.5, 0.0), 32),
            Err(SymcalcError::RadiusViolation { .. })
        ));
        assert!(matches!(
            lagrange_reconstruct(&u, 2, &f, Complex::new(0.1, 0.0), 8),
            Err(SymcalcError::TooFewNodes(8))
        ));
        assert!(matches!(
            lagrange_reconstruct(&P::monomial(2, 2, GaussRational::one()), 2, &f, Complex::new(0.1, 0.0), 32),
            Err(SymcalcError::NotPolyharmonic { .. })
        ));
    }
}
