//! Weighted norms of `U_{j,N}` and the annulus integrals of `|U_{N,N}|^p`.

use serde::Serialize;

use super::series::{circle_average, i_diverges, i_series, ISeries};
use super::{KernelError, KernelSpec};
use crate::cellgeom::b_curve;
use crate::quadrature::{
    angular_integral, integrate, radial_integral, truncated_scan, IntegrandSpec, PolarPoint, QuadResult, Region,
};
use crate::scalar::{ExactReal, Real};

/// Circle averages are summed as series while the radius gap exceeds this;
/// closer to the boundary they are integrated in angle instead.
pub const SERIES_GAP_MIN: f64 = 1e-3;

#[derive(Clone, Debug)]
pub struct NormOptions<F> {
    /// Divergence traces at radii `1 − 2^{−k}` for these `k`.
    pub scan_ks: Vec<u32>,
    /// Required last/first ratio of a divergence trace.
    pub growth_factor: F,
    /// Relative tolerance of the quadrature cross-check (at least `tol`).
    pub check_tol: F,
}

impl<F: Real> Default for NormOptions<F> {
    fn default() -> Self {
        Self { scan_ks: (3..=12).collect(), growth_factor: F::lit(10.0), check_tol: F::lit(1e-6) }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormVerdict<F> {
    pub finite: bool,
    /// Series value of `‖U_{j,N}‖_{p,α}^p`.
    pub value: Option<F>,
    pub terms_used: Option<usize>,
    pub tail_bound: Option<F>,
    pub tol: F,
    /// Independent 2-D quadrature of the same integral.
    pub quadrature: Option<F>,
    pub quadrature_err: Option<F>,
    /// Series and quadrature agree to `max(tol, check_tol)`.
    pub cross_check: Option<bool>,
    /// `(r, ∫_{|z|<r})` for divergent norms.
    pub divergence_trace: Vec<(F, F)>,
    pub growth_ratio: Option<F>,
    /// Trace strictly increasing with last/first above the growth factor.
    pub witness: Option<bool>,
}

/// `∫_D (1−|z|²)^a |1−z|^{−2b} dA` by polar quadrature.
pub fn i_quadrature<F: Real>(a: F, b: F, tol: F) -> Result<QuadResult<F>, KernelError> {
    Ok(integrate(&i_integrand(a, b), &Region::Disk, tol)?)
}

fn i_integrand<'a, F: Real>(a: F, b: F) -> IntegrandSpec<'a, F> {
    let gamma = a.min(a + F::one() - F::lit(2.0) * b);
    let spec = IntegrandSpec::new(
        move |pt: PolarPoint<F>| (a * pt.ln_one_minus_r2() - b * pt.ln_dist_to_one_sq()).exp(),
        gamma,
    );
    if b > F::zero() {
        spec.with_singular_points(vec![F::zero()])
    } else {
        spec
    }
}

/// `‖U_{j,N}‖_{p,α}^p` with the defaults of [`NormOptions`].
pub fn kernel_norm<Q: ExactReal, F: Real>(
    k: KernelSpec,
    p: &Q,
    alpha: &Q,
    tol: F,
) -> Result<NormVerdict<F>, KernelError> {
    kernel_norm_with(k, p, alpha, tol, &NormOptions::default())
}

/// `‖U_{j,N}‖_{p,α}^p = I((N+j−1)p + α, jp)`.
///
/// The verdict is exact (`α > b_{j,N}(p)`, checked against the criterion
/// for `I`). Finite norms are summed as a series and cross-checked by
/// quadrature; infinite ones come with a trace of truncated integrals.
pub fn kernel_norm_with<Q: ExactReal, F: Real>(
    k: KernelSpec,
    p: &Q,
    alpha: &Q,
    tol: F,
    opts: &NormOptions<F>,
) -> Result<NormVerdict<F>, KernelError> {
    if *p <= Q::zero() {
        return Err(KernelError::Domain(format!("p = {p} must be positive")));
    }
    let (j, n) = (k.j(), k.n());
    let a_exact = Q::from_int((n + j) as i64 - 1) * p.clone() + alpha.clone();
    let b_exact = Q::from_int(j as i64) * p.clone();
    let b_jn = b_curve::<Q>(j, n).and_then(|c| c.eval(p)).map_err(|e| KernelError::Domain(e.to_string()))?;
    let finite = *alpha > b_jn;
    let two = Q::from_int(2);
    let finite_i = a_exact > -Q::one() && (b_exact.is_zero() || a_exact > two * (b_exact.clone() - Q::one()));
    if finite != finite_i {
        return Err(KernelError::Inconsistent(format!(
            "α > b_{{{j},{n}}}(p) is {finite}, I-criterion says {finite_i}"
        )));
    }
    let (a, b) = (a_exact.to_real::<F>(), b_exact.to_real::<F>());
    let mut verdict = NormVerdict {
        finite,
        value: None,
        terms_used: None,
        tail_bound: None,
        tol,
        quadrature: None,
        quadrature_err: None,
        cross_check: None,
        divergence_trace: Vec::new(),
        growth_ratio: None,
        witness: None,
    };
    if finite {
        let series = match i_series(a, b, tol)? {
            ISeries::Finite(s) => s,
            ISeries::Divergent => {
                return Err(KernelError::Inconsistent("rounded exponents fall on the divergent side".into()))
            }
        };
        let check = tol.max(opts.check_tol);
        let quad = i_quadrature(a, b, check * F::lit(0.1))?;
        verdict.value = Some(series.value);
        verdict.terms_used = Some(series.terms_used);
        verdict.tail_bound = Some(series.tail_bound);
        verdict.quadrature = Some(quad.value);
        verdict.quadrature_err = Some(quad.err_estimate);
        verdict.cross_check = Some((quad.value - series.value).abs() <= check * series.value.abs());
    } else {
        let radii: Vec<F> = opts.scan_ks.iter().map(|&k| F::one() - F::lit(2.0).powi(-(k as i32))).collect();
        let trace = truncated_scan(&i_integrand(a, b), &radii, F::lit(1e-6))?;
        let increasing = trace.windows(2).all(|w| w[1].1 > w[0].1);
        let ratio = match (trace.first(), trace.last()) {
            (Some(f), Some(l)) => l.1 / f.1,
            _ => F::nan(),
        };
        verdict.growth_ratio = Some(ratio);
        verdict.witness = Some(increasing && ratio > opts.growth_factor);
        verdict.divergence_trace = trace;
    }
    Ok(verdict)
}

/// Boundary exponent of `∫_{r<|z|<1} |U_{N,N}|^p dA` as `r → 1`, and whether
/// a factor `log(1/(1−r))` accompanies it.
pub fn annulus_regime_exponent<Q: ExactReal>(n: u32, p: &Q) -> (Q, bool) {
    let critical = Q::one() / Q::from_int(2 * n as i64);
    if *p > critical {
        (Q::from_int(2) - p.clone(), false)
    } else if *p == critical {
        (Q::from_int(2) - p.clone(), true)
    } else {
        (Q::one() + Q::from_int(2 * n as i64 - 1) * p.clone(), false)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AnnulusNorm<F> {
    Finite(QuadResult<F>),
    Divergent,
}

impl<F: Copy> AnnulusNorm<F> {
    pub fn value(&self) -> Option<F> {
        match self {
            AnnulusNorm::Finite(q) => Some(q.value),
            AnnulusNorm::Divergent => None,
        }
    }
}

/// `∫_{r<|z|<1} |U_{N,N}|^p dA = 2π ∫_r^1 s (1−s²)^{(2N−1)p} A(Np, s) ds`,
/// with the circle average `A` summed as a series away from the boundary
/// and integrated in angle near it.
pub fn annulus_norm<F: Real>(n: u32, p: F, r: F, tol: F) -> Result<AnnulusNorm<F>, KernelError> {
    if n == 0 {
        return Err(KernelError::BadIndex { j: 0, n });
    }
    if !(p > F::zero()) || !(r >= F::zero() && r < F::one()) {
        return Err(KernelError::Domain(format!("annulus norm needs p > 0 and 0 ≤ r < 1, got p = {p}, r = {r}")));
    }
    let nf = F::from_count(n as usize);
    let a = (F::lit(2.0) * nf - F::one()) * p;
    let b = nf * p;
    if i_diverges(a, b) {
        return Ok(AnnulusNorm::Divergent);
    }
    let inner = tol * F::lit(0.01);
    let gap_min = F::lit(SERIES_GAP_MIN);
    let ring = |pt: PolarPoint<F>| (-b * pt.ln_dist_to_one_sq()).exp();
    let mut failure = None;
    let t_lo = -(-r).ln_1p();
    let res = radial_integral(
        |s, gap| {
            let weight = (gap * (F::lit(2.0) - gap)).powf(a);
            let avg = if gap > gap_min {
                circle_average(b, s, inner).map(|c| c.value * F::TAU())
            } else {
                angular_integral(&ring, s, gap, &[F::zero()], &Region::Disk, inner)
                    .map(|q| q.value)
                    .map_err(KernelError::from)
            };
            match avg {
                Ok(v) => weight * v,
                Err(e) => {
                    failure.get_or_insert(e);
                    F::nan()
                }
            }
        },
        t_lo,
        None,
        tol,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(AnnulusNorm::Finite(res?))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScanRow<F> {
    pub k: u32,
    pub r: F,
    pub integral: F,
    pub log_gap: F,
    pub log_integral: F,
}

/// Annulus norms at `r = 1 − 2^{−k}`.
pub fn annulus_scan<F: Real>(n: u32, p: F, ks: &[u32], tol: F) -> Result<Vec<ScanRow<F>>, KernelError> {
    ks.iter()
        .map(|&k| {
            let gap = F::lit(2.0).powi(-(k as i32));
            let r = F::one() - gap;
            match annulus_norm(n, p, r, tol)? {
                AnnulusNorm::Finite(q) => {
                    Ok(ScanRow { k, r, integral: q.value, log_gap: gap.ln(), log_integral: q.value.ln() })
                }
                AnnulusNorm::Divergent => Err(KernelError::Domain(format!("annulus integral diverges for p = {p}"))),
            }
        })
        .collect()
}

/// Least-squares slope of `log_integral` against `log_gap`.
pub fn fit_slope<F: Real>(rows: &[ScanRow<F>]) -> F {
    let n = F::from_count(rows.len());
    let mx = rows.iter().fold(F::zero(), |s, r| s + r.log_gap) / n;
    let my = rows.iter().fold(F::zero(), |s, r| s + r.log_integral) / n;
    let (sxy, sxx) = rows.iter().fold((F::zero(), F::zero()), |(sxy, sxx), r| {
        let dx = r.log_gap - mx;
        (sxy + dx * (r.log_integral - my), sxx + dx * dx)
    });
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use std::f64::consts::PI;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn u02_at_p1_alpha0() {
        let v = kernel_norm(KernelSpec::new(0, 2).unwrap(), &q(1, 1), &q(0, 1), 1e-10).unwrap();
        assert!(v.finite);
        assert!((v.value.unwrap() - PI / 2.0).abs() < 1e-12);
        assert_eq!(v.cross_check, Some(true));
    }

    #[test]
    fn u22_at_boundary_diverges() {
        let v = kernel_norm(KernelSpec::new(2, 2).unwrap(), &q(1, 4), &q(-7, 4), 1e-8).unwrap();
        assert!(!v.finite);
        assert!(v.divergence_trace.windows(2).all(|w| w[1].1 > w[0].1));
    }

    #[test]
    fn poisson_kernel_criterion() {
        let k = KernelSpec::new(1, 1).unwrap();
        for (p, alpha, finite) in [(q(1, 1), q(-1, 2), true), (q(1, 1), q(-1, 1), false), (q(1, 4), q(-5, 4), false)] {
            let v = kernel_norm::<_, f64>(k, &p, &alpha, 1e-8);
            match v {
                Ok(v) => assert_eq!(v.finite, finite),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn regimes() {
        assert_eq!(annulus_regime_exponent(2, &q(1, 4)), (q(7, 4), true));
        assert_eq!(annulus_regime_exponent(2, &q(1, 1)), (q(1, 1), false));
        assert_eq!(annulus_regime_exponent(3, &q(1, 10)), (q(3, 2), false));
    }

    #[test]
    fn annulus_divergence_and_values() {
        assert_eq!(annulus_norm(1, 2.0f64, 0.0, 1e-8).unwrap(), AnnulusNorm::Divergent);
        // N = 1, p = 1: ∫ Poisson kernel over the disk is π.
        let v = annulus_norm(1, 1.0f64, 0.0, 1e-9).unwrap().value().unwrap();
        assert!((v - PI).abs() < 1e-7, "{v}");
    }
}
