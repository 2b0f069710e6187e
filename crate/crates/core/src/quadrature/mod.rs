//! Adaptive quadrature on the disk, annuli and sectors in polar
//! coordinates.
//!
//! The radial variable is `t = −ln(1 − r)`, so a boundary weight
//! `(1 − r)^γ` becomes the exponential `e^{−(γ+1)t}` and the mesh is graded
//! toward `r = 1` automatically. Integrands receive the gap `1 − r`
//! separately from `r` so that quantities such as `1 − r²` stay accurate
//! when `r` rounds to 1.

mod gk;

pub use gk::{adaptive, gk15, pairwise_sum};

use crate::scalar::Real;

/// Nodes of the first periodic trapezoid rule on a full circle.
pub const ANGULAR_START_NODES: usize = 32;
/// Cap on periodic trapezoid nodes.
pub const ANGULAR_MAX_NODES: usize = 1 << 16;
/// Minimum number of unit radial panels before the tail test applies.
pub const MIN_TAIL_PANELS: usize = 8;

/// `(r, 1 − r, θ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarPoint<F> {
    pub r: F,
    pub gap: F,
    pub theta: F,
}

impl<F: Real> PolarPoint<F> {
    /// `1 − r²`, accurate for `r` near 1.
    pub fn one_minus_r2(&self) -> F {
        self.gap * (F::lit(2.0) - self.gap)
    }

    /// `|1 − z|²` with `z = r e^{iθ}`, accurate near `z = 1`.
    pub fn dist_to_one_sq(&self) -> F {
        let s = (self.theta * F::lit(0.5)).sin();
        self.gap * self.gap + F::lit(4.0) * self.r * s * s
    }

    /// `ln(1 − r²)`, finite for every representable gap.
    pub fn ln_one_minus_r2(&self) -> F {
        self.gap.ln() + (F::lit(2.0) - self.gap).ln()
    }

    /// `ln |1 − z|²` without intermediate underflow.
    pub fn ln_dist_to_one_sq(&self) -> F {
        let s = F::lit(2.0) * self.r.sqrt() * (self.theta * F::lit(0.5)).sin();
        F::lit(2.0) * self.gap.hypot(s).ln()
    }
}

pub struct IntegrandSpec<'a, F> {
    pub evaluator: Box<dyn Fn(PolarPoint<F>) -> F + Sync + 'a>,
    /// `γ` with integrand `~ (1 − r)^γ` near the boundary (after the angular
    /// integration).
    pub radial_exponent_at_1: F,
    /// Boundary angles where the integrand blows up.
    pub singular_points: Vec<F>,
}

impl<'a, F: Real> IntegrandSpec<'a, F> {
    pub fn new(evaluator: impl Fn(PolarPoint<F>) -> F + Sync + 'a, radial_exponent_at_1: F) -> Self {
        Self { evaluator: Box::new(evaluator), radial_exponent_at_1, singular_points: Vec::new() }
    }

    pub fn with_singular_points(mut self, angles: Vec<F>) -> Self {
        self.singular_points = angles;
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Region<F> {
    Disk,
    Annulus { r_in: F },
    Sector { arc_start: F, arc_end: F, r_in: F },
}

#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct QuadResult<F> {
    pub value: F,
    pub err_estimate: F,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QuadError {
    #[error("radial exponent {gamma} ≤ −1: not integrable at the boundary")]
    NonIntegrable { gamma: f64 },
    #[error("tolerance not reached: value {value}, error estimate {err_estimate}")]
    ToleranceNotReached { value: f64, err_estimate: f64 },
    #[error("invalid region: {0}")]
    InvalidRegion(String),
}

fn to_f64<F: Real>(x: F) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

struct Angular<F> {
    start: F,
    end: F,
    full_circle: bool,
}

impl<F: Real> Region<F> {
    fn validate(&self) -> Result<(F, Angular<F>), QuadError> {
        let tau = F::TAU();
        let check_r = |r_in: F| {
            if !(r_in >= F::zero() && r_in < F::one()) {
                return Err(QuadError::InvalidRegion(format!("r_in = {r_in} outside [0, 1)")));
            }
            Ok(r_in)
        };
        match *self {
            Region::Disk => Ok((F::zero(), Angular { start: -F::PI(), end: F::PI(), full_circle: true })),
            Region::Annulus { r_in } => {
                Ok((check_r(r_in)?, Angular { start: -F::PI(), end: F::PI(), full_circle: true }))
            }
            Region::Sector { arc_start, arc_end, r_in } => {
                let len = arc_end - arc_start;
                if !(len > F::zero() && len < tau) {
                    return Err(QuadError::InvalidRegion(format!("arc length {len} outside (0, 2π)")));
                }
                Ok((check_r(r_in)?, Angular { start: arc_start, end: arc_end, full_circle: false }))
            }
        }
    }
}

/// Periodic trapezoid rule over a full circle, doubling until two successive
/// values agree to `rel`. Returns `(value, |difference|)`.
fn trapezoid_circle<F: Real>(f: &mut impl FnMut(F) -> F, start: F, rel: F) -> (F, F) {
    let mut n = ANGULAR_START_NODES;
    let mut samples: Vec<F> = (0..n).map(|i| f(start + F::TAU() * F::from_count(i) / F::from_count(n))).collect();
    let mut value = pairwise_sum(&samples) * F::TAU() / F::from_count(n);
    loop {
        let h = F::TAU() / F::from_count(2 * n);
        let odd: Vec<F> = (0..n).map(|i| f(start + h * F::from_count(2 * i + 1))).collect();
        samples.extend(odd);
        n *= 2;
        let next = pairwise_sum(&samples) * h;
        let diff = (next - value).abs();
        value = next;
        if diff <= rel * value.abs() || n >= ANGULAR_MAX_NODES || diff == F::zero() {
            return (value, diff);
        }
    }
}

/// Angular integral `∫ f(r, θ) dθ` over the region's arc at one radius.
///
/// Without singular points a full circle uses the periodic trapezoid rule;
/// otherwise panels are graded geometrically, with sizes `gap·2^i`, away from
/// each singular angle.
pub fn angular_integral<F: Real>(
    f: &(dyn Fn(PolarPoint<F>) -> F + Sync),
    r: F,
    gap: F,
    singular_points: &[F],
    region: &Region<F>,
    rel: F,
) -> Result<QuadResult<F>, QuadError> {
    let (_, arc) = region.validate()?;
    Ok(angular_on(f, r, gap, singular_points, &arc, rel))
}

fn wrap_into<F: Real>(x: F, start: F) -> F {
    let tau = F::TAU();
    let k = ((x - start) / tau).floor();
    x - k * tau
}

fn angular_on<F: Real>(
    f: &(dyn Fn(PolarPoint<F>) -> F + Sync),
    r: F,
    gap: F,
    singular_points: &[F],
    arc: &Angular<F>,
    rel: F,
) -> QuadResult<F> {
    let mut g = |theta: F| f(PolarPoint { r, gap, theta });
    if singular_points.is_empty() && arc.full_circle {
        let (value, err) = trapezoid_circle(&mut g, arc.start, rel);
        return QuadResult { value, err_estimate: err };
    }
    let (start, end) = if arc.full_circle {
        let s0 = singular_points[0];
        (s0 - F::PI(), s0 + F::PI())
    } else {
        (arc.start, arc.end)
    };
    let mut cuts = vec![start, end];
    let scale = gap.max(F::min_positive_value());
    for &s in singular_points {
        let s = wrap_into(s, start);
        let mut images = vec![s];
        if arc.full_circle {
            images.push(s - F::TAU());
            images.push(s + F::TAU());
        }
        for c in images {
            if c >= start && c <= end {
                cuts.push(c);
            }
            let mut d = scale;
            while d < F::TAU() {
                for x in [c - d, c + d] {
                    if x > start && x < end {
                        cuts.push(x);
                    }
                }
                d = d * F::lit(2.0);
            }
        }
    }
    if cuts.len() == 2 {
        let n = 8;
        let step = (end - start) / F::from_count(n);
        cuts.extend((1..n).map(|i| start + step * F::from_count(i)));
    }
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite angles"));
    cuts.dedup();

    let crude: Vec<F> = cuts.windows(2).map(|w| gk15(&mut g, w[0], w[1]).0).collect();
    let floor = rel * pairwise_sum(&crude).abs() / F::from_count(cuts.len());
    let mut values = Vec::with_capacity(crude.len());
    let mut err = F::zero();
    for w in cuts.windows(2) {
        let (v, e, _) = adaptive(&mut g, w[0], w[1], rel, floor);
        values.push(v);
        err = err + e;
    }
    QuadResult { value: pairwise_sum(&values), err_estimate: err }
}

/// Largest useful `t = −ln(1 − r)` before the gap underflows.
fn t_cap<F: Real>() -> F {
    -F::min_positive_value().ln() * F::lit(0.85)
}

/// `∫ r A(r) dr` for `t = −ln(1−r)` from `t_lo` to `t_hi` (or `∞`), where
/// `A` is supplied per radius. Unit panels in `t`; for an infinite range the
/// integration stops once a geometric tail estimate from the last two
/// panels is below `tol·10⁻³` of the total, and that tail is added.
pub fn radial_integral<F: Real>(
    mut area: impl FnMut(F, F) -> F,
    t_lo: F,
    t_hi: Option<F>,
    tol: F,
) -> Result<QuadResult<F>, QuadError> {
    let inner_rel = tol * F::lit(0.05);
    let mut h = |t: F| {
        let gap = (-t).exp();
        let r = -(-t).exp_m1();
        r * gap * area(r, gap)
    };
    let cap = t_cap::<F>();
    let mut panels: Vec<F> = Vec::new();
    let mut err = F::zero();
    let mut t = t_lo;
    let mut tail = F::zero();
    let mut converged = false;
    loop {
        let next = match t_hi {
            Some(hi) => (t + F::one()).min(hi),
            None => t + F::one(),
        };
        let floor = inner_rel * pairwise_sum(&panels).abs() * F::lit(1e-3);
        let (v, e, ok) = adaptive(&mut h, t, next, inner_rel, floor);
        panels.push(v);
        err = err + e;
        t = next;
        if !ok {
            break;
        }
        if let Some(hi) = t_hi {
            if t >= hi {
                converged = true;
                break;
            }
            continue;
        }
        if t >= cap {
            break;
        }
        let k = panels.len();
        if k < MIN_TAIL_PANELS {
            continue;
        }
        let (last, prev) = (panels[k - 1], panels[k - 2]);
        let total = pairwise_sum(&panels);
        if last == F::zero() && prev == F::zero() {
            converged = true;
            break;
        }
        let rho = last / prev;
        if rho > F::zero() && rho < F::one() {
            let est = last * rho / (F::one() - rho);
            if est.abs() <= tol * F::lit(1e-3) * total.abs() {
                tail = est;
                err = err + est.abs();
                converged = true;
                break;
            }
        }
    }
    let value = pairwise_sum(&panels) + tail;
    if !converged || !(err <= tol * value.abs()) && err > F::min_positive_value() {
        return Err(QuadError::ToleranceNotReached { value: to_f64(value), err_estimate: to_f64(err) });
    }
    Ok(QuadResult { value, err_estimate: err })
}

fn integrate_between<F: Real>(
    f: &IntegrandSpec<F>,
    region: &Region<F>,
    r_out: Option<F>,
    tol: F,
) -> Result<QuadResult<F>, QuadError> {
    let (r_in, arc) = region.validate()?;
    let t_lo = -(-r_in).ln_1p();
    let t_hi = r_out.map(|r| -(-r).ln_1p());
    let ang_rel = tol * F::lit(0.01);
    let eval = f.evaluator.as_ref();
    let mut ang_err = F::zero();
    let res = radial_integral(
        |r, gap| {
            let q = angular_on(eval, r, gap, &f.singular_points, &arc, ang_rel);
            ang_err = ang_err.max(q.err_estimate / q.value.abs().max(F::min_positive_value()));
            q.value
        },
        t_lo,
        t_hi,
        tol,
    )?;
    Ok(QuadResult { value: res.value, err_estimate: res.err_estimate + ang_err * res.value.abs() })
}

/// `∫_region f dA` to relative tolerance `tol`.
pub fn integrate<F: Real>(f: &IntegrandSpec<F>, region: &Region<F>, tol: F) -> Result<QuadResult<F>, QuadError> {
    if f.radial_exponent_at_1 <= -F::one() {
        return Err(QuadError::NonIntegrable { gamma: to_f64(f.radial_exponent_at_1) });
    }
    integrate_between(f, region, None, tol)
}

/// `(r, ∫_{|z|<r} f dA)` for each radius (increasing, in `(0, 1)`).
pub fn truncated_scan<F: Real>(f: &IntegrandSpec<F>, radii: &[F], tol: F) -> Result<Vec<(F, F)>, QuadError> {
    if radii.iter().any(|&r| !(r > F::zero() && r < F::one())) {
        return Err(QuadError::InvalidRegion("scan radii must lie in (0, 1)".into()));
    }
    if radii.windows(2).any(|w| w[0] >= w[1]) {
        return Err(QuadError::InvalidRegion("scan radii must increase".into()));
    }
    radii.iter().map(|&r| integrate_between(f, &Region::Disk, Some(r), tol).map(|q| (r, q.value))).collect()
}
