//! Hypergeometric-type series: `I(a, b)` and circle averages of
//! `|1 − rξ|^{−2b}`.

use num_complex::Complex;
use serde::Serialize;

use super::KernelError;
use crate::scalar::Real;

/// Default cap on summed terms; `POLYHARM_TERM_CAP` overrides it.
pub const DEFAULT_TERM_CAP: usize = 1_000_000;
/// Terms summed before the first tail estimate of `I(a, b)`.
const FIRST_BLOCK: usize = 64;

pub fn term_cap() -> usize {
    std::env::var("POLYHARM_TERM_CAP")
        .ok()
        .and_then(|s| s.parse().ok())
        .filter(|&n: &usize| n > 0)
        .unwrap_or(DEFAULT_TERM_CAP)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesResult<F> {
    pub value: F,
    pub terms_used: usize,
    pub tail_bound: F,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ISeries<F> {
    Finite(SeriesResult<F>),
    Divergent,
}

impl<F: Copy> ISeries<F> {
    pub fn finite(&self) -> Option<SeriesResult<F>> {
        match self {
            ISeries::Finite(s) => Some(*s),
            ISeries::Divergent => None,
        }
    }
}

/// `I(a, b) = ∫_D (1−|z|²)^a |1−z|^{−2b} dA` is infinite exactly when
/// `a ≤ −1`, or `b > 0` and `a ≤ 2(b − 1)`.
pub fn i_diverges<F: Real>(a: F, b: F) -> bool {
    a <= -F::one() || (b > F::zero() && a <= F::lit(2.0) * (b - F::one()))
}

/// Compensated running sum.
#[derive(Clone, Copy)]
struct Neumaier<F> {
    sum: F,
    comp: F,
}

impl<F: Real> Neumaier<F> {
    fn new() -> Self {
        Self { sum: F::zero(), comp: F::zero() }
    }

    fn add(&mut self, x: F) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp = self.comp + ((self.sum - t) + x);
        } else {
            self.comp = self.comp + ((x - t) + self.sum);
        }
        self.sum = t;
    }

    fn value(&self) -> F {
        self.sum + self.comp
    }
}

fn bernoulli_poly<F: Real>(n: u32, x: F) -> F {
    let l = F::lit;
    match n {
        2 => x * x - x + l(1.0 / 6.0),
        3 => x * x * x - l(1.5) * x * x + l(0.5) * x,
        4 => x.powi(4) - l(2.0) * x.powi(3) + x * x - l(1.0 / 30.0),
        5 => x.powi(5) - l(2.5) * x.powi(4) + l(5.0 / 3.0) * x.powi(3) - l(1.0 / 6.0) * x,
        _ => unreachable!("only B_2..B_5 are needed"),
    }
}

/// `Σ_{i≥J} i^{−s}` by Euler–Maclaurin (accurate for `J ≥ 64`).
fn hurwitz_tail<F: Real>(s: F, j: F) -> F {
    let mut out = j.powf(F::one() - s) / (s - F::one()) + j.powf(-s) * F::lit(0.5);
    let coeffs = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0];
    let mut rising = s;
    for (k, c) in coeffs.iter().enumerate() {
        let k = k as i32 + 1;
        out = out + F::lit(*c) * rising * j.powf(-s - F::from_count((2 * k - 1) as usize));
        rising = rising * (s + F::from_count((2 * k - 1) as usize)) * (s + F::from_count((2 * k) as usize));
    }
    out
}

/// Tail `Σ_{i≥J} t_i` from `t_J` using the asymptotic form
/// `t_i ≈ K i^{−1−m} (1 + c₁/i + … + c₄/i⁴)` with `m = a − 2b + 2`, and an
/// estimate of the neglected part.
fn asymptotic_tail<F: Real>(a: F, b: F, j: usize, t_j: F) -> (F, F) {
    let m = a - F::lit(2.0) * b + F::lit(2.0);
    let d: Vec<F> = (1..=4u32)
        .map(|n| {
            let sign = if n % 2 == 1 { F::one() } else { -F::one() };
            let num = F::lit(2.0) * bernoulli_poly(n + 1, b)
                - bernoulli_poly(n + 1, F::one())
                - bernoulli_poly(n + 1, a + F::lit(2.0));
            sign * num / F::from_count((n * (n + 1)) as usize)
        })
        .collect();
    let l = F::lit;
    let c = [
        F::one(),
        d[0],
        d[1] + d[0] * d[0] * l(0.5),
        d[2] + d[0] * d[1] + d[0].powi(3) / l(6.0),
        d[3] + d[0] * d[2] + d[1] * d[1] * l(0.5) + d[0] * d[0] * d[1] * l(0.5) + d[0].powi(4) / l(24.0),
    ];
    let jf = F::from_count(j);
    let shape: F = c.iter().enumerate().map(|(k, ck)| *ck * jf.powi(-(k as i32))).fold(F::zero(), |x, y| x + y);
    let k_norm = t_j / (jf.powf(-F::one() - m) * shape);
    let mut tail = F::zero();
    for (k, ck) in c.iter().take(4).enumerate() {
        tail = tail + k_norm * *ck * hurwitz_tail(F::one() + m + F::from_count(k), jf);
    }
    let last = k_norm * c[4] * hurwitz_tail(l(5.0) + m, jf);
    let hedge = c[4].abs().max(c[3].abs() / jf) * jf.powi(-4);
    let bound = l(2.0) * last.abs() + tail.abs() * hedge + F::epsilon() * l(4.0) * tail.abs();
    (tail + last, bound)
}

/// `I(a, b) = π Σ_j [(b)_j]² / (j! (a+1)_{j+1})` to relative tolerance `tol`.
///
/// Terms follow `t_{j+1} = t_j (b+j)² / ((j+1)(a+j+2))`. The term ratio tends
/// to 1, so the tail is summed from its asymptotic expansion; the block
/// length doubles from 64 up to [`term_cap`].
pub fn i_series<F: Real>(a: F, b: F, tol: F) -> Result<ISeries<F>, KernelError> {
    if !(b >= F::zero()) || !a.is_finite() || !b.is_finite() {
        return Err(KernelError::Domain(format!("I(a, b) needs finite a and b ≥ 0, got a = {a}, b = {b}")));
    }
    if i_diverges(a, b) {
        return Ok(ISeries::Divergent);
    }
    let pi = F::PI();
    if b == F::zero() {
        return Ok(ISeries::Finite(SeriesResult {
            value: pi / (a + F::one()),
            terms_used: 1,
            tail_bound: F::zero(),
            converged: true,
        }));
    }
    let cap = term_cap();
    let mut sum = Neumaier::new();
    let mut t = F::one() / (a + F::one());
    let mut j = 0usize;
    let mut block = FIRST_BLOCK.min(cap);
    loop {
        while j < block {
            sum.add(t);
            let jf = F::from_count(j);
            t = t * (b + jf) * (b + jf) / ((jf + F::one()) * (a + jf + F::lit(2.0)));
            j += 1;
        }
        let (tail, bound) = asymptotic_tail(a, b, j, t);
        let value = pi * (sum.value() + tail);
        let tail_bound = pi * bound;
        if tail_bound <= tol * value.abs() {
            return Ok(ISeries::Finite(SeriesResult { value, terms_used: j, tail_bound, converged: true }));
        }
        if block >= cap {
            return Err(KernelError::ToleranceNotReached {
                value: value.to_f64().unwrap_or(f64::NAN),
                tail_bound: tail_bound.to_f64().unwrap_or(f64::NAN),
                terms_used: j,
            });
        }
        block = (block * 2).min(cap);
    }
}

/// `(1/2π) ∫_T |1 − rξ|^{−2b} |dξ| = Σ_k [(b)_k / k!]² r^{2k}`.
///
/// The ratio of consecutive terms is at most `r²` for `b ≤ 1` and decreasing
/// for `b > 1`, which gives a geometric bound on the remaining sum.
pub fn circle_average<F: Real>(b: F, r: F, tol: F) -> Result<SeriesResult<F>, KernelError> {
    if !(b >= F::zero()) || !(r >= F::zero() && r < F::one()) {
        return Err(KernelError::Domain(format!("circle average needs b ≥ 0 and 0 ≤ r < 1, got b = {b}, r = {r}")));
    }
    let cap = term_cap();
    let r2 = r * r;
    let mut sum = Neumaier::new();
    let mut s = F::one();
    let mut k = 0usize;
    loop {
        sum.add(s);
        let kf = F::from_count(k);
        let q = (b + kf) / (kf + F::one());
        let next = s * q * q * r2;
        k += 1;
        if next == F::zero() {
            return Ok(SeriesResult { value: sum.value(), terms_used: k, tail_bound: F::zero(), converged: true });
        }
        let rho = if b <= F::one() {
            r2
        } else {
            let q1 = (b + kf + F::one()) / (kf + F::lit(2.0));
            q1 * q1 * r2
        };
        if rho < F::one() {
            let bound = next / (F::one() - rho);
            if bound <= tol * sum.value() {
                return Ok(SeriesResult { value: sum.value(), terms_used: k, tail_bound: bound, converged: true });
            }
        }
        if k >= cap {
            return Err(KernelError::ToleranceNotReached {
                value: sum.value().to_f64().unwrap_or(f64::NAN),
                tail_bound: f64::INFINITY,
                terms_used: k,
            });
        }
        s = next;
    }
}

/// `(1 − |z|²)^{2θ+1} · Σ_k [(θ+1)_k / k!]² |z|^{2k}`: the potential of the
/// uniform density that solves `L_θ[w] = 0`.
pub fn olofsson_uniform_potential<F: Real>(theta: u32, z: Complex<F>, tol: F) -> Result<F, KernelError> {
    let r = z.norm();
    if !(r < F::one()) {
        return Err(KernelError::Domain(format!("|z| = {r} is not inside the disk")));
    }
    let avg = circle_average(F::from_count(theta as usize + 1), r, tol)?;
    Ok((F::one() - r * r).powi(2 * theta as i32 + 1) * avg.value)
}
