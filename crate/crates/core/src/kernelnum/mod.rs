//! Numerics for the extremal kernels
//! `U_{j,N}(z) = (1−|z|²)^{N+j−1} / |1−z|^{2j}`: pointwise values, the
//! integrals `I(a, b)`, weighted norms and annulus asymptotics.

mod norms;
mod series;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

pub use norms::{
    annulus_norm, annulus_regime_exponent, annulus_scan, fit_slope, i_quadrature, kernel_norm, kernel_norm_with,
    AnnulusNorm, NormOptions, NormVerdict, ScanRow,
};
pub use series::{
    circle_average, i_diverges, i_series, olofsson_uniform_potential, term_cap, ISeries, SeriesResult, DEFAULT_TERM_CAP,
};

use crate::quadrature::{PolarPoint, QuadError};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum KernelError {
    #[error("kernel index j = {j} outside 0..={n} (or N = 0)")]
    BadIndex { j: u32, n: u32 },
    #[error("U_{{j,N}} with j ≥ 1 is singular at z = 1")]
    SingularPoint,
    #[error("{0}")]
    Domain(String),
    #[error("tolerance not reached after {terms_used} terms: value {value}, tail bound {tail_bound}")]
    ToleranceNotReached { value: f64, tail_bound: f64, terms_used: usize },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error("inconsistent verdicts: {0}")]
    Inconsistent(String),
}

/// Indices of `U_{j,N}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelSpec {
    j: u32,
    n: u32,
}

impl KernelSpec {
    pub fn new(j: u32, n: u32) -> Result<Self, KernelError> {
        if n == 0 || j > n {
            return Err(KernelError::BadIndex { j, n });
        }
        Ok(Self { j, n })
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// `U_{j,N}(z)`.
pub fn kernel_eval<F: Real>(k: KernelSpec, z: Complex<F>) -> Result<F, KernelError> {
    let w = Complex::new(F::one(), F::zero()) - z;
    let d = w.norm_sqr();
    if k.j > 0 && d == F::zero() {
        return Err(KernelError::SingularPoint);
    }
    let weight = F::one() - z.norm_sqr();
    Ok(weight.powi((k.n + k.j) as i32 - 1) / d.powi(k.j as i32))
}

/// `U_{j,N}` at a polar point, accurate near the boundary.
pub fn kernel_eval_polar<F: Real>(k: KernelSpec, pt: PolarPoint<F>) -> F {
    let up = F::from_count((k.n + k.j - 1) as usize);
    let down = F::from_count(k.j as usize);
    (up * pt.ln_one_minus_r2() - down * pt.ln_dist_to_one_sq()).exp()
}
