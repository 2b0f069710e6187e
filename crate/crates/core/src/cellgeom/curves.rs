use super::piecewise::{Affine, PiecewiseAffine};
use super::CellgeomError;
use crate::scalar::ExactReal;

fn q<Q: ExactReal>(n: i64) -> Q {
    Q::from_int(n)
}

fn frac<Q: ExactReal>(n: i64, d: i64) -> Q {
    Q::from_int(n) / Q::from_int(d)
}

fn line<Q: ExactReal>(slope: i64, intercept: i64) -> Affine<Q> {
    Affine::new(q(slope), q(intercept))
}

fn check(j: u32, n: u32, lo: u32) -> Result<(), CellgeomError> {
    if n == 0 || j < lo || j > n {
        return Err(CellgeomError::BadIndex { j, n });
    }
    Ok(())
}

/// `b_{0,N} = −1 − (N−1)p` and, for `j ≥ 1`,
/// `b_{j,N} = max{−1 − (j+N−1)p, −2 + (j−N+1)p}` (kink at `p = 1/(2j)`).
pub fn b_curve<Q: ExactReal>(j: u32, n: u32) -> Result<PiecewiseAffine<Q>, CellgeomError> {
    check(j, n, 0)?;
    let (j, n) = (j as i64, n as i64);
    if j == 0 {
        return Ok(PiecewiseAffine::affine(line(-(n - 1), -1)));
    }
    PiecewiseAffine::from_parts(vec![frac(1, 2 * j)], vec![line(-(j + n - 1), -1), line(j - n + 1, -2)], None)
}

/// `a_{j,N}`: `b_{j,N}` on `(0, 1]` continued by `−1 + (j−N)p` on `[1, ∞)`.
pub fn a_curve<Q: ExactReal>(j: u32, n: u32) -> Result<PiecewiseAffine<Q>, CellgeomError> {
    check(j, n, 1)?;
    let (j, n) = (j as i64, n as i64);
    PiecewiseAffine::from_parts(
        vec![frac(1, 2 * j), q(1)],
        vec![line(-(j + n - 1), -1), line(j - n + 1, -2), line(j - n, -1)],
        None,
    )
}

/// `β(N, ·)` on all of `(0, ∞)`.
pub fn beta_unbounded<Q: ExactReal>(n: u32) -> Result<PiecewiseAffine<Q>, CellgeomError> {
    let curves = (0..=n).map(|j| b_curve(j, n)).collect::<Result<Vec<_>, _>>()?;
    Ok(PiecewiseAffine::min_of(&curves).expect("at least b_0"))
}

/// `β(N, p) = min_j b_{j,N}(p)` on `(0, p_max]`.
pub fn beta_curve<Q: ExactReal>(n: u32, p_max: Q) -> Result<PiecewiseAffine<Q>, CellgeomError> {
    Ok(beta_unbounded(n)?.clip(p_max))
}

/// `−(2N−1)p − 1`.
pub fn local_critical_alpha<Q: ExactReal>(n: u32, p: &Q) -> Q {
    -(q::<Q>(2 * n as i64 - 1) * p.clone()) - Q::one()
}

/// `−1 − (N−1)p`.
pub fn polyanalytic_beta<Q: ExactReal>(n: u32, p: &Q) -> Q {
    -Q::one() - q::<Q>(n as i64 - 1) * p.clone()
}
