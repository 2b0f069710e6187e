use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::curves::{a_curve, b_curve};
use super::CellgeomError;
use crate::scalar::ExactReal;

/// Point `(p, α)` with `p > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPoint<Q> {
    p: Q,
    alpha: Q,
}

impl<Q: ExactReal> CellPoint<Q> {
    pub fn new(p: Q, alpha: Q) -> Result<Self, CellgeomError> {
        if p <= Q::zero() {
            return Err(CellgeomError::OutOfDomain(p.to_string()));
        }
        Ok(Self { p, alpha })
    }

    pub fn p(&self) -> &Q {
        &self.p
    }

    pub fn alpha(&self) -> &Q {
        &self.alpha
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellDescriptor {
    pub admissible: bool,
    pub j_set: BTreeSet<u32>,
    pub entangled: bool,
    pub principal: bool,
    pub cell_id: String,
}

/// `{0,2}` style label of a level set; `{}` outside the admissible region.
pub fn cell_id(j_set: &BTreeSet<u32>) -> String {
    let inner: Vec<String> = j_set.iter().map(u32::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

fn value<Q: ExactReal>(curve: Result<super::PiecewiseAffine<Q>, CellgeomError>, p: &Q) -> Q {
    curve.and_then(|c| c.eval(p)).expect("index in range and p > 0")
}

/// Admissibility, level set `J(p, α) = {j : α > a_{N−j,N}(p)}`, and the
/// entangled and principal flags, all with exact comparisons.
pub fn classify<Q: ExactReal>(n: u32, pt: &CellPoint<Q>) -> CellDescriptor {
    let (p, alpha) = (&pt.p, &pt.alpha);
    let beta = (0..=n).map(|j| value(b_curve(j, n), p)).min().expect("n ≥ 0");
    let admissible = *alpha > beta;
    let j_set: BTreeSet<u32> =
        if admissible { (0..n).filter(|&j| *alpha > value(a_curve(n - j, n), p)).collect() } else { BTreeSet::new() };
    let third = Q::one() / Q::from_int(3);
    let nq = Q::from_int(n as i64);
    let entangled = admissible && *p < third && *alpha <= -Q::one() - nq.clone() * p.clone();
    let principal = admissible && *p > third && {
        let first = Q::from_int(-2) + Q::from_int(3 - n as i64) * p.clone();
        let second = -Q::one() + Q::from_int(2 - n as i64) * p.clone();
        *alpha <= first.min(second)
    };
    CellDescriptor { admissible, cell_id: cell_id(&j_set), j_set, entangled, principal }
}
