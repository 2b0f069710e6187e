use std::cmp::Ordering;

use super::CellgeomError;
use crate::scalar::ExactReal;

/// `p ↦ slope·p + intercept`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Affine<Q> {
    pub slope: Q,
    pub intercept: Q,
}

impl<Q: ExactReal> Affine<Q> {
    pub fn new(slope: Q, intercept: Q) -> Self {
        Self { slope, intercept }
    }

    pub fn eval(&self, p: &Q) -> Q {
        self.slope.clone() * p.clone() + self.intercept.clone()
    }

    /// Abscissa where two non-parallel lines meet.
    pub fn crossing(&self, other: &Self) -> Option<Q> {
        if self.slope == other.slope {
            return None;
        }
        Some((other.intercept.clone() - self.intercept.clone()) / (self.slope.clone() - other.slope.clone()))
    }
}

/// Continuous piecewise-affine function on `(0, p_max]` (or `(0, ∞)`).
///
/// Segment `i` covers `[breakpoints[i-1], breakpoints[i]]`, with the first
/// segment starting at 0 and the last running to the end of the domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseAffine<Q> {
    breakpoints: Vec<Q>,
    segments: Vec<Affine<Q>>,
    p_max: Option<Q>,
}

impl<Q: ExactReal> PiecewiseAffine<Q> {
    pub fn affine(line: Affine<Q>) -> Self {
        Self { breakpoints: Vec::new(), segments: vec![line], p_max: None }
    }

    /// Validates ordering, positivity and continuity; merges collinear
    /// neighbouring segments.
    pub fn from_parts(breakpoints: Vec<Q>, segments: Vec<Affine<Q>>, p_max: Option<Q>) -> Result<Self, CellgeomError> {
        if segments.len() != breakpoints.len() + 1 {
            return Err(CellgeomError::Malformed("segment count must be breakpoints + 1".into()));
        }
        if breakpoints.first().is_some_and(|b| *b <= Q::zero()) {
            return Err(CellgeomError::Malformed("breakpoints must be positive".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(CellgeomError::Malformed("breakpoints must increase strictly".into()));
        }
        if let (Some(last), Some(pm)) = (breakpoints.last(), p_max.as_ref()) {
            if last > pm {
                return Err(CellgeomError::Malformed("breakpoint beyond p_max".into()));
            }
        }
        for (i, bp) in breakpoints.iter().enumerate() {
            if segments[i].eval(bp) != segments[i + 1].eval(bp) {
                return Err(CellgeomError::Discontinuous(bp.to_string()));
            }
        }
        Ok(Self { breakpoints, segments, p_max }.normalized())
    }

    fn normalized(self) -> Self {
        let mut bps = Vec::with_capacity(self.breakpoints.len());
        let mut segs: Vec<Affine<Q>> = Vec::with_capacity(self.segments.len());
        let mut iter = self.segments.into_iter();
        segs.push(iter.next().expect("at least one segment"));
        for (bp, seg) in self.breakpoints.into_iter().zip(iter) {
            if *segs.last().expect("nonempty") != seg {
                bps.push(bp);
                segs.push(seg);
            }
        }
        // Breakpoints at the right end of the domain carry no information.
        if let Some(pm) = &self.p_max {
            while bps.last().is_some_and(|b| b >= pm) {
                bps.pop();
                segs.pop();
            }
        }
        Self { breakpoints: bps, segments: segs, p_max: self.p_max }
    }

    pub fn breakpoints(&self) -> &[Q] {
        &self.breakpoints
    }

    pub fn segments(&self) -> &[Affine<Q>] {
        &self.segments
    }

    pub fn slopes(&self) -> Vec<Q> {
        self.segments.iter().map(|s| s.slope.clone()).collect()
    }

    pub fn p_max(&self) -> Option<&Q> {
        self.p_max.as_ref()
    }

    fn in_domain(&self, p: &Q) -> bool {
        *p > Q::zero() && self.p_max.as_ref().is_none_or(|m| p <= m)
    }

    /// Index of a segment containing `p` (the left one at a breakpoint).
    pub fn segment_index(&self, p: &Q) -> usize {
        self.breakpoints.partition_point(|b| b < p)
    }

    pub fn segment_at(&self, p: &Q) -> &Affine<Q> {
        &self.segments[self.segment_index(p)]
    }

    pub fn eval(&self, p: &Q) -> Result<Q, CellgeomError> {
        if !self.in_domain(p) {
            return Err(CellgeomError::OutOfDomain(p.to_string()));
        }
        Ok(self.segment_at(p).eval(p))
    }

    /// Right limit at `p = 0`.
    pub fn value_at_zero(&self) -> Q {
        self.segments[0].intercept.clone()
    }

    /// Restricts the domain to `(0, p_max]`.
    pub fn clip(&self, p_max: Q) -> Self {
        let p_max = match &self.p_max {
            Some(m) if *m < p_max => m.clone(),
            _ => p_max,
        };
        Self { breakpoints: self.breakpoints.clone(), segments: self.segments.clone(), p_max: Some(p_max) }.normalized()
    }

    /// Pointwise minimum, computed by an exact sweep over the merged
    /// breakpoints and the crossings inside each interval.
    pub fn min(&self, other: &Self) -> Self {
        self.combine(other, Ordering::Less)
    }

    pub fn max(&self, other: &Self) -> Self {
        self.combine(other, Ordering::Greater)
    }

    fn combine(&self, other: &Self, keep: Ordering) -> Self {
        let p_max = match (&self.p_max, &other.p_max) {
            (Some(a), Some(b)) => Some(if a < b { a.clone() } else { b.clone() }),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        let mut cuts: Vec<Q> = self.breakpoints.iter().chain(&other.breakpoints).cloned().collect();
        cuts.sort();
        cuts.dedup();
        if let Some(pm) = &p_max {
            cuts.retain(|c| c < pm);
        }

        let mut bps = Vec::new();
        let mut segs = Vec::new();
        let mut left = Q::zero();
        for i in 0..=cuts.len() {
            let right = cuts.get(i).cloned().or_else(|| p_max.clone());
            let probe = |x: &Q| match &right {
                Some(r) => (x.clone() + r.clone()) / Q::from_int(2),
                None => x.clone() + Q::one(),
            };
            let mid = probe(&left);
            let f = self.segment_at(&mid).clone();
            let g = other.segment_at(&mid).clone();
            let mut pieces = vec![left.clone()];
            if let Some(x) = f.crossing(&g) {
                if x > left && right.as_ref().is_none_or(|r| x < *r) {
                    pieces.push(x);
                }
            }
            for (k, start) in pieces.iter().enumerate() {
                let end = pieces.get(k + 1).cloned().or_else(|| right.clone());
                let m = match &end {
                    Some(e) => (start.clone() + e.clone()) / Q::from_int(2),
                    None => start.clone() + Q::one(),
                };
                let pick = if f.eval(&m).cmp(&g.eval(&m)) == keep { f.clone() } else { g.clone() };
                if !(i == 0 && k == 0) {
                    bps.push(start.clone());
                }
                segs.push(pick);
            }
            if let Some(r) = right {
                left = r;
            }
        }
        Self { breakpoints: bps, segments: segs, p_max }.normalized()
    }

    pub fn min_of<'a, I: IntoIterator<Item = &'a Self>>(curves: I) -> Option<Self>
    where
        Q: 'a,
    {
        let mut iter = curves.into_iter();
        let first = iter.next()?.clone();
        Some(iter.fold(first, |acc, c| acc.min(c)))
    }

    /// `(p, value)` at `p = 0` (as a limit), every breakpoint, and `p_end`.
    pub fn vertices(&self, p_end: &Q) -> Vec<(Q, Q)> {
        let mut out = vec![(Q::zero(), self.value_at_zero())];
        for bp in self.breakpoints.iter().filter(|b| *b < p_end) {
            out.push((bp.clone(), self.segment_at(bp).eval(bp)));
        }
        out.push((p_end.clone(), self.segment_at(p_end).eval(p_end)));
        out
    }

    /// Every one-sided pair at a breakpoint agrees.
    pub fn is_continuous(&self) -> bool {
        self.breakpoints.iter().enumerate().all(|(i, bp)| self.segments[i].eval(bp) == self.segments[i + 1].eval(bp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn line(s: i64, c: i64) -> PiecewiseAffine<Rational> {
        PiecewiseAffine::affine(Affine::new(q(s, 1), q(c, 1)))
    }

    #[test]
    fn min_of_two_lines() {
        // min(-1 - p, -2 + p) switches at p = 1/2.
        let m = line(-1, -1).min(&line(1, -2));
        assert_eq!(m.breakpoints(), &[q(1, 2)]);
        assert_eq!(m.slopes(), vec![q(1, 1), q(-1, 1)]);
        assert_eq!(m.eval(&q(1, 2)).unwrap(), q(-3, 2));
        let mx = line(-1, -1).max(&line(1, -2));
        assert_eq!(mx.slopes(), vec![q(-1, 1), q(1, 1)]);
        assert!(m.is_continuous() && mx.is_continuous());
    }

    #[test]
    fn parallel_and_identical_lines() {
        let m = line(2, 1).min(&line(2, 3));
        assert!(m.breakpoints().is_empty());
        assert_eq!(m.segments()[0], Affine::new(q(2, 1), q(1, 1)));
        assert_eq!(line(2, 1).min(&line(2, 1)), line(2, 1));
    }

    #[test]
    fn domain_and_clip() {
        let f = line(-1, -1).min(&line(1, -2)).clip(q(1, 4));
        assert!(f.breakpoints().is_empty());
        assert!(f.eval(&q(1, 2)).is_err());
        assert!(f.eval(&q(0, 1)).is_err());
        assert_eq!(f.eval(&q(1, 4)).unwrap(), q(-7, 4));
    }

    #[test]
    fn from_parts_rejects_jumps() {
        let r = PiecewiseAffine::from_parts(
            vec![q(1, 1)],
            vec![Affine::new(q(0, 1), q(0, 1)), Affine::new(q(0, 1), q(1, 1))],
            None,
        );
        assert!(matches!(r, Err(CellgeomError::Discontinuous(_))));
        let merged = PiecewiseAffine::from_parts(
            vec![q(1, 1)],
            vec![Affine::new(q(1, 1), q(0, 1)), Affine::new(q(1, 1), q(0, 1))],
            None,
        )
        .unwrap();
        assert!(merged.breakpoints().is_empty());
    }
}
