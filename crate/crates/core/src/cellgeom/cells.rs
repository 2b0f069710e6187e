use std::collections::BTreeMap;

use num_rational::Ratio;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::classify::{classify, CellDescriptor, CellPoint};
use super::curves::{a_curve, beta_unbounded};
use super::piecewise::{Affine, PiecewiseAffine};
use super::CellgeomError;
use crate::scalar::{format_rational, ExactReal, RatInt};

/// Region `p_lo ≤ p ≤ p_hi`, `lower(p) ≤ α ≤ upper(p)`, with `lower < upper`
/// strictly inside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trapezoid<Q> {
    pub p_lo: Q,
    pub p_hi: Q,
    pub lower: Affine<Q>,
    pub upper: Affine<Q>,
}

impl<Q: ExactReal> Trapezoid<Q> {
    /// Point at relative position `(s, t) ∈ (0,1)²`.
    pub fn sample(&self, s: &Q, t: &Q) -> (Q, Q) {
        let p = self.p_lo.clone() + s.clone() * (self.p_hi.clone() - self.p_lo.clone());
        let lo = self.lower.eval(&p);
        let hi = self.upper.eval(&p);
        let alpha = lo.clone() + t.clone() * (hi - lo);
        (p, alpha)
    }

    fn edge(&self, p: &Q) -> (Q, Q) {
        (self.lower.eval(p), self.upper.eval(p))
    }
}

/// One admissible cell: its label, boundary polygons (one per connected
/// component, counter-clockwise) and the trapezoids that tile it.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell<Q> {
    /// Classification of the cell; `entangled` and `principal` are set when
    /// some piece of the cell meets that region.
    pub descriptor: CellDescriptor,
    pub components: Vec<Vec<(Q, Q)>>,
    pub pieces: Vec<Trapezoid<Q>>,
}

impl<Q: ExactReal> Cell<Q> {
    pub fn cell_id(&self) -> &str {
        &self.descriptor.cell_id
    }
}

/// Maximal runs of horizontally adjacent trapezoids.
type Runs<Q> = Vec<Vec<Trapezoid<Q>>>;

fn half<Q: ExactReal>(a: &Q, b: &Q) -> Q {
    (a.clone() + b.clone()) / Q::from_int(2)
}

/// Sorted abscissae in `(0, p_max]` where any pair of the given curves cross
/// or any of them kinks.
fn critical_points<Q: ExactReal>(curves: &[PiecewiseAffine<Q>], p_max: &Q) -> Vec<Q> {
    let mut kinks: Vec<Q> = curves.iter().flat_map(|c| c.breakpoints().iter().cloned()).collect();
    kinks.push(p_max.clone());
    kinks.retain(|k| k <= p_max);
    kinks.sort();
    kinks.dedup();

    let mut out = kinks.clone();
    let mut left = Q::zero();
    for right in &kinks {
        let mid = half(&left, right);
        let lines: Vec<&Affine<Q>> = curves.iter().map(|c| c.segment_at(&mid)).collect();
        for (i, f) in lines.iter().enumerate() {
            for g in &lines[i + 1..] {
                if let Some(x) = f.crossing(g) {
                    if x > left && x < *right {
                        out.push(x);
                    }
                }
            }
        }
        left = right.clone();
    }
    out.sort();
    out.dedup();
    out
}

/// Partitions `(0, p_max] × (β(N,p), α_max]` into the level sets of `J`.
pub fn enumerate_cells_clipped<Q: ExactReal>(n: u32, p_max: &Q, alpha_max: &Q) -> Result<Vec<Cell<Q>>, CellgeomError> {
    if n == 0 {
        return Err(CellgeomError::BadIndex { j: 0, n });
    }
    if *p_max <= Q::zero() {
        return Err(CellgeomError::OutOfDomain(p_max.to_string()));
    }
    let beta = beta_unbounded::<Q>(n)?;
    let top = PiecewiseAffine::affine(Affine::new(Q::zero(), alpha_max.clone()));
    let a: Vec<PiecewiseAffine<Q>> = (1..=n).map(|j| a_curve(j, n)).collect::<Result<_, _>>()?;
    let mut all = a.clone();
    all.push(beta.clone());
    all.push(top.clone());
    let cuts = critical_points(&all, p_max);

    // slab index -> bands (j_set label, trapezoid)
    let mut slabs: Vec<Vec<(CellDescriptor, Trapezoid<Q>)>> = Vec::with_capacity(cuts.len());
    let mut left = Q::zero();
    for right in &cuts {
        let mid = half(&left, right);
        let lo = beta.segment_at(&mid).clone();
        let hi = top.segment_at(&mid).clone();
        let (lo_m, hi_m) = (lo.eval(&mid), hi.eval(&mid));
        let mut bands = Vec::new();
        if lo_m < hi_m {
            let mut inner: Vec<Affine<Q>> = a
                .iter()
                .map(|c| c.segment_at(&mid).clone())
                .filter(|l| {
                    let v = l.eval(&mid);
                    v > lo_m && v < hi_m
                })
                .collect();
            inner.sort_by_key(|l| l.eval(&mid));
            inner.dedup();
            let mut edges = vec![lo];
            edges.extend(inner);
            edges.push(hi);
            for w in edges.windows(2) {
                let trap =
                    Trapezoid { p_lo: left.clone(), p_hi: right.clone(), lower: w[0].clone(), upper: w[1].clone() };
                let (ps, al) = trap.sample(&(Q::one() / Q::from_int(2)), &(Q::one() / Q::from_int(2)));
                let desc = classify(n, &CellPoint::new(ps, al)?);
                bands.push((desc, trap));
            }
        }
        slabs.push(bands);
        left = right.clone();
    }

    let mut by_id: BTreeMap<String, (CellDescriptor, Runs<Q>)> = BTreeMap::new();
    for (i, bands) in slabs.iter().enumerate() {
        for (desc, trap) in bands {
            let entry = by_id.entry(desc.cell_id.clone()).or_insert_with(|| (desc.clone(), Vec::new()));
            // the flags mark regions that need not fill a whole cell
            entry.0.entangled |= desc.entangled;
            entry.0.principal |= desc.principal;
            let joins = i > 0
                && entry.1.last().and_then(|run| run.last()).is_some_and(|prev| {
                    prev.p_hi == trap.p_lo && {
                        let (a0, a1) = prev.edge(&prev.p_hi);
                        let (b0, b1) = trap.edge(&trap.p_lo);
                        a0.max(b0) < a1.min(b1)
                    }
                });
            if joins {
                entry.1.last_mut().expect("run").push(trap.clone());
            } else {
                entry.1.push(vec![trap.clone()]);
            }
        }
    }

    let mut cells: Vec<Cell<Q>> = by_id
        .into_values()
        .map(|(descriptor, runs)| Cell {
            descriptor,
            components: runs.iter().map(|r| polygon(r)).collect(),
            pieces: runs.into_iter().flatten().collect(),
        })
        .collect();
    cells.sort_by(|x, y| {
        (x.descriptor.j_set.len(), &x.descriptor.j_set).cmp(&(y.descriptor.j_set.len(), &y.descriptor.j_set))
    });
    Ok(cells)
}

/// Cells of the admissible region for `p ≤ p_max` (at least 2), clipped at `α = 0`.
pub fn enumerate_cells<Q: ExactReal>(n: u32, p_max: &Q) -> Result<Vec<Cell<Q>>, CellgeomError> {
    if *p_max < Q::from_int(2) {
        return Err(CellgeomError::OutOfDomain(format!("p_max = {p_max} < 2")));
    }
    enumerate_cells_clipped(n, p_max, &Q::zero())
}

/// Counter-clockwise outline of consecutive trapezoids: lower chain left to
/// right, then upper chain back.
fn polygon<Q: ExactReal>(run: &[Trapezoid<Q>]) -> Vec<(Q, Q)> {
    let mut pts = Vec::with_capacity(4 * run.len());
    for t in run {
        pts.push((t.p_lo.clone(), t.lower.eval(&t.p_lo)));
        pts.push((t.p_hi.clone(), t.lower.eval(&t.p_hi)));
    }
    for t in run.iter().rev() {
        pts.push((t.p_hi.clone(), t.upper.eval(&t.p_hi)));
        pts.push((t.p_lo.clone(), t.upper.eval(&t.p_lo)));
    }
    simplify(pts)
}

fn collinear<Q: ExactReal>(a: &(Q, Q), b: &(Q, Q), c: &(Q, Q)) -> bool {
    let cross = (b.0.clone() - a.0.clone()) * (c.1.clone() - a.1.clone())
        - (b.1.clone() - a.1.clone()) * (c.0.clone() - a.0.clone());
    cross.is_zero()
}

fn simplify<Q: ExactReal>(pts: Vec<(Q, Q)>) -> Vec<(Q, Q)> {
    let mut out: Vec<(Q, Q)> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    loop {
        let k = out.len();
        if k < 3 {
            return out;
        }
        let idx = (0..k).find(|&i| collinear(&out[(i + k - 1) % k], &out[i], &out[(i + 1) % k]));
        match idx {
            Some(i) => {
                out.remove(i);
            }
            None => return out,
        }
    }
}

fn point_json<T: RatInt>(pt: &(Ratio<T>, Ratio<T>)) -> [String; 2] {
    [format_rational(&pt.0), format_rational(&pt.1)]
}

impl<T: RatInt> Serialize for Cell<Ratio<T>> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let extra = self.components.len() > 1;
        let mut map = serializer.serialize_map(Some(if extra { 6 } else { 5 }))?;
        map.serialize_entry("cell_id", &self.descriptor.cell_id)?;
        map.serialize_entry("j_set", &self.descriptor.j_set)?;
        map.serialize_entry("entangled", &self.descriptor.entangled)?;
        map.serialize_entry("principal", &self.descriptor.principal)?;
        let boundary: Vec<[String; 2]> = self.components[0].iter().map(point_json).collect();
        map.serialize_entry("boundary", &boundary)?;
        if extra {
            let rest: Vec<Vec<[String; 2]>> =
                self.components[1..].iter().map(|c| c.iter().map(point_json).collect()).collect();
            map.serialize_entry("extra_components", &rest)?;
        }
        map.end()
    }
}
