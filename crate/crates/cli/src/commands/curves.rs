use polyharm::cellgeom::{
    a_curve, b_curve, beta_curve as beta, classify as classify_point, enumerate_cells_clipped, CellPoint,
    PiecewiseAffine,
};
use polyharm::Rational;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::output::{json, pick, q};
use crate::svg::Figure;
use crate::Format;

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    Ok(())
}

fn check_p_max(p_max: &Rational) -> Result<()> {
    if *p_max <= Rational::from_integer(0.into()) {
        return Err(CliError::Usage(format!("--p-max must be positive, got {}", q(p_max))));
    }
    Ok(())
}

/// Named curves clipped to `(0, p_max]`: `beta`, then `b_0..b_N`, `a_1..a_N`.
fn all_curves(n: u32, p_max: &Rational) -> Result<Vec<(String, PiecewiseAffine<Rational>)>> {
    let mut out = vec![("beta".to_string(), beta(n, p_max.clone())?)];
    for j in 0..=n {
        out.push((format!("b_{j}"), b_curve(j, n)?.clip(p_max.clone())));
    }
    for j in 1..=n {
        out.push((format!("a_{j}"), a_curve(j, n)?.clip(p_max.clone())));
    }
    Ok(out)
}

#[derive(Serialize)]
struct CurveJson {
    curve: String,
    vertices: Vec<[String; 2]>,
    slopes: Vec<String>,
}

#[derive(Serialize)]
struct CurvesJson {
    n: u32,
    p_max: String,
    curves: Vec<CurveJson>,
}

fn beta_curve_csv(curves: &[(String, PiecewiseAffine<Rational>)], p_max: &Rational) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Usage(e.to_string());
    w.write_record(["curve", "p_num", "p_den", "alpha_num", "alpha_den", "slope_num", "slope_den"]).map_err(io)?;
    for (name, c) in curves {
        let vs = c.vertices(p_max);
        let last = vs.len() - 1;
        for (i, (p, a)) in vs.iter().enumerate() {
            // slope of the segment to the right of the vertex
            let (sn, sd) = if i < last {
                let s = &c.segment_at(&((p + &vs[i + 1].0) / Rational::from_integer(2.into()))).slope;
                (s.numer().to_string(), s.denom().to_string())
            } else {
                (String::new(), String::new())
            };
            w.write_record([
                name.clone(),
                p.numer().to_string(),
                p.denom().to_string(),
                a.numer().to_string(),
                a.denom().to_string(),
                sn,
                sd,
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii csv"))
}

pub fn beta_curve(n: u32, p_max: &Rational, format: Option<Format>) -> Result<String> {
    check_n(n)?;
    check_p_max(p_max)?;
    let curves = all_curves(n, p_max)?;
    match pick(format, &[Format::Json, Format::Csv, Format::Svg], "beta-curve")? {
        Format::Csv => beta_curve_csv(&curves, p_max),
        Format::Json => {
            let curves = curves
                .iter()
                .map(|(name, c)| CurveJson {
                    curve: name.clone(),
                    vertices: c.vertices(p_max).iter().map(|(p, a)| [q(p), q(a)]).collect(),
                    slopes: c.slopes().iter().map(q).collect(),
                })
                .collect();
            Ok(json(&CurvesJson { n, p_max: q(p_max), curves }))
        }
        Format::Svg => figure(n, p_max),
    }
}

fn figure(n: u32, p_max: &Rational) -> Result<String> {
    let sawtooth = beta(n, p_max.clone())?;
    let cells = enumerate_cells_clipped(n, p_max, &Rational::from_integer(0.into()))?;
    Ok(Figure::new(n, p_max, &sawtooth, &cells).render())
}

pub fn classify(n: u32, p: Rational, alpha: Rational, format: Option<Format>) -> Result<String> {
    check_n(n)?;
    pick(format, &[Format::Json], "classify")?;
    let pt = CellPoint::new(p, alpha).map_err(|e| CliError::Usage(format!("--p must be positive ({e})")))?;
    Ok(json(&classify_point(n, &pt)))
}

pub fn cells(n: u32, p_max: &Rational, format: Option<Format>) -> Result<String> {
    check_n(n)?;
    check_p_max(p_max)?;
    match pick(format, &[Format::Json, Format::Svg], "cells")? {
        Format::Svg => figure(n, p_max),
        _ => Ok(json(&enumerate_cells_clipped(n, p_max, &Rational::from_integer(0.into()))?)),
    }
}
