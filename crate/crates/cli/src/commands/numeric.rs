use polyharm::kernelnum::{
    annulus_regime_exponent, annulus_scan as scan, fit_slope, kernel_norm as norm, KernelSpec, NormVerdict,
};
use polyharm::Rational;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::output::{f, json, pick, q};
use crate::Format;

#[derive(Serialize)]
struct NormReport {
    j: u32,
    n: u32,
    p: String,
    alpha: String,
    #[serde(flatten)]
    verdict: NormVerdict<f64>,
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CliError::Usage(format!("--tol must lie in (0, 1), got {tol}")));
    }
    Ok(())
}

pub fn kernel_norm(j: u32, n: u32, p: &Rational, alpha: &Rational, tol: f64, format: Option<Format>) -> Result<String> {
    pick(format, &[Format::Json], "kernel-norm")?;
    check_tol(tol)?;
    if *p <= Rational::from_integer(0.into()) {
        return Err(CliError::Usage(format!("--p must be positive, got {}", q(p))));
    }
    let spec = KernelSpec::new(j, n)?;
    let verdict = norm(spec, p, alpha, tol)?;
    Ok(json(&NormReport { j, n, p: q(p), alpha: q(alpha), verdict }))
}

#[derive(Serialize)]
struct ScanJson {
    n: u32,
    p: String,
    rows: Vec<polyharm::kernelnum::ScanRow<f64>>,
    fitted_slope: f64,
    predicted_exponent: String,
    log_factor: bool,
}

pub fn annulus_scan(n: u32, p: &Rational, k_min: u32, k_max: u32, tol: f64, format: Option<Format>) -> Result<String> {
    let format = pick(format, &[Format::Csv, Format::Json], "annulus-scan")?;
    check_tol(tol)?;
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if k_min < 1 || k_max > 40 || k_min + 2 > k_max {
        return Err(CliError::Usage(format!("need 1 ≤ k-min, k-min + 2 ≤ k-max ≤ 40, got {k_min}..{k_max}")));
    }
    if *p <= Rational::from_integer(0.into()) {
        return Err(CliError::Usage(format!("--p must be positive, got {}", q(p))));
    }
    let ks: Vec<u32> = (k_min..=k_max).collect();
    let rows = scan(n, f(p), &ks, tol)?;
    let slope = fit_slope(&rows);
    let (expected, log_factor) = annulus_regime_exponent(n, p);
    if format == Format::Json {
        return Ok(json(&ScanJson {
            n,
            p: q(p),
            rows,
            fitted_slope: slope,
            predicted_exponent: q(&expected),
            log_factor,
        }));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Usage(e.to_string());
    w.write_record(["k", "r", "integral", "log_one_minus_r", "log_integral"]).map_err(io)?;
    for row in &rows {
        w.write_record([
            row.k.to_string(),
            format!("{:e}", row.r),
            format!("{:e}", row.integral),
            format!("{:e}", row.log_gap),
            format!("{:e}", row.log_integral),
        ])
        .map_err(io)?;
    }
    let mut text = String::from_utf8(w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?).expect("ascii csv");
    text.push_str(&format!("# fitted_slope,{slope:.6}\n"));
    text.push_str(&format!("# predicted_exponent,{},{:.6}\n", q(&expected), f(&expected)));
    text.push_str(&format!("# log_factor,{log_factor}\n"));
    Ok(text)
}
