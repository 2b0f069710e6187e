use std::path::Path;

use num_complex::Complex;
use polyharm::symcalc::random::seeded;
use polyharm::symcalc::{
    almansi_decompose, cellular_decompose, is_harmonic, lagrange_reconstruct, LagrangeFrame, PieceCheck,
};
use polyharm::verify::{run_suite, PropertyReport, Suite};
use polyharm::{ExactReal, Poly, Rational};
use rand::Rng;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::output::{json, pick, q};
use crate::{Format, Mode};

/// Output text and, when a check failed, the message for exit code 1.
pub type Report = (String, Option<String>);

const ANGULAR_NODES: usize = 64;

fn read_poly(path: &Path) -> Result<Poly> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct Verification {
    recomposition_residual: Poly,
    checks: Vec<PieceCheck>,
    pass: bool,
}

#[derive(Serialize)]
struct Decomposition {
    mode: &'static str,
    order: u32,
    input: Poly,
    pieces: Vec<Poly>,
    verification: Verification,
}

fn harmonic_checks(pieces: &[Poly], name: &str) -> Vec<PieceCheck> {
    pieces
        .iter()
        .enumerate()
        .map(|(j, p)| PieceCheck { piece: j, check: format!("{name}_{j} is harmonic"), pass: is_harmonic(p) })
        .collect()
}

pub fn decompose(input: &Path, n: u32, mode: Mode, format: Option<Format>) -> Result<Report> {
    pick(format, &[Format::Json], "decompose")?;
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    let u = read_poly(input)?;
    let (label, pieces, recomposed, mut checks) = match mode {
        Mode::Almansi => {
            let f = almansi_decompose(&u, n)?;
            let checks = harmonic_checks(&f.pieces, "u");
            ("almansi", f.pieces.clone(), f.recompose(), checks)
        }
        Mode::Alternative => {
            let f = almansi_decompose(&u, n)?.to_alternative();
            let checks = harmonic_checks(&f.pieces, "v");
            ("alternative", f.pieces.clone(), f.recompose(), checks)
        }
        Mode::Cellular => {
            let f = cellular_decompose(&u, n)?;
            ("cellular", f.pieces.clone(), f.recompose(), f.piece_checks())
        }
    };
    if mode == Mode::Almansi {
        let restricted = polyharm::symcalc::AlmansiForm { order: n, pieces: pieces.clone() }.extension().restrict();
        checks.push(PieceCheck { piece: 0, check: "extension restricts to u".into(), pass: restricted == u });
    }
    let residual = &recomposed - &u;
    let pass = residual.is_zero() && checks.iter().all(|c| c.pass);
    let out = Decomposition {
        mode: label,
        order: n,
        input: u,
        pieces,
        verification: Verification { recomposition_residual: residual, checks, pass },
    };
    let failure = (!pass).then(|| format!("{label} decomposition failed its checks"));
    Ok((json(&out), failure))
}

#[derive(Serialize)]
struct VerifyReport {
    suite: String,
    seed: u64,
    trials: usize,
    pass: bool,
    properties: Vec<PropertyReport>,
}

pub fn verify(suite: Suite, seed: u64, trials: usize, format: Option<Format>) -> Result<Report> {
    pick(format, &[Format::Json], "verify")?;
    if trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let properties = run_suite(suite, seed, trials);
    let failed: Vec<&str> = properties.iter().filter(|r| !r.ok()).map(|r| r.property.as_str()).collect();
    let failure = (!failed.is_empty()).then(|| format!("properties failed: {}", failed.join(", ")));
    let report = VerifyReport { suite: suite.to_string(), seed, trials, pass: failure.is_none(), properties };
    Ok((json(&report), failure))
}

#[derive(Serialize)]
struct PointCheck {
    z: [f64; 2],
    reconstructed: [f64; 2],
    direct: [f64; 2],
    error: f64,
}

#[derive(Serialize)]
struct ExtensionReport {
    order: u32,
    radii: Vec<String>,
    delta: String,
    tol: f64,
    max_error: f64,
    pass: bool,
    points: Vec<PointCheck>,
}

pub fn default_radii(n: u32) -> Vec<Rational> {
    let den = 2 * (n as i64 + 1);
    (0..n as i64).map(|k| Rational::new((n as i64 + 1 + k).into(), den.into())).collect()
}

pub fn extension_check(
    input: &Path,
    n: u32,
    radii: Option<Vec<Rational>>,
    points: usize,
    seed: u64,
    tol: f64,
    format: Option<Format>,
) -> Result<Report> {
    pick(format, &[Format::Json], "extension-check")?;
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    let u = read_poly(input)?;
    let frame =
        LagrangeFrame::new(radii.unwrap_or_else(|| default_radii(n))).map_err(|e| CliError::Usage(e.to_string()))?;
    let rho1: f64 = frame.radii()[0].to_real();
    let mut rng = seeded(seed);
    let mut checks = Vec::with_capacity(points);
    for _ in 0..points {
        let r = rho1 * 0.999 * rng.gen_range(0.0f64..1.0).sqrt();
        let z = Complex::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
        let rec = lagrange_reconstruct(&u, n, &frame, z, ANGULAR_NODES)?;
        let direct = u.eval(z);
        let error = (rec - direct).norm() / direct.norm().max(1.0);
        checks.push(PointCheck {
            z: [z.re, z.im],
            reconstructed: [rec.re, rec.im],
            direct: [direct.re, direct.im],
            error,
        });
    }
    let max_error = checks.iter().map(|c| c.error).fold(0.0, f64::max);
    let pass = max_error <= tol;
    let report = ExtensionReport {
        order: n,
        radii: frame.radii().iter().map(q).collect(),
        delta: q(frame.delta()),
        tol,
        max_error,
        pass,
        points: checks,
    };
    let failure = (!pass).then(|| format!("reconstruction error {max_error:.3e} above {tol:.1e}"));
    Ok((json(&report), failure))
}
