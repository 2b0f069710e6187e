//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;

use polyharm::cellgeom::{b_curve, beta_curve};
use polyharm::kernelnum::{annulus_scan, fit_slope, i_diverges, i_quadrature, i_series, kernel_norm, KernelSpec};
use polyharm::symcalc::random::{self, seeded};
use polyharm::symcalc::{
    cellular_decompose, kernel_laurent_at_one, lagrange_reconstruct, laplacian_pow, LagrangeFrame,
};
use polyharm::verify::{self, PropertyReport};
use polyharm::{ExactReal, GaussRational, Poly, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

fn reports(rs: &[PropertyReport]) -> Outcome {
    let bad: Vec<String> = rs
        .iter()
        .filter(|r| !r.ok())
        .map(|r| {
            format!("{} ({}/{}): {}", r.property, r.passed, r.trials, r.counterexample.clone().unwrap_or_default())
        })
        .collect();
    let trials: usize = rs.iter().map(|r| r.trials).sum();
    if bad.is_empty() {
        Outcome::new(true, format!("{} properties, {trials} trials", rs.len()))
    } else {
        Outcome::new(false, bad.join("; "))
    }
}

fn c1_identities() -> Outcome {
    reports(&verify::identities(2024, 200))
}

fn c2_beta_one() -> Outcome {
    let beta = beta_curve::<Rational>(1, q(3000, 1)).unwrap();
    let mut rng = seeded(11);
    for _ in 0..1000 {
        let p = q(rng.gen_range(1..=3000), rng.gen_range(1..=1000));
        let expected = if p <= q(1, 2) {
            -Rational::one() - p.clone()
        } else if p <= Rational::one() {
            p.clone() - q(2, 1)
        } else {
            -Rational::one()
        };
        let got = beta.eval(&p).unwrap();
        if got != expected {
            return Outcome::new(false, format!("p = {p}: β = {got}, closed form {expected}"));
        }
    }
    Outcome::new(true, "1000 rational p")
}

fn c3_sawtooth() -> Outcome {
    let b2 = beta_curve::<Rational>(2, q(3, 1)).unwrap();
    let bps = vec![q(1, 4), q(1, 3), q(1, 2), q(1, 1)];
    let vals = vec![q(-7, 4), q(-5, 3), q(-2, 1), q(-2, 1)];
    let slopes = vec![q(-3, 1), q(1, 1), q(-2, 1), q(0, 1), q(-1, 1)];
    let got_vals: Vec<Rational> = b2.breakpoints().iter().map(|p| b2.eval(p).unwrap()).collect();
    if b2.breakpoints() != bps.as_slice() || got_vals != vals || b2.slopes() != slopes {
        return Outcome::new(false, format!("β(2): breakpoints {:?}, slopes {:?}", b2.breakpoints(), b2.slopes()));
    }
    let b3 = beta_curve::<Rational>(3, q(3, 1)).unwrap();
    let lead = &b3.breakpoints()[..2];
    if lead != [q(1, 6), q(1, 5)] || !b3.is_continuous() {
        return Outcome::new(false, format!("β(3) breakpoints {:?}", b3.breakpoints()));
    }
    Outcome::new(
        true,
        format!("β(3) breakpoints {}", b3.breakpoints().iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ")),
    )
}

fn c4_cellular() -> Outcome {
    let half = GaussRational::new(q(1, 2), Rational::zero());
    let f = cellular_decompose(&Poly::one(), 2).unwrap();
    let w0 = (&Poly::one() + &Poly::abs_sq()).scale(&half);
    if f.pieces != vec![w0, Poly::constant(half)] {
        return Outcome::new(false, "worked case u = 1, N = 2");
    }
    reports(&verify::cellular(4, 100))
}

fn c5_entangled() -> Outcome {
    reports(&[verify::entangled(5, 100)])
}

fn c6_kernels() -> Outcome {
    for n in 1..=4u32 {
        for j in 0..=n {
            let u: Poly = kernel_laurent_at_one(j, n).unwrap();
            if !laplacian_pow(&u, n).is_zero() {
                return Outcome::new(false, format!("Δ^{n} U_{{{j},{n}}} ≠ 0"));
            }
        }
    }
    Outcome::new(true, "0 ≤ j ≤ N ≤ 4")
}

fn c7_lemma_int() -> Outcome {
    let i10 = i_series(1.0, 0.0, 1e-12).unwrap().finite().unwrap().value;
    let i11 = i_series(1.0, 1.0, 1e-12).unwrap().finite().unwrap().value;
    if (i10 - PI / 2.0).abs() > 1e-9 * PI / 2.0 || (i11 - PI).abs() > 1e-9 * PI {
        return Outcome::new(false, format!("I(1,0) = {i10}, I(1,1) = {i11}"));
    }
    let mut rng = seeded(7);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let b = rng.gen_range(0.0..2.5f64);
        let lo = (-1.0f64).max(2.0 * (b - 1.0));
        let a = lo + rng.gen_range(0.3..3.0);
        let s = match i_series(a, b, 1e-10) {
            Ok(r) => r.finite().unwrap().value,
            Err(e) => return Outcome::new(false, format!("series I({a}, {b}): {e}")),
        };
        let quad = match i_quadrature(a, b, 1e-8) {
            Ok(r) => r.value,
            Err(e) => return Outcome::new(false, format!("quadrature I({a}, {b}): {e}")),
        };
        let rel = (quad - s).abs() / s;
        worst = worst.max(rel);
        if rel > 1e-6 {
            return Outcome::new(false, format!("I({a}, {b}): series {s}, quadrature {quad}"));
        }
    }
    for _ in 0..200 {
        let b = q(rng.gen_range(0..=40), 8);
        let off = q(rng.gen_range(-4..=4), 64);
        let a = if rng.gen_bool(0.5) { -Rational::one() + off } else { q(2, 1) * (b.clone() - Rational::one()) + off };
        let exact = a <= -Rational::one() || (b > Rational::zero() && a <= q(2, 1) * (b.clone() - Rational::one()));
        let (af, bf) = (a.to_real::<f64>(), b.to_real::<f64>());
        let verdict = match i_series(af, bf, 1e-6) {
            Ok(r) => r.finite().is_none(),
            Err(_) => !i_diverges(af, bf),
        };
        if verdict != exact {
            return Outcome::new(false, format!("verdict at a = {a}, b = {b}"));
        }
    }
    Outcome::new(true, format!("20 pairs, worst series/quadrature gap {worst:.1e}; 200 verdicts"))
}

fn c8_dichotomy() -> Outcome {
    let ps = [q(1, 8), q(1, 4), q(1, 3), q(1, 2), q(1, 1), q(2, 1)];
    let delta = q(1, 10);
    let mut fails = Vec::new();
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio: f64 = 0.0;
    let mut monotone = 0;
    let mut cases = 0;
    for n in 1..=3u32 {
        for j in 0..=n {
            let k = KernelSpec::new(j, n).unwrap();
            let curve = b_curve::<Rational>(j, n).unwrap();
            for p in &ps {
                let b = curve.eval(p).unwrap();
                cases += 2;
                match kernel_norm::<_, f64>(k, p, &(b.clone() + delta.clone()), 1e-6) {
                    Ok(v) if v.finite && v.cross_check == Some(true) => {}
                    Ok(v) => fails.push(format!("finite side j={j} N={n} p={p}: {v:?}")),
                    Err(e) => fails.push(format!("finite side j={j} N={n} p={p}: {e}")),
                }
                match kernel_norm::<_, f64>(k, p, &(b - delta.clone()), 1e-6) {
                    Ok(v) if !v.finite => {
                        let ratio = v.growth_ratio.unwrap_or(f64::NAN);
                        min_ratio = min_ratio.min(ratio);
                        max_ratio = max_ratio.max(ratio);
                        if v.divergence_trace.windows(2).all(|w| w[1].1 > w[0].1) {
                            monotone += 1;
                        }
                        if v.witness != Some(true) {
                            fails.push(format!("divergent side j={j} N={n} p={p}: ratio {ratio:.3}"));
                        }
                    }
                    Ok(_) => fails.push(format!("divergent side j={j} N={n} p={p}: reported finite")),
                    Err(e) => fails.push(format!("divergent side j={j} N={n} p={p}: {e}")),
                }
            }
        }
    }
    let summary = format!(
        "{cases} cases, {monotone}/{} divergent traces strictly increasing, last/first ratios in [{min_ratio:.2}, {max_ratio:.2}]",
        cases / 2
    );
    if fails.is_empty() {
        Outcome::new(true, summary)
    } else {
        Outcome::new(false, format!("{summary}; {} failing, first: {}", fails.len(), fails[0]))
    }
}

fn c9_asymptotics() -> Outcome {
    let ks: Vec<u32> = (6..=12).collect();
    let mut details = Vec::new();
    let mut pass = true;
    for (p, expected) in [(0.4f64, 2.0 - 0.4), (0.2, 1.0 + 3.0 * 0.2)] {
        match annulus_scan(2, p, &ks, 1e-9) {
            Ok(rows) => {
                let slope = fit_slope(&rows);
                pass &= (slope - expected).abs() <= 0.05;
                details.push(format!("p = {p}: slope {slope:.4} vs {expected}"));
            }
            Err(e) => {
                pass = false;
                details.push(format!("p = {p}: {e}"));
            }
        }
    }
    Outcome::new(pass, details.join("; "))
}

fn c10_lagrange() -> Outcome {
    let frame = LagrangeFrame::new(vec![q(1, 2), q(5, 8), q(3, 4)]).unwrap();
    let mut rng = seeded(10);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let n = rng.gen_range(1..=3u32);
        let u = random::n_harmonic(&mut rng, n);
        for _ in 0..20 {
            let r = 0.5 * rng.gen_range(0.0f64..1.0).sqrt() * 0.999;
            let z = Complex::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU));
            let direct = u.eval(z);
            let rec = match lagrange_reconstruct(&u, 3, &frame, z, 64) {
                Ok(v) => v,
                Err(e) => return Outcome::new(false, e.to_string()),
            };
            let err = (rec - direct).norm() / direct.norm().max(1.0);
            worst = worst.max(err);
        }
    }
    Outcome::new(worst <= 1e-8, format!("400 points, worst relative error {worst:.1e}"))
}

fn c11_almansi() -> Outcome {
    reports(&[verify::almansi_round_trips(11, 200)])
}

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Duration, Check); 11] = [
        ("exact operator identities", Duration::from_secs(30), c1_identities),
        ("β(1, p) closed form", Duration::from_secs(5), c2_beta_one),
        ("β(2) and β(3) sawtooth structure", Duration::from_secs(5), c3_sawtooth),
        ("cellular decomposition", Duration::from_secs(60), c4_cellular),
        ("entanglement relation", Duration::from_secs(10), c5_entangled),
        ("kernel polyharmonicity", Duration::from_secs(10), c6_kernels),
        ("I(a, b) series, quadrature and verdicts", Duration::from_secs(120), c7_lemma_int),
        ("kernel norm dichotomy", Duration::from_secs(300), c8_dichotomy),
        ("annulus asymptotics", Duration::from_secs(180), c9_asymptotics),
        ("Lagrange reconstruction", Duration::from_secs(30), c10_lagrange),
        ("Almansi and extension round trips", Duration::from_secs(10), c11_almansi),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let pass = outcome.pass && elapsed <= *limit;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} [{:.2}s / {}s] {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            name,
            elapsed.as_secs_f64(),
            limit.as_secs(),
            outcome.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
