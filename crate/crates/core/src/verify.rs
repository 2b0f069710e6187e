//! Seeded property suites over random instances.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::cellgeom::{a_curve, b_curve, beta_unbounded, classify, CellPoint};
use crate::kernelnum::{i_diverges, kernel_eval, KernelSpec};
use crate::symcalc::random::{self, seeded};
use crate::symcalc::{
    almansi_decompose, apply_l, cellular_decompose, entangled_v1_from_v0, is_n_harmonic, kernel_laurent_at_one,
    laplacian, laplacian_pow, mul_disk_weight, AlmansiForm,
};
use crate::{GaussRational, Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub trials: usize,
    pub passed: usize,
    pub counterexample: Option<String>,
}

impl PropertyReport {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Decomposition,
    Kernels,
    Curves,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Identities, Suite::Decomposition, Suite::Kernels, Suite::Curves];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Identities => "identities",
            Suite::Decomposition => "decomposition",
            Suite::Kernels => "kernels",
            Suite::Curves => "curves",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.to_string() == s)
            .ok_or_else(|| format!("unknown suite {s:?}; expected identities, decomposition, kernels or curves"))
    }
}

/// Runs `check` on `trials` draws; the first failure is kept as the
/// counterexample.
pub fn property<R: Rng>(
    name: impl Into<String>,
    trials: usize,
    rng: &mut R,
    mut check: impl FnMut(&mut R) -> Result<(), String>,
) -> PropertyReport {
    let mut passed = 0;
    let mut counterexample = None;
    for _ in 0..trials {
        match check(rng) {
            Ok(()) => passed += 1,
            Err(msg) => {
                counterexample.get_or_insert(msg);
            }
        }
    }
    PropertyReport { property: name.into(), trials, passed, counterexample }
}

fn g(theta: &Rational) -> GaussRational {
    Complex::new(theta.clone(), Rational::zero())
}

fn gi(n: i64) -> GaussRational {
    Complex::new(Rational::from_integer(n.into()), Rational::zero())
}

fn expect(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn run_suite(suite: Suite, seed: u64, trials: usize) -> Vec<PropertyReport> {
    match suite {
        Suite::Identities => identities(seed, trials),
        Suite::Decomposition => decomposition(seed, trials),
        Suite::Kernels => kernels(seed, trials),
        Suite::Curves => curves(seed, trials),
    }
}

pub fn identities(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let mut rng = seeded(seed);
    let mut out = Vec::new();
    out.push(property("Δ L_θ = L_{θ-1} Δ", trials, &mut rng, |rng| {
        let u = random::laurent(rng);
        let theta = random::small_rational(rng);
        let lhs = laplacian(&apply_l(&u, &g(&theta)));
        let rhs = apply_l(&laplacian(&u), &g(&(theta.clone() - Rational::one())));
        expect(lhs == rhs, || format!("θ = {theta}, u = {u}"))
    }));
    out.push(property("L_θ M = M L_{θ-1} - 8θ", trials, &mut rng, |rng| {
        let u = random::laurent(rng);
        let theta = random::small_rational(rng);
        let lhs = apply_l(&mul_disk_weight(&u, 1), &g(&theta));
        let rhs = &mul_disk_weight(&apply_l(&u, &g(&(theta.clone() - Rational::one()))), 1)
            - &u.scale(&g(&(Rational::from_integer(8.into()) * theta.clone())));
        expect(lhs == rhs, || format!("θ = {theta}, u = {u}"))
    }));
    out.push(property("L_θ M^j = M^j L_{θ-j} + 4j(j-1-2θ) M^{j-1}, j ≤ 6", trials, &mut rng, |rng| {
        let u = random::laurent(rng);
        let theta = random::small_rational(rng);
        let j = rng.gen_range(1..=6u32);
        let jq = Rational::from_integer(j.into());
        let lhs = apply_l(&mul_disk_weight(&u, j), &g(&theta));
        let c = Rational::from_integer(4.into())
            * jq.clone()
            * (jq.clone() - Rational::one() - Rational::from_integer(2.into()) * theta.clone());
        let rhs =
            &mul_disk_weight(&apply_l(&u, &g(&(theta.clone() - jq))), j) + &mul_disk_weight(&u, j - 1).scale(&g(&c));
        expect(lhs == rhs, || format!("θ = {theta}, j = {j}, u = {u}"))
    }));
    out.push(property("L_0 L_1 ⋯ L_{n-1} = M^n Δ^n, n ≤ 4", trials, &mut rng, |rng| {
        let u = random::laurent(rng);
        let n = rng.gen_range(1..=4u32);
        let mut lhs = u.clone();
        for i in (0..n).rev() {
            lhs = apply_l(&lhs, &gi(i as i64));
        }
        let rhs = mul_disk_weight(&laplacian_pow(&u, n), n);
        expect(lhs == rhs, || format!("n = {n}, u = {u}"))
    }));
    out
}

pub fn decomposition(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let mut out = cellular(seed, trials);
    out.push(entangled(seed.wrapping_add(1), trials));
    out.push(almansi_round_trips(seed.wrapping_add(2), trials));
    out
}

/// Recomposition, annihilation, harmonicity and idempotence for `N = 1..=5`.
pub fn cellular(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let mut rng = seeded(seed);
    (1..=5u32)
        .map(|n| {
            property(format!("cellular decomposition, N = {n}"), trials, &mut rng, |rng| {
                let u = random::n_harmonic(rng, n);
                let form = cellular_decompose(&u, n).map_err(|e| format!("{e}: u = {u}"))?;
                expect(form.recompose() == u, || format!("recomposition: u = {u}"))?;
                if let Some(bad) = form.piece_checks().into_iter().find(|c| !c.pass) {
                    return Err(format!("{}: u = {u}", bad.check));
                }
                for j in 0..n as usize {
                    let again = cellular_decompose(&form.term(j), n).map_err(|e| e.to_string())?;
                    for (k, piece) in again.pieces.iter().enumerate() {
                        let want = if k == j { form.pieces[j].clone() } else { Poly::zero() };
                        expect(*piece == want, || format!("idempotence at j = {j}: u = {u}"))?;
                    }
                }
                Ok(())
            })
        })
        .collect()
}

pub fn entangled(seed: u64, trials: usize) -> PropertyReport {
    let mut rng = seeded(seed);
    property("L_1[v0 + M v1] = 0 for the entangled v1", trials, &mut rng, |rng| {
        let v0 = random::harmonic(rng);
        let v1 = entangled_v1_from_v0(&v0).map_err(|e| e.to_string())?;
        let u = &v0 + &mul_disk_weight(&v1, 1);
        expect(apply_l(&u, &gi(1)).is_zero(), || format!("v0 = {v0}"))
    })
}

pub fn almansi_round_trips(seed: u64, trials: usize) -> PropertyReport {
    let mut rng = seeded(seed);
    property("Almansi and extension round trips", trials, &mut rng, |rng| {
        let n = rng.gen_range(1..=5u32);
        let u = random::n_harmonic(rng, n);
        let form = almansi_decompose(&u, n).map_err(|e| e.to_string())?;
        expect(form.recompose() == u, || format!("recompose: u = {u}"))?;
        let alt = form.to_alternative();
        expect(alt.recompose() == u, || format!("alternative form: u = {u}"))?;
        expect(alt.to_almansi() == form, || format!("binomial involution: u = {u}"))?;
        expect(form.extension().restrict() == form.recompose(), || format!("restrict ∘ extension: u = {u}"))?;
        let rebuilt = AlmansiForm::new(n, form.pieces.clone()).map_err(|e| e.to_string())?;
        expect(rebuilt == form, || format!("validated form: u = {u}"))
    })
}

pub fn kernels(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let mut rng = seeded(seed);
    let mut out = Vec::new();
    let mut cases = Vec::new();
    for n in 1..=4u32 {
        for j in 0..=n {
            cases.push((j, n));
        }
    }
    let mut idx = 0;
    out.push(property("Δ^N U_{j,N}(1-ζ) = 0, j ≤ N ≤ 4", cases.len(), &mut rng, |_| {
        let (j, n) = cases[idx];
        idx += 1;
        let u: Poly = kernel_laurent_at_one(j, n).map_err(|e| e.to_string())?;
        expect(laplacian_pow(&u, n).is_zero() && is_n_harmonic(&u, n), || format!("j = {j}, N = {n}"))
    }));
    out.push(property("U_{j,N} = (1-|z|²)^{N-j} U_{j,j}", trials, &mut rng, |rng| {
        let n = rng.gen_range(1..=5u32);
        let j = rng.gen_range(1..=n);
        let z = Complex::from_polar(rng.gen_range(0.0..0.99f64), rng.gen_range(-3.1..3.1f64));
        let lhs = kernel_eval(KernelSpec::new(j, n).expect("valid"), z).map_err(|e| e.to_string())?;
        let rhs = (1.0 - z.norm_sqr()).powi((n - j) as i32)
            * kernel_eval(KernelSpec::new(j, j).expect("valid"), z).map_err(|e| e.to_string())?;
        expect((lhs - rhs).abs() <= 1e-12 * lhs.abs(), || format!("j = {j}, N = {n}, z = {z}"))
    }));
    out.push(property("I(a, b) verdict matches the exact criterion", trials, &mut rng, |rng| {
        // Straddle a = -1 and a = 2(b-1) by small exact offsets.
        let b = Rational::new(rng.gen_range(0..=40i64).into(), 8.into());
        let offset = Rational::new(rng.gen_range(-4..=4i64).into(), 64.into());
        let a = if rng.gen_bool(0.5) {
            -Rational::one() + offset
        } else {
            Rational::from_integer(2.into()) * (b.clone() - Rational::one()) + offset
        };
        let exact = a <= -Rational::one()
            || (b > Rational::zero() && a <= Rational::from_integer(2.into()) * (b.clone() - Rational::one()));
        let (af, bf) = (crate::ExactReal::to_real::<f64>(&a), crate::ExactReal::to_real::<f64>(&b));
        expect(i_diverges(af, bf) == exact, || format!("a = {a}, b = {b}"))
    }));
    out
}

fn random_p<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(1..=400i64).into(), rng.gen_range(1..=120i64).into())
}

pub fn curves(seed: u64, trials: usize) -> Vec<PropertyReport> {
    let mut rng = seeded(seed);
    let mut out = Vec::new();
    out.push(property("β(N,·) = min_j b_{j,N}, attained", trials, &mut rng, |rng| {
        let n = rng.gen_range(1..=5u32);
        let p = random_p(rng);
        let beta = beta_unbounded::<Rational>(n).map_err(|e| e.to_string())?;
        expect(beta.is_continuous(), || format!("β({n}) discontinuous"))?;
        let bv = beta.eval(&p).map_err(|e| e.to_string())?;
        let vals: Vec<Rational> = (0..=n).map(|j| b_curve::<Rational>(j, n).unwrap().eval(&p).unwrap()).collect();
        expect(vals.iter().all(|v| *v >= bv) && vals.contains(&bv), || format!("N = {n}, p = {p}"))
    }));
    out.push(property("b_{j,N+1} + p = b_{j,N} and a_{j,N+1} + p = a_{j,N}", trials, &mut rng, |rng| {
        let n = rng.gen_range(1..=5u32);
        let p = random_p(rng);
        let j = rng.gen_range(0..=n);
        let b0 = b_curve::<Rational>(j, n).unwrap().eval(&p).unwrap();
        let b1 = b_curve::<Rational>(j, n + 1).unwrap().eval(&p).unwrap();
        expect(b1 + p.clone() == b0, || format!("b: j = {j}, N = {n}, p = {p}"))?;
        if j >= 1 {
            let a0 = a_curve::<Rational>(j, n).unwrap().eval(&p).unwrap();
            let a1 = a_curve::<Rational>(j, n + 1).unwrap().eval(&p).unwrap();
            expect(a1 + p.clone() == a0, || format!("a: j = {j}, N = {n}, p = {p}"))?;
        }
        Ok(())
    }));
    out.push(property("J(p, α) nonempty ⇔ admissible", trials, &mut rng, |rng| {
        let n = rng.gen_range(1..=5u32);
        let p = random_p(rng);
        let min_a = (1..=n).map(|j| a_curve::<Rational>(j, n).unwrap().eval(&p).unwrap()).min().unwrap();
        let beta = beta_unbounded::<Rational>(n).unwrap().eval(&p).unwrap();
        expect(min_a == beta, || format!("min a ≠ β at N = {n}, p = {p}"))?;
        let alpha = beta.clone() + Rational::new(rng.gen_range(-40..=40i64).into(), 16.into());
        let d = classify(n, &CellPoint::new(p.clone(), alpha.clone()).unwrap());
        let flags_ok = (!d.entangled || d.admissible) && (!d.principal || (d.admissible && !d.entangled));
        expect(d.j_set.is_empty() != d.admissible && flags_ok, || format!("N = {n}, p = {p}, α = {alpha}"))
    }));
    out
}
