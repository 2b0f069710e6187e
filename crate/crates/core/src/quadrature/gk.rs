//! 7-point Gauss / 15-point Kronrod pair and a bisecting driver.

#![allow(clippy::excessive_precision)]

use crate::scalar::Real;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Maximum bisection depth below one starting panel.
pub const MAX_DEPTH: u32 = 50;

/// `(Kronrod value, |Kronrod − Gauss|)` on `[a, b]`.
pub fn gk15<F: Real>(f: &mut impl FnMut(F) -> F, a: F, b: F) -> (F, F) {
    let half = (b - a) * F::lit(0.5);
    let mid = a + half;
    let centre = f(mid);
    let mut k = centre * F::lit(WGK[7]);
    let mut g = centre * F::lit(WG[3]);
    for i in 0..7 {
        let dx = half * F::lit(XGK[i]);
        let pair = f(mid - dx) + f(mid + dx);
        k = k + pair * F::lit(WGK[i]);
        if i % 2 == 1 {
            g = g + pair * F::lit(WG[i / 2]);
        }
    }
    (k * half, ((k - g) * half).abs())
}

/// Adaptive integral on `[a, b]`: a panel is accepted once its error is at
/// most `max(rel·|value|, abs)`. Returns `(value, error, all panels accepted)`.
pub fn adaptive<F: Real>(f: &mut impl FnMut(F) -> F, a: F, b: F, rel: F, abs: F) -> (F, F, bool) {
    let (v, e) = gk15(f, a, b);
    refine(f, a, b, v, e, rel, abs, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Real>(f: &mut impl FnMut(F) -> F, a: F, b: F, v: F, e: F, rel: F, abs: F, depth: u32) -> (F, F, bool) {
    if e <= (rel * v.abs()).max(abs) || !e.is_finite() {
        return (v, e, e.is_finite());
    }
    let m = a + (b - a) * F::lit(0.5);
    if depth == 0 || m <= a || m >= b {
        return (v, e, false);
    }
    let (vl, el) = gk15(f, a, m);
    let (vr, er) = gk15(f, m, b);
    let (vl, el, okl) = refine(f, a, m, vl, el, rel, abs, depth - 1);
    let (vr, er, okr) = refine(f, m, b, vr, er, rel, abs, depth - 1);
    (vl + vr, el + er, okl && okr)
}

/// Pairwise summation in index order.
pub fn pairwise_sum<F: Real>(xs: &[F]) -> F {
    match xs.len() {
        0 => F::zero(),
        1 => xs[0],
        n => pairwise_sum(&xs[..n / 2]) + pairwise_sum(&xs[n / 2..]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_on_polynomials() {
        let (v, e) = gk15(&mut |x: f64| x.powi(20), -1.0, 1.0);
        assert!((v - 2.0 / 21.0).abs() < 1e-14);
        assert!(e > 0.0);
        let (v, _) = gk15(&mut |x: f64| x.powi(7) - 3.0 * x * x, 0.0, 2.0);
        assert!((v - (32.0 - 8.0)).abs() < 1e-12);
    }

    #[test]
    fn adaptive_handles_endpoint_power() {
        let (v, _, ok) = adaptive(&mut |x: f64| x.powf(-0.5), 0.0, 1.0, 1e-8, 1e-6);
        assert!(ok);
        assert!((v - 2.0).abs() < 1e-5);
    }

    #[test]
    fn single_precision() {
        let (v, _, ok) = adaptive(&mut |x: f32| x.sin(), 0.0, std::f32::consts::PI, 1e-5, 0.0);
        assert!(ok && (v - 2.0).abs() < 1e-5);
    }
}
