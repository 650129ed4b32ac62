//! Globally adaptive 7/15-point Gauss–Kronrod quadrature on finite
//! intervals, with QUADPACK-style error scaling.

#![allow(clippy::excessive_precision)]

use crate::error::{CasimirError, Result};

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
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

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_subdivisions: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// One 15-point Kronrod panel with its embedded Gauss estimate.
fn kronrod15<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre)?;
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    let mut res_abs = res_k.abs();
    let mut fv = [(0.0, 0.0); 7];
    for (j, slot) in fv.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let (f1, f2) = (f(centre - dx)?, f(centre + dx)?);
        *slot = (f1, f2);
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for (j, (f1, f2)) in fv.iter().enumerate() {
        res_asc += WGK[j] * ((f1 - mean).abs() + (f2 - mean).abs());
    }
    let value = res_k * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    if !(value.is_finite() && error.is_finite()) {
        return Err(CasimirError::Domain(format!(
            "integrand not finite on [{a}, {b}]"
        )));
    }
    Ok(Panel { a, b, value, error })
}

/// Integrate `f` over `[breakpoints[0], breakpoints[last]]`, starting from
/// one panel per breakpoint interval and bisecting the worst panel until
/// the summed error estimate meets `max(abs, rel·|I|)`.
pub fn integrate<F>(mut f: F, breakpoints: &[f64], tol: Tolerance) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    assert!(breakpoints.len() >= 2, "need at least one interval");
    let mut panels = Vec::with_capacity(tol.max_subdivisions + breakpoints.len());
    for w in breakpoints.windows(2) {
        panels.push(kronrod15(&mut f, w[0], w[1])?);
    }
    let mut evaluations = 15 * panels.len();
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let error: f64 = panels.iter().map(|p| p.error).sum();
        if error <= tol.abs.max(tol.rel * value.abs()) {
            return Ok(Integral {
                value,
                error,
                evaluations,
                intervals: panels.len(),
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("non-empty");
        let Panel { a, b, .. } = panels[worst];
        let mid = 0.5 * (a + b);
        let too_narrow = !(mid > a && mid < b);
        if panels.len() >= tol.max_subdivisions || too_narrow {
            return Err(CasimirError::Accuracy {
                estimate: value,
                error,
            });
        }
        panels[worst] = kronrod15(&mut f, a, mid)?;
        panels.push(kronrod15(&mut f, mid, b)?);
        evaluations += 30;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const TIGHT: Tolerance = Tolerance {
        rel: 1e-12,
        abs: 0.0,
        max_subdivisions: 500,
    };

    #[test]
    fn kronrod_exact_for_degree_22() {
        for k in 0..=22 {
            let mut f = |x: f64| Ok(x.powi(k));
            let panel = kronrod15(&mut f, -1.0, 1.0).unwrap();
            let exact = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((panel.value - exact).abs() < 1e-14, "x^{k}");
        }
    }

    #[test]
    fn gauss_weights_sum_to_two() {
        let s: f64 = 2.0 * (WG[0] + WG[1] + WG[2]) + WG[3];
        assert!((s - 2.0).abs() < 1e-15);
        let k: f64 = 2.0 * WGK[..7].iter().sum::<f64>() + WGK[7];
        assert!((k - 2.0).abs() < 1e-15);
    }

    #[test]
    fn bose_integral() {
        // ∫₀^∞ u/(eᵘ − 1) du = π²/6
        let f = |u: f64| Ok(u * (-u).exp() / -(-u).exp_m1());
        let r = integrate(f, &[0.0, 2.0, 8.0, 20.0, 60.0], TIGHT).unwrap();
        let tail = 61.0 * (-60f64).exp();
        assert_relative_eq!(r.value + tail, std::f64::consts::PI.powi(2) / 6.0, max_relative = 1e-13);
        assert!(r.error <= 1e-12 * r.value);
    }

    #[test]
    fn kink_is_resolved() {
        let f = |x: f64| Ok((x - 0.3).abs());
        let r = integrate(f, &[0.0, 1.0], TIGHT).unwrap();
        assert_relative_eq!(r.value, 0.5 * (0.09 + 0.49), max_relative = 1e-11);
    }

    #[test]
    fn reports_non_convergence() {
        let f = |x: f64| Ok((1.0 / x).sin());
        let tol = Tolerance { rel: 1e-14, abs: 0.0, max_subdivisions: 20 };
        assert!(matches!(
            integrate(f, &[1e-6, 1.0], tol),
            Err(CasimirError::Accuracy { .. })
        ));
    }

    #[test]
    fn integrand_errors_propagate() {
        let f = |x: f64| if x > 0.5 { Err(CasimirError::Domain("x".into())) } else { Ok(x) };
        assert!(matches!(integrate(f, &[0.0, 1.0], TIGHT), Err(CasimirError::Domain(_))));
    }
}
