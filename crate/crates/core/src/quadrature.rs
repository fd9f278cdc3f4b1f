//! Adaptive Gauss–Kronrod (7/15) quadrature for smooth one-dimensional integrands.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 50;

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

fn kronrod_panel(f: &impl Fn(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let centre = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(centre);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Integrates `f` over `[lo, hi]` to absolute tolerance `abs_tol` by recursive
/// bisection of G7/K15 panels.
pub fn integrate(f: impl Fn(f64) -> f64, lo: f64, hi: f64, abs_tol: f64) -> Quadrature {
    let mut evaluations = 0;
    let (value, error_estimate) = recurse(&f, lo, hi, abs_tol, 0, &mut evaluations);
    Quadrature {
        value,
        error_estimate,
        evaluations,
    }
}

fn recurse(
    f: &impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
    depth: u32,
    evaluations: &mut usize,
) -> (f64, f64) {
    let (value, err) = kronrod_panel(f, lo, hi);
    *evaluations += 15;
    if err <= tol || depth >= MAX_DEPTH {
        return (value, err);
    }
    let mid = 0.5 * (lo + hi);
    let (left, el) = recurse(f, lo, mid, 0.5 * tol, depth + 1, evaluations);
    let (right, er) = recurse(f, mid, hi, 0.5 * tol, depth + 1, evaluations);
    (left + right, el + er)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_exact() {
        let q = integrate(|x| x.powi(5) - 3.0 * x * x, 0.0, 2.0, 1e-12);
        assert!((q.value - (64.0 / 6.0 - 8.0)).abs() < 1e-13);
        assert_eq!(q.evaluations, 15);
    }

    #[test]
    fn smooth_transcendental() {
        let q = integrate(|x: f64| (-x).exp() * x.cos(), 0.0, 10.0, 1e-12);
        let exact = 0.5 * (1.0 + (-10.0f64).exp() * (10.0f64.sin() - 10.0f64.cos()));
        assert!((q.value - exact).abs() < 1e-12, "{} vs {exact}", q.value);
    }

    #[test]
    fn reversed_interval_negates() {
        let a = integrate(|x: f64| x.sqrt(), 1.0, 4.0, 1e-12).value;
        let b = integrate(|x: f64| x.sqrt(), 4.0, 1.0, 1e-12).value;
        assert!((a + b).abs() < 1e-14);
        assert!((a - 14.0 / 3.0).abs() < 1e-12);
    }
}
