//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};

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
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for the odd Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Maximum bisection depth before giving up.
pub const MAX_DEPTH: u32 = 40;

const MAX_PANELS: usize = 200_000;

fn kronrod<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

struct Panel {
    a: f64,
    b: f64,
    val: f64,
    err: f64,
    depth: u32,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err).is_eq()
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Integrates `f` over `[a, b]` to `max(abs_tol, rel_tol·|I|)`.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<f64> {
    integrate_split(&mut f, &[a, b], abs_tol, rel_tol)
}

/// Like [`integrate`], with forced panel boundaries at `breaks` (sorted, including both ends).
pub fn integrate_split<F: FnMut(f64) -> f64>(f: &mut F, breaks: &[f64], abs_tol: f64, rel_tol: f64) -> Result<f64> {
    let mut panels: BinaryHeap<Panel> = breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| {
            let (val, err) = kronrod(f, w[0], w[1]);
            Panel { a: w[0], b: w[1], val, err, depth: 0 }
        })
        .collect();
    let mut total: f64 = panels.iter().map(|p| p.val).sum();
    let mut err: f64 = panels.iter().map(|p| p.err).sum();
    let mut steps = 0usize;
    loop {
        // running sums drift; refresh them now and then
        if steps % 1024 == 0 {
            total = panels.iter().map(|p| p.val).sum();
            err = panels.iter().map(|p| p.err).sum();
        }
        steps += 1;
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(panels.iter().map(|p| p.val).sum());
        }
        let Some(p) = panels.pop() else { return Ok(0.0) };
        if p.depth >= MAX_DEPTH || panels.len() + 1 >= MAX_PANELS {
            return Err(Error::QuadratureFail { depth: p.depth, error: err });
        }
        total -= p.val;
        err -= p.err;
        let m = 0.5 * (p.a + p.b);
        for (a, b) in [(p.a, m), (m, p.b)] {
            let (val, e) = kronrod(f, a, b);
            total += val;
            err += e;
            panels.push(Panel { a, b, val, err: e, depth: p.depth + 1 });
        }
    }
}

/// Fixed 15-point Kronrod rule on `[a, b]`; used where the integrand is known smooth.
pub fn kronrod15<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64) -> f64 {
    kronrod(&mut f, a, b).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exact() {
        let v = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-14, 1e-14).unwrap();
        assert!((v - 0.0).abs() < 1e-13);
    }

    #[test]
    fn periodic_and_kinked() {
        let v = integrate(|x| x.sin().abs(), 0.0, 2.0 * PI, 1e-12, 1e-12).unwrap();
        assert!((v - 4.0).abs() < 1e-10);
        let mut g = |x: f64| x.sin().abs();
        let v2 = integrate_split(&mut g, &[0.0, PI, 2.0 * PI], 1e-13, 1e-13).unwrap();
        assert!((v2 - 4.0).abs() < 1e-12);
    }

    #[test]
    fn nonintegrable_fails() {
        let r = integrate(|x| 1.0 / x, 0.0, 1.0, 1e-12, 1e-12);
        assert!(matches!(r, Err(Error::QuadratureFail { .. })));
    }
}
