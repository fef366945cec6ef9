//! Truncated trigonometric series in the harmonics `cos(kθ/n)`, `sin(kθ/n)`.
//!
//! Support functions of `n`-rosettes live on `[0, 2nπ)`, so the fundamental
//! frequency is `1/n`. Shifts by multiples of `π` are exact phase rotations
//! on the coefficients.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrigSeries {
    /// Period divisor: harmonic `k` oscillates as `cos(kθ/n)`.
    pub n: u32,
    pub a0: f64,
    /// `cos[k-1]` multiplies `cos(kθ/n)`.
    pub cos: Vec<f64>,
    /// `sin[k-1]` multiplies `sin(kθ/n)`.
    pub sin: Vec<f64>,
}

impl TrigSeries {
    pub fn constant(n: u32, a0: f64) -> Self {
        TrigSeries { n, a0, cos: Vec::new(), sin: Vec::new() }
    }

    /// Builds a series from sparse `(harmonic, coefficient)` lists.
    pub fn from_terms(n: u32, a0: f64, cos: &[(u32, f64)], sin: &[(u32, f64)]) -> Self {
        let h = cos.iter().chain(sin).map(|&(k, _)| k as usize).max().unwrap_or(0);
        let mut s = TrigSeries { n, a0, cos: vec![0.0; h], sin: vec![0.0; h] };
        for &(k, c) in cos {
            if k == 0 {
                s.a0 += c;
            } else {
                s.cos[k as usize - 1] += c;
            }
        }
        for &(k, c) in sin {
            if k > 0 {
                s.sin[k as usize - 1] += c;
            }
        }
        s
    }

    /// Samples `f` on `[0, 2nπ)` and returns its trigonometric interpolant
    /// truncated to `harmonics` terms. Spectrally accurate for smooth periodic `f`.
    pub fn fit(n: u32, harmonics: usize, f: impl Fn(f64) -> f64) -> Self {
        let m = (8 * harmonics).max(64);
        let period = 2.0 * PI * n as f64;
        let vals: Vec<f64> = (0..m).map(|i| f(period * i as f64 / m as f64)).collect();
        let a0 = vals.iter().sum::<f64>() / m as f64;
        let mut cos = vec![0.0; harmonics];
        let mut sin = vec![0.0; harmonics];
        for k in 1..=harmonics {
            let (mut c, mut s) = (0.0, 0.0);
            for (i, v) in vals.iter().enumerate() {
                let x = 2.0 * PI * (k * i) as f64 / m as f64;
                c += v * x.cos();
                s += v * x.sin();
            }
            cos[k - 1] = 2.0 * c / m as f64;
            sin[k - 1] = 2.0 * s / m as f64;
        }
        let mut out = TrigSeries { n, a0, cos, sin };
        let tol = 1e-15 * out.max_abs_coef();
        out.trim(tol);
        out
    }

    pub fn harmonics(&self) -> usize {
        self.cos.len().max(self.sin.len())
    }

    pub fn period(&self) -> f64 {
        2.0 * PI * self.n as f64
    }

    fn coef(&self, k: usize) -> (f64, f64) {
        (
            self.cos.get(k - 1).copied().unwrap_or(0.0),
            self.sin.get(k - 1).copied().unwrap_or(0.0),
        )
    }

    /// Value and first two derivatives at `theta`.
    pub fn eval3(&self, theta: f64) -> (f64, f64, f64) {
        let w = 1.0 / self.n as f64;
        let (mut v, mut d1, mut d2) = (self.a0, 0.0, 0.0);
        for k in 1..=self.harmonics() {
            let (c, s) = self.coef(k);
            if c == 0.0 && s == 0.0 {
                continue;
            }
            let f = w * k as f64;
            let (sn, cs) = (f * theta).sin_cos();
            v += c * cs + s * sn;
            d1 += f * (s * cs - c * sn);
            d2 -= f * f * (c * cs + s * sn);
        }
        (v, d1, d2)
    }

    pub fn eval(&self, theta: f64) -> f64 {
        self.eval3(theta).0
    }

    /// Radius of curvature `p + p″` of the hedgehog with this support function.
    pub fn radius(&self, theta: f64) -> f64 {
        let (p, _, p2) = self.eval3(theta);
        p + p2
    }

    /// The series of `θ ↦ p(θ + jπ)`, computed exactly on the coefficients.
    pub fn shift_pi(&self, j: i64) -> TrigSeries {
        let n = self.n as i64;
        let mut out = self.clone();
        let h = self.harmonics();
        out.cos.resize(h, 0.0);
        out.sin.resize(h, 0.0);
        for k in 1..=h {
            // phase = k·j·π/n
            let num = k as i64 * j;
            let (cp, sp) = if num.rem_euclid(n) == 0 {
                if (num / n).rem_euclid(2) == 0 {
                    (1.0, 0.0)
                } else {
                    (-1.0, 0.0)
                }
            } else {
                let r = num.rem_euclid(2 * n);
                let phase = PI * r as f64 / n as f64;
                (phase.cos(), phase.sin())
            };
            let (c, s) = self.coef(k);
            out.cos[k - 1] = c * cp + s * sp;
            out.sin[k - 1] = s * cp - c * sp;
        }
        out
    }

    pub fn scale(&self, k: f64) -> TrigSeries {
        TrigSeries {
            n: self.n,
            a0: self.a0 * k,
            cos: self.cos.iter().map(|c| c * k).collect(),
            sin: self.sin.iter().map(|c| c * k).collect(),
        }
    }

    /// `self + k·other`.
    pub fn add_scaled(&self, other: &TrigSeries, k: f64) -> TrigSeries {
        assert_eq!(self.n, other.n, "series with different base periods");
        let h = self.harmonics().max(other.harmonics());
        let mut out = TrigSeries { n: self.n, a0: self.a0 + k * other.a0, cos: vec![0.0; h], sin: vec![0.0; h] };
        for i in 1..=h {
            let (c1, s1) = self.coef(i);
            let (c2, s2) = other.coef(i);
            out.cos[i - 1] = c1 + k * c2;
            out.sin[i - 1] = s1 + k * s2;
        }
        out
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coef(&self) -> f64 {
        self.cos
            .iter()
            .chain(&self.sin)
            .fold(self.a0.abs(), |m, c| m.max(c.abs()))
    }

    /// Drops trailing harmonics whose coefficients are at most `tol`.
    pub fn trim(&mut self, tol: f64) {
        let mut h = self.harmonics();
        self.cos.resize(h, 0.0);
        self.sin.resize(h, 0.0);
        while h > 0 && self.cos[h - 1].abs() <= tol && self.sin[h - 1].abs() <= tol {
            h -= 1;
        }
        self.cos.truncate(h);
        self.sin.truncate(h);
    }

    /// Sparse `(harmonic, coefficient)` lists, omitting zeros.
    pub fn terms(&self) -> (Vec<(u32, f64)>, Vec<(u32, f64)>) {
        let c = self
            .cos
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| (i as u32 + 1, *v))
            .collect();
        let s = self
            .sin
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| (i as u32 + 1, *v))
            .collect();
        (c, s)
    }
}
