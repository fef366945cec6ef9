//! Periodic cubic spline through planar points.

use crate::geom::Vec2;

#[derive(Clone, Debug)]
pub struct PeriodicSpline {
    knots: Vec<f64>,
    period: f64,
    values: Vec<Vec2>,
    second: Vec<Vec2>,
}

/// Solves a cyclic tridiagonal system in place (Sherman–Morrison).
/// Row `i` reads `sub[i]·x[i-1] + diag[i]·x[i] + sup[i]·x[i+1] = rhs[i]`, indices mod n.
fn solve_cyclic(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    if n == 1 {
        return vec![rhs[0] / (diag[0] + sub[0] + sup[0])];
    }
    if n == 2 {
        let (a, b, c, d) = (diag[0], sub[0] + sup[0], sub[1] + sup[1], diag[1]);
        let det = a * d - b * c;
        return vec![(rhs[0] * d - b * rhs[1]) / det, (a * rhs[1] - c * rhs[0]) / det];
    }
    let alpha = sup[n - 1];
    let beta = sub[0];
    let gamma = -diag[0];
    let mut bb = diag.to_vec();
    bb[0] -= gamma;
    bb[n - 1] -= alpha * beta / gamma;

    let thomas = |r: &[f64]| -> Vec<f64> {
        let mut cp = vec![0.0; n];
        let mut dp = vec![0.0; n];
        cp[0] = sup[0] / bb[0];
        dp[0] = r[0] / bb[0];
        for i in 1..n {
            let m = bb[i] - sub[i] * cp[i - 1];
            cp[i] = if i < n - 1 { sup[i] / m } else { 0.0 };
            dp[i] = (r[i] - sub[i] * dp[i - 1]) / m;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = dp[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = dp[i] - cp[i] * x[i + 1];
        }
        x
    };
    let x = thomas(rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = alpha;
    let z = thomas(&u);
    let fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
    x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect()
}

impl PeriodicSpline {
    /// `knots` strictly increasing, `period > knots.last() - knots[0]`.
    pub fn new(knots: Vec<f64>, period: f64, values: Vec<Vec2>) -> Self {
        let n = knots.len();
        assert_eq!(n, values.len());
        assert!(n >= 3, "periodic spline needs at least 3 points");
        let h: Vec<f64> = (0..n)
            .map(|i| if i + 1 < n { knots[i + 1] - knots[i] } else { knots[0] + period - knots[i] })
            .collect();
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rx = vec![0.0; n];
        let mut ry = vec![0.0; n];
        for i in 0..n {
            let hp = h[(i + n - 1) % n];
            let hi = h[i];
            sub[i] = hp;
            diag[i] = 2.0 * (hp + hi);
            sup[i] = hi;
            let dnext = (values[(i + 1) % n] - values[i]) / hi;
            let dprev = (values[i] - values[(i + n - 1) % n]) / hp;
            let r = (dnext - dprev) * 6.0;
            rx[i] = r.x;
            ry[i] = r.y;
        }
        let mx = solve_cyclic(&sub, &diag, &sup, &rx);
        let my = solve_cyclic(&sub, &diag, &sup, &ry);
        let second = mx.into_iter().zip(my).map(|(x, y)| Vec2::new(x, y)).collect();
        PeriodicSpline { knots, period, values, second }
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[Vec2] {
        &self.values
    }

    /// Position, first and second derivative at `u` (any real; reduced mod period).
    pub fn eval(&self, u: f64) -> (Vec2, Vec2, Vec2) {
        let n = self.knots.len();
        let u0 = self.knots[0];
        let mut x = (u - u0).rem_euclid(self.period) + u0;
        if x >= u0 + self.period {
            x = u0;
        }
        let i = match self.knots.partition_point(|k| *k <= x) {
            0 => 0,
            p => p - 1,
        };
        let (ua, ub) = (self.knots[i], if i + 1 < n { self.knots[i + 1] } else { u0 + self.period });
        let h = ub - ua;
        let (ya, yb) = (self.values[i], self.values[(i + 1) % n]);
        let (ma, mb) = (self.second[i], self.second[(i + 1) % n]);
        let a = ub - x;
        let b = x - ua;
        let ca = ya / h - ma * (h / 6.0);
        let cb = yb / h - mb * (h / 6.0);
        let pos = ma * (a * a * a / (6.0 * h)) + mb * (b * b * b / (6.0 * h)) + ca * a + cb * b;
        let d1 = mb * (b * b / (2.0 * h)) - ma * (a * a / (2.0 * h)) + cb - ca;
        let d2 = ma * (a / h) + mb * (b / h);
        (pos, d1, d2)
    }
}
