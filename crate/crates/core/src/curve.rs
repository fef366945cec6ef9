//! Closed regular planar curves: sampled (periodic cubic spline), parametric
//! Fourier, and rosettes given by a generalized support function.
//!
//! Parameter conventions:
//! * support-Fourier curves are parameterized by tangential angle `θ ∈ [0, 2nπ)`;
//! * parametric-Fourier curves by their native `t ∈ [0, 2π)`;
//! * sampled curves by cumulative chord length (arc length after resampling).

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{wrap_angle, Vec2};
use crate::quad;
use crate::series::TrigSeries;
use crate::spline::PeriodicSpline;

/// Regularity threshold relative to the mean speed.
pub const REGULARITY_RATIO: f64 = 1e-8;
/// Grid used to validate regularity and rosette positivity at construction.
pub const VALIDATION_GRID: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveKind {
    Sampled,
    ParametricFourier,
    SupportFourier,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
}

#[derive(Clone, Debug)]
enum Repr {
    Sampled(PeriodicSpline),
    Parametric { x: TrigSeries, y: TrigSeries },
    Support(TrigSeries),
}

/// A closed regular curve. Immutable after construction.
#[derive(Clone, Debug)]
pub struct PlanarCurve {
    repr: Repr,
    period: f64,
    mean_speed: f64,
    eps_reg: f64,
    orientation: Orientation,
}

/// Position, unit tangent and signed curvature at a parameter value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub s: f64,
    pub position: Vec2,
    pub tangent: Vec2,
    pub curvature: f64,
    pub speed: f64,
}

impl CurvePoint {
    /// Unit normal, the tangent rotated counter-clockwise.
    pub fn normal(&self) -> Vec2 {
        self.tangent.perp()
    }
}

/// Sparse trigonometric series as it appears in curve files.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SeriesSpec {
    #[serde(default)]
    pub a0: f64,
    #[serde(default)]
    pub cos: Vec<(u32, f64)>,
    #[serde(default)]
    pub sin: Vec<(u32, f64)>,
}

impl SeriesSpec {
    fn to_series(&self, n: u32) -> TrigSeries {
        TrigSeries::from_terms(n, self.a0, &self.cos, &self.sin)
    }
}

/// On-disk curve description (JSON).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveSpec {
    SupportFourier {
        n: u32,
        #[serde(default)]
        a0: f64,
        #[serde(default)]
        cos: Vec<(u32, f64)>,
        #[serde(default)]
        sin: Vec<(u32, f64)>,
    },
    Samples {
        points: Vec<[f64; 2]>,
    },
    ParametricFourier {
        x: SeriesSpec,
        y: SeriesSpec,
    },
}

impl CurveSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))
    }

    pub fn build(&self) -> Result<PlanarCurve> {
        match self {
            CurveSpec::SupportFourier { n, a0, cos, sin } => {
                if *n == 0 {
                    return Err(Error::InvalidInput("rotation number n must be positive".into()));
                }
                PlanarCurve::from_support_function(TrigSeries::from_terms(*n, *a0, cos, sin))
            }
            CurveSpec::Samples { points } => {
                PlanarCurve::from_samples(points.iter().map(|p| Vec2::from(*p)).collect())
            }
            CurveSpec::ParametricFourier { x, y } => PlanarCurve::from_parametric(x.to_series(1), y.to_series(1)),
        }
    }
}

impl PlanarCurve {
    /// Rosette with generalized support function `p` over `[0, 2nπ)`, `n = p.n`.
    pub fn from_support_function(p: TrigSeries) -> Result<Self> {
        if p.n == 0 {
            return Err(Error::InvalidInput("rotation number n must be positive".into()));
        }
        let period = p.period();
        for i in 0..VALIDATION_GRID {
            let th = period * i as f64 / VALIDATION_GRID as f64;
            let r = p.radius(th);
            if !(r > 0.0) {
                return Err(Error::NotARosette { theta: th, radius: r });
            }
        }
        Self::finish(Repr::Support(p), period)
    }

    /// Curve `t ↦ (x(t), y(t))`, `t ∈ [0, 2π)`; harmonic `k` means `cos(kt)`.
    pub fn from_parametric(x: TrigSeries, y: TrigSeries) -> Result<Self> {
        if x.n != 1 || y.n != 1 {
            return Err(Error::InvalidInput("parametric series must have base period 2π".into()));
        }
        Self::finish(Repr::Parametric { x, y }, TAU)
    }

    /// Interpolates a closed polygon by a periodic cubic spline parameterized by chord length.
    /// A repeated closing point is dropped.
    pub fn from_samples(mut points: Vec<Vec2>) -> Result<Self> {
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidInput("non-finite sample point".into()));
        }
        let scale = points.iter().fold(0.0f64, |m, p| m.max(p.x.abs()).max(p.y.abs()));
        if points.len() >= 2 && points[0].distance(points[points.len() - 1]) <= 1e-9 * scale.max(1e-300) {
            points.pop();
        }
        if points.len() < 4 {
            return Err(Error::InvalidInput(format!("need at least 4 distinct samples, got {}", points.len())));
        }
        let n = points.len();
        let mut knots = Vec::with_capacity(n);
        let mut acc = 0.0;
        for i in 0..n {
            knots.push(acc);
            let d = points[i].distance(points[(i + 1) % n]);
            if !(d > 1e-14 * scale) {
                return Err(Error::NonRegular { s: acc, speed: 0.0, threshold: 1e-14 * scale });
            }
            acc += d;
        }
        Self::from_knots(knots, acc, points)
    }

    /// Spline through `points` at explicit knots over the given period.
    pub fn from_knots(knots: Vec<f64>, period: f64, points: Vec<Vec2>) -> Result<Self> {
        if knots.len() != points.len() || knots.len() < 4 {
            return Err(Error::InvalidInput("knots and points must match and number at least 4".into()));
        }
        if knots.windows(2).any(|w| !(w[1] > w[0])) || !(period > knots[knots.len() - 1] - knots[0]) {
            return Err(Error::InvalidInput("knots must increase strictly within one period".into()));
        }
        Self::finish(Repr::Sampled(PeriodicSpline::new(knots, period, points)), period)
    }

    fn finish(repr: Repr, period: f64) -> Result<Self> {
        let mut curve = PlanarCurve { repr, period, mean_speed: 1.0, eps_reg: 0.0, orientation: Orientation::CounterClockwise };
        let speeds: Vec<f64> = (0..VALIDATION_GRID)
            .map(|i| curve.derivs(period * i as f64 / VALIDATION_GRID as f64).1.hypot())
            .collect();
        if speeds.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("curve evaluates to non-finite values".into()));
        }
        let mean = speeds.iter().sum::<f64>() / speeds.len() as f64;
        if !(mean > 0.0) {
            return Err(Error::InvalidInput("curve has zero length".into()));
        }
        curve.mean_speed = mean;
        curve.eps_reg = REGULARITY_RATIO * mean;
        for (i, v) in speeds.iter().enumerate() {
            if *v < curve.eps_reg {
                return Err(Error::NonRegular {
                    s: period * i as f64 / VALIDATION_GRID as f64,
                    speed: *v,
                    threshold: curve.eps_reg,
                });
            }
        }
        let area = curve.signed_area_grid();
        curve.orientation = if area >= 0.0 { Orientation::CounterClockwise } else { Orientation::Clockwise };
        Ok(curve)
    }

    pub fn kind(&self) -> CurveKind {
        match self.repr {
            Repr::Sampled(_) => CurveKind::Sampled,
            Repr::Parametric { .. } => CurveKind::ParametricFourier,
            Repr::Support(_) => CurveKind::SupportFourier,
        }
    }

    /// Length of the parameter domain.
    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn regularity_threshold(&self) -> f64 {
        self.eps_reg
    }

    /// Support function of a rosette curve.
    pub fn support(&self) -> Option<&TrigSeries> {
        match &self.repr {
            Repr::Support(p) => Some(p),
            _ => None,
        }
    }

    /// Rotation number `n` for rosettes.
    pub fn rosette_n(&self) -> Option<u32> {
        self.support().map(|p| p.n)
    }

    /// Raw position, first and second derivative with respect to the native parameter.
    pub fn derivs(&self, s: f64) -> (Vec2, Vec2, Vec2) {
        match &self.repr {
            Repr::Sampled(sp) => sp.eval(s),
            Repr::Parametric { x, y } => {
                let (x0, x1, x2) = x.eval3(s);
                let (y0, y1, y2) = y.eval3(s);
                (Vec2::new(x0, y0), Vec2::new(x1, y1), Vec2::new(x2, y2))
            }
            Repr::Support(p) => {
                let (v, d1, d2) = p.eval3(s);
                let e = Vec2::from_angle(s);
                let ep = e.perp();
                let rho = v + d2;
                // γ'' = ρ' e⊥ − ρ e; ρ' needs p''', obtained by a central difference.
                let h = 1e-5 * p.n as f64;
                let drho = (p.radius(s + h) - p.radius(s - h)) / (2.0 * h);
                (e * v + ep * d1, ep * rho, ep * drho - e * rho)
            }
        }
    }

    pub fn position(&self, s: f64) -> Vec2 {
        match &self.repr {
            Repr::Support(p) => {
                let (v, d1, _) = p.eval3(s);
                let e = Vec2::from_angle(s);
                e * v + e.perp() * d1
            }
            _ => self.derivs(s).0,
        }
    }

    /// Unchecked evaluation; degenerate points yield non-finite curvature.
    pub fn point(&self, s: f64) -> CurvePoint {
        match &self.repr {
            Repr::Support(p) => {
                let (v, d1, d2) = p.eval3(s);
                let e = Vec2::from_angle(s);
                let rho = v + d2;
                CurvePoint { s, position: e * v + e.perp() * d1, tangent: e.perp(), curvature: 1.0 / rho, speed: rho }
            }
            _ => {
                let (pos, d1, d2) = self.derivs(s);
                let speed = d1.hypot();
                CurvePoint { s, position: pos, tangent: d1 / speed, curvature: d1.cross(d2) / (speed * speed * speed), speed }
            }
        }
    }

    /// Position, unit tangent and signed curvature at `s`.
    pub fn evaluate(&self, s: f64) -> Result<CurvePoint> {
        if !s.is_finite() {
            return Err(Error::InvalidInput(format!("parameter {s} is not finite")));
        }
        let pt = self.point(s);
        if let Repr::Support(_) = self.repr {
            if !(pt.speed > 0.0) {
                return Err(Error::NotARosette { theta: s, radius: pt.speed });
            }
        }
        if !(pt.speed >= self.eps_reg) {
            return Err(Error::NonRegular { s, speed: pt.speed, threshold: self.eps_reg });
        }
        Ok(pt)
    }

    /// Derivative of the tangent angle with respect to the parameter, `κ·speed`.
    pub fn turning_rate(&self, s: f64) -> f64 {
        match &self.repr {
            Repr::Support(_) => 1.0,
            _ => {
                let (_, d1, d2) = self.derivs(s);
                d1.cross(d2) / d1.hypot2()
            }
        }
    }

    fn panel_breaks(&self, per_unit: usize) -> Vec<f64> {
        match &self.repr {
            Repr::Sampled(sp) => {
                let mut b: Vec<f64> = sp.knots().iter().map(|k| k - sp.knots()[0]).collect();
                b.push(self.period);
                b
            }
            _ => {
                let m = per_unit.max(16);
                (0..=m).map(|i| self.period * i as f64 / m as f64).collect()
            }
        }
    }

    /// Spline knots strictly inside `(a, b)`, in any period; empty for smooth curves.
    pub fn knots_between(&self, a: f64, b: f64) -> Vec<f64> {
        let Repr::Sampled(sp) = &self.repr else {
            return Vec::new();
        };
        let k0 = sp.knots()[0];
        let (lo, hi) = (a.min(b), a.max(b));
        let mut out = Vec::new();
        let first = ((lo - self.period) / self.period).floor() as i64;
        let last = (hi / self.period).ceil() as i64;
        for j in first..=last {
            for k in sp.knots() {
                let x = k - k0 + j as f64 * self.period;
                if x > lo && x < hi {
                    out.push(x);
                }
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }

    /// Arc length along the parameter interval `[s0, s1]` (`s1 ≥ s0`, may wrap).
    pub fn arc_length_between(&self, s0: f64, s1: f64) -> Result<f64> {
        quad::integrate(|s| self.derivs(s).1.hypot(), s0, s1, 1e-14 * self.mean_speed, 1e-13)
    }

    /// Total length by adaptive quadrature of the speed.
    pub fn length(&self) -> Result<f64> {
        let mut f = |s: f64| self.derivs(s).1.hypot();
        quad::integrate_split(&mut f, &self.panel_breaks(64), 1e-15 * self.mean_speed, 1e-14)
    }

    /// Signed area `½∮ x dy − y dx`.
    pub fn signed_area(&self) -> Result<f64> {
        let mut f = |s: f64| {
            let (p, d1, _) = self.derivs(s);
            0.5 * p.cross(d1)
        };
        let scale = self.mean_speed * self.mean_speed * self.period;
        quad::integrate_split(&mut f, &self.panel_breaks(64), 1e-15 * scale, 1e-14)
    }

    fn signed_area_grid(&self) -> f64 {
        let pts: Vec<Vec2> = (0..VALIDATION_GRID)
            .map(|i| self.position(self.period * i as f64 / VALIDATION_GRID as f64))
            .collect();
        crate::geom::shoelace_area(&pts)
    }

    /// Uniform samples of the native parameter.
    pub fn sample(&self, n: usize) -> Vec<CurvePoint> {
        (0..n).map(|i| self.point(self.period * i as f64 / n as f64)).collect()
    }

    /// Largest distance between two points of the curve (sampled estimate).
    pub fn diameter(&self) -> f64 {
        let pts: Vec<Vec2> = (0..1024).map(|i| self.position(self.period * i as f64 / 1024.0)).collect();
        let mut d: f64 = 0.0;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                d = d.max(pts[i].distance(pts[j]));
            }
        }
        d
    }

    /// Total turning of the unit tangent divided by 2π.
    pub fn rotation_index(&self) -> f64 {
        let m = VALIDATION_GRID;
        let mut acc = 0.0;
        let mut prev = self.point(0.0).tangent.atan2();
        for i in 1..=m {
            let a = self.point(self.period * i as f64 / m as f64).tangent.atan2();
            acc += wrap_angle(a - prev);
            prev = a;
        }
        acc / TAU
    }

    /// Resamples at `n` points equally spaced in arc length; the result is a
    /// sampled curve parameterized by arc length.
    pub fn resample_arclength(&self, n: usize) -> Result<PlanarCurve> {
        self.resample_arclength_with_params(n).map(|(c, _)| c)
    }

    /// As [`resample_arclength`](Self::resample_arclength), also returning the
    /// source parameters of the new sample points.
    pub fn resample_arclength_with_params(&self, n: usize) -> Result<(PlanarCurve, Vec<f64>)> {
        if n < 64 {
            return Err(Error::InvalidInput(format!("resampling needs N >= 64, got {n}")));
        }
        let breaks = {
            let base = self.panel_breaks(4 * n);
            // refine coarse spline panels so every panel is short in arc length
            let per = (4 * n).div_ceil(base.len().max(1)).max(1);
            let mut out = Vec::with_capacity(base.len() * per);
            for w in base.windows(2) {
                for j in 0..per {
                    out.push(w[0] + (w[1] - w[0]) * j as f64 / per as f64);
                }
            }
            out.push(self.period);
            out
        };
        let speed = |s: f64| self.derivs(s).1.hypot();
        let mut cum = Vec::with_capacity(breaks.len());
        cum.push(0.0);
        for w in breaks.windows(2) {
            let v = quad::integrate(speed, w[0], w[1], 1e-16 * self.mean_speed, 1e-15)?;
            cum.push(cum[cum.len() - 1] + v);
        }
        let total = cum[cum.len() - 1];
        let mut params = Vec::with_capacity(n);
        let mut points = Vec::with_capacity(n);
        for k in 0..n {
            let target = total * k as f64 / n as f64;
            let j = cum.partition_point(|c| *c <= target).clamp(1, cum.len() - 1) - 1;
            let (a, b) = (breaks[j], breaks[j + 1]);
            let rem = target - cum[j];
            let mut s = a + (b - a) * (rem / (cum[j + 1] - cum[j])).clamp(0.0, 1.0);
            for _ in 0..30 {
                let g = quad::kronrod15(speed, a, s) - rem;
                let v = speed(s);
                if v <= 0.0 {
                    break;
                }
                let step = g / v;
                s = (s - step).clamp(a, b);
                if step.abs() <= 1e-15 * self.period {
                    break;
                }
            }
            params.push(s);
            points.push(self.position(s));
        }
        let knots: Vec<f64> = (0..n).map(|k| total * k as f64 / n as f64).collect();
        Ok((PlanarCurve::from_knots(knots, total, points)?, params))
    }

    /// The same curve traversed in the opposite direction.
    pub fn reversed(&self) -> Result<PlanarCurve> {
        match &self.repr {
            Repr::Sampled(sp) => {
                let mut pts = sp.values().to_vec();
                pts.reverse();
                PlanarCurve::from_samples(pts)
            }
            Repr::Parametric { x, y } => {
                let flip = |s: &TrigSeries| TrigSeries { sin: s.sin.iter().map(|c| -c).collect(), ..s.clone() };
                PlanarCurve::from_parametric(flip(x), flip(y))
            }
            Repr::Support(_) => Err(Error::InvalidInput("rosettes are parameterized by tangential angle and cannot be reversed".into())),
        }
    }

    /// Generalized support function reproduced from the parameterization:
    /// `⟨γ(θ), (cos θ, sin θ)⟩`.
    pub fn support_value(&self, theta: f64) -> f64 {
        self.position(theta).dot(Vec2::from_angle(theta))
    }

    /// Convenience constructors for fixtures.
    pub fn circle(radius: f64) -> PlanarCurve {
        PlanarCurve::from_support_function(TrigSeries::constant(1, radius)).expect("positive radius")
    }

    pub fn ellipse(a: f64, b: f64) -> Result<PlanarCurve> {
        PlanarCurve::from_parametric(TrigSeries::from_terms(1, 0.0, &[(1, a)], &[]), TrigSeries::from_terms(1, 0.0, &[], &[(1, b)]))
    }
}

/// Support function `√(a²cos²θ + b²sin²θ)` of an axis-aligned ellipse, as a
/// truncated series accurate to machine precision.
pub fn ellipse_support(a: f64, b: f64) -> TrigSeries {
    TrigSeries::fit(1, 96, |t| (a * a * t.cos().powi(2) + b * b * t.sin().powi(2)).sqrt())
}

#[allow(dead_code)]
fn _assert_send_sync() {
    fn f<T: Send + Sync>() {}
    f::<PlanarCurve>();
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn circle_polygon(n: usize) -> PlanarCurve {
        let pts = (0..n).map(|i| Vec2::from_angle(TAU * i as f64 / n as f64)).collect();
        PlanarCurve::from_samples(pts).unwrap()
    }

    #[test]
    fn unit_circle_support() {
        let c = PlanarCurve::circle(1.0);
        let p = c.evaluate(0.0).unwrap();
        assert!((p.position - Vec2::new(1.0, 0.0)).hypot() < 1e-15);
        assert!((p.tangent - Vec2::new(0.0, 1.0)).hypot() < 1e-15);
        assert_eq!(p.curvature, 1.0);
    }

    #[test]
    fn two_rosette_curvature_at_zero() {
        let p = TrigSeries::from_terms(2, 2.0, &[(1, 1.0)], &[]);
        let c = PlanarCurve::from_support_function(p).unwrap();
        let pt = c.evaluate(0.0).unwrap();
        assert!((pt.curvature - 4.0 / 11.0).abs() < 1e-15);
    }

    #[test]
    fn sampled_circle_curvature() {
        let c = circle_polygon(512);
        for i in 0..512 {
            let s = c.period() * i as f64 / 512.0;
            let k = c.evaluate(s).unwrap().curvature;
            assert!((k - 1.0).abs() < 1e-3, "vertex {i}: κ = {k}");
        }
    }

    #[test]
    fn three_rosette_is_accepted() {
        let p = TrigSeries::from_terms(3, 2.0, &[(1, 1.0)], &[]);
        let c = PlanarCurve::from_support_function(p.clone()).unwrap();
        assert_eq!(c.rosette_n(), Some(3));
        // ρ(θ) = 2 + (8/9) cos(θ/3)
        for i in 0..100 {
            let th = 0.19 * i as f64;
            assert!((p.radius(th) - (2.0 + 8.0 / 9.0 * (th / 3.0).cos())).abs() < 1e-14);
        }
    }

    #[test]
    fn non_rosette_rejected() {
        let p = TrigSeries::from_terms(1, 1.0, &[(1, -1.0)], &[]);
        // cos θ lies in the kernel of p + p″, so ρ ≡ 1; use cos 2θ to break positivity
        assert!(PlanarCurve::from_support_function(p).is_ok());
        let q = TrigSeries::from_terms(1, 1.0, &[(2, -1.0)], &[]);
        match PlanarCurve::from_support_function(q) {
            Err(Error::NotARosette { radius, .. }) => assert!(radius <= 0.0),
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_samples_rejected() {
        let pts = vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)];
        assert!(matches!(PlanarCurve::from_samples(pts), Err(Error::NonRegular { .. })));
        assert!(PlanarCurve::from_samples(vec![Vec2::ZERO, Vec2::new(1.0, 0.0)]).is_err());
    }

    #[test]
    fn non_regular_parametric_rejected() {
        // x = cos t + cos 2t/4·…: use a curve with a stationary point, (cos t − ½cos 2t, sin t − ½ sin 2t) at t=0
        let x = TrigSeries::from_terms(1, 0.0, &[(1, 1.0), (2, -0.5)], &[]);
        let y = TrigSeries::from_terms(1, 0.0, &[], &[(1, 1.0), (2, -0.5)]);
        assert!(matches!(PlanarCurve::from_parametric(x, y), Err(Error::NonRegular { .. })));
    }

    #[test]
    fn resample_circle_gaps() {
        let c = PlanarCurve::circle(1.0);
        let (r, params) = c.resample_arclength_with_params(100).unwrap();
        for k in 0..100 {
            let a = params[k];
            let b = if k + 1 < 100 { params[k + 1] } else { params[0] + c.period() };
            let gap = c.arc_length_between(a, b).unwrap();
            assert!((gap - TAU / 100.0).abs() < 1e-8, "gap {k}: {gap}");
        }
        assert!((r.period() - TAU).abs() < 1e-12);
    }

    #[test]
    fn resample_rejects_small_n() {
        assert!(matches!(PlanarCurve::circle(1.0).resample_arclength(10), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"kind": "support_fourier", "n": 2, "a0": 2.0, "cos": [[1, 1.0]], "sin": []}"#;
        let spec = CurveSpec::from_json(text).unwrap();
        let c = spec.build().unwrap();
        assert_eq!(c.kind(), CurveKind::SupportFourier);
        assert_eq!(c.rosette_n(), Some(2));
        let back: CurveSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
        assert!(CurveSpec::from_json(r#"{"kind":"mystery"}"#).is_err());
        let s = CurveSpec::from_json(r#"{"kind":"samples","points":[[1,0],[0,1],[-1,0],[0,-1]]}"#).unwrap();
        assert_eq!(s.build().unwrap().kind(), CurveKind::Sampled);
        let p = CurveSpec::from_json(r#"{"kind":"parametric_fourier","x":{"cos":[[1,2.0]]},"y":{"sin":[[1,1.0]]}}"#).unwrap();
        assert_eq!(p.build().unwrap().kind(), CurveKind::ParametricFourier);
    }

    #[test]
    fn ellipse_support_series() {
        let p = ellipse_support(2.0, 1.0);
        for i in 0..50 {
            let t = 0.13 * i as f64;
            let exact = (4.0 * t.cos().powi(2) + t.sin().powi(2)).sqrt();
            assert!((p.eval(t) - exact).abs() < 1e-13, "{t}: {}", p.eval(t) - exact);
        }
        let e = PlanarCurve::from_support_function(p).unwrap();
        // semi-axes 2 and 1
        assert!((e.position(0.0) - Vec2::new(2.0, 0.0)).hypot() < 1e-12);
        let q = e.position(PI / 2.0);
        assert!((q - Vec2::new(0.0, 1.0)).hypot() < 1e-10, "{q:?}");
    }
}
