//! Secant caustics of pairs of convex arcs: the two-singular-points theorem
//! and the parallelogram criterion.

use serde::Serialize;

use crate::caustic::SingularPairCertificate;
use crate::error::{Error, Result};
use crate::geom::{line_intersection, Vec2};
use crate::series::TrigSeries;

/// Arc of a hedgehog, parameterized by tangential angle on `[theta0, theta1]`
/// and translated by `offset`.
#[derive(Clone, Debug, Serialize)]
pub struct SupportArc {
    pub support: TrigSeries,
    pub theta0: f64,
    pub theta1: f64,
    pub offset: Vec2,
}

impl SupportArc {
    pub fn new(support: TrigSeries, theta0: f64, theta1: f64) -> Result<Self> {
        if !(theta0.is_finite() && theta1.is_finite() && theta1 > theta0) {
            return Err(Error::InvalidInput(format!("arc range [{theta0}, {theta1}] is empty")));
        }
        Ok(SupportArc { support, theta0, theta1, offset: Vec2::new(0.0, 0.0) })
    }

    pub fn translated(mut self, by: Vec2) -> Self {
        self.offset = self.offset + by;
        self
    }

    pub fn position(&self, theta: f64) -> Vec2 {
        let (p, dp, _) = self.support.eval3(theta);
        let e = Vec2::from_angle(theta);
        self.offset + e * p + e.perp() * dp
    }

    /// Unit tangent `(−sinθ, cosθ)`, the direction of increasing `θ` where `ρ > 0`.
    pub fn tangent(&self, theta: f64) -> Vec2 {
        Vec2::from_angle(theta).perp()
    }

    pub fn radius(&self, theta: f64) -> f64 {
        self.support.radius(theta)
    }

    /// Signed curvature with respect to the tangent `(−sinθ, cosθ)`.
    pub fn curvature(&self, theta: f64) -> f64 {
        1.0 / self.radius(theta)
    }

    pub fn start(&self) -> Vec2 {
        self.position(self.theta0)
    }

    pub fn end(&self) -> Vec2 {
        self.position(self.theta1)
    }
}

/// Two arcs whose tangent directions sweep the same interval, paired by equal
/// tangential angle so that every pair is co-oriented.
#[derive(Clone, Debug, Serialize)]
pub struct ArcPair {
    pub p: SupportArc,
    pub q: SupportArc,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PairAssumptions {
    pub positive_curvature: bool,
    /// Turning of each arc is below a half turn.
    pub small_rotation: bool,
    pub mutual_coverage: bool,
    pub same_side: bool,
}

impl PairAssumptions {
    pub fn all(&self) -> bool {
        self.positive_curvature && self.small_rotation && self.mutual_coverage && self.same_side
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParallelogramCriterion {
    pub rho_min: f64,
    pub rho_max: f64,
    pub fires: bool,
    pub assumptions: PairAssumptions,
}

impl ArcPair {
    pub fn new(p: SupportArc, q: SupportArc) -> Result<Self> {
        if (p.theta0 - q.theta0).abs() > 1e-12 || (p.theta1 - q.theta1).abs() > 1e-12 {
            return Err(Error::InvalidInput("arcs must sweep the same tangent interval".into()));
        }
        Ok(ArcPair { p, q })
    }

    pub fn range(&self) -> (f64, f64) {
        (self.p.theta0, self.p.theta1)
    }

    /// Parameter on `Q` paired with `θ` on `P`.
    pub fn matched(&self, theta: f64) -> f64 {
        theta
    }

    /// `(κ_Q(q0) − κ_P(p0))·(κ_Q(q1) − κ_P(p1))`; negative when the theorem applies.
    pub fn endpoint_condition(&self) -> f64 {
        let (a, b) = self.range();
        (self.q.curvature(a) - self.p.curvature(a)) * (self.q.curvature(b) - self.p.curvature(b))
    }

    pub fn assumptions(&self) -> PairAssumptions {
        let (a, b) = self.range();
        let m = 1024;
        let mut positive = true;
        let mut same = true;
        for i in 0..=m {
            let th = a + (b - a) * i as f64 / m as f64;
            let (rp, rq) = (self.p.radius(th), self.q.radius(th));
            positive &= rp > 0.0 && rq > 0.0;
            same &= (rp > 0.0) == (rq > 0.0);
        }
        PairAssumptions {
            positive_curvature: positive,
            small_rotation: b - a < std::f64::consts::PI,
            mutual_coverage: true,
            same_side: same,
        }
    }

    /// Sample of `p(θ) − q(θ)` across the arc range, both endpoints included.
    pub fn trace(&self, samples: usize) -> Vec<(f64, Vec2)> {
        let (a, b) = self.range();
        let m = samples.max(2);
        (0..=m)
            .map(|i| {
                let th = a + (b - a) * i as f64 / m as f64;
                (th, self.p.position(th) - self.q.position(th))
            })
            .collect()
    }

    fn certificate(&self, theta: f64, swap: bool, position: usize) -> SingularPairCertificate {
        let (ka, kb) = (self.p.curvature(theta), self.q.curvature(theta));
        let d = self.p.position(theta) - self.q.position(theta);
        let scale = ka.abs().max(kb.abs());
        let (ka, kb, point) = if swap { (kb, ka, d * -1.0) } else { (ka, kb, d) };
        SingularPairCertificate {
            s: theta,
            t: self.matched(theta),
            point,
            kappa_a_abs: ka.abs(),
            kappa_b_abs: kb.abs(),
            same_side: (ka > 0.0) == (kb > 0.0),
            residual: if scale > 0.0 { (ka - kb).abs() / scale } else { 0.0 },
            position,
        }
    }

    /// Cusps of the secant caustic of `P ∪ Q`: roots of `|κ_P| − |κ_Q|` on
    /// same-side stretches, reported for both `p − q` and `q − p`.
    pub fn detect_cusps(&self, samples: usize) -> Vec<SingularPairCertificate> {
        let (a, b) = self.range();
        let m = samples.max(8);
        let theta = |i: usize| a + (b - a) * i as f64 / m as f64;
        let g = |th: f64| self.p.curvature(th).abs() - self.q.curvature(th).abs();
        let same = |th: f64| (self.p.radius(th) > 0.0) == (self.q.radius(th) > 0.0);
        let mut roots = Vec::new();
        for i in 0..m {
            let (t0, t1) = (theta(i), theta(i + 1));
            if !(same(t0) && same(t1)) {
                continue;
            }
            let (g0, g1) = (g(t0), g(t1));
            if g0 == 0.0 {
                roots.push((t0, i));
                continue;
            }
            if (g0 > 0.0) == (g1 > 0.0) || g1 == 0.0 {
                continue;
            }
            let (mut lo, mut hi) = (t0, t1);
            while hi - lo > 1e-15 * (1.0 + hi.abs()) {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if (g(mid) > 0.0) == (g0 > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            roots.push((0.5 * (lo + hi), i));
        }
        if same(b) && g(b) == 0.0 {
            roots.push((b, m));
        }
        let mut out: Vec<SingularPairCertificate> = roots.iter().map(|&(th, i)| self.certificate(th, false, i)).collect();
        out.extend(roots.iter().map(|&(th, i)| self.certificate(th, true, i)));
        out
    }

    /// Ratio test on the parallelogram built from the endpoint tangent lines.
    pub fn parallelogram_criterion(&self) -> Result<ParallelogramCriterion> {
        let (a, b) = self.range();
        let (rho_min, rho_max) = parallelogram_ratios(
            self.p.start(),
            self.p.end(),
            self.q.start(),
            self.q.end(),
            self.q.tangent(a),
            self.q.tangent(b),
        )?;
        Ok(ParallelogramCriterion { rho_min, rho_max, fires: rho_max < 1.0 || rho_min > 1.0, assumptions: self.assumptions() })
    }
}

fn collinear_ratio(u: Vec2, v: Vec2) -> f64 {
    u.dot(v) / v.hypot2()
}

/// Ratios `|c b₁|/|q₁ b₁|` and `|c b₀|/|τ(p₁) b₀|`, returned as `(min, max)`.
///
/// `τ` translates `p₀` onto `q₀`; `tq0`, `tq1` are tangent directions of `Q`
/// at its endpoints.
pub fn parallelogram_ratios(p0: Vec2, p1: Vec2, q0: Vec2, q1: Vec2, tq0: Vec2, tq1: Vec2) -> Result<(f64, f64)> {
    let tp1 = p1 + (q0 - p0);
    // l_0 through q0 parallel to T_{q1}; l_p' through τ(p1) parallel to T_{q0}
    let c = line_intersection(tp1, tq0, q1, tq1).ok_or(Error::DegenerateParallelogram("l_p' and T_q1"))?;
    let b0 = line_intersection(q0, tq1, tp1, tq0).ok_or(Error::DegenerateParallelogram("l_0 and l_p'"))?;
    let b1 = line_intersection(q0, tq0, q1, tq1).ok_or(Error::DegenerateParallelogram("T_q0 and T_q1"))?;
    let (d1, d0) = (q1 - b1, tp1 - b0);
    if d1.hypot2() == 0.0 || d0.hypot2() == 0.0 {
        return Err(Error::DegenerateParallelogram("zero-length side"));
    }
    let r1 = collinear_ratio(c - b1, d1);
    let r0 = collinear_ratio(c - b0, d0);
    Ok((r0.min(r1), r0.max(r1)))
}

/// Arcs on `[0, π/2]` with radii `1 ± a·cos2θ`.
pub fn spiral_pair(a: f64) -> ArcPair {
    let half = std::f64::consts::FRAC_PI_2;
    let p = TrigSeries::from_terms(1, 1.0, &[(2, -a / 3.0)], &[]);
    let q = TrigSeries::from_terms(1, 1.0, &[(2, a / 3.0)], &[]);
    ArcPair::new(SupportArc::new(p, 0.0, half).expect("range"), SupportArc::new(q, 0.0, half).expect("range")).expect("same range")
}

/// Pair mirrored about `θ = π/4` with both parallelogram ratios equal to one.
pub fn balanced_pair(b: f64) -> ArcPair {
    let half = std::f64::consts::FRAC_PI_2;
    let a = -0.8 * b;
    // ρ_P = 1 + b·sin4θ + a·cos2θ, ρ_Q(θ) = ρ_P(π/2 − θ)
    let p = TrigSeries::from_terms(1, 1.0, &[(2, -a / 3.0)], &[(4, -b / 15.0)]);
    let q = TrigSeries::from_terms(1, 1.0, &[(2, a / 3.0)], &[(4, b / 15.0)]);
    ArcPair::new(SupportArc::new(p, 0.0, half).expect("range"), SupportArc::new(q, 0.0, half).expect("range")).expect("same range")
}
