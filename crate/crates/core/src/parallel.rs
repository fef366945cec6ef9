//! Angle function, inflexions, the sequence of parallel points and the sets
//! of parallel arcs of a closed curve.
//!
//! All angle work happens on the lifted tangent angle `ψ`; the angle function
//! is `φ = ψ mod π`, so its extrema are the inflexions of the curve.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::curve::PlanarCurve;
use crate::error::{Error, Result};
use crate::geom::wrap_angle;

/// Matching tolerance on angles after refinement.
pub const TOL_ANGLE: f64 = 1e-9;
/// Nondegeneracy threshold for `|φ″|` at an extremum.
pub const TOL_DEG: f64 = 1e-5;
/// Default size of the dense `ψ` table.
pub const DEFAULT_GRID: usize = 8192;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Extremum {
    pub s: f64,
    /// Value of the angle function, in `[0, π)`.
    pub phi: f64,
    pub lifted: f64,
    pub kind: ExtremumKind,
    /// `φ″` at the extremum.
    pub second: f64,
}

/// One element of the sequence of parallel points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParallelPoint {
    pub s: f64,
    pub lifted: f64,
    pub inflexion: bool,
}

#[derive(Clone, Debug)]
pub struct AngleProfile {
    curve: PlanarCurve,
    origin: f64,
    period: f64,
    turn: f64,
    table: Vec<f64>,
    extrema: Vec<Extremum>,
    points: Vec<ParallelPoint>,
    levels: Vec<f64>,
}

/// Arc of the curve between two consecutive parallel points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParallelArc {
    pub index: usize,
    pub start: f64,
    pub end: f64,
    pub psi_start: f64,
    pub psi_end: f64,
    pub increasing: bool,
    pub set: usize,
    pub start_inflexion: bool,
    pub end_inflexion: bool,
}

impl ParallelArc {
    pub fn low(&self) -> f64 {
        self.psi_start.min(self.psi_end)
    }

    pub fn high(&self) -> f64 {
        self.psi_start.max(self.psi_end)
    }

    pub fn width(&self) -> f64 {
        (self.psi_end - self.psi_start).abs()
    }

    /// Parameter of the endpoint where the angle coordinate is zero.
    pub fn low_param(&self) -> f64 {
        if self.increasing {
            self.start
        } else {
            self.end
        }
    }

    pub fn high_param(&self) -> f64 {
        if self.increasing {
            self.end
        } else {
            self.start
        }
    }

    pub fn contains(&self, s: f64) -> bool {
        let slack = 1e-12 * (self.end - self.start).abs().max(1.0);
        s >= self.start - slack && s <= self.end + slack
    }
}

/// One set `Φ_i`: arcs sweeping the same angle interval.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParallelArcSet {
    pub index: usize,
    /// Lower end of the swept interval, modulo π.
    pub lower: f64,
    pub width: f64,
    pub arcs: Vec<usize>,
    /// Tangent co-orientation of each arc relative to the first one.
    pub co_oriented: Vec<bool>,
}

/// Arcs between consecutive parallel points together with their sets.
#[derive(Clone, Debug)]
pub struct ParallelArcs {
    pub profile: AngleProfile,
    pub arcs: Vec<ParallelArc>,
    pub sets: Vec<ParallelArcSet>,
}

/// Solves `g(x) = 0` on `[a, b]` for `g` monotone with `g(a)`, `g(b)` of
/// opposite signs, using Newton steps kept inside the bracket.
pub(crate) fn solve_monotone(
    mut g: impl FnMut(f64) -> (f64, f64),
    mut a: f64,
    mut b: f64,
    ga: f64,
    gb: f64,
    ftol: f64,
) -> f64 {
    if ga == 0.0 {
        return a;
    }
    if gb == 0.0 {
        return b;
    }
    let rising = gb > ga;
    let mut x = a - ga * (b - a) / (gb - ga);
    if !(x > a && x < b) {
        x = 0.5 * (a + b);
    }
    for _ in 0..200 {
        let (v, d) = g(x);
        if v.abs() <= ftol {
            return x;
        }
        if (v > 0.0) == rising {
            b = x;
        } else {
            a = x;
        }
        let width = b - a;
        if width <= 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1e-300) {
            return 0.5 * (a + b);
        }
        let newton = x - v / d;
        x = if d != 0.0 && newton > a && newton < b && (newton - x).abs() < 0.5 * width {
            newton
        } else {
            0.5 * (a + b)
        };
    }
    x
}

fn bisect_sign(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, fa: f64) -> f64 {
    let pos = fa > 0.0;
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if (f(m) > 0.0) == pos {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

impl AngleProfile {
    pub fn new(curve: &PlanarCurve) -> Result<Self> {
        Self::with_grid(curve, DEFAULT_GRID)
    }

    /// Builds the profile from a dense table of `grid` samples.
    pub fn with_grid(curve: &PlanarCurve, grid: usize) -> Result<Self> {
        let grid = grid.max(256);
        let period = curve.period();
        let h = period / grid as f64;

        let rates: Vec<f64> = (0..grid).map(|i| curve.turning_rate(h * i as f64)).collect();
        let scale = rates.iter().map(|r| r.abs()).sum::<f64>() / grid as f64;
        let mut raw = Vec::new();
        for i in 0..grid {
            let j = (i + 1) % grid;
            let (r0, r1) = (rates[i], rates[j]);
            if r0 == 0.0 || (r0 > 0.0) != (r1 > 0.0) && r1 != 0.0 {
                let a = h * i as f64;
                let s = if r0 == 0.0 { a } else { bisect_sign(|s| curve.turning_rate(s), a, a + h, r0) };
                raw.push((s.rem_euclid(period), if r0 > 0.0 { ExtremumKind::Max } else { ExtremumKind::Min }));
            } else {
                // a touching zero without sign change is non-generic
                let k = (i + grid - 1) % grid;
                if r0.abs() < rates[k].abs() && r0.abs() < r1.abs() && r0.abs() < 1e-9 * scale {
                    return Err(Error::DegenerateExtremum { s: h * i as f64, second: 0.0 });
                }
            }
        }
        raw.sort_by(|x, y| x.0.total_cmp(&y.0));
        if raw.len() % 2 == 1 {
            return Err(Error::Inconsistent(format!("odd number ({}) of inflexions", raw.len())));
        }
        for w in 0..raw.len() {
            if raw.len() > 1 && raw[w].1 == raw[(w + 1) % raw.len()].1 {
                return Err(Error::Inconsistent("extrema of the angle function do not alternate".into()));
            }
        }

        // keep the parameter origin away from inflexions
        let near = |o: f64, s: f64| {
            let d = (s - o).rem_euclid(period);
            d.min(period - d) < 1e-7 * period
        };
        let mut origin = 0.0;
        if raw.iter().any(|(s, _)| near(0.0, *s)) {
            let mut best = (0.0, -1.0);
            for i in 0..raw.len() {
                let a = raw[i].0;
                let b = if i + 1 < raw.len() { raw[i + 1].0 } else { raw[0].0 + period };
                if b - a > best.1 {
                    best = (0.5 * (a + b), b - a);
                }
            }
            origin = best.0;
            if raw.iter().any(|(s, _)| near(origin, *s)) {
                return Err(Error::BasePointInflexion);
            }
        }

        let table_h = period / grid as f64;
        let mut table = Vec::with_capacity(grid + 1);
        let mut prev_raw = curve.point(origin).tangent.atan2();
        table.push(prev_raw);
        for i in 1..=grid {
            let r = curve.point(origin + table_h * i as f64).tangent.atan2();
            let last = table[i - 1];
            table.push(last + wrap_angle(r - prev_raw));
            prev_raw = r;
        }
        let turn = TAU * ((table[grid] - table[0]) / TAU).round();
        table[grid] = table[0] + turn;

        let mut profile = AngleProfile {
            curve: curve.clone(),
            origin,
            period,
            turn,
            table,
            extrema: Vec::new(),
            points: Vec::new(),
            levels: Vec::new(),
        };

        let dh = 1e-5 * period / TAU;
        let mut extrema: Vec<Extremum> = raw
            .iter()
            .map(|&(s, kind)| {
                let s = if s < origin { s + period } else { s };
                let lifted = profile.psi(s);
                let second = (curve.turning_rate(s + dh) - curve.turning_rate(s - dh)) / (2.0 * dh);
                Extremum { s, phi: lifted.rem_euclid(PI), lifted, kind, second }
            })
            .collect();
        extrema.sort_by(|a, b| a.s.total_cmp(&b.s));
        for e in &extrema {
            if !(e.second.abs() > TOL_DEG) {
                return Err(Error::DegenerateExtremum { s: e.s, second: e.second.abs() });
            }
        }
        profile.extrema = extrema;
        profile.build_points()?;
        Ok(profile)
    }

    fn build_points(&mut self) -> Result<()> {
        let mut levels: Vec<f64> = if self.extrema.is_empty() {
            vec![self.table[0].rem_euclid(PI)]
        } else {
            self.extrema.iter().map(|e| e.phi).collect()
        };
        levels.sort_by(f64::total_cmp);
        levels.dedup_by(|a, b| (*a - *b).abs() < TOL_ANGLE);
        if levels.len() > 1 && (levels[0] + PI - levels[levels.len() - 1]) < TOL_ANGLE {
            levels.pop();
        }
        self.levels = levels;

        // monotone pieces of ψ, delimited by inflexions
        let mut pieces: Vec<(f64, f64, f64, f64, bool)> = Vec::new();
        if self.extrema.is_empty() {
            pieces.push((self.origin, self.origin + self.period, self.table[0], self.table[0] + self.turn, false));
        } else {
            let m = self.extrema.len();
            for i in 0..m {
                let e0 = self.extrema[i];
                let (s1, v1) = if i + 1 < m {
                    (self.extrema[i + 1].s, self.extrema[i + 1].lifted)
                } else {
                    (self.extrema[0].s + self.period, self.extrema[0].lifted + self.turn)
                };
                pieces.push((e0.s, s1, e0.lifted, v1, true));
            }
        }

        let mut points = Vec::new();
        for &(s0, s1, v0, v1, inflexion) in &pieces {
            points.push(ParallelPoint { s: s0, lifted: v0, inflexion });
            let (lo, hi) = (v0.min(v1), v0.max(v1));
            let mut interior = Vec::new();
            for &u in &self.levels {
                let mut k = ((lo - u) / PI).floor() as i64;
                loop {
                    let lv = u + k as f64 * PI;
                    if lv >= hi - TOL_ANGLE {
                        break;
                    }
                    if lv > lo + TOL_ANGLE {
                        interior.push(lv);
                    }
                    k += 1;
                }
            }
            if v1 < v0 {
                interior.sort_by(|a, b| b.total_cmp(a));
            } else {
                interior.sort_by(f64::total_cmp);
            }
            for lv in interior {
                let s = solve_monotone(
                    |s| (self.psi(s) - lv, self.curve.turning_rate(s)),
                    s0,
                    s1,
                    v0 - lv,
                    v1 - lv,
                    1e-15 * lv.abs().max(1.0),
                );
                points.push(ParallelPoint { s, lifted: lv, inflexion: false });
            }
        }
        // the convex piece starts at the origin; nonconvex pieces may start past it
        for p in &mut points {
            if p.s >= self.origin + self.period {
                p.s -= self.period;
                p.lifted -= self.turn;
            }
        }
        points.sort_by(|a, b| a.s.total_cmp(&b.s));
        if points.len() % 2 == 1 {
            return Err(Error::Inconsistent(format!("odd number ({}) of parallel points", points.len())));
        }
        self.points = points;
        Ok(())
    }

    pub fn curve(&self) -> &PlanarCurve {
        &self.curve
    }

    pub fn origin(&self) -> f64 {
        self.origin
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    /// Total turning of the tangent over one period, a multiple of 2π.
    pub fn turn(&self) -> f64 {
        self.turn
    }

    pub fn extrema(&self) -> &[Extremum] {
        &self.extrema
    }

    /// Parameters of the inflexion points of the curve.
    pub fn inflexions(&self) -> Vec<f64> {
        self.extrema.iter().map(|e| e.s).collect()
    }

    pub fn is_convex(&self) -> bool {
        self.extrema.is_empty()
    }

    /// The sequence of parallel points `S_M`, ordered by parameter.
    pub fn parallel_points(&self) -> &[ParallelPoint] {
        &self.points
    }

    /// `m` with `#S_M = 2m`.
    pub fn m(&self) -> usize {
        self.points.len() / 2
    }

    /// Distinct extremal values of the angle function (or `φ(0)`), in `[0, π)`.
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Lifted tangent angle at any real parameter.
    pub fn psi(&self, s: f64) -> f64 {
        let u = s - self.origin;
        let k = (u / self.period).floor();
        let r = u - k * self.period;
        let g = self.table.len() - 1;
        let x = r / self.period * g as f64;
        let i = (x.floor() as usize).min(g - 1);
        let f = x - i as f64;
        let lin = self.table[i] + (self.table[i + 1] - self.table[i]) * f;
        let raw = self.curve.point(s).tangent.atan2();
        raw + TAU * ((lin - raw) / TAU).round() + k * self.turn
    }

    /// The angle function `φ(s) ∈ [0, π)` measured from the base tangent.
    pub fn phi(&self, s: f64) -> f64 {
        (self.psi(s) - self.table[0]).rem_euclid(PI)
    }

    /// Splits the curve into arcs between consecutive parallel points and
    /// groups them into sets of parallel arcs.
    pub fn arc_sets(&self) -> Result<ParallelArcs> {
        let n = self.points.len();
        let mut arcs = Vec::with_capacity(n);
        for i in 0..n {
            let p = self.points[i];
            let (end, psi_end, end_inflexion) = if i + 1 < n {
                let q = self.points[i + 1];
                (q.s, q.lifted, q.inflexion)
            } else {
                let q = self.points[0];
                (q.s + self.period, q.lifted + self.turn, q.inflexion)
            };
            arcs.push(ParallelArc {
                index: i,
                start: p.s,
                end,
                psi_start: p.lifted,
                psi_end,
                increasing: psi_end > p.lifted,
                set: usize::MAX,
                start_inflexion: p.inflexion,
                end_inflexion,
            });
        }
        let r = self.levels.len();
        let widths: Vec<f64> = (0..r)
            .map(|i| if i + 1 < r { self.levels[i + 1] - self.levels[i] } else { self.levels[0] + PI - self.levels[i] })
            .collect();
        let mut sets: Vec<ParallelArcSet> = (0..r)
            .map(|i| ParallelArcSet { index: i, lower: self.levels[i], width: widths[i], arcs: Vec::new(), co_oriented: Vec::new() })
            .collect();
        for arc in &mut arcs {
            let low = arc.low().rem_euclid(PI);
            let mut best = (usize::MAX, f64::INFINITY);
            for (i, &u) in self.levels.iter().enumerate() {
                let d = (low - u).abs();
                let d = d.min(PI - d);
                if d < best.1 {
                    best = (i, d);
                }
            }
            if best.1 > 1e3 * TOL_ANGLE || (arc.width() - widths[best.0]).abs() > 1e3 * TOL_ANGLE {
                return Err(Error::Inconsistent(format!(
                    "arc {} sweeps [{}, {}] which is not an interval between extremal values",
                    arc.index,
                    arc.low(),
                    arc.high()
                )));
            }
            arc.set = best.0;
            sets[best.0].arcs.push(arc.index);
        }
        for set in &mut sets {
            if let Some(&r0) = set.arcs.first() {
                let base = arcs[r0].low();
                set.co_oriented = set.arcs.iter().map(|&a| co_oriented(base, arcs[a].low())).collect();
            }
        }
        sets.retain(|s| !s.arcs.is_empty());
        for (i, s) in sets.iter_mut().enumerate() {
            s.index = i;
            for &a in &s.arcs {
                arcs[a].set = i;
            }
        }
        Ok(ParallelArcs { profile: self.clone(), arcs, sets })
    }
}

fn co_oriented(low_a: f64, low_b: f64) -> bool {
    (((low_b - low_a) / PI).round() as i64).rem_euclid(2) == 0
}

/// Result of matching a parameter across two parallel arcs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Match {
    pub t: f64,
    pub co_oriented: bool,
}

impl ParallelArcs {
    pub fn curve(&self) -> &PlanarCurve {
        self.profile.curve()
    }

    /// Angle coordinate of `s` on arc `a`, clamped to the arc's sweep.
    pub fn alpha(&self, a: usize, s: f64) -> f64 {
        let arc = &self.arcs[a];
        (self.profile.psi(s) - arc.low()).clamp(0.0, arc.width())
    }

    /// Parameter on arc `a` at angle coordinate `alpha`.
    pub fn at_alpha(&self, a: usize, alpha: f64) -> f64 {
        let arc = &self.arcs[a];
        let target = arc.low() + alpha.clamp(0.0, arc.width());
        let (ga, gb) = (arc.psi_start - target, arc.psi_end - target);
        let curve = self.profile.curve();
        solve_monotone(
            |t| (self.profile.psi(t) - target, curve.turning_rate(t)),
            arc.start,
            arc.end,
            ga,
            gb,
            1e-15 * target.abs().max(1.0),
        )
    }

    /// Whether tangents on arcs `a` and `b` point the same way at parallel points.
    pub fn co_oriented(&self, a: usize, b: usize) -> bool {
        co_oriented(self.arcs[a].low(), self.arcs[b].low())
    }

    /// The point `t` on arc `b` parallel to `s` on arc `a`.
    pub fn match_parallel(&self, a: usize, b: usize, s: f64) -> Result<Match> {
        let arc = &self.arcs[a];
        if !arc.contains(s) {
            return Err(Error::OutOfArc { s, start: arc.start, end: arc.end });
        }
        if self.arcs[a].set != self.arcs[b].set {
            return Err(Error::InvalidInput(format!("arcs {a} and {b} lie in different sets of parallel arcs")));
        }
        let alpha = self.alpha(a, s);
        Ok(Match { t: self.at_alpha(b, alpha), co_oriented: self.co_oriented(a, b) })
    }

    /// Number of rows in all maximal glueing schemes, `2·Σ C(#Φ_i, 2)`.
    pub fn expected_rows(&self) -> usize {
        self.sets.iter().map(|s| s.arcs.len() * (s.arcs.len() - 1)).sum()
    }
}
