//! Brute-force secant caustic: every sample pair with nearly parallel
//! tangents, and Hausdorff comparison of point clouds.

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::PlanarCurve;
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::parallel::AngleProfile;

pub const MIN_SAMPLES: usize = 256;

#[derive(Clone, Debug, Default, Serialize)]
pub struct PointCloud {
    pub points: Vec<Vec2>,
    /// Sample indices `(i, j)` of the pair behind each point, when known.
    pub pairs: Vec<(usize, usize)>,
}

impl PointCloud {
    pub fn from_points(points: Vec<Vec2>) -> Self {
        PointCloud { points, pairs: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn negated(&self) -> PointCloud {
        PointCloud { points: self.points.iter().map(|p| *p * -1.0).collect(), pairs: self.pairs.iter().map(|&(i, j)| (j, i)).collect() }
    }
}

/// Constant `c` of the oracle bound `max(1e−2·diameter, c/N)`: the unit-circle
/// distance at `N = 2048` times `N`, rounded up.
pub const ORACLE_C: f64 = 0.02;

pub fn oracle_bound(diameter: f64, n: usize) -> f64 {
    (1e-2 * diameter).max(ORACLE_C / n as f64)
}

/// Default parallelism tolerance, one angular step of slack.
pub fn default_tol_par(n: usize) -> f64 {
    4.0 * std::f64::consts::PI / n as f64
}

/// All `f(s_i) − f(s_j)` with `|T_i × T_j| < tol_par`, over `n` parameter-uniform samples.
///
/// Pairs joined by a short stretch on which the tangent turns monotonically
/// by less than a quarter turn are neighbours, not parallel pairs, and are skipped.
pub fn brute_secant_cloud(curve: &PlanarCurve, n: usize, tol_par: f64) -> Result<PointCloud> {
    if n < MIN_SAMPLES {
        return Err(Error::InvalidInput(format!("oracle needs at least {MIN_SAMPLES} samples, got {n}")));
    }
    let profile = AngleProfile::new(curve)?;
    let period = curve.period();
    let s: Vec<f64> = (0..n).map(|i| period * i as f64 / n as f64).collect();
    let pts: Vec<_> = s.iter().map(|&x| curve.point(x)).collect();
    let psi: Vec<f64> = s.iter().map(|&x| profile.psi(x)).collect();
    let turn = profile.turn();
    let extrema: Vec<f64> = profile.extrema().iter().map(|e| e.s).collect();
    // whether an extremum of the angle lies in the parameter range (s_i, s_j], wrapping
    let has_extremum = |i: usize, j: usize| {
        let (a, b) = (s[i], s[j]);
        extrema.iter().any(|&e| if a <= b { e > a && e <= b } else { e > a || e <= b })
    };
    let neighbour = |i: usize, j: usize| {
        let (lo, hi) = if (j + n - i) % n <= n / 2 { (i, j) } else { (j, i) };
        if has_extremum(lo, hi) {
            return false;
        }
        let dpsi = if hi >= lo { psi[hi] - psi[lo] } else { psi[hi] + turn - psi[lo] };
        dpsi.abs() < std::f64::consts::FRAC_PI_2
    };
    let rows: Vec<Vec<(Vec2, (usize, usize))>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in 0..n {
                if i == j || pts[i].tangent.cross(pts[j].tangent).abs() >= tol_par || neighbour(i, j) {
                    continue;
                }
                out.push((pts[i].position - pts[j].position, (i, j)));
            }
            out
        })
        .collect();
    let mut cloud = PointCloud::default();
    for (p, ij) in rows.into_iter().flatten() {
        cloud.points.push(p);
        cloud.pairs.push(ij);
    }
    Ok(cloud)
}

/// Cloud pairs curved in the same side with `||κ_i| − |κ_j|| ≤ rel_tol·max(|κ_i|, |κ_j|)`.
pub fn cusp_candidates(curve: &PlanarCurve, n: usize, cloud: &PointCloud, rel_tol: f64) -> Vec<usize> {
    let period = curve.period();
    let at = |i: usize| curve.point(period * i as f64 / n as f64);
    cloud
        .pairs
        .iter()
        .enumerate()
        .filter_map(|(k, &(i, j))| {
            let (a, b) = (at(i), at(j));
            let kb = if a.tangent.dot(b.tangent) >= 0.0 { b.curvature } else { -b.curvature };
            let same = (a.curvature > 0.0) == (kb > 0.0);
            let scale = a.curvature.abs().max(b.curvature.abs());
            (same && (a.curvature.abs() - b.curvature.abs()).abs() <= rel_tol * scale).then_some(k)
        })
        .collect()
}

struct Grid {
    origin: Vec2,
    cell: f64,
    nx: i64,
    ny: i64,
    buckets: Vec<Vec<u32>>,
}

impl Grid {
    fn new(points: &[Vec2]) -> Grid {
        let (mut lo, mut hi) = (points[0], points[0]);
        for p in points {
            lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let extent = (hi.x - lo.x).max(hi.y - lo.y);
        let side = (points.len() as f64).sqrt().ceil().max(1.0);
        let cell = if extent > 0.0 { extent / side } else { 1.0 };
        let nx = ((hi.x - lo.x) / cell).floor() as i64 + 1;
        let ny = ((hi.y - lo.y) / cell).floor() as i64 + 1;
        let mut buckets = vec![Vec::new(); (nx * ny) as usize];
        for (k, p) in points.iter().enumerate() {
            let (cx, cy) = (((p.x - lo.x) / cell) as i64, ((p.y - lo.y) / cell) as i64);
            buckets[(cy.min(ny - 1) * nx + cx.min(nx - 1)) as usize].push(k as u32);
        }
        Grid { origin: lo, cell, nx, ny, buckets }
    }

    fn nearest(&self, points: &[Vec2], q: Vec2) -> f64 {
        let cx = ((q.x - self.origin.x) / self.cell).floor() as i64;
        let cy = ((q.y - self.origin.y) / self.cell).floor() as i64;
        let mut best = f64::INFINITY;
        let mut r: i64 = 0;
        loop {
            for y in (cy - r)..=(cy + r) {
                for x in (cx - r)..=(cx + r) {
                    if (y - cy).abs() != r && (x - cx).abs() != r {
                        continue;
                    }
                    if x < 0 || y < 0 || x >= self.nx || y >= self.ny {
                        continue;
                    }
                    for &k in &self.buckets[(y * self.nx + x) as usize] {
                        best = best.min(points[k as usize].distance(q));
                    }
                }
            }
            // every unvisited cell lies at least r·cell away from q
            if best <= r as f64 * self.cell {
                return best;
            }
            let outside = cx - r < 0 && cy - r < 0 && cx + r >= self.nx && cy + r >= self.ny;
            if outside {
                return best;
            }
            r += 1;
        }
    }
}

fn directed(from: &[Vec2], to: &[Vec2]) -> f64 {
    let grid = Grid::new(to);
    from.par_iter().map(|&q| grid.nearest(to, q)).reduce(|| 0.0, f64::max)
}

/// Symmetric Hausdorff distance between two point sets.
pub fn hausdorff_points(a: &[Vec2], b: &[Vec2]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyCloud);
    }
    Ok(directed(a, b).max(directed(b, a)))
}

pub fn hausdorff(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    hausdorff_points(&a.points, &b.points)
}
