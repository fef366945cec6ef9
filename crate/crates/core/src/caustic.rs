//! Tracing maximal glueing schemes into branches of the secant caustic, and
//! the local analysis of those branches: curvature, cusps, inflexions,
//! rotation numbers, lengths and areas.

use std::f64::consts::TAU;

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::CurvePoint;
use crate::error::{Error, Result};
use crate::geom::{wrap_angle, Vec2};
use crate::glueing::{GlueingScheme, Row};
use crate::parallel::ParallelArcs;
use crate::quad;

/// Relative tolerance for `|κa| = |κb|` at a certified cusp.
pub const TOL_SING: f64 = 1e-8;
/// Joint gaps up to this fraction of the diameter are snapped closed.
pub const SNAP_GAP: f64 = 1e-6;
/// Default samples per arc.
pub const DEFAULT_RESOLUTION: usize = 2048;

/// Curvature of the secant caustic at `a − b`, for curvatures taken with
/// co-oriented tangents. The sign refers to the branch oriented by `a`.
pub fn caustic_curvature(ka: f64, kb: f64) -> Result<f64> {
    let gap = (ka - kb).abs();
    if gap < TOL_SING * ka.abs().max(kb.abs()) || gap == 0.0 {
        return Err(Error::SingularPoint { gap });
    }
    Ok(ka * kb.abs() / gap)
}

/// Whether the centres of curvature at a parallel pair lie on the same side.
pub fn curved_same_side(a: &CurvePoint, b: &CurvePoint) -> Result<bool> {
    let tol = 1e-12 * (1.0 + a.curvature.abs().max(b.curvature.abs()));
    if a.curvature.abs() < tol || b.curvature.abs() < tol {
        return Err(Error::ZeroCurvature { ka: a.curvature, kb: b.curvature });
    }
    let kb = if a.tangent.dot(b.tangent) >= 0.0 { b.curvature } else { -b.curvature };
    Ok((a.curvature > 0.0) == (kb > 0.0))
}

/// One sample of a branch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TraceRecord {
    pub s: f64,
    pub t: f64,
    pub a: Vec2,
    pub b: Vec2,
    /// `a − b`.
    pub point: Vec2,
    pub tangent_a: Vec2,
    pub kappa_a: f64,
    pub kappa_b: f64,
    pub co_oriented: bool,
    /// Caustic curvature, absent at singular points.
    pub kappa_sc: Option<f64>,
}

impl TraceRecord {
    /// `κ(b)` after co-orienting the tangent at `b` with the one at `a`.
    pub fn kappa_b_co(&self) -> f64 {
        if self.co_oriented {
            self.kappa_b
        } else {
            -self.kappa_b
        }
    }

    pub fn same_side(&self) -> bool {
        self.kappa_a != 0.0 && self.kappa_b != 0.0 && (self.kappa_a > 0.0) == (self.kappa_b_co() > 0.0)
    }

    /// Unit normal field of the branch, the normal of the curve at `a`.
    pub fn normal(&self) -> Vec2 {
        self.tangent_a.perp()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TracedRow {
    pub row: Row,
    /// Samples from entry to exit, both endpoints included.
    pub records: Vec<TraceRecord>,
}

/// A cusp of the caustic, located at a parallel pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SingularPairCertificate {
    pub s: f64,
    pub t: f64,
    pub point: Vec2,
    pub kappa_a_abs: f64,
    pub kappa_b_abs: f64,
    pub same_side: bool,
    pub residual: f64,
    /// Position along the branch (global record index).
    pub position: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BranchInflexion {
    pub row: usize,
    pub s: f64,
    pub t: f64,
    pub point: Vec2,
    pub origin: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CausticBranch {
    pub id: usize,
    pub scheme: GlueingScheme,
    pub rows: Vec<TracedRow>,
    /// Largest gap found at a row joint, before snapping.
    pub max_joint_gap: f64,
    pub cusps: Vec<SingularPairCertificate>,
    pub inflexions: Vec<BranchInflexion>,
    pub rotation_value: f64,
    pub origin_passes: usize,
}

impl CausticBranch {
    /// Records along the branch without repeated junction samples.
    pub fn records(&self) -> Vec<TraceRecord> {
        self.rows.iter().flat_map(|r| r.records[..r.records.len() - 1].iter().copied()).collect()
    }

    /// Closed polyline of `a − b` (first point repeated at the end).
    pub fn polyline(&self) -> Vec<Vec2> {
        let mut p: Vec<Vec2> = self.records().iter().map(|r| r.point).collect();
        if let Some(f) = p.first().copied() {
            p.push(f);
        }
        p
    }

    /// Rotation number rounded to the nearest integer.
    pub fn rotation_number(&self) -> i64 {
        self.rotation_value.round() as i64
    }

    /// Global record index of the first sample of each row.
    pub fn row_offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.rows
            .iter()
            .map(|r| {
                let o = acc;
                acc += r.records.len() - 1;
                o
            })
            .collect()
    }

    /// Orientation of each record's polyline direction relative to `a`'s motion.
    pub fn direction_signs(&self) -> Vec<f64> {
        self.rows
            .iter()
            .flat_map(|r| {
                let sgn = if r.row.top.forward { 1.0 } else { -1.0 };
                std::iter::repeat_n(sgn, r.records.len() - 1)
            })
            .collect()
    }
}

fn record(arcs: &ParallelArcs, s: f64, t: f64, co: bool) -> TraceRecord {
    let curve = arcs.curve();
    let pa = curve.point(s);
    let pb = curve.point(t);
    let kb_co = if co { pb.curvature } else { -pb.curvature };
    TraceRecord {
        s,
        t,
        a: pa.position,
        b: pb.position,
        point: pa.position - pb.position,
        tangent_a: pa.tangent,
        kappa_a: pa.curvature,
        kappa_b: pb.curvature,
        co_oriented: co,
        kappa_sc: caustic_curvature(pa.curvature, kb_co).ok(),
    }
}

/// Samples one row: uniform in `s` on the top arc and uniform in `t` on the
/// bottom arc, merged in traversal order, endpoints exact.
pub fn trace_row(arcs: &ParallelArcs, row: Row, resolution: usize) -> TracedRow {
    let (ta, tb) = (&arcs.arcs[row.top.arc], &arcs.arcs[row.bottom.arc]);
    let co = arcs.co_oriented(ta.index, tb.index);
    let entry_low = ta.increasing == row.top.forward;
    let end_pair = |low: bool| if low { (ta.low_param(), tb.low_param()) } else { (ta.high_param(), tb.high_param()) };
    let n = resolution.max(8);
    let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(2 * n + 2);
    pairs.push(end_pair(entry_low));
    for i in 1..n {
        let s = ta.start + (ta.end - ta.start) * i as f64 / n as f64;
        pairs.push((s, arcs.at_alpha(tb.index, arcs.alpha(ta.index, s))));
        let t = tb.start + (tb.end - tb.start) * i as f64 / n as f64;
        pairs.push((arcs.at_alpha(ta.index, arcs.alpha(tb.index, t)), t));
    }
    pairs.push(end_pair(!entry_low));
    let (first, last) = (pairs[0], pairs[pairs.len() - 1]);
    let mut inner: Vec<(f64, f64)> = pairs[1..pairs.len() - 1].to_vec();
    let (ds, dt) = (if row.top.forward { 1.0 } else { -1.0 }, if row.bottom.forward { 1.0 } else { -1.0 });
    inner.sort_by(|x, y| (ds * x.0).total_cmp(&(ds * y.0)).then((dt * x.1).total_cmp(&(dt * y.1))));
    let eps_s = 1e-12 * (ta.end - ta.start).abs().max(1e-300);
    let eps_t = 1e-12 * (tb.end - tb.start).abs().max(1e-300);
    let mut ordered = vec![first];
    for p in inner.into_iter().chain([last]) {
        let q = ordered[ordered.len() - 1];
        if (p.0 - q.0).abs() <= eps_s && (p.1 - q.1).abs() <= eps_t {
            continue;
        }
        ordered.push(p);
    }
    if ordered[ordered.len() - 1] != last {
        let k = ordered.len() - 1;
        ordered[k] = last;
    }
    let records = ordered.into_iter().map(|(s, t)| record(arcs, s, t, co)).collect();
    TracedRow { row, records }
}

/// Traces a maximal scheme into a closed branch and runs the branch detectors.
pub fn trace_branch(arcs: &ParallelArcs, id: usize, scheme: &GlueingScheme, resolution: usize) -> Result<CausticBranch> {
    if !scheme.closed {
        return Err(Error::Inconsistent("only closed schemes can be traced".into()));
    }
    let mut rows: Vec<TracedRow> = scheme.rows.iter().map(|r| trace_row(arcs, *r, resolution)).collect();
    let diameter = arcs.curve().diameter();
    let mut max_gap: f64 = 0.0;
    let k = rows.len();
    for i in 0..k {
        let exit = rows[i].records[rows[i].records.len() - 1].point;
        let entry = rows[(i + 1) % k].records[0].point;
        max_gap = max_gap.max(exit.distance(entry));
    }
    if max_gap > SNAP_GAP * diameter {
        return Err(Error::TraceGap { gap: max_gap, allowed: SNAP_GAP * diameter });
    }
    for i in 0..k {
        let entry = rows[(i + 1) % k].records[0];
        let last = rows[i].records.len() - 1;
        rows[i].records[last].point = entry.point;
    }
    let mut branch = CausticBranch {
        id,
        scheme: scheme.clone(),
        rows,
        max_joint_gap: max_gap,
        cusps: Vec::new(),
        inflexions: Vec::new(),
        rotation_value: 0.0,
        origin_passes: scheme.origin_passages(arcs.arcs.len()),
    };
    branch.rotation_value = rotation_value(&branch);
    branch.cusps = detect_cusps(arcs, &branch);
    branch.inflexions = detect_inflexions(arcs, &branch);
    Ok(branch)
}

/// Traces every scheme, in parallel, keeping scheme order.
pub fn trace_all(arcs: &ParallelArcs, schemes: &[GlueingScheme], resolution: usize) -> Result<Vec<CausticBranch>> {
    schemes
        .par_iter()
        .enumerate()
        .map(|(i, s)| trace_branch(arcs, i, s, resolution))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Accumulated turning of the normal field divided by 2π.
pub fn rotation_value(branch: &CausticBranch) -> f64 {
    let recs = branch.records();
    let mut acc = 0.0;
    for i in 0..recs.len() {
        let j = (i + 1) % recs.len();
        acc += wrap_angle(recs[j].tangent_a.atan2() - recs[i].tangent_a.atan2());
    }
    acc / TAU
}

/// Rotation number of the branch's unit normal field.
pub fn rotation_number(branch: &CausticBranch) -> Result<i64> {
    let v = branch.rotation_value;
    if (v - v.round()).abs() >= 1e-3 {
        return Err(Error::NonIntegerWinding { value: v });
    }
    Ok(v.round() as i64)
}

fn cusp_function(arcs: &ParallelArcs, row: Row, s: f64, t: f64) -> (f64, TraceRecord) {
    let co = arcs.co_oriented(row.top.arc, row.bottom.arc);
    let r = record(arcs, s, t, co);
    (r.kappa_a.abs() - r.kappa_b.abs(), r)
}

fn same_pair(period: f64, s0: f64, t0: f64, s1: f64, t1: f64) -> bool {
    let close = |a: f64, b: f64| {
        let d = (a - b).rem_euclid(period);
        d.min(period - d) < 1e-9 * period
    };
    close(s0, s1) && close(t0, t1)
}

/// Locates the cusps of a branch: roots of `|κa| − |κb|` on same-side stretches.
pub fn detect_cusps(arcs: &ParallelArcs, branch: &CausticBranch) -> Vec<SingularPairCertificate> {
    let period = arcs.curve().period();
    let mut out: Vec<SingularPairCertificate> = Vec::new();
    let offsets = branch.row_offsets();
    for (ri, tr) in branch.rows.iter().enumerate() {
        let (ta, tb) = (tr.row.top.arc, tr.row.bottom.arc);
        let g: Vec<f64> = tr.records.iter().map(|r| r.kappa_a.abs() - r.kappa_b.abs()).collect();
        for k in 0..tr.records.len() - 1 {
            let (r0, r1) = (&tr.records[k], &tr.records[k + 1]);
            if !(r0.same_side() && r1.same_side()) || g[k] == 0.0 {
                continue;
            }
            if (g[k] > 0.0) == (g[k + 1] > 0.0) && g[k + 1] != 0.0 {
                continue;
            }
            // bisect in the parameter that moves more across the bracket
            let use_t = (r1.t - r0.t).abs() > (r1.s - r0.s).abs();
            let (mut lo, mut hi) = if use_t { (r0.t, r1.t) } else { (r0.s, r1.s) };
            let pos = g[k] > 0.0;
            let eval = |x: f64| {
                if use_t {
                    let s = arcs.at_alpha(ta, arcs.alpha(tb, x));
                    cusp_function(arcs, tr.row, s, x)
                } else {
                    let t = arcs.at_alpha(tb, arcs.alpha(ta, x));
                    cusp_function(arcs, tr.row, x, t)
                }
            };
            let mut best = if g[k + 1] == 0.0 { (0.0, *r1) } else { eval(0.5 * (lo + hi)) };
            if g[k + 1] != 0.0 {
                for _ in 0..200 {
                    let m = 0.5 * (lo + hi);
                    if m == lo || m == hi {
                        break;
                    }
                    let (v, r) = eval(m);
                    best = (v, r);
                    if v == 0.0 {
                        break;
                    }
                    if (v > 0.0) == pos {
                        lo = m;
                    } else {
                        hi = m;
                    }
                }
            }
            let r = best.1;
            let kb_co = r.kappa_b_co();
            let scale = r.kappa_a.abs().max(r.kappa_b.abs());
            let residual = if scale > 0.0 { (r.kappa_a - kb_co).abs() / scale } else { 0.0 };
            let cert = SingularPairCertificate {
                s: r.s,
                t: r.t,
                point: r.point,
                kappa_a_abs: r.kappa_a.abs(),
                kappa_b_abs: r.kappa_b.abs(),
                same_side: r.same_side(),
                residual,
                position: offsets[ri] + k,
            };
            if !out.iter().any(|c| same_pair(period, c.s, c.t, cert.s, cert.t)) {
                out.push(cert);
            }
        }
    }
    // sign changes straddling a row joint
    let rows = &branch.rows;
    for (ri, tr) in rows.iter().enumerate() {
        let next = &rows[(ri + 1) % rows.len()];
        let (m, nx) = (tr.records.len(), next.records.len());
        if m < 2 || nx < 2 {
            continue;
        }
        let (a, j, b) = (&tr.records[m - 2], &tr.records[m - 1], &next.records[1]);
        if !(a.same_side() && j.same_side() && b.same_side()) {
            continue;
        }
        let (ga, gb) = (a.kappa_a.abs() - a.kappa_b.abs(), b.kappa_a.abs() - b.kappa_b.abs());
        if ga == 0.0 || gb == 0.0 || (ga > 0.0) == (gb > 0.0) {
            continue;
        }
        if out.iter().any(|c| same_pair(period, c.s, c.t, j.s, j.t)) {
            continue;
        }
        let scale = j.kappa_a.abs().max(j.kappa_b.abs());
        let residual = if scale > 0.0 { (j.kappa_a - j.kappa_b_co()).abs() / scale } else { 0.0 };
        out.push(SingularPairCertificate {
            s: j.s,
            t: j.t,
            point: j.point,
            kappa_a_abs: j.kappa_a.abs(),
            kappa_b_abs: j.kappa_b.abs(),
            same_side: true,
            residual,
            position: offsets[ri] + m - 1,
        });
    }
    out.sort_by_key(|c| c.position);
    out
}

/// Inflexions of the branch: junctions whose pair contains an inflexion of
/// the curve, counting passages through the origin once.
pub fn detect_inflexions(arcs: &ParallelArcs, branch: &CausticBranch) -> Vec<BranchInflexion> {
    let n = arcs.arcs.len();
    let pts = arcs.profile.parallel_points();
    let k = branch.rows.len();
    let mut out = Vec::new();
    for (i, (top, bottom)) in branch.scheme.junctions(n).into_iter().enumerate() {
        if top == bottom || pts[top].inflexion || pts[bottom].inflexion {
            let r = branch.rows[(i + 1) % k].records[0];
            out.push(BranchInflexion { row: i, s: r.s, t: r.t, point: r.point, origin: top == bottom });
        }
    }
    out
}

/// Sign changes of the discrete turning of the polyline, away from cusps.
pub fn discrete_inflexion_count(branch: &CausticBranch) -> usize {
    let recs = branch.records();
    let n = recs.len();
    if n < 3 {
        return 0;
    }
    let window = 5usize;
    let near_cusp = |i: usize| {
        branch.cusps.iter().any(|c| {
            let d = (i + n - c.position % n) % n;
            d.min(n - d) <= window
        })
    };
    let mut signs = Vec::new();
    for i in 0..n {
        if near_cusp(i) {
            signs.push(0i8);
            continue;
        }
        let p0 = recs[(i + n - 1) % n].point;
        let p1 = recs[i].point;
        let p2 = recs[(i + 1) % n].point;
        let (u, v) = (p1 - p0, p2 - p1);
        let c = u.cross(v);
        if c.abs() <= 1e-12 * u.hypot() * v.hypot() {
            signs.push(0);
        } else {
            signs.push(if c > 0.0 { 1 } else { -1 });
        }
    }
    let nz: Vec<i8> = signs.into_iter().filter(|s| *s != 0).collect();
    if nz.is_empty() {
        return 0;
    }
    (0..nz.len()).filter(|&i| nz[i] != nz[(i + 1) % nz.len()]).count()
}

/// Signed curvature of the polyline at record `i` from the circle through
/// records `i − step`, `i`, `i + step`.
pub fn discrete_curvature(points: &[Vec2], i: usize, step: usize) -> f64 {
    let n = points.len();
    let p0 = points[(i + n - step) % n];
    let p1 = points[i];
    let p2 = points[(i + step) % n];
    let (u, v, w) = (p1 - p0, p2 - p1, p2 - p0);
    2.0 * u.cross(v) / (u.hypot() * v.hypot() * w.hypot())
}

/// Outcome of the half-branch cusp parity check for one half-branch.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HalfBranchParity {
    pub cusps: usize,
    pub frames_agree: bool,
    pub pass: bool,
}

/// Between consecutive origin passages, an even number of cusps goes with
/// equally oriented tangent-normal frames at both ends.
pub fn half_branch_parity(arcs: &ParallelArcs, branch: &CausticBranch) -> Vec<HalfBranchParity> {
    let n_arcs = arcs.arcs.len();
    let recs = branch.records();
    let n = recs.len();
    let offsets = branch.row_offsets();
    let k = branch.rows.len();
    let origins: Vec<usize> = branch
        .scheme
        .junctions(n_arcs)
        .iter()
        .enumerate()
        .filter(|(_, (a, b))| a == b)
        .map(|(i, _)| offsets[(i + 1) % k])
        .collect();
    if origins.len() < 2 {
        return Vec::new();
    }
    let frame = |i: usize, forward: bool| {
        let (p, q) = if forward { (recs[i].point, recs[(i + 1) % n].point) } else { (recs[(i + n - 1) % n].point, recs[i].point) };
        let tc = (q - p).normalize();
        tc.cross(recs[i].normal()) > 0.0
    };
    let mut out = Vec::new();
    for w in 0..origins.len() {
        let start = origins[w];
        let end = origins[(w + 1) % origins.len()];
        let len = (end + n - start) % n;
        let inside = |pos: usize| {
            let d = (pos + n - start) % n;
            d > 0 && d < len
        };
        let cusps = branch.cusps.iter().filter(|c| inside(c.position)).count();
        let off = 3.min(len / 4).max(1);
        let a = (start + off) % n;
        let b = (end + n - off) % n;
        let agree = frame(a, true) == frame(b, false);
        out.push(HalfBranchParity { cusps, frames_agree: agree, pass: agree == (cusps % 2 == 0) });
    }
    out
}

/// Length and signed area of `λa·a + λb·b` over one row, by quadrature.
pub fn row_integrals(arcs: &ParallelArcs, row: Row, la: f64, lb: f64, breaks_s: &[f64]) -> Result<(f64, f64)> {
    let curve = arcs.curve();
    let (ta, tb) = (&arcs.arcs[row.top.arc], &arcs.arcs[row.bottom.arc]);
    let w = ta.width();
    let s_mid = arcs.at_alpha(ta.index, 0.5 * w);
    let t_mid = arcs.at_alpha(tb.index, 0.5 * w);
    let low_infl = |arc: &crate::parallel::ParallelArc| if arc.increasing { arc.start_inflexion } else { arc.end_inflexion };
    let high_infl = |arc: &crate::parallel::ParallelArc| if arc.increasing { arc.end_inflexion } else { arc.start_inflexion };
    let scale = curve.diameter().max(1e-300);
    let mut length = 0.0;
    let mut area = 0.0;
    let top_sign = if row.top.forward { 1.0 } else { -1.0 };
    // splines are only C²: their knots are breakpoints and the target accuracy is lower
    let sampled = curve.kind() == crate::curve::CurveKind::Sampled;
    let smooth_tol: f64 = if sampled { 1e-8 } else { 1e-13 };
    for half_low in [true, false] {
        let (top_flat, bottom_flat) = if half_low { (low_infl(ta), low_infl(tb)) } else { (high_infl(ta), high_infl(tb)) };
        let (end_s, end_t) = if half_low { (ta.low_param(), tb.low_param()) } else { (ta.high_param(), tb.high_param()) };
        // integration variable: s, t, or u with α = α_end ± u² when both ends are inflexions
        let var = match (top_flat, bottom_flat) {
            (true, true) => 2,
            (false, true) => 1,
            _ => 0,
        };
        let (breaks, sign, tol): (Vec<f64>, f64, f64) = match var {
            2 => {
                let um = (0.5 * w).sqrt();
                ((0..=8).map(|i| um * i as f64 / 8.0).collect(), top_sign * (s_mid - end_s).signum(), smooth_tol.max(1e-10))
            }
            _ => {
                let (x0, x1) = if var == 1 { (t_mid, end_t) } else { (s_mid, end_s) };
                let (lo, hi) = (x0.min(x1), x0.max(x1));
                let mut br: Vec<f64> = (0..=8).map(|i| lo + (hi - lo) * i as f64 / 8.0).collect();
                if var == 0 {
                    br.extend(breaks_s.iter().copied().filter(|b| *b > lo && *b < hi));
                }
                br.extend(curve.knots_between(lo, hi));
                br.sort_by(f64::total_cmp);
                br.dedup_by(|x, y| (*x - *y).abs() <= 1e-14 * (hi - lo));
                let forward = if var == 1 { row.bottom.forward } else { row.top.forward };
                (br, if forward { 1.0 } else { -1.0 }, smooth_tol)
            }
        };
        let deriv = |x: f64| -> (Vec2, Vec2) {
            let (s, t, ds, dt) = match var {
                2 => {
                    let (al, dal) = if half_low { (x * x, 2.0 * x) } else { (w - x * x, -2.0 * x) };
                    let (s, t) = (arcs.at_alpha(ta.index, al), arcs.at_alpha(tb.index, al));
                    (s, t, dal / curve.turning_rate(s), dal / curve.turning_rate(t))
                }
                1 => {
                    let s = arcs.at_alpha(ta.index, arcs.alpha(tb.index, x));
                    (s, x, curve.turning_rate(x) / curve.turning_rate(s), 1.0)
                }
                _ => {
                    let t = arcs.at_alpha(tb.index, arcs.alpha(ta.index, x));
                    (x, t, 1.0, curve.turning_rate(x) / curve.turning_rate(t))
                }
            };
            let (fa, da, _) = curve.derivs(s);
            let (fb, db, _) = curve.derivs(t);
            (fa * la + fb * lb, da * (la * ds) + db * (lb * dt))
        };
        let mut fl = |x: f64| deriv(x).1.hypot();
        length += quad::integrate_split(&mut fl, &breaks, tol * scale, tol)?;
        let mut fa = |x: f64| {
            let (c, dc) = deriv(x);
            0.5 * c.cross(dc)
        };
        area += sign * quad::integrate_split(&mut fa, &breaks, tol * scale * scale, tol)?;
    }
    Ok((length, area))
}

/// Length and signed area of a traced branch by quadrature along its rows.
pub fn branch_length_area(arcs: &ParallelArcs, branch: &CausticBranch) -> Result<(f64, f64)> {
    let mut length = 0.0;
    let mut area = 0.0;
    for tr in &branch.rows {
        let cusp_s: Vec<f64> = branch
            .cusps
            .iter()
            .filter(|c| arcs.arcs[tr.row.top.arc].contains(c.s))
            .map(|c| c.s)
            .collect();
        let (l, a) = row_integrals(arcs, tr.row, 1.0, -1.0, &cusp_s)?;
        length += l;
        area += a;
    }
    Ok((length, area))
}

/// Points `λa + (1 − λ)b` along a traced branch.
pub fn equidistant_points(branch: &CausticBranch, lambda: f64) -> Vec<Vec2> {
    branch.records().iter().map(|r| r.a * lambda + r.b * (1.0 - lambda)).collect()
}

/// Affine `λ`-equidistant of the curve, one closed point sequence per branch.
pub fn equidistant(branches: &[CausticBranch], lambda: f64) -> Vec<Vec<Vec2>> {
    branches.iter().map(|b| equidistant_points(b, lambda)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::glueing::maximal_schemes;
    use crate::parallel::AngleProfile;
    use crate::PlanarCurve;
    use std::f64::consts::PI;

    fn branches(c: &PlanarCurve, res: usize) -> (ParallelArcs, Vec<CausticBranch>) {
        let arcs = AngleProfile::new(c).unwrap().arc_sets().unwrap();
        let schemes = maximal_schemes(&arcs).unwrap();
        let b = trace_all(&arcs, &schemes, res).unwrap();
        (arcs, b)
    }

    #[test]
    fn curvature_formula_examples() {
        assert_eq!(caustic_curvature(2.0, 1.0).unwrap(), 2.0);
        assert!((caustic_curvature(1.0, -2.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!(matches!(caustic_curvature(1.0, 1.0), Err(Error::SingularPoint { .. })));
    }

    #[test]
    fn same_side_examples() {
        let c = PlanarCurve::circle(1.0);
        assert!(!curved_same_side(&c.point(0.3), &c.point(0.3 + PI)).unwrap());
        let r = fixtures::rosette(2);
        assert!(curved_same_side(&r.point(0.4), &r.point(0.4 + TAU)).unwrap());
    }

    #[test]
    fn circle_branch_is_circle_of_radius_two() {
        let (arcs, b) = branches(&PlanarCurve::circle(1.0), 256);
        assert_eq!(b.len(), 1);
        for p in b[0].polyline() {
            assert!((p.hypot() - 2.0).abs() < 1e-12);
        }
        assert!(b[0].cusps.is_empty());
        assert!(b[0].inflexions.is_empty());
        assert_eq!(rotation_number(&b[0]).unwrap(), 1);
        let (l, a) = branch_length_area(&arcs, &b[0]).unwrap();
        assert!((l - 4.0 * PI).abs() < 1e-12 * 4.0 * PI);
        assert!((a - 4.0 * PI).abs() < 1e-12 * 4.0 * PI);
    }

    #[test]
    fn rosette_singular_branch_has_two_cusps() {
        let (_, b) = branches(&fixtures::rosette(2), 512);
        assert_eq!(b.len(), 3);
        let cusps: Vec<usize> = b.iter().map(|x| x.cusps.len()).collect();
        assert_eq!(cusps, vec![0, 2, 0]);
        for c in &b[1].cusps {
            assert!(c.residual < 1e-8 && c.same_side);
            let th = c.s.rem_euclid(2.0 * PI);
            assert!((th - PI).abs() < 1e-8, "cusp at θ = {}", c.s);
        }
        for x in &b {
            assert_eq!(rotation_number(x).unwrap(), 2);
        }
    }

    #[test]
    fn rosette_branch_matches_closed_form() {
        let c = fixtures::rosette(2);
        let (_, b) = branches(&c, 256);
        for r in b[1].records() {
            let expect = c.position(r.s) - c.position(r.s + TAU);
            assert!((r.point - expect).hypot() < 1e-10);
        }
    }

    #[test]
    fn inflexion_totals() {
        for (curve, n_infl) in [(fixtures::two_inflexion_curve(), 2usize), (fixtures::four_inflexion_curve(), 4)] {
            let (arcs, b) = branches(&curve, 512);
            let total: usize = b.iter().map(|x| x.inflexions.len()).sum();
            let m = arcs.profile.m();
            assert_eq!(total, 4 * m - n_infl);
            for x in &b {
                assert_eq!(x.cusps.len() % 2, 0);
                assert_eq!(x.inflexions.len() % 2, 0);
                if x.origin_passes > 0 {
                    assert_eq!(x.origin_passes, 2);
                    assert_eq!(x.inflexions.len() % 4, 2);
                }
                for h in half_branch_parity(&arcs, x) {
                    assert!(h.pass, "{h:?}");
                }
                rotation_number(x).unwrap();
            }
        }
    }

    #[test]
    fn oval_equidistant_commutes() {
        let (_, b) = branches(&fixtures::lopsided_oval(), 256);
        let recs = b[0].records();
        let e = equidistant_points(&b[0], 0.3);
        assert_eq!(e.len(), recs.len());
        assert!((e[0] - (recs[0].a * 0.3 + recs[0].b * 0.7)).hypot() < 1e-15);
    }
}
