//! Full pipeline from a curve to its traced secant caustic, and the report
//! of counts and checks built from it.

use rayon::prelude::*;
use serde::Serialize;

use crate::caustic::{
    branch_length_area, discrete_inflexion_count, half_branch_parity, row_integrals, trace_all, CausticBranch,
};
use crate::curve::{CurveKind, Orientation, PlanarCurve};
use crate::error::Result;
use crate::geom::Vec2;
use crate::glueing::{maximal_schemes, GlueingScheme};
use crate::oracle::hausdorff_points;
use crate::parallel::{AngleProfile, ParallelArcs};

/// Traced secant caustic of one curve.
pub struct Analysis {
    pub arcs: ParallelArcs,
    pub schemes: Vec<GlueingScheme>,
    pub branches: Vec<CausticBranch>,
    /// Length and signed area of each branch.
    pub measures: Vec<(f64, f64)>,
    /// The input was clockwise and is analysed with reversed orientation.
    pub reversed: bool,
    pub resolution: usize,
}

/// Runs angle profile, arc sets, maximal schemes and tracing.
pub fn analyze(curve: &PlanarCurve, resolution: usize) -> Result<Analysis> {
    let reversed = curve.orientation() == Orientation::Clockwise;
    let curve = if reversed { curve.reversed()? } else { curve.clone() };
    let arcs = AngleProfile::new(&curve)?.arc_sets()?;
    let schemes = maximal_schemes(&arcs)?;
    let branches = trace_all(&arcs, &schemes, resolution)?;
    let measures = branches.par_iter().map(|b| branch_length_area(&arcs, b)).collect::<Result<Vec<_>>>()?;
    Ok(Analysis { arcs, schemes, branches, measures, reversed, resolution })
}

impl Analysis {
    pub fn curve(&self) -> &PlanarCurve {
        self.arcs.curve()
    }

    pub fn profile(&self) -> &AngleProfile {
        &self.arcs.profile
    }

    /// All branch samples in one cloud.
    pub fn pooled_points(&self) -> Vec<Vec2> {
        self.branches.iter().flat_map(|b| b.records().into_iter().map(|r| r.point)).collect()
    }

    /// Signed area of the Wigner caustic of an oval, over its first row.
    pub fn oval_wigner_area(&self) -> Result<f64> {
        let row = self.branches[0].rows[0].row;
        Ok(row_integrals(&self.arcs, row, 0.5, 0.5, &[])?.1)
    }

    pub fn report(&self) -> Result<AnalysisReport> {
        build_report(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSummary {
    pub kind: CurveKind,
    pub reversed: bool,
    pub rosette_n: Option<u32>,
    pub inflexions: usize,
    pub two_m: usize,
    pub length: f64,
    pub signed_area: f64,
    pub diameter: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ParallelPointEntry {
    pub index: usize,
    pub s: f64,
    pub lifted: f64,
    pub inflexion: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArcSetEntry {
    pub index: usize,
    pub lower: f64,
    pub width: f64,
    pub arcs: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchSummary {
    pub id: usize,
    pub rows: usize,
    pub cusps: usize,
    pub inflexions: usize,
    pub discrete_inflexions: usize,
    pub rotation_number: i64,
    pub rotation_value: f64,
    pub origin_passes: usize,
    pub length: f64,
    pub signed_area: f64,
    pub scheme: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    pub detail: String,
    /// Informational only; does not affect the overall verdict.
    pub warning: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    pub input_hash: Option<String>,
    pub resolution: usize,
    pub curve: CurveSummary,
    pub parallel_points: Vec<ParallelPointEntry>,
    pub arc_sets: Vec<ArcSetEntry>,
    pub branches: Vec<BranchSummary>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Relative tolerance of the oval length and area identities in reports.
pub const OVAL_TOL: f64 = 1e-6;

fn build_report(an: &Analysis) -> Result<AnalysisReport> {
    let curve = an.curve();
    let profile = an.profile();
    let n_arcs = an.arcs.arcs.len();
    let diameter = curve.diameter();
    let length = curve.length()?;
    let area = curve.signed_area()?;
    let inflexions = profile.extrema().len();
    let two_m = profile.parallel_points().len();

    let branches: Vec<BranchSummary> = an
        .branches
        .iter()
        .zip(&an.measures)
        .map(|(b, &(l, a))| BranchSummary {
            id: b.id,
            rows: b.rows.len(),
            cusps: b.cusps.len(),
            inflexions: b.inflexions.len(),
            discrete_inflexions: discrete_inflexion_count(b),
            rotation_number: b.rotation_number(),
            rotation_value: b.rotation_value,
            origin_passes: b.origin_passes,
            length: l,
            signed_area: a,
            scheme: b.scheme.to_ascii(n_arcs),
        })
        .collect();

    let mut checks = Vec::new();
    let mut check = |name: &str, pass: bool, residual: f64, detail: String, warning: bool| {
        checks.push(Check { name: name.into(), pass, residual, detail, warning });
    };

    let rot_res = branches.iter().map(|b| (b.rotation_value - b.rotation_value.round()).abs()).fold(0.0, f64::max);
    check("rotation_numbers_integral", rot_res < 1e-3, rot_res, String::new(), false);

    let odd_cusps: Vec<usize> = branches.iter().filter(|b| b.cusps % 2 == 1).map(|b| b.id).collect();
    check("branch_cusps_even", odd_cusps.is_empty(), odd_cusps.len() as f64, format!("odd: {odd_cusps:?}"), false);
    let odd_infl: Vec<usize> = branches.iter().filter(|b| b.inflexions % 2 == 1).map(|b| b.id).collect();
    check("branch_inflexions_even", odd_infl.is_empty(), odd_infl.len() as f64, format!("odd: {odd_infl:?}"), false);

    let total_infl: usize = branches.iter().map(|b| b.inflexions).sum();
    let half = inflexions / 2;
    let expected = if inflexions == 0 { 0 } else { 2 * two_m - 2 * half };
    check(
        "inflexion_total",
        total_infl == expected,
        (total_infl as f64 - expected as f64).abs(),
        format!("total {total_infl}, 4m - 2n = {expected}"),
        false,
    );

    let origin: Vec<&BranchSummary> = branches.iter().filter(|b| b.origin_passes > 0).collect();
    let twice = origin.iter().all(|b| b.origin_passes == 2);
    check(
        "origin_branches",
        origin.len() == half && twice,
        (origin.len() as f64 - half as f64).abs(),
        format!("{} branches through the origin, expected {half}", origin.len()),
        false,
    );
    let mod4 = origin.iter().all(|b| b.inflexions % 4 == 2);
    check("origin_branch_inflexions_mod4", mod4, 0.0, String::new(), false);

    let parity: Vec<_> = an.branches.iter().flat_map(|b| half_branch_parity(&an.arcs, b)).collect();
    let bad = parity.iter().filter(|p| !p.pass).count();
    check("half_branch_cusp_parity", bad == 0, bad as f64, format!("{} half-branches", parity.len()), false);

    let mismatch: Vec<usize> = branches.iter().filter(|b| b.inflexions != b.discrete_inflexions).map(|b| b.id).collect();
    check("inflexion_routes_agree", mismatch.is_empty(), mismatch.len() as f64, format!("differ on {mismatch:?}"), true);

    let gap = an.branches.iter().map(|b| b.max_joint_gap).fold(0.0, f64::max) / diameter;
    check("joint_gaps", gap <= crate::caustic::SNAP_GAP, gap, "relative to diameter".into(), false);

    let pooled = an.pooled_points();
    let neg: Vec<Vec2> = pooled.iter().map(|p| *p * -1.0).collect();
    let sym = hausdorff_points(&pooled, &neg)? / diameter;
    check("central_symmetry", sym < 1e-3, sym, "relative to diameter".into(), false);

    let convex_oval = inflexions == 0 && (profile.turn() - std::f64::consts::TAU).abs() < 1e-9;
    if convex_oval && !branches.is_empty() {
        let l_sc: f64 = branches.iter().map(|b| b.length).sum();
        let a_sc: f64 = branches.iter().map(|b| b.signed_area).sum();
        let e = an.oval_wigner_area()?;
        let rl = (l_sc - 2.0 * length).abs() / (2.0 * length);
        check("oval_length", rl < OVAL_TOL, rl, format!("L_SC = {l_sc}, 2L = {}", 2.0 * length), false);
        let rhs = 4.0 * area + 8.0 * e.abs();
        let ra = (a_sc - rhs).abs() / rhs.abs().max(1e-300);
        check("oval_area", ra < OVAL_TOL, ra, format!("A_SC = {a_sc}, 4A + 8|A_E| = {rhs}"), false);
    }
    if let Some(n) = curve.rosette_n() {
        let ok = branches.iter().all(|b| b.rotation_number == n as i64);
        check("rosette_rotation_numbers", ok, 0.0, format!("all equal to {n}"), false);
        let count_ok = branches.len() == (2 * n - 1) as usize;
        check("rosette_branch_count", count_ok, 0.0, format!("{} branches", branches.len()), false);
    }

    let pass = checks.iter().all(|c| c.pass || c.warning);
    Ok(AnalysisReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        input_hash: None,
        resolution: an.resolution,
        curve: CurveSummary {
            kind: curve.kind(),
            reversed: an.reversed,
            rosette_n: curve.rosette_n(),
            inflexions,
            two_m,
            length,
            signed_area: area,
            diameter,
        },
        parallel_points: profile
            .parallel_points()
            .iter()
            .enumerate()
            .map(|(index, p)| ParallelPointEntry { index, s: p.s, lifted: p.lifted, inflexion: p.inflexion })
            .collect(),
        arc_sets: an
            .arcs
            .sets
            .iter()
            .map(|s| ArcSetEntry { index: s.index, lower: s.lower, width: s.width, arcs: s.arcs.clone() })
            .collect(),
        branches,
        checks,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn failing(r: &AnalysisReport) -> Vec<&Check> {
        r.checks.iter().filter(|c| !c.pass && !c.warning).collect()
    }

    #[test]
    fn circle_report() {
        let r = analyze(&fixtures::circle(), 256).unwrap().report().unwrap();
        assert!(r.pass, "{:?}", failing(&r));
        assert_eq!(r.branches.len(), 1);
        assert_eq!(r.branches[0].cusps, 0);
        assert_eq!(r.branches[0].rotation_number, 1);
        assert!(r.checks.iter().any(|c| c.name == "oval_area"));
    }

    #[test]
    fn inflexion_reports() {
        for c in [fixtures::two_inflexion_curve(), fixtures::four_inflexion_curve()] {
            let r = analyze(&c, 512).unwrap().report().unwrap();
            assert!(r.pass, "{:?}", failing(&r));
        }
    }

    #[test]
    fn clockwise_input_is_reversed() {
        let c = fixtures::two_inflexion_curve();
        let cw = c.reversed().unwrap();
        let an = analyze(&cw, 256).unwrap();
        assert!(an.reversed);
        let r = an.report().unwrap();
        assert!(r.pass, "{:?}", failing(&r));
        assert!(r.curve.signed_area > 0.0);
    }

    #[test]
    fn measures_match_polyline() {
        for c in [fixtures::two_inflexion_curve(), fixtures::four_inflexion_curve(), fixtures::lopsided_oval()] {
            let an = analyze(&c, 2048).unwrap();
            for (b, &(l, a)) in an.branches.iter().zip(&an.measures) {
                let poly = b.polyline();
                let pl = crate::geom::polyline_length(&poly, false);
                let pa = crate::geom::shoelace_area(&poly[..poly.len() - 1]);
                assert!((pl - l).abs() < 1e-5 * l, "length {l} vs {pl}");
                assert!((pa - a).abs() < 1e-5 * l * l, "area {a} vs {pa}");
            }
        }
    }
}
