//! Acceptance suite. Each test prints one PASS/FAIL line for its criterion.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use secant_caustic::analysis::{analyze, Analysis};
use secant_caustic::arcpair::spiral_pair;
use secant_caustic::caustic::{caustic_curvature, discrete_curvature, equidistant_points};
use secant_caustic::fixtures;
use secant_caustic::oracle::{brute_secant_cloud, default_tol_par, hausdorff_points};
use secant_caustic::rosette::{
    blaschke_area, branch_forms, hedgehog_point, verify_rosette_theorem, wigner_branch_form, BranchClass,
};
use secant_caustic::{CurvePoint, PlanarCurve, TrigSeries, Vec2};

const RESOLUTION: usize = 2048;

fn verdict(id: u32, name: &str, pass: bool, detail: String) {
    println!("criterion {id} [{name}]: {} {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {id} failed: {detail}");
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn totals(an: &Analysis) -> (f64, f64) {
    an.measures.iter().fold((0.0, 0.0), |(l, a), m| (l + m.0, a + m.1))
}

#[test]
fn criterion_1_circle_exactness() {
    let start = Instant::now();
    let an = analyze(&fixtures::circle(), RESOLUTION).unwrap();
    let b = &an.branches[0];
    let (l, a) = an.measures[0];
    let elapsed = start.elapsed();
    let (el, ea) = (rel(l, 4.0 * PI), rel(a, 4.0 * PI));
    let rot = secant_caustic::caustic::rotation_number(b);
    let pass = an.branches.len() == 1
        && el < 1e-8
        && ea < 1e-8
        && b.cusps.is_empty()
        && rot == Ok(1)
        && elapsed < Duration::from_secs(1);
    verdict(
        1,
        "circle exactness",
        pass,
        format!(
            "branches {} length err {el:.1e} area err {ea:.1e} cusps {} rotation {rot:?} time {elapsed:.2?}",
            an.branches.len(),
            b.cusps.len()
        ),
    );
}

/// Wigner caustic area of an oval with support `p`, from its own support function.
fn wigner_area(p: &TrigSeries) -> f64 {
    blaschke_area(&wigner_branch_form(p, 1).unwrap(), PI).unwrap()
}

#[test]
fn criterion_2_oval_identities() {
    let cases = [
        ("ellipse", fixtures::ellipse(), secant_caustic::curve::ellipse_support(2.0, 1.0)),
        ("lopsided oval", fixtures::lopsided_oval(), fixtures::lopsided_oval_support()),
    ];
    let mut pass = true;
    let mut detail = String::new();
    for (name, curve, p) in cases {
        let start = Instant::now();
        let an = analyze(&curve, RESOLUTION).unwrap();
        let (l_sc, a_sc) = totals(&an);
        let l_m = curve.length().unwrap();
        let a_m = curve.signed_area().unwrap();
        let a_e = wigner_area(&p);
        let elapsed = start.elapsed();
        let (el, ea) = (rel(l_sc, 2.0 * l_m), rel(a_sc, 4.0 * a_m + 8.0 * a_e.abs()));
        pass &= el < 1e-6 && ea < 1e-6 && elapsed < Duration::from_secs(5);
        detail += &format!("{name}: length err {el:.1e} area err {ea:.1e} |A_E| {:.3e} time {elapsed:.2?}; ", a_e.abs());
    }
    verdict(2, "oval identities", pass, detail);
}

#[test]
fn criterion_3_rosette_theorem() {
    let mut pass = true;
    let mut detail = String::new();
    for n in [2u32, 3] {
        let start = Instant::now();
        let p = fixtures::rosette_support(n);
        let r = verify_rosette_theorem(&p, RESOLUTION).unwrap();
        let elapsed = start.elapsed();
        let clause = |name: &str| r.clauses.iter().find(|c| c.name == name).map(|c| c.pass).unwrap_or(false);
        let singular: Vec<_> = r.branches.iter().filter(|b| b.class == BranchClass::Singular).collect();
        let two_each = singular.iter().all(|b| b.cusps == 2 && b.traced_cusps == Some(2));
        let rot = r.branches.iter().all(|b| b.rotation_number == Some(n as i64));
        let len_res = r
            .branches
            .iter()
            .filter(|b| b.class == BranchClass::Rosette)
            .map(|b| rel(b.length, 2.0 * r.length))
            .fold(0.0, f64::max);
        let singular_ok = singular.iter().all(|b| b.length <= 2.0 * r.length);
        let id_res = r.identities.values().map(|c| c.residual).fold(0.0, f64::max);
        let ok = r.branches.len() == (2 * n - 1) as usize
            && clause("classification_parity")
            && two_each
            && r.total_cusps == 2 * (n as usize - 1)
            && rot
            && len_res < 1e-8
            && singular_ok
            && id_res < 1e-8
            && elapsed < Duration::from_secs(10);
        pass &= ok;
        detail += &format!(
            "n={n}: branches {} cusps {} length err {len_res:.1e} identity err {id_res:.1e} time {elapsed:.2?}; ",
            r.branches.len(),
            r.total_cusps
        );
    }
    verdict(3, "rosette theorem suite", pass, detail);
}

#[test]
fn criterion_4_counting_theorems() {
    let mut pass = true;
    let mut detail = String::new();
    for (two_n, curve) in [(2usize, fixtures::two_inflexion_curve()), (4, fixtures::four_inflexion_curve())] {
        let start = Instant::now();
        let an = analyze(&curve, RESOLUTION).unwrap();
        let elapsed = start.elapsed();
        let n = two_n / 2;
        let inflexions = an.profile().extrema().len();
        let two_m = an.profile().parallel_points().len();
        let total: usize = an.branches.iter().map(|b| b.inflexions.len()).sum();
        let origin: Vec<_> = an.branches.iter().filter(|b| b.origin_passes > 0).collect();
        let ok = inflexions == two_n
            && total == 2 * two_m - 2 * n
            && origin.len() == n
            && origin.iter().all(|b| b.origin_passes == 2 && b.inflexions.len() % 4 == 2)
            && an.branches.iter().all(|b| b.cusps.len() % 2 == 0 && b.inflexions.len() % 2 == 0)
            && elapsed < Duration::from_secs(10);
        pass &= ok;
        detail += &format!(
            "2n={two_n}: 2m={two_m} inflexions {total} (4m-2n={}) origin branches {} time {elapsed:.2?}; ",
            2 * two_m - 2 * n,
            origin.len()
        );
    }
    verdict(4, "counting theorems", pass, detail);
}

#[test]
fn criterion_5_oracle_equivalence() {
    let cases: Vec<(&str, PlanarCurve)> = vec![
        ("circle", fixtures::circle()),
        ("ellipse", fixtures::ellipse()),
        ("lopsided oval", fixtures::lopsided_oval()),
        ("2-rosette", fixtures::rosette(2)),
        ("3-rosette", fixtures::rosette(3)),
        ("2 inflexions", fixtures::two_inflexion_curve()),
        ("4 inflexions", fixtures::four_inflexion_curve()),
    ];
    let n = 2048;
    let mut pass = true;
    let mut detail = String::new();
    for (name, curve) in cases {
        let start = Instant::now();
        let an = analyze(&curve, RESOLUTION).unwrap();
        let cloud = brute_secant_cloud(&curve, n, default_tol_par(n)).unwrap();
        let d = hausdorff_points(&an.pooled_points(), &cloud.points).unwrap() / curve.diameter();
        let elapsed = start.elapsed();
        pass &= d < 1e-2 && elapsed < Duration::from_secs(30);
        detail += &format!("{name}: {d:.2e} ({elapsed:.2?}); ");
    }
    verdict(5, "oracle equivalence", pass, detail);
}

#[test]
fn criterion_6_curvature_formula() {
    let mut candidates = Vec::new();
    for curve in [fixtures::rosette(2), fixtures::two_inflexion_curve(), fixtures::four_inflexion_curve()] {
        let an = analyze(&curve, RESOLUTION).unwrap();
        for b in &an.branches {
            let recs = b.records();
            let pts: Vec<Vec2> = recs.iter().map(|r| r.point).collect();
            let m = recs.len();
            for (i, r) in recs.iter().enumerate() {
                let near_cusp = b.cusps.iter().any(|c| {
                    let d = (i + m - c.position % m) % m;
                    d.min(m - d) <= 5
                });
                if !r.co_oriented || near_cusp || (r.kappa_a - r.kappa_b).abs() <= 0.1 || r.kappa_a == 0.0 {
                    continue;
                }
                let formula = caustic_curvature(r.kappa_a, r.kappa_b_co()).unwrap();
                let fd = discrete_curvature(&pts, i, 1);
                candidates.push((formula, fd));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(20261015);
    let chosen: Vec<_> = candidates.choose_multiple(&mut rng, 100).copied().collect();
    let worst = chosen.iter().map(|(f, d)| (d.abs() - f.abs()).abs() / f.abs()).fold(0.0, f64::max);
    let pass = chosen.len() == 100 && worst < 1e-2;
    verdict(6, "curvature formula", pass, format!("{} of {} points, worst relative error {worst:.2e}", chosen.len(), candidates.len()));
}

/// `γ(s) − γ(t)` and `λγ(s) + (1 − λ)γ(t)` over parameter-uniform `s` on an oval.
fn oval_pairs(an: &Analysis, m: usize) -> Vec<(CurvePoint, CurvePoint)> {
    let arcs = &an.arcs;
    let curve = an.curve();
    let s0 = arcs.arcs[0].start;
    let period = curve.period();
    (0..m)
        .map(|i| {
            let s = s0 + period * i as f64 / m as f64;
            let a = if arcs.arcs[0].contains(s) { 0 } else { 1 };
            let t = arcs.match_parallel(a, 1 - a, s).unwrap().t;
            (curve.point(s), curve.point(t))
        })
        .collect()
}

// E_λ of an oval is a front; it is a regular curve exactly when λρ(a) − (1−λ)ρ(b) keeps its sign.
fn equidistant_is_regular(pairs: &[(CurvePoint, CurvePoint)], lambda: f64) -> bool {
    let speed: Vec<f64> = pairs.iter().map(|(a, b)| lambda / a.curvature.abs() - (1.0 - lambda) / b.curvature.abs()).collect();
    speed.iter().all(|v| *v > 0.0) || speed.iter().all(|v| *v < 0.0)
}

#[test]
fn criterion_7_equidistant_commutation() {
    let mut pass = true;
    let mut detail = String::new();
    for (name, curve) in [("ellipse", fixtures::ellipse()), ("lopsided oval", fixtures::lopsided_oval())] {
        let an = analyze(&curve, RESOLUTION).unwrap();
        let diameter = curve.diameter();
        let pairs = oval_pairs(&an, 4096);
        let fine = analyze(&curve, 4096).unwrap();
        let sc_curve = PlanarCurve::from_samples(pairs.iter().map(|(a, b)| a.position - b.position).collect()).unwrap();
        let sc_an = analyze(&sc_curve, 4096).unwrap();
        for lambda in [0.3, 0.7] {
            let reference: Vec<Vec2> = fine.pooled_points().iter().map(|p| *p * (2.0 * lambda - 1.0)).collect();
            let e_of_sc: Vec<Vec2> = sc_an.branches.iter().flat_map(|b| equidistant_points(b, lambda)).collect();
            let d1 = hausdorff_points(&e_of_sc, &reference).unwrap() / diameter;
            pass &= d1 < 1e-3;
            detail += &format!("{name} λ={lambda}: E(SC) {d1:.1e} ");
            if !equidistant_is_regular(&pairs, lambda) {
                // the ellipse is the required fixture; a cusped equidistant is outside the regular-curve pipeline
                detail += "SC(E) n/a, E has cusps; ";
                continue;
            }
            let e_curve = PlanarCurve::from_samples(
                pairs.iter().map(|(a, b)| a.position * lambda + b.position * (1.0 - lambda)).collect(),
            )
            .unwrap();
            let sc_of_e = analyze(&e_curve, 4096).unwrap().pooled_points();
            let d2 = hausdorff_points(&sc_of_e, &reference).unwrap() / diameter;
            pass &= d2 < 1e-3;
            detail += &format!("SC(E) {d2:.1e}; ");
        }
    }
    verdict(7, "equidistant commutation", pass, detail);
}

#[test]
fn criterion_8_central_symmetry() {
    let mut pass = true;
    let mut detail = String::new();
    for n in [2u32, 3] {
        let p = fixtures::rosette_support(n);
        let period = p.period();
        let m = 4096;
        let cloud: Vec<Vec2> = branch_forms(&p)
            .unwrap()
            .iter()
            .flat_map(|f| (0..m).map(move |i| hedgehog_point(&f.support, period * i as f64 / m as f64)).collect::<Vec<_>>())
            .collect();
        let neg: Vec<Vec2> = cloud.iter().map(|q| *q * -1.0).collect();
        let d = hausdorff_points(&cloud, &neg).unwrap() / fixtures::rosette(n).diameter();
        pass &= d < 1e-6;
        detail += &format!("closed-form {n}-rosette {d:.1e}; ");
    }
    for (name, curve) in [("2 inflexions", fixtures::two_inflexion_curve()), ("4 inflexions", fixtures::four_inflexion_curve())] {
        let pts = analyze(&curve, RESOLUTION).unwrap().pooled_points();
        let neg: Vec<Vec2> = pts.iter().map(|q| *q * -1.0).collect();
        let d = hausdorff_points(&pts, &neg).unwrap() / curve.diameter();
        pass &= d < 1e-3;
        detail += &format!("traced {name} {d:.1e}; ");
    }
    verdict(8, "central symmetry", pass, detail);
}

#[test]
fn criterion_9_two_singular_points() {
    let mut pass = true;
    let mut detail = String::new();
    for a in [0.4, -0.3] {
        let pair = spiral_pair(a);
        let condition = pair.endpoint_condition();
        let certs = pair.detect_cusps(1000);
        let worst = certs.iter().map(|c| c.residual).fold(0.0, f64::max);
        pass &= condition < 0.0 && certs.len() >= 2 && worst < 1e-8 && certs.iter().all(|c| c.same_side);
        detail += &format!("a={a}: condition {condition:.3e} certificates {} residual {worst:.1e}; ", certs.len());
    }
    verdict(9, "two singular points", pass, detail);
}
