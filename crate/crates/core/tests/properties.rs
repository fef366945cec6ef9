use std::f64::consts::PI;

use proptest::prelude::*;
use secant_caustic::analysis::analyze;
use secant_caustic::caustic::caustic_curvature;
use secant_caustic::oracle::{brute_secant_cloud, default_tol_par, hausdorff, hausdorff_points};
use secant_caustic::rosette::{blaschke_area, branch_forms, shoelace_area, verify_rosette_theorem};
use secant_caustic::{Error, PlanarCurve, TrigSeries, Vec2};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn oval_support() -> impl Strategy<Value = TrigSeries> {
    (2.0..4.0f64, prop::collection::vec(-0.06..0.06f64, 6), prop::collection::vec(-0.06..0.06f64, 6)).prop_map(
        |(a0, c, s)| {
            let cos: Vec<(u32, f64)> = (0..3).map(|i| (i as u32 + 2, c[i])).collect();
            let sin: Vec<(u32, f64)> = (0..3).map(|i| (i as u32 + 2, s[i])).collect();
            TrigSeries::from_terms(1, a0, &cos, &sin)
        },
    )
}

fn rosette_support() -> impl Strategy<Value = TrigSeries> {
    (2u32..=3, 0.6..1.2f64, -0.3..0.3f64, -0.1..0.1f64).prop_map(|(n, b1, s1, c3)| {
        TrigSeries::from_terms(n, 2.5, &[(1, b1), (3, c3)], &[(1, s1)])
    })
}

/// Limaçon-type curve with two inflexions, randomly perturbed.
fn dimpled_curve() -> impl Strategy<Value = PlanarCurve> {
    (0.45..0.65f64, -0.03..0.03f64, -0.03..0.03f64, 0.0..2.0 * PI).prop_map(|(d, e, f, rot)| {
        let x = TrigSeries::from_terms(1, 0.0, &[(1, 1.5), (2, d), (3, e)], &[]);
        let y = TrigSeries::from_terms(1, 0.0, &[(3, f)], &[(1, 1.5), (2, d)]);
        let (c, s) = (rot.cos(), rot.sin());
        PlanarCurve::from_parametric(x.scale(c).add_scaled(&y, -s), x.scale(s).add_scaled(&y, c)).unwrap()
    })
}

fn cloud(len: usize) -> impl Strategy<Value = Vec<Vec2>> {
    prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64).prop_map(|(x, y)| Vec2::new(x, y)), 1..len)
}

fn brute_hausdorff(a: &[Vec2], b: &[Vec2]) -> f64 {
    let d = |x: &[Vec2], y: &[Vec2]| {
        x.iter().map(|p| y.iter().map(|q| p.distance(*q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    d(a, b).max(d(b, a))
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn ovals_have_one_smooth_branch(p in oval_support()) {
        let curve = PlanarCurve::from_support_function(p).unwrap();
        let an = analyze(&curve, 512).unwrap();
        prop_assert_eq!(an.branches.len(), 1);
        let b = &an.branches[0];
        prop_assert_eq!(b.rotation_number(), 1);
        prop_assert!(b.cusps.is_empty());
        prop_assert!(b.inflexions.is_empty());

        let (l_sc, a_sc) = an.measures[0];
        let (l, a) = (curve.length().unwrap(), curve.signed_area().unwrap());
        prop_assert!((l_sc - 2.0 * l).abs() <= 1e-6 * l_sc);
        let a_e = an.oval_wigner_area().unwrap();
        prop_assert!((a_sc - 4.0 * a - 8.0 * a_e.abs()).abs() <= 1e-6 * a_sc);

        let pts = an.pooled_points();
        let neg: Vec<Vec2> = pts.iter().map(|q| *q * -1.0).collect();
        prop_assert!(hausdorff_points(&pts, &neg).unwrap() < 1e-3 * curve.diameter());
    }

    #[test]
    fn rosette_forms_agree_with_polygons(p in rosette_support()) {
        let period = p.period();
        for f in branch_forms(&p).unwrap() {
            let blaschke = blaschke_area(&f.support, period).unwrap();
            let shoelace = shoelace_area(&f.support, period, 4096);
            prop_assert!((blaschke - shoelace).abs() <= 1e-8 * (1.0 + blaschke.abs()), "k={} {} vs {}", f.k, blaschke, shoelace);
            prop_assert_eq!(f.cusps() % 2, 0);
        }
    }

    #[test]
    fn support_shift_is_translation(p in rosette_support(), j in -5i64..5, theta in -10.0..10.0f64) {
        let q = p.shift_pi(j);
        let expected = p.eval(theta + j as f64 * PI);
        prop_assert!((q.eval(theta) - expected).abs() < 1e-12 * (1.0 + expected.abs()));
    }

    #[test]
    fn caustic_curvature_is_homogeneous(ka in -5.0..5.0f64, kb in -5.0..5.0f64, scale in 0.1..10.0f64) {
        prop_assume!((ka - kb).abs() > 1e-3 && ka.abs() > 1e-3 && kb.abs() > 1e-3);
        let k = caustic_curvature(ka, kb).unwrap();
        prop_assert_eq!(k.signum(), ka.signum());
        // radius of curvature of the caustic is the difference of the radii
        prop_assert!((1.0 / k.abs() - (ka - kb).abs() / (ka * kb).abs()).abs() <= 1e-12 / k.abs());
        let scaled = caustic_curvature(scale * ka, scale * kb).unwrap();
        prop_assert!((scaled - scale * k).abs() <= 1e-12 * scaled.abs());
    }

    #[test]
    fn equal_curvatures_are_singular(ka in 0.01..5.0f64) {
        let singular = matches!(caustic_curvature(ka, ka), Err(Error::SingularPoint { .. }));
        prop_assert!(singular);
    }

    #[test]
    fn hausdorff_agrees_with_brute_force(a in cloud(60), b in cloud(60)) {
        let h = hausdorff_points(&a, &b).unwrap();
        prop_assert_eq!(h, brute_hausdorff(&a, &b));
        prop_assert_eq!(h, hausdorff_points(&b, &a).unwrap());
    }
}

proptest! {
    #![proptest_config(config(8))]

    #[test]
    fn rosette_theorem_holds(p in rosette_support()) {
        let report = verify_rosette_theorem(&p, 512).unwrap();
        let failing: Vec<_> = report.clauses.iter().filter(|c| !c.pass).map(|c| c.name.clone()).collect();
        prop_assert!(report.pass, "{:?}", failing);
        prop_assert_eq!(report.branches.len() as u32, 2 * report.n - 1);
    }

    #[test]
    fn dimpled_counts(curve in dimpled_curve()) {
        let an = analyze(&curve, 512).unwrap();
        let rows: usize = an.schemes.iter().map(|s| s.len()).sum();
        prop_assert_eq!(rows, an.arcs.expected_rows());
        let report = an.report().unwrap();
        let failing: Vec<_> = report.checks.iter().filter(|c| !c.pass && !c.warning).map(|c| c.name.clone()).collect();
        prop_assert!(report.pass, "{:?}", failing);

        // 2m parallel points, 2n inflexions
        let m = an.profile().m();
        let n = an.profile().extrema().len() / 2;
        prop_assert!(n >= 1);
        let inflexions: usize = an.branches.iter().map(|b| b.inflexions.len()).sum();
        prop_assert_eq!(inflexions, 4 * m - 2 * n);
        prop_assert_eq!(an.branches.iter().filter(|b| b.origin_passes > 0).count(), n);
    }

    #[test]
    fn caustic_tangent_is_parallel_to_curve(curve in dimpled_curve()) {
        let an = analyze(&curve, 1024).unwrap();
        for b in &an.branches {
            let recs = b.records();
            let cusp_at: Vec<usize> = b.cusps.iter().map(|c| c.position).collect();
            for i in 1..recs.len() - 1 {
                // derivative of the quadratic through three records with chord-length spacing
                let (u, v) = (recs[i].point - recs[i - 1].point, recs[i + 1].point - recs[i].point);
                let (h1, h2) = (u.hypot(), v.hypot());
                if h1 < 1e-9 || h2 < 1e-9 {
                    continue;
                }
                let d = v * (h1 / (h2 * (h1 + h2))) + u * (h2 / (h1 * (h1 + h2)));
                let cross = (d * (1.0 / d.hypot())).cross(recs[i].tangent_a).abs();
                // the stencil straddles the cusp itself
                if cusp_at.iter().any(|&c| c.abs_diff(i) <= 1) {
                    continue;
                }
                let near_cusp = cusp_at.iter().any(|&c| c.abs_diff(i) <= 5);
                prop_assert!(cross < if near_cusp { 1e-2 } else { 1e-4 }, "branch {} record {} of {} cross {} cusps {:?}", b.id, i, recs.len(), cross, cusp_at);
            }
        }
    }

    #[test]
    fn oracle_cloud_is_centrally_symmetric(curve in dimpled_curve()) {
        let n = 512;
        let c = brute_secant_cloud(&curve, n, default_tol_par(n)).unwrap();
        prop_assert_eq!(hausdorff(&c, &c.negated()).unwrap(), 0.0);
    }
}
