//! Closed forms for the secant caustic and Wigner caustic of `n`-rosettes
//! given by a generalized support function.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::caustic::{rotation_number, trace_all, CausticBranch};
use crate::curve::PlanarCurve;
use crate::error::{Error, Result};
use crate::geom::Vec2;
use crate::glueing::maximal_schemes;
use crate::parallel::AngleProfile;
use crate::quad;
use crate::series::TrigSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchClass {
    Rosette,
    Singular,
}

#[derive(Clone, Debug, Serialize)]
pub struct RosetteBranchForm {
    pub k: u32,
    pub n: u32,
    pub support: TrigSeries,
    pub class: BranchClass,
    /// Zeros of the radius of curvature on `[0, 2nπ)`, the cusps of the branch.
    pub zeros: Vec<f64>,
    pub length: f64,
    pub area: f64,
}

impl RosetteBranchForm {
    pub fn cusps(&self) -> usize {
        self.zeros.len()
    }

    pub fn radius(&self, theta: f64) -> f64 {
        self.support.radius(theta)
    }
}

/// Support function of the branch `SC_k`, `1 ≤ k ≤ 2n − 1`.
pub fn branch_support(p: &TrigSeries, k: u32) -> TrigSeries {
    let n = p.n;
    let sign = |e: u32| if e % 2 == 0 { 1.0 } else { -1.0 };
    if k <= n {
        p.add_scaled(&p.shift_pi(k as i64), sign(k + 1))
    } else {
        p.shift_pi((k - n) as i64).scale(sign(k - n)).add_scaled(p, -1.0)
    }
}

/// Support function `½(p(θ) + (−1)^k p(θ + kπ))` of the Wigner caustic branch `E_{0.5,k}`.
pub fn wigner_branch_form(p: &TrigSeries, k: u32) -> Result<TrigSeries> {
    if k == 0 || k > p.n {
        return Err(Error::InvalidInput(format!("Wigner branch index {k} outside 1..={}", p.n)));
    }
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    Ok(p.add_scaled(&p.shift_pi(k as i64), sign).scale(0.5))
}

/// Parameter length over which `E_{0.5,k}` closes: `nπ` for `k = n`, else `2nπ`.
pub fn wigner_period(n: u32, k: u32) -> f64 {
    if k == n {
        PI * n as f64
    } else {
        2.0 * PI * n as f64
    }
}

/// Whether the parity rule predicts that `SC_k` of an `n`-rosette is a rosette.
pub fn predicted_rosette(n: u32, k: u32) -> bool {
    if n % 2 == 0 {
        k % 2 == 1
    } else if k < n {
        k % 2 == 1
    } else if k == n {
        true
    } else {
        (k - n) % 2 == 1
    }
}

/// Zeros of `p + p″` on `[0, period)`, by a sign scan refined with bisection.
pub fn radius_zeros(p: &TrigSeries, period: f64) -> Vec<f64> {
    let m = 4096;
    let h = period / m as f64;
    let vals: Vec<f64> = (0..=m).map(|i| p.radius(h * i as f64)).collect();
    let scale = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if scale == 0.0 {
        return Vec::new();
    }
    let sig = |v: f64| if v.abs() <= 1e-14 * scale { 0 } else if v > 0.0 { 1 } else { -1 };
    let mut zeros = Vec::new();
    let mut last: Option<(usize, i32)> = None;
    for (i, &v) in vals.iter().enumerate().take(m) {
        let sv = sig(v);
        if sv == 0 {
            continue;
        }
        if let Some((j, sj)) = last {
            if sj != sv {
                let (mut a, mut b) = (h * j as f64, h * i as f64);
                for _ in 0..200 {
                    let c = 0.5 * (a + b);
                    if c <= a || c >= b {
                        break;
                    }
                    if (p.radius(c) > 0.0) == (sj > 0) {
                        a = c;
                    } else {
                        b = c;
                    }
                }
                zeros.push(0.5 * (a + b));
            }
        }
        last = Some((i, sv));
    }
    // close the cycle
    let first = vals.iter().take(m).enumerate().find(|(_, v)| sig(**v) != 0);
    if let (Some((j, sj)), Some((i0, v0))) = (last, first) {
        let s0 = sig(*v0);
        if s0 != sj {
            let (mut a, mut b) = (h * j as f64, period + h * i0 as f64);
            for _ in 0..200 {
                let c = 0.5 * (a + b);
                if c <= a || c >= b {
                    break;
                }
                if (p.radius(c) > 0.0) == (sj > 0) {
                    a = c;
                } else {
                    b = c;
                }
            }
            zeros.push((0.5 * (a + b)).rem_euclid(period));
        }
    }
    zeros.sort_by(f64::total_cmp);
    zeros
}

/// Length `∫|p + p″| dθ` over `[0, period)`, split at the zeros of the radius.
pub fn cauchy_length(p: &TrigSeries, period: f64) -> Result<f64> {
    let mut breaks: Vec<f64> = (0..=64).map(|i| period * i as f64 / 64.0).collect();
    breaks.extend(radius_zeros(p, period));
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-15 * period);
    let mut f = |t: f64| p.radius(t).abs();
    quad::integrate_split(&mut f, &breaks, 1e-15 * period * p.max_abs_coef().max(1e-300), 1e-14)
}

/// Signed area `½∫(p² − p′²) dθ` over `[0, period)`.
pub fn blaschke_area(p: &TrigSeries, period: f64) -> Result<f64> {
    let breaks: Vec<f64> = (0..=64).map(|i| period * i as f64 / 64.0).collect();
    let mut f = |t: f64| {
        let (v, d, _) = p.eval3(t);
        0.5 * (v * v - d * d)
    };
    let scale = p.max_abs_coef().powi(2) * period;
    quad::integrate_split(&mut f, &breaks, 1e-15 * scale.max(1e-300), 1e-14)
}

/// Point of the hedgehog with support `p` at tangential angle `θ`.
pub fn hedgehog_point(p: &TrigSeries, theta: f64) -> Vec2 {
    let (v, d, _) = p.eval3(theta);
    let e = Vec2::from_angle(theta);
    e * v + e.perp() * d
}

/// Shoelace area of the hedgehog sampled at `m` points, Richardson-extrapolated.
pub fn shoelace_area(p: &TrigSeries, period: f64, m: usize) -> f64 {
    let poly = |m: usize| {
        let pts: Vec<Vec2> = (0..m).map(|i| hedgehog_point(p, period * i as f64 / m as f64)).collect();
        crate::geom::shoelace_area(&pts)
    };
    let (a1, a2) = (poly(m), poly(2 * m));
    (4.0 * a2 - a1) / 3.0
}

/// All `2n − 1` branch forms of the secant caustic of the rosette with support `p`.
pub fn branch_forms(p: &TrigSeries) -> Result<Vec<RosetteBranchForm>> {
    PlanarCurve::from_support_function(p.clone())?;
    let n = p.n;
    let period = p.period();
    (1..2 * n)
        .map(|k| {
            let support = branch_support(p, k);
            let zeros = radius_zeros(&support, period);
            let length = cauchy_length(&support, period)?;
            let area = blaschke_area(&support, period)?;
            let class = if zeros.is_empty() { BranchClass::Rosette } else { BranchClass::Singular };
            Ok(RosetteBranchForm { k, n, support, class, zeros, length, area })
        })
        .collect()
}

/// Index `k` of the closed-form branch `SC_k` traced by the scheme pairing
/// arc `j` with arc `j + d`, and the shift taking the top parameter to `θ`.
pub fn branch_index_of_offset(n: u32, d: u32) -> (u32, f64) {
    if d <= n {
        (d, 0.0)
    } else {
        (3 * n - d, -((2 * n - d) as f64) * PI)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RosetteBranchReport {
    pub k: u32,
    pub class: BranchClass,
    pub predicted_class: BranchClass,
    pub length: f64,
    pub area: f64,
    pub cusps: usize,
    pub traced_cusps: Option<usize>,
    pub rotation_number: Option<i64>,
    /// Largest distance of a traced sample from the closed-form branch.
    pub hausdorff: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RosetteReport {
    pub n: u32,
    pub length: f64,
    pub area: f64,
    pub branches: Vec<RosetteBranchReport>,
    pub identities: BTreeMap<String, IdentityCheck>,
    pub clauses: Vec<Clause>,
    pub total_cusps: usize,
    pub pass: bool,
}

/// Relative tolerance for the length and area identities.
pub const IDENTITY_TOL: f64 = 1e-8;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}

fn traced_vs_closed_form(curve: &PlanarCurve, branch: &CausticBranch, form: &TrigSeries, shift: f64) -> f64 {
    let period = curve.period();
    branch
        .records()
        .iter()
        .map(|r| r.point.distance(hedgehog_point(form, (r.s + shift).rem_euclid(period))))
        .fold(0.0, f64::max)
}

/// Checks the secant-caustic theorem for rosettes clause by clause.
pub fn verify_rosette_theorem(p: &TrigSeries, resolution: usize) -> Result<RosetteReport> {
    let curve = PlanarCurve::from_support_function(p.clone())?;
    let n = p.n;
    let period = p.period();
    let forms = branch_forms(p)?;
    let length = cauchy_length(p, period)?;
    let area = blaschke_area(p, period)?;
    let mut clauses = Vec::new();
    let mut clause = |name: &str, pass: bool, residual: f64, detail: String| {
        clauses.push(Clause { name: name.into(), pass, residual, detail });
    };

    clause("branch_count", forms.len() == (2 * n - 1) as usize, 0.0, format!("{} branches", forms.len()));

    let mut refl: f64 = 0.0;
    for k in 1..n {
        let d = forms[(n + k - 1) as usize].support.add_scaled(&forms[(k - 1) as usize].support, 1.0);
        refl = refl.max(d.max_abs_coef());
    }
    clause("reflection_pairing", refl <= 1e-12 * p.max_abs_coef(), refl, "SC_{n+k} = -SC_k on coefficients".into());

    let pn = &forms[(n - 1) as usize].support;
    let sym_sign = if n % 2 == 1 { 1.0 } else { -1.0 };
    let sym = pn.shift_pi(n as i64).add_scaled(pn, -sym_sign).max_abs_coef();
    clause("central_symmetry_sc_n", sym <= 1e-12 * p.max_abs_coef(), sym, "SC_n(θ + nπ) = -SC_n(θ)".into());

    let mut parity_ok = true;
    for f in &forms {
        let predicted = predicted_rosette(n, f.k);
        parity_ok &= predicted == (f.class == BranchClass::Rosette);
    }
    clause("classification_parity", parity_ok, 0.0, "rosette iff parity rule".into());

    let singular: Vec<&RosetteBranchForm> = forms.iter().filter(|f| f.class == BranchClass::Singular).collect();
    let even = singular.iter().all(|f| f.cusps() % 2 == 0 && f.cusps() > 0);
    clause("singular_cusps_even", even, 0.0, format!("{:?}", singular.iter().map(|f| f.cusps()).collect::<Vec<_>>()));

    let total_cusps: usize = forms.iter().map(|f| f.cusps()).sum();
    let minimal = singular.iter().all(|f| f.cusps() >= 2) && total_cusps >= 2 * (n as usize - 1);
    clause("minimal_cusps", minimal, 0.0, format!("total {total_cusps}, lower bound {}", 2 * (n - 1)));
    if *p == TrigSeries::from_terms(n, 2.0, &[(1, 1.0)], &[]) || (n == 1 && p.harmonics() == 0) {
        let exact = singular.iter().all(|f| f.cusps() == 2) && total_cusps == 2 * (n as usize - 1);
        clause("minimal_cusps_witness", exact, 0.0, format!("total {total_cusps}"));
    }

    let mut len_res: f64 = 0.0;
    let mut ineq_ok = true;
    for f in &forms {
        match f.class {
            BranchClass::Rosette => len_res = len_res.max(rel(f.length, 2.0 * length)),
            BranchClass::Singular => ineq_ok &= f.length <= 2.0 * length * (1.0 + IDENTITY_TOL),
        }
    }
    clause("rosette_lengths", len_res < IDENTITY_TOL, len_res, "L = 2 L_R".into());
    clause("singular_lengths", ineq_ok, 0.0, "L <= 2 L_R".into());

    let mut identities = BTreeMap::new();
    let mut id_ok = true;
    for k in 1..=n {
        let e = wigner_branch_form(p, k)?;
        let ea = blaschke_area(&e, wigner_period(n, k))?;
        let coef = if k == n { 8.0 } else { 4.0 };
        let lhs = forms[(k - 1) as usize].area + coef * ea;
        let rhs = 4.0 * area;
        let residual = rel(lhs, rhs);
        let pass = residual < IDENTITY_TOL;
        id_ok &= pass;
        identities.insert(format!("x_k{k}"), IdentityCheck { lhs, rhs, residual, pass });
        if k < n {
            let lhs = forms[(n + k - 1) as usize].area + coef * ea;
            let residual = rel(lhs, rhs);
            let pass = residual < IDENTITY_TOL;
            id_ok &= pass;
            identities.insert(format!("x_k{}", n + k), IdentityCheck { lhs, rhs, residual, pass });
        }
    }
    clause("area_identities", id_ok, identities.values().fold(0.0f64, |m, c| m.max(c.residual)), String::new());

    // cross-check against the traced branches
    let mut reports: Vec<RosetteBranchReport> = forms
        .iter()
        .map(|f| RosetteBranchReport {
            k: f.k,
            class: f.class,
            predicted_class: if predicted_rosette(n, f.k) { BranchClass::Rosette } else { BranchClass::Singular },
            length: f.length,
            area: f.area,
            cusps: f.cusps(),
            traced_cusps: None,
            rotation_number: None,
            hausdorff: None,
        })
        .collect();
    let traced = AngleProfile::new(&curve)
        .and_then(|pr| pr.arc_sets())
        .and_then(|arcs| maximal_schemes(&arcs).map(|s| (arcs, s)))
        .and_then(|(arcs, s)| trace_all(&arcs, &s, resolution).map(|b| (arcs, b)));
    match traced {
        Ok((arcs, branches)) => {
            clause("traced_branch_count", branches.len() == forms.len(), 0.0, format!("{} traced", branches.len()));
            let diameter = curve.diameter();
            let m = arcs.arcs.len();
            let mut rot_ok = true;
            let mut cusp_ok = true;
            let mut haus: f64 = 0.0;
            for b in &branches {
                let r0 = b.scheme.rows[0];
                let d = ((r0.bottom.arc + m - r0.top.arc) % m) as u32;
                let (k, shift) = branch_index_of_offset(n, d);
                let rep = &mut reports[(k - 1) as usize];
                let rot = rotation_number(b).ok();
                rot_ok &= rot == Some(n as i64);
                cusp_ok &= b.cusps.len() == rep.cusps;
                let h = traced_vs_closed_form(&curve, b, &forms[(k - 1) as usize].support, shift);
                haus = haus.max(h / diameter);
                rep.traced_cusps = Some(b.cusps.len());
                rep.rotation_number = rot;
                rep.hausdorff = Some(h);
            }
            clause("rotation_numbers", rot_ok, 0.0, format!("all equal to {n}"));
            clause("traced_cusps_match_zeros", cusp_ok, 0.0, String::new());
            clause("traced_matches_closed_form", haus < 1e-5, haus, "relative to diameter".into());
        }
        Err(e) => clause("traced_branches", false, f64::NAN, e.to_string()),
    }

    let pass = clauses.iter().all(|c| c.pass);
    Ok(RosetteReport { n, length, area, branches: reports, identities, clauses, total_cusps, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::rosette_support;

    #[test]
    fn circle_branch() {
        let p = TrigSeries::constant(1, 1.0);
        let f = branch_forms(&p).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].support.a0, 2.0);
        assert!((f[0].length - 4.0 * PI).abs() < 1e-13);
        assert!((f[0].area - 4.0 * PI).abs() < 1e-12);
        let e = wigner_branch_form(&p, 1).unwrap();
        assert_eq!(e.max_abs_coef(), 0.0);
    }

    #[test]
    fn two_rosette_forms() {
        let p = rosette_support(2);
        let f = branch_forms(&p).unwrap();
        let classes: Vec<BranchClass> = f.iter().map(|x| x.class).collect();
        assert_eq!(classes, vec![BranchClass::Rosette, BranchClass::Singular, BranchClass::Rosette]);
        // ρ_{2,2} = (3/2) cos(θ/2)
        for i in 0..40 {
            let t = 0.31 * i as f64;
            assert!((f[1].radius(t) - 1.5 * (t / 2.0).cos()).abs() < 1e-14);
        }
        assert!((f[0].length - 16.0 * PI).abs() < 1e-8 * 16.0 * PI);
        assert!((f[1].length - 12.0).abs() < 1e-10);
        assert_eq!(f[1].zeros.len(), 2);
        assert!((f[1].zeros[0] - PI).abs() < 1e-12 && (f[1].zeros[1] - 3.0 * PI).abs() < 1e-12);
        let e = wigner_branch_form(&p, 2).unwrap();
        assert!((e.a0 - 2.0).abs() < 1e-15 && e.max_abs_coef() == 2.0);
    }

    #[test]
    fn three_rosette_classification() {
        let f = branch_forms(&rosette_support(3)).unwrap();
        let rosettes: Vec<u32> = f.iter().filter(|x| x.class == BranchClass::Rosette).map(|x| x.k).collect();
        assert_eq!(rosettes, vec![1, 3, 4]);
        for k in 1..=5 {
            assert_eq!(predicted_rosette(3, k), rosettes.contains(&k));
        }
    }

    #[test]
    fn support_identity_pointwise() {
        let p = TrigSeries::from_terms(3, 2.0, &[(1, 0.4), (2, 0.1)], &[(4, 0.05)]);
        for k in 1..6u32 {
            let q = branch_support(&p, k);
            for i in 0..200 {
                let t = 0.0917 * i as f64;
                let expect = if k <= 3 {
                    p.eval(t) + (-1f64).powi(k as i32 + 1) * p.eval(t + k as f64 * PI)
                } else {
                    (-1f64).powi((k - 3) as i32) * p.eval(t + (k - 3) as f64 * PI) - p.eval(t)
                };
                assert!((q.eval(t) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn blaschke_matches_shoelace() {
        let p = rosette_support(2);
        let f = branch_forms(&p).unwrap();
        for form in &f {
            let b = form.area;
            let s = shoelace_area(&form.support, p.period(), 8192);
            assert!(rel(b, s) < 1e-8, "k={}: {b} vs {s}", form.k);
        }
    }

    #[test]
    fn theorem_reports() {
        for n in 1..=3 {
            let r = verify_rosette_theorem(&rosette_support(n), 512).unwrap();
            for c in &r.clauses {
                assert!(c.pass, "n={n}: {c:?}");
            }
            assert_eq!(r.total_cusps, 2 * (n as usize - 1));
        }
        let r = verify_rosette_theorem(&TrigSeries::constant(1, 1.0), 256).unwrap();
        assert!(r.pass, "{:?}", r.clauses);
    }
}
