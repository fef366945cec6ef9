//! Reference curves used by the test suites and the command line tool.

use crate::curve::{ellipse_support, PlanarCurve};
use crate::series::TrigSeries;

/// Unit circle as a support-function curve.
pub fn circle() -> PlanarCurve {
    PlanarCurve::circle(1.0)
}

/// Ellipse with semi-axes 2 and 1, via its support function `√(4cos²θ + sin²θ)`.
pub fn ellipse() -> PlanarCurve {
    PlanarCurve::from_support_function(ellipse_support(2.0, 1.0)).expect("ellipse is convex")
}

/// Oval without central symmetry, `p = 3 + 0.2cos3θ + 0.15sin2θ`.
pub fn lopsided_oval_support() -> TrigSeries {
    TrigSeries::from_terms(1, 3.0, &[(3, 0.2)], &[(2, 0.15)])
}

pub fn lopsided_oval() -> PlanarCurve {
    PlanarCurve::from_support_function(lopsided_oval_support()).expect("radius of curvature stays above 0.95")
}

/// `p = 2 + cos(θ/n)`, an `n`-rosette.
pub fn rosette_support(n: u32) -> TrigSeries {
    TrigSeries::from_terms(n, 2.0, &[(1, 1.0)], &[])
}

pub fn rosette(n: u32) -> PlanarCurve {
    PlanarCurve::from_support_function(rosette_support(n)).expect("2 + cos(θ/n) is a rosette")
}

/// Dimpled limaçon with two inflexion points, slightly perturbed to break symmetry.
pub fn two_inflexion_curve() -> PlanarCurve {
    let x = TrigSeries::from_terms(1, 0.5, &[(1, 1.5), (2, 0.5)], &[]);
    let y = TrigSeries::from_terms(1, 0.0, &[(3, 0.03)], &[(1, 1.5), (2, 0.5)]);
    PlanarCurve::from_parametric(x, y).expect("regular")
}

/// Peanut with four inflexion points, slightly perturbed to break symmetry.
pub fn four_inflexion_curve() -> PlanarCurve {
    let x = TrigSeries::from_terms(1, 0.0, &[(1, 1.25), (3, 0.25)], &[(2, 0.02)]);
    let y = TrigSeries::from_terms(1, 0.0, &[(2, 0.03)], &[(1, 0.75), (3, 0.25)]);
    PlanarCurve::from_parametric(x, y).expect("regular")
}
