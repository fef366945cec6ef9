//! Secant caustics of closed planar curves.

pub mod analysis;
pub mod arcpair;
pub mod caustic;
pub mod curve;
pub mod error;
pub mod fixtures;
pub mod geom;
pub mod glueing;
pub mod oracle;
pub mod parallel;
pub mod quad;
pub mod rosette;
pub mod series;
pub mod spline;

pub use curve::{CurveKind, CurvePoint, CurveSpec, PlanarCurve};
pub use error::{Error, Result};
pub use geom::Vec2;
pub use series::TrigSeries;
