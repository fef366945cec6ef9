//! Deterministic file output: JSON with fixed float formatting, CSV, SVG,
//! all written atomically.

use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::Path;

use secant_caustic::caustic::CausticBranch;
use secant_caustic::oracle::PointCloud;
use secant_caustic::Vec2;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

/// Pretty JSON formatter writing every float with 17 significant digits.
struct FixedFloats<'a>(PrettyFormatter<'a>);

impl Formatter for FixedFloats<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }
    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        write!(w, "{:.16e}", value as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloats(PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(io::Error::other)?;
    buf.push(b'\n');
    Ok(buf)
}

/// Writes through a temporary file in the target directory, renamed on success.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn branch_csv(branch: &CausticBranch) -> io::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["branch_id", "s", "t", "x", "y", "kappa_a", "kappa_b", "kappa_sc", "co_oriented"])?;
    for r in branch.records() {
        w.write_record([
            branch.id.to_string(),
            num(r.s),
            num(r.t),
            num(r.point.x),
            num(r.point.y),
            num(r.kappa_a),
            num(r.kappa_b),
            r.kappa_sc.map(num).unwrap_or_default(),
            r.co_oriented.to_string(),
        ])?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

pub fn cloud_csv(cloud: &PointCloud) -> io::Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "y", "i", "j"])?;
    for (p, (i, j)) in cloud.points.iter().zip(&cloud.pairs) {
        w.write_record([num(p.x), num(p.y), i.to_string(), j.to_string()])?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

/// Polylines to draw, with stroke colour and width relative to the diameter.
pub struct Layer {
    pub points: Vec<Vec2>,
    pub closed: bool,
    pub color: &'static str,
    pub width: f64,
}

pub const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

/// SVG of the layers, fitted to their bounding box with a 5% margin. Cusps are
/// filled circles of 0.8% of the diameter; the origin is a cross.
pub fn svg(layers: &[Layer], cusps: &[Vec2]) -> String {
    let origin = [Vec2::new(0.0, 0.0)];
    let all = layers.iter().flat_map(|l| l.points.iter()).chain(cusps).chain(&origin);
    let (mut lo, mut hi) = (Vec2::new(f64::INFINITY, f64::INFINITY), Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    for p in all {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let diameter = (hi - lo).hypot().max(1e-12);
    let m = 0.05 * (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
    let (x0, y0, w, h) = (lo.x - m, lo.y - m, hi.x - lo.x + 2.0 * m, hi.y - lo.y + 2.0 * m);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}" width="800" height="{:.0}">"#,
        x0,
        -(y0 + h),
        w,
        h,
        800.0 * h / w
    );
    let _ = writeln!(out, r#"<g transform="scale(1,-1)" fill="none" stroke-linejoin="round">"#);
    for l in layers {
        if l.points.is_empty() {
            continue;
        }
        let mut d = String::new();
        for (i, p) in l.points.iter().enumerate() {
            let _ = write!(d, "{}{:.6} {:.6}", if i == 0 { "M" } else { " L" }, p.x, p.y);
        }
        if l.closed {
            d.push_str(" Z");
        }
        let _ = writeln!(out, r#"<path d="{d}" stroke="{}" stroke-width="{:.6}"/>"#, l.color, l.width * diameter);
    }
    let r = 0.008 * diameter;
    for c in cusps {
        let _ = writeln!(out, r#"<circle cx="{:.6}" cy="{:.6}" r="{:.6}" fill="black"/>"#, c.x, c.y, r);
    }
    let a = 2.0 * r;
    let _ = writeln!(
        out,
        r#"<path d="M{:.6} 0 L{:.6} 0 M0 {:.6} L0 {:.6}" stroke="black" stroke-width="{:.6}"/>"#,
        -a,
        a,
        -a,
        a,
        0.2 * r
    );
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_fixed_digits() {
        let s = String::from_utf8(to_json(&serde_json::json!({"a": 0.1, "b": [1.0, -2.5], "c": 3})).unwrap()).unwrap();
        assert!(s.contains("\"a\": 1.0000000000000001e-1"));
        assert!(s.contains("-2.5000000000000000e0"));
        assert!(s.contains("\"c\": 3"));
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("x.json");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read(&p).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn svg_has_cusps_and_origin() {
        let l = Layer { points: vec![Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0), Vec2::new(-1.0, 0.0)], closed: true, color: "black", width: 0.002 };
        let s = svg(&[l], &[Vec2::new(0.5, 0.5)]);
        assert_eq!(s.matches("<circle").count(), 1);
        assert!(s.starts_with("<svg"));
    }
}
