//! Static SVG pictures of regions.
//!
//! The viewport is the bounding box plus a margin of 5% of its larger side,
//! and every primitive kind has a fixed style, so equal regions always give
//! byte-identical output. The imaginary axis points up.

use std::fmt::Write;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::region::{Primitive, SpectralRegion};
use crate::scalar::{rational_to_f64, ExactScalar};

pub const DISK_FILL: &str = "#9ecae1";
pub const DISK_STROKE: &str = "#3182bd";
pub const CIRCLE_STROKE: &str = "#d62728";
pub const SEGMENT_STROKE: &str = "#2ca02c";
pub const POINT_FILL: &str = "#000000";

/// Pixel width of the rendered image; the height follows the aspect ratio.
const WIDTH: f64 = 400.0;

fn num(q: &BigRational) -> String {
    fmt_f64(rational_to_f64(q))
}

fn fmt_f64(x: f64) -> String {
    let s = format!("{x:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

/// Viewport `(x, y, width, height)` in region coordinates with `y` flipped.
pub fn viewport(r: &SpectralRegion) -> (BigRational, BigRational, BigRational, BigRational) {
    let one = BigRational::one();
    let (x0, y0, x1, y1) = r.bounds().unwrap_or_else(|| (-one.clone(), -one.clone(), one.clone(), one.clone()));
    let (mut x0, mut y0, mut x1, mut y1) = (x0, y0, x1, y1);
    let span = (&x1 - &x0).max(&y1 - &y0);
    let span = if span.is_zero() {
        x0 -= &one;
        x1 += &one;
        y0 -= &one;
        y1 += &one;
        BigRational::from_integer(2.into())
    } else {
        span
    };
    let margin = span / BigRational::from_integer(20.into());
    let w = &x1 - &x0 + &margin + &margin;
    let h = &y1 - &y0 + &margin + &margin;
    (x0 - &margin, -(y1 + &margin), w, h)
}

fn pt(z: &ExactScalar) -> (String, String) {
    (num(z.re()), num(&-z.im().clone()))
}

fn layer(p: &Primitive) -> u8 {
    match p {
        Primitive::Disk { .. } => 0,
        Primitive::Circle { .. } => 1,
        Primitive::Segment(..) => 2,
        Primitive::Point(_) => 3,
    }
}

/// Render a region as a standalone SVG document.
pub fn render_svg(r: &SpectralRegion) -> String {
    let (vx, vy, vw, vh) = viewport(r);
    let (fw, fh) = (rational_to_f64(&vw), rational_to_f64(&vh));
    let height = WIDTH * fh / fw;
    let stroke = fmt_f64(fw.max(fh) / 200.0);
    let dot = fmt_f64(fw.max(fh) / 100.0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        fmt_f64(WIDTH),
        fmt_f64(height),
        num(&vx),
        num(&vy),
        num(&vw),
        num(&vh)
    );
    let _ = writeln!(out, "  <title>{r}</title>");
    let mut pieces: Vec<&Primitive> = r.primitives().iter().collect();
    pieces.sort_by_key(|p| layer(p));
    for p in pieces {
        match p {
            Primitive::Disk { center, radius } => {
                let (cx, cy) = pt(center);
                let _ = writeln!(
                    out,
                    r#"  <circle class="disk" cx="{cx}" cy="{cy}" r="{}" fill="{DISK_FILL}" stroke="{DISK_STROKE}" stroke-width="{stroke}"/>"#,
                    num(radius)
                );
            }
            Primitive::Circle { center, radius } => {
                let (cx, cy) = pt(center);
                let _ = writeln!(
                    out,
                    r#"  <circle class="circle" cx="{cx}" cy="{cy}" r="{}" fill="none" stroke="{CIRCLE_STROKE}" stroke-width="{stroke}"/>"#,
                    num(radius)
                );
            }
            Primitive::Segment(a, b) => {
                let ((x1, y1), (x2, y2)) = (pt(a), pt(b));
                let _ = writeln!(
                    out,
                    r#"  <line class="segment" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{SEGMENT_STROKE}" stroke-width="{stroke}"/>"#
                );
            }
            Primitive::Point(z) => {
                let (cx, cy) = pt(z);
                let _ = writeln!(out, r#"  <circle class="point" cx="{cx}" cy="{cy}" r="{dot}" fill="{POINT_FILL}"/>"#);
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
