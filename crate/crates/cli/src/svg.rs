use std::fmt::Write as _;
use std::io::{self, Write};

use surfkit::planegeom::{Point, Primitive, Scene};

/// Fixed precision with trailing zeros removed, so equal scenes always give
/// equal bytes.
fn num(v: f64) -> String {
    let mut s = format!("{v:.6}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".to_string();
    }
    s
}

// SVG's y axis points down.
fn coords(p: Point) -> String {
    format!("{},{}", num(p.x), num(-p.y))
}

/// Writes `s` as a standalone SVG document. The view box is the bounding
/// box padded by 5% on each side; points become circles and segments and
/// polygons become paths.
pub fn render_svg(s: &Scene, out: &mut impl Write) -> io::Result<()> {
    let (lo, hi) = s.bounds().ok_or_else(|| {
        io::Error::new(io::ErrorKind::InvalidInput, "cannot render an empty scene")
    })?;
    let (mut w, mut h) = (hi.x - lo.x, hi.y - lo.y);
    let size = if w.max(h) > 0.0 { w.max(h) } else { 1.0 };
    if w == 0.0 {
        w = size;
    }
    if h == 0.0 {
        h = size;
    }
    let (cx, cy) = ((lo.x + hi.x) / 2.0, (lo.y + hi.y) / 2.0);
    let (w, h) = (w * 1.1, h * 1.1);
    let (x0, y0) = (cx - w / 2.0, -cy - h / 2.0);
    let stroke = num(size * 0.002);
    let radius = num(size * 0.004);

    let mut doc = String::new();
    writeln!(doc, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        doc,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
        num(x0),
        num(y0),
        num(w),
        num(h)
    )
    .unwrap();
    writeln!(
        doc,
        r#"<g fill="none" stroke="black" stroke-width="{stroke}" stroke-linejoin="round" stroke-linecap="round">"#
    )
    .unwrap();
    for prim in &s.primitives {
        match prim {
            Primitive::Point(p) => writeln!(
                doc,
                r#"<circle cx="{}" cy="{}" r="{radius}" fill="black" stroke="none"/>"#,
                num(p.x),
                num(-p.y)
            ),
            Primitive::Segment(p, q) => {
                writeln!(doc, r#"<path d="M{} L{}"/>"#, coords(*p), coords(*q))
            }
            Primitive::Polygon(pts) => {
                let mut d = format!("M{}", coords(pts[0]));
                for p in &pts[1..] {
                    write!(d, " L{}", coords(*p)).unwrap();
                }
                writeln!(doc, r#"<path d="{d} Z"/>"#)
            }
        }
        .unwrap();
    }
    doc.push_str("</g>\n</svg>\n");
    out.write_all(doc.as_bytes())
}
