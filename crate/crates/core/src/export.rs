//! CSV and SVG rendering of geography datasets.
//!
//! Coordinates stay rational until the final conversion to fixed
//! three-decimal strings.

use std::fmt::Write as _;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::geography::{FigureDataset, GeographyPoint, Rational};
use crate::surface::DivisorClass;

pub const CSV_HEADER: [&str; 8] = ["x", "y", "kind", "e", "a", "b", "d", "base"];

/// One row per (point, realizing polarization).
pub fn points_csv(points: &[GeographyPoint]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Invariant(format!("csv: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for p in points {
        for pol in &p.provenance {
            let (e, a, b, d) = match pol.hyperplane() {
                DivisorClass::Plane { d } => (String::new(), String::new(), String::new(), d.to_string()),
                DivisorClass::Hirzebruch { e, alpha, beta } => {
                    (e.to_string(), alpha.to_string(), beta.to_string(), String::new())
                }
            };
            w.write_record([
                p.x.to_string(),
                p.y.to_string(),
                "point".to_string(),
                e,
                a,
                b,
                d,
                pol.base().tag().to_string(),
            ])
            .map_err(io)?;
        }
    }
    let bytes = w.into_inner().map_err(|e| Error::Invariant(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Invariant(format!("csv: {e}")))
}

/// Round half away from zero to three decimals.
pub fn fixed3(r: &Rational) -> String {
    let scaled = *r * Ratio::from(1000);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let twice = 2 * rem.abs();
    let mut q = q;
    if twice >= *scaled.denom() {
        q += scaled.numer().signum();
    }
    let sign = if q < 0 { "-" } else { "" };
    let q = q.abs();
    format!("{sign}{}.{:03}", q / 1000, q % 1000)
}

const WIDTH: i128 = 800;
const HEIGHT: i128 = 600;
const MARGIN: i128 = 50;

struct Frame {
    x0: Rational,
    y0: Rational,
    sx: Rational,
    sy: Rational,
}

impl Frame {
    fn new(data: &FigureDataset) -> Self {
        let w = &data.window;
        let x0 = Rational::from(i128::from(w.x0));
        let y0 = Rational::from(i128::from(w.y0));
        let sx = Rational::new(WIDTH - 2 * MARGIN, i128::from(w.x1 - w.x0));
        let sy = Rational::new(HEIGHT - 2 * MARGIN, i128::from(w.y1 - w.y0));
        Frame { x0, y0, sx, sy }
    }

    fn px(&self, x: Rational) -> String {
        fixed3(&self.px_exact(x))
    }

    fn py(&self, y: Rational) -> String {
        fixed3(&self.py_exact(y))
    }

    fn px_exact(&self, x: Rational) -> Rational {
        (x - self.x0) * self.sx + MARGIN
    }

    fn py_exact(&self, y: Rational) -> Rational {
        Rational::from(HEIGHT - MARGIN) - (y - self.y0) * self.sy
    }
}

/// SVG 1.1 document: solid `l(a)` lines, dashed Castelnuovo line, circles
/// for marked points. Each element carries its data coordinates.
pub fn render_svg(data: &FigureDataset) -> String {
    let frame = Frame::new(data);
    let w = &data.window;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let title = match data.figure {
        Some(f) => format!("Figure {}", f.number()),
        None => "Geography".to_string(),
    };
    let _ = writeln!(s, "<title>{title}: (chi, c1^2) geography</title>");
    let _ = writeln!(
        s,
        r#"<g id="axes" stroke="gray" stroke-width="1" data-window="{},{},{},{}">"#,
        w.x0, w.x1, w.y0, w.y1
    );
    let (left, right) = (frame.px(i128::from(w.x0).into()), frame.px(i128::from(w.x1).into()));
    let (bottom, top) = (frame.py(i128::from(w.y0).into()), frame.py(i128::from(w.y1).into()));
    let _ = writeln!(s, r#"<line x1="{left}" y1="{bottom}" x2="{right}" y2="{bottom}"/>"#);
    let _ = writeln!(s, r#"<line x1="{left}" y1="{bottom}" x2="{left}" y2="{top}"/>"#);
    let x_label_at = fixed3(&(frame.py_exact(i128::from(w.y0).into()) + 30));
    let y_label_at = fixed3(&(frame.py_exact(i128::from(w.y1).into()) - 10));
    let _ = writeln!(s, r#"<text x="{right}" y="{x_label_at}" font-size="14" text-anchor="end">x = chi</text>"#);
    let _ = writeln!(s, r#"<text x="{left}" y="{y_label_at}" font-size="14">y = c1^2</text>"#);
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="lines" fill="none" stroke="black" stroke-width="1.5">"#);
    for seg in &data.lines {
        let style = if seg.dashed { "dashed" } else { "solid" };
        let dash = if seg.dashed { r#" stroke-dasharray="8,5""# } else { "" };
        let _ = writeln!(
            s,
            r#"<path class="line {style}" data-line="{}" d="M {} {} L {} {}"{dash}/>"#,
            seg.line.kind,
            frame.px(seg.from.0),
            frame.py(seg.from.1),
            frame.px(seg.to.0),
            frame.py(seg.to.1),
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="points" fill="black">"#);
    for p in &data.points {
        let _ = writeln!(
            s,
            r#"<circle class="point" data-x="{}" data-y="{}" cx="{}" cy="{}" r="3"/>"#,
            p.x,
            p.y,
            frame.px(p.x.into()),
            frame.py(p.y.into()),
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
