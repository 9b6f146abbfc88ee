//! SVG pictures of instances and solutions.
//!
//! Boundary in blue, constraints in red, input points in black. With a
//! solution, the remaining triangulation edges are grey, obtuse triangles are
//! filled, and Steiner points get their own marker. Coordinates are rounded
//! to six decimals for display only.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{classify_triangle, point_on_segment, Point, TriangleClass};
use crate::model::{Instance, Solution};
use crate::verify::triangular_faces;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SteinerMarker {
    Square,
    Diamond,
    Cross,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RenderStyle {
    pub boundary_color: String,
    pub constraint_color: String,
    pub point_color: String,
    pub edge_color: String,
    pub obtuse_fill: String,
    pub steiner_color: String,
    pub steiner_marker: SteinerMarker,
    /// Width of the picture in pixels; the height follows the aspect ratio.
    pub width: u32,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            boundary_color: "blue".into(),
            constraint_color: "red".into(),
            point_color: "black".into(),
            edge_color: "grey".into(),
            obtuse_fill: "rgba(255,140,0,0.45)".into(),
            steiner_color: "black".into(),
            steiner_marker: SteinerMarker::Square,
            width: 800,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{field} is not a usable CSS color: {value:?}")]
pub struct StyleError {
    pub field: &'static str,
    pub value: String,
}

/// Accepts named colors, `#rgb`-style hex and functional notations such as
/// `rgb(...)`, `rgba(...)`, `hsl(...)`.
fn is_css_color(s: &str) -> bool {
    if let Some(hex) = s.strip_prefix('#') {
        return matches!(hex.len(), 3 | 4 | 6 | 8) && hex.chars().all(|c| c.is_ascii_hexdigit());
    }
    if let Some(open) = s.find('(') {
        let name = &s[..open];
        let args = &s[open + 1..];
        return matches!(name, "rgb" | "rgba" | "hsl" | "hsla")
            && args.ends_with(')')
            && args[..args.len() - 1]
                .chars()
                .all(|c| c.is_ascii_digit() || " ,.%/".contains(c));
    }
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphabetic())
}

impl RenderStyle {
    pub fn validate(&self) -> Result<(), StyleError> {
        let fields = [
            ("boundary_color", &self.boundary_color),
            ("constraint_color", &self.constraint_color),
            ("point_color", &self.point_color),
            ("edge_color", &self.edge_color),
            ("obtuse_fill", &self.obtuse_fill),
            ("steiner_color", &self.steiner_color),
        ];
        for (field, value) in fields {
            if !is_css_color(value) {
                return Err(StyleError {
                    field,
                    value: value.clone(),
                });
            }
        }
        Ok(())
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

struct Frame {
    min_x: f64,
    max_y: f64,
    margin: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn fit<'a>(points: impl Iterator<Item = &'a Point>) -> Frame {
        let (mut lx, mut ly, mut hx, mut hy) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            let (x, y) = p.to_f64();
            lx = lx.min(x);
            ly = ly.min(y);
            hx = hx.max(x);
            hy = hy.max(y);
        }
        if !lx.is_finite() {
            (lx, ly, hx, hy) = (0.0, 0.0, 1.0, 1.0);
        }
        let span = (hx - lx).max(hy - ly).max(f64::MIN_POSITIVE);
        let margin = 0.05 * span;
        Frame {
            min_x: lx,
            max_y: hy,
            margin,
            width: hx - lx + 2.0 * margin,
            height: hy - ly + 2.0 * margin,
        }
    }

    /// Display coordinates with the y axis pointing down.
    fn map(&self, p: &Point) -> (String, String) {
        let (x, y) = p.to_f64();
        (num(x - self.min_x + self.margin), num(self.max_y - y + self.margin))
    }

    fn unit(&self) -> f64 {
        self.width.max(self.height) / 400.0
    }
}

fn line(out: &mut String, f: &Frame, a: &Point, b: &Point) {
    let (x1, y1) = f.map(a);
    let (x2, y2) = f.map(b);
    writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#).unwrap();
}

fn points_attr(f: &Frame, pts: &[&Point]) -> String {
    pts.iter()
        .map(|p| {
            let (x, y) = f.map(p);
            format!("{x},{y}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Deterministic SVG for an instance and, optionally, a solution of it.
pub fn render_svg(inst: &Instance, sol: Option<&Solution>, style: &RenderStyle) -> String {
    let steiner: &[Point] = sol.map(|s| s.steiner_points()).unwrap_or(&[]);
    let verts: Vec<&Point> = inst.points().iter().chain(steiner).collect();
    let f = Frame::fit(verts.iter().copied());
    let u = f.unit();
    let height = (style.width as f64 * f.height / f.width).round().max(1.0) as u32;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{height}" viewBox="0 0 {} {}">"#,
        style.width,
        num(f.width),
        num(f.height)
    )
    .unwrap();

    if let Some(sol) = sol {
        let mut obtuse: Vec<[usize; 3]> = triangular_faces(inst, sol)
            .into_iter()
            .filter(|t| classify_triangle(verts[t[0]], verts[t[1]], verts[t[2]]) == TriangleClass::Obtuse)
            .collect();
        obtuse.sort_unstable();
        if !obtuse.is_empty() {
            writeln!(out, r#"<g id="obtuse" fill="{}" stroke="none">"#, style.obtuse_fill).unwrap();
            for t in &obtuse {
                let pts = [verts[t[0]], verts[t[1]], verts[t[2]]];
                writeln!(out, r#"<polygon points="{}"/>"#, points_attr(&f, &pts)).unwrap();
            }
            out.push_str("</g>\n");
        }

        let pts = inst.points();
        let segments: Vec<(usize, usize)> = inst.boundary_edges().chain(inst.constraints().iter().copied()).collect();
        let mut interior: Vec<(usize, usize)> = sol
            .edges()
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .filter(|&(_, b)| b < verts.len())
            .filter(|&(a, b)| {
                !segments
                    .iter()
                    .any(|&(i, j)| point_on_segment(verts[a], &pts[i], &pts[j]) && point_on_segment(verts[b], &pts[i], &pts[j]))
            })
            .collect();
        interior.sort_unstable();
        if !interior.is_empty() {
            writeln!(
                out,
                r#"<g id="triangulation" stroke="{}" stroke-width="{}" fill="none">"#,
                style.edge_color,
                num(0.6 * u)
            )
            .unwrap();
            for (a, b) in interior {
                line(&mut out, &f, verts[a], verts[b]);
            }
            out.push_str("</g>\n");
        }
    }

    if !inst.constraints().is_empty() {
        writeln!(
            out,
            r#"<g id="constraints" stroke="{}" stroke-width="{}">"#,
            style.constraint_color,
            num(1.2 * u)
        )
        .unwrap();
        for &(a, b) in inst.constraints() {
            line(&mut out, &f, &inst.points()[a], &inst.points()[b]);
        }
        out.push_str("</g>\n");
    }

    writeln!(
        out,
        r#"<polygon id="boundary" fill="none" stroke="{}" stroke-width="{}" points="{}"/>"#,
        style.boundary_color,
        num(1.5 * u),
        points_attr(&f, &inst.boundary_points())
    )
    .unwrap();

    writeln!(out, r#"<g id="points" fill="{}">"#, style.point_color).unwrap();
    for p in inst.points() {
        let (x, y) = f.map(p);
        writeln!(out, r#"<circle cx="{x}" cy="{y}" r="{}"/>"#, num(2.0 * u)).unwrap();
    }
    out.push_str("</g>\n");

    if !steiner.is_empty() {
        let r = 2.2 * u;
        match style.steiner_marker {
            SteinerMarker::Cross => writeln!(
                out,
                r#"<g id="steiner" stroke="{}" stroke-width="{}">"#,
                style.steiner_color,
                num(0.8 * u)
            ),
            _ => writeln!(out, r#"<g id="steiner" fill="{}">"#, style.steiner_color),
        }
        .unwrap();
        for p in steiner {
            let (x, y) = p.to_f64();
            let cx = x - f.min_x + f.margin;
            let cy = f.max_y - y + f.margin;
            match style.steiner_marker {
                SteinerMarker::Square => writeln!(
                    out,
                    r#"<rect x="{}" y="{}" width="{}" height="{}"/>"#,
                    num(cx - r),
                    num(cy - r),
                    num(2.0 * r),
                    num(2.0 * r)
                ),
                SteinerMarker::Diamond => writeln!(
                    out,
                    r#"<polygon points="{},{} {},{} {},{} {},{}"/>"#,
                    num(cx),
                    num(cy - r),
                    num(cx + r),
                    num(cy),
                    num(cx),
                    num(cy + r),
                    num(cx - r),
                    num(cy)
                ),
                SteinerMarker::Cross => writeln!(
                    out,
                    r#"<path d="M{} {}L{} {}M{} {}L{} {}"/>"#,
                    num(cx - r),
                    num(cy - r),
                    num(cx + r),
                    num(cy + r),
                    num(cx - r),
                    num(cy + r),
                    num(cx + r),
                    num(cy - r)
                ),
            }
            .unwrap();
        }
        out.push_str("</g>\n");
    }

    out.push_str("</svg>\n");
    out
}
