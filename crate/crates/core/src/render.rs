//! Static SVG pictures of solved instances.
//!
//! Segments are solid grey, gaps dashed, covers are coloured strokes along
//! the boundary (alternating palette) and stations are filled dots.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geometry::{ArcKind, Point};
use crate::model::{Instance, Solution};

const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#17becf"];

fn path_data(points: &[Point]) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let _ = write!(d, "{}{:.6},{:.6}", if i == 0 { "M" } else { " L" }, p.x, p.y);
    }
    d
}

fn points_attr(points: &[Point]) -> String {
    points
        .iter()
        .map(|p| format!("{:.6},{:.6}", p.x, p.y))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Renders the instance and, when given, a solution. Fails with
/// [`Error::Unsupported`] if any boundary lacks polygon geometry.
pub fn render_svg(instance: &Instance, solution: Option<&Solution>) -> Result<String> {
    let mut min = Point::new(f64::INFINITY, f64::INFINITY);
    let mut max = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for b in instance.boundaries() {
        let placement = b
            .placement()
            .ok_or_else(|| Error::Unsupported(format!("region {} has no polygon geometry", b.region())))?;
        for v in placement.polygon.vertices() {
            min = Point::new(min.x.min(v.x), min.y.min(v.y));
            max = Point::new(max.x.max(v.x), max.y.max(v.y));
        }
    }
    let extent = (max.x - min.x).max(max.y - min.y).max(1e-9);
    let pad = 0.05 * extent;
    let stroke = 0.006 * extent;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}" width="800" height="{:.0}">"#,
        min.x - pad,
        min.y - pad,
        max.x - min.x + 2.0 * pad,
        max.y - min.y + 2.0 * pad,
        800.0 * (max.y - min.y + 2.0 * pad) / (max.x - min.x + 2.0 * pad)
    );

    out.push_str("<g id=\"boundaries\" fill=\"none\">\n");
    for b in instance.boundaries() {
        for arc in b.arcs() {
            let pts = b.trace(arc.start, arc.length)?;
            let (class, dash) = match arc.kind {
                ArcKind::Segment => ("segment", String::new()),
                ArcKind::Gap => ("gap", format!(r#" stroke-dasharray="{:.6} {:.6}""#, 3.0 * stroke, 2.0 * stroke)),
            };
            let _ = writeln!(
                out,
                r##"<path class="{class}" d="{}" stroke="#888888" stroke-width="{:.6}"{dash}/>"##,
                path_data(&pts),
                stroke
            );
        }
    }
    out.push_str("</g>\n");

    if let Some(sol) = solution {
        out.push_str("<g id=\"covers\" fill=\"none\">\n");
        for (i, c) in sol.covers.iter().enumerate() {
            let b = instance
                .boundaries()
                .get(c.region)
                .ok_or_else(|| Error::invalid(format!("cover {i} names unknown region {}", c.region)))?;
            let pts = b.trace(c.start, c.length)?;
            let _ = writeln!(
                out,
                r#"<polyline class="cover" points="{}" stroke="{}" stroke-width="{:.6}" stroke-linecap="round"/>"#,
                points_attr(&pts),
                PALETTE[i % PALETTE.len()],
                2.5 * stroke
            );
        }
        out.push_str("</g>\n<g id=\"stations\">\n");
        for st in &sol.stations {
            let p = match st.point {
                Some(p) => p,
                None => instance
                    .boundaries()
                    .get(st.region)
                    .ok_or_else(|| Error::invalid(format!("station names unknown region {}", st.region)))?
                    .point_at(st.offset)?,
            };
            let _ = writeln!(
                out,
                r##"<circle class="station" cx="{:.6}" cy="{:.6}" r="{:.6}" fill="#000000"/>"##,
                p.x,
                p.y,
                3.0 * stroke
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
