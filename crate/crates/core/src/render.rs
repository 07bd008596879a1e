//! SVG output for layouts. Output bytes depend only on the layout.

use std::f64::consts::TAU;
use std::fmt::Write;

use crate::layout::{ConvexDrawing, Side};
use crate::packing::PackingLayout;

pub const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

const R: f64 = 200.0;
const MARGIN: f64 = 130.0;

fn at(x: f64, radius: f64, n: usize) -> (f64, f64) {
    let th = -TAU * x / n as f64;
    (radius * th.cos(), radius * th.sin())
}

fn outer_path(a: usize, b: usize, n: usize) -> String {
    let span = (b - a) as f64;
    let steps = (b - a) * 6;
    let mut d = String::new();
    for i in 0..=steps {
        let x = a as f64 + span * i as f64 / steps as f64;
        let bulge = 0.45 * (x - a as f64) * (b as f64 - x) / (n as f64 / 2.0).powi(2);
        let (px, py) = at(x, R * (1.0 + bulge), n);
        let _ = write!(d, "{}{:.2},{:.2}", if i == 0 { "M" } else { " L" }, px, py);
    }
    d
}

fn drawing_svg(out: &mut String, d: &ConvexDrawing, color: &str) {
    let n = d.n;
    let _ = writeln!(out, r#"<g stroke="{color}" fill="none" stroke-width="1.6">"#);
    for e in &d.edges {
        match e.side {
            Side::Inner => {
                let (x1, y1) = at(e.a as f64, R, n);
                let (x2, y2) = at(e.b as f64, R, n);
                let _ = writeln!(
                    out,
                    r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#
                );
            }
            Side::Outer => {
                let _ = writeln!(out, r#"<path d="{}"/>"#, outer_path(e.a, e.b, n));
            }
        }
    }
    out.push_str("</g>\n");
}

/// Positions on a circle (clockwise from the right), one color per drawing,
/// inner edges as chords and outer edges as arcs outside the circle.
pub fn render_svg(layout: &PackingLayout) -> String {
    let n = layout.n;
    let size = 2.0 * (R + MARGIN);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size:.0}" height="{size:.0}" viewBox="{:.0} {:.0} {size:.0} {size:.0}">"#,
        -(R + MARGIN),
        -(R + MARGIN)
    );
    let _ = writeln!(
        out,
        r##"<circle cx="0" cy="0" r="{R:.0}" fill="none" stroke="#bbbbbb" stroke-dasharray="3 3"/>"##
    );
    for (i, d) in layout.drawings.iter().enumerate() {
        drawing_svg(&mut out, d, PALETTE[i % PALETTE.len()]);
    }
    out.push_str("<g fill=\"#222222\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" dominant-baseline=\"central\">\n");
    for p in 0..n {
        let (x, y) = at(p as f64, R, n);
        let (lx, ly) = at(p as f64, R - 14.0, n);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3.5"/>"#);
        let _ = writeln!(out, r#"<text x="{lx:.2}" y="{ly:.2}">v{}</text>"#, p + 1);
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::packing::{place_copies, Checks};

    #[test]
    fn deterministic_and_colored() {
        let l = place_copies(4, 4, 2, Checks::Verified).unwrap();
        let a = render_svg(&l);
        assert_eq!(a, render_svg(&l));
        assert!(a.contains(PALETTE[0]) && a.contains(PALETTE[1]));
        assert!(!a.contains(PALETTE[2]));
        assert!(a.contains(">v1<") && a.contains(">v14<"));
        assert_eq!(a.matches("<line").count(), 26);
    }

    #[test]
    fn outer_edges_become_paths() {
        let l = crate::packing::halve_by_sides(&place_copies(4, 4, 2, Checks::Verified).unwrap());
        let s = render_svg(&l);
        assert_eq!(s.matches("<path").count(), 13);
    }
}
