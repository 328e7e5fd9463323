//! Schematic SVG output: tropical lines as three rays from their center, points
//! as labeled dots, amoeba boundaries as polylines.

use std::fmt::Write as _;

use super::{BranchSamples, TropLine, TropPoint};

const UNIT: f64 = 40.0;
const MARGIN: i64 = 3;

fn header(out: &mut String, half: f64) {
    let size = 2.0 * half;
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="{} {} {size} {size}">"#,
        -half, -half
    );
    let _ = writeln!(
        out,
        r##"<line x1="{a}" y1="0" x2="{half}" y2="0" stroke="#ccc"/><line x1="0" y1="{a}" x2="0" y2="{half}" stroke="#ccc"/>"##,
        a = -half
    );
}

/// Lines and points with labels; the view is centered on the origin and wide
/// enough for every object, at 40 px per unit.
pub fn render_tropical_svg(lines: &[(String, TropLine)], points: &[(String, TropPoint)]) -> String {
    let reach = lines
        .iter()
        .map(|(_, l)| l.center)
        .chain(points.iter().map(|(_, p)| *p))
        .map(|p| p.x.abs().max(p.y.abs()))
        .max()
        .unwrap_or(0)
        + MARGIN;
    let half = reach as f64 * UNIT;
    let far = 2.0 * half;
    let mut out = String::new();
    header(&mut out, half);
    for (label, l) in lines {
        let (cx, cy) = (l.center.x as f64 * UNIT, -(l.center.y as f64) * UNIT);
        let _ = writeln!(
            out,
            r#"<g class="line" stroke="steelblue" fill="none"><path d="M {cx} {cy} L {} {cy} M {cx} {cy} L {cx} {} M {cx} {cy} L {} {}"/></g>"#,
            cx - far,
            cy + far,
            cx + far,
            cy - far
        );
        let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="12" fill="steelblue">{label}</text>"#, cx + 4.0, cy + 14.0);
    }
    for (label, p) in points {
        let (px, py) = (p.x as f64 * UNIT, -(p.y as f64) * UNIT);
        let _ = writeln!(out, r#"<circle cx="{px}" cy="{py}" r="4" fill="crimson"/>"#);
        let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="12" fill="crimson">{label}</text>"#, px + 5.0, py - 5.0);
    }
    out.push_str("</svg>\n");
    out
}

pub fn render_amoeba_svg(samples: &[BranchSamples]) -> String {
    let reach = samples
        .iter()
        .flat_map(|s| s.points.iter())
        .map(|(x, y)| x.abs().max(y.abs()))
        .fold(0.0f64, f64::max)
        .ceil()
        + 1.0;
    let half = reach * UNIT;
    let mut out = String::new();
    header(&mut out, half);
    for s in samples {
        let pts: Vec<String> = s.points.iter().map(|(x, y)| format!("{:.3},{:.3}", x * UNIT, -y * UNIT)).collect();
        let _ = writeln!(
            out,
            r#"<polyline class="{}" points="{}" stroke="darkgreen" fill="none"/>"#,
            s.branch.name(),
            pts.join(" ")
        );
    }
    out.push_str("</svg>\n");
    out
}
