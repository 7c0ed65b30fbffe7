//! SVG 1.1 rendering of figure scenes.

use std::fmt::Write;

use lobachevsky_core::figures::{Chart, Scene, Style};
use lobachevsky_core::projection::Projection;
use lobachevsky_core::Result;

pub const CANVAS: f64 = 800.0;
/// Fraction of the canvas left empty on each side of the unit disk.
pub const MARGIN: f64 = 0.05;

fn to_canvas(q: [f64; 2]) -> (f64, f64) {
    let half = CANVAS / 2.0;
    let scale = half - MARGIN * CANVAS;
    (half + scale * q[0], half - scale * q[1])
}

fn stroke(style: Style) -> &'static str {
    match style {
        Style::Primary => r##"stroke="#1f1f1f" stroke-width="2""##,
        Style::Secondary => r##"stroke="#2b62b8" stroke-width="1.5""##,
        Style::Construction => r##"stroke="#8a8a8a" stroke-width="1" stroke-dasharray="6 4""##,
        Style::Mark => r##"stroke="#c0392b" stroke-width="1.2""##,
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders a scene; the same scene and projection always give the same bytes.
pub fn render(scene: &Scene, kind: Projection) -> Result<String> {
    let drawing = scene.draw(kind)?;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{c}" height="{c}" viewBox="0 0 {c} {c}">"#,
        c = CANVAS
    );
    let title = match scene.chart {
        Chart::Disk => format!("{} (r = {}, {} disk)", scene.name, scene.r, kind),
        Chart::Flat => format!("{} (flat chart)", scene.name),
    };
    let _ = writeln!(out, "<title>{}</title>", escape(&title));
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if scene.chart == Chart::Disk {
        let (cx, cy) = to_canvas([0.0, 0.0]);
        let rad = CANVAS / 2.0 - MARGIN * CANVAS;
        let _ = writeln!(
            out,
            r##"<circle cx="{cx:.3}" cy="{cy:.3}" r="{rad:.3}" fill="none" stroke="#555555" stroke-width="1"/>"##
        );
    }
    for (style, path) in &drawing.paths {
        let pts: Vec<String> = path
            .iter()
            .map(|q| {
                let (x, y) = to_canvas(*q);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(out, r#"<polyline fill="none" {} points="{}"/>"#, stroke(*style), pts.join(" "));
    }
    for (style, q) in &drawing.dots {
        let (x, y) = to_canvas(*q);
        let fill = if *style == Style::Mark { "#c0392b" } else { "#1f1f1f" };
        let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3.5" fill="{fill}"/>"#);
    }
    for (q, text) in &drawing.labels {
        let (x, y) = to_canvas(*q);
        let _ = writeln!(
            out,
            r#"<text x="{:.3}" y="{:.3}" font-family="serif" font-size="18">{}</text>"#,
            x + 8.0,
            y - 8.0,
            escape(text)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
