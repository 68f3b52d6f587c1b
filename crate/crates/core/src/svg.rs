//! Standalone SVG rendering of a covering, the data points and an optional sample.

use std::fmt::Write as _;

use crate::covering::Covering;
use crate::model::Point;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const PAD: f64 = 0.05;

struct Frame {
    x0: f64,
    y1: f64,
    sx: f64,
    sy: f64,
}

impl Frame {
    fn fit(covering: &Covering) -> Self {
        let (mut x0, mut x1, mut y0, mut y1) = (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        );
        for v in covering.rhombi().flat_map(|r| r.vertices()) {
            x0 = x0.min(v.x);
            x1 = x1.max(v.x);
            y0 = y0.min(v.y);
            y1 = y1.max(v.y);
        }
        if !x0.is_finite() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        let w = (x1 - x0).max(f64::EPSILON);
        let h = (y1 - y0).max(f64::EPSILON);
        let (x0, x1) = (x0 - PAD * w, x1 + PAD * w);
        let (y0, y1) = (y0 - PAD * h, y1 + PAD * h);
        Frame {
            x0,
            y1,
            sx: WIDTH / (x1 - x0),
            sy: HEIGHT / (y1 - y0),
        }
    }

    // y grows downward in SVG, so flip
    fn map(&self, p: Point) -> (f64, f64) {
        ((p.x - self.x0) * self.sx, (self.y1 - p.y) * self.sy)
    }
}

/// Renders rhombi (in word order), then sample points, then interpolation points.
///
/// The output depends only on its inputs, so repeated calls are byte-identical.
pub fn emit_svg(covering: &Covering, data_points: &[Point], sample: Option<&[Point]>) -> String {
    let frame = Frame::fit(covering);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(
        out,
        r#"<title>depth {} covering, {} mode, {} rhombi</title>"#,
        covering.depth(),
        covering.mode(),
        covering.len()
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let _ = writeln!(
        out,
        r##"<g id="rhombi" fill="#4a7bd0" fill-opacity="0.2" stroke="#1f3f7a" stroke-width="1">"##
    );
    for r in covering.rhombi() {
        let [v1, v2, v3, v4] = r.vertices().map(|v| frame.map(v));
        let _ = writeln!(
            out,
            r#"<polygon points="{:.3},{:.3} {:.3},{:.3} {:.3},{:.3} {:.3},{:.3}"/>"#,
            v1.0, v1.1, v3.0, v3.1, v2.0, v2.1, v4.0, v4.1
        );
    }
    out.push_str("</g>\n");

    if let Some(points) = sample {
        out.push_str("<g id=\"sample\" fill=\"black\">\n");
        for &p in points {
            let (x, y) = frame.map(p);
            let _ = writeln!(out, r#"<circle cx="{x:.3}" cy="{y:.3}" r="0.4"/>"#);
        }
        out.push_str("</g>\n");
    }

    out.push_str("<g id=\"data\" fill=\"#d0342c\" stroke=\"black\" stroke-width=\"0.5\">\n");
    for &p in data_points {
        let (x, y) = frame.map(p);
        let _ = writeln!(
            out,
            r#"<rect x="{:.3}" y="{:.3}" width="6" height="6"/>"#,
            x - 3.0,
            y - 3.0
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
