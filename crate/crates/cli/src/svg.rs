//! Deterministic SVG drawings of point sets, circle families and blockers.
//! Coordinates are printed at 12 significant digits; nothing here feeds
//! back into computation.

use std::fmt::Write;

use blockade_core::rational;
use blockade_core::{convex_hull, CircleFamily, PointSet};
use serde::Deserialize;

/// Red, blue, yellow, then more, one per gadget.
const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#e6b800", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

#[derive(Debug, Clone, Default, Deserialize)]
pub struct Scene {
    #[serde(flatten)]
    pub points: PointSet,
    #[serde(flatten, default)]
    pub family: CircleFamily,
    #[serde(rename = "Q", default)]
    pub q: Option<PointSet>,
    #[serde(default = "yes")]
    pub hull: bool,
}

fn yes() -> bool {
    true
}

/// `v` rounded to 12 significant digits, printed without trailing noise.
pub fn num(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    let s = format!("{rounded}");
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

struct Frame {
    min_x: f64,
    min_y: f64,
    max_x: f64,
    max_y: f64,
}

impl Frame {
    fn grow(&mut self, x: f64, y: f64, r: f64) {
        self.min_x = self.min_x.min(x - r);
        self.max_x = self.max_x.max(x + r);
        self.min_y = self.min_y.min(y - r);
        self.max_y = self.max_y.max(y + r);
    }
}

fn gadget_of(label: &str) -> Option<usize> {
    label.rsplit_once('_').and_then(|(_, i)| i.parse().ok())
}

fn color(gadget: Option<usize>) -> &'static str {
    match gadget {
        Some(i) if i >= 1 => PALETTE[(i - 1) % PALETTE.len()],
        _ => "#333333",
    }
}

pub fn render(scene: &Scene) -> String {
    let pts: Vec<(f64, f64)> = scene.points.points.iter().map(|p| p.to_f64()).collect();
    let circles: Vec<(f64, f64, f64)> = scene
        .family
        .circles
        .iter()
        .map(|c| {
            let (x, y) = c.circle.center.to_f64();
            (x, y, rational::to_f64(&c.circle.radius_sq).sqrt())
        })
        .collect();
    let qs: Vec<(f64, f64)> = scene.q.iter().flat_map(|q| q.points.iter().map(|p| p.to_f64())).collect();

    let mut f =
        Frame { min_x: f64::INFINITY, min_y: f64::INFINITY, max_x: f64::NEG_INFINITY, max_y: f64::NEG_INFINITY };
    for &(x, y) in pts.iter().chain(&qs) {
        f.grow(x, y, 0.0);
    }
    for &(x, y, r) in &circles {
        f.grow(x, y, r);
    }
    if !f.min_x.is_finite() {
        f = Frame { min_x: -1.0, min_y: -1.0, max_x: 1.0, max_y: 1.0 };
    }
    let span = (f.max_x - f.min_x).max(f.max_y - f.min_y).max(1e-9);
    let pad = span * 0.05;
    let dot = span * 0.006;
    let (vx, vy) = (f.min_x - pad, -(f.max_y + pad));
    let (vw, vh) = (f.max_x - f.min_x + 2.0 * pad, f.max_y - f.min_y + 2.0 * pad);
    let width = 960.0;
    let height = (width * vh / vw).clamp(120.0, 4000.0);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num(width),
        num(height.round()),
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    );
    s.push_str("<g fill=\"none\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\">\n");

    if scene.hull && scene.points.len() >= 2 {
        let h = convex_hull(&scene.points.points);
        let path: Vec<String> = h
            .vertices
            .iter()
            .map(|v| {
                let (x, y) = v.to_f64();
                format!("{},{}", num(x), num(-y))
            })
            .collect();
        let _ = writeln!(
            s,
            r##"<polygon class="hull" points="{}" stroke="#999999" fill="#f2f2f2" vector-effect="non-scaling-stroke"/>"##,
            path.join(" ")
        );
    }
    for (c, &(x, y, r)) in scene.family.circles.iter().zip(&circles) {
        let _ = writeln!(
            s,
            r#"<circle class="circle" cx="{}" cy="{}" r="{}" stroke="{}" vector-effect="non-scaling-stroke"><title>{}</title></circle>"#,
            num(x),
            num(-y),
            num(r),
            color(Some(c.gadget)),
            c.name()
        );
    }
    s.push_str("</g>\n<g stroke=\"none\">\n");
    for (i, &(x, y)) in pts.iter().enumerate() {
        let label = scene.points.label(i);
        let _ = writeln!(
            s,
            r#"<circle class="point" cx="{}" cy="{}" r="{}" fill="{}"><title>{}</title></circle>"#,
            num(x),
            num(-y),
            num(dot),
            color(gadget_of(&label)),
            label
        );
    }
    for (i, &(x, y)) in qs.iter().enumerate() {
        let _ = writeln!(
            s,
            r##"<rect class="blocker" x="{}" y="{}" width="{}" height="{}" fill="#000000"><title>q_{}</title></rect>"##,
            num(x - dot),
            num(-y - dot),
            num(2.0 * dot),
            num(2.0 * dot),
            i
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}
