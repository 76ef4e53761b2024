//! Deterministic SVG of a region. The imaginary axis points up, so a point
//! `w` is drawn at `(re w, -im w)`; the view box pads the geometry by 10%.

use std::fmt::Write as _;

use num_complex::Complex64;
use weyl_core::weyl::{boundary_samples, sample_interior};
use weyl_core::WeylRegion;

const PAD: f64 = 0.1;

struct Bounds {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Bounds {
    fn new() -> Self {
        Bounds {
            x0: f64::INFINITY,
            x1: f64::NEG_INFINITY,
            y0: f64::INFINITY,
            y1: f64::NEG_INFINITY,
        }
    }

    fn add(&mut self, w: Complex64, r: f64) {
        if !(w.is_finite() && r.is_finite()) {
            return;
        }
        self.x0 = self.x0.min(w.re - r);
        self.x1 = self.x1.max(w.re + r);
        self.y0 = self.y0.min(w.im - r);
        self.y1 = self.y1.max(w.im + r);
    }

    /// `(min x, min y, width, height)` in drawing coordinates.
    fn view_box(&self) -> (f64, f64, f64, f64) {
        if !self.x0.is_finite() {
            return (-1.0, -1.0, 2.0, 2.0);
        }
        let w = (self.x1 - self.x0).max(1e-12);
        let h = (self.y1 - self.y0).max(1e-12);
        (self.x0 - PAD * w, -self.y1 - PAD * h, w * (1.0 + 2.0 * PAD), h * (1.0 + 2.0 * PAD))
    }
}

pub fn render(region: &WeylRegion, samples: usize, seed: u64) -> String {
    let points = region
        .parametrization
        .map(|p| sample_interior(&p, samples, seed))
        .unwrap_or_default();
    let mut bounds = Bounds::new();
    for k in &region.circles {
        bounds.add(k.center, k.radius);
    }
    for &v in &region.vertices {
        bounds.add(v, 0.0);
    }
    // sampled values far outside the circles would flatten the picture
    let inside: Vec<Complex64> = points.into_iter().filter(|&w| region.contains(w)).collect();
    let (x, y, w, h) = bounds.view_box();
    let stroke = w.max(h) / 300.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x} {y} {w} {h}" width="600" height="{}">"#,
        (600.0 * h / w).round()
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="{stroke}">"#);
    for k in &region.circles {
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="{}"/>"#,
            k.center.re + 0.0,
            -k.center.im + 0.0,
            k.radius
        );
    }
    let _ = writeln!(out, "</g>");
    if let Ok(pts) = boundary_samples(region, 64) {
        let _ = writeln!(out, r#"<g fill="none" stroke="red" stroke-width="{}">"#, 2.0 * stroke);
        for arc in 0..region.arcs.len() {
            let path: Vec<String> = pts
                .iter()
                .filter(|p| p.arc == arc && region.circles[region.arcs[arc].circle].radius.is_finite())
                .map(|p| format!("{},{}", p.value.re + 0.0, -p.value.im + 0.0))
                .collect();
            if path.len() > 1 {
                let _ = writeln!(out, r#"<polyline points="{}"/>"#, path.join(" "));
            }
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, r#"<g fill="blue">"#);
    for p in &inside {
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{}"/>"#, p.re + 0.0, -p.im + 0.0, stroke);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g fill="green">"#);
    for v in &region.vertices {
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="{}"/>"#, v.re + 0.0, -v.im + 0.0, 3.0 * stroke);
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}
