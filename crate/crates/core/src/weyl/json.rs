use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{RegionKind, WeylRegion};
use crate::moebius::Circle;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleJson {
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceJson {
    pub delta_center: f64,
    pub delta_radius: f64,
}

/// Wire form of a region: complex numbers as `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionJson {
    pub kind: RegionKind,
    pub circles: Vec<CircleJson>,
    pub vertices: Vec<[f64; 2]>,
    pub vertex_angle: Option<f64>,
    pub degenerate: bool,
    pub order: usize,
    pub convergence: Option<ConvergenceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_a: Option<f64>,
    #[serde(default)]
    pub empty: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

// adding 0.0 turns -0.0 into 0.0
fn num(x: f64) -> f64 {
    x + 0.0
}

fn pair(w: Complex64) -> [f64; 2] {
    [num(w.re), num(w.im)]
}

impl From<&Circle> for CircleJson {
    fn from(k: &Circle) -> Self {
        CircleJson {
            center: pair(k.center),
            radius: num(k.radius),
        }
    }
}

impl From<&WeylRegion> for RegionJson {
    fn from(r: &WeylRegion) -> Self {
        RegionJson {
            kind: r.kind,
            circles: r.circles.iter().map(CircleJson::from).collect(),
            vertices: r.vertices.iter().map(|&v| pair(v)).collect(),
            vertex_angle: r.vertex_angle.map(num),
            degenerate: r.degenerate,
            order: r.order,
            convergence: r.convergence.map(|c| ConvergenceJson {
                delta_center: num(c.delta_center),
                delta_radius: num(c.delta_radius),
            }),
            t_a: r.t_a.map(num),
            empty: r.empty,
            diagnostics: r.diagnostics.clone(),
        }
    }
}
