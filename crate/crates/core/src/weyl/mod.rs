//! Weyl disks and lens regions for the Hamburger, Stieltjes, interval and
//! gap problems, built from the kernels at a fixed `z` in the upper half-plane.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moebius::{Circle, Extended, MoebiusImage, MoebiusMap};
use crate::orthopoly::OrthoSystem;

mod gap;
mod hamburger;
mod interval;
mod json;
mod stieltjes;

pub use gap::{
    cone_angle, gap_circles, gap_closed_form, intersection_point, multi_gap_region, step_function_arg, Step,
};
pub use hamburger::{hamburger_disk, hamburger_region, parameter_base_map};
pub use interval::{interval_closed_form, interval_region};
pub use json::{CircleJson, ConvergenceJson, RegionJson};
pub use stieltjes::{stieltjes_closed_form, stieltjes_region};

/// Two vertices closer than this (relative to `1 + |v|`) make a point region.
pub const DEGENERATE_RTOL: f64 = 1e-10;

/// Slack of the membership predicate, relative to `1 + r`.
pub const CONTAINS_RTOL: f64 = 1e-9;

/// Parameter samples used by the built-in membership self-check.
pub const SELF_CHECK_SAMPLES: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegionKind {
    HamburgerDisk,
    StieltjesLens,
    IntervalLensEven,
    IntervalLensOdd,
    GapLens,
    MultiGap,
}

/// Boundary arc: `map(t)` for `t` running from `start` to `end`, lying on
/// `circles[circle]`. Infinite endpoints are the projective point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub circle: usize,
    pub map: MoebiusMap,
    pub start: f64,
    pub end: f64,
}

/// Set of admissible parameter values `tau`; the region is `map(domain)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ParamDomain {
    /// Closed upper half-plane together with infinity.
    UpperHalfPlane,
    /// `apex + u d1 + v d2` for `u, v >= 0`, together with infinity.
    Wedge { apex: f64, d1: Complex64, d2: Complex64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Parametrization {
    pub map: MoebiusMap,
    pub domain: ParamDomain,
}

/// Change of the Hamburger disk between orders `n - 1` and `n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Convergence {
    pub delta_center: f64,
    pub delta_radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeylRegion {
    pub kind: RegionKind,
    pub z: Complex64,
    /// The order argument the region was built with (`m` for the interval problem).
    pub order: usize,
    pub circles: Vec<Circle>,
    pub vertices: Vec<Complex64>,
    pub vertex_angle: Option<f64>,
    pub arcs: Vec<Arc>,
    pub degenerate: bool,
    /// Only a multi-gap intersection can come out empty.
    pub empty: bool,
    pub convergence: Option<Convergence>,
    pub parametrization: Option<Parametrization>,
    /// Truncation-level `-Q_n(a) / P_n(a)` of the Stieltjes problem.
    pub t_a: Option<f64>,
    pub diagnostics: Vec<String>,
}

impl WeylRegion {
    /// Closed-disk intersection membership.
    pub fn contains(&self, w: Complex64) -> bool {
        contains(self, w)
    }
}

pub fn contains(region: &WeylRegion, w: Complex64) -> bool {
    !region.empty
        && region
            .circles
            .iter()
            .all(|k| k.contains(w, CONTAINS_RTOL * (1.0 + k.radius)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundarySample {
    pub arc: usize,
    pub t: f64,
    pub value: Complex64,
}

/// `count` points along every arc, endpoints included. Samples at a pole of
/// the arc map are dropped.
pub fn boundary_samples(region: &WeylRegion, count: usize) -> Result<Vec<BoundarySample>> {
    if count < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 samples, got {count}")));
    }
    let mut out = Vec::with_capacity(count * region.arcs.len());
    for (j, arc) in region.arcs.iter().enumerate() {
        for i in 0..count {
            let u = i as f64 / (count - 1) as f64;
            let t = arc_parameter(arc.start, arc.end, u);
            if let Extended::Finite(value) = arc.map.eval(t) {
                if value.is_finite() {
                    out.push(BoundarySample { arc: j, t, value });
                }
            }
        }
    }
    Ok(out)
}

fn arc_parameter(start: f64, end: f64, u: f64) -> f64 {
    match (start.is_infinite(), end.is_infinite()) {
        (true, true) => match u {
            u if u <= 0.0 => start,
            u if u >= 1.0 => end,
            u => (std::f64::consts::PI * (u - 0.5)).tan(),
        },
        (false, true) => {
            if u >= 1.0 {
                end
            } else {
                start + u / (1.0 - u)
            }
        }
        _ => start + u * (end - start),
    }
}

/// Angle between the first two arcs where they leave their common start,
/// from central differences. Each arc map is first re-centred at `t`, so the
/// difference does not cancel in the coefficients; the step is `1e-6` times
/// the distance from `t` to the pole.
pub fn numeric_vertex_angle(region: &WeylRegion) -> Option<f64> {
    let tangent = |arc: &Arc| -> Option<Complex64> {
        let t = arc.start;
        if !t.is_finite() {
            return None;
        }
        let m = arc.map;
        let (num, den) = (m.alpha * t + m.beta, m.gamma * t + m.delta);
        let pole = if m.gamma.norm() > 0.0 { (den / m.gamma).norm() } else { f64::INFINITY };
        let h = 1e-6 * if pole.is_finite() { pole } else { t.abs().max(1.0) };
        let at = |s: f64| (m.alpha * s + num) / (m.gamma * s + den);
        let d = (at(h) - at(-h)) / (2.0 * h);
        d.is_finite().then_some(d)
    };
    let d1 = tangent(region.arcs.first()?)?;
    let d2 = tangent(region.arcs.get(1)?)?;
    Some((d2 / d1).arg().abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MembershipCheck {
    pub samples: usize,
    pub violations: usize,
    /// Largest `(|w - m| - r) / (1 + r)` seen over all circles and samples.
    pub worst_excess: f64,
}

/// Map `count` random admissible parameters through the region's
/// parametrization and test the images against the disk intersection.
/// `None` when the region carries no parametrization.
pub fn validate_membership(region: &WeylRegion, count: usize, seed: u64) -> Option<MembershipCheck> {
    let param = region.parametrization?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut check = MembershipCheck {
        samples: 0,
        violations: 0,
        worst_excess: f64::NEG_INFINITY,
    };
    for _ in 0..count {
        let tau = sample_parameter(&param.domain, &mut rng);
        let Some(w) = param.map.eval_complex(tau).finite() else {
            continue;
        };
        if !w.is_finite() {
            continue;
        }
        check.samples += 1;
        let excess = region
            .circles
            .iter()
            .map(|k| ((w - k.center).norm() - k.radius) / (1.0 + k.radius))
            .fold(f64::NEG_INFINITY, f64::max);
        check.worst_excess = check.worst_excess.max(excess);
        if excess > CONTAINS_RTOL {
            check.violations += 1;
        }
    }
    Some(check)
}

/// Images of random admissible parameters, heavy-tailed so that large
/// `|tau|` is visited.
pub fn sample_interior(param: &Parametrization, count: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .filter_map(|_| param.map.eval_complex(sample_parameter(&param.domain, &mut rng)).finite())
        .filter(|w| w.is_finite())
        .collect()
}

fn sample_parameter<R: Rng>(domain: &ParamDomain, rng: &mut R) -> Complex64 {
    match *domain {
        ParamDomain::UpperHalfPlane => {
            let u: f64 = rng.random();
            let x = (std::f64::consts::PI * (u - 0.5)).tan();
            Complex64::new(x, half_line(rng))
        }
        ParamDomain::Wedge { apex, d1, d2 } => apex + half_line(rng) * d1 + half_line(rng) * d2,
    }
}

fn half_line<R: Rng>(rng: &mut R) -> f64 {
    let u: f64 = rng.random();
    (std::f64::consts::FRAC_PI_2 * u).tan()
}

pub(crate) fn check_z(z: Complex64) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::NonFiniteInput(format!("z = {z}")));
    }
    if z.im <= 1e-12 * z.norm().max(1.0) {
        return Err(Error::RealAxisZ);
    }
    Ok(())
}

pub(crate) fn check_order(sys: &OrthoSystem, n: usize) -> Result<()> {
    if n > sys.order() {
        return Err(Error::NotCertified {
            order: n,
            certified: sys.order(),
        });
    }
    Ok(())
}

pub(crate) fn check_interval(a: f64, b: f64) -> Result<()> {
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::NonFiniteInput(format!("endpoints {a}, {b}")));
    }
    if !(a < b) {
        return Err(Error::BadInterval { a, b });
    }
    Ok(())
}

pub(crate) fn circle_of(image: MoebiusImage) -> Result<Circle> {
    match image {
        MoebiusImage::Circle(k) => Ok(k),
        MoebiusImage::Point(p) => Ok(Circle::new(p, 0.0)),
        MoebiusImage::Line { .. } => Err(Error::DegenerateMap),
    }
}

pub(crate) fn map(alpha: Complex64, beta: Complex64, gamma: Complex64, delta: Complex64) -> Result<MoebiusMap> {
    MoebiusMap::new(alpha, beta, gamma, delta)
}

pub(crate) fn det2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    a * d - b * c
}

pub(crate) fn close(u: Complex64, v: Complex64, rtol: f64) -> bool {
    (u - v).norm() <= rtol * (1.0 + u.norm().max(v.norm()))
}

pub(crate) fn vertices_coincide(v: &[Complex64]) -> bool {
    v.len() == 2 && close(v[0], v[1], DEGENERATE_RTOL)
}

/// Run the sampled membership self-check and the tangent-angle check, and
/// record any disagreement as a diagnostic.
pub(crate) fn self_check(region: &mut WeylRegion) {
    if let Some(check) = validate_membership(region, SELF_CHECK_SAMPLES, 0) {
        if check.violations > 0 {
            region.diagnostics.push(format!(
                "{} of {} parametrization samples fall outside the disk intersection (worst excess {:e})",
                check.violations, check.samples, check.worst_excess
            ));
        }
    }
    if let (Some(angle), false) = (region.vertex_angle, region.degenerate) {
        if let Some(numeric) = numeric_vertex_angle(region) {
            if (numeric - angle).abs() > 1e-6 {
                region.diagnostics.push(format!(
                    "vertex angle {angle} disagrees with the tangent estimate {numeric}"
                ));
            }
        }
    }
}
