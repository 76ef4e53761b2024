use num_complex::Complex64;

use super::hamburger::{convergence, disk, parameter_base_map};
use super::{
    check_interval, check_order, check_z, close, det2, map, vertices_coincide, Arc, ParamDomain, Parametrization,
    RegionKind, WeylRegion, CONTAINS_RTOL,
};
use crate::error::{Error, Result};
use crate::kernels::kernels_at;
use crate::moebius::Circle;
use crate::moments::{check_positivity, SupportSpec};
use crate::orthopoly::OrthoSystem;

/// `arg(-(z - a) / (z - b))`: the values at `z` of the functions that are
/// holomorphic and positive on `(a, b)` fill the cone `0 <= arg <= angle`.
pub fn cone_angle(z: Complex64, a: f64, b: f64) -> Result<f64> {
    check_interval(a, b)?;
    check_z(z)?;
    Ok((-(z - a) / (z - b)).arg())
}

/// `c * indicator([lo, hi])`; `lo` may be `-inf` and `hi` may be `+inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub c: f64,
    pub lo: f64,
    pub hi: f64,
}

/// `arg` of `exp(int (1/(t-z) - t/(1+t^2)) h(t) dt)` for a step function
/// `h = sum c_i 1[lo_i, hi_i]`, which is `sum c_i (arg(z - hi_i) - arg(z - lo_i))`.
pub fn step_function_arg(z: Complex64, steps: &[Step]) -> Result<f64> {
    check_z(z)?;
    let arg_from = |x: f64| -> f64 {
        if x == f64::NEG_INFINITY {
            0.0
        } else if x == f64::INFINITY {
            std::f64::consts::PI
        } else {
            (z - x).arg()
        }
    };
    let mut total = 0.0;
    for s in steps {
        if !(0.0..=1.0).contains(&s.c) || s.lo.is_nan() || s.hi.is_nan() || !(s.lo < s.hi) {
            return Err(Error::InvalidParameter(format!("bad step {s:?}")));
        }
        total += s.c * (arg_from(s.hi) - arg_from(s.lo));
    }
    Ok(total)
}

/// Region of the truncated problem on `R \ (a, b)`.
///
/// The arcs are `w_1(t) = -(C(z,a) t - C(z,b)) / (D(z,a) t - D(z,b))` and
/// `w_2(t) = -((z-b) C(z,a) t + (z-a) C(z,b)) / ((z-b) D(z,a) t + (z-a) D(z,b))`
/// for `t in [0, inf]`; the region is the image under `w_1` of the cone
/// `-cone_angle(z, a, b) <= arg tau <= 0`.
pub fn gap_circles(sys: &OrthoSystem, n: usize, z: Complex64, a: f64, b: f64) -> Result<WeylRegion> {
    check_interval(a, b)?;
    check_z(z)?;
    check_order(sys, n)?;
    let ka = kernels_at(sys, n, z, Complex64::new(a, 0.0))?;
    let kb = kernels_at(sys, n, z, Complex64::new(b, 0.0))?;
    let (za, zb) = (z - a, z - b);
    let w1 = map(-ka.c, kb.c, ka.d, -kb.d)?;
    let w2 = map(-zb * ka.c, -za * kb.c, zb * ka.d, za * kb.d)?;
    let vertices = vec![-kb.c / kb.d, -ka.c / ka.d];

    let mut diagnostics = Vec::new();
    let meets = |t: f64, v: Complex64| {
        let ends = (w1.eval(t).finite(), w2.eval(t).finite());
        matches!(ends, (Some(p), Some(q)) if close(p, v, 1e-10) && close(q, v, 1e-10))
    };
    if !meets(0.0, vertices[0]) || !meets(f64::INFINITY, vertices[1]) {
        diagnostics.push("the endpoints of w_1 and w_2 do not coincide".to_string());
    }
    let report = check_positivity(sys.moments(), &SupportSpec::GapComplement(vec![(a, b)]));
    let need = (2 * n).saturating_sub(2) as i64 / 2;
    for r in &report.shifted_results {
        if n >= 1 && r.orders.max_pd_order < need {
            diagnostics.push(format!(
                "localizing matrix of {} is positive definite only through order {}",
                r.constraint, r.orders.max_pd_order
            ));
        }
    }

    let mut region = WeylRegion {
        kind: RegionKind::GapLens,
        z,
        order: n,
        circles: gap_closed_form(sys, n, z, a, b)?.to_vec(),
        degenerate: vertices_coincide(&vertices),
        vertices,
        vertex_angle: Some(cone_angle(z, a, b)?),
        arcs: [w1, w2]
            .iter()
            .enumerate()
            .map(|(i, &m)| Arc {
                circle: i,
                map: m,
                start: 0.0,
                end: f64::INFINITY,
            })
            .collect(),
        empty: false,
        convergence: convergence(sys, n, z)?,
        parametrization: Some(Parametrization {
            map: w1,
            domain: ParamDomain::Wedge {
                apex: 0.0,
                d1: Complex64::new(1.0, 0.0),
                d2: -zb / za,
            },
        }),
        t_a: None,
        diagnostics,
    };
    super::self_check(&mut region);
    Ok(region)
}

/// The Hamburger disk and the circle with center
/// `-|(z-b) C(z,a)  (z-a) C(z,b); (zb-b) D(zb,a)  (zb-a) D(zb,b)| / den`
/// and radius `|(z-a)(z-b) D(a,b) / den|`, where `zb = conj z` and
/// `den = |(z-b) D(z,a)  (z-a) D(z,b); (zb-b) D(zb,a)  (zb-a) D(zb,b)|`.
pub fn gap_closed_form(sys: &OrthoSystem, n: usize, z: Complex64, a: f64, b: f64) -> Result<[Circle; 2]> {
    check_interval(a, b)?;
    check_z(z)?;
    check_order(sys, n)?;
    let (ac, bc) = (Complex64::new(a, 0.0), Complex64::new(b, 0.0));
    let zc = z.conj();
    let (ka, kb) = (kernels_at(sys, n, z, ac)?, kernels_at(sys, n, z, bc)?);
    let (kca, kcb) = (kernels_at(sys, n, zc, ac)?, kernels_at(sys, n, zc, bc)?);
    let dab = kernels_at(sys, n, ac, bc)?.d;
    let lower = ((zc - b) * kca.d, (zc - a) * kcb.d);
    let den = det2((z - b) * ka.d, (z - a) * kb.d, lower.0, lower.1);
    let num = det2((z - b) * ka.c, (z - a) * kb.c, lower.0, lower.1);
    let r2 = ((z - a) * (z - b) * dab / den).norm();
    Ok([disk(sys, n, z)?, Circle::new(-num / den, r2)])
}

/// Intersection of the Hamburger disk with the second circle of every gap.
///
/// With a single gap the result is that gap's lens. With several gaps the
/// region carries no vertices or parametrization, and `empty` reports
/// whether the disks have a common point.
pub fn multi_gap_region(sys: &OrthoSystem, n: usize, z: Complex64, gaps: &[(f64, f64)]) -> Result<WeylRegion> {
    for &(a, b) in gaps {
        check_interval(a, b)?;
    }
    if gaps.windows(2).any(|w| !(w[0].1 < w[1].0)) {
        return Err(Error::OverlappingGaps);
    }
    check_z(z)?;
    check_order(sys, n)?;
    let lenses = gaps
        .iter()
        .map(|&(a, b)| gap_circles(sys, n, z, a, b))
        .collect::<Result<Vec<_>>>()?;

    let mut region = match lenses.as_slice() {
        [single] => single.clone(),
        _ => {
            let base = parameter_base_map(sys, n, z, 0.0)?;
            let mut arcs = vec![Arc {
                circle: 0,
                map: base,
                start: f64::NEG_INFINITY,
                end: f64::INFINITY,
            }];
            let mut circles = vec![disk(sys, n, z)?];
            let mut diagnostics = Vec::new();
            for (i, lens) in lenses.iter().enumerate() {
                circles.push(lens.circles[1]);
                arcs.push(Arc { circle: i + 1, ..lens.arcs[1] });
                diagnostics.extend(lens.diagnostics.iter().cloned());
            }
            WeylRegion {
                kind: RegionKind::MultiGap,
                z,
                order: n,
                circles,
                vertices: Vec::new(),
                vertex_angle: None,
                arcs,
                degenerate: false,
                empty: false,
                convergence: convergence(sys, n, z)?,
                parametrization: None,
                t_a: None,
                diagnostics,
            }
        }
    };
    region.kind = RegionKind::MultiGap;
    region.empty = intersection_point(&region.circles).is_none();
    Ok(region)
}

/// A point common to all closed disks, if there is one.
///
/// A nonempty intersection either contains a whole disk (then that disk's
/// center lies in all of them), or has a corner where two circles cross, or
/// is a tangency point, which is the point of one disk nearest another
/// center. All three candidate families are tried.
pub fn intersection_point(circles: &[Circle]) -> Option<Complex64> {
    let inside = |w: Complex64| circles.iter().all(|k| k.contains(w, CONTAINS_RTOL * (1.0 + k.radius)));
    let mut candidates: Vec<Complex64> = circles.iter().map(|k| k.center).collect();
    for (i, p) in circles.iter().enumerate() {
        for q in &circles[i + 1..] {
            let d = q.center - p.center;
            let dist = d.norm();
            if dist == 0.0 {
                continue;
            }
            let u = d / dist;
            candidates.push(p.center + u * p.radius);
            candidates.push(q.center - u * q.radius);
            // crossing points
            let along = (dist * dist + p.radius * p.radius - q.radius * q.radius) / (2.0 * dist);
            let h2 = p.radius * p.radius - along * along;
            if h2 >= 0.0 {
                let foot = p.center + u * along;
                let off = u * Complex64::new(0.0, 1.0) * h2.sqrt();
                candidates.push(foot + off);
                candidates.push(foot - off);
            }
        }
    }
    candidates.into_iter().find(|&w| inside(w))
}
