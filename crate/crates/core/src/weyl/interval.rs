use num_complex::Complex64;

use super::hamburger::{convergence, disk};
use super::{
    check_interval, check_order, check_z, circle_of, det2, map, vertices_coincide, Arc, ParamDomain,
    Parametrization, RegionKind, WeylRegion,
};
use crate::error::{Error, Result};
use crate::kernels::kernels_at;
use crate::moebius::{image_of_real_line, Circle, MoebiusMap};
use crate::moments::{check_positivity, SupportSpec};
use crate::orthopoly::OrthoSystem;

fn sign(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Region of the truncated problem on `[a, b]` with moments `s_0..s_m`.
///
/// For `m = 2n` the arcs are
/// `w_1(t) = -(s C(z,a) t + C(z,b)) / (s D(z,a) t + D(z,b))` and
/// `w_2(t) = -((z-b) s C(z,a) t + (z-a) C(z,b)) / ((z-b) s D(z,a) t + (z-a) D(z,b))`
/// with `s = (-1)^n` and `t in [0, inf]`. For `m = 2n + 1` the arcs come from
/// 3x3 determinants in `P_n, P_{n+1}, P_{n+2}` and are only available
/// numerically; the system must then reach order `n + 1`.
pub fn interval_region(sys: &OrthoSystem, m: usize, z: Complex64, a: f64, b: f64) -> Result<WeylRegion> {
    check_interval(a, b)?;
    check_z(z)?;
    let n = m / 2;
    let mut region = if m % 2 == 0 { even(sys, n, z, a, b)? } else { odd(sys, n, z, a, b)? };
    region.order = m;
    localizing_diagnostics(sys, m, a, b, &mut region.diagnostics);
    region.degenerate = vertices_coincide(&region.vertices);
    super::self_check(&mut region);
    Ok(region)
}

fn even(sys: &OrthoSystem, n: usize, z: Complex64, a: f64, b: f64) -> Result<WeylRegion> {
    check_order(sys, n)?;
    let ka = kernels_at(sys, n, z, Complex64::new(a, 0.0))?;
    let kb = kernels_at(sys, n, z, Complex64::new(b, 0.0))?;
    let s = sign(n);
    let (za, zb) = (z - a, z - b);
    let w1 = map(-s * ka.c, -kb.c, s * ka.d, kb.d)?;
    let w2 = map(-zb * s * ka.c, -za * kb.c, zb * s * ka.d, za * kb.d)?;
    let base = map(-ka.c, -kb.c, ka.d, kb.d)?;
    let circles = interval_closed_form(sys, 2 * n, z, a, b)?.to_vec();
    Ok(lens(
        RegionKind::IntervalLensEven,
        z,
        circles,
        [w1, w2],
        vec![-kb.c / kb.d, -ka.c / ka.d],
        (zb / za).arg(),
        Parametrization {
            map: base,
            domain: ParamDomain::Wedge {
                apex: 0.0,
                d1: Complex64::new(s, 0.0),
                d2: s * zb / za,
            },
        },
        convergence(sys, n, z)?,
    ))
}

fn odd(sys: &OrthoSystem, n: usize, z: Complex64, a: f64, b: f64) -> Result<WeylRegion> {
    check_order(sys, n + 1)?;
    let p = |k: usize, x: Complex64| -> Result<Complex64> { Ok(sys.p(k)?.eval_complex(x)) };
    let (ac, bc) = (Complex64::new(a, 0.0), Complex64::new(b, 0.0));
    let q1z = sys.q(n + 1)?.eval_complex(z);
    let q0z = sys.q(n)?.eval_complex(z);
    let (p1z, p0z) = (p(n + 1, z)?, p(n, z)?);
    // rows at a and b; the P_{n+2} column is replaced by x P_{n+1}(x), which
    // equals a_{n+1} P_{n+2} modulo the other two columns
    let rows = [(ac, p(n + 1, ac)?, p(n, ac)?), (bc, p(n + 1, bc)?, p(n, bc)?)];
    let det3 = |top: [Complex64; 3]| -> Complex64 {
        let [(x1, u1, v1), (x2, u2, v2)] = rows;
        top[0] * det2(u1, v1, u2, v2) - top[1] * det2(x1 * u1, v1, x2 * u2, v2)
            + top[2] * det2(x1 * u1, u1, x2 * u2, u2)
    };
    let x = det3([z * q1z, q1z, q0z]);
    let y = det3([z * p1z, p1z, p0z]);
    let s = sign(n);
    let (za, zb) = (z - a, z - b);
    let w3 = map(s * x, -za * q1z, -s * y, za * p1z)?;
    let w4 = map(s * x, -zb * q1z, -s * y, zb * p1z)?;
    let circles = vec![circle_of(image_of_real_line(&w3)?)?, circle_of(image_of_real_line(&w4)?)?];
    let vertices = [w3.eval(0.0), w3.eval(f64::INFINITY)]
        .iter()
        .map(|v| v.finite().ok_or(Error::DegenerateMap))
        .collect::<Result<_>>()?;
    Ok(lens(
        RegionKind::IntervalLensOdd,
        z,
        circles,
        [w3, w4],
        vertices,
        (zb / za).arg(),
        Parametrization {
            map: map(-x, -q1z, y, p1z)?,
            domain: ParamDomain::Wedge {
                apex: 0.0,
                d1: -s / za,
                d2: -s / zb,
            },
        },
        convergence(sys, n, z)?,
    ))
}

#[allow(clippy::too_many_arguments)]
fn lens(
    kind: RegionKind,
    z: Complex64,
    circles: Vec<Circle>,
    arcs: [MoebiusMap; 2],
    vertices: Vec<Complex64>,
    angle: f64,
    parametrization: Parametrization,
    convergence: Option<super::Convergence>,
) -> WeylRegion {
    WeylRegion {
        kind,
        z,
        order: 0,
        circles,
        vertices,
        vertex_angle: Some(angle),
        arcs: arcs
            .iter()
            .enumerate()
            .map(|(i, &m)| Arc {
                circle: i,
                map: m,
                start: 0.0,
                end: f64::INFINITY,
            })
            .collect(),
        degenerate: false,
        empty: false,
        convergence,
        parametrization: Some(parametrization),
        t_a: None,
        diagnostics: Vec::new(),
    }
}

/// Closed-form circles for even `m = 2n`: the Hamburger disk and the circle
/// with center `-|(z-b) C(z,a)  (z-a) C(z,b); (zb-b) D(zb,a)  (zb-a) D(zb,b)| / den`
/// and radius `|(z-a)(z-b) D(a,b) / den|`, where `zb = conj z` and
/// `den = |(z-b) D(z,a)  (z-a) D(z,b); (zb-b) D(zb,a)  (zb-a) D(zb,b)|`.
pub fn interval_closed_form(sys: &OrthoSystem, m: usize, z: Complex64, a: f64, b: f64) -> Result<[Circle; 2]> {
    check_interval(a, b)?;
    check_z(z)?;
    if m % 2 == 1 {
        return Err(Error::InvalidParameter(format!("no closed form for odd m = {m}")));
    }
    let n = m / 2;
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

/// Note localizing matrices of the support weights that are not positive
/// definite to the order the data would need; the region is still built.
pub(crate) fn localizing_diagnostics(sys: &OrthoSystem, m: usize, a: f64, b: f64, out: &mut Vec<String>) {
    let report = check_positivity(sys.moments(), &SupportSpec::Interval(a, b));
    let need = |deg: usize| ((m.saturating_sub(deg)) / 2) as i64;
    for r in &report.shifted_results {
        let deg = if r.constraint.contains(")(") { 2 } else { 1 };
        if m >= deg && r.orders.max_pd_order < need(deg) {
            out.push(format!(
                "localizing matrix of {} is positive definite only through order {}",
                r.constraint, r.orders.max_pd_order
            ));
        }
    }
}
