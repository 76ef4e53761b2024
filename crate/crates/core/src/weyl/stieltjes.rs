use num_complex::Complex64;

use super::hamburger::{convergence, disk};
use super::{
    check_order, check_z, circle_of, close, det2, map, vertices_coincide, Arc, ParamDomain, Parametrization,
    RegionKind, WeylRegion,
};
use crate::error::{Error, Result};
use crate::kernels::kernels_at;
use crate::moebius::{image_of_real_line, Circle};
use crate::moments::{check_positivity, SupportSpec};
use crate::orthopoly::{truncated_t, OrthoSystem};

/// `t_a = -Q_n(a) / P_n(a)`, refusing when `P_n(a)` is zero to working precision.
fn t_at(sys: &OrthoSystem, n: usize, a: f64) -> Result<f64> {
    let (p, q) = (sys.p(n)?, sys.q(n)?);
    let pa = p.eval(a);
    if pa.abs() <= 1e-13 * p.abs_scale(a) {
        return Err(Error::PoleAtA { a });
    }
    Ok(-q.eval(a) / pa)
}

/// Region of the truncated Stieltjes problem on `[a, inf)`.
///
/// Bounded by `w_1(t) = -(C t + A) / (D t + B)` for `t in [t_a, inf]` and
/// `w_2(t) = -(C t + (a-z)(A + t_a C)) / (D t + (a-z)(B + t_a D))` for
/// `t in [0, inf]`, all kernels taken at `(z, a)`. The region is the image of
/// the wedge `t_a + u + v / (a - z)`, `u, v >= 0`, under `w_1`.
pub fn stieltjes_region(sys: &OrthoSystem, n: usize, z: Complex64, a: f64) -> Result<WeylRegion> {
    check_z(z)?;
    if !a.is_finite() {
        return Err(Error::NonFiniteInput(format!("a = {a}")));
    }
    check_order(sys, n)?;
    let t_a = t_at(sys, n, a)?;
    if n >= 1 {
        let report = check_positivity(sys.moments(), &SupportSpec::HalfLine(a));
        let shifted = report.shifted_results[0].orders.max_pd_order;
        if shifted < n as i64 - 1 {
            return Err(Error::NotCertified {
                order: n,
                certified: (shifted + 1).max(0) as usize,
            });
        }
    }
    let k = kernels_at(sys, n, z, Complex64::new(a, 0.0))?;
    let az = a - z;
    let w1 = map(-k.c, -k.a, k.d, k.b)?;
    let w2 = map(-k.c, -az * (k.a + t_a * k.c), k.d, az * (k.b + t_a * k.d))?;
    let circles = vec![circle_of(image_of_real_line(&w1)?)?, circle_of(image_of_real_line(&w2)?)?];

    let vertices: Vec<Complex64> = [w1.eval(f64::INFINITY), w1.eval(t_a)]
        .iter()
        .map(|v| v.finite().ok_or(Error::DegenerateMap))
        .collect::<Result<_>>()?;
    let mut diagnostics = Vec::new();
    let t_z = truncated_t(sys, n, z)?;
    if !close(vertices[1], t_z, 1e-9) {
        diagnostics.push(format!("vertex w_1(t_a) = {} differs from -Q_n(z)/P_n(z) = {t_z}", vertices[1]));
    }
    let meets = |t: f64, v: Complex64| w2.eval(t).finite().is_some_and(|w| close(w, v, 1e-9));
    if !meets(0.0, vertices[1]) || !meets(f64::INFINITY, vertices[0]) {
        diagnostics.push("the endpoints of w_2 do not meet the vertices of w_1".to_string());
    }
    let degenerate = vertices_coincide(&vertices);

    let mut region = WeylRegion {
        kind: RegionKind::StieltjesLens,
        z,
        order: n,
        circles,
        vertices,
        vertex_angle: Some((1.0 / az).arg()),
        arcs: vec![
            Arc {
                circle: 0,
                map: w1,
                start: t_a,
                end: f64::INFINITY,
            },
            Arc {
                circle: 1,
                map: w2,
                start: 0.0,
                end: f64::INFINITY,
            },
        ],
        degenerate,
        empty: false,
        convergence: convergence(sys, n, z)?,
        parametrization: Some(Parametrization {
            map: w1,
            domain: ParamDomain::Wedge {
                apex: t_a,
                d1: Complex64::new(1.0, 0.0),
                d2: 1.0 / az,
            },
        }),
        t_a: Some(t_a),
        diagnostics,
    };
    super::self_check(&mut region);
    Ok(region)
}

/// Closed-form circles of the Stieltjes region. The second center is
/// `-|(a-z)(A + t_a C)  C; (a-conj z)(B + t_a D)(conj z)  D(conj z)| / den`,
/// with `den = |(a-z)(B + t_a D)  D; (a-conj z)(B + t_a D)(conj z)  D(conj z)|`,
/// and the radius is `|a - z| / |den|`.
pub fn stieltjes_closed_form(sys: &OrthoSystem, n: usize, z: Complex64, a: f64) -> Result<[Circle; 2]> {
    check_z(z)?;
    check_order(sys, n)?;
    let t_a = t_at(sys, n, a)?;
    let ac = Complex64::new(a, 0.0);
    let (k, kb) = (kernels_at(sys, n, z, ac)?, kernels_at(sys, n, z.conj(), ac)?);
    let (az, azb) = (a - z, a - z.conj());
    let lower = azb * (kb.b + t_a * kb.d);
    let den = det2(az * (k.b + t_a * k.d), k.d, lower, kb.d);
    let num = det2(az * (k.a + t_a * k.c), k.c, lower, kb.d);
    Ok([disk(sys, n, z)?, Circle::new(-num / den, (az / den).norm())])
}
