use num_complex::Complex64;

use super::{check_order, check_z, map, Arc, Convergence, ParamDomain, Parametrization, RegionKind, WeylRegion};
use crate::error::Result;
use crate::kernels::kernels_at;
use crate::moebius::{Circle, MoebiusMap};
use crate::orthopoly::OrthoSystem;

/// Truncated Hamburger disk: center `-C_n(z, conj z) / D_n(z, conj z)`,
/// radius `1 / |D_n(z, conj z)|`.
pub fn hamburger_disk(sys: &OrthoSystem, n: usize, z: Complex64) -> Result<Circle> {
    check_z(z)?;
    check_order(sys, n)?;
    disk(sys, n, z)
}

pub(crate) fn disk(sys: &OrthoSystem, n: usize, z: Complex64) -> Result<Circle> {
    let k = kernels_at(sys, n, z, z.conj())?;
    Ok(Circle::new(-k.c / k.d, 1.0 / k.d.norm()))
}

/// `t -> -(C_n(z,a) t + A_n(z,a)) / (D_n(z,a) t + B_n(z,a))`. Over the real
/// line it traces the Hamburger circle whatever the real base point `a`.
pub fn parameter_base_map(sys: &OrthoSystem, n: usize, z: Complex64, a: f64) -> Result<MoebiusMap> {
    let k = kernels_at(sys, n, z, Complex64::new(a, 0.0))?;
    map(-k.c, -k.a, k.d, k.b)
}

pub(crate) fn convergence(sys: &OrthoSystem, n: usize, z: Complex64) -> Result<Option<Convergence>> {
    if n == 0 {
        return Ok(None);
    }
    let (now, before) = (disk(sys, n, z)?, disk(sys, n - 1, z)?);
    Ok(Some(Convergence {
        delta_center: (now.center - before.center).norm(),
        delta_radius: (now.radius - before.radius).abs(),
    }))
}

/// The disk as a region, with its boundary parametrized from base point 0.
pub fn hamburger_region(sys: &OrthoSystem, n: usize, z: Complex64) -> Result<WeylRegion> {
    let k1 = hamburger_disk(sys, n, z)?;
    let base = parameter_base_map(sys, n, z, 0.0)?;
    let mut region = WeylRegion {
        kind: RegionKind::HamburgerDisk,
        z,
        order: n,
        circles: vec![k1],
        vertices: Vec::new(),
        vertex_angle: None,
        arcs: vec![Arc {
            circle: 0,
            map: base,
            start: f64::NEG_INFINITY,
            end: f64::INFINITY,
        }],
        degenerate: k1.radius == 0.0,
        empty: false,
        convergence: convergence(sys, n, z)?,
        parametrization: Some(Parametrization {
            map: base,
            domain: ParamDomain::UpperHalfPlane,
        }),
        t_a: None,
        diagnostics: Vec::new(),
    };
    super::self_check(&mut region);
    Ok(region)
}
