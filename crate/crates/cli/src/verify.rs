//! The `verify` verb: kernel identities at random quadruples, the Moebius
//! circle oracle on random maps and the membership suite of one region.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use weyl_core::kernels::double_det;
use weyl_core::weyl::{validate_membership, SELF_CHECK_SAMPLES};
use weyl_core::{
    boundary_samples, circle_through, image_of_real_line, kernel, kernel_det, kernels_at, orthonormal_system,
    relation_residuals, KernelKind, MoebiusImage, MoebiusMap, MomentSequence, OrthoSystem, RelationResidual,
};

use crate::{build_region, Command, Problem};

pub const QUADRUPLES: usize = 100;
pub const MAPS: usize = 100;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub max_residual: f64,
    pub pass: bool,
}

impl Check {
    fn new(max_residual: f64, tol: f64) -> Self {
        Check {
            max_residual,
            pass: max_residual <= tol,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct MoebiusCheck {
    pub maps: usize,
    pub max_center_error: f64,
    pub max_radius_error: f64,
    pub max_on_circle: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    pub problem: String,
    pub region_order: usize,
    pub z: [f64; 2],
    pub samples: usize,
    pub violations: usize,
    pub worst_excess: Option<f64>,
    pub boundary_max_distance: f64,
    pub diagnostics: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub label: String,
    pub order: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub relations: Vec<RelationResidual>,
    pub double_determinant: Check,
    /// Sum against determinant form, only when the data reach order `n + 1`.
    pub kernel_forms: Option<Check>,
    pub moebius: MoebiusCheck,
    pub membership: MembershipReport,
    pub pass: bool,
}

fn point<R: Rng>(rng: &mut R, half: f64) -> Complex64 {
    Complex64::new(rng.random_range(-half..half), rng.random_range(-half..half))
}

/// Highest order whose orthonormal system can be built, or the first error.
fn best_system(s: &MomentSequence, wanted: Option<usize>) -> weyl_core::Result<(usize, OrthoSystem)> {
    if let Some(n) = wanted {
        return orthonormal_system(s, n).map(|sys| (n, sys));
    }
    let mut last = None;
    for n in (0..=s.max_order()).rev() {
        match orthonormal_system(s, n) {
            Ok(sys) => return Ok((n, sys)),
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or(weyl_core::Error::EmptySequence))
}

pub fn verify(cmd: &Command, s: &MomentSequence) -> weyl_core::Result<VerifyReport> {
    let tol = cmd.tolerance;
    let (n, sys) = best_system(s, cmd.order)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cmd.seed);

    let quads: Vec<[Complex64; 4]> = (0..QUADRUPLES)
        .map(|_| std::array::from_fn(|_| point(&mut rng, 2.0)))
        .collect();
    let relations = relation_residuals(&sys, n, &quads)?;

    let mut worst_dd: f64 = 0.0;
    for q in &quads {
        let (k, l) = (kernels_at(&sys, n, q[0], q[1])?, kernels_at(&sys, n, q[2], q[3])?);
        let (lhs, rhs) = double_det(k.a, k.b, k.c, k.d, l.a, l.b, l.c, l.d);
        worst_dd = worst_dd.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
    }

    let kernel_forms = match orthonormal_system(s, n + 1) {
        Ok(big) => {
            let mut worst: f64 = 0.0;
            for q in &quads {
                for kind in KernelKind::ALL {
                    let sum = kernel(&big, kind, n, q[0], q[1])?;
                    let det = kernel_det(&big, kind, n, q[0], q[1])?;
                    worst = worst.max((sum - det).norm() / (1.0 + sum.norm()));
                }
            }
            Some(Check::new(worst, tol))
        }
        Err(_) => None,
    };

    let moebius = moebius_oracle(&mut rng, tol);
    let membership = membership(cmd, &sys, n, tol)?;

    let pass = relations.max_residual() <= tol
        && worst_dd <= tol
        && kernel_forms.as_ref().is_none_or(|c| c.pass)
        && moebius.pass
        && membership.pass;
    Ok(VerifyReport {
        label: s.label().to_string(),
        order: n,
        seed: cmd.seed,
        tolerance: tol,
        relations: relations.residuals,
        double_determinant: Check::new(worst_dd, tol),
        kernel_forms,
        moebius,
        membership,
        pass,
    })
}

/// Random maps: the closed-form image of the real line against the circle
/// through three sampled image points, and further samples on that circle.
/// Errors are relative to `1 + r + |m|`.
pub fn moebius_oracle<R: Rng>(rng: &mut R, tol: f64) -> MoebiusCheck {
    let mut check = MoebiusCheck {
        maps: 0,
        max_center_error: 0.0,
        max_radius_error: 0.0,
        max_on_circle: 0.0,
        pass: true,
    };
    let mut attempts = 0;
    while check.maps < MAPS && attempts < 100 * MAPS {
        attempts += 1;
        let Ok(map) = MoebiusMap::new(point(rng, 2.0), point(rng, 2.0), point(rng, 2.0), point(rng, 2.0)) else {
            continue;
        };
        let Ok(MoebiusImage::Circle(k)) = image_of_real_line(&map) else {
            continue;
        };
        // near-degenerate maps give huge or tiny circles that three points pin down poorly
        if !(1e-2..=1e2).contains(&k.radius) {
            continue;
        }
        let ts: Vec<f64> = (0..3).map(|i| i as f64 - 1.0 + rng.random_range(-0.4..0.4)).collect();
        let pts: Vec<Complex64> = ts.iter().filter_map(|&t| map.eval(t).finite()).collect();
        let [p, q, r] = pts[..] else { continue };
        let Ok(fit) = circle_through(p, q, r) else { continue };
        let scale = 1.0 + k.radius + k.center.norm();
        check.maps += 1;
        check.max_center_error = check.max_center_error.max((fit.center - k.center).norm() / scale);
        check.max_radius_error = check.max_radius_error.max((fit.radius - k.radius).abs() / scale);
        for _ in 0..100 {
            let t: f64 = rng.random_range(-50.0..50.0);
            if let Some(w) = map.eval(t).finite() {
                check.max_on_circle = check.max_on_circle.max(k.boundary_distance(w) / scale);
            }
        }
    }
    check.pass = check.maps == MAPS
        && check.max_center_error <= tol
        && check.max_radius_error <= tol
        && check.max_on_circle <= tol;
    check
}

fn membership(cmd: &Command, sys: &OrthoSystem, n: usize, tol: f64) -> weyl_core::Result<MembershipReport> {
    let z = cmd.z.unwrap_or(Complex64::new(0.0, 1.0));
    // the interval problem is indexed by the last moment
    let order = if cmd.problem == Problem::Interval { 2 * n } else { n };
    let region = build_region(cmd, sys, order, z)?;
    let samples = cmd.samples.unwrap_or(SELF_CHECK_SAMPLES);
    let check = validate_membership(&region, samples, cmd.seed);
    let mut boundary: f64 = 0.0;
    for p in boundary_samples(&region, 50)? {
        let k = region.circles[region.arcs[p.arc].circle];
        boundary = boundary.max(k.boundary_distance(p.value) / (1.0 + k.radius));
    }
    let (count, violations) = check.map_or((0, 0), |c| (c.samples, c.violations));
    let worst = check.map(|c| c.worst_excess).filter(|x| x.is_finite());
    Ok(MembershipReport {
        problem: format!("{:?}", cmd.problem).to_lowercase(),
        region_order: order,
        z: [z.re, z.im],
        samples: count,
        violations,
        worst_excess: worst,
        boundary_max_distance: boundary,
        diagnostics: region.diagnostics.clone(),
        pass: violations == 0 && boundary <= tol && region.diagnostics.is_empty(),
    })
}
