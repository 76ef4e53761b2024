//! The Nevanlinna kernels `A_n, B_n, C_n, D_n` and their determinant identities.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orthopoly::OrthoSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelKind {
    A,
    B,
    C,
    D,
}

impl KernelKind {
    pub const ALL: [KernelKind; 4] = [KernelKind::A, KernelKind::B, KernelKind::C, KernelKind::D];
}

/// All four kernels at one pair of points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernels {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Kernels {
    pub fn get(&self, kind: KernelKind) -> Complex64 {
        match kind {
            KernelKind::A => self.a,
            KernelKind::B => self.b,
            KernelKind::C => self.c,
            KernelKind::D => self.d,
        }
    }
}

/// Sum forms, e.g. `D_n(z, w) = (z - w) sum_{k<=n} P_k(z) P_k(w)`.
pub fn kernels_at(sys: &OrthoSystem, n: usize, z: Complex64, w: Complex64) -> Result<Kernels> {
    let (pz, qz) = sys.values_at(n, z)?;
    let (pw, qw) = sys.values_at(n, w)?;
    let dot = |x: &[Complex64], y: &[Complex64]| -> Complex64 { x.iter().zip(y).map(|(u, v)| u * v).sum() };
    let h = z - w;
    Ok(Kernels {
        a: h * dot(&qz, &qw),
        b: -1.0 + h * dot(&pz, &qw),
        c: 1.0 + h * dot(&qz, &pw),
        d: h * dot(&pz, &pw),
    })
}

pub fn kernel(sys: &OrthoSystem, kind: KernelKind, n: usize, z: Complex64, w: Complex64) -> Result<Complex64> {
    Ok(kernels_at(sys, n, z, w)?.get(kind))
}

/// Determinant form `a_n (X_{n+1}(z) Y_n(w) - X_n(z) Y_{n+1}(w))`, where `X`
/// is `Q` for A and C, `P` for B and D, and `Y` is `Q` for A and B, `P` for C
/// and D. Needs `P_{n+1}`, so `n + 1` must not exceed the system order.
pub fn kernel_det(sys: &OrthoSystem, kind: KernelKind, n: usize, z: Complex64, w: Complex64) -> Result<Complex64> {
    if n + 1 > sys.order() {
        return Err(Error::IndexOutOfRange {
            index: n + 1,
            max: sys.order(),
        });
    }
    let (pz, qz) = sys.values_at(n + 1, z)?;
    let (pw, qw) = sys.values_at(n + 1, w)?;
    let (x, y) = match kind {
        KernelKind::A => (&qz, &qw),
        KernelKind::B => (&pz, &qw),
        KernelKind::C => (&qz, &pw),
        KernelKind::D => (&pz, &pw),
    };
    Ok(sys.a()[n] * (x[n + 1] * y[n] - x[n] * y[n + 1]))
}

/// The nine kernel relations, numbered as roman numerals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
    Vii,
    Viii,
    Ix,
}

impl Relation {
    pub const ALL: [Relation; 9] = [
        Relation::I,
        Relation::Ii,
        Relation::Iii,
        Relation::Iv,
        Relation::V,
        Relation::Vi,
        Relation::Vii,
        Relation::Viii,
        Relation::Ix,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Relation::I => "i",
            Relation::Ii => "ii",
            Relation::Iii => "iii",
            Relation::Iv => "iv",
            Relation::V => "v",
            Relation::Vi => "vi",
            Relation::Vii => "vii",
            Relation::Viii => "viii",
            Relation::Ix => "ix",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationResidual {
    pub relation: Relation,
    pub max_residual: f64,
    /// `None` only when no quadruples were supplied.
    pub worst_input: Option<[Complex64; 4]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub residuals: Vec<RelationResidual>,
}

impl RelationReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.max_residual).fold(0.0, f64::max)
    }

    pub fn get(&self, relation: Relation) -> Option<&RelationResidual> {
        self.residuals.iter().find(|r| r.relation == relation)
    }
}

fn det2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    a * d - b * c
}

fn residual(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / (1.0 + rhs.norm())
}

/// `(lhs, rhs)` of one relation at `(z1, z2, z3, z4)`.
pub fn relation_sides(sys: &OrthoSystem, n: usize, relation: Relation, q: [Complex64; 4]) -> Result<(Complex64, Complex64)> {
    let [z1, z2, z3, z4] = q;
    let k = |a: Complex64, b: Complex64| kernels_at(sys, n, a, b);
    Ok(match relation {
        Relation::I => (k(z1, z2)?.a, -k(z2, z1)?.a),
        Relation::Ii => (k(z1, z2)?.b, -k(z2, z1)?.c),
        Relation::Iii => (k(z1, z2)?.d, -k(z2, z1)?.d),
        _ => {
            let (k12, k14, k32, k34) = (k(z1, z2)?, k(z1, z4)?, k(z3, z2)?, k(z3, z4)?);
            let (k13, k24) = (k(z1, z3)?, k(z2, z4)?);
            match relation {
                Relation::Iv => (det2(k12.a, k14.c, k32.b, k34.d), k13.c * k24.c),
                Relation::V => (det2(k12.a, k14.a, k32.a, k34.a), k13.a * k24.a),
                Relation::Vi => (det2(k12.a, k14.c, k32.a, k34.c), k13.a * k24.c),
                Relation::Vii => (det2(k12.b, k14.b, k32.b, k34.b), k13.d * k24.a),
                Relation::Viii => (det2(k12.b, k14.d, k32.b, k34.d), k13.d * k24.c),
                _ => (det2(k12.d, k14.d, k32.d, k34.d), k13.d * k24.d),
            }
        }
    })
}

/// Worst residual `|lhs - rhs| / (1 + |rhs|)` of each relation over the quadruples.
pub fn relation_residuals(sys: &OrthoSystem, n: usize, quadruples: &[[Complex64; 4]]) -> Result<RelationReport> {
    if n > sys.order() {
        return Err(Error::IndexOutOfRange {
            index: n,
            max: sys.order(),
        });
    }
    let mut residuals = Vec::with_capacity(9);
    for relation in Relation::ALL {
        let mut max_residual = 0.0;
        let mut worst_input = None;
        for &q in quadruples {
            let (lhs, rhs) = relation_sides(sys, n, relation, q)?;
            let r = residual(lhs, rhs);
            if worst_input.is_none() || r > max_residual {
                max_residual = r;
                worst_input = Some(q);
            }
        }
        residuals.push(RelationResidual {
            relation,
            max_residual,
            worst_input,
        });
    }
    Ok(RelationReport { residuals })
}

/// Both sides of the determinant-of-determinants identity
/// `| |a b; c d|  |a b; γ δ| ; |α β; c d|  |α β; γ δ| | = |a b; α β| |c d; γ δ|`.
#[allow(clippy::too_many_arguments)]
pub fn double_det(
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
    delta: Complex64,
) -> (Complex64, Complex64) {
    let lhs = det2(
        det2(a, b, c, d),
        det2(a, b, gamma, delta),
        det2(alpha, beta, c, d),
        det2(alpha, beta, gamma, delta),
    );
    let rhs = det2(a, b, alpha, beta) * det2(c, d, gamma, delta);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::{classical_moments, Family};
    use crate::orthopoly::orthonormal_system;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gaussian(order: usize) -> OrthoSystem {
        let s = classical_moments(Family::Gaussian, 2 * order + 1).unwrap();
        orthonormal_system(&s, order).unwrap()
    }

    #[test]
    fn gaussian_by_hand() {
        let sys = gaussian(2);
        let k = kernels_at(&sys, 1, c(0.0, 1.0), c(0.0, -1.0)).unwrap();
        assert!((k.d - c(0.0, 4.0)).norm() < 1e-15);
        assert!((k.c - c(3.0, 0.0)).norm() < 1e-15);
        let k = kernels_at(&sys, 1, c(0.0, 1.0), c(-3.0, 0.0)).unwrap();
        assert!((k.a - c(3.0, 1.0)).norm() < 1e-14);
        assert!((k.b - c(-2.0, 3.0)).norm() < 1e-14);
        assert!((k.c - c(-8.0, -3.0)).norm() < 1e-14);
        assert!((k.d - c(6.0, -8.0)).norm() < 1e-14);
    }

    #[test]
    fn diagonal_values() {
        let sys = gaussian(3);
        let z = c(0.4, -1.3);
        for n in 0..=3 {
            let k = kernels_at(&sys, n, z, z).unwrap();
            assert_eq!(k.a, c(0.0, 0.0));
            assert_eq!(k.b, c(-1.0, 0.0));
            assert_eq!(k.c, c(1.0, 0.0));
            assert_eq!(k.d, c(0.0, 0.0));
        }
    }

    #[test]
    fn determinant_form_matches_sum_form() {
        let sys = gaussian(3);
        let (z, w) = (c(0.3, 0.8), c(-1.1, 0.2));
        for n in 0..3 {
            for kind in KernelKind::ALL {
                let s = kernel(&sys, kind, n, z, w).unwrap();
                let d = kernel_det(&sys, kind, n, z, w).unwrap();
                assert!((s - d).norm() <= 1e-12 * (1.0 + s.norm()), "{kind:?} n={n}: {s} vs {d}");
            }
        }
        assert_eq!(kernel_det(&sys, KernelKind::A, 0, z, w).unwrap(), c(0.0, 0.0));
        assert!(kernel_det(&sys, KernelKind::D, 3, z, w).is_err());
        assert!(kernel(&sys, KernelKind::D, 4, z, w).is_err());
    }

    #[test]
    fn relations_at_a_fixed_quadruple() {
        let sys = gaussian(4);
        let q = [c(0.1, 0.5), c(-1.2, 0.3), c(0.7, -0.9), c(1.5, 1.1)];
        let report = relation_residuals(&sys, 3, &[q]).unwrap();
        assert_eq!(report.residuals.len(), 9);
        assert!(report.max_residual() < 1e-12, "{report:?}");
    }

    #[test]
    fn relations_at_equal_arguments() {
        let sys = gaussian(2);
        let z = c(0.5, 0.5);
        let report = relation_residuals(&sys, 2, &[[z; 4]]).unwrap();
        assert_eq!(report.get(Relation::I).unwrap().max_residual, 0.0);
        assert_eq!(report.get(Relation::V).unwrap().max_residual, 0.0);
        let empty = relation_residuals(&sys, 2, &[]).unwrap();
        assert!(empty.residuals.iter().all(|r| r.worst_input.is_none()));
    }

    #[test]
    fn double_det_cases() {
        let z = c(0.0, 0.0);
        assert_eq!(double_det(z, z, z, z, z, z, z, z), (z, z));
        let (one, zero) = (c(1.0, 0.0), z);
        let (lhs, rhs) = double_det(one, zero, zero, one, zero, one, one, zero);
        assert_eq!(lhs, rhs);
        assert_eq!(rhs, c(-1.0, 0.0));
    }
}
