//! Finite atomic measures, their Stieltjes transforms, and quadrature-built
//! solutions of truncated moment problems.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orthopoly::OrthoSystem;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub x: f64,
    pub w: f64,
}

impl Atom {
    pub fn new(x: f64, w: f64) -> Self {
        Atom { x, w }
    }
}

/// Positive combination of point masses at distinct finite positions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure")]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
}

#[derive(Deserialize)]
struct RawMeasure {
    atoms: Vec<Atom>,
}

impl TryFrom<RawMeasure> for DiscreteMeasure {
    type Error = Error;

    fn try_from(raw: RawMeasure) -> Result<Self> {
        DiscreteMeasure::new(raw.atoms)
    }
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidMeasure("no atoms".into()));
        }
        for a in &atoms {
            if !a.x.is_finite() || !a.w.is_finite() {
                return Err(Error::InvalidMeasure(format!("non-finite atom {a:?}")));
            }
            if !(a.w > 0.0) {
                return Err(Error::InvalidMeasure(format!("weight {} is not positive", a.w)));
            }
        }
        for (i, a) in atoms.iter().enumerate() {
            if atoms[..i].iter().any(|b| b.x == a.x) {
                return Err(Error::InvalidMeasure(format!("repeated position {}", a.x)));
            }
        }
        Ok(DiscreteMeasure { atoms })
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.w).sum()
    }
}

/// `I_mu(z)` together with the point it was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformValue {
    pub value: Complex64,
    pub at: Complex64,
}

/// `I_mu(z) = sum_k w_k / (x_k - z)`.
pub fn stieltjes_transform(mu: &DiscreteMeasure, z: Complex64) -> Result<TransformValue> {
    let mut value = Complex64::new(0.0, 0.0);
    for a in mu.atoms() {
        let d = a.x - z;
        if d.norm() == 0.0 {
            return Err(Error::PoleAtAtom { x: a.x });
        }
        value += a.w / d;
    }
    Ok(TransformValue { value, at: z })
}

/// The `n`-point Gauss rule of the system: atoms at the roots of `P_n`,
/// weights fitted to `s_0..s_{n-1}`. It reproduces `s_0..s_{2n-1}`.
pub fn gauss_quadrature(sys: &OrthoSystem, n: usize) -> Result<DiscreteMeasure> {
    if n == 0 {
        return Err(Error::InvalidParameter("a Gauss rule needs at least one node".into()));
    }
    let p = sys.p(n)?;
    let nodes = p.real_roots()?;
    rule_with_nodes(sys, nodes)
}

/// The canonical solution attached to the real parameter `t`: atoms at the
/// roots of `P_{n+1} - t P_n`, weights fitted to `s_0..s_n`. It reproduces
/// `s_0..s_{2n}` and its transform is the point `w_n(t)` on the order-`n`
/// Weyl circle.
pub fn canonical_solution(sys: &OrthoSystem, n: usize, t: f64) -> Result<DiscreteMeasure> {
    let poly = sys.p(n + 1)? - &sys.p(n)?.scale(t);
    let nodes = poly.real_roots()?;
    rule_with_nodes(sys, nodes)
}

fn rule_with_nodes(sys: &OrthoSystem, nodes: Vec<f64>) -> Result<DiscreteMeasure> {
    let k = nodes.len();
    let s = sys.moments().values();
    let vandermonde = DMatrix::from_fn(k, k, |row, col| nodes[col].powi(row as i32));
    let rhs = DVector::from_iterator(k, s[..k].iter().copied());
    let weights = vandermonde
        .lu()
        .solve(&rhs)
        .ok_or(Error::RootFindingFailed {
            degree: k,
            residual: f64::INFINITY,
        })?;
    let atoms = nodes
        .iter()
        .zip(weights.iter())
        .map(|(&x, &w)| Atom::new(x, w))
        .collect();
    DiscreteMeasure::new(atoms)
}

/// Convex combination `lambda mu1 + (1 - lambda) mu2`; atoms at equal
/// positions are merged and zero-weight atoms dropped.
pub fn mix(mu1: &DiscreteMeasure, mu2: &DiscreteMeasure, lambda: f64) -> Result<DiscreteMeasure> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!("mixing weight {lambda} not in [0, 1]")));
    }
    let mut atoms: Vec<Atom> = Vec::new();
    let scaled = mu1
        .atoms()
        .iter()
        .map(|a| Atom::new(a.x, lambda * a.w))
        .chain(mu2.atoms().iter().map(|a| Atom::new(a.x, (1.0 - lambda) * a.w)));
    for a in scaled {
        if a.w == 0.0 {
            continue;
        }
        match atoms.iter_mut().find(|b| b.x == a.x) {
            Some(b) => b.w += a.w,
            None => atoms.push(a),
        }
    }
    DiscreteMeasure::new(atoms)
}
