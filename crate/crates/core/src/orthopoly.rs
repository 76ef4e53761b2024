//! Orthonormal polynomials of the first and second kind built from moments.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moments::{MomentSequence, PivotScan, Verdict};
pub use crate::poly::Polynomial;

/// Orders above this are refused outright; double-precision Hankel
/// factorizations of generic moment data do not survive that far.
pub const MAX_ORDER: usize = 20;

/// `P_0..P_N`, `Q_0..Q_N` and the Jacobi coefficients of a moment sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthoSystem {
    moments: MomentSequence,
    p: Vec<Polynomial>,
    q: Vec<Polynomial>,
    a: Vec<f64>,
    b: Vec<f64>,
    condition: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyKind {
    First,
    Second,
}

/// Orthonormalize `1, x, ..., x^n` under `L_s`.
///
/// The Hankel matrix `H_n` is factored as `L L^T`; row `k` of `L^{-1}` holds
/// the coefficients of `P_k`. `Q_k` comes from applying `L_s` in `x` to the
/// divided difference `(P_k(z) - P_k(x)) / (z - x)`.
pub fn orthonormal_system(s: &MomentSequence, n: usize) -> Result<OrthoSystem> {
    if n > MAX_ORDER {
        return Err(Error::OrderCap {
            order: n,
            cap: MAX_ORDER,
        });
    }
    if 2 * n > s.max_index() {
        return Err(Error::InsufficientMoments {
            order: n,
            needed: 2 * n + 1,
            available: s.values().len(),
        });
    }
    let m = s.values();
    let scan = PivotScan::run(n + 1, |i, j| m[i + j]);
    match scan.verdict(n) {
        Verdict::Pd => {}
        Verdict::Singular(order) => return Err(Error::NotPositiveDefinite { order }),
        Verdict::IllConditioned => {
            return Err(Error::IllConditioned {
                order: n,
                estimate: scan.condition(n),
            })
        }
    }

    // forward substitution for the rows of L^{-1}
    let lower = &scan.lower;
    let mut inv: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut row = vec![0.0; k + 1];
        row[k] = 1.0 / lower[k][k];
        for j in (0..k).rev() {
            let acc: f64 = (j + 1..=k).map(|t| lower[t][j] * row[t]).sum();
            row[j] = -acc / lower[j][j];
        }
        inv.push(row);
    }
    let p: Vec<Polynomial> = inv.into_iter().map(Polynomial::new).collect();
    let q: Vec<Polynomial> = p.iter().map(|pk| second_kind(m, pk)).collect();

    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for k in 0..n {
        let lk = p[k].leading();
        let ak = lk / p[k + 1].leading();
        let sub_k = if k == 0 { 0.0 } else { p[k].coeff(k - 1) };
        a.push(ak);
        b.push((sub_k - ak * p[k + 1].coeff(k)) / lk);
    }

    Ok(OrthoSystem {
        moments: s.clone(),
        p,
        q,
        a,
        b,
        condition: scan.condition(n),
    })
}

/// `Q(z) = L_x[(P(z) - P(x)) / (z - x)]`: the coefficient of `z^i` is
/// `sum_{j > i} c_j s_{j-1-i}`.
fn second_kind(s: &[f64], p: &Polynomial) -> Polynomial {
    let c = p.coeffs();
    let deg = c.len().saturating_sub(1);
    let coeffs = (0..deg)
        .map(|i| (i + 1..=deg).map(|j| c[j] * s[j - 1 - i]).sum())
        .collect();
    Polynomial::new(coeffs)
}

impl OrthoSystem {
    pub fn moments(&self) -> &MomentSequence {
        &self.moments
    }

    /// Highest polynomial index `N` available.
    pub fn order(&self) -> usize {
        self.p.len() - 1
    }

    pub fn p(&self, k: usize) -> Result<&Polynomial> {
        self.p.get(k).ok_or(Error::IndexOutOfRange {
            index: k,
            max: self.order(),
        })
    }

    pub fn q(&self, k: usize) -> Result<&Polynomial> {
        self.q.get(k).ok_or(Error::IndexOutOfRange {
            index: k,
            max: self.order(),
        })
    }

    pub fn first_kind(&self) -> &[Polynomial] {
        &self.p
    }

    pub fn second_kind(&self) -> &[Polynomial] {
        &self.q
    }

    /// Off-diagonal Jacobi coefficients `a_0..a_{N-1}`.
    pub fn a(&self) -> &[f64] {
        &self.a
    }

    /// Diagonal Jacobi coefficients `b_0..b_{N-1}`.
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// Largest over smallest Cholesky pivot of `H_N`.
    pub fn condition_estimate(&self) -> f64 {
        self.condition
    }

    pub fn eval_poly(&self, kind: PolyKind, k: usize, z: Complex64) -> Result<Complex64> {
        let poly = match kind {
            PolyKind::First => self.p(k)?,
            PolyKind::Second => self.q(k)?,
        };
        Ok(poly.eval_complex(z))
    }

    /// `[P_0(z)..P_n(z)]` and `[Q_0(z)..Q_n(z)]`.
    pub fn values_at(&self, n: usize, z: Complex64) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
        if n > self.order() {
            return Err(Error::IndexOutOfRange {
                index: n,
                max: self.order(),
            });
        }
        Ok((
            self.p[..=n].iter().map(|p| p.eval_complex(z)).collect(),
            self.q[..=n].iter().map(|q| q.eval_complex(z)).collect(),
        ))
    }

    /// Second-kind polynomials propagated by the three-term recurrence from
    /// `Q_0 = 0`, `Q_1 = sqrt(s_0) / a_0`. Independent of the divided-difference
    /// route and used to cross-check it.
    pub fn second_kind_by_recurrence(&self) -> Vec<Polynomial> {
        let n = self.order();
        let mut out = vec![Polynomial::zero()];
        if n == 0 {
            return out;
        }
        out.push(Polynomial::constant(self.moments.values()[0].sqrt() / self.a[0]));
        for k in 1..n {
            let shifted = &out[k].shift_up() - &out[k].scale(self.b[k]);
            let next = (&shifted - &out[k - 1].scale(self.a[k - 1])).scale(1.0 / self.a[k]);
            out.push(next);
        }
        out
    }
}

/// Finite-order Friedrichs scalar `-Q_n(z) / P_n(z)`.
pub fn truncated_t(sys: &OrthoSystem, n: usize, z: Complex64) -> Result<Complex64> {
    let p = sys.p(n)?;
    let q = sys.q(n)?;
    let pz = p.eval_complex(z);
    if pz.norm() <= 1e-13 * p.abs_scale(z.norm()) {
        return Err(Error::PoleAtZ);
    }
    Ok(-q.eval_complex(z) / pz)
}
