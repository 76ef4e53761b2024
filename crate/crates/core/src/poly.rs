//! Dense real polynomials in the monomial basis.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Real polynomial, coefficients in ascending degree order.
///
/// Trailing zero coefficients are stripped on construction, so the leading
/// coefficient is nonzero unless the polynomial is identically zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "Vec<f64>", into = "Vec<f64>")]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl From<Vec<f64>> for Polynomial {
    fn from(coeffs: Vec<f64>) -> Self {
        Polynomial::new(coeffs)
    }
}

impl From<Polynomial> for Vec<f64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial::new(vec![c])
    }

    /// The monomial `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = 1.0;
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> f64 {
        self.coeffs.last().copied().unwrap_or(0.0)
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs.get(k).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Sum of `|c_k| |x|^k`, the natural scale against which `eval(x)` is small.
    pub fn abs_scale(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scale(&self, c: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Multiply by `x`.
    pub fn shift_up(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(0.0);
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    /// All real roots, assuming the polynomial has only real simple roots.
    ///
    /// Sign changes are bracketed on a uniform grid over the Cauchy bound,
    /// refined by bisection and polished with Newton steps that must stay in
    /// the bracket. Fails if fewer than `degree` roots are found or a root's
    /// relative residual exceeds `1e-9`.
    pub fn real_roots(&self) -> Result<Vec<f64>> {
        let degree = match self.degree() {
            None | Some(0) => return Ok(Vec::new()),
            Some(d) => d,
        };
        let lead = self.leading();
        let bound = 1.0
            + self.coeffs[..degree]
                .iter()
                .map(|c| (c / lead).abs())
                .fold(0.0, f64::max);

        let mut cells = 64 * degree;
        let brackets = loop {
            let found = self.bracket(bound, cells);
            if found.len() >= degree || cells > (1 << 22) {
                break found;
            }
            cells *= 4;
        };

        let deriv = self.derivative();
        let mut roots = Vec::with_capacity(degree);
        let mut worst = 0.0f64;
        for b in brackets {
            let x = match b {
                Bracket::Exact(x) => x,
                Bracket::Between(lo, hi) => self.refine(&deriv, lo, hi),
            };
            let residual = self.eval(x).abs() / self.abs_scale(x).max(f64::MIN_POSITIVE);
            worst = worst.max(residual);
            roots.push(x);
        }
        if roots.len() != degree || worst > 1e-9 {
            return Err(Error::RootFindingFailed {
                degree,
                residual: if roots.len() != degree { f64::INFINITY } else { worst },
            });
        }
        Ok(roots)
    }

    fn bracket(&self, bound: f64, cells: usize) -> Vec<Bracket> {
        let mut out = Vec::new();
        let mut prev: Option<(f64, f64)> = None;
        for i in 0..=cells {
            let x = -bound + 2.0 * bound * (i as f64 / cells as f64);
            let fx = self.eval(x);
            if fx == 0.0 {
                out.push(Bracket::Exact(x));
                prev = None;
                continue;
            }
            if let Some((px, pf)) = prev {
                if pf.signum() != fx.signum() {
                    out.push(Bracket::Between(px, x));
                }
            }
            prev = Some((x, fx));
        }
        out
    }

    fn refine(&self, deriv: &Polynomial, mut lo: f64, mut hi: f64) -> f64 {
        let flo = self.eval(lo);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = self.eval(mid);
            if fm == 0.0 {
                return mid;
            }
            if fm.signum() == flo.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..3 {
            let d = deriv.eval(x);
            if d == 0.0 {
                break;
            }
            let next = x - self.eval(x) / d;
            if !(lo..=hi).contains(&next) || self.eval(next).abs() >= self.eval(x).abs() {
                break;
            }
            x = next;
        }
        x
    }
}

enum Bracket {
    Exact(f64),
    Between(f64, f64),
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}
