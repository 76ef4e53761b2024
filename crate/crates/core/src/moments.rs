//! Moment sequences, Hankel positivity screening and classical fixtures.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::DiscreteMeasure;
use crate::poly::Polynomial;

/// A pivot below this fraction of the largest diagonal entry fails the
/// positive-definiteness test.
pub const PIVOT_RTOL: f64 = 1e-12;

/// Pivots at or below this fraction of their own diagonal entry mean the
/// matrix is singular to working precision rather than merely ill-conditioned.
const SINGULAR_RTOL: f64 = 64.0 * f64::EPSILON;

/// Raw moments `s_0..s_m` with a free-form label.
///
/// Values are kept exactly as given; `s_0 = 1` is not imposed. Positivity is
/// not part of the type: `check_positivity` reports it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMoments")]
pub struct MomentSequence {
    label: String,
    values: Vec<f64>,
}

#[derive(Deserialize)]
struct RawMoments {
    #[serde(default)]
    label: String,
    values: Vec<f64>,
}

impl TryFrom<RawMoments> for MomentSequence {
    type Error = Error;

    fn try_from(raw: RawMoments) -> Result<Self> {
        MomentSequence::new(raw.label, raw.values)
    }
}

impl MomentSequence {
    pub fn new(label: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySequence);
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput(format!("s_{k} = {}", values[k])));
        }
        Ok(MomentSequence {
            label: label.into(),
            values,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, k: usize) -> Option<f64> {
        self.values.get(k).copied()
    }

    /// Index of the last moment, `m`.
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// Largest `n` with `2n <= m`.
    pub fn max_order(&self) -> usize {
        self.max_index() / 2
    }
}

/// Support constraint used to pick the localizing Hankel matrices.
#[derive(Debug, Clone, PartialEq)]
pub enum SupportSpec {
    AllOfR,
    HalfLine(f64),
    Interval(f64, f64),
    GapComplement(Vec<(f64, f64)>),
}

/// Positive-definiteness of one family of Hankel-type matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdOrders {
    /// `-1` when even the 1x1 matrix fails.
    pub max_pd_order: i64,
    /// Largest over smallest pivot, for every order whose pivots stayed positive.
    pub condition_estimates: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftedPositivity {
    /// The nonnegative polynomial weighting the moments, e.g. `x - (-3)`.
    pub constraint: String,
    #[serde(flatten)]
    pub orders: PdOrders,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PositivityReport {
    pub max_pd_order: i64,
    pub condition_estimates: Vec<f64>,
    pub shifted_results: Vec<ShiftedPositivity>,
}

/// Screen a sequence for positive definiteness of its Hankel matrices.
///
/// `H_n = (s_{i+j})` is declared positive definite when every Cholesky pivot
/// is at least `PIVOT_RTOL` times the largest diagonal entry of `H_n`. For a
/// constrained support the localizing matrices `(L(w x^{i+j}))` of the
/// weights `w >= 0` on the support are screened the same way.
pub fn check_positivity(s: &MomentSequence, support: &SupportSpec) -> PositivityReport {
    let plain = pd_orders(s.values(), &Polynomial::constant(1.0));
    let shifted_results = match support {
        SupportSpec::AllOfR => Vec::new(),
        SupportSpec::HalfLine(a) => vec![shifted(s, format!("x - ({a})"), linear(-a, 1.0))],
        SupportSpec::Interval(a, b) => vec![
            shifted(s, format!("x - ({a})"), linear(-a, 1.0)),
            shifted(s, format!("({b}) - x"), linear(*b, -1.0)),
            shifted(
                s,
                format!("(x - ({a}))(({b}) - x)"),
                &linear(-a, 1.0) * &linear(*b, -1.0),
            ),
        ],
        SupportSpec::GapComplement(gaps) => gaps
            .iter()
            .map(|(a, b)| {
                shifted(
                    s,
                    format!("(x - ({a}))(x - ({b}))"),
                    &linear(-a, 1.0) * &linear(-b, 1.0),
                )
            })
            .collect(),
    };
    PositivityReport {
        max_pd_order: plain.max_pd_order,
        condition_estimates: plain.condition_estimates,
        shifted_results,
    }
}

fn linear(c0: f64, c1: f64) -> Polynomial {
    Polynomial::new(vec![c0, c1])
}

fn shifted(s: &MomentSequence, constraint: String, weight: Polynomial) -> ShiftedPositivity {
    ShiftedPositivity {
        constraint,
        orders: pd_orders(s.values(), &weight),
    }
}

/// Entry `(i, j)` of the localizing matrix of `weight`: `L(weight * x^{i+j})`.
fn localizing_entry(s: &[f64], weight: &Polynomial, k: usize) -> f64 {
    weight
        .coeffs()
        .iter()
        .enumerate()
        .map(|(d, c)| c * s[k + d])
        .sum()
}

fn pd_orders(s: &[f64], weight: &Polynomial) -> PdOrders {
    let wdeg = weight.degree().unwrap_or(0);
    if s.len() < wdeg + 1 {
        return PdOrders {
            max_pd_order: -1,
            condition_estimates: Vec::new(),
        };
    }
    let top = (s.len() - 1 - wdeg) / 2;
    let scan = PivotScan::run(top + 1, |i, j| localizing_entry(s, weight, i + j));
    scan.orders()
}

/// Incremental Cholesky of a symmetric matrix, recording pivots as it goes.
pub(crate) struct PivotScan {
    /// Lower factor rows; row `k` holds `L[k][0..=k]`.
    pub(crate) lower: Vec<Vec<f64>>,
    pub(crate) pivots: Vec<f64>,
    pub(crate) diagonal: Vec<f64>,
}

impl PivotScan {
    /// Factor leading blocks up to `size`, stopping at the first nonpositive pivot.
    pub(crate) fn run(size: usize, entry: impl Fn(usize, usize) -> f64) -> Self {
        let mut lower: Vec<Vec<f64>> = Vec::with_capacity(size);
        let mut pivots = Vec::with_capacity(size);
        let mut diagonal = Vec::with_capacity(size);
        for k in 0..size {
            let mut row = vec![0.0; k + 1];
            for j in 0..k {
                let dot: f64 = (0..j).map(|t| row[t] * lower[j][t]).sum();
                row[j] = (entry(k, j) - dot) / lower[j][j];
            }
            let hkk = entry(k, k);
            let pivot = hkk - (0..k).map(|t| row[t] * row[t]).sum::<f64>();
            diagonal.push(hkk);
            pivots.push(pivot);
            if !(pivot > 0.0) {
                break;
            }
            row[k] = pivot.sqrt();
            lower.push(row);
        }
        PivotScan {
            lower,
            pivots,
            diagonal,
        }
    }

    /// Verdict for order `n` (matrix of size `n + 1`).
    pub(crate) fn verdict(&self, n: usize) -> Verdict {
        if n >= self.pivots.len() {
            // the scan stopped earlier on a nonpositive pivot
            return Verdict::Singular(self.pivots.len() - 1);
        }
        let max_diag = self.diagonal[..=n].iter().cloned().fold(f64::MIN, f64::max);
        for k in 0..=n {
            let p = self.pivots[k];
            if p <= SINGULAR_RTOL * self.diagonal[k].abs() || p <= 0.0 {
                return Verdict::Singular(k);
            }
            if p < PIVOT_RTOL * max_diag {
                return Verdict::IllConditioned;
            }
        }
        Verdict::Pd
    }

    pub(crate) fn condition(&self, n: usize) -> f64 {
        let (lo, hi) = self.pivots[..=n]
            .iter()
            .fold((f64::MAX, f64::MIN), |(lo, hi), &p| (lo.min(p), hi.max(p)));
        hi / lo
    }

    fn orders(&self) -> PdOrders {
        let positive = self.pivots.iter().take_while(|p| **p > 0.0).count();
        let condition_estimates = (0..positive).map(|n| self.condition(n)).collect();
        let max_pd_order = (0..self.pivots.len())
            .take_while(|&n| self.verdict(n) == Verdict::Pd)
            .last()
            .map_or(-1, |n| n as i64);
        PdOrders {
            max_pd_order,
            condition_estimates,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Verdict {
    Pd,
    /// Nonpositive or roundoff-level pivot at the given row.
    Singular(usize),
    /// Positive pivots, but one falls below the relative threshold.
    IllConditioned,
}

/// Classical families used as fixtures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// Standard normal: `s_n = (n-1)!!` for even `n`, zero for odd.
    Gaussian,
    /// Standard lognormal: `s_n = exp(n^2 / 2)`; indeterminate.
    Lognormal,
    /// Uniform probability on `[a, b]`.
    Uniform { a: f64, b: f64 },
    TwoPoint { x1: f64, w1: f64, x2: f64, w2: f64 },
}

pub fn classical_moments(family: Family, count: usize) -> Result<MomentSequence> {
    if count == 0 {
        return Err(Error::EmptySequence);
    }
    let (label, values): (String, Vec<f64>) = match family {
        Family::Gaussian => {
            let mut v = Vec::with_capacity(count);
            let mut even = 1.0;
            for n in 0..count {
                if n % 2 == 1 {
                    v.push(0.0);
                } else {
                    if n >= 2 {
                        even *= (n - 1) as f64;
                    }
                    v.push(even);
                }
            }
            ("gaussian".into(), v)
        }
        Family::Lognormal => (
            "lognormal".into(),
            (0..count).map(|n| ((n * n) as f64 / 2.0).exp()).collect(),
        ),
        Family::Uniform { a, b } => {
            if !(a < b) {
                return Err(Error::BadInterval { a, b });
            }
            let v = (0..count)
                .map(|n| {
                    let k = (n + 1) as i32;
                    (b.powi(k) - a.powi(k)) / (k as f64 * (b - a))
                })
                .collect();
            (format!("uniform({a},{b})"), v)
        }
        Family::TwoPoint { x1, w1, x2, w2 } => {
            let v = (0..count as i32)
                .map(|n| w1 * x1.powi(n) + w2 * x2.powi(n))
                .collect();
            (format!("two_point({x1},{w1},{x2},{w2})"), v)
        }
    };
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::OverflowRisk { index });
    }
    MomentSequence::new(label, values)
}

/// Power moments `s_n = sum_k w_k x_k^n` for `n < count`.
pub fn moments_of(measure: &DiscreteMeasure, count: usize) -> Result<MomentSequence> {
    if count == 0 {
        return Err(Error::EmptySequence);
    }
    let values: Vec<f64> = (0..count as i32)
        .map(|n| measure.atoms().iter().map(|a| a.w * a.x.powi(n)).sum())
        .collect();
    if let Some(index) = values.iter().position(|v| !v.is_finite()) {
        return Err(Error::OverflowRisk { index });
    }
    MomentSequence::new("measure", values)
}

/// The Riesz functional `L_s(p) = sum_k c_k s_k`.
pub fn apply_functional(s: &MomentSequence, p: &Polynomial) -> Result<f64> {
    if let Some(d) = p.degree() {
        if d > s.max_index() {
            return Err(Error::DegreeExceedsMoments {
                degree: d,
                max: s.max_index(),
            });
        }
    }
    Ok(p.coeffs().iter().zip(s.values()).map(|(c, v)| c * v).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::Atom;

    fn seq(v: &[f64]) -> MomentSequence {
        MomentSequence::new("t", v.to_vec()).unwrap()
    }

    fn det3(m: [[f64; 3]; 3]) -> f64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    #[test]
    fn gaussian_hankel_is_pd_through_order_two() {
        let s = seq(&[1.0, 0.0, 1.0, 0.0, 3.0]);
        let h = [[1.0, 0.0, 1.0], [0.0, 1.0, 0.0], [1.0, 0.0, 3.0]];
        assert_eq!(det3(h), 2.0);
        let r = check_positivity(&s, &SupportSpec::AllOfR);
        assert_eq!(r.max_pd_order, 2);
        assert_eq!(r.condition_estimates.len(), 3);
        assert!(r.condition_estimates.iter().all(|c| *c >= 1.0));
        // pivots of H_2 are 1, 1, 2 whose product is det H_2
        assert_eq!(r.condition_estimates[2], 2.0);
    }

    #[test]
    fn dirac_sequence_stops_at_order_zero() {
        let r = check_positivity(&seq(&[1.0, 0.0, 0.0]), &SupportSpec::AllOfR);
        assert_eq!(r.max_pd_order, 0);
    }

    #[test]
    fn negative_mass_reports_sentinel() {
        for support in [
            SupportSpec::AllOfR,
            SupportSpec::HalfLine(0.0),
            SupportSpec::Interval(-1.0, 1.0),
        ] {
            let r = check_positivity(&seq(&[-1.0, 0.0]), &support);
            assert_eq!(r.max_pd_order, -1);
        }
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert_eq!(MomentSequence::new("e", vec![]), Err(Error::EmptySequence));
        assert!(matches!(
            MomentSequence::new("n", vec![1.0, f64::NAN]),
            Err(Error::NonFiniteInput(_))
        ));
    }

    #[test]
    fn half_line_shift_uses_shifted_hankel() {
        // uniform on [0, 1]: x >= 0 so the shift at a = 0 is PD, at a = 2 it is not
        let s = classical_moments(Family::Uniform { a: 0.0, b: 1.0 }, 5).unwrap();
        let ok = check_positivity(&s, &SupportSpec::HalfLine(0.0));
        assert_eq!(ok.shifted_results[0].orders.max_pd_order, 1);
        let bad = check_positivity(&s, &SupportSpec::HalfLine(2.0));
        assert_eq!(bad.shifted_results[0].orders.max_pd_order, -1);
    }

    #[test]
    fn gap_localizer_detects_mass_in_gap() {
        let s = seq(&[1.0, 0.0, 1.0]);
        let r = check_positivity(&s, &SupportSpec::GapComplement(vec![(-1.0, 1.0)]));
        // s_2 - s_0 = 0: the only solution sits on the gap boundary
        assert_eq!(r.shifted_results[0].orders.max_pd_order, -1);
        let s = seq(&[1.0, 0.0, 4.0]);
        let r = check_positivity(&s, &SupportSpec::GapComplement(vec![(-1.0, 1.0)]));
        assert_eq!(r.shifted_results[0].orders.max_pd_order, 0);
    }

    #[test]
    fn classical_families() {
        let g = classical_moments(Family::Gaussian, 5).unwrap();
        assert_eq!(g.values(), &[1.0, 0.0, 1.0, 0.0, 3.0]);
        // two-point Gauss-Hermite rule (nodes +-1, weights 1/2) reproduces s_0..s_3
        let rule: Vec<f64> = (0..4).map(|n| 0.5 * (-1f64).powi(n) + 0.5).collect();
        assert_eq!(&g.values()[..4], rule.as_slice());

        let l = classical_moments(Family::Lognormal, 3).unwrap();
        assert_eq!(l.values()[0], 1.0);
        assert!((l.values()[1] - 0.5f64.exp()).abs() < 1e-15);
        assert!((l.values()[2] - 2f64.exp()).abs() < 1e-14);

        let t = classical_moments(
            Family::TwoPoint {
                x1: -1.0,
                w1: 0.5,
                x2: 1.0,
                w2: 0.5,
            },
            4,
        )
        .unwrap();
        assert_eq!(t.values(), &[1.0, 0.0, 1.0, 0.0]);

        let u = classical_moments(Family::Uniform { a: -1.0, b: 1.0 }, 3).unwrap();
        assert_eq!(u.values()[0], 1.0);
        assert!((u.values()[2] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn lognormal_overflow_is_reported() {
        assert_eq!(
            classical_moments(Family::Lognormal, 60),
            Err(Error::OverflowRisk { index: 38 })
        );
        assert_eq!(classical_moments(Family::Gaussian, 0), Err(Error::EmptySequence));
    }

    #[test]
    fn power_sums_of_measures() {
        let sym = DiscreteMeasure::new(vec![Atom::new(-1.0, 0.5), Atom::new(1.0, 0.5)]).unwrap();
        assert_eq!(moments_of(&sym, 5).unwrap().values(), &[1.0, 0.0, 1.0, 0.0, 1.0]);
        let dirac = DiscreteMeasure::new(vec![Atom::new(0.0, 1.0)]).unwrap();
        assert_eq!(moments_of(&dirac, 3).unwrap().values(), &[1.0, 0.0, 0.0]);
        let wide = DiscreteMeasure::new(vec![Atom::new(-2.0, 0.5), Atom::new(2.0, 0.5)]).unwrap();
        assert_eq!(moments_of(&wide, 5).unwrap().values(), &[1.0, 0.0, 4.0, 0.0, 16.0]);
    }

    #[test]
    fn functional_reads_moments() {
        let g = seq(&[1.0, 0.0, 1.0, 0.0, 3.0]);
        assert_eq!(apply_functional(&g, &Polynomial::monomial(2)).unwrap(), 1.0);
        let p = Polynomial::new(vec![-1.0, 0.0, 1.0]);
        assert_eq!(apply_functional(&g, &p).unwrap(), 0.0);
        assert_eq!(apply_functional(&g, &(&p * &p)).unwrap(), 2.0);
        assert_eq!(
            apply_functional(&g, &Polynomial::monomial(5)),
            Err(Error::DegreeExceedsMoments { degree: 5, max: 4 })
        );
    }

    #[test]
    fn json_shape() {
        let s: MomentSequence =
            serde_json::from_str(r#"{"label":"g","values":[1,0,1]}"#).unwrap();
        assert_eq!(s.values(), &[1.0, 0.0, 1.0]);
        let back = serde_json::to_string(&s).unwrap();
        assert_eq!(back, r#"{"label":"g","values":[1.0,0.0,1.0]}"#);
        assert!(serde_json::from_str::<MomentSequence>(r#"{"label":"g","values":[]}"#).is_err());
    }
}
