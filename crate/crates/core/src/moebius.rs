//! Images of the extended real line under Möbius maps.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative band inside which a determinant counts as zero.
pub const DEGENERACY_RTOL: f64 = 1e-13;

/// `w(t) = (alpha t + beta) / (gamma t + delta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MoebiusMap {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
}

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Extended {
    Finite(Complex64),
    Infinity,
}

impl Extended {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            Extended::Finite(w) => Some(w),
            Extended::Infinity => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Complex64, radius: f64) -> Self {
        Circle { center, radius }
    }

    /// Closed-disk membership with an absolute slack.
    pub fn contains(&self, w: Complex64, tol: f64) -> bool {
        (w - self.center).norm() <= self.radius + tol
    }

    /// `| |w - m| - r |`.
    pub fn boundary_distance(&self, w: Complex64) -> f64 {
        ((w - self.center).norm() - self.radius).abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoebiusImage {
    Circle(Circle),
    Point(Complex64),
    /// `point + s * direction`, `|direction| = 1`.
    Line { point: Complex64, direction: Complex64 },
}

/// The image together with the determinants and band used to classify it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub image: MoebiusImage,
    /// `gamma conj(delta) - delta conj(gamma)`; vanishes for a line.
    pub det_denominator: Complex64,
    /// `alpha delta - beta gamma`; vanishes for a point.
    pub det_map: Complex64,
    pub threshold: f64,
}

impl MoebiusMap {
    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64, delta: Complex64) -> Result<Self> {
        let m = MoebiusMap { alpha, beta, gamma, delta };
        if m.scale() == 0.0 {
            return Err(Error::DegenerateMap);
        }
        Ok(m)
    }

    fn scale(&self) -> f64 {
        [self.alpha, self.beta, self.gamma, self.delta]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Multiply all four coefficients by `k`; the map is unchanged.
    pub fn scaled(&self, k: Complex64) -> Self {
        MoebiusMap {
            alpha: self.alpha * k,
            beta: self.beta * k,
            gamma: self.gamma * k,
            delta: self.delta * k,
        }
    }

    /// `w(t)`; either infinite `t` is the projective point at infinity.
    pub fn eval(&self, t: f64) -> Extended {
        let (num, den) = if t.is_infinite() {
            (self.alpha, self.gamma)
        } else {
            (self.alpha * t + self.beta, self.gamma * t + self.delta)
        };
        if den == Complex64::new(0.0, 0.0) {
            Extended::Infinity
        } else {
            Extended::Finite(num / den)
        }
    }

    /// `w(tau)` at a complex parameter.
    pub fn eval_complex(&self, tau: Complex64) -> Extended {
        let den = self.gamma * tau + self.delta;
        if den == Complex64::new(0.0, 0.0) {
            Extended::Infinity
        } else {
            Extended::Finite((self.alpha * tau + self.beta) / den)
        }
    }

    /// `w'(t) = (alpha delta - beta gamma) / (gamma t + delta)^2` at a finite `t`.
    pub fn derivative(&self, t: f64) -> Extended {
        let den = self.gamma * t + self.delta;
        if den == Complex64::new(0.0, 0.0) {
            return Extended::Infinity;
        }
        Extended::Finite((self.alpha * self.delta - self.beta * self.gamma) / (den * den))
    }
}

/// Image of the extended real line: a circle with
/// `m = |alpha beta; conj gamma conj delta| / |gamma delta; conj gamma conj delta|`
/// and `r = | |alpha beta; gamma delta| / |gamma delta; conj gamma conj delta| |`,
/// or a point or line when one of the determinants vanishes.
pub fn image_of_real_line(map: &MoebiusMap) -> Result<MoebiusImage> {
    Ok(classify(map)?.image)
}

pub fn classify(map: &MoebiusMap) -> Result<Classification> {
    let scale = map.scale();
    if scale == 0.0 {
        return Err(Error::DegenerateMap);
    }
    let MoebiusMap { alpha, beta, gamma, delta } = *map;
    let d1 = gamma * delta.conj() - delta * gamma.conj();
    let d2 = alpha * delta - beta * gamma;
    let threshold = DEGENERACY_RTOL * scale * scale;

    let image = if d2.norm() <= threshold {
        // constant wherever defined
        if gamma.norm() == 0.0 && delta.norm() == 0.0 {
            return Err(Error::DegenerateMap);
        }
        let value = if gamma.norm() >= delta.norm() {
            alpha / gamma
        } else {
            beta / delta
        };
        MoebiusImage::Point(value)
    } else if d1.norm() <= threshold {
        let finite: Vec<Complex64> = [0.0, 1.0, f64::INFINITY, -1.0, 2.0]
            .iter()
            .filter_map(|&t| map.eval(t).finite())
            .filter(|w| w.is_finite())
            .collect();
        let point = finite[0];
        let far = finite[1..]
            .iter()
            .copied()
            .max_by(|a, b| (a - point).norm().total_cmp(&(b - point).norm()))
            .ok_or(Error::DegenerateMap)?;
        let dir = far - point;
        MoebiusImage::Line {
            point,
            direction: dir / dir.norm(),
        }
    } else {
        let num = alpha * delta.conj() - beta * gamma.conj();
        MoebiusImage::Circle(Circle::new(num / d1, (d2 / d1).norm()))
    };
    Ok(Classification {
        image,
        det_denominator: d1,
        det_map: d2,
        threshold,
    })
}

/// The circle through three points, from the intersection of perpendicular bisectors.
pub fn circle_through(p1: Complex64, p2: Complex64, p3: Complex64) -> Result<Circle> {
    let (x1, y1, x2, y2, x3, y3) = (p1.re, p1.im, p2.re, p2.im, p3.re, p3.im);
    let span = [(p1 - p2).norm(), (p2 - p3).norm(), (p1 - p3).norm()]
        .into_iter()
        .fold(0.0, f64::max);
    let d = 2.0 * (x1 * (y2 - y3) + x2 * (y3 - y1) + x3 * (y1 - y2));
    if span == 0.0 || d.abs() <= 1e-12 * span * span {
        return Err(Error::CollinearPoints);
    }
    let (n1, n2, n3) = (p1.norm_sqr(), p2.norm_sqr(), p3.norm_sqr());
    let ux = (n1 * (y2 - y3) + n2 * (y3 - y1) + n3 * (y1 - y2)) / d;
    let uy = (n1 * (x3 - x2) + n2 * (x1 - x3) + n3 * (x2 - x1)) / d;
    let center = Complex64::new(ux, uy);
    let radius = ((p1 - center).norm() + (p2 - center).norm() + (p3 - center).norm()) / 3.0;
    Ok(Circle::new(center, radius))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn map(a: Complex64, b: Complex64, g: Complex64, d: Complex64) -> MoebiusMap {
        MoebiusMap::new(a, b, g, d).unwrap()
    }

    #[test]
    fn reciprocal_shift_is_the_lower_circle() {
        let m = map(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
        assert_eq!(
            image_of_real_line(&m).unwrap(),
            MoebiusImage::Circle(Circle::new(c(0.0, -0.5), 0.5))
        );
        assert_eq!(m.eval(0.0), Extended::Finite(c(0.0, -1.0)));
        assert_eq!(m.eval(f64::INFINITY), Extended::Finite(c(0.0, 0.0)));
    }

    #[test]
    fn point_and_line() {
        let m = map(c(2.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        assert_eq!(image_of_real_line(&m).unwrap(), MoebiusImage::Point(c(2.0, 0.0)));
        let m = map(c(0.0, 1.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        match image_of_real_line(&m).unwrap() {
            MoebiusImage::Line { point, direction } => {
                assert_eq!(point, c(0.0, 0.0));
                assert!((direction.re).abs() < 1e-15 && (direction.im.abs() - 1.0).abs() < 1e-15);
            }
            other => panic!("expected a line, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_maps() {
        let z = c(0.0, 0.0);
        assert_eq!(MoebiusMap::new(z, z, z, z), Err(Error::DegenerateMap));
        let m = MoebiusMap { alpha: z, beta: z, gamma: z, delta: z };
        assert_eq!(image_of_real_line(&m), Err(Error::DegenerateMap));
        let inf = map(c(1.0, 0.0), c(1.0, 0.0), z, z);
        assert_eq!(image_of_real_line(&inf), Err(Error::DegenerateMap));
    }

    #[test]
    fn evaluation() {
        let m = map(c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(4.0, 0.0));
        assert_eq!(m.eval(1.0), Extended::Finite(c(3.0 / 7.0, 0.0)));
        let pole = map(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0));
        assert_eq!(pole.eval(2.0), Extended::Infinity);
        assert_eq!(pole.eval(f64::NEG_INFINITY), Extended::Finite(c(1.0, 0.0)));
    }

    #[test]
    fn three_point_circles() {
        let k = circle_through(c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)).unwrap();
        assert!(k.center.norm() < 1e-15 && (k.radius - 1.0).abs() < 1e-15);
        let k = circle_through(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        assert!((k.center - c(0.5, 0.5)).norm() < 1e-15);
        assert!((k.radius - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(
            circle_through(c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)),
            Err(Error::CollinearPoints)
        );
        assert_eq!(
            circle_through(c(1.0, 1.0), c(1.0, 1.0), c(2.0, 0.0)),
            Err(Error::CollinearPoints)
        );
    }

    #[test]
    fn classification_reports_the_band() {
        let m = map(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
        let cl = classify(&m).unwrap();
        assert_eq!(cl.threshold, DEGENERACY_RTOL);
        assert_eq!(cl.det_map, c(-1.0, 0.0));
        assert_eq!(cl.det_denominator, c(0.0, -2.0));
    }
}
