//! Fixtures shared by the benchmarks.

use num_complex::Complex64;
use weyl_core::{classical_moments, orthonormal_system, Family, OrthoSystem};

pub const Z: Complex64 = Complex64::new(0.0, 1.0);

/// Gaussian orthonormal system of order `n`.
pub fn gaussian(n: usize) -> OrthoSystem {
    let s = classical_moments(Family::Gaussian, 2 * n + 3).expect("gaussian moments");
    orthonormal_system(&s, n).expect("gaussian system")
}

/// Lognormal system; only low orders are well conditioned.
pub fn lognormal(n: usize) -> OrthoSystem {
    let s = classical_moments(Family::Lognormal, 2 * n + 1).expect("lognormal moments");
    orthonormal_system(&s, n).expect("lognormal system")
}

/// Uniform probability on `[0, 1]`.
pub fn uniform(n: usize) -> OrthoSystem {
    let s = classical_moments(Family::Uniform { a: 0.0, b: 1.0 }, 2 * n + 3).expect("uniform moments");
    orthonormal_system(&s, n).expect("uniform system")
}

/// Half mass at each of -2 and 2.
pub fn two_point() -> OrthoSystem {
    let s = classical_moments(
        Family::TwoPoint {
            x1: -2.0,
            w1: 0.5,
            x2: 2.0,
            w2: 0.5,
        },
        3,
    )
    .expect("two-point moments");
    orthonormal_system(&s, 1).expect("two-point system")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(gaussian(8).order(), 8);
        assert_eq!(lognormal(3).order(), 3);
        assert_eq!(uniform(4).order(), 4);
        assert_eq!(two_point().order(), 1);
    }
}
