//! Weyl circles and lens regions of one-dimensional truncated moment problems.
//!
//! Moment data go in through [`MomentSequence`]; [`orthonormal_system`]
//! builds the orthonormal polynomials of both kinds, [`kernels`] evaluates
//! the Nevanlinna kernels, and [`weyl`] turns them into disks and lenses via
//! the Möbius geometry in [`moebius`]. Explicit atomic solutions in
//! [`measures`] serve as membership oracles.

pub mod error;
pub mod kernels;
pub mod measures;
pub mod moebius;
pub mod moments;
pub mod orthopoly;
pub mod poly;
pub mod weyl;

pub use error::{Error, Result};
pub use kernels::{kernel, kernel_det, kernels_at, double_det, relation_residuals, KernelKind, Kernels, Relation, RelationReport, RelationResidual};
pub use measures::{canonical_solution, gauss_quadrature, mix, stieltjes_transform, Atom, DiscreteMeasure, TransformValue};
pub use moebius::{circle_through, image_of_real_line, Circle, Extended, MoebiusImage, MoebiusMap};
pub use moments::{apply_functional, check_positivity, classical_moments, moments_of, Family, MomentSequence, PositivityReport, SupportSpec};
pub use num_complex::Complex64;
pub use orthopoly::{orthonormal_system, truncated_t, OrthoSystem, PolyKind, MAX_ORDER};
pub use poly::Polynomial;
pub use weyl::{
    boundary_samples, cone_angle, contains, gap_circles, hamburger_disk, hamburger_region, interval_region,
    multi_gap_region, stieltjes_region, RegionJson, RegionKind, WeylRegion,
};
