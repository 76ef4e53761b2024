use proptest::prelude::*;
use weyl_core::kernels::relation_sides;
use weyl_core::moebius::classify;
use weyl_core::weyl::{numeric_vertex_angle, validate_membership};
use weyl_core::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn measure(atoms: &[(f64, f64)]) -> Option<DiscreteMeasure> {
    let mut xs: Vec<(f64, f64)> = atoms.to_vec();
    xs.sort_by(|p, q| p.0.total_cmp(&q.0));
    xs.dedup_by(|p, q| (p.0 - q.0).abs() < 0.05);
    DiscreteMeasure::new(xs.into_iter().map(|(x, w)| Atom::new(x, w)).collect()).ok()
}

fn system_of(mu: &DiscreteMeasure, n: usize) -> Option<OrthoSystem> {
    if mu.atoms().len() <= n {
        return None;
    }
    let s = moments_of(mu, 2 * n + 1).ok()?;
    orthonormal_system(&s, n).ok()
}

fn transform(mu: &DiscreteMeasure, z: Complex64) -> Complex64 {
    stieltjes_transform(mu, z).unwrap().value
}

fn upper() -> impl Strategy<Value = Complex64> {
    (-3.0..3.0f64, 0.05..3.0f64).prop_map(|(x, y)| c(x, y))
}

fn anywhere() -> impl Strategy<Value = Complex64> {
    (-2.0..2.0f64, -2.0..2.0f64).prop_map(|(x, y)| c(x, y))
}

fn atoms(lo: f64, hi: f64, count: std::ops::Range<usize>) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((lo..hi, 0.05..1.0f64), count)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orthonormal_under_the_functional(xs in atoms(-3.0, 3.0, 5..9), n in 1usize..4) {
        let Some(mu) = measure(&xs) else { return Ok(()) };
        let Some(sys) = system_of(&mu, n) else { return Ok(()) };
        let s = sys.moments().values();
        for j in 0..=n {
            for k in 0..=n {
                let prod = sys.p(j).unwrap() * sys.p(k).unwrap();
                let got = apply_functional(sys.moments(), &prod).unwrap();
                let want = if j == k { 1.0 } else { 0.0 };
                // the sum cancels; scale by the size of its terms
                let size: f64 = prod.coeffs().iter().zip(s).map(|(c, m)| (c * m).abs()).sum();
                prop_assert!((got - want).abs() < 1e-12 * size, "<P_{},P_{}> = {}", j, k, got);
            }
        }
    }

    #[test]
    fn sum_and_determinant_kernels_agree(xs in atoms(-3.0, 3.0, 6..9), n in 0usize..3, z in anywhere(), w in anywhere()) {
        let Some(mu) = measure(&xs) else { return Ok(()) };
        let Some(sys) = system_of(&mu, n + 1) else { return Ok(()) };
        for kind in KernelKind::ALL {
            let sum = kernel(&sys, kind, n, z, w).unwrap();
            let det = kernel_det(&sys, kind, n, z, w).unwrap();
            prop_assert!((sum - det).norm() <= 1e-9 * (1.0 + sum.norm()), "{:?}: {} vs {}", kind, sum, det);
        }
    }

    #[test]
    fn kernel_relations(xs in atoms(-3.0, 3.0, 5..9), n in 0usize..4, q in prop::array::uniform4(anywhere())) {
        let Some(mu) = measure(&xs) else { return Ok(()) };
        let Some(sys) = system_of(&mu, n) else { return Ok(()) };
        for relation in Relation::ALL {
            let (lhs, rhs) = relation_sides(&sys, n, relation, q).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()), "{:?}", relation);
        }
    }

    #[test]
    fn kernels_commute_with_conjugation(xs in atoms(-3.0, 3.0, 5..9), n in 0usize..4, z in upper(), w in anywhere()) {
        let Some(mu) = measure(&xs) else { return Ok(()) };
        let Some(sys) = system_of(&mu, n) else { return Ok(()) };
        let k = kernels_at(&sys, n, z, w).unwrap();
        let kc = kernels_at(&sys, n, z.conj(), w.conj()).unwrap();
        for kind in KernelKind::ALL {
            prop_assert!((kc.get(kind) - k.get(kind).conj()).norm() <= 1e-12 * (1.0 + k.get(kind).norm()));
        }
    }

    #[test]
    fn moebius_image_matches_three_point_circle(m in prop::array::uniform4(anywhere()), ts in prop::array::uniform3(-5.0..5.0f64)) {
        let Ok(map) = MoebiusMap::new(m[0], m[1], m[2], m[3]) else { return Ok(()) };
        let Ok(cls) = classify(&map) else { return Ok(()) };
        let MoebiusImage::Circle(k) = cls.image else { return Ok(()) };
        prop_assume!(k.radius < 1e3 && k.radius > 1e-3);
        let pts: Vec<Complex64> = ts.iter().filter_map(|&t| map.eval(t).finite()).collect();
        prop_assume!(pts.len() == 3);
        let Ok(fit) = circle_through(pts[0], pts[1], pts[2]) else { return Ok(()) };
        prop_assume!(fit.radius < 1e2 * k.radius);
        let scale = 1.0 + k.radius + k.center.norm();
        prop_assert!((fit.center - k.center).norm() <= 1e-7 * scale);
        prop_assert!((fit.radius - k.radius).abs() <= 1e-7 * scale);
        for p in pts {
            prop_assert!(k.boundary_distance(p) <= 1e-9 * scale);
        }
    }

    #[test]
    fn moebius_image_ignores_a_common_factor(m in prop::array::uniform4(anywhere()), k in anywhere()) {
        prop_assume!(k.norm() > 0.1);
        let Ok(map) = MoebiusMap::new(m[0], m[1], m[2], m[3]) else { return Ok(()) };
        let (Ok(a), Ok(b)) = (classify(&map), classify(&map.scaled(k))) else { return Ok(()) };
        if let (MoebiusImage::Circle(p), MoebiusImage::Circle(q)) = (a.image, b.image) {
            let scale = 1.0 + p.radius + p.center.norm();
            prop_assert!((p.center - q.center).norm() <= 1e-9 * scale);
            prop_assert!((p.radius - q.radius).abs() <= 1e-9 * scale);
        }
    }

    #[test]
    fn hamburger_disks_nest_and_hold_the_transform(xs in atoms(-3.0, 3.0, 6..10), z in upper()) {
        let Some(mu) = measure(&xs) else { return Ok(()) };
        let w = transform(&mu, z);
        let mut prev: Option<Circle> = None;
        for n in 0..4 {
            let Some(sys) = system_of(&mu, n) else { break };
            let k = hamburger_disk(&sys, n, z).unwrap();
            prop_assert!(k.contains(w, 1e-9 * (1.0 + k.radius)), "n={}: {} not in {:?}", n, w, k);
            // the disk sits in the closed upper half-plane
            prop_assert!(k.center.im - k.radius >= -1e-9 * (1.0 + k.radius));
            if let Some(p) = prev {
                prop_assert!((k.center - p.center).norm() + k.radius <= p.radius + 1e-9 * (1.0 + p.radius));
            }
            prev = Some(k);
        }
    }

    #[test]
    fn mixtures_stay_in_the_disk(xs in atoms(-3.0, 3.0, 6..9), n in 1usize..3, t in prop::array::uniform2(-4.0..4.0f64), lambda in 0.0..1.0f64, z in upper()) {
        let Some(mu) = measure(&xs) else { return Ok(()) };
        let Some(sys) = system_of(&mu, n) else { return Ok(()) };
        let (Ok(m1), Ok(m2)) = (canonical_solution(&sys, n, t[0]), canonical_solution(&sys, n, t[1])) else { return Ok(()) };
        let Ok(mixed) = mix(&m1, &m2, lambda) else { return Ok(()) };
        let k = hamburger_disk(&sys, n, z).unwrap();
        prop_assert!(k.contains(transform(&mixed, z), 1e-8 * (1.0 + k.radius)));
        prop_assert!(k.boundary_distance(transform(&m1, z)) <= 1e-8 * (1.0 + k.radius));
    }

    #[test]
    fn stieltjes_region_holds_half_line_measures(xs in atoms(0.0, 4.0, 5..9), a in -1.0..0.0f64, n in 1usize..3, z in upper()) {
        let Some(mu) = measure(&xs) else { return Ok(()) };
        let Some(sys) = system_of(&mu, n) else { return Ok(()) };
        let Ok(region) = stieltjes_region(&sys, n, z, a) else { return Ok(()) };
        prop_assert!(region.contains(transform(&mu, z)));
        let check = validate_membership(&region, 50, 7).unwrap();
        prop_assert_eq!(check.violations, 0);
        // central differences lose accuracy once the lens has nearly collapsed
        let v = &region.vertices;
        if (v[0] - v[1]).norm() > 1e-3 * (1.0 + v[0].norm()) {
            let angle = region.vertex_angle.unwrap();
            prop_assert!((numeric_vertex_angle(&region).unwrap() - angle).abs() < 1e-6);
        }
    }

    #[test]
    fn interval_region_holds_measures_on_the_interval(xs in atoms(-1.0, 2.0, 6..10), m in 1usize..6, z in upper()) {
        let Some(mu) = measure(&xs) else { return Ok(()) };
        let Some(sys) = system_of(&mu, m / 2 + m % 2) else { return Ok(()) };
        let Ok(region) = interval_region(&sys, m, z, -1.0, 2.0) else { return Ok(()) };
        prop_assert!(region.contains(transform(&mu, z)), "m={}", m);
        let check = validate_membership(&region, 50, 11).unwrap();
        prop_assert_eq!(check.violations, 0, "m={}", m);
    }

    #[test]
    fn gap_region_holds_measures_off_the_gap(
        left in atoms(-4.0, -1.0, 3..5),
        right in atoms(1.0, 4.0, 3..5),
        n in 1usize..3,
        z in upper(),
    ) {
        let xs: Vec<_> = left.into_iter().chain(right).collect();
        let Some(mu) = measure(&xs) else { return Ok(()) };
        let Some(sys) = system_of(&mu, n) else { return Ok(()) };
        let region = gap_circles(&sys, n, z, -1.0, 1.0).unwrap();
        prop_assert!(region.contains(transform(&mu, z)));
        let check = validate_membership(&region, 50, 13).unwrap();
        prop_assert_eq!(check.violations, 0);
        let angle = region.vertex_angle.unwrap();
        prop_assert!((angle - cone_angle(z, -1.0, 1.0).unwrap()).abs() < 1e-15);
        let v = &region.vertices;
        if (v[0] - v[1]).norm() > 1e-3 * (1.0 + v[0].norm()) {
            prop_assert!((numeric_vertex_angle(&region).unwrap() - angle).abs() < 1e-6);
        }
    }

    #[test]
    fn boundary_samples_lie_on_their_circles(xs in atoms(-3.0, 3.0, 5..9), n in 1usize..3, z in upper()) {
        let Some(mu) = measure(&xs) else { return Ok(()) };
        let Some(sys) = system_of(&mu, n) else { return Ok(()) };
        let region = hamburger_region(&sys, n, z).unwrap();
        for s in boundary_samples(&region, 25).unwrap() {
            let k = region.circles[region.arcs[s.arc].circle];
            prop_assert!(k.boundary_distance(s.value) <= 1e-9 * (1.0 + k.radius + k.center.norm()));
        }
    }
}
