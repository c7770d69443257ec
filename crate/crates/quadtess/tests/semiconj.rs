use num_complex::Complex64 as C64;
use proptest::prelude::*;
use quadtess::angles::*;
use quadtess::boettcher::{green_potential, sample_angles};
use quadtess::dynamics::*;
use quadtess::semiconj::*;
use quadtess::tess::*;
use quadtess::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pair(p: u32, q: u32, r: f64, seg: Segment) -> DegenerationPair {
    build_pair(&PairSpec::new(p, q, r, seg)).unwrap()
}

#[test]
fn model_conjugacy_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for big_r in [0.5, 0.9, 0.99] {
        let m = FundamentalModel::new(big_r, 1);
        let mut worst: f64 = 0.0;
        for _ in 0..1000 {
            // |W - a| between a R^3 and a R^-3, off the slit
            let x = rng.gen_range(-3.0..3.0);
            let v = rng.gen_range(-3.1..3.1);
            let w = m.point(x, v);
            let lhs = model_h(&m, m.map(w)).unwrap();
            let rhs = model_h(&m, w).unwrap() + 1.0;
            worst = worst.max((lhs - rhs).norm() / rhs.norm().max(1.0));
        }
        assert!(worst < 1e-12, "R = {big_r}: {worst:e}");
    }
}

#[test]
fn model_h_inverse_and_slit() {
    let m = FundamentalModel::new(0.9, 1);
    for (x, v) in [(0.2, 1.0), (-2.0, -0.3), (5.0, 3.0)] {
        let w = m.point(x, v);
        assert!((model_h_inverse(&m, model_h(&m, w).unwrap()) - w).norm() < 1e-10 * w.norm().max(1.0));
        let (x1, y) = h_coords(&m, x, v);
        let (x2, v2) = h_coords_inverse(&m, x1, y);
        assert!((x2 - x).abs() < 1e-14 && (v2 - v).abs() < 1e-12);
    }
    assert_eq!(model_h(&m, C64::new(m.a + 1.0, 0.0)), Err(Error::OnSlit));
    // the critical ray arg(W - a) = ±π goes to the real axis
    assert!(model_h(&m, C64::new(m.a - 2.0, 0.0)).unwrap().im.abs() < 1e-12);
}

#[test]
fn interior_semiconjugacy() {
    let pr = pair(1, 3, 0.9, Segment::S1);
    let h = SemiconjHandle::build(&pr).unwrap();
    let pts = interior_samples(&h.g_tess, &pr, &SampleSpec::default());
    assert!(pts.len() > 20);
    for z in pts {
        let w = h.h_interior(z).unwrap();
        let w1 = h.h_interior(pr.f.f(z)).unwrap();
        assert!((w1 - pr.g.f(w)).norm() < 1e-9);
        assert!((h.h_interior_inverse(w).unwrap() - z).norm() < 1e-9);
        assert_eq!(h.g_tess.address_of(w).unwrap(), h.f_tess.address_of(z).unwrap());
    }
}

#[test]
fn exterior_semiconjugacy() {
    let pr = pair(1, 2, 0.9, Segment::S1);
    let h = SemiconjHandle::build(&pr).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut n = 0;
    while n < 60 {
        let z = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if green_potential(pr.f, z) < 0.02 {
            continue;
        }
        n += 1;
        let w = h.h_exterior(z).unwrap();
        assert!((green_potential(pr.g, w) - green_potential(pr.f, z)).abs() < 1e-9);
        let w1 = h.h_exterior(pr.f.f(z)).unwrap();
        assert!((w1 - pr.g.f(w)).norm() < 1e-8 * w1.norm().max(1.0), "{z}");
        assert!((h.h_exterior_inverse(w).unwrap() - z).norm() < 1e-8);
    }
}

#[test]
fn cycle_rays_collapse_for_three_petals() {
    let pr = pair(1, 3, 0.9, Segment::S1);
    let h = SemiconjHandle::build(&pr).unwrap();
    let cycle = rotation_cycle(1, 3).unwrap().cycle;
    let pts: Vec<(C64, C64)> = cycle.iter().map(|t| h.h_julia(t).unwrap()).collect();
    for i in 0..3 {
        for j in (i + 1)..3 {
            assert!((pts[i].0 - pts[j].0).norm() > 1e-2);
            assert!((pts[i].1 - pts[j].1).norm() < 1e-4);
        }
    }
    let beta = h.pinch_image_of_arc(&cycle).unwrap();
    assert!((beta - pr.beta0).norm() < 1e-4);
    let mixed = vec![cycle[0].clone(), RationalAngle::from_u64(0, 1)];
    assert!(matches!(h.pinch_image_of_arc(&mixed), Err(Error::TypeMismatch(_))));
}

#[test]
fn julia_map_injective_for_one_petal() {
    let pr = pair(1, 1, 0.9, Segment::S1);
    let h = SemiconjHandle::build(&pr).unwrap();
    let pts: Vec<C64> = sample_angles(16).iter().map(|t| h.h_julia(t).unwrap().1).collect();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            assert!((pts[i] - pts[j]).norm() > 1e-3, "{i} {j}");
        }
    }
}

#[test]
fn kappa_respects_union_formula() {
    let fine = SemiconjHandle::build(&pair(1, 3, 0.9, Segment::S1)).unwrap();
    let coarse = SemiconjHandle::build(&pair(1, 3, 0.9, Segment::S2)).unwrap();
    assert_eq!((coarse.pair.q, coarse.pair.l), (1, 3));
    for a in sample_addresses(&coarse.pair.rot, coarse.pair.l, 20, 3, 7) {
        let k = kappa_spot_check(&coarse, &fine, &a);
        assert!(k.ok(), "{a}: {:?} {:?}", k.found, k.error);
        assert!(k.conj_residual < 1e-9);
    }
    let other = SemiconjHandle::build(&pair(1, 2, 0.9, Segment::S1)).unwrap();
    assert!(trans_component_kappa(&coarse, &other, C64::new(0.0, 0.0)).is_err());
}

#[test]
fn convergence_metrics_decrease() {
    let spec = SampleSpec { grid: 10, julia_angles: 8, panel_depth: 2, ..SampleSpec::default() };
    let pairs: Vec<_> = [0.9, 0.99].iter().map(|&r| pair(1, 2, r, Segment::S1)).collect();
    let rows = convergence_report(&pairs, &spec).unwrap();
    assert_eq!(rows.len(), 2);
    assert!(rows[1].aggregate() < rows[0].aggregate());
    assert!(rows[1].exterior.value < rows[0].exterior.value);
    assert!(rows[1].panel_hausdorff < rows[0].panel_hausdorff);
    assert!(rows.iter().all(|r| r.exterior.failures == 0 && r.julia.failures == 0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn model_h_conjugates(x in -6.0f64..6.0, v in -3.1f64..3.1, big_r in 0.3f64..0.995) {
        prop_assume!(v.abs() > 1e-3);
        let m = FundamentalModel::new(big_r, 1);
        let w = m.point(x, v);
        let lhs = model_h(&m, m.map(w)).unwrap();
        let rhs = model_h(&m, w).unwrap() + 1.0;
        prop_assert!((lhs - rhs).norm() < 1e-9 * rhs.norm().max(1.0));
    }

    #[test]
    fn model_h_keeps_signature(x in -6.0f64..6.0, v in -3.1f64..3.1) {
        prop_assume!(v.abs() > 1e-3);
        let m = FundamentalModel::new(0.8, 1);
        let y = model_h(&m, m.point(x, v)).unwrap();
        prop_assert_eq!(y.im > 0.0, v > 0.0);
    }
}
