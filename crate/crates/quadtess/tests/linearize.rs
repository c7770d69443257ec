use num_complex::Complex64 as C64;
use quadtess::dynamics::*;
use quadtess::linearize::*;

fn cz(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[test]
fn iterate_normal_coeff_matches_composition() {
    let lam = 0.9 * cis(2.0 * std::f64::consts::PI / 3.0);
    for q in 1..=3usize {
        let mut j = Jet::zeros(2 * q + 1);
        j.set(1, lam);
        j.set(q + 1, cz(1.0, 0.0));
        assert_eq!(iterate_normal_coeff(lam, q, 0), cz(0.0, 0.0));
        assert!((iterate_normal_coeff(lam, q, 1) - 1.0).norm() < 1e-15);
        let two = lam.powi(q as i32 + 1) + lam;
        assert!((iterate_normal_coeff(lam, q, 2) - two).norm() < 1e-14);
        for n in 1..6 {
            let it = j.iterate(n);
            assert!((it.coeff(q + 1) - iterate_normal_coeff(lam, q, n)).norm() < 1e-12);
        }
    }
}

#[test]
fn normal_form_round_trip() {
    let lam = 0.9 * cis(2.0 * std::f64::consts::PI / 3.0);
    let q = 3;
    let s = Jet::from_coeffs(&[lam, cz(0.3, -0.2), cz(-0.5, 0.1), cz(0.7, 0.4), cz(0.05, 0.0), cz(0.0, 0.0), cz(0.0, 0.0), cz(0.0, 0.0), cz(0.0, 0.0), cz(0.0, 0.0), cz(0.0, 0.0)]);
    let (ch, nf) = normal_form(&s, lam, q).unwrap();
    let back = ch.compose(&s.compose(&ch.invert().unwrap()));
    assert!(back.max_abs_diff(&nf, 2 * q) < 1e-12);
    assert!(nf.coeff(2).norm() < 1e-12 && nf.coeff(3).norm() < 1e-12);
    assert!((nf.coeff(4) - 1.0).norm() < 1e-12);
    assert!(nf.coeff(5).norm() < 1e-12 && nf.coeff(6).norm() < 1e-12);

    // already normal
    let mut j2 = Jet::zeros(7);
    j2.set(1, lam);
    j2.set(4, cz(1.0, 0.0));
    let (ch2, nf2) = normal_form(&j2, lam, q).unwrap();
    assert!(ch2.max_abs_diff(&Jet::identity(7), 7) < 1e-14);
    assert!(nf2.max_abs_diff(&j2, 7) < 1e-14);
}

#[test]
fn small_divisor_detected() {
    // for q = 3 the order-3 elimination divides by λ^3 - λ = 0
    let mut j3 = Jet::zeros(7);
    j3.set(1, cz(-1.0, 0.0));
    j3.set(2, cz(1.0, 0.0));
    j3.set(3, cz(0.5, 0.0));
    assert!(matches!(normal_form(&j3, cz(-1.0, 0.0), 3), Err(quadtess::Error::SmallDivisor(3))));
}

// brute-force Kœnigs oracle: λ^{-n}(f^{ln}(z) - α) up to the normalizing constant
fn brute_koenigs(c: QuadParam, alpha: C64, l: usize, lam: C64, z: C64) -> C64 {
    let mut w = z;
    let mut s = cz(1.0, 0.0);
    for _ in 0..2000 {
        w = c.iterate(w, l);
        s /= lam;
        if (w - alpha).norm() < 1e-9 {
            break;
        }
    }
    (w - alpha) * s
}

#[test]
fn koenigs_normalization_and_equation() {
    for (p, q, r) in [(1, 3, 0.9), (1, 1, 0.5), (1, 2, 0.8)] {
        let f = param_s1(p, q, r);
        let cyc = find_attracting_cycle(f).unwrap();
        let k = Koenigs::new(f, &cyc.points).unwrap();
        assert!(k.eval(cyc.points[0]).unwrap().norm() < 1e-14);
        assert!((k.eval(cz(0.0, 0.0)).unwrap() - 1.0).norm() < 1e-12);
        let f0 = f.iterate(cz(0.0, 0.0), cyc.period);
        assert!((k.eval(f0).unwrap() - cyc.multiplier).norm() < 1e-10);
        let b0 = brute_koenigs(f, cyc.points[0], cyc.period, cyc.multiplier, cz(0.0, 0.0));
        for z in [cz(0.1, 0.05), cz(-0.2, 0.1), cz(0.0, -0.15)] {
            let want = brute_koenigs(f, cyc.points[0], cyc.period, cyc.multiplier, z) / b0;
            let got = k.eval(z).unwrap();
            assert!((want - got).norm() < 1e-5 * (1.0 + want.norm()), "{z}: {got} vs {want}");
            let fz = f.iterate(z, cyc.period);
            let res = (k.eval(fz).unwrap() - cyc.multiplier * got).norm();
            assert!(res < 1e-9 * (1.0 + got.norm()));
        }
    }
}

#[test]
fn koenigs_local_inverse() {
    let f = param_s1(1, 3, 0.9);
    let cyc = find_attracting_cycle(f).unwrap();
    let k = Koenigs::new(f, &cyc.points).unwrap();
    let w = cz(0.3, 0.2) * k.local_value_radius();
    let z = k.inverse_local(w).unwrap();
    assert!((k.eval(z).unwrap() - w).norm() < 1e-12);
}

// q = 1 oracle: g(w) = w + w^2 around 1/2 for c = 1/4; the Abel coordinate is
// -1/w + log(-w) - w/2 + O(w^2) in the attracting petal (w < 0 direction).
fn brute_fatou_quarter(z: C64, n: usize) -> C64 {
    let g = QuadParam::new(cz(0.25, 0.0));
    let w = g.iterate(z, n) - 0.5;
    -1.0 / w + (-w).ln() - w / 2.0 - n as f64
}

#[test]
fn fatou_quarter_against_orbit_oracle() {
    let g = QuadParam::new(cz(0.25, 0.0));
    let fat = Fatou::new(g, &[cz(0.5, 0.0)], 1).unwrap();
    assert!(fat.eval(cz(0.0, 0.0)).unwrap().norm() < 1e-12);
    assert!((fat.eval(cz(0.25, 0.0)).unwrap() - 1.0).norm() < 1e-9);
    assert!((fat.eval(g.iterate(cz(0.0, 0.0), 2)).unwrap() - 2.0).norm() < 1e-9);
    let n = 2_000;
    let base = brute_fatou_quarter(cz(0.0, 0.0), n);
    for z in [cz(0.1, 0.1), cz(-0.3, 0.2), cz(0.2, -0.3)] {
        let want = brute_fatou_quarter(z, n) - base;
        let got = fat.eval(z).unwrap();
        assert!((want - got).norm() < 1e-6, "{z}: {got} vs {want}");
    }
}

#[test]
fn fatou_abel_equation_rabbit_root() {
    let g = param_s1(1, 3, 1.0);
    let beta = cis(2.0 * std::f64::consts::PI / 3.0) / 2.0;
    let fat = Fatou::new(g, &[beta], 3).unwrap();
    let g3 = |z: C64| g.iterate(z, 3);
    assert!(fat.eval(cz(0.0, 0.0)).unwrap().norm() < 1e-12);
    assert!((fat.eval(g3(cz(0.0, 0.0))).unwrap() - 1.0).norm() < 1e-7);
    assert!((fat.eval(g3(g3(cz(0.0, 0.0)))).unwrap() - 2.0).norm() < 1e-7);
    for z in [cz(0.05, 0.02), cz(-0.1, 0.05), cz(0.02, -0.1)] {
        let v = fat.eval(z).unwrap();
        let v1 = fat.eval(g3(z)).unwrap();
        assert!((v1 - v - 1.0).norm() < 1e-6, "{z}: {v} {v1}");
    }
    let z = fat.inverse_deep(cz(40.0, 0.5)).unwrap();
    assert!((fat.eval(z).unwrap() - cz(40.0, 0.5)).norm() < 1e-8);
}
