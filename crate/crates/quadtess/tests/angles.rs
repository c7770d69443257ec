use proptest::prelude::*;
use quadtess::angles::*;
use quadtess::Error;

fn a(n: u64, d: u64) -> RationalAngle {
    RationalAngle::from_u64(n, d)
}

// Integer-only oracle: all period-q doubling cycles among k/(2^q - 1) with rotation p/q.
fn brute_cycle(p: u64, q: u64) -> Vec<u64> {
    let d = (1u64 << q) - 1;
    let mut found = Vec::new();
    for k in 0..d {
        let mut orbit = vec![k];
        let mut j = (2 * k) % d;
        while j != k {
            orbit.push(j);
            j = (2 * j) % d;
        }
        if orbit.len() as u64 != q || *orbit.iter().min().unwrap() != k {
            continue;
        }
        let mut sorted = orbit.clone();
        sorted.sort();
        let ok = (0..q as usize).all(|i| {
            let img = (2 * sorted[i]) % d;
            img == sorted[(i + p as usize) % q as usize]
        });
        if ok || q == 1 {
            found.push(sorted);
        }
    }
    assert_eq!(found.len(), 1, "rotation {p}/{q} should have exactly one cycle");
    found.pop().unwrap()
}

#[test]
fn double_examples() {
    assert_eq!(double(&a(0, 1)), a(0, 1));
    assert_eq!(double(&a(1, 7)), a(2, 7));
    assert_eq!(double(&a(9, 14)), a(2, 7));
}

#[test]
fn rotation_cycle_examples() {
    let r = rotation_cycle(1, 3).unwrap();
    assert_eq!(r.cycle, vec![a(1, 7), a(2, 7), a(4, 7)]);
    assert_eq!(r.critical_plus, a(4, 7));
    assert_eq!(r.critical_minus, a(1, 7));
    assert_eq!(rotation_cycle(1, 1).unwrap().cycle, vec![a(0, 1)]);
    let h = rotation_cycle(1, 2).unwrap();
    assert_eq!(h.cycle, vec![a(1, 3), a(2, 3)]);
    assert_eq!((h.critical_plus.clone(), h.critical_minus.clone()), (a(2, 3), a(1, 3)));
    assert!(matches!(rotation_cycle(2, 4), Err(Error::Argument(_))));
    assert!(matches!(rotation_cycle(0, 3), Err(Error::Argument(_))));
}

#[test]
fn rotation_cycle_matches_brute_force() {
    for q in 1..=6u32 {
        for p in 1..=q {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let d = (1u64 << q) - 1;
            let want: Vec<RationalAngle> = brute_cycle(p as u64, q as u64).into_iter().map(|k| a(k, d)).collect();
            let got = rotation_cycle(p, q).unwrap();
            assert_eq!(got.cycle, want, "p/q = {p}/{q}");
            for (j, t) in got.cycle.iter().enumerate() {
                assert_eq!(t.double(), got.cycle[(j + p as usize) % q as usize]);
                let den: u64 = t.denom().try_into().unwrap();
                assert_eq!(d % den, 0);
            }
            // the critical angles bound the sector opposite the shortest gap
            assert_eq!(got.critical_plus.double().arc_to(&got.critical_minus.double()) <= 1.0 / d as f64 + 1e-15, true);
        }
    }
}

#[test]
fn depth_examples() {
    let rot = rotation_cycle(1, 3).unwrap();
    assert_eq!(depth(&a(4, 7), &rot).unwrap(), 0);
    assert_eq!(depth(&a(9, 14), &rot).unwrap(), 2);
    assert!(matches!(depth(&a(1, 5), &rot), Err(Error::NotInThetaF(_))));
}

#[test]
fn preimage_examples() {
    assert_eq!(preimage_angles(&a(3, 7), 0), vec![a(3, 7)]);
    // 2 * 9/14 = 2/7, so 9/14 sits one level further back
    assert_eq!(preimage_angles(&a(4, 7), 1), vec![a(2, 7), a(11, 14)]);
    assert!(preimage_angles(&a(4, 7), 2).contains(&a(9, 14)));
    assert_eq!(preimage_angles(&a(0, 1), 2), vec![a(0, 1), a(1, 4), a(1, 2), a(3, 4)]);
}

#[test]
fn realizability_examples() {
    let rot = rotation_cycle(1, 3).unwrap();
    let t = a(9, 14);
    for m in -5..5 {
        assert!(address_realizable(&TileAddress::new(t.clone(), m, Sig::Plus), 1, &rot).unwrap());
    }
    // 9/14 reaches 4/7 at n = 2, 5, 8, ...; with l = 3 only m = 1 mod 3 works
    assert!(address_realizable(&TileAddress::new(t.clone(), 1, Sig::Plus), 3, &rot).unwrap());
    assert!(!address_realizable(&TileAddress::new(t.clone(), 0, Sig::Plus), 3, &rot).unwrap());
    assert!(address_realizable(&TileAddress::new(a(4, 7), 0, Sig::Plus), 3, &rot).unwrap());
    assert!(address_realizable(&TileAddress::new(a(1, 5), 0, Sig::Plus), 3, &rot).is_err());
}

#[test]
fn subdivision_examples() {
    let t = a(9, 14);
    let c = TileAddress::new(t.clone(), 0, Sig::Plus);
    assert_eq!(subdivision_levels(&c, 1, 1), vec![c.clone()]);
    let lv: Vec<i64> = subdivision_levels(&c, 1, 3).iter().map(|x| x.level).collect();
    assert_eq!(lv, vec![0, 1, 2]);
    let c2 = TileAddress::new(t, 2, Sig::Minus);
    let s = subdivision_levels(&c2, 2, 2);
    assert_eq!(s.iter().map(|x| x.level).collect::<Vec<_>>(), vec![2, 4]);
    assert!(s.iter().all(|x| x.sig == Sig::Minus));
}

#[test]
fn serialization_round_trip() {
    let addr = TileAddress::new(a(9, 14), -3, Sig::Minus);
    let s = addr.to_string();
    assert_eq!(s, "theta=9/14 level=-3 sig=-");
    assert_eq!(s.parse::<TileAddress>().unwrap(), addr);
    assert_eq!("6/8".parse::<RationalAngle>().unwrap(), a(3, 4));
}

#[test]
fn primitive_alias() {
    let rot = rotation_cycle(1, 1).unwrap().with_critical(a(5, 7), a(2, 7));
    let x = TileAddress::new(a(5, 7), 4, Sig::Minus);
    assert_eq!(normalize_primitive(&x, &rot), TileAddress::new(a(2, 7), 4, Sig::Minus));
    let y = TileAddress::new(a(2, 7), 4, Sig::Plus);
    assert_eq!(normalize_primitive(&y, &rot), TileAddress::new(a(5, 7), 4, Sig::Plus));
    let z = TileAddress::new(a(5, 7), 4, Sig::Plus);
    assert_eq!(normalize_primitive(&z, &rot), z);
}

#[test]
fn depth_counts() {
    let rot = rotation_cycle(1, 3).unwrap();
    assert_eq!(angles_of_depth(&rot, Sig::Plus, 0), vec![a(4, 7)]);
    // one of the two halves of 4/7 is the cycle member 2/7, which reaches 4/7 after one step
    assert_eq!(angles_of_depth(&rot, Sig::Plus, 1), vec![a(2, 7), a(11, 14)]);
    // 1/7 -> 2/7 -> 4/7
    assert!(angles_of_depth(&rot, Sig::Plus, 2).contains(&a(1, 7)));
}

proptest! {
    #[test]
    fn odd_part_preserved(n in 0u64..10_000, d in 1u64..10_000) {
        let t = a(n % d, d);
        let odd = |x: &RationalAngle| { let v: u64 = x.denom().try_into().unwrap(); v >> v.trailing_zeros() };
        let dt = t.double();
        if !dt.is_zero() {
            prop_assert_eq!(odd(&dt), odd(&t));
        }
        let (pre, per) = t.preperiod_period();
        prop_assert_eq!(t.iterate(pre + per), t.iterate(pre));
    }

    #[test]
    fn preimages_are_complete(n in 0u64..500, d in 1u64..500, k in 0usize..6) {
        let t = a(n % d, d);
        let pre = preimage_angles(&t, k);
        prop_assert_eq!(pre.len(), 1 << k);
        for s in &pre {
            prop_assert_eq!(s.iterate(k), t.clone());
        }
    }

    #[test]
    fn depth_decreases(k in 0usize..10, idx in 0usize..1024) {
        let rot = rotation_cycle(1, 3).unwrap();
        let pre = preimage_angles(&rot.critical_plus, k);
        let t = &pre[idx % pre.len()];
        let d = depth(t, &rot).unwrap();
        if d >= 1 {
            prop_assert_eq!(depth(&t.double(), &rot).unwrap(), d - 1);
        }
    }
}
