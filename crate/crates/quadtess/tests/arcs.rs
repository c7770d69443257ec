use num_complex::Complex64 as C64;
use quadtess::angles::RationalAngle;
use quadtess::boettcher::landing_point;
use quadtess::dynamics::*;
use quadtess::geom::{dist_to_polyline, hausdorff};
use quadtess::linearize::degenerating_arcs;

fn pair(p: u32, q: u32, r: f64) -> DegenerationPair {
    build_pair(&PairSpec::new(p, q, r, Segment::S1)).unwrap()
}

#[test]
fn single_arc_is_real_and_ends_at_beta() {
    let pr = pair(1, 1, 0.9);
    let arcs = degenerating_arcs(&pr).unwrap();
    assert_eq!(arcs.len(), 1);
    let a = &arcs[0];
    assert!(a.complete);
    assert!(a.points.iter().all(|z| z.im.abs() < 1e-9));
    // the repelling fixed point, from the quadratic formula
    let beta = 0.5 + (0.25 - pr.f.c).sqrt();
    assert!((a.endpoint - beta).norm() < 1e-10);
    assert!((a.points.last().unwrap() - beta).norm() < 1e-4);
    assert_eq!(a.angle, Some(RationalAngle::from_u64(0, 1)));
}

#[test]
fn three_arcs_land_at_cycle_rays() {
    let pr = pair(1, 3, 0.9);
    let arcs = degenerating_arcs(&pr).unwrap();
    assert_eq!(arcs.len(), 3);
    let mut found = Vec::new();
    for a in &arcs {
        assert!(a.complete);
        assert!((a.points[0] - pr.alpha0).norm() < 1e-14);
        let last = *a.points.last().unwrap();
        let best = [1u64, 2, 4]
            .iter()
            .map(|&n| (n, (landing_point(pr.f, &RationalAngle::from_u64(n, 7)).unwrap() - last).norm()))
            .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap())
            .unwrap();
        assert!(best.1 < 1e-4, "arc {} ends {} away", a.index, best.1);
        found.push(best.0);
    }
    found.sort();
    assert_eq!(found, vec![1, 2, 4]);
    // the endpoints are distinct repelling points
    for i in 0..3 {
        for j in i + 1..3 {
            assert!((arcs[i].endpoint - arcs[j].endpoint).norm() > 1e-2);
        }
    }
}

#[test]
fn arcs_permuted_by_rotation() {
    let pr = pair(1, 3, 0.9);
    let arcs = degenerating_arcs(&pr).unwrap();
    for k in 0..3 {
        let img: Vec<C64> = arcs[k].polyline().iter().map(|&z| pr.f.f(z)).collect();
        let target = arcs[(k + 1) % 3].polyline();
        // every image point lies on the target arc
        let d = img.iter().map(|&z| dist_to_polyline(z, &target)).fold(0.0, f64::max);
        assert!(d < 1e-3, "arc {k}: {d}");
        assert!(hausdorff(&img, &target) < 0.2);
    }
}
