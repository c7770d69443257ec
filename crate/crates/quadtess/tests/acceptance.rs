//! Acceptance criteria 1-10. Runs without the libtest harness so every criterion prints one
//! line, pass or fail; exits nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64 as C64;
use quadtess::angles::*;
use quadtess::boettcher::{landing_point, sample_angles};
use quadtess::cli::verify::functoriality_rate;
use quadtess::dynamics::*;
use quadtess::linearize::*;
use quadtess::semiconj::*;
use quadtess::tess::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(bool, String), quadtess::Error>;

fn cz(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn pair(p: u32, q: u32, r: f64, seg: Segment) -> Result<DegenerationPair, quadtess::Error> {
    build_pair(&PairSpec::new(p, q, r, seg))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// brute force over numerators k/(2^q - 1): orbits of exact period q whose sorted order is
// shifted by p under doubling
fn brute_rotation_cycles(p: u32, q: u32) -> Vec<Vec<u64>> {
    let d = (1u64 << q) - 1;
    let mut out = Vec::new();
    for k in 0..d.max(1) {
        let mut orbit = vec![k];
        let mut j = (2 * k) % d.max(1);
        while j != k {
            orbit.push(j);
            j = (2 * j) % d.max(1);
        }
        if orbit.len() as u32 != q || orbit.iter().min() != Some(&k) {
            continue;
        }
        let mut sorted = orbit.clone();
        sorted.sort();
        let n = sorted.len();
        let rotates = (0..n).all(|i| (2 * sorted[i]) % d.max(1) == sorted[(i + p as usize) % n]);
        if rotates {
            out.push(sorted);
        }
    }
    out
}

fn c1() -> Outcome {
    let want: Vec<RationalAngle> = [1u64, 2, 4].iter().map(|&n| RationalAngle::from_u64(n, 7)).collect();
    let mut ok = rotation_cycle(1, 3)?.cycle == want;
    let mut checked = 0;
    for q in 1..=6u32 {
        for p in 1..=q {
            if gcd(p, q) != 1 {
                continue;
            }
            let brute = brute_rotation_cycles(p, q);
            let d = ((1u64 << q) - 1).max(1);
            let got: Vec<u64> = rotation_cycle(p, q)?
                .cycle
                .iter()
                .map(|t| {
                    let scale = d / t.denom().to_u64_digits().first().copied().unwrap_or(1);
                    t.numer().to_u64_digits().first().copied().unwrap_or(0) * scale
                })
                .collect();
            ok &= brute.len() == 1 && brute[0] == got;
            checked += 1;
        }
    }
    Ok((ok, format!("rotation_cycle(1,3) = {{1/7, 2/7, 4/7}}; {checked} rotation numbers with q <= 6 match the brute-force search")))
}

fn c2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut parts = Vec::new();
    let mut ok = true;
    for big_r in [0.5, 0.9, 0.99] {
        let m = FundamentalModel::new(big_r, 1);
        let (mut worst, mut at, mut over, mut units) = (0.0f64, 0.0f64, 0, 0.0f64);
        for _ in 0..1000 {
            let w = m.point(rng.gen_range(-3.0..3.0), rng.gen_range(-PI..PI));
            let hw = model_h(&m, w)?;
            let d = (model_h(&m, m.map(w))? - (hw + 1.0)).norm();
            over += usize::from(d >= 1e-12);
            // residual in units of the f64 spacing at |H|
            units = units.max(d / (hw.norm().max(1.0) * f64::EPSILON));
            if d > worst {
                worst = d;
                at = hw.norm();
            }
        }
        ok &= worst < 1e-12;
        parts.push(format!("R={big_r}: {worst:.2e} at |H| = {at:.1e}, {over} over, {units:.0} eps|H|"));
    }
    Ok((ok, format!("max |H F - G H| at 1000 points each: {}", parts.join(", "))))
}

// λ^{-n}(f^{ln}(z) - α) up to the normalization K(0) = 1
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

fn c3() -> Outcome {
    let pr = pair(1, 3, 0.9, Segment::S1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    // Kœnigs: points where z and f^l(z) are both inside the local series disk
    let f = pr.f;
    let cyc = &pr.o_f;
    let l = cyc.period;
    let k = Koenigs::new(f, &cyc.points)?;
    let (mut kres, mut kn) = (0.0f64, 0);
    let mut ktries = 0;
    while kn < 1000 && ktries < 1_000_000 {
        ktries += 1;
        let z = cyc.points[0] + C64::from_polar(k.radius * rng.gen_range(0.0f64..1.0).sqrt(), rng.gen_range(-PI..PI));
        let (Ok((v, _, 0)), Ok((v1, _, 0))) = (k.raw(z), k.raw(f.iterate(z, l))) else { continue };
        let (v, v1) = (v / k.norm, v1 / k.norm);
        kres = kres.max((v1 - cyc.multiplier * v).norm() / (1.0 + v.norm()));
        kn += 1;
    }
    let b0 = brute_koenigs(f, cyc.points[0], l, cyc.multiplier, cz(0.0, 0.0));
    let mut kor: f64 = 0.0;
    for i in -3..=3 {
        for j in -3..=3 {
            let z = cz(0.05 * i as f64, 0.05 * j as f64);
            let want = brute_koenigs(f, cyc.points[0], l, cyc.multiplier, z) / b0;
            kor = kor.max((want - k.eval(z)?).norm() / (1.0 + want.norm()));
        }
    }

    // Abel: petal points where z and g^{l'q'}(z) are both evaluated by the petal series
    let g = pr.g;
    let fat = Fatou::new(g, &pr.o_g.points, pr.prime_rot.1 as usize)?;
    let (mut ares, mut an, mut tries) = (0.0f64, 0, 0);
    while an < 1000 && tries < 1_000_000 {
        tries += 1;
        let half = PI / fat.q as f64;
        let xi = C64::from_polar(fat.rho * rng.gen_range(0.05..0.95), fat.psi0 + rng.gen_range(-half..half));
        let z = fat.beta + fat.pol_inv.eval(xi);
        let (Ok((v, _, 0)), Ok((v1, _, 0))) = (fat.raw(z), fat.raw(g.iterate(z, fat.steps))) else { continue };
        ares = ares.max((v1 - v - 1.0).norm());
        an += 1;
    }

    let mut phi = [0.0f64; 2];
    let mut phi_n = [0usize; 2];
    for (k, side) in [Side::F, Side::G].into_iter().enumerate() {
        let t = Tessellation::build(&pr, side)?;
        for z in t.base_samples(3) {
            if let Some(r) = t.series_residual(z)? {
                phi[k] = phi[k].max(r);
                phi_n[k] += 1;
            }
        }
    }
    let ok = kn == 1000 && kres < 1e-9 && kor < 1e-5 && an == 1000 && ares < 1e-6 && phi_n[0] > 0 && phi_n[1] > 0 && phi[0] < 1e-8 && phi[1] < 1e-6;
    Ok((
        ok,
        format!(
            "Koenigs {kres:.2e} at {kn} disk points (orbit oracle {kor:.1e}); Abel {ares:.2e} at {an} petal points; phi_f {:.2e} ({}), phi_g {:.2e} ({})",
            phi[0], phi_n[0], phi[1], phi_n[1]
        ),
    ))
}

fn c4() -> Outcome {
    let pr = pair(1, 3, 0.9, Segment::S1)?;
    let t = Tessellation::build(&pr, Side::F)?;
    let (good, bad, edge) = functoriality_rate(&t, 10_000, 4);
    let total = good + bad + edge;
    let rate = good as f64 / total as f64;
    Ok((total == 10_000 && rate >= 0.99, format!("{good}/{total} forward ({:.2}%), {edge} at edge tolerance, {bad} other", 100.0 * rate)))
}

fn c5() -> Outcome {
    let pr = pair(1, 3, 0.9, Segment::S1)?;
    let f = Tessellation::build(&pr, Side::F)?;
    let g = Tessellation::build(&pr, Side::G)?;
    let addrs = sample_addresses(&pr.rot, pr.l, 50, 3, 5);
    let rf = f.verify_edge_sharing(&addrs);
    let rg = g.verify_edge_sharing(&addrs);
    let mism = rf.partner_mismatches(&rg).len();
    let ok = addrs.len() == 50 && rf.all_ok() && rg.all_ok() && mism == 0;
    Ok((ok, format!("{} addresses; f {}/{}, g {}/{}, {mism} critical partner mismatches", addrs.len(), rf.passed(), addrs.len(), rg.passed(), addrs.len())))
}

fn pairwise(pts: &[C64]) -> (f64, f64) {
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d = (pts[i] - pts[j]).norm();
            lo = lo.min(d);
            hi = hi.max(d);
        }
    }
    (lo, hi)
}

fn c6() -> Outcome {
    let pr = pair(1, 3, 0.9, Segment::S1)?;
    let cycle = rotation_cycle(1, 3)?.cycle;
    let on_g = cycle.iter().map(|t| landing_point(pr.g, t)).collect::<Result<Vec<_>, _>>()?;
    let on_f = cycle.iter().map(|t| landing_point(pr.f, t)).collect::<Result<Vec<_>, _>>()?;
    let (_, g_spread) = pairwise(&on_g);
    let (f_gap, _) = pairwise(&on_f);
    let arcs = degenerating_arcs(&pr)?;
    let mut arc_err: f64 = 0.0;
    let mut hit = vec![false; 3];
    for a in &arcs {
        arc_err = arc_err.max((a.points[0] - pr.alpha0).norm());
        let last = *a.points.last().unwrap_or(&pr.alpha0);
        let (k, d) = on_f.iter().enumerate().map(|(k, p)| (k, (p - last).norm())).fold((0, f64::INFINITY), |b, x| if x.1 < b.1 { x } else { b });
        hit[k] = true;
        arc_err = arc_err.max(d);
    }
    let ok = g_spread < 1e-4 && f_gap > 1e-2 && arcs.len() == 3 && hit.iter().all(|&h| h) && arc_err < 1e-4;
    Ok((ok, format!("r=1 spread {g_spread:.2e}; r=0.9 min gap {f_gap:.3}; {} arcs from alpha to the three landing points, error {arc_err:.2e}", arcs.len())))
}

fn c7() -> Outcome {
    let pairs = [0.9, 0.99, 0.999].iter().map(|&r| pair(1, 3, r, Segment::S1)).collect::<Result<Vec<_>, _>>()?;
    let rows = convergence_report(&pairs, &SampleSpec::default())?;
    let agg: Vec<f64> = rows.iter().map(|w| w.aggregate()).collect();
    let haus: Vec<f64> = rows.iter().map(|w| w.panel_hausdorff).collect();
    let dec = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(" > ");
    Ok((dec(&agg) && dec(&haus), format!("sup|h - id| {}; panel Hausdorff {}", fmt(&agg), fmt(&haus))))
}

fn c8() -> Outcome {
    let pr = pair(1, 3, 0.9, Segment::S1)?;
    let q = pr.q as usize;
    let lam = pr.o_f.multiplier;
    let mut pts = pr.o_f.points.clone();
    pts.rotate_left(pr.o_f.nearest_index(pr.alpha0));
    let jet = cycle_jet(&pts, 2 * q + 3);
    let (ch, nf) = normal_form(&jet, lam, q)?;
    let round = ch.compose(&jet.compose(&ch.invert()?)).max_abs_diff(&nf, 2 * q);

    let map = |w: C64| w + 1.0 + 0.1 / w;
    let a = cz(1.0, 0.0);
    let mut ueda: f64 = 0.0;
    let mut ratio = [0.0; 2];
    for (k, x) in [50.0, 500.0].into_iter().enumerate() {
        let z = cz(x, 0.0);
        let u = ueda_linearize(map, 1.0, a, z)?;
        ueda = ueda.max((ueda_linearize(map, 1.0, a, map(z))? - u - 1.0).norm());
        ratio[k] = (u / z - 1.0).norm();
    }

    let mut inc_ok = true;
    let mut ratios = Vec::new();
    for eps in [1e-2, 1e-3] {
        let lam = cz(1.0 - eps, 0.0);
        let rep = invariant_regions_check(lam, q, &model_jet(lam, q, 2 * q + 1), 1000)?;
        inc_ok &= rep.passed && rep.e_inside == rep.e_total && rep.d_margin < 1.0;
        ratios.push(rep.ratio);
    }
    let spread = ratios[0].max(ratios[1]) / ratios[0].min(ratios[1]);
    let ok = round < 1e-12 && ueda < 1e-9 && ratio[1] < ratio[0] && ratio[0] < 0.05 && inc_ok && spread < 3.0;
    Ok((
        ok,
        format!(
            "jet round trip {round:.1e}; Ueda residual {ueda:.1e}, |u/z - 1| {:.1e} at 50, {:.1e} at 500; inclusions {}, path ratio spread {spread:.2}",
            ratio[0],
            ratio[1],
            if inc_ok { "hold" } else { "fail" }
        ),
    ))
}

fn c9() -> Outcome {
    let pr = pair(1, 3, 0.9, Segment::S1)?;
    let h = SemiconjHandle::build(&pr)?;
    let cycle = rotation_cycle(1, 3)?.cycle;
    let pts = cycle.iter().map(|t| h.h_julia(t)).collect::<Result<Vec<_>, _>>()?;
    let (f_gap, _) = pairwise(&pts.iter().map(|p| p.0).collect::<Vec<_>>());
    let (_, g_spread) = pairwise(&pts.iter().map(|p| p.1).collect::<Vec<_>>());
    let pinch = h.pinch_image_of_arc(&cycle).is_ok();

    let p1 = pair(1, 1, 0.9, Segment::S1)?;
    let h1 = SemiconjHandle::build(&p1)?;
    let img = sample_angles(24).iter().map(|t| h1.h_julia(t)).collect::<Result<Vec<_>, _>>()?;
    // distinct points of J_f must stay distinct in J_g
    let mut worst = f64::INFINITY;
    for i in 0..img.len() {
        for j in i + 1..img.len() {
            if (img[i].0 - img[j].0).norm() > 1e-6 {
                worst = worst.min((img[i].1 - img[j].1).norm());
            }
        }
    }
    let ok = f_gap > 1e-2 && g_spread < 1e-4 && pinch && worst > 1e-3;
    Ok((ok, format!("q=3: 3 points {f_gap:.3} apart map within {g_spread:.1e}; q=1: min image separation {worst:.3} over {} angles", img.len())))
}

fn c10() -> Outcome {
    let coarse = SemiconjHandle::build(&pair(1, 3, 0.9, Segment::S2)?)?;
    let fine = SemiconjHandle::build(&pair(1, 3, 0.9, Segment::S1)?)?;
    let addrs = sample_addresses(&coarse.pair.rot, coarse.pair.l, 20, 3, 10);
    let checks: Vec<KappaCheck> = addrs.iter().map(|a| kappa_spot_check(&coarse, &fine, a)).collect();
    let good = checks.iter().filter(|k| k.ok()).count();
    let res = checks.iter().map(|k| k.conj_residual).fold(0.0, f64::max);
    Ok((addrs.len() == 20 && good == 20 && res < 1e-9, format!("{good}/{} coarse tiles land in the union of fine levels, conjugacy residual {res:.1e}", addrs.len())))
}

fn main() -> ExitCode {
    // `cargo test -- --list` and filters: nothing to list, run everything otherwise
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("rotation cycles", c1),
        ("model conjugacy", c2),
        ("linearizer residuals", c3),
        ("functoriality", c4),
        ("edge sharing", c5),
        ("cycle rays and arcs", c6),
        ("convergence", c7),
        ("appendix suite", c8),
        ("pinching on J", c9),
        ("kappa", c10),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (pass, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!pass);
        println!("criterion {:>2} {}: {name}: {detail} [{:.1}s]", k + 1, if pass { "PASS" } else { "FAIL" }, t.elapsed().as_secs_f64());
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
