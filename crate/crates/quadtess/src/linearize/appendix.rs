//! Invariant regions and small invariant paths for f_ε(z) = λ_ε z(1 + z^q + O(z^{2q})).

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::jet::Jet;
use crate::error::{Error, Result};
use crate::geom::diameter;

#[derive(Clone, Debug)]
pub struct RegionReport {
    pub eps: f64,
    pub q: usize,
    pub samples: usize,
    /// max over ∂D of |f(z)|^q / (ε/2); below 1 means f(D) ⊂ D°
    pub d_margin: f64,
    /// number of ∂E samples whose preimage lands in E°
    pub e_inside: usize,
    pub e_total: usize,
    pub path_diameter: f64,
    /// path_diameter / ε^{1/q}
    pub ratio: f64,
    /// distance from the backward end of each path to the nearest nonzero fixed point
    pub endpoint_gap: f64,
    pub passed: bool,
}

/// λ z (1 + z^q) as a jet of the given order.
pub fn model_jet(lambda: C64, q: usize, order: usize) -> Jet {
    let mut j = Jet::zeros(order);
    j.set(1, lambda);
    if q + 1 <= order {
        j.set(q + 1, lambda);
    }
    j
}

fn inverse_point(jet: &Jet, inv: &Jet, w: C64) -> C64 {
    let mut z = inv.eval(w);
    for _ in 0..30 {
        let (v, d) = jet.eval_d(z);
        let dz = (v - w) / d;
        z -= dz;
        if dz.norm() < 1e-18 + 1e-15 * z.norm() {
            break;
        }
    }
    z
}

fn in_e_interior(z: C64, eps: f64, q: usize) -> bool {
    let zq = z.powi(q as i32);
    let r = zq.norm();
    r > eps / 2.0 && r < 4.0 * eps && zq.arg().abs() < PI / 3.0
}

/// Samples ∂D and ∂E, checks f(D) ⊂ D° and f^{-1}(∂E) ⊂ E°, and builds the invariant paths.
pub fn invariant_regions_check(lambda: C64, q: usize, jet: &Jet, samples: usize) -> Result<RegionReport> {
    let eps = 1.0 - lambda.norm();
    if eps <= 0.0 {
        return Ok(RegionReport {
            eps: 0.0,
            q,
            samples: 0,
            d_margin: 0.0,
            e_inside: 0,
            e_total: 0,
            path_diameter: 0.0,
            ratio: 0.0,
            endpoint_gap: 0.0,
            passed: true,
        });
    }
    let inv = jet.invert()?;
    let qf = q as f64;
    let rd = (eps / 2.0).powf(1.0 / qf);
    let mut d_margin: f64 = 0.0;
    for k in 0..samples {
        let z = C64::from_polar(rd, 2.0 * PI * k as f64 / samples as f64);
        let w = jet.eval(z);
        d_margin = d_margin.max(w.norm().powf(qf) / (eps / 2.0));
    }
    if d_margin >= 1.0 {
        return Err(Error::ViolationFound(format!("f(D) not inside D, margin {d_margin}")));
    }
    // ∂E: four edges of each of the q components, parametrized in ζ = z^q
    let per = samples.div_ceil(4 * q).max(4);
    let mut boundary = Vec::new();
    let (r1, r2, t) = (eps / 2.0, 4.0 * eps, PI / 3.0);
    for j in 0..q {
        let root = |zeta: C64| C64::from_polar(zeta.norm().powf(1.0 / qf), (zeta.arg() + 2.0 * PI * j as f64) / qf);
        for k in 0..per {
            let s = k as f64 / (per - 1) as f64;
            let a = -t + 2.0 * t * s;
            boundary.push(root(C64::from_polar(r1, a)));
            boundary.push(root(C64::from_polar(r2, a)));
            let rr = r1 + (r2 - r1) * s;
            boundary.push(root(C64::from_polar(rr, t)));
            boundary.push(root(C64::from_polar(rr, -t)));
        }
    }
    let mut e_inside = 0;
    let mut witness = None;
    for &b in &boundary {
        let pre = inverse_point(jet, &inv, b);
        if in_e_interior(pre, eps, q) {
            e_inside += 1;
        } else if witness.is_none() {
            witness = Some(b);
        }
    }
    if let Some(w) = witness {
        return Err(Error::ViolationFound(format!("f^-1 of boundary point {w} leaves E")));
    }
    // invariant paths from the segments [z_j, f(z_j)], z_j on e_1 with arg z^q = 0
    let mut pts = Vec::new();
    let mut gap: f64 = 0.0;
    let n_seg = 16;
    for j in 0..q {
        let zj = C64::from_polar(rd, 2.0 * PI * j as f64 / qf);
        let fz = jet.eval(zj);
        let seg: Vec<C64> = (0..=n_seg).map(|k| zj + (fz - zj) * (k as f64 / n_seg as f64)).collect();
        let mut fwd = seg.clone();
        for _ in 0..100_000 {
            pts.extend_from_slice(&fwd);
            if fwd[0].norm() < 1e-3 * rd {
                break;
            }
            fwd = fwd.iter().map(|&z| jet.eval(z)).collect();
        }
        let mut back = seg;
        let mut prev = back[0];
        for _ in 0..100_000 {
            back = back.iter().map(|&z| inverse_point(jet, &inv, z)).collect();
            pts.extend_from_slice(&back);
            if (back[0] - prev).norm() < 1e-9 * rd {
                break;
            }
            prev = back[0];
        }
        // nonzero fixed point of the jet near z^q = ε
        let mut p = C64::from_polar(eps.powf(1.0 / qf), 2.0 * PI * j as f64 / qf);
        for _ in 0..50 {
            let (v, d) = jet.eval_d(p);
            p -= (v - p) / (d - 1.0);
        }
        gap = gap.max((back[0] - p).norm());
    }
    let path_diameter = diameter(&thin(&pts, 4000));
    let ratio = path_diameter / eps.powf(1.0 / qf);
    Ok(RegionReport {
        eps,
        q,
        samples,
        d_margin,
        e_inside,
        e_total: boundary.len(),
        path_diameter,
        ratio,
        endpoint_gap: gap,
        passed: true,
    })
}

fn thin(pts: &[C64], n: usize) -> Vec<C64> {
    if pts.len() <= n {
        return pts.to_vec();
    }
    let step = pts.len() as f64 / n as f64;
    let mut out: Vec<C64> = (0..n).map(|k| pts[(k as f64 * step) as usize]).collect();
    out.push(*pts.last().unwrap());
    out
}
