//! Böttcher coordinate, external rays and their landing points.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::angles::RationalAngle;
use crate::dynamics::{cis, polish_periodic, QuadParam};
use crate::error::{Error, Result};
use crate::geom::{hausdorff, pull_back_curve};

const ESCAPE: f64 = 1e10;
/// Newton targets are placed where 2^m s reaches this potential.
const TARGET_POTENTIAL: f64 = 8.0;
pub const STEPS_PER_LEVEL: usize = 8;

pub fn green_potential(c: QuadParam, z: C64) -> f64 {
    let mut w = z;
    let mut scale = 1.0;
    for _ in 0..4000 {
        let r = w.norm();
        if r > ESCAPE {
            return r.ln() * scale;
        }
        w = c.f(w);
        scale *= 0.5;
    }
    0.0
}

/// φ_B(z) by the principal-branch product; exact for |z| >= max(2, |c|^(1/2)·2).
pub fn bottcher_far(c: QuadParam, z: C64) -> C64 {
    let mut w = z;
    let mut logsum = z.ln();
    let mut scale = 0.5;
    for _ in 0..200 {
        let t = c.c / (w * w);
        if t.norm() < 1e-18 {
            break;
        }
        logsum += (C64::new(1.0, 0.0) + t).ln() * scale;
        w = c.f(w);
        scale *= 0.5;
    }
    logsum.exp()
}

/// Point with Böttcher coordinate w, for |w| large.
pub fn inverse_bottcher_far(c: QuadParam, w: C64) -> C64 {
    let mut z = w - c.c / (2.0 * w);
    for _ in 0..4 {
        let e = bottcher_far(c, z) - w;
        z -= e / (1.0 - c.c / (2.0 * z * z));
    }
    z
}

fn level_m(s: f64) -> usize {
    let mut m = 0;
    let mut v = s;
    while v < TARGET_POTENTIAL {
        v *= 2.0;
        m += 1;
    }
    m
}

/// Solve f^m(x) = B^{-1}(exp(2^m s + 2πi θm)) by Newton from x0.
fn ray_newton(c: QuadParam, x0: C64, m: usize, theta_m: f64, s: f64, max_step: f64) -> Option<C64> {
    let w = (2f64.powi(m as i32) * s).exp() * cis(2.0 * PI * theta_m);
    let target = inverse_bottcher_far(c, w);
    let mut x = x0;
    for _ in 0..40 {
        let (v, d) = c.iterate_d(x, m);
        let dx = (v - target) / d;
        if !dx.is_finite() || dx.norm() > max_step {
            return None;
        }
        x -= dx;
        if dx.norm() < 1e-14 * (1.0 + x.norm()) {
            return Some(x);
        }
    }
    let (v, _) = c.iterate_d(x, m);
    if ((v - target) / target).norm() < 1e-10 {
        Some(x)
    } else {
        None
    }
}

#[derive(Clone, Debug)]
pub struct RayTrace {
    pub angle: RationalAngle,
    pub points: Vec<C64>,
    pub potentials: Vec<f64>,
    pub landing_estimate: C64,
    pub converged: bool,
}

const EXTEND_GENERATIONS: usize = 200_000;

pub fn trace_ray(c: QuadParam, theta: &RationalAngle, min_potential: f64) -> RayTrace {
    trace_ray_from(c, theta, 4.0, min_potential, STEPS_PER_LEVEL)
}

pub fn trace_ray_from(c: QuadParam, theta: &RationalAngle, s0: f64, min_potential: f64, per_level: usize) -> RayTrace {
    // exact doubling orbit of the angle for each needed m
    let m_max = level_m(min_potential) + 1;
    let mut orbit = Vec::with_capacity(m_max + 1);
    let mut t = theta.clone();
    for _ in 0..=m_max {
        orbit.push(t.to_f64());
        t = t.double();
    }
    let mut x = inverse_bottcher_far(c, s0.exp() * cis(2.0 * PI * orbit[0]));
    let mut points = vec![x];
    let mut potentials = vec![s0];
    let ratio = 0.5f64.powf(1.0 / per_level as f64);
    let mut s = s0;
    let mut converged = true;
    while s > min_potential {
        let mut next = (s * ratio).max(min_potential * 0.999999);
        let mut ok = None;
        for _ in 0..12 {
            let m = level_m(next);
            let step = if points.len() < 2 {
                f64::INFINITY
            } else {
                4.0 * (points[points.len() - 1] - points[points.len() - 2]).norm().max(1e-12)
            };
            if let Some(y) = ray_newton(c, x, m, orbit[m], next, step) {
                ok = Some(y);
                break;
            }
            next = s - (s - next) / 2.0;
        }
        match ok {
            Some(y) => {
                x = y;
                s = next;
                points.push(x);
                potentials.push(s);
            }
            None => {
                converged = false;
                break;
            }
        }
    }
    RayTrace { angle: theta.clone(), landing_estimate: x, points, potentials, converged }
}

/// Landing point, with the periodic part snapped to the nearest of `known` when within 1e-3.
pub fn landing_point_snapped(c: QuadParam, theta: &RationalAngle, known: &[C64]) -> Result<C64> {
    let (pre, per) = theta.preperiod_period();
    let periodic = theta.iterate(pre);
    let tr = trace_ray(c, &periodic, 1e-7);
    if !tr.converged && tr.points.len() < 10 {
        return Err(Error::NewtonDivergence(format!("ray {periodic}")));
    }
    let end = extend_ray(c, &tr, per);
    let mut z = match known.iter().min_by(|a, b| (*a - end).norm().partial_cmp(&(*b - end).norm()).unwrap()) {
        Some(k) if (k - end).norm() < 1e-3 => *k,
        _ => polish_landing(c, end, per)?,
    };
    // pull back through the preperiodic part
    let mut chain = Vec::new();
    let mut u = theta.clone();
    for _ in 0..pre {
        chain.push(u.clone());
        u = u.double();
    }
    for a in chain.iter().rev() {
        let ray = trace_ray(c, a, 1e-7);
        let s = (z - c.c).sqrt();
        z = if (s - ray.landing_estimate).norm() <= (-s - ray.landing_estimate).norm() { s } else { -s };
    }
    Ok(z)
}

/// Continue a traced periodic ray toward its landing point by pulling its last fundamental piece
/// back by f^period along the branch that fixes the ray; returns the last point reached.
pub fn extend_ray(c: QuadParam, tr: &RayTrace, period: usize) -> C64 {
    let n = tr.points.len();
    let s_end = tr.potentials[n - 1];
    let k0 = tr.potentials.iter().position(|&s| s <= s_end * 2f64.powi(period as i32) * (1.0 + 1e-9)).unwrap_or(0);
    if !tr.converged || n - k0 < 4 {
        return tr.landing_estimate;
    }
    let mut piece = tr.points[k0..].to_vec();
    let mut last_move = f64::INFINITY;
    for g in 0..EXTEND_GENERATIONS {
        let start = *piece.last().unwrap();
        // once on the right branch a single point follows it
        let src = if g < 16 { piece.clone() } else { vec![start] };
        let next = pull_back_curve(c.c, period, &src, start, None);
        let end = *next.last().unwrap();
        let mv = (end - start).norm();
        piece = next;
        if mv < 1e-13 || (last_move.is_finite() && mv < last_move && mv * mv / (last_move - mv) < 1e-12) {
            break;
        }
        last_move = mv;
    }
    *piece.last().unwrap()
}

pub fn landing_point(c: QuadParam, theta: &RationalAngle) -> Result<C64> {
    landing_point_snapped(c, theta, &[])
}

/// Periodic point near the end of a ray: Newton on f^p(z) = z, then Schröder's iteration
/// on F/F' for multiple roots.
fn polish_landing(c: QuadParam, z0: C64, p: usize) -> Result<C64> {
    if let Ok(z) = polish_periodic(c, z0, p) {
        if (z - z0).norm() < 1e-2 {
            let (_, d) = c.iterate_d(z, p);
            if (d - 1.0).norm() > 1e-3 {
                return Ok(z);
            }
        }
    }
    let mut z = z0;
    for _ in 0..200 {
        let (f, d1, d2) = iterate_d2(c, z, p);
        let fz = f - z;
        let fp = d1 - 1.0;
        let denom = fp * fp - fz * d2;
        if denom.norm() == 0.0 {
            break;
        }
        let step = fz * fp / denom;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() < 1e-15 {
            break;
        }
    }
    Ok(z)
}

/// f^n(z) with first and second derivatives.
pub fn iterate_d2(c: QuadParam, z: C64, n: usize) -> (C64, C64, C64) {
    let mut w = z;
    let mut d1 = C64::new(1.0, 0.0);
    let mut d2 = C64::new(0.0, 0.0);
    for _ in 0..n {
        d2 = 2.0 * (d1 * d1 + w * d2);
        d1 = 2.0 * w * d1;
        w = w * w + c.c;
    }
    (w, d1, d2)
}

/// Angles k/(2^b - 1), k = 0..n, with b the smallest width holding n of them.
pub fn sample_angles(n: usize) -> Vec<RationalAngle> {
    let mut b = 2;
    while (1usize << b) - 1 < n {
        b += 1;
    }
    let d = (1u64 << b) - 1;
    (0..n as u64).map(|k| RationalAngle::from_u64(k * d / n as u64, d)).collect()
}

pub fn julia_hausdorff_sample(c1: QuadParam, c2: QuadParam, n_samples: usize) -> Result<f64> {
    let angles = sample_angles(n_samples);
    let pts = |c: QuadParam| -> Result<Vec<C64>> { angles.par_iter().map(|t| landing_point(c, t)).collect() };
    let a = pts(c1)?;
    let b = if c1 == c2 { a.clone() } else { pts(c2)? };
    Ok(hausdorff(&a, &b))
}

/// One step of an external-coordinate path: potential s, level m and the angle of f^m at that point.
#[derive(Clone, Copy, Debug)]
pub struct PathStep {
    pub s: f64,
    pub m: usize,
    pub theta_m: f64,
}

#[derive(Clone, Debug)]
pub struct ExternalCoord {
    pub potential: f64,
    pub angle: f64,
    pub path: Vec<PathStep>,
}

fn frac(x: f64) -> f64 {
    x - x.floor()
}

/// Potential and external angle of an escaping point, by following its ray outward.
pub fn external_coordinates(c: QuadParam, z: C64) -> Result<ExternalCoord> {
    let s0 = green_potential(c, z);
    if s0 <= 0.0 {
        return Err(Error::NotInInterior);
    }
    let angle_at = |x: C64, m: usize| frac(bottcher_far(c, c.iterate(x, m)).arg() / (2.0 * PI));
    let mut path = Vec::new();
    let mut x = z;
    let mut s = s0;
    let mut m = level_m(s);
    let mut th = angle_at(x, m);
    path.push(PathStep { s, m, theta_m: th });
    let ratio = 2f64.powf(1.0 / STEPS_PER_LEVEL as f64);
    let mut prev = x;
    while m > 0 {
        let mut next = s * ratio;
        let mut done = None;
        for _ in 0..12 {
            let nm = level_m(next);
            let nth = if nm == m { th } else { angle_at(x, nm) };
            let step = if path.len() < 2 { f64::INFINITY } else { 4.0 * (x - prev).norm().max(1e-12) };
            if let Some(y) = ray_newton(c, x, nm, nth, next, step) {
                done = Some((y, nm, nth));
                break;
            }
            next = s + (next - s) / 2.0;
        }
        let (y, nm, nth) = done.ok_or_else(|| Error::NewtonDivergence("outward ray continuation".into()))?;
        prev = x;
        x = y;
        s = next;
        m = nm;
        th = nth;
        path.push(PathStep { s, m, theta_m: th });
    }
    Ok(ExternalCoord { potential: s0, angle: th, path })
}

/// The point of c's exterior at the end of a path recorded by `external_coordinates`.
pub fn exterior_from_path(c: QuadParam, path: &[PathStep]) -> Result<C64> {
    let top = path.last().ok_or_else(|| Error::Argument("empty path".into()))?;
    let mut x = inverse_bottcher_far(c, top.s.exp() * cis(2.0 * PI * top.theta_m));
    let mut prev: Option<C64> = None;
    for st in path.iter().rev().skip(1) {
        let step = prev.map_or(f64::INFINITY, |p: C64| 4.0 * (x - p).norm().max(1e-12));
        let y = ray_newton(c, x, st.m, st.theta_m, st.s, step)
            .ok_or_else(|| Error::NewtonDivergence("inward ray continuation".into()))?;
        prev = Some(x);
        x = y;
    }
    Ok(x)
}

/// The point with Böttcher coordinate exp(s + 2πit) (float angle), by tracing inward.
pub fn bottcher_inverse(c: QuadParam, s: f64, t: f64) -> Result<C64> {
    let ratio = 2f64.powf(1.0 / STEPS_PER_LEVEL as f64);
    let mut levels = Vec::new();
    let mut v = s;
    loop {
        let m = level_m(v);
        levels.push(PathStep { s: v, m, theta_m: frac(t * 2f64.powi(m as i32)) });
        if m == 0 {
            break;
        }
        v *= ratio;
    }
    exterior_from_path(c, &levels)
}
