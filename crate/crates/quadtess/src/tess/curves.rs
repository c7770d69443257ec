//! The curves every tessellation is cut along: the critical edge S from the marked cycle point to 0,
//! its continuation past 0 on either side, the degenerating arcs and the critical ray pair.

use num_complex::Complex64 as C64;

use crate::angles::{RationalAngle, Sig};
use crate::boettcher::trace_ray;
use crate::dynamics::QuadParam;
use crate::error::{Error, Result};
use crate::geom::{diameter, pull_back_curve, Polygon};
use crate::linearize::{Fatou, Koenigs};

const PIECE_POINTS: usize = 48;
const MAX_GENERATIONS: usize = 200_000;
const END_TOL: f64 = 1e-7;
/// parabolic tails converge like n^{-1/q}; they are cut here
const PARABOLIC_GENERATIONS: usize = 20_000;
const PARABOLIC_GAP: f64 = 2e-3;
const RAY_POTENTIAL: f64 = 1e-4;

fn idx(sig: Sig) -> usize {
    match sig {
        Sig::Plus => 0,
        Sig::Minus => 1,
    }
}

/// Keep a point only when it moved at least h from the last kept one; endpoints always kept.
pub fn simplify(line: &[C64], h: f64) -> Vec<C64> {
    let mut out: Vec<C64> = Vec::with_capacity(line.len());
    for (i, &z) in line.iter().enumerate() {
        match out.last() {
            Some(&p) if i + 1 < line.len() && (z - p).norm() < h => {}
            _ => out.push(z),
        }
    }
    out
}

/// Append `ext` to `line`, dropping a leading point equal to the current end.
fn join(line: &mut Vec<C64>, ext: &[C64]) {
    let skip = match (line.last(), ext.first()) {
        (Some(a), Some(b)) if (a - b).norm() < 1e-15 => 1,
        _ => 0,
    };
    line.extend_from_slice(&ext[skip..]);
}

fn reversed(v: &[C64]) -> Vec<C64> {
    v.iter().rev().cloned().collect()
}

fn negated(v: &[C64]) -> Vec<C64> {
    v.iter().map(|z| -z).collect()
}

/// Repeatedly pull a piece back by f^steps, each time starting where the last one ended, appending
/// to `out`. With `parabolic` the ends creep toward `limit` and are cut at PARABOLIC_GAP; otherwise
/// they settle geometrically. Returns whether the end was reached within tolerance.
fn pull_toward(c: QuadParam, steps: usize, first: Vec<C64>, out: &mut Vec<C64>, limit: C64, parabolic: bool) -> bool {
    let mut piece = first;
    let mut moves: Vec<f64> = Vec::new();
    let max = if parabolic { PARABOLIC_GENERATIONS } else { MAX_GENERATIONS };
    for _ in 0..max {
        let next = pull_back_curve(c.c, steps, &piece, *piece.last().unwrap(), None);
        if diameter(&[next[0], next[next.len() / 2], *next.last().unwrap()]) > 1e-5 {
            join(out, &next);
        } else {
            out.push(*next.last().unwrap());
        }
        let mv = (next.last().unwrap() - piece.last().unwrap()).norm();
        moves.push(mv);
        piece = next;
        if parabolic {
            if (piece.last().unwrap() - limit).norm() < PARABOLIC_GAP {
                return true;
            }
            continue;
        }
        let n = moves.len();
        if n > 3 {
            let ratio = moves[n - 1] / moves[n - 2];
            if ratio < 1.0 && mv * ratio / (1.0 - ratio) < END_TOL {
                return true;
            }
        }
    }
    false
}

/// The attracting-side linearizer used to build the curves.
pub enum Linearizer {
    Koenigs(Koenigs),
    Fatou(Fatou),
}

/// Curves of one side.
#[derive(Clone, Debug)]
pub struct Skeleton {
    /// α_0 or β_0
    pub center: C64,
    /// landing points of the critical rays, indexed by signature
    pub landing: [C64; 2],
    /// degenerating arcs from the center to the landing points (empty on the parabolic side)
    pub arcs: [Vec<C64>; 2],
    /// critical edge from the center to 0
    pub s_curve: Vec<C64>,
    /// continuation of the critical edges past 0 bounding the root panel of each signature
    pub branch: [Vec<C64>; 2],
    /// external ray of the + critical angle, from far out to its landing point
    pub ray: Vec<C64>,
    /// whether every pulled-back curve reached its limit point
    pub complete: bool,
}

impl Skeleton {
    pub fn landing(&self, sig: Sig) -> C64 {
        self.landing[idx(sig)]
    }

    pub fn arc(&self, sig: Sig) -> &[C64] {
        &self.arcs[idx(sig)]
    }

    pub fn branch(&self, sig: Sig) -> &[C64] {
        &self.branch[idx(sig)]
    }

    /// Closed boundary of the root panel of the given signature, starting at its landing point.
    pub fn root_boundary(&self, sig: Sig) -> Vec<C64> {
        let mut b = vec![self.landing(sig)];
        join(&mut b, &reversed(self.arc(sig)));
        join(&mut b, &self.s_curve);
        join(&mut b, self.branch(sig));
        if (b.last().unwrap() - b[0]).norm() < 1e-15 {
            b.pop();
        }
        b
    }

    /// Closed polygon bounded by R(θ_0^+), the + arc, S, their negatives and a large arc.
    /// It contains the external rays with angles in (θ_0^+, θ_0^+ + 1/2).
    pub fn partition(&self) -> Polygon {
        let far = self.ray[0] * 3.0;
        let mut half = vec![far];
        join(&mut half, &self.ray);
        join(&mut half, &reversed(self.arc(Sig::Plus)));
        join(&mut half, &self.s_curve);
        let mut pts = half.clone();
        let neg = negated(&reversed(&half));
        join(&mut pts, &neg[1..]);
        // close through the direction of θ_0^+ + 1/4
        let a1 = (-far).arg();
        let n = 256;
        for k in 1..n {
            let t = a1 - std::f64::consts::PI * k as f64 / n as f64;
            pts.push(C64::from_polar(far.norm(), t));
        }
        Polygon::new(pts)
    }
}

fn critical_hint(s_curve: &[C64], sig: Sig) -> C64 {
    // Φ is real and positive along S near 0; the + root panel lies a quarter turn counterclockwise
    let n = s_curve.len();
    let u = s_curve[n - 2] - s_curve[n - 1];
    let u = u / u.norm();
    C64::new(0.0, sig.sign()) * u
}

/// Curves for an attracting side: φ_f real on [0, 1] along S, arcs at φ_f-angles ±π/q.
pub fn koenigs_skeleton(kg: &Koenigs, steps: usize, q: usize, theta_plus: &RationalAngle, arc_ends: [(Vec<C64>, C64); 2], near_parabolic: bool) -> Result<Skeleton> {
    let c = kg.map;
    let big_r = kg.lambda.norm().powi(q as i32);
    let lvr = kg.local_value_radius();
    let j = ((0.5 * lvr).ln() / big_r.ln()).ceil().max(1.0) as i32;
    let stall = || Error::ContinuationStall("critical edge".into());
    let mut piece = Vec::with_capacity(PIECE_POINTS + 1);
    for i in 0..=PIECE_POINTS {
        let t = big_r.powf((j + 1) as f64 - i as f64 / PIECE_POINTS as f64);
        piece.push(kg.inverse_local(C64::new(t, 0.0)).ok_or_else(stall)?);
    }
    let mut s_curve = vec![kg.alpha];
    for k in (1..=8).rev() {
        let t = big_r.powi(j + 1) * 0.5f64.powi(k);
        s_curve.push(kg.inverse_local(C64::new(t, 0.0)).ok_or_else(stall)?);
    }
    join(&mut s_curve, &piece);
    for _ in 0..j {
        piece = pull_back_curve(c.c, steps, &piece, *piece.last().unwrap(), None);
        join(&mut s_curve, &piece);
    }
    let end = *s_curve.last().unwrap();
    if end.norm() > 1e-4 {
        return Err(Error::ContinuationStall(format!("critical edge ends at {end}")));
    }
    *s_curve.last_mut().unwrap() = C64::new(0.0, 0.0);
    *piece.last_mut().unwrap() = C64::new(0.0, 0.0);

    let mut complete = true;
    let mut branch: [Vec<C64>; 2] = [Vec::new(), Vec::new()];
    for sig in [Sig::Plus, Sig::Minus] {
        let first = pull_back_curve(c.c, steps, &piece, C64::new(0.0, 0.0), Some(critical_hint(&s_curve, sig)));
        let mut b = first.clone();
        complete &= pull_toward(c, steps, first, &mut b, arc_ends[idx(sig)].1, false);
        b.push(arc_ends[idx(sig)].1);
        branch[idx(sig)] = b;
    }
    let arcs = [arc_ends[0].0.clone(), arc_ends[1].0.clone()];
    let landing = [arc_ends[0].1, arc_ends[1].1];
    let (ray, ray_done) = ray_to(c, theta_plus, landing[0], near_parabolic);
    complete &= ray_done;
    Ok(Skeleton { center: kg.alpha, landing, arcs, s_curve, branch, ray, complete })
}

/// External ray traced from potential 4, continued toward its landing point by pulling back its last
/// fundamental piece along the branch that fixes the ray.
fn ray_to(c: QuadParam, theta: &RationalAngle, landing: C64, parabolic: bool) -> (Vec<C64>, bool) {
    let period = theta.preperiod_period().1;
    let tr = trace_ray(c, theta, RAY_POTENTIAL);
    let mut ray = tr.points.clone();
    let n = tr.points.len();
    let s_end = tr.potentials[n - 1];
    let k0 = tr.potentials.iter().position(|&s| s <= s_end * 2f64.powi(period as i32) * (1.0 + 1e-9)).unwrap_or(0);
    let mut done = false;
    if tr.converged && n - k0 >= 4 {
        let piece = tr.points[k0..].to_vec();
        done = pull_toward(c, period, piece, &mut ray, landing, parabolic);
    }
    ray.push(landing);
    (ray, done)
}

/// Curves for the parabolic side: φ_g real and positive along S, which runs from 0 into the petal.
pub fn fatou_skeleton(ft: &Fatou, steps: usize, theta_plus: &RationalAngle) -> Result<Skeleton> {
    let c = ft.map;
    let deep = |x: f64| ft.inverse_deep(C64::new(x, 0.0));
    let mut k = 1usize;
    while (0..=8).any(|i| deep(k as f64 + i as f64 / 8.0).is_none()) {
        k += 1;
        if k > 100_000 {
            return Err(Error::ContinuationStall("petal too small".into()));
        }
    }
    let stall = || Error::ContinuationStall("critical edge".into());
    // far tail, then the piece [k, k+1] listed downward
    let mut s_curve = vec![ft.beta];
    let mut x = 1e8;
    let mut tail = Vec::new();
    while x > (k + 1) as f64 {
        tail.push(deep(x).ok_or_else(stall)?);
        x /= 1.1;
    }
    join(&mut s_curve, &tail);
    let mut piece = Vec::with_capacity(PIECE_POINTS + 1);
    for i in 0..=PIECE_POINTS {
        piece.push(deep((k + 1) as f64 - i as f64 / PIECE_POINTS as f64).ok_or_else(stall)?);
    }
    join(&mut s_curve, &piece);
    for _ in 0..k {
        piece = pull_back_curve(c.c, steps, &piece, *piece.last().unwrap(), None);
        join(&mut s_curve, &piece);
    }
    let end = *s_curve.last().unwrap();
    if end.norm() > 1e-4 {
        return Err(Error::ContinuationStall(format!("critical edge ends at {end}")));
    }
    *s_curve.last_mut().unwrap() = C64::new(0.0, 0.0);
    *piece.last_mut().unwrap() = C64::new(0.0, 0.0);

    let mut branch: [Vec<C64>; 2] = [Vec::new(), Vec::new()];
    for sig in [Sig::Plus, Sig::Minus] {
        let first = pull_back_curve(c.c, steps, &piece, C64::new(0.0, 0.0), Some(critical_hint(&s_curve, sig)));
        let mut b = first.clone();
        pull_toward(c, steps, first, &mut b, ft.beta, true);
        b.push(ft.beta);
        branch[idx(sig)] = b;
    }
    let (ray, _) = ray_to(c, theta_plus, ft.beta, true);
    Ok(Skeleton { center: ft.beta, landing: [ft.beta, ft.beta], arcs: [Vec::new(), Vec::new()], s_curve, branch, ray, complete: true })
}
