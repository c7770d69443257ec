use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::jet::{cycle_jet, iterate_normal_coeff, normal_form, Jet};
use crate::dynamics::QuadParam;
use crate::error::{Error, Result};

pub const FATOU_ORDER: usize = 40;

fn z0() -> C64 {
    C64::new(0.0, 0.0)
}

fn smul(a: &[C64], b: &[C64], n: usize) -> Vec<C64> {
    let mut out = vec![z0(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if *x == z0() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// log(1 + e) for a series e without constant term.
fn slog1p(e: &[C64], n: usize) -> Vec<C64> {
    let mut out = vec![z0(); n + 1];
    let mut p = e.to_vec();
    p.resize(n + 1, z0());
    for k in 1..=n {
        let sgn = if k % 2 == 1 { 1.0 } else { -1.0 };
        for i in 0..=n {
            out[i] += p[i] * (sgn / k as f64);
        }
        p = smul(&p, e, n);
        if p.iter().all(|x| x.norm() == 0.0) {
            break;
        }
    }
    out
}

/// exp(s) - 1 for a series s without constant term.
fn sexpm1(s: &[C64], n: usize) -> Vec<C64> {
    let mut e = vec![z0(); n + 1];
    e[0] = C64::new(1.0, 0.0);
    for k in 1..=n {
        let mut acc = z0();
        for j in 1..=k {
            if j < s.len() {
                acc += s[j] * j as f64 * e[k - j];
            }
        }
        e[k] = acc / k as f64;
    }
    e[0] = z0();
    e
}

/// Formal Fatou coordinate of G(ξ) = ξ + ξ^{q+1} + ...:
/// Φ(ξ) = -1/(q ξ^q) + c log ξ + Σ d_k ξ^k, with Φ(G(ξ)) = Φ(ξ) + 1 to the retained order.
#[derive(Clone, Debug)]
pub struct FormalFatou {
    pub q: usize,
    pub log_coeff: C64,
    /// (k, d_k), k from 1-q, k != 0
    pub terms: Vec<(i32, C64)>,
}

impl FormalFatou {
    pub fn solve(g: &Jet, q: usize) -> Result<FormalFatou> {
        let n = g.order();
        if n < 2 * q + 3 {
            return Err(Error::Argument("jet too short for the Fatou series".into()));
        }
        let top = n - 1; // orders of E known
        let t = top - q; // orders of the Abel equation solved
        let mut e = vec![z0(); top + 1];
        for (k, ek) in e.iter_mut().enumerate().skip(1) {
            *ek = g.coeff(k + 1);
        }
        let lg = slog1p(&e, top);
        let pow = |k: i32| -> Vec<C64> { sexpm1(&lg.iter().map(|x| x * k as f64).collect::<Vec<_>>(), top) };
        // residual, orders 0..=t
        let mut res = vec![z0(); t + 1];
        let sq = pow(-(q as i32));
        for (j, r) in res.iter_mut().enumerate() {
            *r = -sq[j + q] / q as f64;
        }
        res[0] -= 1.0;
        let mut log_coeff = z0();
        let mut terms = Vec::new();
        for j in 1..=t {
            let r = res[j];
            if j == q {
                log_coeff = -r;
                for (i, x) in res.iter_mut().enumerate() {
                    *x += log_coeff * lg[i];
                }
            } else {
                let k = j as i32 - q as i32;
                let d = -r / (k as f64);
                let sk = pow(k);
                for i in 0..=t {
                    let src = i as i32 - k;
                    if src >= 1 && (src as usize) <= top {
                        res[i] += d * sk[src as usize];
                    }
                }
                terms.push((k, d));
            }
        }
        Ok(FormalFatou { q, log_coeff, terms })
    }

    /// Value and derivative at ξ, with log ξ continuous around the axis direction psi0.
    pub fn eval_d(&self, xi: C64, psi0: f64) -> (C64, C64) {
        let q = self.q as i32;
        let rot = xi * C64::from_polar(1.0, -psi0);
        let lg = C64::new(xi.norm().ln(), psi0 + rot.arg());
        let inv = 1.0 / xi;
        let mut v = -inv.powi(q) / q as f64 + self.log_coeff * lg;
        let mut d = inv.powi(q + 1) + self.log_coeff * inv;
        for &(k, dk) in &self.terms {
            let p = xi.powi(k - 1);
            v += dk * p * xi;
            d += dk * k as f64 * p;
        }
        (v, d)
    }

    /// Size of the last few terms at radius r.
    pub fn tail(&self, r: f64) -> f64 {
        self.terms.iter().rev().take(3).map(|(k, d)| d.norm() * r.powi(*k)).sum()
    }
}

/// Extended Fatou coordinate φ_g of g^{n} at a parabolic cycle point, φ_g(0) = 0.
#[derive(Clone, Debug)]
pub struct Fatou {
    pub map: QuadParam,
    pub beta: C64,
    /// return time l'q'
    pub steps: usize,
    pub q: usize,
    pub pol: Jet,
    pub pol_inv: Jet,
    pub pol_radius: f64,
    pub g_jet: Jet,
    pub series: FormalFatou,
    pub psi0: f64,
    pub rho: f64,
    pub c0: C64,
    pub budget: usize,
}

impl Fatou {
    /// `cycle` lists the parabolic cycle from the marked point; multiplier e^{2πi p'/q'}.
    pub fn new(map: QuadParam, cycle: &[C64], q: usize) -> Result<Fatou> {
        let h = cycle_jet(cycle, FATOU_ORDER);
        let omega = h.coeff(1);
        let (change, normed) = normal_form(&h, omega, q)?;
        let mut g_jet = normed.iterate(q);
        // rescale so the ξ^{q+1} coefficient is exactly one
        let cq = g_jet.coeff(q + 1);
        let expect = iterate_normal_coeff(omega, q, q) * omega.powi(-(q as i32));
        debug_assert!((cq - expect).norm() < 1e-6 * expect.norm().max(1.0));
        let s = (1.0 / cq).powf(1.0 / q as f64);
        let resc = Jet::linear(1.0 / s, FATOU_ORDER);
        let back = Jet::linear(s, FATOU_ORDER);
        g_jet = resc.compose(&g_jet.compose(&back));
        let pol = resc.compose(&change);
        let pol_inv = pol.invert()?;
        let series = FormalFatou::solve(&g_jet, q)?;
        let tail = |r: f64| (FATOU_ORDER - 3..=FATOU_ORDER).map(|k| pol.coeff(k).norm() * r.powi(k as i32)).sum::<f64>() / r;
        let mut pol_radius = 1.0;
        while tail(pol_radius) > 1e-15 {
            pol_radius *= 0.9;
        }
        let mut rho = 0.5;
        while series.tail(rho) > 1e-14 {
            rho *= 0.95;
        }
        let steps = cycle.len() * q;
        let mut f = Fatou {
            map,
            beta: cycle[0],
            steps,
            q,
            pol,
            pol_inv,
            pol_radius,
            g_jet,
            series,
            psi0: 0.0,
            rho,
            c0: z0(),
            budget: 2_000_000 / steps,
        };
        // petal axis from the orbit of 0
        let mut w = z0();
        let mut xi = z0();
        for _ in 0..200_000 {
            w = map.iterate(w, steps);
            if (w - f.beta).norm() < f.pol_radius {
                xi = f.pol.eval(w - f.beta);
                if xi.norm() < 0.5 * rho {
                    break;
                }
            }
        }
        if xi == z0() {
            return Err(Error::NotInPetalBasin);
        }
        let qf = q as f64;
        let k = ((xi.arg() * qf / PI - 1.0) / 2.0).round();
        f.psi0 = (2.0 * k + 1.0) * PI / qf;
        let (v, _, _) = f.raw(z0())?;
        f.c0 = v;
        Ok(f)
    }

    fn in_petal(&self, xi: C64) -> bool {
        let rot = xi * C64::from_polar(1.0, -self.psi0);
        xi.norm() < self.rho && rot.arg().abs() < 0.6 * PI / self.q as f64
    }

    /// Petal coordinate of a point near β, if it lies in the working petal.
    pub fn petal_xi(&self, z: C64) -> Option<C64> {
        let u = z - self.beta;
        if u.norm() >= self.pol_radius {
            return None;
        }
        let xi = self.pol.eval(u);
        if self.in_petal(xi) {
            Some(xi)
        } else {
            None
        }
    }

    /// (raw value, derivative, returns used).
    pub fn raw(&self, z: C64) -> Result<(C64, C64, usize)> {
        let mut w = z;
        let mut d = C64::new(1.0, 0.0);
        let c = self.map.c;
        for k in 0..self.budget {
            let u = w - self.beta;
            if u.norm() < self.pol_radius {
                let (xi, dxi) = self.pol.eval_d(u);
                if self.in_petal(xi) {
                    let (v, dv) = self.series.eval_d(xi, self.psi0);
                    return Ok((v - k as f64, dv * dxi * d, k));
                }
            }
            for _ in 0..self.steps {
                d = 2.0 * w * d;
                w = w * w + c;
            }
            if w.norm_sqr() > 16.0 {
                return Err(Error::NotInPetalBasin);
            }
        }
        Err(Error::NotInPetalBasin)
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        Ok(self.raw(z)?.0 - self.c0)
    }

    pub fn eval_d(&self, z: C64) -> Result<(C64, C64)> {
        let (v, d, _) = self.raw(z)?;
        Ok((v - self.c0, d))
    }

    /// z in the working petal with φ_g(z) = w, when that point is deep enough.
    pub fn inverse_deep(&self, w: C64) -> Option<C64> {
        let target = w + self.c0;
        let qf = self.q as f64;
        // leading order: -1/(q ξ^q) = target
        let xq = -1.0 / (qf * target);
        let r = xq.norm().powf(1.0 / qf);
        let base = xq.arg() / qf;
        let mut best = C64::from_polar(r, base);
        for k in 0..self.q {
            let cand = C64::from_polar(r, base + 2.0 * PI * k as f64 / qf);
            let off = |x: C64| (x * C64::from_polar(1.0, -self.psi0)).arg().abs();
            if off(cand) < off(best) {
                best = cand;
            }
        }
        let mut xi = best;
        for _ in 0..60 {
            let (v, d) = self.series.eval_d(xi, self.psi0);
            let dx = (v - target) / d;
            xi -= dx;
            if !xi.is_finite() {
                return None;
            }
            if dx.norm() < 1e-16 * xi.norm() {
                break;
            }
        }
        if !self.in_petal(xi) {
            return None;
        }
        let mut u = self.pol_inv.eval(xi);
        for _ in 0..30 {
            let (v, d) = self.pol.eval_d(u);
            let du = (v - xi) / d;
            u -= du;
            if du.norm() < 1e-17 {
                break;
            }
        }
        if u.norm() >= self.pol_radius || !u.is_finite() {
            return None;
        }
        Some(self.beta + u)
    }
}
