use num_complex::Complex64 as C64;

use super::jet::{cycle_jet, Jet};
use crate::dynamics::QuadParam;
use crate::error::{Error, Result};

pub const LOCAL_ORDER: usize = 20;

/// Extended Kœnigs coordinate of f^l at an attracting cycle point, normalized by φ(0) = 1.
#[derive(Clone, Debug)]
pub struct Koenigs {
    pub map: QuadParam,
    pub alpha: C64,
    pub period: usize,
    pub lambda: C64,
    pub local: Jet,
    pub local_inv: Jet,
    pub radius: f64,
    /// raw value at the critical point
    pub norm: C64,
    pub budget: usize,
}

/// Local series φ with φ(h(z)) = λ φ(z), φ(z) = z + O(z^2).
pub fn koenigs_series(h: &Jet) -> Result<Jet> {
    let n = h.order();
    let lam = h.coeff(1);
    let mut pw: Vec<Jet> = vec![Jet::zeros(n), h.clone()];
    for k in 2..=n {
        pw.push(pw[k - 1].mul(h));
    }
    let mut phi = Jet::identity(n);
    for j in 2..=n {
        let mut acc = h.coeff(j);
        for (k, p) in pw.iter().enumerate().take(j).skip(2) {
            acc += phi.coeff(k) * p.coeff(j);
        }
        let div = lam - lam.powi(j as i32);
        if div.norm() < 1e-14 {
            return Err(Error::SmallDivisor(j));
        }
        phi.set(j, acc / div);
    }
    Ok(phi)
}

impl Koenigs {
    /// `cycle` lists the cycle starting at the marked point.
    pub fn new(map: QuadParam, cycle: &[C64]) -> Result<Koenigs> {
        let h = cycle_jet(cycle, LOCAL_ORDER);
        let lambda = h.coeff(1);
        if lambda.norm() >= 1.0 {
            return Err(Error::Argument("cycle is not attracting".into()));
        }
        let local = koenigs_series(&h)?;
        let local_inv = local.invert()?;
        // largest radius where the last terms stay below 1e-14 relative
        let tail = |r: f64| (LOCAL_ORDER - 3..=LOCAL_ORDER).map(|k| local.coeff(k).norm() * r.powi(k as i32)).sum::<f64>() / r;
        let (mut lo, mut hi) = (1e-8f64, 2.0f64);
        for _ in 0..60 {
            let mid = (lo * hi).sqrt();
            if tail(mid) < 1e-14 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let radius = lo.min(0.5 * cycle.iter().skip(1).map(|p| (p - cycle[0]).norm()).fold(1.0, f64::min));
        let budget = (200.0 / (1.0 - lambda.norm()).max(1e-9)) as usize + 20_000;
        let mut k = Koenigs { map, alpha: cycle[0], period: cycle.len(), lambda, local, local_inv, radius, norm: C64::new(1.0, 0.0), budget };
        let (v, _, _) = k.raw(C64::new(0.0, 0.0))?;
        k.norm = v;
        Ok(k)
    }

    /// (raw value, raw derivative, number of return steps).
    pub fn raw(&self, z: C64) -> Result<(C64, C64, usize)> {
        let mut w = z;
        let mut d = C64::new(1.0, 0.0);
        let mut scale = C64::new(1.0, 0.0);
        let inv = 1.0 / self.lambda;
        let c = self.map.c;
        for k in 0..self.budget {
            let u = w - self.alpha;
            if u.norm() < self.radius {
                let (v, dv) = self.local.eval_d(u);
                return Ok((v * scale, dv * d * scale, k));
            }
            for _ in 0..self.period {
                d = 2.0 * w * d;
                w = w * w + c;
            }
            scale *= inv;
            if w.norm_sqr() > 16.0 || !scale.is_finite() {
                return Err(Error::NotInBasin);
            }
        }
        Err(Error::NotInBasin)
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        Ok(self.raw(z)?.0 / self.norm)
    }

    pub fn eval_d(&self, z: C64) -> Result<(C64, C64)> {
        let (v, d, _) = self.raw(z)?;
        Ok((v / self.norm, d / self.norm))
    }

    /// Normalized value of the local disk boundary: |φ| below this is inside the local disk image.
    pub fn local_value_radius(&self) -> f64 {
        0.5 * self.radius / self.norm.norm()
    }

    /// z near alpha with φ(z) = w, valid for |w| < local_value_radius().
    pub fn inverse_local(&self, w: C64) -> Option<C64> {
        let target = w * self.norm;
        let mut u = self.local_inv.eval(target);
        for _ in 0..20 {
            let (v, dv) = self.local.eval_d(u);
            let du = (v - target) / dv;
            u -= du;
            if du.norm() < 1e-16 * (1.0 + u.norm()) {
                break;
            }
        }
        if u.norm() < self.radius && u.is_finite() {
            Some(self.alpha + u)
        } else {
            None
        }
    }

    /// Newton polish of φ(z) = w from a nearby seed.
    pub fn solve_near(&self, w: C64, seed: C64) -> Result<C64> {
        let mut z = seed;
        for _ in 0..60 {
            let (v, d) = self.eval_d(z)?;
            let dz = (v - w) / d;
            z -= dz;
            if !z.is_finite() {
                break;
            }
            if dz.norm() < 1e-14 * (1.0 + z.norm()) {
                return Ok(z);
            }
        }
        let v = self.eval(z)?;
        if (v - w).norm() < 1e-9 * (1.0 + w.norm()) {
            Ok(z)
        } else {
            Err(Error::NewtonDivergence("Kœnigs inversion".into()))
        }
    }
}
