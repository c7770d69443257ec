//! Truncated power series without constant term.

use std::fmt;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    /// c[k] is the coefficient of z^k; c[0] is always zero.
    c: Vec<C64>,
}

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

impl Jet {
    /// Build from c_1, ..., c_N.
    pub fn from_coeffs(coeffs: &[C64]) -> Jet {
        let mut c = vec![zero()];
        c.extend_from_slice(coeffs);
        Jet { c }
    }

    pub fn zeros(order: usize) -> Jet {
        Jet { c: vec![zero(); order + 1] }
    }

    pub fn identity(order: usize) -> Jet {
        let mut j = Jet::zeros(order);
        j.c[1] = C64::new(1.0, 0.0);
        j
    }

    pub fn linear(a: C64, order: usize) -> Jet {
        let mut j = Jet::zeros(order);
        j.c[1] = a;
        j
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.c.get(k).copied().unwrap_or_else(zero)
    }

    pub fn set(&mut self, k: usize, v: C64) {
        if k > 0 && k < self.c.len() {
            self.c[k] = v;
        }
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.c[1..]
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let mut c = self.c.clone();
        c.resize(order + 1, zero());
        Jet { c }
    }

    pub fn add(&self, other: &Jet) -> Jet {
        let n = self.order().min(other.order());
        Jet { c: (0..=n).map(|k| self.c[k] + other.c[k]).collect() }
    }

    pub fn scale(&self, s: C64) -> Jet {
        Jet { c: self.c.iter().map(|x| x * s).collect() }
    }

    pub fn mul(&self, other: &Jet) -> Jet {
        let n = self.order().min(other.order());
        let mut c = vec![zero(); n + 1];
        for i in 1..=n {
            if self.c[i] == zero() {
                continue;
            }
            for j in 1..=(n - i) {
                c[i + j] += self.c[i] * other.c[j];
            }
        }
        Jet { c }
    }

    /// Powers other^1 .. other^n truncated at n.
    fn powers(&self, n: usize) -> Vec<Jet> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(Jet::zeros(n));
        let base = self.truncate(n);
        out.push(base.clone());
        for k in 2..=n {
            let next = out[k - 1].mul(&base);
            out.push(next);
        }
        out
    }

    /// self ∘ inner.
    pub fn compose(&self, inner: &Jet) -> Jet {
        let n = self.order().min(inner.order());
        let pw = inner.powers(n);
        let mut c = vec![zero(); n + 1];
        for k in 1..=n {
            let a = self.c[k];
            if a == zero() {
                continue;
            }
            for (j, v) in pw[k].c.iter().enumerate() {
                c[j] += a * v;
            }
        }
        Jet { c }
    }

    /// Compositional inverse; requires a nonzero linear coefficient.
    pub fn invert(&self) -> Result<Jet> {
        let n = self.order();
        let a1 = self.c[1];
        if a1.norm() < 1e-300 {
            return Err(Error::DegenerateJacobian);
        }
        let mut g = Jet::linear(1.0 / a1, n);
        for k in 2..=n {
            let t = self.compose(&g.truncate(k)).coeff(k);
            g.c[k] = -t / a1;
        }
        Ok(g)
    }

    pub fn iterate(&self, n: usize) -> Jet {
        let mut out = Jet::identity(self.order());
        for _ in 0..n {
            out = self.compose(&out);
        }
        out
    }

    pub fn eval(&self, z: C64) -> C64 {
        let mut acc = zero();
        for k in (1..self.c.len()).rev() {
            acc = (acc + self.c[k]) * z;
        }
        acc
    }

    /// (value, derivative) at z.
    pub fn eval_d(&self, z: C64) -> (C64, C64) {
        // f = z P(z)
        let mut p = zero();
        let mut dp = zero();
        for k in (1..self.c.len()).rev() {
            dp = dp * z + p;
            p = p * z + self.c[k];
        }
        (z * p, p + z * dp)
    }

    pub fn max_abs_diff(&self, other: &Jet, upto: usize) -> f64 {
        (1..=upto).map(|k| (self.coeff(k) - other.coeff(k)).norm()).fold(0.0, f64::max)
    }
}

impl fmt::Display for Jet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "jet order {}", self.order())?;
        for k in 1..self.c.len() {
            writeln!(f, "  c{} = {:.17e} {:+.17e}i", k, self.c[k].re, self.c[k].im)?;
        }
        Ok(())
    }
}

/// Jet at z0 of the map z -> z^2 + c, in local coordinates (z0 + z) -> (z0^2 + c) + (2 z0 z + z^2).
pub fn quadratic_step(z0: C64, order: usize) -> Jet {
    let mut j = Jet::zeros(order);
    j.c[1] = 2.0 * z0;
    if order >= 2 {
        j.c[2] = C64::new(1.0, 0.0);
    }
    j
}

/// Jet of f^n at a periodic point z0 (cycle points listed from z0).
pub fn cycle_jet(points: &[C64], order: usize) -> Jet {
    let mut j = Jet::identity(order);
    for &p in points {
        j = quadratic_step(p, order).compose(&j);
    }
    j
}

/// Conjugate a jet f to normal form lambda z + z^{q+1} + O(z^{2q+1}).
/// Returns (change, normalized) with normalized = change ∘ f ∘ change^{-1}.
pub fn normal_form(series: &Jet, lambda: C64, q: usize) -> Result<(Jet, Jet)> {
    let n = series.order();
    if n < 2 * q + 1 {
        return Err(Error::Argument(format!("jet order {n} below 2q+1")));
    }
    let mut change = Jet::identity(n);
    let mut cur = series.clone();
    for k in 2..=(2 * q) {
        if k == q + 1 {
            continue;
        }
        let a = cur.coeff(k);
        if a.norm() == 0.0 {
            continue;
        }
        let div = lambda.powi(k as i32) - lambda;
        if div.norm() < 1e-9 {
            return Err(Error::SmallDivisor(k));
        }
        let b = a / div;
        let mut step = Jet::identity(n);
        step.c[k] = -b;
        let inv = step.invert()?;
        cur = step.compose(&cur.compose(&inv));
        change = step.compose(&change);
    }
    let cq = cur.coeff(q + 1);
    if cq.norm() < 1e-300 {
        return Err(Error::SmallDivisor(q + 1));
    }
    // z = s ζ with C s^q = 1
    let s = (1.0 / cq).powf(1.0 / q as f64);
    let resc = Jet::linear(1.0 / s, n);
    let inv = Jet::linear(s, n);
    cur = resc.compose(&cur.compose(&inv));
    change = resc.compose(&change);
    Ok((change, cur))
}

/// C_n: the z^{q+1} coefficient of the n-th iterate of lambda z + z^{q+1}.
pub fn iterate_normal_coeff(lambda: C64, q: usize, n: usize) -> C64 {
    let mut c = zero();
    let lq1 = lambda.powi(q as i32 + 1);
    for k in 0..n {
        c = lq1 * c + lambda.powi(k as i32);
    }
    c
}
