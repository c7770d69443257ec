//! The fundamental models: F(W) = RW + 1 on C - [a, ∞) and G(W) = W + 1.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::angles::Sig;
use crate::error::{Error, Result};

pub const EDGE_TOL: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundamentalModel {
    /// contraction R = r^q; 1 for the parabolic model
    pub big_r: f64,
    pub a: f64,
    pub q: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdgeFlags {
    pub circular: bool,
    pub degenerating: bool,
    pub critical: bool,
    pub essential: bool,
}

impl EdgeFlags {
    /// Near a tile edge (the essential curve is interior).
    pub fn on_edge(&self) -> bool {
        self.circular || self.degenerating || self.critical
    }
}

/// A model point in band coordinates: x in [μ, μ+1]; v is arg(W - a) for F and Im W for G.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelCell {
    pub mu: i64,
    pub sig: Sig,
    pub x: f64,
    pub v: f64,
    pub flags: EdgeFlags,
}

impl FundamentalModel {
    pub fn new(big_r: f64, q: u32) -> FundamentalModel {
        let a = if big_r < 1.0 { 1.0 / (1.0 - big_r) } else { f64::INFINITY };
        FundamentalModel { big_r, a, q }
    }

    pub fn parabolic(q: u32) -> FundamentalModel {
        FundamentalModel::new(1.0, q)
    }

    pub fn is_parabolic(&self) -> bool {
        self.big_r >= 1.0
    }

    pub fn map(&self, w: C64) -> C64 {
        self.big_r * w + 1.0
    }

    pub fn inverse(&self, w: C64) -> C64 {
        (w - 1.0) / self.big_r
    }

    pub fn point(&self, x: f64, v: f64) -> C64 {
        if self.is_parabolic() {
            C64::new(x, v)
        } else {
            self.a + C64::from_polar(self.a * self.big_r.powf(x), v)
        }
    }

    pub fn classify(&self, w: C64, tol: f64) -> Result<ModelCell> {
        if self.is_parabolic() {
            let mu = w.re.floor();
            let frac = w.re - mu;
            let flags = EdgeFlags {
                circular: frac < tol || frac > 1.0 - tol,
                essential: (frac - 0.5).abs() < tol,
                critical: w.im.abs() < tol,
                degenerating: false,
            };
            let sig = if w.im > 0.0 { Sig::Plus } else { Sig::Minus };
            return Ok(ModelCell { mu: mu as i64, sig, x: w.re, v: w.im, flags });
        }
        self.classify_offset(w - self.a, tol)
    }

    /// F classification from u = W - a, which keeps precision near a.
    pub fn classify_offset(&self, u: C64, tol: f64) -> Result<ModelCell> {
        if u.im == 0.0 && u.re >= 0.0 {
            return Err(Error::OnSlit);
        }
        let x = (u.norm() / self.a).ln() / self.big_r.ln();
        let v = u.arg();
        let mu = x.floor();
        let frac = x - mu;
        let flags = EdgeFlags {
            circular: frac < tol || frac > 1.0 - tol,
            essential: (frac - 0.5).abs() < tol,
            degenerating: v.abs() < PI * tol,
            // measured as distance in W near the critical ray, as in the parabolic model
            critical: self.a * (PI - v.abs()) < PI * tol,
        };
        let sig = if u.im > 0.0 { Sig::Plus } else { Sig::Minus };
        Ok(ModelCell { mu: mu as i64, sig, x, v, flags })
    }

    /// The interior point of the model tile of band μ and signature sig at fractional height `frac`
    /// and transverse parameter s in (0, 1).
    pub fn tile_point(&self, mu: i64, sig: Sig, frac: f64, s: f64) -> C64 {
        let x = mu as f64 + frac;
        if self.is_parabolic() {
            // s maps to heights in (0, ∞)
            self.point(x, sig.sign() * (s / (1.0 - s)))
        } else {
            self.point(x, sig.sign() * PI * s)
        }
    }
}
