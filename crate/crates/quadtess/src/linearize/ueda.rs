use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const UEDA_TOL: f64 = 1e-11;
pub const UEDA_MAX_ITER: usize = 100_000;

/// Coordinate u with u(f(z)) = τ u(z) + 1 for f(z) = τ z + 1 + O(1/z), based at `a` (u(a) = 0).
///
/// τ > 1: u = lim (z_n - a_n)/τ^n divided by lim (a_{n+1} - a_n)/τ^n.
/// τ = 1: z_n - a_n with a logarithmic correction and Richardson extrapolation in n.
pub fn ueda_linearize<F: Fn(C64) -> C64>(map: F, tau: f64, a: C64, z: C64) -> Result<C64> {
    if tau < 1.0 {
        return Err(Error::Argument(format!("tau = {tau} below 1")));
    }
    if tau > 1.0 {
        ueda_expanding(&map, tau, a, z)
    } else {
        ueda_parabolic(&map, a, z)
    }
}

fn ueda_expanding<F: Fn(C64) -> C64>(map: &F, tau: f64, a: C64, z: C64) -> Result<C64> {
    let (mut zn, mut an) = (z, a);
    let mut scale = 1.0;
    let mut prev: Option<C64> = None;
    for _ in 0..UEDA_MAX_ITER {
        let an1 = map(an);
        let u = (zn - an) * scale;
        let c = (an1 - an) * scale;
        if c.norm() == 0.0 || !c.is_finite() {
            break;
        }
        let v = u / c;
        if let Some(p) = prev {
            if (v - p).norm() < UEDA_TOL * (1.0 + v.norm()) {
                return Ok(v);
            }
        }
        prev = Some(v);
        zn = map(zn);
        an = an1;
        scale /= tau;
        if zn.norm() > 1e250 || an.norm() > 1e250 {
            break;
        }
    }
    prev.ok_or_else(|| Error::NoConvergence("ueda (tau > 1)".into()))
        .and_then(|v| if v.is_finite() { Ok(v) } else { Err(Error::NoConvergence("ueda (tau > 1)".into())) })
}

fn ueda_parabolic<F: Fn(C64) -> C64>(map: &F, a: C64, z: C64) -> Result<C64> {
    let (mut zn, mut an) = (z, a);
    let mut n = 0usize;
    let mut checkpoint = 16usize;
    let mut vals: Vec<C64> = Vec::new();
    let mut last_rich: Option<C64> = None;
    while n < UEDA_MAX_ITER {
        let an1 = map(an);
        if n == checkpoint {
            // b_n estimates the 1/z coefficient of the map
            let b = an * (an1 - an - 1.0);
            let v = zn - an - b * (zn / an).ln();
            vals.push(v);
            if vals.len() >= 2 {
                let k = vals.len();
                let rich = (4.0 * vals[k - 1] - vals[k - 2]) / 3.0;
                if let Some(p) = last_rich {
                    if (rich - p).norm() < UEDA_TOL * (1.0 + rich.norm()) {
                        return Ok(rich);
                    }
                }
                last_rich = Some(rich);
            }
            checkpoint *= 2;
        }
        zn = map(zn);
        an = an1;
        n += 1;
        if !zn.is_finite() || !an.is_finite() {
            break;
        }
    }
    match last_rich {
        Some(v) if v.is_finite() => {
            // accept a slower tail but report it when clearly unconverged
            let k = vals.len();
            let spread = if k >= 3 { ((4.0 * vals[k - 2] - vals[k - 3]) / 3.0 - v).norm() } else { f64::INFINITY };
            if spread < 1e-7 * (1.0 + v.norm()) {
                Ok(v)
            } else {
                Err(Error::NoConvergence("ueda (tau = 1)".into()))
            }
        }
        _ => Err(Error::NoConvergence("ueda (tau = 1)".into())),
    }
}
