//! The pinching semiconjugacy h from f to g: the model conjugacy H, the tile-to-tile interior map,
//! Böttcher transport on the exterior, angle transport on the Julia set, convergence metrics and
//! the conjugacy κ between two maps degenerating to the same g.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::angles::{RationalAngle, Sig, TileAddress};
use crate::boettcher::{exterior_from_path, external_coordinates, green_potential, landing_point, sample_angles};
use crate::dynamics::DegenerationPair;
use crate::error::{Error, Result};
use crate::geom::{densify, hausdorff};
use crate::tess::{FundamentalModel, Side, Tessellation};

/// Exterior points below this potential are routed to the Julia-set handler.
pub const EXTERIOR_FLOOR: f64 = 1e-4;
/// Co-landing tolerance for the g-rays of one type.
pub const PINCH_TOL: f64 = 1e-3;

/// H in band coordinates: (x, arg(W - a)) to (Re, Im) of the G-model point.
/// 2a tan((π - t)/2) with t in (0, 2π) equals 2a cot(v/2) for v = arg(W - a) in (-π, π].
pub fn h_coords(model: &FundamentalModel, x: f64, v: f64) -> (f64, f64) {
    (x, 2.0 * model.a / (v / 2.0).tan())
}

pub fn h_coords_inverse(model: &FundamentalModel, x: f64, y: f64) -> (f64, f64) {
    if y == 0.0 {
        return (x, PI);
    }
    (x, 2.0 * (2.0 * model.a / y).atan())
}

/// H(W) = (log ρ - log a)/log R + 2ai tan((π - t)/2) for W = a + ρe^{it}, 0 < t < 2π.
pub fn model_h(model: &FundamentalModel, w: C64) -> Result<C64> {
    model_h_offset(model, w - model.a)
}

/// H from u = W - a.
pub fn model_h_offset(model: &FundamentalModel, u: C64) -> Result<C64> {
    if u.im == 0.0 && u.re >= 0.0 {
        return Err(Error::OnSlit);
    }
    let (x, y) = h_coords(model, (u.norm() / model.a).ln() / model.big_r.ln(), u.arg());
    Ok(C64::new(x, y))
}

pub fn model_h_inverse(model: &FundamentalModel, y: C64) -> C64 {
    let (x, v) = h_coords_inverse(model, y.re, y.im);
    model.point(x, v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Exterior,
    Interior,
}

pub struct SemiconjHandle {
    pub pair: DegenerationPair,
    pub f_tess: Tessellation,
    pub g_tess: Tessellation,
    pub model: FundamentalModel,
    pub exterior_floor: f64,
}

/// Move z from one tessellation to the other: same address, model coordinates mapped by `conv`.
fn transport(from: &Tessellation, to: &Tessellation, z: C64, conv: impl Fn(f64, f64) -> (f64, f64)) -> Result<C64> {
    let loc = from.locate(z)?;
    if loc.cell.flags.on_edge() {
        return Err(Error::OnEdge);
    }
    let (angle, _) = from.angle_of(&loc);
    let addr = TileAddress::new(angle, loc.level(from.l), loc.sig());
    let (x, v) = conv(loc.cell.x, loc.cell.v);
    let frac = x - loc.cell.mu as f64;
    Ok(to.point_at(&addr, frac, v)?.0)
}

impl SemiconjHandle {
    pub fn build(pair: &DegenerationPair) -> Result<SemiconjHandle> {
        let f_tess = Tessellation::build(pair, Side::F)?;
        let g_tess = Tessellation::build(pair, Side::G)?;
        let model = f_tess.model;
        Ok(SemiconjHandle { pair: pair.clone(), f_tess, g_tess, model, exterior_floor: EXTERIOR_FLOOR })
    }

    pub fn region(&self, z: C64) -> Region {
        if green_potential(self.pair.f, z) > 0.0 {
            Region::Exterior
        } else {
            Region::Interior
        }
    }

    /// h on K_f° - I_f: the point of T_g(addr) whose model coordinates are H of those of z.
    pub fn h_interior(&self, z: C64) -> Result<C64> {
        let m = self.model;
        transport(&self.f_tess, &self.g_tess, z, |x, v| h_coords(&m, x, v))
    }

    /// Inverse of h on the interior of K_g.
    pub fn h_interior_inverse(&self, w: C64) -> Result<C64> {
        let m = self.model;
        transport(&self.g_tess, &self.f_tess, w, |x, y| h_coords_inverse(&m, x, y))
    }

    /// Böttcher transport: the point of g's exterior with the same potential and external angle.
    pub fn h_exterior(&self, z: C64) -> Result<C64> {
        let ec = external_coordinates(self.pair.f, z)?;
        if ec.potential < self.exterior_floor {
            return Err(Error::TooCloseToJulia);
        }
        exterior_from_path(self.pair.g, &ec.path)
    }

    pub fn h_exterior_inverse(&self, w: C64) -> Result<C64> {
        let ec = external_coordinates(self.pair.g, w)?;
        if ec.potential < self.exterior_floor {
            return Err(Error::TooCloseToJulia);
        }
        exterior_from_path(self.pair.f, &ec.path)
    }

    /// (γ_f(θ), γ_g(θ)).
    pub fn h_julia(&self, theta: &RationalAngle) -> Result<(C64, C64)> {
        Ok((landing_point(self.pair.f, theta)?, landing_point(self.pair.g, theta)?))
    }

    pub fn h(&self, z: C64) -> Result<C64> {
        match self.region(z) {
            Region::Exterior => self.h_exterior(z),
            Region::Interior => self.h_interior(z),
        }
    }

    /// The point of I_g an arc component of type `angles` collapses to: the common landing point
    /// of the g-rays with those angles.
    pub fn pinch_image_of_arc(&self, angles: &[RationalAngle]) -> Result<C64> {
        let pts: Vec<C64> = angles.iter().map(|t| landing_point(self.pair.g, t)).collect::<Result<_>>()?;
        let first = *pts.first().ok_or_else(|| Error::Argument("empty type".into()))?;
        for (t, p) in angles.iter().zip(&pts) {
            if (p - first).norm() > PINCH_TOL {
                return Err(Error::TypeMismatch(format!("ray {t} lands {:.2e} away", (p - first).norm())));
            }
        }
        Ok(pts.iter().sum::<C64>() / pts.len() as f64)
    }
}

/// κ = h_2^{-1} ∘ h_1 from f_1 to f_2, for two handles sharing g.
pub fn trans_component_kappa(h1: &SemiconjHandle, h2: &SemiconjHandle, z: C64) -> Result<C64> {
    if (h1.pair.g.c - h2.pair.g.c).norm() > 1e-10 {
        return Err(Error::SubdivisionMismatch("the two pairs do not share g".into()));
    }
    match h1.region(z) {
        Region::Exterior => h2.h_exterior_inverse(h1.h_exterior(z)?),
        Region::Interior => h2.h_interior_inverse(h1.h_interior(z)?),
    }
}

#[derive(Clone, Debug)]
pub struct KappaCheck {
    pub coarse: TileAddress,
    /// fine addresses the κ-images of the samples received
    pub found: Vec<TileAddress>,
    pub expected: Vec<TileAddress>,
    pub conj_residual: f64,
    pub error: Option<String>,
}

impl KappaCheck {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.found == self.expected
    }
}

/// For a coarse tile of the pair with l q = l·1 (fine side with q > 1), sample it at the q model
/// heights of the fine tiles, move the samples by κ and read their fine addresses.
pub fn kappa_spot_check(coarse_h: &SemiconjHandle, fine_h: &SemiconjHandle, coarse: &TileAddress) -> KappaCheck {
    let q = fine_h.pair.q as usize;
    let l = fine_h.pair.l as u32;
    let mut expected = crate::angles::subdivision_levels(coarse, l, q as u32);
    expected.sort_by_key(|a| a.level);
    let mut found = Vec::new();
    let mut residual: f64 = 0.0;
    let mut error = None;
    for j in 0..q {
        let frac = (j as f64 + 0.5) / q as f64;
        let run = || -> Result<(TileAddress, f64)> {
            let z = coarse_h.f_tess.tile_point(coarse, frac, 0.5)?;
            let k = trans_component_kappa(coarse_h, fine_h, z)?;
            let a = fine_h.f_tess.address_of(k)?;
            let k1 = trans_component_kappa(coarse_h, fine_h, coarse_h.pair.f.f(z))?;
            Ok((a, (k1 - fine_h.pair.f.f(k)).norm()))
        };
        match run() {
            Ok((a, r)) => {
                found.push(a);
                residual = residual.max(r);
            }
            Err(e) => error = Some(e.to_string()),
        }
    }
    found.sort_by_key(|a| a.level);
    found.dedup();
    KappaCheck { coarse: coarse.clone(), found, expected, conj_residual: residual, error }
}

#[derive(Clone, Debug)]
pub struct SampleSpec {
    /// exterior grid side, over [-2, 2]^2
    pub grid: usize,
    /// minimal f-potential of exterior samples
    pub exterior_potential: f64,
    /// angle depth and level range of the interior tile markers (taken on the g side)
    pub interior_depth: usize,
    pub interior_levels: (i64, i64),
    /// interior samples closer than this to the parabolic cycle are dropped
    pub interior_margin: f64,
    pub julia_angles: usize,
    /// depth of the panel-diameter sweep
    pub panel_depth: usize,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            grid: 24,
            exterior_potential: 0.05,
            interior_depth: 2,
            interior_levels: (-2, 1),
            interior_margin: 0.05,
            julia_angles: 24,
            panel_depth: 6,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Metric {
    pub value: f64,
    pub argmax: C64,
    pub samples: usize,
    pub failures: usize,
}

impl Metric {
    fn sup(vals: &[Result<(f64, C64)>]) -> Metric {
        let mut m = Metric { value: 0.0, argmax: C64::new(f64::NAN, f64::NAN), samples: 0, failures: 0 };
        for v in vals {
            match v {
                Ok((d, z)) => {
                    m.samples += 1;
                    if *d > m.value {
                        m.value = *d;
                        m.argmax = *z;
                    }
                }
                Err(_) => m.failures += 1,
            }
        }
        m
    }
}

#[derive(Clone, Debug)]
pub struct ConvergenceRow {
    pub r: f64,
    pub exterior: Metric,
    pub interior: Metric,
    pub julia: Metric,
    /// sup |Φ_f - Φ_g| over the interior samples that lie in both base regions
    pub phi: Metric,
    /// Hausdorff distance of the root + panels of f and g
    pub panel_hausdorff: f64,
    /// largest f-panel diameter at the sweep depth
    pub deep_panel_diameter: f64,
}

impl ConvergenceRow {
    pub fn aggregate(&self) -> f64 {
        (self.exterior.value + self.interior.value + self.julia.value) / 3.0
    }
}

/// Interior sample points in K_g°: markers of low-depth g tiles away from the parabolic cycle.
pub fn interior_samples(g_tess: &Tessellation, pair: &DegenerationPair, spec: &SampleSpec) -> Vec<C64> {
    let mut out = Vec::new();
    for sig in [Sig::Plus, Sig::Minus] {
        for d in 0..=spec.interior_depth {
            for t in crate::angles::angles_of_depth(&pair.rot, sig, d) {
                for m in spec.interior_levels.0..=spec.interior_levels.1 {
                    let addr = TileAddress::new(t.clone(), m, sig);
                    if let Ok(z) = g_tess.tile_point(&addr, 0.5, 0.5) {
                        if pair.o_g.points.iter().all(|b| (b - z).norm() > spec.interior_margin) {
                            out.push(z);
                        }
                    }
                }
            }
        }
    }
    out
}

/// One row per pair: sup |h - id| over exterior, interior and Julia samples, with panel metrics.
/// The pairs should share g.
pub fn convergence_report(pairs: &[DegenerationPair], spec: &SampleSpec) -> Result<Vec<ConvergenceRow>> {
    let first = pairs.first().ok_or_else(|| Error::Argument("empty family".into()))?;
    let g_tess = Tessellation::build(first, Side::G)?;
    let interior = interior_samples(&g_tess, first, spec);
    let mut angles = sample_angles(spec.julia_angles);
    angles.extend(first.rot.cycle.iter().cloned());
    let g_land: Vec<Result<C64>> = angles.par_iter().map(|t| landing_point(first.g, t)).collect();
    let g_root = densify(&g_tess.skeleton.root_boundary(Sig::Plus), 2e-3);
    let n = spec.grid;
    let grid: Vec<C64> = (0..n * n)
        .map(|k| C64::new(-2.0 + 4.0 * ((k % n) as f64 + 0.5) / n as f64, -2.0 + 4.0 * ((k / n) as f64 + 0.5) / n as f64))
        .collect();
    let mut rows = Vec::new();
    for pair in pairs {
        if (pair.g.c - first.g.c).norm() > 1e-10 {
            return Err(Error::Argument("family members do not share g".into()));
        }
        let h = SemiconjHandle::build(pair)?;
        let ext: Vec<Result<(f64, C64)>> = grid
            .par_iter()
            .filter(|z| green_potential(pair.f, **z) >= spec.exterior_potential)
            .map(|&z| h.h_exterior(z).map(|w| ((w - z).norm(), z)))
            .collect();
        let int: Vec<Result<(f64, C64)>> = interior.par_iter().map(|&z| h.h_interior(z).map(|w| ((w - z).norm(), z))).collect();
        let phi: Vec<Result<(f64, C64)>> = interior
            .par_iter()
            .map(|&z| Ok(((h.f_tess.phi(z)? - h.g_tess.phi(z)?).norm(), z)))
            .collect();
        let jul: Vec<Result<(f64, C64)>> = angles
            .par_iter()
            .zip(&g_land)
            .map(|(t, gl)| {
                let gp = gl.clone()?;
                let fp = landing_point(pair.f, t)?;
                Ok(((fp - gp).norm(), fp))
            })
            .collect();
        let f_root = densify(&h.f_tess.skeleton.root_boundary(Sig::Plus), 2e-3);
        let sweep = h.f_tess.depth_sweep(spec.panel_depth)?;
        rows.push(ConvergenceRow {
            r: pair.r,
            exterior: Metric::sup(&ext),
            interior: Metric::sup(&int),
            julia: Metric::sup(&jul),
            phi: Metric::sup(&phi),
            panel_hausdorff: hausdorff(&f_root, &g_root),
            deep_panel_diameter: sweep.last().map(|s| s.max_diameter).unwrap_or(f64::NAN),
        });
    }
    Ok(rows)
}
