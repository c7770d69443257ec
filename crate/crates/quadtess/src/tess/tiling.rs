//! Tile addresses: the reduction Φ to the model, levels from the first entry into the base region,
//! angles by pulling the base angle back along the orbit.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;

use super::curves::{fatou_skeleton, koenigs_skeleton, Linearizer, Skeleton};
use super::model::{FundamentalModel, ModelCell, EDGE_TOL};
use crate::angles::{hitting_times, RationalAngle, RotationData, Sig, TileAddress};
use crate::dynamics::{DegenerationPair, QuadParam};
use crate::error::{Error, Result};
use crate::geom::Polygon;
use crate::linearize::{degenerating_arcs, Fatou, Koenigs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    F,
    G,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Side::F { "f" } else { "g" })
    }
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f" => Ok(Side::F),
            "g" => Ok(Side::G),
            _ => Err(Error::Parse(format!("side must be f or g, got {s:?}"))),
        }
    }
}

/// Result of the forward search for a point.
#[derive(Clone, Debug)]
pub struct Located {
    /// first n with the n-th iterate in the base region
    pub n: usize,
    /// Φ of that iterate
    pub w: C64,
    pub cell: ModelCell,
    /// angle of the base-region tile that contains the n-th iterate
    pub base_angle: RationalAngle,
    pub orbit: Vec<C64>,
}

impl Located {
    pub fn level(&self, l: usize) -> i64 {
        self.cell.mu * l as i64 - self.n as i64
    }
}

pub struct Tessellation {
    pub side: Side,
    pub map: QuadParam,
    pub model: FundamentalModel,
    pub l: usize,
    pub q: usize,
    pub p: usize,
    pub rot: RotationData,
    pub lin: Linearizer,
    pub skeleton: Skeleton,
    partition: Polygon,
    pub tol: f64,
    /// iteration budget of the forward search
    pub budget: usize,
}

pub const MAX_SEARCH: usize = 200_000;

fn half() -> RationalAngle {
    RationalAngle::from_u64(1, 2)
}

impl Tessellation {
    pub fn build(pair: &DegenerationPair, side: Side) -> Result<Tessellation> {
        let q = pair.q as usize;
        let l = pair.l;
        let theta_plus = pair.rot.critical_plus.clone();
        let (map, model, lin, skeleton, budget) = match side {
            Side::F => {
                let kg = Koenigs::new(pair.f, &pair.o_f.points)?;
                let arcs = degenerating_arcs(pair)?;
                let plus = &arcs[q - 1];
                let minus = &arcs[0];
                for (a, s) in [(plus, Sig::Plus), (minus, Sig::Minus)] {
                    if let Some(t) = &a.angle {
                        if t != pair.rot.critical(s) {
                            return Err(Error::InconsistentPair(format!("arc {} lands at ray {t}", a.index)));
                        }
                    }
                }
                let ends = [(plus.polyline(), plus.endpoint), (minus.polyline(), minus.endpoint)];
                let sk = koenigs_skeleton(&kg, l * q, q, &theta_plus, ends, false)?;
                let model = FundamentalModel::new(kg.lambda.norm().powi(q as i32), q as u32);
                let budget = (kg.budget * l).min(MAX_SEARCH);
                (pair.f, model, Linearizer::Koenigs(kg), sk, budget)
            }
            Side::G => {
                let ft = Fatou::new(pair.g, &pair.o_g.points, pair.prime_rot.1 as usize)?;
                if ft.steps != l * q {
                    return Err(Error::InconsistentPair(format!("return time {} vs lq = {}", ft.steps, l * q)));
                }
                let sk = fatou_skeleton(&ft, l * q, &theta_plus)?;
                let budget = (ft.budget * ft.steps).min(MAX_SEARCH);
                (pair.g, FundamentalModel::parabolic(q as u32), Linearizer::Fatou(ft), sk, budget)
            }
        };
        let partition = skeleton.partition();
        Ok(Tessellation {
            side,
            map,
            model,
            l,
            q,
            p: pair.p as usize % q.max(1),
            rot: pair.rot.clone(),
            lin,
            skeleton,
            partition,
            tol: EDGE_TOL,
            budget,
        })
    }

    pub fn center(&self) -> C64 {
        self.skeleton.center
    }

    /// Φ and its derivative.
    pub fn phi_d(&self, z: C64) -> Result<(C64, C64)> {
        match &self.lin {
            Linearizer::Koenigs(kg) => {
                let (v, d) = kg.eval_d(z)?;
                let a = self.model.a;
                let vq1 = v.powi(self.q as i32 - 1);
                Ok((a * (1.0 - vq1 * v), -a * self.q as f64 * vq1 * d))
            }
            Linearizer::Fatou(ft) => {
                let (v, d) = ft.eval_d(z)?;
                let qf = self.q as f64;
                Ok((qf * v, qf * d))
            }
        }
    }

    pub fn phi(&self, z: C64) -> Result<C64> {
        Ok(self.phi_d(z)?.0)
    }

    /// Whether z lies on the side of the cut curve that holds the rays (θ_0^+, θ_0^+ + 1/2).
    pub fn in_partition(&self, z: C64) -> bool {
        self.partition.contains(z)
    }

    pub fn partition(&self) -> &Polygon {
        &self.partition
    }

    /// The side a tile of angle h and signature sig lies on.
    pub fn wants_partition(&self, h: &RationalAngle, sig: Sig) -> bool {
        let o = self.rot.critical_plus.exact_arc_to(h);
        let hf = half();
        match sig {
            Sig::Plus => o.is_zero() || (o != hf && o.to_f64() < 0.5),
            Sig::Minus => !o.is_zero() && (o == hf || o.to_f64() < 0.5),
        }
    }

    /// The half of h whose tile contains z.
    pub fn choose_half(&self, h: &RationalAngle, z: C64, sig: Sig) -> RationalAngle {
        let inside = self.in_partition(z);
        let [a, b] = h.halves();
        if self.wants_partition(&a, sig) == inside {
            a
        } else {
            b
        }
    }

    /// Cell of a point in the base region, with its base angle, or None outside it.
    fn base_cell(&self, z: C64) -> Option<Result<(C64, ModelCell, RationalAngle)>> {
        match &self.lin {
            Linearizer::Koenigs(kg) => {
                if (z - kg.alpha).norm() >= kg.radius {
                    return None;
                }
                Some((|| {
                    let v = kg.eval(z)?;
                    let vq = v.powi(self.q as i32);
                    let a = self.model.a;
                    if vq.norm() == 0.0 {
                        return Err(Error::OnDegeneratingArc);
                    }
                    let cell = self.model.classify_offset(-a * vq, self.tol)?;
                    let qf = self.q as f64;
                    let k = ((v.arg() * qf / (2.0 * PI)).round() as i64).rem_euclid(self.q as i64) as usize;
                    let j = (0..self.q).find(|j| (j * self.p) % self.q == k).unwrap_or(0);
                    let base = self.rot.critical(cell.sig).iterate(self.l * j);
                    Ok((a * (1.0 - vq), cell, base))
                })())
            }
            Linearizer::Fatou(ft) => {
                let xi = ft.petal_xi(z)?;
                let w = self.q as f64 * (ft.series.eval_d(xi, ft.psi0).0 - ft.c0);
                Some(self.model.classify(w, self.tol).map(|cell| (w, cell, self.rot.critical(cell.sig).clone())))
            }
        }
    }

    /// Forward search for the first iterate in the base region.
    pub fn locate(&self, z: C64) -> Result<Located> {
        self.locate_within(z, self.budget)
    }

    pub fn locate_within(&self, z: C64, budget: usize) -> Result<Located> {
        let mut orbit = vec![z];
        let mut w = z;
        for n in 0..=budget {
            if let Some(r) = self.base_cell(w) {
                let (phi, cell, base_angle) = r?;
                return Ok(Located { n, w: phi, cell, base_angle, orbit });
            }
            if w.norm_sqr() > 16.0 || !w.is_finite() {
                return Err(Error::NotInInterior);
            }
            w = self.map.f(w);
            orbit.push(w);
        }
        Err(Error::NotInInterior)
    }

    /// Angle of the tile holding orbit[0], with the angle's depth.
    pub fn angle_of(&self, loc: &Located) -> (RationalAngle, usize) {
        let sig = loc.cell.sig;
        let target = self.rot.critical(sig);
        let mut h = loc.base_angle.clone();
        let mut hit = if h == *target { Some(loc.n) } else { None };
        for i in (0..loc.n).rev() {
            h = self.choose_half(&h, loc.orbit[i], sig);
            if h == *target {
                hit = Some(i);
            }
        }
        let depth = match hit {
            Some(i) => i,
            None => loc.n + hitting_times(&loc.base_angle, target).map(|t| t.0).unwrap_or(0),
        };
        (h, depth)
    }

    pub fn address_of(&self, z: C64) -> Result<TileAddress> {
        let loc = self.locate(z)?;
        if loc.cell.flags.on_edge() {
            if loc.cell.flags.degenerating && loc.cell.v.abs() < 1e-12 {
                return Err(Error::OnDegeneratingArc);
            }
            return Err(Error::OnEdge);
        }
        let (angle, _) = self.angle_of(&loc);
        Ok(TileAddress::new(angle, loc.level(self.l), loc.sig()))
    }

    /// Points of the base region where Φ comes from the local series with no returns: a 3x3 grid
    /// per signature in each of the first `bands` deep enough bands.
    pub fn base_samples(&self, bands: usize) -> Vec<C64> {
        let mut out = Vec::new();
        let mut found = 0;
        for mu in 0..200 {
            let mut band = Vec::new();
            for sig in [Sig::Plus, Sig::Minus] {
                for frac in [0.25, 0.5, 0.75] {
                    for s in [0.2, 0.5, 0.8] {
                        if let Some(z) = self.base_point(mu, frac, self.transverse(sig, s)) {
                            band.push(z);
                        }
                    }
                }
            }
            if band.len() == 18 {
                out.extend(band);
                found += 1;
                if found == bands {
                    break;
                }
            }
        }
        out
    }

    /// Residual of Φ's functional equation, with both sides taken from the local series:
    /// |Φ(f^l z) - F(Φ(z))| / max(1, |F(Φ(z))|) on the attracting side,
    /// |Φ(g^{lq} z) - Φ(z) - q| on the parabolic side. None when either point needs returns.
    pub fn series_residual(&self, z: C64) -> Result<Option<f64>> {
        match &self.lin {
            Linearizer::Koenigs(kg) => {
                let z1 = self.map.iterate(z, self.l);
                let ((v0, _, k0), (v1, _, k1)) = (kg.raw(z)?, kg.raw(z1)?);
                if k0 + k1 > 0 {
                    return Ok(None);
                }
                let to_model = |v: C64| self.model.a * (1.0 - (v / kg.norm).powi(self.q as i32));
                let rhs = self.model.map(to_model(v0));
                Ok(Some((to_model(v1) - rhs).norm() / rhs.norm().max(1.0)))
            }
            Linearizer::Fatou(ft) => {
                let z1 = self.map.iterate(z, self.l * self.q);
                let ((v0, _, k0), (v1, _, k1)) = (ft.raw(z)?, ft.raw(z1)?);
                if k0 + k1 > 0 {
                    return Ok(None);
                }
                Ok(Some((self.q as f64 * (v1 - v0) - self.q as f64).norm()))
            }
        }
    }

    /// Model point (μ + frac, v), mapped into the base region; None if that point is not deep enough.
    fn base_point(&self, mu: i64, frac: f64, v: f64) -> Option<C64> {
        let x = mu as f64 + frac;
        match &self.lin {
            Linearizer::Koenigs(kg) => {
                // φ^q = 1 - W/a = -R^x e^{iv}, root taken in the critical sector
                let qf = self.q as f64;
                let phi = C64::from_polar(self.model.big_r.powf(x / qf), (v - v.signum() * PI) / qf);
                if phi.norm() > kg.local_value_radius() {
                    return None;
                }
                kg.inverse_local(phi)
            }
            Linearizer::Fatou(ft) => ft.inverse_deep(C64::new(x, v) / self.q as f64),
        }
    }

    /// Transverse model coordinate of the parameter s in (0, 1).
    pub fn transverse(&self, sig: Sig, s: f64) -> f64 {
        let w = self.model.tile_point(0, sig, 0.0, s);
        if self.model.is_parabolic() {
            w.im
        } else {
            (w - self.model.a).arg()
        }
    }

    /// A point of the tile `addr` at model coordinates (frac, s) in (0,1)^2.
    pub fn tile_point(&self, addr: &TileAddress, frac: f64, s: f64) -> Result<C64> {
        Ok(self.point_at(addr, frac, self.transverse(addr.sig, s))?.0)
    }

    /// The point of tile `addr` whose model coordinates are (μ + frac, v), with the number of
    /// iterates n it takes to reach the base region (its band is μ = (level + n)/l).
    pub fn point_at(&self, addr: &TileAddress, frac: f64, v: f64) -> Result<(C64, usize)> {
        let target = self.rot.critical(addr.sig);
        let (n0, stride) = hitting_times(&addr.angle, target).ok_or_else(|| Error::NotInThetaF(addr.angle.to_string()))?;
        let l = self.l as i64;
        let mut n = n0;
        let mut tries = 0;
        loop {
            if (addr.level + n as i64).rem_euclid(l) == 0 {
                let mu = (addr.level + n as i64) / l;
                if let Some(z) = self.base_point(mu, frac, v) {
                    return Ok((self.pull_back(z, &addr.angle, addr.sig, n), n));
                }
            }
            n += stride;
            tries += 1;
            if tries > 100_000 {
                return Err(Error::AddressFailure(format!("no deep representative for {addr}")));
            }
        }
    }

    /// Pull z back n steps into the tiles whose angles are θ, 2θ, ..., 2^{n-1}θ.
    pub fn pull_back(&self, z: C64, angle: &RationalAngle, sig: Sig, n: usize) -> C64 {
        let mut angles = Vec::with_capacity(n);
        let mut t = angle.clone();
        for _ in 0..n {
            angles.push(t.clone());
            t = t.double();
        }
        let mut z = z;
        for i in (0..n).rev() {
            let r = (z - self.map.c).sqrt();
            let want = self.wants_partition(&angles[i], sig);
            z = if self.in_partition(r) == want { r } else { -r };
        }
        z
    }

    /// Newton continuation of Φ∘f^n from z toward the model point `target`, in `substeps` stages
    /// along the straight path in model coordinates.
    pub fn continue_model(&self, z: C64, n: usize, from: (f64, f64), to: (f64, f64), substeps: usize) -> Result<C64> {
        let mut z = z;
        for k in 1..=substeps {
            let t = k as f64 / substeps as f64;
            let x = from.0 + (to.0 - from.0) * t;
            let v = from.1 + (to.1 - from.1) * t;
            let goal = self.model.point(x, v);
            let mut ok = false;
            let mut prev = f64::INFINITY;
            for it in 0..50 {
                let (fz, dfz) = self.map.iterate_d(z, n);
                let (w, dw) = self.phi_d(fz)?;
                let step = (w - goal) / (dw * dfz);
                z -= step;
                if !z.is_finite() {
                    return Err(Error::NewtonDivergence("model continuation".into()));
                }
                let sn = step.norm();
                // converged, or stuck at the rounding floor
                if sn < 1e-14 * (1.0 + z.norm()) || (it > 3 && sn < 1e-9 && sn > 0.5 * prev) {
                    ok = true;
                    break;
                }
                prev = sn;
            }
            if !ok {
                return Err(Error::NewtonDivergence(format!("model continuation stalled at {z}")));
            }
        }
        Ok(z)
    }
}

impl Located {
    pub fn sig(&self) -> Sig {
        self.cell.sig
    }
}
