//! Edge sharing: walk from a tile's center across each of its edges and read the neighbor's address.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::tiling::{Side, Tessellation};
use crate::angles::{address_realizable, angles_of_depth, RationalAngle, RotationData, Sig, TileAddress};

const SUBSTEPS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    /// toward the attracting point, level m + l
    CircularInner,
    /// away from it, level m - l
    CircularOuter,
    Degenerating,
    Critical,
}

#[derive(Clone, Debug)]
pub struct EdgeProbe {
    pub kind: EdgeKind,
    pub expected: Option<TileAddress>,
    pub found: Result<TileAddress, String>,
}

impl EdgeProbe {
    pub fn ok(&self) -> bool {
        match (&self.found, &self.expected) {
            (Ok(a), Some(e)) => a == e,
            // critical edge: only the level and signature are prescribed
            (Ok(_), None) => true,
            _ => false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EdgeCheck {
    pub addr: TileAddress,
    pub probes: Vec<EdgeProbe>,
    /// angle of the tile across the critical edge
    pub partner: Option<RationalAngle>,
    pub error: Option<String>,
}

impl EdgeCheck {
    pub fn ok(&self) -> bool {
        self.error.is_none() && self.probes.iter().all(|p| p.ok())
    }
}

#[derive(Clone, Debug)]
pub struct EdgeReport {
    pub side: Side,
    pub checks: Vec<EdgeCheck>,
}

impl EdgeReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.ok()).count()
    }

    pub fn all_ok(&self) -> bool {
        self.passed() == self.checks.len()
    }

    /// Addresses whose critical partner differs between the two reports.
    pub fn partner_mismatches(&self, other: &EdgeReport) -> Vec<TileAddress> {
        self.checks
            .iter()
            .zip(&other.checks)
            .filter(|(a, b)| a.addr != b.addr || a.partner.is_none() || a.partner != b.partner)
            .map(|(a, _)| a.addr.clone())
            .collect()
    }
}

/// Deterministic sample of distinct realizable addresses with angle depth ≤ max_depth and |level| ≤ 4.
pub fn sample_addresses(rot: &RotationData, l: usize, count: usize, max_depth: usize, seed: u64) -> Vec<TileAddress> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<(RationalAngle, Sig)> = Vec::new();
    for sig in [Sig::Plus, Sig::Minus] {
        for d in 0..=max_depth {
            pool.extend(angles_of_depth(rot, sig, d).into_iter().map(|t| (t, sig)));
        }
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (t, sig) = pool.choose(&mut rng).unwrap().clone();
        let m = rng.gen_range(-4i64..=4);
        let addr = TileAddress::new(t, m, sig);
        if !out.contains(&addr) && address_realizable(&addr, l as u32, rot).unwrap_or(false) {
            out.push(addr);
        }
    }
    out
}

impl Tessellation {
    fn probe(&self, addr: &TileAddress, kind: EdgeKind) -> Result<EdgeProbe, String> {
        let sig = addr.sig;
        let v0 = self.transverse(sig, 0.5);
        let (z, n) = self.point_at(addr, 0.5, v0).map_err(|e| e.to_string())?;
        let mu = (addr.level + n as i64) / self.l as i64;
        let x0 = mu as f64 + 0.5;
        let l = self.l as i64;
        let parabolic = self.model.is_parabolic();
        let (to, expected) = match kind {
            EdgeKind::CircularInner => ((x0 + 1.0, v0), Some(TileAddress::new(addr.angle.clone(), addr.level + l, sig))),
            EdgeKind::CircularOuter => ((x0 - 1.0, v0), Some(TileAddress::new(addr.angle.clone(), addr.level - l, sig))),
            EdgeKind::Degenerating => ((x0, -v0), Some(TileAddress::new(addr.angle.clone(), addr.level, sig.flip()))),
            EdgeKind::Critical => {
                let v1 = if parabolic { -v0 } else { sig.sign() * 1.5 * PI };
                ((x0, v1), None)
            }
        };
        let w = self
            .continue_model(z, n, (x0, v0), to, SUBSTEPS)
            .or_else(|_| self.continue_model(z, n, (x0, v0), to, 8 * SUBSTEPS))
            .map_err(|e| e.to_string())?;
        let found = self.address_of(w).map_err(|e| e.to_string());
        let found = match (kind, found) {
            (EdgeKind::Critical, Ok(a)) if a.level != addr.level || a.sig != sig.flip() => {
                Err(format!("critical neighbor {a} has the wrong level or signature"))
            }
            (_, f) => f,
        };
        Ok(EdgeProbe { kind, expected, found })
    }

    /// Cross every edge of each sampled tile and compare the neighbor with the edge-sharing rules.
    pub fn verify_edge_sharing(&self, addrs: &[TileAddress]) -> EdgeReport {
        let mut kinds = vec![EdgeKind::CircularInner, EdgeKind::CircularOuter, EdgeKind::Critical];
        if !self.model.is_parabolic() {
            kinds.push(EdgeKind::Degenerating);
        }
        let checks = addrs
            .par_iter()
            .map(|addr| {
                let mut probes = Vec::new();
                let mut error = None;
                for &k in &kinds {
                    match self.probe(addr, k) {
                        Ok(p) => probes.push(p),
                        Err(e) => {
                            error = Some(format!("{k:?}: {e}"));
                        }
                    }
                }
                let partner = probes
                    .iter()
                    .find(|p| p.kind == EdgeKind::Critical)
                    .and_then(|p| p.found.as_ref().ok())
                    .map(|a| a.angle.clone());
                EdgeCheck { addr: addr.clone(), probes, partner, error }
            })
            .collect();
        EdgeReport { side: self.side, checks }
    }
}
