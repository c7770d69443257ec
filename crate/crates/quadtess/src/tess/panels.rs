//! Panels Π(θ, ∗): unions of the tiles with a common angle and signature, built by lifting the
//! closed boundary of the root panel through inverse branches of the map.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::curves::simplify;
use super::tiling::Tessellation;
use crate::angles::{RationalAngle, Sig, TileAddress};
use crate::geom::{pull_back_curve, Polygon};
use crate::error::Result;

/// Boundary points kept per panel, roughly.
const BOUNDARY_RESOLUTION: f64 = 2e-3;

#[derive(Clone, Debug)]
pub struct TileSketch {
    pub level: i64,
    pub marker: C64,
}

#[derive(Clone, Debug)]
pub struct PanelGeometry {
    pub angle: RationalAngle,
    pub sig: Sig,
    pub depth: usize,
    /// closed boundary, starting at the landing point
    pub boundary: Vec<C64>,
    pub marker: C64,
    pub landing_point: C64,
    pub diameter: f64,
    pub tiles: Vec<TileSketch>,
    /// the lifted marker was not found inside exactly one lift
    pub ambiguous: bool,
}

impl PanelGeometry {
    pub fn address_base(&self) -> (RationalAngle, Sig) {
        (self.angle.clone(), self.sig)
    }

    pub fn polygon(&self) -> Polygon {
        Polygon::new(self.boundary.clone())
    }

    fn negated(&self, angle: RationalAngle) -> PanelGeometry {
        PanelGeometry {
            angle,
            sig: self.sig,
            depth: self.depth,
            boundary: self.boundary.iter().map(|z| -z).collect(),
            marker: -self.marker,
            landing_point: -self.landing_point,
            diameter: self.diameter,
            tiles: Vec::new(),
            ambiguous: self.ambiguous,
        }
    }
}

/// Max pairwise distance over boundary samples (through the convex hull).
pub fn panel_diameter(panel: &PanelGeometry) -> f64 {
    convex_diameter(&panel.boundary)
}

pub fn convex_diameter(pts: &[C64]) -> f64 {
    let hull = convex_hull(pts);
    let mut d: f64 = 0.0;
    for i in 0..hull.len() {
        for j in (i + 1)..hull.len() {
            d = d.max((hull[i] - hull[j]).norm_sqr());
        }
    }
    d.sqrt()
}

fn convex_hull(pts: &[C64]) -> Vec<C64> {
    let mut p: Vec<C64> = pts.to_vec();
    p.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let cross = |o: C64, a: C64, b: C64| (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re);
    let mut lower: Vec<C64> = Vec::new();
    for &z in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], z) <= 0.0 {
            lower.pop();
        }
        lower.push(z);
    }
    let mut upper: Vec<C64> = Vec::new();
    for &z in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], z) <= 0.0 {
            upper.pop();
        }
        upper.push(z);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Insert points where the curve passes close to c, so square roots stay continuous.
fn densify_near(curve: &[C64], c: C64) -> Vec<C64> {
    let n = curve.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let a = curve[i];
        let b = curve[(i + 1) % n];
        out.push(a);
        let near = (a - c).norm().min((b - c).norm()).max(1e-12);
        let k = (((b - a).norm() / (0.2 * near)).ceil() as usize).min(4000);
        for j in 1..k {
            out.push(a + (b - a) * (j as f64 / k as f64));
        }
    }
    out
}

impl Tessellation {
    /// The two root panels Π(θ_0^+, +) and Π(θ_0^-, -).
    pub fn root_panels(&self) -> Result<[PanelGeometry; 2]> {
        let make = |sig: Sig| -> Result<PanelGeometry> {
            let angle = self.rot.critical(sig).clone();
            let boundary = self.skeleton.root_boundary(sig);
            let marker = self.tile_point(&TileAddress::new(angle.clone(), 0, sig), 0.5, 0.5)?;
            let diameter = convex_diameter(&boundary);
            Ok(PanelGeometry {
                angle,
                sig,
                depth: 0,
                landing_point: boundary[0],
                boundary,
                marker,
                diameter,
                tiles: Vec::new(),
                ambiguous: false,
            })
        };
        Ok([make(Sig::Plus)?, make(Sig::Minus)?])
    }

    /// The panels mapped onto `parent` by one step of the map.
    pub fn child_panels(&self, parent: &PanelGeometry, root: &PanelGeometry) -> Vec<PanelGeometry> {
        let theta0 = self.rot.critical(parent.sig);
        if parent.angle == theta0.double() {
            // the critical value lies on this panel's boundary; its lifts are ±root
            let mut p = root.negated(theta0.antipode());
            p.depth = parent.depth + 1;
            return vec![p];
        }
        let c = self.map.c;
        let dense = densify_near(&parent.boundary, c);
        let start = (dense[0] - c).sqrt();
        let lift = pull_back_curve(c, 1, &dense, start, None);
        let scale = convex_diameter(&lift);
        let lift = simplify(&lift, scale * BOUNDARY_RESOLUTION);
        let poly = Polygon::new(lift.clone());
        let r = (parent.marker - c).sqrt();
        let (a, b) = (poly.contains(r), poly.contains(-r));
        let marker = if a { r } else { -r };
        let ambiguous = a == b;
        let [h1, h2] = parent.angle.halves();
        let (mine, other) = if self.wants_partition(&h1, parent.sig) == self.in_partition(marker) { (h1, h2) } else { (h2, h1) };
        let first = PanelGeometry {
            angle: mine,
            sig: parent.sig,
            depth: parent.depth + 1,
            landing_point: lift[0],
            boundary: lift,
            marker,
            diameter: scale,
            tiles: Vec::new(),
            ambiguous,
        };
        let second = first.negated(other);
        let mut out = vec![first, second];
        out.retain(|p| p.angle != *theta0);
        out
    }

    /// All panels of depth ≤ max_depth for both signatures. With `level_range`, each panel also
    /// records a marker for every realizable tile level in the range.
    pub fn build_panels(&self, max_depth: usize, level_range: Option<(i64, i64)>) -> Result<Vec<PanelGeometry>> {
        let roots = self.root_panels()?;
        let mut all = Vec::new();
        for root in roots.iter() {
            let mut layer = vec![root.clone()];
            all.push(root.clone());
            for _ in 0..max_depth {
                let next: Vec<PanelGeometry> = layer.par_iter().flat_map(|p| self.child_panels(p, root)).collect();
                all.extend(next.iter().cloned());
                layer = next;
            }
        }
        if let Some((lo, hi)) = level_range {
            all.par_iter_mut().for_each(|p| {
                for m in lo..=hi {
                    let addr = TileAddress::new(p.angle.clone(), m, p.sig);
                    if let Ok(z) = self.tile_point(&addr, 0.5, 0.5) {
                        p.tiles.push(TileSketch { level: m, marker: z });
                    }
                }
            });
        }
        Ok(all)
    }

    /// Panel count and largest diameter per depth, by a depth-first sweep that keeps only the
    /// current branch in memory.
    pub fn depth_sweep(&self, max_depth: usize) -> Result<Vec<DepthStat>> {
        let roots = self.root_panels()?;
        let mut stats: Vec<DepthStat> = (0..=max_depth).map(|d| DepthStat { depth: d, count: 0, max_diameter: 0.0 }).collect();
        for root in roots.iter() {
            let s = self.sweep_from(root, root, max_depth);
            for (acc, x) in stats.iter_mut().zip(s) {
                acc.count += x.count;
                acc.max_diameter = acc.max_diameter.max(x.max_diameter);
            }
        }
        Ok(stats)
    }

    fn sweep_from(&self, p: &PanelGeometry, root: &PanelGeometry, max_depth: usize) -> Vec<DepthStat> {
        let mut stats: Vec<DepthStat> = (0..=max_depth).map(|d| DepthStat { depth: d, count: 0, max_diameter: 0.0 }).collect();
        stats[p.depth].count = 1;
        stats[p.depth].max_diameter = p.diameter;
        if p.depth < max_depth {
            let kids = self.child_panels(p, root);
            let sub: Vec<Vec<DepthStat>> = kids.par_iter().map(|k| self.sweep_from(k, root, max_depth)).collect();
            for s in sub {
                for (acc, x) in stats.iter_mut().zip(s) {
                    acc.count += x.count;
                    acc.max_diameter = acc.max_diameter.max(x.max_diameter);
                }
            }
        }
        stats
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DepthStat {
    pub depth: usize,
    pub count: usize,
    pub max_diameter: f64,
}
