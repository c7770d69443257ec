//! Polylines, polygons and point-cloud distances in the plane.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

/// Symmetric Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &[C64], b: &[C64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() { 0.0 } else { f64::INFINITY };
    }
    let one = |x: &[C64], y: &[C64]| {
        x.par_iter()
            .map(|p| y.iter().map(|q| (p - q).norm_sqr()).fold(f64::INFINITY, f64::min))
            .reduce(|| 0.0, f64::max)
    };
    one(a, b).max(one(b, a)).sqrt()
}

pub fn diameter(pts: &[C64]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            d = d.max((pts[i] - pts[j]).norm_sqr());
        }
    }
    d.sqrt()
}

pub fn dist_to_segment(p: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let l2 = ab.norm_sqr();
    if l2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a) * ab.conj()).re / l2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

pub fn dist_to_polyline(p: C64, line: &[C64]) -> f64 {
    if line.len() == 1 {
        return (p - line[0]).norm();
    }
    line.windows(2).map(|w| dist_to_segment(p, w[0], w[1])).fold(f64::INFINITY, f64::min)
}

/// Insert points so that consecutive points are at most h apart.
pub fn densify(line: &[C64], h: f64) -> Vec<C64> {
    let mut out = Vec::with_capacity(line.len());
    for w in line.windows(2) {
        out.push(w[0]);
        let n = ((w[1] - w[0]).norm() / h).ceil() as usize;
        for k in 1..n {
            out.push(w[0] + (w[1] - w[0]) * (k as f64 / n as f64));
        }
    }
    if let Some(l) = line.last() {
        out.push(*l);
    }
    out
}

/// Lift a polyline through z -> z^2 + c: each point takes the square root nearest its predecessor,
/// the first one nearest `anchor`.
pub fn lift_polyline(c: C64, pts: &[C64], anchor: C64) -> Vec<C64> {
    let mut out = Vec::with_capacity(pts.len());
    let mut prev = anchor;
    for &p in pts {
        let s = (p - c).sqrt();
        let q = if (s - prev).norm_sqr() <= (-s - prev).norm_sqr() { s } else { -s };
        out.push(q);
        prev = q;
    }
    out
}

/// Pull a curve back by `steps` iterates of z^2 + c along the branch sending `start` to curve[0].
/// When `start` is critical for the last step, `hint` picks the direction the lift leaves it in.
pub fn pull_back_curve(c: C64, steps: usize, curve: &[C64], start: C64, hint: Option<C64>) -> Vec<C64> {
    let mut refs = Vec::with_capacity(steps);
    let mut z = start;
    for _ in 0..steps {
        refs.push(z);
        z = z * z + c;
    }
    let mut cur = curve.to_vec();
    for s in (0..steps).rev() {
        let mut next: Vec<C64> = Vec::with_capacity(cur.len());
        let mut prev = refs[s];
        for (i, &w) in cur.iter().enumerate() {
            let r = (w - c).sqrt();
            let pick = match hint {
                Some(h) if s == 0 && i == 1 => {
                    if ((r - next[0]) * h.conj()).re >= 0.0 {
                        r
                    } else {
                        -r
                    }
                }
                _ => {
                    if (r - prev).norm_sqr() <= (-r - prev).norm_sqr() {
                        r
                    } else {
                        -r
                    }
                }
            };
            next.push(pick);
            prev = pick;
        }
        cur = next;
    }
    cur
}

/// Closed polygon with a banded crossing-number test.
#[derive(Clone, Debug)]
pub struct Polygon {
    pts: Vec<C64>,
    y0: f64,
    dy: f64,
    bands: Vec<Vec<u32>>,
    xmin: f64,
    xmax: f64,
    ymax: f64,
}

impl Polygon {
    pub fn new(mut pts: Vec<C64>) -> Polygon {
        if pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        let n = pts.len();
        let ymin = pts.iter().map(|p| p.im).fold(f64::INFINITY, f64::min);
        let ymax = pts.iter().map(|p| p.im).fold(f64::NEG_INFINITY, f64::max);
        let xmin = pts.iter().map(|p| p.re).fold(f64::INFINITY, f64::min);
        let xmax = pts.iter().map(|p| p.re).fold(f64::NEG_INFINITY, f64::max);
        let nb = (n / 4).clamp(1, 8192);
        let dy = ((ymax - ymin) / nb as f64).max(1e-300);
        let mut bands = vec![Vec::new(); nb];
        for i in 0..n {
            let a = pts[i];
            let b = pts[(i + 1) % n];
            let lo = a.im.min(b.im);
            let hi = a.im.max(b.im);
            let i0 = (((lo - ymin) / dy).floor() as isize).clamp(0, nb as isize - 1) as usize;
            let i1 = (((hi - ymin) / dy).floor() as isize).clamp(0, nb as isize - 1) as usize;
            for band in bands.iter_mut().take(i1 + 1).skip(i0) {
                band.push(i as u32);
            }
        }
        Polygon { pts, y0: ymin, dy, bands, xmin, xmax, ymax }
    }

    pub fn points(&self) -> &[C64] {
        &self.pts
    }

    pub fn contains(&self, p: C64) -> bool {
        if p.im < self.y0 || p.im > self.ymax || p.re < self.xmin || p.re > self.xmax {
            return false;
        }
        let nb = self.bands.len();
        let k = (((p.im - self.y0) / self.dy).floor() as usize).min(nb - 1);
        let n = self.pts.len();
        let mut inside = false;
        for &i in &self.bands[k] {
            let a = self.pts[i as usize];
            let b = self.pts[(i as usize + 1) % n];
            if (a.im > p.im) != (b.im > p.im) {
                let x = a.re + (p.im - a.im) / (b.im - a.im) * (b.re - a.re);
                if x > p.re {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Distance from p to the boundary.
    pub fn boundary_distance(&self, p: C64) -> f64 {
        let n = self.pts.len();
        (0..n).map(|i| dist_to_segment(p, self.pts[i], self.pts[(i + 1) % n])).fold(f64::INFINITY, f64::min)
    }
}
