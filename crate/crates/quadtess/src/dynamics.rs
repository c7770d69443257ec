//! Quadratic maps, periodic cycles and degeneration pairs.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::angles::{rotation_cycle, RationalAngle, RotationData};
use crate::error::{Error, Result};

pub type C64 = Complex64;

pub fn cis(t: f64) -> C64 {
    C64::new(t.cos(), t.sin())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadParam {
    pub c: C64,
}

impl QuadParam {
    pub fn new(c: C64) -> Self {
        QuadParam { c }
    }

    #[inline]
    pub fn f(&self, z: C64) -> C64 {
        z * z + self.c
    }

    pub fn iterate(&self, z: C64, n: usize) -> C64 {
        let mut w = z;
        for _ in 0..n {
            w = w * w + self.c;
        }
        w
    }

    /// f^n(z) and its derivative.
    pub fn iterate_d(&self, z: C64, n: usize) -> (C64, C64) {
        let mut w = z;
        let mut d = C64::new(1.0, 0.0);
        for _ in 0..n {
            d = 2.0 * w * d;
            w = w * w + self.c;
        }
        (w, d)
    }

    pub fn orbit(&self, z: C64, n: usize) -> Vec<C64> {
        let mut out = Vec::with_capacity(n + 1);
        let mut w = z;
        out.push(w);
        for _ in 0..n {
            w = self.f(w);
            out.push(w);
        }
        out
    }

    /// The two preimages of w.
    pub fn preimages(&self, w: C64) -> [C64; 2] {
        let s = (w - self.c).sqrt();
        [s, -s]
    }

    /// Fixed points, the one with smaller |1 - 2z| first is not guaranteed.
    pub fn fixed_points(&self) -> [C64; 2] {
        let s = (C64::new(1.0, 0.0) - 4.0 * self.c).sqrt();
        [(1.0 + s) / 2.0, (1.0 - s) / 2.0]
    }
}

impl fmt::Display for QuadParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.17e}{:+.17e}i", self.c.re, self.c.im)
    }
}

pub fn param_s1(p: u32, q: u32, r: f64) -> QuadParam {
    let lam = r * cis(2.0 * PI * p as f64 / q as f64);
    QuadParam::new(lam / 2.0 - lam * lam / 4.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cycle {
    pub points: Vec<C64>,
    pub period: usize,
    pub multiplier: C64,
}

impl Cycle {
    pub fn from_point(c: QuadParam, z: C64, period: usize) -> Cycle {
        let mut points = Vec::with_capacity(period);
        let mut w = z;
        let mut m = C64::new(1.0, 0.0);
        for _ in 0..period {
            points.push(w);
            m *= 2.0 * w;
            w = c.f(w);
        }
        Cycle { points, period, multiplier: m }
    }

    pub fn nearest_index(&self, z: C64) -> usize {
        let mut best = 0;
        for (i, p) in self.points.iter().enumerate() {
            if (p - z).norm() < (self.points[best] - z).norm() {
                best = i;
            }
        }
        best
    }

    /// Same cycle listed from index k.
    pub fn rotated(&self, k: usize) -> Cycle {
        let mut pts = self.points.clone();
        pts.rotate_left(k % self.period);
        Cycle { points: pts, period: self.period, multiplier: self.multiplier }
    }

    pub fn is_attracting(&self) -> bool {
        self.multiplier.norm() < 1.0
    }

    pub fn is_repelling(&self) -> bool {
        self.multiplier.norm() > 1.0
    }
}

fn solve2(a: C64, b: C64, c: C64, d: C64, e: C64, f: C64) -> Option<(C64, C64)> {
    let det = a * d - b * c;
    if det.norm() < 1e-300 || !det.is_finite() {
        return None;
    }
    Some(((e * d - b * f) / det, (a * f - e * c) / det))
}

pub fn solve_cycle_with_multiplier(period: usize, target: C64, seed: (QuadParam, C64)) -> Result<(QuadParam, Cycle)> {
    let (mut c, mut z) = (seed.0.c, seed.1);
    for _ in 0..100 {
        let (mut w, mut dz, mut dc) = (z, C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        let (mut dzz, mut dzc) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        for _ in 0..period {
            let nzz = 2.0 * (dz * dz + w * dzz);
            let nzc = 2.0 * (dc * dz + w * dzc);
            dc = 2.0 * w * dc + 1.0;
            dz = 2.0 * w * dz;
            dzz = nzz;
            dzc = nzc;
            w = w * w + c;
        }
        let f1 = w - z;
        let f2 = dz - target;
        if f1.norm() < 1e-13 && f2.norm() < 1e-13 {
            let cyc = Cycle::from_point(QuadParam::new(c), z, period);
            return Ok((QuadParam::new(c), cyc));
        }
        let (ddz, ddc) = solve2(dz - 1.0, dc, dzz, dzc, f1, f2).ok_or(Error::DegenerateJacobian)?;
        z -= ddz;
        c -= ddc;
        if !z.is_finite() || !c.is_finite() {
            break;
        }
    }
    // accept at a looser level if stagnated by rounding
    let qc = QuadParam::new(c);
    let (w, d) = qc.iterate_d(z, period);
    if (w - z).norm() < 1e-11 && (d - target).norm() < 1e-9 {
        return Ok((qc, Cycle::from_point(qc, z, period)));
    }
    Err(Error::NoConvergence(format!("cycle of period {period} with multiplier {target}")))
}

/// Newton on f^n(z) = z.
pub fn polish_periodic(c: QuadParam, z0: C64, n: usize) -> Result<C64> {
    let mut z = z0;
    for _ in 0..80 {
        let (w, d) = c.iterate_d(z, n);
        let step = (w - z) / (d - 1.0);
        z -= step;
        if !z.is_finite() {
            return Err(Error::NoConvergence("periodic point".into()));
        }
        if step.norm() < 1e-15 * (1.0 + z.norm()) {
            return Ok(z);
        }
    }
    let (w, _) = c.iterate_d(z, n);
    if (w - z).norm() < 1e-10 {
        Ok(z)
    } else {
        Err(Error::NoConvergence("periodic point".into()))
    }
}

fn minimal_period(c: QuadParam, z: C64, p: usize) -> usize {
    for d in 1..=p {
        if p % d == 0 && (c.iterate(z, d) - z).norm() < 1e-9 * (1.0 + z.norm()) {
            return d;
        }
    }
    p
}

pub fn find_attracting_cycle(c: QuadParam) -> Result<Cycle> {
    const MAXP: usize = 64;
    const BUDGET: usize = 4_000_000;
    let mut ring = [C64::new(0.0, 0.0); MAXP + 1];
    let mut z = C64::new(0.0, 0.0);
    for k in 1..=BUDGET {
        z = c.f(z);
        if z.norm_sqr() > 16.0 {
            return Err(Error::Escaped);
        }
        let slot = k % (MAXP + 1);
        ring[slot] = z;
        if k > MAXP {
            for p in 1..=MAXP {
                let prev = ring[(k - p) % (MAXP + 1)];
                if (z - prev).norm() < 1e-9 {
                    let zp = polish_periodic(c, z, p).unwrap_or(z);
                    let per = minimal_period(c, zp, p);
                    let zp = polish_periodic(c, zp, per).unwrap_or(zp);
                    let cyc = Cycle::from_point(c, zp, per);
                    if cyc.is_attracting() {
                        return Ok(cyc);
                    }
                    return Err(Error::NoPeriodDetected(k));
                }
            }
        }
    }
    Err(Error::NoPeriodDetected(BUDGET))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    A,
    B,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", match self {
            CaseTag::A => "A",
            CaseTag::B => "B",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Segment {
    S1,
    S2,
    Custom,
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", match self {
            Segment::S1 => "s1",
            Segment::S2 => "s2",
            Segment::Custom => "custom",
        })
    }
}

impl std::str::FromStr for Segment {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s1" => Ok(Segment::S1),
            "s2" => Ok(Segment::S2),
            "custom" => Ok(Segment::Custom),
            _ => Err(Error::Parse(format!("unknown segment {s:?}"))),
        }
    }
}

/// Parameters for a custom pair: f in a component of period `period` centered near `f_center`,
/// g near `g_seed` with a parabolic cycle of multiplier one.
#[derive(Clone, Debug, PartialEq)]
pub struct CustomSeeds {
    pub period: usize,
    pub f_center: C64,
    pub g_seed: C64,
    pub critical: Option<(RationalAngle, RationalAngle)>,
    pub landing: Vec<RationalAngle>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairSpec {
    pub p: u32,
    pub q: u32,
    pub r: f64,
    pub segment: Segment,
    pub critical: Option<(RationalAngle, RationalAngle)>,
    pub custom: Option<CustomSeeds>,
}

impl PairSpec {
    pub fn new(p: u32, q: u32, r: f64, segment: Segment) -> Self {
        PairSpec { p, q, r, segment, critical: None, custom: None }
    }

    /// The pair with f and g in the airplane component / its primitive root c = -7/4.
    pub fn airplane(r: f64) -> Self {
        PairSpec {
            p: 1,
            q: 1,
            r,
            segment: Segment::Custom,
            critical: None,
            custom: Some(CustomSeeds {
                period: 3,
                f_center: C64::new(-1.754877666246693, 0.0),
                g_seed: C64::new(-1.75, 0.0),
                critical: Some((RationalAngle::from_u64(5, 7), RationalAngle::from_u64(2, 7))),
                landing: vec![RationalAngle::from_u64(2, 7), RationalAngle::from_u64(5, 7)],
            }),
        }
    }

    pub fn with_r(&self, r: f64) -> Self {
        let mut s = self.clone();
        s.r = r;
        s
    }
}

#[derive(Clone, Debug)]
pub struct DegenerationPair {
    pub spec: PairSpec,
    pub f: QuadParam,
    pub g: QuadParam,
    pub r: f64,
    /// Rays landing at the marked parabolic point, with the critical sector angles.
    pub rot: RotationData,
    /// Rotation of the attracting multiplier: lambda = r e^{2 pi i p/q}.
    pub p: u32,
    pub q: u32,
    pub prime_rot: (u32, u32),
    pub l: usize,
    pub l_prime: usize,
    pub case_tag: CaseTag,
    pub o_f: Cycle,
    pub o_g: Cycle,
    pub o_f_prime: Cycle,
    pub alpha0: C64,
    pub beta0: C64,
    pub lambda: C64,
    pub omega_prime: C64,
}

/// Parabolic data for g alone.
#[derive(Clone, Debug)]
pub struct ParabolicData {
    pub g: QuadParam,
    pub o_g: Cycle,
    pub beta0: C64,
    pub prime_rot: (u32, u32),
    pub l_prime: usize,
    pub rot: RotationData,
}

fn outward_normal(p: u32, q: u32) -> C64 {
    let lam = cis(2.0 * PI * p as f64 / q as f64);
    let n = lam * (1.0 - lam);
    n / n.norm()
}

/// Center of the hyperbolic component of period `period` near `seed` (Newton on f_c^n(0) = 0).
pub fn find_center(period: usize, seed: C64) -> Result<QuadParam> {
    let mut c = seed;
    for _ in 0..200 {
        let (mut w, mut dc) = (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
        for _ in 0..period {
            dc = 2.0 * w * dc + 1.0;
            w = w * w + c;
        }
        let step = w / dc;
        c -= step;
        if !c.is_finite() {
            break;
        }
        if step.norm() < 1e-15 {
            return Ok(QuadParam::new(c));
        }
    }
    Err(Error::NoConvergence("component center".into()))
}

/// Continue the superattracting cycle at a center to multiplier target along a straight path.
pub fn continue_from_center(period: usize, center: QuadParam, target: C64) -> Result<(QuadParam, Cycle)> {
    let mut c = center;
    let mut z = C64::new(0.0, 0.0);
    let steps = (40.0 + 200.0 * target.norm()) as usize;
    let mut last = None;
    for k in 1..=steps {
        // finer steps near the boundary of the component
        let s = k as f64 / steps as f64;
        let t = 1.0 - (1.0 - s).powi(2);
        let (nc, cyc) = solve_cycle_with_multiplier(period, target * t, (c, z))?;
        c = nc;
        z = cyc.points[0];
        last = Some((nc, cyc));
    }
    last.ok_or(Error::NoConvergence("continuation".into()))
}

fn marked_attracting_point(c: QuadParam, cyc: &Cycle) -> usize {
    let mut z = C64::new(0.0, 0.0);
    for _ in 0..(200_000 / cyc.period).max(1) {
        z = c.iterate(z, cyc.period);
    }
    cyc.nearest_index(z)
}

/// Parabolic cycle point on the boundary of the component containing 0.
fn marked_parabolic_point(g: QuadParam, cyc: &Cycle, n: usize) -> usize {
    let mut z = C64::new(0.0, 0.0);
    for _ in 0..20_000 {
        z = g.iterate(z, n);
    }
    cyc.nearest_index(z)
}

pub fn solve_parabolic(spec: &PairSpec) -> Result<ParabolicData> {
    match spec.segment {
        Segment::S1 | Segment::S2 => {
            let (p, q) = (spec.p, spec.q);
            let g = param_s1(p, q, 1.0);
            let omega = cis(2.0 * PI * p as f64 / q as f64);
            let o_g = Cycle::from_point(g, omega / 2.0, 1);
            let mut rot = rotation_cycle(p, q)?;
            if let Some((a, b)) = &spec.critical {
                rot = rot.with_critical(a.clone(), b.clone());
            }
            Ok(ParabolicData { g, beta0: o_g.points[0], o_g, prime_rot: (p, q), l_prime: 1, rot })
        }
        Segment::Custom => {
            let cs = spec.custom.as_ref().ok_or_else(|| Error::Argument("custom segment needs seeds".into()))?;
            let g0 = QuadParam::new(cs.g_seed);
            let mut z = C64::new(0.0, 0.0);
            for _ in 0..4000 {
                z = g0.iterate(z, cs.period);
            }
            let (g, o_g) = solve_cycle_with_multiplier(cs.period, C64::new(1.0, 0.0), (g0, z))?;
            let k = marked_parabolic_point(g, &o_g, cs.period);
            let o_g = o_g.rotated(k);
            let (a, b) = cs
                .critical
                .clone()
                .or_else(|| spec.critical.clone())
                .ok_or_else(|| Error::Argument("custom segment needs critical angles".into()))?;
            let mut cycle = cs.landing.clone();
            cycle.sort();
            let rot = RotationData { p: 1, q: 1, cycle, critical_plus: a, critical_minus: b };
            Ok(ParabolicData { g, beta0: o_g.points[0], o_g, prime_rot: (1, 1), l_prime: cs.period, rot })
        }
    }
}

pub fn build_pair(spec: &PairSpec) -> Result<DegenerationPair> {
    if !(spec.r > 0.0 && spec.r < 1.0) {
        return Err(Error::Argument(format!("r = {} must lie in (0, 1) for a pair", spec.r)));
    }
    let par = solve_parabolic(spec)?;
    let (f, o_f, p, q) = match spec.segment {
        Segment::S1 => {
            let f = param_s1(spec.p, spec.q, spec.r);
            let lam = spec.r * cis(2.0 * PI * spec.p as f64 / spec.q as f64);
            (f, Cycle::from_point(f, lam / 2.0, 1), spec.p, spec.q)
        }
        Segment::S2 => {
            let sigma = param_s1(spec.p, spec.q, 1.0);
            let seed = sigma.c + 0.6 / (spec.q * spec.q) as f64 * outward_normal(spec.p, spec.q);
            let center = find_center(spec.q as usize, seed)?;
            let (f, cyc) = continue_from_center(spec.q as usize, center, C64::new(spec.r, 0.0))?;
            (f, cyc, 1, 1)
        }
        Segment::Custom => {
            let cs = spec.custom.as_ref().unwrap();
            let center = find_center(cs.period, cs.f_center)?;
            let (f, cyc) = continue_from_center(cs.period, center, C64::new(spec.r, 0.0))?;
            (f, cyc, 1, 1)
        }
    };
    let k = marked_attracting_point(f, &o_f);
    let o_f = o_f.rotated(k);
    let l = o_f.period;
    let mut pair = DegenerationPair {
        spec: spec.clone(),
        f,
        g: par.g,
        r: spec.r,
        rot: par.rot,
        p,
        q,
        prime_rot: par.prime_rot,
        l,
        l_prime: par.l_prime,
        case_tag: CaseTag::A,
        alpha0: o_f.points[0],
        beta0: par.beta0,
        lambda: o_f.multiplier,
        omega_prime: par.o_g.multiplier,
        o_f_prime: o_f.clone(),
        o_f,
        o_g: par.o_g,
    };
    pair.case_tag = classify_case(&pair)?;
    pair.o_f_prime = find_perturbed_cycle(&pair)?;
    Ok(pair)
}

pub fn classify_case(pair: &DegenerationPair) -> Result<CaseTag> {
    let (q, qp) = (pair.q as usize, pair.prime_rot.1 as usize);
    let (l, lp) = (pair.l, pair.l_prime);
    if q == qp && l == lp {
        Ok(CaseTag::A)
    } else if q == 1 && qp > 1 && l == lp * qp {
        Ok(CaseTag::B)
    } else {
        Err(Error::InconsistentPair(format!("q={q} q'={qp} l={l} l'={lp}")))
    }
}

pub fn find_perturbed_cycle(pair: &DegenerationPair) -> Result<Cycle> {
    if pair.case_tag == CaseTag::A && pair.r < 1.0 {
        return Ok(pair.o_f.clone());
    }
    let z = polish_periodic(pair.f, pair.beta0, pair.l_prime)?;
    Ok(Cycle::from_point(pair.f, z, pair.l_prime))
}

impl DegenerationPair {
    /// f-side map of the return: f^l.
    pub fn lq(&self) -> usize {
        self.l * self.q as usize
    }

    pub fn critical(&self, sig: crate::angles::Sig) -> &RationalAngle {
        self.rot.critical(sig)
    }

    /// Structured text report.
    pub fn report(&self) -> String {
        let mut s = String::new();
        let cx = |z: C64| format!("{:.15e}{:+.15e}i", z.re, z.im);
        s.push_str("pair {\n");
        s.push_str(&format!("  segment = {}\n  p = {}\n  q = {}\n  r = {}\n", self.spec.segment, self.p, self.q, self.r));
        s.push_str(&format!("  f = {}\n  g = {}\n", cx(self.f.c), cx(self.g.c)));
        s.push_str(&format!("  case = {}\n  l = {}\n  l_prime = {}\n", self.case_tag, self.l, self.l_prime));
        s.push_str(&format!("  p_prime = {}\n  q_prime = {}\n", self.prime_rot.0, self.prime_rot.1));
        s.push_str(&format!("  lambda = {}\n  omega_prime = {}\n", cx(self.lambda), cx(self.omega_prime)));
        s.push_str(&format!("  alpha0 = {}\n  beta0 = {}\n", cx(self.alpha0), cx(self.beta0)));
        for (name, cyc) in [("O_f", &self.o_f), ("O_g", &self.o_g), ("O_f_prime", &self.o_f_prime)] {
            s.push_str(&format!("  {name} {{ period = {}, multiplier = {}, points = [", cyc.period, cx(cyc.multiplier)));
            let pts: Vec<String> = cyc.points.iter().map(|z| cx(*z)).collect();
            s.push_str(&pts.join(", "));
            s.push_str("] }\n");
        }
        let cyc: Vec<String> = self.rot.cycle.iter().map(|t| t.to_string()).collect();
        s.push_str(&format!("  rays = [{}]\n", cyc.join(", ")));
        s.push_str(&format!("  theta0_plus = {}\n  theta0_minus = {}\n", self.rot.critical_plus, self.rot.critical_minus));
        s.push_str("}\n");
        s
    }
}

impl ParabolicData {
    pub fn report(&self) -> String {
        let cx = |z: C64| format!("{:.15e}{:+.15e}i", z.re, z.im);
        let pts: Vec<String> = self.o_g.points.iter().map(|z| cx(*z)).collect();
        let cyc: Vec<String> = self.rot.cycle.iter().map(|t| t.to_string()).collect();
        format!(
            "parabolic {{\n  g = {}\n  l_prime = {}\n  p_prime = {}\n  q_prime = {}\n  O_g {{ period = {}, multiplier = {}, points = [{}] }}\n  beta0 = {}\n  rays = [{}]\n  theta0_plus = {}\n  theta0_minus = {}\n}}\n",
            cx(self.g.c),
            self.l_prime,
            self.prime_rot.0,
            self.prime_rot.1,
            self.o_g.period,
            cx(self.o_g.multiplier),
            pts.join(", "),
            cx(self.beta0),
            cyc.join(", "),
            self.rot.critical_plus,
            self.rot.critical_minus
        )
    }
}
