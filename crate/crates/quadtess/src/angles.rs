//! External angles in T = R/Z under the doubling map, with exact rational arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A rational point of T, stored reduced with 0 <= num < den.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalAngle {
    num: BigUint,
    den: BigUint,
}

impl RationalAngle {
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Argument("angle denominator is zero".into()));
        }
        let n = num % &den;
        let g = n.gcd(&den);
        if n.is_zero() {
            return Ok(Self::zero());
        }
        Ok(RationalAngle { num: n / &g, den: den / g })
    }

    pub fn from_u64(num: u64, den: u64) -> Self {
        Self::new(BigUint::from(num), BigUint::from(den)).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        RationalAngle { num: BigUint::zero(), den: BigUint::one() }
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        // ratio of big integers; scale down both to keep the quotient accurate
        let bits = self.den.bits();
        if bits < 1000 {
            self.num.to_f64().unwrap() / self.den.to_f64().unwrap()
        } else {
            let shift = bits - 60;
            let n = (&self.num >> shift).to_f64().unwrap();
            let d = (&self.den >> shift).to_f64().unwrap();
            n / d
        }
    }

    pub fn double(&self) -> Self {
        let two = &self.num << 1u32;
        let n = if two >= self.den { two - &self.den } else { two };
        if self.den.is_even() {
            RationalAngle::new(n, self.den.clone()).unwrap()
        } else {
            RationalAngle { num: n, den: self.den.clone() }
        }
    }

    pub fn iterate(&self, n: usize) -> Self {
        let mut t = self.clone();
        for _ in 0..n {
            t = t.double();
        }
        t
    }

    /// The two angles t with 2t = self, smaller one first.
    pub fn halves(&self) -> [Self; 2] {
        let d2 = &self.den << 1u32;
        let a = RationalAngle::new(self.num.clone(), d2.clone()).unwrap();
        let b = RationalAngle::new(&self.num + &self.den, d2).unwrap();
        [a, b]
    }

    /// self + 1/2 mod 1.
    pub fn antipode(&self) -> Self {
        let d2 = &self.den << 1u32;
        RationalAngle::new((&self.num << 1u32) + &self.den, d2).unwrap()
    }

    /// (preperiod, period) of the doubling orbit.
    pub fn preperiod_period(&self) -> (usize, usize) {
        let tz = self.den.trailing_zeros().unwrap_or(0) as usize;
        let odd = &self.den >> tz;
        if odd.is_one() {
            return (tz, 1);
        }
        let two = BigUint::from(2u32);
        let mut k = 1usize;
        let mut p = two.clone() % &odd;
        while !p.is_one() {
            p = (p * &two) % &odd;
            k += 1;
        }
        (tz, k)
    }

    /// Whether self lies in the open ccw arc from a to b (the whole circle minus a when a == b).
    pub fn in_open_arc(&self, a: &Self, b: &Self) -> bool {
        if self == a || self == b {
            return false;
        }
        match a.cmp(b) {
            Ordering::Less => a < self && self < b,
            Ordering::Greater => self > a || self < b,
            Ordering::Equal => true,
        }
    }

    /// Length of the ccw arc from self to other, as f64.
    pub fn arc_to(&self, other: &Self) -> f64 {
        let d = other.to_f64() - self.to_f64();
        if d < 0.0 {
            d + 1.0
        } else {
            d
        }
    }

    fn sub_mod(&self, other: &Self) -> (BigUint, BigUint) {
        let d = &self.den * &other.den;
        let a = &self.num * &other.den;
        let b = &other.num * &self.den;
        if a >= b {
            (a - b, d)
        } else {
            (a + &d - b, d)
        }
    }

    /// Exact ccw arc length from self to other.
    pub fn exact_arc_to(&self, other: &Self) -> RationalAngle {
        let (n, d) = other.sub_mod(self);
        RationalAngle::new(n, d).unwrap()
    }
}

impl PartialOrd for RationalAngle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalAngle {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for RationalAngle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (a, b) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let n: BigUint = a.parse().map_err(|_| Error::Parse(format!("bad angle numerator in {s:?}")))?;
        let d: BigUint = b.parse().map_err(|_| Error::Parse(format!("bad angle denominator in {s:?}")))?;
        RationalAngle::new(n, d)
    }
}

pub fn double(theta: &RationalAngle) -> RationalAngle {
    theta.double()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sig {
    Plus,
    Minus,
}

impl Sig {
    pub fn flip(self) -> Sig {
        match self {
            Sig::Plus => Sig::Minus,
            Sig::Minus => Sig::Plus,
        }
    }

    pub fn sign(self) -> f64 {
        match self {
            Sig::Plus => 1.0,
            Sig::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sig::Plus => '+',
            Sig::Minus => '-',
        }
    }
}

impl fmt::Display for Sig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationData {
    pub p: u32,
    pub q: u32,
    pub cycle: Vec<RationalAngle>,
    pub critical_plus: RationalAngle,
    pub critical_minus: RationalAngle,
}

impl RotationData {
    pub fn critical(&self, sig: Sig) -> &RationalAngle {
        match sig {
            Sig::Plus => &self.critical_plus,
            Sig::Minus => &self.critical_minus,
        }
    }

    /// Replace the default critical-sector angles.
    pub fn with_critical(mut self, plus: RationalAngle, minus: RationalAngle) -> Self {
        self.critical_plus = plus;
        self.critical_minus = minus;
        self
    }

    /// Common period of the critical angles under doubling.
    pub fn period(&self) -> usize {
        self.critical_plus.preperiod_period().1
    }

    /// Index of theta in the cycle, if present.
    pub fn index_of(&self, theta: &RationalAngle) -> Option<usize> {
        self.cycle.iter().position(|t| t == theta)
    }
}

/// Doubling cycles among k/(2^q - 1) with exact period q, each sorted ascending.
pub fn doubling_cycles(q: u32) -> Vec<Vec<RationalAngle>> {
    let d = (1u64 << q) - 1;
    let mut seen = vec![false; d as usize];
    let mut out = Vec::new();
    for k in 0..d {
        if seen[k as usize] {
            continue;
        }
        let mut orbit = vec![k];
        seen[k as usize] = true;
        let mut j = (2 * k) % d;
        while j != k {
            seen[j as usize] = true;
            orbit.push(j);
            j = (2 * j) % d;
        }
        if orbit.len() as u32 == q {
            let mut c: Vec<RationalAngle> = orbit.iter().map(|&n| RationalAngle::from_u64(n, d)).collect();
            c.sort();
            out.push(c);
        }
    }
    out
}

/// Rotation number of a sorted cycle under doubling, as p (with q = len), if it is a rotation.
pub fn cycle_rotation(cycle: &[RationalAngle]) -> Option<u32> {
    let q = cycle.len();
    let first = cycle[0].double();
    let p = cycle.iter().position(|t| *t == first)?;
    for (j, t) in cycle.iter().enumerate() {
        if t.double() != cycle[(j + p) % q] {
            return None;
        }
    }
    Some(if q == 1 { 1 } else { p as u32 })
}

pub fn rotation_cycle(p: u32, q: u32) -> Result<RotationData> {
    if q == 0 || p == 0 || p > q || p.gcd(&q) != 1 {
        return Err(Error::Argument(format!("invalid rotation number {p}/{q}")));
    }
    if q > 24 {
        return Err(Error::Argument(format!("rotation period {q} too large for exhaustive search")));
    }
    let cycle = doubling_cycles(q)
        .into_iter()
        .find(|c| cycle_rotation(c) == Some(p))
        .ok_or_else(|| Error::Argument(format!("no rotation cycle for {p}/{q}")))?;
    let (plus, minus) = critical_pair(&cycle);
    Ok(RotationData { p, q, cycle, critical_plus: plus, critical_minus: minus })
}

// The smallest complementary arc of the cycle is the critical value sector;
// its endpoints pull back to the two cycle members bounding the critical sector.
fn critical_pair(cycle: &[RationalAngle]) -> (RationalAngle, RationalAngle) {
    let q = cycle.len();
    if q == 1 {
        return (cycle[0].clone(), cycle[0].clone());
    }
    let mut best = 0;
    let mut width = 2.0;
    for j in 0..q {
        let w = cycle[j].arc_to(&cycle[(j + 1) % q]);
        if w < width {
            width = w;
            best = j;
        }
    }
    let a = &cycle[best];
    let b = &cycle[(best + 1) % q];
    let pre = |t: &RationalAngle| cycle.iter().find(|x| x.double() == *t).unwrap().clone();
    (pre(a), pre(b))
}

/// All n >= 0 with 2^n theta = target, as (first, stride). None if the orbit misses target.
pub fn hitting_times(theta: &RationalAngle, target: &RationalAngle) -> Option<(usize, usize)> {
    let (pre, per) = theta.preperiod_period();
    let mut t = theta.clone();
    for n in 0..(pre + per) {
        if t == *target {
            let (_, tp) = target.preperiod_period();
            return Some((n, tp));
        }
        t = t.double();
    }
    None
}

pub fn depth(theta: &RationalAngle, rot: &RotationData) -> Result<usize> {
    hitting_times(theta, &rot.critical_plus)
        .map(|(n, _)| n)
        .ok_or_else(|| Error::NotInThetaF(theta.to_string()))
}

/// Minimal n >= 0 with 2^n theta = the critical angle of the given signature.
pub fn depth_sig(theta: &RationalAngle, rot: &RotationData, sig: Sig) -> Result<usize> {
    hitting_times(theta, rot.critical(sig))
        .map(|(n, _)| n)
        .ok_or_else(|| Error::NotInThetaF(theta.to_string()))
}

pub fn in_theta_f(theta: &RationalAngle, rot: &RotationData) -> bool {
    let (pre, per) = theta.preperiod_period();
    let mut t = theta.clone();
    for _ in 0..(pre + per) {
        if rot.cycle.contains(&t) || t == rot.critical_plus || t == rot.critical_minus {
            return true;
        }
        t = t.double();
    }
    false
}

pub fn preimage_angles(theta: &RationalAngle, n: usize) -> Vec<RationalAngle> {
    let mut level = vec![theta.clone()];
    for _ in 0..n {
        level = level.iter().flat_map(|t| t.halves()).collect();
    }
    level.sort();
    level
}

/// Angles of exact depth n relative to the critical angle of signature sig.
pub fn angles_of_depth(rot: &RotationData, sig: Sig, n: usize) -> Vec<RationalAngle> {
    let target = rot.critical(sig);
    preimage_angles(target, n)
        .into_iter()
        .filter(|t| hitting_times(t, target).map(|(k, _)| k) == Some(n))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TileAddress {
    pub angle: RationalAngle,
    pub level: i64,
    pub sig: Sig,
}

impl TileAddress {
    pub fn new(angle: RationalAngle, level: i64, sig: Sig) -> Self {
        TileAddress { angle, level, sig }
    }

    /// Address of the image tile.
    pub fn forward(&self) -> Self {
        TileAddress { angle: self.angle.double(), level: self.level + 1, sig: self.sig }
    }
}

impl fmt::Display for TileAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theta={} level={} sig={}", self.angle, self.level, self.sig)
    }
}

impl FromStr for TileAddress {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut angle = None;
        let mut level = None;
        let mut sig = None;
        for tok in s.split_whitespace() {
            match tok.split_once('=') {
                Some(("theta", v)) => angle = Some(v.parse::<RationalAngle>()?),
                Some(("level", v)) => {
                    level = Some(v.parse::<i64>().map_err(|_| Error::Parse(format!("bad level {v:?}")))?)
                }
                Some(("sig", "+")) => sig = Some(Sig::Plus),
                Some(("sig", "-")) | Some(("sig", "−")) => sig = Some(Sig::Minus),
                _ => return Err(Error::Parse(format!("bad address token {tok:?}"))),
            }
        }
        match (angle, level, sig) {
            (Some(a), Some(l), Some(s)) => Ok(TileAddress::new(a, l, s)),
            _ => Err(Error::Parse(format!("incomplete address {s:?}"))),
        }
    }
}

pub fn address_realizable(addr: &TileAddress, l: u32, rot: &RotationData) -> Result<bool> {
    if !in_theta_f(&addr.angle, rot) {
        return Err(Error::NotInThetaF(addr.angle.to_string()));
    }
    if l == 1 {
        return Ok(true);
    }
    let l = l as i64;
    let Some((n0, stride)) = hitting_times(&addr.angle, rot.critical(addr.sig)) else {
        return Ok(false);
    };
    let start = if n0 == 0 { stride } else { n0 };
    for k in 0..l {
        let n = (start + k as usize * stride) as i64;
        if (addr.level + n).rem_euclid(l) == 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn subdivision_levels(coarse: &TileAddress, l: u32, q: u32) -> Vec<TileAddress> {
    (0..q as i64)
        .map(|j| TileAddress::new(coarse.angle.clone(), coarse.level + l as i64 * j, coarse.sig))
        .collect()
}

/// Primitive aliasing: (theta_s, m, -s) is the same tile as (theta_{-s}, m, -s).
pub fn normalize_primitive(addr: &TileAddress, rot: &RotationData) -> TileAddress {
    let own = rot.critical(addr.sig);
    let other = rot.critical(addr.sig.flip());
    if addr.angle == *other && own != other {
        TileAddress::new(own.clone(), addr.level, addr.sig)
    } else {
        addr.clone()
    }
}
