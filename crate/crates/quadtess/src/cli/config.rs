//! Flat key=value configuration. A file (one `key = value` per line, `#` comments) is read first,
//! then command-line overrides are applied in order.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex64 as C64;

use crate::angles::RationalAngle;
use crate::dynamics::{PairSpec, Segment};
use crate::error::{Error, Result};
use crate::semiconj::SampleSpec;
use crate::tess::{Side, Viewport};

/// Thread count for the rayon pool.
pub const THREADS_ENV: &str = "QUADTESS_THREADS";

const DEFAULTS: &[(&str, &str)] = &[
    ("pq", "1/3"),
    ("r", "0.9"),
    ("segment", "s1"),
    ("crit_plus", ""),
    ("crit_minus", ""),
    ("side", "f"),
    ("center", "0,0"),
    ("width", "3.2"),
    ("px", "640"),
    ("py", "480"),
    ("mode", "signature"),
    ("format", "png"),
    ("out", ""),
    ("budget", "20000"),
    ("depth", "4"),
    ("levels", "-2..2"),
    ("samples", "50"),
    ("seed", "1"),
    ("suite", "all"),
    ("rs", "0.9,0.99,0.999"),
    ("grid", "24"),
    ("julia_angles", "24"),
    ("panel_depth", "6"),
];

#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    entries: BTreeMap<String, String>,
}

impl Default for Config {
    fn default() -> Self {
        Config { entries: DEFAULTS.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect() }
    }
}

pub fn parse_kv(line: &str) -> Result<Option<(String, String)>> {
    let line = line.split('#').next().unwrap_or("").trim();
    if line.is_empty() {
        return Ok(None);
    }
    let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value, got {line:?}")))?;
    Ok(Some((k.trim().to_string(), v.trim().to_string())))
}

fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Parse(format!("{key} = {v:?} is not a valid number")))
}

impl Config {
    pub fn from_text(text: &str) -> Result<Config> {
        let mut c = Config::default();
        for line in text.lines() {
            if let Some((k, v)) = parse_kv(line)? {
                c.set(&k, &v)?;
            }
        }
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Config> {
        Config::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match self.entries.get_mut(key) {
            Some(v) => {
                *v = value.to_string();
                Ok(())
            }
            None => Err(Error::Parse(format!("unknown config key {key:?}"))),
        }
    }

    pub fn get(&self, key: &str) -> &str {
        self.entries.get(key).map(|s| s.as_str()).unwrap_or("")
    }

    /// Every key, sorted, as `key = value` lines; the thread setting is appended.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.entries {
            s.push_str(&format!("{k} = {v}\n"));
        }
        s.push_str(&format!("threads = {}\n", rayon::current_num_threads()));
        s
    }

    pub fn get_f64(&self, key: &str) -> Result<f64> {
        num(key, self.get(key))
    }

    pub fn get_usize(&self, key: &str) -> Result<usize> {
        num(key, self.get(key))
    }

    pub fn get_u64(&self, key: &str) -> Result<u64> {
        num(key, self.get(key))
    }

    pub fn pq(&self) -> Result<(u32, u32)> {
        let v = self.get("pq");
        let (p, q) = v.split_once('/').ok_or_else(|| Error::Parse(format!("pq = {v:?}, expected p/q")))?;
        Ok((num("pq", p.trim())?, num("pq", q.trim())?))
    }

    fn angle(&self, key: &str) -> Result<Option<RationalAngle>> {
        match self.get(key) {
            "" => Ok(None),
            v => Ok(Some(v.parse()?)),
        }
    }

    pub fn pair_spec(&self) -> Result<PairSpec> {
        self.pair_spec_at(self.get_f64("r")?)
    }

    pub fn pair_spec_at(&self, r: f64) -> Result<PairSpec> {
        let mut spec = match self.get("segment") {
            "airplane" => PairSpec::airplane(r),
            s => {
                let seg: Segment = s.parse()?;
                if seg == Segment::Custom {
                    return Err(Error::Argument("custom pairs are available as segment = airplane".into()));
                }
                let (p, q) = self.pq()?;
                PairSpec::new(p, q, r, seg)
            }
        };
        match (self.angle("crit_plus")?, self.angle("crit_minus")?) {
            (Some(a), Some(b)) => spec.critical = Some((a, b)),
            (None, None) => {}
            _ => return Err(Error::Argument("crit_plus and crit_minus go together".into())),
        }
        Ok(spec)
    }

    pub fn side(&self) -> Result<Side> {
        match self.get("side") {
            "f" => Ok(Side::F),
            "g" => Ok(Side::G),
            s => Err(Error::Parse(format!("side = {s:?}, expected f or g"))),
        }
    }

    pub fn viewport(&self) -> Result<Viewport> {
        let c = self.get("center");
        let (re, im) = c.split_once(',').ok_or_else(|| Error::Parse(format!("center = {c:?}, expected re,im")))?;
        let vp = Viewport::new(C64::new(num("center", re.trim())?, num("center", im.trim())?), self.get_f64("width")?, self.get_usize("px")?, self.get_usize("py")?);
        if vp.px == 0 || vp.py == 0 || !(vp.width > 0.0) {
            return Err(Error::Argument("viewport needs px, py ≥ 1 and width > 0".into()));
        }
        Ok(vp)
    }

    pub fn levels(&self) -> Result<(i64, i64)> {
        let v = self.get("levels");
        let (a, b) = v.split_once("..").ok_or_else(|| Error::Parse(format!("levels = {v:?}, expected lo..hi")))?;
        Ok((num("levels", a.trim())?, num("levels", b.trim())?))
    }

    pub fn rs(&self) -> Result<Vec<f64>> {
        self.get("rs").split(',').map(|s| num("rs", s.trim())).collect()
    }

    pub fn sample_spec(&self) -> Result<SampleSpec> {
        Ok(SampleSpec {
            grid: self.get_usize("grid")?,
            julia_angles: self.get_usize("julia_angles")?,
            panel_depth: self.get_usize("panel_depth")?,
            ..SampleSpec::default()
        })
    }
}

/// Configure the global pool from the thread variable, if set.
pub fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = num(THREADS_ENV, &v)?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Error::Argument(e.to_string()))?;
    }
    Ok(())
}
