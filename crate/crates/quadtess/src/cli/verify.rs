//! Check suites run by `verify`. Each check reports pass/fail with a one-line detail.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::angles::{angles_of_depth, Sig};
use crate::boettcher::{green_potential, landing_point};
use crate::dynamics::{build_pair, DegenerationPair, PairSpec, Segment};
use crate::error::{Error, Result};
use crate::semiconj::{interior_samples, kappa_spot_check, SampleSpec, SemiconjHandle};
use crate::tess::{sample_addresses, EdgeKind, Side, Tessellation};

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, pass: bool, detail: String) -> CheckResult {
        CheckResult { name: name.to_string(), pass, detail }
    }

    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

pub const SUITES: &[&str] = &["residuals", "functoriality", "panels", "edges", "semiconj", "kappa"];

pub struct Context {
    pub pair: DegenerationPair,
    pub f: Tessellation,
    pub g: Tessellation,
    pub samples: usize,
    pub depth: usize,
    pub seed: u64,
}

pub fn run_suite(ctx: &Context, suite: &str) -> Result<Vec<CheckResult>> {
    match suite {
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(ctx, s)?);
            }
            Ok(out)
        }
        "residuals" => Ok(residuals(ctx)),
        "functoriality" => Ok(vec![functoriality(ctx)]),
        "panels" => panels(ctx),
        "edges" => Ok(edges(ctx)),
        "semiconj" => semiconj(ctx),
        "kappa" => kappa(ctx),
        s => Err(Error::Argument(format!("unknown suite {s:?}; expected all or one of {SUITES:?}"))),
    }
}

fn residuals(ctx: &Context) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (t, name, tol) in [(&ctx.f, "phi_f equation", 1e-8), (&ctx.g, "phi_g equation", 1e-6)] {
        let mut worst: f64 = 0.0;
        let mut used = 0;
        for z in t.base_samples(3) {
            if let Ok(Some(r)) = t.series_residual(z) {
                worst = worst.max(r);
                used += 1;
            }
        }
        out.push(CheckResult::new(name, used > 0 && worst < tol, format!("max residual {worst:.3e} over {used} base points (< {tol:e})")));
    }
    out
}

/// Fraction of interior samples z with address(f(z)) = forward(address(z)).
pub fn functoriality_rate(t: &Tessellation, count: usize, seed: u64) -> (usize, usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut good, mut bad, mut edge) = (0, 0, 0);
    let mut tries = 0;
    while good + bad + edge < count && tries < 200 * count {
        tries += 1;
        let z = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-1.5..1.5));
        let Ok(a) = t.address_of(z) else { continue };
        match t.address_of(t.map.f(z)) {
            Ok(b) if b == a.forward() => good += 1,
            Ok(_) => bad += 1,
            Err(Error::OnEdge) | Err(Error::OnDegeneratingArc) => edge += 1,
            Err(_) => bad += 1,
        }
    }
    (good, bad, edge)
}

fn functoriality(ctx: &Context) -> CheckResult {
    let n = ctx.samples * 20;
    let (good, bad, edge) = functoriality_rate(&ctx.f, n, ctx.seed);
    let total = good + bad + edge;
    let pass = total > 0 && good as f64 >= 0.99 * total as f64 && bad == 0;
    CheckResult::new("functoriality", pass, format!("{good}/{total} forward, {edge} at edge tolerance, {bad} other"))
}

fn panels(ctx: &Context) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    for t in [&ctx.f, &ctx.g] {
        let panels = t.build_panels(ctx.depth, None)?;
        let mut counts_ok = true;
        for sig in [Sig::Plus, Sig::Minus] {
            for d in 0..=ctx.depth {
                let got = panels.iter().filter(|p| p.sig == sig && p.depth == d).count();
                counts_ok &= got == angles_of_depth(&t.rot, sig, d).len();
            }
        }
        let mut worst: f64 = 0.0;
        for p in panels.iter().filter(|p| p.depth <= 3) {
            worst = worst.max((landing_point(t.map, &p.angle)? - p.landing_point).norm());
        }
        let name = format!("panels {:?}", t.side);
        out.push(CheckResult::new(&name, counts_ok && worst < 1e-4, format!("{} panels, counts {}, landing error {worst:.2e}", panels.len(), if counts_ok { "match" } else { "differ" })));
    }
    Ok(out)
}

fn edges(ctx: &Context) -> Vec<CheckResult> {
    let addrs = sample_addresses(&ctx.pair.rot, ctx.pair.l, ctx.samples, 3, ctx.seed);
    let rf = ctx.f.verify_edge_sharing(&addrs);
    let rg = ctx.g.verify_edge_sharing(&addrs);
    // when more rays land at the arc's end than there are arcs (Case B, primitive pairs), the arc
    // sits inside one sector and its neighbour carries the other sector angle; counted separately
    let in_sector = ctx.pair.rot.cycle.len() > ctx.pair.q as usize;
    let f_ok = rf
        .checks
        .iter()
        .filter(|c| c.error.is_none() && c.probes.iter().all(|p| p.ok() || (in_sector && p.kind == EdgeKind::Degenerating)))
        .count();
    let deg_ok = rf.checks.iter().filter(|c| c.probes.iter().any(|p| p.kind == EdgeKind::Degenerating && p.ok())).count();
    let mism = rf.partner_mismatches(&rg).len();
    vec![
        CheckResult::new("edges f", f_ok == addrs.len(), format!("{f_ok}/{} tiles, same-angle degenerating neighbour at {deg_ok}", addrs.len())),
        CheckResult::new("edges g", rg.all_ok(), format!("{}/{} tiles", rg.passed(), addrs.len())),
        CheckResult::new("critical partners", mism == 0, format!("{mism} mismatches between f and g")),
    ]
}

fn semiconj(ctx: &Context) -> Result<Vec<CheckResult>> {
    let h = SemiconjHandle::build(&ctx.pair)?;
    let pr = &ctx.pair;
    let mut worst: f64 = 0.0;
    let mut fails = 0;
    for z in interior_samples(&h.g_tess, pr, &SampleSpec::default()) {
        match (h.h_interior(z), h.h_interior(pr.f.f(z))) {
            (Ok(a), Ok(b)) => worst = worst.max((b - pr.g.f(a)).norm()),
            _ => fails += 1,
        }
    }
    let mut ext: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut n = 0;
    while n < ctx.samples {
        let z = C64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        if green_potential(pr.f, z) < 0.02 {
            continue;
        }
        n += 1;
        let w = h.h_exterior(z)?;
        ext = ext.max((h.h_exterior(pr.f.f(z))? - pr.g.f(w)).norm() / w.norm().max(1.0));
    }
    Ok(vec![
        CheckResult::new("h interior", worst < 1e-9 && fails == 0, format!("|h f - g h| ≤ {worst:.2e}, {fails} failures")),
        CheckResult::new("h exterior", ext < 1e-8, format!("relative |h f - g h| ≤ {ext:.2e}")),
    ])
}

fn kappa(ctx: &Context) -> Result<Vec<CheckResult>> {
    let s = &ctx.pair.spec;
    if s.segment == Segment::Custom || s.q < 2 {
        return Ok(vec![CheckResult::new("kappa", true, "no second pair shares g; skipped".into())]);
    }
    let other = |seg| build_pair(&PairSpec { segment: seg, ..s.clone() });
    let (coarse, fine) = match s.segment {
        Segment::S1 => (other(Segment::S2)?, ctx.pair.clone()),
        _ => (ctx.pair.clone(), other(Segment::S1)?),
    };
    let hc = SemiconjHandle::build(&coarse)?;
    let hf = SemiconjHandle::build(&fine)?;
    let addrs = sample_addresses(&coarse.rot, coarse.l, ctx.samples.min(20), 3, ctx.seed);
    let checks: Vec<_> = addrs.iter().map(|a| kappa_spot_check(&hc, &hf, a)).collect();
    let ok = checks.iter().filter(|k| k.ok()).count();
    let res = checks.iter().map(|k| k.conj_residual).fold(0.0, f64::max);
    Ok(vec![CheckResult::new("kappa", ok == checks.len() && res < 1e-9, format!("{ok}/{} coarse tiles, conjugacy residual {res:.2e}", checks.len()))])
}

pub fn context(pair: DegenerationPair, samples: usize, depth: usize, seed: u64) -> Result<Context> {
    let f = Tessellation::build(&pair, Side::F)?;
    let g = Tessellation::build(&pair, Side::G)?;
    Ok(Context { pair, f, g, samples, depth, seed })
}
