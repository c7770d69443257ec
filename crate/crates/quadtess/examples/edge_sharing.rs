//! Walk across every edge of sampled tiles and compare each neighbour with the
//! edge-sharing rules, on the f side and the g side.

use quadtess::dynamics::*;
use quadtess::tess::{sample_addresses, Side, Tessellation};

pub fn run_example(count: usize) -> Result<(), Box<dyn std::error::Error>> {
    let pair = build_pair(&PairSpec::new(1, 3, 0.9, Segment::S1))?;
    let addrs = sample_addresses(&pair.rot, pair.l, count, 3, 1);
    let f = Tessellation::build(&pair, Side::F)?.verify_edge_sharing(&addrs);
    let g = Tessellation::build(&pair, Side::G)?.verify_edge_sharing(&addrs);
    for c in f.checks.iter().take(5) {
        println!("{}: critical partner {:?}", c.addr, c.partner.as_ref().map(|t| t.to_string()));
        for p in &c.probes {
            let found = match &p.found {
                Ok(a) => a.to_string(),
                Err(e) => e.clone(),
            };
            println!("  {:?} -> {found} {}", p.kind, if p.ok() { "ok" } else { "MISMATCH" });
        }
    }
    println!("f: {}/{} tiles", f.passed(), addrs.len());
    println!("g: {}/{} tiles", g.passed(), addrs.len());
    println!("critical partners differing between sides: {}", f.partner_mismatches(&g).len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(20)
}
