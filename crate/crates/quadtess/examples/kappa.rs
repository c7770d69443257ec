//! Two maps degenerating to the same g: the coarse pair on the second segment (q = 1) and the fine
//! pair on the first (q = 3). κ carries each coarse tile into the union of fine tiles at the
//! levels predicted by the subdivision rule.

use quadtess::dynamics::*;
use quadtess::semiconj::*;
use quadtess::tess::sample_addresses;

pub fn run_example(count: usize) -> Result<(), Box<dyn std::error::Error>> {
    let coarse = SemiconjHandle::build(&build_pair(&PairSpec::new(1, 3, 0.9, Segment::S2))?)?;
    let fine = SemiconjHandle::build(&build_pair(&PairSpec::new(1, 3, 0.9, Segment::S1))?)?;
    println!("coarse: q = {}, l = {}; fine: q = {}, l = {}", coarse.pair.q, coarse.pair.l, fine.pair.q, fine.pair.l);
    let mut good = 0;
    for a in sample_addresses(&coarse.pair.rot, coarse.pair.l, count, 3, 2) {
        let k = kappa_spot_check(&coarse, &fine, &a);
        let union: Vec<String> = k.expected.iter().map(|t| t.to_string()).collect();
        let found: Vec<String> = k.found.iter().map(|t| t.to_string()).collect();
        println!("{a} -> [{}] expected within [{}] {}", found.join(" "), union.join(" "), if k.ok() { "ok" } else { "MISS" });
        good += usize::from(k.ok());
    }
    println!("{good}/{count} coarse tiles");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example(10)
}
