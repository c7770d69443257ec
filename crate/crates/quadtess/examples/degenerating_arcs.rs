//! The arcs that pinch as r → 1: traced from α₀ to the repelling points where the cycle rays land.

use quadtess::boettcher::landing_point;
use quadtess::dynamics::*;
use quadtess::linearize::degenerating_arcs;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for r in [0.9, 0.99] {
        let pair = build_pair(&PairSpec::new(1, 3, r, Segment::S1))?;
        println!("r = {r}");
        for arc in degenerating_arcs(&pair)? {
            let angle = arc.angle.as_ref().map(|t| t.to_string()).unwrap_or_else(|| "?".into());
            println!("  arc {}: {} points, ends at {:.6} (ray {angle}), gap {:.1e}", arc.index, arc.points.len(), arc.endpoint, arc.gap);
        }
        for t in &pair.rot.cycle {
            println!("  ray {t} lands on g at {:.6}", landing_point(pair.g, t)?);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
