//! The pinching map h: f → g on the interior, the exterior and the Julia set.

use num_complex::Complex64 as C64;
use quadtess::angles::rotation_cycle;
use quadtess::dynamics::*;
use quadtess::semiconj::*;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pair = build_pair(&PairSpec::new(1, 3, 0.9, Segment::S1))?;
    let h = SemiconjHandle::build(&pair)?;

    let interior = interior_samples(&h.g_tess, &pair, &SampleSpec::default());
    let mut worst: f64 = 0.0;
    for &z in &interior {
        let w = h.h_interior(z)?;
        worst = worst.max((h.h_interior(pair.f.f(z))? - pair.g.f(w)).norm());
    }
    println!("interior: {} samples, |h f - g h| <= {worst:.1e}", interior.len());
    let z = interior[0];
    println!("  {z:.6} in {} maps to {:.6} in {}", h.f_tess.address_of(z)?, h.h(z)?, h.g_tess.address_of(h.h(z)?)?);

    for z in [C64::new(1.5, 0.5), C64::new(-0.4, 1.2)] {
        let w = h.h_exterior(z)?;
        println!("exterior: h({z:.3}) = {w:.6}, h(f z) - g(h z) = {:.1e}", (h.h_exterior(pair.f.f(z))? - pair.g.f(w)).norm());
    }

    let cycle = rotation_cycle(1, 3)?.cycle;
    for t in &cycle {
        let (a, b) = h.h_julia(t)?;
        println!("julia: ray {t} lands at {a:.6} for f, {b:.6} for g");
    }
    println!("the three landing points collapse to {:.6} (beta0 = {:.6})", h.pinch_image_of_arc(&cycle)?, pair.beta0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
