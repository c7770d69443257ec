//! Linearizing coordinates: the Kœnigs map of f at its attracting cycle, the Fatou coordinate of g
//! at its parabolic cycle, and the normal form of a jet.

use num_complex::Complex64 as C64;
use quadtess::dynamics::*;
use quadtess::linearize::*;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let pair = build_pair(&PairSpec::new(1, 3, 0.9, Segment::S1))?;
    let f = pair.f;
    let k = Koenigs::new(f, &pair.o_f.points)?;
    let lam = pair.o_f.multiplier;
    println!("Koenigs at alpha = {:.6}, lambda = {:.6}", pair.alpha0, lam);
    for z in [C64::new(0.0, 0.0), C64::new(0.1, 0.05), C64::new(-0.2, 0.1)] {
        let v = k.eval(z)?;
        let v1 = k.eval(f.iterate(z, pair.o_f.period))?;
        println!("  phi({z:.3}) = {v:.6}   |phi(f z) - lambda phi(z)| = {:.1e}", (v1 - lam * v).norm());
    }

    let g = pair.g;
    let fat = Fatou::new(g, &pair.o_g.points, pair.prime_rot.1 as usize)?;
    println!("Fatou at beta = {:.6}, return time {}", fat.beta, fat.steps);
    let mut z = C64::new(0.0, 0.0);
    for n in 0..4 {
        println!("  phi(g^{}(0)) = {:.9}", n * fat.steps, fat.eval(z)?);
        z = g.iterate(z, fat.steps);
    }

    let jet = cycle_jet(&pair.o_f.points, 7);
    let (change, nf) = normal_form(&jet, lam, 3)?;
    let back = change.compose(&jet.compose(&change.invert()?));
    println!("normal form: z^4 coefficient {:.6}, round trip {:.1e}", nf.coeff(4), back.max_abs_diff(&nf, 6));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
