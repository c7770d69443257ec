//! Ueda's linearizing coordinate on a parabolic family and the invariant regions of the
//! weakly attracting model jets.

use num_complex::Complex64 as C64;
use quadtess::linearize::*;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let a = C64::new(2.0, 0.0);
    for tau in [1.0, 1.01, 1.001] {
        let map = move |w: C64| tau * w + 1.0 + 0.1 / w;
        for x in [50.0, 500.0] {
            let z = C64::new(x, 0.0);
            let u = ueda_linearize(map, tau, a, z)?;
            let res = (ueda_linearize(map, tau, a, map(z))? - tau * u - 1.0).norm() / (1.0 + u.norm());
            println!("tau {tau}: u({x}) = {u:.6}, relative residual {res:.1e}");
        }
    }
    for q in 1..=3 {
        for eps in [1e-2, 1e-3, 1e-4] {
            let lam = C64::new(1.0 - eps, 0.0);
            let rep = invariant_regions_check(lam, q, &model_jet(lam, q, 2 * q + 1), 1000)?;
            println!(
                "q {q} eps {eps:e}: D margin {:.3}, E {}/{}, path ratio {:.4}, {}",
                rep.d_margin,
                rep.e_inside,
                rep.e_total,
                rep.ratio,
                if rep.passed { "holds" } else { "fails" }
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
