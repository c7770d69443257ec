//! sup |h - id| over interior, exterior and Julia samples as r → 1, written as CSV with the
//! reproducibility header.
//!
//! ```text
//! cargo run --release --example convergence -- 0.9,0.99,0.999
//! ```

use quadtess::cli::config::Config;
use quadtess::cli::{converge, Outcome};

pub fn run_example(rs: &str, quick: bool) -> Result<Outcome, Box<dyn std::error::Error>> {
    let mut cfg = Config::default();
    cfg.set("pq", "1/2")?;
    cfg.set("rs", rs)?;
    if quick {
        for (k, v) in [("grid", "8"), ("julia_angles", "6"), ("panel_depth", "2")] {
            cfg.set(k, v)?;
        }
    }
    // writes the table to stdout
    let outcome = converge(&cfg)?;
    println!("# decreasing: {}", outcome == Outcome::Pass);
    Ok(outcome)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rs = std::env::args().nth(1).unwrap_or_else(|| "0.9,0.99,0.999".into());
    run_example(&rs, false)?;
    Ok(())
}
