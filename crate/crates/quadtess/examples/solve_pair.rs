//! Build a degeneration pair (f, g) on either segment and print its report.
//!
//! ```text
//! cargo run --example solve_pair -- 1/3 0.9
//! ```

use quadtess::dynamics::*;

pub fn run_example(p: u32, q: u32, r: f64) -> Result<(), Box<dyn std::error::Error>> {
    for seg in [Segment::S1, Segment::S2] {
        let pair = build_pair(&PairSpec::new(p, q, r, seg))?;
        print!("{}", pair.report());
        println!("case {} with |lambda| = {:.6}", classify_case(&pair)?, pair.lambda.norm());
    }
    // the parabolic map alone
    let par = solve_parabolic(&PairSpec::new(p, q, 1.0, Segment::S1))?;
    print!("{}", par.report());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let pq = args.first().map(String::as_str).unwrap_or("1/3");
    let (p, q) = pq.split_once('/').ok_or("expected p/q")?;
    let r = args.get(1).map(|s| s.parse()).transpose()?.unwrap_or(0.9);
    run_example(p.parse()?, q.parse()?, r)
}
