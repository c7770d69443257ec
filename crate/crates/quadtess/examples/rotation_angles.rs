//! Angle combinatorics: the doubling cycle of a rotation number, critical angles, depths,
//! preimages and tile addresses.
//!
//! ```text
//! cargo run --example rotation_angles -- 2/5
//! ```

use quadtess::angles::*;

pub fn run_example(p: u32, q: u32) -> Result<(), Box<dyn std::error::Error>> {
    let rot = rotation_cycle(p, q)?;
    let cycle: Vec<String> = rot.cycle.iter().map(|t| t.to_string()).collect();
    println!("rotation {p}/{q}: cycle [{}]", cycle.join(", "));
    println!("theta0+ = {}  theta0- = {}", rot.critical_plus, rot.critical_minus);

    for sig in [Sig::Plus, Sig::Minus] {
        for n in 0..3 {
            let angles: Vec<String> = angles_of_depth(&rot, sig, n).iter().map(|t| t.to_string()).collect();
            println!("depth {n} {sig}: {}", angles.join(" "));
        }
    }

    let theta = rot.critical_plus.clone();
    let pre: Vec<String> = preimage_angles(&theta, 2).iter().map(|t| t.to_string()).collect();
    println!("preimages of {theta} under two doublings: {}", pre.join(" "));

    // a tile and its forward orbit of addresses
    let mut a = TileAddress::new(angles_of_depth(&rot, Sig::Plus, 2)[0].clone(), 0, Sig::Plus);
    print!("orbit of {a}:");
    for _ in 0..4 {
        a = a.forward();
        print!(" {a}");
    }
    println!();

    let coarse = TileAddress::new(rot.critical_plus.clone(), 0, Sig::Plus);
    let fine: Vec<String> = subdivision_levels(&coarse, 1, q).iter().map(|t| t.to_string()).collect();
    println!("{coarse} splits into {}", fine.join(" "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "1/3".into());
    let (p, q) = arg.split_once('/').ok_or("expected p/q")?;
    run_example(p.parse()?, q.parse()?)
}
