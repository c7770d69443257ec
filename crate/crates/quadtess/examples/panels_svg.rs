//! Panels up to a given depth on both sides, drawn as SVG with the skeleton curves,
//! and a per-depth table of panel diameters.

use std::path::{Path, PathBuf};

use quadtess::cli::config::Config;
use quadtess::cli::output::{write_svg, Header};
use quadtess::cli::render::svg_scene;
use quadtess::dynamics::build_pair;
use quadtess::tess::{Side, Tessellation};

pub fn run_example(dir: &Path, depth: usize) -> Result<Vec<PathBuf>, Box<dyn std::error::Error>> {
    let mut cfg = Config::default();
    cfg.set("format", "svg")?;
    cfg.set("depth", &depth.to_string())?;
    let pair = build_pair(&cfg.pair_spec()?)?;
    let vp = cfg.viewport()?;
    let mut out = Vec::new();
    for (name, side) in [("f", Side::F), ("g", Side::G)] {
        cfg.set("side", name)?;
        let t = Tessellation::build(&pair, side)?;
        let panels = t.build_panels(depth, None)?;
        let path = dir.join(format!("panels_{name}.svg"));
        write_svg(Some(&path), &Header::new("panels_svg", cfg.render()), vp.px, vp.py, &svg_scene(&t, &panels, &vp))?;
        println!("{}: {} panels", path.display(), panels.len());
        for s in t.depth_sweep(depth)? {
            println!("  depth {:>2}: {:>4} panels, max diameter {:.4}", s.depth, s.count, s.max_diameter);
        }
        out.push(path);
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;
    run_example(&dir, 5)?;
    Ok(())
}
