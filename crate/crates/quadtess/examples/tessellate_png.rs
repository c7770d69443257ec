//! Classify every pixel of a viewport by tile address and write a PNG for each side.
//! The header with the resolved configuration goes into a tEXt chunk.
//!
//! ```text
//! cargo run --release --example tessellate_png -- /tmp/tess
//! ```

use std::path::{Path, PathBuf};

use quadtess::cli::config::Config;
use quadtess::cli::output::{write_png, Header};
use quadtess::cli::render::{raster_rgb, ColorMode};
use quadtess::dynamics::build_pair;
use quadtess::tess::{PixelClass, Side, Tessellation};

pub fn run_example(dir: &Path, px: usize, py: usize) -> Result<Vec<PathBuf>, Box<dyn std::error::Error>> {
    let mut cfg = Config::default();
    cfg.set("px", &px.to_string())?;
    cfg.set("py", &py.to_string())?;
    let pair = build_pair(&cfg.pair_spec()?)?;
    let vp = cfg.viewport()?;
    let mut out = Vec::new();
    for side in ["f", "g"] {
        cfg.set("side", side)?;
        let t = Tessellation::build(&pair, if side == "f" { Side::F } else { Side::G })?;
        let img = t.classify_image(&vp, cfg.get_usize("budget")?);
        let interior = img.count(|c| matches!(c, PixelClass::Interior { .. }));
        let path = dir.join(format!("tess_{side}.png"));
        write_png(&path, &Header::new("tessellate_png", cfg.render()), vp.px, vp.py, &raster_rgb(&img, ColorMode::Signature))?;
        println!("{}: {interior} of {} pixels interior", path.display(), px * py);
        out.push(path);
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    std::fs::create_dir_all(&dir)?;
    run_example(&dir, 480, 360)?;
    Ok(())
}
