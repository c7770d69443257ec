//! Colouring of classified rasters and SVG drawing of panels and skeleton curves.

use num_complex::Complex64 as C64;

use crate::angles::Sig;
use crate::error::{Error, Result};
use crate::tess::{PanelGeometry, PixelClass, Raster, Tessellation, Viewport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorMode {
    /// two colours per signature, alternating with the level
    Signature,
    Depth,
    Angle,
}

impl std::str::FromStr for ColorMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "signature" => Ok(ColorMode::Signature),
            "depth" => Ok(ColorMode::Depth),
            "angle" => Ok(ColorMode::Angle),
            _ => Err(Error::Parse(format!("mode = {s:?}, expected signature, depth or angle"))),
        }
    }
}

fn hsv(h: f64, s: f64, v: f64) -> [u8; 3] {
    let h6 = (h.rem_euclid(1.0)) * 6.0;
    let i = h6.floor() as i32;
    let f = h6 - i as f64;
    let (p, q, t) = (v * (1.0 - s), v * (1.0 - s * f), v * (1.0 - s * (1.0 - f)));
    let (r, g, b) = match i {
        0 => (v, t, p),
        1 => (q, v, p),
        2 => (p, v, t),
        3 => (p, q, v),
        4 => (t, p, v),
        _ => (v, p, q),
    };
    [(r * 255.0) as u8, (g * 255.0) as u8, (b * 255.0) as u8]
}

pub fn pixel_color(c: &PixelClass, mode: ColorMode) -> [u8; 3] {
    match c {
        PixelClass::Exterior { escape } => {
            let t = (1.0 - (*escape as f64 + 1.0).ln() / 8.0).clamp(0.0, 1.0);
            let g = (150.0 + 100.0 * t) as u8;
            [g, g, g]
        }
        PixelClass::Julia | PixelClass::Edge => [20, 20, 20],
        PixelClass::Interior { angle, level, sig, depth } => {
            let odd = level.rem_euclid(2) == 1;
            let shade = if odd { 0.78 } else { 0.95 };
            match mode {
                ColorMode::Signature => match (sig, odd) {
                    (Sig::Plus, false) => [232, 96, 76],
                    (Sig::Plus, true) => [250, 190, 150],
                    (Sig::Minus, false) => [70, 110, 200],
                    (Sig::Minus, true) => [160, 190, 240],
                },
                ColorMode::Depth => hsv(*depth as f64 * 0.13 + if *sig == Sig::Plus { 0.0 } else { 0.5 }, 0.6, shade),
                ColorMode::Angle => hsv(angle.to_f64(), 0.55, shade),
            }
        }
    }
}

pub fn raster_rgb(r: &Raster, mode: ColorMode) -> Vec<u8> {
    r.cells.iter().flat_map(|c| pixel_color(c, mode)).collect()
}

fn path(vp: &Viewport, pts: &[C64], closed: bool) -> String {
    let mut d = String::new();
    let mut last: Option<(f64, f64)> = None;
    for (k, z) in pts.iter().enumerate() {
        let (x, y) = vp.to_pixel(*z);
        // skip sub-pixel steps, keep the final point
        if let Some((a, b)) = last {
            if (x - a).hypot(y - b) < 0.5 && k + 1 < pts.len() {
                continue;
            }
        }
        d.push_str(&format!("{}{x:.2},{y:.2} ", if k == 0 { "M" } else { "L" }));
        last = Some((x, y));
    }
    if closed {
        d.push('Z');
    }
    d
}

/// Panel outlines, the degenerating arcs, the critical curves and the ray pair.
pub fn svg_scene(t: &Tessellation, panels: &[PanelGeometry], vp: &Viewport) -> String {
    let mut s = String::new();
    for p in panels {
        let fill = match p.sig {
            Sig::Plus => "#e8604c",
            Sig::Minus => "#466ec8",
        };
        let op = 0.55 / (1.0 + p.depth as f64);
        s.push_str(&format!(
            "<path d=\"{}\" fill=\"{fill}\" fill-opacity=\"{op:.3}\" stroke=\"{fill}\" stroke-width=\"0.6\"><title>theta={} sig={} depth={}</title></path>\n",
            path(vp, &p.boundary, true),
            p.angle,
            p.sig,
            p.depth
        ));
    }
    let sk = &t.skeleton;
    for (curve, colour) in [(&sk.arcs[0], "#222"), (&sk.arcs[1], "#222"), (&sk.s_curve, "#0a0"), (&sk.branch[0], "#a0a"), (&sk.branch[1], "#a0a"), (&sk.ray, "#c80")] {
        if curve.len() > 1 {
            s.push_str(&format!("<path d=\"{}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"1.2\"/>\n", path(vp, curve, false)));
        }
    }
    let (x, y) = vp.to_pixel(sk.center);
    s.push_str(&format!("<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"2.5\" fill=\"black\"/>\n"));
    s
}

pub fn panel_rows(panels: &[PanelGeometry]) -> Vec<Vec<String>> {
    panels
        .iter()
        .map(|p| {
            vec![
                p.angle.to_string(),
                p.sig.to_string(),
                p.depth.to_string(),
                format!("{:.12e}", p.diameter),
                format!("{:.12e}", p.landing_point.re),
                format!("{:.12e}", p.landing_point.im),
                p.boundary.len().to_string(),
            ]
        })
        .collect()
}

pub const PANEL_COLUMNS: &[&str] = &["theta", "sig", "depth", "diameter", "landing_re", "landing_im", "boundary_points"];
