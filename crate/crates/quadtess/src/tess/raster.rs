//! Pixel classification of a viewport into exterior, Julia-set, edge and tile pixels.

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use super::tiling::Tessellation;
use crate::angles::{RationalAngle, Sig};
use crate::error::Error;

/// Escape iterations before a pixel is handed to the tile search.
const ESCAPE_ITERS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Viewport {
    pub center: C64,
    /// width of the viewport in the plane
    pub width: f64,
    pub px: usize,
    pub py: usize,
}

impl Viewport {
    pub fn new(center: C64, width: f64, px: usize, py: usize) -> Viewport {
        Viewport { center, width, px, py }
    }

    pub fn height(&self) -> f64 {
        self.width * self.py as f64 / self.px as f64
    }

    /// Center of pixel (i, j), row j counted from the top.
    pub fn pixel(&self, i: usize, j: usize) -> C64 {
        let h = self.width / self.px as f64;
        C64::new(
            self.center.re - self.width / 2.0 + (i as f64 + 0.5) * h,
            self.center.im + self.height() / 2.0 - (j as f64 + 0.5) * h,
        )
    }

    /// Pixel coordinates (may lie outside the image).
    pub fn to_pixel(&self, z: C64) -> (f64, f64) {
        let h = self.width / self.px as f64;
        ((z.re - self.center.re + self.width / 2.0) / h, (self.center.im + self.height() / 2.0 - z.im) / h)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PixelClass {
    Exterior { escape: u32 },
    /// no escape and no tile found within the budget
    Julia,
    Edge,
    Interior { angle: RationalAngle, level: i64, sig: Sig, depth: usize },
}

#[derive(Clone, Debug)]
pub struct Raster {
    pub viewport: Viewport,
    pub cells: Vec<PixelClass>,
}

impl Raster {
    pub fn get(&self, i: usize, j: usize) -> &PixelClass {
        &self.cells[j * self.viewport.px + i]
    }

    pub fn count(&self, pred: impl Fn(&PixelClass) -> bool) -> usize {
        self.cells.iter().filter(|c| pred(c)).count()
    }
}

impl Tessellation {
    pub fn classify_point(&self, z: C64, budget: usize) -> PixelClass {
        let mut w = z;
        for k in 0..ESCAPE_ITERS {
            if w.norm_sqr() > 16.0 {
                return PixelClass::Exterior { escape: k as u32 };
            }
            w = self.map.f(w);
        }
        match self.locate_within(z, budget) {
            Ok(loc) => {
                if loc.cell.flags.on_edge() {
                    return PixelClass::Edge;
                }
                let (angle, depth) = self.angle_of(&loc);
                PixelClass::Interior { angle, level: loc.level(self.l), sig: loc.sig(), depth }
            }
            Err(Error::NotInInterior) => PixelClass::Julia,
            Err(_) => PixelClass::Edge,
        }
    }

    /// Classify every pixel; rows run in parallel.
    pub fn classify_image(&self, viewport: &Viewport, budget: usize) -> Raster {
        let cells = (0..viewport.py)
            .into_par_iter()
            .flat_map_iter(|j| (0..viewport.px).map(move |i| self.classify_point(viewport.pixel(i, j), budget)).collect::<Vec<_>>())
            .collect();
        Raster { viewport: *viewport, cells }
    }
}
