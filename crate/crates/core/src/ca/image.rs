//! Binary PGM (P5) and PPM (P6) output with a fixed palette:
//! state 0 is white, state 1 is black.

use std::fs;
use std::path::Path;

use super::{CaError, Grid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PnmFormat {
    Pgm,
    Ppm,
}

impl PnmFormat {
    /// Picks the format from a `.pgm` / `.ppm` extension.
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "pgm" => Some(PnmFormat::Pgm),
            "ppm" => Some(PnmFormat::Ppm),
            _ => None,
        }
    }
}

pub const WHITE: u8 = 255;
pub const BLACK: u8 = 0;

fn shade(state: u8) -> u8 {
    if state == 0 {
        WHITE
    } else {
        BLACK
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    /// Row-major 8-bit luminance.
    pub pixels: Vec<u8>,
}

impl GrayImage {
    pub fn from_grid(g: &Grid) -> Self {
        Self {
            width: g.width(),
            height: g.height(),
            pixels: g.cells().iter().map(|&c| shade(c)).collect(),
        }
    }

    /// Space-time diagram: one image row per automaton row.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        Self {
            width: rows.first().map_or(0, Vec::len),
            height: rows.len(),
            pixels: rows.iter().flatten().map(|&c| shade(c)).collect(),
        }
    }

    pub fn pixel(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    /// Encodes as binary PNM with maxval 255. `comment` goes on its own
    /// `#` line after the magic number.
    pub fn encode(&self, format: PnmFormat, comment: Option<&str>) -> Result<Vec<u8>, CaError> {
        if self.width == 0 || self.height == 0 {
            return Err(CaError::ZeroSize);
        }
        let magic = match format {
            PnmFormat::Pgm => "P5",
            PnmFormat::Ppm => "P6",
        };
        let mut out = Vec::with_capacity(32 + 3 * self.pixels.len());
        out.extend_from_slice(magic.as_bytes());
        out.push(b'\n');
        if let Some(c) = comment {
            for line in c.lines() {
                out.extend_from_slice(b"# ");
                out.extend_from_slice(line.as_bytes());
                out.push(b'\n');
            }
        }
        out.extend_from_slice(format!("{} {}\n255\n", self.width, self.height).as_bytes());
        match format {
            PnmFormat::Pgm => out.extend_from_slice(&self.pixels),
            PnmFormat::Ppm => {
                for &p in &self.pixels {
                    out.extend_from_slice(&[p, p, p]);
                }
            }
        }
        Ok(out)
    }

    pub fn write(
        &self,
        path: impl AsRef<Path>,
        format: PnmFormat,
        comment: Option<&str>,
    ) -> Result<(), CaError> {
        let path = path.as_ref();
        let bytes = self.encode(format, comment)?;
        fs::write(path, bytes).map_err(|source| CaError::Io {
            path: path.display().to_string(),
            source,
        })
    }
}

/// A binary string drawn as vertical stripes: column `j` takes the colour
/// of `s[j / cell_px]`, repeated over `repeats * cell_px` identical rows.
pub fn render_strip(s: &[u8], cell_px: usize, repeats: usize) -> Result<GrayImage, CaError> {
    if s.is_empty() || cell_px == 0 || repeats == 0 {
        return Err(CaError::ZeroSize);
    }
    let row: Vec<u8> = s
        .iter()
        .flat_map(|&c| std::iter::repeat_n(shade(c), cell_px))
        .collect();
    let height = repeats * cell_px;
    Ok(GrayImage {
        width: row.len(),
        height,
        pixels: row.repeat(height),
    })
}
