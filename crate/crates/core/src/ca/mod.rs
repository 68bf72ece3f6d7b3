//! Discrete pattern-formation models on toroidal binary lattices.

pub mod eca;
pub mod image;
pub mod precipitation;
pub mod young;

use std::io;

use thiserror::Error;

pub use self::eca::{eca_evolve, EcaRule};
pub use self::image::{render_strip, GrayImage, PnmFormat};
pub use self::precipitation::{precipitation_run, precipitation_step};
pub use self::young::{young_run, young_run_with, young_seed, young_step, Neighbourhood, YoungParams, YoungPreset};
pub use self::young::preset as young_preset;

#[derive(Debug, Error)]
pub enum CaError {
    #[error("Wolfram number {0} is not in 0..=255")]
    RuleOutOfRange(u32),
    #[error("row has {0} cells; at least 3 are needed")]
    RowTooShort(usize),
    #[error("{0:?} is not a binary string")]
    NotBinary(String),
    #[error("invalid parameters: {0}")]
    BadParams(String),
    #[error("interval [{0}, {1}] is not inside [0, 8]")]
    BadInterval(u8, u8),
    #[error("image dimensions must be non-zero")]
    ZeroSize,
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

/// Binary cell lattice with wrap-around edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Grid {
    width: usize,
    height: usize,
    cells: Vec<u8>,
}

impl Grid {
    pub fn new(width: usize, height: usize) -> Result<Self, CaError> {
        if width == 0 || height == 0 {
            return Err(CaError::ZeroSize);
        }
        Ok(Self {
            width,
            height,
            cells: vec![0; width * height],
        })
    }

    pub fn filled(width: usize, height: usize, state: u8) -> Result<Self, CaError> {
        let mut g = Self::new(width, height)?;
        g.cells.fill(state.min(1));
        Ok(g)
    }

    /// Builds a grid from rows of '0'/'1'.
    pub fn from_rows(rows: &[&str]) -> Result<Self, CaError> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        let mut g = Self::new(width, height)?;
        for (y, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(CaError::BadParams(format!(
                    "row {y} has {} cells, expected {width}",
                    row.len()
                )));
            }
            for (x, b) in row.bytes().enumerate() {
                match b {
                    b'0' | b'1' => g.set(x, y, b - b'0'),
                    _ => return Err(CaError::NotBinary((*row).to_string())),
                }
            }
        }
        Ok(g)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.cells[y * self.width + x]
    }

    /// Reads with toroidal wrap-around.
    pub fn get_wrapped(&self, x: isize, y: isize) -> u8 {
        let x = x.rem_euclid(self.width as isize) as usize;
        let y = y.rem_euclid(self.height as isize) as usize;
        self.get(x, y)
    }

    pub fn set(&mut self, x: usize, y: usize, state: u8) {
        self.cells[y * self.width + x] = state.min(1);
    }

    pub fn live_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c == 1).count()
    }

    pub fn live_fraction(&self) -> f64 {
        self.live_count() as f64 / self.cells.len() as f64
    }

    /// True when every 1-cell of `self` is also a 1-cell of `other`.
    pub fn is_subset_of(&self, other: &Grid) -> bool {
        self.cells
            .iter()
            .zip(&other.cells)
            .all(|(&a, &b)| a <= b)
    }

    pub(crate) fn from_cells(width: usize, height: usize, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), width * height);
        Self {
            width,
            height,
            cells,
        }
    }
}

/// Parses a '0'/'1' string into cell states.
pub fn parse_bits(s: &str) -> Result<Vec<u8>, CaError> {
    s.bytes()
        .map(|b| match b {
            b'0' => Ok(0),
            b'1' => Ok(1),
            _ => Err(CaError::NotBinary(s.to_string())),
        })
        .collect()
}
