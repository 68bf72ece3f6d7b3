//! Young's two-radius activator–inhibitor automaton.
//!
//! Each pigmented cell within distance `r1` of a cell (the cell itself
//! included) contributes `+w1` to its field; each pigmented cell at distance
//! in `(r1, r2]` contributes `-w2`. The cell becomes pigmented when the field
//! is positive, unpigmented when negative, and keeps its state at zero.
//! Distances are Euclidean on the torus; updates are synchronous.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{CaError, Grid};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct YoungParams {
    pub r1: f64,
    pub r2: f64,
    pub w1: f64,
    pub w2: f64,
    pub init_density: f64,
    pub seed: u64,
}

impl YoungParams {
    pub fn validate(&self) -> Result<(), CaError> {
        let bad = |m: &str| Err(CaError::BadParams(m.to_string()));
        if !(self.r1 > 0.0) {
            return bad("r1 must be positive");
        }
        if !(self.r2 > self.r1) || !self.r2.is_finite() {
            return bad("r2 must be finite and greater than r1");
        }
        if !(self.w1 > 0.0 && self.w2 > 0.0) {
            return bad("weights must be positive");
        }
        if !(0.0..=1.0).contains(&self.init_density) {
            return bad("init_density must lie in [0, 1]");
        }
        Ok(())
    }
}

const PRESETS: &str = include_str!("../../presets/young.toml");

/// A named parameter set with its grid size and step count.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
pub struct YoungPreset {
    #[serde(flatten)]
    pub params: YoungParams,
    pub width: usize,
    pub height: usize,
    pub steps: usize,
}

pub fn preset(name: &str) -> Result<YoungPreset, CaError> {
    let mut all: std::collections::BTreeMap<String, YoungPreset> =
        toml::from_str(PRESETS).map_err(|e| CaError::BadParams(format!("preset file: {e}")))?;
    all.remove(name)
        .ok_or_else(|| CaError::BadParams(format!("unknown preset {name:?}")))
}

/// Precomputed neighbourhood of one grid size: each distinct cell offset on
/// the torus, tagged activator or inhibitor.
#[derive(Debug, Clone)]
pub struct Neighbourhood {
    width: usize,
    height: usize,
    activators: Vec<(usize, usize)>,
    inhibitors: Vec<(usize, usize)>,
}

impl Neighbourhood {
    pub fn new(width: usize, height: usize, r1: f64, r2: f64) -> Self {
        let mut activators = Vec::new();
        let mut inhibitors = Vec::new();
        // Offsets are taken modulo the grid, so a small torus never counts a
        // cell twice.
        for dy in 0..height {
            let ty = dy.min(height - dy) as f64;
            for dx in 0..width {
                let tx = dx.min(width - dx) as f64;
                let d = (tx * tx + ty * ty).sqrt();
                if d <= r1 {
                    activators.push((dx, dy));
                } else if d <= r2 {
                    inhibitors.push((dx, dy));
                }
            }
        }
        Self {
            width,
            height,
            activators,
            inhibitors,
        }
    }

    /// Disk and annulus sizes `(A1, A2)` in cells.
    pub fn areas(&self) -> (usize, usize) {
        (self.activators.len(), self.inhibitors.len())
    }

    fn count(&self, g: &Grid, x: usize, y: usize, offsets: &[(usize, usize)]) -> u32 {
        offsets
            .iter()
            .map(|&(dx, dy)| g.get((x + dx) % self.width, (y + dy) % self.height) as u32)
            .sum()
    }
}

/// One synchronous update.
pub fn young_step(g: &Grid, p: &YoungParams) -> Result<Grid, CaError> {
    p.validate()?;
    let hood = Neighbourhood::new(g.width(), g.height(), p.r1, p.r2);
    Ok(step_with(g, p, &hood))
}

fn step_with(g: &Grid, p: &YoungParams, hood: &Neighbourhood) -> Grid {
    let (w, h) = (g.width(), g.height());
    let mut cells = Vec::with_capacity(w * h);
    for y in 0..h {
        for x in 0..w {
            let near = hood.count(g, x, y, &hood.activators) as f64;
            let far = hood.count(g, x, y, &hood.inhibitors) as f64;
            let field = p.w1 * near - p.w2 * far;
            cells.push(if field > 0.0 {
                1
            } else if field < 0.0 {
                0
            } else {
                g.get(x, y)
            });
        }
    }
    Grid::from_cells(w, h, cells)
}

/// Random initial grid: each cell pigmented with probability `init_density`.
pub fn young_seed(p: &YoungParams, width: usize, height: usize) -> Result<Grid, CaError> {
    p.validate()?;
    let mut g = Grid::new(width, height)?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for y in 0..height {
        for x in 0..width {
            if rng.random_bool(p.init_density) {
                g.set(x, y, 1);
            }
        }
    }
    Ok(g)
}

/// Seeds a grid and applies `steps` updates. `observe` sees every grid,
/// the initial one included.
pub fn young_run_with(
    p: &YoungParams,
    width: usize,
    height: usize,
    steps: usize,
    mut observe: impl FnMut(usize, &Grid),
) -> Result<Grid, CaError> {
    let mut g = young_seed(p, width, height)?;
    let hood = Neighbourhood::new(width, height, p.r1, p.r2);
    observe(0, &g);
    for t in 1..=steps {
        g = step_with(&g, p, &hood);
        observe(t, &g);
    }
    Ok(g)
}

pub fn young_run(p: &YoungParams, width: usize, height: usize, steps: usize) -> Result<Grid, CaError> {
    young_run_with(p, width, height, steps, |_, _| {})
}
