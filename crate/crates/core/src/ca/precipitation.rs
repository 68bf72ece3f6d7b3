//! Monotone precipitation automaton: a 0-cell turns to 1 permanently when
//! its count of 1-cells in the Moore neighbourhood lies in `[low, high]`.

use super::{CaError, Grid};

fn check_interval(low: u8, high: u8) -> Result<(), CaError> {
    if low > high || high > 8 {
        return Err(CaError::BadInterval(low, high));
    }
    Ok(())
}

pub fn precipitation_step(g: &Grid, low: u8, high: u8) -> Result<Grid, CaError> {
    check_interval(low, high)?;
    let (w, h) = (g.width(), g.height());
    let mut cells = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            if g.get_wrapped(x, y) == 1 {
                cells.push(1);
                continue;
            }
            let mut n = 0u8;
            for dy in -1..=1 {
                for dx in -1..=1 {
                    if (dx, dy) != (0, 0) {
                        n += g.get_wrapped(x + dx, y + dy);
                    }
                }
            }
            cells.push((low..=high).contains(&n) as u8);
        }
    }
    Ok(Grid::from_cells(w, h, cells))
}

/// Steps until nothing changes or `max_steps` updates have run. Returns the
/// final grid and the number of updates that changed the grid.
pub fn precipitation_run(
    g: &Grid,
    low: u8,
    high: u8,
    max_steps: usize,
) -> Result<(Grid, usize), CaError> {
    check_interval(low, high)?;
    let mut cur = g.clone();
    for t in 0..max_steps {
        let next = precipitation_step(&cur, low, high)?;
        if next == cur {
            return Ok((cur, t));
        }
        cur = next;
    }
    Ok((cur, max_steps))
}
