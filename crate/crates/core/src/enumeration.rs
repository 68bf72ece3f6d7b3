//! Exhaustive and sampled sweeps over machine index ranges.
//!
//! Work is split into fixed-size chunks of indices (or of samples). Each
//! chunk is tallied independently and the partial tables are combined with
//! [`FrequencyTable::merge`], so results never depend on the number of
//! worker threads or on scheduling order.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::tm::{machine_count, Simulator, TmError, TuringMachine};

/// Name recorded in the `#rng=` header of sampled tables.
///
/// Sample chunk `i` draws from ChaCha8 seeded with `seed_from_u64(seed)` on
/// stream `i`; each draw is a uniform index in `[0, machine_count(n))`.
pub const RNG_NAME: &str = "chacha8-stream";

/// Indices (or samples) per work unit.
pub const CHUNK: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SweepError {
    #[error(transparent)]
    Machine(#[from] TmError),
    #[error("range {from}..{to} is not inside [0, {count})")]
    BadRange { from: u64, to: u64, count: u64 },
    #[error("sample count must be at least 1")]
    EmptySample,
    #[error("cannot merge tables with {0}")]
    Mismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Every index in `from..to`.
    Exhaustive { from: u64, to: u64 },
    /// `count` indices drawn uniformly with replacement.
    Sampled { count: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepSpec {
    pub n_states: usize,
    pub mode: SweepMode,
    pub step_cap: u64,
}

impl SweepSpec {
    pub fn exhaustive(n_states: usize, step_cap: u64) -> Result<Self, SweepError> {
        let count = machine_count(n_states)?;
        Ok(Self {
            n_states,
            mode: SweepMode::Exhaustive { from: 0, to: count },
            step_cap,
        })
    }

    pub fn range(n_states: usize, from: u64, to: u64, step_cap: u64) -> Self {
        Self {
            n_states,
            mode: SweepMode::Exhaustive { from, to },
            step_cap,
        }
    }

    pub fn sampled(n_states: usize, count: u64, seed: u64, step_cap: u64) -> Self {
        Self {
            n_states,
            mode: SweepMode::Sampled { count, seed },
            step_cap,
        }
    }

    pub fn validate(&self) -> Result<u64, SweepError> {
        let count = machine_count(self.n_states)?;
        if self.step_cap == 0 {
            return Err(TmError::ZeroStepCap.into());
        }
        match self.mode {
            SweepMode::Exhaustive { from, to } if from > to || to > count => {
                Err(SweepError::BadRange { from, to, count })
            }
            SweepMode::Sampled { count: 0, .. } => Err(SweepError::EmptySample),
            _ => Ok(count),
        }
    }

    /// Number of machines the sweep will run.
    pub fn len(&self) -> u64 {
        match self.mode {
            SweepMode::Exhaustive { from, to } => to.saturating_sub(from),
            SweepMode::Sampled { count, .. } => count,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Output-string counts of the halting machines of a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    pub n_states: usize,
    pub step_cap: u64,
    pub total: u64,
    pub halting: u64,
    /// Sampling provenance as `name:seed`; `None` for exhaustive sweeps.
    pub rng: Option<String>,
    pub counts: BTreeMap<String, u64>,
}

impl FrequencyTable {
    pub fn empty(n_states: usize, step_cap: u64) -> Self {
        Self {
            n_states,
            step_cap,
            total: 0,
            halting: 0,
            rng: None,
            counts: BTreeMap::new(),
        }
    }

    pub fn count(&self, s: &str) -> u64 {
        self.counts.get(s).copied().unwrap_or(0)
    }

    /// True for an exhaustive sweep of the whole `n`-state machine space.
    pub fn is_complete(&self) -> bool {
        self.rng.is_none() && machine_count(self.n_states).ok() == Some(self.total)
    }

    /// Pointwise sum of two tables over the same state count and step cap.
    pub fn merge(mut self, other: FrequencyTable) -> Result<FrequencyTable, SweepError> {
        if self.n_states != other.n_states {
            return Err(SweepError::Mismatch(format!(
                "state counts {} and {}",
                self.n_states, other.n_states
            )));
        }
        if self.step_cap != other.step_cap {
            return Err(SweepError::Mismatch(format!(
                "step caps {} and {}",
                self.step_cap, other.step_cap
            )));
        }
        self.total += other.total;
        self.halting += other.halting;
        self.rng = merge_rng(self.rng.take(), other.rng);
        if self.counts.len() < other.counts.len() {
            let small = std::mem::replace(&mut self.counts, other.counts);
            add_counts(&mut self.counts, small);
        } else {
            add_counts(&mut self.counts, other.counts);
        }
        Ok(self)
    }

    /// Invariant check: keys are non-empty binary strings with positive
    /// counts summing to `halting`, and `halting <= total`.
    pub fn check(&self) -> Result<(), String> {
        let mut sum = 0u64;
        for (s, &c) in &self.counts {
            if s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(format!("key {s:?} is not a non-empty binary string"));
            }
            if c == 0 {
                return Err(format!("key {s} has a zero count"));
            }
            sum = sum
                .checked_add(c)
                .ok_or_else(|| "count sum overflows".to_string())?;
        }
        if sum != self.halting {
            return Err(format!(
                "counts sum to {sum} but halting count is {}",
                self.halting
            ));
        }
        if self.halting > self.total {
            return Err(format!(
                "halting count {} exceeds total {}",
                self.halting, self.total
            ));
        }
        Ok(())
    }
}

fn add_counts(into: &mut BTreeMap<String, u64>, from: BTreeMap<String, u64>) {
    for (s, c) in from {
        *into.entry(s).or_insert(0) += c;
    }
}

// Union of provenance tags, kept sorted so merge stays commutative.
fn merge_rng(a: Option<String>, b: Option<String>) -> Option<String> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            let mut parts: Vec<&str> = a.split('+').chain(b.split('+')).collect();
            parts.sort_unstable();
            parts.dedup();
            Some(parts.join("+"))
        }
    }
}

/// Per-worker tally. Outputs of up to 128 cells are keyed by packed bits.
struct Tally {
    packed: HashMap<(u32, u128), u64>,
    long: HashMap<Vec<u8>, u64>,
    total: u64,
    halting: u64,
}

impl Tally {
    fn new() -> Self {
        Self {
            packed: HashMap::new(),
            long: HashMap::new(),
            total: 0,
            halting: 0,
        }
    }

    fn add(&mut self, cells: &[u8]) {
        self.halting += 1;
        if cells.len() <= 128 {
            let bits = cells
                .iter()
                .fold(0u128, |acc, &b| (acc << 1) | b as u128);
            *self.packed.entry((cells.len() as u32, bits)).or_insert(0) += 1;
        } else {
            *self.long.entry(cells.to_vec()).or_insert(0) += 1;
        }
    }

    fn into_table(self, n_states: usize, step_cap: u64) -> FrequencyTable {
        let mut counts = BTreeMap::new();
        for ((len, bits), c) in self.packed {
            let s: String = (0..len)
                .rev()
                .map(|i| if (bits >> i) & 1 == 1 { '1' } else { '0' })
                .collect();
            counts.insert(s, c);
        }
        for (cells, c) in self.long {
            let s: String = cells
                .iter()
                .map(|&b| if b == 1 { '1' } else { '0' })
                .collect();
            counts.insert(s, c);
        }
        FrequencyTable {
            n_states,
            step_cap,
            total: self.total,
            halting: self.halting,
            rng: None,
            counts,
        }
    }
}

struct Worker {
    machine: TuringMachine,
    sim: Simulator,
    tally: Tally,
}

impl Worker {
    fn new(n_states: usize) -> Result<Self, TmError> {
        Ok(Self {
            machine: TuringMachine::decode(n_states, 0)?,
            sim: Simulator::new(),
            tally: Tally::new(),
        })
    }

    fn visit(&mut self, n_states: usize, index: u64, step_cap: u64) -> Result<(), TmError> {
        self.tally.total += 1;
        self.machine.decode_in_place(n_states, index)?;
        // Machines with no reachable halting slot never halt; skip simulating them.
        if !self.machine.can_halt() {
            return Ok(());
        }
        let exec = self.sim.execute(&self.machine, step_cap)?;
        if exec.halted {
            let out = self.sim.output();
            debug_assert!(out.len() as u64 <= exec.steps + 1);
            self.tally.add(out);
        }
        Ok(())
    }
}

/// Runs every machine selected by `spec` and tallies the halting outputs.
pub fn sweep(spec: &SweepSpec) -> Result<FrequencyTable, SweepError> {
    sweep_with_progress(spec, &|_| {})
}

/// Like [`sweep`], reporting the number of machines finished after each chunk.
pub fn sweep_with_progress(
    spec: &SweepSpec,
    progress: &(dyn Fn(u64) + Sync),
) -> Result<FrequencyTable, SweepError> {
    let count = spec.validate()?;
    let n = spec.n_states;
    let cap = spec.step_cap;
    let empty = FrequencyTable::empty(n, cap);

    let table = match spec.mode {
        SweepMode::Exhaustive { from, to } => {
            let chunks = (to - from).div_ceil(CHUNK);
            (0..chunks)
                .into_par_iter()
                .map(|i| {
                    let lo = from + i * CHUNK;
                    let hi = (lo + CHUNK).min(to);
                    let mut w = Worker::new(n)?;
                    for index in lo..hi {
                        w.visit(n, index, cap)?;
                    }
                    progress(hi - lo);
                    Ok(w.tally.into_table(n, cap))
                })
                .try_reduce(|| empty.clone(), FrequencyTable::merge)?
        }
        SweepMode::Sampled {
            count: samples,
            seed,
        } => {
            let chunks = samples.div_ceil(CHUNK);
            let mut table = (0..chunks)
                .into_par_iter()
                .map(|i| {
                    let len = CHUNK.min(samples - i * CHUNK);
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    rng.set_stream(i);
                    let mut w = Worker::new(n)?;
                    for _ in 0..len {
                        let index = rng.random_range(0..count);
                        w.visit(n, index, cap)?;
                    }
                    progress(len);
                    Ok(w.tally.into_table(n, cap))
                })
                .try_reduce(|| empty.clone(), FrequencyTable::merge)?;
            table.rng = Some(format!("{RNG_NAME}:{seed}"));
            table
        }
    };
    Ok(table)
}
