//! Two-symbol Turing machines in the (4n+2)^(2n) formalism.
//!
//! A machine with `n` states has `2n` transition slots, one per
//! (state, read symbol) pair. Each slot holds one of `4n + 2` actions: a
//! write/move/next-state triple or a halting write. Machines are numbered by
//! reading the slots as a mixed-radix integer in base `4n + 2`, least
//! significant digit first, with slot order (1,0), (1,1), (2,0), (2,1), ...
//!
//! Execution always starts in state 1 with the head at offset 0 of an
//! all-blank (all-0) tape.

use std::fmt;

use thiserror::Error;

/// Largest state count whose index space fits in a `u64`.
pub const MAX_STATES: usize = 6;

/// Default step caps for `n = 1..=4`: the busy-beaver step bounds S(n).
///
/// The values for `n <= 3` are checked by exhaustive search in the test
/// suite; the `n = 4` value is the known S(4).
pub const DEFAULT_STEP_CAPS: [u64; 4] = [1, 6, 21, 107];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TmError {
    #[error("state count must be at least 1")]
    NoStates,
    #[error("machine count (4*{0}+2)^(2*{0}) overflows a 64-bit integer")]
    CountOverflow(usize),
    #[error("machine index {index} out of range for {n_states} states (count {count})")]
    IndexOutOfRange {
        n_states: usize,
        index: u64,
        count: u64,
    },
    #[error("transition table has {got} entries, expected {expected}")]
    TableLength { expected: usize, got: usize },
    #[error("slot {slot}: {reason}")]
    IllegalAction { slot: usize, reason: String },
    #[error("step cap must be at least 1")]
    ZeroStepCap,
}

/// The default step cap for `n` states, if one is known.
pub fn default_step_cap(n_states: usize) -> Option<u64> {
    n_states
        .checked_sub(1)
        .and_then(|i| DEFAULT_STEP_CAPS.get(i))
        .copied()
}

/// Number of distinct `n`-state machines, `(4n + 2)^(2n)`.
pub fn machine_count(n_states: usize) -> Result<u64, TmError> {
    if n_states == 0 {
        return Err(TmError::NoStates);
    }
    let base = u64::try_from(n_states)
        .ok()
        .and_then(|n| n.checked_mul(4))
        .and_then(|b| b.checked_add(2))
        .ok_or(TmError::CountOverflow(n_states))?;
    let exp = u32::try_from(2 * n_states).map_err(|_| TmError::CountOverflow(n_states))?;
    base.checked_pow(exp)
        .ok_or(TmError::CountOverflow(n_states))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }
}

/// What a machine does on one (state, symbol) slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransitionAction {
    /// Write the symbol and stop without moving.
    Halt { write: u8 },
    /// Write, move one cell, and switch to `next_state` (1-based).
    Step {
        write: u8,
        direction: Direction,
        next_state: u8,
    },
}

impl TransitionAction {
    fn from_digit(digit: u64, n_states: usize) -> Self {
        let step_digits = 4 * n_states as u64;
        if digit >= step_digits {
            return TransitionAction::Halt {
                write: (digit - step_digits) as u8,
            };
        }
        TransitionAction::Step {
            write: (digit % 2) as u8,
            direction: if (digit / 2) % 2 == 0 {
                Direction::Left
            } else {
                Direction::Right
            },
            next_state: 1 + (digit / 4) as u8,
        }
    }

    fn to_digit(self, n_states: usize) -> u64 {
        match self {
            TransitionAction::Halt { write } => 4 * n_states as u64 + write as u64,
            TransitionAction::Step {
                write,
                direction,
                next_state,
            } => {
                let dir = match direction {
                    Direction::Left => 0,
                    Direction::Right => 1,
                };
                4 * (next_state as u64 - 1) + 2 * dir + write as u64
            }
        }
    }

    fn validate(self, n_states: usize) -> Result<(), String> {
        match self {
            TransitionAction::Halt { write } if write > 1 => {
                Err(format!("halting write symbol {write} is not 0 or 1"))
            }
            TransitionAction::Halt { .. } => Ok(()),
            TransitionAction::Step {
                write, next_state, ..
            } => {
                if write > 1 {
                    Err(format!("write symbol {write} is not 0 or 1"))
                } else if next_state == 0 || next_state as usize > n_states {
                    Err(format!("next state {next_state} not in 1..={n_states}"))
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl fmt::Display for TransitionAction {
    /// Busy-beaver notation, e.g. `1RB` or `0-H`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TransitionAction::Halt { write } => write!(f, "{write}-H"),
            TransitionAction::Step {
                write,
                direction,
                next_state,
            } => {
                let d = match direction {
                    Direction::Left => 'L',
                    Direction::Right => 'R',
                };
                write!(f, "{write}{d}{}", (b'A' + next_state - 1) as char)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TuringMachine {
    n_states: usize,
    table: Vec<TransitionAction>,
}

impl TuringMachine {
    /// Builds a machine from its slot table, ordered (1,0), (1,1), (2,0), ...
    pub fn new(n_states: usize, table: Vec<TransitionAction>) -> Result<Self, TmError> {
        if n_states == 0 {
            return Err(TmError::NoStates);
        }
        if n_states > MAX_STATES {
            return Err(TmError::CountOverflow(n_states));
        }
        if table.len() != 2 * n_states {
            return Err(TmError::TableLength {
                expected: 2 * n_states,
                got: table.len(),
            });
        }
        for (slot, action) in table.iter().enumerate() {
            action
                .validate(n_states)
                .map_err(|reason| TmError::IllegalAction { slot, reason })?;
        }
        Ok(Self { n_states, table })
    }

    pub fn decode(n_states: usize, index: u64) -> Result<Self, TmError> {
        let mut m = Self {
            n_states,
            table: Vec::with_capacity(2 * n_states),
        };
        m.decode_in_place(n_states, index)?;
        Ok(m)
    }

    /// Same as [`TuringMachine::decode`] but reuses this machine's storage.
    pub fn decode_in_place(&mut self, n_states: usize, index: u64) -> Result<(), TmError> {
        let count = machine_count(n_states)?;
        if index >= count {
            return Err(TmError::IndexOutOfRange {
                n_states,
                index,
                count,
            });
        }
        let base = 4 * n_states as u64 + 2;
        self.n_states = n_states;
        self.table.clear();
        let mut rest = index;
        for _ in 0..2 * n_states {
            self.table
                .push(TransitionAction::from_digit(rest % base, n_states));
            rest /= base;
        }
        Ok(())
    }

    pub fn encode(&self) -> u64 {
        let base = 4 * self.n_states as u64 + 2;
        self.table
            .iter()
            .rev()
            .fold(0u64, |acc, a| acc * base + a.to_digit(self.n_states))
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn table(&self) -> &[TransitionAction] {
        &self.table
    }

    /// Action for a 1-based state and a read symbol.
    pub fn action(&self, state: usize, read: u8) -> TransitionAction {
        self.table[2 * (state - 1) + read as usize]
    }

    /// The mirror machine: every move direction swapped.
    pub fn flipped(&self) -> Self {
        let table = self
            .table
            .iter()
            .map(|a| match *a {
                TransitionAction::Step {
                    write,
                    direction,
                    next_state,
                } => TransitionAction::Step {
                    write,
                    direction: direction.reversed(),
                    next_state,
                },
                halt => halt,
            })
            .collect();
        Self {
            n_states: self.n_states,
            table,
        }
    }

    /// Cheap test that is false only for machines that provably never halt:
    /// those whose first move keeps them in state 1 (they then read blank
    /// cells in state 1 forever), and those with no halting slot reachable
    /// from state 1 in the state graph.
    pub fn can_halt(&self) -> bool {
        if let TransitionAction::Step { next_state: 1, .. } = self.table[0] {
            return false;
        }
        let mut seen = [false; MAX_STATES + 1];
        let mut stack = [0u8; MAX_STATES + 1];
        let mut top = 1;
        stack[0] = 1;
        seen[1] = true;
        while top > 0 {
            top -= 1;
            let state = stack[top] as usize;
            for read in 0..2 {
                match self.action(state, read) {
                    TransitionAction::Halt { .. } => return true,
                    TransitionAction::Step { next_state, .. } => {
                        if !seen[next_state as usize] {
                            seen[next_state as usize] = true;
                            stack[top] = next_state;
                            top += 1;
                        }
                    }
                }
            }
        }
        false
    }

    /// Runs from a blank tape for at most `step_cap` steps.
    pub fn run(&self, step_cap: u64) -> Result<RunOutcome, TmError> {
        Simulator::new().run(self, step_cap)
    }
}

impl fmt::Display for TuringMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.table.iter().enumerate() {
            if i > 0 {
                f.write_str(if i % 2 == 0 { "_" } else { " " })?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Result of running one machine from a blank tape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub halted: bool,
    pub steps: u64,
    /// Cells from `leftmost` to `rightmost` at halt, as '0'/'1'. Empty when
    /// the machine did not halt.
    pub output: String,
    pub leftmost: i64,
    pub rightmost: i64,
}

/// Summary of an execution held by a [`Simulator`]; the output cells stay
/// in the simulator's tape until the next run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Execution {
    pub halted: bool,
    pub steps: u64,
    pub leftmost: i64,
    pub rightmost: i64,
}

#[derive(Clone, Copy, Default)]
struct Slot {
    write: u8,
    halt: bool,
    right: bool,
    next: u8,
}

/// Reusable tape buffer for running many machines in a row.
#[derive(Debug, Default, Clone)]
pub struct Simulator {
    tape: Vec<u8>,
    origin: usize,
    lo: usize,
    hi: usize,
}

impl Simulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn run(&mut self, m: &TuringMachine, step_cap: u64) -> Result<RunOutcome, TmError> {
        let exec = self.execute(m, step_cap)?;
        let output = if exec.halted {
            self.output()
                .iter()
                .map(|&b| if b == 1 { '1' } else { '0' })
                .collect()
        } else {
            String::new()
        };
        Ok(RunOutcome {
            halted: exec.halted,
            steps: exec.steps,
            output,
            leftmost: exec.leftmost,
            rightmost: exec.rightmost,
        })
    }

    /// Tape cells spanned by the last execution, left to right.
    pub fn output(&self) -> &[u8] {
        &self.tape[self.lo..=self.hi]
    }

    pub fn execute(&mut self, m: &TuringMachine, step_cap: u64) -> Result<Execution, TmError> {
        if step_cap == 0 {
            return Err(TmError::ZeroStepCap);
        }
        let mut slots = [Slot::default(); 2 * MAX_STATES];
        for (slot, action) in slots.iter_mut().zip(&m.table) {
            *slot = match *action {
                TransitionAction::Halt { write } => Slot {
                    write,
                    halt: true,
                    right: false,
                    next: 0,
                },
                TransitionAction::Step {
                    write,
                    direction,
                    next_state,
                } => Slot {
                    write,
                    halt: false,
                    right: direction == Direction::Right,
                    next: next_state - 1,
                },
            };
        }

        // The head can never be more than `step_cap` cells from the origin.
        let span = usize::try_from(step_cap)
            .ok()
            .and_then(|c| c.checked_mul(2))
            .and_then(|c| c.checked_add(1))
            .expect("step cap too large for tape");
        if self.tape.len() < span {
            self.tape = vec![0; span];
        } else {
            self.tape[self.lo..=self.hi].fill(0);
        }
        let origin = (step_cap) as usize;
        self.origin = origin;

        let tape = &mut self.tape[..];
        let mut pos = origin;
        let mut lo = origin;
        let mut hi = origin;
        let mut state = 0usize;
        let mut steps = 0u64;
        let mut halted = false;
        while steps < step_cap {
            let slot = slots[2 * state + tape[pos] as usize];
            steps += 1;
            tape[pos] = slot.write;
            if slot.halt {
                halted = true;
                break;
            }
            if slot.right {
                pos += 1;
                hi = hi.max(pos);
            } else {
                pos -= 1;
                lo = lo.min(pos);
            }
            state = slot.next as usize;
        }
        self.lo = lo;
        self.hi = hi;
        Ok(Execution {
            halted,
            steps,
            leftmost: lo as i64 - origin as i64,
            rightmost: hi as i64 - origin as i64,
        })
    }
}
