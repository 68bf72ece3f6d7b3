//! Elementary cellular automata on a circular row.

use super::CaError;

/// A radius-1 two-state rule, identified by its Wolfram number
/// `sum of 2^(4a+2b+c) * f(a,b,c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EcaRule {
    number: u8,
}

impl EcaRule {
    pub fn decode(number: u32) -> Result<Self, CaError> {
        u8::try_from(number)
            .map(|number| Self { number })
            .map_err(|_| CaError::RuleOutOfRange(number))
    }

    /// Builds the rule whose local map is `f`.
    pub fn from_map(f: impl Fn(u8, u8, u8) -> u8) -> Self {
        let mut number = 0u8;
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    if f(a, b, c) & 1 == 1 {
                        number |= 1 << (4 * a + 2 * b + c);
                    }
                }
            }
        }
        Self { number }
    }

    pub fn number(self) -> u8 {
        self.number
    }

    /// Local map `f(left, center, right)`.
    #[inline]
    pub fn apply(self, left: u8, center: u8, right: u8) -> u8 {
        (self.number >> (4 * left + 2 * center + right)) & 1
    }

    /// One synchronous update of a circular row.
    pub fn step(self, row: &[u8], next: &mut Vec<u8>) {
        let w = row.len();
        next.clear();
        next.extend((0..w).map(|i| {
            self.apply(row[(i + w - 1) % w], row[i], row[(i + 1) % w])
        }));
    }
}

/// Space-time diagram: `steps + 1` rows starting with `initial`.
pub fn eca_evolve(rule: EcaRule, initial: &[u8], steps: usize) -> Result<Vec<Vec<u8>>, CaError> {
    if initial.len() < 3 {
        return Err(CaError::RowTooShort(initial.len()));
    }
    if let Some(&bad) = initial.iter().find(|&&c| c > 1) {
        return Err(CaError::BadParams(format!("cell state {bad} is not 0 or 1")));
    }
    let mut rows = Vec::with_capacity(steps + 1);
    rows.push(initial.to_vec());
    for t in 0..steps {
        let mut next = Vec::with_capacity(initial.len());
        rule.step(&rows[t], &mut next);
        rows.push(next);
    }
    Ok(rows)
}
