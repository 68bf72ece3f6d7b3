//! Output-frequency estimates of algorithmic probability.
//!
//! `Pr_n(s)` is approximated by the fraction of halting `n`-state machines
//! whose output is `s` (all output lengths pooled in the denominator), and
//! the coding-theorem complexity estimate is `K(s) = -log2 Pr_n(s)` bits.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::enumeration::FrequencyTable;
use crate::structure::{complement, reverse};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DistributionError {
    #[error("table has no halting machines")]
    EmptyTable,
    #[error("probability {0} is outside (0, 1]")]
    BadProbability(f64),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("need at least 2 common strings of length {length}, found {found}")]
    TooFewCommon { length: usize, found: usize },
    #[error("sequences have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("rank correlation undefined: one ranking is constant")]
    ConstantRanking,
    #[error("reversal symmetry broken in an exhaustive table: {0}")]
    ReversalViolation(String),
}

pub fn probability(t: &FrequencyTable, s: &str) -> Result<f64, DistributionError> {
    if t.halting == 0 {
        return Err(DistributionError::EmptyTable);
    }
    Ok(t.count(s) as f64 / t.halting as f64)
}

/// `-log2 p`, the complexity in bits assigned to an outcome of probability `p`.
pub fn coding_complexity(p: f64) -> Result<f64, DistributionError> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(DistributionError::BadProbability(p));
    }
    Ok(0.0 - p.log2())
}

/// The table obtained by also running every machine on an all-1 tape.
///
/// Swapping the symbols 0 and 1 in a machine's reads and writes is a
/// bijection of the machine space, and the swapped machine on a blank-0 tape
/// behaves exactly like the original on a blank-1 tape with complemented
/// output. So the blank-1 outputs are the complements of the blank-0
/// outputs: each string's count gains its complement's count and the
/// totals double.
pub fn complement_completed(t: &FrequencyTable) -> FrequencyTable {
    let mut counts = t.counts.clone();
    for (s, &c) in &t.counts {
        *counts.entry(complement(s)).or_insert(0) += c;
    }
    FrequencyTable {
        n_states: t.n_states,
        step_cap: t.step_cap,
        total: 2 * t.total,
        halting: 2 * t.halting,
        rng: t.rng.clone(),
        counts,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StringRecord {
    pub string: String,
    pub count: u64,
    pub probability: f64,
    pub complexity: f64,
}

/// Per-string probabilities and complexities of one table.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionReport {
    pub n_states: usize,
    pub halting: u64,
    /// Sorted by (length, descending probability, string).
    pub records: Vec<StringRecord>,
}

fn report_order(a: &StringRecord, b: &StringRecord) -> Ordering {
    a.string
        .len()
        .cmp(&b.string.len())
        .then(b.count.cmp(&a.count))
        .then_with(|| a.string.cmp(&b.string))
}

impl DistributionReport {
    pub fn from_table(t: &FrequencyTable) -> Result<Self, DistributionError> {
        if t.halting == 0 {
            return Err(DistributionError::EmptyTable);
        }
        let mut records = t
            .counts
            .iter()
            .map(|(s, &count)| {
                let probability = count as f64 / t.halting as f64;
                Ok(StringRecord {
                    string: s.clone(),
                    count,
                    probability,
                    complexity: coding_complexity(probability)?,
                })
            })
            .collect::<Result<Vec<_>, DistributionError>>()?;
        records.sort_by(report_order);
        Ok(Self {
            n_states: t.n_states,
            halting: t.halting,
            records,
        })
    }

    /// Records of exactly `length` cells, most probable first.
    pub fn by_length(&self, length: usize) -> &[StringRecord] {
        let start = self.records.partition_point(|r| r.string.len() < length);
        let end = self.records.partition_point(|r| r.string.len() <= length);
        &self.records[start..end]
    }

    pub fn get(&self, s: &str) -> Option<&StringRecord> {
        self.by_length(s.len()).iter().find(|r| r.string == s)
    }

    pub fn to_csv(&self) -> String {
        rows_to_csv(&self.records)
    }
}

/// `<string>,<count>,<probability>,<complexity_bits>` rows; probability to 6
/// significant digits, complexity to 4 decimals.
pub fn rows_to_csv(records: &[StringRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{:.5e},{:.4}",
            r.string, r.count, r.probability, r.complexity
        );
    }
    out
}

/// The `k` most probable strings of exactly `length` cells; ties go to the
/// lexicographically smaller string.
pub fn top_k(
    t: &FrequencyTable,
    length: usize,
    k: usize,
) -> Result<Vec<(String, f64)>, DistributionError> {
    if k == 0 {
        return Err(DistributionError::ZeroK);
    }
    if t.halting == 0 {
        return Err(DistributionError::EmptyTable);
    }
    let mut rows: Vec<(&String, u64)> = t
        .counts
        .iter()
        .filter(|(s, _)| s.len() == length)
        .map(|(s, &c)| (s, c))
        .collect();
    rows.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    Ok(rows
        .into_iter()
        .take(k)
        .map(|(s, c)| (s.clone(), c as f64 / t.halting as f64))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryEntry {
    pub string: String,
    pub count: u64,
    pub reversed: u64,
    pub complemented: u64,
}

impl SymmetryEntry {
    pub fn reversal_ok(&self) -> bool {
        self.count == self.reversed
    }

    pub fn complement_ok(&self) -> bool {
        self.count == self.complemented
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryReport {
    /// Set for exhaustive sweeps of a whole machine space, where reversal
    /// symmetry is exact and any mismatch is an error.
    pub strict: bool,
    pub entries: Vec<SymmetryEntry>,
}

impl SymmetryReport {
    pub fn reversal_violations(&self) -> impl Iterator<Item = &SymmetryEntry> {
        self.entries.iter().filter(|e| !e.reversal_ok())
    }

    pub fn complement_findings(&self) -> impl Iterator<Item = &SymmetryEntry> {
        self.entries.iter().filter(|e| !e.complement_ok())
    }

    /// Fails on reversal mismatches in strict reports; otherwise always Ok.
    pub fn verify(&self) -> Result<(), DistributionError> {
        if !self.strict {
            return Ok(());
        }
        match self.reversal_violations().next() {
            None => Ok(()),
            Some(e) => Err(DistributionError::ReversalViolation(format!(
                "count({})={} but count(reverse)={}",
                e.string, e.count, e.reversed
            ))),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let rev: Vec<_> = self.reversal_violations().collect();
        let comp: Vec<_> = self.complement_findings().collect();
        let _ = writeln!(
            out,
            "# symmetry: {} strings, {} reversal violations ({}), {} complement mismatches",
            self.entries.len(),
            rev.len(),
            if self.strict { "exact table" } else { "sampled or partial table" },
            comp.len()
        );
        for e in rev {
            let _ = writeln!(
                out,
                "reversal,{},{},{},{}",
                e.string,
                reverse(&e.string),
                e.count,
                e.reversed
            );
        }
        for e in comp {
            let _ = writeln!(
                out,
                "complement,{},{},{},{}",
                e.string,
                complement(&e.string),
                e.count,
                e.complemented
            );
        }
        out
    }
}

pub fn symmetry_report(t: &FrequencyTable) -> SymmetryReport {
    let entries = t
        .counts
        .iter()
        .map(|(s, &count)| SymmetryEntry {
            string: s.clone(),
            count,
            reversed: t.count(&reverse(s)),
            complemented: t.count(&complement(s)),
        })
        .collect();
    SymmetryReport {
        strict: t.is_complete(),
        entries,
    }
}

/// Ranks with ties sharing their average position (1-based).
pub fn fractional_ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman correlation: Pearson correlation of fractional ranks.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64, DistributionError> {
    if xs.len() != ys.len() {
        return Err(DistributionError::LengthMismatch(xs.len(), ys.len()));
    }
    let rx = fractional_ranks(xs);
    let ry = fractional_ranks(ys);
    let n = rx.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(DistributionError::ConstantRanking);
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Spearman correlation of two reports over their common strings of `length`.
pub fn rank_correlation(
    a: &DistributionReport,
    b: &DistributionReport,
    length: usize,
) -> Result<f64, DistributionError> {
    let theirs: HashMap<&str, f64> = b
        .by_length(length)
        .iter()
        .map(|r| (r.string.as_str(), r.probability))
        .collect();
    let (xs, ys): (Vec<f64>, Vec<f64>) = a
        .by_length(length)
        .iter()
        .filter_map(|r| theirs.get(r.string.as_str()).map(|&p| (r.probability, p)))
        .unzip();
    if xs.len() < 2 {
        return Err(DistributionError::TooFewCommon {
            length,
            found: xs.len(),
        });
    }
    spearman(&xs, &ys)
}
