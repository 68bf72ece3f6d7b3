//! Hamming distance, reverse/complement orbits, and a run-length
//! compressibility index for binary strings.

use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("{0:?} is not a binary string")]
    NotBinary(String),
    #[error("empty string")]
    Empty,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

/// Accepts non-empty strings over {0, 1}.
pub fn validate(s: &str) -> Result<(), StructureError> {
    if s.is_empty() {
        return Err(StructureError::Empty);
    }
    if !s.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(StructureError::NotBinary(s.to_string()));
    }
    Ok(())
}

pub fn reverse(s: &str) -> String {
    s.chars().rev().collect()
}

pub fn complement(s: &str) -> String {
    s.chars()
        .map(|c| match c {
            '0' => '1',
            '1' => '0',
            other => other,
        })
        .collect()
}

pub fn hamming(s: &str, t: &str) -> Result<usize, StructureError> {
    validate(s)?;
    validate(t)?;
    if s.len() != t.len() {
        return Err(StructureError::LengthMismatch(s.len(), t.len()));
    }
    Ok(s.bytes().zip(t.bytes()).filter(|(a, b)| a != b).count())
}

/// Orbit of a string under reversal and complementation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryClass {
    /// Lexicographically smallest member.
    pub representative: String,
    pub members: BTreeSet<String>,
}

impl SymmetryClass {
    pub fn contains(&self, s: &str) -> bool {
        self.members.contains(s)
    }
}

pub fn symmetry_class(s: &str) -> Result<SymmetryClass, StructureError> {
    validate(s)?;
    let r = reverse(s);
    let c = complement(s);
    let rc = reverse(&c);
    let members: BTreeSet<String> = [s.to_string(), r, c, rc].into_iter().collect();
    let representative = members.first().cloned().expect("class is non-empty");
    Ok(SymmetryClass {
        representative,
        members,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassDistance {
    /// Fewest bit flips that land on another member of the class.
    pub distance: usize,
    /// The class has no other member; `distance` is then 0.
    pub singleton: bool,
}

pub fn min_class_distance(s: &str) -> Result<ClassDistance, StructureError> {
    let class = symmetry_class(s)?;
    let nearest = class
        .members
        .iter()
        .filter(|t| t.as_str() != s)
        .map(|t| hamming(s, t))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .min();
    Ok(match nearest {
        Some(distance) => ClassDistance {
            distance,
            singleton: false,
        },
        None => ClassDistance {
            distance: 0,
            singleton: true,
        },
    })
}

/// Maximal runs per symbol: `runs / len`, in (0, 1]. Lower is more compressible.
pub fn rle_index(s: &str) -> Result<f64, StructureError> {
    validate(s)?;
    let b = s.as_bytes();
    let runs = 1 + b.windows(2).filter(|w| w[0] != w[1]).count();
    Ok(runs as f64 / b.len() as f64)
}
