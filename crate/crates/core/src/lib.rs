//! Estimates of algorithmic probability from the output frequencies of
//! small two-symbol Turing machines, with string-structure tools and
//! discrete pattern-formation automata.
//!
//! * [`tm`]: machine formalism, index encoding, blank-tape execution.
//! * [`enumeration`]: exhaustive and sampled sweeps into mergeable tables.
//! * [`checkpoint`]: CSV persistence of frequency tables.
//! * [`distribution`]: probabilities, `-log2` complexities, rankings, symmetry checks.
//! * [`structure`]: Hamming distance, reverse/complement classes, run-length index.
//! * [`ca`]: elementary CA, Young's activator–inhibitor CA, precipitation CA, PGM/PPM output.

pub mod ca;
pub mod checkpoint;
pub mod cli;
pub mod distribution;
pub mod enumeration;
pub mod structure;
pub mod tm;
