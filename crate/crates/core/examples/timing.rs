//! Times a sweep and optionally saves its checkpoint:
//! `timing <states> <cap> [samples] [out.csv]`.
use algoprob::{checkpoint, enumeration::*};
use std::time::Instant;

fn main() {
    let a: Vec<String> = std::env::args().collect();
    let n: usize = a[1].parse().unwrap();
    let cap: u64 = a[2].parse().unwrap();
    let spec = match a.get(3) {
        Some(c) => SweepSpec::sampled(n, c.parse().unwrap(), 42, cap),
        None => SweepSpec::exhaustive(n, cap).unwrap(),
    };
    let t0 = Instant::now();
    let t = sweep(&spec).unwrap();
    eprintln!("{:?}: {} halting of {}, {} outputs", t0.elapsed(), t.halting, t.total, t.counts.len());
    if let Some(out) = a.get(4) {
        checkpoint::write(&t, out).unwrap();
    }
}
