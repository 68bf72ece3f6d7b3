//! CSV checkpoints for [`FrequencyTable`].
//!
//! ```text
//! #n_states=3
//! #step_cap=21
//! #total=7529536
//! #halting=2242064
//! #rng=chacha8-stream:42      (sampled tables only)
//! 0,123
//! 00,45
//! ```
//!
//! Rows are sorted by output string. Lines starting with `# ` (hash, space)
//! are free-form comments and are skipped on read.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use thiserror::Error;

use crate::enumeration::FrequencyTable;

#[derive(Debug, Error)]
pub enum CheckpointError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("invalid table: {0}")]
    Invariant(String),
}

/// Canonical text form of a table.
pub fn to_csv(t: &FrequencyTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "#n_states={}", t.n_states);
    let _ = writeln!(out, "#step_cap={}", t.step_cap);
    let _ = writeln!(out, "#total={}", t.total);
    let _ = writeln!(out, "#halting={}", t.halting);
    if let Some(rng) = &t.rng {
        let _ = writeln!(out, "#rng={rng}");
    }
    for (s, c) in &t.counts {
        let _ = writeln!(out, "{s},{c}");
    }
    out
}

pub fn from_csv(text: &str) -> Result<FrequencyTable, CheckpointError> {
    let mut n_states = None;
    let mut step_cap = None;
    let mut total = None;
    let mut halting = None;
    let mut rng = None;
    let mut counts = BTreeMap::new();
    let mut last: Option<&str> = None;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let bad = |msg: String| CheckpointError::Malformed { line, msg };
        if raw.is_empty() || raw.starts_with("# ") || raw == "#" {
            continue;
        }
        if let Some(header) = raw.strip_prefix('#') {
            let (key, value) = header
                .split_once('=')
                .ok_or_else(|| bad(format!("header without '=': {raw:?}")))?;
            let int = || {
                value
                    .parse::<u64>()
                    .map_err(|e| bad(format!("bad value for {key}: {e}")))
            };
            let slot = match key {
                "n_states" => &mut n_states,
                "step_cap" => &mut step_cap,
                "total" => &mut total,
                "halting" => &mut halting,
                "rng" => {
                    if rng.replace(value.to_string()).is_some() {
                        return Err(bad("duplicate rng header".into()));
                    }
                    continue;
                }
                _ => return Err(bad(format!("unknown header {key:?}"))),
            };
            if slot.replace(int()?).is_some() {
                return Err(bad(format!("duplicate {key} header")));
            }
            continue;
        }

        let (s, c) = raw
            .split_once(',')
            .ok_or_else(|| bad(format!("expected <string>,<count>, got {raw:?}")))?;
        if s.is_empty() || !s.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(bad(format!("output {s:?} is not a non-empty binary string")));
        }
        if c.starts_with('-') {
            return Err(bad(format!("negative count {c}")));
        }
        let c: u64 = c
            .parse()
            .map_err(|e| bad(format!("bad count {c:?}: {e}")))?;
        if c == 0 {
            return Err(bad(format!("zero count for {s}")));
        }
        if last.is_some_and(|prev| prev >= s) {
            return Err(bad(format!("row {s} is out of order or duplicated")));
        }
        last = Some(s);
        counts.insert(s.to_string(), c);
    }

    let missing = |k: &str| CheckpointError::Invariant(format!("missing #{k} header"));
    let t = FrequencyTable {
        n_states: n_states.ok_or_else(|| missing("n_states"))? as usize,
        step_cap: step_cap.ok_or_else(|| missing("step_cap"))?,
        total: total.ok_or_else(|| missing("total"))?,
        halting: halting.ok_or_else(|| missing("halting"))?,
        rng,
        counts,
    };
    t.check().map_err(CheckpointError::Invariant)?;
    Ok(t)
}

pub fn write(t: &FrequencyTable, path: impl AsRef<Path>) -> Result<(), CheckpointError> {
    write_with_comment(t, path, None)
}

/// Writes the table preceded by an optional `# ` comment line.
pub fn write_with_comment(
    t: &FrequencyTable,
    path: impl AsRef<Path>,
    comment: Option<&str>,
) -> Result<(), CheckpointError> {
    let path = path.as_ref();
    let mut text = String::new();
    if let Some(c) = comment {
        let _ = writeln!(text, "# {c}");
    }
    text.push_str(&to_csv(t));
    fs::write(path, text).map_err(|source| CheckpointError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read(path: impl AsRef<Path>) -> Result<FrequencyTable, CheckpointError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| CheckpointError::Io {
        path: path.display().to_string(),
        source,
    })?;
    from_csv(&text)
}
