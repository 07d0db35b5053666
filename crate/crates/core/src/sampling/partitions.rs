//! Exact enumeration of integer partitions, used to stratify unitary
//! sampling by block structure.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest total whose partitions are enumerated.  25 covers every
/// supported `dim * env` product and keeps the table small (1958 entries at
/// the top size).
pub const MAX_TOTAL: usize = 25;

static TABLE: OnceLock<Vec<Vec<Vec<usize>>>> = OnceLock::new();

fn descend(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        current.push(part);
        descend(remaining - part, part, current, out);
        current.pop();
    }
}

fn build_table() -> Vec<Vec<Vec<usize>>> {
    (0..=MAX_TOTAL)
        .map(|total| {
            let mut out = Vec::new();
            descend(total, total, &mut Vec::new(), &mut out);
            out
        })
        .collect()
}

/// All partitions of `total` into descending positive parts, in a fixed
/// deterministic order starting from the single-part partition `[total]`
/// and ending at all ones.
pub fn partitions(total: usize) -> Result<&'static [Vec<usize>]> {
    if total == 0 || total > MAX_TOTAL {
        return Err(Error::Unsupported {
            context: format!("partitions are enumerated for totals 1..={MAX_TOTAL}, got {total}"),
        });
    }
    Ok(&TABLE.get_or_init(build_table)[total])
}
