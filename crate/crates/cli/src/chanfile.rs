//! On-disk JSON description of a channel's Kraus operators.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "dim_in": 2,
//!   "dim_out": 2,
//!   "label": "my channel",
//!   "kraus": [ [ [[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0]] ], ... ]
//! }
//! ```
//!
//! `kraus[i][row][col]` is a `[re, im]` pair; every operator must be
//! `dim_out` rows by `dim_in` columns, and together the operators must
//! resolve the identity within the given tolerance — a file describing a
//! non-trace-preserving map is rejected with its residual.

use std::path::Path;

use mapent_core::{ComplexMatrix, KrausChannel};
use num_complex::Complex64;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
pub struct ChannelFile {
    pub schema_version: u32,
    pub dim_in: usize,
    pub dim_out: usize,
    #[serde(default)]
    pub label: Option<String>,
    pub kraus: Vec<Vec<Vec<[f64; 2]>>>,
}

/// Reads a channel file, checking shapes and trace preservation.
pub fn load(path: &Path, tp_tol: f64) -> Result<(Option<String>, KrausChannel), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file: ChannelFile = serde_json::from_str(&text)
        .map_err(|e| format!("cannot parse {}: {e}", path.display()))?;
    if file.schema_version != 1 {
        return Err(format!(
            "{}: unsupported schema_version {} (expected 1)",
            path.display(),
            file.schema_version
        ));
    }
    if file.kraus.is_empty() {
        return Err(format!("{}: no Kraus operators", path.display()));
    }
    let mut operators = Vec::with_capacity(file.kraus.len());
    for (i, rows) in file.kraus.iter().enumerate() {
        if rows.len() != file.dim_out || rows.iter().any(|r| r.len() != file.dim_in) {
            return Err(format!(
                "{}: operator {i} is not {} x {}",
                path.display(),
                file.dim_out,
                file.dim_in
            ));
        }
        operators.push(ComplexMatrix::from_fn(file.dim_out, file.dim_in, |r, c| {
            let [re, im] = rows[r][c];
            Complex64::new(re, im)
        }));
    }
    let channel = KrausChannel::new(operators).map_err(|e| format!("{}: {e}", path.display()))?;
    channel
        .validate(tp_tol)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((file.label, channel))
}
