//! CSV emission and ingestion.
//!
//! Values are written in scientific notation with 17 significant digits,
//! which round-trips every finite `f64`.

use std::io::Write;
use std::path::Path;

use prabhakar::GridFunction;

use crate::CliError;

pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<f64>>,
    notes: Vec<String>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// A trailing `# ` comment line.
    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn write_to(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "{}", self.header.join(","))?;
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format_value(*v)).collect();
            writeln!(out, "{}", cells.join(","))?;
        }
        for note in &self.notes {
            writeln!(out, "# {note}")?;
        }
        Ok(())
    }
}

pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

/// A sampled function from CSV: first column `t`, second column the value.
/// Further columns, `#` comment lines and a non-numeric header are ignored.
pub fn read_grid(path: &Path) -> Result<GridFunction, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut ts = Vec::new();
    let mut values = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let (Some(t), Some(v)) = (record.get(0), record.get(1)) else {
            return Err(CliError::Usage(format!("{}: row {} needs two columns", path.display(), line + 1)));
        };
        match (t.parse::<f64>(), v.parse::<f64>()) {
            (Ok(t), Ok(v)) => {
                ts.push(t);
                values.push(v);
            }
            _ if line == 0 => continue,
            _ => {
                return Err(CliError::Usage(format!(
                    "{}: row {} is not numeric",
                    path.display(),
                    line + 1
                )))
            }
        }
    }
    if ts.len() < 3 {
        return Err(CliError::Usage(format!("{}: need at least 3 samples", path.display())));
    }
    let n = ts.len() - 1;
    let t_max = ts[n];
    let h = t_max / n as f64;
    let uniform = ts
        .iter()
        .enumerate()
        .all(|(j, t)| (t - j as f64 * h).abs() <= 1e-9 * t_max.abs().max(1.0));
    if !uniform {
        return Err(CliError::Usage(format!(
            "{}: samples must sit on a uniform grid starting at t = 0",
            path.display()
        )));
    }
    Ok(GridFunction::new(t_max, values)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_round_trip() {
        for v in [0.1, -1.0 / 3.0, 6.02214076e23, f64::MIN_POSITIVE, 2.0_f64.sqrt()] {
            assert_eq!(format_value(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn reads_own_output() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        let mut table = Table::new(&["t", "value", "valid"]);
        for j in 0..=4 {
            let t = j as f64 * 0.25;
            table.push(vec![t, t.sin(), 1.0]);
        }
        table.note("trailing comment");
        let mut buf = Vec::new();
        table.write_to(&mut buf).unwrap();
        std::fs::write(&path, buf).unwrap();
        let g = read_grid(&path).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.values()[3], 0.75_f64.sin());
    }

    #[test]
    fn rejects_ragged_grid() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        std::fs::write(&path, "t,v\n0,1\n0.1,1\n0.3,1\n").unwrap();
        assert!(read_grid(&path).is_err());
    }
}
