//! CSV ingestion.
//!
//! Two layouts are understood, both with `.`-decimal floats regardless of
//! locale and an optional header row (detected by a non-numeric first
//! field):
//!
//! * **point clouds** — `x,y[,mass]`; when the mass column is present it is
//!   normalized to sum to one, otherwise atoms share mass equally;
//! * **labeled rows** — `label,v1,...,vD`, one feature vector per record,
//!   every record the same width.

use std::path::Path;

use crate::geometry::Point2;
use crate::ot::DiscreteMeasure;

use super::DataError;

/// A labeled table of feature rows, all of the same width.
#[derive(Debug, Clone, PartialEq)]
pub struct RawDataset {
    pub labels: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl RawDataset {
    /// Validates that `rows` is a non-empty rectangle of finite values and
    /// that `labels` (when non-empty) matches it in length.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self, DataError> {
        if rows.is_empty() {
            return Err(DataError::Empty("dataset has no rows"));
        }
        let want = rows[0].len();
        if want == 0 {
            return Err(DataError::Empty("rows have no columns"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != want {
                return Err(DataError::RaggedRow {
                    row: i,
                    got: row.len(),
                    want,
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(DataError::NonFinite { row: i });
            }
        }
        if !labels.is_empty() && labels.len() != rows.len() {
            return Err(DataError::RaggedRow {
                row: labels.len(),
                got: labels.len(),
                want: rows.len(),
            });
        }
        Ok(Self { labels, rows })
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows[0].len()
    }
}

fn parse_field(raw: &str, line: usize) -> Result<f64, DataError> {
    let v: f64 = raw.trim().parse().map_err(|_| DataError::Parse {
        line,
        msg: format!("expected a number, found {raw:?}"),
    })?;
    if !v.is_finite() {
        return Err(DataError::Parse {
            line,
            msg: format!("non-finite value {raw:?}"),
        });
    }
    Ok(v)
}

fn open_reader(path: &Path) -> Result<csv::Reader<std::fs::File>, DataError> {
    Ok(csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)?)
}

fn looks_like_header(record: &csv::StringRecord) -> bool {
    record
        .iter()
        .skip(1)
        .any(|f| f.trim().parse::<f64>().is_err())
        || record
            .get(0)
            .is_some_and(|f| matches!(f.trim().to_ascii_lowercase().as_str(), "x" | "label"))
}

/// Reads a point cloud in `x,y[,mass]` layout into a normalized measure.
pub fn read_measure_csv(path: &Path) -> Result<DiscreteMeasure, DataError> {
    let mut rdr = open_reader(path)?;
    let mut points = Vec::new();
    let mut masses: Vec<f64> = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let record = record?;
        if idx == 0 && looks_like_header(&record) {
            continue;
        }
        let line = idx + 1;
        match record.len() {
            2 | 3 => {}
            got => {
                return Err(DataError::Parse {
                    line,
                    msg: format!("expected x,y[,mass], found {got} fields"),
                })
            }
        }
        let x = parse_field(&record[0], line)?;
        let y = parse_field(&record[1], line)?;
        points.push(Point2::new(x, y));
        if record.len() == 3 {
            if masses.len() + 1 != points.len() {
                return Err(DataError::Parse {
                    line,
                    msg: "mass column must be present on every row or on none".into(),
                });
            }
            let m = parse_field(&record[2], line)?;
            if m <= 0.0 {
                return Err(DataError::Parse {
                    line,
                    msg: format!("mass must be positive, got {m}"),
                });
            }
            masses.push(m);
        } else if !masses.is_empty() {
            return Err(DataError::Parse {
                line,
                msg: "mass column must be present on every row or on none".into(),
            });
        }
    }
    if points.is_empty() {
        return Err(DataError::Empty("no data rows in point-cloud CSV"));
    }
    let measure = if masses.is_empty() {
        DiscreteMeasure::uniform_on_points(&points)?
    } else {
        let total: f64 = masses.iter().sum();
        for m in &mut masses {
            *m /= total;
        }
        DiscreteMeasure::new(&points, &masses)?
    };
    Ok(measure)
}

/// Reads a labeled feature table in `label,v1,...,vD` layout.
pub fn read_rows_csv(path: &Path) -> Result<RawDataset, DataError> {
    let mut rdr = open_reader(path)?;
    let mut labels = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut want: Option<usize> = None;
    for (idx, record) in rdr.records().enumerate() {
        let record = record?;
        if idx == 0 && looks_like_header(&record) {
            continue;
        }
        let line = idx + 1;
        if record.len() < 2 {
            return Err(DataError::Parse {
                line,
                msg: format!("expected label,v1,...,vD, found {} fields", record.len()),
            });
        }
        let width = record.len() - 1;
        match want {
            None => want = Some(width),
            Some(w) if w != width => {
                return Err(DataError::RaggedRow {
                    row: rows.len(),
                    got: width,
                    want: w,
                })
            }
            Some(_) => {}
        }
        labels.push(record[0].to_string());
        let mut row = Vec::with_capacity(width);
        for field in record.iter().skip(1) {
            row.push(parse_field(field, line)?);
        }
        rows.push(row);
    }
    RawDataset::new(labels, rows)
}

/// Reads a single numeric column (extra columns are rejected).
pub fn read_column_csv(path: &Path) -> Result<Vec<f64>, DataError> {
    let mut rdr = open_reader(path)?;
    let mut values = Vec::new();
    for (idx, record) in rdr.records().enumerate() {
        let record = record?;
        if idx == 0 && record.len() == 1 && record[0].trim().parse::<f64>().is_err() {
            continue;
        }
        let line = idx + 1;
        if record.len() != 1 {
            return Err(DataError::Parse {
                line,
                msg: format!("expected a single column, found {} fields", record.len()),
            });
        }
        values.push(parse_field(&record[0], line)?);
    }
    if values.is_empty() {
        return Err(DataError::Empty("no data rows in column CSV"));
    }
    Ok(values)
}
