//! Frame files.
//!
//! JSON: `{"dim": n, "vectors": [[...], ...]}` with no other keys.
//! CSV: one vector per line, comma separated, no header.

use std::fs;
use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::error::FrameError;
use crate::frame::Frame;

#[derive(Debug, Error)]
pub enum FrameIoError {
    #[error("format error at {location}: {message}")]
    Format { location: String, message: String },

    #[error("dimension mismatch at {location}: expected {expected} coordinates, found {found}")]
    DimensionMismatch {
        location: String,
        expected: usize,
        found: usize,
    },

    #[error("input contains no vectors")]
    EmptyInput,

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Frame(#[from] FrameError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameFormat {
    Json,
    Csv,
}

impl FrameFormat {
    /// CSV for a `.csv` extension, JSON otherwise.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => FrameFormat::Csv,
            _ => FrameFormat::Json,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FrameFile {
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

pub fn parse_json(text: &str) -> Result<Frame, FrameIoError> {
    let file: FrameFile = serde_json::from_str(text).map_err(|e| FrameIoError::Format {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    if file.dim == 0 {
        return Err(FrameIoError::Format {
            location: "field \"dim\"".into(),
            message: "dimension must be positive".into(),
        });
    }
    if file.vectors.is_empty() {
        return Err(FrameIoError::EmptyInput);
    }
    if let Some((j, v)) = file
        .vectors
        .iter()
        .enumerate()
        .find(|(_, v)| v.len() != file.dim)
    {
        return Err(FrameIoError::DimensionMismatch {
            location: format!("vector {}", j + 1),
            expected: file.dim,
            found: v.len(),
        });
    }
    Ok(Frame::new(file.dim, file.vectors)?)
}

pub fn parse_csv(text: &str) -> Result<Frame, FrameIoError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut vectors: Vec<Vec<f64>> = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record.map_err(|e| FrameIoError::Format {
            location: format!("row {}", row + 1),
            message: e.to_string(),
        })?;
        let vector = record
            .iter()
            .enumerate()
            .map(|(col, field)| {
                field.parse::<f64>().map_err(|e| FrameIoError::Format {
                    location: format!("row {}, field {}", row + 1, col + 1),
                    message: format!("{field:?}: {e}"),
                })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        if let Some(first) = vectors.first() {
            if vector.len() != first.len() {
                return Err(FrameIoError::DimensionMismatch {
                    location: format!("row {}", row + 1),
                    expected: first.len(),
                    found: vector.len(),
                });
            }
        }
        vectors.push(vector);
    }
    let dim = match vectors.first() {
        Some(v) => v.len(),
        None => return Err(FrameIoError::EmptyInput),
    };
    Ok(Frame::new(dim, vectors)?)
}

pub fn parse_frame(text: &str, format: FrameFormat) -> Result<Frame, FrameIoError> {
    match format {
        FrameFormat::Json => parse_json(text),
        FrameFormat::Csv => parse_csv(text),
    }
}

/// Reads a frame file; the format comes from `format` or else the extension.
pub fn read_frame(path: &Path, format: Option<FrameFormat>) -> Result<Frame, FrameIoError> {
    let text = fs::read_to_string(path).map_err(|source| FrameIoError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_frame(
        &text,
        format.unwrap_or_else(|| FrameFormat::from_path(path)),
    )
}

pub fn to_json(frame: &Frame) -> String {
    let mut s = serde_json::to_string_pretty(frame).expect("frames serialize");
    s.push('\n');
    s
}

pub fn to_csv(frame: &Frame) -> String {
    let mut out = String::new();
    for v in frame.vectors() {
        let line: Vec<String> = v.iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn format_frame(frame: &Frame, format: FrameFormat) -> String {
    match format {
        FrameFormat::Json => to_json(frame),
        FrameFormat::Csv => to_csv(frame),
    }
}

pub fn write_frame(path: &Path, frame: &Frame) -> Result<(), FrameIoError> {
    fs::write(path, format_frame(frame, FrameFormat::from_path(path))).map_err(|source| {
        FrameIoError::Io {
            path: path.display().to_string(),
            source,
        }
    })
}
