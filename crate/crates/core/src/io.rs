//! JSON job files: `{"L": int, "a": int, "b": int, "g": [[re, im], ...], "h"?, "f"?, "phases"?}`.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::lattice::{GaborLattice, Signal};
use crate::synth::PhaseSpec;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("field `{field}`: {message}")]
    Schema {
        field: &'static str,
        message: String,
    },

    #[error(transparent)]
    Domain(#[from] Error),
}

impl InputError {
    pub fn kind(&self) -> &'static str {
        match self {
            InputError::Io { .. } => "io",
            InputError::Json(_) => "malformed_json",
            InputError::Schema { .. } => "schema",
            InputError::Domain(e) => e.kind(),
        }
    }

    fn missing(field: &'static str) -> Self {
        InputError::Schema {
            field,
            message: "required field is missing".into(),
        }
    }
}

#[derive(Deserialize)]
struct RawJob {
    #[serde(rename = "L")]
    len: Option<usize>,
    a: Option<usize>,
    b: Option<usize>,
    g: Option<Vec<[f64; 2]>>,
    h: Option<Vec<[f64; 2]>>,
    f: Option<Vec<[f64; 2]>>,
    phases: Option<Vec<Vec<f64>>>,
}

/// A validated job file.
#[derive(Debug, Clone)]
pub struct JobInput {
    pub lattice: GaborLattice,
    pub g: Option<Signal>,
    pub h: Option<Signal>,
    pub f: Option<Signal>,
    pub phases: Option<PhaseSpec>,
}

impl JobInput {
    pub fn require_g(&self) -> Result<&Signal, InputError> {
        self.g.as_ref().ok_or(InputError::missing("g"))
    }

    pub fn require_h(&self) -> Result<&Signal, InputError> {
        self.h.as_ref().ok_or(InputError::missing("h"))
    }

    pub fn require_f(&self) -> Result<&Signal, InputError> {
        self.f.as_ref().ok_or(InputError::missing("f"))
    }
}

pub fn parse_signal_file(path: &Path) -> Result<JobInput, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_signal_json(&text)
}

pub fn parse_signal_json(text: &str) -> Result<JobInput, InputError> {
    let raw: RawJob = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
    let len = raw.len.ok_or(InputError::missing("L"))?;
    let a = raw.a.ok_or(InputError::missing("a"))?;
    let b = raw.b.ok_or(InputError::missing("b"))?;
    let lattice = GaborLattice::new(len, a, b)?;
    let signal =
        |field: &'static str, v: Option<Vec<[f64; 2]>>| -> Result<Option<Signal>, InputError> {
            let Some(v) = v else { return Ok(None) };
            if v.len() != len {
                return Err(InputError::Schema {
                    field,
                    message: format!("expected {len} samples, found {}", v.len()),
                });
            }
            let s = Signal::new(
                v.into_iter()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect(),
            )
            .map_err(|e| InputError::Schema {
                field,
                message: e.to_string(),
            })?;
            Ok(Some(s))
        };
    let g = signal("g", raw.g)?;
    let h = signal("h", raw.h)?;
    let f = signal("f", raw.f)?;
    let phases = raw
        .phases
        .map(|p| PhaseSpec::new(lattice, p))
        .transpose()
        .map_err(|e| InputError::Schema {
            field: "phases",
            message: e.to_string(),
        })?;
    Ok(JobInput {
        lattice,
        g,
        h,
        f,
        phases,
    })
}

/// A window file in the job schema, as written by `make-tight`.
#[derive(Debug, Clone, Serialize)]
pub struct WindowFile {
    #[serde(rename = "L")]
    pub len: usize,
    pub a: usize,
    pub b: usize,
    pub g: Signal,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phases: Option<Vec<Vec<f64>>>,
}

impl WindowFile {
    pub fn new(lat: &GaborLattice, g: Signal, phases: Option<Vec<Vec<f64>>>) -> Self {
        WindowFile {
            len: lat.len(),
            a: lat.a(),
            b: lat.b(),
            g,
            phases,
        }
    }
}
