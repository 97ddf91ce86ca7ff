//! Scenario files: TOML with complex entries as `[re, im]` pairs.
//!
//! ```toml
//! dim = 2
//! hbar = 1.0
//! hamiltonian = [[[0.5, 0], [0, 0]], [[0, 0], [-0.5, 0]]]
//! initial_state = [[1, 0], [1, 0]]
//! output_path = "larmor.csv"
//!
//! [times]
//! start = 0.0
//! stop = 6.283185307179586
//! step = 0.19634954084936207
//!
//! [observables]
//! sx = [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]
//! ```

use std::path::{Path, PathBuf};

use cpn::linalg::CMatrix;
use cpn::{Complex64, HermitianOperator, StateVector, MAX_DIM};
use toml::{Table, Value};

use crate::CliError;

#[derive(Debug, Clone)]
pub struct ScenarioConfig {
    pub dim: usize,
    pub hbar: f64,
    pub hamiltonian: HermitianOperator,
    pub initial_state: StateVector,
    pub times: Vec<f64>,
    pub observables: Vec<(String, HermitianOperator)>,
    pub output_path: Option<PathBuf>,
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{field}: {msg}"))
}

const KNOWN_KEYS: [&str; 7] = [
    "dim",
    "hbar",
    "hamiltonian",
    "initial_state",
    "times",
    "observables",
    "output_path",
];

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let table: Table = text.parse().map_err(|e: toml::de::Error| {
            CliError::Validation(format!("config syntax: {}", e.message()))
        })?;
        if let Some(key) = table.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
            return Err(invalid(key, "unknown key"));
        }
        let field = |name: &str| table.get(name).ok_or_else(|| invalid(name, "missing"));

        let dim = match field("dim")? {
            Value::Integer(d) if (2..=MAX_DIM as i64).contains(d) => *d as usize,
            Value::Integer(d) => {
                return Err(invalid("dim", format!("{d} is outside 2..={MAX_DIM}")))
            }
            other => {
                return Err(invalid(
                    "dim",
                    format!("expected an integer, found {}", other.type_str()),
                ))
            }
        };

        let hbar = match table.get("hbar") {
            None => 1.0,
            Some(v) => real(v, "hbar")?,
        };
        check_hbar(hbar)?;

        let hamiltonian = operator(field("hamiltonian")?, dim, "hamiltonian")?;

        let amps = complex_list(field("initial_state")?, "initial_state")?;
        if amps.len() != dim {
            return Err(invalid(
                "initial_state",
                format!("expected {dim} amplitudes, found {}", amps.len()),
            ));
        }
        let initial_state = StateVector::new(amps).map_err(|e| invalid("initial_state", e))?;

        let times = time_grid(field("times")?)?;

        let mut observables = Vec::new();
        if let Some(v) = table.get("observables") {
            let Value::Table(obs) = v else {
                return Err(invalid("observables", "expected a table of named matrices"));
            };
            for (name, m) in obs {
                observables.push((
                    name.clone(),
                    operator(m, dim, &format!("observables.{name}"))?,
                ));
            }
        }

        let output_path = match table.get("output_path") {
            None => None,
            Some(Value::String(s)) if !s.is_empty() => Some(PathBuf::from(s)),
            Some(_) => return Err(invalid("output_path", "expected a nonempty string")),
        };

        Ok(Self {
            dim,
            hbar,
            hamiltonian,
            initial_state,
            times,
            observables,
            output_path,
        })
    }
}

pub fn check_hbar(hbar: f64) -> Result<(), CliError> {
    if hbar > 0.0 && hbar.is_finite() {
        Ok(())
    } else {
        Err(invalid(
            "hbar",
            format!("must be positive and finite, got {hbar}"),
        ))
    }
}

fn real(v: &Value, field: &str) -> Result<f64, CliError> {
    let x = match v {
        Value::Float(x) => *x,
        Value::Integer(i) => *i as f64,
        other => {
            return Err(invalid(
                field,
                format!("expected a number, found {}", other.type_str()),
            ))
        }
    };
    if x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(field, "must be finite"))
    }
}

/// `[re, im]`, or a bare real number.
fn complex(v: &Value, field: &str) -> Result<Complex64, CliError> {
    match v {
        Value::Array(pair) if pair.len() == 2 => Ok(Complex64::new(
            real(&pair[0], field)?,
            real(&pair[1], field)?,
        )),
        Value::Array(pair) => Err(invalid(
            field,
            format!("expected an [re, im] pair, found {} numbers", pair.len()),
        )),
        other => Ok(Complex64::new(real(other, field)?, 0.0)),
    }
}

fn complex_list(v: &Value, field: &str) -> Result<Vec<Complex64>, CliError> {
    let Value::Array(items) = v else {
        return Err(invalid(field, "expected an array of [re, im] pairs"));
    };
    items
        .iter()
        .enumerate()
        .map(|(i, z)| complex(z, &format!("{field}[{i}]")))
        .collect()
}

pub fn operator(v: &Value, dim: usize, field: &str) -> Result<HermitianOperator, CliError> {
    let Value::Array(rows) = v else {
        return Err(invalid(field, "expected an array of rows"));
    };
    if rows.len() != dim {
        return Err(invalid(
            field,
            format!("expected {dim} rows, found {}", rows.len()),
        ));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for (r, row) in rows.iter().enumerate() {
        let row = complex_list(row, &format!("{field}[{r}]"))?;
        if row.len() != dim {
            return Err(invalid(
                &format!("{field}[{r}]"),
                format!("expected {dim} entries, found {}", row.len()),
            ));
        }
        entries.extend(row);
    }
    HermitianOperator::new(CMatrix::from_row_slice(dim, dim, &entries))
        .map_err(|e| invalid(field, e))
}

fn time_grid(v: &Value) -> Result<Vec<f64>, CliError> {
    let times = match v {
        Value::Array(items) => items
            .iter()
            .enumerate()
            .map(|(i, t)| real(t, &format!("times[{i}]")))
            .collect::<Result<Vec<_>, _>>()?,
        Value::Table(range) => {
            if let Some(key) = range
                .keys()
                .find(|k| !["start", "stop", "step"].contains(&k.as_str()))
            {
                return Err(invalid(&format!("times.{key}"), "unknown key"));
            }
            let get = |k: &str| {
                range
                    .get(k)
                    .ok_or_else(|| invalid(&format!("times.{k}"), "missing"))
                    .and_then(|x| real(x, &format!("times.{k}")))
            };
            let (start, stop, step) = (get("start")?, get("stop")?, get("step")?);
            if !(step > 0.0) {
                return Err(invalid("times.step", "must be positive"));
            }
            if stop < start {
                return Err(invalid("times.stop", "must not precede times.start"));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            if count > 10_000_000 {
                return Err(invalid(
                    "times.step",
                    format!("grid would have {count} samples"),
                ));
            }
            (0..count).map(|i| start + i as f64 * step).collect()
        }
        other => {
            return Err(invalid(
                "times",
                format!(
                    "expected a list or a start/stop/step table, found {}",
                    other.type_str()
                ),
            ))
        }
    };
    if times.is_empty() {
        return Err(invalid("times", "must be nonempty"));
    }
    if times.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(invalid("times", "must be strictly ascending"));
    }
    Ok(times)
}
