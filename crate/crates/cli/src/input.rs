//! JSON job parsing: the envelope, the per-command input records, and the
//! parameter map with environment fallbacks.

use num_complex::Complex64;
use serde::Deserialize;

use dmu_corona::{AtomicMeasure, FunctionTuple, Polynomial, UnitCirclePoint};

/// Machine-readable error category; one per distinct input failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCode {
    MalformedJson,
    OffCircle,
    NonpositiveWeight,
    UnknownKey,
    CommandMismatch,
    InvalidParam,
    IoError,
}

impl ErrorCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorCode::MalformedJson => "MALFORMED_JSON",
            ErrorCode::OffCircle => "OFF_CIRCLE",
            ErrorCode::NonpositiveWeight => "NONPOSITIVE_WEIGHT",
            ErrorCode::UnknownKey => "UNKNOWN_KEY",
            ErrorCode::CommandMismatch => "COMMAND_MISMATCH",
            ErrorCode::InvalidParam => "INVALID_PARAM",
            ErrorCode::IoError => "IO_ERROR",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: ErrorCode,
    pub message: String,
}

impl CliError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "error": { "code": self.code.as_str(), "message": self.message }
        })
    }
}

fn classify_serde(err: serde_json::Error) -> CliError {
    let message = err.to_string();
    let code = if message.contains("unknown field") {
        ErrorCode::UnknownKey
    } else {
        ErrorCode::MalformedJson
    };
    CliError::new(code, message)
}

/// Top-level job document. The optional `command` field must agree with the
/// invoked subcommand when present.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Envelope {
    #[serde(default)]
    pub command: Option<String>,
    #[serde(default)]
    pub inputs: serde_json::Value,
    #[serde(default)]
    pub params: Params,
}

pub fn parse_envelope(text: &str, command: &str) -> Result<Envelope, CliError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| CliError::new(ErrorCode::MalformedJson, e.to_string()))?;
    let envelope: Envelope = serde_json::from_value(value).map_err(classify_serde)?;
    if let Some(stated) = &envelope.command {
        if stated != command {
            return Err(CliError::new(
                ErrorCode::CommandMismatch,
                format!("job document says {stated:?} but the {command} subcommand was invoked"),
            ));
        }
    }
    Ok(envelope)
}

/// Deserialize the `inputs` object into a per-command record.
pub fn parse_inputs<T: serde::de::DeserializeOwned>(envelope: &Envelope) -> Result<T, CliError> {
    let value = if envelope.inputs.is_null() {
        serde_json::Value::Object(serde_json::Map::new())
    } else {
        envelope.inputs.clone()
    };
    serde_json::from_value(value).map_err(classify_serde)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyInput {
    pub coeffs: Vec<[f64; 2]>,
}

impl PolyInput {
    pub fn to_polynomial(&self) -> Result<Polynomial, CliError> {
        let coeffs: Vec<Complex64> = self
            .coeffs
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        Polynomial::try_new(coeffs).map_err(|e| {
            CliError::new(ErrorCode::MalformedJson, format!("bad polynomial: {e}"))
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleInput {
    pub entries: Vec<PolyInput>,
}

impl TupleInput {
    pub fn to_tuple(&self) -> Result<FunctionTuple, CliError> {
        let entries = self
            .entries
            .iter()
            .map(|p| p.to_polynomial())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FunctionTuple::new(entries))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomInput {
    pub zeta: [f64; 2],
    pub weight: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureInput {
    pub atoms: Vec<AtomInput>,
}

pub fn to_circle_point(zeta: [f64; 2]) -> Result<UnitCirclePoint, CliError> {
    UnitCirclePoint::new(Complex64::new(zeta[0], zeta[1])).map_err(|e| {
        CliError::new(ErrorCode::OffCircle, e.to_string())
    })
}

impl MeasureInput {
    pub fn to_measure(&self) -> Result<AtomicMeasure, CliError> {
        let mut pairs = Vec::with_capacity(self.atoms.len());
        for atom in &self.atoms {
            let zeta = to_circle_point(atom.zeta)?;
            if atom.weight <= 0.0 || !atom.weight.is_finite() {
                return Err(CliError::new(
                    ErrorCode::NonpositiveWeight,
                    format!("atom weight {} must be positive and finite", atom.weight),
                ));
            }
            pairs.push((zeta.value(), atom.weight));
        }
        AtomicMeasure::new(pairs)
            .map_err(|e| CliError::new(ErrorCode::MalformedJson, e.to_string()))
    }
}

/// Raw user-supplied parameters. Every field is optional; resolution order
/// is params, then `COR0N4_`-prefixed environment variables, then defaults.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    pub seed: Option<u64>,
    pub grid_n: Option<usize>,
    pub residual_tol: Option<f64>,
    pub root_margin: Option<f64>,
    pub trial_degree: Option<usize>,
    pub degree_cap: Option<usize>,
    pub quad_tol: Option<f64>,
    pub resolution: Option<usize>,
    pub angles: Option<usize>,
    pub max_degree: Option<usize>,
    pub max_iters: Option<usize>,
    pub out: Option<String>,
}

/// Fully resolved runtime configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub seed: u64,
    pub grid_n: usize,
    pub residual_tol: f64,
    pub root_margin: f64,
    pub trial_degree: usize,
    pub degree_cap: Option<usize>,
    pub quad_tol: Option<f64>,
    pub resolution: usize,
    pub angles: usize,
    pub max_degree: usize,
    pub max_iters: usize,
    pub out: Option<String>,
}

fn env_value<T: std::str::FromStr>(name: &str) -> Result<Option<T>, CliError> {
    match std::env::var(name) {
        Ok(text) => text.parse::<T>().map(Some).map_err(|_| {
            CliError::new(
                ErrorCode::InvalidParam,
                format!("environment variable {name}={text:?} is not valid"),
            )
        }),
        Err(_) => Ok(None),
    }
}

fn positive(name: &str, value: f64) -> Result<f64, CliError> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::new(
            ErrorCode::InvalidParam,
            format!("{name} must be positive and finite, got {value}"),
        ))
    }
}

pub fn resolve(params: &Params) -> Result<Config, CliError> {
    let seed = match params.seed {
        Some(s) => s,
        None => env_value::<u64>("COR0N4_SEED")?.unwrap_or(0x5EED),
    };
    let grid_n = match params.grid_n {
        Some(n) => n,
        None => env_value::<usize>("COR0N4_GRID_N")?.unwrap_or(4096),
    };
    if grid_n < 2 {
        return Err(CliError::new(
            ErrorCode::InvalidParam,
            format!("grid_n must be at least 2, got {grid_n}"),
        ));
    }
    let residual_tol = positive(
        "residual_tol",
        match params.residual_tol {
            Some(t) => t,
            None => env_value::<f64>("COR0N4_RESIDUAL_TOL")?.unwrap_or(1e-9),
        },
    )?;
    let root_margin = positive(
        "root_margin",
        match params.root_margin {
            Some(m) => m,
            None => env_value::<f64>("COR0N4_ROOT_MARGIN")?.unwrap_or(1e-3),
        },
    )?;
    if let Some(t) = params.quad_tol {
        positive("quad_tol", t)?;
    }
    let resolution = params.resolution.unwrap_or(33);
    if resolution < 2 {
        return Err(CliError::new(
            ErrorCode::InvalidParam,
            format!("resolution must be at least 2, got {resolution}"),
        ));
    }
    let angles = params.angles.unwrap_or(64);
    if angles == 0 {
        return Err(CliError::new(
            ErrorCode::InvalidParam,
            "angles must be at least 1",
        ));
    }
    let max_iters = params.max_iters.unwrap_or(2000);
    if max_iters == 0 {
        return Err(CliError::new(
            ErrorCode::InvalidParam,
            "max_iters must be at least 1",
        ));
    }

    Ok(Config {
        seed,
        grid_n,
        residual_tol,
        root_margin,
        trial_degree: params.trial_degree.unwrap_or(6),
        degree_cap: params.degree_cap,
        quad_tol: params.quad_tol,
        resolution,
        angles,
        max_degree: params.max_degree.unwrap_or(4),
        max_iters,
        out: params.out.clone(),
    })
}
