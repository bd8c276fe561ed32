//! The JSON parameter file.
//!
//! ```json
//! {"n": 3, "sigma": {"re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]},
//!  "m_matrix": {"re": [[0, 0], [0, 1]]}, "h": [{"re": [[1, 0], [0, 0]]}],
//!  "index": [2], "convention": "paper"}
//! ```
//!
//! Matrices are row-major and square; a missing `im` means zero imaginary
//! parts. Unknown keys are rejected.

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::model::{Convention, WishartParams};
use crate::multivariate::TraceDirections;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixInput {
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixInput {
    pub fn to_matrix(&self, field: &str) -> Result<ComplexMatrix> {
        let zeros: Vec<Vec<f64>>;
        let im = match &self.im {
            Some(im) => im,
            None => {
                zeros = self.re.iter().map(|row| vec![0.0; row.len()]).collect();
                &zeros
            }
        };
        ComplexMatrix::from_parts(&self.re, im).map_err(|e| with_field(field, e))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default)]
    pub n: Option<f64>,
    pub sigma: MatrixInput,
    #[serde(default)]
    pub m_matrix: Option<MatrixInput>,
    #[serde(default)]
    pub h: Option<Vec<MatrixInput>>,
    #[serde(default)]
    pub index: Option<Vec<usize>>,
    #[serde(default)]
    pub convention: Option<String>,
}

/// Prefix an error message with the input field it concerns, keeping its
/// class.
pub fn with_field(field: &str, error: Error) -> Error {
    match error {
        Error::InvalidParameter(msg) => Error::InvalidParameter(format!("{field}: {msg}")),
        Error::NotPsd(msg) => Error::NotPsd(format!("{field}: {msg}")),
        Error::NonFinite(msg) => Error::NonFinite(format!("{field}: {msg}")),
        other => other,
    }
}

impl InputDocument {
    pub fn parse(bytes: &[u8]) -> Result<Self> {
        serde_json::from_slice(bytes).map_err(|e| Error::InvalidParameter(format!("malformed input document: {e}")))
    }

    /// The file's convention, overridden by `flag` when given.
    pub fn convention(&self, flag: Option<Convention>) -> Result<Convention> {
        match (flag, &self.convention) {
            (Some(c), _) => Ok(c),
            (None, Some(text)) => text.parse().map_err(|e| with_field("convention", e)),
            (None, None) => Ok(Convention::default()),
        }
    }

    pub fn sigma(&self) -> Result<ComplexMatrix> {
        self.sigma.to_matrix("sigma")
    }

    pub fn params(&self, convention: Convention) -> Result<WishartParams> {
        let n = self.n.ok_or_else(|| Error::InvalidParameter("n: required for this command".into()))?;
        let sigma = self.sigma()?;
        let m = match &self.m_matrix {
            Some(m) => m.to_matrix("m_matrix")?,
            None => ComplexMatrix::zeros(sigma.dim()),
        };
        WishartParams::new(n, sigma, m, convention).map_err(|e| match e {
            Error::NotHermitian { .. } => Error::InvalidParameter(format!("sigma: {e}")),
            Error::DimensionMismatch { .. } => Error::InvalidParameter(format!("m_matrix: {e}")),
            other => with_field("parameters", other),
        })
    }

    pub fn directions(&self) -> Result<TraceDirections> {
        let h = self.h.as_ref().ok_or_else(|| Error::InvalidParameter("h: required for this command".into()))?;
        if h.is_empty() {
            return Err(Error::InvalidParameter("h: at least one direction is required".into()));
        }
        let matrices = h.iter().enumerate().map(|(k, m)| m.to_matrix(&format!("h[{k}]"))).collect::<Result<Vec<_>>>()?;
        TraceDirections::new(matrices).map_err(|e| Error::InvalidParameter(format!("h: {e}")))
    }

    /// The multi-index, with a command-line value taking precedence.
    pub fn index(&self, flag: Option<&[usize]>) -> Option<Vec<usize>> {
        flag.map(<[usize]>::to_vec).or_else(|| self.index.clone())
    }
}
