//! Structure-definition documents.
//!
//! ```toml
//! chart = ["x", "y"]
//!
//! [algebroid]
//! type = "flat-tangent"
//!
//! [tensors.H]
//! variance = "contravariant"
//! matrix = [["1", "0"], ["0", "1"]]
//! ```
//!
//! A `type = "custom"` algebroid adds `gamma` (`gamma[i][j][k]` is the
//! `e_k`-component of `e_i·e_j`) and `anchor` (row `μ`, column `i` is the
//! `∂_μ`-component of `a(e_i)`). Custom algebroids are axiom-checked on load.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Deserialize;

use crate::algebroid::{Algebroid, Chart};
use crate::arith::RatFunc;
use crate::error::{Error, Result};
use crate::tensors::{BundleMap, Matrix, SymTensorCo, SymTensorContra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    Contravariant,
    Covariant,
    Endomorphism,
}

impl fmt::Display for Variance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variance::Contravariant => "contravariant",
            Variance::Covariant => "covariant",
            Variance::Endomorphism => "endomorphism",
        })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    chart: Vec<String>,
    algebroid: RawAlgebroid,
    #[serde(default)]
    tensors: BTreeMap<String, RawTensor>,
}

#[derive(Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
enum RawAlgebroid {
    FlatTangent,
    Custom {
        gamma: Vec<Vec<Vec<String>>>,
        anchor: Vec<Vec<String>>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTensor {
    variance: Variance,
    matrix: Vec<Vec<String>>,
}

/// A tensor entry of a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tensor {
    Contravariant(SymTensorContra),
    Covariant(SymTensorCo),
    Endomorphism(BundleMap),
}

impl Tensor {
    pub fn variance(&self) -> Variance {
        match self {
            Tensor::Contravariant(_) => Variance::Contravariant,
            Tensor::Covariant(_) => Variance::Covariant,
            Tensor::Endomorphism(_) => Variance::Endomorphism,
        }
    }

    pub fn matrix(&self) -> &Matrix {
        match self {
            Tensor::Contravariant(t) => t.matrix(),
            Tensor::Covariant(t) => t.matrix(),
            Tensor::Endomorphism(t) => t.matrix(),
        }
    }
}

/// A fully validated document.
#[derive(Clone, Debug)]
pub struct InputDocument {
    pub algebroid: Algebroid,
    /// Tensors in name order.
    pub tensors: BTreeMap<String, Tensor>,
}

impl InputDocument {
    pub fn chart(&self) -> &Chart {
        self.algebroid.chart()
    }

    pub fn tensor(&self, name: &str) -> Result<&Tensor> {
        self.tensors
            .get(name)
            .ok_or_else(|| Error::UnknownTensorName(name.to_string()))
    }

    fn mismatch(&self, name: &str, expected: Variance) -> Error {
        let found = self.tensors[name].variance();
        Error::VarianceMismatch {
            name: name.to_string(),
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub fn contravariant(&self, name: &str) -> Result<&SymTensorContra> {
        match self.tensor(name)? {
            Tensor::Contravariant(t) => Ok(t),
            _ => Err(self.mismatch(name, Variance::Contravariant)),
        }
    }

    pub fn covariant(&self, name: &str) -> Result<&SymTensorCo> {
        match self.tensor(name)? {
            Tensor::Covariant(t) => Ok(t),
            _ => Err(self.mismatch(name, Variance::Covariant)),
        }
    }

    pub fn endomorphism(&self, name: &str) -> Result<&BundleMap> {
        match self.tensor(name)? {
            Tensor::Endomorphism(t) => Ok(t),
            _ => Err(self.mismatch(name, Variance::Endomorphism)),
        }
    }
}

/// Reads and validates a document from disk.
pub fn load(path: impl AsRef<Path>) -> Result<InputDocument> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_document(&text, &path.display().to_string())
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |p| p + 1) + 1;
    (line, col)
}

/// Parses and validates document text; `source` names it in error messages.
pub fn parse_document(text: &str, source: &str) -> Result<InputDocument> {
    let raw: RawDocument = toml::from_str(text).map_err(|e| {
        let location = match e.span() {
            Some(span) => {
                let (line, col) = line_col(text, span.start);
                format!("{source}:{line}:{col}")
            }
            None => source.to_string(),
        };
        Error::Parse {
            location,
            message: e.message().to_string(),
        }
    })?;
    let chart = Chart::new(raw.chart)?;

    let parse_entry = |what: &str, text: &str| -> Result<RatFunc> {
        chart
            .parse(text)
            .map_err(|e| Error::Validation(format!("{what}: `{text}`: {e}")))
    };

    let algebroid = match raw.algebroid {
        RawAlgebroid::FlatTangent => Algebroid::flat_tangent(chart.clone()),
        RawAlgebroid::Custom { gamma, anchor } => {
            let gamma = gamma
                .iter()
                .enumerate()
                .map(|(i, plane)| {
                    plane
                        .iter()
                        .enumerate()
                        .map(|(j, row)| {
                            row.iter()
                                .enumerate()
                                .map(|(k, e)| parse_entry(&format!("algebroid.gamma[{i}][{j}][{k}]"), e))
                                .collect()
                        })
                        .collect()
                })
                .collect::<Result<Vec<Vec<Vec<RatFunc>>>>>()?;
            let anchor = anchor
                .iter()
                .enumerate()
                .map(|(mu, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(i, e)| parse_entry(&format!("algebroid.anchor[{mu}][{i}]"), e))
                        .collect()
                })
                .collect::<Result<Vec<Vec<RatFunc>>>>()?;
            let rank = gamma.len();
            let a = Algebroid::new(chart.clone(), rank, gamma, anchor)?;
            let axioms = a.check_axioms();
            if let Some(r) = axioms.residuals().first() {
                return Err(Error::Validation(format!(
                    "algebroid fails the {} axiom at {:?}: {}",
                    r.label,
                    r.index,
                    chart.print(&r.value)
                )));
            }
            a
        }
    };

    let rank = algebroid.rank();
    let mut tensors = BTreeMap::new();
    for (name, t) in raw.tensors {
        if t.matrix.len() != rank || t.matrix.iter().any(|r| r.len() != rank) {
            return Err(Error::Validation(format!(
                "tensors.{name}.matrix must be {rank}x{rank}"
            )));
        }
        let rows = t
            .matrix
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, e)| parse_entry(&format!("tensors.{name}.matrix[{i}][{j}]"), e))
                    .collect()
            })
            .collect::<Result<Vec<Vec<RatFunc>>>>()?;
        let m = Matrix::from_rows(chart.dim(), rows)?;
        let asymmetric = || Error::Validation(format!("tensors.{name}: {} matrix is not symmetric", t.variance));
        let tensor = match t.variance {
            Variance::Contravariant => Tensor::Contravariant(SymTensorContra::new(m).map_err(|_| asymmetric())?),
            Variance::Covariant => Tensor::Covariant(SymTensorCo::new(m).map_err(|_| asymmetric())?),
            Variance::Endomorphism => Tensor::Endomorphism(BundleMap::new(m)),
        };
        tensors.insert(name, tensor);
    }
    Ok(InputDocument { algebroid, tensors })
}
