//! Text documents for spaces, families and functional families.
//!
//! Every document is a single JSON object tagged by `kind`:
//!
//! ```json
//! {
//!   "format": "rankin/1",
//!   "kind": "family",
//!   "dim": 2,
//!   "atoms": [{ "label": "1", "weight": 1.0 }, { "label": "2", "weight": 1.0 }],
//!   "vectors": [[1.0, 0.0], [0.0, 1.0]]
//! }
//! ```
//!
//! Floats are written in shortest round-trip form and parsed with correct
//! rounding, so write-then-read reproduces every value bit for bit.
//! Functional families add `"p"` (a number, or `"inf"`) and a `"functionals"`
//! block shaped like `"vectors"`.

use serde::{Deserialize, Serialize};

use crate::banach::{Exponent, FunctionalFamily};
use crate::error::{Error, Result};
use crate::family::{Normalization, VectorFamily};
use crate::measure::{Atom, MeasureSpace};

pub const FORMAT_TAG: &str = "rankin/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Body {
    Space {
        atoms: Vec<Atom>,
    },
    Family {
        dim: usize,
        atoms: Vec<Atom>,
        vectors: Vec<Vec<f64>>,
    },
    FunctionalFamily {
        dim: usize,
        p: Exponent,
        atoms: Vec<Atom>,
        vectors: Vec<Vec<f64>>,
        functionals: Vec<Vec<f64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub format: String,
    #[serde(flatten)]
    pub body: Body,
}

fn rows(data: &[f64], dim: usize) -> Vec<Vec<f64>> {
    data.chunks_exact(dim).map(<[f64]>::to_vec).collect()
}

fn flatten_rows(rows: &[Vec<f64>], dim: usize, what: &str) -> Result<Vec<f64>> {
    if let Some(i) = rows.iter().position(|r| r.len() != dim) {
        return Err(Error::Format(format!(
            "{what} row {i} has {} entries, expected {dim}",
            rows[i].len()
        )));
    }
    Ok(rows.concat())
}

impl Document {
    fn new(body: Body) -> Self {
        Self {
            format: FORMAT_TAG.into(),
            body,
        }
    }

    pub fn from_space(space: &MeasureSpace) -> Self {
        Self::new(Body::Space {
            atoms: space.atoms().to_vec(),
        })
    }

    pub fn from_family(fam: &VectorFamily) -> Self {
        Self::new(Body::Family {
            dim: fam.dim(),
            atoms: fam.space().atoms().to_vec(),
            vectors: rows(fam.as_slice(), fam.dim()),
        })
    }

    pub fn from_functional(fam: &FunctionalFamily) -> Self {
        Self::new(Body::FunctionalFamily {
            dim: fam.dim(),
            p: fam.exponent(),
            atoms: fam.space().atoms().to_vec(),
            vectors: rows(fam.vectors(), fam.dim()),
            functionals: rows(fam.functionals(), fam.dim()),
        })
    }

    pub fn kind(&self) -> &'static str {
        match self.body {
            Body::Space { .. } => "space",
            Body::Family { .. } => "family",
            Body::FunctionalFamily { .. } => "functional_family",
        }
    }

    fn atoms(&self) -> &[Atom] {
        match &self.body {
            Body::Space { atoms }
            | Body::Family { atoms, .. }
            | Body::FunctionalFamily { atoms, .. } => atoms,
        }
    }

    /// The measure space of any document kind.
    pub fn space(&self) -> Result<MeasureSpace> {
        MeasureSpace::new(self.atoms().to_vec()).map_err(|e| Error::Format(e.to_string()))
    }

    /// The vectors as given; normalization is left to the caller.
    pub fn family(&self) -> Result<VectorFamily> {
        match &self.body {
            Body::Family { dim, vectors, .. } => {
                let data = flatten_rows(vectors, *dim, "vector")?;
                VectorFamily::new(self.space()?, *dim, data, Normalization::Unchecked)
                    .map_err(|e| Error::Format(e.to_string()))
            }
            _ => Err(Error::Format(format!(
                "expected a family document, found {}",
                self.kind()
            ))),
        }
    }

    pub fn functional_family(&self) -> Result<FunctionalFamily> {
        match &self.body {
            Body::FunctionalFamily {
                dim,
                p,
                vectors,
                functionals,
                ..
            } => FunctionalFamily::new(
                self.space()?,
                *dim,
                *p,
                flatten_rows(vectors, *dim, "vector")?,
                flatten_rows(functionals, *dim, "functional")?,
            )
            .map_err(|e| Error::Format(e.to_string())),
            _ => Err(Error::Format(format!(
                "expected a functional_family document, found {}",
                self.kind()
            ))),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        if doc.format != FORMAT_TAG {
            return Err(Error::Format(format!(
                "unsupported format tag {:?}, expected {FORMAT_TAG:?}",
                doc.format
            )));
        }
        Ok(doc)
    }
}
