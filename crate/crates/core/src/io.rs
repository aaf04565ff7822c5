//! JSON file formats for groups and picture fuzzy sets.
//!
//! Group file:
//!
//! ```json
//! { "order": 4, "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]], "name": "Z4" }
//! ```
//!
//! Picture fuzzy set file, with the carrier given by registry name or inline
//! as a group document:
//!
//! ```json
//! { "carrier": "Z4", "triples": [["1/2","1/4","1/8"], ["1/4","1/4","1/4"], ...] }
//! ```

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree::{Degree, DegreeError};
use crate::group::{FiniteGroup, GroupError};
use crate::pfs::{PfsError, PictureFuzzySet, PictureTriple};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("group file declares order {declared} but the table has {rows} rows")]
    OrderMismatch { declared: usize, rows: usize },
    #[error("element {element}: {source}")]
    Degree { element: usize, source: DegreeError },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Pfs(#[from] PfsError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default)]
    pub name: String,
}

impl GroupDocument {
    pub fn from_group(group: &FiniteGroup) -> Self {
        GroupDocument {
            order: group.order(),
            table: group.rows(),
            name: group.name().to_string(),
        }
    }

    /// Validates the table; identity and inverses are derived from it.
    pub fn into_group(self) -> Result<FiniteGroup, LoadError> {
        if self.order != self.table.len() {
            return Err(LoadError::OrderMismatch {
                declared: self.order,
                rows: self.table.len(),
            });
        }
        let name = if self.name.is_empty() {
            format!("G{}", self.order)
        } else {
            self.name
        };
        Ok(FiniteGroup::from_table(name, &self.table)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CarrierRef {
    Name(String),
    Inline(GroupDocument),
}

impl CarrierRef {
    /// Uses the registry name when it reproduces the same table.
    pub fn for_group(group: &FiniteGroup) -> Self {
        match FiniteGroup::named(group.name()) {
            Ok(named) if named.same_table(group) => CarrierRef::Name(group.name().to_string()),
            _ => CarrierRef::Inline(GroupDocument::from_group(group)),
        }
    }

    pub fn resolve(self) -> Result<FiniteGroup, LoadError> {
        match self {
            CarrierRef::Name(name) => Ok(FiniteGroup::named(&name)?),
            CarrierRef::Inline(doc) => doc.into_group(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfsDocument {
    pub carrier: CarrierRef,
    pub triples: Vec<[String; 3]>,
}

impl PfsDocument {
    pub fn from_pfs(set: &PictureFuzzySet) -> Self {
        PfsDocument {
            carrier: CarrierRef::for_group(set.carrier()),
            triples: set
                .triples()
                .iter()
                .map(|t| {
                    [
                        t.positive().to_string(),
                        t.neutral().to_string(),
                        t.negative().to_string(),
                    ]
                })
                .collect(),
        }
    }

    pub fn into_pfs(self) -> Result<PictureFuzzySet, LoadError> {
        let carrier = self.carrier.resolve()?.into_shared();
        attach_triples(carrier, &self.triples)
    }

    /// Loads onto a carrier already in hand, checked against the declared
    /// one.
    pub fn into_pfs_on(self, carrier: Arc<FiniteGroup>) -> Result<PictureFuzzySet, LoadError> {
        let declared = self.carrier.resolve()?;
        if !declared.same_table(&carrier) {
            return Err(PfsError::CarrierMismatch {
                left: declared.name().to_string(),
                right: carrier.name().to_string(),
            }
            .into());
        }
        attach_triples(carrier, &self.triples)
    }
}

fn attach_triples(
    carrier: Arc<FiniteGroup>,
    raw: &[[String; 3]],
) -> Result<PictureFuzzySet, LoadError> {
    let triples = raw
        .iter()
        .enumerate()
        .map(|(element, raw)| parse_triple(element, raw))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PictureFuzzySet::new(carrier, triples)?)
}

fn read(path: &Path) -> Result<String, LoadError> {
    fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn write(path: &Path, contents: String) -> Result<(), LoadError> {
    fs::write(path, contents).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn parse_group(json: &str) -> Result<FiniteGroup, LoadError> {
    serde_json::from_str::<GroupDocument>(json)?.into_group()
}

pub fn group_to_json(group: &FiniteGroup) -> String {
    serde_json::to_string_pretty(&GroupDocument::from_group(group)).expect("documents serialize")
}

pub fn load_group(path: &Path) -> Result<FiniteGroup, LoadError> {
    parse_group(&read(path)?)
}

pub fn save_group(path: &Path, group: &FiniteGroup) -> Result<(), LoadError> {
    write(path, group_to_json(group) + "\n")
}

/// A registry name, or else a path to a group file.
pub fn resolve_group(reference: &str) -> Result<FiniteGroup, LoadError> {
    match FiniteGroup::named(reference) {
        Ok(g) => Ok(g),
        Err(GroupError::UnknownGroup(_)) if Path::new(reference).exists() => {
            load_group(Path::new(reference))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn parse_pfs(json: &str) -> Result<PictureFuzzySet, LoadError> {
    serde_json::from_str::<PfsDocument>(json)?.into_pfs()
}

pub fn pfs_to_json(set: &PictureFuzzySet) -> String {
    serde_json::to_string_pretty(&PfsDocument::from_pfs(set)).expect("documents serialize")
}

pub fn load_pfs(path: &Path) -> Result<PictureFuzzySet, LoadError> {
    parse_pfs(&read(path)?)
}

pub fn save_pfs(path: &Path, set: &PictureFuzzySet) -> Result<(), LoadError> {
    write(path, pfs_to_json(set) + "\n")
}

/// Parses a triple of `"p/q"` strings at a known element index.
pub fn parse_triple(element: usize, raw: &[String; 3]) -> Result<PictureTriple, LoadError> {
    let parse = |s: &String| {
        s.parse::<Degree>()
            .map_err(|source| LoadError::Degree { element, source })
    };
    let triple = PictureTriple::new(parse(&raw[0])?, parse(&raw[1])?, parse(&raw[2])?);
    triple.map_err(|e| match e {
        PfsError::SumViolation { sum, .. } => PfsError::SumViolation { element, sum }.into(),
        other => other.into(),
    })
}
