//! Input files: a splitting field (or bare group) plus a torus built over it.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use torus_core::arith::AbelianGaloisDatum;
use torus_core::groups::{make_group, GroupSpec};
use torus_core::matrix::Matrix;
use torus_core::tori::{make_torus, Splitting, Torus, TorusKind};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusFile {
    pub field: FieldSpec,
    pub torus: TorusSpec,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FieldSpec {
    Cyclotomic {
        modulus: u64,
        #[serde(default)]
        subgroup: Vec<u64>,
    },
    Abstract { group: GroupJson },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupJson {
    Cyclic { n: u64 },
    Product { factors: Vec<GroupJson> },
    Dihedral { n: u64 },
    Quaternion,
    Cyclotomic {
        modulus: u64,
        #[serde(default)]
        subgroup: Vec<u64>,
    },
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum TorusSpec {
    Split { dim: usize },
    Res,
    NormOne,
    So2,
    Product { factors: Vec<TorusSpec> },
    /// Action matrices keyed by group element index; unlisted elements are generated.
    Lattice { matrices: BTreeMap<String, Vec<Vec<i64>>> },
}

impl GroupJson {
    fn to_spec(&self) -> GroupSpec {
        match self {
            GroupJson::Cyclic { n } => GroupSpec::Cyclic(*n),
            GroupJson::Product { factors } => GroupSpec::Product(factors.iter().map(GroupJson::to_spec).collect()),
            GroupJson::Dihedral { n } => GroupSpec::Dihedral(*n),
            GroupJson::Quaternion => GroupSpec::Quaternion,
            GroupJson::Cyclotomic { modulus, subgroup } => {
                GroupSpec::Cyclotomic { modulus: *modulus, subgroup: subgroup.clone() }
            }
        }
    }
}

impl TorusSpec {
    fn to_kind(&self) -> Result<TorusKind, CliError> {
        Ok(match self {
            TorusSpec::Split { dim } => TorusKind::Split(*dim),
            TorusSpec::Res => TorusKind::Res,
            TorusSpec::NormOne => TorusKind::NormOne,
            TorusSpec::So2 => TorusKind::So2,
            TorusSpec::Product { factors } => {
                TorusKind::Product(factors.iter().map(TorusSpec::to_kind).collect::<Result<_, _>>()?)
            }
            TorusSpec::Lattice { matrices } => {
                let mut images = Vec::with_capacity(matrices.len());
                for (key, rows) in matrices {
                    let g: usize =
                        key.parse().map_err(|_| CliError::Input(format!("group element key {key:?} is not an index")))?;
                    if rows.iter().any(|r| r.len() != rows.len()) {
                        return Err(CliError::Input(format!("matrix for element {g} is not square")));
                    }
                    images.push((g, Matrix::from_rows(rows)));
                }
                TorusKind::Lattice(images)
            }
        })
    }
}

pub fn splitting(field: &FieldSpec) -> Result<Splitting, CliError> {
    Ok(match field {
        FieldSpec::Cyclotomic { modulus, subgroup } => {
            Splitting::Arithmetic(Arc::new(AbelianGaloisDatum::new(*modulus, subgroup)?))
        }
        FieldSpec::Abstract { group } => Splitting::Abstract(Arc::new(make_group(&group.to_spec())?)),
    })
}

pub fn parse_torus(text: &str) -> Result<Torus, CliError> {
    let file: TorusFile = serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed torus file: {e}")))?;
    let s = splitting(&file.field)?;
    Ok(make_torus(&s, &file.torus.to_kind()?)?)
}

pub fn read_torus(path: &Path) -> Result<Torus, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_torus(&text)
}
