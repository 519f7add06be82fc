//! JSON definitions of algebras, bimodules and maps, and the workspace that loads them.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{validate_algebra, Algebra, Field};
use crate::bimodule::{validate_bimodule, Bimodule, BimoduleMap};
use crate::error::{Error, Result};
use crate::library;
use crate::linalg::{Matrix, Scalar};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDef {
    pub name: String,
    pub field: Field,
    pub dim: usize,
    pub unit: Vec<String>,
    /// (i, j, k, c): e_i·e_j has coefficient c on e_k.
    pub structure: Vec<(usize, usize, usize, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BimoduleDef {
    pub name: String,
    pub left: String,
    pub right: String,
    pub dim: usize,
    pub left_action: Vec<Vec<Vec<String>>>,
    pub right_action: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapDef {
    pub name: String,
    pub src: String,
    pub dst: String,
    pub matrix: Vec<Vec<String>>,
}

/// A file holding any number of definitions.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct WorkspaceFile {
    #[serde(default)]
    pub algebras: Vec<AlgebraDef>,
    #[serde(default)]
    pub bimodules: Vec<BimoduleDef>,
    #[serde(default)]
    pub maps: Vec<MapDef>,
}

fn scalar(s: &str, ctx: &str) -> Result<Scalar> {
    s.parse::<Scalar>().map_err(|e| Error::Parse(format!("{ctx}: {e}")))
}

fn matrix_from(rows: &[Vec<String>], n_rows: usize, n_cols: usize, ctx: &str) -> Result<Matrix> {
    if rows.len() != n_rows || rows.iter().any(|r| r.len() != n_cols) {
        return Err(Error::Parse(format!("{ctx}: expected a {n_rows}×{n_cols} matrix")));
    }
    let mut data = Vec::with_capacity(n_rows * n_cols);
    for (i, r) in rows.iter().enumerate() {
        for (j, x) in r.iter().enumerate() {
            data.push(scalar(x, &format!("{ctx}[{i}][{j}]"))?);
        }
    }
    Ok(Matrix::from_vec(n_rows, n_cols, data))
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<String>> {
    m.row_vecs().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

impl AlgebraDef {
    pub fn build(&self) -> Result<Algebra> {
        let ctx = format!("algebra {}", self.name);
        let unit = self
            .unit
            .iter()
            .enumerate()
            .map(|(i, x)| scalar(x, &format!("{ctx}: unit[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        let triples = self
            .structure
            .iter()
            .enumerate()
            .map(|(t, (i, j, k, c))| Ok((*i, *j, *k, scalar(c, &format!("{ctx}: structure[{t}]"))?)))
            .collect::<Result<Vec<_>>>()?;
        if let Field::GF(p) = self.field {
            if !crate::linalg::is_prime(p) {
                return Err(Error::Parse(format!("{ctx}: GF({p}) is not a prime field")));
            }
        }
        let a = Algebra::from_structure(&self.name, self.field, self.dim, &triples, unit)?;
        let d = self.dim;
        Ok(match &self.labels {
            Some(l) if l.len() == d => {
                let products = (0..d * d).map(|ij| a.mul_basis(ij / d, ij % d).clone()).collect();
                Algebra::from_products(&self.name, self.field, d, products, a.unit().to_vec(), l.clone())
            }
            Some(_) => return Err(Error::Parse(format!("{ctx}: labels must have length {}", self.dim))),
            None => a,
        })
    }

    pub fn from_algebra(a: &Algebra) -> AlgebraDef {
        let d = a.dim();
        let mut structure = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in a.mul_basis(i, j) {
                    structure.push((i, j, *k, c.to_string()));
                }
            }
        }
        let default_labels = (0..d).all(|i| a.label(i) == format!("e{i}"));
        AlgebraDef {
            name: a.name().to_string(),
            field: a.field(),
            dim: d,
            unit: a.unit().iter().map(|x| x.to_string()).collect(),
            structure,
            labels: (!default_labels).then(|| a.labels().to_vec()),
        }
    }
}

impl BimoduleDef {
    pub fn from_bimodule(m: &Bimodule) -> BimoduleDef {
        BimoduleDef {
            name: m.name().to_string(),
            left: m.left_alg().name().to_string(),
            right: m.right_alg().name().to_string(),
            dim: m.dim(),
            left_action: m.left_action().iter().map(matrix_rows).collect(),
            right_action: m.right_action().iter().map(matrix_rows).collect(),
        }
    }
}

impl MapDef {
    pub fn from_map(name: &str, f: &BimoduleMap) -> MapDef {
        MapDef {
            name: name.to_string(),
            src: f.src.name().to_string(),
            dst: f.dst.name().to_string(),
            matrix: matrix_rows(&f.matrix),
        }
    }
}

/// Reads a workspace file; a bare algebra, bimodule or map object is also accepted.
pub fn read_file(path: &Path) -> Result<WorkspaceFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_workspace(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_workspace(text: &str) -> Result<WorkspaceFile> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let obj = value.as_object().ok_or_else(|| Error::Parse("top level must be an object".into()))?;
    let keyed = |k: &str| obj.contains_key(k);
    let parse = |v: serde_json::Value| -> Result<WorkspaceFile> {
        if keyed("structure") {
            Ok(WorkspaceFile {
                algebras: vec![serde_json::from_value(v).map_err(|e| Error::Parse(format!("algebra: {e}")))?],
                ..Default::default()
            })
        } else if keyed("left_action") {
            Ok(WorkspaceFile {
                bimodules: vec![serde_json::from_value(v).map_err(|e| Error::Parse(format!("bimodule: {e}")))?],
                ..Default::default()
            })
        } else if keyed("matrix") {
            Ok(WorkspaceFile {
                maps: vec![serde_json::from_value(v).map_err(|e| Error::Parse(format!("map: {e}")))?],
                ..Default::default()
            })
        } else {
            serde_json::from_value(v).map_err(|e| Error::Parse(format!("workspace: {e}")))
        }
    };
    parse(value.clone())
}

/// Validated, uniquely named objects plus run settings.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub algebras: BTreeMap<String, Algebra>,
    pub bimodules: BTreeMap<String, Bimodule>,
    pub maps: BTreeMap<String, BimoduleMap>,
    pub field: Field,
    pub cap: usize,
    pub seed: u64,
}

impl Default for Workspace {
    fn default() -> Workspace {
        Workspace {
            algebras: BTreeMap::new(),
            bimodules: BTreeMap::new(),
            maps: BTreeMap::new(),
            field: Field::Q,
            cap: 2,
            seed: 0,
        }
    }
}

impl Workspace {
    /// Registered algebras first, then the built-in library, read over the workspace field.
    pub fn algebra(&self, name: &str) -> Result<Algebra> {
        let a = match self.algebras.get(name) {
            Some(a) => return Ok(a.clone()),
            None => library::algebra(name)?,
        };
        a.over_field(self.field)
    }

    pub fn bimodule(&self, name: &str) -> Result<Bimodule> {
        if let Some(m) = self.bimodules.get(name) {
            return Ok(m.clone());
        }
        let m = library::module(name)?;
        if self.field == Field::Q {
            Ok(m)
        } else {
            bimodule_over_field(&m, self.field)
        }
    }

    pub fn map(&self, name: &str) -> Result<BimoduleMap> {
        self.maps.get(name).cloned().ok_or_else(|| Error::Parse(format!("unknown map {name:?}")))
    }

    fn check_unique(&self, name: &str) -> Result<()> {
        if self.algebras.contains_key(name) || self.bimodules.contains_key(name) || self.maps.contains_key(name) {
            return Err(Error::Parse(format!("duplicate name {name:?}")));
        }
        Ok(())
    }

    /// Builds and validates every definition. Parse errors abort; validation
    /// failures are reported and the object is left unregistered.
    pub fn add_file(&mut self, file: &WorkspaceFile) -> Result<Vec<Report>> {
        let mut reports = Vec::new();
        for d in &file.algebras {
            self.check_unique(&d.name)?;
            let a = d.build()?.over_field(self.field)?;
            let r = validate_algebra(&a);
            if r.pass {
                self.algebras.insert(d.name.clone(), a);
            }
            reports.push(r);
        }
        for d in &file.bimodules {
            self.check_unique(&d.name)?;
            let ctx = format!("bimodule {}", d.name);
            let left = self.algebra(&d.left)?;
            let right = self.algebra(&d.right)?;
            if d.left_action.len() != left.dim() || d.right_action.len() != right.dim() {
                return Err(Error::Parse(format!("{ctx}: need {} left and {} right matrices", left.dim(), right.dim())));
            }
            let conv = |ms: &[Vec<Vec<String>>], side: &str| -> Result<Vec<Matrix>> {
                ms.iter()
                    .enumerate()
                    .map(|(i, m)| Ok(coerce(&matrix_from(m, d.dim, d.dim, &format!("{ctx}: {side}[{i}]"))?, self.field)))
                    .collect()
            };
            let m = Bimodule::new(
                &d.name,
                left,
                right,
                d.dim,
                conv(&d.left_action, "left_action")?,
                conv(&d.right_action, "right_action")?,
            );
            let r = validate_bimodule(&m);
            if r.pass {
                self.bimodules.insert(d.name.clone(), m);
            }
            reports.push(r);
        }
        for d in &file.maps {
            self.check_unique(&d.name)?;
            let src = self.bimodule(&d.src)?;
            let dst = self.bimodule(&d.dst)?;
            let mat = coerce(&matrix_from(&d.matrix, dst.dim(), src.dim(), &format!("map {}", d.name))?, self.field);
            let claim = format!("map {} is a bimodule map", d.name);
            match BimoduleMap::new(src, dst, mat) {
                Ok(f) => {
                    self.maps.insert(d.name.clone(), f);
                    reports.push(Report::pass(claim));
                }
                Err(e) => reports.push(Report::new(claim, false, Some(serde_json::json!({ "failures": [e.to_string()] })))),
            }
        }
        Ok(reports)
    }

    pub fn load(&mut self, path: &Path) -> Result<Vec<Report>> {
        let file = read_file(path)?;
        self.add_file(&file)
    }

    /// Every registered object as one file, in name order.
    pub fn to_file(&self) -> WorkspaceFile {
        WorkspaceFile {
            algebras: self.algebras.values().map(AlgebraDef::from_algebra).collect(),
            bimodules: self.bimodules.values().map(BimoduleDef::from_bimodule).collect(),
            maps: self.maps.iter().map(|(n, f)| MapDef::from_map(n, f)).collect(),
        }
    }
}

fn coerce(m: &Matrix, field: Field) -> Matrix {
    if field == Field::Q {
        m.clone()
    } else {
        m.map(|x| field.coerce(x))
    }
}

/// The same bimodule with entries read over GF(p).
pub fn bimodule_over_field(m: &Bimodule, field: Field) -> Result<Bimodule> {
    let l = m.left_alg().over_field(field)?;
    let r = m.right_alg().over_field(field)?;
    let la = m.left_action().iter().map(|x| coerce(x, field)).collect();
    let ra = m.right_action().iter().map(|x| coerce(x, field)).collect();
    Ok(Bimodule::new(m.name(), l, r, m.dim(), la, ra))
}

/// Parses `Q`, `GFp` or `GF(p)`.
pub fn parse_field(s: &str) -> Result<Field> {
    if s == "Q" {
        return Ok(Field::Q);
    }
    let p = s.strip_prefix("GF").map(|t| t.trim_start_matches('(').trim_end_matches(')'));
    match p.and_then(|t| t.parse::<u64>().ok()) {
        Some(p) if crate::linalg::is_prime(p) => Ok(Field::GF(p)),
        _ => Err(Error::Parse(format!("unknown field {s:?}; expected Q or GFp with p prime"))),
    }
}

/// Entries of a vector as strings, paired with basis labels.
pub fn labelled(labels: &[String], v: &[Scalar]) -> Vec<(String, String)> {
    labels.iter().cloned().zip(v.iter().map(|x| x.to_string())).collect()
}

#[cfg(test)]
mod tests;
