//! JSON documents for algebras, Hopf algebras, actions, groups and reports.
//!
//! Scalars are strings: `"3/4"` over ℚ and plain residues such as `"2"` over
//! `𝔽_p`, with the field named once per document. Every loader re-runs the
//! validators of the object it builds.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{Action, ActionError, ActionMode, Cocycle};
use crate::algebra::{AlgebraError, RadicalKind, RadicalReport, StructureAlgebra};
use crate::harness::{Instance, InstanceWitness, SuiteReport};
use crate::hopf::{GroupDoc, GroupTable, HopfAlgebra, HopfError};
use crate::linalg::{FieldSpec, LinalgError, Matrix, Scalar, Subspace};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("malformed document: {0}")]
    Shape(String),
    #[error("expected a {expected} document, found {found}")]
    Kind {
        expected: &'static str,
        found: &'static str,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub field: String,
    pub labels: Vec<String>,
    pub unit: Vec<String>,
    /// `table[i][j]` is `e_i e_j`.
    pub table: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HopfDoc {
    pub algebra: AlgebraDoc,
    /// `comul[i][a*n + b]`: coefficient of `e_a ⊗ e_b` in `Δ(e_i)`.
    pub comul: Vec<Vec<String>>,
    pub counit: Vec<String>,
    /// Rows of the antipode matrix; column `i` is `S(e_i)`.
    pub antipode: Vec<Vec<String>>,
}

/// A sub-document given inline or as a path relative to the referring file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Embedded<T> {
    Inline(T),
    Path(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDoc {
    pub hopf: Embedded<HopfDoc>,
    pub algebra: Embedded<AlgebraDoc>,
    pub mode: String,
    /// `act[h]` are the rows of the matrix of `e_h · (−)`.
    pub act: Vec<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_inverse: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadicalDoc {
    pub radical: String,
    pub field: String,
    pub ambient_dim: usize,
    pub dim: usize,
    pub basis: Vec<Vec<String>>,
    pub method: String,
    pub exhaustive: bool,
    pub seed: Option<u64>,
}

/// Any file the CLI reads or writes, tagged by `kind`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WorkspaceFile {
    Algebra(AlgebraDoc),
    Hopf(HopfDoc),
    Action(ActionDoc),
    Group(GroupDoc),
    Report(RadicalDoc),
    Suite(SuiteReport),
    Instance(InstanceWitness),
}

impl WorkspaceFile {
    pub fn kind(&self) -> &'static str {
        match self {
            WorkspaceFile::Algebra(_) => "algebra",
            WorkspaceFile::Hopf(_) => "hopf",
            WorkspaceFile::Action(_) => "action",
            WorkspaceFile::Group(_) => "group",
            WorkspaceFile::Report(_) => "report",
            WorkspaceFile::Suite(_) => "suite",
            WorkspaceFile::Instance(_) => "instance",
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialise");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn scalar_to_string(s: &Scalar) -> String {
    match s.residue_value() {
        Some(v) => v.to_string(),
        None => s.to_string(),
    }
}

fn vec_out(v: &[Scalar]) -> Vec<String> {
    v.iter().map(scalar_to_string).collect()
}

fn vec_in(field: FieldSpec, v: &[String], len: usize, what: &str) -> Result<Vec<Scalar>, IoError> {
    if v.len() != len {
        return Err(IoError::Shape(format!(
            "{what} must have {len} entries, found {}",
            v.len()
        )));
    }
    Ok(v.iter()
        .map(|s| field.parse_scalar(s))
        .collect::<Result<_, _>>()?)
}

fn matrix_out(m: &Matrix) -> Vec<Vec<String>> {
    m.row_vectors().iter().map(|r| vec_out(r)).collect()
}

fn matrix_in(
    field: FieldSpec,
    rows: &[Vec<String>],
    r: usize,
    c: usize,
    what: &str,
) -> Result<Matrix, IoError> {
    if rows.len() != r {
        return Err(IoError::Shape(format!(
            "{what} must have {r} rows, found {}",
            rows.len()
        )));
    }
    let parsed = rows
        .iter()
        .map(|row| vec_in(field, row, c, what))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(field, c, &parsed)?)
}

pub fn algebra_to_doc(a: &StructureAlgebra) -> AlgebraDoc {
    let n = a.dim();
    AlgebraDoc {
        field: a.field().to_string(),
        labels: a.labels().to_vec(),
        unit: vec_out(a.unit()),
        table: (0..n)
            .map(|i| (0..n).map(|j| vec_out(a.basis_product(i, j))).collect())
            .collect(),
    }
}

pub fn algebra_from_doc(doc: &AlgebraDoc) -> Result<StructureAlgebra, IoError> {
    let field: FieldSpec = doc.field.parse()?;
    let n = doc.labels.len();
    let unit = vec_in(field, &doc.unit, n, "unit")?;
    if doc.table.len() != n || doc.table.iter().any(|r| r.len() != n) {
        return Err(IoError::Shape(format!(
            "multiplication table must be {n}×{n}"
        )));
    }
    let mut mul = Vec::with_capacity(n * n * n);
    for (i, row) in doc.table.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            mul.extend(vec_in(field, v, n, &format!("product e{i}*e{j}"))?);
        }
    }
    let a = StructureAlgebra::from_parts(field, doc.labels.clone(), mul, unit)?;
    a.validate()?;
    Ok(a)
}

pub fn hopf_to_doc(h: &HopfAlgebra) -> HopfDoc {
    HopfDoc {
        algebra: algebra_to_doc(h.algebra()),
        comul: h.comul().iter().map(|v| vec_out(v)).collect(),
        counit: vec_out(h.counit()),
        antipode: matrix_out(h.antipode()),
    }
}

pub fn hopf_from_doc(doc: &HopfDoc) -> Result<HopfAlgebra, IoError> {
    let algebra = algebra_from_doc(&doc.algebra)?;
    let (field, n) = (algebra.field(), algebra.dim());
    if doc.comul.len() != n {
        return Err(IoError::Shape(format!(
            "comultiplication must list {n} vectors"
        )));
    }
    let comul = doc
        .comul
        .iter()
        .map(|v| vec_in(field, v, n * n, "comultiplication"))
        .collect::<Result<Vec<_>, _>>()?;
    let counit = vec_in(field, &doc.counit, n, "counit")?;
    let antipode = matrix_in(field, &doc.antipode, n, n, "antipode")?;
    Ok(HopfAlgebra::new(algebra, comul, counit, antipode)?)
}

/// Inline form: the Hopf algebra and the algebra are embedded.
pub fn action_to_doc(a: &Action) -> ActionDoc {
    ActionDoc {
        hopf: Embedded::Inline(hopf_to_doc(a.hopf())),
        algebra: Embedded::Inline(algebra_to_doc(a.target())),
        mode: a.mode().to_string(),
        act: a.matrices().iter().map(matrix_out).collect(),
        sigma: a.cocycle().map(|c| matrix_out(c.sigma())),
        sigma_inverse: a.cocycle().map(|c| matrix_out(c.inverse())),
    }
}

fn resolve<T: for<'de> Deserialize<'de> + Clone>(
    e: &Embedded<T>,
    base: Option<&Path>,
) -> Result<T, IoError> {
    match e {
        Embedded::Inline(t) => Ok(t.clone()),
        Embedded::Path(p) => {
            let path = match base {
                Some(dir) => dir.join(p),
                None => PathBuf::from(p),
            };
            let text = read(&path)?;
            Ok(serde_json::from_str(&text)?)
        }
    }
}

/// Paths inside the document are resolved against `base`.
pub fn action_from_doc(doc: &ActionDoc, base: Option<&Path>) -> Result<Action, IoError> {
    let hopf = hopf_from_doc(&resolve(&doc.hopf, base)?)?;
    let algebra = algebra_from_doc(&resolve(&doc.algebra, base)?)?;
    let (field, n, m) = (algebra.field(), hopf.dim(), algebra.dim());
    let mode: ActionMode = doc.mode.parse().map_err(IoError::Shape)?;
    if doc.act.len() != n {
        return Err(IoError::Shape(format!("act must list {n} matrices")));
    }
    let act = doc
        .act
        .iter()
        .map(|rows| matrix_in(field, rows, m, m, "action matrix"))
        .collect::<Result<Vec<_>, _>>()?;
    let cocycle = match (&doc.sigma, &doc.sigma_inverse) {
        (None, None) => None,
        (Some(s), inv) => {
            let sigma = matrix_in(field, s, m, n * n, "sigma")?;
            let c = Cocycle::new(&hopf, &algebra, sigma)?;
            if let Some(inv) = inv {
                if matrix_in(field, inv, m, n * n, "sigma_inverse")? != *c.inverse() {
                    return Err(IoError::Shape(
                        "sigma_inverse is not the convolution inverse of sigma".into(),
                    ));
                }
            }
            Some(c)
        }
        (None, Some(_)) => return Err(IoError::Shape("sigma_inverse given without sigma".into())),
    };
    Ok(Action::new(
        Arc::new(hopf),
        Arc::new(algebra),
        act,
        mode,
        cocycle,
    )?)
}

pub fn report_to_doc(r: &RadicalReport) -> RadicalDoc {
    RadicalDoc {
        radical: r.kind.to_string(),
        field: r.space.field().to_string(),
        ambient_dim: r.space.ambient_dim(),
        dim: r.space.dim(),
        basis: r.space.basis_vectors().iter().map(|v| vec_out(v)).collect(),
        method: r.method.clone(),
        exhaustive: r.exhaustive,
        seed: r.seed,
    }
}

pub fn report_from_doc(doc: &RadicalDoc) -> Result<RadicalReport, IoError> {
    let field: FieldSpec = doc.field.parse()?;
    let kind: RadicalKind = doc.radical.parse().map_err(IoError::Shape)?;
    let basis = doc
        .basis
        .iter()
        .map(|v| vec_in(field, v, doc.ambient_dim, "basis vector"))
        .collect::<Result<Vec<_>, _>>()?;
    let space = Subspace::span(field, doc.ambient_dim, &basis)?;
    if space.dim() != doc.dim {
        return Err(IoError::Shape(format!(
            "basis spans dimension {}, not {}",
            space.dim(),
            doc.dim
        )));
    }
    Ok(RadicalReport {
        kind,
        space,
        method: doc.method.clone(),
        exhaustive: doc.exhaustive,
        seed: doc.seed,
    })
}

/// A loaded and validated workspace object.
#[derive(Clone, Debug)]
pub enum Loaded {
    Algebra(StructureAlgebra),
    Hopf(HopfAlgebra),
    Action(Action),
    Group(GroupTable),
    Report(RadicalReport),
    Suite(SuiteReport),
    Instance(Instance),
}

impl Loaded {
    pub fn kind(&self) -> &'static str {
        match self {
            Loaded::Algebra(_) => "algebra",
            Loaded::Hopf(_) => "hopf",
            Loaded::Action(_) => "action",
            Loaded::Group(_) => "group",
            Loaded::Report(_) => "report",
            Loaded::Suite(_) => "suite",
            Loaded::Instance(_) => "instance",
        }
    }
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|e| IoError::Read {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn load_str(text: &str, base: Option<&Path>) -> Result<Loaded, IoError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    if let Some(kind) = value.get("kind").and_then(|k| k.as_str()) {
        if kind == "group" {
            let doc: GroupDoc = serde_json::from_value(value)?;
            return Ok(Loaded::Group(GroupTable::try_from(doc)?));
        }
    }
    Ok(match serde_json::from_value::<WorkspaceFile>(value)? {
        WorkspaceFile::Algebra(d) => Loaded::Algebra(algebra_from_doc(&d)?),
        WorkspaceFile::Hopf(d) => Loaded::Hopf(hopf_from_doc(&d)?),
        WorkspaceFile::Action(d) => Loaded::Action(action_from_doc(&d, base)?),
        WorkspaceFile::Group(d) => Loaded::Group(GroupTable::try_from(d)?),
        WorkspaceFile::Report(d) => Loaded::Report(report_from_doc(&d)?),
        WorkspaceFile::Suite(s) => Loaded::Suite(s),
        WorkspaceFile::Instance(w) => Loaded::Instance(
            w.load_from(base)
                .map_err(|e| IoError::Shape(e.to_string()))?,
        ),
    })
}

pub fn load_file(path: &Path) -> Result<Loaded, IoError> {
    let text = read(path)?;
    load_str(&text, path.parent())
}

pub fn save_algebra(a: &StructureAlgebra) -> String {
    WorkspaceFile::Algebra(algebra_to_doc(a)).to_json()
}

pub fn save_hopf(h: &HopfAlgebra) -> String {
    WorkspaceFile::Hopf(hopf_to_doc(h)).to_json()
}

pub fn save_action(a: &Action) -> String {
    WorkspaceFile::Action(action_to_doc(a)).to_json()
}

pub fn save_group(g: &GroupTable) -> String {
    WorkspaceFile::Group(GroupDoc::from(g.clone())).to_json()
}

pub fn save_report(r: &RadicalReport) -> String {
    WorkspaceFile::Report(report_to_doc(r)).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::derivation_action;
    use crate::algebra::catalog::{element, matrix_algebra, truncated_polynomial};
    use crate::algebra::jacobson_radical;
    use crate::hopf::{dual_hopf, group_algebra};

    #[test]
    fn round_trips() {
        let q = FieldSpec::Rationals;
        let m2 = matrix_algebra(q, 2)
            .change_basis(&Matrix::from_i64(
                q,
                4,
                4,
                &[2, 0, 0, 1, 0, 1, 0, 0, 0, 0, 3, 0, 1, 0, 0, 1],
            ))
            .unwrap();
        match load_str(&save_algebra(&m2), None).unwrap() {
            Loaded::Algebra(b) => assert_eq!(b, m2),
            other => panic!("got {}", other.kind()),
        }
        let h = dual_hopf(&group_algebra(&GroupTable::symmetric3(), q).unwrap()).unwrap();
        match load_str(&save_hopf(&h), None).unwrap() {
            Loaded::Hopf(g) => assert_eq!(g, h),
            other => panic!("got {}", other.kind()),
        }
        let k = FieldSpec::prime(3).unwrap();
        let a = derivation_action(
            Arc::new(truncated_polynomial(k, 3)),
            &element(k, &[1, 1, 0]),
        )
        .unwrap();
        let text = save_action(&a);
        match load_str(&text, None).unwrap() {
            Loaded::Action(b) => {
                assert_eq!(b, a);
                assert_eq!(save_action(&b), text);
            }
            other => panic!("got {}", other.kind()),
        }
        let r = jacobson_radical(a.target()).unwrap();
        match load_str(&save_report(&r), None).unwrap() {
            Loaded::Report(s) => assert_eq!(s, r),
            other => panic!("got {}", other.kind()),
        }
        let g = GroupTable::symmetric3();
        match load_str(&save_group(&g), None).unwrap() {
            Loaded::Group(s) => assert_eq!(s, g),
            other => panic!("got {}", other.kind()),
        }
    }

    #[test]
    fn invalid_documents_are_rejected() {
        let k = FieldSpec::prime(2).unwrap();
        let mut doc = algebra_to_doc(&truncated_polynomial(k, 2));
        doc.table[1][1] = vec!["1".into(), "0".into()];
        // x² = 1 is still associative, but a non-unital table is not
        doc.unit = vec!["0".into(), "1".into()];
        let text = WorkspaceFile::Algebra(doc).to_json();
        assert!(matches!(load_str(&text, None), Err(IoError::Algebra(_))));
        assert!(matches!(load_str("{", None), Err(IoError::Json(_))));
        let bad_group = r#"{"kind":"group","name":"bad","elements":["a","b"],"mul":[[0,0],[0,0]]}"#;
        assert!(load_str(bad_group, None).is_err());
    }
}
