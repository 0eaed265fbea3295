//! Finite-dimensional associative unital algebras given by structure constants.

pub mod catalog;
mod ideals;
mod radical;
mod report;

pub use ideals::{
    closure, ideal_generated, ideal_power_sequence, ideal_product, is_ideal, is_nilpotent,
    quotient_algebra, subalgebra_unitization, Ideal, Quotient,
};
pub use radical::{
    jacobson_radical, jacobson_radical_with_cap, radical_by_enumeration, semisimplicity_certificate,
};
pub use report::{RadicalKind, RadicalReport};

use thiserror::Error;

use crate::linalg::{FieldSpec, LinalgError, Matrix, Scalar, Subspace};

/// Largest algebra dimension the dense kernels accept.
pub const MAX_DIM: usize = 64;

/// Default bound on `|field|^dim` for exhaustive element loops.
pub const DEFAULT_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("malformed algebra: {0}")]
    Shape(String),
    #[error("associativity fails on basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("unit law fails ({side}) on basis element {basis}")]
    UnitLaw { side: &'static str, basis: usize },
    #[error("subspace is not a two-sided ideal")]
    NotAnIdeal,
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    TooLarge { dim: usize, max: usize },
    #[error("unsupported size: {0}")]
    Unsupported(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// `e_i e_j = Σ_k mul[(i*dim + j)*dim + k] e_k`.
#[derive(Clone, Debug)]
pub struct StructureAlgebra {
    field: FieldSpec,
    dim: usize,
    labels: Vec<String>,
    mul: Vec<Scalar>,
    unit: Vec<Scalar>,
    // nonzero entries of each e_i e_j, indexed by i*dim + j
    sparse: Vec<Vec<(usize, Scalar)>>,
}

impl PartialEq for StructureAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.dim == other.dim
            && self.labels == other.labels
            && self.mul == other.mul
            && self.unit == other.unit
    }
}

impl Eq for StructureAlgebra {}

impl StructureAlgebra {
    /// Assemble an algebra from raw parts. Only shapes and fields are checked;
    /// call [`StructureAlgebra::validate`] for the algebra axioms.
    pub fn from_parts(
        field: FieldSpec,
        labels: Vec<String>,
        mul: Vec<Scalar>,
        unit: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if dim > MAX_DIM {
            return Err(AlgebraError::TooLarge { dim, max: MAX_DIM });
        }
        if mul.len() != dim * dim * dim {
            return Err(AlgebraError::Shape(format!(
                "structure tensor has {} entries, expected {}",
                mul.len(),
                dim * dim * dim
            )));
        }
        if unit.len() != dim {
            return Err(AlgebraError::Shape(format!(
                "unit has length {}, expected {dim}",
                unit.len()
            )));
        }
        if let Some(bad) = mul.iter().chain(&unit).find(|s| s.field() != field) {
            return Err(LinalgError::FieldMismatch {
                expected: field,
                found: bad.field(),
            }
            .into());
        }
        let sparse = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter_map(|k| {
                        let c = &mul[ij * dim + k];
                        (!c.is_zero()).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        Ok(StructureAlgebra {
            field,
            dim,
            labels,
            mul,
            unit,
            sparse,
        })
    }

    /// Build from a closure giving the product of two basis elements.
    pub fn from_products(
        field: FieldSpec,
        labels: Vec<String>,
        unit: Vec<Scalar>,
        mut product: impl FnMut(usize, usize) -> Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        let mut mul = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j);
                if v.len() != dim {
                    return Err(AlgebraError::Shape(format!(
                        "product e{i}*e{j} has wrong length"
                    )));
                }
                mul.extend(v);
            }
        }
        Self::from_parts(field, labels, mul, unit)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constants(&self) -> &[Scalar] {
        &self.mul
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn zero(&self) -> Vec<Scalar> {
        self.field.zeros(self.dim)
    }

    pub fn basis_element(&self, i: usize) -> Vec<Scalar> {
        self.field.unit_vector(self.dim, i)
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let start = (i * self.dim + j) * self.dim;
        &self.mul[start..start + self.dim]
    }

    pub(crate) fn sparse_product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.sparse[i * self.dim + j]
    }

    /// Product of two elements. Inputs must have length `dim`.
    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(a.len(), self.dim);
        debug_assert_eq!(b.len(), self.dim);
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.sparse_product(i, j) {
                    out[*k].add_product(&xy, c);
                }
            }
        }
        out
    }

    /// Checked product.
    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        self.check_element(a)?;
        self.check_element(b)?;
        Ok(self.mul(a, b))
    }

    /// `e_i · v`.
    pub fn left_basis_mul(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        for (j, y) in v.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            for (k, c) in self.sparse_product(i, j) {
                out[*k].add_product(y, c);
            }
        }
        out
    }

    /// `v · e_j`.
    pub fn right_basis_mul(&self, v: &[Scalar], j: usize) -> Vec<Scalar> {
        let mut out = self.zero();
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (k, c) in self.sparse_product(i, j) {
                out[*k].add_product(x, c);
            }
        }
        out
    }

    pub fn check_element(&self, a: &[Scalar]) -> Result<(), AlgebraError> {
        if a.len() != self.dim {
            return Err(LinalgError::DimensionMismatch {
                expected: self.dim,
                found: a.len(),
            }
            .into());
        }
        if let Some(bad) = a.iter().find(|s| s.field() != self.field) {
            return Err(LinalgError::FieldMismatch {
                expected: self.field,
                found: bad.field(),
            }
            .into());
        }
        Ok(())
    }

    /// Matrix of `x ↦ a x`; column `j` is `a e_j`.
    pub fn left_mult_matrix(&self, a: &[Scalar]) -> Result<Matrix, AlgebraError> {
        self.check_element(a)?;
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.mul(a, &self.basis_element(j)))
            .collect();
        Ok(Matrix::from_columns(self.field, self.dim, &cols)?)
    }

    /// Matrix of `x ↦ x a`.
    pub fn right_mult_matrix(&self, a: &[Scalar]) -> Result<Matrix, AlgebraError> {
        self.check_element(a)?;
        let cols: Vec<Vec<Scalar>> = (0..self.dim)
            .map(|j| self.mul(&self.basis_element(j), a))
            .collect();
        Ok(Matrix::from_columns(self.field, self.dim, &cols)?)
    }

    /// Checks associativity and the two unit laws on basis elements, reporting
    /// the first failure.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        self.validate_associativity()?;
        self.validate_unit()
    }

    /// Associativity on every basis triple.
    pub fn validate_associativity(&self) -> Result<(), AlgebraError> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..n {
                    let left = self.right_basis_mul(&ij, k);
                    let jk = self.basis_product(j, k);
                    let right = self.left_basis_mul(i, jk);
                    if left != right {
                        return Err(AlgebraError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn validate_unit(&self) -> Result<(), AlgebraError> {
        for i in 0..self.dim {
            let e = self.basis_element(i);
            if self.mul(&self.unit, &e) != e {
                return Err(AlgebraError::UnitLaw {
                    side: "left",
                    basis: i,
                });
            }
            if self.mul(&e, &self.unit) != e {
                return Err(AlgebraError::UnitLaw {
                    side: "right",
                    basis: i,
                });
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim)
            .all(|i| (0..self.dim).all(|j| self.basis_product(i, j) == self.basis_product(j, i)))
    }

    /// The same algebra in the basis `f_j = Σ_i change[i][j] e_i`.
    pub fn change_basis(&self, change: &Matrix) -> Result<StructureAlgebra, AlgebraError> {
        let inv = change
            .inverse()?
            .ok_or_else(|| AlgebraError::Shape("basis change is singular".into()))?;
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| change.column(j)).collect();
        let unit = inv.mul_vec(&self.unit)?;
        let labels = (0..self.dim).map(|j| format!("f{j}")).collect();
        StructureAlgebra::from_products(self.field, labels, unit, |a, b| {
            inv.mul_vec(&self.mul(&cols[a], &cols[b]))
                .expect("square change of basis")
        })
    }

    /// Left regular representation of every basis element.
    pub fn regular_matrices(&self) -> Vec<Matrix> {
        (0..self.dim)
            .map(|i| {
                self.left_mult_matrix(&self.basis_element(i))
                    .expect("basis element")
            })
            .collect()
    }

    pub fn whole(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_ideal(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }
}
