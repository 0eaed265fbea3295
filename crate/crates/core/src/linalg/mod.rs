//! Exact linear algebra over the rationals and prime fields.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::Matrix;
pub use scalar::{FieldSpec, Scalar};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch {
        expected: FieldSpec,
        found: FieldSpec,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Free-standing form of [`Matrix::rref`].
pub fn rref(m: &Matrix) -> Result<(Matrix, Vec<usize>), LinalgError> {
    m.rref()
}

pub fn kernel(m: &Matrix) -> Result<Subspace, LinalgError> {
    m.kernel()
}

pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
    a.solve(b)
}

/// `a + b` for equal-length vectors.
pub fn add_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vec(s: &Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| s * x).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// `acc += s * v`.
pub fn axpy(acc: &mut [Scalar], s: &Scalar, v: &[Scalar]) {
    if s.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            a.add_product(s, x);
        }
    }
}

/// A uniformly random vector over `𝔽_p`; over `ℚ` entries are small integers in `-3..=3`.
pub fn random_vector<R: rand::Rng + ?Sized>(
    field: FieldSpec,
    n: usize,
    rng: &mut R,
) -> Vec<Scalar> {
    (0..n)
        .map(|_| match field {
            FieldSpec::Prime(p) => field.residue(rng.gen_range(0..p)),
            FieldSpec::Rationals => field.from_i64(rng.gen_range(-3..=3)),
        })
        .collect()
}
