//! Standard algebras used as building blocks for instances.

use super::{AlgebraError, StructureAlgebra};
use crate::linalg::{FieldSpec, Scalar};

/// `k[x]/(x^m)` in the power basis `1, x, ..., x^{m-1}`.
pub fn truncated_polynomial(field: FieldSpec, m: usize) -> StructureAlgebra {
    assert!(m >= 1, "truncated polynomial needs m >= 1");
    let labels = (0..m)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    StructureAlgebra::from_products(field, labels, field.unit_vector(m, 0), |i, j| {
        let mut v = field.zeros(m);
        if i + j < m {
            v[i + j] = field.one();
        }
        v
    })
    .expect("well-formed truncated polynomial algebra")
}

/// `M_n(k)` with matrix units `e_ij` at index `i*n + j`.
pub fn matrix_algebra(field: FieldSpec, n: usize) -> StructureAlgebra {
    let dim = n * n;
    let labels = (0..dim)
        .map(|t| format!("e{}{}", t / n + 1, t % n + 1))
        .collect();
    let mut unit = field.zeros(dim);
    for i in 0..n {
        unit[i * n + i] = field.one();
    }
    StructureAlgebra::from_products(field, labels, unit, |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        let mut v = field.zeros(dim);
        if j == k {
            v[i * n + l] = field.one();
        }
        v
    })
    .expect("well-formed matrix algebra")
}

/// Index pairs `(i, j)` with `i <= j`, in row-major order.
pub fn upper_triangular_positions(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Upper triangular `n × n` matrices.
pub fn upper_triangular(field: FieldSpec, n: usize) -> StructureAlgebra {
    let pos = upper_triangular_positions(n);
    let dim = pos.len();
    let index = |i: usize, j: usize| pos.iter().position(|&p| p == (i, j)).unwrap();
    let labels = pos
        .iter()
        .map(|(i, j)| format!("e{}{}", i + 1, j + 1))
        .collect();
    let mut unit = field.zeros(dim);
    for i in 0..n {
        unit[index(i, i)] = field.one();
    }
    StructureAlgebra::from_products(field, labels, unit, |a, b| {
        let (i, j) = pos[a];
        let (k, l) = pos[b];
        let mut v = field.zeros(dim);
        if j == k {
            v[index(i, l)] = field.one();
        }
        v
    })
    .expect("well-formed triangular algebra")
}

/// `A ⊕ B` with componentwise multiplication.
pub fn direct_sum(
    a: &StructureAlgebra,
    b: &StructureAlgebra,
) -> Result<StructureAlgebra, AlgebraError> {
    if a.field() != b.field() {
        return Err(crate::linalg::LinalgError::FieldMismatch {
            expected: a.field(),
            found: b.field(),
        }
        .into());
    }
    let field = a.field();
    let (n, m) = (a.dim(), b.dim());
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("({l},0)"))
        .chain(b.labels().iter().map(|l| format!("(0,{l})")))
        .collect();
    let mut unit = a.unit().to_vec();
    unit.extend(b.unit().iter().cloned());
    StructureAlgebra::from_products(field, labels, unit, |i, j| {
        let mut v = field.zeros(n + m);
        if i < n && j < n {
            v[..n].clone_from_slice(a.basis_product(i, j));
        } else if i >= n && j >= n {
            v[n..].clone_from_slice(b.basis_product(i - n, j - n));
        }
        v
    })
}

/// Trivial extension `A ⋉ A`: pairs `(a, m)` with `(a, m)(b, n) = (ab, an + mb)`.
pub fn trivial_extension(a: &StructureAlgebra) -> Result<StructureAlgebra, AlgebraError> {
    let field = a.field();
    let n = a.dim();
    let labels = a
        .labels()
        .iter()
        .map(|l| format!("({l},0)"))
        .chain(a.labels().iter().map(|l| format!("(0,{l})")))
        .collect();
    let mut unit = a.unit().to_vec();
    unit.extend(field.zeros(n));
    StructureAlgebra::from_products(field, labels, unit, |i, j| {
        let mut v = field.zeros(2 * n);
        match (i < n, j < n) {
            (true, true) => v[..n].clone_from_slice(a.basis_product(i, j)),
            (true, false) => v[n..].clone_from_slice(a.basis_product(i, j - n)),
            (false, true) => v[n..].clone_from_slice(a.basis_product(i - n, j)),
            (false, false) => {}
        }
        v
    })
}

/// The zero ring (dimension 0, where `1 = 0`).
pub fn zero_algebra(field: FieldSpec) -> StructureAlgebra {
    StructureAlgebra::from_parts(field, Vec::new(), Vec::new(), Vec::new()).expect("empty algebra")
}

/// The ground field as a one-dimensional algebra.
pub fn ground_field(field: FieldSpec) -> StructureAlgebra {
    truncated_polynomial(field, 1)
}

/// `k^n` with orthogonal idempotent basis.
pub fn diagonal_algebra(field: FieldSpec, n: usize) -> StructureAlgebra {
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    let unit = vec![field.one(); n];
    StructureAlgebra::from_products(field, labels, unit, |i, j| {
        if i == j {
            field.unit_vector(n, i)
        } else {
            field.zeros(n)
        }
    })
    .expect("well-formed diagonal algebra")
}

/// Scalar helper for building elements from small integers.
pub fn element(field: FieldSpec, coords: &[i64]) -> Vec<Scalar> {
    coords.iter().map(|&c| field.from_i64(c)).collect()
}
