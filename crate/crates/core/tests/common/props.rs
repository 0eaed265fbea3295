//! Exact linear-algebra properties shared by the proptest target and the
//! acceptance run.

use hrl_core::linalg::{FieldSpec, Matrix, Scalar, Subspace};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

/// Matrices up to this size; small enough for exhaustive shrinking.
pub const MAX_DIM: usize = 6;

pub fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::prime(2).unwrap()),
        Just(FieldSpec::prime(3).unwrap()),
        Just(FieldSpec::prime(5).unwrap()),
        Just(FieldSpec::Rationals),
    ]
}

fn entries(len: usize) -> impl Strategy<Value = Vec<i64>> {
    // Bias towards zero so ranks vary.
    proptest::collection::vec(prop_oneof![3 => Just(0i64), 5 => -4i64..=4], len)
}

pub fn matrix_in(field: FieldSpec, cols: usize) -> impl Strategy<Value = Matrix> {
    (0..=MAX_DIM).prop_flat_map(move |rows| {
        entries(rows * cols).prop_map(move |e| Matrix::from_i64(field, rows, cols, &e))
    })
}

pub fn matrix() -> impl Strategy<Value = Matrix> {
    (field(), 1..=MAX_DIM).prop_flat_map(|(k, cols)| matrix_in(k, cols))
}

/// A row operation: swap, scale by a nonzero constant, or add a multiple.
#[derive(Clone, Debug)]
pub enum RowOp {
    Swap(usize, usize),
    Scale(usize, i64),
    AddMultiple {
        target: usize,
        source: usize,
        factor: i64,
    },
}

pub fn row_ops() -> impl Strategy<Value = Vec<RowOp>> {
    let op = prop_oneof![
        (0..MAX_DIM, 0..MAX_DIM).prop_map(|(a, b)| RowOp::Swap(a, b)),
        (0..MAX_DIM, 1i64..=4).prop_map(|(a, c)| RowOp::Scale(a, c)),
        (0..MAX_DIM, 0..MAX_DIM, -3i64..=3).prop_map(|(target, source, factor)| {
            RowOp::AddMultiple {
                target,
                source,
                factor,
            }
        }),
    ];
    proptest::collection::vec(op, 0..12)
}

/// Applies the operations to the rows of `m`, which is the same as
/// multiplying on the left by an invertible matrix. Out-of-range indices
/// are reduced modulo the row count; degenerate steps are skipped.
pub fn apply(m: &Matrix, ops: &[RowOp]) -> Matrix {
    let k = m.field();
    let mut rows = m.row_vectors();
    let n = rows.len();
    if n == 0 {
        return m.clone();
    }
    for op in ops {
        match *op {
            RowOp::Swap(a, b) => rows.swap(a % n, b % n),
            RowOp::Scale(a, c) => {
                let c = k.from_i64(c);
                if !c.is_zero() {
                    rows[a % n] = rows[a % n].iter().map(|x| x * &c).collect();
                }
            }
            RowOp::AddMultiple {
                target,
                source,
                factor,
            } => {
                let (t, s) = (target % n, source % n);
                if t != s {
                    let c = k.from_i64(factor);
                    let src = rows[s].clone();
                    rows[t] = rows[t]
                        .iter()
                        .zip(&src)
                        .map(|(x, y)| x + &(&c * y))
                        .collect();
                }
            }
        }
    }
    Matrix::from_rows(k, m.cols(), &rows).unwrap()
}

fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// RREF is invariant under row operations and has the textbook shape.
pub fn rref_canonical(m: &Matrix, ops: &[RowOp]) -> Result<(), TestCaseError> {
    let (r, pivots) = m.rref().unwrap();
    let (r2, pivots2) = apply(m, ops).rref().unwrap();
    prop_assert_eq!(&r, &r2);
    prop_assert_eq!(&pivots, &pivots2);
    prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
    for (i, &pc) in pivots.iter().enumerate() {
        for row in 0..r.rows() {
            prop_assert_eq!(r.get(row, pc).is_one(), row == i);
            prop_assert!(row == i || r.get(row, pc).is_zero());
        }
        prop_assert!((0..pc).all(|c| r.get(i, c).is_zero()));
    }
    prop_assert_eq!(r.rref().unwrap().0, r.clone());
    Ok(())
}

/// `rank + nullity = cols`, every kernel vector is killed, and the row
/// space of `m` is that of its RREF.
pub fn rank_nullity(m: &Matrix) -> Result<(), TestCaseError> {
    let rank = m.rank().unwrap();
    let ker = m.kernel().unwrap();
    prop_assert_eq!(rank + ker.dim(), m.cols());
    for v in ker.basis_vectors() {
        prop_assert!(is_zero(&m.mul_vec(&v).unwrap()));
    }
    prop_assert_eq!(rank, m.transpose().rank().unwrap());
    let rows = Subspace::row_space(m).unwrap();
    for v in m.row_vectors() {
        prop_assert!(rows.contains(&v));
    }
    Ok(())
}

/// `A ⊆ C` implies `A + (B ∩ C) = (A + B) ∩ C`.
pub fn modular_law(a: &Matrix, b: &Matrix, c: &Matrix) -> Result<(), TestCaseError> {
    let c = Subspace::row_space(c).unwrap();
    let a = Subspace::row_space(a).unwrap().intersect(&c).unwrap();
    let b = Subspace::row_space(b).unwrap();
    prop_assert!(a.is_subspace_of(&c));
    let left = a.sum(&b.intersect(&c).unwrap()).unwrap();
    let right = a.sum(&b).unwrap().intersect(&c).unwrap();
    prop_assert_eq!(left, right);
    Ok(())
}

/// `dim(U + W) + dim(U ∩ W) = dim U + dim W`, with lattice sanity checks.
pub fn dimension_formula(u: &Matrix, w: &Matrix) -> Result<(), TestCaseError> {
    let u = Subspace::row_space(u).unwrap();
    let w = Subspace::row_space(w).unwrap();
    let sum = u.sum(&w).unwrap();
    let meet = u.intersect(&w).unwrap();
    prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + w.dim());
    prop_assert!(meet.is_subspace_of(&u) && meet.is_subspace_of(&w));
    prop_assert!(u.is_subspace_of(&sum) && w.is_subspace_of(&sum));
    prop_assert_eq!(&u.sum(&w).unwrap(), &w.sum(&u).unwrap());
    prop_assert_eq!(&u.intersect(&w).unwrap(), &w.intersect(&u).unwrap());
    Ok(())
}

pub fn same_shape_pair() -> impl Strategy<Value = (Matrix, Matrix)> {
    (field(), 1..=MAX_DIM).prop_flat_map(|(k, cols)| (matrix_in(k, cols), matrix_in(k, cols)))
}

pub fn same_shape_triple() -> impl Strategy<Value = (Matrix, Matrix, Matrix)> {
    (field(), 1..=MAX_DIM)
        .prop_flat_map(|(k, cols)| (matrix_in(k, cols), matrix_in(k, cols), matrix_in(k, cols)))
}
