use std::fmt;

use super::scalar::mod_inv;
use super::{FieldSpec, LinalgError, Scalar, Subspace};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<Scalar>,
    ) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(LinalgError::FieldMismatch {
                expected: field,
                found: bad.field(),
            });
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub(crate) fn from_data_unchecked(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        data: Vec<Scalar>,
    ) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: field.zeros(rows * cols),
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(
        field: FieldSpec,
        cols: usize,
        rows: &[Vec<Scalar>],
    ) -> Result<Self, LinalgError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Matrix::new(field, rows.len(), cols, data)
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(
        field: FieldSpec,
        rows: usize,
        columns: &[Vec<Scalar>],
    ) -> Result<Self, LinalgError> {
        Ok(Matrix::from_rows(field, rows, columns)?.transpose())
    }

    pub fn from_i64(field: FieldSpec, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix {
            field,
            rows,
            cols,
            data: entries.iter().map(|&e| field.from_i64(e)).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix::from_data_unchecked(self.field, self.cols, self.rows, data)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other.field)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j].add_product(a, b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = self.field.zeros(self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    o.add_product(a, x);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other.field)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Matrix::from_data_unchecked(
            self.field, self.rows, self.cols, data,
        ))
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = self.data.iter().map(|a| a * s).collect();
        Matrix::from_data_unchecked(self.field, self.rows, self.cols, data)
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.check_field(other.field)?;
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix::from_data_unchecked(
            self.field,
            self.rows + other.rows,
            self.cols,
            data,
        ))
    }

    pub fn trace(&self) -> Scalar {
        let mut t = self.field.zero();
        for i in 0..self.rows.min(self.cols) {
            t += self.get(i, i);
        }
        t
    }

    fn check_field(&self, other: FieldSpec) -> Result<(), LinalgError> {
        if self.field != other {
            Err(LinalgError::FieldMismatch {
                expected: self.field,
                found: other,
            })
        } else {
            Ok(())
        }
    }

    fn check_uniform(&self) -> Result<(), LinalgError> {
        match self.data.iter().find(|s| s.field() != self.field) {
            Some(bad) => Err(LinalgError::FieldMismatch {
                expected: self.field,
                found: bad.field(),
            }),
            None => Ok(()),
        }
    }

    /// Canonical reduced row-echelon form with zero rows dropped, together with
    /// the pivot columns.
    pub fn rref(&self) -> Result<(Matrix, Vec<usize>), LinalgError> {
        self.check_uniform()?;
        let (rows, pivots) = match self.field {
            FieldSpec::Prime(p) => rref_residues(self, p),
            FieldSpec::Rationals => rref_generic(self),
        };
        let m = Matrix::from_data_unchecked(self.field, pivots.len(), self.cols, rows);
        debug_assert!(m.data.iter().all(Scalar::is_canonical));
        Ok((m, pivots))
    }

    pub fn rank(&self) -> Result<usize, LinalgError> {
        Ok(self.rref()?.1.len())
    }

    /// Null space `{v : self * v = 0}`.
    pub fn kernel(&self) -> Result<Subspace, LinalgError> {
        let (r, pivots) = self.rref()?;
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = self.field.zeros(n);
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        Subspace::span(self.field, n, &basis)
    }

    /// Some `x` with `self * x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>, LinalgError> {
        if b.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + 1));
        for r in 0..self.rows {
            data.extend(self.row(r).iter().cloned());
            data.push(b[r].clone());
        }
        let aug = Matrix::new(self.field, self.rows, self.cols + 1, data)?;
        let (r, pivots) = aug.rref()?;
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = self.field.zeros(self.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Result<Option<Matrix>, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut data = Vec::with_capacity(n * 2 * n);
        for r in 0..n {
            data.extend(self.row(r).iter().cloned());
            for c in 0..n {
                data.push(if r == c {
                    self.field.one()
                } else {
                    self.field.zero()
                });
            }
        }
        let aug = Matrix::new(self.field, n, 2 * n, data)?;
        let (r, pivots) = aug.rref()?;
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Ok(Some(inv))
    }
}

fn rref_residues(m: &Matrix, p: u64) -> (Vec<Scalar>, Vec<usize>) {
    let cols = m.cols;
    let mut rows: Vec<Vec<u64>> = (0..m.rows)
        .map(|r| {
            m.row(r)
                .iter()
                .map(|s| s.residue_value().unwrap())
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(next, found);
        let inv = mod_inv(rows[next][c], p).unwrap();
        for x in rows[next][c..].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = std::mem::take(&mut rows[next]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next {
                continue;
            }
            let f = row[c];
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if *y != 0 {
                    *x = (*x + neg * y) % p;
                }
            }
        }
        rows[next] = pivot_row;
        pivots.push(c);
        next += 1;
    }
    let data = rows
        .into_iter()
        .take(pivots.len())
        .flat_map(|r| {
            r.into_iter().map(move |v| Scalar::Residue {
                value: v,
                modulus: p,
            })
        })
        .collect();
    (data, pivots)
}

fn rref_generic(m: &Matrix) -> (Vec<Scalar>, Vec<usize>) {
    let cols = m.cols;
    let mut rows: Vec<Vec<Scalar>> = m.row_vectors();
    let mut pivots = Vec::new();
    let mut next = 0;
    for c in 0..cols {
        if next == rows.len() {
            break;
        }
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][c].inverse().unwrap();
        for x in rows[next][c..].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = std::mem::take(&mut rows[next]);
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &(&f * y);
                }
            }
        }
        rows[next] = pivot_row;
        pivots.push(c);
        next += 1;
    }
    let data = rows.into_iter().take(pivots.len()).flatten().collect();
    (data, pivots)
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_identity_f2() {
        let f2 = FieldSpec::Prime(2);
        let id = Matrix::identity(f2, 2);
        let (r, piv) = id.rref().unwrap();
        assert_eq!(r, id);
        assert_eq!(piv, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one_rational() {
        let q = FieldSpec::Rationals;
        let m = Matrix::from_i64(q, 2, 2, &[2, 4, 1, 2]);
        let (r, piv) = m.rref().unwrap();
        assert_eq!(r, Matrix::from_i64(q, 1, 2, &[1, 2]));
        assert_eq!(piv, vec![0]);
    }

    #[test]
    fn rref_zero_matrix() {
        let f3 = FieldSpec::Prime(3);
        let (r, piv) = Matrix::zeros(f3, 3, 3).rref().unwrap();
        assert_eq!(r.rows(), 0);
        assert!(piv.is_empty());
    }

    #[test]
    fn rref_rejects_mixed_fields() {
        let f3 = FieldSpec::Prime(3);
        let data = vec![f3.one(), FieldSpec::Prime(5).one()];
        let m = Matrix::from_data_unchecked(f3, 1, 2, data);
        assert!(matches!(m.rref(), Err(LinalgError::FieldMismatch { .. })));
        assert!(Matrix::new(f3, 1, 2, vec![f3.one(), FieldSpec::Rationals.one()]).is_err());
    }

    #[test]
    fn kernel_examples() {
        let f2 = FieldSpec::Prime(2);
        assert_eq!(Matrix::identity(f2, 3).kernel().unwrap().dim(), 0);
        assert_eq!(Matrix::zeros(f2, 2, 3).kernel().unwrap().dim(), 3);
        // [[1,1]] over F_2: of the four vectors only 00 and 11 are killed.
        let k = Matrix::from_i64(f2, 1, 2, &[1, 1]).kernel().unwrap();
        let all: Vec<Vec<Scalar>> = (0..4u64)
            .map(|b| vec![f2.residue(b & 1), f2.residue(b >> 1)])
            .collect();
        let killed: Vec<_> = all.iter().filter(|v| v[0] == v[1]).cloned().collect();
        assert_eq!(k, Subspace::span(f2, 2, &killed).unwrap());
        assert_eq!(k.dim(), 1);
    }

    #[test]
    fn solve_and_inverse() {
        let q = FieldSpec::Rationals;
        let a = Matrix::from_i64(q, 2, 2, &[1, 2, 3, 4]);
        let x = a.solve(&[q.from_i64(5), q.from_i64(6)]).unwrap().unwrap();
        assert_eq!(a.mul_vec(&x).unwrap(), vec![q.from_i64(5), q.from_i64(6)]);
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(q, 2));
        let singular = Matrix::from_i64(q, 2, 2, &[1, 2, 2, 4]);
        assert!(singular.inverse().unwrap().is_none());
        assert!(singular.solve(&[q.one(), q.zero()]).unwrap().is_none());
    }
}
