use super::{FieldSpec, LinalgError, Matrix, Scalar};

/// A linear subspace of `field^ambient`, stored by its canonical reduced
/// row-echelon basis. Two subspaces are equal iff their representations are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(
        field: FieldSpec,
        ambient: usize,
        vectors: &[Vec<Scalar>],
    ) -> Result<Self, LinalgError> {
        let m = Matrix::from_rows(field, ambient, vectors)?;
        Self::row_space(&m)
    }

    pub fn row_space(m: &Matrix) -> Result<Self, LinalgError> {
        let (basis, pivots) = m.rref()?;
        Ok(Subspace {
            ambient: m.cols(),
            basis,
            pivots,
        })
    }

    /// Column space of `m`, i.e. the image of the linear map it represents.
    pub fn image(m: &Matrix) -> Result<Self, LinalgError> {
        Self::row_space(&m.transpose())
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, v: &[Scalar]) -> Result<(), LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: v.len(),
            });
        }
        if let Some(bad) = v.iter().find(|s| s.field() != self.field()) {
            return Err(LinalgError::FieldMismatch {
                expected: self.field(),
                found: bad.field(),
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.field() != other.field() {
            return Err(LinalgError::FieldMismatch {
                expected: self.field(),
                found: other.field(),
            });
        }
        if self.ambient != other.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// `v` minus its component along the pivot coordinates: zero iff `v` lies
    /// in the subspace. Linear in `v`.
    pub fn residual(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (row, &pc) in self.pivots.iter().enumerate() {
            if out[pc].is_zero() {
                continue;
            }
            let f = out[pc].clone();
            for (x, b) in out.iter_mut().zip(self.basis.row(row)) {
                if !b.is_zero() {
                    *x -= &(&f * b);
                }
            }
        }
        out
    }

    pub fn member(&self, v: &[Scalar]) -> Result<bool, LinalgError> {
        self.check(v)?;
        Ok(self.residual(v).iter().all(Scalar::is_zero))
    }

    /// Unchecked membership for hot loops over vectors known to be well-formed.
    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.residual(v).iter().all(Scalar::is_zero)
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` is a member.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Vector with the given coordinates in the echelon basis.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.field().zeros(self.ambient);
        for (row, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (x, b) in out.iter_mut().zip(self.basis.row(row)) {
                if !b.is_zero() {
                    x.add_product(c, b);
                }
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        Subspace::row_space(&self.basis.vstack(&other.basis)?)
    }

    /// Span of the subspace together with extra vectors.
    pub fn extend(&self, vectors: &[Vec<Scalar>]) -> Result<Subspace, LinalgError> {
        if vectors.is_empty() {
            return Ok(self.clone());
        }
        let extra = Matrix::from_rows(self.field(), self.ambient, vectors)?;
        Subspace::row_space(&self.basis.vstack(&extra)?)
    }

    /// Rows spanning the annihilator: `v` is a member iff every row dots to 0.
    pub fn constraints(&self) -> Result<Matrix, LinalgError> {
        let ann = self.basis.kernel()?;
        Ok(ann.basis.clone())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        let stacked = self.constraints()?.vstack(&other.constraints()?)?;
        stacked.kernel()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.field() == other.field()
            && self.ambient == other.ambient
            && (0..self.dim()).all(|r| other.contains(self.basis.row(r)))
    }

    /// Indices of the standard basis vectors spanning the deterministic
    /// complement (the non-pivot coordinates).
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn complement(&self) -> Vec<Vec<Scalar>> {
        self.complement_indices()
            .into_iter()
            .map(|c| self.field().unit_vector(self.ambient, c))
            .collect()
    }

    /// `{x : map * x ∈ self}` for a linear map into the ambient space.
    pub fn preimage(&self, map: &Matrix) -> Result<Subspace, LinalgError> {
        if map.rows() != self.ambient {
            return Err(LinalgError::DimensionMismatch {
                expected: self.ambient,
                found: map.rows(),
            });
        }
        let columns: Vec<Vec<Scalar>> = (0..map.cols())
            .map(|c| self.residual(&map.column(c)))
            .collect();
        let reduced = Matrix::from_columns(self.field(), self.ambient, &columns)?;
        reduced.kernel()
    }

    /// Image of the subspace under a linear map.
    pub fn map(&self, map: &Matrix) -> Result<Subspace, LinalgError> {
        let images: Result<Vec<_>, _> = (0..self.dim())
            .map(|r| map.mul_vec(self.basis.row(r)))
            .collect();
        Subspace::span(self.field(), map.rows(), &images?)
    }

    /// Every element of the subspace over a finite field, in a fixed order.
    /// Returns `None` for infinite fields or when the count exceeds `cap`.
    pub fn elements(&self, cap: u64) -> Option<Vec<Vec<Scalar>>> {
        let q = self.field().order()?;
        let count = q.checked_pow(self.dim() as u32)?;
        if count > cap {
            return None;
        }
        let field = self.field();
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0u64; self.dim()];
        for _ in 0..count {
            let coeffs: Vec<Scalar> = digits.iter().map(|&d| field.residue(d)).collect();
            out.push(self.combine(&coeffs));
            for d in digits.iter_mut() {
                *d += 1;
                if *d < q {
                    break;
                }
                *d = 0;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(field: FieldSpec, n: usize, i: usize) -> Vec<Scalar> {
        field.unit_vector(n, i)
    }

    #[test]
    fn member_of_own_span() {
        let q = FieldSpec::Rationals;
        let v = vec![q.from_i64(3), q.from_i64(-1), q.from_i64(7)];
        let s = Subspace::span(q, 3, std::slice::from_ref(&v)).unwrap();
        assert!(s.member(&v).unwrap());
        assert!(!s.member(&e(q, 3, 0)).unwrap());
        assert!(s.member(&[q.one()]).is_err());
    }

    #[test]
    fn coordinate_intersection() {
        let f3 = FieldSpec::Prime(3);
        let a = Subspace::span(f3, 3, &[e(f3, 3, 0), e(f3, 3, 1)]).unwrap();
        let b = Subspace::span(f3, 3, &[e(f3, 3, 1), e(f3, 3, 2)]).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(i, Subspace::span(f3, 3, &[e(f3, 3, 1)]).unwrap());
        // enumeration oracle: the common vectors of the two coordinate planes
        let common: Vec<_> = a
            .elements(1000)
            .unwrap()
            .into_iter()
            .filter(|v| b.contains(v))
            .collect();
        assert_eq!(common.len(), 3);
    }

    #[test]
    fn complement_is_deterministic() {
        let q = FieldSpec::Rationals;
        let s = Subspace::span(q, 3, &[vec![q.one(), q.one(), q.zero()]]).unwrap();
        assert_eq!(s.complement_indices(), vec![1, 2]);
        let sum = s.extend(&s.complement()).unwrap();
        assert!(sum.is_full());
    }

    #[test]
    fn preimage_and_map() {
        let q = FieldSpec::Rationals;
        // projection onto first coordinate
        let proj = Matrix::from_i64(q, 1, 2, &[1, 0]);
        let zero = Subspace::zero(q, 1);
        assert_eq!(
            zero.preimage(&proj).unwrap(),
            Subspace::span(q, 2, &[e(q, 2, 1)]).unwrap()
        );
        let full = Subspace::full(q, 2);
        assert_eq!(full.map(&proj).unwrap(), Subspace::full(q, 1));
    }

    #[test]
    fn element_enumeration_counts() {
        let f2 = FieldSpec::Prime(2);
        assert_eq!(Subspace::full(f2, 3).elements(100).unwrap().len(), 8);
        assert!(Subspace::full(f2, 10).elements(100).is_none());
        assert!(Subspace::full(FieldSpec::Rationals, 1)
            .elements(100)
            .is_none());
    }
}
