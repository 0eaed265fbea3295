//! Finite-dimensional Hopf algebras carried as explicit structure tensors.

mod convolution;
mod group;

pub use convolution::{convolution_invert, convolution_unit, convolve, Coalgebra};
pub use group::{GroupDoc, GroupTable};

use thiserror::Error;

use crate::algebra::{AlgebraError, StructureAlgebra};
use crate::linalg::{axpy, FieldSpec, LinalgError, Matrix, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("malformed Hopf data: {0}")]
    Shape(String),
    #[error("{law} fails on basis {basis:?}")]
    Axiom {
        law: &'static str,
        basis: Vec<usize>,
    },
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("unsupported field: {0}")]
    Field(String),
}

/// A Hopf algebra `H` with basis `e_0..e_{n-1}`.
///
/// `comul[i][a*n + b]` is the coefficient of `e_a ⊗ e_b` in `Δ(e_i)`, column
/// `i` of `antipode` holds `S(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfAlgebra {
    algebra: StructureAlgebra,
    comul: Vec<Vec<Scalar>>,
    counit: Vec<Scalar>,
    antipode: Matrix,
}

impl HopfAlgebra {
    /// Assemble and validate.
    pub fn new(
        algebra: StructureAlgebra,
        comul: Vec<Vec<Scalar>>,
        counit: Vec<Scalar>,
        antipode: Matrix,
    ) -> Result<Self, HopfError> {
        let h = Self::from_parts(algebra, comul, counit, antipode)?;
        h.validate()?;
        Ok(h)
    }

    /// Shape and field checks only; see [`HopfAlgebra::validate`].
    pub fn from_parts(
        algebra: StructureAlgebra,
        comul: Vec<Vec<Scalar>>,
        counit: Vec<Scalar>,
        antipode: Matrix,
    ) -> Result<Self, HopfError> {
        let n = algebra.dim();
        let field = algebra.field();
        if comul.len() != n || comul.iter().any(|v| v.len() != n * n) {
            return Err(HopfError::Shape(format!(
                "comultiplication must be {n} vectors of length {}",
                n * n
            )));
        }
        if counit.len() != n {
            return Err(HopfError::Shape(format!("counit must have length {n}")));
        }
        if antipode.rows() != n || antipode.cols() != n {
            return Err(HopfError::Shape(format!("antipode must be {n}×{n}")));
        }
        let all = comul.iter().flatten().chain(&counit).chain(antipode.data());
        for s in all {
            if s.field() != field {
                return Err(LinalgError::FieldMismatch {
                    expected: field,
                    found: s.field(),
                }
                .into());
            }
        }
        if antipode.field() != field {
            return Err(LinalgError::FieldMismatch {
                expected: field,
                found: antipode.field(),
            }
            .into());
        }
        Ok(HopfAlgebra {
            algebra,
            comul,
            counit,
            antipode,
        })
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn comul(&self) -> &[Vec<Scalar>] {
        &self.comul
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.antipode
    }

    /// `Δ(v)` as a vector of length `n²`.
    pub fn coproduct(&self, v: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = self.field().zeros(n * n);
        for (i, c) in v.iter().enumerate() {
            axpy(&mut out, c, &self.comul[i]);
        }
        out
    }

    pub fn counit_of(&self, v: &[Scalar]) -> Scalar {
        let mut acc = self.field().zero();
        for (c, e) in v.iter().zip(&self.counit) {
            acc.add_product(c, e);
        }
        acc
    }

    pub fn antipode_of(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.antipode.mul_vec(v).expect("antipode is square")
    }

    /// Nonzero terms `(a, b, coefficient)` of `Δ(e_i)`.
    pub fn coproduct_terms(&self, i: usize) -> Vec<(usize, usize, Scalar)> {
        let n = self.dim();
        self.comul[i]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(ab, c)| (ab / n, ab % n, c.clone()))
            .collect()
    }

    /// Nonzero terms `(a, b, c, coefficient)` of `(Δ⊗id)Δ(e_i)`.
    pub fn double_coproduct_terms(&self, i: usize) -> Vec<(usize, usize, usize, Scalar)> {
        let mut out = Vec::new();
        for (ab, b, coef) in self.coproduct_terms(i) {
            for (a, m, c2) in self.coproduct_terms(ab) {
                out.push((a, m, b, &coef * &c2));
            }
        }
        out
    }

    /// Product in `H ⊗ H`.
    pub fn tensor_mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let alg = &self.algebra;
        let mut out = self.field().zeros(n * n);
        for (xi, xc) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (a, b) = (xi / n, xi % n);
            for (yi, yc) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let (c, d) = (yi / n, yi % n);
                let coef = xc * yc;
                for (p, u) in alg.sparse_product(a, c) {
                    let pc = &coef * u;
                    for (q, w) in alg.sparse_product(b, d) {
                        out[p * n + q].add_product(&pc, w);
                    }
                }
            }
        }
        out
    }

    /// The underlying coalgebra, for convolution.
    pub fn coalgebra(&self) -> Coalgebra {
        Coalgebra::new(self.field(), self.comul.clone(), self.counit.clone())
    }

    /// Checks coassociativity, the counit law, that Δ and ε are algebra maps
    /// and the antipode law, on basis elements; the first failure is returned.
    pub fn validate(&self) -> Result<(), HopfError> {
        self.algebra.validate()?;
        let n = self.dim();
        let field = self.field();
        let fail = |law, basis| Err(HopfError::Axiom { law, basis });

        for i in 0..n {
            let mut left = field.zeros(n * n * n);
            let mut right = field.zeros(n * n * n);
            for (ab, coef) in self.comul[i]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
            {
                let (a, b) = (ab / n, ab % n);
                for (cd, c2) in self.comul[a]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                {
                    left[cd * n + b].add_product(coef, c2);
                }
                for (cd, c2) in self.comul[b]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                {
                    right[a * n * n + cd].add_product(coef, c2);
                }
            }
            if left != right {
                return fail("coassociativity", vec![i]);
            }
        }

        for i in 0..n {
            let mut left = field.zeros(n);
            let mut right = field.zeros(n);
            for (ab, coef) in self.comul[i].iter().enumerate() {
                let (a, b) = (ab / n, ab % n);
                left[b].add_product(coef, &self.counit[a]);
                right[a].add_product(coef, &self.counit[b]);
            }
            let e = field.unit_vector(n, i);
            if left != e || right != e {
                return fail("counit law", vec![i]);
            }
        }

        let unit = self.algebra.unit();
        let unit_tensor: Vec<Scalar> = (0..n * n).map(|ab| &unit[ab / n] * &unit[ab % n]).collect();
        if self.coproduct(unit) != unit_tensor {
            return fail("Δ(1) = 1⊗1", vec![]);
        }
        if !self.counit_of(unit).is_one() {
            return fail("ε(1) = 1", vec![]);
        }
        for i in 0..n {
            for j in 0..n {
                let prod = self.algebra.basis_product(i, j);
                if self.coproduct(prod) != self.tensor_mul(&self.comul[i], &self.comul[j]) {
                    return fail("Δ multiplicative", vec![i, j]);
                }
                if self.counit_of(prod) != &self.counit[i] * &self.counit[j] {
                    return fail("ε multiplicative", vec![i, j]);
                }
            }
        }

        let s_cols: Vec<Vec<Scalar>> = (0..n).map(|c| self.antipode.column(c)).collect();
        for i in 0..n {
            let mut left = field.zeros(n);
            let mut right = field.zeros(n);
            for (ab, coef) in self.comul[i]
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
            {
                let (a, b) = (ab / n, ab % n);
                axpy(
                    &mut left,
                    coef,
                    &self.algebra.right_basis_mul(&s_cols[a], b),
                );
                axpy(
                    &mut right,
                    coef,
                    &self.algebra.left_basis_mul(a, &s_cols[b]),
                );
            }
            let target: Vec<Scalar> = unit.iter().map(|u| u * &self.counit[i]).collect();
            if left != target || right != target {
                return fail("antipode law", vec![i]);
            }
        }
        Ok(())
    }

    /// `τΔ = Δ`.
    pub fn is_cocommutative(&self) -> bool {
        let n = self.dim();
        self.comul
            .iter()
            .all(|v| (0..n).all(|a| (0..n).all(|b| v[a * n + b] == v[b * n + a])))
    }

    pub fn is_commutative(&self) -> bool {
        self.algebra.is_commutative()
    }

    pub fn antipode_squared_is_identity(&self) -> bool {
        let s2 = self.antipode.mul(&self.antipode).expect("square");
        s2 == Matrix::identity(self.field(), self.dim())
    }
}

/// The group algebra `kG` with `Δ(g) = g⊗g`, `ε(g) = 1`, `S(g) = g⁻¹`.
pub fn group_algebra(g: &GroupTable, field: FieldSpec) -> Result<HopfAlgebra, HopfError> {
    let n = g.order();
    let algebra = StructureAlgebra::from_products(
        field,
        g.elements.clone(),
        field.unit_vector(n, g.identity()),
        |a, b| field.unit_vector(n, g.product(a, b)),
    )?;
    let comul = (0..n)
        .map(|i| field.unit_vector(n * n, i * n + i))
        .collect();
    let counit = vec![field.one(); n];
    let mut antipode = Matrix::zeros(field, n, n);
    for i in 0..n {
        antipode.set(g.inverse(i), i, field.one());
    }
    HopfAlgebra::new(algebra, comul, counit, antipode)
}

/// The one-dimensional Hopf algebra `k`.
pub fn trivial_hopf(field: FieldSpec) -> HopfAlgebra {
    group_algebra(&GroupTable::cyclic(1), field).expect("trivial Hopf algebra")
}

fn dual_label(label: &str) -> String {
    match label.strip_prefix("p_") {
        Some(rest) => rest.to_string(),
        None => format!("p_{label}"),
    }
}

/// The linear dual `H*` in the dual basis `p_i`.
pub fn dual_hopf(h: &HopfAlgebra) -> Result<HopfAlgebra, HopfError> {
    h.validate()?;
    let n = h.dim();
    let field = h.field();
    let mul = h.algebra.structure_constants();
    let labels = h.algebra.labels().iter().map(|l| dual_label(l)).collect();
    let algebra = StructureAlgebra::from_products(field, labels, h.counit.clone(), |a, b| {
        (0..n).map(|i| h.comul[i][a * n + b].clone()).collect()
    })?;
    let comul = (0..n)
        .map(|i| (0..n * n).map(|ab| mul[ab * n + i].clone()).collect())
        .collect();
    let counit = h.algebra.unit().to_vec();
    HopfAlgebra::new(algebra, comul, counit, h.antipode.transpose())
}

fn binomial_mod(n: u64, k: u64, field: FieldSpec) -> Scalar {
    let mut acc = field.one();
    for t in 0..k {
        acc = acc * field.from_i64((n - t) as i64);
        acc = acc * field.from_i64((t + 1) as i64).inverse().expect("t + 1 < p");
    }
    acc
}

/// `u(kd) = k[d]/(d^p − λd)` over `𝔽_p` with `d` primitive, basis `1, d, ..., d^{p-1}`.
pub fn restricted_enveloping(field: FieldSpec, lambda: &Scalar) -> Result<HopfAlgebra, HopfError> {
    let p = match field {
        FieldSpec::Prime(p) => p as usize,
        FieldSpec::Rationals => {
            return Err(HopfError::Field(
                "restricted enveloping algebras need F_p".into(),
            ))
        }
    };
    if lambda.field() != field {
        return Err(LinalgError::FieldMismatch {
            expected: field,
            found: lambda.field(),
        }
        .into());
    }
    let labels = (0..p)
        .map(|k| match k {
            0 => "1".to_string(),
            1 => "d".to_string(),
            _ => format!("d^{k}"),
        })
        .collect();
    let algebra =
        StructureAlgebra::from_products(field, labels, field.unit_vector(p, 0), |a, b| {
            if a + b < p {
                field.unit_vector(p, a + b)
            } else {
                let mut v = field.zeros(p);
                v[a + b - p + 1] = lambda.clone();
                v
            }
        })?;
    let comul = (0..p)
        .map(|m| {
            let mut v = field.zeros(p * p);
            for k in 0..=m {
                v[k * p + (m - k)] = binomial_mod(m as u64, k as u64, field);
            }
            v
        })
        .collect();
    let counit = field.unit_vector(p, 0);
    let mut antipode = Matrix::zeros(field, p, p);
    for m in 0..p {
        antipode.set(
            m,
            m,
            if m % 2 == 0 {
                field.one()
            } else {
                -field.one()
            },
        );
    }
    HopfAlgebra::new(algebra, comul, counit, antipode)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn group_algebras_validate() {
        let h = group_algebra(&GroupTable::cyclic(2), FieldSpec::Rationals).unwrap();
        assert_eq!(h.dim(), 2);
        let z2 = group_algebra(&GroupTable::cyclic(2), f(3)).unwrap();
        assert_eq!(z2.antipode(), &Matrix::identity(f(3), 2));
        let s3 = group_algebra(&GroupTable::symmetric3(), FieldSpec::Rationals).unwrap();
        assert!(s3.is_cocommutative());
        assert!(!s3.is_commutative());
        assert!(s3.antipode_squared_is_identity());
        assert_eq!(trivial_hopf(f(2)).dim(), 1);
    }

    #[test]
    fn perturbed_comultiplication_is_rejected() {
        let q = FieldSpec::Rationals;
        let h = group_algebra(&GroupTable::cyclic(2), q).unwrap();
        let mut comul = h.comul().to_vec();
        comul[1] = q.unit_vector(4, 2); // Δ(g) = g⊗1
        let bad = HopfAlgebra::from_parts(
            h.algebra().clone(),
            comul,
            h.counit().to_vec(),
            h.antipode().clone(),
        )
        .unwrap();
        let err = bad.validate().unwrap_err();
        assert!(
            matches!(
                err,
                HopfError::Axiom {
                    law: "counit law",
                    ..
                }
            ),
            "{err}"
        );
    }

    #[test]
    fn duals_of_group_algebras() {
        let h = group_algebra(&GroupTable::cyclic(2), f(3)).unwrap();
        let d = dual_hopf(&h).unwrap();
        assert_eq!(
            d.algebra().labels(),
            &["p_1".to_string(), "p_g".to_string()]
        );
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j {
                    f(3).unit_vector(2, i)
                } else {
                    f(3).zeros(2)
                };
                assert_eq!(d.algebra().basis_product(i, j), &expected[..]);
            }
        }
        let s3 = group_algebra(&GroupTable::symmetric3(), FieldSpec::Rationals).unwrap();
        let ds3 = dual_hopf(&s3).unwrap();
        assert!(ds3.is_commutative());
        assert!(!ds3.is_cocommutative());
        assert!(ds3.antipode_squared_is_identity());
        assert_eq!(dual_hopf(&ds3).unwrap(), s3);
        let t = trivial_hopf(f(5));
        assert_eq!(
            dual_hopf(&t).unwrap().algebra().structure_constants(),
            t.algebra().structure_constants()
        );
    }

    #[test]
    fn restricted_enveloping_algebras() {
        for (p, lambda) in [(2, 1), (3, 1), (2, 0), (5, 1), (5, 3)] {
            let k = f(p);
            let h = restricted_enveloping(k, &k.from_i64(lambda)).unwrap();
            assert_eq!(h.dim(), p as usize);
            assert!(h.is_commutative() && h.is_cocommutative());
            assert!(h.antipode_squared_is_identity());
            // d is primitive
            let d = k.unit_vector(p as usize, 1);
            let mut prim = k.zeros((p * p) as usize);
            prim[p as usize] = k.one();
            prim[1] = k.one();
            assert_eq!(h.coproduct(&d), prim);
            let dd = dual_hopf(&h).unwrap();
            assert_eq!(dual_hopf(&dd).unwrap(), h);
        }
        let k = f(2);
        let h = restricted_enveloping(k, &k.one()).unwrap();
        // d² = d
        assert_eq!(h.algebra().basis_product(1, 1), &k.unit_vector(2, 1)[..]);
        assert!(restricted_enveloping(FieldSpec::Rationals, &FieldSpec::Rationals.one()).is_err());
    }
}
