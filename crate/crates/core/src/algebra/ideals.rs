use super::{AlgebraError, StructureAlgebra};
use crate::linalg::{is_zero_vec, FieldSpec, Matrix, Scalar, Subspace};

/// A subspace certified to be a two-sided ideal of its parent algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    space: Subspace,
}

impl Ideal {
    pub fn new(parent: &StructureAlgebra, space: Subspace) -> Result<Self, AlgebraError> {
        if space.ambient_dim() != parent.dim() || space.field() != parent.field() {
            return Err(AlgebraError::Shape(
                "ideal does not live in this algebra".into(),
            ));
        }
        if !is_ideal(parent, &space) {
            return Err(AlgebraError::NotAnIdeal);
        }
        Ok(Ideal { space })
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn into_space(self) -> Subspace {
        self.space
    }
}

/// Smallest subspace containing `start` and closed under `images`: each new
/// vector is pushed through `images` exactly once.
pub fn closure(start: Subspace, mut images: impl FnMut(&[Scalar]) -> Vec<Vec<Scalar>>) -> Subspace {
    let mut space = start;
    let mut queue = space.basis_vectors();
    while let Some(v) = queue.pop() {
        let mut fresh = Vec::new();
        for w in images(&v) {
            if is_zero_vec(&w) || space.contains(&w) {
                continue;
            }
            space = space
                .extend(std::slice::from_ref(&w))
                .expect("same ambient space");
            fresh.push(w);
        }
        queue.extend(fresh);
    }
    space
}

/// Images of `v` under left and right multiplication by every basis element.
pub(crate) fn two_sided_images(alg: &StructureAlgebra, v: &[Scalar]) -> Vec<Vec<Scalar>> {
    let mut out = Vec::with_capacity(2 * alg.dim());
    for i in 0..alg.dim() {
        out.push(alg.left_basis_mul(i, v));
        out.push(alg.right_basis_mul(v, i));
    }
    out
}

/// Smallest two-sided ideal containing `gens`.
pub fn ideal_generated(alg: &StructureAlgebra, gens: &[Vec<Scalar>]) -> Subspace {
    let start =
        Subspace::span(alg.field(), alg.dim(), gens).expect("generators live in the algebra");
    closure(start, |v| two_sided_images(alg, v))
}

pub fn is_ideal(alg: &StructureAlgebra, space: &Subspace) -> bool {
    space
        .basis_vectors()
        .iter()
        .all(|v| two_sided_images(alg, v).iter().all(|w| space.contains(w)))
}

/// Span of all products `x y` with `x ∈ left`, `y ∈ right`.
pub(crate) fn product_span(alg: &StructureAlgebra, left: &Subspace, right: &Subspace) -> Subspace {
    let mut products = Vec::with_capacity(left.dim() * right.dim());
    for x in left.basis_vectors() {
        for y in right.basis_vectors() {
            let p = alg.mul(&x, &y);
            if !is_zero_vec(&p) {
                products.push(p);
            }
        }
    }
    Subspace::span(alg.field(), alg.dim(), &products).expect("products live in the algebra")
}

/// `I·J`, closed to an ideal.
pub fn ideal_product(alg: &StructureAlgebra, i: &Subspace, j: &Subspace) -> Subspace {
    let span = product_span(alg, i, j);
    closure(span, |v| two_sided_images(alg, v))
}

/// `I, I², I³, ...` until the powers vanish or stabilise.
pub fn ideal_power_sequence(alg: &StructureAlgebra, i: &Subspace) -> Vec<Subspace> {
    let mut powers = vec![i.clone()];
    loop {
        let last = powers.last().unwrap();
        if last.is_zero() {
            break;
        }
        let next = product_span(alg, last, i);
        if next.dim() == last.dim() {
            break;
        }
        powers.push(next);
    }
    powers
}

/// Whether `I` is nilpotent, with the least `k` such that `I^k = 0`
/// (or the length of the stabilised power chain when it is not).
pub fn is_nilpotent(alg: &StructureAlgebra, i: &Subspace) -> (bool, usize) {
    let powers = ideal_power_sequence(alg, i);
    let nilpotent = powers.last().is_some_and(Subspace::is_zero);
    if i.is_zero() {
        return (true, 1);
    }
    (nilpotent, powers.len())
}

/// `R/I` realised on the deterministic complement of `I`, together with the
/// projection and lifting maps.
#[derive(Clone, Debug)]
pub struct Quotient {
    algebra: StructureAlgebra,
    ideal: Subspace,
    complement: Vec<usize>,
    parent_dim: usize,
}

impl Quotient {
    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }

    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    /// Parent coordinates whose standard basis vectors represent the quotient basis.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let r = self.ideal.residual(v);
        self.complement.iter().map(|&c| r[c].clone()).collect()
    }

    /// Canonical representative of a quotient element in the parent.
    pub fn lift(&self, q: &[Scalar]) -> Vec<Scalar> {
        let mut v = self.ideal.field().zeros(self.parent_dim);
        for (&c, x) in self.complement.iter().zip(q) {
            v[c] = x.clone();
        }
        v
    }

    pub fn projection_matrix(&self) -> Matrix {
        let field = self.ideal.field();
        let cols: Vec<Vec<Scalar>> = (0..self.parent_dim)
            .map(|j| self.project(&field.unit_vector(self.parent_dim, j)))
            .collect();
        Matrix::from_columns(field, self.complement.len(), &cols).expect("projection shape")
    }

    /// Full preimage in the parent of a subspace of the quotient.
    pub fn preimage(&self, s: &Subspace) -> Subspace {
        let lifts: Vec<Vec<Scalar>> = s.basis_vectors().iter().map(|q| self.lift(q)).collect();
        self.ideal.extend(&lifts).expect("lifts live in the parent")
    }

    /// Image in the quotient of a subspace of the parent.
    pub fn image(&self, s: &Subspace) -> Subspace {
        let imgs: Vec<Vec<Scalar>> = s.basis_vectors().iter().map(|v| self.project(v)).collect();
        Subspace::span(self.ideal.field(), self.complement.len(), &imgs).expect("projected vectors")
    }
}

pub fn quotient_algebra(
    alg: &StructureAlgebra,
    ideal: &Subspace,
) -> Result<Quotient, AlgebraError> {
    let ideal = Ideal::new(alg, ideal.clone())?.into_space();
    let complement = ideal.complement_indices();
    let labels = complement
        .iter()
        .map(|&c| alg.labels()[c].clone())
        .collect();
    let mut q = Quotient {
        algebra: StructureAlgebra::from_parts(alg.field(), Vec::new(), Vec::new(), Vec::new())?,
        ideal,
        complement,
        parent_dim: alg.dim(),
    };
    let unit = q.project(alg.unit());
    let algebra = StructureAlgebra::from_products(alg.field(), labels, unit, |s, t| {
        let (a, b) = (q.complement[s], q.complement[t]);
        q.project(alg.basis_product(a, b))
    })?;
    q.algebra = algebra;
    Ok(q)
}

/// Unitization `k·1 ⊕ S` of a multiplicatively closed subspace `S`, possibly
/// without unit. Basis: the formal unit first, then the echelon basis of `S`.
pub fn subalgebra_unitization(
    alg: &StructureAlgebra,
    space: &Subspace,
) -> Result<StructureAlgebra, AlgebraError> {
    let field: FieldSpec = alg.field();
    let basis = space.basis_vectors();
    let d = basis.len();
    let mut labels = vec!["1".to_string()];
    labels.extend((0..d).map(|i| format!("s{i}")));
    let mut err = None;
    let result =
        StructureAlgebra::from_products(field, labels, field.unit_vector(d + 1, 0), |a, b| {
            let mut v = field.zeros(d + 1);
            match (a, b) {
                (0, 0) => v[0] = field.one(),
                (0, j) | (j, 0) => v[j] = field.one(),
                (i, j) => {
                    let p = alg.mul(&basis[i - 1], &basis[j - 1]);
                    match space.coordinates(&p) {
                        Some(c) => v[1..].clone_from_slice(&c),
                        None => {
                            err = Some(AlgebraError::Shape(
                                "subspace is not closed under multiplication".into(),
                            ))
                        }
                    }
                }
            }
            v
        })?;
    match err {
        Some(e) => Err(e),
        None => Ok(result),
    }
}
