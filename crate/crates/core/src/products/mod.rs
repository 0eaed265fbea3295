//! Smash and crossed products, the dual action and the ideal correspondence
//! between `R` and `(R # H) # H*`.

use std::sync::Arc;

use thiserror::Error;

use crate::action::{Action, ActionError, ActionMode, Cocycle};
use crate::algebra::{is_ideal, AlgebraError, StructureAlgebra};
use crate::hopf::{dual_hopf, HopfAlgebra, HopfError};
use crate::linalg::{axpy, LinalgError, Matrix, Scalar, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// `R #_σ H` with basis `e_a # e_h` at index `a * dim H + h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossedProduct {
    algebra: StructureAlgebra,
    action: Action,
    sigma: Option<Cocycle>,
}

impl CrossedProduct {
    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> StructureAlgebra {
        self.algebra
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn base(&self) -> &StructureAlgebra {
        self.action.target()
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        self.action.hopf()
    }

    /// The cocycle used, if it was not the trivial one.
    pub fn sigma(&self) -> Option<&Cocycle> {
        self.sigma.as_ref()
    }

    pub fn index(&self, a: usize, h: usize) -> usize {
        a * self.hopf().dim() + h
    }

    /// `a ⊗ h` in coordinates of the product.
    pub fn pure_tensor(&self, a: &[Scalar], h: &[Scalar]) -> Vec<Scalar> {
        let hd = self.hopf().dim();
        let mut out = self.algebra.zero();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in h.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[i * hd + j] = x * y;
            }
        }
        out
    }

    /// `a ↦ a # 1`.
    pub fn embed_r(&self, a: &[Scalar]) -> Vec<Scalar> {
        self.pure_tensor(a, self.hopf().algebra().unit())
    }

    /// `h ↦ 1 # h`.
    pub fn embed_h(&self, h: &[Scalar]) -> Vec<Scalar> {
        self.pure_tensor(self.base().unit(), h)
    }

    pub fn embed_r_matrix(&self) -> Matrix {
        let field = self.algebra.field();
        let rd = self.base().dim();
        let cols: Vec<Vec<Scalar>> = (0..rd)
            .map(|i| self.embed_r(&field.unit_vector(rd, i)))
            .collect();
        Matrix::from_columns(field, self.algebra.dim(), &cols).expect("embedding shape")
    }

    /// Coefficient of `e_a # h` summed against the basis of `H`: the `R`-component
    /// of `v` along `R # e_h` for the given Hopf basis index.
    pub fn component(&self, v: &[Scalar], h: usize) -> Vec<Scalar> {
        let hd = self.hopf().dim();
        (0..self.base().dim())
            .map(|a| v[a * hd + h].clone())
            .collect()
    }

    /// `I # H = span{x # h}`.
    pub fn extend_ideal(&self, i: &Subspace) -> Subspace {
        let field = self.algebra.field();
        let hd = self.hopf().dim();
        let vectors: Vec<Vec<Scalar>> = i
            .basis_vectors()
            .iter()
            .flat_map(|x| (0..hd).map(move |h| (x.clone(), h)))
            .map(|(x, h)| self.pure_tensor(&x, &field.unit_vector(hd, h)))
            .collect();
        Subspace::span(field, self.algebra.dim(), &vectors).expect("pure tensors")
    }

    /// `J ∩ (R # 1)` pulled back to `R`, certified to be an ideal of `R`.
    pub fn intersect_with_base(&self, j: &Subspace) -> Result<Subspace, ProductError> {
        let pulled = j.preimage(&self.embed_r_matrix())?;
        if !is_ideal(self.base(), &pulled) {
            return Err(ProductError::Internal("J ∩ R is not an ideal of R".into()));
        }
        Ok(pulled)
    }
}

/// `R # H` for an H-module algebra.
pub fn smash_product(action: &Action) -> Result<CrossedProduct, ProductError> {
    if action.mode() != ActionMode::Module {
        return Err(ProductError::Precondition(format!(
            "smash products need a module action, got a {} action",
            action.mode()
        )));
    }
    build(action, None)
}

/// `R #_σ H`. Without an explicit `σ` the action's own cocycle (or the
/// trivial one) is used. With a nontrivial `σ` associativity is checked on
/// every basis triple.
pub fn crossed_product(
    action: &Action,
    sigma: Option<&Cocycle>,
) -> Result<CrossedProduct, ProductError> {
    let sigma = sigma.or(action.cocycle()).cloned();
    let sigma = sigma.filter(|c| *c != Cocycle::trivial(action.hopf(), action.target()));
    build(action, sigma)
}

fn build(action: &Action, sigma: Option<Cocycle>) -> Result<CrossedProduct, ProductError> {
    let hopf = action.hopf();
    let r = action.target();
    let field = r.field();
    let (rd, hd) = (r.dim(), hopf.dim());
    if let Some(c) = &sigma {
        if c.sigma().rows() != rd || c.sigma().cols() != hd * hd {
            return Err(ProductError::Precondition(
                "cocycle has the wrong shape".into(),
            ));
        }
    }
    let labels = (0..rd)
        .flat_map(|a| (0..hd).map(move |h| (a, h)))
        .map(|(a, h)| format!("{}#{}", r.labels()[a], hopf.algebra().labels()[h]))
        .collect();
    let mut unit = field.zeros(rd * hd);
    for (i, x) in r.unit().iter().enumerate() {
        for (j, y) in hopf.algebra().unit().iter().enumerate() {
            unit[i * hd + j] = x * y;
        }
    }
    // g·e_b for every Hopf basis g and R basis b
    let moved: Vec<Vec<Vec<Scalar>>> = (0..hd)
        .map(|g| (0..rd).map(|b| action.matrices()[g].column(b)).collect())
        .collect();
    let single: Vec<Vec<(usize, usize, Scalar)>> =
        (0..hd).map(|g| hopf.coproduct_terms(g)).collect();
    let double: Vec<Vec<(usize, usize, usize, Scalar)>> =
        (0..hd).map(|g| hopf.double_coproduct_terms(g)).collect();
    let sig_vals: Option<Vec<Vec<Scalar>>> = sigma
        .as_ref()
        .map(|c| (0..hd * hd).map(|hk| c.sigma().column(hk)).collect());

    let algebra = StructureAlgebra::from_products(field, labels, unit, |x, y| {
        let (a, g) = (x / hd, x % hd);
        let (b, k) = (y / hd, y % hd);
        let mut out = field.zeros(rd * hd);
        let mut add = |coef: &Scalar, rv: &[Scalar], hv: &[Scalar]| {
            for (i, ri) in rv.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = coef * ri;
                for (j, hj) in hv.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                    out[i * hd + j].add_product(&c, hj);
                }
            }
        };
        match &sig_vals {
            None => {
                for (g1, g2, c) in &single[g] {
                    let rv = r.left_basis_mul(a, &moved[*g1][b]);
                    add(c, &rv, hopf.algebra().basis_product(*g2, k));
                }
            }
            Some(sv) => {
                let ks = &single[k];
                for (g1, g2, g3, c) in &double[g] {
                    let left = r.left_basis_mul(a, &moved[*g1][b]);
                    for (k1, k2, d) in ks {
                        let rv = r.mul(&left, &sv[g2 * hd + k1]);
                        add(&(c * d), &rv, hopf.algebra().basis_product(*g3, *k2));
                    }
                }
            }
        }
        out
    })?;
    // R # H is associative whenever R is an H-module algebra, which
    // `Action::new` has verified; a genuine cocycle gets the full check.
    if sigma.is_some() {
        algebra.validate()?;
    } else {
        algebra.validate_unit()?;
    }
    Ok(CrossedProduct {
        algebra,
        action: action.clone(),
        sigma,
    })
}

/// `H*` acting on `R #_σ H` by `f·(a # h) = a # (f ⇀ h)` with `f ⇀ h = Σ h₁ f(h₂)`.
pub fn dual_action_on_smash(c: &CrossedProduct) -> Result<Action, ProductError> {
    let hopf = c.hopf();
    let field = hopf.field();
    let (rd, hd) = (c.base().dim(), hopf.dim());
    let dual = Arc::new(dual_hopf(hopf)?);
    let n = rd * hd;
    let act = (0..hd)
        .map(|f| {
            let mut m = Matrix::zeros(field, n, n);
            for j in 0..hd {
                for (h1, h2, coef) in hopf.coproduct_terms(j) {
                    if h2 == f {
                        for i in 0..rd {
                            m.set(i * hd + h1, i * hd + j, coef.clone());
                        }
                    }
                }
            }
            m
        })
        .collect();
    Ok(Action::new(
        dual,
        Arc::new(c.algebra.clone()),
        act,
        ActionMode::Module,
        None,
    )?)
}

/// `M = R #_σ H`, the dual action on it and `R' = M # H*`.
#[derive(Clone, Debug)]
pub struct DoubleSmash {
    pub inner: CrossedProduct,
    pub dual_action: Action,
    pub outer: CrossedProduct,
}

pub fn double_smash(action: &Action) -> Result<DoubleSmash, ProductError> {
    let inner = crossed_product(action, None)?;
    let dual_action = dual_action_on_smash(&inner)?;
    let outer = smash_product(&dual_action)?;
    Ok(DoubleSmash {
        inner,
        dual_action,
        outer,
    })
}

impl DoubleSmash {
    /// `(m # f) · n = m (f · n)`, the action of `R'` on `M`.
    pub fn act_on_module(&self, rp: &[Scalar], n: &[Scalar]) -> Vec<Scalar> {
        let m_alg = self.inner.algebra();
        let hd = self.dual_action.hopf().dim();
        let mut out = m_alg.zero();
        for (idx, c) in rp.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (m, f) = (idx / hd, idx % hd);
            let fn_ = self.dual_action.act_basis(f, n);
            axpy(&mut out, c, &m_alg.left_basis_mul(m, &fn_));
        }
        out
    }

    /// `M·I`, with `I` embedded as `I # 1`.
    pub fn module_times(&self, i: &Subspace) -> Subspace {
        let m_alg = self.inner.algebra();
        let vectors: Vec<Vec<Scalar>> = i
            .basis_vectors()
            .iter()
            .flat_map(|x| {
                let ix = self.inner.embed_r(x);
                (0..m_alg.dim())
                    .map(move |m| m_alg.left_basis_mul(m, &ix))
                    .collect::<Vec<_>>()
            })
            .collect();
        Subspace::span(m_alg.field(), m_alg.dim(), &vectors).expect("vectors of M")
    }

    /// `J·M` for a subspace `J` of `R'`.
    pub fn acting_times_module(&self, j: &Subspace) -> Subspace {
        let m_alg = self.inner.algebra();
        let field = m_alg.field();
        let vectors: Vec<Vec<Scalar>> = j
            .basis_vectors()
            .iter()
            .flat_map(|r| {
                (0..m_alg.dim())
                    .map(|n| self.act_on_module(r, &field.unit_vector(m_alg.dim(), n)))
                    .collect::<Vec<_>>()
            })
            .collect();
        Subspace::span(field, m_alg.dim(), &vectors).expect("vectors of M")
    }

    /// `Φ(I) = {r' ∈ R' : r'·M ⊆ M·I}`, verified against `Φ(I)·M = M·I`.
    pub fn compute_phi(&self, i: &Subspace) -> Result<Subspace, ProductError> {
        let r = self.inner.base();
        if !is_ideal(r, i) {
            return Err(AlgebraError::NotAnIdeal.into());
        }
        let mi = self.module_times(i);
        let m_alg = self.inner.algebra();
        let outer = self.outer.algebra();
        let field = r.field();
        let mut j = outer.whole();
        for n in 0..m_alg.dim() {
            let en = field.unit_vector(m_alg.dim(), n);
            let cols: Vec<Vec<Scalar>> = (0..outer.dim())
                .map(|c| self.act_on_module(&field.unit_vector(outer.dim(), c), &en))
                .collect();
            let map = Matrix::from_columns(field, m_alg.dim(), &cols)?;
            j = j.intersect(&mi.preimage(&map)?)?;
        }
        if !is_ideal(outer, &j) {
            return Err(ProductError::Internal("Φ(I) is not an ideal of R'".into()));
        }
        if self.acting_times_module(&j) != mi {
            return Err(ProductError::Internal("Φ(I)·M ≠ M·I".into()));
        }
        Ok(j)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{derivation_action, group_action, trivial_action};
    use crate::algebra::catalog::{element, truncated_polynomial};
    use crate::algebra::jacobson_radical;
    use crate::hopf::GroupTable;
    use crate::linalg::FieldSpec;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn trivial_hopf_smash_is_base() {
        let r = Arc::new(truncated_polynomial(f(3), 3));
        let a = trivial_action(r.clone()).unwrap();
        let s = smash_product(&a).unwrap();
        assert_eq!(s.algebra().structure_constants(), r.structure_constants());
        let d = double_smash(&a).unwrap();
        assert_eq!(d.outer.algebra().dim(), 3);
        assert!(d.dual_action.matrices()[0] == Matrix::identity(f(3), 3));
    }

    #[test]
    fn smash_products_are_associative() {
        for p in [2, 3] {
            let k = f(p);
            let mut image = k.zeros(p as usize);
            image[0] = k.one();
            image[1] = k.one();
            let a =
                derivation_action(Arc::new(truncated_polynomial(k, p as usize)), &image).unwrap();
            let d = double_smash(&a).unwrap();
            d.inner.algebra().validate().unwrap();
            d.outer.algebra().validate().unwrap();
        }
        let k = f(3);
        let z2 = GroupTable::cyclic(2);
        let r = Arc::new(truncated_polynomial(k, 3));
        let flip = Matrix::from_i64(k, 3, 3, &[1, 0, 0, 0, -1, 0, 0, 0, 1]);
        let a = group_action(&z2, r, vec![Matrix::identity(k, 3), flip]).unwrap();
        double_smash(&a)
            .unwrap()
            .outer
            .algebra()
            .validate()
            .unwrap();
    }

    #[test]
    fn derivation_smash_rule() {
        let k = f(2);
        let r = Arc::new(truncated_polynomial(k, 2));
        let a = derivation_action(r, &element(k, &[1, 1])).unwrap();
        let s = smash_product(&a).unwrap();
        assert_eq!(s.algebra().dim(), 4);
        // (1#d)(x#1) = (x+1)#1 + x#d
        let lhs = s.algebra().mul(
            &s.pure_tensor(&element(k, &[1, 0]), &element(k, &[0, 1])),
            &s.embed_r(&element(k, &[0, 1])),
        );
        assert_eq!(lhs, element(k, &[1, 0, 1, 1]));
        let d = double_smash(&a).unwrap();
        assert_eq!(d.outer.algebra().dim(), 8);
        let rb = jacobson_radical(a.target()).unwrap().space;
        assert!(!d.compute_phi(&rb).unwrap().is_zero());
        assert!(d.compute_phi(&a.target().zero_ideal()).unwrap().is_zero());
        assert!(d.compute_phi(&a.target().whole()).unwrap().is_full());
    }

    #[test]
    fn embeddings_and_dual_action() {
        let k = f(3);
        let r = Arc::new(truncated_polynomial(k, 3));
        let flip = Matrix::from_i64(k, 3, 3, &[1, 0, 0, 0, -1, 0, 0, 0, 1]);
        let a = group_action(
            &GroupTable::cyclic(2),
            r.clone(),
            vec![Matrix::identity(k, 3), flip],
        )
        .unwrap();
        let s = smash_product(&a).unwrap();
        let (x, y) = (element(k, &[0, 1, 1]), element(k, &[1, 2, 0]));
        assert_eq!(
            s.algebra().mul(&s.embed_r(&x), &s.embed_r(&y)),
            s.embed_r(&r.mul(&x, &y))
        );
        let d = dual_action_on_smash(&s).unwrap();
        // p_g·(a#g) = a#g, p_g·(a#1) = 0
        let ag = s.pure_tensor(&x, &element(k, &[0, 1]));
        assert_eq!(d.act_basis(1, &ag), ag);
        assert!(d.act_basis(1, &s.embed_r(&x)).iter().all(Scalar::is_zero));
        let rad = jacobson_radical(s.algebra()).unwrap().space;
        let back = s.intersect_with_base(&rad).unwrap();
        assert_eq!(
            back,
            Subspace::span(k, 3, &[element(k, &[0, 1, 0]), element(k, &[0, 0, 1])]).unwrap()
        );
        assert!(s
            .intersect_with_base(&s.algebra().whole())
            .unwrap()
            .is_full());
        assert!(s
            .intersect_with_base(&s.algebra().zero_ideal())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn crossed_products() {
        let k = f(2);
        let z2 = GroupTable::cyclic(2);
        let r = Arc::new(truncated_polynomial(k, 2));
        let a = group_action(&z2, r.clone(), vec![Matrix::identity(k, 2); 2]).unwrap();
        let plain = smash_product(&a).unwrap();
        let trivial = crossed_product(&a, Some(&Cocycle::trivial(a.hopf(), &r))).unwrap();
        assert_eq!(plain.algebra(), trivial.algebra());
        // σ(g,g) = 1 + x is a valid (commutative, central) twist
        let mut sigma = Cocycle::trivial(a.hopf(), &r).sigma().clone();
        sigma.set(1, 3, k.one());
        let c = Cocycle::new(a.hopf(), &r, sigma.clone()).unwrap();
        let cp = crossed_product(&a, Some(&c)).unwrap();
        let (x, y) = (element(k, &[0, 1]), element(k, &[1, 1]));
        assert_eq!(
            cp.algebra().mul(&cp.embed_r(&x), &cp.embed_r(&y)),
            cp.embed_r(&r.mul(&x, &y))
        );
        // σ(g,1) = 1 + x: (σ(g,1))² ≠ σ(1,1)σ(g,1), so ((1#g)(1#1))(1#1) ≠ (1#g)((1#1)(1#1))
        let mut bad = Cocycle::trivial(a.hopf(), &r).sigma().clone();
        bad.set(1, 2, k.one());
        let bad = Cocycle::new(a.hopf(), &r, bad).unwrap();
        assert!(matches!(
            crossed_product(&a, Some(&bad)),
            Err(ProductError::Algebra(AlgebraError::NotAssociative { .. }))
        ));
    }
}
