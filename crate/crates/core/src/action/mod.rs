//! Weak actions, H-module algebras and twisted H-module algebras.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::catalog::truncated_polynomial;
use crate::algebra::{
    closure, is_ideal, quotient_algebra, AlgebraError, Quotient, StructureAlgebra,
};
use crate::hopf::{
    convolution_invert, dual_hopf, group_algebra, restricted_enveloping, trivial_hopf, GroupTable,
    HopfAlgebra, HopfError,
};
use crate::linalg::{axpy, FieldSpec, LinalgError, Matrix, Scalar, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionError {
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("malformed action: {0}")]
    Shape(String),
    #[error("{law} fails on basis {basis:?}")]
    Axiom {
        law: &'static str,
        basis: Vec<usize>,
    },
    #[error("grading is not multiplicative: e{i}·e{j} leaves the degree {degree} component")]
    Grading { i: usize, j: usize, degree: String },
    #[error("derivation is ill-defined: {0}")]
    Derivation(String),
    #[error("subspace is not an H-ideal")]
    NotHIdeal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionMode {
    /// Unital and measuring only.
    Weak,
    /// An H-module algebra.
    Module,
    /// A twisted H-module algebra with cocycle σ.
    Twisted,
}

impl ActionMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            ActionMode::Weak => "weak",
            ActionMode::Module => "module",
            ActionMode::Twisted => "twisted",
        }
    }
}

impl fmt::Display for ActionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ActionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "weak" => Ok(ActionMode::Weak),
            "module" => Ok(ActionMode::Module),
            "twisted" => Ok(ActionMode::Twisted),
            _ => Err(format!("unknown action mode `{s}`")),
        }
    }
}

/// `σ : H ⊗ H → R` with its convolution inverse. Both are `dim R × (dim H)²`
/// matrices whose column `h*dim H + k` is `σ(e_h, e_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    sigma: Matrix,
    inverse: Matrix,
}

impl Cocycle {
    /// Computes and stores the convolution inverse.
    pub fn new(
        hopf: &HopfAlgebra,
        target: &StructureAlgebra,
        sigma: Matrix,
    ) -> Result<Self, ActionError> {
        let hh = hopf.coalgebra().tensor(&hopf.coalgebra());
        let inverse =
            convolution_invert(&sigma, &hh, target)?.ok_or_else(|| ActionError::Axiom {
                law: "σ is convolution invertible",
                basis: vec![],
            })?;
        Ok(Cocycle { sigma, inverse })
    }

    /// `σ(h, k) = ε(h)ε(k)1`.
    pub fn trivial(hopf: &HopfAlgebra, target: &StructureAlgebra) -> Self {
        let n = hopf.dim();
        let cols: Vec<Vec<Scalar>> = (0..n * n)
            .map(|hk| {
                let e = &hopf.counit()[hk / n] * &hopf.counit()[hk % n];
                target.unit().iter().map(|u| u * &e).collect()
            })
            .collect();
        let sigma =
            Matrix::from_columns(target.field(), target.dim(), &cols).expect("cocycle shape");
        Cocycle {
            inverse: sigma.clone(),
            sigma,
        }
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    pub fn value(&self, h: usize, k: usize, hopf_dim: usize) -> Vec<Scalar> {
        self.sigma.column(h * hopf_dim + k)
    }

    pub fn inverse_value(&self, h: usize, k: usize, hopf_dim: usize) -> Vec<Scalar> {
        self.inverse.column(h * hopf_dim + k)
    }
}

/// `H` acting on `R`; `act[i]` is the matrix of `e_i · (−)` on `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    hopf: Arc<HopfAlgebra>,
    target: Arc<StructureAlgebra>,
    act: Vec<Matrix>,
    mode: ActionMode,
    cocycle: Option<Cocycle>,
}

impl Action {
    /// Assemble and validate.
    pub fn new(
        hopf: Arc<HopfAlgebra>,
        target: Arc<StructureAlgebra>,
        act: Vec<Matrix>,
        mode: ActionMode,
        cocycle: Option<Cocycle>,
    ) -> Result<Self, ActionError> {
        let a = Self::from_parts(hopf, target, act, mode, cocycle)?;
        a.validate()?;
        Ok(a)
    }

    /// Shape checks only; see [`Action::validate`].
    pub fn from_parts(
        hopf: Arc<HopfAlgebra>,
        target: Arc<StructureAlgebra>,
        act: Vec<Matrix>,
        mode: ActionMode,
        cocycle: Option<Cocycle>,
    ) -> Result<Self, ActionError> {
        let (n, m) = (hopf.dim(), target.dim());
        if hopf.field() != target.field() {
            return Err(LinalgError::FieldMismatch {
                expected: hopf.field(),
                found: target.field(),
            }
            .into());
        }
        if act.len() != n
            || act
                .iter()
                .any(|a| a.rows() != m || a.cols() != m || a.field() != target.field())
        {
            return Err(ActionError::Shape(format!(
                "expected {n} matrices of size {m}×{m}"
            )));
        }
        match (&cocycle, mode) {
            (None, ActionMode::Twisted) => {
                return Err(ActionError::Shape("twisted mode needs a cocycle".into()))
            }
            (Some(_), ActionMode::Weak | ActionMode::Module) => {
                return Err(ActionError::Shape(
                    "a cocycle is only meaningful in twisted mode".into(),
                ))
            }
            (Some(c), _) => {
                for s in [&c.sigma, &c.inverse] {
                    if s.rows() != m || s.cols() != n * n || s.field() != target.field() {
                        return Err(ActionError::Shape(format!("cocycle must be {m}×{}", n * n)));
                    }
                }
            }
            _ => {}
        }
        Ok(Action {
            hopf,
            target,
            act,
            mode,
            cocycle,
        })
    }

    pub fn hopf(&self) -> &HopfAlgebra {
        &self.hopf
    }

    pub fn hopf_arc(&self) -> Arc<HopfAlgebra> {
        Arc::clone(&self.hopf)
    }

    pub fn target(&self) -> &StructureAlgebra {
        &self.target
    }

    pub fn target_arc(&self) -> Arc<StructureAlgebra> {
        Arc::clone(&self.target)
    }

    pub fn field(&self) -> FieldSpec {
        self.target.field()
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.act
    }

    pub fn mode(&self) -> ActionMode {
        self.mode
    }

    pub fn cocycle(&self) -> Option<&Cocycle> {
        self.cocycle.as_ref()
    }

    /// True when a cocycle is present and differs from the trivial one.
    pub fn is_twisted(&self) -> bool {
        self.cocycle
            .as_ref()
            .is_some_and(|c| c != &Cocycle::trivial(&self.hopf, &self.target))
    }

    /// `e_i · v`.
    pub fn act_basis(&self, i: usize, v: &[Scalar]) -> Vec<Scalar> {
        self.act[i].mul_vec(v).expect("action matrix is square")
    }

    /// `h · v` for arbitrary `h ∈ H`.
    pub fn act(&self, h: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.target.zero();
        for (i, c) in h.iter().enumerate() {
            if !c.is_zero() {
                axpy(&mut out, c, &self.act_basis(i, v));
            }
        }
        out
    }

    /// The matrix of `h · (−)`.
    pub fn act_matrix(&self, h: &[Scalar]) -> Matrix {
        let m = self.target.dim();
        let mut out = Matrix::zeros(self.field(), m, m);
        for (i, c) in h.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.act[i].scale(c)).expect("same shape");
            }
        }
        out
    }

    /// Checks the axioms for the declared mode on basis elements and returns
    /// the first failure.
    pub fn validate(&self) -> Result<(), ActionError> {
        self.hopf.validate()?;
        self.target.validate()?;
        let field = self.field();
        let (n, m) = (self.hopf.dim(), self.target.dim());
        let fail = |law, basis| Err(ActionError::Axiom { law, basis });

        if self.act_matrix(self.hopf.algebra().unit()) != Matrix::identity(field, m) {
            return fail("1_H acts as the identity", vec![]);
        }

        let images: Vec<Vec<Vec<Scalar>>> = (0..n)
            .map(|i| (0..m).map(|r| self.act[i].column(r)).collect())
            .collect();
        for i in 0..n {
            let terms = self.hopf.coproduct_terms(i);
            for r in 0..m {
                for s in 0..m {
                    let lhs = self.act_basis(i, self.target.basis_product(r, s));
                    let mut rhs = self.target.zero();
                    for (a, b, coef) in &terms {
                        axpy(
                            &mut rhs,
                            coef,
                            &self.target.mul(&images[*a][r], &images[*b][s]),
                        );
                    }
                    if lhs != rhs {
                        return fail("measuring law", vec![i, r, s]);
                    }
                }
            }
        }

        if self.mode == ActionMode::Weak {
            return Ok(());
        }

        let unit = self.target.unit();
        for i in 0..n {
            let expected: Vec<Scalar> = unit.iter().map(|u| u * &self.hopf.counit()[i]).collect();
            if self.act_basis(i, unit) != expected {
                return fail("h·1 = ε(h)1", vec![i]);
            }
        }

        match self.mode {
            ActionMode::Module => {
                for i in 0..n {
                    for j in 0..n {
                        let composed = self.act[i].mul(&self.act[j])?;
                        if composed != self.act_matrix(self.hopf.algebra().basis_product(i, j)) {
                            return fail("h·(k·a) = (hk)·a", vec![i, j]);
                        }
                    }
                }
            }
            ActionMode::Twisted => self.validate_twisted()?,
            ActionMode::Weak => unreachable!(),
        }
        Ok(())
    }

    fn validate_twisted(&self) -> Result<(), ActionError> {
        let c = self.cocycle.as_ref().expect("checked in from_parts");
        let hopf = &self.hopf;
        let (n, m) = (hopf.dim(), self.target.dim());
        let fail = |law, basis| Err(ActionError::Axiom { law, basis });
        let hh = hopf.coalgebra().tensor(&hopf.coalgebra());
        let unit = crate::hopf::convolution_unit(&hh, &self.target);
        let s_inv = crate::hopf::convolve(&c.sigma, &c.inverse, &hh, &self.target)?;
        let inv_s = crate::hopf::convolve(&c.inverse, &c.sigma, &hh, &self.target)?;
        if s_inv != unit || inv_s != unit {
            return fail("stored σ⁻¹ is the convolution inverse of σ", vec![]);
        }
        let one = hopf.algebra().unit();
        for i in 0..n {
            let expected: Vec<Scalar> = self
                .target
                .unit()
                .iter()
                .map(|u| u * &hopf.counit()[i])
                .collect();
            let mut left = self.target.zero();
            let mut right = self.target.zero();
            for (j, u) in one.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
                axpy(&mut left, u, &c.value(j, i, n));
                axpy(&mut right, u, &c.value(i, j, n));
            }
            if left != expected || right != expected {
                return fail("σ is normal: σ(1,h) = σ(h,1) = ε(h)1", vec![i]);
            }
        }
        for i in 0..n {
            let ti = hopf.double_coproduct_terms(i);
            for j in 0..n {
                let tj = hopf.double_coproduct_terms(j);
                let composed = self.act[i].mul(&self.act[j])?;
                for r in 0..m {
                    let lhs = composed.column(r);
                    let mut rhs = self.target.zero();
                    for (a1, a2, a3, x) in &ti {
                        for (b1, b2, b3, y) in &tj {
                            let hk = hopf.algebra().basis_product(*a2, *b2);
                            let moved = self.act(hk, &self.target.basis_element(r));
                            let left = self.target.mul(&c.value(*a1, *b1, n), &moved);
                            let full = self.target.mul(&left, &c.inverse_value(*a3, *b3, n));
                            axpy(&mut rhs, &(x * y), &full);
                        }
                    }
                    if lhs != rhs {
                        return fail("twisted module law", vec![i, j, r]);
                    }
                }
            }
        }
        Ok(())
    }

    /// `h · S ⊆ S` for every basis element `h`.
    pub fn is_h_stable(&self, sub: &Subspace) -> bool {
        sub.basis_vectors()
            .iter()
            .all(|v| (0..self.hopf.dim()).all(|i| sub.contains(&self.act_basis(i, v))))
    }

    /// `(I : H)`, the largest H-ideal inside the ideal `i`.
    ///
    /// For module and twisted actions one pass of `{x : h·x ∈ I}` already is
    /// H-stable; weak actions are iterated to the fixpoint.
    pub fn colon_ideal(&self, i: &Subspace) -> Result<HIdeal, ActionError> {
        if !is_ideal(&self.target, i) {
            return Err(AlgebraError::NotAnIdeal.into());
        }
        let mut current = i.clone();
        loop {
            let mut next = current.clone();
            for h in 0..self.hopf.dim() {
                next = next.intersect(&current.preimage(&self.act[h])?)?;
            }
            if next == current {
                break;
            }
            current = next;
        }
        HIdeal::new(self, current)
    }

    /// Smallest H-stable two-sided ideal containing `gens`.
    pub fn h_ideal_generated(&self, gens: &[Vec<Scalar>]) -> Subspace {
        let start =
            Subspace::span(self.field(), self.target.dim(), gens).expect("generators live in R");
        self.h_ideal_closure(start)
    }

    pub(crate) fn h_ideal_closure(&self, start: Subspace) -> Subspace {
        let alg = &self.target;
        closure(start, |v| {
            let mut out = Vec::with_capacity(2 * alg.dim() + self.hopf.dim());
            for i in 0..alg.dim() {
                out.push(alg.left_basis_mul(i, v));
                out.push(alg.right_basis_mul(v, i));
            }
            for h in 0..self.hopf.dim() {
                out.push(self.act_basis(h, v));
            }
            out
        })
    }

    /// The induced action on `R/I` for an H-ideal `I`.
    pub fn quotient_action(&self, ideal: &Subspace) -> Result<(Action, Quotient), ActionError> {
        if !is_ideal(&self.target, ideal) || !self.is_h_stable(ideal) {
            return Err(ActionError::NotHIdeal);
        }
        let q = quotient_algebra(&self.target, ideal)?;
        let k = q.algebra().dim();
        let field = self.field();
        let induced = |m: &Matrix| -> Result<Matrix, ActionError> {
            let cols: Vec<Vec<Scalar>> = (0..k)
                .map(|j| {
                    q.project(
                        &m.mul_vec(&q.lift(&field.unit_vector(k, j)))
                            .expect("square"),
                    )
                })
                .collect();
            Ok(Matrix::from_columns(field, k, &cols)?)
        };
        let act = self
            .act
            .iter()
            .map(induced)
            .collect::<Result<Vec<_>, _>>()?;
        let cocycle = self.cocycle.as_ref().map(|c| {
            let project = |s: &Matrix| {
                let cols: Vec<Vec<Scalar>> =
                    (0..s.cols()).map(|j| q.project(&s.column(j))).collect();
                Matrix::from_columns(field, k, &cols).expect("projected cocycle")
            };
            Cocycle {
                sigma: project(&c.sigma),
                inverse: project(&c.inverse),
            }
        });
        let target = Arc::new(q.algebra().clone());
        let action = Action::new(self.hopf_arc(), target, act, self.mode, cocycle)?;
        Ok((action, q))
    }

    /// The same action on `R` in the basis `f_j = Σ_i change[i][j] e_i`.
    pub fn change_basis(&self, change: &Matrix) -> Result<Action, ActionError> {
        let target = self.target.change_basis(change)?;
        let inv = change
            .inverse()?
            .ok_or_else(|| ActionError::Shape("basis change is singular".into()))?;
        let act = self
            .act
            .iter()
            .map(|a| inv.mul(&a.mul(change)?))
            .collect::<Result<Vec<_>, _>>()?;
        let cocycle = self
            .cocycle
            .as_ref()
            .map(|c| -> Result<Cocycle, LinalgError> {
                Ok(Cocycle {
                    sigma: inv.mul(&c.sigma)?,
                    inverse: inv.mul(&c.inverse)?,
                })
            })
            .transpose()?;
        Action::new(self.hopf_arc(), Arc::new(target), act, self.mode, cocycle)
    }
}

/// An ideal certified to be stable under the action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HIdeal {
    space: Subspace,
}

impl HIdeal {
    pub fn new(action: &Action, space: Subspace) -> Result<Self, ActionError> {
        if space.ambient_dim() != action.target().dim() {
            return Err(ActionError::Shape(
                "ideal does not live in the target".into(),
            ));
        }
        if !is_ideal(action.target(), &space) || !action.is_h_stable(&space) {
            return Err(ActionError::NotHIdeal);
        }
        Ok(HIdeal { space })
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn into_space(self) -> Subspace {
        self.space
    }
}

/// The one-dimensional Hopf algebra acting by the identity.
pub fn trivial_action(target: Arc<StructureAlgebra>) -> Result<Action, ActionError> {
    let hopf = Arc::new(trivial_hopf(target.field()));
    let act = vec![Matrix::identity(target.field(), target.dim())];
    Action::new(hopf, target, act, ActionMode::Module, None)
}

/// `kG` acting through the given matrices, one per group element.
pub fn group_action(
    g: &GroupTable,
    target: Arc<StructureAlgebra>,
    mats: Vec<Matrix>,
) -> Result<Action, ActionError> {
    let hopf = Arc::new(group_algebra(g, target.field())?);
    Action::new(hopf, target, mats, ActionMode::Module, None)
}

/// `(kG)*` acting on a `G`-graded algebra by the homogeneous projections:
/// `p_g · e_r = e_r` when `deg e_r = g`, else `0`.
pub fn graded_action(
    g: &GroupTable,
    grading: &[usize],
    target: Arc<StructureAlgebra>,
) -> Result<Action, ActionError> {
    let field = target.field();
    let m = target.dim();
    if grading.len() != m || grading.iter().any(|&d| d >= g.order()) {
        return Err(ActionError::Shape(format!(
            "grading must assign one of {} degrees to each of {m} basis elements",
            g.order()
        )));
    }
    for i in 0..m {
        for j in 0..m {
            let deg = g.product(grading[i], grading[j]);
            let off = target
                .basis_product(i, j)
                .iter()
                .enumerate()
                .any(|(k, c)| !c.is_zero() && grading[k] != deg);
            if off {
                return Err(ActionError::Grading {
                    i,
                    j,
                    degree: g.elements[deg].clone(),
                });
            }
        }
    }
    let hopf = Arc::new(dual_hopf(&group_algebra(g, field)?)?);
    let act = (0..g.order())
        .map(|deg| {
            let mut p = Matrix::zeros(field, m, m);
            for (r, &d) in grading.iter().enumerate() {
                if d == deg {
                    p.set(r, r, field.one());
                }
            }
            p
        })
        .collect();
    Action::new(hopf, target, act, ActionMode::Module, None)
}

/// `u(kd)` acting on `k[x]/(x^m)` through the derivation with `d·x = image`.
///
/// `d^k` acts as the `k`-th iterate. The restriction constant `λ` with
/// `D^p = λD` is read off the derivation; an error is returned if none exists.
pub fn derivation_action(
    target: Arc<StructureAlgebra>,
    image: &[Scalar],
) -> Result<Action, ActionError> {
    let field = target.field();
    let p = match field {
        FieldSpec::Prime(p) => p as usize,
        FieldSpec::Rationals => {
            return Err(ActionError::Derivation("u(kd) needs a prime field".into()))
        }
    };
    let m = target.dim();
    if m < 2 || *target != truncated_polynomial(field, m) {
        return Err(ActionError::Derivation(
            "target must be k[x]/(x^m) with its power basis".into(),
        ));
    }
    if image.len() != m {
        return Err(ActionError::Shape(format!("d·x must have {m} coordinates")));
    }
    // D(x^k) = k x^{k-1} D(x)
    let mut powers = vec![field.unit_vector(m, 0)];
    for k in 1..m {
        powers.push(target.mul(&powers[k - 1], &field.unit_vector(m, 1)));
    }
    let x_m_minus_1 = target.mul(&powers[m - 1], image);
    if !x_m_minus_1
        .iter()
        .all(|c| (c * &field.from_i64(m as i64)).is_zero())
    {
        return Err(ActionError::Derivation(format!(
            "d(x^{m}) = {m}·x^{}·d(x) is nonzero",
            m - 1
        )));
    }
    let columns: Vec<Vec<Scalar>> = (0..m)
        .map(|k| match k {
            0 => field.zeros(m),
            _ => {
                let v = target.mul(&powers[k - 1], image);
                v.iter().map(|c| c * &field.from_i64(k as i64)).collect()
            }
        })
        .collect();
    let d = Matrix::from_columns(field, m, &columns)?;
    let mut iterates = vec![Matrix::identity(field, m), d.clone()];
    for k in 2..=p {
        let next = iterates[k - 1].mul(&d)?;
        iterates.push(next);
    }
    let d_p = iterates.pop().expect("p ≥ 2");
    let lambda = restriction_constant(&d_p, &d)?;
    let hopf = Arc::new(restricted_enveloping(field, &lambda)?);
    Action::new(hopf, target, iterates, ActionMode::Module, None)
}

fn restriction_constant(d_p: &Matrix, d: &Matrix) -> Result<Scalar, ActionError> {
    let field = d.field();
    if d.is_zero() {
        return if d_p.is_zero() {
            Ok(field.zero())
        } else {
            Err(ActionError::Derivation("D^p ≠ 0 while D = 0".into()))
        };
    }
    let (idx, pivot) = d
        .data()
        .iter()
        .enumerate()
        .find(|(_, c)| !c.is_zero())
        .expect("nonzero");
    let lambda = &d_p.data()[idx] / pivot;
    if d.scale(&lambda) != *d_p {
        return Err(ActionError::Derivation("D^p is not a multiple of D".into()));
    }
    Ok(lambda)
}
