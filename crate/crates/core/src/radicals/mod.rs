//! H-radicals: `r̄_H`, `(r_j : H)`, the H-Jacobson, H-Baer and H-von Neumann
//! regular radicals, and Gr-regularity.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::action::{
    graded_action, trivial_action, Action, ActionError, ActionMode, Cocycle, HIdeal,
};
use crate::algebra::{
    closure, is_ideal, is_nilpotent, jacobson_radical_with_cap, AlgebraError, RadicalKind,
    RadicalReport, StructureAlgebra, DEFAULT_CAP,
};
use crate::hopf::GroupTable;
use crate::linalg::{random_vector, LinalgError, Matrix, Scalar, Subspace};
use crate::products::{crossed_product, smash_product, ProductError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RadicalError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Precondition(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Bounds for element searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Largest `|field|^dim` that is enumerated exhaustively.
    pub cap: u64,
    /// Random elements tried when enumeration is impossible.
    pub trials: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            cap: DEFAULT_CAP,
            trials: 64,
            seed: 0,
        }
    }
}

/// Outcome of a regularity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Regularity {
    pub regular: bool,
    /// An element that failed, when `regular` is false.
    pub witness: Option<Vec<Scalar>>,
    /// `false` when the verdict rests on sampling.
    pub exhaustive: bool,
    pub method: String,
    pub seed: Option<u64>,
}

fn reject_twisted(action: &Action) -> Result<(), RadicalError> {
    if action.mode() == ActionMode::Twisted {
        return Err(RadicalError::Precondition(
            "H-regularity is only defined here for H-module algebras, not twisted ones".into(),
        ));
    }
    Ok(())
}

/// `r̄_H(R) = r_j(R #_σ H) ∩ R`, checked to be an H-ideal.
pub fn bar_radical(
    action: &Action,
    sigma: Option<&Cocycle>,
) -> Result<RadicalReport, RadicalError> {
    let cp = crossed_product(action, sigma)?;
    intersect_report(action, &cp, "r_j(R #_σ H) ∩ R")
}

/// `r_Hj(R) = r_j(R # H) ∩ R` for an H-module algebra.
pub fn h_jacobson(action: &Action) -> Result<RadicalReport, RadicalError> {
    let cp = smash_product(action)?;
    intersect_report(action, &cp, "r_j(R # H) ∩ R")
}

fn intersect_report(
    action: &Action,
    cp: &crate::products::CrossedProduct,
    method: &str,
) -> Result<RadicalReport, RadicalError> {
    let rad = jacobson_radical_with_cap(cp.algebra(), DEFAULT_CAP)?;
    let back = cp.intersect_with_base(&rad.space)?;
    if !action.is_h_stable(&back) {
        return Err(RadicalError::Internal(format!("{method} is not H-stable")));
    }
    Ok(RadicalReport::new(RadicalKind::HJacobson, back, method))
}

/// `r_jH(R) = (r_j(R) : H)`.
pub fn jh_radical(action: &Action) -> Result<RadicalReport, RadicalError> {
    let rad = jacobson_radical_with_cap(action.target(), DEFAULT_CAP)?;
    let colon = action.colon_ideal(&rad.space)?;
    Ok(RadicalReport::new(
        RadicalKind::JH,
        colon.into_space(),
        "(r_j(R) : H)",
    ))
}

/// `r_Hb(R)`, the largest H-m-nilpotent H-ideal.
///
/// Every nilpotent H-ideal lies in `r_b`, so `(r_b : H)` is the largest
/// nilpotent H-ideal. The quotient step is repeated until the quotient has no
/// nonzero nilpotent H-ideal, which in finite dimension happens after one round.
pub fn h_baer(action: &Action) -> Result<RadicalReport, RadicalError> {
    let r = action.target();
    let mut n = r.zero_ideal();
    let mut rounds = 0;
    loop {
        let (qa, q) = action.quotient_action(&n)?;
        let rad = jacobson_radical_with_cap(q.algebra(), DEFAULT_CAP)?;
        let l = qa.colon_ideal(&rad.space)?;
        if l.space().is_zero() {
            break;
        }
        n = q.preimage(l.space());
        rounds += 1;
        if rounds > r.dim() {
            return Err(RadicalError::Internal(
                "H-Baer iteration did not stabilise".into(),
            ));
        }
    }
    let certified = HIdeal::new(action, n)?.into_space();
    if !is_nilpotent(r, &certified).0 {
        return Err(RadicalError::Internal(
            "H-Baer radical is not nilpotent".into(),
        ));
    }
    Ok(RadicalReport::new(
        RadicalKind::HBaer,
        certified,
        format!("iterated (r_b(R/N) : H), {rounds} round(s)"),
    ))
}

/// One step `a_{n+1} = (h·a_n) b (h'·a_n)` of an H-m-sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HmStep {
    pub h: Vec<Scalar>,
    pub h_prime: Vec<Scalar>,
    pub b: Vec<Scalar>,
}

/// An H-m-sequence with its choices; `values[k]` is `a_{k+2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HmSequenceWitness {
    pub start: Vec<Scalar>,
    pub steps: Vec<HmStep>,
    pub values: Vec<Vec<Scalar>>,
    /// `Some(k)` when `a_k = 0`; `None` when the sequence survived every step.
    pub vanished_at: Option<usize>,
    pub seed: u64,
}

fn hm_next(action: &Action, a: &[Scalar], step: &HmStep) -> Vec<Scalar> {
    let r = action.target();
    let left = r.mul(&action.act(&step.h, a), &step.b);
    r.mul(&left, &action.act(&step.h_prime, a))
}

impl HmSequenceWitness {
    /// Recomputes every value from the stored choices.
    pub fn verify(&self, action: &Action) -> bool {
        let mut a = self.start.clone();
        if self.steps.len() != self.values.len() {
            return false;
        }
        for (step, v) in self.steps.iter().zip(&self.values) {
            a = hm_next(action, &a, step);
            if &a != v {
                return false;
            }
        }
        let first_zero = std::iter::once(&self.start)
            .chain(&self.values)
            .position(|v| v.iter().all(Scalar::is_zero))
            .map(|k| k + 1);
        first_zero == self.vanished_at
    }

    pub fn survived(&self) -> bool {
        self.vanished_at.is_none()
    }
}

/// Searches for an H-m-sequence starting at `a` that survives `depth` steps.
///
/// One greedy pass over basis choices is followed by `trials` random
/// sequences. The first surviving sequence is returned, otherwise the one
/// that lasted longest. A surviving sequence is evidence, not proof, that `a`
/// lies outside the H-Baer radical.
pub fn hm_sequence_probe(
    action: &Action,
    a: &[Scalar],
    depth: usize,
    trials: usize,
    seed: u64,
) -> HmSequenceWitness {
    let r = action.target();
    let hopf = action.hopf();
    let field = r.field();
    let (hd, rd) = (hopf.dim(), r.dim());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b_choices: Vec<Vec<Scalar>> = vec![r.unit().to_vec()];
    b_choices.extend((0..rd).map(|j| r.basis_element(j)));
    let h_choices: Vec<Vec<Scalar>> = (0..hd).map(|i| field.unit_vector(hd, i)).collect();

    let run = |choose: &mut dyn FnMut(&[Scalar]) -> HmStep| -> HmSequenceWitness {
        let mut w = HmSequenceWitness {
            start: a.to_vec(),
            steps: Vec::new(),
            values: Vec::new(),
            vanished_at: None,
            seed,
        };
        let mut current = a.to_vec();
        if current.iter().all(Scalar::is_zero) {
            w.vanished_at = Some(1);
            return w;
        }
        for k in 0..depth {
            let step = choose(&current);
            current = hm_next(action, &current, &step);
            w.steps.push(step);
            w.values.push(current.clone());
            if current.iter().all(Scalar::is_zero) {
                w.vanished_at = Some(k + 2);
                break;
            }
        }
        w
    };

    let mut greedy = |cur: &[Scalar]| -> HmStep {
        let mut fallback = None;
        for h in &h_choices {
            for hp in &h_choices {
                for b in &b_choices {
                    let step = HmStep {
                        h: h.clone(),
                        h_prime: hp.clone(),
                        b: b.clone(),
                    };
                    if !hm_next(action, cur, &step).iter().all(Scalar::is_zero) {
                        return step;
                    }
                    fallback.get_or_insert(step);
                }
            }
        }
        fallback.expect("H and R are nonzero")
    };
    let mut best = run(&mut greedy);
    if best.survived() {
        return best;
    }
    for _ in 0..trials {
        let mut random = |cur: &[Scalar]| -> HmStep {
            let mut last = None;
            for _ in 0..8 {
                let step = HmStep {
                    h: if rand::Rng::gen_bool(&mut rng, 0.5) {
                        h_choices.choose(&mut rng).expect("nonempty").clone()
                    } else {
                        random_vector(field, hd, &mut rng)
                    },
                    h_prime: random_vector(field, hd, &mut rng),
                    b: random_vector(field, rd, &mut rng),
                };
                if !hm_next(action, cur, &step).iter().all(Scalar::is_zero) {
                    return step;
                }
                last = Some(step);
            }
            last.expect("at least one attempt")
        };
        let w = run(&mut random);
        if w.survived() {
            return w;
        }
        if w.vanished_at > best.vanished_at {
            best = w;
        }
    }
    best
}

/// `span{(h_i·a) c (h_k·a)}` over Hopf basis pairs and `c` in `ring`.
fn regular_span(action: &Action, ring: &[Vec<Scalar>], a: &[Scalar]) -> Subspace {
    let r = action.target();
    let moved: Vec<Vec<Scalar>> = (0..action.hopf().dim())
        .map(|h| action.act_basis(h, a))
        .collect();
    let mut vectors = Vec::with_capacity(moved.len() * moved.len() * ring.len());
    for x in &moved {
        for c in ring {
            let left = r.mul(x, c);
            for y in &moved {
                vectors.push(r.mul(&left, y));
            }
        }
    }
    Subspace::span(r.field(), r.dim(), &vectors).expect("vectors of R")
}

fn is_regular_with(action: &Action, ring: &[Vec<Scalar>], a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero) || regular_span(action, ring, a).contains(a)
}

/// `a ∈ (H·a) R (H·a)`.
pub fn h_regular_element(action: &Action, a: &[Scalar]) -> bool {
    let ring: Vec<Vec<Scalar>> = (0..action.target().dim())
        .map(|j| action.target().basis_element(j))
        .collect();
    is_regular_with(action, &ring, a)
}

/// Elements to test in `space`: all of them if enumerable, otherwise basis
/// elements, pairwise sums and random combinations.
fn candidates(space: &Subspace, opts: &SearchOptions) -> (Vec<Vec<Scalar>>, bool) {
    if let Some(all) = space.elements(opts.cap) {
        return (all, true);
    }
    let basis = space.basis_vectors();
    let mut out = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            out.push(crate::linalg::add_vec(&basis[i], &basis[j]));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for _ in 0..opts.trials {
        let coeffs = random_vector(space.field(), space.dim(), &mut rng);
        out.push(space.combine(&coeffs));
    }
    (out, false)
}

/// Whether every element of the H-ideal `ideal` is H-regular. Membership is
/// tested in `R`, which is equivalent to regularity inside the ideal.
pub fn h_regular_ideal(
    action: &Action,
    ideal: &Subspace,
    opts: &SearchOptions,
) -> Result<Regularity, RadicalError> {
    reject_twisted(action)?;
    HIdeal::new(action, ideal.clone())?;
    let (elements, exhaustive) = candidates(ideal, opts);
    let witness = elements.into_iter().find(|a| !h_regular_element(action, a));
    Ok(Regularity {
        regular: witness.is_none(),
        witness,
        exhaustive,
        method: if exhaustive {
            "exhaustive enumeration".into()
        } else {
            format!("basis, pairwise sums and {} random elements", opts.trials)
        },
        seed: (!exhaustive).then_some(opts.seed),
    })
}

/// `r_Hn(R) = {a : the H-ideal (a) is H-regular}`, by exhaustive enumeration.
pub fn h_vn_radical(action: &Action, cap: u64) -> Result<RadicalReport, RadicalError> {
    let whole = action.target().whole();
    let space = h_vn_radical_within(action, &whole, false, cap)?;
    Ok(RadicalReport::new(
        RadicalKind::HVnRegular,
        space,
        "exhaustive: every element a whose H-ideal (a) is H-regular",
    ))
}

/// `r_n(R)`, the von Neumann regular radical, i.e. `r_Hn` for the trivial Hopf algebra.
pub fn vn_regular_radical(alg: &StructureAlgebra, cap: u64) -> Result<RadicalReport, RadicalError> {
    let action = trivial_action(Arc::new(alg.clone()))?;
    Ok(h_vn_radical(&action, cap)?.with_kind(RadicalKind::VnRegular))
}

/// `r_Hn` of an H-ideal `within`, as a subspace of `R`.
///
/// With `intrinsic` set, `within` is treated as an algebra in its own right
/// (possibly without unit): generated H-ideals and regularity only use
/// multipliers from `within`. Otherwise the multipliers range over `R`.
pub fn h_vn_radical_within(
    action: &Action,
    within: &Subspace,
    intrinsic: bool,
    cap: u64,
) -> Result<Subspace, RadicalError> {
    reject_twisted(action)?;
    let r = action.target();
    if !is_ideal(r, within) || !action.is_h_stable(within) {
        return Err(ActionError::NotHIdeal.into());
    }
    let elements = within.elements(cap).ok_or_else(|| {
        RadicalError::Unsupported(format!(
            "r_Hn needs exhaustive enumeration; a {}-dimensional space over {} exceeds the cap {cap}",
            within.dim(),
            r.field()
        ))
    })?;
    let ring: Vec<Vec<Scalar>> = if intrinsic {
        within.basis_vectors()
    } else {
        (0..r.dim()).map(|j| r.basis_element(j)).collect()
    };
    let hd = action.hopf().dim();
    let generated = |a: &[Scalar]| -> Subspace {
        let start = Subspace::span(r.field(), r.dim(), &[a.to_vec()]).expect("element of R");
        closure(start, |v| {
            let mut out = Vec::with_capacity(2 * ring.len() + hd);
            for c in &ring {
                out.push(r.mul(c, v));
                out.push(r.mul(v, c));
            }
            for h in 0..hd {
                out.push(action.act_basis(h, v));
            }
            out
        })
    };
    let mut element_memo: HashMap<Vec<Scalar>, bool> = HashMap::new();
    let mut ideal_memo: HashMap<Subspace, bool> = HashMap::new();
    let mut members = Vec::new();
    for a in &elements {
        let ideal = generated(a);
        let verdict = match ideal_memo.get(&ideal) {
            Some(&v) => v,
            None => {
                let all = ideal
                    .elements(cap)
                    .expect("sub-ideal of an enumerable space");
                let v = all.iter().all(|x| {
                    *element_memo
                        .entry(x.clone())
                        .or_insert_with(|| is_regular_with(action, &ring, x))
                });
                ideal_memo.insert(ideal, v);
                v
            }
        };
        if verdict {
            members.push(a.clone());
        }
    }
    let span = Subspace::span(r.field(), r.dim(), &members)?;
    let q = r.field().order().expect("finite field");
    if q.checked_pow(span.dim() as u32) != Some(members.len() as u64) {
        return Err(RadicalError::Internal(
            "the collected r_Hn elements do not form a subspace".into(),
        ));
    }
    let closed = ring.iter().all(|c| {
        span.basis_vectors()
            .iter()
            .all(|v| span.contains(&r.mul(c, v)) && span.contains(&r.mul(v, c)))
    });
    if !closed || !action.is_h_stable(&span) {
        return Err(RadicalError::Internal("r_Hn is not an H-ideal".into()));
    }
    Ok(span)
}

/// Whether `a = aba` has a solution `b` for every homogeneous `a`; the first
/// failing homogeneous element is returned as witness.
pub fn gr_regular(
    alg: &Arc<StructureAlgebra>,
    grading: &[usize],
    g: &GroupTable,
    opts: &SearchOptions,
) -> Result<Regularity, RadicalError> {
    graded_action(g, grading, Arc::clone(alg))?;
    let field = alg.field();
    let n = alg.dim();
    let mut exhaustive = true;
    for deg in 0..g.order() {
        let basis: Vec<Vec<Scalar>> = (0..n)
            .filter(|&r| grading[r] == deg)
            .map(|r| field.unit_vector(n, r))
            .collect();
        let component = Subspace::span(field, n, &basis)?;
        let (elements, full) = candidates(&component, opts);
        exhaustive &= full;
        for a in elements {
            let cols: Vec<Vec<Scalar>> = (0..n)
                .map(|j| alg.mul(&alg.right_basis_mul(&a, j), &a))
                .collect();
            let m = Matrix::from_columns(field, n, &cols)?;
            if m.solve(&a)?.is_none() {
                return Ok(Regularity {
                    regular: false,
                    witness: Some(a),
                    exhaustive: true,
                    method: format!("homogeneous component of degree {}", g.elements[deg]),
                    seed: None,
                });
            }
        }
    }
    Ok(Regularity {
        regular: true,
        witness: None,
        exhaustive,
        method: if exhaustive {
            "exhaustive enumeration of homogeneous components".into()
        } else {
            format!(
                "homogeneous basis, pairwise sums and {} random elements per component",
                opts.trials
            )
        },
        seed: (!exhaustive).then_some(opts.seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::{derivation_action, group_action};
    use crate::algebra::catalog::{element, matrix_algebra, truncated_polynomial, zero_algebra};
    use crate::algebra::jacobson_radical;
    use crate::linalg::FieldSpec;

    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn example_2_10(p: u64) -> Action {
        let k = f(p);
        let r = Arc::new(truncated_polynomial(k, p as usize));
        let mut image = k.zeros(p as usize);
        image[0] = k.one();
        image[1] = k.one();
        derivation_action(r, &image).unwrap()
    }

    #[test]
    fn trivial_hopf_radicals_match_jacobson() {
        let r = Arc::new(truncated_polynomial(f(3), 3));
        let t = trivial_action(r.clone()).unwrap();
        let rj = jacobson_radical(&r).unwrap().space;
        assert_eq!(bar_radical(&t, None).unwrap().space, rj);
        assert_eq!(h_jacobson(&t).unwrap().space, rj);
        assert_eq!(jh_radical(&t).unwrap().space, rj);
        assert_eq!(h_baer(&t).unwrap().space, rj);
    }

    #[test]
    fn derivation_example_radicals() {
        for p in [2, 3] {
            let a = example_2_10(p);
            assert!(h_baer(&a).unwrap().space.is_zero());
            assert!(jh_radical(&a).unwrap().space.is_zero());
            assert!(!jacobson_radical(a.target()).unwrap().space.is_zero());
            // R # H ≅ M_p(k) is simple
            assert!(h_jacobson(&a).unwrap().space.is_zero());
        }
    }

    #[test]
    fn group_action_colon() {
        let k = f(3);
        let r = Arc::new(truncated_polynomial(k, 3));
        let flip = Matrix::from_i64(k, 3, 3, &[1, 0, 0, 0, -1, 0, 0, 0, 1]);
        let a = group_action(
            &GroupTable::cyclic(2),
            r.clone(),
            vec![Matrix::identity(k, 3), flip],
        )
        .unwrap();
        let x = Subspace::span(k, 3, &[element(k, &[0, 1, 0]), element(k, &[0, 0, 1])]).unwrap();
        assert_eq!(jh_radical(&a).unwrap().space, x);
        assert_eq!(h_jacobson(&a).unwrap().space, x);
        let m2 = Arc::new(matrix_algebra(k, 2));
        let swap = Matrix::from_i64(k, 4, 4, &[0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0]);
        let s = group_action(
            &GroupTable::cyclic(2),
            m2,
            vec![Matrix::identity(k, 4), swap],
        )
        .unwrap();
        assert!(bar_radical(&s, None).unwrap().space.is_zero());
    }

    #[test]
    fn hm_probes() {
        let k = f(2);
        let r = Arc::new(truncated_polynomial(k, 2));
        let t = trivial_action(r.clone()).unwrap();
        let zero = hm_sequence_probe(&t, &k.zeros(2), 5, 4, 1);
        assert_eq!(zero.vanished_at, Some(1));
        let x = hm_sequence_probe(&t, &element(k, &[0, 1]), 5, 16, 1);
        assert_eq!(x.vanished_at, Some(2));
        assert!(x.verify(&t));
        let m2 = Arc::new(matrix_algebra(k, 2));
        let tm = trivial_action(m2.clone()).unwrap();
        let one = hm_sequence_probe(&tm, m2.unit(), 6, 0, 3);
        assert!(one.survived() && one.verify(&tm));
        let a = example_2_10(2);
        let w = hm_sequence_probe(&a, &element(k, &[0, 1]), 6, 8, 9);
        assert!(w.survived() && w.verify(&a));
    }

    #[test]
    fn regularity() {
        let k = f(2);
        let r = Arc::new(truncated_polynomial(k, 2));
        let t = trivial_action(r.clone()).unwrap();
        assert!(h_regular_element(&t, &k.zeros(2)));
        assert!(!h_regular_element(&t, &element(k, &[0, 1])));
        let x = Subspace::span(k, 2, &[element(k, &[0, 1])]).unwrap();
        let opts = SearchOptions::default();
        let v = h_regular_ideal(&t, &x, &opts).unwrap();
        assert!(!v.regular && v.exhaustive);
        assert_eq!(v.witness, Some(element(k, &[0, 1])));
        assert!(h_regular_ideal(&t, &r.zero_ideal(), &opts).unwrap().regular);
        assert!(vn_regular_radical(&r, DEFAULT_CAP).unwrap().space.is_zero());

        let m2 = Arc::new(matrix_algebra(k, 2));
        let tm = trivial_action(m2.clone()).unwrap();
        assert!(h_regular_element(&tm, &element(k, &[1, 0, 0, 0])));
        assert!(h_regular_ideal(&tm, &m2.whole(), &opts).unwrap().regular);
        assert!(vn_regular_radical(&m2, DEFAULT_CAP)
            .unwrap()
            .space
            .is_full());
        assert!(vn_regular_radical(&zero_algebra(k), DEFAULT_CAP)
            .unwrap()
            .space
            .is_zero());
        assert!(matches!(
            vn_regular_radical(&m2.as_ref().clone(), 8),
            Err(RadicalError::Unsupported(_))
        ));
    }

    #[test]
    fn gr_regularity() {
        let k = f(2);
        let opts = SearchOptions::default();
        let z2 = GroupTable::cyclic(2);
        let m2 = Arc::new(matrix_algebra(k, 2));
        assert!(gr_regular(&m2, &[0, 1, 1, 0], &z2, &opts).unwrap().regular);
        let r = Arc::new(truncated_polynomial(k, 2));
        let v = gr_regular(&r, &[0, 0], &GroupTable::cyclic(1), &opts).unwrap();
        assert_eq!(v.witness, Some(element(k, &[0, 1])));
        let z = Arc::new(zero_algebra(k));
        assert!(gr_regular(&z, &[], &z2, &opts).unwrap().regular);
    }
}
