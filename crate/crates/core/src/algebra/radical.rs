//! The Jacobson radical of a finite-dimensional algebra.
//!
//! In finite dimension the Jacobson radical is the largest nilpotent ideal,
//! which is also the Baer, locally nilpotent and nil radical.
//!
//! * Characteristic 0: the radical is the kernel of the trace form
//!   `(x, y) ↦ Tr(L_x L_y)` of the left regular representation.
//! * Characteristic `p`: the trace-form kernel only bounds the radical from
//!   above. It is refined level by level: at level `i` an element `a` of the
//!   current ideal survives iff `Tr(L̃_{ab}^{p^i}) / p^i ≡ 0 (mod p)` for every
//!   basis element `b`, where `L̃` is an integer lift of the regular matrix.
//!   After level `⌊log_p dim⌋` only the radical remains.
//!
//! Every answer is certified: the result must be a nilpotent ideal whose
//! quotient is semisimple, witnessed either by a nondegenerate trace form or
//! by a separability idempotent. If certification fails the radical is
//! recovered by exhaustive search inside the trace-form kernel, subject to
//! the enumeration cap.

use super::ideals::{closure, ideal_generated, is_ideal, is_nilpotent, quotient_algebra};
use super::{AlgebraError, RadicalKind, RadicalReport, StructureAlgebra, DEFAULT_CAP};
use crate::linalg::{FieldSpec, Matrix, Scalar, Subspace};

pub fn jacobson_radical(alg: &StructureAlgebra) -> Result<RadicalReport, AlgebraError> {
    jacobson_radical_with_cap(alg, DEFAULT_CAP)
}

pub fn jacobson_radical_with_cap(
    alg: &StructureAlgebra,
    cap: u64,
) -> Result<RadicalReport, AlgebraError> {
    if alg.dim() == 0 {
        return Ok(RadicalReport::new(
            RadicalKind::Jacobson,
            alg.zero_ideal(),
            "zero algebra",
        ));
    }
    let trace_kernel = trace_form(alg).kernel()?;
    let (candidate, method) = match alg.field() {
        FieldSpec::Rationals => (trace_kernel.clone(), "trace-form kernel"),
        FieldSpec::Prime(p) => (
            lifted_trace_refinement(alg, p, &trace_kernel)?,
            "lifted-trace refinement",
        ),
    };
    if let Some(cert) = certify_radical(alg, &candidate)? {
        return Ok(RadicalReport::new(
            RadicalKind::Jacobson,
            candidate,
            format!("{method}; quotient certified semisimple by {cert}"),
        ));
    }
    match radical_by_enumeration(alg, &trace_kernel, cap) {
        Some(space) => {
            if !is_ideal(alg, &space) || !is_nilpotent(alg, &space).0 {
                return Err(AlgebraError::Internal(
                    "enumerated radical is not a nilpotent ideal".into(),
                ));
            }
            Ok(RadicalReport::new(
                RadicalKind::Jacobson,
                space,
                "exhaustive nilpotent-element search in the trace-form kernel",
            ))
        }
        None => Err(AlgebraError::Unsupported(format!(
            "radical candidate of a {}-dimensional algebra over {} could not be certified and the \
             trace-form kernel (dim {}) is above the enumeration cap {cap}",
            alg.dim(),
            alg.field(),
            trace_kernel.dim()
        ))),
    }
}

/// `T[i][j] = Tr(L_{e_i} L_{e_j}) = Tr(L_{e_i e_j})`.
pub(crate) fn trace_form(alg: &StructureAlgebra) -> Matrix {
    let n = alg.dim();
    let field = alg.field();
    let traces: Vec<Scalar> = (0..n)
        .map(|k| {
            let mut t = field.zero();
            for m in 0..n {
                t += &alg.basis_product(k, m)[m];
            }
            t
        })
        .collect();
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut t = field.zero();
            for (k, c) in alg.sparse_product(i, j) {
                t.add_product(c, &traces[*k]);
            }
            data.push(t);
        }
    }
    Matrix::new(field, n, n, data).expect("square trace form")
}

fn mat_mul_mod(a: &[u64], b: &[u64], n: usize, m: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            let row = &b[k * n..(k + 1) * n];
            let dst = &mut out[i * n..(i + 1) * n];
            for (d, &y) in dst.iter_mut().zip(row) {
                if y != 0 {
                    *d = ((*d as u128 + x as u128 * y as u128) % m as u128) as u64;
                }
            }
        }
    }
    out
}

fn mat_pow_trace(mut base: Vec<u64>, mut exp: u64, n: usize, m: u64) -> u64 {
    let mut acc: Option<Vec<u64>> = None;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => mat_mul_mod(&a, &base, n, m),
            });
        }
        exp >>= 1;
        if exp > 0 {
            base = mat_mul_mod(&base, &base, n, m);
        }
    }
    let acc = acc.expect("positive exponent");
    (0..n).fold(0u64, |t, i| (t + acc[i * n + i]) % m)
}

fn lifted_trace_refinement(
    alg: &StructureAlgebra,
    p: u64,
    trace_kernel: &Subspace,
) -> Result<Subspace, AlgebraError> {
    let n = alg.dim();
    let field = alg.field();
    // regular[k][r*n + c] = coefficient of e_r in e_k e_c
    let regular: Vec<Vec<u64>> = (0..n)
        .map(|k| {
            let mut m = vec![0u64; n * n];
            for c in 0..n {
                for (r, v) in alg.sparse_product(k, c) {
                    m[r * n + c] = v.residue_value().unwrap();
                }
            }
            m
        })
        .collect();
    let mut levels = 0u32;
    while (p as u128).pow(levels + 1) <= n as u128 {
        levels += 1;
    }
    // level 0 is the trace-form kernel
    let mut current = trace_kernel.clone();
    for level in 1..=levels {
        if current.is_zero() {
            break;
        }
        let exponent = p.pow(level);
        let modulus = p.pow(level + 1);
        let basis = current.basis_vectors();
        let mut g = Vec::with_capacity(basis.len() * n);
        for a in &basis {
            for j in 0..n {
                let c = alg.right_basis_mul(a, j);
                let mut lifted = vec![0u64; n * n];
                for (k, ck) in c.iter().enumerate() {
                    let ck = ck.residue_value().unwrap();
                    if ck == 0 {
                        continue;
                    }
                    for (d, &x) in lifted.iter_mut().zip(&regular[k]) {
                        *d = (*d + ck * x) % p;
                    }
                }
                let tr = mat_pow_trace(lifted, exponent, n, modulus);
                if !tr.is_multiple_of(exponent) {
                    return Err(AlgebraError::Internal(format!(
                        "lifted trace {tr} not divisible by {exponent} at level {level}"
                    )));
                }
                g.push(field.residue(tr / exponent));
            }
        }
        let g = Matrix::new(field, basis.len(), n, g)?;
        let survivors = g.transpose().kernel()?;
        let combos: Vec<Vec<Scalar>> = survivors
            .basis_vectors()
            .iter()
            .map(|x| current.combine(x))
            .collect();
        current = Subspace::span(field, n, &combos)?;
    }
    Ok(current)
}

fn certify_radical(
    alg: &StructureAlgebra,
    candidate: &Subspace,
) -> Result<Option<&'static str>, AlgebraError> {
    if !is_ideal(alg, candidate) || !is_nilpotent(alg, candidate).0 {
        return Ok(None);
    }
    let q = quotient_algebra(alg, candidate)?;
    semisimplicity_certificate(q.algebra())
}

/// A witness that `alg` is semisimple, if one is found: a nondegenerate
/// trace form, or a separability idempotent `e ∈ A ⊗ A^op` with `m(e) = 1`
/// and `(a ⊗ 1) e = e (1 ⊗ a)` for a generating set of `a`.
pub fn semisimplicity_certificate(
    alg: &StructureAlgebra,
) -> Result<Option<&'static str>, AlgebraError> {
    if alg.dim() == 0 {
        return Ok(Some("zero algebra"));
    }
    if trace_form(alg).rank()? == alg.dim() {
        return Ok(Some("nondegenerate trace form"));
    }
    if separability_idempotent(alg)?.is_some() {
        return Ok(Some("separability idempotent"));
    }
    Ok(None)
}

/// Basis elements generating `alg` as a unital algebra, chosen greedily.
fn generating_set(alg: &StructureAlgebra) -> Vec<Vec<Scalar>> {
    let field = alg.field();
    let one = Subspace::span(field, alg.dim(), &[alg.unit().to_vec()]).expect("unit");
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    let mut sub = closure(one.clone(), |_| Vec::new());
    while !sub.is_full() {
        let t = (0..alg.dim())
            .find(|&t| !sub.contains(&alg.basis_element(t)))
            .expect("proper subalgebra misses a basis element");
        gens.push(alg.basis_element(t));
        let start = one.extend(&gens).expect("same ambient");
        sub = closure(start, |v| gens.iter().map(|g| alg.mul(g, v)).collect());
    }
    gens
}

fn separability_idempotent(alg: &StructureAlgebra) -> Result<Option<Vec<Scalar>>, AlgebraError> {
    let q = alg.dim();
    let field = alg.field();
    let gens = generating_set(alg);
    let unknowns = q * q;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for a in &gens {
        let left: Vec<Vec<Scalar>> = (0..q).map(|i| alg.mul(a, &alg.basis_element(i))).collect();
        let right: Vec<Vec<Scalar>> = (0..q).map(|j| alg.mul(&alg.basis_element(j), a)).collect();
        for s in 0..q {
            for t in 0..q {
                let mut row = field.zeros(unknowns);
                for i in 0..q {
                    row[i * q + t] += &left[i][s];
                }
                for j in 0..q {
                    row[s * q + j] -= &right[j][t];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                    rhs.push(field.zero());
                }
            }
        }
    }
    for k in 0..q {
        let mut row = field.zeros(unknowns);
        for i in 0..q {
            for j in 0..q {
                row[i * q + j] = alg.basis_product(i, j)[k].clone();
            }
        }
        rows.push(row);
        rhs.push(alg.unit()[k].clone());
    }
    let system = Matrix::from_rows(field, unknowns, &rows)?;
    Ok(system.solve(&rhs)?)
}

/// The radical as the span of all elements of `within` that generate a
/// nilpotent ideal. `None` if `within` is too large to enumerate.
pub fn radical_by_enumeration(
    alg: &StructureAlgebra,
    within: &Subspace,
    cap: u64,
) -> Option<Subspace> {
    let elements = within.elements(cap)?;
    let mut rad = alg.zero_ideal();
    for a in elements {
        if rad.contains(&a) {
            continue;
        }
        let generated = ideal_generated(alg, std::slice::from_ref(&a));
        if is_nilpotent(alg, &generated).0 {
            rad = rad.sum(&generated).expect("same ambient");
        }
    }
    Some(rad)
}
