//! Independent oracles. They read raw structure constants and action
//! matrices as residues mod p and never call the library's arithmetic.

#![allow(dead_code)]

use hrl_core::action::Action;
use hrl_core::algebra::catalog::{
    diagonal_algebra, direct_sum, ground_field, trivial_extension, truncated_polynomial,
    upper_triangular,
};
use hrl_core::algebra::jacobson_radical;
use hrl_core::algebra::StructureAlgebra;
use hrl_core::harness::{
    generate_instance, random_invertible, ActionRecipe, AlgebraRecipe, InstanceSpec,
};
use hrl_core::hopf::{group_algebra, GroupTable};
use hrl_core::linalg::{FieldSpec, Scalar};
use hrl_core::radicals::h_regular_element;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub mod props;

/// A finite-field algebra as plain residue tables.
pub struct RawAlgebra {
    pub p: u64,
    pub n: usize,
    /// `mul[(i*n + j)*n + k]`
    pub mul: Vec<u64>,
}

fn res(s: &Scalar) -> u64 {
    s.residue_value().expect("finite field")
}

impl RawAlgebra {
    pub fn of(a: &StructureAlgebra) -> Self {
        RawAlgebra {
            p: a.field().characteristic(),
            n: a.dim(),
            mul: a.structure_constants().iter().map(res).collect(),
        }
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let n = self.n;
        let mut out = vec![0; n];
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0 {
                    continue;
                }
                let c = x[i] * y[j] % self.p;
                for k in 0..n {
                    out[k] = (out[k] + c * self.mul[(i * n + j) * n + k]) % self.p;
                }
            }
        }
        out
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        all_vectors(self.p, self.n)
    }

    pub fn is_nilpotent(&self, x: &[u64]) -> bool {
        let mut power = x.to_vec();
        for _ in 0..=self.n {
            if power.iter().all(|&c| c == 0) {
                return true;
            }
            power = self.mul(&power, x);
        }
        power.iter().all(|&c| c == 0)
    }

    /// `J(R) = {a : xa is nilpotent for every x}`, by enumeration.
    pub fn radical_elements(&self) -> Vec<Vec<u64>> {
        let all = self.elements();
        all.iter()
            .filter(|a| all.iter().all(|x| self.is_nilpotent(&self.mul(x, a))))
            .cloned()
            .collect()
    }
}

pub fn all_vectors(p: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn to_residues(v: &[Scalar]) -> Vec<u64> {
    v.iter().map(res).collect()
}

fn add(p: u64, x: &[u64], y: &[u64]) -> Vec<u64> {
    x.iter().zip(y).map(|(a, b)| (a + b) % p).collect()
}

/// `h·a` for an arbitrary element `h` of H.
fn act(action: &Action, p: u64, h: &[u64], a: &[u64]) -> Vec<u64> {
    let n = a.len();
    let mut out = vec![0; n];
    for (i, &hi) in h.iter().enumerate() {
        if hi == 0 {
            continue;
        }
        let m = &action.matrices()[i];
        for r in 0..n {
            let mut s = 0;
            for c in 0..n {
                s = (s + res(m.get(r, c)) * a[c]) % p;
            }
            out[r] = (out[r] + hi * s) % p;
        }
    }
    out
}

/// Whether `a ∈ (H·a) R (H·a)`, by closing the set of all products
/// `(h·a) r (h'·a)` (every `h, h' ∈ H`, `r ∈ R`) under addition.
pub fn h_regular_brute(action: &Action, a: &[Scalar]) -> bool {
    let raw = RawAlgebra::of(action.target());
    let p = raw.p;
    let a = to_residues(a);
    if a.iter().all(|&c| c == 0) {
        return true;
    }
    let hs = all_vectors(p, action.hopf().dim());
    let moved: Vec<Vec<u64>> = hs.iter().map(|h| act(action, p, h, &a)).collect();
    let mut products: Vec<Vec<u64>> = Vec::new();
    for x in &moved {
        for r in raw.elements() {
            let xr = raw.mul(x, &r);
            for y in &moved {
                products.push(raw.mul(&xr, y));
            }
        }
    }
    products.sort();
    products.dedup();
    let mut sums: std::collections::BTreeSet<Vec<u64>> = std::collections::BTreeSet::new();
    sums.insert(vec![0; raw.n]);
    loop {
        let before = sums.len();
        let current: Vec<Vec<u64>> = sums.iter().cloned().collect();
        for s in &current {
            for t in &products {
                sums.insert(add(p, s, t));
            }
        }
        if sums.len() == before {
            break;
        }
    }
    sums.contains(&a)
}

/// `k[x]/(f)` for monic `f` given by its lower coefficients `f_0, …, f_{m-1}`.
pub fn poly_quotient(field: FieldSpec, lower: &[i64]) -> StructureAlgebra {
    let m = lower.len();
    // x^m = −Σ f_i x^i
    let mut powers: Vec<Vec<Scalar>> = (0..m).map(|i| field.unit_vector(m, i)).collect();
    for _ in m..2 * m - 1 {
        let last = powers.last().expect("nonempty").clone();
        let mut next = field.zeros(m);
        next[1..m].clone_from_slice(&last[..m - 1]);
        let top = last[m - 1].clone();
        for (i, &f) in lower.iter().enumerate() {
            next[i] = &next[i] - &(&top * &field.from_i64(f));
        }
        powers.push(next);
    }
    let labels = (0..m).map(|i| format!("x^{i}")).collect();
    StructureAlgebra::from_products(field, labels, field.unit_vector(m, 0), |a, b| {
        powers[a + b].clone()
    })
    .expect("polynomial quotient")
}

/// `k[x, y]/(x, y)²`.
pub fn square_zero_plane(field: FieldSpec) -> StructureAlgebra {
    let labels = vec!["1".into(), "x".into(), "y".into()];
    StructureAlgebra::from_products(field, labels, field.unit_vector(3, 0), |a, b| {
        match (a, b) {
            (0, j) | (j, 0) => field.unit_vector(3, j),
            _ => field.zeros(3),
        }
    })
    .expect("square-zero extension")
}

/// 100 unital algebras over 𝔽_2 of dimension ≤ 3: the catalog members
/// followed by random changes of basis.
pub fn f2_catalog_sample() -> Vec<StructureAlgebra> {
    let k = FieldSpec::prime(2).unwrap();
    let t = |m| truncated_polynomial(k, m);
    let bases = vec![
        ground_field(k),
        t(2),
        t(3),
        diagonal_algebra(k, 2),
        diagonal_algebra(k, 3),
        direct_sum(&ground_field(k), &t(2)).unwrap(),
        upper_triangular(k, 2),
        trivial_extension(&ground_field(k)).unwrap(),
        group_algebra(&GroupTable::cyclic(2), k)
            .unwrap()
            .algebra()
            .clone(),
        group_algebra(&GroupTable::cyclic(3), k)
            .unwrap()
            .algebra()
            .clone(),
        poly_quotient(k, &[1, 1]),
        poly_quotient(k, &[1, 1, 0]),
        poly_quotient(k, &[0, 1, 0]),
        poly_quotient(k, &[1, 0, 0]),
        square_zero_plane(k),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    (0..100)
        .map(|i| {
            let base = &bases[i % bases.len()];
            if i < bases.len() {
                base.clone()
            } else {
                base.change_basis(&random_invertible(k, base.dim(), &mut rng))
                    .unwrap()
            }
        })
        .collect()
}

/// Small 𝔽_2 and 𝔽_3 instances whose H-span can be enumerated.
pub fn small_instances() -> Vec<InstanceSpec> {
    use AlgebraRecipe::*;
    let t = |m| TruncatedPolynomial { m };
    let mut out = Vec::new();
    let recipes = [
        t(1),
        t(2),
        t(3),
        Triangular { n: 2 },
        GroupAlgebra { group: "Z2".into() },
        DirectSum {
            parts: vec![t(1), t(2)],
        },
        DirectSum {
            parts: vec![t(1), t(1)],
        },
        TrivialExtension {
            base: Box::new(t(1)),
        },
    ];
    for (i, r) in recipes.iter().enumerate() {
        for action in [
            ActionRecipe::Trivial,
            ActionRecipe::GroupAutomorphism { group: "Z2".into() },
            ActionRecipe::GroupGrading { group: "Z2".into() },
            ActionRecipe::Inner { group: "Z2".into() },
        ] {
            out.push(InstanceSpec {
                recipe: r.clone(),
                field: "F2".into(),
                action,
                seed: i as u64,
                basis_change: true,
            });
        }
    }
    out.push(InstanceSpec {
        recipe: t(2),
        field: "F2".into(),
        action: ActionRecipe::Derivation {
            image: Some(vec![1, 1]),
        },
        seed: 0,
        basis_change: false,
    });
    out.push(InstanceSpec {
        recipe: t(2),
        field: "F3".into(),
        action: ActionRecipe::GroupGrading { group: "Z2".into() },
        seed: 1,
        basis_change: true,
    });
    out
}

/// Algebras of the 𝔽_2 sample where `jacobson_radical` disagrees with
/// enumeration, and the sample size.
pub fn jacobson_mismatches() -> (Vec<String>, usize) {
    let sample = f2_catalog_sample();
    let mut bad = Vec::new();
    for (i, alg) in sample.iter().enumerate() {
        let computed = match jacobson_radical(alg) {
            Ok(r) => r.space,
            Err(e) => {
                bad.push(format!("algebra #{i}: {e}"));
                continue;
            }
        };
        let mut computed: Vec<Vec<u64>> = computed
            .elements(1 << 20)
            .unwrap()
            .iter()
            .map(|v| to_residues(v))
            .collect();
        computed.sort();
        let mut oracle = RawAlgebra::of(alg).radical_elements();
        oracle.sort();
        if computed != oracle {
            bad.push(format!(
                "algebra #{i}: {} elements versus {}",
                computed.len(),
                oracle.len()
            ));
        }
    }
    (bad, sample.len())
}

/// Elements where `h_regular_element` disagrees with the expanded
/// definition, and the number of elements compared.
pub fn h_regular_mismatches() -> (Vec<String>, usize) {
    let mut bad = Vec::new();
    let mut compared = 0;
    for spec in small_instances() {
        let inst = generate_instance(&spec).unwrap();
        for a in inst.algebra().whole().elements(1 << 20).unwrap() {
            compared += 1;
            if h_regular_element(&inst.action, &a) != h_regular_brute(&inst.action, &a) {
                bad.push(format!("{spec:?} at {a:?}"));
            }
        }
    }
    (bad, compared)
}
