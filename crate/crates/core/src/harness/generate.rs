//! Catalog-driven instance generation.
//!
//! Structure tensors are never drawn at random. Diversity comes from the
//! recipe, the symmetry data attached to it (characters, permutation
//! representations, gradings, derivation images) and a random change of basis.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::action::{derivation_action, graded_action, group_action, trivial_action, Action};
use crate::algebra::catalog::{
    direct_sum, matrix_algebra, trivial_extension, truncated_polynomial, upper_triangular,
    upper_triangular_positions,
};
use crate::algebra::StructureAlgebra;
use crate::hopf::{group_algebra, GroupTable};
use crate::linalg::{random_vector, FieldSpec, Matrix, Scalar};

/// Underlying algebra of an instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum AlgebraRecipe {
    GroupAlgebra { group: String },
    MatrixAlgebra { n: usize },
    TruncatedPolynomial { m: usize },
    DirectSum { parts: Vec<AlgebraRecipe> },
    Triangular { n: usize },
    TrivialExtension { base: Box<AlgebraRecipe> },
}

impl AlgebraRecipe {
    pub fn dim(&self) -> usize {
        match self {
            AlgebraRecipe::GroupAlgebra { group } => {
                GroupTable::by_name(group).map(|g| g.order()).unwrap_or(0)
            }
            AlgebraRecipe::MatrixAlgebra { n } => n * n,
            AlgebraRecipe::TruncatedPolynomial { m } => *m,
            AlgebraRecipe::DirectSum { parts } => parts.iter().map(AlgebraRecipe::dim).sum(),
            AlgebraRecipe::Triangular { n } => n * (n + 1) / 2,
            AlgebraRecipe::TrivialExtension { base } => 2 * base.dim(),
        }
    }

    pub fn build(&self, field: FieldSpec) -> Result<StructureAlgebra, HarnessError> {
        Ok(match self {
            AlgebraRecipe::GroupAlgebra { group } => {
                group_algebra(&GroupTable::by_name(group)?, field)?
                    .algebra()
                    .clone()
            }
            AlgebraRecipe::MatrixAlgebra { n } if *n >= 1 => matrix_algebra(field, *n),
            AlgebraRecipe::TruncatedPolynomial { m } if *m >= 1 => truncated_polynomial(field, *m),
            AlgebraRecipe::Triangular { n } if *n >= 1 => upper_triangular(field, *n),
            AlgebraRecipe::DirectSum { parts } if !parts.is_empty() => {
                let mut acc = parts[0].build(field)?;
                for p in &parts[1..] {
                    acc = direct_sum(&acc, &p.build(field)?)?;
                }
                acc
            }
            AlgebraRecipe::TrivialExtension { base } => trivial_extension(&base.build(field)?)?,
            other => return Err(HarnessError::Recipe(format!("empty recipe {other:?}"))),
        })
    }
}

/// How the Hopf algebra acts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum ActionRecipe {
    Trivial,
    /// `kG` acting by algebra automorphisms.
    GroupAutomorphism {
        group: String,
    },
    /// `(kG)*` acting through a `G`-grading.
    GroupGrading {
        group: String,
    },
    /// `u(kd)` acting on `k[x]/(x^m)`; a random admissible image when `None`.
    Derivation {
        image: Option<Vec<i64>>,
    },
    /// `kG` acting by conjugation with a homomorphism `G → R^×`.
    Inner {
        group: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub recipe: AlgebraRecipe,
    pub field: String,
    pub action: ActionRecipe,
    pub seed: u64,
    /// Apply a random (homogeneous, for gradings) change of basis.
    #[serde(default)]
    pub basis_change: bool,
}

/// A generated, validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: Option<InstanceSpec>,
    pub action: Action,
    /// Set for graded instances.
    pub grading: Option<(GroupTable, Vec<usize>)>,
}

impl Instance {
    pub fn algebra(&self) -> &StructureAlgebra {
        self.action.target()
    }
}

pub fn generate_instance(spec: &InstanceSpec) -> Result<Instance, HarnessError> {
    let field: FieldSpec = spec.field.parse()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let alg = spec.recipe.build(field)?;
    let n = alg.dim();
    let target = Arc::new(alg);
    let (action, grading) = match &spec.action {
        ActionRecipe::Trivial => (trivial_action(target)?, None),
        ActionRecipe::GroupAutomorphism { group } => {
            let g = GroupTable::by_name(group)?;
            let mats = automorphisms(&spec.recipe, field, &g, &mut rng)?;
            (group_action(&g, target, mats)?, None)
        }
        ActionRecipe::Inner { group } => {
            let g = GroupTable::by_name(group)?;
            let units = units(&spec.recipe, field, &g, &mut rng)?;
            let mats = (0..g.order())
                .map(|x| {
                    let (u, v) = (&units[x], &units[g.inverse(x)]);
                    let cols: Vec<Vec<Scalar>> = (0..n)
                        .map(|j| target.mul(&target.mul(u, &target.basis_element(j)), v))
                        .collect();
                    Matrix::from_columns(field, n, &cols)
                })
                .collect::<Result<Vec<_>, _>>()?;
            (group_action(&g, target, mats)?, None)
        }
        ActionRecipe::GroupGrading { group } => {
            let g = GroupTable::by_name(group)?;
            let deg = grading(&spec.recipe, &g, &mut rng)?;
            (graded_action(&g, &deg, target)?, Some((g, deg)))
        }
        ActionRecipe::Derivation { image } => {
            if !matches!(spec.recipe, AlgebraRecipe::TruncatedPolynomial { .. }) {
                return Err(HarnessError::Recipe(
                    "derivation actions need a truncated-polynomial recipe".into(),
                ));
            }
            if !field.is_finite() {
                return Err(HarnessError::Recipe(
                    "u(kd) needs a field of positive characteristic".into(),
                ));
            }
            match image {
                Some(v) => {
                    let img: Vec<Scalar> = v.iter().map(|&c| field.from_i64(c)).collect();
                    (derivation_action(target, &img)?, None)
                }
                None => {
                    let mut found = None;
                    for _ in 0..64 {
                        let img = random_vector(field, n, &mut rng);
                        if let Ok(a) = derivation_action(Arc::clone(&target), &img) {
                            found = Some(a);
                            break;
                        }
                    }
                    let a = found.ok_or_else(|| {
                        HarnessError::Recipe("no admissible derivation image found".into())
                    })?;
                    (a, None)
                }
            }
        }
    };
    let action = if spec.basis_change {
        let change = match &grading {
            Some((_, deg)) => homogeneous_change(field, deg, &mut rng),
            None => random_invertible(field, n, &mut rng),
        };
        let changed = action.change_basis(&change)?;
        changed.validate()?;
        changed
    } else {
        action
    };
    Ok(Instance {
        spec: Some(spec.clone()),
        action,
        grading,
    })
}

/// A random invertible matrix; entries are small over ℚ.
pub fn random_invertible<R: Rng + ?Sized>(field: FieldSpec, n: usize, rng: &mut R) -> Matrix {
    loop {
        let rows: Vec<Vec<Scalar>> = (0..n).map(|_| random_vector(field, n, rng)).collect();
        let m = Matrix::from_rows(field, n, &rows).expect("square");
        if m.rank().ok() == Some(n) {
            return m;
        }
    }
}

fn homogeneous_change<R: Rng + ?Sized>(field: FieldSpec, deg: &[usize], rng: &mut R) -> Matrix {
    let n = deg.len();
    let mut out = Matrix::zeros(field, n, n);
    let mut classes: Vec<usize> = deg.to_vec();
    classes.sort_unstable();
    classes.dedup();
    for d in classes {
        let idx: Vec<usize> = (0..n).filter(|&i| deg[i] == d).collect();
        let block = random_invertible(field, idx.len(), rng);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(i, j, block.get(a, b).clone());
            }
        }
    }
    out
}

/// One-dimensional representations `G → k^×`, each as its list of values.
pub fn characters(g: &GroupTable, field: FieldSpec) -> Vec<Vec<Scalar>> {
    let n = g.order();
    let mut out = vec![vec![field.one(); n]];
    if let Some(generator) = (0..n).find(|&x| g.element_order(x) == n) {
        let roots: Vec<Scalar> = match field.elements() {
            Some(all) => all
                .into_iter()
                .filter(|z| !z.is_zero() && z.pow(n as u64).is_one())
                .collect(),
            None if n.is_multiple_of(2) => vec![field.one(), -field.one()],
            None => vec![field.one()],
        };
        for z in roots.into_iter().filter(|z| !z.is_one()) {
            let mut chi = vec![field.zero(); n];
            for k in 0..n {
                chi[g.power(generator, k)] = z.pow(k as u64);
            }
            out.push(chi);
        }
    } else if g.name == "S3" && field.characteristic() != 2 {
        let sign = (0..n)
            .map(|x| {
                if g.element_order(x) == 2 {
                    -field.one()
                } else {
                    field.one()
                }
            })
            .collect();
        out.push(sign);
    }
    out
}

/// Left-multiplication actions of `G` on the cosets of its cyclic subgroups,
/// as `perm[g][point]`.
pub fn coset_actions(g: &GroupTable) -> Vec<Vec<Vec<usize>>> {
    let n = g.order();
    let mut out: Vec<Vec<Vec<usize>>> = Vec::new();
    for t in 0..n {
        let sub: Vec<usize> = (0..g.element_order(t)).map(|k| g.power(t, k)).collect();
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let mut c: Vec<usize> = sub.iter().map(|&s| g.product(x, s)).collect();
            c.sort_unstable();
            if !cosets.contains(&c) {
                cosets.push(c);
            }
        }
        if cosets.len() < 2 || out.iter().any(|p| p[0].len() == cosets.len()) {
            continue;
        }
        let perms = (0..n)
            .map(|x| {
                cosets
                    .iter()
                    .map(|c| {
                        let img = g.product(x, c[0]);
                        cosets
                            .iter()
                            .position(|d| d.contains(&img))
                            .expect("cosets partition G")
                    })
                    .collect()
            })
            .collect();
        out.push(perms);
    }
    out
}

/// A representation `G → GL_n(k)`: characters on a diagonal or a coset
/// permutation, conjugated by a random invertible matrix.
fn representation<R: Rng + ?Sized>(
    g: &GroupTable,
    field: FieldSpec,
    n: usize,
    diagonal_only: bool,
    rng: &mut R,
) -> Vec<Matrix> {
    let chars = characters(g, field);
    let perms: Vec<Vec<Vec<usize>>> = coset_actions(g)
        .into_iter()
        .filter(|p| p[0].len() == n)
        .collect();
    if !diagonal_only && !perms.is_empty() && rng.gen_bool(0.5) {
        let perm = &perms[0];
        let p = random_invertible(field, n, rng);
        let pinv = p.inverse().expect("field").expect("invertible");
        return (0..g.order())
            .map(|x| {
                let mut m = Matrix::zeros(field, n, n);
                for (i, &j) in perm[x].iter().enumerate() {
                    m.set(j, i, field.one());
                }
                p.mul(&m).and_then(|pm| pm.mul(&pinv)).expect("square")
            })
            .collect();
    }
    let picks: Vec<&Vec<Scalar>> = (0..n)
        .map(|_| chars.choose(rng).expect("trivial character"))
        .collect();
    let diag: Vec<Matrix> = (0..g.order())
        .map(|x| {
            let mut m = Matrix::zeros(field, n, n);
            for (i, chi) in picks.iter().enumerate() {
                m.set(i, i, chi[x].clone());
            }
            m
        })
        .collect();
    if diagonal_only {
        return diag;
    }
    let p = random_invertible(field, n, rng);
    let pinv = p.inverse().expect("field").expect("invertible");
    diag.iter()
        .map(|m| p.mul(m).and_then(|pm| pm.mul(&pinv)).expect("square"))
        .collect()
}

/// `e_ij ↦ ρ e_ij ρ⁻¹` restricted to the listed matrix positions.
fn conjugation_on_positions(
    field: FieldSpec,
    rho: &Matrix,
    rho_inv: &Matrix,
    pos: &[(usize, usize)],
) -> Matrix {
    let d = pos.len();
    let mut out = Matrix::zeros(field, d, d);
    for (col, &(i, j)) in pos.iter().enumerate() {
        for (row, &(a, b)) in pos.iter().enumerate() {
            out.set(row, col, rho.get(a, i) * rho_inv.get(j, b));
        }
    }
    out
}

fn block_diag(field: FieldSpec, blocks: &[Matrix]) -> Matrix {
    let n: usize = blocks.iter().map(Matrix::rows).sum();
    let mut out = Matrix::zeros(field, n, n);
    let mut off = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out.set(off + i, off + j, b.get(i, j).clone());
            }
        }
        off += b.rows();
    }
    out
}

/// A homomorphism `G → Aut(R)`, one matrix per group element.
fn automorphisms<R: Rng + ?Sized>(
    recipe: &AlgebraRecipe,
    field: FieldSpec,
    g: &GroupTable,
    rng: &mut R,
) -> Result<Vec<Matrix>, HarnessError> {
    let order = g.order();
    Ok(match recipe {
        AlgebraRecipe::TruncatedPolynomial { m } => {
            let chi = characters(g, field)
                .choose(rng)
                .expect("trivial character")
                .clone();
            (0..order)
                .map(|x| {
                    let mut d = Matrix::zeros(field, *m, *m);
                    for k in 0..*m {
                        d.set(k, k, chi[x].pow(k as u64));
                    }
                    d
                })
                .collect()
        }
        AlgebraRecipe::MatrixAlgebra { n } | AlgebraRecipe::Triangular { n } => {
            let tri = matches!(recipe, AlgebraRecipe::Triangular { .. });
            let rho = representation(g, field, *n, tri, rng);
            let pos: Vec<(usize, usize)> = if tri {
                upper_triangular_positions(*n)
            } else {
                (0..*n).flat_map(|i| (0..*n).map(move |j| (i, j))).collect()
            };
            rho.iter()
                .map(|r| {
                    let inv = r.inverse().expect("field").expect("invertible");
                    conjugation_on_positions(field, r, &inv, &pos)
                })
                .collect()
        }
        AlgebraRecipe::GroupAlgebra { group } => {
            let k = GroupTable::by_name(group)?;
            if k == *g && rng.gen_bool(0.7) {
                (0..order)
                    .map(|x| {
                        let mut m = Matrix::zeros(field, order, order);
                        for y in 0..order {
                            m.set(g.product(g.product(x, y), g.inverse(x)), y, field.one());
                        }
                        m
                    })
                    .collect()
            } else {
                vec![Matrix::identity(field, k.order()); order]
            }
        }
        AlgebraRecipe::DirectSum { parts } => {
            let t = parts.len();
            let same = parts.iter().all(|p| *p == parts[0]);
            let perms: Vec<Vec<Vec<usize>>> = coset_actions(g)
                .into_iter()
                .filter(|p| p[0].len() == t)
                .collect();
            if same && !perms.is_empty() && rng.gen_bool(0.5) {
                let d = parts[0].dim();
                let perm = &perms[0];
                (0..order)
                    .map(|x| {
                        let mut m = Matrix::zeros(field, t * d, t * d);
                        for (i, &j) in perm[x].iter().enumerate() {
                            for r in 0..d {
                                m.set(j * d + r, i * d + r, field.one());
                            }
                        }
                        m
                    })
                    .collect()
            } else {
                let per: Vec<Vec<Matrix>> = parts
                    .iter()
                    .map(|p| automorphisms(p, field, g, rng))
                    .collect::<Result<_, _>>()?;
                (0..order)
                    .map(|x| {
                        block_diag(field, &per.iter().map(|v| v[x].clone()).collect::<Vec<_>>())
                    })
                    .collect()
            }
        }
        AlgebraRecipe::TrivialExtension { base } => {
            let phi = automorphisms(base, field, g, rng)?;
            let chi = characters(g, field)
                .choose(rng)
                .expect("trivial character")
                .clone();
            (0..order)
                .map(|x| block_diag(field, &[phi[x].clone(), phi[x].scale(&chi[x])]))
                .collect()
        }
    })
}

/// A homomorphism `G → R^×`, one unit per group element.
fn units<R: Rng + ?Sized>(
    recipe: &AlgebraRecipe,
    field: FieldSpec,
    g: &GroupTable,
    rng: &mut R,
) -> Result<Vec<Vec<Scalar>>, HarnessError> {
    let order = g.order();
    let one = |alg: &StructureAlgebra| vec![alg.unit().to_vec(); order];
    Ok(match recipe {
        AlgebraRecipe::MatrixAlgebra { n } | AlgebraRecipe::Triangular { n } => {
            let tri = matches!(recipe, AlgebraRecipe::Triangular { .. });
            let rho = representation(g, field, *n, tri, rng);
            let pos: Vec<(usize, usize)> = if tri {
                upper_triangular_positions(*n)
            } else {
                (0..*n).flat_map(|i| (0..*n).map(move |j| (i, j))).collect()
            };
            rho.iter()
                .map(|r| pos.iter().map(|&(i, j)| r.get(i, j).clone()).collect())
                .collect()
        }
        AlgebraRecipe::GroupAlgebra { group } => {
            let k = GroupTable::by_name(group)?;
            if k == *g {
                (0..order).map(|x| field.unit_vector(order, x)).collect()
            } else {
                one(&recipe.build(field)?)
            }
        }
        AlgebraRecipe::TruncatedPolynomial { .. } => one(&recipe.build(field)?),
        AlgebraRecipe::DirectSum { parts } => {
            let per: Vec<Vec<Vec<Scalar>>> = parts
                .iter()
                .map(|p| units(p, field, g, rng))
                .collect::<Result<_, _>>()?;
            (0..order)
                .map(|x| per.iter().flat_map(|u| u[x].iter().cloned()).collect())
                .collect()
        }
        AlgebraRecipe::TrivialExtension { base } => {
            let d = base.dim();
            units(base, field, g, rng)?
                .into_iter()
                .map(|mut u| {
                    u.extend(field.zeros(d));
                    u
                })
                .collect()
        }
    })
}

fn central_elements(g: &GroupTable) -> Vec<usize> {
    (0..g.order())
        .filter(|&z| (0..g.order()).all(|x| g.product(z, x) == g.product(x, z)))
        .collect()
}

/// A `G`-grading of the recipe's basis, by element index.
fn grading<R: Rng + ?Sized>(
    recipe: &AlgebraRecipe,
    g: &GroupTable,
    rng: &mut R,
) -> Result<Vec<usize>, HarnessError> {
    let order = g.order();
    let e = g.identity();
    Ok(match recipe {
        AlgebraRecipe::TruncatedPolynomial { m } => {
            let x = rng.gen_range(0..order);
            (0..*m).map(|k| g.power(x, k)).collect()
        }
        AlgebraRecipe::MatrixAlgebra { n } | AlgebraRecipe::Triangular { n } => {
            let tuple: Vec<usize> = (0..*n).map(|_| rng.gen_range(0..order)).collect();
            let pos: Vec<(usize, usize)> = if matches!(recipe, AlgebraRecipe::Triangular { .. }) {
                upper_triangular_positions(*n)
            } else {
                (0..*n).flat_map(|i| (0..*n).map(move |j| (i, j))).collect()
            };
            pos.iter()
                .map(|&(i, j)| g.product(g.inverse(tuple[i]), tuple[j]))
                .collect()
        }
        AlgebraRecipe::GroupAlgebra { group } => {
            let k = GroupTable::by_name(group)?;
            if k == *g && rng.gen_bool(0.7) {
                (0..order).collect()
            } else {
                vec![e; k.order()]
            }
        }
        AlgebraRecipe::DirectSum { parts } => {
            let mut out = Vec::new();
            for p in parts {
                out.extend(grading(p, g, rng)?);
            }
            out
        }
        AlgebraRecipe::TrivialExtension { base } => {
            let d = grading(base, g, rng)?;
            let c = *central_elements(g)
                .choose(rng)
                .expect("identity is central");
            let shifted: Vec<usize> = d.iter().map(|&x| g.product(x, c)).collect();
            d.into_iter().chain(shifted).collect()
        }
    })
}
