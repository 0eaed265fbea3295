//! The verification suites. Each one runs sequentially over its instances so
//! that reports are reproducible byte for byte.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::generate::{generate_instance, ActionRecipe, AlgebraRecipe, Instance, InstanceSpec};
use super::{HarnessError, InstanceWitness, SuiteReport};
use crate::action::{derivation_action, Action, ActionMode, Cocycle};
use crate::algebra::catalog::truncated_polynomial;
use crate::algebra::{
    is_nilpotent, jacobson_radical, subalgebra_unitization, StructureAlgebra, DEFAULT_CAP,
};
use crate::hopf::{group_algebra, GroupTable};
use crate::linalg::{random_vector, FieldSpec, Matrix, Scalar, Subspace};
use crate::products::{double_smash, smash_product};
use crate::radicals::{
    bar_radical, gr_regular, h_baer, h_jacobson, h_regular_ideal, h_vn_radical,
    h_vn_radical_within, hm_sequence_probe, jh_radical, vn_regular_radical, SearchOptions,
};

/// Which suite a report or re-check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SuiteId {
    Example210,
    Theorem28,
    Theorem37,
    AxiomsHBaer,
    AxiomsHVnRegular,
    Prop24,
    Theorem43,
}

impl SuiteId {
    pub const ALL: [SuiteId; 7] = [
        SuiteId::Example210,
        SuiteId::Theorem28,
        SuiteId::Theorem37,
        SuiteId::AxiomsHBaer,
        SuiteId::AxiomsHVnRegular,
        SuiteId::Prop24,
        SuiteId::Theorem43,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SuiteId::Example210 => "example210",
            SuiteId::Theorem28 => "thm28",
            SuiteId::Theorem37 => "thm37",
            SuiteId::AxiomsHBaer => "axioms-h-baer",
            SuiteId::AxiomsHVnRegular => "axioms-h-vnregular",
            SuiteId::Prop24 => "prop24",
            SuiteId::Theorem43 => "thm43",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxiomKind {
    HBaer,
    HVnRegular,
}

impl AxiomKind {
    fn suite(&self) -> SuiteId {
        match self {
            AxiomKind::HBaer => SuiteId::AxiomsHBaer,
            AxiomKind::HVnRegular => SuiteId::AxiomsHVnRegular,
        }
    }
}

impl FromStr for AxiomKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "h-baer" => Ok(AxiomKind::HBaer),
            "h-vnregular" => Ok(AxiomKind::HVnRegular),
            _ => Err(format!(
                "axiom suites exist for h-baer and h-vnregular, not `{s}`"
            )),
        }
    }
}

/// One evaluated claim.
struct Outcome {
    id: &'static str,
    statement: &'static str,
    result: Result<(), String>,
}

fn claim(
    id: &'static str,
    statement: &'static str,
    ok: bool,
    detail: impl FnOnce() -> String,
) -> Outcome {
    Outcome {
        id,
        statement,
        result: if ok { Ok(()) } else { Err(detail()) },
    }
}

/// Per-instance result: claims plus counters for the instance mix.
#[derive(Default)]
struct Checked {
    outcomes: Vec<Outcome>,
    stats: Vec<&'static str>,
}

fn jr(alg: &StructureAlgebra) -> Result<Subspace, HarnessError> {
    Ok(jacobson_radical(alg)?.space)
}

/// `r_j` of the non-unital ideal `i` of `alg`, through its unitization.
fn nonunital_jacobson(alg: &StructureAlgebra, i: &Subspace) -> Result<Subspace, HarnessError> {
    let u = subalgebra_unitization(alg, i)?;
    let rad = jr(&u)?;
    let back: Vec<Vec<Scalar>> = rad
        .basis_vectors()
        .iter()
        .map(|v| {
            debug_assert!(v[0].is_zero());
            i.combine(&v[1..])
        })
        .collect();
    Ok(Subspace::span(alg.field(), alg.dim(), &back)?)
}

fn dims(s: &Subspace) -> String {
    format!("dim {}", s.dim())
}

fn run_suite(
    report: &mut SuiteReport,
    instances: Vec<Result<Instance, HarnessError>>,
    check: impl Fn(&Instance, u64) -> Result<Checked, HarnessError>,
) {
    let started = Instant::now();
    for (idx, inst) in instances.into_iter().enumerate() {
        report.instances += 1;
        let inst = match inst {
            Ok(i) => i,
            Err(e) => {
                report.record(
                    "evaluation",
                    "instance generated and every quantity computed",
                    idx,
                    Err(e.to_string()),
                    || None,
                );
                continue;
            }
        };
        let witness = || Some(InstanceWitness::of(&inst));
        match check(&inst, report.seed.wrapping_add(idx as u64)) {
            Ok(c) => {
                report.record(
                    "evaluation",
                    "instance generated and every quantity computed",
                    idx,
                    Ok(()),
                    || None,
                );
                for o in c.outcomes {
                    report.record(o.id, o.statement, idx, o.result, witness);
                }
                for s in c.stats {
                    report.count(s);
                }
            }
            Err(e) => report.record(
                "evaluation",
                "instance generated and every quantity computed",
                idx,
                Err(e.to_string()),
                witness,
            ),
        }
    }
    report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
}

/// Claim id with its outcome.
pub type ClaimOutcome = (String, Result<(), String>);

/// Re-runs one suite's per-instance checks on a single instance, e.g. a
/// witness reloaded from a report. Returns `(claim, outcome)` pairs.
pub fn check_instance(
    suite: SuiteId,
    inst: &Instance,
    seed: u64,
) -> Result<Vec<ClaimOutcome>, HarnessError> {
    let c = match suite {
        SuiteId::Example210 => check_example_2_10(&inst.action)?,
        SuiteId::Theorem28 => check_theorem_2_8(inst)?,
        SuiteId::Theorem37 => check_theorem_3_7(inst)?,
        SuiteId::AxiomsHBaer => check_axioms(AxiomKind::HBaer, inst, seed)?,
        SuiteId::AxiomsHVnRegular => check_axioms(AxiomKind::HVnRegular, inst, seed)?,
        SuiteId::Prop24 => check_prop_2_4(inst)?,
        SuiteId::Theorem43 => check_theorem_4_3(inst)?,
    };
    Ok(c.outcomes
        .into_iter()
        .map(|o| (o.id.to_string(), o.result))
        .collect())
}

fn example_action(p: u64) -> Result<Action, HarnessError> {
    let k = FieldSpec::prime(p)?;
    let r = Arc::new(truncated_polynomial(k, p as usize));
    let mut image = k.zeros(p as usize);
    image[0] = k.one();
    if p > 1 {
        image[1] = k.one();
    }
    Ok(derivation_action(r, &image)?)
}

/// `R = 𝔽_p[x]/(x^p)` with `d·x = x + 1`, `A = R # u(kd)` and `A # H*`.
pub fn suite_example_2_10(p: u64) -> Result<SuiteReport, HarnessError> {
    if p != 2 && p != 3 {
        return Err(HarnessError::Precondition(format!(
            "the example is run for p ∈ {{2, 3}}, not {p}"
        )));
    }
    let mut report = SuiteReport::new(SuiteId::Example210.as_str(), 0);
    report.param("p", p);
    let inst = Instance {
        spec: Some(InstanceSpec {
            recipe: AlgebraRecipe::TruncatedPolynomial { m: p as usize },
            field: format!("F{p}"),
            action: ActionRecipe::Derivation {
                image: Some((0..p as i64).map(|k| i64::from(k < 2)).collect()),
            },
            seed: 0,
            basis_change: false,
        }),
        action: example_action(p)?,
        grading: None,
    };
    run_suite(&mut report, vec![Ok(inst)], |i, _| {
        check_example_2_10(&i.action)
    });
    Ok(report)
}

fn check_example_2_10(action: &Action) -> Result<Checked, HarnessError> {
    let r = action.target();
    let p = r.field().characteristic() as usize;
    let ds = double_smash(action)?;
    let a = ds.inner.algebra();
    let outer = ds.outer.algebra();
    let mut out = Checked::default();
    let (dr, dh, da, dd) = (r.dim(), action.hopf().dim(), a.dim(), outer.dim());
    out.outcomes.push(claim(
        "dimensions",
        "dim R, dim H, dim A, dim A#H* are p, p, p², p³",
        (dr, dh, da, dd) == (p, p, p * p, p * p * p),
        || format!("found {dr}/{dh}/{da}/{dd}"),
    ));
    let rb_r = jr(r)?;
    out.outcomes.push(claim(
        "r_b(R) != 0",
        "r_b(R) ≠ 0",
        !rb_r.is_zero(),
        || "r_b(R) = 0".into(),
    ));
    let x = Subspace::span(r.field(), dr, &[r.field().unit_vector(dr, 1)])?;
    let x_ideal = crate::algebra::ideal_generated(r, &x.basis_vectors());
    out.outcomes.push(claim(
        "r_j(R) = (x)",
        "sanity: r_j(R) = (x), of dimension p − 1",
        rb_r == x_ideal && rb_r.dim() == p - 1,
        || dims(&rb_r),
    ));
    let rbh = action.colon_ideal(&rb_r)?.into_space();
    out.outcomes.push(claim(
        "r_bH(R) = 0",
        "r_bH(R) = (r_b(R) : H) = 0",
        rbh.is_zero(),
        || dims(&rbh),
    ));

    let dual = &ds.dual_action;
    let rad_outer = jr(outer)?;
    let hb = ds.outer.extend_ideal(&h_baer(dual)?.space);
    let hj = ds.outer.extend_ideal(&h_jacobson(dual)?.space);
    let jh = ds.outer.extend_ideal(&jh_radical(dual)?.space);
    out.outcomes.push(claim(
        "claim (1)",
        "r_b(A#H*) ≠ r_{H*b}(A)#H*",
        rad_outer != hb,
        || format!("both have {}", dims(&hb)),
    ));
    out.outcomes.push(claim(
        "claim (2)",
        "r_j(A#H*) ≠ r_{H*j}(A)#H*",
        rad_outer != hj,
        || format!("both have {}", dims(&hj)),
    ));
    out.outcomes.push(claim(
        "claim (3)",
        "r_j(A#H*) ⊄ r_{jH*}(A)#H*",
        !rad_outer.is_subspace_of(&jh),
        || format!("r_j(A#H*) has {} inside {}", dims(&rad_outer), dims(&jh)),
    ));
    Ok(out)
}

fn check_char(g: &GroupTable, field: FieldSpec) -> Result<(), HarnessError> {
    let c = field.characteristic();
    if c != 0 && (g.order() as u64).is_multiple_of(c) {
        return Err(HarnessError::Precondition(format!(
            "|G| = {} is not invertible in {field}",
            g.order()
        )));
    }
    Ok(())
}

fn named_group(g: &GroupTable) -> Result<(), HarnessError> {
    match GroupTable::by_name(&g.name) {
        Ok(h) if h == *g => Ok(()),
        _ => Err(HarnessError::Recipe(format!(
            "generators need a catalog group (Z1..Z12, S3), got `{}`",
            g.name
        ))),
    }
}

/// Recipes of dimension at most `max_dim` that the generators understand.
fn recipe_pool(group: &str, max_dim: usize) -> Vec<AlgebraRecipe> {
    use AlgebraRecipe::*;
    let t = |m| TruncatedPolynomial { m };
    let pool = vec![
        t(1),
        t(2),
        t(3),
        MatrixAlgebra { n: 2 },
        Triangular { n: 2 },
        Triangular { n: 3 },
        GroupAlgebra {
            group: group.into(),
        },
        GroupAlgebra { group: "Z2".into() },
        DirectSum {
            parts: vec![t(2), t(1)],
        },
        DirectSum {
            parts: vec![t(1), t(1)],
        },
        DirectSum {
            parts: vec![t(2), t(2)],
        },
        DirectSum {
            parts: vec![t(1), t(1), t(1)],
        },
        DirectSum {
            parts: vec![t(2), t(2), t(2)],
        },
        DirectSum {
            parts: vec![MatrixAlgebra { n: 2 }, t(1)],
        },
        DirectSum {
            parts: vec![Triangular { n: 2 }, t(2)],
        },
        TrivialExtension {
            base: Box::new(t(1)),
        },
        TrivialExtension {
            base: Box::new(t(2)),
        },
        TrivialExtension {
            base: Box::new(DirectSum {
                parts: vec![t(1), t(1)],
            }),
        },
    ];
    pool.into_iter().filter(|r| r.dim() <= max_dim).collect()
}

/// `r_j(R) = r_Hj(R) = r_jH(R)` and `r_j(R#H) = r_Hj(R)#H` for `H = kG` and
/// `H = (kG)*` with `|G|` invertible.
pub fn suite_theorem_2_8(
    g: &GroupTable,
    field: FieldSpec,
    count: usize,
    seed: u64,
) -> Result<SuiteReport, HarnessError> {
    check_char(g, field)?;
    named_group(g)?;
    let mut report = SuiteReport::new(SuiteId::Theorem28.as_str(), seed);
    report.param("group", &g.name);
    report.param("field", field);
    report.param("count", count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = recipe_pool(&g.name, 6);
    let mut specs = Vec::with_capacity(2 * count);
    for i in 0..2 * count {
        let recipe = pool.choose(&mut rng).expect("nonempty pool").clone();
        let action = match i % 4 {
            0 | 2 => ActionRecipe::GroupAutomorphism {
                group: g.name.clone(),
            },
            1 => ActionRecipe::GroupGrading {
                group: g.name.clone(),
            },
            _ => {
                if rng.gen_bool(0.5) {
                    ActionRecipe::Inner {
                        group: g.name.clone(),
                    }
                } else {
                    ActionRecipe::GroupGrading {
                        group: g.name.clone(),
                    }
                }
            }
        };
        specs.push(InstanceSpec {
            recipe,
            field: field.to_string(),
            action,
            seed: rng.gen(),
            basis_change: rng.gen_bool(0.5),
        });
    }
    // exactly `count` instances per Hopf algebra
    let (mut dual, mut group): (Vec<_>, Vec<_>) = specs
        .into_iter()
        .partition(|s| matches!(s.action, ActionRecipe::GroupGrading { .. }));
    while dual.len() < count {
        let mut s = group.pop().expect("2·count specs");
        s.action = ActionRecipe::GroupGrading {
            group: g.name.clone(),
        };
        dual.push(s);
    }
    while group.len() < count {
        let mut s = dual.pop().expect("2·count specs");
        s.action = ActionRecipe::GroupAutomorphism {
            group: g.name.clone(),
        };
        group.push(s);
    }
    let instances = group.iter().chain(&dual).map(generate_instance).collect();
    run_suite(&mut report, instances, |i, _| check_theorem_2_8(i));
    Ok(report)
}

fn check_theorem_2_8(inst: &Instance) -> Result<Checked, HarnessError> {
    let a = &inst.action;
    let r = a.target();
    let rj = jr(r)?;
    let hj = h_jacobson(a)?.space;
    let jh = jh_radical(a)?.space;
    let cp = smash_product(a)?;
    let rjs = jr(cp.algebra())?;
    let ext = cp.extend_ideal(&hj);
    let mut out = Checked::default();
    out.stats.push(if inst.grading.is_some() {
        "H = (kG)*"
    } else {
        "H = kG"
    });
    if rj.is_zero() {
        out.stats.push("semisimple R");
    }
    out.outcomes.push(claim(
        "thm2.8(1)",
        "r_j(R) = r_Hj(R) = r_jH(R)",
        rj == hj && hj == jh,
        || format!("r_j {}, r_Hj {}, r_jH {}", dims(&rj), dims(&hj), dims(&jh)),
    ));
    out.outcomes.push(claim(
        "thm2.8(2)",
        "r_j(R#H) = r_Hj(R)#H",
        rjs == ext,
        || format!("r_j(R#H) {}, r_Hj(R)#H {}", dims(&rjs), dims(&ext)),
    ));
    Ok(out)
}

fn graded_configs() -> Vec<(AlgebraRecipe, &'static str, &'static str)> {
    use AlgebraRecipe::*;
    let t = |m| TruncatedPolynomial { m };
    vec![
        (MatrixAlgebra { n: 2 }, "F2", "Z2"),
        (t(2), "F2", "Z2"),
        (
            DirectSum {
                parts: vec![t(1), t(1)],
            },
            "F3",
            "Z2",
        ),
        (Triangular { n: 2 }, "F3", "Z2"),
        (GroupAlgebra { group: "Z2".into() }, "F2", "Z2"),
        (MatrixAlgebra { n: 2 }, "F3", "Z3"),
        (t(3), "F2", "Z3"),
        (GroupAlgebra { group: "Z3".into() }, "F3", "Z3"),
        (
            TrivialExtension {
                base: Box::new(t(1)),
            },
            "F3",
            "Z2",
        ),
        (
            DirectSum {
                parts: vec![t(2), t(1)],
            },
            "F2",
            "Z3",
        ),
        (GroupAlgebra { group: "Z2".into() }, "F3", "Z2"),
        (
            DirectSum {
                parts: vec![Triangular { n: 2 }, t(1)],
            },
            "F2",
            "Z2",
        ),
        (t(4), "F3", "Z2"),
        (
            DirectSum {
                parts: vec![t(1), t(1), t(1)],
            },
            "F2",
            "Z3",
        ),
        (
            TrivialExtension {
                base: Box::new(DirectSum {
                    parts: vec![t(1), t(1)],
                }),
            },
            "F2",
            "Z2",
        ),
        (GroupAlgebra { group: "Z3".into() }, "F2", "Z3"),
    ]
}

/// Gr-regularity against H-regularity under `(kG)*`, on graded instances of
/// dimension at most 4 over `𝔽_2` and `𝔽_3`.
pub fn suite_theorem_3_7(count: usize, seed: u64) -> Result<SuiteReport, HarnessError> {
    let mut report = SuiteReport::new(SuiteId::Theorem37.as_str(), seed);
    report.param("count", count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let configs = graded_configs();
    let instances = (0..count)
        .map(|i| {
            let (recipe, field, group) = configs[i % configs.len()].clone();
            generate_instance(&InstanceSpec {
                recipe,
                field: field.into(),
                action: ActionRecipe::GroupGrading {
                    group: group.into(),
                },
                seed: rng.gen(),
                basis_change: true,
            })
        })
        .collect();
    run_suite(&mut report, instances, |i, _| check_theorem_3_7(i));
    Ok(report)
}

fn check_theorem_3_7(inst: &Instance) -> Result<Checked, HarnessError> {
    let (g, deg) = inst
        .grading
        .as_ref()
        .ok_or_else(|| HarnessError::Recipe("the instance carries no grading".into()))?;
    let opts = SearchOptions::default();
    let gr = gr_regular(&inst.action.target_arc(), deg, g, &opts)?;
    let h = h_regular_ideal(&inst.action, &inst.algebra().whole(), &opts)?;
    let mut out = Checked::default();
    out.stats.push(if gr.regular {
        "Gr-regular"
    } else {
        "not Gr-regular"
    });
    out.outcomes.push(claim(
        "thm3.7",
        "R is Gr-regular iff R is H-regular",
        gr.regular == h.regular,
        || format!("Gr-regular {}, H-regular {}", gr.regular, h.regular),
    ));
    out.outcomes.push(claim(
        "exhaustive",
        "both verdicts come from exhaustive enumeration",
        gr.exhaustive && h.exhaustive,
        || "a verdict rests on sampling".into(),
    ));
    Ok(out)
}

fn axiom_specs(kind: AxiomKind, count: usize, rng: &mut ChaCha8Rng) -> Vec<InstanceSpec> {
    use AlgebraRecipe::*;
    let t = |m| TruncatedPolynomial { m };
    let mut out = Vec::with_capacity(count);
    if kind == AxiomKind::HBaer && count > 0 {
        out.push(InstanceSpec {
            recipe: t(2),
            field: "F2".into(),
            action: ActionRecipe::Derivation {
                image: Some(vec![1, 1]),
            },
            seed: 0,
            basis_change: false,
        });
    }
    let recipes = [
        t(1),
        t(2),
        t(3),
        MatrixAlgebra { n: 2 },
        Triangular { n: 2 },
        GroupAlgebra { group: "Z2".into() },
        GroupAlgebra { group: "Z3".into() },
        DirectSum {
            parts: vec![t(1), t(1)],
        },
        DirectSum {
            parts: vec![t(2), t(1)],
        },
        DirectSum {
            parts: vec![t(2), t(2)],
        },
        DirectSum {
            parts: vec![Triangular { n: 2 }, t(1)],
        },
        TrivialExtension {
            base: Box::new(t(1)),
        },
        TrivialExtension {
            base: Box::new(DirectSum {
                parts: vec![t(1), t(1)],
            }),
        },
    ];
    while out.len() < count {
        let field = if rng.gen_bool(0.5) { "F2" } else { "F3" };
        let recipe = recipes.choose(rng).expect("nonempty").clone();
        let group = if rng.gen_bool(0.5) { "Z2" } else { "Z3" };
        let action = match rng.gen_range(0..5) {
            0 => ActionRecipe::Trivial,
            1 => ActionRecipe::GroupAutomorphism {
                group: group.into(),
            },
            2 => ActionRecipe::Inner {
                group: group.into(),
            },
            3 => ActionRecipe::GroupGrading {
                group: group.into(),
            },
            _ => {
                let p = if field == "F2" { 2 } else { 3 };
                out.push(InstanceSpec {
                    recipe: t(p),
                    field: field.into(),
                    action: ActionRecipe::Derivation { image: None },
                    seed: rng.gen(),
                    basis_change: rng.gen_bool(0.5),
                });
                continue;
            }
        };
        out.push(InstanceSpec {
            recipe,
            field: field.into(),
            action,
            seed: rng.gen(),
            basis_change: rng.gen_bool(0.5),
        });
    }
    out
}

/// Radical-property checks for `r_Hb` or `r_Hn` on small finite-field instances.
pub fn suite_axioms(kind: AxiomKind, count: usize, seed: u64) -> Result<SuiteReport, HarnessError> {
    let mut report = SuiteReport::new(kind.suite().as_str(), seed);
    report.param("count", count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances = axiom_specs(kind, count, &mut rng)
        .iter()
        .map(generate_instance)
        .collect();
    run_suite(&mut report, instances, |i, s| check_axioms(kind, i, s));
    Ok(report)
}

/// A random proper H-ideal generated by one or two random elements.
fn random_h_ideal(action: &Action, rng: &mut ChaCha8Rng) -> Option<Subspace> {
    let r = action.target();
    for _ in 0..8 {
        let gens: Vec<Vec<Scalar>> = (0..rng.gen_range(1..=2))
            .map(|_| random_vector(r.field(), r.dim(), rng))
            .collect();
        let j = action.h_ideal_generated(&gens);
        if !j.is_full() {
            return Some(j);
        }
    }
    None
}

const SAMPLED_IDEALS: usize = 3;

fn check_axioms(kind: AxiomKind, inst: &Instance, seed: u64) -> Result<Checked, HarnessError> {
    let a = &inst.action;
    let r = a.target();
    let cap = DEFAULT_CAP;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Checked::default();
    if a.hopf().dim() == 1 {
        out.stats.push("trivial Hopf algebra");
    }
    match kind {
        AxiomKind::HVnRegular => {
            let rad = h_vn_radical(a, cap)?.space;
            let (qa, _) = a.quotient_action(&rad)?;
            let again = h_vn_radical(&qa, cap)?.space;
            out.outcomes.push(claim(
                "R3",
                "r_Hn(R / r_Hn(R)) = 0",
                again.is_zero(),
                || format!("quotient radical has {}", dims(&again)),
            ));
            let rn = vn_regular_radical(r, cap)?.space;
            let rnh = a.colon_ideal(&rn)?.into_space();
            out.outcomes.push(claim(
                "r_nH in r_Hn",
                "r_nH(R) = (r_n(R) : H) ⊆ r_Hn(R)",
                rnh.is_subspace_of(&rad),
                || format!("r_nH {} versus r_Hn {}", dims(&rnh), dims(&rad)),
            ));
            for _ in 0..SAMPLED_IDEALS {
                let Some(j) = random_h_ideal(a, &mut rng) else {
                    continue;
                };
                let inner = h_vn_radical_within(a, &j, true, cap)?;
                let meet = j.intersect(&rad)?;
                out.outcomes.push(claim(
                    "hereditary",
                    "r_Hn(I) = I ∩ r_Hn(R) for sampled H-ideals I",
                    inner == meet,
                    || format!("r_Hn(I) {}, I ∩ r_Hn(R) {}", dims(&inner), dims(&meet)),
                ));
                if inner == j {
                    out.stats.push("sampled r_Hn-radical H-ideal");
                    out.outcomes.push(claim(
                        "R2",
                        "sampled r_Hn-radical H-ideals lie in r_Hn(R)",
                        j.is_subspace_of(&rad),
                        || format!("an r_Hn-radical H-ideal of {} escapes", dims(&j)),
                    ));
                }
                let (qa, q) = a.quotient_action(&j)?;
                let image = q.image(&rad);
                let image_rad = h_vn_radical_within(&qa, &image, true, cap)?;
                out.outcomes.push(claim(
                    "R1",
                    "the image of r_Hn(R) in R/I is r_Hn-radical",
                    image_rad == image,
                    || format!("image {}, its r_Hn {}", dims(&image), dims(&image_rad)),
                ));
            }
        }
        AxiomKind::HBaer => {
            let rad = h_baer(a)?.space;
            let (qa, q) = a.quotient_action(&rad)?;
            let again = h_baer(&qa)?.space;
            out.outcomes.push(claim(
                "R3",
                "r_Hb(R / r_Hb(R)) = 0",
                again.is_zero(),
                || format!("quotient radical has {}", dims(&again)),
            ));
            match q.algebra().whole().elements(cap) {
                Some(all) => {
                    let bad = all.into_iter().find(|x| {
                        !x.iter().all(Scalar::is_zero)
                            && is_nilpotent(
                                q.algebra(),
                                &qa.h_ideal_generated(std::slice::from_ref(x)),
                            )
                            .0
                    });
                    out.outcomes.push(claim(
                        "H-semiprime",
                        "R / r_Hb(R) has no nonzero nilpotent H-ideal (exhaustive)",
                        bad.is_none(),
                        || "a nonzero element generates a nilpotent H-ideal".into(),
                    ));
                }
                None => out.stats.push("quotient too large to enumerate"),
            }
            let depth = r.dim() + 2;
            let vanish = rad.basis_vectors().iter().enumerate().all(|(i, b)| {
                let w = hm_sequence_probe(a, b, depth, 8, seed.wrapping_add(i as u64));
                w.verify(a) && !w.survived()
            });
            out.outcomes.push(claim(
                "H-m-nilpotent",
                "every probed H-m-sequence from a radical basis element reaches 0",
                vanish,
                || "a probed sequence survived".into(),
            ));
            for _ in 0..SAMPLED_IDEALS {
                let Some(j) = random_h_ideal(a, &mut rng) else {
                    continue;
                };
                if is_nilpotent(r, &j).0 {
                    out.stats.push("sampled nilpotent H-ideal");
                    out.outcomes.push(claim(
                        "R2",
                        "sampled nilpotent H-ideals lie in r_Hb(R)",
                        j.is_subspace_of(&rad),
                        || format!("a nilpotent H-ideal of {} escapes", dims(&j)),
                    ));
                }
                let (qa, q) = a.quotient_action(&j)?;
                let image = q.image(&rad);
                let qrad = h_baer(&qa)?.space;
                out.outcomes.push(claim(
                    "R1",
                    "the image of r_Hb(R) in R/I is a nilpotent H-ideal inside r_Hb(R/I)",
                    is_nilpotent(q.algebra(), &image).0
                        && qa.is_h_stable(&image)
                        && image.is_subspace_of(&qrad),
                    || format!("image {}, r_Hb(R/I) {}", dims(&image), dims(&qrad)),
                ));
            }
        }
    }
    Ok(out)
}

/// `Φ(r_j(R)) = r_j((R#H)#H*)` and `r_jH(R)#H = r̄_{H*}(R#H)`.
pub fn suite_prop_2_4(count: usize, seed: u64) -> Result<SuiteReport, HarnessError> {
    let mut report = SuiteReport::new(SuiteId::Prop24.as_str(), seed);
    report.param("count", count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances: Vec<Result<Instance, HarnessError>> = Vec::with_capacity(count);
    if count > 0 {
        instances.push(example_action(2).map(|action| Instance {
            spec: None,
            action,
            grading: None,
        }));
    }
    if count > 1 {
        instances.push(twisted_instance());
    }
    let recipes = recipe_pool("Z2", 3);
    while instances.len() < count {
        let field = if rng.gen_bool(0.5) { "F2" } else { "F3" };
        let group = if rng.gen_bool(0.6) { "Z2" } else { "Z3" };
        let recipe = recipes.choose(&mut rng).expect("nonempty").clone();
        let action = match rng.gen_range(0..4) {
            0 => ActionRecipe::Trivial,
            1 => ActionRecipe::GroupAutomorphism {
                group: group.into(),
            },
            2 => ActionRecipe::GroupGrading {
                group: group.into(),
            },
            _ => ActionRecipe::Inner {
                group: group.into(),
            },
        };
        instances.push(generate_instance(&InstanceSpec {
            recipe,
            field: field.into(),
            action,
            seed: rng.gen(),
            basis_change: rng.gen_bool(0.5),
        }));
    }
    run_suite(&mut report, instances, |i, _| check_prop_2_4(i));
    Ok(report)
}

/// `kZ_2` acting trivially on `𝔽_3[x]/(x²)`, twisted by `σ(g, g) = −1`.
fn twisted_instance() -> Result<Instance, HarnessError> {
    let k = FieldSpec::prime(3)?;
    let z2 = GroupTable::cyclic(2);
    let h = Arc::new(group_algebra(&z2, k)?);
    let r = Arc::new(truncated_polynomial(k, 2));
    let mut sigma = Cocycle::trivial(&h, &r).sigma().clone();
    sigma.set(0, 3, -k.one());
    let c = Cocycle::new(&h, &r, sigma)?;
    let act = vec![Matrix::identity(k, 2), Matrix::identity(k, 2)];
    let action = Action::new(h, r, act, ActionMode::Twisted, Some(c))?;
    Ok(Instance {
        spec: None,
        action,
        grading: None,
    })
}

fn check_prop_2_4(inst: &Instance) -> Result<Checked, HarnessError> {
    let a = &inst.action;
    let r = a.target();
    let ds = double_smash(a)?;
    let mut out = Checked::default();
    if a.is_twisted() {
        out.stats.push("twisted");
    }
    let rj = jr(r)?;
    let phi = ds.compute_phi(&rj)?;
    let rj_outer = jr(ds.outer.algebra())?;
    out.outcomes.push(claim(
        "lemma2.2",
        "Φ(r_j(R)) = r_j((R#H)#H*)",
        phi == rj_outer,
        || format!("Φ(r_j(R)) {}, r_j(R') {}", dims(&phi), dims(&rj_outer)),
    ));
    let rjh = jh_radical(a)?.space;
    let lhs = ds.inner.extend_ideal(&rjh);
    let rhs = bar_radical(&ds.dual_action, None)?.space;
    out.outcomes.push(claim(
        "prop2.4(1)",
        "r_jH(R)#H = r̄_{H*}(R#H)",
        lhs == rhs,
        || format!("r_jH(R)#H {}, r̄_H*(R#H) {}", dims(&lhs), dims(&rhs)),
    ));
    Ok(out)
}

/// Both sides of the biconditionals in the characterisation of
/// `r_j(R#H) = r_Hj(R)#H`, evaluated independently.
pub fn suite_theorem_4_3(count: usize, seed: u64) -> Result<SuiteReport, HarnessError> {
    let mut report = SuiteReport::new(SuiteId::Theorem43.as_str(), seed);
    report.param("count", count);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut instances: Vec<Result<Instance, HarnessError>> = Vec::with_capacity(count);
    if count > 0 {
        instances.push(example_action(2).map(|action| Instance {
            spec: None,
            action,
            grading: None,
        }));
    }
    let recipes = recipe_pool("Z2", 4);
    while instances.len() < count {
        let field = ["F2", "F3", "Q"][rng.gen_range(0..3)];
        let group = ["Z2", "Z3"][rng.gen_range(0..2)];
        let recipe = recipes.choose(&mut rng).expect("nonempty").clone();
        let action = match rng.gen_range(0..5) {
            0 => ActionRecipe::Trivial,
            1 | 4 => ActionRecipe::GroupAutomorphism {
                group: group.into(),
            },
            2 => ActionRecipe::GroupGrading {
                group: group.into(),
            },
            _ => ActionRecipe::Inner {
                group: group.into(),
            },
        };
        instances.push(generate_instance(&InstanceSpec {
            recipe,
            field: field.into(),
            action,
            seed: rng.gen(),
            basis_change: rng.gen_bool(0.5),
        }));
    }
    run_suite(&mut report, instances, |i, _| check_theorem_4_3(i));
    Ok(report)
}

fn check_theorem_4_3(inst: &Instance) -> Result<Checked, HarnessError> {
    let a = &inst.action;
    let cp = smash_product(a)?;
    let big = cp.algebra();
    let rj_big = jr(big)?;
    let hj = h_jacobson(a)?.space;
    let hj_ext = cp.extend_ideal(&hj);
    let rj_of_ext = nonunital_jacobson(big, &hj_ext)?;
    let meet = cp.intersect_with_base(&rj_big)?;
    let rj_of_meet_ext = nonunital_jacobson(big, &cp.extend_ideal(&meet))?;
    let jh = jh_radical(a)?.space;
    let rj_of_jh_ext = nonunital_jacobson(big, &cp.extend_ideal(&jh))?;

    let statement = rj_big == hj_ext;
    let via_hj = rj_of_ext == rj_big;
    let via_meet = rj_of_meet_ext == rj_big;
    let via_jh = rj_of_jh_ext == rj_big;
    let mut out = Checked::default();
    out.stats.push(if statement {
        "r_j(R#H) = r_Hj(R)#H"
    } else {
        "r_j(R#H) ≠ r_Hj(R)#H"
    });
    let tf = |b: bool| if b { "holds" } else { "fails" };
    out.outcomes.push(claim(
        "thm4.3(1)",
        "r_j(r_Hj(R)#H) = r_Hj(R)#H",
        rj_of_ext == hj_ext,
        || format!("r_j(r_Hj#H) {}, r_Hj#H {}", dims(&rj_of_ext), dims(&hj_ext)),
    ));
    out.outcomes.push(claim(
        "thm4.3(2)",
        "r_j(R#H) = r_Hj(R)#H iff r_j(r_Hj(R)#H) = r_j(R#H) iff r_j((r_j(R#H) ∩ R)#H) = r_j(R#H)",
        statement == via_hj && via_hj == via_meet,
        || format!("{} / {} / {}", tf(statement), tf(via_hj), tf(via_meet)),
    ));
    out.outcomes.push(claim(
        "thm4.3(3)",
        "r_j(R#H) = r_Hj(R)#H iff r_j(r_jH(R)#H) = r_j(R#H)",
        statement == via_jh,
        || format!("{} / {}", tf(statement), tf(via_jh)),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexample_at_p2() {
        let r = suite_example_2_10(2).unwrap();
        assert!(r.all_pass(), "{}", r.to_text());
        assert!(suite_example_2_10(5).is_err());
    }

    #[test]
    fn group_suite_preconditions() {
        let z2 = GroupTable::cyclic(2);
        assert!(suite_theorem_2_8(&z2, FieldSpec::prime(2).unwrap(), 3, 0).is_err());
        let z1 = GroupTable::cyclic(1);
        let r = suite_theorem_2_8(&z1, FieldSpec::prime(2).unwrap(), 3, 0).unwrap();
        assert!(r.all_pass(), "{}", r.to_text());
    }

    #[test]
    fn small_runs_pass_and_repeat() {
        let z2 = GroupTable::cyclic(2);
        let a = suite_theorem_2_8(&z2, FieldSpec::prime(3).unwrap(), 4, 7).unwrap();
        assert!(a.all_pass(), "{}", a.to_text());
        let b = suite_theorem_2_8(&z2, FieldSpec::prime(3).unwrap(), 4, 7).unwrap();
        assert_eq!(a.canonical_json(), b.canonical_json());
        for r in [
            suite_theorem_3_7(6, 1).unwrap(),
            suite_axioms(AxiomKind::HBaer, 4, 1).unwrap(),
            suite_axioms(AxiomKind::HVnRegular, 4, 1).unwrap(),
            suite_prop_2_4(4, 1).unwrap(),
            suite_theorem_4_3(4, 1).unwrap(),
        ] {
            assert!(r.all_pass(), "{}", r.to_text());
        }
    }

    #[test]
    fn witnesses_reload() {
        let inst = twisted_instance().unwrap();
        let w = InstanceWitness::of(&inst);
        let back = w.load().unwrap();
        assert_eq!(back.action, inst.action);
        let outcomes = check_instance(SuiteId::Prop24, &back, 0).unwrap();
        assert!(outcomes.iter().all(|(_, r)| r.is_ok()));
    }
}
