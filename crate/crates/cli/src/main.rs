//! `hrl`: validate, construct, compute radicals and run verification suites.
//!
//! Exit status: 0 on success or when every suite claim holds, 1 when a suite
//! claim is violated, 2 on input errors (malformed JSON, failed validation,
//! unsupported sizes).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use hrl_core::action::{derivation_action, Action};
use hrl_core::algebra::catalog::{matrix_algebra, truncated_polynomial, upper_triangular};
use hrl_core::algebra::{
    jacobson_radical_with_cap, RadicalKind, RadicalReport, StructureAlgebra, DEFAULT_CAP,
};
use hrl_core::harness::{
    check_instance, generate_instance, suite_axioms, suite_example_2_10, suite_prop_2_4,
    suite_theorem_2_8, suite_theorem_3_7, suite_theorem_4_3, AxiomKind, InstanceSpec,
    InstanceWitness, SuiteId, SuiteReport,
};
use hrl_core::hopf::{dual_hopf, group_algebra, restricted_enveloping, trivial_hopf, GroupTable};
use hrl_core::io::{
    load_file, save_action, save_algebra, save_group, save_hopf, save_report, Loaded, WorkspaceFile,
};
use hrl_core::linalg::FieldSpec;
use hrl_core::products::{crossed_product, dual_action_on_smash};
use hrl_core::radicals::{
    bar_radical, gr_regular, h_baer, h_jacobson, h_vn_radical, jh_radical, vn_regular_radical,
    SearchOptions,
};

const RADICAL_HELP: &str = "\
Radical kinds and where they are defined:
  jacobson     Section 0: r_j, the Jacobson radical (largest nilpotent ideal)
  baer         Section 0: r_b, the Baer radical (equals r_j in finite dimension)
  vnregular    Section 0: r_n, von Neumann regular radical (Definition 3.4 with trivial H)
  h-jacobson   Relation (1) / Definition 2.1: r_Hj(R) = r_j(R # H) ∩ R
  jH           Definition 2.1: r_jH(R) = (r_j(R) : H)
  h-baer       Proposition 1.3: r_Hb(R) = W_H(R), the largest H-m-nilpotent H-ideal
  h-vnregular  Definition 3.4: r_Hn(R) = {a : the H-ideal (a) is H-regular}";

#[derive(Parser)]
#[command(
    name = "hrl",
    version,
    about = "Exact radicals of Hopf module algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest |k|^dim enumerated exhaustively.
    #[arg(long, global = true, env = "HRL_CAP", default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Load a workspace file and run its validators.
    Validate { path: PathBuf },
    /// Build a catalog object and write it as JSON.
    Construct(Construct),
    /// Compute a radical of an algebra or of an action's target algebra.
    #[command(after_help = RADICAL_HELP)]
    Radical {
        #[arg(value_enum)]
        kind: KindArg,
        /// Algebra file, or action file for the H-radicals.
        path: PathBuf,
    },
    /// Build R #_σ H from an action file (σ taken from the file, if any).
    Smash {
        path: PathBuf,
        /// Emit the H*-action on R # H instead of the algebra.
        #[arg(long)]
        dual_action: bool,
    },
    /// Run a verification suite.
    Verify(Verify),
    /// Decide Gr-regularity of a graded algebra.
    Grregular {
        path: PathBuf,
        /// Degrees of the basis elements as group element indices, e.g. 0,1,1,0.
        #[arg(long, value_delimiter = ',', required = true)]
        grading: Vec<usize>,
        /// Catalog group (Z1..Z12, S3) or a group file.
        #[arg(long)]
        group: String,
    },
    /// Re-run one suite's claims on a witness instance file.
    Check {
        #[arg(value_parser = parse_suite)]
        suite: SuiteId,
        path: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    /// r_j (Section 0).
    Jacobson,
    /// r_b (Section 0; equals r_j in finite dimension).
    Baer,
    /// r_n (Definition 3.4 with trivial H).
    Vnregular,
    /// r_Hj = r_j(R # H) ∩ R (Relation (1), Definition 2.1).
    HJacobson,
    /// r_jH = (r_j(R) : H) (Definition 2.1).
    #[value(name = "jH", alias = "jh")]
    JH,
    /// r_Hb = W_H(R) (Proposition 1.3).
    HBaer,
    /// r_Hn (Definition 3.4).
    HVnregular,
}

impl KindArg {
    fn kind(self) -> RadicalKind {
        match self {
            KindArg::Jacobson => RadicalKind::Jacobson,
            KindArg::Baer => RadicalKind::Baer,
            KindArg::Vnregular => RadicalKind::VnRegular,
            KindArg::HJacobson => RadicalKind::HJacobson,
            KindArg::JH => RadicalKind::JH,
            KindArg::HBaer => RadicalKind::HBaer,
            KindArg::HVnregular => RadicalKind::HVnRegular,
        }
    }
}

#[derive(Args)]
struct Construct {
    #[arg(value_enum)]
    what: ConstructKind,
    #[arg(long, default_value = "Q")]
    field: String,
    /// Size for matrix and triangular algebras.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Truncation degree for k[x]/(x^m).
    #[arg(long, default_value_t = 2)]
    m: usize,
    /// Catalog group name.
    #[arg(long, default_value = "Z2")]
    group: String,
    /// Restriction constant λ of u(kd).
    #[arg(long, default_value = "0")]
    lambda: String,
    /// Prime for the counterexample instance.
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Instance specification as JSON (for `instance`).
    #[arg(long)]
    spec: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    MatrixAlgebra,
    TruncatedPolynomial,
    Triangular,
    Group,
    GroupAlgebra,
    DualGroupAlgebra,
    RestrictedEnveloping,
    TrivialHopf,
    /// u(kd) acting on 𝔽_p[x]/(x^p) by d·x = x + 1.
    Example210,
    /// A generated instance (action file) from `--spec`.
    Instance,
}

#[derive(Args)]
struct Verify {
    #[arg(value_parser = parse_suite)]
    suite: SuiteId,
    /// Prime for example210.
    #[arg(long, default_value_t = 2)]
    p: u64,
    /// Group for thm28.
    #[arg(long, default_value = "Z2")]
    group: String,
    /// Field for thm28.
    #[arg(long, default_value = "F3")]
    field: String,
    /// Number of instances (per Hopf algebra for thm28).
    #[arg(long)]
    count: Option<usize>,
}

fn parse_suite(s: &str) -> Result<SuiteId, String> {
    s.parse()
}

/// Errors carrying this marker exit with status 1 instead of 2.
#[derive(Debug)]
struct ClaimViolated;

impl std::fmt::Display for ClaimViolated {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("a suite claim was violated")
    }
}

impl std::error::Error for ClaimViolated {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<ClaimViolated>() => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path) -> Result<Loaded> {
    load_file(path).with_context(|| format!("loading {}", path.display()))
}

fn run(cli: &Cli) -> Result<()> {
    let common = &cli.common;
    match &cli.command {
        Command::Validate { path } => {
            let loaded = load(path)?;
            let summary = match &loaded {
                Loaded::Algebra(a) => {
                    format!("algebra of dimension {} over {}", a.dim(), a.field())
                }
                Loaded::Hopf(h) => {
                    format!("Hopf algebra of dimension {} over {}", h.dim(), h.field())
                }
                Loaded::Action(a) => format!(
                    "{} action of a {}-dimensional Hopf algebra on a {}-dimensional algebra",
                    a.mode(),
                    a.hopf().dim(),
                    a.target().dim()
                ),
                Loaded::Group(g) => format!("group {} of order {}", g.name, g.order()),
                Loaded::Report(r) => format!("{} radical of dimension {}", r.kind, r.dim()),
                Loaded::Suite(s) => {
                    format!("suite report {} over {} instances", s.suite, s.instances)
                }
                Loaded::Instance(i) => {
                    format!("instance with a {}-dimensional algebra", i.algebra().dim())
                }
            };
            emit(common, &format!("valid {}: {summary}\n", loaded.kind()))
        }
        Command::Construct(c) => construct(common, c),
        Command::Radical { kind, path } => {
            let report = radical(common, kind.kind(), path)?;
            let text = match common.format {
                Format::Json => save_report(&report),
                Format::Text => report_text(&report),
            };
            emit(common, &text)
        }
        Command::Smash { path, dual_action } => {
            let action = expect_action(load(path)?)?;
            let cp = crossed_product(&action, None)?;
            if *dual_action {
                emit(common, &save_action(&dual_action_on_smash(&cp)?))
            } else {
                emit(common, &save_algebra(cp.algebra()))
            }
        }
        Command::Verify(v) => {
            let report = verify(common, v)?;
            finish_suite(common, &report)
        }
        Command::Grregular {
            path,
            grading,
            group,
        } => {
            let alg = match load(path)? {
                Loaded::Algebra(a) => a,
                Loaded::Action(a) => a.target().clone(),
                other => bail!("expected an algebra file, found {}", other.kind()),
            };
            let g = group_arg(group)?;
            let opts = SearchOptions {
                cap: common.cap,
                trials: 64,
                seed: common.seed,
            };
            let verdict = gr_regular(&Arc::new(alg), grading, &g, &opts)?;
            let text = match common.format {
                Format::Json => {
                    let mut v = serde_json::json!({
                        "gr_regular": verdict.regular,
                        "exhaustive": verdict.exhaustive,
                        "method": verdict.method,
                    });
                    if let Some(w) = &verdict.witness {
                        v["witness"] = w
                            .iter()
                            .map(hrl_core::io::scalar_to_string)
                            .collect::<Vec<_>>()
                            .into();
                    }
                    format!("{}\n", serde_json::to_string_pretty(&v)?)
                }
                Format::Text => format!(
                    "{} ({})\n",
                    if verdict.regular {
                        "Gr-regular"
                    } else {
                        "not Gr-regular"
                    },
                    verdict.method
                ),
            };
            emit(common, &text)
        }
        Command::Check { suite, path } => {
            let inst = match load(path)? {
                Loaded::Instance(i) => i,
                Loaded::Action(a) => hrl_core::harness::Instance {
                    spec: None,
                    action: a,
                    grading: None,
                },
                other => bail!(
                    "expected an instance or action file, found {}",
                    other.kind()
                ),
            };
            let outcomes = check_instance(*suite, &inst, common.seed)?;
            let mut text = String::new();
            let mut ok = true;
            for (id, r) in &outcomes {
                match r {
                    Ok(()) => text.push_str(&format!("pass  {id}\n")),
                    Err(d) => {
                        ok = false;
                        text.push_str(&format!("FAIL  {id}: {d}\n"));
                    }
                }
            }
            emit(common, &text)?;
            if ok {
                Ok(())
            } else {
                Err(ClaimViolated.into())
            }
        }
    }
}

fn group_arg(name: &str) -> Result<GroupTable> {
    if let Ok(g) = GroupTable::by_name(name) {
        return Ok(g);
    }
    match load(Path::new(name))? {
        Loaded::Group(g) => Ok(g),
        other => bail!("expected a group file, found {}", other.kind()),
    }
}

fn expect_action(loaded: Loaded) -> Result<Action> {
    match loaded {
        Loaded::Action(a) => Ok(a),
        Loaded::Instance(i) => Ok(i.action),
        other => bail!("expected an action file, found {}", other.kind()),
    }
}

fn construct(common: &Common, c: &Construct) -> Result<()> {
    let field: FieldSpec = c.field.parse()?;
    let text = match c.what {
        ConstructKind::MatrixAlgebra => save_algebra(&matrix_algebra(field, c.n)),
        ConstructKind::TruncatedPolynomial => save_algebra(&truncated_polynomial(field, c.m)),
        ConstructKind::Triangular => save_algebra(&upper_triangular(field, c.n)),
        ConstructKind::Group => save_group(&GroupTable::by_name(&c.group)?),
        ConstructKind::GroupAlgebra => {
            save_hopf(&group_algebra(&GroupTable::by_name(&c.group)?, field)?)
        }
        ConstructKind::DualGroupAlgebra => save_hopf(&dual_hopf(&group_algebra(
            &GroupTable::by_name(&c.group)?,
            field,
        )?)?),
        ConstructKind::RestrictedEnveloping => save_hopf(&restricted_enveloping(
            field,
            &field.parse_scalar(&c.lambda)?,
        )?),
        ConstructKind::TrivialHopf => save_hopf(&trivial_hopf(field)),
        ConstructKind::Example210 => {
            let k = FieldSpec::prime(c.p)?;
            let p = c.p as usize;
            let mut image = k.zeros(p);
            image[0] = k.one();
            if p > 1 {
                image[1] = k.one();
            }
            save_action(&derivation_action(
                Arc::new(truncated_polynomial(k, p)),
                &image,
            )?)
        }
        ConstructKind::Instance => {
            let spec: InstanceSpec = serde_json::from_str(
                c.spec
                    .as_deref()
                    .ok_or_else(|| anyhow!("`construct instance` needs --spec"))?,
            )
            .context("parsing --spec")?;
            let inst = generate_instance(&spec)?;
            WorkspaceFile::Instance(InstanceWitness::of(&inst)).to_json()
        }
    };
    emit(common, &text)
}

fn target_of(loaded: Loaded) -> Result<(StructureAlgebra, Option<Action>)> {
    Ok(match loaded {
        Loaded::Algebra(a) => (a, None),
        Loaded::Action(a) => (a.target().clone(), Some(a)),
        Loaded::Instance(i) => (i.algebra().clone(), Some(i.action)),
        other => bail!("expected an algebra or action file, found {}", other.kind()),
    })
}

fn radical(common: &Common, kind: RadicalKind, path: &Path) -> Result<RadicalReport> {
    let (alg, action) = target_of(load(path)?)?;
    let need_action = || {
        action
            .clone()
            .ok_or_else(|| anyhow!("the {kind} radical needs an action file"))
    };
    Ok(match kind {
        RadicalKind::Jacobson | RadicalKind::Baer => {
            jacobson_radical_with_cap(&alg, common.cap)?.with_kind(kind)
        }
        RadicalKind::VnRegular => vn_regular_radical(&alg, common.cap)?,
        RadicalKind::HJacobson => {
            let a = need_action()?;
            if a.is_twisted() {
                bar_radical(&a, None)?
            } else {
                h_jacobson(&a)?
            }
        }
        RadicalKind::JH => jh_radical(&need_action()?)?,
        RadicalKind::HBaer => h_baer(&need_action()?)?,
        RadicalKind::HVnRegular => h_vn_radical(&need_action()?, common.cap)?,
    })
}

fn report_text(r: &RadicalReport) -> String {
    let mut out = format!(
        "{} radical: dimension {} of {} over {}\nmethod: {}\n",
        r.kind,
        r.dim(),
        r.space.ambient_dim(),
        r.space.field(),
        r.method
    );
    for v in r.space.basis_vectors() {
        let coords: Vec<String> = v.iter().map(hrl_core::io::scalar_to_string).collect();
        out.push_str(&format!("  [{}]\n", coords.join(", ")));
    }
    out
}

fn verify(common: &Common, v: &Verify) -> Result<SuiteReport> {
    let seed = common.seed;
    Ok(match v.suite {
        SuiteId::Example210 => suite_example_2_10(v.p)?,
        SuiteId::Theorem28 => {
            let g = group_arg(&v.group)?;
            suite_theorem_2_8(&g, v.field.parse()?, v.count.unwrap_or(50), seed)?
        }
        SuiteId::Theorem37 => suite_theorem_3_7(v.count.unwrap_or(20), seed)?,
        SuiteId::AxiomsHBaer => suite_axioms(AxiomKind::HBaer, v.count.unwrap_or(50), seed)?,
        SuiteId::AxiomsHVnRegular => {
            suite_axioms(AxiomKind::HVnRegular, v.count.unwrap_or(50), seed)?
        }
        SuiteId::Prop24 => suite_prop_2_4(v.count.unwrap_or(20), seed)?,
        SuiteId::Theorem43 => suite_theorem_4_3(v.count.unwrap_or(30), seed)?,
    })
}

fn finish_suite(common: &Common, report: &SuiteReport) -> Result<()> {
    let text = match common.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    emit(common, &text)?;
    if common.out.is_some() {
        eprint!("{}", report.to_text());
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(ClaimViolated.into())
    }
}
