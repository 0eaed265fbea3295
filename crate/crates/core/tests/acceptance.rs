//! One line per acceptance criterion. Runs without the libtest harness so
//! the lines are printed even when everything passes.

mod common;

use std::cell::Cell;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::props;
use hrl_core::harness::{
    suite_axioms, suite_example_2_10, suite_prop_2_4, suite_theorem_2_8, suite_theorem_3_7,
    suite_theorem_4_3, AxiomKind, SuiteReport,
};
use hrl_core::hopf::GroupTable;
use hrl_core::linalg::FieldSpec;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Verdict = Result<String, String>;
type SuiteRun = Box<dyn Fn() -> SuiteReport>;

fn stat(r: &SuiteReport, key: &str) -> usize {
    r.stats.get(key).copied().unwrap_or(0)
}

fn passed(r: &SuiteReport, id: &str) -> usize {
    r.claim(id).map_or(0, |c| c.passed)
}

fn require(ok: bool, r: &SuiteReport, what: &str) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(format!("{what}\n{}", r.to_text()))
    }
}

fn criterion_1() -> Verdict {
    let mut notes = Vec::new();
    for (p, budget) in [(2, Duration::from_secs(10)), (3, Duration::from_secs(120))] {
        let t = Instant::now();
        let r = suite_example_2_10(p).map_err(|e| e.to_string())?;
        let took = t.elapsed();
        require(r.all_pass(), &r, &format!("p = {p}: a claim failed"))?;
        for id in [
            "dimensions",
            "r_b(R) != 0",
            "r_bH(R) = 0",
            "claim (1)",
            "claim (2)",
            "claim (3)",
        ] {
            require(
                passed(&r, id) == 1,
                &r,
                &format!("p = {p}: `{id}` not evaluated"),
            )?;
        }
        if took > budget {
            return Err(format!("p = {p} took {took:?}, budget {budget:?}"));
        }
        notes.push(format!("p={p} in {} ms", took.as_millis()));
    }
    Ok(notes.join(", "))
}

fn criterion_2() -> Verdict {
    let configs = [
        (GroupTable::cyclic(2), FieldSpec::prime(3).unwrap()),
        (GroupTable::cyclic(3), FieldSpec::prime(2).unwrap()),
        (GroupTable::cyclic(3), FieldSpec::Rationals),
        (GroupTable::symmetric3(), FieldSpec::Rationals),
    ];
    let mut total = 0;
    for (g, k) in configs {
        let r = suite_theorem_2_8(&g, k, 50, 0).map_err(|e| e.to_string())?;
        let label = format!("({}, {k})", g.name);
        require(r.all_pass(), &r, &format!("{label}: a claim failed"))?;
        require(
            stat(&r, "H = kG") >= 50 && stat(&r, "H = (kG)*") >= 50,
            &r,
            &format!("{label}: fewer than 50 instances per Hopf algebra"),
        )?;
        require(
            passed(&r, "thm2.8(1)") == r.instances && passed(&r, "thm2.8(2)") == r.instances,
            &r,
            &format!("{label}: not every instance was checked"),
        )?;
        total += r.instances;
    }
    Ok(format!("{total} instances over 4 configurations"))
}

fn criterion_3() -> Verdict {
    let r = suite_theorem_3_7(20, 0).map_err(|e| e.to_string())?;
    require(r.all_pass(), &r, "a claim failed")?;
    require(
        passed(&r, "thm3.7") >= 20,
        &r,
        "fewer than 20 graded instances",
    )?;
    let non = stat(&r, "not Gr-regular");
    require(non >= 5, &r, "fewer than 5 non-regular instances")?;
    Ok(format!("{} instances, {non} not Gr-regular", r.instances))
}

fn criterion_4() -> Verdict {
    let vn = suite_axioms(AxiomKind::HVnRegular, 50, 0).map_err(|e| e.to_string())?;
    require(vn.all_pass(), &vn, "h-vnregular: a claim failed")?;
    require(
        vn.instances >= 50 && passed(&vn, "R3") >= 50,
        &vn,
        "h-vnregular: fewer than 50 instances",
    )?;
    require(
        passed(&vn, "hereditary") > 0 && passed(&vn, "r_nH in r_Hn") >= 50,
        &vn,
        "h-vnregular: heredity or the r_nH inclusion was not exercised",
    )?;
    let baer = suite_axioms(AxiomKind::HBaer, 50, 0).map_err(|e| e.to_string())?;
    require(baer.all_pass(), &baer, "h-baer: a claim failed")?;
    require(
        baer.instances >= 50 && passed(&baer, "R3") >= 50,
        &baer,
        "h-baer: fewer than 50 instances",
    )?;
    require(
        passed(&baer, "H-semiprime") > 0,
        &baer,
        "h-baer: no quotient was searched",
    )?;
    Ok(format!(
        "{} + {} instances, {} heredity checks, {} semiprime searches",
        vn.instances,
        baer.instances,
        passed(&vn, "hereditary"),
        passed(&baer, "H-semiprime")
    ))
}

fn criterion_5() -> Verdict {
    let r = suite_prop_2_4(20, 0).map_err(|e| e.to_string())?;
    require(r.all_pass(), &r, "a claim failed")?;
    require(
        passed(&r, "lemma2.2") >= 20 && passed(&r, "prop2.4(1)") >= 20,
        &r,
        "fewer than 20 instances",
    )?;
    Ok(format!(
        "{} instances ({} twisted)",
        r.instances,
        stat(&r, "twisted")
    ))
}

fn criterion_6() -> Verdict {
    let (bad, n) = common::jacobson_mismatches();
    if !bad.is_empty() || n != 100 {
        return Err(format!("jacobson_radical: {bad:?} over {n} algebras"));
    }
    let (bad, m) = common::h_regular_mismatches();
    if !bad.is_empty() {
        return Err(format!("h_regular_element: {bad:?}"));
    }
    Ok(format!("{n} algebras, {m} elements"))
}

fn run_property<S: Strategy>(
    cases: u32,
    strategy: S,
    check: impl Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
    counter: &Cell<usize>,
) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner =
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner
        .run(&strategy, |v| {
            counter.set(counter.get() + 1);
            check(v)
        })
        .map_err(|e| e.to_string())
}

fn criterion_7() -> Verdict {
    let count = Cell::new(0);
    let cases = 250;
    run_property(
        cases,
        (props::matrix(), props::row_ops()),
        |(m, ops)| props::rref_canonical(&m, &ops),
        &count,
    )?;
    run_property(cases, props::matrix(), |m| props::rank_nullity(&m), &count)?;
    run_property(
        cases,
        props::same_shape_triple(),
        |(a, b, c)| props::modular_law(&a, &b, &c),
        &count,
    )?;
    run_property(
        cases,
        props::same_shape_pair(),
        |(u, w)| props::dimension_formula(&u, &w),
        &count,
    )?;
    if count.get() < 1000 {
        return Err(format!("only {} checks ran", count.get()));
    }
    Ok(format!("{} property checks", count.get()))
}

fn criterion_8() -> Verdict {
    let runs: Vec<(&str, SuiteRun)> = vec![
        ("example210", Box::new(|| suite_example_2_10(2).unwrap())),
        (
            "thm28",
            Box::new(|| {
                suite_theorem_2_8(&GroupTable::cyclic(2), FieldSpec::prime(3).unwrap(), 50, 7)
                    .unwrap()
            }),
        ),
        ("thm37", Box::new(|| suite_theorem_3_7(20, 7).unwrap())),
        (
            "axioms h-baer",
            Box::new(|| suite_axioms(AxiomKind::HBaer, 50, 7).unwrap()),
        ),
        (
            "axioms h-vnregular",
            Box::new(|| suite_axioms(AxiomKind::HVnRegular, 50, 7).unwrap()),
        ),
        ("prop24", Box::new(|| suite_prop_2_4(20, 7).unwrap())),
        ("thm43", Box::new(|| suite_theorem_4_3(30, 7).unwrap())),
    ];
    for (name, run) in &runs {
        let (a, b) = (run().canonical_json(), run().canonical_json());
        if a != b {
            return Err(format!("{name}: reports differ"));
        }
    }
    Ok(format!("{} suites re-run byte-identically", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Verdict); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    // `cargo test -- <filter>` runs the matching criteria only.
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (n, f) in criteria {
        let name = format!("criterion_{n}");
        if !filter.is_empty() && !filter.iter().any(|p| name.contains(p.as_str())) {
            continue;
        }
        let t = Instant::now();
        let verdict = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let ms = t.elapsed().as_millis();
        match verdict {
            Ok(note) => println!("criterion {n}: PASS ({note}; {ms} ms)"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({ms} ms)\n{why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
