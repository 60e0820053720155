//! Acceptance gate: every top-level property the workbench promises,
//! executed end to end with one pass/fail line per criterion. Where a
//! criterion carries a wall-clock budget it is asserted here as well.

use std::time::{Duration, Instant};

use stonedual_core::suite::{
    collect_condc_entries, collect_law_instances, criterion_category_duality,
    criterion_common_multiples, criterion_flagship, criterion_fractions,
    criterion_monoid_duality, criterion_morphism_duality, criterion_preimage_partition,
    criterion_presentation, criterion_reversibility, criterion_structure_laws,
    criterion_symbolic_ore, EmbedCase, EmbedExpectation, SuiteConfig,
};
use stonedual_core::Result;

struct Criterion {
    name: &'static str,
    budget: Option<Duration>,
    elapsed: Duration,
    result: Result<()>,
}

fn run(
    name: &'static str,
    budget: Option<Duration>,
    body: impl FnOnce() -> Result<()>,
) -> Criterion {
    let start = Instant::now();
    let result = body();
    Criterion {
        name,
        budget,
        elapsed: start.elapsed(),
        result,
    }
}

#[test]
fn acceptance() {
    let cfg = SuiteConfig::default();
    assert_eq!(cfg.law_instances, 200);
    assert_eq!(cfg.condc_instances, 100);
    assert_eq!(cfg.condc_negatives, 10);
    assert_eq!(cfg.presentation_instances, 50);

    let mut results = Vec::new();

    results.push(run(
        "01 flagship-embedding (S5 into a 7-element inverse monoid)",
        Some(Duration::from_secs(1)),
        || criterion_flagship(&cfg),
    ));

    let gate2 = Instant::now();
    let law_instances = collect_law_instances(&cfg);
    results.push(run("02a duality-monoid-roundtrip (fixtures + 200 generated)", None, || {
        criterion_monoid_duality(&cfg, &law_instances)
    }));
    results.push(run("02b duality-category-roundtrip (fixtures + generated)", None, || {
        criterion_category_duality(&cfg, &law_instances)
    }));
    let gate2_elapsed = gate2.elapsed();

    results.push(run(
        "03 structure-laws (cancellative filter categories, ample bisection monoids, groupoid iff inverse)",
        None,
        || criterion_structure_laws(&cfg, &law_instances),
    ));

    let condc_entries = collect_condc_entries(&cfg).expect("condition (C) instances");
    results.push(run(
        "04 reversibility-equivalence (condition (C) vs right reversibility, with fork negatives)",
        None,
        || criterion_reversibility(&cfg, &condc_entries),
    ));

    results.push(run(
        "05 fractions-construction (arrow category, choice independence, seed uniqueness)",
        Some(Duration::from_secs(5)),
        || criterion_fractions(&cfg),
    ));

    results.push(run(
        "06 fraction-presentation-converse (50 generated (G, C) pairs)",
        None,
        || criterion_presentation(&cfg),
    ));

    results.push(run(
        "07 common-left-multiples (every instance satisfying condition (C))",
        None,
        || criterion_common_multiples(&condc_entries),
    ));

    results.push(run(
        "08 morphism-duality (roundtrip and factorization for the fixture maps)",
        None,
        || criterion_morphism_duality(&cfg),
    ));

    results.push(run(
        "09 symbolic-ore (rank-2 free commutative monoid, coordinates within 5)",
        Some(Duration::from_secs(1)),
        criterion_symbolic_ore,
    ));

    results.push(run(
        "10 preimage-partition (prime filter preimages split into prime filters)",
        None,
        criterion_preimage_partition,
    ));

    let mut failed = 0;
    for item in &results {
        let verdict = match &item.result {
            Ok(()) => "PASS",
            Err(_) => "FAIL",
        };
        println!(
            "acceptance {:100} {} ({:.2?})",
            item.name, verdict, item.elapsed
        );
        if let Err(e) = &item.result {
            println!("    reason: {e}");
            failed += 1;
        }
        if let Some(budget) = item.budget {
            if item.elapsed > budget {
                println!("    over budget: {:.2?} > {:.2?}", item.elapsed, budget);
                failed += 1;
            }
        }
    }
    println!(
        "acceptance 02 combined duality roundtrips took {:.2?} (budget 30s)",
        gate2_elapsed
    );
    if gate2_elapsed > Duration::from_secs(30) {
        failed += 1;
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}

#[test]
fn acceptance_expected_negative_is_first_class() {
    let cfg = SuiteConfig::default();
    let case = EmbedCase {
        source: "fixture:KB_FORK".into(),
        expect: EmbedExpectation::ConditionCFails,
    };
    let result = stonedual_core::suite::embed_case(&cfg, &case);
    assert_eq!(
        result.status,
        stonedual_core::report::CheckStatus::ExpectedNegative
    );

    // the same fixture with a pass expectation must fail the suite
    let wrong = EmbedCase {
        source: "fixture:KB_FORK".into(),
        expect: EmbedExpectation::Pass,
    };
    let result = stonedual_core::suite::embed_case(&cfg, &wrong);
    assert_eq!(result.status, stonedual_core::report::CheckStatus::Fail);
}

#[test]
fn suite_reports_are_deterministic() {
    let cfg = SuiteConfig {
        law_instances: 8,
        condc_instances: 6,
        condc_negatives: 1,
        presentation_instances: 3,
        ..SuiteConfig::default()
    };
    let a = stonedual_core::suite::run_suite(&cfg).unwrap();
    let b = stonedual_core::suite::run_suite(&cfg).unwrap();
    let ja = serde_json::to_string(&a).unwrap();
    let jb = serde_json::to_string(&b).unwrap();
    assert_eq!(ja, jb, "identical configs produce byte-identical reports");
}
