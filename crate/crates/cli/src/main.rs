//! Command-line front end: validate tables, enumerate filters and
//! bisections, run the duality and fraction constructions, embed, and
//! drive the acceptance suite.
//!
//! Exit codes: 0 on success, 1 when a verified claim fails on the data
//! (a theorem violation or a failing suite check), 2 for usage and I/O
//! errors. File arguments also accept `fixture:` URIs, e.g. `fixture:S5`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use stonedual_core::duality::{
    category_double_dual, check_composite_factorization, homomorphism_of, monoid_double_dual,
    relational_functor_of,
};
use stonedual_core::embedding::{check_filter_correspondence, embed_pipeline};
use stonedual_core::error::Error;
use stonedual_core::filters::{build_category, stone_space};
use stonedual_core::fractions::{
    check_condition_c, check_fractions_unique, check_reversibility_equivalence, fractions_groupoid,
};
use stonedual_core::generate::{generate_instance, GeneratorParams, GroupChoice};
use stonedual_core::monoid::{check_boolean_restriction, MonoidContext, AXIOM_NAMES};
use stonedual_core::report::CheckStatus;
use stonedual_core::suite::{load_config, run_suite};
use stonedual_core::{io, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Parser)]
#[command(name = "stonedual")]
#[command(about = "Workbench for finite Boolean restriction, ample and inverse monoids")]
#[command(version)]
struct Cli {
    /// Refuse bisection enumeration for categories with more arrows.
    #[arg(long, global = true, default_value_t = 16)]
    cap_arrows: usize,

    /// Upper bound on enumerated bisections.
    #[arg(long, global = true, default_value_t = 4096)]
    cap_bisections: usize,

    /// Tie-breaking seed for the fraction construction.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a monoid file: axioms, classification, Boolean structure.
    Check {
        #[arg(long)]
        monoid: String,
    },
    /// Enumerate prime filters, the filter category and the Stone space.
    Filters {
        #[arg(long)]
        monoid: String,
    },
    /// Validate a category file and report its structural properties.
    Category {
        #[arg(long)]
        category: String,
    },
    /// Build the monoid of local bisections of a category.
    Kb {
        #[arg(long)]
        category: String,
        /// Write the resulting monoid as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Object duality round trips; with --hom also the morphism duality.
    Duality {
        #[arg(long)]
        monoid: Option<String>,
        #[arg(long)]
        category: Option<String>,
        #[arg(long)]
        hom: Option<String>,
    },
    /// Condition (C) and its agreement with right reversibility.
    Condc {
        #[arg(long)]
        monoid: String,
    },
    /// Groupoid of fractions of a cancellative right reversible category.
    Fractions {
        #[arg(long)]
        category: String,
        /// Write the groupoid as a category JSON file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Full embedding of a Boolean ample monoid satisfying condition (C).
    Embed {
        #[arg(long)]
        monoid: String,
    },
    /// Generate a deterministic (groupoid, subcategory, monoid) instance.
    Generate {
        #[arg(long, default_value_t = 1)]
        components: usize,
        #[arg(long, default_value_t = 1)]
        objects_min: usize,
        #[arg(long, default_value_t = 3)]
        objects_max: usize,
        #[arg(long, value_enum, default_value_t = GroupArg::Trivial)]
        group: GroupArg,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        /// Directory receiving g.json, c.json and s.json.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run the acceptance suite and emit the report.
    Suite {
        #[arg(long)]
        config: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    Trivial,
    Cyclic2,
    Cyclic3,
}

impl From<GroupArg> for GroupChoice {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Trivial => GroupChoice::Trivial,
            GroupArg::Cyclic2 => GroupChoice::Cyclic2,
            GroupArg::Cyclic3 => GroupChoice::Cyclic3,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_theorem_violation() {
                if let Error::TheoremViolation(v) = &e {
                    if let Ok(bundle) = serde_json::to_string_pretty(&v) {
                        eprintln!("{bundle}");
                    }
                }
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Check { monoid } => cmd_check(cli, monoid),
        Command::Filters { monoid } => cmd_filters(cli, monoid),
        Command::Category { category } => cmd_category(cli, category),
        Command::Kb { category, out } => cmd_kb(cli, category, out.as_deref()),
        Command::Duality {
            monoid,
            category,
            hom,
        } => cmd_duality(cli, monoid.as_deref(), category.as_deref(), hom.as_deref()),
        Command::Condc { monoid } => cmd_condc(cli, monoid),
        Command::Fractions { category, out } => cmd_fractions(cli, category, out.as_deref()),
        Command::Embed { monoid } => cmd_embed(cli, monoid),
        Command::Generate {
            components,
            objects_min,
            objects_max,
            group,
            density,
            out_dir,
        } => cmd_generate(
            cli,
            *components,
            *objects_min,
            *objects_max,
            (*group).into(),
            *density,
            out_dir.as_deref(),
        ),
        Command::Suite { config } => cmd_suite(cli, config.as_deref()),
    }
}

fn emit(cli: &Cli, human: String, value: serde_json::Value) {
    match cli.format {
        Format::Human => println!("{human}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
    }
}

fn cmd_check(cli: &Cli, spec: &str) -> Result<ExitCode> {
    let m = io::load_monoid(spec)?;
    let axioms = m.check_axioms();
    let class = m.classify();
    let boolean = MonoidContext::new(&m)
        .map(|ctx| check_boolean_restriction(&ctx).ok())
        .unwrap_or(false);
    let mut lines = vec![format!("monoid `{spec}`: {} elements", m.n())];
    let axiom_fields: Vec<serde_json::Value> = axioms
        .checks
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "axiom": AXIOM_NAMES[i],
                "passed": c.passed,
                "witness": c.witness.as_ref().map(|w| m.labels(w)),
            })
        })
        .collect();
    for (i, c) in axioms.checks.iter().enumerate() {
        if c.passed {
            lines.push(format!("  {}: ok", AXIOM_NAMES[i]));
        } else {
            let w = c.witness.as_ref().map(|w| m.labels(w).join(", ")).unwrap_or_default();
            lines.push(format!("  {}: FAILS at ({w})", AXIOM_NAMES[i]));
        }
    }
    lines.push(format!(
        "  restriction: {}, ample: {}, inverse: {}, boolean: {}",
        class.restriction, class.ample, class.inverse, boolean && class.restriction
    ));
    emit(
        cli,
        lines.join("\n"),
        json!({
            "elements": m.n(),
            "axioms": axiom_fields,
            "classification": class,
            "boolean_restriction": boolean,
        }),
    );
    Ok(ExitCode::SUCCESS)
}

fn require_boolean_restriction(m: &stonedual_core::monoid::MonoidTable) -> Result<MonoidContext> {
    let axioms = m.check_axioms();
    if !axioms.restriction() {
        return Err(Error::Invalid(format!(
            "monoid fails the restriction axioms: {:?}",
            axioms.failed()
        )));
    }
    let ctx = MonoidContext::new(m)?;
    let report = check_boolean_restriction(&ctx);
    if !report.ok() {
        return Err(Error::Invalid(
            "monoid is not a Boolean restriction monoid".into(),
        ));
    }
    Ok(ctx)
}

fn cmd_filters(cli: &Cli, spec: &str) -> Result<ExitCode> {
    let m = io::load_monoid(spec)?;
    let ctx = require_boolean_restriction(&m)?;
    let cat = build_category(&ctx)?;
    let space = stone_space(&ctx, &cat)?;
    let mut lines = vec![format!(
        "{} prime filters, {} identities, {} Stone points",
        cat.filters.len(),
        cat.table.identities().len(),
        space.points.len()
    )];
    for (i, f) in cat.filters.iter().enumerate() {
        lines.push(format!(
            "  {} = ↑{} {{{}}}  d = {}, r = {}",
            cat.table.label(i),
            m.label(f.min),
            m.labels(&f.carrier).join(", "),
            cat.table.label(cat.table.d(i)),
            cat.table.label(cat.table.r(i)),
        ));
    }
    let filters_json: Vec<serde_json::Value> = cat
        .filters
        .iter()
        .enumerate()
        .map(|(i, f)| {
            json!({
                "name": cat.table.label(i),
                "min": m.label(f.min),
                "carrier": m.labels(&f.carrier),
                "identity": cat.table.is_identity(i),
            })
        })
        .collect();
    emit(
        cli,
        lines.join("\n"),
        json!({
            "filters": filters_json,
            "category": cat.table.to_raw(),
            "stone_points": space.points.iter().map(|p| m.label(p.atom)).collect::<Vec<_>>(),
        }),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_category(cli: &Cli, spec: &str) -> Result<ExitCode> {
    let c = io::load_category(spec)?;
    let cancel = c.check_cancellative();
    let groupoid = c.check_groupoid();
    let rev = c.check_right_reversible();
    emit(
        cli,
        format!(
            "category `{spec}`: {} arrows, {} identities\n  cancellative: {}\n  groupoid: {}\n  right reversible: {}",
            c.n(),
            c.identities().len(),
            cancel.ok(),
            groupoid.ok(),
            rev.ok()
        ),
        json!({
            "arrows": c.n(),
            "identities": c.identities().len(),
            "cancellative": cancel.ok(),
            "groupoid": groupoid.ok(),
            "right_reversible": rev.ok(),
            "reversibility_witness": rev.witness.map(|(a, b)| [c.label(a).to_string(), c.label(b).to_string()]),
        }),
    );
    Ok(ExitCode::SUCCESS)
}

fn guard_cap(cli: &Cli, c: &stonedual_core::category::CategoryTable) -> Result<()> {
    if c.n() > cli.cap_arrows {
        return Err(Error::Invalid(format!(
            "category has {} arrows; bisection enumeration refused above --cap-arrows {}",
            c.n(),
            cli.cap_arrows
        )));
    }
    Ok(())
}

fn cmd_kb(cli: &Cli, spec: &str, out: Option<&std::path::Path>) -> Result<ExitCode> {
    let c = io::load_category(spec)?;
    guard_cap(cli, &c)?;
    let kb = c.kb_monoid(cli.cap_bisections)?;
    let class = kb.monoid.table.classify();
    if let Some(path) = out {
        io::save_monoid(&kb.monoid.table, path)?;
    }
    emit(
        cli,
        format!(
            "bisection monoid: {} elements (ample: {}, inverse: {})",
            kb.len(),
            class.ample,
            class.inverse
        ),
        json!({
            "elements": kb.len(),
            "classification": class,
            "monoid": kb.monoid.table.to_raw(),
        }),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_duality(
    cli: &Cli,
    monoid: Option<&str>,
    category: Option<&str>,
    hom: Option<&str>,
) -> Result<ExitCode> {
    if let Some(spec) = hom {
        let h = io::load_homomorphism(spec)?;
        let report = h.check()?;
        if !report.ok() {
            return Err(Error::Invalid(
                "file does not describe a homomorphism of Boolean restriction monoids".into(),
            ));
        }
        let sctx = require_boolean_restriction(&h.source)?;
        let tctx = require_boolean_restriction(&h.target)?;
        let s = monoid_double_dual(&sctx, cli.cap_bisections)?;
        let t = monoid_double_dual(&tctx, cli.cap_bisections)?;
        let rho = relational_functor_of(&h, &s, &t)?;
        let recovered = homomorphism_of(&rho, &s, &t)?;
        let roundtrip = recovered.map == h.map;
        let fact = check_composite_factorization(&rho)?;
        if !roundtrip {
            return Err(Error::violation(
                "morphism-roundtrip",
                "recovered homomorphism differs from the original",
                json!({ "hom": spec }),
            ));
        }
        emit(
            cli,
            format!(
                "relational functor: {} pairs; roundtrip: ok; factorization: {}",
                rho.pairs.len(),
                if fact.ok() { "ok" } else { "FAILS" }
            ),
            json!({
                "pairs": rho.pairs.len(),
                "roundtrip": roundtrip,
                "factorization": fact.ok(),
            }),
        );
        return Ok(ExitCode::SUCCESS);
    }
    match (monoid, category) {
        (Some(spec), None) => {
            let m = io::load_monoid(spec)?;
            let ctx = require_boolean_restriction(&m)?;
            let dual = monoid_double_dual(&ctx, cli.cap_bisections)?;
            emit(
                cli,
                format!(
                    "double dual certificate: {} elements ↔ {} bisections over {} prime filters; clauses: {}",
                    m.n(),
                    dual.kb.len(),
                    dual.category.table.n(),
                    dual.certificate.clauses.join(", ")
                ),
                json!({
                    "elements": m.n(),
                    "filters": dual.category.table.n(),
                    "clauses": dual.certificate.clauses,
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        (None, Some(spec)) => {
            let c = io::load_category(spec)?;
            guard_cap(cli, &c)?;
            let dual = category_double_dual(&c, cli.cap_bisections)?;
            emit(
                cli,
                format!(
                    "double dual certificate: {} arrows ↔ {} prime filters of a {}-element monoid; clauses: {}",
                    c.n(),
                    dual.refiltered.table.n(),
                    dual.kb.len(),
                    dual.certificate.clauses.join(", ")
                ),
                json!({
                    "arrows": c.n(),
                    "bisections": dual.kb.len(),
                    "clauses": dual.certificate.clauses,
                }),
            );
            Ok(ExitCode::SUCCESS)
        }
        _ => Err(Error::Invalid(
            "pass exactly one of --monoid or --category, or --hom".into(),
        )),
    }
}

fn cmd_condc(cli: &Cli, spec: &str) -> Result<ExitCode> {
    let m = io::load_monoid(spec)?;
    let ctx = require_boolean_restriction(&m)?;
    if !m.check_axioms().all() {
        return Err(Error::Invalid("condition (C) needs a Boolean ample monoid".into()));
    }
    let equiv = check_reversibility_equivalence(&ctx)?;
    let report = check_condition_c(&ctx)?;
    let human = match &report.counterexample {
        None => format!(
            "condition (C): holds ({} witnesses); filter category right reversible: {}",
            report.witnesses.len(),
            equiv.right_reversible
        ),
        Some((pi, a, b)) => format!(
            "condition (C): FAILS at filter ^{}, a = {}, b = {}; filter category right reversible: {}",
            m.label(report.points[*pi].atom),
            m.label(*a),
            m.label(*b),
            equiv.right_reversible
        ),
    };
    emit(
        cli,
        human,
        json!({
            "holds": report.holds,
            "witnesses": report.witnesses.len(),
            "counterexample": report.counterexample.map(|(pi, a, b)| json!({
                "filter": m.label(report.points[pi].atom),
                "a": m.label(a),
                "b": m.label(b),
            })),
            "right_reversible": equiv.right_reversible,
        }),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_fractions(cli: &Cli, spec: &str, out: Option<&std::path::Path>) -> Result<ExitCode> {
    let c = io::load_category(spec)?;
    let g = fractions_groupoid(&c, cli.seed)?;
    let g2 = fractions_groupoid(&c, cli.seed.wrapping_add(1))?;
    check_fractions_unique(&c, &g, &g2)?;
    if let Some(path) = out {
        io::save_category(&g.table, path)?;
    }
    let iota: Vec<[String; 2]> = (0..c.n())
        .map(|x| [c.label(x).to_string(), g.table.label(g.iota[x]).to_string()])
        .collect();
    emit(
        cli,
        format!(
            "groupoid of fractions: {} arrows over {} input arrows; uniqueness across seeds: ok",
            g.table.n(),
            c.n()
        ),
        json!({
            "arrows": g.table.n(),
            "iota": iota,
            "groupoid": g.table.to_raw(),
        }),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_embed(cli: &Cli, spec: &str) -> Result<ExitCode> {
    let m = io::load_monoid(spec)?;
    let ctx = require_boolean_restriction(&m)?;
    if !m.check_axioms().all() {
        return Err(Error::Invalid("embedding needs a Boolean ample monoid".into()));
    }
    let emb = embed_pipeline(&ctx, cli.cap_bisections, cli.seed)?;
    let corr = check_filter_correspondence(&ctx, &emb)?;
    let t = &emb.target.monoid.table;
    let image: Vec<[String; 2]> = (0..m.n())
        .map(|a| [m.label(a).to_string(), t.label(emb.map[a]).to_string()])
        .collect();
    emit(
        cli,
        format!(
            "embedded into a {}-element Boolean inverse monoid; injective: {}, full: {}, joins of ≤ {} fractions; filters matched: {}/{}",
            emb.target.len(),
            emb.certificates.injective,
            emb.certificates.full,
            emb.certificates.max_cover_size,
            corr.matched,
            corr.target_filters,
        ),
        json!({
            "target_elements": emb.target.len(),
            "injective": emb.certificates.injective,
            "homomorphic": emb.certificates.homomorphic,
            "full": emb.certificates.full,
            "join_cover": emb.certificates.join_cover,
            "max_cover_size": emb.certificates.max_cover_size,
            "map": image,
            "target": t.to_raw(),
        }),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_generate(
    cli: &Cli,
    components: usize,
    objects_min: usize,
    objects_max: usize,
    group: GroupChoice,
    density: f64,
    out_dir: Option<&std::path::Path>,
) -> Result<ExitCode> {
    let params = GeneratorParams {
        seed: cli.seed,
        components,
        objects_min,
        objects_max,
        group,
        density,
    };
    let inst = generate_instance(&params, cli.cap_arrows, cli.cap_bisections)?;
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        io::save_category(&inst.groupoid, &dir.join("g.json"))?;
        io::save_category(&inst.subcategory, &dir.join("c.json"))?;
        io::save_monoid(&inst.kb.monoid.table, &dir.join("s.json"))?;
    }
    emit(
        cli,
        format!(
            "generated groupoid with {} arrows, subcategory with {} arrows, monoid with {} elements",
            inst.groupoid.n(),
            inst.subcategory.n(),
            inst.kb.len()
        ),
        json!({
            "groupoid_arrows": inst.groupoid.n(),
            "subcategory_arrows": inst.subcategory.n(),
            "monoid_elements": inst.kb.len(),
        }),
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_suite(cli: &Cli, config: Option<&str>) -> Result<ExitCode> {
    let cfg = load_config(config)?;
    let report = run_suite(&cfg)?;
    match cli.format {
        Format::Human => {
            for check in &report.checks {
                let status = match check.status {
                    CheckStatus::Pass => "PASS",
                    CheckStatus::Fail => "FAIL",
                    CheckStatus::ExpectedNegative => "PASS (expected negative)",
                };
                println!("{status:24} {}", check.name);
                if let Some(w) = &check.witness {
                    println!("    witness: {w}");
                }
            }
        }
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
        }
    }
    if report.all_ok() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}
