//! The `permutoid-lab` command line.
//!
//! Every report is a JSON object with sorted keys and a trailing newline. Exit codes: 0 for
//! success, 1 for a negative verdict, 2 for an inconclusive one, 3 for usage or parse errors.

use std::fmt::Debug;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use permutoid_core::develop::{
    probe_finite_quotient, search_development, verify_development, DevelopmentProblem, ProbeError, ProbeOptions,
    ProbeVerdict, SearchStats, SearchVerdict,
};
use permutoid_core::groups::{
    cameron_permutoid, parse_presentation, todd_coxeter, triangulate, universal_group, CosetError, GroupBackend,
    GroupError, MarkedGroup, Presentation, RealizedGroup,
};
use permutoid_core::io::{
    development_to_json, parse_development, parse_named_maps, parse_permutoid, parse_table, permutoid_to_json,
    pseudogroup_to_json, to_canonical_string, LoadError,
};
use permutoid_core::pseudogroup::{
    generate_pseudogroup, maximal_permutoid, search_rigid_development, Pseudogroup, PseudogroupError,
    RigidSearchVerdict,
};
use permutoid_core::{enumerate_quotients, Permutoid, QuotientOptions, ValidationError};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "permutoid-lab", version, about = "Permutoids, Cameron permutoids, developments and rigid pseudogroups")]
struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a file describes a permutoid.
    Validate { file: PathBuf },
    /// Build the Cameron permutoid of a presentation or multiplication table.
    Cameron {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        radius: usize,
    },
    /// Search for a finite development of a permutoid.
    Develop {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Check a claimed development of a permutoid.
    VerifyDevelopment { permutoid: PathBuf, development: PathBuf },
    /// List quotient permutoids induced by partitions of the ground set.
    Quotients {
        file: PathBuf,
        #[arg(long)]
        nontrivial_only: bool,
        #[arg(long, default_value_t = 10)]
        canon_cap: usize,
    },
    /// Print the universal group presentation of a permutoid.
    UniversalGroup { file: PathBuf },
    /// Rewrite a presentation with relators of length three.
    Triangulate {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        radius: usize,
    },
    /// Enumerate cosets of the trivial subgroup.
    CosetEnum {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
    },
    /// Look for a non-trivial finite quotient through quotients of the Cameron permutoid.
    ProbeFiniteQuotient {
        #[arg(long)]
        presentation: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
        #[arg(long, default_value_t = 10)]
        canon_cap: usize,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Pseudogroups generated by partial bijections.
    #[command(subcommand)]
    Pseudogroup(PseudogroupCommand),
}

#[derive(Subcommand, Debug)]
enum PseudogroupCommand {
    /// Saturate generators and print the maximal elements.
    Generate { file: PathBuf },
    /// Report whether the generated pseudogroup is rigid.
    Rigid { file: PathBuf },
    /// Print the maximal elements as a permutoid.
    Maximal { file: PathBuf },
    /// Search for a free group action extending the maximal elements.
    Develop {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, default_value_t = 1_000_000)]
        group_cap: usize,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = true)]
struct GroupArgs {
    #[arg(long)]
    presentation: Option<PathBuf>,
    /// Explicit multiplication table, used as the word-problem backend.
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    max_cosets: usize,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Largest target set tried.
    #[arg(long, default_value_t = 8)]
    max_size: usize,
    /// Node budget for each search.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Search sequentially so the reported witness is reproducible.
    #[arg(long)]
    deterministic: bool,
}

/// A finished command: the report and the exit code.
struct Report {
    code: i32,
    body: Value,
}

impl Report {
    fn ok(body: Value) -> Self {
        Report { code: EXIT_OK, body }
    }
}

/// Error carrying its exit code.
struct Failure {
    code: i32,
    body: Value,
}

impl Failure {
    fn usage(message: impl ToString) -> Self {
        Failure { code: EXIT_USAGE, body: json!({ "error": "Usage", "message": message.to_string() }) }
    }

    fn new(code: i32, kind: &impl Debug, message: impl ToString) -> Self {
        Failure { code, body: json!({ "error": variant_name(kind), "message": message.to_string() }) }
    }
}

/// The outermost variant name from a `Debug` rendering, e.g. `NotRigid` for `NotRigid { .. }`.
fn variant_name(e: &impl Debug) -> String {
    let s = format!("{e:?}");
    s.split(|c: char| !c.is_alphanumeric() && c != '_').next().unwrap_or_default().to_string()
}

type Outcome = Result<Report, Failure>;

/// Parses `args` (including the program name) and runs the command, writing the report to
/// `out` (or `--output`) and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let (code, body) = match dispatch(&cli.command) {
        Ok(r) => (r.code, r.body),
        Err(f) => (f.code, f.body),
    };
    let text = to_canonical_string(&body);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string()),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "cannot write report: {e}");
        return EXIT_USAGE;
    }
    code
}

fn dispatch(command: &Command) -> Outcome {
    match command {
        Command::Validate { file } => validate(file),
        Command::Cameron { group, radius } => cameron(group, *radius),
        Command::Develop { file, search } => develop(file, search),
        Command::VerifyDevelopment { permutoid, development } => verify(permutoid, development),
        Command::Quotients { file, nontrivial_only, canon_cap } => quotients(file, *nontrivial_only, *canon_cap),
        Command::UniversalGroup { file } => {
            let p = load_permutoid(file)?;
            Ok(Report::ok(presentation_json(&universal_group(&p))))
        }
        Command::Triangulate { group, radius } => triangulation(group, *radius),
        Command::CosetEnum { presentation, max_cosets } => coset_enum(presentation, *max_cosets),
        Command::ProbeFiniteQuotient { presentation, radius, max_cosets, canon_cap, search } => {
            probe(presentation, *radius, *max_cosets, *canon_cap, search)
        }
        Command::Pseudogroup(sub) => pseudogroup(sub),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn validation_json(e: &ValidationError) -> Value {
    let detail = match *e {
        ValidationError::EmptyElement(i)
        | ValidationError::NotFunctional(i)
        | ValidationError::NotInjective(i) => json!({ "element": i }),
        ValidationError::PointOutOfRange { element, point } => json!({ "element": element, "point": point }),
        ValidationError::GroundSetMismatch { element, found } => json!({ "element": element, "found": found }),
        ValidationError::DuplicateElement(a, b) => json!({ "elements": [a, b] }),
        ValidationError::UniqueExtensionViolated { p, q, r1, r2 } => json!({ "p": p, "q": q, "r1": r1, "r2": r2 }),
        ValidationError::EmptyGroundSet | ValidationError::EmptyElementList | ValidationError::MissingIdentity => {
            json!({})
        }
    };
    json!({ "valid": false, "error": variant_name(e), "message": e.to_string(), "detail": detail })
}

fn load_failure(e: LoadError) -> Failure {
    match e {
        LoadError::Format(f) => Failure::new(EXIT_USAGE, &f, f.to_string()),
        LoadError::Invalid(v) => Failure { code: EXIT_NEGATIVE, body: validation_json(&v) },
        LoadError::Table(t) => Failure::new(EXIT_NEGATIVE, &t, t.to_string()),
    }
}

fn load_permutoid(path: &Path) -> Result<Permutoid, Failure> {
    parse_permutoid(&read(path)?).map_err(load_failure)
}

fn load_presentation(path: &Path) -> Result<Presentation, Failure> {
    parse_presentation(&read(path)?).map_err(|e| Failure::new(EXIT_USAGE, &e, e.to_string()))
}

fn group_failure(e: GroupError) -> Failure {
    let code = match e {
        GroupError::BackendInconclusive { .. } => EXIT_INCONCLUSIVE,
        GroupError::NotAPermutoid(_) => EXIT_NEGATIVE,
        _ => EXIT_USAGE,
    };
    Failure::new(code, &e, e.to_string())
}

fn validate(file: &Path) -> Outcome {
    let p = load_permutoid(file)?;
    Ok(Report::ok(json!({
        "valid": true,
        "ground_set_size": p.ground_size(),
        "elements": p.len(),
        "rigid": p.is_rigid(),
        "complete": p.is_complete(),
        "witness_triples": p.witness_triples().count(),
    })))
}

/// Resolves the backend from `--table` if given, otherwise from `--presentation`.
fn backend(group: &GroupArgs) -> Result<(Option<Presentation>, GroupBackend), Failure> {
    let presentation = group.presentation.as_deref().map(load_presentation).transpose()?;
    if let Some(table) = &group.table {
        let g: RealizedGroup = parse_table(&read(table)?).map_err(load_failure)?;
        return Ok((presentation, GroupBackend::Finite(g)));
    }
    let p = presentation.expect("clap requires one of the two");
    let b = GroupBackend::resolve(&p, group.max_cosets).map_err(group_failure)?;
    Ok((Some(p), b))
}

fn cameron(group: &GroupArgs, radius: usize) -> Outcome {
    let (_, b) = backend(group)?;
    let c = cameron_permutoid(&b, radius).map_err(group_failure)?;
    Ok(Report::ok(permutoid_to_json(&c.permutoid)))
}

fn stats_json(stats: &SearchStats, started: Instant, deterministic: bool) -> Value {
    let mut v = json!({ "sizes_tried": stats.sizes_tried, "nodes": stats.nodes });
    if !deterministic {
        v["wall_time_ms"] = json!(started.elapsed().as_millis() as u64);
    }
    v
}

fn develop(file: &Path, args: &SearchArgs) -> Outcome {
    let p = load_permutoid(file)?;
    let problem = DevelopmentProblem {
        source: p.clone(),
        max_ground: args.max_size,
        node_budget: args.budget,
        deterministic: args.deterministic,
    };
    let started = Instant::now();
    let verdict = search_development(&problem).map_err(|e| Failure::new(EXIT_USAGE, &e, e.to_string()))?;
    let stats = stats_json(verdict.stats(), started, args.deterministic);
    Ok(match verdict {
        SearchVerdict::Found { development, .. } => Report::ok(json!({
            "verdict": "Found",
            "development": development_to_json(&p, &development),
            "stats": stats,
        })),
        SearchVerdict::ExhaustedUpTo { max_ground, .. } => Report {
            code: EXIT_INCONCLUSIVE,
            body: json!({ "verdict": "ExhaustedUpTo", "max_ground": max_ground, "stats": stats }),
        },
        SearchVerdict::BudgetExceeded { completed_up_to, .. } => Report {
            code: EXIT_INCONCLUSIVE,
            body: json!({ "verdict": "BudgetExceeded", "completed_up_to": completed_up_to, "stats": stats }),
        },
    })
}

fn verify(permutoid: &Path, development: &Path) -> Outcome {
    let p = load_permutoid(permutoid)?;
    let d = parse_development(&read(development)?, &p).map_err(|e| Failure::new(EXIT_USAGE, &e, e.to_string()))?;
    match verify_development(&p, &d) {
        Ok(()) => Ok(Report::ok(json!({ "valid": true, "ground_size": d.target_size }))),
        Err(e) => Err(Failure {
            code: EXIT_NEGATIVE,
            body: json!({ "valid": false, "error": variant_name(&e), "message": e.to_string() }),
        }),
    }
}

fn quotients(file: &Path, nontrivial_only: bool, canon_cap: usize) -> Outcome {
    let p = load_permutoid(file)?;
    let qs = enumerate_quotients(&p, QuotientOptions { nontrivial_only, canon_cap })
        .map_err(|e| Failure::new(EXIT_INCONCLUSIVE, &e, e.to_string()))?;
    let list: Vec<Value> = qs
        .iter()
        .map(|q| {
            json!({
                "permutoid": permutoid_to_json(&q.permutoid),
                "point_map": q.morphism.point_map,
                "element_map": q.morphism.element_map,
            })
        })
        .collect();
    Ok(Report::ok(json!({ "count": list.len(), "quotients": list })))
}

fn presentation_json(p: &Presentation) -> Value {
    let relators: Vec<String> = p.relators().iter().map(|r| r.display(p.generators()).to_string()).collect();
    json!({ "generators": p.generators(), "relators": relators, "presentation": p.to_string() })
}

fn triangulation(group: &GroupArgs, radius: usize) -> Outcome {
    let (p, b) = backend(group)?;
    let p = p.ok_or_else(|| Failure::usage("triangulate needs --presentation"))?;
    let t = triangulate(&p, radius, &b).map_err(group_failure)?;
    let names = t.presentation.generators();
    let symbols: serde_json::Map<String, Value> = names
        .iter()
        .zip(&t.symbol_words)
        .map(|(n, w)| (n.clone(), json!(w.display(p.generators()).to_string())))
        .collect();
    let mut body = presentation_json(&t.presentation);
    body["symbols"] = Value::Object(symbols);
    body["triangles"] = json!(t.raw_relators.len());
    Ok(Report::ok(body))
}

fn table_json(g: &RealizedGroup) -> Value {
    let images: serde_json::Map<String, Value> = g
        .generator_names()
        .iter()
        .zip(g.generator_images())
        .map(|(n, &i)| (n.clone(), json!(i)))
        .collect();
    json!({ "order": g.order(), "table": g.table(), "generator_images": images })
}

fn coset_enum(presentation: &Path, max_cosets: usize) -> Outcome {
    let p = load_presentation(presentation)?;
    match todd_coxeter(&p, max_cosets) {
        Ok(g) => Ok(Report::ok(table_json(&g))),
        Err(e @ CosetError::OutOfBounds { max_cosets }) => Err(Failure {
            code: EXIT_INCONCLUSIVE,
            body: json!({ "error": "OutOfBounds", "max_cosets": max_cosets, "message": e.to_string() }),
        }),
        Err(e) => Err(Failure::new(EXIT_USAGE, &e, e.to_string())),
    }
}

fn probe(presentation: &Path, radius: usize, max_cosets: usize, canon_cap: usize, args: &SearchArgs) -> Outcome {
    let p = load_presentation(presentation)?;
    let options = ProbeOptions {
        radius,
        max_ground: args.max_size,
        node_budget: args.budget,
        max_cosets,
        canon_cap,
        deterministic: args.deterministic,
        ..ProbeOptions::new(radius, args.max_size)
    };
    let started = Instant::now();
    let report = probe_finite_quotient(&p, &options).map_err(|e| match e {
        ProbeError::Group(g) => group_failure(g),
        ProbeError::Canon(c) => Failure::new(EXIT_INCONCLUSIVE, &c, c.to_string()),
        ProbeError::Evidence(v) => Failure::new(EXIT_NEGATIVE, &v, v.to_string()),
    })?;
    let s = &report.stats;
    let mut stats = json!({
        "cameron_ground_size": s.cameron_ground_size,
        "cameron_elements": s.cameron_elements,
        "quotient_classes": s.quotient_classes,
        "quotients_searched": s.quotients_searched,
        "budget_exceeded": s.budget_exceeded,
        "nodes": s.nodes,
    });
    if !args.deterministic {
        stats["wall_time_ms"] = json!(started.elapsed().as_millis() as u64);
    }
    Ok(match report.verdict {
        ProbeVerdict::FoundQuotient { evidence, quotient, development } => {
            let images: serde_json::Map<String, Value> = p
                .generators()
                .iter()
                .zip(&evidence.generator_images)
                .map(|(n, g)| (n.clone(), json!(g.images())))
                .collect();
            Report::ok(json!({
                "verdict": "FoundQuotient",
                "evidence": { "group_order": evidence.group_order, "generator_images": images },
                "quotient": permutoid_to_json(&quotient.permutoid),
                "development": development_to_json(&quotient.permutoid, &development),
                "stats": stats,
            }))
        }
        ProbeVerdict::DefinitivelyNone => Report::ok(json!({ "verdict": "DefinitivelyNone", "stats": stats })),
        ProbeVerdict::Inconclusive { radius, max_ground, node_budget } => Report {
            code: EXIT_INCONCLUSIVE,
            body: json!({
                "verdict": "Inconclusive",
                "bounds": { "radius": radius, "max_ground": max_ground, "node_budget": node_budget },
                "stats": stats,
            }),
        },
    })
}

fn pseudogroup_failure(e: PseudogroupError) -> Failure {
    let code = match e {
        PseudogroupError::NotRigid { .. } | PseudogroupError::NotFree { .. } | PseudogroupError::NotAnAction { .. } => {
            EXIT_NEGATIVE
        }
        PseudogroupError::GroupClosureCapExceeded(_) => EXIT_INCONCLUSIVE,
        _ => EXIT_USAGE,
    };
    Failure::new(code, &e, e.to_string())
}

fn load_pseudogroup(file: &Path) -> Result<Pseudogroup, Failure> {
    let maps = parse_named_maps(&read(file)?).map_err(|e| Failure::new(EXIT_USAGE, &e, e.to_string()))?;
    generate_pseudogroup(maps.ground_size, &maps.maps).map_err(pseudogroup_failure)
}

fn pseudogroup(command: &PseudogroupCommand) -> Outcome {
    match command {
        PseudogroupCommand::Generate { file } => Ok(Report::ok(pseudogroup_to_json(&load_pseudogroup(file)?))),
        PseudogroupCommand::Rigid { file } => {
            let h = load_pseudogroup(file)?;
            Ok(match h.rigidity_violation() {
                None => Report::ok(json!({ "rigid": true })),
                Some((a, b, x)) => Report {
                    code: EXIT_NEGATIVE,
                    body: json!({ "rigid": false, "agreeing": { "elements": [format!("m{a}"), format!("m{b}")], "point": x } }),
                },
            })
        }
        PseudogroupCommand::Maximal { file } => {
            let h = load_pseudogroup(file)?;
            let p = maximal_permutoid(&h).map_err(pseudogroup_failure)?;
            Ok(Report::ok(permutoid_to_json(&p)))
        }
        PseudogroupCommand::Develop { file, search, group_cap } => {
            let h = load_pseudogroup(file)?;
            let started = Instant::now();
            let verdict =
                search_rigid_development(&h, search.max_size, search.budget, *group_cap, search.deterministic)
                    .map_err(pseudogroup_failure)?;
            Ok(match verdict {
                RigidSearchVerdict::Found { development: d, stats } => {
                    let maximal = maximal_permutoid(&h).expect("search succeeded, so H is rigid");
                    let assignment: serde_json::Map<String, Value> =
                        maximal.names().iter().zip(&d.assignment).map(|(n, &g)| (n.clone(), json!(g))).collect();
                    let group: Vec<&[usize]> = d.group.iter().map(|g| g.images()).collect();
                    Report::ok(json!({
                        "verdict": "Found",
                        "ground_size": d.target_size,
                        "group_order": d.group.len(),
                        "group": group,
                        "assignment": assignment,
                        "development": development_to_json(&maximal, &d.development),
                        "stats": stats_json(&stats, started, search.deterministic),
                    }))
                }
                RigidSearchVerdict::ExhaustedUpTo { max_ground, stats } => Report {
                    code: EXIT_INCONCLUSIVE,
                    body: json!({
                        "verdict": "ExhaustedUpTo",
                        "max_ground": max_ground,
                        "stats": stats_json(&stats, started, search.deterministic),
                    }),
                },
                RigidSearchVerdict::BudgetExceeded { completed_up_to, stats } => Report {
                    code: EXIT_INCONCLUSIVE,
                    body: json!({
                        "verdict": "BudgetExceeded",
                        "completed_up_to": completed_up_to,
                        "stats": stats_json(&stats, started, search.deterministic),
                    }),
                },
            })
        }
    }
}
