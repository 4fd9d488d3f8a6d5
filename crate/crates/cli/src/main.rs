//! Command line front end for the cylinder calculus and its finite oracles.
//!
//! Exit codes: 0 on success (including a negative answer to a decidable
//! question), 1 on usage or parse errors, 2 when the question itself is out
//! of scope (equality in the path algebra over a graph that is not
//! row-finite). `--machine` switches every report to `key=value` lines.

mod expr;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use expr::{parse_element_expr, ExprValue};
use std::collections::BTreeSet;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use steinberg_core::graph::{
    all_hereditary_saturated, condition_l, enumerate_cycles, hs_closure,
    steinberg_simple_decision, Cycle, Graph,
};
use steinberg_core::lpa::{lpa_equals, rose_omega_demo, LaurentPoly};
use steinberg_core::congruence::all_congruences;
use steinberg_core::{
    function_algebra, group_semiring, instantiate_semiring, matrix_semiring, run_all,
    FiniteAlgebra, GroupTable, Limits,
};

#[derive(Parser)]
#[command(
    name = "steinberg",
    version,
    about = "Graph algebra analysis: simpleness criteria, cylinder calculus, and path algebra queries"
)]
struct Cli {
    /// Emit machine-readable key=value lines instead of prose.
    #[arg(long, global = true)]
    machine: bool,

    /// Carrier bound for exhaustive searches; overrides STEINBERG_MAX_CARRIER.
    #[arg(long, global = true)]
    max_carrier: Option<usize>,

    /// Vertex bound for subset enumeration; overrides STEINBERG_MAX_VERTICES.
    #[arg(long, global = true)]
    max_vertices: Option<usize>,

    /// Seed for randomized suites; overrides STEINBERG_SEED.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Report vertex classes, cycles, Condition (L), hereditary saturated
    /// subsets, and congruence-simpleness verdicts for a graph.
    Analyze { graph: PathBuf },
    /// Compute the hereditary saturated closure of a set of vertices.
    Closure {
        graph: PathBuf,
        vertices: Vec<String>,
    },
    /// List the cycles of a graph and whether each has an exit.
    Cycles { graph: PathBuf },
    /// Evaluate a Laurent polynomial at a cycle of the graph.
    Eval {
        graph: PathBuf,
        poly: String,
        /// Cycle to evaluate at, as a dot-separated edge path; defaults to
        /// the first cycle found.
        #[arg(long)]
        cycle: Option<String>,
    },
    /// Decide whether two elements over the graph are equal.
    Eq {
        graph: PathBuf,
        left: String,
        right: String,
    },
    /// Decide whether an element lies in the image of the path algebra
    /// representation.
    Image { graph: PathBuf, element: String },
    /// Count the congruences of a built-in finite algebra and show a
    /// nontrivial witness when one exists.
    Congruences {
        /// One of: M1, M2, M3 (matrix), B2, B3 (functions), BZ2, BZ3, BZ4
        /// (group semirings).
        algebra: String,
        /// Stop after this many congruences.
        #[arg(long, default_value_t = 512)]
        max_count: usize,
    },
    /// Run the verification suites and print one pass/fail line per suite.
    Verify,
    /// Run a built-in worked example. Available: rose-omega.
    Demo { name: String },
}

enum Failure {
    Usage(String),
    OutOfScope(String),
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

/// Dies quietly when the consumer of a pipe closes early, like other unix
/// text tools, instead of panicking on the failed write.
#[cfg(unix)]
fn restore_default_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn restore_default_sigpipe() {}

fn main() -> ExitCode {
    restore_default_sigpipe();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::OutOfScope(msg)) => {
            eprintln!("out of scope: {msg}");
            ExitCode::from(2)
        }
    }
}

fn effective_limits(cli: &Cli) -> Limits {
    let mut limits = Limits::from_env();
    if let Some(c) = cli.max_carrier {
        limits.max_carrier = c;
    }
    if let Some(v) = cli.max_vertices {
        limits.max_vertices = v;
    }
    limits
}

fn effective_seed(cli: &Cli) -> u64 {
    cli.seed
        .or_else(|| {
            std::env::var("STEINBERG_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0xC0FFEE)
}

fn load_graph(path: &FsPath) -> Result<Arc<Graph>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let g = Graph::parse(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Arc::new(g))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let limits = effective_limits(&cli);
    let machine = cli.machine;
    match &cli.verb {
        Verb::Analyze { graph } => analyze(&load_graph(graph)?, &limits, machine),
        Verb::Closure { graph, vertices } => closure(&load_graph(graph)?, vertices, machine),
        Verb::Cycles { graph } => cycles(&load_graph(graph)?, machine),
        Verb::Eval { graph, poly, cycle } => {
            eval(&load_graph(graph)?, poly, cycle.as_deref(), machine)
        }
        Verb::Eq { graph, left, right } => eq(&load_graph(graph)?, left, right, machine),
        Verb::Image { graph, element } => image(&load_graph(graph)?, element, machine),
        Verb::Congruences { algebra, max_count } => {
            congruences(algebra, *max_count, &limits, machine)
        }
        Verb::Verify => verify(&limits, effective_seed(&cli), machine),
        Verb::Demo { name } => demo(name, machine),
    }
}

fn name_list(g: &Graph, vs: impl Iterator<Item = usize>) -> String {
    let names: Vec<&str> = vs.map(|v| g.vertex_name(v)).collect();
    if names.is_empty() {
        "(none)".to_string()
    } else {
        names.join(",")
    }
}

fn set_display(g: &Graph, set: &BTreeSet<usize>) -> String {
    let names: Vec<&str> = set.iter().map(|&v| g.vertex_name(v)).collect();
    format!("{{{}}}", names.join(","))
}

fn analyze(g: &Arc<Graph>, limits: &Limits, machine: bool) -> Result<(), Failure> {
    let n = g.vertex_count();
    let mut sinks = Vec::new();
    let mut regular = Vec::new();
    let mut emitters = Vec::new();
    for v in 0..n {
        let decls = g.out_decls(v);
        if decls.is_empty() {
            sinks.push(v);
        } else if decls.iter().any(|&d| g.is_bundle(d)) {
            emitters.push(v);
        } else {
            regular.push(v);
        }
    }
    let cycles = enumerate_cycles(g);
    let exitless = condition_l(g);
    let boolean = instantiate_semiring("B").map_err(usage)?;
    let verdict = steinberg_simple_decision(g, &boolean).map_err(usage)?;
    let field_simple = verdict.only_trivial_hs && verdict.condition_l;
    let hs = all_hereditary_saturated(g, limits);

    let mut satisfied = Vec::new();
    if verdict.coefficients_ok {
        satisfied.push("1");
    }
    if verdict.only_trivial_hs {
        satisfied.push("2");
    }
    if verdict.condition_l {
        satisfied.push("3");
    }
    let reason = format!("conditions({})", satisfied.join(","));

    if machine {
        println!("vertices={n}");
        println!("edge_decls={}", g.edge_decl_count());
        println!("sinks={}", name_list(g, sinks.iter().copied()).replace("(none)", ""));
        println!(
            "regular={}",
            name_list(g, regular.iter().copied()).replace("(none)", "")
        );
        println!(
            "infinite_emitters={}",
            name_list(g, emitters.iter().copied()).replace("(none)", "")
        );
        println!("row_finite={}", g.is_row_finite());
        let cycle_texts: Vec<String> =
            cycles.iter().map(|c| g.format_path(&c.path)).collect();
        println!("cycles={}", cycle_texts.join("|"));
        println!("condition_l={}", exitless.is_none());
        match &hs {
            Ok(sets) => {
                let parts: Vec<String> = sets.iter().map(|s| set_display(g, s)).collect();
                println!("hs={}", parts.join(","));
            }
            Err(_) => println!("hs=skipped"),
        }
        println!("simple={}", verdict.simple);
        println!("simple_over_field={field_simple}");
        println!("reason={reason}");
    } else {
        println!("{n} vertices, {} edge declarations", g.edge_decl_count());
        println!("sinks: {}", name_list(g, sinks.iter().copied()));
        println!("regular vertices: {}", name_list(g, regular.iter().copied()));
        println!(
            "infinite emitters: {}",
            name_list(g, emitters.iter().copied())
        );
        println!(
            "row-finite: {}",
            if g.is_row_finite() { "yes" } else { "no" }
        );
        if cycles.is_empty() {
            println!("cycles: (none)");
        } else {
            let texts: Vec<String> = cycles.iter().map(|c| g.format_path(&c.path)).collect();
            println!("cycles: {}", texts.join(", "));
        }
        match &exitless {
            None => println!("condition (L): holds"),
            Some(c) => println!(
                "condition (L): fails, cycle {} has no exit",
                g.format_path(&c.path)
            ),
        }
        match &hs {
            Ok(sets) => {
                let parts: Vec<String> = sets.iter().map(|s| set_display(g, s)).collect();
                println!("hereditary saturated subsets: {}", parts.join(", "));
            }
            Err(e) => println!("hereditary saturated subsets: skipped ({e})"),
        }
        println!(
            "congruence-simple over B: {}",
            if verdict.simple { "YES" } else { "NO" }
        );
        println!(
            "congruence-simple over a field: {}",
            if field_simple { "YES" } else { "NO" }
        );
        println!("satisfied: {reason}");
    }
    Ok(())
}

fn closure(g: &Arc<Graph>, vertices: &[String], machine: bool) -> Result<(), Failure> {
    let mut seed = BTreeSet::new();
    for name in vertices {
        seed.insert(g.vertex(name).map_err(usage)?);
    }
    let closed = hs_closure(g, &seed);
    if machine {
        let names: Vec<&str> = closed.iter().map(|&v| g.vertex_name(v)).collect();
        println!("closure={}", names.join(","));
    } else {
        println!("hereditary saturated closure: {}", set_display(g, &closed));
    }
    Ok(())
}

fn cycles(g: &Arc<Graph>, machine: bool) -> Result<(), Failure> {
    let found = enumerate_cycles(g);
    if machine {
        println!("cycle_count={}", found.len());
        for c in &found {
            println!("cycle={}", g.format_path(&c.path));
        }
    } else if found.is_empty() {
        println!("no cycles");
    } else {
        println!("{} cycles:", found.len());
        for c in &found {
            let exit = if cycle_has_exit(g, c) {
                "has an exit"
            } else {
                "no exit"
            };
            println!("  {} ({exit})", g.format_path(&c.path));
        }
    }
    Ok(())
}

fn cycle_has_exit(g: &Graph, cycle: &Cycle) -> bool {
    let on_cycle: BTreeSet<usize> = cycle.path.edges.iter().map(|e| e.decl_index()).collect();
    cycle.path.edges.iter().any(|e| {
        let v = g.source_of(e);
        g.out_decls(v)
            .iter()
            .any(|&d| g.is_bundle(d) || !on_cycle.contains(&d))
    })
}

fn eval(
    g: &Arc<Graph>,
    poly: &str,
    cycle: Option<&str>,
    machine: bool,
) -> Result<(), Failure> {
    let poly = LaurentPoly::parse(poly).map_err(usage)?;
    let cycle = match cycle {
        Some(text) => {
            let path = g.parse_path(text).map_err(usage)?;
            if path.start != path.end || path.edges.is_empty() {
                return Err(Failure::Usage(format!(
                    "'{text}' is not a cycle: it must be a nonempty path returning to its start"
                )));
            }
            Cycle { path }
        }
        None => enumerate_cycles(g)
            .into_iter()
            .next()
            .ok_or_else(|| Failure::Usage("the graph has no cycle to evaluate at".into()))?,
    };
    let term = steinberg_core::lpa::eval_cycle_poly(g, &cycle, &poly).map_err(usage)?;
    if machine {
        println!("cycle={}", g.format_path(&cycle.path));
        println!("result={}", term.display(g));
    } else {
        println!(
            "at cycle {}: {}",
            g.format_path(&cycle.path),
            term.display(g)
        );
    }
    Ok(())
}

fn eq(g: &Arc<Graph>, left: &str, right: &str, machine: bool) -> Result<(), Failure> {
    let a = parse_element_expr(g, left).map_err(Failure::Usage)?;
    let b = parse_element_expr(g, right).map_err(Failure::Usage)?;
    let equal = match (&a, &b) {
        (ExprValue::Term(x), ExprValue::Term(y)) => {
            if !g.is_row_finite() {
                return Err(Failure::OutOfScope(
                    "equality in the path algebra is only decided for row-finite graphs; \
                     compare cylinder elements instead"
                        .into(),
                ));
            }
            lpa_equals(g, x, y).map_err(usage)?
        }
        _ => {
            let x = a.into_elt(g).map_err(Failure::Usage)?;
            let y = b.into_elt(g).map_err(Failure::Usage)?;
            x.equals(&y).map_err(usage)?
        }
    };
    if machine {
        println!("equal={equal}");
    } else {
        println!("{equal}");
    }
    Ok(())
}

fn image(g: &Arc<Graph>, element: &str, machine: bool) -> Result<(), Failure> {
    let v = parse_element_expr(g, element).map_err(Failure::Usage)?;
    let elt = v.into_elt(g).map_err(Failure::Usage)?;
    let in_image = elt.exclusion_free();
    if machine {
        println!("in_image={in_image}");
    } else if in_image {
        println!("true");
    } else {
        println!(
            "false: the canonical form keeps an exclusion at an infinite emitter, \
             so no path algebra element maps onto it"
        );
    }
    Ok(())
}

fn builtin_algebra(name: &str, limits: &Limits) -> Result<FiniteAlgebra, Failure> {
    match name {
        "M1" => matrix_semiring(1, limits).map_err(usage),
        "M2" => matrix_semiring(2, limits).map_err(usage),
        "M3" => matrix_semiring(3, limits).map_err(usage),
        "B2" => function_algebra(2, limits).map_err(usage),
        "B3" => function_algebra(3, limits).map_err(usage),
        "BZ2" => group_semiring(&GroupTable::cyclic(2), limits).map_err(usage),
        "BZ3" => group_semiring(&GroupTable::cyclic(3), limits).map_err(usage),
        "BZ4" => group_semiring(&GroupTable::cyclic(4), limits).map_err(usage),
        other => Err(Failure::Usage(format!(
            "unknown algebra '{other}'; available: M1, M2, M3, B2, B3, BZ2, BZ3, BZ4"
        ))),
    }
}

fn congruences(
    name: &str,
    max_count: usize,
    limits: &Limits,
    machine: bool,
) -> Result<(), Failure> {
    let alg = builtin_algebra(name, limits)?;
    let all = all_congruences(&alg, max_count).map_err(usage)?;
    let witness = all.iter().find(|c| !c.is_trivial());
    if machine {
        println!("algebra={}", alg.name());
        println!("carrier={}", alg.size());
        println!("congruence_count={}", all.len());
        println!("simple={}", witness.is_none());
        if let Some(w) = witness {
            let blocks: Vec<String> = w
                .blocks()
                .iter()
                .map(|b| {
                    let items: Vec<String> = b.iter().map(|x| x.to_string()).collect();
                    format!("{{{}}}", items.join(","))
                })
                .collect();
            println!("witness={}", blocks.join(","));
        }
    } else {
        println!("algebra {} with carrier {}", alg.name(), alg.size());
        println!("congruences: {}", all.len());
        match witness {
            None => println!("congruence-simple: every congruence is trivial"),
            Some(w) => {
                println!("not congruence-simple; a nontrivial witness:");
                println!("{}", w.describe(&alg));
            }
        }
    }
    Ok(())
}

fn verify(limits: &Limits, seed: u64, machine: bool) -> Result<(), Failure> {
    let lines = run_all(limits, seed);
    let failed = lines.iter().filter(|l| !l.passed).count();
    if machine {
        for (i, line) in lines.iter().enumerate() {
            println!(
                "suite_{}={}:{}",
                i + 1,
                if line.passed { "pass" } else { "fail" },
                line.name
            );
        }
        println!("passed={}", lines.len() - failed);
        println!("failed={failed}");
    } else {
        for line in &lines {
            println!("{}", line.render());
        }
        println!(
            "{} of {} suites passed",
            lines.len() - failed,
            lines.len()
        );
    }
    if failed > 0 {
        return Err(Failure::Usage(format!("{failed} suites failed")));
    }
    Ok(())
}

fn demo(name: &str, _machine: bool) -> Result<(), Failure> {
    match name {
        "rose-omega" => {
            for line in rose_omega_demo().map_err(usage)? {
                println!("{line}");
            }
            Ok(())
        }
        other => Err(Failure::Usage(format!(
            "unknown demo '{other}'; available: rose-omega"
        ))),
    }
}
