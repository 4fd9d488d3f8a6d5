use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_steinberg");

fn graph(name: &str) -> String {
    format!("{}/../../graphs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("STEINBERG_MAX_CARRIER")
        .env_remove("STEINBERG_MAX_VERTICES")
        .env_remove("STEINBERG_SEED")
        .output()
        .expect("binary should run")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn analyze_reports_simpleness_of_the_two_loop_rose() {
    let out = run(&["analyze", &graph("R2.graph")]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("congruence-simple over B: YES"), "{text}");
    assert!(text.contains("congruence-simple over a field: YES"), "{text}");
    assert!(text.contains("satisfied: conditions(1,2,3)"), "{text}");
}

#[test]
fn analyze_machine_output_is_key_value_lines() {
    let out = run(&["--machine", "analyze", &graph("R2.graph")]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("simple=true"), "{text}");
    assert!(text.contains("reason=conditions(1,2,3)"), "{text}");
    assert!(text.contains("row_finite=true"), "{text}");
    assert!(text.contains("hs={},{v}"), "{text}");
    for line in text.lines() {
        assert!(line.contains('='), "machine line without '=': {line}");
    }
}

#[test]
fn analyze_flags_the_infinite_emitter_of_the_rose_bundle() {
    let out = run(&["--machine", "analyze", &graph("Romega.graph")]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("infinite_emitters=v"), "{text}");
    assert!(text.contains("row_finite=false"), "{text}");
    assert!(text.contains("simple=true"), "{text}");
}

#[test]
fn analyze_refuses_a_missing_file() {
    let out = run(&["analyze", "/no/such/file.graph"]);
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).starts_with("error:"));
}

#[test]
fn eq_confirms_the_two_loop_unit_decomposition() {
    let out = run(&["eq", &graph("R2.graph"), "v", "g.g* + h.h*"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "true");
}

#[test]
fn eq_separates_a_vertex_from_one_of_its_loop_projections() {
    let out = run(&["--machine", "eq", &graph("R2.graph"), "v", "g.g*"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "equal=false");
}

#[test]
fn eq_on_path_algebra_terms_needs_a_row_finite_graph() {
    let out = run(&["eq", &graph("Romega.graph"), "v", "v"]);
    assert_eq!(code_of(&out), 2);
    assert!(stderr_of(&out).contains("row-finite"), "{}", stderr_of(&out));
}

#[test]
fn eq_decides_cylinder_elements_over_the_rose_bundle() {
    let out = run(&[
        "eq",
        &graph("Romega.graph"),
        "Z(v; v)",
        "Z(v; v; ~es[0]) + Z(es[0]; es[0])",
    ]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "true");
}

#[test]
fn eq_reports_syntax_errors_with_a_column() {
    let out = run(&["eq", &graph("E2.graph"), "e.", "v"]);
    assert_eq!(code_of(&out), 1);
    assert!(
        stderr_of(&out).contains("syntax error at column 2"),
        "{}",
        stderr_of(&out)
    );
}

#[test]
fn image_rejects_a_punctured_emitter_cylinder() {
    let out = run(&["image", &graph("Romega.graph"), "Z(v; v; ~es[0])"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.starts_with("false"), "{text}");
    assert!(text.contains("infinite emitter"), "{text}");
}

#[test]
fn image_accepts_the_filled_emitter_combination() {
    let out = run(&[
        "--machine",
        "image",
        &graph("Romega.graph"),
        "Z(v; v; ~es[0]) + Z(es[0]; es[0])",
    ]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "in_image=true");
}

#[test]
fn cycles_lists_the_single_loop_and_its_exit_status() {
    let out = run(&["cycles", &graph("R1.graph")]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("1 cycles"), "{text}");
    assert!(text.contains("c (no exit)"), "{text}");

    let machine = run(&["--machine", "cycles", &graph("R2.graph")]);
    let text = stdout_of(&machine);
    assert!(text.contains("cycle_count=2"), "{text}");
    assert!(text.contains("cycle=g"), "{text}");
    assert!(text.contains("cycle=h"), "{text}");
}

#[test]
fn eval_substitutes_the_loop_into_a_laurent_polynomial() {
    let out = run(&["eval", &graph("R1.graph"), "1 + x"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "at cycle c: v + c");

    let machine = run(&["--machine", "eval", &graph("R1.graph"), "1 + x^-2"]);
    let text = stdout_of(&machine);
    assert!(text.contains("cycle=c"), "{text}");
    assert!(text.contains("result=v + c*.c*"), "{text}");
}

#[test]
fn eval_needs_a_cycle_to_evaluate_at() {
    let out = run(&["eval", &graph("E2.graph"), "1 + x"]);
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).contains("no cycle"), "{}", stderr_of(&out));
}

#[test]
fn closure_saturates_back_through_a_regular_vertex() {
    let out = run(&["--machine", "closure", &graph("E2.graph"), "w"]);
    assert_eq!(code_of(&out), 0);
    assert_eq!(stdout_of(&out).trim(), "closure=v,w");

    let bad = run(&["closure", &graph("E2.graph"), "zz"]);
    assert_eq!(code_of(&bad), 1);
    assert!(stderr_of(&bad).contains("unknown vertex"), "{}", stderr_of(&bad));
}

#[test]
fn congruences_finds_only_trivial_ones_on_a_matrix_algebra() {
    let out = run(&["--machine", "congruences", "M2"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("congruence_count=2"), "{text}");
    assert!(text.contains("simple=true"), "{text}");
}

#[test]
fn congruences_exhibits_a_witness_on_the_group_semiring() {
    let out = run(&["congruences", "BZ2"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("not congruence-simple"), "{text}");
    assert!(text.contains("congruences: 3"), "{text}");

    let bad = run(&["congruences", "M9"]);
    assert_eq!(code_of(&bad), 1);
    assert!(stderr_of(&bad).contains("unknown algebra"), "{}", stderr_of(&bad));
}

#[test]
fn verify_runs_every_suite_and_passes() {
    let out = run(&["--machine", "--max-carrier", "4096", "verify"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("passed=12"), "{text}");
    assert!(text.contains("failed=0"), "{text}");
}

#[test]
fn demo_walks_the_rose_bundle_story() {
    let out = run(&["demo", "rose-omega"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("congruence-simple"), "{text}");
    assert!(text.contains("not onto") || text.contains("not surjective") || text.contains("but not onto"), "{text}");

    let bad = run(&["demo", "nope"]);
    assert_eq!(code_of(&bad), 1);
    assert!(stderr_of(&bad).contains("unknown demo"), "{}", stderr_of(&bad));
}

#[test]
fn usage_errors_exit_with_one_and_help_with_zero() {
    let bad = run(&["nonsense"]);
    assert_eq!(code_of(&bad), 1);

    let help = run(&["--help"]);
    assert_eq!(code_of(&help), 0);
    assert!(stdout_of(&help).contains("steinberg"));
}

#[test]
fn vertex_limit_from_the_environment_skips_subset_enumeration() {
    let out = Command::new(BIN)
        .args(["--machine", "analyze", &graph("E2.graph")])
        .env("STEINBERG_MAX_VERTICES", "1")
        .env_remove("STEINBERG_MAX_CARRIER")
        .output()
        .expect("binary should run");
    assert_eq!(code_of(&out), 0);
    assert!(stdout_of(&out).contains("hs=skipped"), "{}", stdout_of(&out));

    let flag = run(&["--machine", "--max-vertices", "1", "analyze", &graph("E2.graph")]);
    assert!(stdout_of(&flag).contains("hs=skipped"), "{}", stdout_of(&flag));
}
