//! End-to-end checks of the `hamel` binary: pinned outputs, exit codes,
//! and the reload invariant for witness-produced model files.

use std::path::PathBuf;
use std::process::Command;
use std::{env, fs};

use hamel::linear::Vector;
use hamel::tower::{parse_expr, parse_model, render_model, AlphaCut, Cut, Model};

fn standard_tower() -> (Model, Vector, Vector, Vector) {
    let m = Model::new_hamel();
    let (m, h1) = m.adjoin_value(Some("h1"), Cut::below_weak(0, m.zero())).unwrap();
    let (m, h2) = m.adjoin_value(Some("h2"), Cut::below_weak(0, h1.clone())).unwrap();
    let acut = AlphaCut { alpha: h1.clone(), pivot: m.zero(), weak: true };
    let (m, t) = m.adjoin_ball(Some("t"), acut, Cut::below_weak(0, h2.clone())).unwrap();
    (m, h1, h2, t)
}

/// A scratch directory unique to one test, holding its model files.
fn workdir(test: &str) -> PathBuf {
    let dir = env::temp_dir().join(format!("hamel-cli-{}-{test}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_standard(dir: &PathBuf) -> PathBuf {
    let (m, _, _, _) = standard_tower();
    let path = dir.join("m1.model");
    fs::write(&path, render_model(&m)).unwrap();
    path
}

/// Runs the binary and returns exit code, stdout, stderr.
fn hamel(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hamel")).args(args).output().unwrap();
    (
        out.status.code().expect("terminated by signal"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn masked(report: &str) -> String {
    report
        .lines()
        .map(|line| match line.split_once(" elapsed_ms=") {
            Some((head, _)) => format!("{head} elapsed_ms=*"),
            None => line.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn eval_reports_the_pinned_valuation_fact() {
    let dir = workdir("eval");
    let model = write_standard(&dir);
    let (code, out, err) = hamel(&[
        "eval",
        model.to_str().unwrap(),
        "-e",
        "v(x) = h1",
        "--assign",
        "x = h2 + 5*t",
    ]);
    assert_eq!((code, out.as_str(), err.as_str()), (0, "true\n", ""));
}

#[test]
fn qe_prints_the_interval_reduction() {
    let (code, out, _) = hamel(&["qe", "-k", "2", "-e", "E x. (a <0 x & x <0 b & c <1 x)"]);
    assert_eq!((code, out.as_str()), (0, "a <0 b\n"));
}

#[test]
fn decide_prints_a_verdict() {
    let (code, out, _) = hamel(&["decide", "-e", "E x. 0 <0 x"]);
    assert_eq!((code, out.as_str()), (0, "true\n"));
    let (code, out, _) = hamel(&["decide", "-e", "E x. x <0 x"]);
    assert_eq!((code, out.as_str()), (0, "false\n"));
}

#[test]
fn model_check_describes_the_tower() {
    let dir = workdir("check");
    let model = write_standard(&dir);
    let (code, out, _) = hamel(&["model", "check", model.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "hamel model, 3 generators\n"));
}

#[test]
fn lab_run_emits_the_machine_line_and_is_stable() {
    let args = ["lab", "run", "axioms", "--trials", "2", "--seed", "7", "--machine"];
    let (code, out, _) = hamel(&args);
    assert_eq!(code, 0);
    assert!(out.starts_with("suite=axioms trials=2 failures=0 elapsed_ms="), "{out}");
    let (_, again, _) = hamel(&args);
    assert_eq!(masked(&out), masked(&again));
}

#[test]
fn witness_density_output_reloads_with_postcondition() {
    let dir = workdir("density");
    let model = write_standard(&dir);
    let out_path = dir.join("extended.model");
    let (code, out, err) = hamel(&[
        "witness",
        "density",
        model.to_str().unwrap(),
        "0",
        "h1",
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");

    let reloaded = parse_model(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let w = parse_expr(&reloaded, out.trim()).unwrap();
    let a = reloaded.zero();
    let b = parse_expr(&reloaded, "h1").unwrap();
    assert_eq!(reloaded.compare_vec(&a, &w, 0).unwrap(), std::cmp::Ordering::Less);
    assert_eq!(reloaded.compare_vec(&w, &b, 0).unwrap(), std::cmp::Ordering::Less);
    assert!(reloaded.is_value(&w).unwrap());

    let (code, out, _) = hamel(&["model", "check", out_path.to_str().unwrap()]);
    assert_eq!((code, out.as_str()), (0, "hamel model, 4 generators\n"));
}

#[test]
fn witness_independence_accepts_infinite_sentinels() {
    let dir = workdir("independence");
    let model = write_standard(&dir);
    let out_path = dir.join("extended.model");
    let (code, out, err) = hamel(&[
        "witness",
        "independence",
        model.to_str().unwrap(),
        "-inf",
        "h1",
        "0",
        "+inf",
        "-o",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");

    let reloaded = parse_model(&fs::read_to_string(&out_path).unwrap()).unwrap();
    let w = parse_expr(&reloaded, out.trim()).unwrap();
    let h1 = parse_expr(&reloaded, "h1").unwrap();
    assert_eq!(reloaded.compare_vec(&w, &h1, 0).unwrap(), std::cmp::Ordering::Less);
    assert_eq!(reloaded.compare_vec(&reloaded.zero(), &w, 1).unwrap(), std::cmp::Ordering::Less);
}

#[test]
fn values_lists_the_basis_and_value_set() {
    let dir = workdir("values");
    let model_path = write_standard(&dir);
    let args = ["values", model_path.to_str().unwrap(), "-e", "h1, h2 + 5*t"];
    let (code, out, err) = hamel(&args);
    assert_eq!(code, 0, "{err}");

    let (m, h1, h2, t) = standard_tower();
    let span = vec![h1, m.sum(&h2, &t.scale(&"5".parse().unwrap())).unwrap()];
    let basis = m.separated_basis(&span).unwrap();
    let values = m.subspace_values(&span).unwrap();
    let render = |vs: Vec<Vector>| {
        vs.iter().map(|v| hamel::tower::render_expr(&m, v)).collect::<Vec<_>>().join(", ")
    };
    let expected = format!(
        "basis: {}\nvalues: {}\n",
        render(basis),
        render(values.into_iter().collect())
    );
    assert_eq!(out, expected);

    let (_, again, _) = hamel(&args);
    assert_eq!(out, again);
}

#[test]
fn grammar_errors_exit_two_with_a_position() {
    let (code, _, err) = hamel(&["qe", "-e", "E x. (a <0 x &"]);
    assert_eq!(code, 2);
    assert!(err.contains("error"), "{err}");
    assert!(err.chars().any(|c| c.is_ascii_digit()), "no position in: {err}");
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, _) = hamel(&["frobnicate"]);
    assert_eq!(code, 2);

    let (code, _, err) = hamel(&["lab", "run", "nonsense"]);
    assert_eq!(code, 2);
    assert!(err.contains("nonsense"), "{err}");

    let (code, _, err) = hamel(&["eval", "missing.model", "-e", "0 = 0"]);
    assert_eq!(code, 2);
    assert!(err.contains("missing.model"), "{err}");
}
