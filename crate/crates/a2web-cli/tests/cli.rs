use std::path::PathBuf;
use std::process::{Command, Output};

use a2web::invariants::{jones_torus_laurent, ColoredLinkSpec};
use a2web::tails::tail_series;
use a2web::twist::{parallel_full, Orientation};
use a2web::webcore::{build_web, evaluate_closed};
use a2web::QLaurent;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_a2web")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn laurent_from_json(v: &Value) -> QLaurent {
    QLaurent::from_terms(v.as_array().unwrap().iter().map(|p| {
        let p = p.as_array().unwrap();
        (p[0].as_i64().unwrap() as i32, p[1].as_i64().unwrap())
    }))
}

fn machine(args: &[&str]) -> Value {
    let mut a = vec!["--format", "machine"];
    a.extend_from_slice(args);
    let o = run(&a);
    assert!(o.status.success(), "{:?}", o);
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn jones_matches_library() {
    let o = run(&["jones", "--orientation", "parallel", "--m", "1", "--s", "1", "--t", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let spec = ColoredLinkSpec::new(Orientation::Parallel, 1, 1, 1).unwrap();
    let want = jones_torus_laurent(&spec).unwrap();
    assert_eq!(stdout(&o), format!("{}\n{}\n", spec, want));
}

#[test]
fn machine_jones_round_trips() {
    for (orientation, kind) in [("parallel", Orientation::Parallel), ("antiparallel", Orientation::Antiparallel)] {
        for (m, s, t) in [(1, 1, 2), (2, 2, 2), (3, 1, 3)] {
            let v = machine(&["jones", "--orientation", orientation, "--m", &m.to_string(), "--s", &s.to_string(), "--t", &t.to_string()]);
            let spec = ColoredLinkSpec::new(kind, m, s, t).unwrap();
            assert_eq!(laurent_from_json(&v["terms"]), jones_torus_laurent(&spec).unwrap());
        }
    }
}

#[test]
fn tail_matches_library() {
    let v = machine(&["tail", "--orientation", "antiparallel", "--m", "1", "--order", "10"]);
    let want = tail_series(Orientation::Antiparallel, 1, 10).unwrap();
    assert_eq!(laurent_from_json(&v["terms"]), want.series);
    let o = run(&["tail", "--orientation", "antiparallel", "--m", "1", "--order", "10"]);
    assert!(stdout(&o).contains(&want.to_string()));
}

#[test]
fn twist_forms_are_reindexings() {
    let k = machine(&["twist", "--orientation", "parallel", "--s", "3", "--t", "2"]);
    let l = machine(&["twist", "--orientation", "parallel", "--s", "3", "--t", "2", "--form", "l"]);
    let full = parallel_full(3, 2);
    for e in k["entries"].as_array().unwrap() {
        let i = e["index"].as_u64().unwrap() as usize;
        assert_eq!(laurent_from_json(&e["terms"]), full.k_form.coeff(i));
    }
    for e in l["entries"].as_array().unwrap() {
        let i = e["index"].as_u64().unwrap() as usize;
        assert_eq!(laurent_from_json(&e["terms"]), full.l_form.coeff(i));
    }
}

#[test]
fn reduce_closed_and_open() {
    let v = machine(&["reduce", &data("theta.web")]);
    let text = std::fs::read_to_string(data("theta.web")).unwrap();
    let want = evaluate_closed(&build_web(&text).unwrap()).unwrap();
    assert_eq!(laurent_from_json(&v["scalar"]["num"]), *want.num());
    assert_eq!(laurent_from_json(&v["scalar"]["den"]), *want.den());

    let hopf = machine(&["reduce", &data("hopf.web")]);
    let spec = ColoredLinkSpec::new(Orientation::Parallel, 1, 1, 1).unwrap();
    assert_eq!(laurent_from_json(&hopf["scalar"]["num"]), jones_torus_laurent(&spec).unwrap());

    let sq = machine(&["reduce", &data("square.web")]);
    let terms = sq["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 2);
    for t in terms {
        assert!(build_web(t["web"].as_str().unwrap()).is_ok());
        assert_eq!(laurent_from_json(&t["coefficient"]["num"]), QLaurent::one());
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["verify", "--suite", "skein"],
        vec!["--format", "machine", "twist", "--orientation", "antiparallel", "--s", "2", "--t", "3", "--m", "2"],
        vec!["reduce", "tests/data/square.web"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout);
        assert!(a.status.success());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["jones", "--orientation", "parallel", "--m", "1", "--s", "1"]).status.code(), Some(2));
    assert_eq!(run(&["jones", "--orientation", "sideways", "--m", "1", "--s", "1", "--t", "1"]).status.code(), Some(2));
    assert_eq!(run(&["jones", "--orientation", "parallel", "--m", "1", "--s", "1", "--t", "1", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    // computation errors
    assert_eq!(run(&["jones", "--orientation", "parallel", "--m", "0", "--s", "1", "--t", "1"]).status.code(), Some(1));
    assert_eq!(run(&["reduce", "tests/data/does-not-exist.web"]).status.code(), Some(1));
    let o = run(&["frobnicate"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn verify_all_passes() {
    let v = machine(&["verify", "--suite", "all", "--max-color", "2", "--max-twists", "2"]);
    assert_eq!(v["passed"], Value::Bool(true));
    let suites: Vec<&str> = v["suites"].as_array().unwrap().iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(suites, ["qcomb", "skein", "clasp", "twist", "torus", "tails"]);
}
