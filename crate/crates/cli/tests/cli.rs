use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ica(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ica")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = ica(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn validator(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn assert_valid(name: &str, doc: &Value) {
    let v = validator(name);
    let errors: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}\n{doc:#}");
}

fn code(args: &[&str]) -> i32 {
    ica(args).status.code().unwrap()
}

#[test]
fn bounds_d6() {
    let b = json(&["bounds", "D6", "--q", "2"]);
    assert_eq!(b["lower"]["value"], 5);
    assert_eq!(b["upper"]["value"], 7);
    let t = stdout(&["bounds", "D6", "--q", "2"]);
    assert!(t.contains("lower:         5\n") && t.contains("upper:         7\n"), "{t}");
}

#[test]
fn order_c4() {
    let o = json(&["order", "C4", "--q", "2"]);
    assert_eq!(o["ica"]["exact"], "1536");
    assert_eq!(o["ca"]["exact"], "65536");
    assert!(stdout(&["order", "C4", "--q", "2"]).contains("ica_order:     1536\n"));
}

#[test]
fn bounds_q8_dedekind() {
    let b = json(&["bounds", "Q8", "--q", "2"]);
    assert_eq!(b["upper"]["value"], 12);
    assert_eq!(b["upper"]["method"], "dedekind");
    assert_eq!(json(&["bounds", "Q8", "--q", "3"])["upper"]["value"], 16);
}

#[test]
fn oracle_fills_exact_rank() {
    let b = json(&["bounds", "C4", "--q", "2", "--oracle"]);
    assert_eq!(b["exact"], 4);
    assert_eq!(b["oracle"]["outcome"], "exact");
    assert_valid("bounds", &b);
    let r = json(&["rank", "V4", "--q", "2"]);
    assert_eq!(r["rank"], 7);
    assert_valid("rank", &r);
}

#[test]
fn rank_of_groups() {
    for (g, k) in [("C1", 0), ("C6", 1), ("S4", 2), ("V4", 2), ("C2xC2xC2", 3), ("W(C2,2)", 2)] {
        let r = json(&["rank", g]);
        assert_eq!(r["rank"], k, "{g}");
        assert_valid("rank", &r);
    }
}

#[test]
fn every_report_matches_its_schema() {
    let cases: &[(&str, &[&str])] = &[
        ("subgroups", &["subgroups", "S4"]),
        ("subgroups", &["subgroups", "C1"]),
        ("classes", &["classes", "D12"]),
        ("classes", &["classes", "Q8"]),
        ("alpha", &["alpha", "S3", "--q", "3"]),
        ("structure", &["structure", "D8", "--q", "2"]),
        ("structure", &["structure", "S4", "--q", "2"]),
        ("order", &["order", "S4", "--q", "2"]),
        ("order", &["order", "C2xC4", "--q", "3"]),
        ("bounds", &["bounds", "D8", "--q", "2"]),
        ("bounds", &["bounds", "D8", "--q", "2", "--oracle"]),
        ("bounds", &["bounds", "S4", "--q", "3"]),
        ("diverge", &["diverge", "Dinf", "--k", "6"]),
        ("diverge", &["diverge", "Z^2xC4xC9", "--q", "3", "--k", "3"]),
        ("diverge", &["diverge", "F2"]),
    ];
    for (schema, args) in cases {
        assert_valid(schema, &json(args));
    }
}

#[test]
fn orbit_dump_lines() {
    let text = stdout(&["alpha", "D8", "--q", "2", "--dump-orbits"]);
    let v = validator("orbit");
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 43);
    for l in &lines {
        assert!(v.is_valid(l), "{l}");
    }
    let total: u64 = lines.iter().map(|l| l["size"].as_u64().unwrap()).sum();
    assert_eq!(total, 256);
    let classes = json(&["classes", "D8"]);
    for l in &lines {
        let c = &classes["classes"][l["class_index"].as_u64().unwrap() as usize];
        assert_eq!(c["index"], l["size"]);
    }
}

#[test]
fn divergence_sequences() {
    let d = json(&["diverge", "Z", "--k", "8"]);
    let seq: Vec<u64> = d["stages"].as_array().unwrap().iter().map(|s| s["lower_bound"].as_u64().unwrap()).collect();
    assert_eq!(seq, (1..=8).collect::<Vec<_>>());
    let d = json(&["diverge", "Dinf", "--k", "6"]);
    let seq: Vec<u64> = d["stages"].as_array().unwrap().iter().map(|s| s["lower_bound"].as_u64().unwrap()).collect();
    assert_eq!(seq, vec![1, 2, 5, 8, 11, 14]);
}

#[test]
fn tsv_has_one_header_and_uniform_rows() {
    let t = stdout(&["bounds", "S4", "--q", "2", "--format", "tsv"]);
    let lines: Vec<&str> = t.lines().collect();
    assert!(lines[0].starts_with("group\tq\tlower\tlower_method\tupper\tupper_method\texact\toracle\tside\tmethod"));
    let width = lines[0].split('\t').count();
    assert!(lines.iter().all(|l| l.split('\t').count() == width));
    assert!(lines[1..].iter().all(|l| l.starts_with("S4\t2\t")));
}

#[test]
fn output_is_deterministic() {
    let runs: &[&[&str]] = &[
        &["classes", "S4", "--format", "json"],
        &["alpha", "C6", "--q", "3", "--dump-orbits"],
        &["structure", "D12", "--q", "3", "--format", "tsv"],
        &["bounds", "C3", "--q", "2", "--oracle"],
        &["rank", "D8"],
        &["diverge", "Dinf", "--k", "9"],
    ];
    for args in runs {
        assert_eq!(stdout(args), stdout(args), "{args:?}");
    }
    assert_eq!(code(&["order", "S4", "--assert-deterministic"]), 0);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["order", "X9"]), 2);
    assert_eq!(code(&["order", "C4", "--q", "1"]), 2);
    assert_eq!(code(&["diverge", "Q"]), 2);
    assert_eq!(code(&["diverge", "Z", "--k", "0"]), 2);
    assert_eq!(code(&["nonsense"]), 2);
    assert_eq!(code(&["classes", "S5", "--max-lattice-order", "60"]), 3);
    assert_eq!(code(&["alpha", "S4", "--q", "3", "--dump-orbits"]), 3);
    assert_eq!(code(&["rank", "D8", "--q", "2"]), 3);
    assert_eq!(code(&["order", "C5000"]), 3);
    let out = ica(&["order", "X9"]);
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
}

#[test]
fn thread_count_from_environment() {
    let run = |n: &str| {
        Command::new(env!("CARGO_BIN_EXE_ica"))
            .args(["verify", "fast", "--format", "json"])
            .env("ICA_THREADS", n)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0), "{}", String::from_utf8_lossy(&one.stderr));
    assert_eq!(one.stdout, four.stdout);
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    assert_valid("verify", &v);
    assert_eq!(v["passed_count"], 9);
    assert_eq!(run("zero").status.code(), Some(2));
}
