use std::sync::LazyLock;

use jsonschema::JSONSchema;
use serde_json::Value;

use super::{execute, Execution};

static SCHEMA: LazyLock<JSONSchema> = LazyLock::new(|| {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/envelope.schema.json");
    let text = std::fs::read_to_string(path).expect("schema file");
    let schema: Value = serde_json::from_str(&text).expect("schema is JSON");
    JSONSchema::compile(&schema).expect("schema compiles")
});

fn ccov(args: &str) -> Execution {
    let argv: Vec<String> = std::iter::once("ccov").chain(args.split_whitespace()).map(String::from).collect();
    execute(&argv)
}

fn json_ok(args: &str) -> Value {
    let run = ccov(args);
    assert_eq!(run.code, 0, "{args}: {}", run.stderr);
    let v: Value = serde_json::from_str(&run.stdout).expect("stdout is JSON");
    if let Err(errors) = SCHEMA.validate(&v) {
        let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
        panic!("{args}: schema violations: {msgs:?}");
    }
    v
}

fn temp_path(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("ccov-unit-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn example_invocations() {
    let v = json_ok("invariants --base p2 --d 8");
    let p = &v["payload"];
    assert_eq!((p["p_g"].as_i64(), p["c1_sq"].as_i64(), p["mu"].as_i64()), (Some(45), Some(128), Some(267)));
    assert_eq!(v["command"], "invariants --base p2 --d 8");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));

    let v = json_ok("invariants --base fe --e 1 --a 5 --b 8");
    assert_eq!((v["payload"]["p_g"].as_i64(), v["payload"]["c1_sq"].as_i64()), (Some(39), Some(110)));

    let v = json_ok("audit --base fe --e 6 --a 1 --b 7");
    assert_eq!(v["payload"]["verdict"], false);
    let failing: Vec<&str> = v["payload"]["conditions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert!(failing.contains(&"C7"));
}

#[test]
fn every_json_command_matches_schema() {
    let svg = temp_path("fig.svg");
    for args in [
        "invariants --base fe --e 6 --a 1 --b 7".to_string(),
        "cohomology --base p2 --d -5".to_string(),
        "cohomology --base fe --e 3 --alpha -2 --beta 4".to_string(),
        "moduli-dim --base fe --e 0 --a 4 --b 8".to_string(),
        "audit --base p2 --d 1".to_string(),
        "geography --a 2 --x-max 30 --format json".to_string(),
        format!("figure --n 2 --out {}", svg.display()),
        "collisions --m 5 --bound 30".to_string(),
        "verify-examples".to_string(),
    ] {
        json_ok(&args);
    }
}

#[test]
fn exit_codes() {
    let run = ccov("invariants --base p2 --d 8 --unknown");
    assert_eq!(run.code, 1);
    assert!(run.stdout.is_empty());
    assert!(run.stderr.contains("Usage"));

    assert_eq!(ccov("invariants --base fe --e 1 --a 5").code, 1);
    assert_eq!(ccov("figure --n 1 --window 1,2,3 --out x.svg").code, 1);
    assert_eq!(ccov("figure --n 3 --out x.svg").code, 1);

    let run = ccov("moduli-dim --base fe --e 6 --a 1 --b 7");
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("C7"), "{}", run.stderr);
    assert_eq!(ccov("invariants --base fe --e 2 --a 1 --b 2").code, 2);
    assert_eq!(ccov("collisions --m 3 --bound 10").code, 2);
    assert_eq!(ccov("geography --a 0 --x-max 10").code, 2);

    assert_eq!(ccov("--help").code, 0);
}

#[test]
fn deterministic_output() {
    for args in
        ["audit --base fe --e 6 --a 2 --b 13", "geography --a 1 --x-max 20 --format csv", "collisions --m 4 --bound 50"]
    {
        let first = ccov(args);
        let second = ccov(args);
        assert_eq!(first.stdout, second.stdout);
        assert_eq!(first.code, second.code);
    }
}

#[test]
fn geography_formats() {
    let run = ccov("geography --a 1 --x-max 6 --format csv");
    assert_eq!(run.stdout, "x,y,kind,e,a,b,d,base\n5,4,point,0,1,1,,fe\n6,6,point,1,1,2,,fe\n");
    assert!(run.stderr.contains("(4, 2)"));

    let run = ccov("geography --a 1 --x-max 6 --no-f1 --format csv");
    assert_eq!(run.stdout, "x,y,kind,e,a,b,d,base\n5,4,point,0,1,1,,fe\n");

    let run = ccov("geography --a 2 --x-max 20 --format svg");
    assert!(run.stdout.starts_with("<?xml"));
    assert!(run.stdout.contains("data-line=\"l2\""));

    let out = temp_path("geo.csv");
    let run = ccov(&format!("geography --a 2 --x-max 20 --format csv --out {}", out.display()));
    assert_eq!(run.code, 0);
    assert!(run.stdout.is_empty());
    assert!(std::fs::read_to_string(out).unwrap().starts_with("x,y,kind"));
}

#[test]
fn collisions_flag_unverified_s_side() {
    let v = json_ok("collisions --m 5 --bound 20");
    let cands = v["payload"]["candidates"].as_array().unwrap();
    assert!(cands.iter().any(|c| c["x_prime"] == 6 && c["y"] == 8));
    assert!(cands.iter().all(|c| c["s_side_verified"] == false));
    assert!(!v["warnings"].as_array().unwrap().is_empty());

    let cfg = temp_path("feas.json");
    std::fs::write(&cfg, r#"{"name": "two-pairs", "allow": [[39, 110], [45, 128]], "verifies_s_side": true}"#).unwrap();
    let v = json_ok(&format!("collisions --m 4 --bound 60 --feas-config {}", cfg.display()));
    let pairs: Vec<(i64, i64)> = v["payload"]["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["x_prime"].as_i64().unwrap(), c["y"].as_i64().unwrap()))
        .collect();
    assert_eq!(pairs, vec![(39, 110), (45, 128)]);
    assert_eq!(v["payload"]["predicate"], "two-pairs");
    assert!(v["warnings"].as_array().unwrap().is_empty());

    std::fs::write(&cfg, r#"{"unknown_field": 1}"#).unwrap();
    assert_eq!(ccov(&format!("collisions --m 4 --bound 60 --feas-config {}", cfg.display())).code, 2);
}

#[test]
fn text_formats_are_readable() {
    let run = ccov("invariants --base fe --e 1 --a 5 --b 8 --format text");
    assert!(run.stdout.contains("p_g: 39"));
    assert!(run.stdout.contains("mu: 233"));
    let run = ccov("audit --base fe --e 6 --a 1 --b 7 --format text");
    assert!(run.stdout.contains("C7 [FAIL]"));
    let run = ccov("cohomology --base fe --e 2 --alpha -3 --beta -1 --format text");
    assert!(run.stdout.contains("h1: 6"));
}
