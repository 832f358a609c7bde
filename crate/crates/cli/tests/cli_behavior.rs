//! End-to-end behavior of the `lcl` binary: exit codes, determinism, and
//! conformance of every JSON artifact to the schemas shipped in `schemas/`.

use std::collections::HashMap;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn lcl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn schema(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Minimal JSON-schema checker covering the subset the shipped schemas use:
/// type, required, properties, items, $ref into #/definitions, const, enum,
/// and the integer-string pattern.
fn validate(schema_root: &Value, node: &Value, schema_node: &Value, path: &str) {
    let mut schema_node = schema_node;
    if let Some(r) = schema_node.get("$ref").and_then(Value::as_str) {
        let key = r
            .strip_prefix("#/definitions/")
            .unwrap_or_else(|| panic!("unsupported $ref {r}"));
        schema_node = &schema_root["definitions"][key];
    }
    if let Some(ty) = schema_node.get("type").and_then(Value::as_str) {
        let ok = match ty {
            "object" => node.is_object(),
            "array" => node.is_array(),
            "string" => node.is_string(),
            "integer" => node.is_i64() || node.is_u64(),
            "number" => node.is_number(),
            "boolean" => node.is_boolean(),
            other => panic!("unsupported type {other}"),
        };
        assert!(ok, "{path}: expected {ty}, got {node}");
    }
    if let Some(c) = schema_node.get("const") {
        assert_eq!(node, c, "{path}: const mismatch");
    }
    if let Some(e) = schema_node.get("enum").and_then(Value::as_array) {
        assert!(e.contains(node), "{path}: {node} not in enum");
    }
    if let Some(p) = schema_node.get("pattern").and_then(Value::as_str) {
        assert_eq!(p, "^-?[0-9]+$", "only the integer pattern is used");
        let s = node.as_str().unwrap();
        let body = s.strip_prefix('-').unwrap_or(s);
        assert!(
            !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit()),
            "{path}: {s:?} is not a decimal integer string"
        );
    }
    if let Some(req) = schema_node.get("required").and_then(Value::as_array) {
        for key in req {
            let key = key.as_str().unwrap();
            assert!(
                node.get(key).is_some(),
                "{path}: missing required field {key}"
            );
        }
    }
    if let Some(props) = schema_node.get("properties").and_then(Value::as_object) {
        for (key, sub) in props {
            if let Some(child) = node.get(key) {
                validate(schema_root, child, sub, &format!("{path}.{key}"));
            }
        }
    }
    if let Some(items) = schema_node.get("items") {
        if let Some(arr) = node.as_array() {
            for (i, child) in arr.iter().enumerate() {
                validate(schema_root, child, items, &format!("{path}[{i}]"));
            }
        }
    }
}

fn assert_valid(schema_name: &str, text: &str) -> Value {
    let root = schema(schema_name);
    let value: Value = serde_json::from_str(text).unwrap_or_else(|e| {
        panic!("invalid JSON for {schema_name}: {e}\n{text}");
    });
    validate(&root, &value, &root, "$");
    value
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let a = lcl(&["girth-sum", "--frame", "0,0,0,1,1,0", "--k", "512"]);
    let b = lcl(&["girth-sum", "--frame", "0,0,0,1,1,0", "--k", "512"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    // results do not depend on the thread count
    let t1 = lcl(&["equidist", "--m", "2", "--n", "120", "--domain1", "tri:1", "--domain2", "tri:3/2", "--threads", "1"]);
    let t4 = lcl(&["equidist", "--m", "2", "--n", "120", "--domain1", "tri:1", "--domain2", "tri:3/2", "--threads", "4"]);
    assert!(t1.status.success());
    assert_eq!(t1.stdout, t4.stdout);
}

#[test]
fn usage_errors_exit_one() {
    // n too small for c: the greedy construction has no vectors to select
    let r = lcl(&["jarnik", "--frame", "0,0,0,1,1,0", "--n", "100", "--c", "0.01"]);
    assert_eq!(r.status.code(), Some(1));

    let r = lcl(&["equidist", "--m", "1", "--n", "100", "--domain1", "tri:1", "--domain2", "tri:1", "--oracle"]);
    assert_eq!(r.status.code(), Some(1));

    let r = lcl(&["equidist", "--m", "1", "--n", "10", "--domain1", "disc:1", "--domain2", "tri:1"]);
    assert_eq!(r.status.code(), Some(1));

    let r = lcl(&["girth-sum", "--frame", "0,0,1,1,2,2", "--k", "5"]);
    assert_eq!(r.status.code(), Some(1)); // collinear frame

    let r = lcl(&["nonsense"]);
    assert_eq!(r.status.code(), Some(1));
}

#[test]
fn construction_failures_exit_two_with_json() {
    // admissible set too sparse for the certificate
    let r = lcl(&["synth", "--series", "geometric:0.5", "--stages", "1", "--admissible", "list:1", "--out", "/dev/null"]);
    assert_eq!(r.status.code(), Some(2));
    let err_line = String::from_utf8_lossy(&r.stderr);
    let v = assert_valid("error.schema.json", err_line.trim());
    assert_eq!(v["kind"], "search");
}

#[test]
fn jarnik_json_conforms_to_schema() {
    let r = lcl(&["jarnik", "--frame", "0,0,0,1,1,0", "--n", "10000", "--c", "0.01", "--verify"]);
    assert!(r.status.success());
    let v = assert_valid("jarnik.schema.json", &String::from_utf8_lossy(&r.stdout));
    assert_eq!(v["certificate"]["verified"], Value::Bool(true));
    assert!(v["certificate"]["intermediate_count"].as_u64().unwrap() >= 4);
}

#[test]
fn curve_json_conforms_and_replays() {
    let dir = std::env::temp_dir().join("lcl-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("replay-curve.json");
    let path_str = path.to_str().unwrap();
    let r = lcl(&["synth", "--series", "geometric:0.5", "--stages", "2", "--out", path_str]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    let v = assert_valid("curve.schema.json", &text);

    // counting the curve at its own q1 reproduces at least the certificate
    let q1 = v["stages"][0]["q"].as_u64().unwrap();
    let c1 = v["stages"][0]["c"].as_f64().unwrap();
    let r = lcl(&["count", "--curve", path_str, "--n", &q1.to_string()]);
    assert!(r.status.success());
    let count: f64 = String::from_utf8_lossy(&r.stdout).trim().parse().unwrap();
    assert!(count >= c1 * (q1 as f64).powf(2.0 / 3.0));

    // deterministic synthesis: running again writes identical bytes
    let path2 = dir.join("replay-curve-2.json");
    let r2 = lcl(&["synth", "--series", "geometric:0.5", "--stages", "2", "--out", path2.to_str().unwrap()]);
    assert!(r2.status.success());
    assert_eq!(text, std::fs::read_to_string(&path2).unwrap());
    assert_eq!(r.stdout, lcl(&["count", "--curve", path_str, "--n", &q1.to_string()]).stdout);
}

#[test]
fn cf_suitable_json_conforms_both_ways() {
    let hit = lcl(&["cf-suitable", "--alpha", "0.414213562373095", "--eps", "0.3", "--bound", "1000000"]);
    assert!(hit.status.success());
    let v = assert_valid("suitable_triangle.schema.json", &String::from_utf8_lossy(&hit.stdout));
    assert_eq!(v["found"], Value::Bool(true));

    // bounded quotients at a harsh eps and tiny bound: not found, exit 0
    let miss = lcl(&["cf-suitable", "--alpha", "0.618033988749894", "--eps", "0.05", "--bound", "100"]);
    assert!(miss.status.success());
    let v = assert_valid("suitable_triangle.schema.json", &String::from_utf8_lossy(&miss.stdout));
    assert_eq!(v["found"], Value::Bool(false));
}

#[test]
fn deficit_respects_the_seed_env() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_lcl"))
            .args(["deficit", "--frame", "0,0,0,1,1,0", "--n", "4000", "--c", "0.02"])
            .envs(HashMap::from([("LCL_SEED".to_string(), seed.to_string())]))
            .output()
            .unwrap()
    };
    let a = run("7");
    let b = run("7");
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let header = String::from_utf8_lossy(&a.stdout);
    assert!(header.starts_with("n,k,l_A,deficit"));
}
