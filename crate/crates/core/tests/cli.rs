use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn tsgreen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tsgreen")).args(args).output().expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = tsgreen(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn primordial_reports_witness() {
    let v = json_ok(&["primordial", "D7", "--field", "GF(2)"]);
    assert_eq!(v["result"]["is_primordial"], false);
    assert!(!v["result"]["witness"].as_array().unwrap().is_empty());
    assert_eq!(v["seed"], 0x5eed);
    assert_eq!(v["modulus"], serde_json::json!([0, 1]));
}

#[test]
fn imset_and_classify() {
    let v = json_ok(&["imset", "--field", "GF(2)", "--m", "7"]);
    assert_eq!(v["result"]["members"], serde_json::json!([1, 2, 4]));
    let v = json_ok(&["classify", "C1", "--field", "GF(2)"]);
    assert_eq!(v["result"]["is_k_dress"], true);
}

#[test]
fn outputs_are_reproducible() {
    let a = tsgreen(&["ts-basis", "S3", "--field", "GF(2)", "--emit-matrices"]);
    let b = tsgreen(&["ts-basis", "S3", "--field", "GF(2)", "--emit-matrices"]);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["dims"], serde_json::json!([1, 2, 2]));
    assert_eq!(v["result"]["matrices"].as_array().unwrap().len(), 4);
}

#[test]
fn modulus_override_is_recorded() {
    let v = json_ok(&["ts-basis", "C3", "--field", "GF(4)", "--modulus", "1,1,1"]);
    assert_eq!(v["modulus"], serde_json::json!([1, 1, 1]));
    assert_eq!(v["result"]["dims"], serde_json::json!([1, 1, 1]));
    let out = tsgreen(&["ts-basis", "C3", "--field", "GF(4)", "--modulus", "0,0,1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn certificate_and_hypothesis_error() {
    let v = json_ok(&["certificate", "13:2^2@5", "--field", "GF(3)"]);
    assert_eq!(v["result"]["perm_dim"], 13);
    assert_eq!(v["result"]["trivial_multiplicity"], 1);
    let out = tsgreen(&["certificate", "3:2@2", "--field", "GF(2)"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "Hypothesis");
}

#[test]
fn domain_and_usage_errors() {
    let out = tsgreen(&["classify", "C7:C3@3", "--field", "GF(2)"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "BadAction");
    let out = tsgreen(&["classify", "Z7", "--field", "GF(2)"]);
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert!(err["message"].as_str().unwrap().contains("Z7"));
    assert_eq!(tsgreen(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(tsgreen(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_theorem_catalog_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# small run\nS3 GF(2)\nS3 GF(4)\nD7 GF(2)\nQ8 GF(2)").unwrap();
    let path = f.path().to_str().unwrap();
    let out = tsgreen(&["verify-theorem", "--catalog", path, "--format", "csv", "--threads", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("# tsgreen") && lines[0].contains("seed=24301"));
    assert_eq!(lines[1], "group,order,p,field,k_dress,primordial,agreement");
    assert_eq!(lines[2], "S3,6,2,GF(2),true,true,true");
    assert_eq!(lines[3], "S3,6,2,GF(4),false,false,true");
    assert_eq!(lines.len(), 6);
}

/// Checks `required`, `properties`, `items`, `type` and `$ref` of the shared
/// schema against a value (enough to catch drift between code and docs).
fn conforms(schema: &Value, root: &Value, v: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = schema.get("$ref").and_then(Value::as_str) {
        let name = r.trim_start_matches("#/$defs/");
        return conforms(&root["$defs"][name], root, v, path);
    }
    if let Some(options) = schema.get("oneOf").and_then(Value::as_array) {
        let ok = options.iter().filter(|o| conforms(o, root, v, path).is_ok()).count();
        return if ok >= 1 { Ok(()) } else { Err(format!("{path}: matches no alternative")) };
    }
    if let Some(t) = schema.get("type") {
        let types: Vec<&str> = match t {
            Value::String(s) => vec![s.as_str()],
            Value::Array(a) => a.iter().filter_map(Value::as_str).collect(),
            _ => vec![],
        };
        let actual = match v {
            Value::Null => "null",
            Value::Bool(_) => "boolean",
            Value::Number(n) if n.is_i64() || n.is_u64() => "integer",
            Value::Number(_) => "number",
            Value::String(_) => "string",
            Value::Array(_) => "array",
            Value::Object(_) => "object",
        };
        if !types.contains(&actual) {
            return Err(format!("{path}: expected {types:?}, found {actual}"));
        }
    }
    if let (Some(req), Value::Object(map)) = (schema.get("required").and_then(Value::as_array), v) {
        for key in req.iter().filter_map(Value::as_str) {
            if !map.contains_key(key) {
                return Err(format!("{path}: missing `{key}`"));
            }
        }
    }
    if let (Some(props), Value::Object(map)) = (schema.get("properties").and_then(Value::as_object), v) {
        for (key, sub) in props {
            if let Some(x) = map.get(key) {
                conforms(sub, root, x, &format!("{path}.{key}"))?;
            }
        }
    }
    if let (Some(items), Value::Array(arr)) = (schema.get("items"), v) {
        for (i, x) in arr.iter().enumerate() {
            conforms(items, root, x, &format!("{path}[{i}]"))?;
        }
    }
    Ok(())
}

#[test]
fn outputs_match_the_shared_schema() {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../docs/output.schema.json")).unwrap();
    let schema: Value = serde_json::from_str(&text).unwrap();
    let runs: [(&[&str], &str); 8] = [
        (&["classify", "D7", "--field", "GF(2)"], "classify"),
        (&["imset", "--field", "GF(3)", "--m", "13"], "imset"),
        (&["ts-basis", "S3", "--field", "GF(2)", "--emit-matrices"], "ts_basis"),
        (&["decompose", "A4", "--field", "GF(2)", "--subgroup", "1"], "decompose"),
        (&["primordial", "S3", "--field", "GF(2)"], "primordial"),
        (&["primordial", "S3", "--field", "GF(4)"], "primordial"),
        (&["certificate", "7:2@6", "--field", "GF(2)"], "certificate"),
        (&["verify-theorem", "--catalog", concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/small.catalog")], "verify_theorem"),
    ];
    for (args, def) in runs {
        let v = json_ok(args);
        conforms(&schema, &schema, &v, "$").unwrap();
        conforms(&schema["$defs"][def], &schema, &v["result"], "$.result").unwrap();
    }
    let err: Value = serde_json::from_slice(&tsgreen(&["primordial", "S9", "--field", "GF(2)"]).stderr).unwrap();
    conforms(&schema["$defs"]["error"], &schema, &err, "$").unwrap();
}
