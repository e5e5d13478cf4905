//! Helpers shared by the CLI integration tests: running the binary and a
//! validator for the JSON Schema keywords used in `tests/schemas`.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.stdout)
            .unwrap_or_else(|e| panic!("stdout is not JSON ({e}):\n{}", self.stdout))
    }
}

fn finish(out: Output) -> Run {
    Run {
        code: out.status.code().expect("process exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

pub fn gbt(args: &[&str]) -> Run {
    gbt_env(args, &[])
}

pub fn gbt_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gbt"));
    cmd.args(args).env_remove("GBT_MAX_VERTICES");
    for (k, v) in env {
        cmd.env(k, v);
    }
    finish(cmd.output().expect("spawn gbt"))
}

pub fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/schemas")
        .join(format!("{name}.json"));
    let raw = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    serde_json::from_str(&raw).unwrap()
}

fn type_matches(expected: &str, v: &Value) -> bool {
    match expected {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.is_i64() || v.is_u64(),
        other => panic!("unsupported schema type {other:?}"),
    }
}

/// Validates `v` against `schema`, returning every violation with its JSON
/// pointer. Supports `type`, `enum`, `const`, `minimum`, `pattern`,
/// `required`, `properties`, `additionalProperties`, `items`, `minItems` and
/// `maxItems`; any other keyword is a test bug and panics.
pub fn validate(schema: &Value, v: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(schema, v, "", &mut errors);
    errors
}

fn check(schema: &Value, v: &Value, at: &str, errors: &mut Vec<String>) {
    let Some(rules) = schema.as_object() else {
        panic!("schema at {at:?} is not an object");
    };
    let mut fail =
        |msg: String| errors.push(format!("{}: {msg}", if at.is_empty() { "/" } else { at }));
    for (key, rule) in rules {
        match key.as_str() {
            "type" => {
                let ok = match rule {
                    Value::String(t) => type_matches(t, v),
                    Value::Array(ts) => ts.iter().any(|t| type_matches(t.as_str().unwrap(), v)),
                    _ => panic!("bad type rule"),
                };
                if !ok {
                    fail(format!("expected {rule}, got {v}"));
                }
            }
            "enum" => {
                if !rule.as_array().unwrap().contains(v) {
                    fail(format!("{v} not in {rule}"));
                }
            }
            "const" => {
                if rule != v {
                    fail(format!("{v} != {rule}"));
                }
            }
            "minimum" => {
                if let Some(x) = v.as_f64() {
                    if x < rule.as_f64().unwrap() {
                        fail(format!("{x} below {rule}"));
                    }
                }
            }
            "pattern" => {
                if let Some(s) = v.as_str() {
                    let re = regex::Regex::new(rule.as_str().unwrap()).unwrap();
                    if !re.is_match(s) {
                        fail(format!("{s:?} does not match {rule}"));
                    }
                }
            }
            "minItems" | "maxItems" => {
                if let Some(items) = v.as_array() {
                    let bound = rule.as_u64().unwrap() as usize;
                    let bad = if key == "minItems" {
                        items.len() < bound
                    } else {
                        items.len() > bound
                    };
                    if bad {
                        fail(format!("{} items violates {key} {bound}", items.len()));
                    }
                }
            }
            "required" => {
                if let Some(obj) = v.as_object() {
                    for name in rule.as_array().unwrap() {
                        if !obj.contains_key(name.as_str().unwrap()) {
                            fail(format!("missing {name}"));
                        }
                    }
                }
            }
            "properties" | "additionalProperties" | "items" => {}
            other => panic!("unsupported schema keyword {other:?}"),
        }
    }

    if let Some(obj) = v.as_object() {
        let props = rules.get("properties").and_then(Value::as_object);
        for (name, value) in obj {
            let path = format!("{at}/{name}");
            match (
                props.and_then(|p| p.get(name)),
                rules.get("additionalProperties"),
            ) {
                (Some(sub), _) => check(sub, value, &path, errors),
                (None, Some(Value::Bool(false))) => {
                    errors.push(format!("{path}: unexpected property"))
                }
                (None, Some(sub @ Value::Object(_))) => check(sub, value, &path, errors),
                (None, _) => {}
            }
        }
    }
    if let (Some(items), Some(sub)) = (v.as_array(), rules.get("items")) {
        for (i, item) in items.iter().enumerate() {
            check(sub, item, &format!("{at}/{i}"), errors);
        }
    }
}

pub fn assert_valid(name: &str, v: &Value) {
    let errors = validate(&schema(name), v);
    assert!(
        errors.is_empty(),
        "{name} schema violations:\n{}",
        errors.join("\n")
    );
}
