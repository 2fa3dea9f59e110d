//! End-to-end tests for the command-line binary: worked examples, exit
//! codes, JSON schema conformance, and output stability.

use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_localsym"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).expect("utf8 stdout"),
        String::from_utf8(out.stderr).expect("utf8 stderr"),
    )
}

fn schema() -> Value {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../schemas/report.schema.json"
    );
    serde_json::from_str(&std::fs::read_to_string(path).expect("schema file"))
        .expect("schema parses")
}

fn resolve_ref<'a>(root: &'a Value, path: &str) -> &'a Value {
    let mut node = root;
    for part in path.trim_start_matches("#/").split('/') {
        node = node.get(part).expect("ref target exists");
    }
    node
}

/// A small validator covering the subset of JSON Schema the shipped schema
/// uses: $ref, oneOf, type, enum, properties, required, items, and
/// additionalProperties: false.
fn validate(root: &Value, schema: &Value, value: &Value) -> Result<(), String> {
    let obj = schema.as_object().ok_or("schema node must be an object")?;
    if let Some(r) = obj.get("$ref") {
        return validate(root, resolve_ref(root, r.as_str().unwrap()), value);
    }
    if let Some(branches) = obj.get("oneOf") {
        let hits = branches
            .as_array()
            .unwrap()
            .iter()
            .filter(|b| validate(root, b, value).is_ok())
            .count();
        return if hits == 1 {
            Ok(())
        } else {
            Err(format!("oneOf matched {hits} branches"))
        };
    }
    if let Some(t) = obj.get("type") {
        let ok = match t.as_str().unwrap() {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "boolean" => value.is_boolean(),
            "integer" => value.is_i64() || value.is_u64(),
            other => return Err(format!("unsupported type '{other}'")),
        };
        if !ok {
            return Err(format!("expected type {t}, got {value}"));
        }
    }
    if let Some(e) = obj.get("enum") {
        if !e.as_array().unwrap().iter().any(|v| v == value) {
            return Err(format!("{value} not in enum {e}"));
        }
    }
    if let Some(props) = obj.get("properties") {
        let props = props.as_object().unwrap();
        let vo = value.as_object().ok_or("expected an object")?;
        for (k, sub) in props {
            if let Some(v) = vo.get(k) {
                validate(root, sub, v).map_err(|e| format!("{k}: {e}"))?;
            }
        }
        if obj.get("additionalProperties") == Some(&Value::Bool(false)) {
            for k in vo.keys() {
                if !props.contains_key(k) {
                    return Err(format!("unexpected property '{k}'"));
                }
            }
        }
    }
    if let Some(req) = obj.get("required") {
        let vo = value.as_object().ok_or("expected an object")?;
        for k in req.as_array().unwrap() {
            let k = k.as_str().unwrap();
            if !vo.contains_key(k) {
                return Err(format!("missing required property '{k}'"));
            }
        }
    }
    if let Some(items) = obj.get("items") {
        if let Some(arr) = value.as_array() {
            for (i, v) in arr.iter().enumerate() {
                validate(root, items, v).map_err(|e| format!("[{i}]: {e}"))?;
            }
        }
    }
    Ok(())
}

fn check_json(stdout: &str) -> Value {
    let v: Value = serde_json::from_str(stdout).expect("stdout is JSON");
    let s = schema();
    validate(&s, &s, &v).unwrap_or_else(|e| panic!("schema violation: {e}\n{stdout}"));
    v
}

#[test]
fn tame_worked_example() {
    let (code, out, _) = run(&["--field", "q", "tame", "--place", "t", "t", "t"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "-1");
}

#[test]
fn residue_check_worked_example() {
    let (code, out, _) = run(&[
        "--field", "q", "check-residue", "1/t", "t", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v = check_json(&out);
    assert_eq!(v["law"], "residue-sum");
    assert_eq!(v["aggregate"], "0");
    assert_eq!(v["pass"], true);
    let pieces = v["pieces"].as_array().unwrap();
    assert_eq!(pieces.len(), 2);
    assert_eq!(pieces[0]["place"], "(t)");
    assert_eq!(pieces[0]["value"], "1");
    assert_eq!(pieces[1]["place"], "inf");
    assert_eq!(pieces[1]["value"], "-1");
}

#[test]
fn weil_check_over_f5() {
    let (code, out, _) = run(&["--field", "fp:5", "check-weil", "t", "1-t"]);
    assert_eq!(code, 0);
    assert!(out.contains("pass: true"), "{out}");
    let (code, out, _) = run(&[
        "--field", "fp:5", "check-weil", "t", "1-t", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v = check_json(&out);
    assert_eq!(v["law"], "weil");
    assert_eq!(v["aggregate"], "1");
    assert_eq!(v["certificate"]["spot_checks"].as_array().unwrap().len(), 20);
}

#[test]
fn every_command_emits_schema_valid_json() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["divisor", "(t^2+1)/t"],
        vec!["tame", "--place", "t", "t", "1-t"],
        vec!["degree", "--place", "t^2+1", "(t^2+1)/t"],
        vec!["residue", "--place", "inf", "1/t", "t"],
        vec!["--field", "eps2(q)", "eps-pairing", "--place", "t", "1/t", "t"],
        vec!["--field", "eps3(q)", "eps3-pairing", "--place", "t", "1/t^2", "t^2"],
        vec![
            "parshin",
            "--flag",
            "curve=y;point=x;chart=xy",
            "y",
            "x",
            "7",
        ],
        vec!["check-degree", "(t^2+1)/t"],
        vec!["check-weil", "t", "1-t"],
        vec!["check-residue", "1/t", "t"],
        vec!["check-parshin-points", "--curve", "y", "y", "x", "7"],
        vec!["check-parshin-curves", "--point", "0,0", "x", "y", "x-y"],
    ];
    for mut args in cases {
        args.extend(["--format", "json"]);
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "args {args:?}: {err}");
        check_json(&out);
    }
}

#[test]
fn error_output_is_schema_valid_json() {
    let (code, out, _) = run(&[
        "--format", "json", "tame", "--place", "t^2-1", "t", "t",
    ]);
    assert_eq!(code, 2);
    let v = check_json(&out);
    assert!(v["error"].as_str().unwrap().contains("irreducible"), "{v}");
}

#[test]
fn usage_errors_exit_2() {
    // unknown subcommand (clap error)
    let (code, _, _) = run(&["frobnicate"]);
    assert_eq!(code, 2);
    // bad field descriptor
    let (code, _, err) = run(&["--field", "zz", "divisor", "t"]);
    assert_eq!(code, 2);
    assert!(err.contains("descriptor"), "{err}");
    // expression syntax error
    let (code, _, err) = run(&["divisor", "t+"]);
    assert_eq!(code, 2);
    assert!(err.contains("parse error"), "{err}");
    // gated variable
    let (code, _, err) = run(&["divisor", "a+t"]);
    assert_eq!(code, 2);
    assert!(err.contains('a'), "{err}");
    // eps command without an eps ring
    let (code, _, _) = run(&["eps-pairing", "--place", "t", "t", "t"]);
    assert_eq!(code, 2);
    // help is not an error
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("check-parshin-curves"));
}

#[test]
fn extension_field_reports_modulus() {
    let (code, out, _) = run(&[
        "--field", "fq:2^3", "tame", "--place", "t", "t", "t", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v = check_json(&out);
    assert_eq!(v["field"], "fq:2^3[a^3+a+1]");
    assert_eq!(v["value"], "1");

    let (code, out, _) = run(&[
        "--field", "fq:3^2", "divisor", "t^2+1", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v = check_json(&out);
    assert_eq!(v["field"], "fq:3^2[a^2+1]");
    // t^2+1 = (t-a)(t+a) splits in F9 where a^2 = -1
    assert_eq!(v["divisor"].as_array().unwrap().len(), 3);
}

#[test]
fn printed_expressions_reparse_to_the_same_value() {
    // the reported input is the reduced function; feeding it back must give
    // the identical report
    let (code, out1, _) = run(&["divisor", "(t^2-1)/(t-1)", "--format", "json"]);
    assert_eq!(code, 0);
    let v = check_json(&out1);
    let echoed = v["inputs"][0].as_str().unwrap();
    assert_eq!(echoed, "t+1");
    let (_, out2, _) = run(&["divisor", echoed, "--format", "json"]);
    assert_eq!(out1, out2);

    // same for a symbol value over a finite field
    let (_, out, _) = run(&[
        "--field", "fp:7", "tame", "--place", "inf", "(t^3+2)/(t-1)", "t^2+5",
    ]);
    let value = out.trim().to_string();
    let (_, out_again, _) = run(&[
        "--field", "fp:7", "tame", "--place", "inf", "(t^3+2)/(t-1)", "t^2+5",
    ]);
    assert_eq!(value, out_again.trim());
}

#[test]
fn reports_have_stable_field_order() {
    let (_, out, _) = run(&["check-weil", "t", "1-t", "--format", "json"]);
    let order = ["\"law\"", "\"field\"", "\"inputs\"", "\"pieces\"", "\"aggregate\"", "\"pass\"", "\"certificate\""];
    let positions: Vec<usize> = order
        .iter()
        .map(|k| out.find(k).unwrap_or_else(|| panic!("missing {k}")))
        .collect();
    for w in positions.windows(2) {
        assert!(w[0] < w[1], "field order changed: {out}");
    }
    // repeated runs are byte-identical
    let (_, out2, _) = run(&["check-weil", "t", "1-t", "--format", "json"]);
    assert_eq!(out, out2);
}

#[test]
fn parshin_flag_syntax_variants() {
    let (code, out, _) = run(&[
        "parshin",
        "--flag",
        "curve=y-x^2;point=x-1;chart=xy",
        "x",
        "y",
        "x+1",
    ]);
    assert_eq!(code, 0, "{out}");
    let (code, out, _) = run(&[
        "parshin",
        "--flag",
        "curve=x-2;point=y-3;chart=xy",
        "x-2",
        "y",
        "5",
    ]);
    assert_eq!(code, 0, "{out}");
    // missing point
    let (code, _, _) = run(&["parshin", "--flag", "curve=y", "x", "y", "2"]);
    assert_eq!(code, 2);
    // unsupported curve shape
    let (code, _, err) = run(&[
        "parshin",
        "--flag",
        "curve=y^2-x;point=x;chart=xy",
        "x",
        "y",
        "2",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("curve"), "{err}");
}
