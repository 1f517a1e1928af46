use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use skewconv::codespec::{format_sequence, parse_sequence};
use skewconv::decoder::viterbi;
use skewconv::dual::syndrome_former;
use skewconv::report::analyze;
use skewconv::sim::{simulate, SimConfig};
use skewconv::{AnyCode, CodeSpec, Execution};

fn repo() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn code_path(name: &str) -> PathBuf {
    repo().join("codes").join(name)
}

fn load(name: &str) -> AnyCode {
    CodeSpec::from_json(&std::fs::read_to_string(code_path(name)).unwrap())
        .unwrap()
        .build()
        .unwrap()
}

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_skewconv"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn ok(args: &[&str], stdin: &str) -> String {
    let out = run(args, stdin);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn assert_schema(schema_file: &str, instance: &Value) {
    let schema: Value = serde_json::from_str(
        &std::fs::read_to_string(repo().join("schemas").join(schema_file)).unwrap(),
    )
    .unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator
        .iter_errors(instance)
        .map(|e| e.to_string())
        .collect();
    assert!(errors.is_empty(), "{schema_file}: {errors:?}");
}

const EXAMPLE: &str = "gf4-unit-memory.json";

#[test]
fn encode_worked_example() {
    let path = code_path(EXAMPLE);
    let out = ok(
        &["encode", "--code", path.to_str().unwrap(), "--terminate"],
        "1\n0\n0\n1\n",
    );
    assert_eq!(out, "1 2\n2 3\n0 0\n1 3\n3 2\n");
    let code = load(EXAMPLE);
    let u = parse_sequence("1\n0\n0\n1\n", 1, code.field()).unwrap();
    assert_eq!(
        out,
        format_sequence(&code.encode(&u, true).unwrap(), code.field(), false)
    );
    let pretty = ok(
        &[
            "encode",
            "--code",
            path.to_str().unwrap(),
            "--terminate",
            "--pretty",
        ],
        "1\n0\n0\n1\n",
    );
    assert_eq!(pretty, "1 a\na a^2\n0 0\n1 a^2\na^2 a\n");
}

#[test]
fn empty_input_gives_empty_output() {
    let path = code_path(EXAMPLE);
    assert_eq!(ok(&["encode", "--code", path.to_str().unwrap()], ""), "");
    assert_eq!(ok(&["decode", "--code", path.to_str().unwrap()], ""), "");
}

#[test]
fn decode_round_trip() {
    let path = code_path(EXAMPLE);
    let p = path.to_str().unwrap();
    let info = "1\n3\n0\n2\n2\n1\n";
    for terminate in [false, true] {
        let mut enc_args = vec!["encode", "--code", p];
        let mut dec_args = vec!["decode", "--code", p];
        if terminate {
            enc_args.push("--terminate");
            dec_args.push("--terminated");
        }
        let v = ok(&enc_args, info);
        assert_eq!(ok(&dec_args, &v), info);
        dec_args.extend(["--algo", "bcjr", "--eps", "0.01"]);
        assert_eq!(ok(&dec_args, &v), info);
    }
}

#[test]
fn decode_matches_library_on_noisy_input() {
    let path = code_path(EXAMPLE);
    let received = "1 2\n2 2\n0 1\n1 3\n3 2\n";
    let out = ok(
        &["decode", "--code", path.to_str().unwrap(), "--terminated"],
        received,
    );
    let code = load(EXAMPLE);
    let r = parse_sequence(received, 2, code.field()).unwrap();
    let lib = viterbi(&code.trellis().unwrap(), &r, true).unwrap();
    assert_eq!(out, format_sequence(&lib.info, code.field(), false));
    assert_eq!(out, "1\n0\n0\n1\n");
}

#[test]
fn analyze_reports() {
    let path = code_path(EXAMPLE);
    let out = ok(
        &["analyze", "--code", path.to_str().unwrap(), "--lmax", "12"],
        "",
    );
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_schema("analyze-report.schema.json", &v);
    assert_eq!(v["tau"], 2);
    assert_eq!(v["d_free"], 4);
    assert_eq!(v["slope"], 1);
    assert_eq!(v["catastrophic"], false);
    let bursts: Vec<Value> = (2..=12).map(|l| Value::from(l + 2)).collect();
    assert_eq!(v["d_burst"].as_array().unwrap()[1..], bursts[..]);

    let lib = analyze(&load(EXAMPLE), 12, Execution::Parallel).unwrap();
    let mut expected = serde_json::to_string_pretty(&lib).unwrap();
    expected.push('\n');
    assert_eq!(out, expected);

    let ident = code_path("gf4-identity.json");
    let v: Value = serde_json::from_str(&ok(
        &["analyze", "--code", ident.to_str().unwrap(), "--sequential"],
        "",
    ))
    .unwrap();
    assert_schema("analyze-report.schema.json", &v);
    assert_eq!(v["d_free"], 2);
    assert_eq!(v["slope"], 0);
    assert_eq!(v["catastrophic"], true);
}

#[test]
fn dual_prints_syndrome_former() {
    let path = code_path(EXAMPLE);
    let out = ok(&["dual", "--code", path.to_str().unwrap()], "");
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_schema("code-spec.schema.json", &v);
    assert_eq!(v["G"], serde_json::json!([[[2, 1], [1, 2]]]));
    let AnyCode::Left(code) = load(EXAMPLE) else {
        unreachable!()
    };
    let sf = syndrome_former(&code, None).unwrap();
    assert_eq!(CodeSpec::from_json(&out).unwrap().g, sf.h().to_nested());
}

#[test]
fn trellis_dot_output() {
    let path = code_path(EXAMPLE);
    let code = load(EXAMPLE);
    let tr = code.trellis().unwrap();
    let out = ok(&["trellis", "--code", path.to_str().unwrap()], "");
    assert_eq!(out, tr.to_dot(2, false));
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("t.dot");
    let stdout = ok(
        &[
            "trellis",
            "--code",
            path.to_str().unwrap(),
            "--sections",
            "3",
            "--pretty",
            "--out",
            file.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(stdout, "");
    assert_eq!(std::fs::read_to_string(&file).unwrap(), tr.to_dot(3, true));
}

#[test]
fn simulate_reports() {
    let path = code_path(EXAMPLE);
    let p = path.to_str().unwrap();
    let args = [
        "simulate",
        "--code",
        p,
        "--eps",
        "0.05",
        "--trials",
        "300",
        "--frame-len",
        "20",
        "--seed",
        "9",
    ];
    let a = ok(&args, "");
    let b = ok(&args, "");
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_schema("sim-report.schema.json", &v);
    let lib = simulate(
        &load(EXAMPLE),
        &SimConfig {
            eps: 0.05,
            trials: 300,
            frame_len: 20,
            seed: 9,
        },
        Execution::Sequential,
    )
    .unwrap();
    let mut expected = serde_json::to_string_pretty(&lib).unwrap();
    expected.push('\n');
    assert_eq!(a, expected);

    let zero: Value = serde_json::from_str(&ok(
        &["simulate", "--code", p, "--eps", "0", "--trials", "50"],
        "",
    ))
    .unwrap();
    assert_eq!(zero["ber"], 0.0);
    assert_eq!(zero["fer"], 0.0);
}

#[test]
fn right_module_codes() {
    let path = code_path("gf4-skew-trellis.json");
    let p = path.to_str().unwrap();
    assert_eq!(ok(&["encode", "--code", p], "2\n0\n"), "2 3\n1 2\n");
    let v = ok(&["encode", "--code", p, "--terminate"], "2\n1\n3\n");
    assert_eq!(
        ok(&["decode", "--code", p, "--terminated"], &v),
        "2\n1\n3\n"
    );
    assert_eq!(run(&["dual", "--code", p], "").status.code(), Some(1));
}

#[test]
fn exit_codes() {
    let path = code_path(EXAMPLE);
    let p = path.to_str().unwrap();
    assert_eq!(run(&["frobnicate"], "").status.code(), Some(1));
    assert_eq!(run(&["encode"], "").status.code(), Some(1));
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
    assert_eq!(
        run(&["encode", "--code", "/nonexistent.json"], "")
            .status
            .code(),
        Some(1)
    );

    let bad = run(&["encode", "--code", p], "1\n0\n2 3\n");
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 3"));
    let oob = run(&["decode", "--code", p], "1 2\n7 0\n");
    assert_eq!(oob.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&oob.stderr).contains("line 2"));

    assert_eq!(
        run(&["simulate", "--code", p, "--eps", "0.75"], "")
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(
            &["decode", "--code", p, "--algo", "bcjr", "--eps", "0"],
            "1 2\n"
        )
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        run(&["dual", "--code", p, "--max-mu-perp", "0"], "")
            .status
            .code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.json");
    std::fs::write(
        &broken,
        r#"{"field":{"p":2,"n":2},"k":1,"n":2,"G":[[[1,2]]]}"#,
    )
    .unwrap();
    assert_eq!(
        run(&["analyze", "--code", broken.to_str().unwrap()], "")
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn shipped_specs_are_valid_and_round_trip() {
    for name in [
        "gf4-unit-memory.json",
        "gf4-identity.json",
        "gf4-skew-trellis.json",
    ] {
        let text = std::fs::read_to_string(code_path(name)).unwrap();
        assert_schema(
            "code-spec.schema.json",
            &serde_json::from_str(&text).unwrap(),
        );
        let spec = CodeSpec::from_json(&text).unwrap();
        assert_eq!(CodeSpec::from_code(&spec.build().unwrap()), spec);
        assert_eq!(CodeSpec::from_json(&spec.to_json()).unwrap(), spec);
    }
}
