use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use leviflat_cli::{emit_report, parse_input, run_request, Format, Report, Status};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(format!("{name}.json"))
}

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leviflat")).args(args).output().unwrap()
}

fn bin_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_leviflat"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

const LINE: &str = r#"{
  "schema": 1,
  "command": "intersect",
  "variables": ["z0", "z1", "z2"],
  "polynomials": {
    "F": [{"coeff": {"re": "COEFF"}, "exps": [1, 0, 1]}, {"coeff": {"re": "-1"}, "exps": [0, 2, 0]}],
    "G": [{"coeff": {"re": "1"}, "exps": [0, 0, 1]}]
  }
}"#;

fn line_with(coeff: &str) -> String {
    LINE.replace("COEFF", coeff)
}

#[test]
fn zero_denominator_is_a_parse_error() {
    let err = parse_input(&line_with("1/0")).unwrap_err();
    assert!(err.0.contains("1/0") || err.0.to_lowercase().contains("denominator"), "{}", err.0);
}

#[test]
fn json_numbers_are_refused_as_coefficients() {
    let text = LINE.replace("\"re\": \"COEFF\"", "\"re\": 1");
    assert!(parse_input(&text).is_err());
}

#[test]
fn missing_roster_is_reported() {
    let text = line_with("1").replace("\"variables\": [\"z0\", \"z1\", \"z2\"],", "");
    let err = parse_input(&text).unwrap_err();
    assert!(err.0.contains("variables"), "{}", err.0);
}

#[test]
fn unknown_command_is_rejected() {
    let text = line_with("1").replace("\"intersect\"", "\"factor\"");
    assert!(parse_input(&text).is_err());
}

#[test]
fn unknown_fields_are_rejected() {
    let text = line_with("1").replace("\"schema\": 1,", "\"schema\": 1, \"colour\": \"red\",");
    assert!(parse_input(&text).is_err());
}

#[test]
fn exit_codes_follow_status() {
    assert_eq!(bin(&[corpus("brunella").to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(bin(&[corpus("sphere").to_str().unwrap()]).status.code(), Some(2));
    let bad = bin_stdin(&["-"], &line_with("1/0"));
    assert_eq!(bad.status.code(), Some(3));
    assert!(!bad.stderr.is_empty());
    assert!(bad.stdout.is_empty());
}

#[test]
fn batch_exit_code_is_the_most_severe() {
    let a = std::fs::read_to_string(corpus("tangent_line")).unwrap();
    let b = std::fs::read_to_string(corpus("sphere")).unwrap();
    let out = bin_stdin(&["-"], &format!("[{a}, {b}]"));
    assert_eq!(out.status.code(), Some(2));
    let reports: Vec<Report> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0].status, Status::Completed);
    assert_eq!(reports[1].status, Status::Rejected);
}

#[test]
fn same_seed_gives_identical_bytes() {
    let path = corpus("pencil_level");
    for format in ["json", "text"] {
        let args = [path.to_str().unwrap(), "--seed", "42", "--format", format];
        assert_eq!(bin(&args).stdout, bin(&args).stdout);
    }
}

#[test]
fn seed_is_recorded_in_provenance() {
    let path = corpus("tangent_line");
    let out = bin(&[path.to_str().unwrap(), "--seed", "9"]);
    let r: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.provenance.seed, 9);
    assert_eq!(r.provenance.generator, "ChaCha8");
}

#[test]
fn report_round_trip_is_idempotent() {
    for name in ["lebl", "lion", "tangent_line", "sphere"] {
        let req = parse_input(&std::fs::read_to_string(corpus(name)).unwrap()).unwrap().remove(0);
        let bytes = emit_report(&run_request(&req), Format::Json);
        let back: Report = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(emit_report(&back, Format::Json), bytes, "{name}");
    }
}

#[test]
fn verdicts_and_statuses_are_uppercase() {
    let req = parse_input(&std::fs::read_to_string(corpus("sphere")).unwrap()).unwrap().remove(0);
    let v: serde_json::Value = serde_json::from_slice(&emit_report(&run_request(&req), Format::Json)).unwrap();
    assert_eq!(v["status"], "REJECTED");
    for s in v["stages"].as_array().unwrap() {
        let verdict = s["verdict"].as_str().unwrap();
        assert_eq!(verdict, verdict.to_uppercase());
    }
}

#[test]
fn text_rendering_of_an_intersection() {
    let req = parse_input(&std::fs::read_to_string(corpus("tangent_line")).unwrap()).unwrap().remove(0);
    let text = String::from_utf8(emit_report(&run_request(&req), Format::Text)).unwrap();
    let first = text.lines().next().unwrap();
    assert_eq!(first, "intersect (conic and tangent line): COMPLETED");
    assert!(text.lines().any(|l| l.starts_with("provenance: seed 0 (ChaCha8)")));
}

#[test]
fn command_line_overrides_apply() {
    let path = corpus("tangent_line");
    let out = bin(&[path.to_str().unwrap(), "--samples", "17", "--tol", "0.001"]);
    let r: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r.provenance.samples, 17);
    assert_eq!(r.provenance.tol, "1/1000");
}
