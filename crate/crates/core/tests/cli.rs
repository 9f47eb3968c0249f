use std::process::Command;

use zdforge::algebra::text;
use zdforge::cli::{run, CommandOutcome};
use zdforge::tds::Manifest;

fn zd(args: &[&str]) -> CommandOutcome {
    run(std::iter::once("zdforge").chain(args.iter().copied()))
}

fn json(out: &CommandOutcome) -> serde_json::Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("zdforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn parse_word_and_round_trip() {
    let out = zd(&["parse", "-e", "1 - a1"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout.lines().filter(|l| l.contains('*')).count(), 2);
    assert_eq!(text::to_text(&text::from_text(&out.stdout).unwrap()), out.stdout);

    let path = tmp("word.txt");
    std::fs::write(&path, "t1 a2 - T2\n").unwrap();
    let out = zd(&["parse", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("group L^2"));
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(zd(&["parse", "-e", "b9"]).code, 2);
    assert_eq!(zd(&["parse", "-e", "1 +"]).code, 2);
    assert_eq!(zd(&["parse"]).code, 2);
    assert_eq!(zd(&["no-such-command"]).code, 2);
    assert_eq!(zd(&["tm", "run", "missing-machine"]).code, 2);
}

#[test]
fn decide_heuristic_paths() {
    let out = zd(&["decide", "-e", "1 - a1", "--k", "2", "--override-n", "8"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "ZeroDivisor");
    assert_eq!(v["certified"], false);
    assert_eq!(v["gamma"], "1/2");

    let out = zd(&["decide", "-e", "1 - t1", "--k", "1", "--override-n", "10000"]);
    assert_eq!(out.code, 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "NotZeroDivisor");
    assert_eq!(v["certified"], false);
}

#[test]
fn decide_over_budget_is_inconclusive() {
    let out = zd(&["decide", "-e", "1 - t1", "--k", "1"]);
    assert_eq!(out.code, 1);
    assert_eq!(json(&out)["verdict"], "Inconclusive");
    let out = zd(&["decide", "-e", "1 - a1", "--k", "1"]);
    assert_eq!(out.code, 0);
    assert_eq!(json(&out)["certified"], true);
}

#[test]
fn quotients_sofic_and_spectra() {
    let out = zd(&["quotient-kernel", "-e", "1 - t1", "--N", "4"]);
    assert_eq!(json(&out)["kernel"], "1/4");
    let out = zd(&["sofic-check", "--N", "6", "--R", "2"]);
    assert_eq!(json(&out)["fraction"], "1");
    let out = zd(&["spectrum", "-e", "1", "--N", "3", "--bins", "10"]);
    assert_eq!(out.code, 0);
    let rows: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(rows[0], "bin_low,bin_high,count");
    assert_eq!(rows.iter().filter(|r| !r.starts_with("bin") && !r.starts_with("atom")).count(), 1);
    assert!(out.stdout.contains("atom,0,0"));
    let out = zd(&["spectrum", "-e", "1 - t1", "--N", "4", "--bins", "5"]);
    assert!(out.stdout.contains("atom,0,1/4"));
}

#[test]
fn machine_commands() {
    let out = zd(&["tm", "compile", "always", "--to", "foolproof"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("tm readonly 3"));
    assert!(out.stdout.contains("D."));

    let out = zd(&["tm", "run", "parity", "--input", "x,x"]);
    assert_eq!(json(&out)["outcome"], "Accept");
    let out = zd(&["tm", "run", "loop", "--input", "x", "--fuel", "50"]);
    assert_eq!(out.code, 1);
    assert_eq!(json(&out)["outcome"], "OutOfFuel");
    let out = zd(&["tm", "run", "immediate-reject", "--input", "x;x,x;"]);
    assert_eq!(json(&out)["outcome"], "Reject");

    assert_eq!(zd(&["tm", "validate", "parity"]).stdout, "valid\n");
    let bad = tmp("bad.tm");
    std::fs::write(&bad, "tm standard\nalphabet x\nstates INITIAL ACCEPT REJECT\ntrans INITIAL x -> INITIAL - R\n").unwrap();
    let out = zd(&["tm", "validate", bad.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("INITIAL"));

    // a machine file compiled through the pipeline equals the built-in one
    let file = tmp("parity.tm");
    std::fs::write(&file, zdforge::turing::Machine::Standard(zdforge::turing::corpus::m_parity()).to_text()).unwrap();
    assert_eq!(
        zd(&["tm", "compile", file.to_str().unwrap(), "--to", "readonly"]).stdout,
        zd(&["tm", "compile", "parity", "--to", "readonly"]).stdout
    );
}

#[test]
fn measures_units_and_search() {
    let out = zd(&["reject-measure", "immediate-reject", "--L", "3"]);
    assert_eq!((out.code, out.stdout.as_str()), (0, "343/131072\n"));
    let out = zd(&["verify-units", "--n", "3"]);
    assert_eq!(out.code, 0);
    assert_eq!(json(&out)["relations"], 81);

    let out = zd(&["search", "never", "--L", "4"]);
    assert_eq!(out.code, 1);
    assert_eq!(json(&out)["found"], false);
    let out = zd(&["search", "always", "--max-len", "200", "--fuel", "10000"]);
    assert_eq!(out.code, 0);
    assert_eq!(json(&out)["tapes"][0].as_array().unwrap().len(), 9);
}

#[test]
fn operator_compile_and_manifest() {
    let path = tmp("manifest.json");
    let out = zd(&["tm", "compile", "immediate-reject", "--to", "operator", "--manifest", path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("structured"));
    assert!(out.stderr.is_empty());
    let m: Manifest = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(m.h_order, "24");
    assert!(m.checks.self_adjoint && m.checks.partition_of_unity);

    // without a path the manifest goes to stderr
    let out = zd(&["tm", "compile", "immediate-reject", "--to", "operator"]);
    let m2: Manifest = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(m, m2);

    let op = tmp("op.txt");
    std::fs::write(&op, &out.stdout).unwrap();
    let out = zd(&["expand", op.to_str().unwrap()]);
    assert_eq!(out.code, 2, "|H| = 24 is above the expansion guard");

    let out = zd(&["tm", "compile", "immediate-reject", "--to", "operator", "--mode", "expanded"]);
    assert_eq!(out.code, 2);
}

#[test]
fn seeded_sampling_is_echoed_and_deterministic() {
    let args = ["--seed", "5", "tm", "compile", "immediate-reject", "--to", "tds", "--samples", "200"];
    let a = zd(&args);
    assert_eq!(a.code, 0);
    let v = json(&a);
    assert_eq!(v["seed"], 5);
    assert_eq!(v["stops"]["stopped"], 200);
    assert_eq!(v["mu_initial"], "1/256");
    assert_eq!(zd(&args), a);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_zdforge");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["verify-units", "--n", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("\"failures\":[]"));
    assert_eq!(status(&["search", "never", "--L", "3"]).status.code(), Some(1));
    assert_eq!(status(&["parse", "-e", "b9"]).status.code(), Some(2));
    let threaded = Command::new(bin).env("ZDFORGE_THREADS", "1").args(["sofic-check", "--N", "5", "--R", "2"]).output().unwrap();
    assert_eq!(threaded.status.code(), Some(0));
}
