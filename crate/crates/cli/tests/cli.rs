use std::path::PathBuf;
use std::process::{Command, Output};

use mfq_cli::serial::{uea_from_json, UeaJson};
use mfq_core::quantize::extract_q;
use mfq_core::GlMinimal;

fn mfq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfq")).args(args).env_remove("MFQ_SEED").output().expect("binary runs")
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).expect("golden file")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn q_matches_golden_files() {
    for (args, file) in [
        (vec!["q", "--n", "3"], "q_n3.txt"),
        (vec!["q", "--n", "4", "--format", "text"], "q_n4.txt"),
        (vec!["q", "--n", "3", "--format", "json"], "q_n3.json"),
    ] {
        let o = mfq(&args);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), golden(file), "{args:?}");
    }
}

#[test]
fn golden_json_decodes_to_the_library_values() {
    let m = GlMinimal::new(3).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&golden("q_n3.json")).unwrap();
    let items = doc["q"].as_array().unwrap();
    let qs = extract_q(&m).unwrap();
    assert_eq!(items.len(), qs.len());
    for (item, q) in items.iter().zip(&qs) {
        let u: UeaJson = serde_json::from_value(item["value"].clone()).unwrap();
        assert_eq!(&uea_from_json(&u, &m.ge.algebra).unwrap(), q);
    }
}

#[test]
fn verify_all_passes() {
    let o = mfq(&["verify", "--all", "--n-max", "4", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all 10 checks passed"));
}

#[test]
fn singular_chi_needs_opt_in() {
    let o = mfq(&["quantize", "--n", "3", "--chi", "zero"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not regular"));
    let o = mfq(&["quantize", "--n", "3", "--chi", "zero", "--allow-singular"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS"));
}

#[test]
fn bad_arguments_exit_2() {
    for args in [
        vec!["q", "--n", "1"],
        vec!["quantize", "--n", "6"],
        vec!["verify"],
        vec!["verify", "--check", "11"],
        vec!["frobnicate"],
        vec!["mf", "--n", "3", "--chi", "/nonexistent/chi.json"],
    ] {
        assert_eq!(mfq(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn explicit_chi_file() {
    let dir = std::env::temp_dir().join(format!("mfq-chi-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("chi.json");
    std::fs::write(&good, r#"{"e11": "1", "e12": "2", "e31": "-3", "e32": "5/2", "I": "7"}"#).unwrap();
    let o = mfq(&["quantize", "--n", "3", "--chi", good.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["chi"]["e32"], "5/2");
    assert_eq!(doc["commutative"], true);
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"e99": "1"}"#).unwrap();
    assert_eq!(mfq(&["quantize", "--n", "3", "--chi", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["mf", "--n", "4", "--seed", "3", "--format", "json"],
        vec!["quantize", "--n", "4", "--seed", "3"],
        vec!["invariants", "--n", "5"],
        vec!["centralizer", "--n", "4", "--format", "json"],
    ] {
        let (a, b) = (mfq(&args), mfq(&args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn seed_falls_back_to_environment() {
    let with_flag = mfq(&["quantize", "--n", "3", "--seed", "11"]);
    let with_env =
        Command::new(env!("CARGO_BIN_EXE_mfq")).args(["quantize", "--n", "3"]).env("MFQ_SEED", "11").output().unwrap();
    assert_eq!(with_flag.stdout, with_env.stdout);
    assert_ne!(with_flag.stdout, mfq(&["quantize", "--n", "3"]).stdout);
}
