use std::path::PathBuf;
use std::process::{Command, Output};

use supercat::ir::catalog::{CHAINS, FORMULAS};

fn supercat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_supercat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn instance(name: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../instances")
        .join(name);
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("supercat-{}-{name}", std::process::id()))
}

#[test]
fn decompose_puts_the_free_module_in_the_g_sector() {
    let o = supercat(&["decompose", "PH", "--module", "F(X01)"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip_while(|l| !l.starts_with("sector"))
        .skip(1)
        .take_while(|l| !l.is_empty())
        .map(|l| l.split_whitespace().collect())
        .collect();
    assert_eq!(rows, vec![vec!["g", "2", "g"]]);
}

#[test]
fn paper_suite_passes_on_ph_with_anchors_and_is_deterministic() {
    let a = supercat(&["paper-suite", "PH", "--seed", "7"]);
    let b = supercat(&["paper-suite", "PH", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let checks: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
        .collect();
    assert!(checks.len() > 50);
    for line in checks {
        let anchor = line
            .split(" [")
            .nth(1)
            .and_then(|r| r.split(']').next())
            .unwrap();
        let (family, key) = anchor.split_once(':').expect("family:key");
        assert!(!key.is_empty(), "{line}");
        if family == "catalog" {
            let name = key.split('.').next().unwrap();
            assert!(FORMULAS.contains(&name) || CHAINS.contains(&name), "{line}");
        }
    }
}

#[test]
fn json_output_mirrors_the_verdict() {
    let out = scratch("ising.json");
    let o = supercat(&[
        "validate",
        &instance("ising.json"),
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    std::fs::remove_file(&out).ok();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["instance"], "ising");
    assert!(
        doc["result"]["reports"][0]["checks"]
            .as_array()
            .unwrap()
            .len()
            >= 5
    );
}

#[test]
fn perturbed_hexagon_fails_with_its_worst_residual() {
    let o = supercat(&["validate", &instance("broken.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("worst: "));
    let err = String::from_utf8_lossy(&o.stderr);
    let failures: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
    let names: Vec<&str> = failures["failures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"hexagon_left"), "{names:?}");
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(
        supercat(&["validate", "no-such-instance.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        supercat(&["validate", "ising", "--tol", "-1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        supercat(&["decompose", "PH", "--module", "F(nothing)"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        supercat(&["fusion-table", "PH", "--category", "other"])
            .status
            .code(),
        Some(2)
    );
    let bad = scratch("bad.json");
    std::fs::write(&bad, "{\"name\": 3}").unwrap();
    assert_eq!(
        supercat(&["validate", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::remove_file(&bad).ok();
}

#[test]
fn sectors_and_fusion_tables() {
    let o = supercat(&["sectors", "ising"]);
    assert_eq!(o.status.code(), Some(0));
    let sigma = stdout(&o)
        .lines()
        .find(|l| l.starts_with("F(sigma)"))
        .unwrap()
        .to_string();
    assert!(sigma.ends_with(" P"), "{sigma}");

    let o = supercat(&["fusion-table", "ising", "--category", "repv"]);
    assert!(stdout(&o).contains("F(sigma) * F(sigma) = V + Pi(V)"));

    let o = supercat(&["fusion-table", "PH", "--category", "equivariant"]);
    let text = stdout(&o);
    let simples = text.lines().next().unwrap().trim_start_matches("simples: ");
    assert_eq!(simples.split(", ").count(), 4);
    assert_eq!(text.lines().count(), 1 + 16);
}

#[test]
fn equivariantize_counts_match() {
    let o = supercat(&["equivariantize", "Z3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("C: 3, (Rep V)^G: 3"));
}

#[test]
fn exported_builtins_match_the_shipped_files() {
    for (name, file) in [
        ("PH", "ph.json"),
        ("ising", "ising.json"),
        ("Z4", "z4.json"),
    ] {
        let out = scratch(file);
        let o = supercat(&["export", name, "--output", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let written = std::fs::read_to_string(&out).unwrap();
        std::fs::remove_file(&out).ok();
        assert_eq!(
            written,
            std::fs::read_to_string(instance(file)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn exact_flag_is_refused_for_irrational_data() {
    let o = supercat(&["validate", "ising", "--exact"]);
    assert_eq!(o.status.code(), Some(2));
}
