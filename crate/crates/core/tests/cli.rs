use std::process::Command;

use calibex_core::suite::RunReport;
use calibex_core::wchain::WChain;

fn calibex(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_calibex"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn verify_g2_prints_the_admissibility_line() {
    let (code, stdout, _) = calibex(&["verify", "g2"]);
    assert_eq!(code, 0, "{stdout}");
    assert!(stdout.contains("g2.strongly_admissible"));
    assert!(stdout.contains("49 = 49"));
    assert!(!stdout.contains("FAIL"));
}

#[test]
fn verify_spin7_writes_a_round_tripping_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spin7.json");
    let (code, _, _) = calibex(&["verify", "spin7", "--json", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let report: RunReport = serde_json::from_str(&text).unwrap();
    assert!(report.passed);
    assert_eq!(report.suite, "spin7");
    let seq = report
        .certificates
        .iter()
        .find(|c| c.claim_id == "spin7.flag.characters")
        .unwrap();
    assert_eq!(seq.computed.render(), "(0,0,0,0,1,5,15,35)");
    assert_eq!(
        serde_json::from_str::<RunReport>(&report.to_json()).unwrap(),
        report
    );
}

#[test]
fn verify_su3_has_a_single_certificate() {
    let (code, stdout, _) = calibex(&["verify", "su3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("8 = 8"));
    assert!(stdout.contains("1/1 certificates passed"));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    let read = |name: &str| {
        let p = dir.path().join(name);
        let (code, _, _) = calibex(&["verify", "g2", "--json", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        let mut r: RunReport = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        r.duration_ms = 0;
        r
    };
    assert_eq!(read("a.json"), read("b.json"));
    assert_eq!(calibex(&["verify", "g2"]).1, calibex(&["verify", "g2"]).1);
}

#[test]
fn identity_exit_codes() {
    let (code, stdout, _) = calibex(&["identity", "--samples", "20", "--seed", "42"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("identity.associator") && stdout.contains("identity.cayley"));
    let (code, stdout, _) = calibex(&["identity", "--samples", "3", "--seed", "1", "--n8"]);
    assert_eq!(code, 0);
    assert!(!stdout.contains("identity.associator"));
    assert_eq!(calibex(&["identity", "--samples", "0", "--seed", "1"]).0, 2);
    assert_eq!(
        calibex(&["identity", "--samples", "3", "--n7", "--n8"]).0,
        2
    );
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(calibex(&["verify", "e8"]).0, 2);
    assert_eq!(calibex(&["search-wchain", "su3", "--out", "x.json"]).0, 2);
    assert_eq!(calibex(&[]).0, 2);
}

#[test]
fn search_wchain_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.json");
    let p = path.to_str().unwrap();
    assert_eq!(calibex(&["search-wchain", "spin7", "--out", p]).0, 0);
    let first = std::fs::read(&path).unwrap();
    assert_eq!(calibex(&["search-wchain", "spin7", "--out", p]).0, 0);
    assert_eq!(std::fs::read(&path).unwrap(), first);
    let chain = WChain::from_json(std::str::from_utf8(&first).unwrap()).unwrap();
    let dims: Vec<usize> = chain.levels.iter().map(|l| l.dim).collect();
    assert_eq!(dims, vec![1, 5, 15, 35]);
    assert!(chain.verified());
}

#[test]
fn search_wchain_g2_keeps_the_displayed_levels() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.json");
    let (code, stdout, _) = calibex(&["search-wchain", "g2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.contains("(1, 5, 15, 28)"));
    let chain = WChain::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(chain.levels[0].space, calibex_core::wchain::g2_w1());
    assert_eq!(chain.levels[1].space, calibex_core::wchain::g2_w5());
}
