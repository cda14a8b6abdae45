use std::process::Command;

fn chord(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_chord"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn enumerate_both_methods_agree() {
    let out = chord(&["enumerate", "--n", "4", "--method", "both", "--count-only"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("27 diagrams"), "{text}");
}

#[test]
fn enumerate_json_is_valid() {
    let out = chord(&["enumerate", "--n", "3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count"], 4);
    assert_eq!(v["diagrams"].as_array().unwrap().len(), 4);
}

#[test]
fn table_lists_all_records() {
    let out = chord(&["table", "--n", "4", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 27);
}

#[test]
fn gamma_text_output() {
    let out = chord(&["gamma", "--k", "1", "--order", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("gamma_1"), "{text}");
    assert!(text.contains("f0"), "{text}");
}

#[test]
fn verify_subcommands_pass() {
    for args in [
        vec!["verify", "dse", "--order", "4"],
        vec!["verify", "recurrences", "--order", "4"],
        vec!["verify", "bijection", "--n", "4"],
        vec!["verify", "lemmas", "--n", "4"],
    ] {
        let out = chord(&args);
        assert!(out.status.success(), "{args:?}: {:?}", out);
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("overall: PASS"), "{args:?}: {text}");
    }
}

#[test]
fn fourterm_reports_violations() {
    let out = chord(&["fourterm", "--n", "4", "--alpha", "1", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["quadruples"], 28);
    assert_eq!(v["violations"].as_array().unwrap().len(), 8);
}

#[test]
fn gevrey_passes_for_small_bases() {
    let out = chord(&["gevrey", "--c", "1", "--k", "2", "--order", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS"), "{text}");
}

#[test]
fn usage_errors_exit_two() {
    let out = chord(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    let out = chord(&["enumerate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oversized_requests_fail_cleanly() {
    let out = chord(&["enumerate", "--n", "30"]);
    assert_eq!(out.status.code(), Some(1));
    // The limit flag lifts the default cap.
    let out = chord(&["enumerate", "--n", "8", "--method", "bruteforce", "--count-only", "--limit", "8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("593859 diagrams"), "{text}");
}
