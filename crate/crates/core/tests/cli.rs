use std::process::{Command, Output};

fn dynkin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dynkin")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn root_and_ideal_counts() {
    for (ty, roots, ideals) in [("A1", 1, 2), ("A2", 3, 5), ("B2", 4, 6), ("G2", 6, 8)] {
        let (f, n) = ty.split_at(1);
        let o = dynkin(&["roots", f, n]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["positive_roots"].as_array().unwrap().len(), roots, "{ty}");
        let o = dynkin(&["ideals", f, n]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["ideals"].as_array().unwrap().len(), ideals, "{ty}");
    }
}

#[test]
fn verify_passes_on_small_types() {
    for (f, n) in [("A", "2"), ("B", "2"), ("G", "2")] {
        let o = dynkin(&["verify", f, n, "--checks", "all"]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["status"], "pass");
    }
}

#[test]
fn minpoint_reports_exact_values() {
    let o = dynkin(&["minpoint", "A", "2", "--orbit", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1/2"));
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["roots", "Q", "2"][..], &["verify", "A", "0"], &["verify", "A", "2", "--trials", "0"], &["nope"]] {
        assert_eq!(dynkin(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(dynkin(&["--help"]).status.code(), Some(0));
}

#[test]
fn output_independent_of_jobs() {
    let a = dynkin(&["verify", "B", "3", "--checks", "all", "--jobs", "1"]);
    let b = dynkin(&["verify", "B", "3", "--checks", "all", "--jobs", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn formats_and_output_file() {
    let o = dynkin(&["verify", "A", "2", "--format", "csv"]);
    assert!(stdout(&o).lines().count() >= 2);
    let o = dynkin(&["verify", "A", "2", "--format", "markdown"]);
    assert!(stdout(&o).starts_with("# A2"));
    let dir = std::env::temp_dir().join(format!("dynkin-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.json");
    let o = dynkin(&["verify", "A", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["header"]["family"], "A");
    std::fs::remove_dir_all(&dir).unwrap();
}
