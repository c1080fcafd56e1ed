use std::fs;
use std::process::{Command, Output};

fn repzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repzeta"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn sl2_census_counts_classes() {
    let o = repzeta(&["census", "sl2", "--p", "3", "--k", "2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("classes: 25"));
    let o = repzeta(&["census", "sl2", "--p", "3", "--k", "2", "--flavor", "charp"]);
    assert!(stdout(&o).contains("classes: 25"));
}

#[test]
fn audit_passes() {
    let o = repzeta(&["bounds-audit", "--x-max", "50", "--md-max", "50"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("global min ≥ 1/15: PASS"), "{s}");
    assert!(s.contains("global min: 1/15"));
}

#[test]
fn witten_estimate_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("a2.csv");
    let o = repzeta(&[
        "witten",
        "--type",
        "A",
        "--rank",
        "2",
        "--max-dim",
        "1000000",
        "--estimate-abscissa",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let line = stdout(&o)
        .lines()
        .find(|l| l.starts_with("abscissa estimate"))
        .unwrap()
        .to_string();
    let v: f64 = line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!((v - 2.0 / 3.0).abs() < 0.08);
    let csv = fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("degree,multiplicity,cumulative\n1,1,1\n3,2,3\n"));
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("a2.csv.manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["subcommand"], "witten");
    assert_eq!(manifest["output_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 4] = [
        &["probe", "--s", "2", "--schedule", "100,1000"],
        &["alt", "--k", "9", "--format", "json"],
        &["local", "--q", "5", "--s", "2.5", "--level", "3"],
        &["census", "sl2", "--p", "5", "--k", "1", "--format", "json"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut files = Vec::new();
        for rep in 0..2 {
            let out = dir.path().join(format!("{i}-{rep}.dat"));
            let mut a: Vec<&str> = args.to_vec();
            let o = out.to_str().unwrap().to_string();
            a.extend(["--out", &o]);
            assert!(repzeta(&a).status.success(), "{args:?}");
            let mut m = out.clone().into_os_string();
            m.push(".manifest.json");
            files.push((fs::read(&out).unwrap(), fs::read(&m).unwrap()));
        }
        assert_eq!(files[0], files[1], "{args:?}");
    }
}

#[test]
fn alt_and_local_summaries() {
    let s = stdout(&repzeta(&["alt", "--k", "5", "--s", "1"]));
    assert!(s.contains("irreducibles of A5: 5"));
    assert!(s.contains("2.11666666667e0"), "{s}");
    let s = stdout(&repzeta(&["local", "--q", "3", "--s", "2"]));
    assert!(s.contains("5.17361111111e0"), "{s}");
    let s = stdout(&repzeta(&["euler", "--s", "3", "--prime-bound", "3"]));
    assert!(s.contains("primes used: 1"));
}

#[test]
fn precondition_failures_are_diagnosed() {
    for (args, needle) in [
        (&["local", "--q", "4"][..], "even"),
        (&["census", "sl2", "--p", "3", "--k", "4"][..], "472392"),
        (&["witten", "--type", "E", "--rank", "5"][..], "E5"),
        (&["probe", "--s", "1.5"][..], "2 < s <= 3"),
        (&["alt", "--k", "3"][..], "k = 3"),
        (&["bounds-audit", "--x-max", "2"][..], "x_max"),
        (&["euler", "--s", "0.5", "--prime-bound", "10"][..], "s > 1"),
    ] {
        let o = repzeta(args);
        assert!(!o.status.success(), "{args:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(needle), "{args:?}: {err}");
    }
    let o = repzeta(&["witten", "--bogus"]);
    assert!(!o.status.success());
}
