use std::fs;
use std::process::{Command, Output};

use autosync::cli::Artifact;
use autosync::oracles::{FactorKind, FactorTable, PrefixView};
use autosync::sequences::{builtin, builtin_file};

fn autosync(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_autosync")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn build_then_eval_complexity() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rho.txt");
    let dot = dir.path().join("rho.dot");
    let o = autosync(&[
        "build",
        "--seq",
        "thue_morse",
        "--analysis",
        "complexity",
        "--out",
        out.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(fs::read_to_string(&dot).unwrap().starts_with("digraph"));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("# source thue_morse"));
    assert!(text.contains("# analysis complexity"));

    let o = autosync(&["eval", out.to_str().unwrap(), "--n", "6"]);
    assert_eq!(stdout(&o), "16\n10000\n");
    let o = autosync(&["eval", out.to_str().unwrap(), "--n", "0"]);
    assert_eq!(stdout(&o).lines().next(), Some("1"));
    let o = autosync(&["eval", out.to_str().unwrap(), "--range", "0..4"]);
    assert_eq!(stdout(&o), "n\tvalue\tvalue_base_k\n0\t1\t1\n1\t2\t10\n2\t4\t100\n3\t6\t110\n4\t10\t1010\n");
}

#[test]
fn blockcount_artifact_reproduces_table() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("e.txt");
    let o = autosync(&["build", "--seq", "thue_morse", "--analysis", "blockcount", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let o = autosync(&["eval", out.to_str().unwrap(), "--range", "0..14"]);
    let values: Vec<String> = stdout(&o).lines().skip(1).map(|l| l.split('\t').nth(1).unwrap().to_string()).collect();
    assert_eq!(values.join(","), "1,1,2,1,3,1,5,3,3,1,5,5,5,3,3");
}

#[test]
fn reloaded_artifacts_match_oracles() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["thue_morse", "paperfolding", "period_doubling", "powers_of_two_char"] {
        let x = builtin(name).unwrap().dfao;
        let table = FactorTable::build(&PrefixView::from_dfao(name, &x), 64).unwrap();
        for (analysis, want) in [
            ("complexity", Box::new(|n| table.count(n, FactorKind::Factors)) as Box<dyn Fn(usize) -> u64>),
            ("appearance", Box::new(|n| table.appearance(n))),
            ("powers", Box::new(|n| table.count(n, FactorKind::Powers))),
            ("primitive", Box::new(|n| table.count(n, FactorKind::Primitive))),
        ] {
            let out = dir.path().join(format!("{name}_{analysis}.txt"));
            let o = autosync(&["build", "--seq", name, "--analysis", analysis, "--out", out.to_str().unwrap()]);
            assert!(o.status.success(), "{name} {analysis}");
            let art = Artifact::load(&out).unwrap();
            for n in 0..=64 {
                assert_eq!(art.value(n as u64).unwrap(), want(n), "{name} {analysis} n={n}");
            }
        }
    }
}

#[test]
fn appearance_and_powers_values() {
    let dir = tempfile::tempdir().unwrap();
    let alpha = dir.path().join("a.txt");
    let pw = dir.path().join("p.txt");
    autosync(&["build", "--seq", "thue_morse", "--analysis", "appearance", "--out", alpha.to_str().unwrap()]);
    autosync(&["build", "--seq", "thue_morse", "--analysis", "powers", "--out", pw.to_str().unwrap()]);
    assert_eq!(stdout(&autosync(&["eval", alpha.to_str().unwrap(), "--n", "2"])).lines().next(), Some("5"));
    assert_eq!(stdout(&autosync(&["eval", pw.to_str().unwrap(), "--n", "2"])).lines().next(), Some("2"));
}

#[test]
fn diagram_rows() {
    let o = autosync(&["diagram", "--seq", "thue_morse", "--nmax", "9"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 9);
    assert!(rows[0].starts_with("1 ##..."));
    assert!(rows[5].contains("5 blocks: 0-11|15|19|21|23"));
}

#[test]
fn verify_builtins() {
    for name in ["thue_morse", "powers_of_two_char"] {
        let o = autosync(&["verify", "--seq", name, "--nmax", "256"]);
        assert!(o.status.success(), "{name}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
    assert!(stdout(&autosync(&["verify", "--seq", "powers_of_two_char"])).contains("PASS unbordered"));
}

#[test]
fn verify_catches_corrupted_output_map() {
    let good = builtin_file("thue_morse").unwrap();
    let bad = good.replace("output 1 1", "output 1 0");
    assert_ne!(good, bad, "fixture must change the output map");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tm.txt");
    fs::write(&path, bad).unwrap();
    let o = autosync(&["verify", "--seq", path.to_str().unwrap(), "--nmax", "64"]);
    assert_eq!(o.status.code(), Some(1));
    let report = stdout(&o);
    assert!(report.contains("FAIL dfao matches reference generator: n=1:"), "{report}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.txt");
    let o =
        autosync(&["build", "--seq", "no_such_sequence", "--analysis", "complexity", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = autosync(&[
        "build",
        "--seq",
        "thue_morse",
        "--analysis",
        "complexity",
        "--out",
        out.to_str().unwrap(),
        "--base",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = autosync(&[
        "build",
        "--seq",
        "thue_morse",
        "--analysis",
        "complexity",
        "--out",
        out.to_str().unwrap(),
        "--iter-cap",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("iteration"));
    let o = autosync(&[
        "build",
        "--seq",
        "thue_morse",
        "--analysis",
        "complexity",
        "--out",
        out.to_str().unwrap(),
        "--state-cap",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(3));
    fs::write(&out, "base 2 tracks\n").unwrap();
    assert_eq!(autosync(&["eval", out.to_str().unwrap(), "--n", "1"]).status.code(), Some(2));
    assert_eq!(autosync(&["frobnicate"]).status.code(), Some(2));
}
