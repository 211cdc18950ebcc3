mod common;

use common::{fixture, golden_cases, golden_mismatches, milnor, milnor_stdin, FIXTURE_FILES};
use milnor_cli::{EXIT_DISTINCT, EXIT_INCOMPARABLE, EXIT_INVALID, EXIT_NOT_FOUND, EXIT_OK};
use milnor_core::{parse_link_file, serialize_link_file};
use std::process::Command;

#[test]
fn goldens_match() {
    assert!(golden_cases().len() >= 20);
    let bad = golden_mismatches();
    assert!(bad.is_empty(), "golden mismatch: {bad:?}");
}

#[test]
fn output_is_deterministic() {
    for (_, args) in golden_cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_eq!(milnor(&args), milnor(&args));
    }
}

#[test]
fn compare_verdicts() {
    let p = fixture("four_component.link");
    let out = milnor(&["compare", &p, "L", &p, "Lprime"]);
    assert_eq!(out.code, EXIT_DISTINCT);
    assert!(out.stdout.starts_with("DISTINCT in M\n"));
    assert!(out.stdout.contains("L = (1), Lprime = (0)"));

    let out = milnor(&["compare", &p, "L", &p, "L"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, "EQUAL in M\n"));

    let b = fixture("borromean.link");
    let out = milnor(&["compare", &p, "L", &b, "borromean"]);
    assert_eq!(out.code, EXIT_INCOMPARABLE);
    assert_eq!(out.stdout, "INCOMPARABLE (linking numbers differ)\n");

    let u = fixture("unlink3.link");
    let out = milnor(&["compare", &b, "borromean", &u, "unlink"]);
    assert_eq!(out.code, EXIT_DISTINCT);
}

#[test]
fn normalized_output_reparses_with_same_class() {
    let p = fixture("four_component.link");
    for name in ["L", "Lprime"] {
        let norm = milnor(&["normalize", &p, name]);
        assert_eq!(norm.code, EXIT_OK);
        assert!(norm.stdout.contains("# m - t preserved exactly: yes"));
        let again = milnor_stdin(&["invariant", "-", name], &norm.stdout);
        let orig = milnor(&["invariant", &p, name]);
        let tail = |s: &str| {
            s.lines()
                .skip_while(|l| !l.starts_with("M = "))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(tail(&again.stdout), tail(&orig.stdout));
        let n2 = milnor_stdin(&["normalize", "-"], &norm.stdout);
        assert!(n2.stdout.contains("# 0 moves"));
    }
}

#[test]
fn realize_round_trip() {
    for m in -5..=5 {
        let m_arg = m.to_string();
        let out = milnor(&["realize", &m_arg]);
        assert_eq!(out.code, EXIT_OK);
        let inv = milnor_stdin(&["invariant", "-"], &out.stdout);
        assert!(
            inv.stdout.ends_with(&format!("f = {m}\n")),
            "{}",
            inv.stdout
        );
    }
    let dir = std::env::temp_dir().join(format!("milnor-realize-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f.link");
    let path_s = path.to_string_lossy().into_owned();
    let out = milnor(&["realize", "2", "--output", &path_s, "--name", "two"]);
    assert_eq!((out.code, out.stdout.as_str()), (EXIT_OK, ""));
    let inv = milnor(&["invariant", &path_s, "two"]);
    assert!(inv.stdout.ends_with("f = 2\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn error_exit_codes() {
    let p = fixture("four_component.link");
    assert_eq!(milnor(&["invariant", &p, "nope"]).code, EXIT_NOT_FOUND);
    assert_eq!(milnor(&["invariant", &p]).code, EXIT_NOT_FOUND);
    assert_eq!(
        milnor(&["invariant", "/nonexistent/x.link"]).code,
        EXIT_NOT_FOUND
    );

    let out = milnor_stdin(&["invariant", "-"], "link a\ncomponents 3\nbogus 1\n");
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.starts_with("-:3:1:"), "{}", out.stderr);

    let self_letter = "link a\ncomponents 3\nword 1 1 2\n";
    assert_eq!(
        milnor_stdin(&["invariant", "-"], self_letter).code,
        EXIT_INVALID
    );
    let asym = "link a\ncomponents 3\nword 1 2\n";
    assert_eq!(milnor_stdin(&["invariant", "-"], asym).code, EXIT_INVALID);

    let b = fixture("borromean.link");
    assert_eq!(milnor(&["invariant", &b]).code, EXIT_OK);
    assert_eq!(milnor(&["--strict", "invariant", &b]).code, EXIT_INVALID);
    assert_eq!(milnor(&["longitudes", &b]).code, EXIT_INVALID);
    assert_eq!(milnor(&["presentation", &b]).code, EXIT_INVALID);

    let h = fixture("hopf.link");
    assert_eq!(milnor(&["presentation", &h, "--k", "1"]).code, EXIT_INVALID);
    assert_eq!(
        milnor(&["longitudes", &h, "--degree", "4"]).code,
        EXIT_INVALID
    );
    assert_eq!(
        milnor(&["quotient", "--n", "4", "--lk", "1,2"]).code,
        EXIT_INVALID
    );
    assert_eq!(milnor(&["frobnicate"]).code, EXIT_INVALID);
    assert_eq!(milnor(&["--help"]).code, EXIT_OK);
}

#[test]
fn quotient_lists() {
    let out = milnor(&["quotient", "--n", "3", "--lk", "2,4,6"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("M = Z/2\n"), "{}", out.stdout);
    let out = milnor(&["quotient", "--n", "2", "--lk", "ones"]);
    assert!(out.stdout.ends_with("M = 0\n"), "{}", out.stdout);
}

#[test]
fn degree_three_longitudes() {
    let p = fixture("four_component.link");
    let out = milnor(&["longitudes", &p, "L", "--degree", "3"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("magnus (degree 3)"));
    assert!(out.stdout.contains("PASS (24 triples)"));
}

#[test]
fn fixtures_round_trip() {
    for file in FIXTURE_FILES {
        let text = std::fs::read_to_string(fixture(file)).unwrap();
        let links = parse_link_file(&text).unwrap();
        assert_eq!(
            parse_link_file(&serialize_link_file(&links)).unwrap(),
            links
        );
    }
}

#[test]
fn binary_reads_stdin_and_sets_exit_code() {
    use std::io::Write;
    use std::process::Stdio;
    let exe = env!("CARGO_BIN_EXE_milnor");
    let text = std::fs::read_to_string(fixture("borromean.link")).unwrap();
    let mut child = Command::new(exe)
        .args(["invariant", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(text.as_bytes())
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let want =
        std::fs::read_to_string(common::fixtures().join("golden/invariant_borromean.txt")).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), want);

    let p = fixture("four_component.link");
    let out = Command::new(exe)
        .args(["compare", &p, "L", &p, "Lprime"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_DISTINCT));
    let out = Command::new(exe)
        .args(["invariant", &p, "missing"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_NOT_FOUND));
    assert!(!out.stderr.is_empty());
}
