#![allow(dead_code)]

use std::path::PathBuf;

use milnor_cli::{run, Outcome};

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(name: &str) -> String {
    fixtures().join(name).to_string_lossy().into_owned()
}

pub fn milnor(args: &[&str]) -> Outcome {
    milnor_stdin(args, "")
}

pub fn milnor_stdin(args: &[&str], input: &str) -> Outcome {
    let mut full = vec!["milnor"];
    full.extend_from_slice(args);
    run(full, &mut input.as_bytes())
}

/// Fixture files and the links they hold (`None` for single-link files).
pub const LINKS: &[(&str, Option<&str>)] = &[
    ("four_component.link", Some("L")),
    ("four_component.link", Some("Lprime")),
    ("borromean.link", None),
    ("hopf.link", None),
    ("unlink3.link", None),
];

pub const FIXTURE_FILES: &[&str] = &[
    "four_component.link",
    "borromean.link",
    "hopf.link",
    "unlink3.link",
];

/// Golden file name and the argument list that must reproduce it.
pub fn golden_cases() -> Vec<(String, Vec<String>)> {
    let mut cases = Vec::new();
    for &(file, name) in LINKS {
        let stem = file.trim_end_matches(".link");
        let tag = match name {
            Some(n) => format!("{stem}_{n}"),
            None => stem.to_string(),
        };
        let base = |cmd: &str| {
            let mut v = vec![cmd.to_string(), fixture(file)];
            v.extend(name.map(str::to_string));
            v
        };
        cases.push((format!("invariant_{tag}.txt"), base("invariant")));
        let mut tsv = base("invariant");
        tsv.extend(["--format".into(), "tsv".into()]);
        cases.push((format!("invariant_tsv_{tag}.txt"), tsv));
        cases.push((format!("normalize_{tag}.txt"), base("normalize")));
        if stem != "borromean" {
            cases.push((format!("longitudes_{tag}.txt"), base("longitudes")));
            cases.push((format!("presentation_{tag}.txt"), base("presentation")));
        }
    }
    let fixed = |s: &[&str]| s.iter().map(|a| a.to_string()).collect::<Vec<_>>();
    cases.push((
        "quotient_n4_ones.txt".into(),
        fixed(&["quotient", "--n", "4", "--lk", "ones"]),
    ));
    cases.push((
        "quotient_n5_zero.txt".into(),
        fixed(&["quotient", "--n", "5", "--lk", "zero"]),
    ));
    cases.push(("realize_3.txt".into(), fixed(&["realize", "3"])));
    cases
}

/// Runs every golden case; returns the names that differ.
pub fn golden_mismatches() -> Vec<String> {
    let mut bad = Vec::new();
    for (golden, args) in golden_cases() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let out = milnor(&args);
        let want =
            std::fs::read_to_string(fixtures().join("golden").join(&golden)).unwrap_or_default();
        if out.code != 0 || out.stdout != want {
            bad.push(golden);
        }
    }
    bad
}
