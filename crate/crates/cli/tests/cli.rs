use std::process::Command;

use semipower::report::{
    GapReport, ImageReport, InfoReport, ObstructionReport, SearchJson, SemigroupJson, SumsetReport,
    VerifyReport,
};
use serde::de::DeserializeOwned;
use serde::Serialize;

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn semipower(args: &[&str]) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("semipower").chain(args.iter().copied());
    let code = semipower::run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn json<T: DeserializeOwned + Serialize>(args: &[&str]) -> (T, String) {
    let mut with_flag = args.to_vec();
    with_flag.push("--json");
    let o = semipower(&with_flag);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let parsed: T = serde_json::from_str(&o.stdout).unwrap();
    (parsed, o.stdout)
}

/// Parsing and re-serializing gives back the exact bytes.
fn assert_round_trip<T: DeserializeOwned + Serialize>(args: &[&str]) -> T {
    let (parsed, raw) = json::<T>(args);
    assert_eq!(
        format!("{}\n", serde_json::to_string(&parsed).unwrap()),
        raw
    );
    parsed
}

#[test]
fn info_on_three_five() {
    let o = semipower(&["info", "--gens", "3,5", "--monoid"]);
    assert_eq!(o.code, 0);
    for line in [
        "gaps: 1,2,4,7",
        "F: 7",
        "theta: 8",
        "alpha: 0",
        "interval: false",
    ] {
        assert!(
            o.stdout.lines().any(|l| l == line),
            "missing {line:?} in\n{}",
            o.stdout
        );
    }
    let info: InfoReport = assert_round_trip(&["info", "--gens", "3,5", "--monoid"]);
    assert_eq!(info.gaps, [1, 2, 4, 7]);
    assert_eq!(
        (info.frobenius, info.critical, info.min_element),
        (Some(7), 8, 0)
    );
    assert_eq!(
        info.semigroup,
        SemigroupJson::Generators {
            generators: vec![3, 5],
            monoid: true
        }
    );
}

#[test]
fn info_window_size() {
    let info: InfoReport = assert_round_trip(&["info", "--from", "2", "--bound", "10"]);
    assert_eq!(info.window.unwrap().size, 511);
    let info: InfoReport = assert_round_trip(&["info", "--from", "0", "--bound", "5", "--reduced"]);
    assert_eq!(info.window.unwrap().size, 32);
}

#[test]
fn complement_input_matches_generators() {
    let a: InfoReport = json(&["info", "--gaps", "1,2,4,7", "--contains-zero"]).0;
    let b: InfoReport = json(&["info", "--gens", "3,5", "--monoid"]).0;
    assert_eq!(
        (a.gaps, a.frobenius, a.critical),
        (b.gaps, b.frobenius, b.critical)
    );
}

#[test]
fn sigma_image() {
    let o = semipower(&["sigma", "--set", "2,4,5"]);
    assert_eq!((o.code, o.stdout.as_str()), (0, "2,3,5\n"));
    let r: ImageReport = assert_round_trip(&["sigma", "--set", "2,4,5", "--set", "0,1,3,6"]);
    assert_eq!(r.images[0].image, [2, 3, 5]);
    assert_eq!(r.images[1].image, [0, 3, 5, 6]);
}

#[test]
fn sumset_keeps_argument_order() {
    let o = semipower(&["sumset", "--set", "0,2", "--interval", "1:3", "--set", "10"]);
    assert_eq!(o.stdout, "11,12,13,14,15\n");
    let r: SumsetReport = assert_round_trip(&["sumset", "--interval", "1:3", "--set", "0,2"]);
    assert_eq!(r.operands, [vec![1, 2, 3], vec![0, 2]]);
    assert_eq!(r.sum, [1, 2, 3, 4, 5]);
}

#[test]
fn gap_and_phi() {
    let o = semipower(&["gap", "--set", "0,3,5,6,8,13"]);
    assert_eq!(o.stdout, "0,3,5,6,8,13: gap set {1,2,3,5}, gap 5\n");
    let r: GapReport = assert_round_trip(&["gap", "--set", "7"]);
    assert_eq!((r.sets[0].gap_set.len(), r.sets[0].gap), (0, 0));

    assert_eq!(semipower(&["phi", "--set", "3,5,9"]).stdout, "0,2,6\n");
    assert_eq!(
        semipower(&["phi", "--inverse", "2", "--set", "0,2,6"]).stdout,
        "2,4,8\n"
    );
    let bad = semipower(&["phi", "--inverse", "2", "--set", "1,2"]);
    assert_eq!(bad.code, 1);
}

#[test]
fn search_three_five_is_identity_only() {
    let args = [
        "search", "--gens", "3,5", "--monoid", "--bound", "13", "--mode", "filtered",
    ];
    let r: SearchJson = assert_round_trip(&args);
    let classes: Vec<&str> = r.survivors.iter().map(|s| s.class.as_str()).collect();
    assert_eq!(classes, ["identity"]);
    assert_eq!(r.carrier_size, 1023);
    assert_eq!(r.claim, "window-verification");
    assert_eq!(r.filters, ["alpha-beta", "gap", "small-sets", "intervals"]);

    // the text report carries the same values
    let text = semipower(&args).stdout;
    assert!(text.contains(&format!("constraints checked: {}\n", r.constraints_checked)));
    assert!(text.contains("survivors: 1\n  identity\n"));
    assert!(text.contains("1023 members"));
}

#[test]
fn search_reduced_is_a_bounded_finding() {
    let r: SearchJson = assert_round_trip(&[
        "search",
        "--gens",
        "3,5",
        "--monoid",
        "--bound",
        "13",
        "--reduced",
    ]);
    assert_eq!(r.claim, "bounded-finding");
    assert!(r.survivors.iter().any(|s| s.class == "identity"));
    let text = semipower(&[
        "search",
        "--gens",
        "3,5",
        "--monoid",
        "--bound",
        "13",
        "--reduced",
    ])
    .stdout;
    assert!(text.contains("claim: bounded-finding"));
}

#[test]
fn raw_search_and_element_search() {
    let r: SearchJson =
        assert_round_trip(&["search", "--from", "0", "--bound", "4", "--mode", "raw"]);
    assert_eq!(r.mode, "raw");
    assert!(r.filters.is_empty());
    assert!(r.survivors.iter().any(|s| s.class == "sigma"));

    let e: SearchJson = assert_round_trip(&["element-search", "--from", "2", "--bound", "16"]);
    assert_eq!(e.target, "elements");
    assert_eq!(e.survivors.len(), 1);
    assert!(e.survivors[0].table.iter().all(|(x, y)| x == y));
}

#[test]
fn obstruction_report() {
    let r: ObstructionReport = assert_round_trip(&["obstruction", "--gens", "3,5", "--monoid"]);
    let o = r.obstruction.unwrap();
    assert_eq!(
        (o.m, o.set, o.image, o.missing),
        (6, vec![6, 8, 9], vec![6, 7, 9], 7)
    );
    let none = semipower(&["obstruction", "--from", "3"]);
    assert!(none.stdout.contains("no obstruction"));
}

#[test]
fn verify_passes_on_known_windows() {
    let r: VerifyReport = assert_round_trip(&["verify", "--from", "2", "--bound", "8"]);
    assert!(r.passed);
    assert_eq!(r.survivors.len(), 2);
    assert!(r.quotient.unwrap().bijective);
    let o = semipower(&["verify", "--gens", "3,5", "--monoid", "--bound", "11"]);
    assert_eq!(o.code, 0, "{}", o.stdout);
    assert!(o.stdout.ends_with("PASS\n"));
}

#[test]
fn exit_codes() {
    // usage: unknown flag, missing inputs, malformed literal
    assert_eq!(semipower(&["info", "--set", "1"]).code, 2);
    assert_eq!(semipower(&["info"]).code, 2);
    assert_eq!(semipower(&["sumset", "--set", "1"]).code, 2);
    assert_eq!(semipower(&["sigma", "--set", "3,2"]).code, 2);
    assert_eq!(semipower(&["sigma", "--set", "a"]).code, 2);
    assert_eq!(semipower(&["search", "--from", "0"]).code, 2);
    assert_eq!(semipower(&["frobnicate"]).code, 2);
    // domain: bad semigroup, cap, preconditions
    let gcd = semipower(&["info", "--gens", "2,4"]);
    assert_eq!(gcd.code, 1);
    assert_eq!(gcd.stderr.lines().count(), 1);
    assert_eq!(
        semipower(&["info", "--gaps", "2", "--contains-zero"]).code,
        1
    );
    let cap = semipower(&[
        "search",
        "--from",
        "0",
        "--bound",
        "12",
        "--max-carrier",
        "100",
    ]);
    assert_eq!(cap.code, 1);
    assert!(cap.stderr.contains("--max-carrier"));
    assert_eq!(
        semipower(&["element-search", "--gens", "3,5", "--bound", "20"]).code,
        1
    );
    assert_eq!(
        semipower(&["search", "--from", "0", "--bound", "64"]).code,
        1
    );
    // help is not an error
    assert_eq!(semipower(&["--help"]).code, 0);
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_semipower");
    let ok = Command::new(bin)
        .args(["sigma", "--set", "2,4,5"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "2,3,5\n");
    let usage = Command::new(bin).args(["sigma"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    let domain = Command::new(bin)
        .args(["info", "--gens", "4,6"])
        .output()
        .unwrap();
    assert_eq!(domain.status.code(), Some(1));
}
