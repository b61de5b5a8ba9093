use assert_cmd::Command;
use bilip_cli::{ConeReport, InvariantsReport, SheetsReport, TopologyReport};
use bilip_core::compare::{ObstructionReport, Verdict};
use serde::de::DeserializeOwned;
use serde::Serialize;

fn bilip() -> Command {
    Command::cargo_bin("bilip").unwrap()
}

fn run_json(args: &[&str]) -> String {
    let out = bilip().arg("--json").args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

/// Parses a report and checks it serializes back to the same JSON value.
fn round_trip<T: Serialize + DeserializeOwned>(text: &str) -> T {
    let report: T = serde_json::from_str(text).unwrap();
    let again: serde_json::Value = serde_json::to_value(&report).unwrap();
    let original: serde_json::Value = serde_json::from_str(text).unwrap();
    assert_eq!(again, original);
    report
}

fn code(args: &[&str]) -> i32 {
    bilip().args(args).output().unwrap().status.code().unwrap()
}

#[test]
fn invariants_examples() {
    let r: InvariantsReport = round_trip(&run_json(&["invariants", "x*y - 1"]));
    assert_eq!(r.signature.total_degree, 2);
    assert_eq!(r.signature.component_count, Some(2));
    assert!(r.degree_formula.unwrap().holds);

    let r: InvariantsReport = round_trip(&run_json(&["invariants", "x"]));
    assert_eq!((r.signature.total_degree, r.signature.component_count), (1, Some(1)));
    assert_eq!(r.signature.multiplicities(), Some(vec![1]));

    let r: InvariantsReport = round_trip(&run_json(&["invariants", "y^2 - x^3 - 1"]));
    assert_eq!(r.signature.total_degree, 3);
    assert_eq!(r.signature.multiplicities(), Some(vec![3]));
}

#[test]
fn compare_examples() {
    let r: ObstructionReport = round_trip(&run_json(&["compare", "x*y - 1", "y - x^2"]));
    assert_eq!(r.verdict, Verdict::Distinguished);
    assert_eq!(r.matched.component_count, Some(false));
    assert!(r.matched.total_degree);

    let r: ObstructionReport = round_trip(&run_json(&["compare", "y^2 - x^3 - 1", "x*y - 1"]));
    assert_eq!(r.verdict, Verdict::Distinguished);
    assert!(r
        .justification
        .iter()
        .any(|j| j.invariant == "total-degree" && j.tag == "theorem-curves" && j.differs));

    // (x, y) -> (x + 2y, x - y) applied to the cubic
    let r: ObstructionReport = round_trip(&run_json(&[
        "compare",
        "y^2 - x^3 - 1",
        "(x - y)^2 - (x + 2*y)^3 - 1",
    ]));
    assert_eq!(r.verdict, Verdict::NotDistinguishedByTheseInvariants);
}

#[test]
fn compare_is_symmetric() {
    let ab: ObstructionReport = round_trip(&run_json(&["compare", "x^2 + y^2 - 1", "y^2 - x^4"]));
    let ba: ObstructionReport = round_trip(&run_json(&["compare", "y^2 - x^4", "x^2 + y^2 - 1"]));
    assert_eq!(ab.verdict, ba.verdict);
    assert_eq!(ab.matched, ba.matched);
    assert_eq!((ab.a, ab.b), (ba.b, ba.a));
}

#[test]
fn sheets_examples() {
    let r: SheetsReport = round_trip(&run_json(&["sheets", "y^2 - x^3 - 1"]));
    assert_eq!(r.reports.len(), 1);
    assert_eq!(r.reports[0].sheet_count, 3);
    assert!(r.all_agree);

    for f in ["x*y - 1", "x*y"] {
        let r: SheetsReport = round_trip(&run_json(&["sheets", f]));
        let ks: Vec<u32> = r.reports.iter().map(|s| s.sheet_count).collect();
        assert_eq!(ks, [1, 1], "{f}");
        assert!(r.all_agree);
    }

    let r: SheetsReport = round_trip(&run_json(&[
        "sheets", "y^2 - x^4", "--component", "0", "--eta", "0.05", "--ladder", "6", "--seed", "7",
    ]));
    assert_eq!(r.reports[0].sheet_count, 4);
    assert_eq!(r.diagnostics.seed, 7);
    assert_eq!(r.diagnostics.radii.len(), 7);
}

#[test]
fn topology_examples() {
    let r: TopologyReport = round_trip(&run_json(&["topology", "--smooth-plane-degree", "3"]));
    assert_eq!(r.h2_text, "Z^2 + Z/3");
    assert_eq!(r.recovered_degree, 3);

    let r: TopologyReport = round_trip(&run_json(&["topology", "--b1", "0", "--degree", "2"]));
    assert_eq!(r.h2_text, "Z/2");
    assert_eq!(r.recovered_degree, 2);

    let r: TopologyReport = round_trip(&run_json(&["topology", "--smooth-plane-degree", "1"]));
    assert_eq!(r.h2_text, "0");
    assert_eq!(r.recovered_degree, 1);
}

#[test]
fn cone_of_a_twisted_cubic() {
    let r: ConeReport = round_trip(&run_json(&["cone", "y - x^2; z - x^3"]));
    assert!(r.cone.certified);
    assert_eq!((r.hilbert.krull_dimension, r.hilbert.degree), (1, 3));
}

#[test]
fn reads_files_with_header_and_comments() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.txt");
    std::fs::write(&path, "# twisted cubic\nvars: x, y, z\ny - x^2   # first\nz - x^3\n").unwrap();
    let r: InvariantsReport = round_trip(&run_json(&["invariants", path.to_str().unwrap()]));
    assert_eq!(r.input.vars, ["x", "y", "z"]);
    assert_eq!((r.signature.set_dim, r.signature.total_degree), (1, 3));
    assert!(!r.signature.hypersurface);
    assert!(r.caveats.iter().any(|c| c.contains("radical")));
    assert!(r.caveats.iter().any(|c| c.contains("equidimensional")));
}

#[test]
fn local_mode() {
    let r: InvariantsReport = round_trip(&run_json(&[
        "invariants",
        "x^2 + y^2 + z^2",
        "--mode",
        "local-homogeneous",
    ]));
    assert_eq!(r.signature.total_degree, 2);
    assert_eq!(code(&["invariants", "x^2 - y", "--mode", "local-homogeneous"]), 1);
}

#[test]
fn text_output() {
    let out = bilip().args(["compare", "x*y - 1", "y - x^2"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: distinguished"));
    assert!(text.contains("theorem-multiplicities"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["invariants", "x^^2"]), 1);
    assert_eq!(code(&["invariants", "1"]), 1);
    assert_eq!(code(&["frobnicate"]), 1);
    assert_eq!(code(&["topology", "--smooth-plane-degree", "0"]), 1);
    assert_eq!(code(&["topology", "--b1", "2"]), 1);
    assert_eq!(code(&["sheets", "y - x^2; z"]), 1);
    assert_eq!(code(&["sheets", "x*y - 1", "--component", "9"]), 1);
    assert_eq!(code(&["sheets", "x*y - 1", "--ladder", "0"]), 1);
    assert_eq!(code(&["sheets", "x*y - 1", "--eta", "2"]), 1);
    // two cone lines 1e-9 apart never separate in any projection
    assert_eq!(code(&["sheets", "y*(y - 1/1000000000*x) - 1"]), 2);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn parse_errors_report_position() {
    let out = bilip().args(["invariants", "x + * y"]).output().unwrap();
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 1"), "{err}");
}
