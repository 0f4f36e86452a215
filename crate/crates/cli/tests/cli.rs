use std::process::{Command, Output};

use polyoperad::presentations::{relation_spaces_equal, PresentationJson};
use polyoperad::verify::VerificationReport;
use polyoperad::{build_presentation, koszul_dual, Family, Presentation};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyoperad")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap().trim_end().to_string()
}

#[test]
fn dims_tdendr() {
    assert_eq!(stdout(&["dims", "TDendr", "2", "5"]), "1, 5, 31, 215, 1597");
    assert_eq!(stdout(&["dims", "Dup", "2", "6"]), "1, 4, 20, 112, 672, 4224");
    assert_eq!(stdout(&["dims", "DAs", "2", "4", "--computed"]), "1, 2, 6, 22");
}

#[test]
fn dims_json() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&["--json", "dims", "As", "3", "4"])).unwrap();
    assert_eq!(v["dims"], serde_json::json!([1, 3, 3, 3]));
    assert_eq!(v["family"], "As");
}

#[test]
fn normal_form() {
    assert_eq!(stdout(&["nf", "As", "2", "star_2(star_1(.,.),.)"]), "star_2(.,star_2(.,.))");
    assert_eq!(stdout(&["nf", "Dup", "2", "ul_1(ur_2(.,.),.)"]), "ur_2(.,ul_1(.,.))");
}

#[test]
fn tree_parse_errors_point_at_the_position() {
    let out = run(&["nf", "As", "2", "star_2(star_1(.,.),."]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("position 20"), "{err}");
    let caret = err.lines().last().unwrap();
    assert_eq!(caret.find('^'), Some(2 + 20));
}

#[test]
fn usage_errors_exit_two() {
    for args in [&["bogus"][..], &["dims", "Nope", "1", "3"], &["verify", "no-such-suite"], &["export", "tree", "As", "1"]] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn series_and_duality_check() {
    assert_eq!(stdout(&["series", "TDendr", "1", "4"]), "1, 3, 11, 45");
    assert_eq!(stdout(&["series", "--check-dual", "Dendr", "Dias", "3", "8"]), "PASS");
    let out = run(&["series", "--check-dual", "As", "Dendr", "2", "8"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "FAIL");
}

#[test]
fn dual_json_round_trips() {
    for (fam, g) in [("As", "2"), ("Dendr-harpoon", "2"), ("TDendr", "1")] {
        let j: PresentationJson = serde_json::from_str(&stdout(&["--json", "dual", fam, g])).unwrap();
        let parsed = Presentation::from_json(&j).unwrap();
        let direct = koszul_dual(&build_presentation(fam.parse().unwrap(), g.parse().unwrap(), None).unwrap()).unwrap();
        assert_eq!(parsed.relation_span().unwrap(), direct.relation_span().unwrap());
        assert_eq!(parsed.signature(), direct.signature());
    }
}

#[test]
fn exported_presentation_matches() {
    let j: PresentationJson = serde_json::from_str(&stdout(&["export", "presentation", "DAs", "3"])).unwrap();
    let p = Presentation::from_json(&j).unwrap();
    let q = build_presentation(Family::DAsLozenge, 3, None).unwrap();
    let id = polyoperad::presentations::positional_substitution(q.signature(), p.signature()).unwrap();
    assert!(relation_spaces_equal(&q, &p, &id).unwrap());
}

#[test]
fn compositions_and_products() {
    assert_eq!(stdout(&["compose", "schroder", "1(.,.)", "1", "1(.,.)"]), "1(.,.,.)");
    assert_eq!(stdout(&["compose", "schroder", "1(.,.)", "1", "2(.,.)"]), "1(2(.,.),.)");
    assert_eq!(stdout(&["compose", "tree", "Dup", "2", "ul_1(.,.)", "2", "ur_2(.,.)"]), "ul_1(.,ur_2(.,.))");
    // the two one-node trees multiply to the two trees with two nodes
    let p = stdout(&["product", "1", "prec_1", "(.,.)", "(.,.)"]);
    assert_eq!(p, "(.,(.,.))[inf,1]");
    let s = stdout(&["product", "1", "succ_1", "(.,.)", "(.,.)"]);
    assert_eq!(s, "((.,.),.)[1,inf]");
    let out = run(&["product", "1", "prec_2", "(.,.)", "(.,.)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn associativity() {
    let out = stdout(&["assoc", "classify", "Dup", "2", "--prime", "7"]);
    assert!(out.starts_with("4 associative lines"), "{out}");
    assert_eq!(out.lines().count(), 5);
    assert!(stdout(&["assoc", "check", "Dendr", "2", "0,1,0,1"]).starts_with("PASS"));
    assert_eq!(run(&["assoc", "check", "Dendr", "1", "1,-1"]).status.code(), Some(1));
}

#[test]
fn butterfly_and_verify_reports() {
    let r: VerificationReport = serde_json::from_str(&stdout(&["--json", "butterfly", "verify", "2"])).unwrap();
    assert!(r.passed());
    assert_eq!(r.checks.len(), 2);
    let text = stdout(&["verify", "dual-roundtrip"]);
    assert!(text.lines().all(|l| l.starts_with("PASS") || l == "overall: PASS"), "{text}");
    let r: VerificationReport = serde_json::from_str(&stdout(&["--json", "verify", "rewriting", "hilbert"])).unwrap();
    assert!(r.passed() && !r.checks.is_empty());
}

#[test]
fn dot_export() {
    let dot = stdout(&["export", "--dot", "tree", "As", "2", "star_1(.,star_2(.,.))"]);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("shape=circle").count(), 2);
    assert_eq!(dot.matches("shape=square").count(), 3);
}

#[test]
fn deterministic_output() {
    let args = ["--json", "verify", "free-laws", "--seed", "7"];
    assert_eq!(stdout(&args), stdout(&args));
}
