mod common;

use common::golden::{check_case, CASES};

#[test]
fn golden_transcripts() {
    let failures: Vec<String> = CASES.iter().filter_map(|c| check_case(c).err()).collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn outputs_are_deterministic() {
    for case in CASES {
        let a = common::golden::run_case(case);
        let b = common::golden::run_case(case);
        assert_eq!(a.text, b.text, "{}", case.name);
    }
}

#[test]
fn classify_output_reparses() {
    use rigidity_core::serial::{from_json, ReportDoc};
    let case = CASES.iter().find(|c| c.name == "classify_112_pruned").unwrap();
    let t = common::golden::run_case(case);
    let stdout = t.text.split("--- stdout\n").nth(1).unwrap().split("--- stderr").next().unwrap();
    let doc: ReportDoc = from_json(stdout).unwrap();
    let report = doc.to_report().unwrap();
    assert_eq!(report.automorphisms_found, 16);
    assert_eq!(ReportDoc::from(&report), doc);
}

#[test]
fn factor_output_reparses() {
    use rigidity_core::serial::{from_json, FactorizationDoc};
    let case = CASES.iter().find(|c| c.name == "factor_reverse3").unwrap();
    let t = common::golden::run_case(case);
    let stdout = t.text.split("--- stdout\n").nth(1).unwrap().split("--- stderr").next().unwrap();
    let doc: FactorizationDoc = from_json(stdout).unwrap();
    let f = doc.recompute().unwrap();
    let h_star = rigidity_core::LinearSubstitution::identity(f.g.spec());
    assert_eq!(FactorizationDoc::new(&f.f_star, &h_star, &f), doc);
    assert_eq!(doc.recipe.description, "swap factors 1,3");
}
