use localfield::claims::{
    builtin_corpus, golden_script, parse_claim_file, ClaimError, ClaimKind, Expect, GoldenForm, Overrides, Registry,
    COVERAGE, GOLDEN_N, Q_FAMILY,
};
use localfield::variety::Verdict;

const REQUIRED: [&str; 15] = [
    "point_sqrt_t",
    "point_cbrt_t",
    "point_q_family",
    "point_infinity",
    "golden_nonlift",
    "k3_cover_two_forms_obstructed",
    "k3_lift_sqrt_t",
    "k3_lift_infinity",
    "lemma91_property",
    "lemma91_case_partition",
    "orbifold_gt_threshold",
    "pullback_orbifold_bases",
    "semigroup_facts",
    "index_facts",
    "perturbation_sweep",
];

#[test]
fn builtin_registry_has_the_required_claims() {
    let reg = Registry::builtin();
    assert!(reg.len() >= 15);
    for name in REQUIRED {
        assert!(reg.get(name).is_some(), "missing {name}");
    }
    let mut names: Vec<_> = reg.claims().iter().map(|c| c.name.clone()).collect();
    names.sort();
    names.dedup();
    assert_eq!(names.len(), reg.len(), "claim names repeat");
}

#[test]
fn coverage_list_points_at_real_claims() {
    let reg = Registry::builtin();
    for (what, claim) in COVERAGE {
        assert!(reg.get(claim).is_some(), "{what} -> {claim}");
    }
    for name in REQUIRED {
        assert!(COVERAGE.iter().any(|(_, c)| *c == name), "{name} not in coverage list");
    }
}

#[test]
fn parametrized_claims_expand_to_every_instance() {
    let reg = Registry::builtin();
    let family = &reg.get("point_q_family").unwrap().scripts;
    for q in Q_FAMILY {
        assert!(family.contains(&format!("point_q{q}")));
    }
    let golden = &reg.get("golden_nonlift").unwrap().scripts;
    for n in GOLDEN_N {
        assert!(golden.contains(&format!("golden_shifted_n{n}")));
    }
}

#[test]
fn loaded_claims_take_their_script_kind() {
    let mut reg = Registry::empty();
    reg.load_str("claim o\norbifold genus 0 marks [2, 3, 7]\nexpect: general_type\n\nclaim s\nplace: t = 0\nsquare: t\nexpect: nonsquare\n")
        .unwrap();
    assert_eq!(reg.get("o").unwrap().kind, ClaimKind::OrbifoldFact);
    assert_eq!(reg.get("s").unwrap().kind, ClaimKind::SquarenessCertificate);
}

#[test]
fn unknown_claim_is_an_error() {
    let err = Registry::builtin().run("nope", &Overrides::default()).unwrap_err();
    assert!(matches!(err, ClaimError::UnknownClaim(n) if n == "nope"));
}

#[test]
fn zero_overrides_are_rejected() {
    let reg = Registry::builtin();
    let ov = Overrides { precision: Some(0), ..Overrides::default() };
    assert!(matches!(reg.run("point_sqrt_t", &ov), Err(ClaimError::BadOverride(_))));
    let ov = Overrides { samples: Some(0), ..Overrides::default() };
    assert!(matches!(reg.run_all(None, &ov), Err(ClaimError::BadOverride(_))));
}

#[test]
fn empty_and_comment_only_files_load_nothing() {
    assert!(parse_claim_file("").unwrap().is_empty());
    assert!(parse_claim_file("# nothing here\n\n   \n").unwrap().is_empty());
    let mut reg = Registry::empty();
    assert!(reg.load_str("").unwrap().is_empty());
    assert!(reg.is_empty());
}

#[test]
fn duplicate_names_in_one_file() {
    let text = "claim a\norbifold genus 0 marks [2, 3, 7]\nexpect: general_type\n\nclaim a\norbifold genus 1 marks []\nexpect: not_general_type\n";
    let err = parse_claim_file(text).unwrap_err();
    assert_eq!(err.line, 5);
    let mut reg = Registry::empty();
    assert!(reg.load_str(text).is_err());
}

#[test]
fn loading_a_builtin_name_is_a_duplicate() {
    let mut reg = Registry::builtin();
    let err = reg.load_str("claim golden_nonlift\norbifold genus 0 marks [2, 3, 7]\nexpect: general_type\n").unwrap_err();
    assert!(matches!(err, ClaimError::DuplicateName(n) if n == "golden_nonlift"));
}

#[test]
fn parse_errors_point_at_the_offending_line() {
    let cases = [
        ("claim a\nplace: t = 0\nsquare: t +\nexpect: square\n", 3),
        ("claim a\nplace: t = 0\nsquare: 1\nexpect: maybe\n", 4),
        ("claim a\nsystem:\n  x = y^2\nplace: t = 0\nlet x = q\nexpect: pass\n", 5),
        ("frobnicate\n", 1),
        ("claim a\nplace: t = 0\nlet t = 1\nsquare: 1\nexpect: square\n", 3),
        ("claim a\nplace: t = 0\nsquare: t*k\nexpect: square\n", 3),
    ];
    for (text, line) in cases {
        let err = parse_claim_file(text).unwrap_err();
        assert_eq!(err.line, line, "{text}: {err}");
    }
}

#[test]
fn loaded_claims_run_and_report_failures_with_evidence() {
    let mut reg = Registry::empty();
    let names = reg
        .load_str(
            "claim good\nplace: t = 0 ram 2\nsquare: t\nexpect: square\n\n\
             claim bad\nplace: t = 0\nsquare: t\nexpect: square\n",
        )
        .unwrap();
    assert_eq!(names, ["good", "bad"]);
    let summary = reg.run_all(None, &Overrides::default()).unwrap();
    assert_eq!((summary.passed, summary.failed), (1, 1));
    assert_eq!(summary.exit_code(), 1);
    let bad = reg.run("bad", &Overrides::default()).unwrap();
    assert_eq!(bad.verdict, Verdict::Fail);
    // the evidence carries the script, enough to re-run it alone
    let script = bad.checks[0].evidence["script"].as_str().unwrap().to_string();
    let mut alone = Registry::empty();
    alone.load_str(&script).unwrap();
    assert_eq!(alone.run("bad", &Overrides::default()).unwrap().verdict, Verdict::Fail);
}

#[test]
fn wrong_sign_point_fails_with_its_residual() {
    let rep = Registry::builtin().run("point_sqrt_t_wrong_sign", &Overrides::default()).unwrap();
    assert_eq!(rep.verdict, Verdict::Pass, "the claim expects the failure");
    let report = &rep.checks[0].evidence["report"];
    assert_eq!(report["verdict"], "fail");
    let failed = report["equations"].as_array().unwrap().iter().find(|e| e["outcome"]["status"] == "failed").unwrap();
    assert_eq!(failed["outcome"]["leading"], "2");
}

#[test]
fn reports_are_deterministic() {
    let reg = Registry::builtin();
    let ov = Overrides { samples: Some(100), seed: Some(3), ..Overrides::default() };
    for name in ["lemma91_property", "golden_nonlift", "field_axioms"] {
        let a = reg.run(name, &ov).unwrap().to_json();
        let b = reg.run(name, &ov).unwrap().to_json();
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn corpus_scripts_print_and_parse_back() {
    let scripts = parse_claim_file(&builtin_corpus()).unwrap();
    for s in &scripts {
        let mut again = parse_claim_file(&s.to_string()).unwrap();
        assert_eq!(again.len(), 1);
        again[0].line = s.line;
        assert_eq!(again[0], *s);
    }
}

#[test]
fn golden_scripts_expect_what_their_form_says() {
    for n in GOLDEN_N {
        let text = golden_script(n, GoldenForm::Plain);
        let s = &parse_claim_file(&text).unwrap()[0];
        assert_eq!(s.expect, Expect::Obstructed);
        assert_eq!(s.kind(), ClaimKind::LiftTest);
        assert!(text.contains(&format!("ram {}", 2 * n)));
    }
}

#[test]
fn kind_names_roundtrip() {
    for k in ClaimKind::ALL {
        assert_eq!(k.as_str().parse::<ClaimKind>().unwrap(), k);
    }
}
