//! Builtin claims and the checks implemented directly in Rust.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde_json::json;

use crate::orbifold::{
    admissible_subsets, forced_component, pullback_half_marks, snc_point_admits, Multiplicity, MultiplicityProfile,
    OrbifoldCurve, DEFAULT_REPLACEMENT, PULLBACK_ASSUMPTION,
};
use crate::scalar::{int, rat, Rational};
use crate::series::{PlaceTag, SquareMode};
use crate::variety::lemma91::{case_predicates, lemma91_property, partition_exceptions};
use crate::variety::{
    eval, eval_at, parse_expr, solve_square, valuation_string, Binding, LocalBackend, LocalValue, SquareOutcome, Verdict,
};
use crate::FieldTower;

use super::corpus::{golden_script, GoldenForm, GOLDEN_N, Q_FAMILY};
use super::exec::build_point;
use super::props::{backend_agreement, field_axioms, parser_roundtrip, sqrt_roundtrip, PropertyOutcome};
use super::script::parse_claim_file;
use super::{builtin_corpus, Check, Claim, ClaimKind, NativeCheck, Overrides};

fn claim(name: &str, kind: ClaimKind, description: &str, scripts: Vec<String>, native: Option<NativeCheck>) -> Claim {
    Claim { name: name.into(), kind, description: description.into(), scripts, native }
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

pub(super) fn builtin_claims() -> Vec<Claim> {
    use ClaimKind::*;
    let golden = |form: &str| GOLDEN_N.map(|n| format!("golden_{form}_n{n}")).collect::<Vec<_>>();
    let mut golden_all = golden("shifted");
    golden_all.extend(golden("plain"));
    golden_all.extend(golden("twisted"));
    let mut two_forms = golden("plain");
    two_forms.extend(golden("twisted"));
    let mut nonsquare = golden("nonsquare");
    nonsquare.extend(golden("nonsquare_twisted"));
    vec![
        claim(
            "point_sqrt_t",
            PointVerification,
            "the sqrt(t) point satisfies both equations and constraints",
            names(&["point_sqrt_t", "point_sqrt_t_truncated"]),
            None,
        ),
        claim(
            "point_sqrt_t_wrong_sign",
            PointVerification,
            "flipping the sign of y^2 leaves a nonzero residual",
            names(&["point_sqrt_t_wrong_sign"]),
            None,
        ),
        claim(
            "point_cbrt_t",
            PointVerification,
            "the t^(1/3) point, in simplified and unsimplified form",
            names(&["point_cbrt_t", "point_cbrt_t_unsimplified"]),
            Some(cbrt_identity),
        ),
        claim(
            "point_q_family",
            PointVerification,
            "the point at ramification q for q = 3, 5, 7, 9",
            Q_FAMILY.iter().map(|q| format!("point_q{q}")).collect(),
            None,
        ),
        claim(
            "point_infinity",
            PointVerification,
            "the point at t = infinity",
            names(&["point_infinity"]),
            None,
        ),
        claim(
            "golden_nonlift",
            LiftTest,
            "golden-ratio points at ramification 2n, n = 1..5: valuations, existence of y and z, no lift to either cover",
            golden_all,
            Some(golden_valuations),
        ),
        claim(
            "golden_nonsquare",
            SquarenessCertificate,
            "u^2 (t - alpha)^2 - t + alpha and its t^(1/n) twist are not squares",
            nonsquare,
            None,
        ),
        claim(
            "k3_cover_two_forms_obstructed",
            LiftTest,
            "both forms of the double cover are obstructed at the golden-ratio points",
            two_forms,
            None,
        ),
        claim(
            "k3_lift_sqrt_t",
            LiftTest,
            "the sqrt(t) point lifts, with w = i t^(1/2)",
            names(&["k3_sqrt_t_cover", "k3_sqrt_t_witness"]),
            None,
        ),
        claim(
            "k3_lift_infinity",
            LiftTest,
            "the point at infinity lifts, with w^2 = t^2 - t",
            names(&["k3_infinity_cover", "k3_infinity_witness"]),
            None,
        ),
        claim(
            "lemma91_property",
            PropertyTest,
            "local solutions force t^2 u^2 - t to be a square (stratified sampling)",
            vec![],
            Some(lemma91_sampling),
        ),
        claim(
            "lemma91_case_partition",
            PropertyTest,
            "the eight valuation cases partition the plane",
            vec![],
            Some(case_partition),
        ),
        claim(
            "orbifold_gt_threshold",
            OrbifoldFact,
            "general type iff 2g - 2 + sum (1 - 1/m) > 0; d half-marks on P^1 need d >= 5",
            names(&["orbifold_237", "orbifold_236", "orbifold_three_inf", "orbifold_two_inf"]),
            Some(gt_threshold),
        ),
        claim(
            "pullback_orbifold_bases",
            OrbifoldFact,
            "orbifold bases of pullbacks along maps of degree d",
            names(&["orbifold_pullback_d4", "orbifold_pullback_d5", "orbifold_pullback_genus1"]),
            Some(pullback_bases),
        ),
        claim("semigroup_facts", SemigroupFact, "local-point degrees and the multiplicity semigroup", vec![], Some(semigroup_facts)),
        claim("index_facts", SemigroupFact, "inf, gcd and index of multiplicity profiles", vec![], Some(index_facts)),
        claim("snc_criterion", SemigroupFact, "points on intersections of components", vec![], Some(snc_criterion)),
        claim(
            "perturbation_sweep",
            OrbifoldFact,
            "replacing infinite marks by 7 keeps general type",
            vec![],
            Some(perturbation_sweep),
        ),
        claim("field_axioms", PropertyTest, "field axioms over sample towers", vec![], Some(field_suite)),
        claim("sqrt_roundtrip", PropertyTest, "series square roots square back", vec![], Some(sqrt_suite)),
        claim("backend_agreement", PropertyTest, "exact and truncated evaluation agree", vec![], Some(backend_suite)),
        claim("parser_roundtrip", PropertyTest, "the builtin corpus survives print and reparse", vec![], Some(parser_suite)),
    ]
}

fn fail_with(name: &str, e: impl std::fmt::Display) -> Check {
    Check::new(name, Verdict::Fail, format!("error: {e}"), json!({ "error": e.to_string() }))
}

fn cbrt_identity(_: &Overrides) -> Vec<Check> {
    let q = FieldTower::rationals();
    let place = PlaceTag::origin(3);
    let at = |s: &str| eval_at(&parse_expr(s).unwrap(), &place, &q);
    let (lhs, rhs) = match (at("(1 + r - 2*r^2)/(1 - r)"), at("1 + 2*r")) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return vec![fail_with("z simplification", e)],
    };
    let diff = lhs.checked_sub(&rhs).map(|d| d.is_zero()).unwrap_or(false);
    vec![Check::holds(
        "z simplification",
        lhs == rhs && diff,
        format!("(1 + r - 2r^2)/(1 - r) reduces to {lhs}"),
        json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string(), "exact_difference_zero": diff }),
    )]
}

/// Values of the exact bindings of a point, for evaluating expressions.
fn exact_values(point: &crate::variety::PointAssignment) -> BTreeMap<String, LocalValue> {
    point
        .bindings
        .iter()
        .filter_map(|(k, b)| match b {
            Binding::Exact(f) => Some((k.clone(), LocalValue::Exact(f.clone()))),
            _ => None,
        })
        .collect()
}

fn golden_valuations(ov: &Overrides) -> Vec<Check> {
    let mut checks = Vec::new();
    for n in GOLDEN_N {
        checks.push(golden_case(n, ov).unwrap_or_else(|e| fail_with(&format!("valuations n={n}"), e)));
    }
    checks
}

fn golden_case(n: u32, ov: &Overrides) -> Result<Check, Box<dyn std::error::Error>> {
    let e = 2 * n;
    let shifted = parse_claim_file(&golden_script(n, GoldenForm::Shifted))?.remove(0);
    let plain = parse_claim_file(&golden_script(n, GoldenForm::Plain))?.remove(0);
    let sp = build_point(&shifted)?;
    let pp = build_point(&plain)?;
    let order = |script: &super::ClaimScript, point: &crate::variety::PointAssignment, src: &str| -> Result<i64, Box<dyn std::error::Error>> {
        let values = exact_values(point);
        let empty = BTreeMap::new();
        let b = LocalBackend { place: point.place.clone(), tower: script.tower.clone(), values: &values, radicands: &empty };
        match eval(&b, &parse_expr(src)?)? {
            LocalValue::Exact(f) => Ok(f.order_at_zero()?),
            LocalValue::Trunc(_) => unreachable!("exact inputs"),
        }
    };
    let g_star = "u^2*(t - alpha)^2 - t + alpha";
    let lhs1 = "x^2 - t*u^2 + alpha*u^2 + t - alpha";
    let lhs2 = "x^2 - 2*t*u^2 + 2*alpha*u^2 + (t - alpha)^-1";
    let og_star = order(&shifted, &sp, g_star)?;
    let og = order(&plain, &pp, "t^2*u^2 - t")?;
    let o1 = order(&shifted, &sp, lhs1)?;
    let o2 = order(&shifted, &sp, lhs2)?;
    let sys = shifted.system.as_ref().expect("has a system");
    let p = ov.precision();
    let y = solve_square(sys, &parse_expr(lhs1)?, &parse_expr(g_star)?, &sp, SquareMode::OverC, p)?;
    let z = solve_square(sys, &parse_expr(lhs2)?, &parse_expr(&format!("(t - alpha)*({g_star})"))?, &sp, SquareMode::OverC, p)?;
    let witness = |s: &SquareOutcome| match s {
        SquareOutcome::Witness { root, tower, order } => {
            json!({ "order": order, "root_lead": root.lead(), "root_tower": tower.to_string() })
        }
        other => json!({ "outcome": format!("{other:?}") }),
    };
    let ok_sq = |s: &SquareOutcome| matches!(s, SquareOutcome::Witness { .. });
    let ok = og_star == 1 && og == 1 && o1 == 1 && o2 == 1 && ok_sq(&y) && ok_sq(&z);
    Ok(Check::holds(
        format!("valuations n={n}"),
        ok,
        format!(
            "ram {e}: order of g = {og_star} (shifted) and {og} (original), valuation {}; lhs orders {o1}, {o2}; y and z {}",
            valuation_string(og_star, e),
            if ok_sq(&y) && ok_sq(&z) { "exist" } else { "missing" }
        ),
        json!({
            "n": n,
            "ram": e,
            "order_g_shifted": og_star,
            "order_g_original": og,
            "valuation_g": valuation_string(og_star, e),
            "order_lhs1": o1,
            "order_lhs2": o2,
            "y": witness(&y),
            "z": witness(&z),
            "bindings": sp.describe(),
        }),
    ))
}

fn property_check(name: &str, o: &PropertyOutcome) -> Check {
    Check::holds(
        name,
        o.passed(),
        format!("{}: {} cases, {} failures", o.property, o.checked, o.failures.len()),
        serde_json::to_value(o).expect("serializes"),
    )
}

fn lemma91_sampling(ov: &Overrides) -> Vec<Check> {
    let samples = ov.samples.unwrap_or(500);
    let stats = lemma91_property(samples, ov.seed());
    let every_case = stats.per_case.iter().all(|&c| c > 0);
    vec![
        Check::holds(
            "no counterexamples",
            stats.counterexamples.is_empty() && stats.premise_held > 0,
            format!(
                "{} samples (seed {}), premise held in {}, {} counterexamples",
                stats.samples,
                stats.seed,
                stats.premise_held,
                stats.counterexamples.len()
            ),
            serde_json::to_value(&stats).expect("serializes"),
        ),
        Check::holds(
            "stratification",
            every_case && stats.stratum_mismatches == 0,
            format!("per-case counts {:?}, {} stratum mismatches", stats.per_case, stats.stratum_mismatches),
            json!({ "per_case": stats.per_case, "stratum_mismatches": stats.stratum_mismatches }),
        ),
    ]
}

fn case_partition(_: &Overrides) -> Vec<Check> {
    let (checked, bad) = partition_exceptions(6, 12);
    let mut hit = [0usize; 8];
    for d in 1..=6 {
        for a in -12..=12 {
            for b in -12..=12 {
                for (k, p) in case_predicates(&rat(a, d), &rat(b, d)).iter().enumerate() {
                    if *p {
                        hit[k] += 1;
                    }
                }
            }
        }
    }
    let bad_s: Vec<String> = bad.iter().take(10).map(|(u, x)| format!("({u}, {x})")).collect();
    vec![
        Check::holds(
            "exactly one case",
            bad.is_empty(),
            format!("{checked} grid points, {} exceptions", bad.len()),
            json!({ "checked": checked, "exceptions": bad_s }),
        ),
        Check::holds(
            "every case occurs",
            hit.iter().all(|&h| h > 0),
            format!("grid points per case {hit:?}"),
            json!({ "per_case": hit }),
        ),
    ]
}

fn gt_threshold(_: &Overrides) -> Vec<Check> {
    let mut wrong = Vec::new();
    for d in 1..=50u32 {
        let c = pullback_half_marks(0, d).expect("d >= 1");
        if c.is_general_type() != (d >= 5) {
            wrong.push(format!("genus 0, d = {d}"));
        }
    }
    let mut bad_degree = Vec::new();
    for g in 0..=3u32 {
        for d in 1..=50u32 {
            let c = pullback_half_marks(g, d).expect("d >= 1");
            let expected = int(2 * i64::from(g) - 2) + rat(i64::from(d), 2);
            if c.degree() != expected {
                bad_degree.push(format!("g = {g}, d = {d}: {} != {expected}", c.degree()));
            }
        }
    }
    vec![
        Check::holds(
            "threshold d >= 5",
            wrong.is_empty(),
            format!("genus 0 with d half-marks, 1 <= d <= 50: {} mismatches", wrong.len()),
            json!({ "mismatches": wrong }),
        ),
        Check::holds(
            "degree formula",
            bad_degree.is_empty(),
            format!("degree = 2g - 2 + d/2 for g <= 3, d <= 50: {} mismatches", bad_degree.len()),
            json!({ "mismatches": bad_degree }),
        ),
    ]
}

fn pullback_bases(_: &Overrides) -> Vec<Check> {
    let mut wrong = Vec::new();
    for g in 0..=3u32 {
        for d in 1..=12u32 {
            let c = pullback_half_marks(g, d).expect("d >= 1");
            let shape = c.marks().len() == d as usize
                && c.multiplicities().iter().all(|&m| m == Multiplicity::Finite(2))
                && c.genus() == g;
            let gt_expected = !(g == 0 && d <= 4);
            if !shape || c.is_general_type() != gt_expected {
                wrong.push(format!("g = {g}, d = {d}: {c}"));
            }
        }
    }
    vec![Check::holds(
        "half-mark bases",
        wrong.is_empty(),
        format!("not of general type exactly for genus 0 and d <= 4 (g <= 3, d <= 12): {} mismatches", wrong.len()),
        json!({ "mismatches": wrong, "assumption": PULLBACK_ASSUMPTION }),
    )]
}

/// Membership by enumerating `i a + j b` with `i, j <= m`.
fn brute_pair(a: u32, b: u32, m: u32) -> bool {
    (0..=m).any(|i| (0..=m).any(|j| i * a + j * b == m))
}

fn semigroup_facts(_: &Overrides) -> Vec<Check> {
    let mut mismatches = Vec::new();
    let mut checked = 0usize;
    for a in 1..=10u32 {
        for b in 1..=10u32 {
            let p = MultiplicityProfile::new(vec![a, b]).expect("positive");
            for m in 0..=60u32 {
                checked += 1;
                if p.semigroup_contains(m) != brute_pair(a, b, m) {
                    mismatches.push(format!("[{a}, {b}] m = {m}"));
                }
            }
        }
    }
    // forced component: a generator set with minimum a and nothing in
    // (a, m] cannot reach m when a < m < 2a
    let mut forced_bad = Vec::new();
    let mut forced_checked = 0usize;
    for a in 1..=8u32 {
        for m in (a + 1)..(2 * a) {
            if !forced_component(a, m) {
                forced_bad.push(format!("forced_component({a}, {m}) is false"));
            }
            let above: Vec<u32> = ((m + 1)..=(2 * a + 2)).collect();
            for mask in 0..(1u32 << above.len()) {
                let mut gens = vec![a];
                gens.extend(above.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &x)| x));
                forced_checked += 1;
                if MultiplicityProfile::new(gens.clone()).expect("positive").semigroup_contains(m) {
                    forced_bad.push(format!("{gens:?} reaches {m}"));
                }
            }
        }
        for m in [a, 2 * a, 2 * a + 1] {
            if forced_component(a, m) {
                forced_bad.push(format!("forced_component({a}, {m}) is true"));
            }
        }
    }
    let p23 = MultiplicityProfile::new(vec![2, 3]).expect("positive");
    let small = p23.semigroup_up_to(10);
    let facts_ok = forced_component(2, 3)
        && !p23.semigroup_contains(1)
        && small == vec![0, 2, 3, 4, 5, 6, 7, 8, 9, 10]
        && !MultiplicityProfile::new(vec![2]).expect("positive").semigroup_contains(3);
    vec![
        Check::holds(
            "membership agrees with enumeration",
            mismatches.is_empty(),
            format!("{checked} (pair, m) cases with generators <= 10 and m <= 60: {} mismatches", mismatches.len()),
            json!({ "checked": checked, "mismatches": mismatches }),
        ),
        Check::holds(
            "forced components",
            forced_bad.is_empty(),
            format!("{forced_checked} generator sets with a <= 8: {} violations", forced_bad.len()),
            json!({ "checked": forced_checked, "violations": forced_bad }),
        ),
        Check::holds(
            "profile [2, 3]",
            facts_ok,
            format!("degree 1 excluded, degree 3 forces a component, members up to 10: {small:?}"),
            json!({ "members_up_to_10": small, "forced_component_2_3": forced_component(2, 3) }),
        ),
    ]
}

/// Generators, expected (inf, gcd, index), inf-multiple, divisible.
type IndexCase = (&'static [u32], (u32, u32, u32), bool, bool);

fn index_facts(_: &Overrides) -> Vec<Check> {
    let cases: [IndexCase; 5] = [
        (&[2, 3], (2, 1, 1), true, false),
        (&[2], (2, 2, 2), true, true),
        (&[4, 6], (4, 2, 2), true, true),
        (&[1, 5], (1, 1, 1), false, false),
        (&[6, 10, 15], (6, 1, 1), true, false),
    ];
    let mut checks = Vec::new();
    for (gens, want, inf_multiple, divisible) in cases {
        let p = MultiplicityProfile::new(gens.to_vec()).expect("positive");
        let s = p.stats();
        // the same numbers read off the semigroup itself
        let members: Vec<u32> = p.semigroup_up_to(120).into_iter().filter(|&m| m > 0).collect();
        let min_member = members[0];
        let gcd_members = members.iter().fold(0u32, |g, &m| g.gcd(&m));
        let ok = (s.inf, s.gcd, s.index) == want
            && s.inf_multiple() == inf_multiple
            && s.divisible() == divisible
            && min_member == s.inf
            && gcd_members == s.index;
        checks.push(Check::holds(
            format!("profile {gens:?}"),
            ok,
            format!("(inf, gcd, index) = ({}, {}, {}), inf-multiple {}, divisible {}", s.inf, s.gcd, s.index, s.inf_multiple(), s.divisible()),
            json!({ "stats": s, "least_member": min_member, "gcd_of_members": gcd_members }),
        ));
    }
    checks
}

fn snc_criterion(_: &Overrides) -> Vec<Check> {
    let cases: [(&[u32], u32, bool); 6] =
        [(&[2, 3], 1, false), (&[2, 3], 5, true), (&[2, 4], 3, false), (&[3], 3, true), (&[2, 3], 7, true), (&[4, 6], 9, false)];
    let mut wrong = Vec::new();
    for (ms, m, want) in cases {
        if snc_point_admits(ms, m) != want {
            wrong.push(format!("{ms:?} at degree {m}"));
        }
    }
    let subsets = admissible_subsets(&[2, 3], 5);
    let ok = wrong.is_empty() && subsets == vec![vec![2, 3]];
    vec![Check::holds(
        "intersection criterion",
        ok,
        format!("{} cases; degree 5 over components [2, 3] needs both: {subsets:?}", cases.len()),
        json!({ "mismatches": wrong, "subsets_for_degree_5": subsets }),
    )]
}

/// All multisets of size at most `k` from `symbols`, as sorted vectors.
fn multisets(symbols: &[Multiplicity], k: usize) -> Vec<Vec<Multiplicity>> {
    let mut out = vec![vec![]];
    let mut frontier: Vec<(Vec<Multiplicity>, usize)> = vec![(vec![], 0)];
    for _ in 0..k {
        let mut next = Vec::new();
        for (ms, start) in &frontier {
            for (i, s) in symbols.iter().enumerate().skip(*start) {
                let mut v = ms.clone();
                v.push(*s);
                out.push(v.clone());
                next.push((v, i));
            }
        }
        frontier = next;
    }
    out
}

fn perturbation_sweep(_: &Overrides) -> Vec<Check> {
    let mut symbols: Vec<Multiplicity> = (1..=10).map(Multiplicity::Finite).collect();
    symbols.push(Multiplicity::Infinite);
    let families = multisets(&symbols, 6);
    let mut checked = 0usize;
    let mut general = 0usize;
    let mut violations = Vec::new();
    for g in 0..=2u32 {
        for ms in &families {
            let c = OrbifoldCurve::with_multiplicities(g, ms).expect("valid marks");
            checked += 1;
            if !c.is_general_type() {
                continue;
            }
            general += 1;
            let p = c.perturb_finite(DEFAULT_REPLACEMENT).expect("replacement >= 2");
            if p.degree() <= Rational::from_integer(0.into()) && violations.len() < 10 {
                violations.push(format!("{c} -> {p} (degree {})", p.degree()));
            }
        }
    }
    vec![Check::holds(
        "replacement 7 keeps general type",
        violations.is_empty(),
        format!("{checked} curves, {general} of general type, {} violations", violations.len()),
        json!({ "checked": checked, "general_type": general, "violations": violations, "replacement": DEFAULT_REPLACEMENT }),
    )]
}

fn field_suite(ov: &Overrides) -> Vec<Check> {
    let n = ov.samples.unwrap_or(1000);
    field_axioms(n, ov.seed()).iter().map(|o| property_check(&o.property, o)).collect()
}

fn sqrt_suite(ov: &Overrides) -> Vec<Check> {
    let o = sqrt_roundtrip(ov.samples.unwrap_or(100), ov.seed(), ov.precision.unwrap_or(20));
    vec![property_check("sqrt roundtrip", &o)]
}

fn backend_suite(ov: &Overrides) -> Vec<Check> {
    let o = backend_agreement(ov.samples.unwrap_or(200), ov.seed(), ov.precision.unwrap_or(20));
    vec![property_check("backend agreement", &o)]
}

fn parser_suite(_: &Overrides) -> Vec<Check> {
    match parse_claim_file(&builtin_corpus()) {
        Ok(scripts) => vec![property_check("corpus roundtrip", &parser_roundtrip(&scripts))],
        Err(e) => vec![fail_with("corpus roundtrip", e)],
    }
}
