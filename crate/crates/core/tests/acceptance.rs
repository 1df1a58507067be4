//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every criterion runs the library and compares with an oracle written
//! here: complex floating-point evaluation for the local points, direct
//! enumeration for the combinatorial facts. Runs without the libtest
//! harness so the lines always reach stdout.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64 as C;
use num_rational::BigRational;
use num_traits::{One, Zero};

use localfield::claims::{ClaimReport, Overrides, Registry};
use localfield::orbifold::{forced_component, pullback_half_marks, Multiplicity, MultiplicityProfile, OrbifoldCurve};
use localfield::variety::Verdict;

/// Residual bound for the floating-point oracles.
const FLOAT_TOL: f64 = 1e-9;

/// Relative residuals of the two surface equations with `y^2`, `z^2` given.
fn surface_residuals(t: C, x: C, u: C, y2: C, z2: C) -> (f64, f64) {
    let g = t * t * u * u - t;
    let l1 = x * x - t * u * u + t;
    let r1 = g * y2;
    let l2 = x * x - t * u * u * 2.0 + t.inv();
    let r2 = t * g * z2;
    let rel = |a: C, b: C| (a - b).norm() / (1.0 + a.norm() + b.norm());
    (rel(l1, r1), rel(l2, r2))
}

struct Line {
    ok: bool,
    elapsed: Duration,
    limit: Option<Duration>,
    detail: String,
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> (bool, String)) -> Line {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    Line { ok: ok && in_time, elapsed, limit, detail }
}

fn run(reg: &Registry, name: &str, ov: &Overrides) -> ClaimReport {
    reg.run(name, ov).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn statuses(report: &ClaimReport, check: &str, field: &str) -> Vec<String> {
    let c = report.checks.iter().find(|c| c.name == check).unwrap_or_else(|| panic!("no check {check}"));
    c.evidence["report"][field]
        .as_array()
        .map(|xs| xs.iter().map(|x| x["outcome"]["status"].as_str().unwrap_or("").to_string()).collect())
        .unwrap_or_default()
}

fn all_exact(report: &ClaimReport, check: &str) -> bool {
    let eqs = statuses(report, check, "equations");
    let ins = statuses(report, check, "inequations");
    !eqs.is_empty() && eqs.iter().all(|s| s == "exact_zero") && ins.iter().all(|s| s == "nonzero_certified")
}

fn c1(reg: &Registry) -> Line {
    timed(Some(Duration::from_secs(1)), || {
        let rep = run(reg, "point_sqrt_t", &Overrides::default());
        let exact = all_exact(&rep, "point_sqrt_t");
        // y = i, z = sqrt(-1/t^3): only y^2 and z^2 enter
        let mut worst: f64 = 0.0;
        for t in [C::new(0.3, 0.0), C::new(0.2, 0.1), C::new(-1.7, 0.0)] {
            let zero = C::new(0.0, 0.0);
            let (a, b) = surface_residuals(t, zero, zero, C::new(-1.0, 0.0), -t.powi(-3));
            worst = worst.max(a).max(b);
        }
        (
            rep.verdict == Verdict::Pass && exact && worst < FLOAT_TOL,
            format!("both equations exact zero: {exact}; float oracle residual {worst:.1e}"),
        )
    })
}

fn cbrt_oracle(q: i32, r: f64) -> f64 {
    let rc = C::new(r, 0.0);
    let one = C::new(1.0, 0.0);
    let t = rc.powi(q);
    let x = rc.powi(-1);
    let u = rc.powi(-(q + 1) / 2);
    let y2 = rc.powi(-(q + 1)) * (one - rc + rc.powi(q + 2)) / (one - rc);
    let z2 = rc.powi(-(3 * q - 1)) * (one + rc.powi(q - 2) - rc.powi(q - 1) * 2.0) / (one - rc);
    let (a, b) = surface_residuals(t, x, u, y2, z2);
    a.max(b)
}

fn c2(reg: &Registry) -> Line {
    timed(Some(Duration::from_secs(1)), || {
        let rep = run(reg, "point_cbrt_t", &Overrides::default());
        let exact = all_exact(&rep, "point_cbrt_t") && all_exact(&rep, "point_cbrt_t_unsimplified");
        let identity = rep.checks.iter().any(|c| c.name == "z simplification" && c.verdict == Verdict::Pass);
        // (1 + r - 2r^2)/(1 - r) = 1 + 2r at many rationals, in exact arithmetic
        let identity_oracle = (2..40).all(|k| {
            let r = BigRational::new(BigInt::from(1), BigInt::from(k));
            let one = BigRational::one();
            let lhs = (&one + &r - BigRational::from_integer(2.into()) * &r * &r) / (&one - &r);
            lhs == &one + BigRational::from_integer(2.into()) * &r
        });
        let worst = [0.05, 0.1, 0.3].iter().map(|&r| cbrt_oracle(3, r)).fold(0.0, f64::max);
        (
            rep.verdict == Verdict::Pass && exact && identity && identity_oracle && worst < FLOAT_TOL,
            format!("exact zero: {exact}; identity exact: {identity}; rational oracle: {identity_oracle}; float residual {worst:.1e}"),
        )
    })
}

fn c3(reg: &Registry) -> Line {
    timed(Some(Duration::from_secs(5)), || {
        let rep = run(reg, "point_q_family", &Overrides::default());
        let exact = [3, 5, 7, 9].iter().all(|q| all_exact(&rep, &format!("point_q{q}")));
        let rams_ok = [3u32, 5, 7, 9].iter().all(|q| {
            let c = rep.checks.iter().find(|c| c.name == format!("point_q{q}")).unwrap();
            c.evidence["report"]["place"].as_str() == Some(&format!("t = r^{q}"))
        });
        let worst = [3, 5, 7, 9]
            .iter()
            .flat_map(|&q| [0.1, 0.35].map(|r| cbrt_oracle(q, r)))
            .fold(0.0, f64::max);
        (
            rep.verdict == Verdict::Pass && exact && rams_ok && worst < FLOAT_TOL,
            format!("q = 3, 5, 7, 9 exact zero: {exact}; ramification q: {rams_ok}; float residual {worst:.1e}"),
        )
    })
}

fn c4(reg: &Registry) -> Line {
    timed(Some(Duration::from_secs(1)), || {
        let rep = run(reg, "point_infinity", &Overrides::default());
        let exact = all_exact(&rep, "point_infinity");
        let place = rep.checks[0].evidence["report"]["place"].as_str().unwrap_or("").to_string();
        let mut worst: f64 = 0.0;
        for t in [C::new(7.5, 0.0), C::new(-3.0, 0.0), C::new(40.0, 2.0)] {
            let one = C::new(1.0, 0.0);
            let d = t * t * (one - t.inv());
            let y2 = d.inv();
            let z2 = (t.inv() + t.powi(-2) - 2.0) / d;
            let (a, b) = surface_residuals(t, one, one, y2, z2);
            worst = worst.max(a).max(b);
        }
        (
            rep.verdict == Verdict::Pass && exact && place == "t = 1/r" && worst < FLOAT_TOL,
            format!("exact zero: {exact} at {place}; float residual {worst:.1e}"),
        )
    })
}

/// `|f(r)/r|` at two small radii; order one means both are close and nonzero.
fn order_one(f: impl Fn(f64) -> C) -> bool {
    let a = f(1e-5).norm() / 1e-5;
    let b = f(1e-6).norm() / 1e-6;
    a > 1e-3 && (a - b).abs() / a < 1e-3
}

fn c5(reg: &Registry) -> Line {
    timed(Some(Duration::from_secs(5)), || {
        let rep = run(reg, "golden_nonlift", &Overrides::default());
        let mut orders_ok = true;
        let mut obstructed = true;
        let mut oracle_ok = true;
        let alpha = (1.0 + 5f64.sqrt()) / 2.0;
        let beta = C::new(0.0, alpha.sqrt());
        for n in 1..=5 {
            let v = &rep.checks.iter().find(|c| c.name == format!("valuations n={n}")).unwrap().evidence;
            orders_ok &= ["order_g_shifted", "order_g_original", "order_lhs1", "order_lhs2"]
                .iter()
                .all(|k| v[*k].as_i64() == Some(1));
            orders_ok &= v["y"]["order"].as_i64() == Some(0) && v["z"]["order"].as_i64() == Some(0);
            for form in ["plain", "twisted"] {
                let c = rep.checks.iter().find(|c| c.name == format!("golden_{form}_n{n}")).unwrap();
                obstructed &= c.evidence["result"]["outcome"] == "obstructed";
            }
            // shifted coordinates: t = r^(2n), u = 1/beta + r, x = alpha
            let e = 2 * n;
            let a = C::new(alpha, 0.0);
            let pieces = |r: f64| {
                let t = C::new(r.powi(e), 0.0);
                let u = beta.inv() + r;
                let tm = t - a;
                let g = u * u * tm * tm - t + a;
                let l1 = a * a - t * u * u + a * u * u + t - a;
                let l2 = a * a - t * u * u * 2.0 + a * u * u * 2.0 + tm.inv();
                (g, l1, l2)
            };
            oracle_ok &= order_one(|r| pieces(r).0) && order_one(|r| pieces(r).1) && order_one(|r| pieces(r).2);
        }
        (
            rep.verdict == Verdict::Pass && orders_ok && obstructed && oracle_ok,
            format!("n = 1..5 orders exactly 1: {orders_ok}; both covers obstructed: {obstructed}; float oracle orders: {oracle_ok}"),
        )
    })
}

fn c6(reg: &Registry) -> Line {
    timed(Some(Duration::from_secs(1)), || {
        let a = run(reg, "k3_lift_sqrt_t", &Overrides::default());
        let b = run(reg, "k3_lift_infinity", &Overrides::default());
        let wa = all_exact(&a, "k3_sqrt_t_witness") && statuses(&a, "k3_sqrt_t_witness", "equations").len() == 3;
        let wb = all_exact(&b, "k3_infinity_witness") && statuses(&b, "k3_infinity_witness", "equations").len() == 3;
        // w = i t^(1/2): w^2 + t vanishes
        let t = C::new(0.3, 0.4);
        let w = C::i() * t.sqrt();
        let float = (w * w + t).norm() < FLOAT_TOL;
        (
            a.verdict == Verdict::Pass && b.verdict == Verdict::Pass && wa && wb && float,
            format!("w^2 + t = 0 exactly: {wa}; w^2 - (t^2 - t) = 0 exactly: {wb}; float oracle: {float}"),
        )
    })
}

/// The eight hypotheses, written out independently.
fn oracle_cases(vu: &BigRational, vx: &BigRational) -> usize {
    let half = BigRational::new(1.into(), 2.into());
    let z = BigRational::zero();
    let two = BigRational::from_integer(2.into());
    let one = BigRational::one();
    let h = [
        *vu < -half.clone(),
        *vu == -half.clone() && *vx > z,
        *vu == -half.clone() && *vx == z,
        *vu == -half.clone() && *vx < z,
        *vu > -half.clone() && *vu < z && &two * vx < &one + &two * vu,
        *vu > -half.clone() && *vu < z && &two * vx >= &one + &two * vu,
        *vu >= z && &two * vx + &one <= z,
        *vu >= z && &two * vx + &one > z,
    ];
    h.iter().filter(|&&b| b).count()
}

fn c7(reg: &Registry) -> Line {
    timed(None, || {
        let rep = run(reg, "lemma91_case_partition", &Overrides::default());
        let mut bad = 0;
        for du in 1..=6 {
            for dx in 1..=6 {
                for nu in -12..=12 {
                    for nx in -12..=12 {
                        let vu = BigRational::new(nu.into(), du.into());
                        let vx = BigRational::new(nx.into(), dx.into());
                        if oracle_cases(&vu, &vx) != 1 {
                            bad += 1;
                        }
                    }
                }
            }
        }
        let lib = rep.checks[0].evidence["exceptions"].as_array().map(Vec::len);
        (
            rep.verdict == Verdict::Pass && bad == 0 && lib == Some(0),
            format!("library exceptions {lib:?}, oracle exceptions {bad}"),
        )
    })
}

fn c8(reg: &Registry) -> Line {
    timed(Some(Duration::from_secs(30)), || {
        let ov = Overrides { samples: Some(500), seed: Some(1), ..Overrides::default() };
        let rep = run(reg, "lemma91_property", &ov);
        let ev = &rep.checks[0].evidence;
        let cex = ev["counterexamples"].as_array().map(Vec::len);
        let premise = ev["premise_held"].as_u64().unwrap_or(0);
        (
            rep.verdict == Verdict::Pass && cex == Some(0) && premise > 0,
            format!("500 samples, seed 1: premise held {premise}, counterexamples {cex:?}"),
        )
    })
}

fn c9(reg: &Registry) -> Line {
    timed(Some(Duration::from_secs(1)), || {
        let rep = run(reg, "orbifold_gt_threshold", &Overrides::default());
        let mut ok = true;
        for d in 1..=50i64 {
            // 2*0 - 2 + d/2 > 0  <=>  d > 4
            ok &= pullback_half_marks(0, d as u32).unwrap().is_general_type() == (d - 4 > 0);
            for g in 0..=3i64 {
                let want = BigRational::new((4 * g - 4 + d).into(), 2.into());
                ok &= pullback_half_marks(g as u32, d as u32).unwrap().degree() == want;
            }
        }
        (rep.verdict == Verdict::Pass && ok, format!("d = 1..50, g = 0..3 against 2g - 2 + d/2: {ok}"))
    })
}

fn c10(reg: &Registry) -> Line {
    timed(Some(Duration::from_secs(5)), || {
        let sg = run(reg, "semigroup_facts", &Overrides::default());
        let ix = run(reg, "index_facts", &Overrides::default());
        let s = MultiplicityProfile::new(vec![2, 3]).unwrap().stats();
        let stats_ok = (s.inf, s.gcd, s.index) == (2, 1, 1);
        let forced = forced_component(2, 3);
        let mut mismatches = 0;
        for a in 1..=10u32 {
            for b in 1..=10u32 {
                let p = MultiplicityProfile::new(vec![a, b]).unwrap();
                // reachable set by breadth over sums
                let mut reach = [false; 61];
                reach[0] = true;
                for m in 0..=60usize {
                    if reach[m] {
                        for step in [a as usize, b as usize] {
                            if m + step <= 60 {
                                reach[m + step] = true;
                            }
                        }
                    }
                }
                for m in 0..=60u32 {
                    if p.semigroup_contains(m) != reach[m as usize] {
                        mismatches += 1;
                    }
                }
            }
        }
        (
            sg.verdict == Verdict::Pass && ix.verdict == Verdict::Pass && stats_ok && forced && mismatches == 0,
            format!("[2, 3] -> (2, 1, 1): {stats_ok}; forced_component(2, 3): {forced}; {mismatches} membership mismatches"),
        )
    })
}

fn c11(reg: &Registry) -> Line {
    timed(Some(Duration::from_secs(10)), || {
        let rep = run(reg, "perturbation_sweep", &Overrides::default());
        // oracle: degree with k infinite marks and finite ms is
        // 2g - 2 + k + sum(1 - 1/m); perturbing gives 2g - 2 + 6k/7 + sum(...)
        let mut violations = 0;
        let mut checked = 0;
        fn rec(start: u32, left: usize, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            out.push(acc.clone());
            if left == 0 {
                return;
            }
            for m in start..=11 {
                acc.push(m);
                rec(m, left - 1, acc, out);
                acc.pop();
            }
        }
        let mut all = Vec::new();
        rec(1, 6, &mut Vec::new(), &mut all);
        for g in 0..=2i64 {
            for ms in &all {
                checked += 1;
                let k = ms.iter().filter(|&&m| m == 11).count() as i64;
                let fin: BigRational = ms
                    .iter()
                    .filter(|&&m| m != 11)
                    .map(|&m| BigRational::one() - BigRational::new(1.into(), m.into()))
                    .fold(BigRational::zero(), |a, b| a + b);
                let base = BigRational::from_integer((2 * g - 2).into()) + fin;
                let before = &base + BigRational::from_integer(k.into());
                let after = &base + BigRational::new((6 * k).into(), 7.into());
                let curve = OrbifoldCurve::with_multiplicities(
                    g as u32,
                    &ms.iter().map(|&m| if m == 11 { Multiplicity::Infinite } else { Multiplicity::Finite(m) }).collect::<Vec<_>>(),
                )
                .unwrap();
                let lib_after = curve.perturb_finite(7).unwrap().degree();
                if curve.degree() != before || lib_after != after || (before > BigRational::zero() && after <= BigRational::zero()) {
                    violations += 1;
                }
            }
        }
        (
            rep.verdict == Verdict::Pass && violations == 0,
            format!("{checked} curves checked against closed-form degrees, {violations} violations"),
        )
    })
}

fn c12(reg: &Registry) -> Line {
    timed(None, || {
        let ov = Overrides::default();
        let names = ["field_axioms", "sqrt_roundtrip", "backend_agreement", "parser_roundtrip"];
        let mut parts = Vec::new();
        let mut ok = true;
        for n in names {
            let rep = run(reg, n, &ov);
            let cases: u64 = rep.checks.iter().map(|c| c.evidence["checked"].as_u64().unwrap_or(0)).sum();
            ok &= rep.verdict == Verdict::Pass;
            parts.push(format!("{n} {} ({cases} cases)", rep.verdict));
        }
        let towers = run(reg, "field_axioms", &ov).checks.len();
        ok &= towers >= 2;
        (ok, format!("{}; field towers {towers}", parts.join(", ")))
    })
}

/// Name, tolerance, check.
type Criterion = (&'static str, &'static str, fn(&Registry) -> Line);

fn main() -> ExitCode {
    let reg = Registry::builtin();
    let criteria: [Criterion; 12] = [
        ("point_sqrt_t", "exact", c1),
        ("point_cbrt_t", "exact", c2),
        ("point_q_family", "exact", c3),
        ("point_infinity", "exact", c4),
        ("golden_nonlift", "exact integers", c5),
        ("k3_lift", "exact", c6),
        ("lemma91_case_partition", "zero exceptions", c7),
        ("lemma91_property", "zero counterexamples", c8),
        ("orbifold_gt_threshold", "exact rationals", c9),
        ("semigroup/index facts", "exact", c10),
        ("perturbation_sweep", "exact rationals", c11),
        ("library property suites", "all cases", c12),
    ];
    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    println!("acceptance criteria ({profile} build, float oracle tolerance {FLOAT_TOL:e})");
    let mut failed = 0;
    for (i, (name, tol, f)) in criteria.iter().enumerate() {
        let line = f(&reg);
        let limit = line.limit.map_or("none".to_string(), |l| format!("{} s", l.as_secs()));
        println!(
            "criterion {:>2} {} {name}: {:.3} s (limit {limit}), tolerance {tol}; {}",
            i + 1,
            if line.ok { "PASS" } else { "FAIL" },
            line.elapsed.as_secs_f64(),
            line.detail
        );
        failed += usize::from(!line.ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
