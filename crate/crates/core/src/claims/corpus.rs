//! Claim-file text for the builtin registry.

use std::fmt::Write;

/// The two equations and their `!= 0` constraints, one per line.
pub(crate) const SURFACE: &str = concat!(
    "  x^2 - t*u^2 + t = (t^2*u^2 - t)*y^2 != 0\n",
    "  x^2 - 2*t*u^2 + t^-1 = t*(t^2*u^2 - t)*z^2 != 0\n",
);

/// The same surface after `t -> t - alpha`.
pub(crate) const SHIFTED: &str = concat!(
    "  x^2 - t*u^2 + alpha*u^2 + t - alpha = (u^2*(t - alpha)^2 - t + alpha)*y^2 != 0\n",
    "  x^2 - 2*t*u^2 + 2*alpha*u^2 + (t - alpha)^-1 = (t - alpha)*(u^2*(t - alpha)^2 - t + alpha)*z^2 != 0\n",
);

const GOLDEN_FIELD: &str = "\
adjoin alpha : alpha^2 - alpha - 1 = 0
adjoin beta : beta^2 + alpha = 0
";

/// Which description of the golden-ratio point a script uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoldenForm {
    /// Shifted coordinates, centre 0.
    Shifted,
    /// Original coordinates, centre `-alpha`, with the plain cover.
    Plain,
    /// Original coordinates with the cover twisted by `(t + alpha)^(1/n)`.
    Twisted,
    /// Shifted coordinates; only the squareness of `g` is claimed.
    NonSquare,
    /// As `NonSquare`, for `t^(1/n) g`.
    NonSquareTwisted,
}

/// The script for the golden-ratio point at ramification `2n`.
pub fn golden_script(n: u32, form: GoldenForm) -> String {
    let e = 2 * n;
    let mut s = String::new();
    let name = match form {
        GoldenForm::Shifted => "golden_shifted",
        GoldenForm::Plain => "golden_plain",
        GoldenForm::Twisted => "golden_twisted",
        GoldenForm::NonSquare => "golden_nonsquare",
        GoldenForm::NonSquareTwisted => "golden_nonsquare_twisted",
    };
    writeln!(s, "claim {name}_n{n}").unwrap();
    s.push_str(GOLDEN_FIELD);
    let (system, center) = match form {
        GoldenForm::Shifted => (Some(SHIFTED), "0"),
        GoldenForm::Plain | GoldenForm::Twisted => (Some(SURFACE), "-alpha"),
        GoldenForm::NonSquare | GoldenForm::NonSquareTwisted => (None, "0"),
    };
    if let Some(sys) = system {
        s.push_str("system:\n");
        s.push_str(sys);
    }
    writeln!(s, "place: t = {center} ram {e}").unwrap();
    s.push_str("let x = alpha\nlet u = 1/beta + r\n");
    match form {
        GoldenForm::Shifted => {
            s.push_str("let y = sqrt((x^2 - t*u^2 + alpha*u^2 + t - alpha)/(u^2*(t - alpha)^2 - t + alpha))\n");
            s.push_str(
                "let z = sqrt((x^2 - 2*t*u^2 + 2*alpha*u^2 + (t - alpha)^-1)/((t - alpha)*(u^2*(t - alpha)^2 - t + alpha)))\n",
            );
            s.push_str("expect: pass\n");
        }
        GoldenForm::Plain | GoldenForm::Twisted => {
            s.push_str("let y = sqrt((x^2 - t*u^2 + t)/(t^2*u^2 - t))\n");
            s.push_str("let z = sqrt((x^2 - 2*t*u^2 + t^-1)/(t*(t^2*u^2 - t)))\n");
            if form == GoldenForm::Plain {
                s.push_str("cover: w^2 = t^2*u^2 - t\n");
            } else {
                s.push_str("cover: w^2 = r^2*(t^2*u^2 - t)\n");
            }
            s.push_str("expect: obstructed\n");
        }
        GoldenForm::NonSquare => {
            s.push_str("square: u^2*(t - alpha)^2 - t + alpha\nexpect: nonsquare\n");
        }
        GoldenForm::NonSquareTwisted => {
            s.push_str("square: r^2*(u^2*(t - alpha)^2 - t + alpha)\nexpect: nonsquare\n");
        }
    }
    s
}

/// The point at ramification `q` for odd `q >= 3`.
pub fn q_family_script(q: u32) -> String {
    format!(
        "claim point_q{q}
system:
{SURFACE}place: t = 0 ram {q}
let x = r^-1
let u = r^-{h}
let y = sqrt(r^-{a}*(1 - r + r^{b})/(1 - r))
let z = sqrt(r^-{c}*(1 + r^{d} - 2*r^{f})/(1 - r))
expect: pass
",
        h = q.div_ceil(2),
        a = q + 1,
        b = q + 2,
        c = 3 * q - 1,
        d = q - 2,
        f = q - 1,
    )
}

const FIXED: &str = "\
claim point_sqrt_t
system:
SURFACE
place: t = 0 ram 2
let x = 0
let u = 0
let y = sqrt(-1)
let z = sqrt(-1/t^3)
expect: pass

claim point_sqrt_t_truncated
system:
SURFACE
place: t = 0 ram 2
let x = 0
let u = 0
let y = sqrt(-1)
let z = sqrt(-1/t^3)
mode: truncated
precision: 20
expect: pass

# y = +1 leaves the residual 2t in the first equation
claim point_sqrt_t_wrong_sign
system:
SURFACE
place: t = 0 ram 2
let x = 0
let u = 0
let y = sqrt(1)
let z = sqrt(-1/t^3)
expect: fail

claim point_cbrt_t
system:
SURFACE
place: t = 0 ram 3
let x = r^-1
let u = r^-2
let y = sqrt(r^-4*(1 - r + r^5)/(1 - r))
let z = sqrt(r^-8*(1 + 2*r))
expect: pass

claim point_cbrt_t_unsimplified
system:
SURFACE
place: t = 0 ram 3
let x = r^-1
let u = r^-2
let y = sqrt(r^-4*(1 - r + r^5)/(1 - r))
let z = sqrt(r^-8*(1 + r - 2*r^2)/(1 - r))
expect: pass

claim point_infinity
system:
SURFACE
place: t = infinity ram 1
let x = 1
let u = 1
let y = sqrt(1/(t^2*(1 - t^-1)))
let z = sqrt((-2 + t^-1 + t^-2)/(t^2*(1 - t^-1)))
expect: pass

claim k3_sqrt_t_cover
system:
SURFACE
place: t = 0 ram 2
let x = 0
let u = 0
let y = sqrt(-1)
let z = sqrt(-1/t^3)
cover: w^2 = t^2*u^2 - t
expect: lifts

# w = i t^(1/2)
claim k3_sqrt_t_witness
adjoin i : i^2 + 1 = 0
system:
SURFACE  w^2 = t^2*u^2 - t
place: t = 0 ram 2
let x = 0
let u = 0
let y = sqrt(-1)
let z = sqrt(-1/t^3)
let w = i*r
expect: pass

claim k3_infinity_cover
system:
SURFACE
place: t = infinity ram 1
let x = 1
let u = 1
let y = sqrt(1/(t^2*(1 - t^-1)))
let z = sqrt((-2 + t^-1 + t^-2)/(t^2*(1 - t^-1)))
cover: w^2 = t^2*u^2 - t
expect: lifts

claim k3_infinity_witness
system:
SURFACE  w^2 = t^2*u^2 - t
place: t = infinity ram 1
let x = 1
let u = 1
let y = sqrt(1/(t^2*(1 - t^-1)))
let z = sqrt((-2 + t^-1 + t^-2)/(t^2*(1 - t^-1)))
let w = sqrt(t^2 - t)
expect: pass

claim orbifold_pullback_d4
orbifold genus 0 marks [2, 2, 2, 2]
expect: not_general_type

claim orbifold_pullback_d5
orbifold genus 0 marks [2, 2, 2, 2, 2]
expect: general_type

claim orbifold_pullback_genus1
orbifold genus 1 marks [2]
expect: general_type

claim orbifold_237
orbifold genus 0 marks [2, 3, 7]
expect: general_type

claim orbifold_236
orbifold genus 0 marks [2, 3, 6]
expect: not_general_type

claim orbifold_three_inf
orbifold genus 0 marks [inf, inf, inf]
expect: general_type

claim orbifold_two_inf
orbifold genus 0 marks [inf, inf]
expect: not_general_type
";

pub const Q_FAMILY: [u32; 4] = [3, 5, 7, 9];
pub const GOLDEN_N: std::ops::RangeInclusive<u32> = 1..=5;

/// Every builtin script, as one claim file.
pub fn builtin_corpus() -> String {
    let mut s = FIXED.replace("SURFACE\n", SURFACE).replace("SURFACE", SURFACE);
    for q in Q_FAMILY {
        s.push('\n');
        s.push_str(&q_family_script(q));
    }
    for n in GOLDEN_N {
        for form in [
            GoldenForm::Shifted,
            GoldenForm::Plain,
            GoldenForm::Twisted,
            GoldenForm::NonSquare,
            GoldenForm::NonSquareTwisted,
        ] {
            s.push('\n');
            s.push_str(&golden_script(n, form));
        }
    }
    s
}

/// Each explicit computation in scope, and the claim that checks it.
pub const COVERAGE: &[(&str, &str)] = &[
    ("the sqrt(t) point on the surface", "point_sqrt_t"),
    ("the t^(1/3) point on the surface", "point_cbrt_t"),
    ("the z simplification (1 + r - 2r^2)/(1 - r) = 1 + 2r", "point_cbrt_t"),
    ("the odd-q point family", "point_q_family"),
    ("the point at t = infinity", "point_infinity"),
    ("golden-ratio point: valuation of the radicand", "golden_nonlift"),
    ("golden-ratio point: valuations of both left-hand sides", "golden_nonlift"),
    ("golden-ratio point: y and z exist", "golden_nonlift"),
    ("golden-ratio point: non-square certificates", "golden_nonsquare"),
    ("golden-ratio point: both cover forms obstructed", "k3_cover_two_forms_obstructed"),
    ("K3 cover lift of the sqrt(t) point", "k3_lift_sqrt_t"),
    ("K3 cover lift of the point at infinity", "k3_lift_infinity"),
    ("eight-case valuation analysis: partition", "lemma91_case_partition"),
    ("eight-case valuation analysis: squareness conclusion", "lemma91_property"),
    ("orbifold degree and general-type threshold", "orbifold_gt_threshold"),
    ("orbifold base of pullbacks", "pullback_orbifold_bases"),
    ("local-point degrees lie in the multiplicity semigroup", "semigroup_facts"),
    ("inf, gcd and index of a profile", "index_facts"),
    ("forced component of multiplicity m", "semigroup_facts"),
    ("SNC intersection criterion", "snc_criterion"),
    ("finite perturbation with replacement 7", "perturbation_sweep"),
];
