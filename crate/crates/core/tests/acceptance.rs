//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use sl3char::freegroup::Gen;
use sl3char::linalg::{trace_of_word, WordEvaluator};
use sl3char::poly::PointEvaluator;
use sl3char::rewrite::identities::identity_suite;
use sl3char::sample::{exact_pair_from, trial_rng, with_retry, Family};
use sl3char::symmetry::{act_on_poly, DihedralElement, SignedPermutation};
use sl3char::variety::{
    branching_family, chi, discriminant, distinguishing_pair, is_singular, jacobian_system, lambda_det, polynomial_p,
    polynomial_q, surface_polynomial, surface_residual,
};
use sl3char::verify::random_word;
use sl3char::{CoordPolynomial, CoordVar, SL3Pair, TraceReducer, Word};

const SEED: u64 = 42;

fn pair(family: Family, i: u64) -> SL3Pair {
    exact_pair_from(&mut trial_rng(SEED, i), family).expect("exact family")
}

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn count_failures(n: u64, mut ok: impl FnMut(u64) -> bool) -> (u64, Option<u64>) {
    let mut failures = 0;
    let mut first = None;
    for i in 0..n {
        if !ok(i) {
            failures += 1;
            first.get_or_insert(i);
        }
    }
    (failures, first)
}

fn trials_outcome(n: u64, what: &str, ok: impl FnMut(u64) -> bool) -> Outcome {
    let (failures, first) = count_failures(n, ok);
    match first {
        None => outcome(true, format!("{n}/{n} {what}")),
        Some(i) => outcome(false, format!("{}/{n} {what}; first failure at trial {i}", n - failures)),
    }
}

fn hypersurface() -> Outcome {
    trials_outcome(1000, "generic pairs with zero residual", |i| surface_residual(&chi(&pair(Family::Generic, i))).is_zero())
}

fn q_oracle() -> Outcome {
    let (c, ci) = (word("a*b*A*B"), word("b*a*B*A"));
    let q = polynomial_q();
    trials_outcome(1000, "pairs with Q = tr[A,B] tr[B,A]", |i| {
        let p = pair(Family::Generic, i);
        q.eval(&chi(&p).coords) == &trace_of_word(&c, &p) * &trace_of_word(&ci, &p)
    })
}

fn rewriter_oracle() -> Outcome {
    let mut reducer = TraceReducer::new();
    let words: Vec<Word> = (0..=8).flat_map(Word::enumerate).collect();
    let polys: Vec<CoordPolynomial> = words.iter().map(|w| reducer.reduce(w)).collect();
    let mut bad = Vec::new();
    for i in 0..25 {
        let p = pair(Family::Generic, i);
        let mut traces = WordEvaluator::new(&p);
        let mut values = PointEvaluator::new(&chi(&p).coords);
        for (w, f) in words.iter().zip(&polys) {
            if values.eval(f) != traces.trace(w) {
                bad.push(format!("{w} on pair {i}"));
            }
        }
    }
    let mut long_checked = 0;
    for i in 0..200 {
        let mut rng = trial_rng(SEED ^ 0xacce, i);
        let len = 9 + (i as usize % 12);
        let w = random_word(&mut rng, len);
        let f = reducer.reduce(&w);
        for k in 0..10 {
            let p = pair(Family::Generic, 1000 + 10 * i + k);
            if f.eval(&chi(&p).coords) != trace_of_word(&w, &p) {
                bad.push(format!("{w} on pair {}", 1000 + 10 * i + k));
            }
            long_checked += 1;
        }
    }
    let detail = format!("{} short words x 25 pairs, {long_checked} long word evaluations", words.len());
    match bad.first() {
        None => outcome(true, detail),
        Some(b) => outcome(false, format!("{detail}; {} mismatches, first {b}", bad.len())),
    }
}

fn identities() -> Outcome {
    let report = identity_suite(SEED, 200);
    let failed: Vec<&str> = report.results.iter().filter(|r| !r.ok()).map(|r| r.name).collect();
    outcome(failed.is_empty(), format!("{} identities x 200 tuples; failed: {failed:?}", report.results.len()))
}

fn lambda() -> Outcome {
    trials_outcome(200, "pairs with singular 9x9 matrix", |i| lambda_det(&pair(Family::Generic, i)).is_zero())
}

fn degrees() -> Outcome {
    let (p, q, s) = (polynomial_p().total_degree(), polynomial_q().total_degree(), surface_polynomial().total_degree());
    outcome(p == 4 && q == 6 && s == 6, format!("deg P = {p}, deg Q = {q}, deg surface = {s}"))
}

fn commutator_relation() -> Outcome {
    let mut r = TraceReducer::new();
    let sum = &r.reduce(&word("b*a*B*A")) + &r.reduce(&word("a*b*A*B"));
    outcome(sum == polynomial_p(), "tr(baBA) + tr(abAB) = P")
}

fn singular_locus() -> Outcome {
    let jac = jacobian_system();
    let mut parts = Vec::new();
    let mut passed = true;
    for family in [Family::Gl2, Family::Diag, Family::Sl2] {
        let (failures, _) = count_failures(100, |i| jac.evaluate(&chi(&pair(family, i))).iter().all(Zero::is_zero));
        passed &= failures == 0;
        parts.push(format!("{family} {}/100 singular", 100 - failures));
    }
    let (failures, _) = count_failures(100, |i| {
        with_retry(SEED, i, |rng| exact_pair_from(rng, Family::Generic).unwrap(), |p| {
            jac.evaluate(&chi(p)).iter().any(|g| !g.is_zero())
        })
        .is_ok()
    });
    passed &= failures == 0;
    parts.push(format!("generic {}/100 nonsingular", 100 - failures));
    outcome(passed, parts.join(", "))
}

fn branching() -> Outcome {
    let tol = 1e-9;
    let s = match branching_family(Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0)) {
        Ok(s) => s,
        Err(e) => return outcome(false, e.to_string()),
    };
    let (g1, g2) = s.nonzero_partials;
    let partials = (g1 - Complex64::new(-343.0 / 64.0, 0.0)).norm() < tol && (g2 - Complex64::new(343.0 / 128.0, 0.0)).norm() < tol;
    let others_vanish = s.jacobian.iter().enumerate().all(|(k, g)| k < 2 || g.norm() < tol);
    let residual = surface_residual(&s.point).norm();
    let disc = discriminant(&s.point.base()).norm();
    let nonsingular = matches!(is_singular(&s.point, tol), Ok(false));
    outcome(
        partials && others_vanish && residual < tol && disc < tol && nonsingular,
        format!("partials {g1:.12}, {g2:.12}; residual {residual:.1e}; P^2 - 4Q {disc:.1e}"),
    )
}

fn distinguishing() -> Outcome {
    let (p1, p2) = distinguishing_pair();
    let gap = CoordVar::BASE.iter().map(|&v| (p1[v] - p2[v]).norm()).fold(0.0, f64::max);
    let t5_gap = (p1.t5() - p2.t5()).norm();
    outcome(gap < 1e-9 && t5_gap > 1e-3, format!("max base gap {gap:.1e}, t(5) gap {t5_gap:.6}"))
}

/// The Cayley table as printed, rows and columns in the order
/// id, i, t, it, ti, tit, iti, titi.
const CAYLEY: [&str; 8] = [
    "id i t it ti tit iti titi",
    "i id it t iti titi ti tit",
    "t ti id tit i it titi iti",
    "it iti i titi id t tit ti",
    "ti t tit id titi iti i it",
    "tit titi ti iti t id it i",
    "iti it titi i tit ti id t",
    "titi tit iti ti it i t id",
];

const PERMUTATIONS: [(&str, &str); 8] = [
    ("id", "(1)"),
    ("i", "(1,-1)(3,-4)(-3,4)"),
    ("t", "(1,2)(-1,-2)(4,-4)"),
    ("it", "(1,2,-1,-2)(3,-4,-3,4)"),
    ("ti", "(1,-2,-1,2)(3,4,-3,-4)"),
    ("tit", "(2,-2)(3,4)(-3,-4)"),
    ("iti", "(1,-2)(2,-1)(3,-3)"),
    ("titi", "(1,-1)(2,-2)(3,-3)(4,-4)"),
];

fn spelled(name: &str, iota: &SignedPermutation, tau: &SignedPermutation) -> SignedPermutation {
    let mut g = SignedPermutation::identity();
    if name != "id" {
        for c in name.chars() {
            g = g.compose(if c == 'i' { iota } else { tau });
        }
    }
    g
}

fn dihedral() -> Outcome {
    let iota = SignedPermutation::from_cycles("(1,-1)(3,-4)(-3,4)").unwrap();
    let tau = SignedPermutation::from_cycles("(1,2)(-1,-2)(4,-4)").unwrap();
    let perm = |name: &str| spelled(name, &iota, &tau);

    let listed = PERMUTATIONS.iter().all(|(n, c)| perm(n) == SignedPermutation::from_cycles(c).unwrap());
    let names: Vec<&str> = PERMUTATIONS.iter().map(|(n, _)| *n).collect();
    let table = CAYLEY.iter().enumerate().all(|(r, row)| {
        row.split(' ').enumerate().all(|(c, entry)| perm(names[r]).compose(&perm(names[c])) == perm(entry))
    });

    let a = perm("ti");
    let order = (1..=8).find(|&k| (0..k).fold(SignedPermutation::identity(), |acc, _| acc.compose(&a)) == SignedPermutation::identity());
    let ba_rule = iota.compose(&a) == a.inverse().compose(&iota);

    let library = DihedralElement::ALL.iter().zip(&names).all(|(g, n)| g.permutation() == perm(n));
    let (p, q) = (polynomial_p(), polynomial_q());
    let fixed = DihedralElement::ALL.iter().all(|&g| act_on_poly(g, &p) == p && act_on_poly(g, &q) == q);
    outcome(
        listed && table && order == Some(4) && ba_rule && library && fixed,
        format!("table {table}, listed permutations {listed}, order(ti) {order:?}, ba = a^-1 b {ba_rule}, P and Q fixed {fixed}"),
    )
}

/// `p` and `q` as printed, without the overall factor `1/8`.
const P_TIMES_8: &str = "t(1)*t(-1)*t(2)*t(-2) - 4*t(1)*t(-2)*t(-4) + 2*t(1)*t(-1) + 2*t(3)*t(-3)";
const Q_TIMES_8: &str = "2*t(-2)*t(-1)^2*t(1)^2*t(2) + 4*t(1)^2*t(2)^2*t(3) - 4*t(1)^3*t(-2)*t(2) \
    - 8*t(-4)*t(-2)*t(-1)*t(1)^2 - 4*t(4)*t(3)*t(2)*t(1)*t(-2) + 8*t(1)*t(3)*t(-4)^2 + 8*t(-4)*t(1)*t(2)^2 \
    - 8*t(3)^2*t(2)*t(1) + 4*t(4)*t(-3)*t(2)^2 + t(-2)*t(-1)*t(2)*t(1) + t(-3)*t(-4)*t(3)*t(4) \
    + 4*t(-3)*t(-1)*t(3)*t(1) + 4*t(1)^3 + 4*t(3)^3 + 12*t(-4)*t(-2)*t(1) - 12*t(-4)*t(2)*t(3) \
    - 12*t(1)*t(-1) - 12*t(3)*t(-3)";

fn symmetrizer() -> Outcome {
    let eighth = BigRational::new(1.into(), 8.into());
    let sum_over_group =
        |f: &CoordPolynomial| DihedralElement::ALL.iter().fold(CoordPolynomial::zero(), |acc, &g| &acc + &act_on_poly(g, f));
    let p: CoordPolynomial = P_TIMES_8.parse::<CoordPolynomial>().unwrap().scale(&eighth);
    let q: CoordPolynomial = Q_TIMES_8.parse::<CoordPolynomial>().unwrap().scale(&eighth);
    let p_ok = &sum_over_group(&p) - &CoordPolynomial::from_int(3) == polynomial_p();
    let q_ok = &sum_over_group(&q) + &CoordPolynomial::from_int(9) == polynomial_q();
    outcome(p_ok && q_ok, format!("P = S(p) - 3: {p_ok}, Q = S(q) + 9: {q_ok}"))
}

fn bigrade_of(v: CoordVar) -> (i64, i64) {
    match v {
        CoordVar::T1 => (1, 0),
        CoordVar::Tm1 => (-1, 0),
        CoordVar::T2 => (0, 1),
        CoordVar::Tm2 => (0, -1),
        CoordVar::T3 => (1, 1),
        CoordVar::Tm3 => (-1, -1),
        CoordVar::T4 => (1, -1),
        CoordVar::Tm4 => (-1, 1),
        CoordVar::T5 => (0, 0),
    }
}

fn monomial_grades(f: &CoordPolynomial) -> Vec<(i64, i64)> {
    f.terms()
        .map(|(m, _)| {
            CoordVar::ALL.iter().fold((0, 0), |(x, y), &v| {
                let e = i64::from(m.exponent(v));
                let (gx, gy) = bigrade_of(v);
                ((x + e * gx).rem_euclid(3), (y + e * gy).rem_euclid(3))
            })
        })
        .collect()
}

fn grading() -> Outcome {
    let mut r = TraceReducer::new();
    let words: Vec<Word> = (0..=6).flat_map(Word::enumerate).collect();
    let bad = words.iter().find(|w| {
        let expected = (w.exponent_sum(Gen::X1).rem_euclid(3), w.exponent_sum(Gen::X2).rem_euclid(3));
        monomial_grades(&r.reduce(w)).iter().any(|&g| g != expected)
    });
    let homogeneous = [polynomial_p(), polynomial_q()].iter().all(|f| monomial_grades(f).iter().all(|&g| g == (0, 0)));
    let detail = format!("{} words; P and Q of bigrade (0,0): {homogeneous}", words.len());
    match bad {
        None => outcome(homogeneous, detail),
        Some(w) => outcome(false, format!("{detail}; first bad word {w}")),
    }
}

fn sl2_restriction() -> Outcome {
    let p = polynomial_p();
    trials_outcome(100, "embedded SL(2) pairs with 2 t(5) = P", |i| {
        let pt = chi(&pair(Family::Sl2, i));
        pt.t5() + pt.t5() == p.eval(&pt.coords)
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("hypersurface", hypersurface),
        ("Q transcription oracle", q_oracle),
        ("rewriter oracle", rewriter_oracle),
        ("identity suite", identities),
        ("Lambda is singular", lambda),
        ("degrees", degrees),
        ("commutator relation", commutator_relation),
        ("singular locus", singular_locus),
        ("branching family", branching),
        ("distinguishing pair", distinguishing),
        ("D4 structure", dihedral),
        ("symmetrizer", symmetrizer),
        ("grading", grading),
        ("SL(2) restriction", sl2_restriction),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        failed += usize::from(!o.passed);
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {name}: {} [{:.1}s]", k + 1, o.detail, start.elapsed().as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
