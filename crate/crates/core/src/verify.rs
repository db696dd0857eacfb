//! Verification suites: randomized exact checks with JSON reports.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::freegroup::Word;
use crate::io::{exact_point_to_json, pair_to_json};
use crate::linalg::{random_pair_from, trace_of_word, SL3Pair, WordEvaluator, DEFAULT_COMPLEXITY};
use crate::poly::{Bigrade, CoordPolynomial, CoordVar, PointEvaluator};
use crate::rewrite::identities::identity_suite;
use crate::rewrite::TraceReducer;
use crate::sample::{exact_pair_from, trial_rng, with_retry, Family};
use crate::scalar::ExactComplex;
use crate::symmetry::{act_on_poly, nielsen_action, nielsen_generator, verify_group_structure, verify_symmetrizer, DihedralElement};
use crate::variety::{
    bilinear_form, branching_family, branching_partials_closed_form, chi, discriminant, distinguishing_pair, fiber_over,
    is_branching, is_singular, jacobian_system, lambda_det, lambda_matrix, lambda_words, polynomial_p, polynomial_q,
    surface_polynomial, surface_residual, CharPoint,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 42, trials: 100, tolerance: 1e-9 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Surface,
    Lambda,
    Symmetry,
    Singular,
    Grading,
    Rewrite,
    All,
}

impl Suite {
    pub const ALL: [Suite; 8] =
        [Suite::Identities, Suite::Surface, Suite::Lambda, Suite::Symmetry, Suite::Singular, Suite::Grading, Suite::Rewrite, Suite::All];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Surface => "surface",
            Suite::Lambda => "lambda",
            Suite::Symmetry => "symmetry",
            Suite::Singular => "singular",
            Suite::Grading => "grading",
            Suite::Rewrite => "rewrite",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub trials: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub seed: u64,
    pub trials: usize,
    pub tolerance: f64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    /// One line per check.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {}/{} ({}/{} ok)\n", c.suite, c.name, c.trials - c.failures, c.trials));
            if let Some(ce) = &c.counterexample {
                out.push_str(&format!("     counterexample: {ce}\n"));
            }
        }
        out.push_str(if self.passed { "all checks passed\n" } else { "some checks FAILED\n" });
        out
    }
}

struct Recorder {
    suite: &'static str,
    checks: Vec<CheckResult>,
}

impl Recorder {
    fn new(suite: &'static str) -> Self {
        Recorder { suite, checks: Vec::new() }
    }

    /// Runs `check` on trials `0..trials`; it returns `None` on success and
    /// a counterexample otherwise.
    fn trials(&mut self, name: &str, trials: usize, mut check: impl FnMut(usize) -> Option<Value>) {
        let mut failures = 0;
        let mut counterexample = None;
        for i in 0..trials {
            if let Some(ce) = check(i) {
                failures += 1;
                counterexample.get_or_insert(json!({ "trial": i, "data": ce }));
            }
        }
        self.checks.push(CheckResult {
            suite: self.suite,
            name: name.to_string(),
            passed: failures == 0,
            trials,
            failures,
            counterexample,
        });
    }

    fn single(&mut self, name: &str, passed: bool, detail: Option<Value>) {
        self.checks.push(CheckResult {
            suite: self.suite,
            name: name.to_string(),
            passed,
            trials: 1,
            failures: usize::from(!passed),
            counterexample: if passed { None } else { detail },
        });
    }
}

fn pair(cfg: &VerifyConfig, family: Family, i: usize) -> SL3Pair {
    exact_pair_from(&mut trial_rng(cfg.seed, i as u64), family).expect("exact family")
}

fn identities(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let report = identity_suite(cfg.seed, cfg.trials);
    report
        .results
        .into_iter()
        .map(|r| CheckResult {
            suite: "identities",
            name: r.name.to_string(),
            passed: r.ok(),
            trials: r.trials,
            failures: r.trials - r.passed,
            counterexample: r.first_failure.map(|i| json!({ "trial": i })),
        })
        .collect()
}

fn surface(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut r = Recorder::new("surface");
    r.single("degrees", polynomial_p().total_degree() == 4 && polynomial_q().total_degree() == 6 && surface_polynomial().total_degree() == 6, None);
    r.trials("residual_is_zero", cfg.trials, |i| {
        let p = pair(cfg, Family::Generic, i);
        let res = surface_residual(&chi(&p));
        (!res.is_zero()).then(|| json!({ "pair": pair_to_json(&p), "residual": res.to_string() }))
    });
    let commutator: Word = "a*b*A*B".parse().expect("static word");
    let inverse_commutator: Word = "b*a*B*A".parse().expect("static word");
    r.trials("q_is_product_of_commutator_traces", cfg.trials, |i| {
        let p = pair(cfg, Family::Generic, i);
        let lhs = polynomial_q().eval(&chi(&p).coords);
        let rhs = &trace_of_word(&commutator, &p) * &trace_of_word(&inverse_commutator, &p);
        (lhs != rhs).then(|| json!({ "pair": pair_to_json(&p) }))
    });
    r.trials("fiber_roots_satisfy_vieta", cfg.trials, |i| {
        let pt = chi(&pair(cfg, Family::Generic, i)).to_approx();
        let (r1, r2) = fiber_over(&pt.base());
        let p = polynomial_p().eval(&pt.coords);
        let q = polynomial_q().eval(&pt.coords);
        let ok = (r1 + r2 - p).norm() <= cfg.tolerance * (1.0 + p.norm()) && (r1 * r2 - q).norm() <= cfg.tolerance * (1.0 + q.norm());
        (!ok).then(|| json!({ "roots": [r1.to_string(), r2.to_string()] }))
    });
    r.trials("fiber_contains_both_commutator_traces", cfg.trials, |i| {
        let pt = chi(&pair(cfg, Family::Generic, i)).to_approx();
        let (r1, r2) = fiber_over(&pt.base());
        let (t5, tm5) = (*pt.t5(), pt.t_minus5());
        // relative to the size of the roots: simple roots lose no more than
        // a few digits
        let scale = 1.0 + t5.norm().max(tm5.norm());
        let close = |x: Complex64, y: Complex64| (x - y).norm() <= 1e3 * cfg.tolerance * scale;
        let ok = (close(r1, t5) && close(r2, tm5)) || (close(r1, tm5) && close(r2, t5));
        (!ok).then(|| json!({ "roots": [r1.to_string(), r2.to_string()], "t5": t5.to_string() }))
    });
    r.trials("sl2_pairs_have_t5_half_p", cfg.trials, |i| {
        let pt = chi(&pair(cfg, Family::Sl2, i));
        let two_t5 = pt.t5() + pt.t5();
        (two_t5 != polynomial_p().eval(&pt.coords)).then(|| exact_point_to_json(&pt))
    });
    r.trials("branching_iff_t5_equals_t_minus5", cfg.trials, |i| {
        let family = if i % 2 == 0 { Family::Generic } else { Family::Gl2 };
        let pt = chi(&pair(cfg, family, i));
        let lhs = is_branching(&pt, cfg.tolerance);
        let rhs = *pt.t5() == pt.t_minus5();
        (lhs != rhs).then(|| exact_point_to_json(&pt))
    });
    r.trials("generic_pairs_are_not_branching", cfg.trials, |i| {
        let drawn = with_retry(cfg.seed, i as u64, |rng| random_pair_from(rng, DEFAULT_COMPLEXITY), |p| {
            !discriminant(&chi(p).base()).is_zero()
        });
        drawn.err().map(|p| pair_to_json(&p))
    });
    let (p1, p2) = distinguishing_pair();
    let agree = CoordVar::BASE.iter().all(|&v| (p1[v] - p2[v]).norm() < cfg.tolerance);
    let differ = (p1.t5() - p2.t5()).norm() > 1e-3;
    r.single("distinguishing_pair", agree && differ, Some(json!({ "t5": [p1.t5().to_string(), p2.t5().to_string()] })));
    r.checks
}

fn lambda(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut r = Recorder::new("lambda");
    r.trials("determinant_is_zero", cfg.trials, |i| {
        let p = pair(cfg, Family::Generic, i);
        let det = lambda_det(&p);
        (!det.is_zero()).then(|| json!({ "pair": pair_to_json(&p), "det": det.to_string() }))
    });
    r.trials("entries_match_bilinear_form", cfg.trials.min(10), |i| {
        let p = pair(cfg, Family::Generic, i);
        let m = lambda_matrix(&p);
        let words = lambda_words();
        let a = crate::linalg::evaluate_word(&words[0], &p);
        let a2 = &a * &a;
        let direct = &(&ExactComplex::from_int(3) * &a2.trace()) - &(&a.trace() * &a.trace());
        let ok = m[0][0] == direct && m[0][0] == bilinear_form(&a, &a);
        (!ok).then(|| pair_to_json(&p))
    });
    r.single("identity_pair", lambda_matrix(&SL3Pair::<ExactComplex>::identity()).iter().flatten().all(Zero::is_zero), None);
    r.checks
}

fn symmetry(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut r = Recorder::new("symmetry");
    for c in verify_group_structure().checks {
        r.single(&c.name, c.passed, c.detail.map(Value::String));
    }
    let (p_ok, q_ok) = verify_symmetrizer();
    r.single("symmetrizer_p", p_ok, None);
    r.single("symmetrizer_q", q_ok, None);
    for (name, g) in [("tau", DihedralElement::Tau), ("iota", DihedralElement::Iota)] {
        let (x, y) = nielsen_generator(name).expect("known generator");
        let ok = match nielsen_action((&x, &y)) {
            Ok(polys) => CoordVar::ALL.iter().zip(&polys).all(|(v, p)| *p == act_on_poly(g, &CoordPolynomial::var(*v))),
            Err(_) => false,
        };
        r.single(&format!("nielsen_{name}_matches_permutation"), ok, None);
    }
    let (x, y) = nielsen_generator("eta").expect("known generator");
    let eta = nielsen_action((&x, &y));
    r.trials("nielsen_eta_matches_transformed_pairs", cfg.trials.min(50), |i| {
        let Ok(polys) = &eta else { return Some(json!("rewriting failed")) };
        let p = pair(cfg, Family::Generic, i);
        let pt = chi(&p);
        let image = chi(&p.transform((&x, &y)));
        let ok = polys.iter().zip(&image.coords).all(|(f, z)| f.eval(&pt.coords) == *z);
        (!ok).then(|| pair_to_json(&p))
    });
    r.trials("action_preserves_surface", cfg.trials, |i| {
        let pt = chi(&pair(cfg, Family::Generic, i));
        let g = DihedralElement::ALL[i % 8];
        let image = crate::symmetry::act_on_point(g, &pt);
        (!surface_residual(&image).is_zero()).then(|| json!({ "element": g.name(), "point": exact_point_to_json(&pt) }))
    });
    r.checks
}

fn singular(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut r = Recorder::new("singular");
    for (name, family) in [("gl2_pairs_are_singular", Family::Gl2), ("diag_pairs_are_singular", Family::Diag), ("sl2_pairs_are_singular", Family::Sl2)] {
        r.trials(name, cfg.trials, |i| {
            let pt = chi(&pair(cfg, family, i));
            let all_zero = jacobian_system().evaluate(&pt).iter().all(Zero::is_zero);
            (!all_zero).then(|| exact_point_to_json(&pt))
        });
    }
    r.trials("generic_pairs_are_not_singular", cfg.trials, |i| {
        let drawn = with_retry(cfg.seed, i as u64, |rng| random_pair_from(rng, DEFAULT_COMPLEXITY), |p| {
            matches!(is_singular(&chi(p), cfg.tolerance), Ok(false))
        });
        drawn.err().map(|p| pair_to_json(&p))
    });
    let a = Complex64::new(2.0, 0.0);
    match branching_family(a, Complex64::new(1.0, 0.0)) {
        Ok(s) => {
            let (e1, e2) = branching_partials_closed_form(a);
            let (g1, g2) = s.nonzero_partials;
            let tol = cfg.tolerance;
            r.single(
                "branching_family_partials",
                (g1 - e1).norm() < tol && (g2 - e2).norm() < tol && (e1 - Complex64::new(-343.0 / 64.0, 0.0)).norm() < tol && (e2 - Complex64::new(343.0 / 128.0, 0.0)).norm() < tol,
                Some(json!({ "computed": [g1.to_string(), g2.to_string()] })),
            );
            r.single("branching_family_on_surface", surface_residual(&s.point).norm() < tol, None);
            r.single("branching_family_in_branching_locus", discriminant(&s.point.base()).norm() < tol, None);
            r.single("branching_family_not_singular", matches!(is_singular(&s.point, tol), Ok(false)), None);
        }
        Err(e) => r.single("branching_family", false, Some(Value::String(e.to_string()))),
    }
    r.trials("random_branching_family_points", cfg.trials.min(20), |i| {
        let mut rng = trial_rng(cfg.seed, i as u64);
        let a = Complex64::new(rng.random_range(0.5..2.0), rng.random_range(-1.0..1.0));
        let c = Complex64::new(rng.random_range(0.5..2.0), rng.random_range(-1.0..1.0));
        let s = branching_family(a, c).ok()?;
        let (e1, e2) = branching_partials_closed_form(a);
        let (g1, g2) = s.nonzero_partials;
        let rel = |x: Complex64, y: Complex64| (x - y).norm() <= 1e-7 * (1.0 + y.norm());
        (!(rel(g1, e1) && rel(g2, e2))).then(|| json!({ "a": a.to_string(), "c": c.to_string() }))
    });
    r.checks
}

fn grading(_cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut r = Recorder::new("grading");
    let zero = Bigrade::new(0, 0);
    r.single("p_is_homogeneous_of_degree_zero", polynomial_p().homogeneous_bigrade() == Some(zero), None);
    r.single("q_is_homogeneous_of_degree_zero", polynomial_q().homogeneous_bigrade() == Some(zero), None);
    let jac_ok = CoordVar::ALL.iter().all(|&v| {
        let g = jacobian_system().generator(v);
        g.terms().all(|(m, _)| Bigrade::of_monomial(m) == v.bigrade().neg())
    });
    r.single("jacobian_generators_are_graded", jac_ok, None);
    let words: Vec<Word> = (0..=6).flat_map(Word::enumerate).collect();
    let mut reducer = TraceReducer::new();
    r.trials("traces_have_the_word_bigrade", words.len(), |i| {
        let w = &words[i];
        let g = Bigrade::of_word(w);
        let p = reducer.reduce(w);
        let graded = p.terms().all(|(m, _)| Bigrade::of_monomial(m) == g);
        (!graded).then(|| json!({ "word": w.to_string() }))
    });
    r.checks
}

/// Exact oracle for the rewriter: every word up to length six against
/// `min(trials, 5)` pairs, then `trials` random words of length 9 to 20
/// against two pairs each.
fn rewrite(cfg: &VerifyConfig) -> Vec<CheckResult> {
    let mut r = Recorder::new("rewrite");
    let mut reducer = TraceReducer::new();
    let commutators = &reducer.reduce(&"a*b*A*B".parse().expect("static word")) + &reducer.reduce(&"b*a*B*A".parse().expect("static word"));
    r.single("commutator_traces_sum_to_p", commutators == polynomial_p(), None);
    let words: Vec<Word> = (0..=6).flat_map(Word::enumerate).collect();
    let polys: Vec<CoordPolynomial> = words.iter().map(|w| reducer.reduce(w)).collect();
    r.trials("short_words_all_lengths_up_to_6", cfg.trials.min(5), |i| {
        let p = pair(cfg, Family::Generic, i);
        let mut words_ev = WordEvaluator::new(&p);
        let mut points = PointEvaluator::new(&chi(&p).coords);
        words
            .iter()
            .zip(&polys)
            .find(|(w, f)| points.eval(f) != words_ev.trace(w))
            .map(|(w, _)| json!({ "word": w.to_string(), "pair": pair_to_json(&p) }))
    });
    r.trials("random_long_words", cfg.trials, |i| {
        let mut rng = trial_rng(cfg.seed ^ 0x5eed, i as u64);
        let len = rng.random_range(9..=20);
        let w = random_word(&mut rng, len);
        let f = reducer.reduce(&w);
        (0..2).find_map(|_| {
            let p = random_pair_from(&mut rng, DEFAULT_COMPLEXITY);
            (f.eval(&chi(&p).coords) != trace_of_word(&w, &p)).then(|| json!({ "word": w.to_string(), "pair": pair_to_json(&p) }))
        })
    });
    r.checks
}

/// A uniformly random freely reduced word of the given length.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, length: usize) -> Word {
    use crate::freegroup::Gen;
    let letters = [(Gen::X1, 1), (Gen::X1, -1), (Gen::X2, 1), (Gen::X2, -1)];
    let mut units: Vec<(Gen, i32)> = Vec::with_capacity(length);
    while units.len() < length {
        let next = letters[rng.random_range(0..4)];
        if units.last().is_some_and(|&(g, e)| g == next.0 && e == -next.1) {
            continue;
        }
        units.push(next);
    }
    Word::from_units(&units)
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> VerifyReport {
    let checks = match suite {
        Suite::Identities => identities(cfg),
        Suite::Surface => surface(cfg),
        Suite::Lambda => lambda(cfg),
        Suite::Symmetry => symmetry(cfg),
        Suite::Singular => singular(cfg),
        Suite::Grading => grading(cfg),
        Suite::Rewrite => rewrite(cfg),
        Suite::All => [identities, surface, lambda, symmetry, singular, grading, rewrite].iter().flat_map(|f| f(cfg)).collect(),
    };
    VerifyReport { suite, seed: cfg.seed, trials: cfg.trials, tolerance: cfg.tolerance, passed: checks.iter().all(|c| c.passed), checks }
}

/// Exact-path agreement between a point and a polynomial family.
pub fn eval_all(polys: &[CoordPolynomial], pt: &CharPoint) -> Vec<ExactComplex> {
    let mut ev = PointEvaluator::new(&pt.coords);
    polys.iter().map(|p| ev.eval(p)).collect()
}
