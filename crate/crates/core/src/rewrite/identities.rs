//! Matrix identities behind the rewriting rules, checked by exact
//! evaluation.
//!
//! Universal identities are tested on random `3x3` matrices with small
//! Gaussian rational entries; the ones that need `det = 1` on random pairs
//! from [`random_pair_from`]. The polarization `pol(x, y) = yx^2 + x^2y + xyx`
//! is always evaluated through its trace expansion ([`pol`]) so that the
//! identities are not tautologies.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::freegroup::Word;
use crate::linalg::{random_pair_from, random_small_gaussian, trace_of_word, Matrix3, DEFAULT_COMPLEXITY};
use crate::scalar::ExactComplex;
use crate::variety::chi;

use super::reduce_trace;

type M = Matrix3<ExactComplex>;

/// Second coefficient of the characteristic polynomial.
pub fn c2(x: &M) -> ExactComplex {
    let t = x.trace();
    let half = ExactComplex::from_parts(1, 2, 0, 1);
    &(&(&t * &t) - &(x * x).trace()) * &half
}

/// `pol(x, y)` by the polarized Cayley-Hamilton identity:
///
/// ```text
/// tr(y) x^2 + tr(x)(yx + xy) - (tr(x)tr(y) - tr(xy)) x - c2(x) y
///   + (tr(yx^2) - tr(x)tr(xy) + c2(x)tr(y)) I
/// ```
pub fn pol(x: &M, y: &M) -> M {
    let tx = x.trace();
    let ty = y.trace();
    let xy = x * y;
    let txy = xy.trace();
    let x2 = x * x;
    let c = c2(x);
    let d = &(&(y * &x2).trace() - &(&tx * &txy)) + &(&c * &ty);
    let terms = [
        x2.scale(&ty),
        (&(y * x) + &xy).scale(&tx),
        x.scale(&(&txy - &(&tx * &ty))),
        y.scale(&-c),
        M::identity().scale(&d),
    ];
    terms.iter().fold(M::zero(), |acc, m| &acc + m)
}

/// `pol(x, y)` by its definition.
pub fn pol_direct(x: &M, y: &M) -> M {
    let x2 = x * x;
    &(&(y * &x2) + &(&x2 * y)) + &(&(x * y) * x)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub name: &'static str,
    pub trials: usize,
    pub passed: usize,
    /// Index of the first failing trial.
    pub first_failure: Option<usize>,
}

impl IdentityResult {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub seed: u64,
    pub trials: usize,
    pub results: Vec<IdentityResult>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(IdentityResult::ok)
    }
}

fn random_matrix(rng: &mut ChaCha8Rng) -> M {
    M::from_fn(|_, _| if rng.random_bool(0.2) { ExactComplex::zero() } else { random_small_gaussian(rng) })
}

/// Random data for one trial: six general matrices and one unimodular pair.
struct Trial {
    g: [M; 6],
    a: M,
    b: M,
    pair: crate::linalg::SL3Pair,
}

fn trial(seed: u64, index: usize) -> Trial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let g = std::array::from_fn(|_| random_matrix(&mut rng));
    let pair = random_pair_from(&mut rng, DEFAULT_COMPLEXITY);
    Trial { g, a: pair.a.clone(), b: pair.b.clone(), pair }
}

fn int(n: i64) -> ExactComplex {
    ExactComplex::from_int(n)
}

fn cayley_hamilton(t: &Trial) -> bool {
    let x = &t.g[0];
    let x2 = x * x;
    let lhs = &(&(&(&x2 * x) - &x2.scale(&x.trace())) + &x.scale(&c2(x))) - &M::identity().scale(&x.det());
    lhs == M::zero()
}

fn adjugate_trace(t: &Trial) -> bool {
    let x = &t.g[0];
    x.adjugate().trace() == c2(x)
}

fn determinant_trace(t: &Trial) -> bool {
    let x = &t.g[0];
    let t1 = x.trace();
    let t2 = (x * x).trace();
    let t3 = (&(x * x) * x).trace();
    let six = &(&(&(&t1 * &t1) * &t1) - &(&int(3) * &(&t1 * &t2))) + &(&int(2) * &t3);
    six == &int(6) * &x.det()
}

fn partial_polarization(t: &Trial) -> bool {
    pol(&t.g[0], &t.g[1]) == pol_direct(&t.g[0], &t.g[1])
}

fn pol_consistency(t: &Trial) -> bool {
    // pol(x, x) = 3x^3 and pol is linear in its second argument
    let (x, y, z) = (&t.g[0], &t.g[1], &t.g[2]);
    let cube = &(x * x) * x;
    pol(x, x) == cube.scale(&int(3)) && pol(x, &(y + z)) == &pol(x, y) + &pol(x, z)
}

fn full_polarization(t: &Trial) -> bool {
    let (x, y, z) = (&t.g[0], &t.g[1], &t.g[2]);
    let lhs = [[x, z, y], [z, x, y], [y, x, z], [y, z, x], [x, y, z], [z, y, x]]
        .iter()
        .fold(M::zero(), |acc, [p, q, r]| &acc + &(&(*p * *q) * *r));
    lhs == &(&pol(&(x + z), y) - &pol(x, y)) - &pol(z, y)
}

fn full_polarization_degenerate(t: &Trial) -> bool {
    let (x, y) = (&t.g[0], &t.g[1]);
    let z = M::zero();
    &(&pol(&(x + &z), y) - &pol(x, y)) - &pol(&z, y) == M::zero()
}

fn right_multiplied_ch(t: &Trial) -> bool {
    let (x, y) = (&t.a, &t.b);
    let xinv = x.adjugate();
    let lhs = &(&(&(&(x * x) * y) - &(x * y).scale(&x.trace())) + &y.scale(&xinv.trace())) - &(&xinv * y);
    lhs == M::zero()
}

fn x2zy2_split(t: &Trial) -> bool {
    let (x, y, z) = (&t.g[0], &t.g[1], &t.g[2]);
    let lhs = &(&(x * x) * z) * &(y * y);
    let rhs = &(&(x * &pol(y, &(x * z))) - &(&(&(&(x * y) * y) * x) * z)) - &(&(&(&(x * y) * x) * z) * y);
    lhs == rhs
}

fn x2zy2_expanded(t: &Trial) -> bool {
    let (x, y, z) = (&t.g[0], &t.g[1], &t.g[2]);
    let (x2, y2) = (x * x, y * y);
    let lhs = &(&x2 * z) * &y2;
    let first = &(&(&(&y2 * &x2) + &(&x2 * &y2)) - &pol(x, &y2)) * z;
    let second = &(&(&(&(y * &x2) + &(&x2 * y)) - &pol(x, y)) * z) * y;
    let rhs = &(&first + &second) + &(x * &pol(y, &(x * z)));
    lhs == rhs
}

fn x2zy2_symmetric(t: &Trial) -> bool {
    let (x, y, z) = (&t.g[0], &t.g[1], &t.g[2]);
    let x2 = x * x;
    let lhs = (&(&x2 * z) * &(y * y)).scale(&int(3));
    let rhs = [
        pol(y, &(&x2 * z)),
        x * &pol(y, &(x * z)),
        (&pol(x, &(y * y)) * z).scale(&int(-1)),
        (&(&pol(x, y) * z) * y).scale(&int(-1)),
        &x2 * &pol(y, z),
    ]
    .iter()
    .fold(M::zero(), |acc, m| &acc + m);
    lhs == rhs
}

fn six_fold_product(t: &Trial) -> bool {
    let [x, y, v, w, z, u] = &t.g;
    let (p, q, r) = (x * y, v * w, z * u);
    let lhs = [[&p, &q, &r], [&q, &p, &r], [&r, &p, &q], [&r, &q, &p], [&p, &r, &q], [&q, &r, &p]]
        .iter()
        .fold(M::zero(), |acc, [a, b, c]| &acc + &(&(*a * *b) * *c));
    lhs == &(&pol(&(&p + &q), &r) - &pol(&p, &r)) - &pol(&q, &r)
}

fn commutator_relation(t: &Trial) -> bool {
    let (x, y) = (&t.a, &t.b);
    let (xi, yi) = (x.adjugate(), y.adjugate());
    let tr = |ms: &[&M]| ms.iter().skip(1).fold((*ms[0]).clone(), |acc, m| &acc * *m).trace();
    let (tx, t_xinv, ty, t_yinv) = (x.trace(), xi.trace(), y.trace(), yi.trace());
    let (txy, t_xy_inv, t_x_yinv, t_xinv_y) = (tr(&[x, y]), tr(&[&xi, &yi]), tr(&[x, &yi]), tr(&[&xi, y]));
    let lhs = tr(&[x, y, &xi, &yi]);
    let rhs = [
        -tr(&[y, x, &yi, &xi]),
        &(&tx * &t_xinv) * &(&ty * &t_yinv),
        &tx * &t_xinv,
        &ty * &t_yinv,
        &txy * &t_xy_inv,
        &t_x_yinv * &t_xinv_y,
        -(&(&t_xinv * &ty) * &t_x_yinv),
        -(&(&tx * &t_yinv) * &t_xinv_y),
        -(&(&tx * &ty) * &t_xy_inv),
        -(&(&txy * &t_xinv) * &t_yinv),
        int(-3),
    ]
    .into_iter()
    .fold(ExactComplex::zero(), |acc, z| &acc + &z);
    lhs == rhs
}

fn power_reduction(t: &Trial) -> bool {
    let x = &t.a;
    let xi = x.adjugate();
    let (tx, t_xinv) = (x.trace(), xi.trace());
    let pow = |n: i32| if n >= 0 { x.pow(n as u32) } else { xi.pow(n.unsigned_abs()) };
    (-3..=5).all(|n| {
        let rhs = &(&pow(n - 1).scale(&tx) - &pow(n - 2).scale(&t_xinv)) + &pow(n - 3);
        pow(n) == rhs
    })
}

fn reduced_traces(t: &Trial) -> bool {
    let pt = chi(&t.pair);
    ["a^2*b*A*b^-1", "a*b*a*B*A*b", "b^3*a^-2*b*a"].iter().all(|s| {
        let w: Word = s.parse().expect("static word");
        reduce_trace(&w).eval(&pt.coords) == trace_of_word(&w, &t.pair)
    })
}

type Check = fn(&Trial) -> bool;

/// Every identity with its name.
const IDENTITIES: &[(&str, Check)] = &[
    ("cayley_hamilton", cayley_hamilton),
    ("adjugate_trace", adjugate_trace),
    ("determinant_trace", determinant_trace),
    ("partial_polarization", partial_polarization),
    ("pol_consistency", pol_consistency),
    ("full_polarization", full_polarization),
    ("full_polarization_degenerate", full_polarization_degenerate),
    ("right_multiplied_cayley_hamilton", right_multiplied_ch),
    ("commutator_trace_relation", commutator_relation),
    ("power_reduction", power_reduction),
    ("x2zy2_split", x2zy2_split),
    ("x2zy2_expanded", x2zy2_expanded),
    ("x2zy2_symmetric", x2zy2_symmetric),
    ("six_fold_product", six_fold_product),
    ("reduced_traces", reduced_traces),
];

/// Checks every identity on `trials` random inputs. Trial `i` draws from
/// stream `i` of a generator seeded with `seed`, so results do not depend on
/// the number of trials.
pub fn identity_suite(seed: u64, trials: usize) -> IdentityReport {
    let mut results: Vec<IdentityResult> = IDENTITIES
        .iter()
        .map(|(name, _)| IdentityResult { name, trials, passed: 0, first_failure: None })
        .collect();
    for i in 0..trials {
        let t = trial(seed, i);
        for (r, (_, check)) in results.iter_mut().zip(IDENTITIES) {
            if check(&t) {
                r.passed += 1;
            } else if r.first_failure.is_none() {
                r.first_failure = Some(i);
            }
        }
    }
    IdentityReport { seed, trials, results }
}
