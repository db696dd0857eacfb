//! The dihedral group generated by the outer automorphisms
//!
//! ```text
//! tau:  a -> b,  b -> a
//! iota: a -> A,  b -> b
//! ```
//!
//! acting on the coordinates. On `t(+-1) .. t(+-4)` both act by signed
//! permutations of the subscripts; on `t(5)` each generator acts by
//! `t(5) -> t(-5) = P - t(5)`.
//!
//! Composition follows function notation: `gh` applies `h` first.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::freegroup::{Gen, Word};
use crate::poly::{CoordPolynomial, CoordVar, FreePolynomial, NVARS};
use crate::rewrite::TraceReducer;
use crate::scalar::Scalar;
use crate::variety::{polynomial_p, polynomial_q, CharPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("unknown group element {0:?}")]
    UnknownElement(String),
    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),
}

/// A bijection of `{+-1, .., +-4}`, stored as the images of
/// [`CoordVar::BASE`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    images: [CoordVar; 8],
}

fn base_slot(v: CoordVar) -> usize {
    debug_assert!(v != CoordVar::T5);
    v.index()
}

impl SignedPermutation {
    pub fn identity() -> Self {
        SignedPermutation { images: CoordVar::BASE }
    }

    pub fn from_images(images: [CoordVar; 8]) -> Result<Self, SymmetryError> {
        let mut seen = [false; 8];
        for v in images {
            if v == CoordVar::T5 {
                return Err(SymmetryError::InvalidPermutation("t(5) is not permuted".into()));
            }
            if std::mem::replace(&mut seen[base_slot(v)], true) {
                return Err(SymmetryError::InvalidPermutation(format!("{v} is hit twice")));
            }
        }
        Ok(SignedPermutation { images })
    }

    /// Parses cycle notation over signed indices, e.g. `(1,2)(-1,-2)(4,-4)`.
    /// `(1)` and the empty string denote the identity.
    pub fn from_cycles(text: &str) -> Result<Self, SymmetryError> {
        let bad = |m: &str| SymmetryError::InvalidPermutation(format!("{m} in {text:?}"));
        let mut images = CoordVar::BASE;
        let mut seen = [false; 8];
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let end = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let cycle = body[..end]
                .split(',')
                .map(|s| {
                    s.parse::<i32>()
                        .ok()
                        .filter(|k| (1..=4).contains(&k.abs()))
                        .and_then(CoordVar::from_signed_index)
                        .ok_or_else(|| bad("bad index"))
                })
                .collect::<Result<Vec<_>, _>>()?;
            for (k, &v) in cycle.iter().enumerate() {
                if std::mem::replace(&mut seen[base_slot(v)], true) {
                    return Err(bad("index repeated"));
                }
                images[base_slot(v)] = cycle[(k + 1) % cycle.len()];
            }
            rest = &body[end + 1..];
        }
        Ok(SignedPermutation { images })
    }

    pub fn apply(&self, v: CoordVar) -> CoordVar {
        if v == CoordVar::T5 {
            return v;
        }
        self.images[base_slot(v)]
    }

    /// `self . other`: `other` first.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        SignedPermutation { images: CoordVar::BASE.map(|v| self.apply(other.apply(v))) }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut images = CoordVar::BASE;
        for v in CoordVar::BASE {
            images[base_slot(self.apply(v))] = v;
        }
        SignedPermutation { images }
    }

    /// Disjoint cycles, smallest element of each orbit first, in the order
    /// `1, -1, 2, -2, ...`.
    pub fn cycles(&self) -> Vec<Vec<i32>> {
        let mut seen = [false; 8];
        let mut out = Vec::new();
        for v in CoordVar::BASE {
            if seen[base_slot(v)] || self.apply(v) == v {
                continue;
            }
            let mut cycle = Vec::new();
            let mut u = v;
            while !seen[base_slot(u)] {
                seen[base_slot(u)] = true;
                cycle.push(u.signed_index());
                u = self.apply(u);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("(1)");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(i32::to_string).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPermutation{self}")
    }
}

/// The eight elements, named by their shortest words in `iota`, `tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum DihedralElement {
    Id,
    Iota,
    Tau,
    IotaTau,
    TauIota,
    TauIotaTau,
    IotaTauIota,
    TauIotaTauIota,
}

use DihedralElement::*;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Generator {
    I,
    T,
}

impl DihedralElement {
    pub const ALL: [DihedralElement; 8] = [Id, Iota, Tau, IotaTau, TauIota, TauIotaTau, IotaTauIota, TauIotaTauIota];

    fn spelling(self) -> &'static [Generator] {
        use Generator::{I, T};
        match self {
            Id => &[],
            Iota => &[I],
            Tau => &[T],
            IotaTau => &[I, T],
            TauIota => &[T, I],
            TauIotaTau => &[T, I, T],
            IotaTauIota => &[I, T, I],
            TauIotaTauIota => &[T, I, T, I],
        }
    }

    /// ASCII name, e.g. `iota*tau`.
    pub fn name(self) -> &'static str {
        ["id", "iota", "tau", "iota*tau", "tau*iota", "tau*iota*tau", "iota*tau*iota", "tau*iota*tau*iota"][self as usize]
    }

    /// Whether `t(5)` is sent to `P - t(5)`.
    pub fn is_odd(self) -> bool {
        self.spelling().len() % 2 == 1
    }

    pub fn permutation(self) -> SignedPermutation {
        static PERMS: OnceLock<[SignedPermutation; 8]> = OnceLock::new();
        PERMS.get_or_init(|| {
            let iota = SignedPermutation::from_cycles("(1,-1)(3,-4)(-3,4)").expect("static cycles");
            let tau = SignedPermutation::from_cycles("(1,2)(-1,-2)(4,-4)").expect("static cycles");
            DihedralElement::ALL.map(|g| {
                g.spelling().iter().fold(SignedPermutation::identity(), |acc, s| {
                    acc.compose(if *s == Generator::I { &iota } else { &tau })
                })
            })
        })[self as usize]
    }

    /// The element with a given permutation.
    pub fn from_permutation(perm: &SignedPermutation) -> Option<Self> {
        DihedralElement::ALL.into_iter().find(|g| g.permutation() == *perm)
    }

    /// `self . other`.
    pub fn compose(self, other: DihedralElement) -> DihedralElement {
        DihedralElement::from_permutation(&self.permutation().compose(&other.permutation()))
            .expect("the group is closed")
    }

    pub fn inverse(self) -> DihedralElement {
        DihedralElement::from_permutation(&self.permutation().inverse()).expect("the group is closed")
    }

    pub fn order(self) -> usize {
        let mut g = self;
        let mut n = 1;
        while g != Id {
            g = g.compose(self);
            n += 1;
        }
        n
    }

    /// The automorphism of the free group, as images of `a` and `b`, whose
    /// effect on coordinates is [`act_on_point`].
    pub fn automorphism(self) -> (Word, Word) {
        let a = Word::generator(Gen::X1);
        let b = Word::generator(Gen::X2);
        let iota = (Word::power(Gen::X1, -1), b.clone());
        let tau = (b.clone(), a.clone());
        // precomposition reverses the order of the spelling
        self.spelling().iter().fold((a, b), |(x, y), s| {
            let (u, v) = if *s == Generator::I { &iota } else { &tau };
            (x.substitute((u, v)), y.substitute((u, v)))
        })
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DihedralElement {
    type Err = SymmetryError;

    /// Accepts `id`, `1`, and words in `iota`/`tau`, `i`/`t` or `ι`/`τ`,
    /// optionally separated by `*`, `.` or spaces. Non-reduced words such as
    /// `tau*tau` are multiplied out.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || SymmetryError::UnknownElement(text.to_string());
        let mut s: String = text.chars().filter(|c| !matches!(c, '*' | '.' | ' ')).collect::<String>().to_lowercase();
        if s == "id" || s == "1" || s == "e" {
            return Ok(Id);
        }
        s = s.replace("iota", "i").replace("tau", "t").replace('ι', "i").replace('τ', "t");
        if s.is_empty() {
            return Err(err());
        }
        s.chars().try_fold(Id, |acc, c| match c {
            'i' => Ok(acc.compose(Iota)),
            't' => Ok(acc.compose(Tau)),
            _ => Err(err()),
        })
    }
}

/// Image of a point under `g`: coordinate `t(i)` of the point becomes
/// coordinate `t(g(i))` of the image, and `t(5)` becomes `P - t(5)` for odd
/// `g`.
pub fn act_on_point<T: Scalar>(g: DihedralElement, pt: &CharPoint<T>) -> CharPoint<T> {
    let perm = g.permutation();
    let mut coords = pt.coords.clone();
    for v in CoordVar::BASE {
        coords[perm.apply(v).index()] = pt.coords[v.index()].clone();
    }
    if g.is_odd() {
        coords[CoordVar::T5.index()] = polynomial_p().eval(&pt.coords) - pt.t5().clone();
    }
    CharPoint::new(coords)
}

/// Substitutes `t(i) -> t(g(i))`, and `t(5) -> P - t(5)` for odd `g`.
pub fn act_on_poly(g: DihedralElement, p: &CoordPolynomial) -> CoordPolynomial {
    let perm = g.permutation();
    let images: [FreePolynomial; NVARS] = std::array::from_fn(|i| {
        let v = CoordVar::ALL[i];
        if v == CoordVar::T5 {
            if g.is_odd() {
                &polynomial_p().into_free() - &FreePolynomial::var(CoordVar::T5)
            } else {
                FreePolynomial::var(v)
            }
        } else {
            FreePolynomial::var(perm.apply(v))
        }
    });
    p.as_free().substitute(&images).normalize()
}

/// `sum over g of act_on_poly(g, p)`.
pub fn symmetrize(p: &CoordPolynomial) -> CoordPolynomial {
    DihedralElement::ALL.iter().fold(CoordPolynomial::zero(), |acc, &g| &acc + &act_on_poly(g, p))
}

const P_SEED_TEXT: &str = "1/8*t(1)*t(-1)*t(2)*t(-2) - 1/2*t(1)*t(-2)*t(-4) + 1/4*t(1)*t(-1) + 1/4*t(3)*t(-3)";

const Q_SEED_TEXT: &str = "1/4*t(-2)*t(-1)^2*t(1)^2*t(2) + 1/2*t(1)^2*t(2)^2*t(3) - 1/2*t(1)^3*t(-2)*t(2) \
    - t(-4)*t(-2)*t(-1)*t(1)^2 - 1/2*t(4)*t(3)*t(2)*t(1)*t(-2) + t(1)*t(3)*t(-4)^2 + t(-4)*t(1)*t(2)^2 \
    - t(3)^2*t(2)*t(1) + 1/2*t(4)*t(-3)*t(2)^2 + 1/8*t(-2)*t(-1)*t(2)*t(1) + 1/8*t(-3)*t(-4)*t(3)*t(4) \
    + 1/2*t(-3)*t(-1)*t(3)*t(1) + 1/2*t(1)^3 + 1/2*t(3)^3 + 3/2*t(-4)*t(-2)*t(1) - 3/2*t(-4)*t(2)*t(3) \
    - 3/2*t(1)*t(-1) - 3/2*t(3)*t(-3)";

/// The polynomial `p` with `symmetrize(p) = P + 3`.
pub fn seed_p() -> CoordPolynomial {
    P_SEED_TEXT.parse().expect("static polynomial")
}

/// The polynomial `q` with `symmetrize(q) = Q - 9`.
pub fn seed_q() -> CoordPolynomial {
    Q_SEED_TEXT.parse().expect("static polynomial")
}

/// One named check of [`verify_group_structure`].
#[derive(Clone, Debug, Serialize)]
pub struct GroupCheck {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupReport {
    pub checks: Vec<GroupCheck>,
}

impl GroupReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Rows and columns in the order of [`DihedralElement::ALL`]; the entry in
/// row `g`, column `h` is `gh`.
pub const CAYLEY_TABLE: [[&str; 8]; 8] = [
    ["id", "i", "t", "it", "ti", "tit", "iti", "titi"],
    ["i", "id", "it", "t", "iti", "titi", "ti", "tit"],
    ["t", "ti", "id", "tit", "i", "it", "titi", "iti"],
    ["it", "iti", "i", "titi", "id", "t", "tit", "ti"],
    ["ti", "t", "tit", "id", "titi", "iti", "i", "it"],
    ["tit", "titi", "ti", "iti", "t", "id", "it", "i"],
    ["iti", "it", "titi", "i", "tit", "ti", "id", "t"],
    ["titi", "tit", "iti", "ti", "it", "i", "t", "id"],
];

/// Reference permutations in the order of [`DihedralElement::ALL`].
pub const PERMUTATION_TABLE: [&str; 8] = [
    "(1)",
    "(1,-1)(3,-4)(-3,4)",
    "(1,2)(-1,-2)(4,-4)",
    "(1,2,-1,-2)(3,-4,-3,4)",
    "(1,-2,-1,2)(3,4,-3,-4)",
    "(2,-2)(3,4)(-3,-4)",
    "(1,-2)(2,-1)(3,-3)",
    "(1,-1)(2,-2)(3,-3)(4,-4)",
];

fn table_entry(text: &str) -> DihedralElement {
    // the table spells elements without separators
    let mut g = Id;
    if text != "id" {
        for c in text.chars() {
            g = g.compose(if c == 'i' { Iota } else { Tau });
        }
    }
    g
}

/// Closure, the Cayley table, the reference permutations, the dihedral
/// presentation with `a = tau*iota`, `b = iota`, and invariance of `P`, `Q`.
pub fn verify_group_structure() -> GroupReport {
    let mut checks = Vec::new();
    let mut push = |name: &str, passed: bool, detail: Option<String>| {
        checks.push(GroupCheck { name: name.to_string(), passed, detail });
    };

    let perms: Vec<SignedPermutation> = DihedralElement::ALL.iter().map(|g| g.permutation()).collect();
    let distinct = (0..8).all(|i| (0..i).all(|j| perms[i] != perms[j]));
    push("eight_distinct_permutations", distinct, None);

    let closed = perms.iter().all(|x| perms.iter().all(|y| perms.contains(&x.compose(y))));
    push("closure", closed, None);

    let mut mismatches = Vec::new();
    for (r, g) in DihedralElement::ALL.iter().enumerate() {
        for (c, h) in DihedralElement::ALL.iter().enumerate() {
            let expected = table_entry(CAYLEY_TABLE[r][c]);
            let product = DihedralElement::from_permutation(&g.permutation().compose(&h.permutation()));
            if product != Some(expected) {
                mismatches.push(format!("{g} . {h}"));
            }
        }
    }
    push("cayley_table", mismatches.is_empty(), (!mismatches.is_empty()).then(|| mismatches.join(", ")));

    let mut bad = Vec::new();
    for (g, text) in DihedralElement::ALL.iter().zip(PERMUTATION_TABLE) {
        match SignedPermutation::from_cycles(text) {
            Ok(p) if p == g.permutation() => {}
            _ => bad.push(format!("{g}: expected {text}, got {}", g.permutation())),
        }
    }
    push("permutations", bad.is_empty(), (!bad.is_empty()).then(|| bad.join("; ")));

    let a = TauIota;
    let b = Iota;
    push("order_a_is_4", a.order() == 4, Some(format!("order {}", a.order())));
    push("order_b_is_2", b.order() == 2, Some(format!("order {}", b.order())));
    push("ba_equals_a_inverse_b", b.compose(a) == a.inverse().compose(b), None);
    push("ba_is_iota_tau_iota", b.compose(a) == IotaTauIota, None);

    let parity_ok = DihedralElement::ALL
        .iter()
        .all(|g| DihedralElement::ALL.iter().all(|h| g.compose(*h).is_odd() == (g.is_odd() != h.is_odd())));
    push("parity_is_a_homomorphism", parity_ok, None);

    let p = polynomial_p();
    let q = polynomial_q();
    let unfixed: Vec<String> = DihedralElement::ALL
        .iter()
        .filter(|g| act_on_poly(**g, &p) != p || act_on_poly(**g, &q) != q)
        .map(|g| g.to_string())
        .collect();
    push("fixes_p_and_q", unfixed.is_empty(), (!unfixed.is_empty()).then(|| unfixed.join(", ")));

    GroupReport { checks }
}

/// Whether `symmetrize(p) = P + 3` and `symmetrize(q) = Q - 9`.
pub fn verify_symmetrizer() -> (bool, bool) {
    let p_ok = symmetrize(&seed_p()) == &polynomial_p() + &CoordPolynomial::from_int(3);
    let q_ok = symmetrize(&seed_q()) == &polynomial_q() - &CoordPolynomial::from_int(9);
    (p_ok, q_ok)
}

/// The words whose traces are the nine coordinates.
pub fn coordinate_words() -> [Word; NVARS] {
    CoordVar::ALL.map(|v| v.word())
}

/// For the endomorphism `a -> images.0`, `b -> images.1`, the polynomial
/// `tr(w(images))` for each coordinate word `w`, i.e. the pull-back of each
/// coordinate.
pub fn nielsen_action(images: (&Word, &Word)) -> Result<[CoordPolynomial; NVARS], crate::rewrite::RewriteError> {
    let mut reducer = TraceReducer::new();
    let words = coordinate_words();
    let mut out: [CoordPolynomial; NVARS] = std::array::from_fn(|_| CoordPolynomial::zero());
    for (slot, w) in out.iter_mut().zip(words.iter()) {
        *slot = reducer.try_reduce(&w.substitute(images))?;
    }
    Ok(out)
}

/// The Nielsen generators.
pub fn nielsen_generator(name: &str) -> Option<(Word, Word)> {
    let w = |s: &str| s.parse::<Word>().expect("static word");
    match name {
        "tau" => Some((w("b"), w("a"))),
        "iota" => Some((w("A"), w("b"))),
        "eta" => Some((w("a*b"), w("b"))),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_pair_from, DEFAULT_COMPLEXITY};
    use crate::scalar::ExactComplex;
    use crate::variety::{chi, surface_residual};
    use num_traits::Zero;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cp(s: &str) -> CoordPolynomial {
        s.parse().unwrap()
    }

    fn random_point(seed: u64) -> CharPoint {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        chi(&random_pair_from(&mut rng, DEFAULT_COMPLEXITY))
    }

    #[test]
    fn cycle_notation_round_trip() {
        for text in PERMUTATION_TABLE {
            let p = SignedPermutation::from_cycles(text).unwrap();
            assert_eq!(SignedPermutation::from_cycles(&p.to_string()).unwrap(), p);
        }
        assert!(SignedPermutation::from_cycles("(1,5)").is_err());
        assert!(SignedPermutation::from_cycles("(1,2)(2,3)").is_err());
        assert!(SignedPermutation::from_cycles("(1,2").is_err());
    }

    #[test]
    fn generators_act_as_listed() {
        let t = Tau.permutation();
        assert_eq!(t.apply(CoordVar::T1), CoordVar::T2);
        assert_eq!(t.apply(CoordVar::Tm1), CoordVar::Tm2);
        assert_eq!(t.apply(CoordVar::T4), CoordVar::Tm4);
        assert_eq!(t.apply(CoordVar::T3), CoordVar::T3);
        let i = Iota.permutation();
        assert_eq!(i.apply(CoordVar::T3), CoordVar::Tm4);
        assert_eq!(i.apply(CoordVar::T4), CoordVar::Tm3);
        assert_eq!(i.apply(CoordVar::T2), CoordVar::T2);
    }

    #[test]
    fn group_structure() {
        let report = verify_group_structure();
        for c in &report.checks {
            assert!(c.passed, "{}: {:?}", c.name, c.detail);
        }
        assert_eq!(TauIotaTauIota.permutation().to_string(), "(1,-1)(2,-2)(3,-3)(4,-4)");
        assert_eq!(Iota.compose(Tau), IotaTau);
        assert_eq!(TauIota.compose(TauIota).compose(TauIota).compose(TauIota), Id);
    }

    #[test]
    fn parsing_names() {
        for g in DihedralElement::ALL {
            assert_eq!(g.name().parse::<DihedralElement>().unwrap(), g);
        }
        assert_eq!("ιτ".parse::<DihedralElement>().unwrap(), IotaTau);
        assert_eq!("tau*tau".parse::<DihedralElement>().unwrap(), Id);
        assert_eq!("iti".parse::<DihedralElement>().unwrap(), IotaTauIota);
        assert!("x".parse::<DihedralElement>().is_err());
    }

    #[test]
    fn polynomial_action_examples() {
        assert_eq!(act_on_poly(Tau, &cp("t(1)")), cp("t(2)"));
        assert_eq!(act_on_poly(Iota, &cp("t(3)")), cp("t(-4)"));
        assert_eq!(act_on_poly(Iota, &cp("t(5)")), cp("t(-5)"));
        assert_eq!(act_on_poly(TauIota, &cp("t(5)")), cp("t(5)"));
        assert_eq!(act_on_poly(Iota, &polynomial_p()), polynomial_p());
    }

    #[test]
    fn symmetrizer_identities() {
        assert_eq!(symmetrize(&CoordPolynomial::one()), CoordPolynomial::from_int(8));
        assert_eq!(verify_symmetrizer(), (true, true));
    }

    #[test]
    fn point_action_examples() {
        let pt = random_point(3);
        assert_eq!(act_on_point(Id, &pt), pt);
        assert_eq!(act_on_point(Iota, &act_on_point(Iota, &pt)), pt);
        let t = act_on_point(Tau, &pt);
        assert_eq!(t[CoordVar::T1], pt[CoordVar::T2]);
        assert_eq!(t[CoordVar::Tm2], pt[CoordVar::Tm1]);
        assert_eq!(t[CoordVar::T4], pt[CoordVar::Tm4]);
    }

    #[test]
    fn point_action_matches_automorphisms() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let pair = random_pair_from(&mut rng, DEFAULT_COMPLEXITY);
        for g in DihedralElement::ALL {
            let auto = g.automorphism();
            assert_eq!(act_on_point(g, &chi(&pair)), chi(&pair.transform((&auto.0, &auto.1))), "{g}");
        }
    }

    #[test]
    fn nielsen_generators_match_permutation_action() {
        for (name, g) in [("tau", Tau), ("iota", Iota)] {
            let images = nielsen_generator(name).unwrap();
            let polys = nielsen_action((&images.0, &images.1)).unwrap();
            for (v, p) in CoordVar::ALL.iter().zip(&polys) {
                assert_eq!(p, &act_on_poly(g, &CoordPolynomial::var(*v)), "{name} on {v}");
            }
        }
    }

    #[test]
    fn eta_through_the_rewriter() {
        let (x, y) = nielsen_generator("eta").unwrap();
        let polys = nielsen_action((&x, &y)).unwrap();
        assert_eq!(polys[0], cp("t(3)"));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let pair = random_pair_from(&mut rng, DEFAULT_COMPLEXITY);
            let image = chi(&pair.transform((&x, &y)));
            let pt = chi(&pair);
            for (k, p) in polys.iter().enumerate() {
                assert_eq!(p.eval(&pt.coords), image.coords[k]);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn point_action_is_a_group_action(seed in any::<u64>(), g in 0usize..8, h in 0usize..8) {
            let (g, h) = (DihedralElement::ALL[g], DihedralElement::ALL[h]);
            let pt = random_point(seed);
            prop_assert_eq!(act_on_point(g, &act_on_point(h, &pt)), act_on_point(g.compose(h), &pt));
        }

        #[test]
        fn action_preserves_the_surface_and_projects(seed in any::<u64>(), g in 0usize..8) {
            let g = DihedralElement::ALL[g];
            let pt = random_point(seed);
            let image = act_on_point(g, &pt);
            prop_assert!(surface_residual(&image).is_zero());
            for v in CoordVar::BASE {
                prop_assert_eq!(&image[g.permutation().apply(v)], &pt[v]);
            }
        }

        #[test]
        fn poly_action_is_a_ring_map(seed in any::<u64>(), g in 0usize..8) {
            let g = DihedralElement::ALL[g];
            let a = cp("t(1)*t(5) - 2*t(-3) + t(4)^2");
            let b = cp("t(5) + t(2)*t(-1)");
            prop_assert_eq!(act_on_poly(g, &(&a * &b)), &act_on_poly(g, &a) * &act_on_poly(g, &b));
            // evaluation: (g.f)(x) = f(y) with y(v) = x(g(v))
            let pt = random_point(seed);
            let pulled: [ExactComplex; NVARS] = std::array::from_fn(|i| {
                let v = CoordVar::ALL[i];
                if v == CoordVar::T5 {
                    if g.is_odd() { polynomial_p().eval(&pt.coords) - pt.t5().clone() } else { pt.t5().clone() }
                } else {
                    pt[g.permutation().apply(v)].clone()
                }
            });
            prop_assert_eq!(act_on_poly(g, &a).eval(&pt.coords), a.eval(&pulled));
        }
    }
}
