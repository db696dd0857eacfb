//! Reduction of `tr(w)` to a polynomial in the nine coordinates.
//!
//! The engine works with [`FormalElement`]s: linear combinations of words
//! with coordinate polynomial coefficients, standing for elements of the
//! algebra generated by two unimodular `3x3` matrices. Two rewrite rules
//! hold in that algebra:
//!
//! * **power**: `u x^n v = tr(x) u x^(n-1) v - tr(x^-1) u x^(n-2) v + u x^(n-3) v`
//!   for a letter `x` and `n >= 2`;
//! * **gather**: `w1 X Y X w3 = w1 pol(X, Y) w3 - w1 Y X^2 w3 - w1 X^2 Y w3`
//!   for a repeated letter `X`, where `pol(X, Y) = YX^2 + X^2Y + XYX` is
//!   expanded by the polarized Cayley-Hamilton identity.
//!
//! Both strictly shrink words (the power rule once the squares introduced by
//! gathering are removed), and a word to which neither applies uses each of
//! `a, A, b, B` at most once. There are 29 such words, listed by
//! [`spanning_words`]; every element reduces to a combination of them.
//!
//! To reduce `tr(w)` the engine takes the cyclic normal form of `w` and
//! builds its normal form one letter at a time: if the prefix `p` reduces to
//! `sum c_s s`, then `p x` reduces to `sum c_s NF(s x)`, where the words
//! `s x` have length at most five and their normal forms are memoized.
//! Finally `tr(s)` for a spanning word is a coordinate, `3`, or
//! `tr(baBA) = P - t(5)`.
//!
//! Because the coordinate ring has a canonical normal form, the result does
//! not depend on these strategy choices.

pub mod identities;

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::freegroup::{Gen, Word};
use crate::linalg::{evaluate_word, Matrix3, SL3Pair};
use crate::poly::{CoordPolynomial, CoordVar};
use crate::scalar::Scalar;
use crate::variety::{chi, polynomial_p};

/// Default limit on rule applications per reduction.
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

#[derive(Debug, Error, Clone)]
pub enum RewriteError {
    #[error("step budget of {budget} exceeded while reducing {word}")]
    BudgetExceeded { budget: u64, word: Word, trace: Option<RewriteTrace> },
    #[error("rewriting of {0} re-entered itself")]
    Cycle(Word),
    #[error("trace replay failed: {0}")]
    Replay(String),
}

/// A finite sum `sum c_w w` of words with coordinate polynomial
/// coefficients.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct FormalElement {
    terms: BTreeMap<Word, CoordPolynomial>,
}

impl FormalElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(CoordPolynomial::one(), w);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (CoordPolynomial, Word)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (c, w) in terms {
            e.add_term(c, w);
        }
        e
    }

    pub fn add_term(&mut self, c: CoordPolynomial, w: Word) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &CoordPolynomial)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &CoordPolynomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, x)| (x * c, w.clone())))
    }

    pub fn add(&self, other: &FormalElement) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(c.clone(), w.clone());
        }
        out
    }

    /// `left * self * right`.
    pub fn sandwich(&self, left: &Word, right: &Word) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (c.clone(), &(left * w) * right)))
    }

    /// Value at a pair: coefficients are evaluated at its coordinates.
    pub fn evaluate<T: Scalar>(&self, pair: &SL3Pair<T>) -> Matrix3<T> {
        let pt = chi(pair);
        self.terms.iter().fold(Matrix3::zero(), |acc, (w, c)| {
            &acc + &evaluate_word(w, pair).scale(&c.eval(&pt.coords))
        })
    }

    /// Whether every word is one of the [`spanning_words`].
    pub fn is_reduced(&self) -> bool {
        self.terms.keys().all(is_spanning_word)
    }
}

impl fmt::Display for FormalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*[{w}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FormalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalElement({self})")
    }
}

/// Words with every exponent `+-1` in which each of `a, A, b, B` occurs at
/// most once.
pub fn is_spanning_word(w: &Word) -> bool {
    let mut seen = [false; 4];
    w.letters().iter().all(|l| {
        if l.exponent.abs() != 1 {
            return false;
        }
        let slot = 2 * (l.generator.index() - 1) + usize::from(l.exponent < 0);
        !std::mem::replace(&mut seen[slot], true)
    })
}

/// The 29 words spanning every element.
pub fn spanning_words() -> Vec<Word> {
    (0..=4).flat_map(Word::enumerate).filter(is_spanning_word).collect()
}

fn letter_var(g: Gen, sign: i32) -> CoordVar {
    match (g, sign > 0) {
        (Gen::X1, true) => CoordVar::T1,
        (Gen::X1, false) => CoordVar::Tm1,
        (Gen::X2, true) => CoordVar::T2,
        (Gen::X2, false) => CoordVar::Tm2,
    }
}

fn rat(n: i64) -> CoordPolynomial {
    CoordPolynomial::from_int(n)
}

/// Which rule produced a [`RewriteStep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `tr(w) = tr(core)`: cyclic normal form.
    Cyclic,
    /// `tr(w)` read off a coordinate.
    Base,
    /// Power elimination (element level).
    Power,
    /// Gathering a repeated letter (element level).
    Gather,
    /// `p x = sum c_s (s x)` from the normal form of the prefix `p`.
    Extend,
}

/// One logged rewrite: `before = sum coefficient * word`, read as an
/// identity of elements, or of traces for [`Rule::Cyclic`] and
/// [`Rule::Base`]. A base step has a single term whose word is the identity
/// and whose coefficient is the value of the trace.
#[derive(Clone, Debug)]
pub struct RewriteStep {
    pub rule: Rule,
    pub before: Word,
    pub after: Vec<(CoordPolynomial, Word)>,
}

#[derive(Serialize)]
struct StepRecord<'a> {
    rule: Rule,
    before: String,
    after: Vec<(String, String)>,
    #[serde(skip)]
    _marker: std::marker::PhantomData<&'a ()>,
}

impl RewriteStep {
    /// One JSON object on a single line.
    pub fn to_json_line(&self) -> String {
        let rec = StepRecord {
            rule: self.rule,
            before: self.before.to_string(),
            after: self.after.iter().map(|(c, w)| (c.to_string(), w.to_string())).collect(),
            _marker: std::marker::PhantomData,
        };
        serde_json::to_string(&rec).expect("step serializes")
    }
}

/// Audit log of a reduction.
#[derive(Clone, Debug, Default)]
pub struct RewriteTrace {
    pub steps: Vec<RewriteStep>,
}

impl RewriteTrace {
    pub fn to_json_lines(&self) -> String {
        self.steps.iter().map(|s| s.to_json_line() + "\n").collect()
    }

    /// Recomputes `tr(input)` using only the logged steps.
    pub fn replay(&self, input: &Word) -> Result<CoordPolynomial, RewriteError> {
        let mut trace_steps: HashMap<&Word, &RewriteStep> = HashMap::new();
        let mut element_steps: HashMap<&Word, &RewriteStep> = HashMap::new();
        let mut extend_steps: HashMap<&Word, &RewriteStep> = HashMap::new();
        for s in &self.steps {
            let table = match s.rule {
                Rule::Cyclic | Rule::Base => &mut trace_steps,
                Rule::Power | Rule::Gather => &mut element_steps,
                Rule::Extend => &mut extend_steps,
            };
            table.entry(&s.before).or_insert(s);
        }
        let mut replayer = Replayer { trace_steps, element_steps, extend_steps, memo: HashMap::new() };
        replayer.trace(input, 0)
    }
}

struct Replayer<'a> {
    trace_steps: HashMap<&'a Word, &'a RewriteStep>,
    element_steps: HashMap<&'a Word, &'a RewriteStep>,
    extend_steps: HashMap<&'a Word, &'a RewriteStep>,
    memo: HashMap<Word, FormalElement>,
}

impl Replayer<'_> {
    fn trace(&mut self, w: &Word, depth: usize) -> Result<CoordPolynomial, RewriteError> {
        if depth > 10_000 {
            return Err(RewriteError::Replay(format!("replay of {w} does not terminate")));
        }
        if let Some(step) = self.trace_steps.get(w).copied() {
            return match step.rule {
                Rule::Base => Ok(step.after[0].0.clone()),
                _ => self.trace(&step.after[0].1, depth + 1),
            };
        }
        let e = self.element(w, depth + 1)?;
        if e == FormalElement::word(w.clone()) {
            return Err(RewriteError::Replay(format!("no step reduces tr({w})")));
        }
        let mut out = CoordPolynomial::zero();
        for (s, c) in e.terms() {
            out = &out + &(c * &self.trace(s, depth + 1)?);
        }
        Ok(out)
    }

    fn element(&mut self, w: &Word, depth: usize) -> Result<FormalElement, RewriteError> {
        if depth > 10_000 {
            return Err(RewriteError::Replay(format!("replay of {w} does not terminate")));
        }
        if let Some(e) = self.memo.get(w) {
            return Ok(e.clone());
        }
        let step = self.element_steps.get(w).or_else(|| self.extend_steps.get(w)).copied();
        let out = match step {
            None => FormalElement::word(w.clone()),
            Some(step) => {
                let mut out = FormalElement::zero();
                for (c, u) in &step.after {
                    out = out.add(&self.element(u, depth + 1)?.scale(c));
                }
                out
            }
        };
        self.memo.insert(w.clone(), out.clone());
        Ok(out)
    }
}

/// The power rule applied to the first letter with `|exponent| >= 2`.
pub fn power_step(w: &Word) -> Option<Vec<(CoordPolynomial, Word)>> {
    let letters = w.letters();
    let i = letters.iter().position(|l| l.exponent.abs() >= 2)?;
    let l = letters[i];
    let sign = l.exponent.signum();
    let n = l.exponent.abs();
    let u = Word::from_letters(letters[..i].iter().map(|l| (l.generator, l.exponent)));
    let v = Word::from_letters(letters[i + 1..].iter().map(|l| (l.generator, l.exponent)));
    let with = |k: i32| &(&u * &Word::power(l.generator, sign * k)) * &v;
    Some(vec![
        (CoordPolynomial::var(letter_var(l.generator, sign)), with(n - 1)),
        (-&CoordPolynomial::var(letter_var(l.generator, -sign)), with(n - 2)),
        (CoordPolynomial::one(), with(n - 3)),
    ])
}

/// Removes every power by repeated use of the power rule.
pub fn eliminate_powers(e: &FormalElement) -> FormalElement {
    let mut pending: Vec<(CoordPolynomial, Word)> = e.terms().map(|(w, c)| (c.clone(), w.clone())).collect();
    let mut out = FormalElement::zero();
    while let Some((c, w)) = pending.pop() {
        match power_step(&w) {
            Some(terms) => pending.extend(terms.into_iter().map(|(k, u)| (&c * &k, u))),
            None => out.add_term(c, w),
        }
    }
    out
}

/// The innermost (then leftmost) pair of equal unit letters in a word with
/// all exponents `+-1`, as `(i, j)` letter positions.
fn innermost_repeat(w: &Word) -> Option<(usize, usize)> {
    let letters = w.letters();
    if letters.iter().any(|l| l.exponent.abs() != 1) {
        return None;
    }
    (2..letters.len()).find_map(|gap| (0..letters.len() - gap).find(|&i| letters[i] == letters[i + gap]).map(|i| (i, i + gap)))
}

/// Applies the gather rule and power elimination until every word is a
/// spanning word.
pub fn gather_repeats(e: &FormalElement, reducer: &mut TraceReducer) -> Result<FormalElement, RewriteError> {
    let mut out = FormalElement::zero();
    for (w, c) in e.terms() {
        out = out.add(&reducer.element_normal_form(w)?.scale(c));
    }
    Ok(out)
}

/// Memoizing trace reducer. Reusing one instance across many words shares
/// the work on common subwords.
#[derive(Debug)]
pub struct TraceReducer {
    trace_memo: HashMap<Word, CoordPolynomial>,
    element_memo: HashMap<Word, FormalElement>,
    in_progress: HashSet<Word>,
    elements_in_progress: HashSet<Word>,
    steps: u64,
    budget: u64,
    depth: usize,
    current: Option<Word>,
    log: Option<Vec<RewriteStep>>,
}

impl Default for TraceReducer {
    fn default() -> Self {
        Self::new()
    }
}

impl TraceReducer {
    pub fn new() -> Self {
        TraceReducer {
            trace_memo: HashMap::new(),
            element_memo: HashMap::new(),
            in_progress: HashSet::new(),
            elements_in_progress: HashSet::new(),
            steps: 0,
            budget: DEFAULT_STEP_BUDGET,
            depth: 0,
            current: None,
            log: None,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Records every rule application; see [`TraceReducer::take_trace`].
    pub fn with_logging(mut self) -> Self {
        self.log = Some(Vec::new());
        self
    }

    pub fn take_trace(&mut self) -> RewriteTrace {
        RewriteTrace { steps: self.log.as_mut().map(std::mem::take).unwrap_or_default() }
    }

    /// Number of memoized traces.
    pub fn memo_size(&self) -> usize {
        self.trace_memo.len()
    }

    pub fn reduce(&mut self, w: &Word) -> CoordPolynomial {
        self.try_reduce(w).unwrap_or_else(|e| panic!("trace reduction failed: {e}"))
    }

    pub fn try_reduce(&mut self, w: &Word) -> Result<CoordPolynomial, RewriteError> {
        if self.depth == 0 {
            self.steps = 0;
            self.current = Some(w.clone());
        }
        self.depth += 1;
        let out = self.trace(w);
        self.depth -= 1;
        if out.is_err() && self.depth == 0 {
            self.in_progress.clear();
            self.elements_in_progress.clear();
        }
        out
    }

    fn tick(&mut self) -> Result<(), RewriteError> {
        self.steps += 1;
        if self.steps > self.budget {
            let trace = self.log.as_ref().map(|s| RewriteTrace { steps: s.clone() });
            let word = self.current.clone().unwrap_or_default();
            return Err(RewriteError::BudgetExceeded { budget: self.budget, word, trace });
        }
        Ok(())
    }

    fn record(&mut self, rule: Rule, before: &Word, after: Vec<(CoordPolynomial, Word)>) {
        if let Some(log) = self.log.as_mut() {
            log.push(RewriteStep { rule, before: before.clone(), after });
        }
    }

    fn trace(&mut self, w: &Word) -> Result<CoordPolynomial, RewriteError> {
        let core = w.cyclic_normal_form();
        if &core != w {
            self.record(Rule::Cyclic, w, vec![(CoordPolynomial::one(), core.clone())]);
        }
        if let Some(p) = self.trace_memo.get(&core) {
            return Ok(p.clone());
        }
        self.tick()?;
        let out = match base_trace(&core) {
            Some(p) => {
                self.record(Rule::Base, &core, vec![(p.clone(), Word::identity())]);
                p
            }
            None => {
                if !self.in_progress.insert(core.clone()) {
                    return Err(RewriteError::Cycle(core));
                }
                let nf = self.extend_normal_form(&core);
                self.in_progress.remove(&core);
                let nf = nf?;
                let mut out = CoordPolynomial::zero();
                for (s, c) in nf.terms() {
                    let t = self.trace(s)?;
                    out = &out + &(c * &t);
                }
                out
            }
        };
        self.trace_memo.insert(core, out.clone());
        Ok(out)
    }

    /// Normal form of a long word, built letter by letter.
    fn extend_normal_form(&mut self, w: &Word) -> Result<FormalElement, RewriteError> {
        let units = w.unit_letters();
        let mut prefix = Word::identity();
        let mut nf = FormalElement::word(Word::identity());
        for &(g, e) in &units {
            let x = Word::power(g, e);
            let next_prefix = &prefix * &x;
            let trivial = nf.len() == 1 && nf.terms().next().is_some_and(|(s, c)| s == &prefix && c == &CoordPolynomial::one());
            if !trivial {
                self.tick()?;
                let after: Vec<(CoordPolynomial, Word)> = nf.terms().map(|(s, c)| (c.clone(), s * &x)).collect();
                self.record(Rule::Extend, &next_prefix, after);
            }
            let mut next = FormalElement::zero();
            for (s, c) in nf.terms() {
                let piece = self.element_normal_form(&(s * &x))?;
                for (u, k) in piece.terms() {
                    next.add_term(c * k, u.clone());
                }
            }
            nf = next;
            prefix = next_prefix;
        }
        Ok(nf)
    }

    /// Normal form of a single word by direct rewriting (memoized). Intended
    /// for short words; long ones are handled by extension.
    pub fn element_normal_form(&mut self, w: &Word) -> Result<FormalElement, RewriteError> {
        if let Some(e) = self.element_memo.get(w) {
            return Ok(e.clone());
        }
        if is_spanning_word(w) {
            return Ok(FormalElement::word(w.clone()));
        }
        if !self.elements_in_progress.insert(w.clone()) {
            return Err(RewriteError::Cycle(w.clone()));
        }
        let result = self.element_normal_form_uncached(w);
        self.elements_in_progress.remove(w);
        let out = result?;
        self.element_memo.insert(w.clone(), out.clone());
        Ok(out)
    }

    fn element_normal_form_uncached(&mut self, w: &Word) -> Result<FormalElement, RewriteError> {
        self.tick()?;
        let (rule, terms) = match power_step(w) {
            Some(t) => (Rule::Power, t),
            None => (Rule::Gather, self.gather_step(w)?.expect("non-spanning word without powers has a repeat")),
        };
        self.record(rule, w, terms.clone());
        let mut out = FormalElement::zero();
        for (c, u) in terms {
            let nf = self.element_normal_form(&u)?;
            for (s, k) in nf.terms() {
                out.add_term(&c * k, s.clone());
            }
        }
        Ok(out)
    }

    /// The gather rule at the innermost repeated letter, if any.
    pub fn gather_step(&mut self, w: &Word) -> Result<Option<Vec<(CoordPolynomial, Word)>>, RewriteError> {
        let Some((i, j)) = innermost_repeat(w) else {
            return Ok(None);
        };
        let letters = w.letters();
        let piece = |r: std::ops::Range<usize>| Word::from_letters(letters[r].iter().map(|l| (l.generator, l.exponent)));
        let w1 = piece(0..i);
        let y = piece(i + 1..j);
        let w3 = piece(j + 1..letters.len());
        let xl = letters[i];
        let x = Word::power(xl.generator, xl.exponent);
        let x2 = Word::power(xl.generator, 2 * xl.exponent);

        let tx = CoordPolynomial::var(letter_var(xl.generator, xl.exponent));
        let c2x = CoordPolynomial::var(letter_var(xl.generator, -xl.exponent));
        let ty = self.try_reduce(&y)?;
        let txy = self.try_reduce(&(&x * &y))?;
        let tyx2 = self.try_reduce(&(&y * &x2))?;

        // pol(X, Y) = tr(Y) X^2 + tr(X)(YX + XY) - (tr(X)tr(Y) - tr(XY)) X
        //           - c2(X) Y + (tr(YX^2) - tr(X)tr(XY) + c2(X)tr(Y)) I
        let pol = FormalElement::from_terms([
            (ty.clone(), x2.clone()),
            (tx.clone(), &y * &x),
            (tx.clone(), &x * &y),
            (&txy - &(&tx * &ty), x.clone()),
            (-&c2x, y.clone()),
            (&(&tyx2 - &(&tx * &txy)) + &(&c2x * &ty), Word::identity()),
        ]);
        let mut out: Vec<(CoordPolynomial, Word)> =
            pol.sandwich(&w1, &w3).terms().map(|(u, c)| (c.clone(), u.clone())).collect();
        out.push((rat(-1), &(&(&w1 * &y) * &x2) * &w3));
        out.push((rat(-1), &(&(&w1 * &x2) * &y) * &w3));
        Ok(Some(out))
    }
}

/// Traces of cyclically normalized words that are coordinates outright.
fn base_trace(core: &Word) -> Option<CoordPolynomial> {
    let letters = core.letters();
    if letters.is_empty() {
        return Some(rat(3));
    }
    if letters.iter().any(|l| l.exponent.abs() != 1) {
        return None;
    }
    let var = |v: CoordVar| Some(CoordPolynomial::var(v));
    match letters.len() {
        1 => var(letter_var(letters[0].generator, letters[0].exponent)),
        2 => {
            let (a, b) = if letters[0].generator == Gen::X1 { (letters[0], letters[1]) } else { (letters[1], letters[0]) };
            match (a.exponent > 0, b.exponent > 0) {
                (true, true) => var(CoordVar::T3),
                (false, false) => var(CoordVar::Tm3),
                (true, false) => var(CoordVar::T4),
                (false, true) => var(CoordVar::Tm4),
            }
        }
        4 if is_spanning_word(core) => {
            let t5: Word = "a*b*A*B".parse().expect("static word");
            if *core == t5.cyclic_normal_form() {
                var(CoordVar::T5)
            } else {
                Some(&polynomial_p() - &CoordPolynomial::var(CoordVar::T5))
            }
        }
        _ => None,
    }
}

thread_local! {
    static REDUCER: RefCell<TraceReducer> = RefCell::new(TraceReducer::new());
}

/// `tr(w)` as a coordinate polynomial, using a per-thread shared memo.
pub fn reduce_trace(w: &Word) -> CoordPolynomial {
    REDUCER.with(|r| r.borrow_mut().reduce(w))
}

/// Like [`reduce_trace`] with a fresh reducer that logs every step.
pub fn reduce_trace_logged(w: &Word) -> Result<(CoordPolynomial, RewriteTrace), RewriteError> {
    let mut r = TraceReducer::new().with_logging();
    let p = r.try_reduce(w)?;
    Ok((p, r.take_trace()))
}
