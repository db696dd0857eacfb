//! Polynomials over the rationals in the nine trace coordinates.
//!
//! [`FreePolynomial`] is the free commutative ring on the nine variables.
//! [`CoordPolynomial`] is the coordinate ring of the character variety: the
//! same representation kept reduced modulo `t(5)^2 - P t(5) + Q`, so every
//! term has degree at most one in `t(5)`. Since the eight other coordinates
//! are algebraically independent this normal form is canonical, and equality
//! of `CoordPolynomial`s is equality of functions on the variety.
//!
//! Text format: a signed sum of terms such as `-3/2*t(1)^2*t(-4) + 3`.
//! Monomials print in decreasing graded order (total degree first, ties
//! broken from `t(5)` down to `t(1)`); `t(-5)` is accepted on input and read
//! as `P - t(5)`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::freegroup::{Gen, Word};
use crate::scalar::{ExactComplex, GaussianInt, Scalar};

pub const NVARS: usize = 9;

/// One of the nine trace coordinates, in the fixed order
/// `t(1), t(-1), t(2), t(-2), t(3), t(-3), t(4), t(-4), t(5)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoordVar {
    T1,
    Tm1,
    T2,
    Tm2,
    T3,
    Tm3,
    T4,
    Tm4,
    T5,
}

impl CoordVar {
    pub const ALL: [CoordVar; NVARS] = [
        CoordVar::T1,
        CoordVar::Tm1,
        CoordVar::T2,
        CoordVar::Tm2,
        CoordVar::T3,
        CoordVar::Tm3,
        CoordVar::T4,
        CoordVar::Tm4,
        CoordVar::T5,
    ];

    /// The eight coordinates other than `t(5)`.
    pub const BASE: [CoordVar; 8] = [
        CoordVar::T1,
        CoordVar::Tm1,
        CoordVar::T2,
        CoordVar::Tm2,
        CoordVar::T3,
        CoordVar::Tm3,
        CoordVar::T4,
        CoordVar::Tm4,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// `1, -1, 2, -2, 3, -3, 4, -4, 5`.
    pub fn signed_index(self) -> i32 {
        let i = self.index() as i32;
        if i == 8 {
            5
        } else if i % 2 == 0 {
            i / 2 + 1
        } else {
            -(i / 2 + 1)
        }
    }

    pub fn from_signed_index(k: i32) -> Option<CoordVar> {
        match k {
            5 => Some(CoordVar::T5),
            1..=4 => Some(CoordVar::ALL[(2 * (k - 1)) as usize]),
            -4..=-1 => Some(CoordVar::ALL[(2 * (-k - 1) + 1) as usize]),
            _ => None,
        }
    }

    /// JSON key: `t1`, `tm1`, ..., `t5`.
    pub fn key(self) -> &'static str {
        ["t1", "tm1", "t2", "tm2", "t3", "tm3", "t4", "tm4", "t5"][self.index()]
    }

    pub fn from_key(key: &str) -> Option<CoordVar> {
        CoordVar::ALL.into_iter().find(|v| v.key() == key)
    }

    /// The word whose trace this coordinate is.
    pub fn word(self) -> Word {
        use Gen::{X1, X2};
        let letters: &[(Gen, i32)] = match self {
            CoordVar::T1 => &[(X1, 1)],
            CoordVar::Tm1 => &[(X1, -1)],
            CoordVar::T2 => &[(X2, 1)],
            CoordVar::Tm2 => &[(X2, -1)],
            CoordVar::T3 => &[(X1, 1), (X2, 1)],
            CoordVar::Tm3 => &[(X1, -1), (X2, -1)],
            CoordVar::T4 => &[(X1, 1), (X2, -1)],
            CoordVar::Tm4 => &[(X1, -1), (X2, 1)],
            CoordVar::T5 => &[(X1, 1), (X2, 1), (X1, -1), (X2, -1)],
        };
        Word::from_letters(letters.iter().copied())
    }

    /// Weight under the action of the centre `Z3 x Z3`.
    pub fn bigrade(self) -> Bigrade {
        Bigrade::of_word(&self.word())
    }
}

impl fmt::Display for CoordVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t({})", self.signed_index())
    }
}

/// An element of `Z3 x Z3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bigrade {
    pub g1: u8,
    pub g2: u8,
}

impl Bigrade {
    pub fn new(g1: i64, g2: i64) -> Bigrade {
        Bigrade { g1: g1.rem_euclid(3) as u8, g2: g2.rem_euclid(3) as u8 }
    }

    /// Weighted length of the word in each generator, mod 3 (an inverse
    /// letter weighs 2, i.e. -1).
    pub fn of_word(w: &Word) -> Bigrade {
        Bigrade::new(w.exponent_sum(Gen::X1), w.exponent_sum(Gen::X2))
    }

    pub fn of_monomial(m: &Monomial) -> Bigrade {
        CoordVar::ALL.iter().fold(Bigrade::default(), |acc, v| {
            let b = v.bigrade();
            let e = i64::from(m.0[v.index()]);
            acc + Bigrade::new(i64::from(b.g1) * e, i64::from(b.g2) * e)
        })
    }

    pub fn neg(self) -> Bigrade {
        Bigrade::new(-i64::from(self.g1), -i64::from(self.g2))
    }
}

impl Add for Bigrade {
    type Output = Bigrade;
    fn add(self, rhs: Bigrade) -> Bigrade {
        Bigrade::new(i64::from(self.g1 + rhs.g1), i64::from(self.g2 + rhs.g2))
    }
}

impl fmt::Display for Bigrade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.g1, self.g2)
    }
}

/// Exponent vector in [`CoordVar`] order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: CoordVar) -> Monomial {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn exponent(&self, v: CoordVar) -> u16 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }

    fn with_exponent(&self, v: CoordVar, e: u16) -> Monomial {
        let mut m = *self;
        m.0[v.index()] = e;
        m
    }
}

impl Ord for Monomial {
    /// Graded order; ties compared from `t(5)` down to `t(1)`.
    fn cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A polynomial in the free ring on the nine coordinates.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct FreePolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl FreePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_terms([(Monomial::one(), c)])
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn var(v: CoordVar) -> Self {
        Self::from_terms([(Monomial::var(v), BigRational::one())])
    }

    /// Sums the given terms, dropping zero coefficients.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(terms: I) -> Self {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            *map.entry(m).or_insert_with(BigRational::zero) += c;
        }
        map.retain(|_, c| !c.is_zero());
        FreePolynomial { terms: map }
    }

    /// `c * prod(vars[i]^exps[i])`, convenient for transcribing formulas.
    pub fn term(c: i64, factors: &[(CoordVar, u16)]) -> Self {
        let mut m = Monomial::one();
        for &(v, e) in factors {
            m.0[v.index()] += e;
        }
        Self::from_terms([(m, rat(c))])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::one())
    }

    /// Largest total degree of a term; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: CoordVar) -> u16 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FreePolynomial { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::from_int(1), |acc, _| &acc * self)
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: CoordVar) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponent(v);
            (e > 0).then(|| (m.with_exponent(v, e - 1), c * rat(i64::from(e))))
        }))
    }

    /// Splits as `sum_k coeff_k * v^k`, returning the coefficients.
    pub fn coefficients_in(&self, v: CoordVar) -> Vec<FreePolynomial> {
        let mut out = vec![Self::zero(); usize::from(self.degree_in(v)) + 1];
        for (m, c) in &self.terms {
            let k = usize::from(m.exponent(v));
            out[k].terms.insert(m.with_exponent(v, 0), c.clone());
        }
        out
    }

    /// Replaces every variable `v` by `images[v.index()]`.
    pub fn substitute(&self, images: &[FreePolynomial; NVARS]) -> Self {
        let mut powers: Vec<Vec<FreePolynomial>> = images.iter().map(|p| vec![Self::from_int(1), p.clone()]).collect();
        let mut acc: HashMap<Monomial, BigRational> = HashMap::new();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for v in CoordVar::ALL {
                let e = usize::from(m.exponent(v));
                if e == 0 {
                    continue;
                }
                let table = &mut powers[v.index()];
                while table.len() <= e {
                    let next = &table[table.len() - 1] * &table[1];
                    table.push(next);
                }
                t = &t * &table[e];
            }
            for (tm, tc) in t.terms {
                *acc.entry(tm).or_insert_with(BigRational::zero) += tc;
            }
        }
        Self::from_terms(acc)
    }

    /// Value at a point given in [`CoordVar`] order.
    pub fn eval<T: Scalar>(&self, point: &[T; NVARS]) -> T {
        let max_exp: Vec<u16> = CoordVar::ALL.iter().map(|&v| self.degree_in(v)).collect();
        let powers: Vec<Vec<T>> = point
            .iter()
            .zip(&max_exp)
            .map(|(x, &e)| {
                let mut table = vec![T::one()];
                for k in 0..e as usize {
                    let next = table[k].clone() * x.clone();
                    table.push(next);
                }
                table
            })
            .collect();
        self.terms.iter().fold(T::zero(), |acc, (m, c)| {
            let term = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .fold(T::from_rational(c), |t, (i, &e)| t * powers[i][e as usize].clone());
            acc + term
        })
    }

    /// Reduces modulo `t(5)^2 - P t(5) + Q`.
    pub fn normalize(&self) -> CoordPolynomial {
        let mut coeffs = self.coefficients_in(CoordVar::T5);
        let p = crate::variety::relation_p();
        let q = crate::variety::relation_q();
        // t5^k = P t5^(k-1) - Q t5^(k-2)
        while coeffs.len() > 2 {
            let top = coeffs.pop().expect("len > 2");
            let k = coeffs.len();
            coeffs[k - 1] = &coeffs[k - 1] + &(&top * p);
            coeffs[k - 2] = &coeffs[k - 2] - &(&top * q);
        }
        let mut out = coeffs.first().cloned().unwrap_or_default();
        if let Some(linear) = coeffs.get(1) {
            out = &out + &(linear * &FreePolynomial::var(CoordVar::T5));
        }
        CoordPolynomial(out)
    }

    /// `Some(g)` when every term has bigrade `g`; the zero polynomial is
    /// homogeneous of every degree and reports `None`.
    pub fn homogeneous_bigrade(&self) -> Option<Bigrade> {
        let mut grades = self.terms.keys().map(Bigrade::of_monomial);
        let first = grades.next()?;
        grades.all(|g| g == first).then_some(first)
    }
}

fn add_maps(lhs: &FreePolynomial, rhs: &FreePolynomial, sign: i64) -> FreePolynomial {
    let mut terms = lhs.terms.clone();
    for (m, c) in &rhs.terms {
        let entry = terms.entry(*m).or_insert_with(BigRational::zero);
        if sign > 0 {
            *entry += c;
        } else {
            *entry -= c;
        }
    }
    terms.retain(|_, c| !c.is_zero());
    FreePolynomial { terms }
}

impl Add for &FreePolynomial {
    type Output = FreePolynomial;
    fn add(self, rhs: &FreePolynomial) -> FreePolynomial {
        add_maps(self, rhs, 1)
    }
}

impl Sub for &FreePolynomial {
    type Output = FreePolynomial;
    fn sub(self, rhs: &FreePolynomial) -> FreePolynomial {
        add_maps(self, rhs, -1)
    }
}

impl Neg for &FreePolynomial {
    type Output = FreePolynomial;
    fn neg(self) -> FreePolynomial {
        FreePolynomial { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Mul for &FreePolynomial {
    type Output = FreePolynomial;
    fn mul(self, rhs: &FreePolynomial) -> FreePolynomial {
        let mut acc: HashMap<Monomial, BigRational> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        FreePolynomial::from_terms(acc)
    }
}

/// An element of the coordinate ring, in normal form (degree at most one in
/// `t(5)`).
#[derive(Clone, Default, PartialEq, Eq)]
pub struct CoordPolynomial(FreePolynomial);

impl CoordPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        CoordPolynomial(FreePolynomial::from_int(n))
    }

    pub fn constant(c: BigRational) -> Self {
        CoordPolynomial(FreePolynomial::constant(c))
    }

    pub fn var(v: CoordVar) -> Self {
        CoordPolynomial(FreePolynomial::var(v))
    }

    /// The free-ring representative (already reduced).
    pub fn as_free(&self) -> &FreePolynomial {
        &self.0
    }

    pub fn into_free(self) -> FreePolynomial {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn num_terms(&self) -> usize {
        self.0.num_terms()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.0.terms()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.total_degree()
    }

    pub fn constant_term(&self) -> BigRational {
        self.0.constant_term()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CoordPolynomial(self.0.scale(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Formal partial derivative of the normal-form representative.
    pub fn partial(&self, v: CoordVar) -> Self {
        self.0.partial(v).normalize()
    }

    pub fn eval<T: Scalar>(&self, point: &[T; NVARS]) -> T {
        self.0.eval(point)
    }

    pub fn homogeneous_bigrade(&self) -> Option<Bigrade> {
        self.0.homogeneous_bigrade()
    }

    /// Splits as `a + b t(5)` with `a`, `b` free of `t(5)`.
    pub fn split_t5(&self) -> (FreePolynomial, FreePolynomial) {
        let mut parts = self.0.coefficients_in(CoordVar::T5).into_iter();
        let a = parts.next().unwrap_or_default();
        let b = parts.next().unwrap_or_default();
        (a, b)
    }
}

impl From<FreePolynomial> for CoordPolynomial {
    fn from(p: FreePolynomial) -> Self {
        p.normalize()
    }
}

impl Add for &CoordPolynomial {
    type Output = CoordPolynomial;
    fn add(self, rhs: &CoordPolynomial) -> CoordPolynomial {
        CoordPolynomial(&self.0 + &rhs.0)
    }
}

impl Sub for &CoordPolynomial {
    type Output = CoordPolynomial;
    fn sub(self, rhs: &CoordPolynomial) -> CoordPolynomial {
        CoordPolynomial(&self.0 - &rhs.0)
    }
}

impl Neg for &CoordPolynomial {
    type Output = CoordPolynomial;
    fn neg(self) -> CoordPolynomial {
        CoordPolynomial(-&self.0)
    }
}

impl Mul for &CoordPolynomial {
    type Output = CoordPolynomial;
    fn mul(self, rhs: &CoordPolynomial) -> CoordPolynomial {
        // (a + b t5)(c + d t5) = ac - bd Q + (ad + bc + bd P) t5
        let (a, b) = self.split_t5();
        let (c, d) = rhs.split_t5();
        let mut constant = &a * &c;
        let mut linear = &(&a * &d) + &(&b * &c);
        if !b.is_zero() && !d.is_zero() {
            let bd = &b * &d;
            constant = &constant - &(&bd * crate::variety::relation_q());
            linear = &linear + &(&bd * crate::variety::relation_p());
        }
        CoordPolynomial(&constant + &(&linear * &FreePolynomial::var(CoordVar::T5)))
    }
}

macro_rules! forward_owned_poly {
    ($ty:ident: $($tr:ident $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned_poly!(FreePolynomial: Add add, Sub sub, Mul mul);
forward_owned_poly!(CoordPolynomial: Add add, Sub sub, Mul mul);

fn write_terms(p: &FreePolynomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        match (k, negative) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let abs = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || *m == Monomial::one() {
            factors.push(abs.to_string());
        }
        for v in CoordVar::ALL {
            match m.exponent(v) {
                0 => {}
                1 => factors.push(v.to_string()),
                e => factors.push(format!("{v}^{e}")),
            }
        }
        f.write_str(&factors.join("*"))?;
    }
    Ok(())
}

impl fmt::Display for FreePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(self, f)
    }
}

impl fmt::Debug for FreePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreePolynomial({self})")
    }
}

impl fmt::Display for CoordPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(&self.0, f)
    }
}

impl fmt::Debug for CoordPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoordPolynomial({self})")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("polynomial syntax error at byte {pos}: {msg}")]
pub struct PolyParseError {
    pub pos: usize,
    pub msg: &'static str,
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn err(&self, msg: &'static str) -> PolyParseError {
        PolyParseError { pos: self.pos, msg }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn signed_int(&mut self) -> Result<i64, PolyParseError> {
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let n: i64 = self.digits()?.try_into().map_err(|_| self.err("integer out of range"))?;
        Ok(if negative { -n } else { n })
    }

    fn factor(&mut self) -> Result<FreePolynomial, PolyParseError> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                if !self.eat(b'(') {
                    return Err(self.err("expected `(` after `t`"));
                }
                let k = self.signed_int()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                let base = if k == -5 {
                    crate::variety::relation_p() - &FreePolynomial::var(CoordVar::T5)
                } else {
                    let v = i32::try_from(k)
                        .ok()
                        .and_then(CoordVar::from_signed_index)
                        .ok_or_else(|| self.err("coordinate index must be one of +-1..+-4, 5, -5"))?;
                    FreePolynomial::var(v)
                };
                if self.eat(b'^') {
                    let e = self.digits()?;
                    let e: u32 = e.try_into().map_err(|_| self.err("exponent out of range"))?;
                    Ok(base.pow(e))
                } else {
                    Ok(base)
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let den = if self.eat(b'/') { self.digits()? } else { BigInt::one() };
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                Ok(FreePolynomial::constant(BigRational::new(num, den)))
            }
            _ => Err(self.err("expected a number or t(k)")),
        }
    }

    fn term(&mut self) -> Result<FreePolynomial, PolyParseError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn polynomial(&mut self) -> Result<FreePolynomial, PolyParseError> {
        let mut acc = FreePolynomial::zero();
        let mut negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negative { &acc - &t } else { &acc + &t };
            if self.eat(b'+') {
                negative = false;
            } else if self.eat(b'-') {
                negative = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return Err(self.err("trailing input"));
        }
        Ok(acc)
    }
}

impl FromStr for FreePolynomial {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolyParser { src: s.as_bytes(), pos: 0 }.polynomial()
    }
}

impl FromStr for CoordPolynomial {
    type Err = PolyParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(s.parse::<FreePolynomial>()?.normalize())
    }
}

/// Exact evaluation of many polynomials at one point with a single rational
/// normalization per polynomial.
///
/// Coordinates are written as Gaussian integers over integer denominators;
/// each polynomial is summed over a common denominator.
pub struct PointEvaluator {
    numerators: [Vec<GaussianInt>; NVARS],
    denominators: [Vec<BigInt>; NVARS],
}

impl PointEvaluator {
    pub fn new(point: &[ExactComplex; NVARS]) -> Self {
        PointEvaluator {
            numerators: std::array::from_fn(|i| vec![GaussianInt::one(), point[i].scaled_numerator(&point[i].denominator())]),
            denominators: std::array::from_fn(|i| vec![BigInt::one(), point[i].denominator()]),
        }
    }

    fn extend(&mut self, var: usize, degree: usize) {
        while self.numerators[var].len() <= degree {
            let n = &self.numerators[var][1] * self.numerators[var].last().expect("nonempty");
            let d = &self.denominators[var][1] * self.denominators[var].last().expect("nonempty");
            self.numerators[var].push(n);
            self.denominators[var].push(d);
        }
    }

    pub fn eval(&mut self, p: &CoordPolynomial) -> ExactComplex {
        self.eval_free(p.as_free())
    }

    pub fn eval_free(&mut self, p: &FreePolynomial) -> ExactComplex {
        let max: [usize; NVARS] = std::array::from_fn(|i| p.degree_in(CoordVar::ALL[i]) as usize);
        for (i, &e) in max.iter().enumerate() {
            self.extend(i, e);
        }
        let coef_den = p.terms().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
        let common = (0..NVARS).fold(coef_den.clone(), |l, i| l * &self.denominators[i][max[i]]);
        let mut sum = GaussianInt::zero();
        for (m, c) in p.terms() {
            let mut scale = c.numer() * (&coef_den / c.denom());
            let mut term: Option<GaussianInt> = None;
            for i in 0..NVARS {
                let e = m.0[i] as usize;
                if e < max[i] {
                    scale *= &self.denominators[i][max[i] - e];
                }
                if e > 0 {
                    let x = &self.numerators[i][e];
                    term = Some(match term {
                        None => x.clone(),
                        Some(t) => t * x,
                    });
                }
            }
            let term = term.unwrap_or_else(GaussianInt::one);
            sum += GaussianInt::new(&term.re * &scale, &term.im * &scale);
        }
        ExactComplex::from_gaussian(sum, &common)
    }
}
