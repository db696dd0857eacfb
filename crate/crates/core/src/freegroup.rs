//! Words in the free group on two generators.
//!
//! Words are stored freely reduced, with runs of one generator compressed
//! into a single [`Letter`] carrying an exponent. The text syntax is
//!
//! ```text
//! word   := term (("*" | ws) term)*  |  "1"
//! term   := letter ("^" int)?
//! letter := "a" | "b" | "A" | "B"
//! ```
//!
//! where `A` and `B` denote inverses and `1` the identity.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use thiserror::Error;

/// One of the two free generators `x1` (written `a`) and `x2` (written `b`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    X1,
    X2,
}

impl Gen {
    pub fn index(self) -> usize {
        match self {
            Gen::X1 => 1,
            Gen::X2 => 2,
        }
    }

    pub fn other(self) -> Gen {
        match self {
            Gen::X1 => Gen::X2,
            Gen::X2 => Gen::X1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Gen::X1 => 'a',
            Gen::X2 => 'b',
        }
    }
}

/// A generator raised to a nonzero power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: Gen,
    pub exponent: i32,
}

impl Letter {
    pub fn new(generator: Gen, exponent: i32) -> Letter {
        assert!(exponent != 0, "a letter needs a nonzero exponent");
        Letter { generator, exponent }
    }

    pub fn inverse(self) -> Letter {
        Letter { generator: self.generator, exponent: -self.exponent }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordParseError {
    #[error("empty word (write `1` for the identity)")]
    Empty,
    #[error("unknown symbol {found:?} at byte {pos}")]
    UnknownSymbol { pos: usize, found: char },
    #[error("zero exponent at byte {pos}")]
    ZeroExponent { pos: usize },
    #[error("malformed exponent after `^` at byte {pos}")]
    MalformedExponent { pos: usize },
    #[error("separator `*` without a following term at byte {pos}")]
    DanglingSeparator { pos: usize },
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn generator(g: Gen) -> Word {
        Word { letters: vec![Letter::new(g, 1)] }
    }

    pub fn power(g: Gen, exponent: i32) -> Word {
        Word::from_letters([(g, exponent)])
    }

    /// Builds a word from arbitrary `(generator, exponent)` pairs, reducing
    /// freely. Zero exponents are allowed here and simply vanish.
    pub fn from_letters<I: IntoIterator<Item = (Gen, i32)>>(letters: I) -> Word {
        let mut out: Vec<Letter> = Vec::new();
        for (generator, exponent) in letters {
            push_reduced(&mut out, generator, exponent);
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn length(&self) -> usize {
        self.letters.iter().map(|l| l.exponent.unsigned_abs() as usize).sum()
    }

    /// Positive letters count once, negative letters twice.
    pub fn weighted_length(&self) -> usize {
        self.letters
            .iter()
            .map(|l| {
                let n = l.exponent.unsigned_abs() as usize;
                if l.exponent > 0 {
                    n
                } else {
                    2 * n
                }
            })
            .sum()
    }

    /// Sum of the exponents of one generator.
    pub fn exponent_sum(&self, g: Gen) -> i64 {
        self.letters.iter().filter(|l| l.generator == g).map(|l| i64::from(l.exponent)).sum()
    }

    pub fn invert(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Largest absolute exponent, 0 for the identity.
    pub fn max_abs_exponent(&self) -> u32 {
        self.letters.iter().map(|l| l.exponent.unsigned_abs()).max().unwrap_or(0)
    }

    /// The word spelled one unit letter at a time, e.g. `a^2*B` becomes
    /// `[(X1, 1), (X1, 1), (X2, -1)]`.
    pub fn unit_letters(&self) -> Vec<(Gen, i32)> {
        self.letters
            .iter()
            .flat_map(|l| std::iter::repeat_n((l.generator, l.exponent.signum()), l.exponent.unsigned_abs() as usize))
            .collect()
    }

    pub fn from_units(units: &[(Gen, i32)]) -> Word {
        Word::from_letters(units.iter().copied())
    }

    /// Splits `self` as `conjugator * core * conjugator^-1` with `core`
    /// cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let units = self.unit_letters();
        let (mut lo, mut hi) = (0, units.len());
        while hi - lo >= 2 && units[lo].0 == units[hi - 1].0 && units[lo].1 == -units[hi - 1].1 {
            lo += 1;
            hi -= 1;
        }
        (Word::from_units(&units[lo..hi]), Word::from_units(&units[..lo]))
    }

    /// No cancellation between the last and the first letter.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(f), Some(l)) if self.letters.len() > 1 => {
                f.generator != l.generator || f.exponent.signum() == l.exponent.signum()
            }
            _ => true,
        }
    }

    /// A canonical representative of the conjugacy class: among the
    /// rotations of the cyclic core that do not split a power across the
    /// wrap, the least one.
    pub fn cyclic_normal_form(&self) -> Word {
        let (core, _) = self.cyclic_reduce();
        let units = core.unit_letters();
        let n = units.len();
        if core.letters.len() <= 1 {
            return core;
        }
        (0..n)
            .filter(|&k| units[k].0 != units[(k + n - 1) % n].0)
            .map(|k| {
                let mut r = units[k..].to_vec();
                r.extend_from_slice(&units[..k]);
                Word::from_units(&r)
            })
            .min()
            .expect("a word with two generators has a boundary rotation")
    }

    /// Replaces `a` by `images.0` and `b` by `images.1`.
    pub fn substitute(&self, images: (&Word, &Word)) -> Word {
        let mut out = Word::identity();
        for l in &self.letters {
            let image = match l.generator {
                Gen::X1 => images.0,
                Gen::X2 => images.1,
            };
            let piece = if l.exponent > 0 { image.clone() } else { image.invert() };
            for _ in 0..l.exponent.unsigned_abs() {
                out = &out * &piece;
            }
        }
        out
    }

    /// Every freely reduced word of the given length, in lexicographic order
    /// of unit letters `a < A < b < B`.
    pub fn enumerate(length: usize) -> Vec<Word> {
        const UNITS: [(Gen, i32); 4] = [(Gen::X1, 1), (Gen::X1, -1), (Gen::X2, 1), (Gen::X2, -1)];
        let mut layer: Vec<Vec<(Gen, i32)>> = vec![Vec::new()];
        for _ in 0..length {
            let mut next = Vec::with_capacity(layer.len() * 3);
            for w in &layer {
                for u in UNITS {
                    if w.last().is_some_and(|&(g, e)| g == u.0 && e == -u.1) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(u);
                    next.push(v);
                }
            }
            layer = next;
        }
        layer.iter().map(|u| Word::from_units(u)).collect()
    }
}

fn push_reduced(out: &mut Vec<Letter>, generator: Gen, exponent: i32) {
    if exponent == 0 {
        return;
    }
    match out.last_mut() {
        Some(last) if last.generator == generator => {
            last.exponent += exponent;
            if last.exponent == 0 {
                out.pop();
            }
        }
        _ => out.push(Letter { generator, exponent }),
    }
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        let mut out = self.letters.clone();
        for l in &rhs.letters {
            push_reduced(&mut out, l.generator, l.exponent);
        }
        Word { letters: out }
    }
}

impl Mul for Word {
    type Output = Word;
    fn mul(self, rhs: Word) -> Word {
        &self * &rhs
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{}", l.generator.symbol())?;
            if l.exponent != 1 {
                write!(f, "^{}", l.exponent)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = WordParseError;

    fn from_str(text: &str) -> Result<Word, WordParseError> {
        parse_word(text)
    }
}

/// Parses a word and reduces it freely.
pub fn parse_word(text: &str) -> Result<Word, WordParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].1.is_whitespace() {
            *i += 1;
        }
    };
    skip_ws(&mut i);
    if i == chars.len() {
        return Err(WordParseError::Empty);
    }
    if chars[i].1 == '1' {
        let mut j = i + 1;
        skip_ws(&mut j);
        if j == chars.len() {
            return Ok(Word::identity());
        }
    }
    let mut letters: Vec<(Gen, i32)> = Vec::new();
    loop {
        let (pos, c) = chars[i];
        let (g, sign) = match c {
            'a' => (Gen::X1, 1),
            'A' => (Gen::X1, -1),
            'b' => (Gen::X2, 1),
            'B' => (Gen::X2, -1),
            found => return Err(WordParseError::UnknownSymbol { pos, found }),
        };
        i += 1;
        skip_ws(&mut i);
        let mut exponent = 1i32;
        if i < chars.len() && chars[i].1 == '^' {
            let caret = chars[i].0;
            i += 1;
            skip_ws(&mut i);
            let start = i;
            if i < chars.len() && (chars[i].1 == '-' || chars[i].1 == '+') {
                i += 1;
            }
            let digits_start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            if i == digits_start {
                return Err(WordParseError::MalformedExponent { pos: caret });
            }
            let lit: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            exponent = lit.parse().map_err(|_| WordParseError::MalformedExponent { pos: caret })?;
            if exponent == 0 {
                return Err(WordParseError::ZeroExponent { pos: caret });
            }
            skip_ws(&mut i);
        }
        letters.push((g, sign * exponent));
        if i == chars.len() {
            break;
        }
        if chars[i].1 == '*' {
            let star = chars[i].0;
            i += 1;
            skip_ws(&mut i);
            if i == chars.len() {
                return Err(WordParseError::DanglingSeparator { pos: star });
            }
        }
    }
    Ok(Word::from_letters(letters))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn l(g: Gen, e: i32) -> Letter {
        Letter::new(g, e)
    }

    #[test]
    fn parse_examples() {
        assert_eq!(w("a*b").letters(), &[l(Gen::X1, 1), l(Gen::X2, 1)]);
        assert!(w("a*A").is_identity());
        assert_eq!(w("a^2*B*a^-1").letters(), &[l(Gen::X1, 2), l(Gen::X2, -1), l(Gen::X1, -1)]);
        assert_eq!(w("a b  A"), w("a*b*A"));
        assert_eq!(w("A^2"), w("a^-2"));
        assert_eq!(w("A^-1"), w("a"));
        assert_eq!(w("a*a*a"), w("a^3"));
        assert!(w("1").is_identity());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_word(""), Err(WordParseError::Empty));
        assert!(matches!(parse_word("a*c"), Err(WordParseError::UnknownSymbol { found: 'c', .. })));
        assert!(matches!(parse_word("a^0"), Err(WordParseError::ZeroExponent { .. })));
        assert!(matches!(parse_word("a^"), Err(WordParseError::MalformedExponent { .. })));
        assert!(matches!(parse_word("a^x"), Err(WordParseError::MalformedExponent { .. })));
        assert!(matches!(parse_word("a*"), Err(WordParseError::DanglingSeparator { .. })));
        assert!(parse_word("1*a").is_err());
    }

    #[test]
    fn inversion() {
        assert!(Word::identity().invert().is_identity());
        assert_eq!(w("a*b").invert(), w("B*A"));
    }

    #[test]
    fn lengths() {
        assert_eq!(w("a*b").length(), 2);
        assert_eq!(w("a^3*b^-2").length(), 5);
        assert_eq!(Word::identity().length(), 0);
        assert_eq!(w("a^3*b^-2").weighted_length(), 7);
        assert_eq!(w("a*b").weighted_length(), 2);
        assert_eq!(w("A*B").weighted_length(), 4);
    }

    #[test]
    fn cyclic_reduction_examples() {
        assert_eq!(w("a*b*A").cyclic_reduce(), (w("b"), w("a")));
        assert_eq!(w("a*b").cyclic_reduce(), (w("a*b"), Word::identity()));
        let x = w("A*b*a^2*B*a");
        let (core, c) = x.cyclic_reduce();
        assert!(core.is_cyclically_reduced());
        assert_eq!(&(&c * &core) * &c.invert(), x);
        assert_eq!(core, w("a^2"));
    }

    #[test]
    fn cyclic_normal_form_is_rotation_invariant() {
        let a = w("a*b*A*B").cyclic_normal_form();
        for r in ["b*A*B*a", "A*B*a*b", "B*a*b*A"] {
            assert_eq!(w(r).cyclic_normal_form(), a);
        }
        assert_ne!(w("b*a*B*A").cyclic_normal_form(), a);
        assert_eq!(w("a^2*b").cyclic_normal_form(), w("a*b*a").cyclic_normal_form());
    }

    #[test]
    fn enumeration_counts() {
        // 4 * 3^(n-1) freely reduced words of length n
        assert_eq!(Word::enumerate(0).len(), 1);
        assert_eq!(Word::enumerate(1).len(), 4);
        assert_eq!(Word::enumerate(4).len(), 108);
        assert!(Word::enumerate(5).iter().all(|x| x.length() == 5));
    }

    #[test]
    fn substitution() {
        let eta = (&w("a*b"), &w("b"));
        assert_eq!(w("a").substitute(eta), w("a*b"));
        assert_eq!(w("a*b*A*B").substitute(eta), w("a*b*A*B"));
        assert_eq!(w("b*a").substitute(eta), w("b*a*b"));
        assert_eq!(w("A^2").substitute(eta), w("B*A*B*A"));
    }

    pub(crate) fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((prop::bool::ANY, -3i32..=3), 0..max_len).prop_map(|v| {
            Word::from_letters(v.into_iter().map(|(g, e)| (if g { Gen::X1 } else { Gen::X2 }, e)))
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(x in arb_word(12)) {
            prop_assert_eq!(parse_word(&x.to_string()).unwrap(), x);
        }

        #[test]
        fn inverse_is_involution_and_preserves_length(x in arb_word(12)) {
            prop_assert_eq!(x.invert().invert(), x.clone());
            prop_assert_eq!(x.invert().length(), x.length());
            prop_assert!((&x * &x.invert()).is_identity());
        }

        #[test]
        fn weighted_length_dominates_length(x in arb_word(12)) {
            prop_assert!(x.weighted_length() >= x.length());
            let all_positive = x.letters().iter().all(|l| l.exponent > 0);
            prop_assert_eq!(x.weighted_length() == x.length(), all_positive);
        }

        #[test]
        fn cyclic_reduce_recovers_word(x in arb_word(12)) {
            let (core, c) = x.cyclic_reduce();
            prop_assert!(core.is_cyclically_reduced());
            prop_assert_eq!(&(&c * &core) * &c.invert(), x);
            let (again, c2) = core.cyclic_reduce();
            prop_assert_eq!(again, core);
            prop_assert!(c2.is_identity());
        }

        #[test]
        fn normal_form_is_conjugation_invariant(x in arb_word(10), u in arb_word(6)) {
            let conj = &(&u * &x) * &u.invert();
            prop_assert_eq!(conj.cyclic_normal_form(), x.cyclic_normal_form());
        }
    }
}
