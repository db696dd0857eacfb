//! `3x3` matrices over a [`Scalar`], with exact determinant and adjugate.
//!
//! Inverses of unimodular matrices are always taken as adjugates, so word
//! evaluation never divides.

use std::collections::HashMap;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freegroup::{Gen, Word};
use crate::scalar::{ExactComplex, GaussianInt, Scalar};

/// Number of transvections in a default random `SL(3)` sample.
pub const DEFAULT_COMPLEXITY: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("matrix {which} has determinant {det}, expected 1")]
    NotUnimodular { which: &'static str, det: ExactComplex },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matrix3<T> {
    pub rows: [[T; 3]; 3],
}

impl<T: Scalar> Matrix3<T> {
    pub fn from_rows(rows: [[T; 3]; 3]) -> Self {
        Matrix3 { rows }
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        Matrix3 { rows: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))) }
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| T::zero())
    }

    pub fn diag(a: T, b: T, c: T) -> Self {
        let d = [a, b, c];
        Self::from_fn(|i, j| if i == j { d[i].clone() } else { T::zero() })
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn trace(&self) -> T {
        self.rows[0][0].clone() + self.rows[1][1].clone() + self.rows[2][2].clone()
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::from_fn(|i, j| s.clone() * self.rows[i][j].clone())
    }

    fn minor(&self, r: usize, c: usize) -> T {
        let rs: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cs: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        let m = &self.rows;
        m[rs[0]][cs[0]].clone() * m[rs[1]][cs[1]].clone()
            - m[rs[0]][cs[1]].clone() * m[rs[1]][cs[0]].clone()
    }

    fn cofactor(&self, r: usize, c: usize) -> T {
        let m = self.minor(r, c);
        if (r + c) % 2 == 0 {
            m
        } else {
            -m
        }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> T {
        self.det_along_row(0)
    }

    /// Determinant by cofactor expansion along row `r`.
    pub fn det_along_row(&self, r: usize) -> T {
        (0..3).fold(T::zero(), |acc, c| acc + self.rows[r][c].clone() * self.cofactor(r, c))
    }

    /// Transposed cofactor matrix: entry `(i, j)` is `(-1)^(i+j) Cof_ji`.
    pub fn adjugate(&self) -> Self {
        Self::from_fn(|i, j| self.cofactor(j, i))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix3<U> {
        Matrix3::from_fn(|i, j| f(&self.rows[i][j]))
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(), |acc, _| &acc * self)
    }
}

impl<T: Scalar> Mul for &Matrix3<T> {
    type Output = Matrix3<T>;
    fn mul(self, rhs: &Matrix3<T>) -> Matrix3<T> {
        Matrix3::from_fn(|i, j| {
            (0..3).fold(T::zero(), |acc, k| acc + self.rows[i][k].clone() * rhs.rows[k][j].clone())
        })
    }
}

impl<T: Scalar> Add for &Matrix3<T> {
    type Output = Matrix3<T>;
    fn add(self, rhs: &Matrix3<T>) -> Matrix3<T> {
        Matrix3::from_fn(|i, j| self.rows[i][j].clone() + rhs.rows[i][j].clone())
    }
}

impl<T: Scalar> Sub for &Matrix3<T> {
    type Output = Matrix3<T>;
    fn sub(self, rhs: &Matrix3<T>) -> Matrix3<T> {
        Matrix3::from_fn(|i, j| self.rows[i][j].clone() - rhs.rows[i][j].clone())
    }
}

/// Images of the two generators. [`SL3Pair::new`] enforces unit
/// determinants; the generic struct is also used on the floating point path
/// where that holds only approximately.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SL3Pair<T = ExactComplex> {
    #[serde(rename = "A")]
    pub a: Matrix3<T>,
    #[serde(rename = "B")]
    pub b: Matrix3<T>,
}

impl SL3Pair<ExactComplex> {
    pub fn new(a: Matrix3<ExactComplex>, b: Matrix3<ExactComplex>) -> Result<Self, LinalgError> {
        let pair = SL3Pair { a, b };
        pair.check()?;
        Ok(pair)
    }

    /// Re-checks the unit determinant invariant, e.g. after deserializing.
    pub fn check(&self) -> Result<(), LinalgError> {
        for (which, m) in [("A", &self.a), ("B", &self.b)] {
            let det = m.det();
            if !det.is_one() {
                return Err(LinalgError::NotUnimodular { which, det });
            }
        }
        Ok(())
    }

    pub fn to_approx(&self) -> SL3Pair<num_complex::Complex64> {
        SL3Pair { a: self.a.map(|z| z.to_approx()), b: self.b.map(|z| z.to_approx()) }
    }
}

impl<T: Scalar> SL3Pair<T> {
    pub fn unchecked(a: Matrix3<T>, b: Matrix3<T>) -> Self {
        SL3Pair { a, b }
    }

    pub fn identity() -> Self {
        SL3Pair { a: Matrix3::identity(), b: Matrix3::identity() }
    }

    /// The pair `(w1(A, B), w2(A, B))`, i.e. the representation precomposed
    /// with the endomorphism `a -> w1, b -> w2`.
    pub fn transform(&self, images: (&Word, &Word)) -> Self {
        SL3Pair { a: evaluate_word(images.0, self), b: evaluate_word(images.1, self) }
    }
}

/// The image of `w` under the representation `a -> A, b -> B`.
pub fn evaluate_word<T: Scalar>(w: &Word, p: &SL3Pair<T>) -> Matrix3<T> {
    let mut out = Matrix3::identity();
    let mut a_inv = None;
    let mut b_inv = None;
    for l in w.letters() {
        let base = match (l.generator, l.exponent > 0) {
            (Gen::X1, true) => &p.a,
            (Gen::X2, true) => &p.b,
            (Gen::X1, false) => a_inv.get_or_insert_with(|| p.a.adjugate()),
            (Gen::X2, false) => b_inv.get_or_insert_with(|| p.b.adjugate()),
        };
        for _ in 0..l.exponent.unsigned_abs() {
            out = &out * base;
        }
    }
    out
}

/// Trace of the image of `w`.
pub fn trace_of_word<T: Scalar>(w: &Word, p: &SL3Pair<T>) -> T {
    evaluate_word(w, p).trace()
}

/// A small nonzero Gaussian rational: real and imaginary parts have
/// numerators in `-3..=3` and denominators in `1..=3`.
pub fn random_small_gaussian<R: Rng + ?Sized>(rng: &mut R) -> ExactComplex {
    loop {
        let z = ExactComplex::from_parts(
            rng.random_range(-3..=3),
            rng.random_range(1..=3),
            rng.random_range(-3..=3),
            rng.random_range(1..=3),
        );
        if !z.is_zero() {
            return z;
        }
    }
}

/// Product of `complexity` random transvections `I + q E_jk`.
pub fn random_sl3_from<R: Rng + ?Sized>(rng: &mut R, complexity: usize) -> Matrix3<ExactComplex> {
    let mut m = Matrix3::identity();
    for _ in 0..complexity {
        let j = rng.random_range(0..3);
        let k = (j + rng.random_range(1..3)) % 3;
        let q = random_small_gaussian(rng);
        // right multiplication by I + q E_jk adds q * (column j) to column k
        for i in 0..3 {
            let add = &m.rows[i][j] * &q;
            m.rows[i][k] += &add;
        }
    }
    m
}

/// Deterministic random element of `SL(3)` with Gaussian rational entries.
pub fn random_sl3(seed: u64, complexity: usize) -> Matrix3<ExactComplex> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_sl3_from(&mut rng, complexity)
}

/// Two independent transvection products drawn from one stream.
pub fn random_pair_from<R: Rng + ?Sized>(rng: &mut R, complexity: usize) -> SL3Pair {
    let a = random_sl3_from(rng, complexity);
    let b = random_sl3_from(rng, complexity);
    SL3Pair { a, b }
}

/// `[[a, b, 0], [c, d, 0], [0, 0, 1/(ad - bc)]]`.
pub fn embed_gl2(
    a: &ExactComplex,
    b: &ExactComplex,
    c: &ExactComplex,
    d: &ExactComplex,
) -> Result<Matrix3<ExactComplex>, LinalgError> {
    let det = &(a * d) - &(b * c);
    let inv = det.inv().ok_or(LinalgError::Degenerate("ad - bc = 0"))?;
    let z = ExactComplex::zero();
    Ok(Matrix3::from_rows([
        [a.clone(), b.clone(), z.clone()],
        [c.clone(), d.clone(), z.clone()],
        [z.clone(), z, inv],
    ]))
}

/// `diag(a, b, 1/(ab))`.
pub fn embed_diag(a: &ExactComplex, b: &ExactComplex) -> Result<Matrix3<ExactComplex>, LinalgError> {
    if a.is_zero() || b.is_zero() {
        return Err(LinalgError::Degenerate("diagonal entry is zero"));
    }
    let inv = (a * b).inv().expect("nonzero product");
    Ok(Matrix3::diag(a.clone(), b.clone(), inv))
}

type IntMatrix = [[GaussianInt; 3]; 3];

fn int_mul(x: &IntMatrix, y: &IntMatrix) -> IntMatrix {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| (0..3).fold(GaussianInt::zero(), |acc, k| acc + &x[i][k] * &y[k][j]))
    })
}

/// Exact traces of many words at one pair without intermediate rational
/// normalization.
///
/// Each matrix is scaled to Gaussian integer entries, so that inverses are
/// adjugates up to a known power of the scale; products of prefixes are
/// cached. This is much faster than [`trace_of_word`] for bulk checks and
/// returns the same values.
pub struct WordEvaluator {
    letters: [(IntMatrix, BigInt); 4],
    cache: HashMap<Word, (IntMatrix, BigInt)>,
}

impl WordEvaluator {
    pub fn new(pair: &SL3Pair) -> Self {
        let scaled = |m: &Matrix3<ExactComplex>| {
            let d = m.rows.iter().flatten().fold(BigInt::one(), |d, z| d.lcm(&z.denominator()));
            let im: IntMatrix = std::array::from_fn(|i| std::array::from_fn(|j| m.rows[i][j].scaled_numerator(&d)));
            let inv = Matrix3::from_fn(|i, j| ExactComplex::from_gaussian(im[i][j].clone(), &BigInt::one())).adjugate();
            let inv: IntMatrix = std::array::from_fn(|i| std::array::from_fn(|j| inv.rows[i][j].scaled_numerator(&BigInt::one())));
            let d2 = &d * &d;
            ((im, d), (inv, d2))
        };
        let ((a, da), (ai, dai)) = scaled(&pair.a);
        let ((b, db), (bi, dbi)) = scaled(&pair.b);
        WordEvaluator { letters: [(a, da), (ai, dai), (b, db), (bi, dbi)], cache: HashMap::new() }
    }

    fn product(&mut self, w: &Word) -> (IntMatrix, BigInt) {
        if let Some(hit) = self.cache.get(w) {
            return hit.clone();
        }
        let units = w.unit_letters();
        let out = match units.split_last() {
            None => (std::array::from_fn(|i| std::array::from_fn(|j| GaussianInt::from(BigInt::from(u8::from(i == j))))), BigInt::one()),
            Some((&(g, e), rest)) => {
                let (m, d) = self.product(&Word::from_units(rest));
                let slot = 2 * (g.index() - 1) + usize::from(e < 0);
                let (x, dx) = &self.letters[slot];
                (int_mul(&m, x), d * dx)
            }
        };
        self.cache.insert(w.clone(), out.clone());
        out
    }

    pub fn trace(&mut self, w: &Word) -> ExactComplex {
        let (m, d) = self.product(w);
        ExactComplex::from_gaussian(&(&m[0][0] + &m[1][1]) + &m[2][2], &d)
    }

    /// Drops cached prefixes.
    pub fn clear(&mut self) {
        self.cache.clear();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(s: &str) -> ExactComplex {
        s.parse().unwrap()
    }

    fn int_matrix(rows: [[i64; 3]; 3]) -> Matrix3<ExactComplex> {
        Matrix3::from_fn(|i, j| ExactComplex::from_int(rows[i][j]))
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(Matrix3::<ExactComplex>::identity().det(), ExactComplex::one());
        let d = Matrix3::diag(c("2"), c("3"), c("1/6"));
        assert_eq!(d.det(), ExactComplex::one());
        assert_eq!(int_matrix([[2, 1, 0], [3, 2, 1], [0, 1, 1]]).det(), c("-1"));
    }

    #[test]
    fn determinant_rows_agree() {
        for seed in 0..20 {
            let m = {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                Matrix3::from_fn(|_, _| random_small_gaussian(&mut rng))
            };
            let d0 = m.det_along_row(0);
            assert_eq!(m.det_along_row(1), d0);
            assert_eq!(m.det_along_row(2), d0);
        }
    }

    #[test]
    fn adjugate_identities() {
        assert_eq!(Matrix3::<ExactComplex>::identity().adjugate(), Matrix3::identity());
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = Matrix3::from_fn(|_, _| random_small_gaussian(&mut rng));
            let n = Matrix3::from_fn(|_, _| random_small_gaussian(&mut rng));
            let scalar = Matrix3::identity().scale(&m.det());
            assert_eq!(&m * &m.adjugate(), scalar);
            assert_eq!(&m.adjugate() * &m, scalar);
            assert_eq!((&m * &n).adjugate(), &n.adjugate() * &m.adjugate());
        }
        let u = random_sl3(3, 8);
        assert_eq!(&u.adjugate() * &u, Matrix3::identity());
    }

    #[test]
    fn newton_trace_formulas() {
        let half = c("1/2");
        for seed in 0..10 {
            let m = random_sl3(seed, 7);
            let t1 = m.trace();
            let t2 = (&m * &m).trace();
            let t3 = m.pow(3).trace();
            assert_eq!(m.adjugate().trace(), &half * &(&(&t1 * &t1) - &t2));
            let det = &(&(&t3 / &c("3")) + &(&t1.pow(3) / &c("6"))) - &(&(&t1 * &t2) * &half);
            assert_eq!(det, m.det());
        }
    }

    #[test]
    fn word_evaluation() {
        let p = SL3Pair::new(random_sl3(1, 6), random_sl3(2, 6)).unwrap();
        assert_eq!(evaluate_word(&Word::identity(), &p), Matrix3::identity());
        assert_eq!(evaluate_word(&"a*A".parse().unwrap(), &p), Matrix3::identity());
        let id = SL3Pair::<ExactComplex>::identity();
        assert_eq!(trace_of_word(&"a*b*A*B".parse().unwrap(), &id), c("3"));
        let u: Word = "a^2*B".parse().unwrap();
        let v: Word = "b^2*a^-3".parse().unwrap();
        assert_eq!(evaluate_word(&(&u * &v), &p), &evaluate_word(&u, &p) * &evaluate_word(&v, &p));
        let inv = evaluate_word(&u.invert(), &p);
        assert_eq!(&inv * &evaluate_word(&u, &p), Matrix3::identity());
    }

    #[test]
    fn random_sampling_contract() {
        for seed in 0..10 {
            for k in [0, 1, 5, 12] {
                let m = random_sl3(seed, k);
                assert_eq!(m.det(), ExactComplex::one());
                assert_eq!(random_sl3(seed, k), m);
            }
        }
        assert_eq!(random_sl3(9, 0), Matrix3::identity());
        assert_ne!(random_sl3(1, 6), random_sl3(2, 6));
    }

    #[test]
    fn block_embeddings() {
        let one = c("1");
        let zero = c("0");
        assert_eq!(embed_gl2(&one, &zero, &zero, &one).unwrap(), Matrix3::identity());
        let m = embed_gl2(&c("2"), &c("1"), &c("1"), &c("1")).unwrap();
        assert_eq!(m.rows[2][2], one);
        assert_eq!(m.det(), one);
        let m = embed_gl2(&c("2"), &c("1"), &c("1"), &c("3")).unwrap();
        assert_eq!(m.rows[2][2], c("1/5"));
        assert_eq!(m.det(), one);
        assert!(embed_gl2(&one, &one, &one, &one).is_err());

        assert_eq!(embed_diag(&one, &one).unwrap(), Matrix3::identity());
        let d = embed_diag(&c("2"), &c("3")).unwrap();
        assert_eq!(d, Matrix3::diag(c("2"), c("3"), c("1/6")));
        let e = embed_diag(&c("5"), &c("1+i")).unwrap();
        let p = SL3Pair::new(d, e).unwrap();
        assert_eq!(evaluate_word(&"a*b*A*B".parse().unwrap(), &p), Matrix3::identity());
        assert!(embed_diag(&zero, &one).is_err());
    }

    #[test]
    fn pair_rejects_non_unit_determinant() {
        let bad = Matrix3::diag(c("2"), c("1"), c("1"));
        let err = SL3Pair::new(Matrix3::identity(), bad).unwrap_err();
        assert_eq!(err, LinalgError::NotUnimodular { which: "B", det: c("2") });
    }

    #[test]
    fn approximate_path_matches_exact() {
        let p = SL3Pair::new(random_sl3(5, 6), random_sl3(6, 6)).unwrap();
        let q = p.to_approx();
        let w: Word = "a*B^2*A*b".parse().unwrap();
        let exact = trace_of_word(&w, &p).to_approx();
        let approx: Complex64 = trace_of_word(&w, &q);
        assert!((exact - approx).norm() < 1e-9 * (1.0 + exact.norm()));
    }

    #[test]
    fn matrix_json_shape() {
        let m = Matrix3::diag(c("1/2"), c("2+i"), c("1"));
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["1/2","0","0"],["0","2+1i","0"],["0","0","1"]]"#);
        let back: Matrix3<ExactComplex> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn word_evaluator_agrees_with_direct_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pair = random_pair_from(&mut rng, DEFAULT_COMPLEXITY);
        let mut ev = WordEvaluator::new(&pair);
        for len in 0..=4 {
            for w in Word::enumerate(len) {
                assert_eq!(ev.trace(&w), trace_of_word(&w, &pair), "{w}");
            }
        }
        let w: Word = "a^-3*b^2*A*B^4".parse().unwrap();
        assert_eq!(ev.trace(&w), trace_of_word(&w, &pair));
    }

}
