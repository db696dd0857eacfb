//! The character variety as a hypersurface in `C^9`.
//!
//! Points are [`CharPoint`]s: the nine trace coordinates of a pair. The
//! defining equation is `t(5)^2 - P t(5) + Q = 0` where `P` and `Q` only
//! involve the first eight coordinates. Projecting away `t(5)` is a 2-to-1
//! branched cover of `C^8`, branched along `P^2 - 4Q = 0`.

use std::ops::Index;
use std::sync::OnceLock;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::freegroup::Word;
use crate::linalg::{evaluate_word, Matrix3, SL3Pair};
use crate::poly::{CoordPolynomial, CoordVar, FreePolynomial, NVARS};
use crate::scalar::{ExactComplex, Scalar};

/// Default tolerance on the floating point path.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

const P_TEXT: &str = "t(1)*t(-1)*t(2)*t(-2) - t(1)*t(2)*t(-3) - t(-1)*t(-2)*t(3) \
    - t(1)*t(-2)*t(-4) - t(-1)*t(2)*t(4) \
    + t(1)*t(-1) + t(2)*t(-2) + t(3)*t(-3) + t(4)*t(-4) - 3";

const Q_TEXT: &str = "9 - 6*t(1)*t(-1) - 6*t(2)*t(-2) - 6*t(3)*t(-3) - 6*t(4)*t(-4) \
    + t(1)^3 + t(2)^3 + t(3)^3 + t(4)^3 + t(-1)^3 + t(-2)^3 + t(-3)^3 + t(-4)^3 \
    - 3*t(-4)*t(-3)*t(-1) - 3*t(4)*t(3)*t(1) - 3*t(-4)*t(2)*t(3) - 3*t(4)*t(-2)*t(-3) \
    + 3*t(-4)*t(-2)*t(1) + 3*t(4)*t(2)*t(-1) + 3*t(1)*t(2)*t(-3) + 3*t(-1)*t(-2)*t(3) \
    + t(-2)*t(-1)*t(2)*t(1) + t(-3)*t(-2)*t(3)*t(2) + t(-4)*t(-1)*t(4)*t(1) \
    + t(-4)*t(-2)*t(4)*t(2) + t(-3)*t(-1)*t(3)*t(1) + t(-3)*t(-4)*t(3)*t(4) \
    + t(-4)^2*t(-3)*t(-2) + t(4)^2*t(3)*t(2) + t(-1)^2*t(-2)*t(-4) + t(1)^2*t(2)*t(4) \
    + t(1)*t(-2)^2*t(-3) + t(-1)*t(2)^2*t(3) + t(-4)*t(-3)*t(1)^2 + t(4)*t(3)*t(-1)^2 \
    + t(-4)*t(2)*t(-3)^2 + t(4)*t(-2)*t(3)^2 + t(-1)^2*t(-3)*t(2) + t(1)^2*t(3)*t(-2) \
    + t(-4)*t(1)*t(2)^2 + t(4)*t(-1)*t(-2)^2 + t(-4)*t(3)*t(-2)^2 + t(4)*t(-3)*t(2)^2 \
    + t(1)*t(3)*t(-4)^2 + t(-1)*t(-3)*t(4)^2 + t(-1)*t(-4)*t(3)^2 + t(1)*t(4)*t(-3)^2 \
    - 2*t(-3)^2*t(-2)*t(-1) - 2*t(3)^2*t(2)*t(1) - 2*t(-4)^2*t(-1)*t(2) - 2*t(4)^2*t(1)*t(-2) \
    + t(-1)^2*t(-2)^2*t(-3) + t(1)^2*t(2)^2*t(3) + t(-4)*t(-1)^2*t(2)^2 + t(4)*t(1)^2*t(-2)^2 \
    - t(-4)*t(-2)^2*t(2)*t(1) - t(4)*t(2)^2*t(-2)*t(-1) \
    - t(-3)*t(1)^2*t(-1)*t(2) - t(3)*t(-1)^2*t(1)*t(-2) - t(-3)*t(2)^2*t(-2)*t(1) \
    - t(3)*t(-2)^2*t(2)*t(-1) - t(-4)*t(-2)*t(-1)*t(1)^2 - t(4)*t(2)*t(1)*t(-1)^2 \
    - t(-1)*t(-2)^3*t(1) - t(-1)*t(2)^3*t(1) - t(-1)^3*t(-2)*t(2) - t(1)^3*t(-2)*t(2) \
    - t(-4)*t(-3)*t(-2)*t(-1)*t(2) - t(4)*t(3)*t(2)*t(1)*t(-2) \
    - t(-1)*t(1)*t(2)*t(-4)*t(3) - t(-1)*t(1)*t(-2)*t(4)*t(-3) \
    + t(-2)*t(-1)^2*t(1)^2*t(2) + t(-1)*t(-2)^2*t(2)^2*t(1)";

/// `P` as an element of the free ring (it does not involve `t(5)`).
pub fn relation_p() -> &'static FreePolynomial {
    static P: OnceLock<FreePolynomial> = OnceLock::new();
    P.get_or_init(|| P_TEXT.parse().expect("P parses"))
}

/// `Q` as an element of the free ring.
pub fn relation_q() -> &'static FreePolynomial {
    static Q: OnceLock<FreePolynomial> = OnceLock::new();
    Q.get_or_init(|| Q_TEXT.parse().expect("Q parses"))
}

pub fn polynomial_p() -> CoordPolynomial {
    relation_p().clone().normalize()
}

pub fn polynomial_q() -> CoordPolynomial {
    relation_q().clone().normalize()
}

/// `t(5)^2 - P t(5) + Q` in the free ring (it is zero in the coordinate
/// ring).
pub fn surface_polynomial() -> FreePolynomial {
    let t5 = FreePolynomial::var(CoordVar::T5);
    &(&(&t5 * &t5) - &(relation_p() * &t5)) + relation_q()
}

/// `P^2 - 4Q`.
pub fn discriminant_polynomial() -> FreePolynomial {
    &relation_p().pow(2) - &relation_q().scale(&BigRational::from_integer(4.into()))
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VarietyError {
    #[error("point is not on the surface (residual {residual})")]
    OffSurface { residual: String },
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
}

/// Nine trace coordinates, in [`CoordVar`] order.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoint<T = ExactComplex> {
    pub coords: [T; NVARS],
}

impl<T: Scalar> CharPoint<T> {
    pub fn new(coords: [T; NVARS]) -> Self {
        CharPoint { coords }
    }

    pub fn from_base(base: [T; 8], t5: T) -> Self {
        let mut it = base.into_iter().chain(std::iter::once(t5));
        CharPoint { coords: std::array::from_fn(|_| it.next().expect("nine values")) }
    }

    /// The point with every coordinate equal to `x`.
    pub fn constant(x: T) -> Self {
        CharPoint { coords: std::array::from_fn(|_| x.clone()) }
    }

    pub fn get(&self, v: CoordVar) -> &T {
        &self.coords[v.index()]
    }

    pub fn t5(&self) -> &T {
        self.get(CoordVar::T5)
    }

    /// Image under the projection to `C^8`.
    pub fn base(&self) -> [T; 8] {
        std::array::from_fn(|i| self.coords[i].clone())
    }

    /// The other coordinate over the same base point, `t(-5) = P - t(5)`.
    pub fn t_minus5(&self) -> T {
        relation_p().eval(&self.coords) - self.t5().clone()
    }

    pub fn to_approx(&self) -> CharPoint<Complex64> {
        CharPoint { coords: std::array::from_fn(|i| self.coords[i].to_approx()) }
    }
}

impl<T> Index<CoordVar> for CharPoint<T> {
    type Output = T;
    fn index(&self, v: CoordVar) -> &T {
        &self.coords[v.index()]
    }
}

fn lift_base<T: Scalar>(pt8: &[T; 8]) -> [T; NVARS] {
    std::array::from_fn(|i| if i < 8 { pt8[i].clone() } else { T::zero() })
}

/// The nine trace coordinates of a pair.
pub fn chi<T: Scalar>(pair: &SL3Pair<T>) -> CharPoint<T> {
    let a_inv = pair.a.adjugate();
    let b_inv = pair.b.adjugate();
    let ab = &pair.a * &pair.b;
    let ab_inv = &a_inv * &b_inv;
    let t4 = (&pair.a * &b_inv).trace();
    let tm4 = (&a_inv * &pair.b).trace();
    let t5 = (&ab * &ab_inv).trace();
    CharPoint::new([
        pair.a.trace(),
        a_inv.trace(),
        pair.b.trace(),
        b_inv.trace(),
        ab.trace(),
        ab_inv.trace(),
        t4,
        tm4,
        t5,
    ])
}

/// `t(5)^2 - P t(5) + Q` at the point.
pub fn surface_residual<T: Scalar>(pt: &CharPoint<T>) -> T {
    let t5 = pt.t5().clone();
    let p = relation_p().eval(&pt.coords);
    let q = relation_q().eval(&pt.coords);
    t5.clone() * t5.clone() - p * t5 + q
}

/// Scale used to make floating point vanishing tests relative.
fn residual_scale<T: Scalar>(pt: &CharPoint<T>) -> f64 {
    let t5 = pt.t5().to_approx().norm();
    let p = relation_p().eval(&pt.coords).to_approx().norm();
    let q = relation_q().eval(&pt.coords).to_approx().norm();
    [1.0, t5 * t5, p * t5, q].into_iter().fold(0.0, f64::max)
}

/// Whether the point satisfies the defining equation: exactly for exact
/// scalars, up to `tol` relative to the size of the terms otherwise.
pub fn on_surface<T: Scalar>(pt: &CharPoint<T>, tol: f64) -> bool {
    surface_residual(pt).is_negligible(tol * residual_scale(pt))
}

/// `P^2 - 4Q` at a base point.
pub fn discriminant<T: Scalar>(pt8: &[T; 8]) -> T {
    let full = lift_base(pt8);
    let p = relation_p().eval(&full);
    let q = relation_q().eval(&full);
    p.clone() * p - T::from_i64(4) * q
}

/// Whether the fibre through the point is a double point.
pub fn is_branching<T: Scalar>(pt: &CharPoint<T>, tol: f64) -> bool {
    let base = pt.base();
    let full = lift_base(&base);
    let p = relation_p().eval(&full).to_approx().norm();
    let q = relation_q().eval(&full).to_approx().norm();
    discriminant(&base).is_negligible(tol * (1.0f64).max(p * p).max(q))
}

/// The two solutions of `t^2 - P t + Q = 0` over a base point.
pub fn fiber_over<T: Scalar>(pt8: &[T; 8]) -> (Complex64, Complex64) {
    let full = lift_base(pt8);
    let p = relation_p().eval(&full).to_approx();
    let q = relation_q().eval(&full).to_approx();
    solve_monic_quadratic(p, q)
}

/// Roots of `t^2 - p t + q`, avoiding cancellation between `p` and the
/// square root of the discriminant.
pub fn solve_monic_quadratic(p: Complex64, q: Complex64) -> (Complex64, Complex64) {
    let s = (p * p - 4.0 * q).sqrt();
    let big = if (p + s).norm() >= (p - s).norm() { p + s } else { p - s };
    if big.norm() == 0.0 {
        return (Complex64::zero(), Complex64::zero());
    }
    let r1 = big / 2.0;
    (r1, q / r1)
}

/// Generators of the Jacobian ideal: the formal partials of
/// `t(5)^2 - P t(5) + Q`, one for each coordinate.
#[derive(Clone, Debug)]
pub struct JacobianSystem {
    pub generators: Vec<(CoordVar, CoordPolynomial)>,
}

impl JacobianSystem {
    pub fn evaluate<T: Scalar>(&self, pt: &CharPoint<T>) -> Vec<T> {
        self.generators.iter().map(|(_, g)| g.eval(&pt.coords)).collect()
    }

    pub fn generator(&self, v: CoordVar) -> &CoordPolynomial {
        &self.generators[v.index()].1
    }
}

pub fn jacobian_system() -> &'static JacobianSystem {
    static J: OnceLock<JacobianSystem> = OnceLock::new();
    J.get_or_init(|| {
        let f = surface_polynomial();
        JacobianSystem { generators: CoordVar::ALL.iter().map(|&v| (v, f.partial(v).normalize())).collect() }
    })
}

/// Whether every Jacobian generator vanishes at a point of the surface.
///
/// On the floating point path each generator value is compared against
/// `tol` times its largest coefficient.
pub fn is_singular<T: Scalar>(pt: &CharPoint<T>, tol: f64) -> Result<bool, VarietyError> {
    if !on_surface(pt, tol) {
        return Err(VarietyError::OffSurface { residual: format!("{:?}", surface_residual(pt)) });
    }
    let jac = jacobian_system();
    Ok(jac.generators.iter().all(|(_, g)| {
        let scale =
            g.terms().map(|(_, c)| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(1.0, f64::max);
        g.eval(&pt.coords).is_negligible(tol * scale)
    }))
}

/// A point of the two-parameter family of non-singular points on the
/// branching locus.
#[derive(Clone, Debug)]
pub struct BranchingSample {
    pub point: CharPoint<Complex64>,
    /// All nine Jacobian generator values, in [`CoordVar`] order.
    pub jacobian: Vec<Complex64>,
    /// The generators for `t(1)` and `t(-1)`, the only ones that do not vanish.
    pub nonzero_partials: (Complex64, Complex64),
}

/// The pair `x1 = diag(a, a, 1/a^2)` and
/// `x2 = (c/4)^(1/3) [[1, 1, -1], [1, -1, 1], [-1/c, -1/c, -1/c]]`.
pub fn branching_pair(a: Complex64, c: Complex64) -> Result<SL3Pair<Complex64>, VarietyError> {
    if (a.powu(3) - 1.0).norm() < DEFAULT_TOLERANCE {
        return Err(VarietyError::Precondition("a^3 must differ from 1"));
    }
    if c.norm() < DEFAULT_TOLERANCE {
        return Err(VarietyError::Precondition("c must be nonzero"));
    }
    let x1 = Matrix3::diag(a, a, 1.0 / (a * a));
    let one = Complex64::one();
    let m = Matrix3::from_rows([[one, one, -one], [one, -one, one], [-one / c, -one / c, -one / c]]);
    let x2 = m.scale(&(c / 4.0).powf(1.0 / 3.0));
    Ok(SL3Pair::unchecked(x1, x2))
}

pub fn branching_family(a: Complex64, c: Complex64) -> Result<BranchingSample, VarietyError> {
    let point = chi(&branching_pair(a, c)?);
    let jacobian = jacobian_system().evaluate(&point);
    let nonzero_partials = (jacobian[CoordVar::T1.index()], jacobian[CoordVar::Tm1.index()]);
    Ok(BranchingSample { point, jacobian, nonzero_partials })
}

/// The closed forms `-(a^3 - 1)^3 / (4a^4)` and `(a^3 - 1)^3 / (4a^5)` of the
/// two nonvanishing partials along the branching family.
pub fn branching_partials_closed_form(a: Complex64) -> (Complex64, Complex64) {
    let k = (a.powu(3) - 1.0).powu(3);
    (-k / (4.0 * a.powu(4)), k / (4.0 * a.powu(5)))
}

/// Two representations with the same first eight coordinates but different
/// `t(5)`: `x1 = diag(a, b, 1/ab)` in both, with `x2` one of two sign
/// patterns scaled by `4^(-1/3)`.
pub fn distinguishing_pairs(a: &ExactComplex, b: &ExactComplex) -> (SL3Pair<Complex64>, SL3Pair<Complex64>) {
    let (a, b) = (a.to_approx(), b.to_approx());
    let x1 = Matrix3::diag(a, b, 1.0 / (a * b));
    let s = Complex64::new(4f64.powf(-1.0 / 3.0), 0.0);
    let m = |rows: [[f64; 3]; 3]| Matrix3::from_fn(|i, j| Complex64::new(rows[i][j], 0.0)).scale(&s);
    let rho1 = SL3Pair::unchecked(x1.clone(), m([[1., 1., -1.], [1., -1., 1.], [-1., -1., -1.]]));
    let rho2 = SL3Pair::unchecked(x1, m([[1., -1., 1.], [-1., -1., -1.], [1., 1., -1.]]));
    (rho1, rho2)
}

/// The coordinates of [`distinguishing_pairs`] at `(a, b) = (2, 3)`.
pub fn distinguishing_pair() -> (CharPoint<Complex64>, CharPoint<Complex64>) {
    let (r1, r2) = distinguishing_pairs(&ExactComplex::from_int(2), &ExactComplex::from_int(3));
    (chi(&r1), chi(&r2))
}

/// Words `x1, x2, x1^-1, x2^-1, x1x2, x2x1, x1x2^-1, x2^-1x1, x2x1^-1`.
pub fn lambda_words() -> [Word; 9] {
    ["a", "b", "A", "B", "a*b", "b*a", "a*B", "B*a", "b*A"].map(|s| s.parse().expect("static word"))
}

/// `B(X, Y) = 3 tr(XY) - tr(X) tr(Y)`.
pub fn bilinear_form<T: Scalar>(x: &Matrix3<T>, y: &Matrix3<T>) -> T {
    T::from_i64(3) * (x * y).trace() - x.trace() * y.trace()
}

/// The `9x9` matrix `B(w_i, w_j)` over [`lambda_words`].
pub fn lambda_matrix<T: Scalar>(pair: &SL3Pair<T>) -> Vec<Vec<T>> {
    let mats: Vec<Matrix3<T>> = lambda_words().iter().map(|w| evaluate_word(w, pair)).collect();
    mats.iter().map(|x| mats.iter().map(|y| bilinear_form(x, y)).collect()).collect()
}

/// Determinant by Gaussian elimination.
pub fn determinant<T: Scalar>(mut m: Vec<Vec<T>>) -> T {
    let n = m.len();
    let mut det = T::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return T::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = det * p.clone();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone() / p.clone();
            for c in col..n {
                let sub = factor.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - sub;
            }
        }
    }
    det
}

pub fn lambda_det(pair: &SL3Pair) -> ExactComplex {
    determinant(lambda_matrix(pair))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{embed_diag, embed_gl2, random_pair_from, random_sl3, DEFAULT_COMPLEXITY};
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(s: &str) -> ExactComplex {
        s.parse().unwrap()
    }

    fn threes() -> CharPoint {
        CharPoint::constant(ExactComplex::from_int(3))
    }

    #[test]
    fn p_and_q_basic_facts() {
        let p = polynomial_p();
        assert_eq!(p.num_terms(), 10);
        assert_eq!(p.constant_term(), BigRational::from_integer((-3).into()));
        assert_eq!(p.total_degree(), 4);
        let q = polynomial_q();
        assert_eq!(q.constant_term(), BigRational::from_integer(9.into()));
        assert_eq!(q.total_degree(), 6);
        assert_eq!(surface_polynomial().total_degree(), 6);
    }

    #[test]
    fn identity_pair_has_all_threes() {
        assert_eq!(chi(&SL3Pair::<ExactComplex>::identity()), threes());
        assert!(surface_residual(&threes()).is_zero());
        assert!(discriminant(&threes().base()).is_zero());
    }

    #[test]
    fn off_surface_witness() {
        let mut pt = threes();
        pt.coords[8] = ExactComplex::from_int(4);
        assert_eq!(surface_residual(&pt), ExactComplex::one());
        assert!(matches!(is_singular(&pt, 0.0), Err(VarietyError::OffSurface { .. })));
    }

    #[test]
    fn commuting_pair_has_trivial_commutator() {
        let a = embed_diag(&c("2"), &c("3")).unwrap();
        let b = embed_diag(&c("5"), &c("7")).unwrap();
        let pt = chi(&SL3Pair::new(a, b).unwrap());
        assert_eq!(pt.t5(), &ExactComplex::from_int(3));
    }

    #[test]
    fn random_pairs_lie_on_surface() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let pair = random_pair_from(&mut rng, DEFAULT_COMPLEXITY);
            let pt = chi(&pair);
            assert!(surface_residual(&pt).is_zero());
        }
    }

    #[test]
    fn fibre_roots() {
        let (r1, r2) = fiber_over(&threes().base());
        assert!((r1 - 3.0).norm() < 1e-12 && (r2 - 3.0).norm() < 1e-12);
        let pair = SL3Pair::new(random_sl3(1, 6), random_sl3(2, 6)).unwrap();
        let pt = chi(&pair);
        let (r1, r2) = fiber_over(&pt.base());
        let t5 = pt.t5().to_approx();
        let other = pt.t_minus5().to_approx();
        let matched = ((r1 - t5).norm() < 1e-9 && (r2 - other).norm() < 1e-9)
            || ((r2 - t5).norm() < 1e-9 && (r1 - other).norm() < 1e-9);
        assert!(matched, "{r1} {r2} vs {t5} {other}");
    }

    #[test]
    fn jacobian_shape() {
        let jac = jacobian_system();
        assert_eq!(jac.generators.len(), 9);
        let expected: CoordPolynomial = "2*t(5)".parse::<CoordPolynomial>().unwrap() - polynomial_p();
        assert_eq!(jac.generator(CoordVar::T5), &expected);
        for (v, g) in &jac.generators {
            assert_eq!(g.homogeneous_bigrade(), Some(v.bigrade().neg()), "{v}");
        }
    }

    #[test]
    fn reducible_pairs_are_singular() {
        let a = embed_gl2(&c("2"), &c("1"), &c("1/2+1i"), &c("-3")).unwrap();
        let b = embed_gl2(&c("1"), &c("-1/3"), &c("2i"), &c("1")).unwrap();
        assert!(is_singular(&chi(&SL3Pair::new(a, b).unwrap()), 0.0).unwrap());
        let pair = SL3Pair::new(random_sl3(3, 6), random_sl3(4, 6)).unwrap();
        assert!(!is_singular(&chi(&pair), 0.0).unwrap());
    }

    #[test]
    fn branching_family_at_two_one() {
        let s = branching_family(Complex64::new(2.0, 0.0), Complex64::one()).unwrap();
        let (d1, dm1) = s.nonzero_partials;
        assert!((d1 - Complex64::new(-343.0 / 64.0, 0.0)).norm() < 1e-9, "{d1}");
        assert!((dm1 - Complex64::new(343.0 / 128.0, 0.0)).norm() < 1e-9, "{dm1}");
        assert!(on_surface(&s.point, 1e-9));
        assert!(is_branching(&s.point, 1e-9));
        assert!(!is_singular(&s.point, 1e-9).unwrap());
        assert!(branching_family(Complex64::one(), Complex64::one()).is_err());
    }

    #[test]
    fn distinguishing_points() {
        let (p1, p2) = distinguishing_pair();
        for i in 0..8 {
            assert!((p1.coords[i] - p2.coords[i]).norm() < 1e-9, "coordinate {i}");
        }
        assert!((p1.t5() - p2.t5()).norm() > 1e-3);
        assert!(on_surface(&p1, 1e-9) && on_surface(&p2, 1e-9));
    }

    #[test]
    fn lambda_is_singular() {
        assert!(lambda_det(&SL3Pair::identity()).is_zero());
        let pair = SL3Pair::new(random_sl3(5, 6), random_sl3(6, 6)).unwrap();
        assert!(lambda_det(&pair).is_zero());
        let a = &pair.a;
        let direct = ExactComplex::from_int(3) * (a * a).trace() - a.trace() * a.trace();
        assert_eq!(lambda_matrix(&pair)[0][0], direct);
    }

    #[test]
    fn determinant_of_small_matrices() {
        let m = |rows: Vec<Vec<i64>>| rows.into_iter().map(|r| r.into_iter().map(ExactComplex::from_int).collect()).collect();
        assert_eq!(determinant(m(vec![vec![0, 1], vec![1, 0]])), ExactComplex::from_int(-1));
        assert_eq!(determinant(m(vec![vec![2, 1, 0], vec![3, 2, 1], vec![0, 1, 1]])), ExactComplex::from_int(-1));
    }
}
