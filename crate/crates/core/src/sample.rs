//! Deterministic random samples from the families used in the checks.
//!
//! Trial `i` under master seed `s` draws from stream `i` of a ChaCha8
//! generator keyed by `s`, so a sample can be regenerated from `(s, i)` alone
//! and does not depend on how many trials run.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::linalg::{embed_diag, embed_gl2, random_pair_from, random_small_gaussian, SL3Pair, DEFAULT_COMPLEXITY};
use crate::scalar::ExactComplex;
use crate::variety::{branching_family, BranchingSample};

/// Stream offset used by the single retry of [`with_retry`].
const RETRY_STREAM: u64 = 1 << 63;

/// The generator for trial `index`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Products of random transvections.
    Generic,
    /// Both matrices block diagonal with a `2x2` block.
    Gl2,
    /// Both matrices diagonal.
    Diag,
    /// Both matrices `diag(m, 1)` with `m` in `SL(2)`.
    Sl2,
    /// The floating point family on the branching locus.
    Branching,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Generic, Family::Gl2, Family::Diag, Family::Sl2, Family::Branching];

    pub fn name(self) -> &'static str {
        match self {
            Family::Generic => "generic",
            Family::Gl2 => "gl2",
            Family::Diag => "diag",
            Family::Sl2 => "sl2",
            Family::Branching => "branching",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| format!("unknown family {s:?}; expected one of generic, gl2, diag, sl2, branching"))
    }
}

/// One sample: an exact pair, or a point of the branching family.
#[derive(Clone, Debug)]
pub enum Sample {
    Exact(SL3Pair),
    Branching { a: Complex64, c: Complex64, sample: BranchingSample },
}

fn nonzero_gaussian<R: Rng + ?Sized>(rng: &mut R) -> ExactComplex {
    random_small_gaussian(rng)
}

/// A random block matrix `[[a, b, 0], [c, d, 0], [0, 0, 1/(ad - bc)]]`.
pub fn random_gl2_block<R: Rng + ?Sized>(rng: &mut R) -> crate::linalg::Matrix3<ExactComplex> {
    loop {
        let [a, b, c, d] = std::array::from_fn(|_| random_small_gaussian(rng));
        if let Ok(m) = embed_gl2(&a, &b, &c, &d) {
            return m;
        }
    }
}

/// A random `diag(m, 1)` with `det m = 1`.
pub fn random_sl2_block<R: Rng + ?Sized>(rng: &mut R) -> crate::linalg::Matrix3<ExactComplex> {
    let a = nonzero_gaussian(rng);
    let b = random_small_gaussian(rng);
    let c = random_small_gaussian(rng);
    let d = &(&ExactComplex::from_int(1) + &(&b * &c)) * &a.inv().expect("nonzero");
    embed_gl2(&a, &b, &c, &d).expect("unit determinant")
}

pub fn random_diag<R: Rng + ?Sized>(rng: &mut R) -> crate::linalg::Matrix3<ExactComplex> {
    let a = nonzero_gaussian(rng);
    let b = nonzero_gaussian(rng);
    embed_diag(&a, &b).expect("nonzero entries")
}

/// A random exact pair from an exact family.
pub fn exact_pair_from<R: Rng + ?Sized>(rng: &mut R, family: Family) -> Option<SL3Pair> {
    Some(match family {
        Family::Generic => random_pair_from(rng, DEFAULT_COMPLEXITY),
        Family::Gl2 => SL3Pair::unchecked(random_gl2_block(rng), random_gl2_block(rng)),
        Family::Diag => SL3Pair::unchecked(random_diag(rng), random_diag(rng)),
        Family::Sl2 => SL3Pair::unchecked(random_sl2_block(rng), random_sl2_block(rng)),
        Family::Branching => return None,
    })
}

/// A random point of the branching family: `a` and `c` have real and
/// imaginary parts in `[-2, 2]`, away from `a^3 = 1` and `c = 0`.
pub fn branching_from<R: Rng + ?Sized>(rng: &mut R) -> Sample {
    loop {
        let mut z = || Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let (a, c) = (z(), z());
        if (a.powu(3) - 1.0).norm() < 0.1 || c.norm() < 0.1 || a.norm() < 0.1 {
            continue;
        }
        if let Ok(sample) = branching_family(a, c) {
            return Sample::Branching { a, c, sample };
        }
    }
}

/// Sample `index` of `family` under `seed`.
pub fn sample(seed: u64, index: u64, family: Family) -> Sample {
    let mut rng = trial_rng(seed, index);
    match exact_pair_from(&mut rng, family) {
        Some(pair) => Sample::Exact(pair),
        None => branching_from(&mut rng),
    }
}

/// Draws from stream `index`; if `accept` rejects the draw, draws once more
/// from a reserved stream. Returns `Err` with the second draw if that is
/// rejected too.
pub fn with_retry<T>(
    seed: u64,
    index: u64,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> T,
    mut accept: impl FnMut(&T) -> bool,
) -> Result<T, T> {
    let first = draw(&mut trial_rng(seed, index));
    if accept(&first) {
        return Ok(first);
    }
    let second = draw(&mut trial_rng(seed, index | RETRY_STREAM));
    if accept(&second) {
        Ok(second)
    } else {
        Err(second)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::evaluate_word;
    use crate::variety::chi;
    use num_traits::One;

    #[test]
    fn families_are_unimodular() {
        for family in [Family::Generic, Family::Gl2, Family::Diag, Family::Sl2] {
            for i in 0..10 {
                let Sample::Exact(pair) = sample(1, i, family) else { panic!("exact family") };
                pair.check().unwrap();
            }
        }
    }

    #[test]
    fn diag_pairs_commute() {
        for i in 0..5 {
            let Sample::Exact(pair) = sample(2, i, Family::Diag) else { panic!() };
            let c = evaluate_word(&"a*b*A*B".parse().unwrap(), &pair);
            assert_eq!(c, crate::linalg::Matrix3::identity());
        }
    }

    #[test]
    fn sl2_blocks_have_unit_corner() {
        let Sample::Exact(pair) = sample(3, 0, Family::Sl2) else { panic!() };
        assert!(pair.a.rows[2][2].is_one() && pair.b.rows[2][2].is_one());
    }

    #[test]
    fn deterministic_and_independent_of_count() {
        let a = chi(&match sample(9, 4, Family::Generic) {
            Sample::Exact(p) => p,
            _ => unreachable!(),
        });
        let b = chi(&match sample(9, 4, Family::Generic) {
            Sample::Exact(p) => p,
            _ => unreachable!(),
        });
        assert_eq!(a, b);
        let c = chi(&match sample(9, 5, Family::Generic) {
            Sample::Exact(p) => p,
            _ => unreachable!(),
        });
        assert_ne!(a, c);
    }

    #[test]
    fn branching_samples_lie_on_the_locus() {
        for i in 0..5 {
            let Sample::Branching { sample: s, .. } = sample(4, i, Family::Branching) else { panic!() };
            let disc = crate::variety::discriminant(&s.point.base());
            assert!(disc.norm() < 1e-6 * (1.0 + s.point.coords.iter().map(|z| z.norm()).fold(0.0, f64::max).powi(6)));
        }
    }

    #[test]
    fn retry_policy() {
        let mut calls = 0;
        let r = with_retry(1, 0, |rng| rng.random_range(0..10u32), |_| {
            calls += 1;
            calls > 1
        });
        assert!(r.is_ok());
        assert_eq!(with_retry(1, 0, |_| 0, |_| false), Err(0));
    }

    #[test]
    fn family_names() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("nope".parse::<Family>().is_err());
    }
}
