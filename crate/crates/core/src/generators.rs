//! Sequence sources: the explicit inversive generator, seeded random
//! sequences, files and literals.

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::poly::TruncatedSeries;
use crate::sequence::SequencePrefix;

/// Identifier of the generator behind [`random_prefix`], recorded in reports.
pub const PRNG_ID: &str = "chacha8-seed_from_u64/gen_range-v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GeneratorSpec {
    Inversive { p: u64, shift: u64, len: usize },
    Random { q: u64, len: usize, seed: u64 },
    File { path: PathBuf },
    Literal { p: u64, symbols: Vec<u64> },
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<SequencePrefix> {
        match self {
            GeneratorSpec::Inversive { p, shift, len } => inversive_prefix(
                PrimeField::new(*p).map_err(|_| Error::InvalidModulus(*p as u32))?,
                *shift,
                *len,
            ),
            GeneratorSpec::Random { q, len, seed } => {
                Ok(random_prefix(PrimeField::new(*q)?, *len, *seed))
            }
            GeneratorSpec::File { path } => SequencePrefix::read_file(path),
            GeneratorSpec::Literal { p, symbols } => {
                SequencePrefix::from_residues(PrimeField::new(*p)?, symbols.clone())
            }
        }
    }
}

fn require_odd(field: PrimeField) -> Result<()> {
    if field.modulus() == 2 {
        return Err(Error::InvalidModulus(2));
    }
    Ok(())
}

/// `s_n = (n + m)^{p−2} mod p`, the inverse of `n + m` with `0 ↦ 0`.
/// Periodic with period `p`, so `len` may exceed `p`.
pub fn inversive_prefix(field: PrimeField, shift: u64, len: usize) -> Result<SequencePrefix> {
    require_odd(field)?;
    let p = field.p64();
    if shift >= p {
        return Err(Error::RangeError(format!(
            "shift {shift} is not in [0, {p})"
        )));
    }
    let period: Vec<u64> = (0..p.min(len as u64))
        .map(|n| field.pow((n + shift) % p, p - 2))
        .collect();
    let symbols = (0..len).map(|i| period[i % period.len()]).collect();
    Ok(SequencePrefix::from_reduced(field, symbols))
}

/// `len` symbols drawn uniformly from `F_q` by ChaCha8 seeded with
/// `seed_from_u64(seed)`, one `gen_range(0..q)` call per symbol.
pub fn random_prefix(field: PrimeField, len: usize, seed: u64) -> SequencePrefix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = field.p64();
    let symbols = (0..len).map(|_| rng.gen_range(0..q)).collect();
    SequencePrefix::from_reduced(field, symbols)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivativeReport {
    pub p: u32,
    pub n_check: usize,
    /// `(i+1)·s_{i+1}` for `i < n_check`.
    pub derivative: Vec<u64>,
    /// Coefficients of `1/(1−x) − x^{p−1}/(1−x^p)`.
    pub expected: Vec<u64>,
    pub first_mismatch: Option<usize>,
}

impl DerivativeReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Compares the derivative of the inversive generating function with
/// `1/(1−x) − x^{p−1}/(1−x^p)` coefficient by coefficient below `n_check`.
pub fn check_derivative_identity(field: PrimeField, n_check: usize) -> Result<DerivativeReport> {
    require_odd(field)?;
    if n_check == 0 {
        return Err(Error::RangeError("n_check must be at least 1".into()));
    }
    let p = field.p64() as usize;
    let s = inversive_prefix(field, 0, n_check + 1)?;
    let derivative: Vec<u64> = (0..n_check)
        .map(|i| field.mul(field.reduce(i as u64 + 1), s.symbols()[i + 1]))
        .collect();

    let n = n_check;
    let mut one_minus_x = vec![0u64; n];
    one_minus_x[0] = 1;
    if n > 1 {
        one_minus_x[1] = field.neg(1);
    }
    let mut one_minus_xp = vec![0u64; n];
    one_minus_xp[0] = 1;
    if n > p {
        one_minus_xp[p] = field.neg(1);
    }
    let mut x_pm1 = vec![0u64; n];
    if n > p - 1 {
        x_pm1[p - 1] = 1;
    }
    let first = TruncatedSeries::new(field, one_minus_x).inverse()?;
    let second = TruncatedSeries::new(field, x_pm1)
        .mul(&TruncatedSeries::new(field, one_minus_xp).inverse()?)?;
    let expected = first.sub(&second)?.coeffs().to_vec();

    let first_mismatch = derivative.iter().zip(&expected).position(|(a, b)| a != b);
    Ok(DerivativeReport {
        p: field.modulus(),
        n_check,
        derivative,
        expected,
        first_mismatch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn inversive_examples() {
        assert_eq!(
            inversive_prefix(f(5), 0, 5).unwrap().symbols(),
            &[0, 1, 3, 2, 4]
        );
        assert_eq!(
            inversive_prefix(f(5), 0, 7).unwrap().symbols(),
            &[0, 1, 3, 2, 4, 0, 1]
        );
        assert_eq!(
            inversive_prefix(f(5), 1, 4).unwrap().symbols(),
            &[1, 3, 2, 4]
        );
        assert!(inversive_prefix(f(5), 0, 0).unwrap().is_empty());
    }

    #[test]
    fn inversive_rejects_bad_input() {
        assert!(matches!(
            inversive_prefix(f(2), 0, 3),
            Err(Error::InvalidModulus(2))
        ));
        assert!(matches!(
            inversive_prefix(f(7), 7, 3),
            Err(Error::RangeError(_))
        ));
        assert!(GeneratorSpec::Inversive {
            p: 9,
            shift: 0,
            len: 3
        }
        .generate()
        .is_err());
    }

    #[test]
    fn inversive_symbols_are_inverses() {
        for p in (3..=101u64).filter(|&p| crate::field::is_prime(p)) {
            let field = f(p);
            for m in 0..p {
                let s = inversive_prefix(field, m, p as usize).unwrap();
                for (n, &v) in s.symbols().iter().enumerate() {
                    let t = (n as u64 + m) % p;
                    if t == 0 {
                        assert_eq!(v, 0);
                    } else {
                        assert_eq!(v * t % p, 1, "p={p} m={m} n={n}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn shift_consistency(pi in 0usize..6, m in 0u64..200, len in 0usize..300) {
            let p = [3u64, 5, 7, 11, 29, 101][pi];
            let m = m % p;
            let shifted = inversive_prefix(f(p), m, len).unwrap();
            let base = inversive_prefix(f(p), 0, len + m as usize).unwrap();
            prop_assert_eq!(shifted.symbols(), &base.symbols()[m as usize..]);
        }
    }

    #[test]
    fn random_is_deterministic() {
        let a = random_prefix(f(5), 100, 42);
        assert_eq!(a, random_prefix(f(5), 100, 42));
        assert_ne!(a, random_prefix(f(5), 100, 43));
        assert!(random_prefix(f(5), 0, 1).is_empty());
    }

    #[test]
    fn random_test_vectors() {
        // published in the README; changing them breaks reproducibility
        assert_eq!(random_prefix(f(2), 16, 0).symbols(), &[1, 1, 0, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 0, 0, 1]);
        assert_eq!(random_prefix(f(5), 12, 42).symbols(), &[3, 2, 3, 1, 1, 4, 1, 2, 4, 2, 0, 1]);
        assert_eq!(random_prefix(f(101), 8, 1).symbols(), &[40, 8, 60, 22, 28, 71, 46, 15]);
    }

    #[test]
    fn random_binary_is_balanced() {
        let n = 10_000f64;
        for seed in [0u64, 1, 2, 0xdead_beef] {
            let ones = random_prefix(f(2), n as usize, seed)
                .symbols()
                .iter()
                .sum::<u64>() as f64;
            let sigma = (n * 0.25).sqrt();
            assert!((ones - n / 2.0).abs() <= 5.0 * sigma, "seed {seed}: {ones}");
        }
    }

    #[test]
    fn derivative_identity() {
        for p in [3u64, 5, 7, 11, 29, 101] {
            let r = check_derivative_identity(f(p), 3 * p as usize).unwrap();
            assert!(r.passed(), "p={p} mismatch at {:?}", r.first_mismatch);
        }
        let r = check_derivative_identity(f(3), 10).unwrap();
        assert_eq!(r.derivative, vec![1, 1, 0, 1, 1, 0, 1, 1, 0, 1]);
        assert!(check_derivative_identity(f(11), 50).unwrap().passed());
        assert!(check_derivative_identity(f(5), 1).unwrap().passed());
        assert!(check_derivative_identity(f(2), 4).is_err());
    }

    #[test]
    fn derivative_check_detects_corruption() {
        // the right-hand side read independently: 1 except where i ≡ p−1
        let r = check_derivative_identity(f(7), 30).unwrap();
        for (i, &c) in r.expected.iter().enumerate() {
            assert_eq!(c, u64::from(i % 7 != 6));
        }
    }
}
