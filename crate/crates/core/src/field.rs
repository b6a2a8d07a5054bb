//! Exact arithmetic in prime fields F_p with p < 2^31.
//!
//! Hot loops work directly on reduced residues (`u64` values in `[0, p)`)
//! through the methods of [`PrimeField`]; [`FieldElement`] is the checked,
//! field-tagged value type used at API boundaries.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exclusive upper bound on supported moduli.
pub const MODULUS_LIMIT: u64 = 1 << 31;

/// The prime field F_p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Builds F_p after a deterministic primality check.
    pub fn new(p: u64) -> Result<Self> {
        if p >= MODULUS_LIMIT {
            return Err(Error::OutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub(crate) fn p64(self) -> u64 {
        self.p as u64
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u64 {
        v % self.p64()
    }

    /// Reduces a signed integer into `[0, p)`.
    pub fn reduce_signed(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p64() {
            s - self.p64()
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p64() - b
        }
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p64() - a
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a * b) % self.p64()
    }

    /// `a + b * c`, the elimination kernel's inner step.
    #[inline]
    pub fn mul_add(self, a: u64, b: u64, c: u64) -> u64 {
        (a + b * c) % self.p64()
    }

    /// Square-and-multiply; `0^0 = 1`.
    pub fn pow(self, base: u64, mut e: u64) -> u64 {
        let mut b = base % self.p64();
        let mut acc = 1 % self.p64();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem.
    pub fn inv(self, a: u64) -> Result<u64> {
        let a = a % self.p64();
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.p64() - 2))
    }

    /// Inverse of a residue already known to be nonzero.
    #[inline]
    pub(crate) fn inv_nz(self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p64()));
        self.pow(a, self.p64() - 2)
    }

    pub fn element(self, v: u64) -> FieldElement {
        FieldElement {
            value: (v % self.p64()) as u32,
            field: self,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.element(0)
    }

    pub fn one(self) -> FieldElement {
        self.element(1)
    }

    /// Iterates the residues `0, 1, …, p−1`.
    pub fn residues(self) -> impl Iterator<Item = u64> {
        0..self.p64()
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p as u64
    }
}

/// An element of a specific prime field. The value is always reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    field: PrimeField,
}

impl FieldElement {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn field(self) -> PrimeField {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: FieldElement) -> Result<PrimeField> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.p, other.field.p));
        }
        Ok(self.field)
    }

    fn wrap(field: PrimeField, v: u64) -> FieldElement {
        FieldElement {
            value: v as u32,
            field,
        }
    }

    pub fn checked_add(self, rhs: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(rhs)?;
        Ok(Self::wrap(f, f.add(self.value as u64, rhs.value as u64)))
    }

    pub fn checked_sub(self, rhs: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(rhs)?;
        Ok(Self::wrap(f, f.sub(self.value as u64, rhs.value as u64)))
    }

    pub fn checked_mul(self, rhs: FieldElement) -> Result<FieldElement> {
        let f = self.same_field(rhs)?;
        Ok(Self::wrap(f, f.mul(self.value as u64, rhs.value as u64)))
    }

    pub fn inv(self) -> Result<FieldElement> {
        Ok(Self::wrap(self.field, self.field.inv(self.value as u64)?))
    }

    pub fn pow(self, e: u64) -> FieldElement {
        Self::wrap(self.field, self.field.pow(self.value as u64, e))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

// Operator forms panic on a field mismatch; use the `checked_*` methods
// when operands may come from different fields.

impl Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;

    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.checked_sub(rhs)
            .expect("field mismatch in subtraction")
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;

    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.checked_mul(rhs)
            .expect("field mismatch in multiplication")
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        Self::wrap(self.field, self.field.neg(self.value as u64))
    }
}

fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u64(acc, b, m);
        }
        b = mul_mod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for every `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn construction() {
        assert_eq!(f(11).modulus(), 11);
        assert_eq!(f(2).modulus(), 2);
        assert_eq!(PrimeField::new(15), Err(Error::NotPrime(15)));
        assert_eq!(PrimeField::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeField::new(1 << 31), Err(Error::OutOfRange(1 << 31)));
        assert!(PrimeField::new((1 << 31) - 1).is_ok());
    }

    #[test]
    fn primality_matches_trial_division() {
        let naive = |n: u64| {
            n >= 2
                && (2..)
                    .take_while(|d| d * d <= n)
                    .all(|d| !n.is_multiple_of(d))
        };
        for n in 0..20_000 {
            assert_eq!(is_prime(n), naive(n), "n = {n}");
        }
        // strong pseudoprimes to small bases
        for n in [
            2047u64,
            1_373_653,
            25_326_001,
            3_215_031_751,
            3_825_123_056_546_413_051,
        ] {
            assert!(!is_prime(n));
        }
    }

    #[test]
    fn small_examples() {
        let f5 = f(5);
        assert_eq!((f5.element(3) + f5.element(4)).value(), 2);
        assert_eq!((f5.element(3) * f5.element(4)).value(), 2);
        assert_eq!((-f5.element(0)).value(), 0);
        assert_eq!(f(11).element(2).inv().unwrap().value(), 6);
        assert_eq!(f5.element(4).inv().unwrap().value(), 4);
        assert_eq!(f(7).element(0).inv(), Err(Error::DivisionByZero));
        assert_eq!(f(7).element(0).pow(5).value(), 0);
        assert_eq!(f(7).element(5).pow(0).value(), 1);
        assert_eq!(f(7).element(0).pow(0).value(), 1);
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let f11 = f(11);
        let mut acc = 1u64;
        for _ in 0..9 {
            acc = acc * 3 % 11;
        }
        assert_eq!(acc, 4);
        assert_eq!(f11.element(3).pow(9).value(), 4);
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = f(5).element(1);
        let b = f(7).element(1);
        assert_eq!(a.checked_add(b), Err(Error::FieldMismatch(5, 7)));
        assert_eq!(a.checked_sub(b), Err(Error::FieldMismatch(5, 7)));
        assert_eq!(a.checked_mul(b), Err(Error::FieldMismatch(5, 7)));
    }

    #[test]
    fn fermat_inverse_exhaustive() {
        for p in (3..=101).filter(|&p| is_prime(p)) {
            let fp = f(p);
            for n in 1..p {
                let e = fp.element(n);
                let i = e.inv().unwrap();
                assert_eq!(e.pow(p - 2), i);
                assert_eq!((e * i).value(), 1);
                assert_eq!(i.inv().unwrap(), e);
            }
        }
    }

    #[test]
    fn agrees_with_bigint_reference() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u64, 3, 5, 11, 101, (1 << 31) - 1] {
            let fp = f(p);
            let bp = BigUint::from(p);
            for _ in 0..10_000 {
                let (a, b, c) = (
                    rng.gen_range(0..p),
                    rng.gen_range(0..p),
                    rng.gen_range(0..p),
                );
                let (ba, bb, bc) = (BigUint::from(a), BigUint::from(b), BigUint::from(c));
                let expect = |v: BigUint| -> u64 { (v % &bp).try_into().unwrap() };
                assert_eq!(fp.add(a, b), expect(&ba + &bb));
                assert_eq!(fp.mul(a, b), expect(&ba * &bb));
                assert_eq!(fp.sub(a, b), expect(&ba + &bp - &bb));
                assert_eq!(fp.mul_add(a, b, c), expect(&ba + &bb * &bc));
                assert_eq!(fp.pow(a, c), expect(ba.modpow(&bc, &bp)));
            }
        }
    }
}
