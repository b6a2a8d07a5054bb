use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

/// A power series truncated mod `x^N`; `coeffs[i]` is the coefficient of `x^i`
/// and `coeffs.len() == N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TruncatedSeries {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl TruncatedSeries {
    pub fn new(field: PrimeField, coeffs: Vec<u64>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        TruncatedSeries { field, coeffs }
    }

    pub fn zero(field: PrimeField, n: usize) -> Self {
        TruncatedSeries {
            field,
            coeffs: vec![0; n],
        }
    }

    /// `1 mod x^n` (the zero series when `n = 0`).
    pub fn one(field: PrimeField, n: usize) -> Self {
        let mut s = Self::zero(field, n);
        if n > 0 {
            s.coeffs[0] = 1;
        }
        s
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.element(self.coeffs[i])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Index of the first nonzero coefficient, `None` for the zero series.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch(
                self.truncation(),
                other.truncation(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(TruncatedSeries { field: f, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(TruncatedSeries { field: f, coeffs })
    }

    /// Multiplicative inverse mod `x^N`; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let f = self.field;
        let n = self.truncation();
        if n == 0 {
            return Ok(self.clone());
        }
        let inv0 = f.inv(self.coeffs[0])?;
        let mut out = vec![0u64; n];
        out[0] = inv0;
        for k in 1..n {
            let s = (1..=k).fold(0, |acc, i| f.mul_add(acc, self.coeffs[i], out[k - i]));
            out[k] = f.neg(f.mul(s, inv0));
        }
        Ok(TruncatedSeries {
            field: f,
            coeffs: out,
        })
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.truncation();
        let mut out = vec![0u64; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (k, &b) in other.coeffs[..n - i].iter().enumerate() {
                if b != 0 {
                    out[i + k] = f.mul_add(out[i + k], a, b);
                }
            }
        }
        TruncatedSeries {
            field: f,
            coeffs: out,
        }
    }

    /// `G^0, G^1, …, G^max_power`, all mod `x^N`.
    pub fn powers(&self, max_power: u32) -> Vec<TruncatedSeries> {
        let mut out = Vec::with_capacity(max_power as usize + 1);
        out.push(Self::one(self.field, self.truncation()));
        for j in 1..=max_power as usize {
            let next = out[j - 1].mul_unchecked(self);
            out.push(next);
        }
        out
    }

    /// The same series read mod `x^n` for `n ≤ N`.
    pub fn truncate(&self, n: usize) -> Self {
        TruncatedSeries {
            field: self.field,
            coeffs: self.coeffs[..n.min(self.coeffs.len())].to_vec(),
        }
    }
}
