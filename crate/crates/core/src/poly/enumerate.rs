use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::PrimeField;

use super::irreducible::{odometer, HomogeneousForms};
use super::{is_irreducible, monomial_count, BivariatePoly, Monomial};

/// Largest enumeration `enumerate_normalized` will start.
pub const ENUMERATION_CAP: u128 = 100_000_000;

/// Number of normalized polynomials of total degree exactly `d`:
/// `(q^{d+1} − 1)/(q − 1) · q^{binom(d+1, 2)}` (saturating).
pub fn count_normalized(field: PrimeField, d: u32) -> u128 {
    let q = field.p64() as u128;
    let forms = (0..=d).fold(0u128, |acc, k| acc.saturating_add(q.saturating_pow(k)));
    let lower = if d == 0 {
        1
    } else {
        q.saturating_pow(monomial_count(d - 1) as u32)
    };
    forms.saturating_mul(lower)
}

/// Every normalized polynomial of total degree exactly `d`, once each.
///
/// Order: top homogeneous forms by the position of their leading 1 and
/// then lexicographically in `(a_0, …, a_d)`; for each form, the lower
/// coefficients run lexicographically over the lower monomials listed in
/// leading-first order (so the constant term varies fastest).
pub fn enumerate_normalized(field: PrimeField, d: u32) -> Result<NormalizedPolys> {
    let needed = count_normalized(field, d);
    if needed > ENUMERATION_CAP {
        return Err(Error::BudgetExceeded {
            needed,
            cap: ENUMERATION_CAP,
        });
    }
    let low_monomials = if d == 0 {
        Vec::new()
    } else {
        super::monomials_leading(d - 1)
    };
    let mut forms = HomogeneousForms::new(field, d);
    let form = forms.next();
    Ok(NormalizedPolys {
        field,
        d,
        forms,
        form,
        lower: vec![0; low_monomials.len()],
        low_monomials,
    })
}

pub struct NormalizedPolys {
    field: PrimeField,
    d: u32,
    forms: HomogeneousForms,
    form: Option<Vec<u64>>,
    lower: Vec<u64>,
    low_monomials: Vec<Monomial>,
}

impl Iterator for NormalizedPolys {
    type Item = BivariatePoly;

    fn next(&mut self) -> Option<BivariatePoly> {
        let form = self.form.as_ref()?;
        // lower digits are most-significant first in leading-first order
        let digits: Vec<u64> = self.lower.iter().rev().copied().collect();
        let mut g =
            BivariatePoly::from_coefficient_vector(self.field, &self.low_monomials, &digits);
        for (k, &c) in form.iter().enumerate() {
            g.add_term(Monomial::new(self.d - k as u32, k as u32), c);
        }
        if !odometer(&mut self.lower, self.field.p64()) {
            self.form = self.forms.next();
        }
        Some(g)
    }
}

/// Exact `I_2(d)`: the number of normalized irreducible polynomials of
/// total degree `d`, by filtering the full enumeration.
pub fn count_normalized_irreducible(field: PrimeField, d: u32) -> Result<u64> {
    if d == 0 {
        return Ok(0);
    }
    enumerate_normalized(field, d)?
        .par_bridge()
        .map(|h| is_irreducible(&h).map(u64::from))
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// Main term and error scale of Carlitz's estimate
/// `I_2(d) = q^{binom(d+2,2)}/(q − 1) + O(q^{binom(d+1,2)})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarlitzEstimate {
    pub main_term: BigRational,
    pub error_scale: BigUint,
}

impl CarlitzEstimate {
    pub fn main_term_f64(&self) -> f64 {
        self.main_term.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn error_scale_f64(&self) -> f64 {
        self.error_scale.to_f64().unwrap_or(f64::INFINITY)
    }

    /// `|exact − main| / error_scale`.
    pub fn deviation_ratio(&self, exact: u64) -> f64 {
        let diff = BigRational::from_integer(exact.into()) - &self.main_term;
        let ratio = diff.abs() / BigRational::from_integer(self.error_scale.clone().into());
        ratio.to_f64().unwrap_or(f64::INFINITY)
    }
}

pub fn carlitz_estimate(field: PrimeField, d: u32) -> CarlitzEstimate {
    let q = BigUint::from(field.modulus());
    let main = q.pow(monomial_count(d) as u32);
    let error_exp = if d == 0 {
        0
    } else {
        monomial_count(d - 1) as u32
    };
    let error_scale = q.pow(error_exp);
    CarlitzEstimate {
        main_term: BigRational::new(main.into(), (q - BigUint::one()).into()),
        error_scale,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn small_enumerations() {
        let e0: Vec<_> = enumerate_normalized(f(2), 0).unwrap().collect();
        assert_eq!(e0, vec![BivariatePoly::constant(f(2), 1)]);
        let e1: HashSet<_> = enumerate_normalized(f(2), 1).unwrap().collect();
        let fp = f(2);
        let expect: HashSet<_> = [
            vec![(1, 0, 1)],
            vec![(1, 0, 1), (0, 0, 1)],
            vec![(0, 1, 1)],
            vec![(0, 1, 1), (0, 0, 1)],
            vec![(1, 0, 1), (0, 1, 1)],
            vec![(1, 0, 1), (0, 1, 1), (0, 0, 1)],
        ]
        .into_iter()
        .map(|t| BivariatePoly::from_terms(fp, t))
        .collect();
        assert_eq!(e1, expect);
        assert_eq!(enumerate_normalized(f(3), 1).unwrap().count(), 12);
    }

    #[test]
    fn enumeration_is_complete_and_distinct() {
        for (p, d) in [(2u64, 3u32), (3, 2), (5, 1)] {
            let all: Vec<_> = enumerate_normalized(f(p), d).unwrap().collect();
            let distinct: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(all.len() as u128, count_normalized(f(p), d));
            assert_eq!(distinct.len(), all.len());
            assert!(all
                .iter()
                .all(|h| h.is_normalized() && h.total_degree() == d));
        }
    }

    #[test]
    fn enumeration_budget() {
        assert!(matches!(
            enumerate_normalized(f(7), 5),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn carlitz_substitution() {
        let e = carlitz_estimate(f(2), 1);
        assert_eq!(e.main_term, BigRational::from_integer(8.into()));
        assert_eq!(e.error_scale, BigUint::from(2u32));
        let e = carlitz_estimate(f(3), 1);
        assert_eq!(e.main_term, BigRational::new(27.into(), 2.into()));
        assert_eq!(e.error_scale, BigUint::from(3u32));
        let e = carlitz_estimate(f(2), 2);
        assert_eq!(e.main_term, BigRational::from_integer(64.into()));
        assert_eq!(e.error_scale, BigUint::from(8u32));
    }

    #[test]
    fn degree_one_counts() {
        for p in [2u64, 3, 5] {
            assert_eq!(count_normalized_irreducible(f(p), 1).unwrap(), p * (p + 1));
        }
    }
}
