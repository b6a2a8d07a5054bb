//! Truncated power series and bivariate polynomial algebra over F_p.
//!
//! Monomial order used everywhere (coefficient vectors, JSON, enumeration):
//! graded by total degree, and within a degree `t` the order
//! `x^t, x^{t−1}y, …, y^t`. The "leading-first" order used for kernel bases
//! lists the degrees from the top down but keeps the same order inside each
//! degree, so the first nonzero entry of a polynomial in that order is the
//! first nonzero entry of its top homogeneous part.

mod bivariate;
mod enumerate;
mod format;
mod irreducible;
mod series;
mod univariate;

pub use bivariate::BivariatePoly;
pub use enumerate::{
    carlitz_estimate, count_normalized, count_normalized_irreducible, enumerate_normalized,
    CarlitzEstimate, NormalizedPolys, ENUMERATION_CAP,
};
pub use format::PolyJson;
pub use irreducible::{
    is_irreducible, is_irreducible_by_lifting, is_irreducible_by_trial_division,
    is_irreducible_with, IrreducibilityConfig, DEFAULT_DIVISOR_BUDGET,
};
pub use series::TruncatedSeries;
pub use univariate::UniPoly;

pub(crate) use irreducible::odometer as irreducible_odometer;

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

/// The monomial `x^x · y^y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    #[inline]
    pub fn degree(self) -> u32 {
        self.x + self.y
    }

    /// Position in the graded order of M(d), for any `d ≥ degree`.
    #[inline]
    pub fn graded_index(self) -> usize {
        let t = self.degree() as usize;
        t * (t + 1) / 2 + self.y as usize
    }

    /// Position in the leading-first order of M(d).
    #[inline]
    pub fn leading_index(self, d: u32) -> usize {
        let t = self.degree() as usize;
        monomial_count(d) - (t + 1) * (t + 2) / 2 + self.y as usize
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.degree(), self.y).cmp(&(other.degree(), other.y))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `#M(d) = binom(d+2, 2)`.
#[inline]
pub fn monomial_count(d: u32) -> usize {
    let d = d as usize;
    (d + 1) * (d + 2) / 2
}

/// M(d) in graded order.
pub fn monomials_graded(d: u32) -> Vec<Monomial> {
    (0..=d)
        .flat_map(|t| (0..=t).map(move |j| Monomial::new(t - j, j)))
        .collect()
}

/// M(d) in leading-first order.
pub fn monomials_leading(d: u32) -> Vec<Monomial> {
    (0..=d)
        .rev()
        .flat_map(|t| (0..=t).map(move |j| Monomial::new(t - j, j)))
        .collect()
}

/// `binom(n, 2)`.
#[inline]
pub fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}
