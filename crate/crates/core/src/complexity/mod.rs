//! Expansion complexity `E_N`, irreducible-expansion complexity `E*_N`,
//! defining-polynomial recovery and prediction.
//!
//! Everything rests on the monomial-evaluation matrix: rows are the
//! monomials `x^i y^j` of total degree ≤ d (leading-first order), columns
//! the coefficients `0..N` of `x^i G(x)^j mod x^N`. Its left kernel is the
//! space of `h` with `deg h ≤ d` and `h(x, G(x)) ≡ 0 mod x^N`.

mod istar;
mod predict;
mod space;

pub use istar::{
    find_defining_poly, find_defining_poly_with, i_expansion_complexity, SearchConfig,
};
pub use predict::{extend_sequence, Extension, ExtensionStatus};
pub use space::{solution_space, SolutionSpace};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IncrementalRank;
use crate::poly::{monomial_count, monomials_leading, BivariatePoly};
use crate::sequence::SequencePrefix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplexityKind {
    Expansion,
    IExpansion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Exact,
    /// Some degree could only be sampled: `value` is a lower bound on the
    /// true complexity and `upper_bound` the degree of the irreducible
    /// solution eventually found.
    LowerBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityResult {
    pub n: usize,
    pub value: u32,
    pub witness: Option<BivariatePoly>,
    pub kind: ComplexityKind,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper_bound: Option<u32>,
}

impl ComplexityResult {
    fn zero(n: usize, kind: ComplexityKind) -> Self {
        ComplexityResult {
            n,
            value: 0,
            witness: None,
            kind,
            status: Status::Exact,
            upper_bound: None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.status == Status::Exact
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityProfile {
    pub sequence: SequencePrefix,
    /// `E_N` for `N = 1, …, n_max`.
    pub entries: Vec<ComplexityResult>,
    /// `E*_N` for the same range, when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub istar_entries: Option<Vec<ComplexityResult>>,
}

impl ComplexityProfile {
    pub fn values(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e.value).collect()
    }

    /// Violations of the profile invariants (empty when consistent):
    /// the degree bound on each `E_N`, `E_N ≤ E*_N ≤ max{1, N−1}`, and
    /// monotonicity of consecutive exact `E*_N`.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for e in &self.entries {
            if !satisfies_degree_bound(e.value, e.n) {
                out.push(format!(
                    "binom(E_{n}+1, 2) > {n} with E_{n} = {}",
                    e.value,
                    n = e.n
                ));
            }
        }
        if let Some(star) = &self.istar_entries {
            for (e, s) in self.entries.iter().zip(star) {
                if !s.is_exact() {
                    continue;
                }
                let cap = (s.n as u32).saturating_sub(1).max(1);
                if e.value > s.value || s.value > cap {
                    out.push(format!(
                        "E_{n} = {} , E*_{n} = {} breaks E ≤ E* ≤ {cap}",
                        e.value,
                        s.value,
                        n = s.n
                    ));
                }
            }
            for w in star.windows(2) {
                if w[0].is_exact() && w[1].is_exact() && w[0].value > w[1].value {
                    out.push(format!(
                        "E*_{} = {} > E*_{} = {}",
                        w[0].n, w[0].value, w[1].n, w[1].value
                    ));
                }
            }
        }
        out
    }
}

/// `binom(e+1, 2) ≤ n`.
pub fn satisfies_degree_bound(e: u32, n: usize) -> bool {
    (e as u64) * (e as u64 + 1) / 2 <= n as u64
}

/// The largest `d` with `binom(d+1, 2) ≤ n`; no `E_N` can exceed it.
pub fn max_expansion_degree(n: usize) -> u32 {
    let mut d = 0u32;
    while satisfies_degree_bound(d + 1, n) {
        d += 1;
    }
    d
}

/// The `E_N` value a maximal profile takes: the `d` with
/// `binom(d+1, 2) ≤ N < binom(d+2, 2)`.
pub fn maximal_value(n: usize) -> u32 {
    max_expansion_degree(n)
}

pub(crate) fn check_n(s: &SequencePrefix, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::RangeError("N must be at least 1".into()));
    }
    if n > s.len() {
        return Err(Error::PrefixTooShort {
            len: s.len(),
            needed: n,
        });
    }
    Ok(())
}

/// `E_N` with the first normalized reduced-echelon kernel element as witness.
pub fn expansion_complexity(s: &SequencePrefix, n: usize) -> Result<ComplexityResult> {
    check_n(s, n)?;
    if s.is_zero_through(n) {
        return Ok(ComplexityResult::zero(n, ComplexityKind::Expansion));
    }
    for d in 1..=max_expansion_degree(n) {
        let space = solution_space(s, d, n)?;
        if let Some(w) = space.basis.first() {
            return Ok(ComplexityResult {
                n,
                value: d,
                witness: Some(w.clone()),
                kind: ComplexityKind::Expansion,
                status: Status::Exact,
                upper_bound: None,
            });
        }
    }
    unreachable!("the monomials of degree ≤ d are dependent once binom(d+2, 2) > N")
}

/// `E_1, …, E_{n_max}` without witnesses.
///
/// For each degree the evaluation matrix is grown one coefficient column at
/// a time while an echelon basis of the columns is maintained, so the whole
/// profile costs one elimination per degree.
pub fn expansion_profile_values(s: &SequencePrefix, n_max: usize) -> Result<Vec<u32>> {
    if n_max > s.len() {
        return Err(Error::PrefixTooShort {
            len: s.len(),
            needed: n_max,
        });
    }
    let field = s.field();
    let first_nonzero = s.symbols()[..n_max].iter().position(|&v| v != 0);
    let mut values: Vec<Option<u32>> = (1..=n_max)
        .map(|n| match first_nonzero {
            Some(z) if z < n => None,
            _ => Some(0),
        })
        .collect();
    let d_max = max_expansion_degree(n_max);
    let powers = s.prefix(n_max).series().powers(d_max);
    for d in 1..=d_max {
        if values.iter().all(Option::is_some) {
            break;
        }
        let monomials = monomials_leading(d);
        let m = monomial_count(d);
        let mut rank = IncrementalRank::new(field, m);
        for (k, slot) in values.iter_mut().enumerate() {
            if !rank.is_full() {
                let column: Vec<u64> = monomials
                    .iter()
                    .map(|mono| {
                        let i = mono.x as usize;
                        if k >= i {
                            powers[mono.y as usize].coeffs()[k - i]
                        } else {
                            0
                        }
                    })
                    .collect();
                rank.insert(column);
            }
            if slot.is_none() && rank.rank() < m {
                *slot = Some(d);
            }
        }
    }
    Ok(values
        .into_iter()
        .map(|v| v.expect("every E_N is bounded by max_expansion_degree"))
        .collect())
}

/// The `E_N` profile for `N = 1, …, n_max`, with witnesses.
pub fn expansion_profile(s: &SequencePrefix, n_max: usize) -> Result<ComplexityProfile> {
    let values = expansion_profile_values(s, n_max)?;
    let mut entries = Vec::with_capacity(n_max);
    for (idx, &value) in values.iter().enumerate() {
        let n = idx + 1;
        if value == 0 {
            entries.push(ComplexityResult::zero(n, ComplexityKind::Expansion));
            continue;
        }
        let space = solution_space(s, value, n)?;
        entries.push(ComplexityResult {
            n,
            value,
            witness: space.basis.first().cloned(),
            kind: ComplexityKind::Expansion,
            status: Status::Exact,
            upper_bound: None,
        });
    }
    Ok(ComplexityProfile {
        sequence: s.prefix(n_max),
        entries,
        istar_entries: None,
    })
}

/// [`expansion_profile`] plus `E*_N` for every `N`.
pub fn expansion_profile_with_istar(
    s: &SequencePrefix,
    n_max: usize,
    cfg: &SearchConfig,
) -> Result<ComplexityProfile> {
    let mut profile = expansion_profile(s, n_max)?;
    let star = (1..=n_max)
        .map(|n| i_expansion_complexity(s, n, cfg))
        .collect::<Result<Vec<_>>>()?;
    profile.istar_entries = Some(star);
    Ok(profile)
}
