use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{is_irreducible_with, BivariatePoly, IrreducibilityConfig};
use crate::sequence::SequencePrefix;

use super::{
    check_n, expansion_complexity, solution_space, ComplexityKind, ComplexityResult, SolutionSpace,
    Status,
};

/// Limits for the irreducible-solution search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Enumerate a degree level exhaustively when it holds at most this many
    /// normalized elements of that exact degree.
    pub enum_cap: u128,
    /// Random elements drawn from a level too large to enumerate.
    pub sample_cap: u64,
    /// Seed of the sampler (ChaCha8).
    pub seed: u64,
    /// Cap on trial divisors per irreducibility test.
    pub divisor_budget: u128,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            enum_cap: 1_000_000,
            sample_cap: 10_000,
            seed: 0,
            divisor_budget: crate::poly::DEFAULT_DIVISOR_BUDGET,
        }
    }
}

impl SearchConfig {
    fn irreducibility(&self) -> IrreducibilityConfig {
        IrreducibilityConfig {
            divisor_budget: self.divisor_budget,
            ..IrreducibilityConfig::default()
        }
    }
}

enum Level {
    Found(BivariatePoly),
    /// No irreducible element of this exact degree exists.
    Excluded,
    /// Neither found nor ruled out (sampling, or an undecidable candidate).
    Undecided,
}

struct Search<'a> {
    cfg: &'a SearchConfig,
    irr: IrreducibilityConfig,
    rng: ChaCha8Rng,
    undecided: bool,
}

impl Search<'_> {
    /// Ok(Some(verdict)) or Ok(None) when the budget ran out.
    fn test(&mut self, h: &BivariatePoly) -> Result<Option<bool>> {
        match is_irreducible_with(h, &self.irr) {
            Ok(v) => Ok(Some(v)),
            Err(Error::BudgetExceeded { .. }) => {
                self.undecided = true;
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    /// First irreducible element of exact degree `space.degree_bound`:
    /// basis elements first, then every normalized combination (or random
    /// samples when there are more than `enum_cap`).
    fn level(&mut self, space: &SolutionSpace) -> Result<Level> {
        self.undecided = false;
        let d = space.degree_bound;
        let top = space.top_degree_rows();
        if top == 0 {
            return Ok(Level::Excluded);
        }
        // a common factor x or y makes every element of degree ≥ 2 reducible
        if d >= 2
            && (space.basis.iter().all(BivariatePoly::divisible_by_x)
                || space.basis.iter().all(BivariatePoly::divisible_by_y))
        {
            return Ok(Level::Excluded);
        }
        for h in &space.basis[..top] {
            if self.test(h)? == Some(true) {
                return Ok(Level::Found(h.clone()));
            }
        }
        let k = space.dimension;
        let q = space.field().p64();
        if space.top_degree_normalized_count() <= self.cfg.enum_cap {
            for lead in 0..top {
                let mut tail = vec![0u64; k - lead - 1];
                // the all-zero tail is the basis element itself
                while crate::poly::irreducible_odometer(&mut tail, q) {
                    let mut coeffs = vec![0u64; k];
                    coeffs[lead] = 1;
                    coeffs[lead + 1..].copy_from_slice(&tail);
                    let h = space.combination(&coeffs);
                    if self.test(&h)? == Some(true) {
                        return Ok(Level::Found(h));
                    }
                }
            }
            return Ok(if self.undecided {
                Level::Undecided
            } else {
                Level::Excluded
            });
        }
        for _ in 0..self.cfg.sample_cap {
            let mut coeffs: Vec<u64> = (0..k).map(|_| self.rng.gen_range(0..q)).collect();
            let Some(lead) = coeffs.iter().position(|&c| c != 0) else {
                continue;
            };
            if lead >= top {
                continue;
            }
            let f = space.field();
            let inv = f.inv_nz(coeffs[lead]);
            for c in coeffs.iter_mut() {
                *c = f.mul(*c, inv);
            }
            let h = space.combination(&coeffs);
            if self.test(&h)? == Some(true) {
                return Ok(Level::Found(h));
            }
        }
        Ok(Level::Undecided)
    }
}

/// `E*_N`: the least total degree of an irreducible `h` with
/// `h(x, G(x)) ≡ 0 mod x^N`.
///
/// Degrees are scanned upward from `E_N`. The polynomial `y − Σ s_i x^i`
/// (degree `max{1, deg}`) is always an irreducible solution, so the scan
/// stops there at the latest and is tried first at its own degree.
pub fn i_expansion_complexity(
    s: &SequencePrefix,
    n: usize,
    cfg: &SearchConfig,
) -> Result<ComplexityResult> {
    check_n(s, n)?;
    let e = expansion_complexity(s, n)?;
    if e.value == 0 {
        return Ok(ComplexityResult {
            kind: ComplexityKind::IExpansion,
            ..e
        });
    }
    let field = s.field();
    let fallback = BivariatePoly::y_minus(field, &s.symbols()[..n]);
    let fallback_degree = fallback.total_degree();
    let mut search = Search {
        cfg,
        irr: cfg.irreducibility(),
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        undecided: false,
    };
    let mut first_undecided: Option<u32> = None;
    for d in e.value..=fallback_degree {
        let found = if d == fallback_degree && search.test(&fallback)? == Some(true) {
            Some(fallback.clone())
        } else {
            match search.level(&solution_space(s, d, n)?)? {
                Level::Found(h) => Some(h),
                Level::Excluded => None,
                Level::Undecided => {
                    first_undecided.get_or_insert(d);
                    None
                }
            }
        };
        if let Some(h) = found {
            let witness = h.normalize()?;
            return Ok(match first_undecided {
                None => ComplexityResult {
                    n,
                    value: d,
                    witness: Some(witness),
                    kind: ComplexityKind::IExpansion,
                    status: Status::Exact,
                    upper_bound: None,
                },
                Some(lower) => ComplexityResult {
                    n,
                    value: lower,
                    witness: None,
                    kind: ComplexityKind::IExpansion,
                    status: Status::LowerBound,
                    upper_bound: Some(d),
                },
            });
        }
    }
    unreachable!("y − (s_0 + … + s_{{N−1}} x^{{N−1}}) is an irreducible solution")
}

/// A normalized irreducible `h` of least degree `d ≤ d_max` with
/// `d^2 ≤ len(s)` that annihilates the whole prefix, if any.
pub fn find_defining_poly(s: &SequencePrefix, d_max: u32) -> Result<Option<BivariatePoly>> {
    find_defining_poly_with(s, d_max, &SearchConfig::default())
}

pub fn find_defining_poly_with(
    s: &SequencePrefix,
    d_max: u32,
    cfg: &SearchConfig,
) -> Result<Option<BivariatePoly>> {
    if s.is_empty() {
        return Err(Error::PrefixTooShort { len: 0, needed: 1 });
    }
    let n = s.len();
    let fallback = BivariatePoly::y_minus(s.field(), s.symbols());
    let mut search = Search {
        cfg,
        irr: cfg.irreducibility(),
        rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        undecided: false,
    };
    for d in (1..=d_max).take_while(|&d| (d as usize) * (d as usize) <= n) {
        if fallback.total_degree() == d && search.test(&fallback)? == Some(true) {
            return Ok(Some(fallback.normalize()?));
        }
        if let Level::Found(h) = search.level(&solution_space(s, d, n)?)? {
            return Ok(Some(h.normalize()?));
        }
    }
    Ok(None)
}
