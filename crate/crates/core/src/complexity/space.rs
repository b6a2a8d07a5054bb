use crate::error::Result;
use crate::field::PrimeField;
use crate::linalg::left_kernel;
use crate::poly::{monomials_leading, BivariatePoly, Monomial};
use crate::sequence::SequencePrefix;

use super::check_n;

/// `{h : deg h ≤ d, h(x, G(x)) ≡ 0 mod x^N}` with a canonical basis.
///
/// The basis is the reduced row-echelon basis of the kernel in
/// leading-first monomial order, so every basis element is normalized and
/// the elements are listed by ascending pivot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSpace {
    pub degree_bound: u32,
    pub n: usize,
    pub basis: Vec<BivariatePoly>,
    pub dimension: usize,
    /// Rank of the monomial-evaluation matrix.
    pub rank: usize,
    field: PrimeField,
    monomials: Vec<Monomial>,
    vectors: Vec<Vec<u64>>,
}

impl SolutionSpace {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Number of basis elements whose pivot is a monomial of degree exactly
    /// `degree_bound`; these lead the basis.
    pub fn top_degree_rows(&self) -> usize {
        let top = self.degree_bound as usize + 1;
        self.vectors
            .iter()
            .take_while(|v| v.iter().position(|&c| c != 0).is_some_and(|p| p < top))
            .count()
    }

    /// Number of normalized elements of total degree exactly `degree_bound`.
    pub fn top_degree_normalized_count(&self) -> u128 {
        let q = self.field.p64() as u128;
        (0..self.top_degree_rows())
            .map(|i| q.saturating_pow((self.dimension - i - 1) as u32))
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    /// `Σ coeffs[i] · basis[i]`.
    pub fn combination(&self, coeffs: &[u64]) -> BivariatePoly {
        let f = self.field;
        let mut acc = vec![0u64; self.monomials.len()];
        for (v, &c) in self.vectors.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (a, &x) in acc.iter_mut().zip(v) {
                if x != 0 {
                    *a = f.mul_add(*a, c, x);
                }
            }
        }
        BivariatePoly::from_coefficient_vector(f, &self.monomials, &acc)
    }
}

/// Solutions of total degree ≤ `d` of `h(x, G(x)) ≡ 0 mod x^n`.
pub fn solution_space(s: &SequencePrefix, d: u32, n: usize) -> Result<SolutionSpace> {
    check_n(s, n)?;
    let field = s.field();
    let monomials = monomials_leading(d);
    let powers = s.prefix(n).series().powers(d);
    let rows: Vec<Vec<u64>> = monomials
        .iter()
        .map(|m| {
            let shift = m.x as usize;
            let mut row = vec![0u64; n];
            if shift < n {
                row[shift..].copy_from_slice(&powers[m.y as usize].coeffs()[..n - shift]);
            }
            row
        })
        .collect();
    let vectors = left_kernel(field, &rows, n);
    let basis: Vec<BivariatePoly> = vectors
        .iter()
        .map(|v| BivariatePoly::from_coefficient_vector(field, &monomials, v))
        .collect();
    debug_assert!(basis.iter().all(|h| h.eval_with_powers(&powers).is_zero()));
    let dimension = basis.len();
    Ok(SolutionSpace {
        degree_bound: d,
        n,
        basis,
        dimension,
        rank: monomials.len() - dimension,
        field,
        monomials,
        vectors,
    })
}
