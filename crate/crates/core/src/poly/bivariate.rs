use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeField};

use super::{Monomial, PolyJson, TruncatedSeries, UniPoly};

/// A polynomial in F_p[x, y] stored as a sparse map from monomials to
/// nonzero residues, iterated in the graded monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "PolyJson", try_from = "PolyJson")]
pub struct BivariatePoly {
    field: PrimeField,
    terms: BTreeMap<Monomial, u32>,
}

impl BivariatePoly {
    pub fn zero(field: PrimeField) -> Self {
        BivariatePoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::monomial(field, 0, 0, c)
    }

    /// `c · x^i · y^j`.
    pub fn monomial(field: PrimeField, i: u32, j: u32, c: u64) -> Self {
        let mut p = Self::zero(field);
        p.add_term(Monomial::new(i, j), c);
        p
    }

    pub fn x(field: PrimeField) -> Self {
        Self::monomial(field, 1, 0, 1)
    }

    pub fn y(field: PrimeField) -> Self {
        Self::monomial(field, 0, 1, 1)
    }

    /// Sums the given `(i, j, c)` terms; repeated monomials accumulate.
    pub fn from_terms<I>(field: PrimeField, terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, u64)>,
    {
        let mut p = Self::zero(field);
        for (i, j, c) in terms {
            p.add_term(Monomial::new(i, j), c);
        }
        p
    }

    /// Builds a polynomial from coefficients listed against `monomials`.
    pub(crate) fn from_coefficient_vector(
        field: PrimeField,
        monomials: &[Monomial],
        coeffs: &[u64],
    ) -> Self {
        let terms = monomials
            .iter()
            .zip(coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(&m, &c)| (m, c as u32))
            .collect();
        BivariatePoly { field, terms }
    }

    /// `y − f(x)` for a prefix polynomial `f`.
    pub fn y_minus(field: PrimeField, f: &[u64]) -> Self {
        let mut p = Self::y(field);
        for (i, &c) in f.iter().enumerate() {
            p.add_term(Monomial::new(i as u32, 0), field.neg(field.reduce(c)));
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: u64) {
        let f = self.field;
        let c = f.reduce(c);
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m).or_insert(0);
        let v = f.add(*entry as u64, c);
        if v == 0 {
            self.terms.remove(&m);
        } else {
            *entry = v as u32;
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Terms in graded order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, FieldElement)> + '_ {
        self.terms
            .iter()
            .map(move |(&m, &c)| (m, self.field.element(c as u64)))
    }

    pub(crate) fn raw_terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, u64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c as u64))
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElement {
        let c = self.terms.get(&Monomial::new(i, j)).copied().unwrap_or(0);
        self.field.element(c as u64)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |m| m.degree())
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|m| m.x).max().unwrap_or(0)
    }

    pub fn degree_y(&self) -> u32 {
        self.terms.keys().map(|m| m.y).max().unwrap_or(0)
    }

    pub fn divisible_by_x(&self) -> bool {
        !self.is_zero() && self.terms.keys().all(|m| m.x > 0)
    }

    pub fn divisible_by_y(&self) -> bool {
        !self.is_zero() && self.terms.keys().all(|m| m.y > 0)
    }

    /// `(a_0, …, a_d)`: coefficients of `x^d, x^{d−1}y, …, y^d` in the top
    /// homogeneous part.
    pub fn leading_form(&self) -> Vec<FieldElement> {
        let d = self.total_degree();
        (0..=d).map(|k| self.coeff(d - k, k)).collect()
    }

    /// The top homogeneous part as a polynomial.
    pub fn leading_part(&self) -> Self {
        let d = self.total_degree();
        BivariatePoly {
            field: self.field,
            terms: self
                .terms
                .range(Monomial::new(d, 0)..)
                .map(|(&m, &c)| (m, c))
                .collect(),
        }
    }

    /// Coefficient of the first monomial in leading-first order.
    fn leading_coefficient(&self) -> u64 {
        let d = self.total_degree();
        self.terms
            .range(Monomial::new(d, 0)..)
            .next()
            .map_or(0, |(_, &c)| c as u64)
    }

    pub fn is_normalized(&self) -> bool {
        self.leading_coefficient() == 1
    }

    /// The scalar multiple whose leading form has first nonzero entry 1.
    pub fn normalize(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let c = self.leading_coefficient();
        Ok(self.scale(self.field.inv_nz(c)))
    }

    pub fn scale(&self, s: u64) -> Self {
        let f = self.field;
        let s = f.reduce(s);
        if s == 0 {
            return Self::zero(f);
        }
        BivariatePoly {
            field: f,
            terms: self
                .terms
                .iter()
                .map(|(&m, &c)| (m, f.mul(c as u64, s) as u32))
                .collect(),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                other.field.modulus(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (&m, &c) in &other.terms {
            out.add_term(m, c as u64);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field;
        let mut out = Self::zero(f);
        for (&a, &ca) in &self.terms {
            for (&b, &cb) in &other.terms {
                out.add_term(
                    Monomial::new(a.x + b.x, a.y + b.y),
                    f.mul(ca as u64, cb as u64),
                );
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        self.scale(self.field.p64() - 1)
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Self {
        BivariatePoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(&m, &c)| (Monomial::new(m.y, m.x), c))
                .collect(),
        }
    }

    /// `h(x, G(x)) mod x^N`.
    pub fn eval_at_series(&self, g: &TruncatedSeries) -> Result<TruncatedSeries> {
        if self.field != g.field() {
            return Err(Error::FieldMismatch(
                self.field.modulus(),
                g.field().modulus(),
            ));
        }
        let powers = g.powers(self.degree_y());
        Ok(self.eval_with_powers(&powers))
    }

    /// Evaluation given cached `G^0, …, G^{deg_y h}` (all of one truncation).
    pub(crate) fn eval_with_powers(&self, powers: &[TruncatedSeries]) -> TruncatedSeries {
        let f = self.field;
        let n = powers[0].truncation();
        let mut out = vec![0u64; n];
        for (&m, &c) in &self.terms {
            let shift = m.x as usize;
            if shift >= n {
                continue;
            }
            let pw = powers[m.y as usize].coeffs();
            for (k, &v) in pw[..n - shift].iter().enumerate() {
                if v != 0 {
                    out[k + shift] = f.mul_add(out[k + shift], c as u64, v);
                }
            }
        }
        TruncatedSeries::new(f, out)
    }

    /// Exact division: `Some(q)` with `self = q·divisor`, or `None` if the
    /// divisor does not divide.
    pub fn try_divide(&self, divisor: &Self) -> Result<Option<Self>> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let q = self.divide_exact(divisor);
        if let Some(q) = &q {
            debug_assert_eq!(&q.checked_mul(divisor)?, self);
            if &q.checked_mul(divisor)? != self {
                return Ok(None);
            }
        }
        Ok(q)
    }

    /// Division by a single polynomial in lex order (`y > x`); `{divisor}`
    /// is a Gröbner basis of its ideal, so a leading term that the divisor's
    /// leading term does not divide proves non-divisibility.
    pub(crate) fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        let f = self.field;
        if self.is_zero() {
            return Some(Self::zero(f));
        }
        let (hx, hy) = (self.degree_x() as usize, self.degree_y() as usize);
        let (gx, gy) = (divisor.degree_x() as usize, divisor.degree_y() as usize);
        if gx > hx || gy > hy || divisor.total_degree() > self.total_degree() {
            return None;
        }
        let width = hx + 1;
        let mut rem = vec![0u64; (hy + 1) * width];
        for (&m, &c) in &self.terms {
            rem[m.y as usize * width + m.x as usize] = c as u64;
        }
        let g_terms: Vec<(usize, usize, u64)> = divisor
            .terms
            .iter()
            .map(|(&m, &c)| (m.x as usize, m.y as usize, c as u64))
            .collect();
        // lex leading term of the divisor: highest y, then highest x
        let &(lx, ly, lc) = g_terms.iter().max_by_key(|&&(x, y, _)| (y, x)).unwrap();
        let inv_lc = f.inv_nz(lc);
        let mut quotient = Self::zero(f);
        let mut pos = rem.len();
        loop {
            while pos > 0 && rem[pos - 1] == 0 {
                pos -= 1;
            }
            if pos == 0 {
                return Some(quotient);
            }
            let idx = pos - 1;
            let (ry, rx) = (idx / width, idx % width);
            if ry < ly || rx < lx {
                return None;
            }
            let (sx, sy) = (rx - lx, ry - ly);
            let c = f.mul(rem[idx], inv_lc);
            for &(tx, ty, tc) in &g_terms {
                let x = tx + sx;
                if x > hx {
                    return None;
                }
                let k = (ty + sy) * width + x;
                rem[k] = f.sub(rem[k], f.mul(c, tc));
            }
            quotient.add_term(Monomial::new(sx as u32, sy as u32), c);
        }
    }

    /// Coefficients of `y^0, y^1, …` as polynomials in `x`.
    pub fn to_y_coeffs(&self) -> Vec<UniPoly> {
        let f = self.field;
        let dy = self.degree_y() as usize;
        let dx = self.degree_x() as usize;
        let mut rows = vec![vec![0u64; dx + 1]; dy + 1];
        for (&m, &c) in &self.terms {
            rows[m.y as usize][m.x as usize] = c as u64;
        }
        rows.into_iter().map(|r| UniPoly::new(f, r)).collect()
    }

    pub fn from_y_coeffs(field: PrimeField, coeffs: &[UniPoly]) -> Self {
        let mut p = Self::zero(field);
        for (j, c) in coeffs.iter().enumerate() {
            for (i, &v) in c.coeffs().iter().enumerate() {
                p.add_term(Monomial::new(i as u32, j as u32), v);
            }
        }
        p
    }

    /// Univariate view of a polynomial free of `y`.
    pub(crate) fn as_univariate_in_x(&self) -> Option<UniPoly> {
        if self.degree_y() > 0 {
            return None;
        }
        Some(self.to_y_coeffs().swap_remove(0))
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;

    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;

    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        self.checked_sub(rhs)
            .expect("field mismatch in subtraction")
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;

    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        self.checked_mul(rhs)
            .expect("field mismatch in multiplication")
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;

    fn neg(self) -> BivariatePoly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(p: u64, terms: &[(u32, u32, u64)]) -> BivariatePoly {
        BivariatePoly::from_terms(f(p), terms.iter().copied())
    }

    #[test]
    fn degrees_and_zero_convention() {
        let z = BivariatePoly::zero(f(5));
        assert_eq!(z.total_degree(), 0);
        assert!(z.is_zero() && z.is_constant());
        let h = poly(5, &[(0, 1, 1), (5, 0, 4)]);
        assert_eq!((h.total_degree(), h.degree_x(), h.degree_y()), (5, 5, 1));
        let cancel = poly(5, &[(1, 1, 2), (1, 1, 3)]);
        assert!(cancel.is_zero());
    }

    #[test]
    fn example_witnesses_vanish() {
        let fp = f(5);
        let g = TruncatedSeries::new(fp, vec![0, 0, 0, 0, 0, 1]);
        let xy = poly(5, &[(1, 1, 1)]);
        assert!(xy.eval_at_series(&g).unwrap().is_zero());
        let y_minus_x5 = poly(5, &[(0, 1, 1), (5, 0, 4)]);
        assert!(y_minus_x5.eval_at_series(&g).unwrap().is_zero());
        let one = BivariatePoly::constant(fp, 1);
        assert_eq!(one.eval_at_series(&g).unwrap(), TruncatedSeries::one(fp, 6));
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(
            poly(5, &[(1, 0, 3), (0, 1, 3)]).normalize().unwrap(),
            poly(5, &[(1, 0, 1), (0, 1, 1)])
        );
        // y − x^5 over F_7: leading form is (−1, 0, …, 0), so scale by −1
        assert_eq!(
            poly(7, &[(0, 1, 1), (5, 0, 6)]).normalize().unwrap(),
            poly(7, &[(5, 0, 1), (0, 1, 6)])
        );
        assert_eq!(
            BivariatePoly::constant(f(5), 2).normalize().unwrap(),
            BivariatePoly::constant(f(5), 1)
        );
        assert_eq!(
            BivariatePoly::zero(f(5)).normalize(),
            Err(Error::ZeroPolynomial)
        );
        // first nonzero entry need not be x^d
        let h = poly(5, &[(1, 2, 3), (0, 3, 1), (2, 0, 1)]);
        assert_eq!(h.normalize().unwrap().coeff(1, 2).value(), 1);
    }

    #[test]
    fn division_examples() {
        let fp = f(3);
        let xy = poly(3, &[(1, 1, 1)]);
        assert_eq!(
            xy.try_divide(&BivariatePoly::x(fp)).unwrap(),
            Some(BivariatePoly::y(fp))
        );
        let h = poly(3, &[(0, 1, 1), (5, 0, 2)]);
        assert_eq!(h.try_divide(&BivariatePoly::x(fp)).unwrap(), None);
        let a = poly(3, &[(1, 0, 1), (0, 1, 1)]);
        let b = poly(3, &[(0, 0, 1), (1, 1, 1)]);
        let prod = &a * &b;
        assert_eq!(prod.try_divide(&a).unwrap(), Some(b.clone()));
        assert_eq!(prod.try_divide(&b).unwrap(), Some(a));
        assert_eq!(
            prod.try_divide(&BivariatePoly::zero(fp)),
            Err(Error::ZeroDivisor)
        );
    }

    #[test]
    fn y_coefficient_round_trip() {
        let h = poly(7, &[(0, 0, 3), (2, 1, 5), (0, 3, 1), (4, 0, 2)]);
        let back = BivariatePoly::from_y_coeffs(h.field(), &h.to_y_coeffs());
        assert_eq!(back, h);
    }
}
