//! Dense univariate polynomials over F_p.
//!
//! Used for contents and gcds of bivariate coefficients, the univariate
//! irreducibility test, and local factorizations in the lifting-based
//! bivariate irreducibility test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::PrimeField;

/// Coefficients ascending; no trailing zeros (the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: PrimeField,
    coeffs: Vec<u64>,
}

impl UniPoly {
    pub fn new(field: PrimeField, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c = field.reduce(*c);
        }
        let mut p = UniPoly { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: PrimeField) -> Self {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(field: PrimeField, c: u64) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: PrimeField) -> Self {
        Self::new(field, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, a: u64) -> u64 {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| f.mul_add(c, acc, a))
    }

    pub fn add(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Self::new(f, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Self::new(f, c)
    }

    pub fn scale(&self, s: u64) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|&c| f.mul(c, s)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let f = self.field;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(out[i + j], a, b);
            }
        }
        Self::new(f, out)
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let f = self.field;
        let dd = divisor.degree().expect("division by zero polynomial");
        if self.coeffs.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let inv_lead = f.inv_nz(divisor.lead());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(rem[k + dd], inv_lead);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, b));
            }
        }
        rem.truncate(dd);
        (Self::new(f, quot), Self::new(f, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv_nz(self.lead()))
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::constant(f, 1), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::constant(f, 1));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let k = f.inv_nz(r0.lead());
        (r0.scale(k), s0.scale(k), t0.scale(k))
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.reduce(i as u64)))
            .collect();
        Self::new(f, c)
    }

    /// `self(x + a)`.
    pub fn shift(&self, a: u64) -> Self {
        let f = self.field;
        // Horner in the ring: acc = acc·(x + a) + c
        let mut acc: Vec<u64> = Vec::with_capacity(self.coeffs.len());
        for &c in self.coeffs.iter().rev() {
            acc.push(0);
            for k in (1..acc.len()).rev() {
                acc[k] = f.mul_add(acc[k - 1], acc[k], a);
            }
            acc[0] = f.mul_add(c, acc[0], a);
        }
        Self::new(f, acc)
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::constant(self.field, 1).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).is_constant()
            }
        }
    }

    /// Rabin's test: `f` of degree `n` is irreducible iff `x^{p^n} ≡ x`
    /// and `gcd(x^{p^{n/r}} − x, f) = 1` for every prime `r | n`.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let p = self.field.p64();
        let x = Self::x(self.field);
        // frob[k] = x^{p^k} mod f
        let mut frob = Vec::with_capacity(n + 1);
        frob.push(x.rem(&f));
        for k in 1..=n {
            let next = frob[k - 1].pow_mod(p, &f);
            frob.push(next);
        }
        if frob[n] != x.rem(&f) {
            return false;
        }
        prime_factors(n)
            .into_iter()
            .all(|r| frob[n / r].sub(&x).gcd(&f).is_constant())
    }

    /// Factors a squarefree polynomial into monic irreducibles (ascending
    /// degree, deterministic). Panics if the input is not squarefree.
    pub fn factor_squarefree(&self) -> Vec<UniPoly> {
        assert!(
            self.is_squarefree(),
            "factor_squarefree on a non-squarefree input"
        );
        let field = self.field;
        let p = field.p64();
        let x = Self::x(field);
        let mut rest = self.monic();
        let mut out = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
        let mut h = x.clone();
        let mut i = 0;
        while rest.degree().unwrap_or(0) >= 2 * (i + 1) {
            i += 1;
            h = h.pow_mod(p, &rest);
            let g = h.sub(&x).gcd(&rest);
            if !g.is_constant() {
                equal_degree_split(&g, i, &mut rng, &mut out);
                rest = rest.div_rem(&g).0;
                h = h.rem(&rest);
            }
        }
        if !rest.is_constant() {
            out.push(rest);
        }
        out.sort_by(|a, b| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.coeffs.cmp(&b.coeffs))
        });
        out
    }
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a monic squarefree `g` whose irreducible factors all have degree
/// `k` (Cantor–Zassenhaus; trace map in characteristic 2).
fn equal_degree_split(g: &UniPoly, k: usize, rng: &mut ChaCha8Rng, out: &mut Vec<UniPoly>) {
    let n = g.degree().unwrap();
    if n == k {
        out.push(g.monic());
        return;
    }
    let field = g.field;
    let p = field.p64();
    loop {
        let a = UniPoly::new(field, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.is_constant() {
            continue;
        }
        let candidate = if p == 2 {
            // Tr(a) = a + a^2 + … + a^{2^{k−1}}
            let mut t = a.rem(g);
            let mut acc = t.clone();
            for _ in 1..k {
                t = t.mul(&t).rem(g);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^{(p^k − 1)/2} = (a^{1 + p + … + p^{k−1}})^{(p−1)/2}
            let mut t = a.rem(g);
            let mut norm = t.clone();
            for _ in 1..k {
                t = t.pow_mod(p, g);
                norm = norm.mul(&t).rem(g);
            }
            norm.pow_mod((p - 1) / 2, g)
                .sub(&UniPoly::constant(field, 1))
        };
        let d = candidate.gcd(g);
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < n {
            let other = g.div_rem(&d).0;
            equal_degree_split(&d, k, rng, out);
            equal_degree_split(&other, k, rng, out);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(p: u64, c: &[u64]) -> UniPoly {
        UniPoly::new(f(p), c.to_vec())
    }

    #[test]
    fn division_identity() {
        let a = poly(7, &[3, 0, 5, 1, 6]);
        let b = poly(7, &[2, 1, 3]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = poly(11, &[1, 2, 3, 4]);
        let b = poly(11, &[5, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, a.gcd(&b));
    }

    #[test]
    fn shift_matches_evaluation() {
        let a = poly(13, &[4, 7, 0, 2, 9]);
        let s = a.shift(5);
        for v in 0..13 {
            assert_eq!(s.eval(v), a.eval((v + 5) % 13));
        }
    }

    #[test]
    fn irreducibility_matches_root_and_factor_search() {
        // over F_3, every polynomial of degree <= 4: reducible iff it has a
        // monic factor of degree 1 or 2
        let f3 = f(3);
        let mut monic_small: Vec<UniPoly> = Vec::new();
        for d in 1..=2usize {
            for code in 0..3u64.pow(d as u32) {
                let mut c: Vec<u64> = (0..d).map(|i| code / 3u64.pow(i as u32) % 3).collect();
                c.push(1);
                monic_small.push(UniPoly::new(f3, c));
            }
        }
        for d in 1..=4usize {
            for code in 0..3u64.pow(d as u32) {
                let mut c: Vec<u64> = (0..d).map(|i| code / 3u64.pow(i as u32) % 3).collect();
                c.push(1);
                let g = UniPoly::new(f3, c);
                let reducible = monic_small
                    .iter()
                    .any(|h| h.degree().unwrap() < d && g.rem(h).is_zero());
                assert_eq!(g.is_irreducible(), !reducible, "{:?}", g.coeffs());
            }
        }
    }

    #[test]
    fn factorization_recovers_product() {
        for p in [2u64, 3, 5, 31, 2_147_483_647] {
            let fp = f(p);
            let factors = [
                UniPoly::new(fp, vec![1, 1]),
                UniPoly::new(fp, vec![3 % p, 0, 1]),
                UniPoly::new(fp, vec![1, 1, 0, 1]),
                UniPoly::new(fp, vec![2 % p, 5 % p, 1]),
            ];
            let mut prod = UniPoly::constant(fp, 1);
            for g in &factors {
                prod = prod.mul(g);
            }
            if !prod.is_squarefree() {
                continue;
            }
            let got = prod.factor_squarefree();
            let mut back = UniPoly::constant(fp, 1);
            for g in &got {
                assert!(g.is_irreducible());
                back = back.mul(g);
            }
            assert_eq!(back, prod.monic(), "p = {p}");
        }
    }
}
