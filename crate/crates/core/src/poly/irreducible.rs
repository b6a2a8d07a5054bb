//! Irreducibility of bivariate polynomials over F_p.
//!
//! Decision order: cheap structural shortcuts, then a lifting test
//! (specialize `x = a`, factor the univariate image, lift the factors
//! `t`-adically with `t = x − a` and try every recombination as a true
//! divisor), then trial division by normalized candidates, restricted to
//! those whose top homogeneous part divides that of the input. Lifting
//! needs a point where the image keeps its `y`-degree and is squarefree;
//! small fields may have none, which is where trial division takes over.

use crate::error::{Error, Result};
use crate::field::PrimeField;

use super::{monomial_count, BivariatePoly, Monomial, UniPoly};

/// Default cap on the number of trial divisors.
pub const DEFAULT_DIVISOR_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IrreducibilityConfig {
    /// Maximum number of candidate divisors trial division may enumerate.
    pub divisor_budget: u128,
    /// Maximum number of specialization points tried per orientation.
    pub max_lift_points: u64,
}

impl Default for IrreducibilityConfig {
    fn default() -> Self {
        IrreducibilityConfig {
            divisor_budget: DEFAULT_DIVISOR_BUDGET,
            max_lift_points: 64,
        }
    }
}

/// Whether `h` is irreducible in F_p[x, y] (nonzero constants are units and
/// therefore not irreducible).
pub fn is_irreducible(h: &BivariatePoly) -> Result<bool> {
    is_irreducible_with(h, &IrreducibilityConfig::default())
}

pub fn is_irreducible_with(h: &BivariatePoly, cfg: &IrreducibilityConfig) -> Result<bool> {
    if let Some(v) = structural_verdict(h)? {
        return Ok(v);
    }
    if let Some(v) = lifting_verdict(h, cfg.max_lift_points) {
        return Ok(v);
    }
    trial_division_verdict(h, cfg.divisor_budget)
}

/// Shortcuts plus lifting only; `None` when no usable specialization exists.
pub fn is_irreducible_by_lifting(h: &BivariatePoly) -> Result<Option<bool>> {
    if let Some(v) = structural_verdict(h)? {
        return Ok(Some(v));
    }
    Ok(lifting_verdict(h, u64::MAX))
}

/// Plain trial division (no shortcuts beyond degree ≤ 1).
pub fn is_irreducible_by_trial_division(h: &BivariatePoly, budget: u128) -> Result<bool> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match h.total_degree() {
        0 => Ok(false),
        1 => Ok(true),
        _ => trial_division_verdict(h, budget),
    }
}

fn structural_verdict(h: &BivariatePoly) -> Result<Option<bool>> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match h.total_degree() {
        0 => return Ok(Some(false)),
        1 => return Ok(Some(true)),
        _ => {}
    }
    if h.divisible_by_x() || h.divisible_by_y() {
        return Ok(Some(false));
    }
    if h.degree_y() == 0 {
        return Ok(Some(h.as_univariate_in_x().unwrap().is_irreducible()));
    }
    if h.degree_x() == 0 {
        return Ok(Some(
            h.swap_xy().as_univariate_in_x().unwrap().is_irreducible(),
        ));
    }
    // a nonconstant content in either variable splits off
    if !content(&h.to_y_coeffs()).is_constant()
        || !content(&h.swap_xy().to_y_coeffs()).is_constant()
    {
        return Ok(Some(false));
    }
    // primitive and linear in one variable (covers the y − f(x) witnesses)
    if h.degree_y() == 1 || h.degree_x() == 1 {
        return Ok(Some(true));
    }
    Ok(None)
}

fn content(coeffs: &[UniPoly]) -> UniPoly {
    let field = coeffs[0].field();
    coeffs
        .iter()
        .fold(UniPoly::zero(field), |acc, c| acc.gcd(c))
}

fn lifting_verdict(h: &BivariatePoly, max_points: u64) -> Option<bool> {
    let p = h.field().p64();
    for oriented in [h.clone(), h.swap_xy()] {
        let coeffs = oriented.to_y_coeffs();
        let n = coeffs.len() - 1;
        for a in 0..p.min(max_points) {
            if coeffs[n].eval(a) == 0 {
                continue;
            }
            let image = UniPoly::new(h.field(), coeffs.iter().map(|c| c.eval(a)).collect());
            if !image.is_squarefree() {
                continue;
            }
            if let Some(v) = lift_and_recombine(&oriented, &coeffs, a, &image) {
                return Some(v);
            }
        }
    }
    None
}

/// Polynomials in `y` whose coefficients are truncated series in `t`:
/// `c[j][k]` is the coefficient of `y^j t^k`.
#[derive(Debug, Clone)]
struct SeriesPoly {
    c: Vec<Vec<u64>>,
}

impl SeriesPoly {
    fn from_uni(u: &UniPoly, prec: usize) -> Self {
        let c = (0..=u.degree().unwrap())
            .map(|j| {
                let mut row = vec![0u64; prec];
                row[0] = u.coeff(j);
                row
            })
            .collect();
        SeriesPoly { c }
    }

    fn mul(&self, other: &Self, field: PrimeField, prec: usize) -> Self {
        let mut c = vec![vec![0u64; prec]; self.c.len() + other.c.len() - 1];
        for (j1, a) in self.c.iter().enumerate() {
            for (j2, b) in other.c.iter().enumerate() {
                let row = &mut c[j1 + j2];
                for (k1, &av) in a.iter().enumerate() {
                    if av == 0 {
                        continue;
                    }
                    for (k2, &bv) in b[..prec - k1].iter().enumerate() {
                        row[k1 + k2] = field.mul_add(row[k1 + k2], av, bv);
                    }
                }
            }
        }
        SeriesPoly { c }
    }
}

fn series_inverse(a: &[u64], field: PrimeField) -> Vec<u64> {
    let prec = a.len();
    let mut inv = vec![0u64; prec];
    inv[0] = field.inv_nz(a[0]);
    for k in 1..prec {
        let mut s = 0;
        for i in 1..=k {
            s = field.mul_add(s, a[i], inv[k - i]);
        }
        inv[k] = field.neg(field.mul(s, inv[0]));
    }
    inv
}

fn lift_and_recombine(
    h: &BivariatePoly,
    coeffs: &[UniPoly],
    a: u64,
    image: &UniPoly,
) -> Option<bool> {
    let field = h.field();
    let local = image.factor_squarefree();
    if local.len() == 1 {
        return Some(true);
    }
    if local.len() > 20 {
        return None;
    }
    let n = coeffs.len() - 1;
    let prec = h.degree_x() as usize + 1;
    let shifted: Vec<Vec<u64>> = coeffs
        .iter()
        .map(|c| {
            let s = c.shift(a);
            (0..prec).map(|k| s.coeff(k)).collect()
        })
        .collect();
    let lc = shifted[n].clone();
    let inv_lc = series_inverse(&lc, field);
    let monic = SeriesPoly {
        c: shifted
            .iter()
            .map(|row| {
                let mut out = vec![0u64; prec];
                for (i, &r) in row.iter().enumerate() {
                    if r == 0 {
                        continue;
                    }
                    for (k, &v) in inv_lc[..prec - i].iter().enumerate() {
                        out[i + k] = field.mul_add(out[i + k], r, v);
                    }
                }
                out
            })
            .collect(),
    };

    let mut lifted = Vec::with_capacity(local.len());
    let mut current = monic;
    for i in 0..local.len() - 1 {
        let rest = local[i + 1..]
            .iter()
            .fold(UniPoly::constant(field, 1), |acc, g| acc.mul(g));
        let (g, f) = lift_pair(&current, &local[i], &rest, field, prec);
        lifted.push(g);
        current = f;
    }
    lifted.push(current);

    let lc_poly = SeriesPoly { c: vec![lc] };
    let r = lifted.len();
    for mask in 1u32..(1 << r) {
        if mask.count_ones() as usize > r / 2 {
            continue;
        }
        let mut cand = lc_poly.clone();
        for (i, f) in lifted.iter().enumerate() {
            if mask & (1 << i) != 0 {
                cand = cand.mul(f, field, prec);
            }
        }
        let rows: Vec<UniPoly> = cand
            .c
            .iter()
            .map(|row| UniPoly::new(field, row.clone()))
            .collect();
        let cont = content(&rows);
        let back: Vec<UniPoly> = rows
            .iter()
            .map(|row| row.div_rem(&cont).0.shift(field.neg(a)))
            .collect();
        let divisor = BivariatePoly::from_y_coeffs(field, &back);
        if divisor.degree_y() > 0 && h.divide_exact(&divisor).is_some() {
            return Some(false);
        }
    }
    Some(true)
}

/// Linear Hensel lifting of `target ≡ g0·f0 (mod t)` to precision `prec`,
/// with `target`, `g0`, `f0` monic in `y` and `gcd(g0, f0) = 1`.
fn lift_pair(
    target: &SeriesPoly,
    g0: &UniPoly,
    f0: &UniPoly,
    field: PrimeField,
    prec: usize,
) -> (SeriesPoly, SeriesPoly) {
    let (one, s, t) = g0.ext_gcd(f0);
    debug_assert!(one.is_constant() && !one.is_zero());
    let mut g = SeriesPoly::from_uni(g0, prec);
    let mut f = SeriesPoly::from_uni(f0, prec);
    let n = target.c.len() - 1;
    for k in 1..prec {
        let mut err = vec![0u64; n];
        for (j, e) in err.iter_mut().enumerate() {
            *e = target.c[j][k];
        }
        for (j1, grow) in g.c.iter().enumerate() {
            for (j2, frow) in f.c.iter().enumerate() {
                if j1 + j2 >= n {
                    continue;
                }
                let mut acc = 0;
                for kk in 0..=k {
                    acc = field.mul_add(acc, grow[kk], frow[k - kk]);
                }
                err[j1 + j2] = field.sub(err[j1 + j2], acc);
            }
        }
        let e = UniPoly::new(field, err);
        if e.is_zero() {
            continue;
        }
        let dg = t.mul(&e).rem(g0);
        let df = s.mul(&e).rem(f0);
        for (j, row) in g.c.iter_mut().enumerate() {
            row[k] = dg.coeff(j);
        }
        for (j, row) in f.c.iter_mut().enumerate() {
            row[k] = df.coeff(j);
        }
    }
    (g, f)
}

/// Number of normalized homogeneous forms of degree `e`: `(q^{e+1} − 1)/(q − 1)`.
fn normalized_form_count(q: u128, e: u32) -> u128 {
    (0..=e)
        .map(|k| q.saturating_pow(k))
        .fold(0u128, |a, b| a.saturating_add(b))
}

fn trial_division_verdict(h: &BivariatePoly, budget: u128) -> Result<bool> {
    let field = h.field();
    let q = field.p64() as u128;
    let d = h.total_degree();
    let lead = h.leading_part();
    let mut plan: Vec<(u32, Vec<Vec<u64>>)> = Vec::new();
    let mut needed: u128 = 0;
    for e in 1..=d / 2 {
        let forms = normalized_form_count(q, e);
        needed = needed.saturating_add(forms);
        if needed > budget {
            return Err(Error::BudgetExceeded {
                needed,
                cap: budget,
            });
        }
        let survivors: Vec<Vec<u64>> = HomogeneousForms::new(field, e)
            .filter(|form| {
                let g = BivariatePoly::from_terms(
                    field,
                    form.iter()
                        .enumerate()
                        .map(|(k, &c)| (e - k as u32, k as u32, c)),
                );
                lead.divide_exact(&g).is_some()
            })
            .collect();
        let lower = q.saturating_pow(monomial_count(e - 1) as u32);
        needed = needed.saturating_add((survivors.len() as u128).saturating_mul(lower));
        if needed > budget {
            return Err(Error::BudgetExceeded {
                needed,
                cap: budget,
            });
        }
        plan.push((e, survivors));
    }
    for (e, survivors) in plan {
        let low_monomials = super::monomials_graded(e - 1);
        for form in survivors {
            let mut lower = vec![0u64; low_monomials.len()];
            loop {
                let mut g = BivariatePoly::from_coefficient_vector(field, &low_monomials, &lower);
                for (k, &c) in form.iter().enumerate() {
                    g.add_term(Monomial::new(e - k as u32, k as u32), c);
                }
                if h.divide_exact(&g).is_some() {
                    return Ok(false);
                }
                if !odometer(&mut lower, field.p64()) {
                    break;
                }
            }
        }
    }
    Ok(true)
}

/// Advances a base-`q` counter (least significant digit first); false on wrap.
pub(crate) fn odometer(digits: &mut [u64], q: u64) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

/// Normalized coefficient vectors `(a_0, …, a_e)` (first nonzero entry 1)
/// in lexicographic order.
pub(crate) struct HomogeneousForms {
    q: u64,
    e: usize,
    lead: usize,
    tail: Vec<u64>,
    done: bool,
}

impl HomogeneousForms {
    pub(crate) fn new(field: PrimeField, e: u32) -> Self {
        HomogeneousForms {
            q: field.p64(),
            e: e as usize,
            lead: 0,
            tail: vec![0; e as usize],
            done: false,
        }
    }
}

impl Iterator for HomogeneousForms {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        if self.done {
            return None;
        }
        let mut v = vec![0u64; self.e + 1];
        v[self.lead] = 1;
        // tail digits are written most-significant first so the stream is
        // lexicographic in (a_0, …, a_e)
        for (slot, &digit) in v[self.lead + 1..].iter_mut().zip(self.tail.iter().rev()) {
            *slot = digit;
        }
        if !odometer(&mut self.tail, self.q) {
            self.lead += 1;
            if self.lead > self.e {
                self.done = true;
            } else {
                self.tail = vec![0; self.e - self.lead];
            }
        }
        Some(v)
    }
}
