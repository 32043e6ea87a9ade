//! Sparse polynomials over a prime field, truncated at a total degree.

mod field;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use field::PrimeField;
pub use parse::parse_poly;

/// An exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically on the exponents (so `x > y` when `vars = (x, y)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    degree: u32,
    exponents: Vec<u32>,
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        Self { degree, exponents }
    }

    pub fn one(nvars: usize) -> Self {
        Self::new(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::new(e)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            degree: self.degree + other.degree,
            exponents,
        }
    }

    /// All monomials in `nvars` variables of total degree exactly `d`, in
    /// descending lexicographic order (`x^2, xy, y^2`).
    pub fn of_degree(nvars: usize, d: usize) -> Vec<Monomial> {
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(Monomial::new(cur.clone()));
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
        }
        if nvars == 0 {
            return if d == 0 { vec![Monomial::new(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(0, d as u32, &mut vec![0; nvars], &mut out);
        out
    }

    pub fn format(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (v, &e) in vars.iter().zip(&self.exponents) {
            match e {
                0 => {}
                1 => parts.push(v.clone()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Coefficient field, variable names and truncation order shared by a family
/// of polynomials. `order == usize::MAX` means no truncation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyContext {
    field: PrimeField,
    vars: Vec<String>,
    order: usize,
}

impl PolyContext {
    pub fn new(p: u64, vars: &[&str], order: usize) -> Result<Arc<Self>> {
        Self::from_parts(PrimeField::new(p)?, vars.iter().map(|s| s.to_string()).collect(), order)
    }

    /// Context whose polynomials are never truncated.
    pub fn untruncated(p: u64, vars: &[&str]) -> Result<Arc<Self>> {
        Self::new(p, vars, usize::MAX)
    }

    pub fn from_parts(field: PrimeField, vars: Vec<String>, order: usize) -> Result<Arc<Self>> {
        if order == 0 {
            return Err(Error::InvalidArgument("truncation order must be positive".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidArgument(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Self { field, vars, order }))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Same field and variables, different truncation order.
    pub fn with_order(&self, order: usize) -> Result<Arc<Self>> {
        Self::from_parts(self.field, self.vars.clone(), order)
    }

    /// True when polynomials of the two contexts live in the same polynomial
    /// ring (same field and variables), regardless of truncation.
    pub fn same_ring(&self, other: &PolyContext) -> bool {
        self.field == other.field && self.vars == other.vars
    }
}

/// A polynomial with all terms of degree below the context's truncation order.
/// No zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncPoly {
    ctx: Arc<PolyContext>,
    terms: BTreeMap<Monomial, u32>,
}

impl TruncPoly {
    pub fn zero(ctx: &Arc<PolyContext>) -> Self {
        Self {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: &Arc<PolyContext>, c: i64) -> Self {
        Self::from_terms(ctx, [(Monomial::one(ctx.nvars()), ctx.field.from_i64(c))])
    }

    pub fn var(ctx: &Arc<PolyContext>, i: usize) -> Self {
        Self::from_terms(ctx, [(Monomial::var(ctx.nvars(), i), 1)])
    }

    pub fn monomial(ctx: &Arc<PolyContext>, m: Monomial, c: u32) -> Self {
        Self::from_terms(ctx, [(m, c)])
    }

    /// Builds a polynomial from terms, combining repeated monomials and
    /// dropping zero coefficients and terms at or above the truncation order.
    pub fn from_terms(ctx: &Arc<PolyContext>, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let f = ctx.field;
        let mut map: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.exponents.len(), ctx.nvars(), "monomial arity mismatch");
            if m.degree() >= ctx.order {
                continue;
            }
            let c = c % f.characteristic();
            let e = map.entry(m).or_insert(0);
            *e = f.add(*e, c);
        }
        map.retain(|_, c| *c != 0);
        Self {
            ctx: ctx.clone(),
            terms: map,
        }
    }

    pub fn context(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u32 {
        self.coefficient(&Monomial::one(self.ctx.nvars()))
    }

    /// Smallest degree of a term, `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn check(&self, other: &TruncPoly) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn add(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.check(other)?;
        Ok(Self::from_terms(
            &self.ctx,
            self.terms().chain(other.terms()).map(|(m, c)| (m.clone(), c)),
        ))
    }

    pub fn neg(&self) -> TruncPoly {
        let f = self.ctx.field;
        Self::from_terms(&self.ctx, self.terms().map(|(m, c)| (m.clone(), f.neg(c))))
    }

    pub fn sub(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> TruncPoly {
        let f = self.ctx.field;
        let c = f.from_i64(c);
        Self::from_terms(&self.ctx, self.terms().map(|(m, a)| (m.clone(), f.mul(a, c))))
    }

    pub fn mul(&self, other: &TruncPoly) -> Result<TruncPoly> {
        self.check(other)?;
        let f = self.ctx.field;
        let order = self.ctx.order;
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                if a.degree() + b.degree() < order {
                    out.push((a.mul(b), f.mul(ca, cb)));
                }
            }
        }
        Ok(Self::from_terms(&self.ctx, out))
    }

    /// `self^e`; `e = 0` yields the constant 1.
    pub fn pow(&self, mut e: u64) -> TruncPoly {
        let mut acc = Self::constant(&self.ctx, 1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same context");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same context");
            }
            if base.is_zero() && e > 0 {
                return Self::zero(&self.ctx);
            }
        }
        acc
    }

    /// Drop every term of degree `>= order` and move to the context of that order.
    pub fn truncated(&self, order: usize) -> Result<TruncPoly> {
        let ctx = self.ctx.with_order(order)?;
        Ok(Self::from_terms(&ctx, self.terms().map(|(m, c)| (m.clone(), c))))
    }

    /// Re-home the polynomial in another context of the same polynomial ring,
    /// keeping the terms that fit under the new order.
    pub fn embed(&self, ctx: &Arc<PolyContext>) -> Result<TruncPoly> {
        if !self.ctx.same_ring(ctx) {
            return Err(Error::MixedRings);
        }
        Ok(Self::from_terms(ctx, self.terms().map(|(m, c)| (m.clone(), c))))
    }
}

/// Canonical form: terms in descending graded-lex order, coefficients as
/// least nonnegative residues, `*` between factors, `^` for powers.
impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.degree() == 0 {
                write!(f, "{c}")?;
            } else if *c == 1 {
                write!(f, "{}", m.format(&self.ctx.vars))?;
            } else {
                write!(f, "{c}*{}", m.format(&self.ctx.vars))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, order: usize) -> Arc<PolyContext> {
        PolyContext::new(p, &["x", "y", "z"], order).unwrap()
    }

    #[test]
    fn monomials_of_degree_are_ordered() {
        let ms = Monomial::of_degree(2, 2);
        let names: Vec<_> = ms.iter().map(|m| m.format(&["x".into(), "y".into()])).collect();
        assert_eq!(names, ["x^2", "x*y", "y^2"]);
        assert_eq!(Monomial::of_degree(3, 3).len(), 10);
        assert!(ms[0] > ms[1] && ms[1] > ms[2]);
    }

    #[test]
    fn additive_inverse() {
        let c = ctx(5, 6);
        let x = TruncPoly::var(&c, 0);
        assert!(x.add(&x.neg()).unwrap().is_zero());
    }

    #[test]
    fn product_truncates() {
        let c = PolyContext::new(5, &["x", "y"], 4).unwrap();
        let x3 = TruncPoly::var(&c, 0).pow(3);
        let y = TruncPoly::var(&c, 1);
        assert_eq!(x3.to_string(), "x^3");
        assert!(x3.mul(&y).unwrap().is_zero());
    }

    #[test]
    fn frobenius_in_char_two() {
        let c = PolyContext::new(2, &["x", "y"], 6).unwrap();
        let s = TruncPoly::var(&c, 0).add(&TruncPoly::var(&c, 1)).unwrap();
        assert_eq!(s.pow(2).to_string(), "x^2 + y^2");
    }

    #[test]
    fn pow_zero_is_one() {
        let c = ctx(3, 5);
        assert_eq!(TruncPoly::zero(&c).pow(0).to_string(), "1");
        assert_eq!(TruncPoly::var(&c, 2).pow(0).to_string(), "1");
    }

    #[test]
    fn mixed_contexts_rejected() {
        let a = TruncPoly::var(&ctx(5, 6), 0);
        let b = TruncPoly::var(&ctx(5, 7), 0);
        let c = TruncPoly::var(&ctx(3, 6), 0);
        assert_eq!(a.add(&b), Err(Error::MixedRings));
        assert_eq!(a.mul(&c), Err(Error::MixedRings));
    }

    #[test]
    fn order_and_degree() {
        let c = ctx(5, 8);
        let p = parse_poly("x^2*y + 3*z^4", &c).unwrap();
        assert_eq!(p.order(), Some(3));
        assert_eq!(p.degree(), Some(4));
        assert_eq!(TruncPoly::zero(&c).order(), None);
    }
}
