//! Truncated models `F_p[x_1..x_n] / (I_0 + m^D)` of local rings `k[[x]]/I_0`.
//!
//! Coordinates of ring elements are taken over the standard monomials: the
//! monomials of degree `< D` that are not leading (lowest-column) pivots of
//! the echelon basis of `(I_0 + m^D)/m^D`. Monomials are indexed by ascending
//! degree, so the standard monomials of degree `< d` form a prefix of the
//! coordinates, the image of `m^d` is spanned by the standard monomials of
//! degree `>= d`, and reducing from order `D'` to `D < D'` is a prefix
//! truncation.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::certified::{CertifiedValue, Value};
use crate::error::{Error, Result};
use crate::linalg::{SparseEchelon, Subspace};
use crate::poly::{parse_poly, Monomial, PolyContext, PrimeField, TruncPoly};

/// Field, variables and relations of a local ring, independent of any truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    ctx: Arc<PolyContext>,
    relations: Vec<TruncPoly>,
}

impl RingSpec {
    pub fn new(p: u64, vars: &[&str], relations: &[&str]) -> Result<Self> {
        let ctx = PolyContext::untruncated(p, vars)?;
        let relations = relations
            .iter()
            .map(|r| parse_poly(r, &ctx))
            .collect::<Result<Vec<_>>>()?;
        Self::from_polys(&ctx, relations)
    }

    pub fn from_polys(ctx: &Arc<PolyContext>, relations: Vec<TruncPoly>) -> Result<Self> {
        let ctx = ctx.with_order(usize::MAX)?;
        let relations = relations.iter().map(|r| r.embed(&ctx)).collect::<Result<Vec<_>>>()?;
        for r in &relations {
            if r.constant_term() != 0 {
                return Err(Error::ConstantTerm(r.to_string()));
            }
        }
        Ok(Self { ctx, relations })
    }

    /// Untruncated polynomial context of the ambient polynomial ring.
    pub fn context(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn field(&self) -> PrimeField {
        self.ctx.field()
    }

    pub fn vars(&self) -> &[String] {
        self.ctx.vars()
    }

    pub fn relations(&self) -> &[TruncPoly] {
        &self.relations
    }

    /// Parse an exact (untruncated) polynomial of the ambient ring.
    pub fn parse(&self, text: &str) -> Result<TruncPoly> {
        parse_poly(text, &self.ctx)
    }

    pub fn parse_all<S: AsRef<str>>(&self, texts: &[S]) -> Result<Vec<TruncPoly>> {
        texts.iter().map(|t| self.parse(t.as_ref())).collect()
    }

    /// Build the truncated model at order `order`.
    pub fn build(&self, order: usize) -> Result<Arc<Ring>> {
        Ring::build_from_spec(self.clone(), order).map(Arc::new)
    }
}

/// The truncated ring `R/m^D`. Immutable once built.
pub struct Ring {
    spec: RingSpec,
    ctx: Arc<PolyContext>,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    base_rank: usize,
    standard: Vec<usize>,
    degree_start: Vec<usize>,
    nf: Vec<Vec<(usize, u32)>>,
    var_mul: Vec<Vec<Vec<(usize, u32)>>>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("p", &self.field().characteristic())
            .field("vars", &self.ctx.vars())
            .field(
                "relations",
                &self.spec.relations.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
            )
            .field("order", &self.order())
            .field("dim", &self.dim())
            .finish()
    }
}

impl Ring {
    /// Convenience constructor from text relations.
    pub fn build(p: u64, vars: &[&str], relations: &[&str], order: usize) -> Result<Arc<Ring>> {
        RingSpec::new(p, vars, relations)?.build(order)
    }

    fn build_from_spec(spec: RingSpec, order: usize) -> Result<Ring> {
        if order < 2 {
            return Err(Error::TruncationTooSmall {
                order,
                needed: "truncation order must be at least 2".into(),
            });
        }
        let ctx = spec.ctx.with_order(order)?;
        let field = ctx.field();
        let n = ctx.nvars();
        let monomials: Vec<Monomial> = (0..order).flat_map(|d| Monomial::of_degree(n, d)).collect();
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let m_total = monomials.len();
        let times_var: Vec<Vec<Option<usize>>> = monomials
            .iter()
            .map(|m| {
                (0..n)
                    .map(|v| index.get(&m.mul(&Monomial::var(n, v))).copied())
                    .collect()
            })
            .collect();

        let mut base = SparseEchelon::new(field, m_total);
        let mut queue: Vec<Vec<(usize, u32)>> = Vec::new();
        for r in &spec.relations {
            let mut v = vec![0u32; m_total];
            for (m, c) in r.terms() {
                if let Some(&i) = index.get(m) {
                    v[i] = field.add(v[i], c);
                }
            }
            if let Some(row) = base.insert(v) {
                queue.push(row);
            }
        }
        while let Some(row) = queue.pop() {
            for var in 0..n {
                let mut v = vec![0u32; m_total];
                let mut any = false;
                for &(j, c) in &row {
                    if let Some(k) = times_var[j][var] {
                        v[k] = field.add(v[k], c);
                        any = true;
                    }
                }
                if any {
                    if let Some(r) = base.insert(v) {
                        queue.push(r);
                    }
                }
            }
        }

        let standard: Vec<usize> = (0..m_total).filter(|&i| !base.is_pivot(i)).collect();
        if standard.first() != Some(&0) {
            return Err(Error::ZeroRing);
        }
        let mut std_pos = vec![usize::MAX; m_total];
        for (s, &i) in standard.iter().enumerate() {
            std_pos[i] = s;
        }
        let mut degree_start = vec![0usize; order + 1];
        for d in 0..=order {
            degree_start[d] = standard.partition_point(|&i| monomials[i].degree() < d);
        }
        let nf: Vec<Vec<(usize, u32)>> = (0..m_total)
            .map(|i| {
                if std_pos[i] != usize::MAX {
                    return vec![(std_pos[i], 1)];
                }
                let mut v = vec![0u32; m_total];
                v[i] = 1;
                base.reduce(&mut v);
                v.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(j, &c)| (std_pos[j], c))
                    .collect()
            })
            .collect();
        let var_mul = standard
            .iter()
            .map(|&i| {
                (0..n)
                    .map(|v| times_var[i][v].map(|k| nf[k].clone()).unwrap_or_default())
                    .collect()
            })
            .collect();
        Ok(Ring {
            spec,
            ctx,
            monomials,
            index,
            base_rank: base.rank(),
            standard,
            degree_start,
            nf,
            var_mul,
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    /// Polynomial context truncated at this ring's order.
    pub fn context(&self) -> &Arc<PolyContext> {
        &self.ctx
    }

    pub fn field(&self) -> PrimeField {
        self.ctx.field()
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars()
    }

    /// Truncation order D.
    pub fn order(&self) -> usize {
        self.ctx.order()
    }

    /// Dimension of `R/m^D` over F_p, i.e. its length.
    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    /// Number of monomials of degree `< D`.
    pub fn num_monomials(&self) -> usize {
        self.monomials.len()
    }

    /// Rank of `(I_0 + m^D)/m^D` inside the span of monomials of degree `< D`.
    pub fn base_rank(&self) -> usize {
        self.base_rank
    }

    pub fn standard_monomial(&self, s: usize) -> &Monomial {
        &self.monomials[self.standard[s]]
    }

    pub fn standard_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.standard.iter().map(|&i| &self.monomials[i])
    }

    /// Number of standard monomials of degree `< d` (for `d <= D`).
    pub fn degree_start(&self, d: usize) -> usize {
        self.degree_start[d.min(self.order())]
    }

    /// Same ring at another truncation order.
    pub fn at_order(&self, order: usize) -> Result<Arc<Ring>> {
        self.spec.build(order)
    }

    pub fn same_ring(&self, other: &Ring) -> bool {
        std::ptr::eq(self, other) || (self.order() == other.order() && self.spec == other.spec)
    }

    /// Normal form of a vector given over all monomials of degree `< D`.
    pub fn normal_form(&self, full: &[u32]) -> Vec<u32> {
        assert_eq!(full.len(), self.monomials.len());
        let f = self.field();
        let mut out = vec![0u32; self.dim()];
        for (i, &c) in full.iter().enumerate() {
            if c != 0 {
                for &(s, x) in &self.nf[i] {
                    out[s] = f.mul_add(out[s], c, x);
                }
            }
        }
        out
    }

    /// Coordinates of a standard-coordinate vector over all monomials.
    pub fn to_full(&self, coords: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.monomials.len()];
        for (s, &c) in coords.iter().enumerate() {
            out[self.standard[s]] = c;
        }
        out
    }

    pub fn poly_coords(&self, poly: &TruncPoly) -> Result<Vec<u32>> {
        if !poly.context().same_ring(&self.ctx) {
            return Err(Error::MixedRings);
        }
        let f = self.field();
        let mut out = vec![0u32; self.dim()];
        for (m, c) in poly.terms() {
            if let Some(&i) = self.index.get(m) {
                for &(s, x) in &self.nf[i] {
                    out[s] = f.mul_add(out[s], c, x);
                }
            }
        }
        Ok(out)
    }

    pub fn coords_poly(&self, coords: &[u32]) -> TruncPoly {
        TruncPoly::from_terms(
            &self.ctx,
            coords
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(s, &c)| (self.standard_monomial(s).clone(), c)),
        )
    }

    pub fn mul_coords(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let f = self.field();
        let d = self.order();
        let mut out = vec![0u32; self.dim()];
        let bs: Vec<(usize, u32)> = b
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        for (s, &ca) in a.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            let ms = self.standard_monomial(s);
            for &(t, cb) in &bs {
                let mt = self.standard_monomial(t);
                if ms.degree() + mt.degree() >= d {
                    continue;
                }
                let c = f.mul(ca, cb);
                for &(k, x) in &self.nf[self.index[&ms.mul(mt)]] {
                    out[k] = f.mul_add(out[k], c, x);
                }
            }
        }
        out
    }

    pub fn times_var(&self, a: &[u32], var: usize) -> Vec<u32> {
        let f = self.field();
        let mut out = vec![0u32; self.dim()];
        for (s, &c) in a.iter().enumerate() {
            if c != 0 {
                for &(k, x) in &self.var_mul[s][var] {
                    out[k] = f.mul_add(out[k], c, x);
                }
            }
        }
        out
    }

    /// Least degree of a nonzero standard coordinate: the m-adic order of the
    /// element in `R/m^D`. `None` for zero.
    pub fn coords_order(&self, a: &[u32]) -> Option<usize> {
        a.iter()
            .position(|&c| c != 0)
            .map(|s| self.standard_monomial(s).degree())
    }

    /// Smallest ideal subspace containing the given vectors.
    pub fn ideal_span<I: IntoIterator<Item = Vec<u32>>>(&self, gens: I) -> Subspace {
        let mut space = Subspace::zero(self.field(), self.dim());
        let mut queue: Vec<Vec<u32>> = gens.into_iter().filter_map(|g| space.insert(g)).collect();
        while let Some(v) = queue.pop() {
            for var in 0..self.nvars() {
                if let Some(w) = space.insert(self.times_var(&v, var)) {
                    queue.push(w);
                }
            }
        }
        space
    }

    /// `span{a * g}` for `a` in a basis of the ideal subspace `ideal`; this is
    /// the subspace of the product ideal `A * (gens)`.
    pub fn product_span(&self, ideal: &Subspace, gens: &[Vec<u32>]) -> Subspace {
        let mut space = Subspace::zero(self.field(), self.dim());
        for a in ideal.rows() {
            for g in gens {
                space.insert(self.mul_coords(a, g));
            }
        }
        space
    }

    /// Image of `m^d`: the standard monomials of degree `>= d`.
    pub fn power_of_maximal(&self, d: usize) -> Subspace {
        let start = self.degree_start(d);
        Subspace::from_vectors(
            self.field(),
            self.dim(),
            (start..self.dim()).map(|s| crate::linalg::unit(self.dim(), s)),
        )
    }

    /// Image of `(gens) + m^D` in `R/m^D`.
    pub fn subspace_of_ideal(&self, gens: &[Element]) -> Result<Subspace> {
        for g in gens {
            if !g.ring().same_ring(self) {
                return Err(Error::MixedRings);
            }
        }
        Ok(self.ideal_span(gens.iter().map(|g| g.coords().to_vec())))
    }

    /// Sound certificate for `m^t ⊆ A` in the untruncated ring: checks
    /// `m^t ⊆ A + m^{t+1}` in `R/m^D` and concludes by Nakayama's lemma.
    /// `false` only says the degree-`t` monomials are not all in `A + m^{t+1}`.
    pub fn nakayama_contains_power(&self, a: &Subspace, t: usize) -> Result<bool> {
        if t + 1 > self.order() {
            return Err(Error::TruncationTooSmall {
                order: self.order(),
                needed: format!("certificate for m^{t} needs order >= {}", t + 1),
            });
        }
        let lo = self.degree_start(t);
        let hi = self.degree_start(t + 1);
        let proj = a.truncate(hi);
        Ok((lo..hi).all(|s| proj.contains(&crate::linalg::unit(hi, s))))
    }

    /// Least `t <= D-1` with a Nakayama certificate `m^t ⊆ A`.
    pub fn certified_power_level(&self, a: &Subspace) -> Option<usize> {
        (0..self.order()).find(|&t| self.nakayama_contains_power(a, t).unwrap_or(false))
    }

    /// Reduce a vector of a higher-order model of the same ring to this order.
    pub fn project_from(&self, higher: &Ring, coords: &[u32]) -> Result<Vec<u32>> {
        self.check_projectable(higher)?;
        Ok(coords[..self.dim()].to_vec())
    }

    pub fn project_subspace(&self, higher: &Ring, space: &Subspace) -> Result<Subspace> {
        self.check_projectable(higher)?;
        Ok(space.truncate(self.dim()))
    }

    fn check_projectable(&self, higher: &Ring) -> Result<()> {
        if self.spec != higher.spec || higher.order() < self.order() {
            return Err(Error::MixedRings);
        }
        Ok(())
    }

    pub fn element(self: &Arc<Self>, poly: &TruncPoly) -> Result<Element> {
        Ok(Element {
            coords: self.poly_coords(poly)?,
            ring: self.clone(),
        })
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Element> {
        let p = parse_poly(text, &self.ctx)?;
        self.element(&p)
    }

    pub fn element_from_coords(self: &Arc<Self>, coords: Vec<u32>) -> Element {
        assert_eq!(coords.len(), self.dim());
        Element {
            ring: self.clone(),
            coords,
        }
    }

    pub fn zero(self: &Arc<Self>) -> Element {
        self.element_from_coords(vec![0; self.dim()])
    }

    pub fn one(self: &Arc<Self>) -> Element {
        let mut c = vec![0; self.dim()];
        c[0] = 1;
        self.element_from_coords(c)
    }

    pub fn var(self: &Arc<Self>, i: usize) -> Element {
        let p = TruncPoly::var(&self.ctx, i);
        self.element(&p).expect("own context")
    }

    pub fn vars(self: &Arc<Self>) -> Vec<Element> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }
}

/// An element of `R/m^D` in normal form over the standard monomials.
#[derive(Clone)]
pub struct Element {
    ring: Arc<Ring>,
    coords: Vec<u32>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.coords == other.coords
    }
}

impl Eq for Element {}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element({} mod m^{})", self, self.ring.order())
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ring.coords_poly(&self.coords))
    }
}

impl Element {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// m-adic order in `R/m^D`; `None` for zero.
    pub fn order(&self) -> Option<usize> {
        self.ring.coords_order(&self.coords)
    }

    /// True when the element is a unit (nonzero constant coefficient).
    pub fn is_unit(&self) -> bool {
        self.coords[0] != 0
    }

    pub fn to_poly(&self) -> TruncPoly {
        self.ring.coords_poly(&self.coords)
    }

    /// The same polynomial representative read in another truncation of the
    /// same ring. Moving down truncates; moving up keeps the representative.
    pub fn transfer(&self, ring: &Arc<Ring>) -> Result<Element> {
        if ring.spec() != self.ring.spec() {
            return Err(Error::MixedRings);
        }
        if ring.order() == self.ring.order() {
            return Ok(self.clone());
        }
        ring.element(&self.to_poly())
    }

    fn check(&self, other: &Element) -> Result<()> {
        if self.ring.same_ring(&other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        let f = self.ring.field();
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(self.ring.element_from_coords(coords))
    }

    pub fn neg(&self) -> Element {
        let f = self.ring.field();
        self.ring
            .element_from_coords(self.coords.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> Element {
        let f = self.ring.field();
        let c = f.from_i64(c);
        self.ring
            .element_from_coords(self.coords.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check(other)?;
        Ok(self
            .ring
            .element_from_coords(self.ring.mul_coords(&self.coords, &other.coords)))
    }

    pub fn pow(&self, mut e: u64) -> Element {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same ring");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        acc
    }
}

/// Run `compute` on the ring at its own order and at `order + delta`; the
/// value is certified `two-level-stable` only when both agree.
pub fn two_level_value<F>(ring: &Arc<Ring>, delta: usize, compute: F) -> Result<CertifiedValue>
where
    F: Fn(&Arc<Ring>) -> Result<Value>,
{
    let lo = compute(ring)?;
    let hi_ring = if delta == 0 {
        ring.clone()
    } else {
        ring.at_order(ring.order() + delta)?
    };
    let hi = compute(&hi_ring)?;
    Ok(CertifiedValue::from_levels(vec![
        (ring.order(), lo),
        (hi_ring.order(), hi),
    ]))
}
