//! Ideals of a truncated ring, carried as generators plus a lazily computed
//! ideal subspace of `R/m^D`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::certified::{CertifiedValue, Value};
use crate::error::{Error, Result};
use crate::linalg::{kernel, unit, Subspace};
use crate::poly::TruncPoly;
use crate::ring::{Element, Ring};

/// An ideal of `R/m^D`. Equality of ideals is equality of subspaces at this
/// truncation order, i.e. equality modulo `m^D`.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Element>,
    space: OnceLock<Subspace>,
}

/// Result of a colon computation. `(A : 0)` is the unit ideal and is marked
/// degenerate rather than rejected.
#[derive(Debug, Clone)]
pub struct Colon {
    pub ideal: Ideal,
    pub degenerate: bool,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "Ideal({}) mod m^{}", gens.join(", "), self.ring.order())
    }
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Element>) -> Result<Self> {
        if gens.iter().any(|g| !g.ring().same_ring(ring)) {
            return Err(Error::MixedRings);
        }
        Ok(Self {
            ring: ring.clone(),
            gens,
            space: OnceLock::new(),
        })
    }

    pub fn from_polys(ring: &Arc<Ring>, polys: &[TruncPoly]) -> Result<Self> {
        let gens = polys.iter().map(|p| ring.element(p)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn parse<S: AsRef<str>>(ring: &Arc<Ring>, texts: &[S]) -> Result<Self> {
        let gens = texts
            .iter()
            .map(|t| ring.parse(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    /// Ideal whose generators are a basis of `space`, which must be an ideal subspace.
    pub fn from_subspace(ring: &Arc<Ring>, space: Subspace) -> Self {
        assert_eq!(space.ambient_dim(), ring.dim());
        let gens = space
            .rows()
            .iter()
            .map(|r| ring.element_from_coords(r.clone()))
            .collect();
        Self {
            ring: ring.clone(),
            gens,
            space: OnceLock::from(space),
        }
    }

    fn with_space(ring: &Arc<Ring>, gens: Vec<Element>, space: Subspace) -> Self {
        Self {
            ring: ring.clone(),
            gens,
            space: OnceLock::from(space),
        }
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self::with_space(ring, Vec::new(), Subspace::zero(ring.field(), ring.dim()))
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Self::with_space(ring, vec![ring.one()], Subspace::full(ring.field(), ring.dim()))
    }

    pub fn maximal(ring: &Arc<Ring>) -> Self {
        Self::with_space(ring, ring.vars(), ring.power_of_maximal(1))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Same generators read in another truncation of the ring.
    pub fn transfer(&self, ring: &Arc<Ring>) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.transfer(ring)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, gens)
    }

    pub fn gens(&self) -> &[Element] {
        &self.gens
    }

    /// The ideal's image in `R/m^D`; computed on first use.
    pub fn space(&self) -> &Subspace {
        self.space
            .get_or_init(|| self.ring.ideal_span(self.gens.iter().map(|g| g.coords().to_vec())))
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if self.ring.same_ring(&other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        match (self.space.get(), other.space.get()) {
            (Some(a), Some(b)) => Ok(Self::with_space(&self.ring, gens, a.sum(b))),
            _ => Self::new(&self.ring, gens),
        }
    }

    /// Product ideal; generators are the pairwise products, pruned to a
    /// linearly independent subset.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut seen = Subspace::zero(self.ring.field(), self.ring.dim());
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                let c = a.mul(b)?;
                if seen.insert(c.coords().to_vec()).is_some() {
                    gens.push(c);
                }
            }
        }
        let other_gens: Vec<Vec<u32>> = other.gens.iter().map(|g| g.coords().to_vec()).collect();
        let space = self.ring.product_span(self.space(), &other_gens);
        Ok(Self::with_space(&self.ring, gens, space))
    }

    /// `A^e` by repeated products; `A^0` is the unit ideal.
    pub fn power(&self, e: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..e {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        Ok(Self::from_subspace(
            &self.ring,
            self.space().intersection(other.space()),
        ))
    }

    /// `(A : f) = {g : g f ∈ A}` computed in `R/m^D`. Exact for the
    /// untruncated ring when `A` contains a power `m^t` with `t <= D`.
    pub fn colon(&self, f: &Element) -> Result<Colon> {
        if !f.ring().same_ring(&self.ring) {
            return Err(Error::MixedRings);
        }
        if f.is_zero() {
            return Ok(Colon {
                ideal: Ideal::unit(&self.ring),
                degenerate: true,
            });
        }
        let space = colon_space(&self.ring, self.space(), f.coords());
        Ok(Colon {
            ideal: Self::from_subspace(&self.ring, space),
            degenerate: false,
        })
    }

    /// `(A : B)`, the intersection of the colons by the generators of `B`.
    pub fn colon_ideal(&self, by: &Ideal) -> Result<Colon> {
        self.check(by)?;
        let mut acc: Option<Subspace> = None;
        for g in by.gens.iter().filter(|g| !g.is_zero()) {
            let c = colon_space(&self.ring, self.space(), g.coords());
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersection(&c),
            });
        }
        Ok(match acc {
            None => Colon {
                ideal: Ideal::unit(&self.ring),
                degenerate: true,
            },
            Some(s) => Colon {
                ideal: Self::from_subspace(&self.ring, s),
                degenerate: false,
            },
        })
    }

    /// `ℓ(R/A)`. Exact when a Nakayama certificate shows `A` is m-primary at
    /// this order; otherwise the length is reported as not finite, with the
    /// truncated codimension kept as the raw reading.
    pub fn length(&self) -> CertifiedValue {
        let codim = self.space().codim() as u64;
        if self.ring.certified_power_level(self.space()).is_some() {
            CertifiedValue::exact(codim, self.ring.order())
        } else {
            CertifiedValue::uncertified(Value::Infinite, vec![(self.ring.order(), Value::Finite(codim))])
        }
    }

    /// Least `t` with `m^t ⊆ A`, certified by Nakayama at this order.
    pub fn m_primary_level(&self) -> CertifiedValue {
        let d = self.ring.order();
        match self.ring.certified_power_level(self.space()) {
            Some(t) => CertifiedValue::exact(t as u64, d),
            None => CertifiedValue::uncertified(Value::AtLeast(d as u64), vec![(d, Value::AtLeast(d as u64))]),
        }
    }

    pub fn is_m_primary(&self) -> bool {
        self.ring.certified_power_level(self.space()).is_some()
    }

    /// Membership in `A + m^D`.
    pub fn contains(&self, e: &Element) -> bool {
        e.ring().same_ring(&self.ring) && self.space().contains(e.coords())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        self.ring.same_ring(&other.ring) && self.space().contains_subspace(other.space())
    }

    /// Equality modulo `m^D` (mutual containment).
    pub fn equals(&self, other: &Ideal) -> bool {
        self.contains_ideal(other) && other.contains_ideal(self)
    }

    /// Codimension of the subspace: the length of `R/(A + m^D)`.
    pub fn colength(&self) -> usize {
        self.space().codim()
    }

    pub fn rank(&self) -> usize {
        self.space().rank()
    }
}

/// `{g : g f ∈ A}` for an ideal subspace `A`, as a kernel of multiplication
/// by `f` into `R/A`.
pub(crate) fn colon_space(ring: &Ring, a: &Subspace, f: &[u32]) -> Subspace {
    let dim = ring.dim();
    // after reduction modulo A only the non-pivot coordinates can be nonzero
    let mut free = vec![true; dim];
    for &p in a.pivots() {
        free[p] = false;
    }
    let free: Vec<usize> = (0..dim).filter(|&c| free[c]).collect();
    let images: Vec<Vec<u32>> = (0..dim)
        .map(|s| {
            let mut v = ring.mul_coords(&unit(dim, s), f);
            a.reduce(&mut v);
            free.iter().map(|&c| v[c]).collect()
        })
        .collect();
    Subspace::from_vectors(ring.field(), dim, kernel(ring.field(), free.len(), &images, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certified::Status;

    fn plane(p: u64, d: usize) -> Arc<Ring> {
        Ring::build(p, &["x", "y"], &[], d).unwrap()
    }

    #[test]
    fn sums_products_powers() {
        let r = plane(5, 6);
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let y = Ideal::parse(&r, &["y"]).unwrap();
        let m = Ideal::maximal(&r);
        assert!(x.sum(&y).unwrap().equals(&m));
        let m2 = m.power(2);
        assert!(m2.equals(&Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap()));
        assert_eq!(m2.gens().len(), 3);
        assert!(x.product(&Ideal::unit(&r)).unwrap().equals(&x));
        assert!(m.power(0).equals(&Ideal::unit(&r)));
        // lazily computed and preset spaces agree
        let lazy = Ideal::new(&r, m2.gens().to_vec()).unwrap();
        assert_eq!(lazy.space(), m2.space());
    }

    #[test]
    fn intersections() {
        let r = plane(5, 4);
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let y = Ideal::parse(&r, &["y"]).unwrap();
        let i = x.intersection(&y).unwrap();
        assert_eq!(i.rank(), 3);
        assert!(i.equals(&Ideal::parse(&r, &["x*y"]).unwrap()));
        assert!(x.intersection(&x).unwrap().equals(&x));
        let m = Ideal::maximal(&r);
        for n in 1..4 {
            let lhs = m.power(n).intersection(&x).unwrap();
            let rhs = x.product(&m.power(n - 1)).unwrap();
            assert!(lhs.equals(&rhs), "n = {n}");
        }
    }

    #[test]
    fn colons() {
        let r = plane(5, 8);
        let a = Ideal::parse(&r, &["x^2", "y^4"]).unwrap();
        let c = a.colon(&r.var(0)).unwrap().ideal;
        assert!(c.equals(&Ideal::parse(&r, &["x", "y^4"]).unwrap()));
        assert!(a.colon(&r.one()).unwrap().ideal.equals(&a));
        let z = a.colon(&r.zero()).unwrap();
        assert!(z.degenerate && z.ideal.equals(&Ideal::unit(&r)));

        let s = Ring::build(5, &["x", "y", "z"], &["x*y", "x*z"], 6).unwrap();
        let ann = Ideal::zero(&s).colon(&s.var(2)).unwrap().ideal;
        assert!(ann.contains(&s.var(0)));
    }

    #[test]
    fn colon_times_element_lands_in_ideal() {
        let r = Ring::build(3, &["x", "y"], &["x^2*y"], 7).unwrap();
        let a = Ideal::parse(&r, &["x^3 + y^2", "x*y^3"]).unwrap();
        let f = r.parse("x + y^2").unwrap();
        let c = a.colon(&f).unwrap().ideal;
        for g in c.gens() {
            assert!(a.contains(&g.mul(&f).unwrap()));
        }
    }

    #[test]
    fn lengths_and_levels() {
        let r = plane(5, 6);
        let m2 = Ideal::maximal(&r).power(2);
        assert_eq!(m2.length(), CertifiedValue::exact(3, 6));
        let ci = Ideal::parse(&r, &["x^2", "y^3"]).unwrap();
        assert_eq!(ci.length().value, Value::Finite(6));
        assert_eq!(ci.length().status, Status::Exact);
        let x = Ideal::parse(&r, &["x"]).unwrap();
        assert_eq!(x.length().value, Value::Infinite);
        assert_eq!(x.length().status, Status::Uncertified);
        for a in [&m2, &ci, &x] {
            assert_eq!(a.colength() + a.rank(), r.dim());
        }

        let r3 = plane(3, 6);
        assert_eq!(Ideal::maximal(&r3).m_primary_level().finite(), Some(1));
        assert_eq!(
            Ideal::parse(&r3, &["x^2", "y^3"]).unwrap().m_primary_level().finite(),
            Some(4)
        );
        assert_eq!(
            Ideal::parse(&r3, &["x"]).unwrap().m_primary_level().value,
            Value::AtLeast(6)
        );

        let s = Ring::build(5, &["x", "y", "z"], &["x*y", "x*z"], 6).unwrap();
        assert_eq!(
            Ideal::parse(&s, &["x+y", "z"]).unwrap().length().value,
            Value::Finite(2)
        );
    }

    #[test]
    fn membership() {
        let r = plane(5, 6);
        assert!(Ideal::maximal(&r).contains(&r.var(0)));
        assert!(!Ideal::parse(&r, &["x^2", "y^3"])
            .unwrap()
            .contains(&r.parse("x*y^2").unwrap()));
        for d in 3..8 {
            let r = plane(5, d);
            let y = r.parse(&format!("y^{}", d - 1)).unwrap();
            assert!(!Ideal::parse(&r, &["x"]).unwrap().contains(&y));
        }
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = Ideal::maximal(&plane(5, 4));
        let b = Ideal::maximal(&plane(5, 5));
        assert!(matches!(a.sum(&b), Err(Error::MixedRings)));
        assert!(matches!(a.intersection(&b), Err(Error::MixedRings)));
    }
}
