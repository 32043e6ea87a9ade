//! Numerical invariants read off truncated models: Hilbert–Samuel and
//! associated-graded Hilbert functions, Artin–Rees numbers, Koszul homology
//! lengths and filter-regularity.
//!
//! Quantities attached to ideals that contain a certified power of `m` are
//! exact. Everything else is computed at two truncation orders `D` and
//! `D + delta` and certified only when the readings agree. Colons and Koszul
//! cycles with respect to ideals that are not m-primary are solved modulo
//! `m^{D + lift}` and then projected to `R/m^D`, which removes the spurious
//! solutions living in the socle of the truncation.

mod artin_rees;
mod hilbert;
mod koszul;
mod regular;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::{colon_space, Ideal};
use crate::linalg::Subspace;
use crate::poly::TruncPoly;
use crate::ring::{Element, Ring, RingSpec};

pub use artin_rees::{ar_number, default_ar_window, ArReport};
pub use hilbert::{
    default_order, gr_hilbert_function, hilbert_samuel, hilbert_samuel_table, primary_level, Convention, Filtration,
    HilbertTable,
};
pub use koszul::{koszul_homology, koszul_homology_length, koszul_report, KoszulHomology, KoszulReport};
pub use regular::{filter_regular_check, filter_regular_sequence_check, FilterRegularReport, SequenceReport};

/// Truncation gaps used by the two-level protocol and by lifted solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    /// Gap between the two truncation orders compared.
    pub delta: usize,
    /// Extra orders used when solving for colons and cycles.
    pub lift: usize,
}

impl Default for Precision {
    fn default() -> Self {
        Self { delta: 2, lift: 4 }
    }
}

impl Precision {
    pub fn new(delta: usize, lift: usize) -> Self {
        Self { delta, lift }
    }

    /// The orders `D` and `D + delta`, or only `D` when the gap is zero.
    pub(crate) fn levels(&self, order: usize) -> Vec<usize> {
        if self.delta == 0 {
            vec![order]
        } else {
            vec![order, order + self.delta]
        }
    }
}

/// Ring at `order`, reusing `ring` when the order already matches.
pub(crate) fn ring_at(ring: &Arc<Ring>, order: usize) -> Result<Arc<Ring>> {
    if ring.order() == order {
        Ok(ring.clone())
    } else {
        ring.at_order(order)
    }
}

pub(crate) fn transfer_all(elems: &[Element], ring: &Arc<Ring>) -> Result<Vec<Element>> {
    elems.iter().map(|e| e.transfer(ring)).collect()
}

pub(crate) fn check_same_ring(ring: &Arc<Ring>, elems: &[Element]) -> Result<()> {
    if elems.iter().all(|e| e.ring().same_ring(ring)) {
        Ok(())
    } else {
        Err(Error::MixedRings)
    }
}

/// Image of `(A : f)` in `R/m^D`, solved modulo `m^{D + lift}`.
pub fn lifted_colon(a: &Ideal, f: &Element, lift: usize) -> Result<Subspace> {
    let ring = a.ring();
    if !f.ring().same_ring(ring) {
        return Err(Error::MixedRings);
    }
    if lift == 0 {
        return Ok(colon_space(ring, a.space(), f.coords()));
    }
    let high = ring.at_order(ring.order() + lift)?;
    let a_high = a.transfer(&high)?;
    let f_high = f.transfer(&high)?;
    let c = colon_space(&high, a_high.space(), f_high.coords());
    ring.project_subspace(&high, &c)
}

/// `m * v` for a vector of `blocks` stacked ring coordinates.
pub(crate) fn times_maximal(ring: &Ring, blocks: usize, space: &Subspace) -> Subspace {
    let dim = ring.dim();
    let mut out = Subspace::zero(ring.field(), dim * blocks);
    for row in space.rows() {
        for var in 0..ring.nvars() {
            let mut w = Vec::with_capacity(dim * blocks);
            for b in 0..blocks {
                w.extend(ring.times_var(&row[b * dim..(b + 1) * dim], var));
            }
            out.insert(w);
        }
    }
    out
}

/// Least `h >= 1` with `m^h C ⊆ A` in `(R/m^D)^blocks`; at most `D`.
pub(crate) fn annihilating_power(ring: &Ring, blocks: usize, c: &Subspace, a: &Subspace) -> usize {
    let mut cur = c.clone();
    for h in 1..ring.order() {
        cur = times_maximal(ring, blocks, &cur);
        if a.contains_subspace(&cur) {
            return h;
        }
    }
    ring.order()
}

/// `m^h C ⊆ A` in `R/m^D`; `h = 0` tests `C ⊆ A`.
pub(crate) fn annihilating_power_of(ring: &Ring, h: usize, c: &Subspace, a: &Subspace) -> bool {
    let mut cur = c.clone();
    for _ in 0..h.min(ring.order()) {
        if a.contains_subspace(&cur) {
            return true;
        }
        cur = times_maximal(ring, 1, &cur);
    }
    a.contains_subspace(&cur)
}

/// Certified m-primary level of `(gens)` over `spec`, read at the
/// smallest order in 8, 16, 32 where a certificate exists.
pub(crate) fn spec_level(spec: &RingSpec, gens: &[TruncPoly]) -> Result<usize> {
    for order in [8, 16, 32] {
        let ring = spec.build(order)?;
        let ideal = Ideal::from_polys(&ring, gens)?;
        if let Some(t) = ring.certified_power_level(ideal.space()) {
            return Ok(t);
        }
    }
    Err(Error::NotMPrimary {
        order: 32,
        what: "ideal has no power of m certificate".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifted_colon_removes_socle() {
        let r = Ring::build(5, &["x", "y"], &[], 6).unwrap();
        let zero = Ideal::zero(&r);
        let x = r.var(0);
        assert_eq!(zero.colon(&x).unwrap().ideal.rank(), 6);
        assert!(lifted_colon(&zero, &x, 2).unwrap().is_zero());

        let s = Ring::build(5, &["x", "y", "z"], &["x*y", "x*z"], 6).unwrap();
        let c = lifted_colon(&Ideal::zero(&s), &s.var(2), 4).unwrap();
        let expected = Ideal::parse(&s, &["x"]).unwrap();
        assert_eq!(&c, expected.space());
    }

    #[test]
    fn annihilator_of_residue_field() {
        let r = Ring::build(3, &["x", "y"], &[], 6).unwrap();
        let m = Ideal::maximal(&r);
        let m2 = m.power(2);
        assert_eq!(annihilating_power(&r, 1, m.space(), m2.space()), 1);
        assert_eq!(
            annihilating_power(&r, 1, &Subspace::full(r.field(), r.dim()), m2.space()),
            2
        );
        let zero = Subspace::zero(r.field(), r.dim());
        assert_eq!(annihilating_power(&r, 1, m.space(), &zero), 5);
    }

    #[test]
    fn spec_levels() {
        let spec = RingSpec::new(3, &["x", "y"], &[]).unwrap();
        assert_eq!(spec_level(&spec, &spec.parse_all(&["x^2", "y^3"]).unwrap()).unwrap(), 4);
        assert!(spec_level(&spec, &spec.parse_all(&["x"]).unwrap()).is_err());
    }
}
