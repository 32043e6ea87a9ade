use crate::certified::{CertifiedValue, Flag, Value};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::Element;

use super::{annihilating_power, check_same_ring, lifted_colon, ring_at, Precision};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterRegularReport {
    pub regular: bool,
    /// Least `h >= 1` with `m^h (I : f) ⊆ I`.
    pub h: CertifiedValue,
    /// `l((I : f)/I)`.
    pub colon_length: CertifiedValue,
    /// `f` is a unit.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceReport {
    pub regular: bool,
    /// 1-based position of the first element that fails.
    pub failing_index: Option<usize>,
    /// One report per element checked, stopping at the first failure.
    pub steps: Vec<FilterRegularReport>,
}

/// Tests whether `f` is filter-regular on `R/I`, i.e. whether `(I : f)/I`
/// is killed by a power of `m`.
///
/// When `I` is certified m-primary the answer is exact. Otherwise `h` is read
/// at `D` and `D + delta` from lifted colons, and `f` passes only when the
/// readings agree and `h + order(f) + 1 <= D`.
pub fn filter_regular_check(i: &Ideal, f: &Element, precision: &Precision) -> Result<FilterRegularReport> {
    let ring = i.ring();
    check_same_ring(ring, std::slice::from_ref(f))?;
    let degenerate = f.is_unit();
    let order = ring.order();

    let mut hs = Vec::new();
    let mut lens = Vec::new();
    let levels = if i.is_m_primary() {
        vec![order]
    } else {
        precision.levels(order)
    };
    for d in &levels {
        let r = ring_at(ring, *d)?;
        let (ir, fr) = (i.transfer(&r)?, f.transfer(&r)?);
        let colon = lifted_colon(&ir, &fr, precision.lift)?;
        let h = annihilating_power(&r, 1, &colon, ir.space());
        hs.push((*d, Value::Finite(h as u64)));
        lens.push((*d, Value::Finite((colon.rank() - ir.space().rank()) as u64)));
    }

    let (h, colon_length, regular) = if levels.len() == 1 && i.is_m_primary() {
        let h = hs[0].1.finite().unwrap();
        let len = lens[0].1.finite().unwrap();
        (CertifiedValue::exact(h, order), CertifiedValue::exact(len, order), true)
    } else {
        let h = CertifiedValue::from_levels(hs);
        let len = CertifiedValue::from_levels(lens);
        let f_order = f.order().unwrap_or(0);
        let fits = h.finite().unwrap() as usize + f_order < order;
        let regular = h.is_certified() && fits;
        (h, len, regular)
    };
    let (h, colon_length) = if degenerate {
        (h.with_flag(Flag::Degenerate), colon_length.with_flag(Flag::Degenerate))
    } else {
        (h, colon_length)
    };
    Ok(FilterRegularReport {
        regular,
        h,
        colon_length,
        degenerate,
    })
}

/// Checks `f_{k+1}` against `(f_1..f_k)` for each `k`, stopping at the first
/// failure.
pub fn filter_regular_sequence_check(fs: &[Element], precision: &Precision) -> Result<SequenceReport> {
    let Some(first) = fs.first() else {
        return Err(Error::InvalidArgument("empty sequence".into()));
    };
    let ring = first.ring().clone();
    check_same_ring(&ring, fs)?;
    let mut steps = Vec::new();
    for (k, f) in fs.iter().enumerate() {
        let prefix = Ideal::new(&ring, fs[..k].to_vec())?;
        let step = filter_regular_check(&prefix, f, precision)?;
        let ok = step.regular;
        steps.push(step);
        if !ok {
            return Ok(SequenceReport {
                regular: false,
                failing_index: Some(k + 1),
                steps,
            });
        }
    }
    Ok(SequenceReport {
        regular: true,
        failing_index: None,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certified::Status;
    use crate::ring::Ring;
    use std::sync::Arc;

    fn remark(d: usize) -> Arc<Ring> {
        Ring::build(5, &["x", "y", "z"], &["x*y", "x*z"], d).unwrap()
    }

    fn check(r: &Arc<Ring>, f: &str) -> FilterRegularReport {
        filter_regular_check(&Ideal::zero(r), &r.parse(f).unwrap(), &Precision::default()).unwrap()
    }

    #[test]
    fn z_is_not_filter_regular() {
        let rep = check(&remark(8), "z");
        assert!(!rep.regular);
        assert_eq!(rep.h.status, Status::Uncertified);
    }

    #[test]
    fn x_plus_y_is_filter_regular() {
        let rep = check(&remark(8), "x+y");
        assert!(rep.regular);
        assert_eq!(rep.h.value, Value::Finite(1));
        assert_eq!(rep.colon_length.value, Value::Finite(0));
        assert_eq!(rep.h.status, Status::TwoLevelStable);
    }

    #[test]
    fn nonzerodivisor_in_plane() {
        let r = Ring::build(5, &["x", "y"], &[], 8).unwrap();
        let rep = check(&r, "x");
        assert!(rep.regular);
        assert_eq!(rep.h.value, Value::Finite(1));
    }

    #[test]
    fn nilpotent_is_not_filter_regular() {
        let r = Ring::build(5, &["x", "y"], &["x^2"], 8).unwrap();
        assert!(!check(&r, "x").regular);
        assert!(check(&r, "y").regular);
    }

    #[test]
    fn zero_divisor_with_finite_colon() {
        // (0 : x) = (y^2), a copy of the residue field
        let r = Ring::build(5, &["x", "y"], &["x*y^2", "y^3"], 8).unwrap();
        let rep = check(&r, "x");
        assert!(rep.regular);
        assert_eq!(rep.h.value, Value::Finite(1));
        assert_eq!(rep.colon_length.value, Value::Finite(1));
    }

    #[test]
    fn unit_is_degenerate() {
        let rep = check(&remark(8), "1 + x");
        assert!(rep.regular && rep.degenerate);
        assert!(rep.h.has_flag(Flag::Degenerate));
    }

    #[test]
    fn primary_ideal_is_exact() {
        let r = Ring::build(5, &["x", "y"], &[], 8).unwrap();
        let i = Ideal::parse(&r, &["x^2", "y^3"]).unwrap();
        let rep = filter_regular_check(&i, &r.var(0), &Precision::default()).unwrap();
        assert!(rep.regular);
        assert_eq!(rep.h.status, Status::Exact);
        // (I : x)/I = (x, y^3)/(x^2, y^3) spanned by x, xy, xy^2
        assert_eq!(rep.colon_length.value, Value::Finite(3));
    }

    #[test]
    fn sequences() {
        let r = remark(8);
        let p = Precision::default();
        let xy = r.parse("x+y").unwrap();
        let z = r.var(2);
        let good = filter_regular_sequence_check(&[xy.clone(), z.clone()], &p).unwrap();
        assert!(good.regular);
        assert_eq!(good.steps.len(), 2);
        let bad = filter_regular_sequence_check(&[z, xy], &p).unwrap();
        assert!(!bad.regular);
        assert_eq!(bad.failing_index, Some(1));
        assert_eq!(bad.steps.len(), 1);

        let plane = Ring::build(5, &["x", "y"], &[], 8).unwrap();
        assert!(filter_regular_sequence_check(&plane.vars(), &p).unwrap().regular);
    }
}
