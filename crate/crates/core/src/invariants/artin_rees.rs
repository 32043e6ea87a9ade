use crate::certified::{CertifiedValue, Flag, Value};
use crate::error::{Error, Result};
use crate::ideal::Ideal;

use super::{ring_at, Filtration, Precision};

/// Default window for Artin–Rees searches when `m^t ⊆ J`.
pub fn default_ar_window(level: usize) -> usize {
    2 * level + 4
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArReport {
    /// Least `s` passing on the window; `>= n_max` when only the trivial
    /// candidate passes.
    pub value: CertifiedValue,
    /// `(s - 1, n)`: the candidate just below the result fails at `n`.
    pub witness: Option<(usize, usize)>,
    pub n_max: usize,
}

/// Result of the window search at one truncation order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Window {
    value: Value,
    witness: Option<(usize, usize)>,
}

/// Least `s <= n_max` with `J^n ∩ I = J^{n-s}(J^s ∩ I)` for all
/// `s <= n <= n_max`.
fn window_search(i: &Ideal, j: &Ideal, n_max: usize) -> Result<Window> {
    let ring = i.ring();
    let level = ring
        .certified_power_level(j.space())
        .ok_or_else(|| Error::NotMPrimary {
            order: ring.order(),
            what: "J".into(),
        })?;
    if n_max * level + 2 > ring.order() {
        return Err(Error::TruncationTooSmall {
            order: ring.order(),
            needed: format!("Artin-Rees window {n_max} needs order >= {}", n_max * level + 2),
        });
    }
    let filt = Filtration::new(j, n_max);
    let jgens: Vec<Vec<u32>> = j.gens().iter().map(|g| g.coords().to_vec()).collect();
    let meets: Vec<_> = (0..=n_max).map(|n| filt.power(n).intersection(i.space())).collect();

    let mut failure: Option<(usize, usize)> = None;
    for s in 0..=n_max {
        let mut prod = meets[s].clone();
        let mut failed_at = None;
        for n in s + 1..=n_max {
            prod = ring.product_span(&prod, &jgens);
            if prod != meets[n] {
                failed_at = Some(n);
                break;
            }
        }
        match failed_at {
            Some(n) => failure = Some((s, n)),
            None => {
                let value = if s == n_max && s > 0 {
                    Value::AtLeast(s as u64)
                } else {
                    Value::Finite(s as u64)
                };
                return Ok(Window {
                    value,
                    witness: failure,
                });
            }
        }
    }
    unreachable!("s = n_max always passes")
}

/// Artin–Rees number of `I` with respect to `J` over the window
/// `n <= n_max`, at orders `D` and `D + delta`. Always a lower bound for the
/// true number and flagged as such.
pub fn ar_number(i: &Ideal, j: &Ideal, n_max: usize, precision: &Precision) -> Result<ArReport> {
    let ring = i.ring();
    if !ring.same_ring(j.ring()) {
        return Err(Error::MixedRings);
    }
    let mut readings = Vec::new();
    let mut witness = None;
    for (k, order) in precision.levels(ring.order()).into_iter().enumerate() {
        let r = ring_at(ring, order)?;
        let w = window_search(&i.transfer(&r)?, &j.transfer(&r)?, n_max)?;
        if k == 0 {
            witness = w.witness;
        }
        readings.push((order, w.value));
    }
    Ok(ArReport {
        value: CertifiedValue::from_levels(readings).with_flag(Flag::WindowLowerBound),
        witness,
        n_max,
    })
}
