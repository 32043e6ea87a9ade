use std::fmt;
use std::sync::Arc;

use crate::certified::{CertifiedValue, Status, Value};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::linalg::Subspace;
use crate::poly::TruncPoly;
use crate::ring::{Ring, RingSpec};

use super::spec_level;

/// Powers `J^0 = R, J^1, ..., J^n` as subspaces of `R/m^D`.
#[derive(Debug, Clone)]
pub struct Filtration {
    ring: Arc<Ring>,
    powers: Vec<Subspace>,
}

impl Filtration {
    pub fn new(j: &Ideal, n: usize) -> Self {
        let ring = j.ring().clone();
        let gens: Vec<Vec<u32>> = j.gens().iter().map(|g| g.coords().to_vec()).collect();
        let mut powers = vec![Subspace::full(ring.field(), ring.dim())];
        for k in 1..=n {
            let next = if k == 1 {
                j.space().clone()
            } else {
                ring.product_span(&powers[k - 1], &gens)
            };
            powers.push(next);
        }
        Self { ring, powers }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Largest exponent available.
    pub fn top(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn power(&self, n: usize) -> &Subspace {
        &self.powers[n]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `n -> l(R/(I + J^{n+1}))`.
    QuotientLength,
    /// `n -> l((I + J^n)/(I + J^{n+1}))`.
    Graded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTable {
    pub convention: Convention,
    pub entries: Vec<CertifiedValue>,
}

impl HilbertTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&CertifiedValue> {
        self.entries.get(n)
    }

    pub fn values(&self) -> Vec<Value> {
        self.entries.iter().map(|e| e.value).collect()
    }

    /// Plain integers when every entry is certified.
    pub fn certified_values(&self) -> Option<Vec<u64>> {
        self.entries.iter().map(|e| e.certified_finite()).collect()
    }

    pub fn status(&self) -> Status {
        self.entries.iter().fold(Status::Exact, |s, e| s.meet(e.status))
    }
}

impl fmt::Display for HilbertTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.entries.iter().map(|e| e.value.to_string()).collect();
        write!(f, "{}", vals.join(","))
    }
}

/// Truncation order that makes every Hilbert entry up to `n_max` exact
/// when `I + J` contains `m^level`.
pub fn default_order(level: usize, n_max: usize) -> usize {
    (level * (n_max + 1) + 2).max(8)
}

/// Least `t` with `m^t ⊆ (gens)`, certified over some finite truncation.
pub fn primary_level(spec: &RingSpec, gens: &[TruncPoly]) -> Result<usize> {
    spec_level(spec, gens)
}

fn check_primary(i: &Ideal, j: &Ideal) -> Result<()> {
    let sum = i.sum(j)?;
    if sum.is_m_primary() {
        Ok(())
    } else {
        Err(Error::NotMPrimary {
            order: i.ring().order(),
            what: "I + J".into(),
        })
    }
}

fn quotient_length(ring: &Ring, space: &Subspace) -> CertifiedValue {
    let codim = space.codim() as u64;
    if ring.certified_power_level(space).is_some() {
        CertifiedValue::exact(codim, ring.order())
    } else {
        CertifiedValue::uncertified(Value::Finite(codim), vec![(ring.order(), Value::Finite(codim))])
    }
}

/// `l(R/(I + J^{n+1}))`.
pub fn hilbert_samuel(i: &Ideal, j: &Ideal, n: usize) -> Result<CertifiedValue> {
    Ok(hilbert_samuel_table(i, j, n)?.entries.pop().expect("nonempty table"))
}

pub fn hilbert_samuel_table(i: &Ideal, j: &Ideal, n_max: usize) -> Result<HilbertTable> {
    check_primary(i, j)?;
    let ring = i.ring();
    let filt = Filtration::new(j, n_max + 1);
    let entries = (0..=n_max)
        .map(|n| quotient_length(ring, &i.space().sum(filt.power(n + 1))))
        .collect();
    Ok(HilbertTable {
        convention: Convention::QuotientLength,
        entries,
    })
}

/// Graded pieces `l((I + J^n)/(I + J^{n+1}))` for `0 <= n <= n_max`.
pub fn gr_hilbert_function(i: &Ideal, j: &Ideal, n_max: usize) -> Result<HilbertTable> {
    let hs = hilbert_samuel_table(i, j, n_max)?;
    let mut entries = Vec::with_capacity(hs.len());
    let mut prev: Option<&CertifiedValue> = None;
    for cur in &hs.entries {
        let (a, b) = (cur.finite().unwrap_or(0), prev.and_then(|p| p.finite()).unwrap_or(0));
        let value = a.saturating_sub(b);
        let status = prev.map_or(cur.status, |p| p.status.meet(cur.status));
        let mut readings = cur.readings.clone();
        for r in readings.iter_mut() {
            r.1 = Value::Finite(value);
        }
        entries.push(CertifiedValue {
            value: Value::Finite(value),
            status,
            readings,
            flags: Vec::new(),
        });
        prev = Some(cur);
    }
    Ok(HilbertTable {
        convention: Convention::Graded,
        entries,
    })
}
