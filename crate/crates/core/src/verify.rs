//! Executable checks of the perturbation results: the explicit bound for a
//! single element, the surjection between associated graded rings, the
//! control of colons by Koszul homology, preservation of filter-regularity
//! and equality of associated graded Hilbert functions.

use std::fmt;
use std::sync::{Arc, OnceLock};

use sha2::{Digest, Sha256};

use crate::certified::{CertifiedValue, Flag, Status, Value};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::invariants::{
    annihilating_power_of, ar_number, check_same_ring, default_ar_window, filter_regular_check,
    filter_regular_sequence_check, gr_hilbert_function, koszul_homology_length, lifted_colon, ring_at, Filtration,
    HilbertTable, Precision, SequenceReport,
};
use crate::ring::{Element, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    MainEquality,
    Monotonicity,
    ControlColon,
    Preservation,
    ArComparison,
}

impl Claim {
    pub const ALL: [Claim; 5] = [
        Claim::MainEquality,
        Claim::Monotonicity,
        Claim::ControlColon,
        Claim::Preservation,
        Claim::ArComparison,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Claim::MainEquality => "main",
            Claim::Monotonicity => "monotonicity",
            Claim::ControlColon => "control-colon",
            Claim::Preservation => "preservation",
            Claim::ArComparison => "ar-comparison",
        }
    }

    pub fn parse(s: &str) -> Option<Claim> {
        Claim::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Verified,
    Violated,
    Inconclusive,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Verified => "verified",
            Outcome::Violated => "violated",
            Outcome::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One compared quantity: a table degree, a sequence position, or a single
/// invariant (index 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub index: usize,
    pub orig: Value,
    pub pert: Value,
    pub certification: Status,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictRecord {
    pub claim: Claim,
    /// sha256 of the canonical inputs.
    pub digest: String,
    pub outcome: Outcome,
    /// First degree or 1-based position where the claim fails.
    pub witness: Option<usize>,
    pub certification: Status,
    /// The unperturbed sequence is not filter-regular.
    pub negative_control: bool,
    pub rows: Vec<Row>,
    /// m-adic order of each perturbation (`None` for zero).
    pub perturbation_orders: Vec<Option<usize>>,
    pub note: String,
}

impl fmt::Display for VerdictRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.claim, self.outcome)?;
        if let Some(w) = self.witness {
            write!(f, " at {w}")?;
        }
        write!(f, " [{}]", self.certification.as_str())?;
        if self.negative_control {
            write!(f, " (negative control)")?;
        }
        if !self.note.is_empty() {
            write!(f, " {}", self.note)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct BoundReport {
    /// Least `t >= 1` with `m^t ⊆ (f) + J`.
    pub t: CertifiedValue,
    /// Artin–Rees number of `(f)` with respect to `(f) + J`.
    pub k: CertifiedValue,
    /// Least `h >= 1` with `m^h (0 : f) = 0`.
    pub h: CertifiedValue,
    /// `max(t (k + 1), h)`.
    pub n: CertifiedValue,
    /// The m-primary ideal `(f) + J` used in place of `J`.
    pub replaced_j: Ideal,
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t={} k={} h={} N={}",
            self.t.value, self.k.value, self.h.value, self.n.value
        )
    }
}

/// Explicit `N` such that every perturbation of `f` by an element of `m^N`
/// leaves the associated graded ring of `R/(f)` unchanged.
pub fn bound_n_one_element(f: &Element, j: &Ideal, precision: &Precision) -> Result<BoundReport> {
    let ring = f.ring();
    if !ring.same_ring(j.ring()) {
        return Err(Error::MixedRings);
    }
    let fr = filter_regular_check(&Ideal::zero(ring), f, precision)?;
    if !fr.regular {
        return Err(Error::NotFilterRegular(format!(
            "(0 : {f}) is not annihilated by a power of m: h readings {}",
            readings(&fr.h)
        )));
    }
    let fideal = Ideal::new(ring, vec![f.clone()])?;
    let replaced = fideal.sum(j)?;
    let level = ring
        .certified_power_level(replaced.space())
        .ok_or_else(|| Error::NotMPrimary {
            order: ring.order(),
            what: "(f) + J".into(),
        })?;
    let t = level.max(1);
    let ar = ar_number(&fideal, &replaced, default_ar_window(t), precision)?;
    let k = ar.value;
    let h = fr.h;
    let hv = h.finite().expect("filter-regular h is finite") as usize;
    let (value, status) = match k.value {
        Value::Finite(kv) => (
            Value::Finite((t * (kv as usize + 1)).max(hv) as u64),
            k.status.meet(h.status),
        ),
        other => {
            let kv = match other {
                Value::AtLeast(v) => v as usize,
                _ => default_ar_window(t),
            };
            (Value::AtLeast((t * (kv + 1)).max(hv) as u64), Status::Uncertified)
        }
    };
    let n = CertifiedValue {
        value,
        status,
        readings: vec![(ring.order(), value)],
        flags: vec![Flag::WindowLowerBound],
    };
    Ok(BoundReport {
        t: CertifiedValue::exact(t as u64, ring.order()),
        k,
        h,
        n,
        replaced_j: replaced,
    })
}

fn readings(v: &CertifiedValue) -> String {
    let parts: Vec<String> = v.readings.iter().map(|(l, x)| format!("{x}@{l}")).collect();
    parts.join(",")
}

/// `f_i + eps_i`.
pub fn perturb(fs: &[Element], eps: &[Element]) -> Result<Vec<Element>> {
    if fs.len() != eps.len() {
        return Err(Error::InvalidArgument(format!(
            "{} generators but {} perturbations",
            fs.len(),
            eps.len()
        )));
    }
    fs.iter().zip(eps).map(|(f, e)| f.add(e)).collect()
}

/// sha256 over a canonical rendering of the inputs of a check.
pub fn inputs_digest(
    claim: Claim,
    ring: &Ring,
    fs: &[Element],
    eps: &[Element],
    j: Option<&Ideal>,
    n_max: Option<usize>,
    precision: &Precision,
) -> String {
    let spec = ring.spec();
    let rels: Vec<String> = spec.relations().iter().map(|r| r.to_string()).collect();
    let show = |es: &[Element]| es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(";");
    let jg = j.map(|j| show(j.gens())).unwrap_or_default();
    let text = format!(
        "claim={}\np={}\nvars={}\nrelations={}\norder={}\nf={}\neps={}\nJ={}\nn_max={:?}\ndelta={}\nlift={}\n",
        claim,
        spec.field().characteristic(),
        spec.vars().join(","),
        rels.join(";"),
        ring.order(),
        show(fs),
        show(eps),
        jg,
        n_max,
        precision.delta,
        precision.lift,
    );
    hex::encode(Sha256::digest(text.as_bytes()))
}

fn generated(fs: &[Element]) -> Result<Ideal> {
    let ring = fs
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty sequence".into()))?
        .ring();
    Ideal::new(ring, fs.to_vec())
}

/// Pairs table entries; a failure counts only when both entries are certified.
fn compare_tables(
    orig: &HilbertTable,
    pert: &HilbertTable,
    fails: impl Fn(Value, Value) -> bool,
) -> (Vec<Row>, Outcome, Option<usize>) {
    let mut rows = Vec::new();
    let mut witness = None;
    let mut uncertified = false;
    for (n, (a, b)) in orig.entries.iter().zip(&pert.entries).enumerate() {
        let certification = a.status.meet(b.status);
        if certification == Status::Uncertified {
            uncertified = true;
        } else if witness.is_none() && fails(a.value, b.value) {
            witness = Some(n);
        }
        rows.push(Row {
            index: n,
            orig: a.value,
            pert: b.value,
            certification,
        });
    }
    let outcome = if witness.is_some() {
        Outcome::Violated
    } else if uncertified {
        Outcome::Inconclusive
    } else {
        Outcome::Verified
    };
    (rows, outcome, witness)
}

fn overall(rows: &[Row]) -> Status {
    rows.iter().fold(Status::Exact, |s, r| s.meet(r.certification))
}

fn orders(eps: &[Element]) -> Vec<Option<usize>> {
    eps.iter().map(|e| e.order()).collect()
}

#[allow(clippy::too_many_arguments)]
fn record(
    claim: Claim,
    digest: String,
    outcome: Outcome,
    witness: Option<usize>,
    negative_control: bool,
    rows: Vec<Row>,
    eps: &[Element],
    note: String,
) -> VerdictRecord {
    VerdictRecord {
        claim,
        digest,
        outcome,
        witness,
        certification: overall(&rows),
        negative_control,
        rows,
        perturbation_orders: orders(eps),
        note,
    }
}

/// Facts about an unperturbed sequence, computed on first use and shared by
/// the checks of any number of perturbations.
#[derive(Debug)]
pub struct Baseline {
    fs: Vec<Element>,
    j: Ideal,
    n_max: usize,
    precision: Precision,
    sequence: OnceLock<Result<SequenceReport>>,
    h1: OnceLock<Result<CertifiedValue>>,
    table: OnceLock<Result<HilbertTable>>,
    ar: OnceLock<Result<(Ideal, usize, CertifiedValue)>>,
}

impl Baseline {
    pub fn new(fs: &[Element], j: &Ideal, n_max: usize, precision: &Precision) -> Result<Self> {
        let ring = generated(fs)?.ring().clone();
        check_same_ring(&ring, fs)?;
        if !ring.same_ring(j.ring()) {
            return Err(Error::MixedRings);
        }
        Ok(Self {
            fs: fs.to_vec(),
            j: j.clone(),
            n_max,
            precision: *precision,
            sequence: OnceLock::new(),
            h1: OnceLock::new(),
            table: OnceLock::new(),
            ar: OnceLock::new(),
        })
    }

    pub fn sequence(&self) -> &[Element] {
        &self.fs
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.j.ring()
    }

    pub fn sequence_report(&self) -> Result<&SequenceReport> {
        self.sequence
            .get_or_init(|| filter_regular_sequence_check(&self.fs, &self.precision))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn negative_control(&self) -> Result<bool> {
        Ok(!self.sequence_report()?.regular)
    }

    /// `l(H_1(f; R))`.
    pub fn koszul_h1(&self) -> Result<&CertifiedValue> {
        self.h1
            .get_or_init(|| koszul_homology_length(&self.fs, 1, &self.precision))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn table(&self) -> Result<&HilbertTable> {
        self.table
            .get_or_init(|| gr_hilbert_function(&generated(&self.fs)?, &self.j, self.n_max))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// `(J', window, ar_{J'}((f)))` with `J' = J` when `J` is m-primary and
    /// `(f) + J` otherwise.
    fn artin_rees(&self) -> Result<&(Ideal, usize, CertifiedValue)> {
        self.ar
            .get_or_init(|| {
                let i = generated(&self.fs)?;
                let jj = if self.j.is_m_primary() {
                    self.j.clone()
                } else {
                    i.sum(&self.j)?
                };
                let ring = self.ring();
                let level = ring
                    .certified_power_level(jj.space())
                    .ok_or_else(|| Error::NotMPrimary {
                        order: ring.order(),
                        what: "(f) + J".into(),
                    })?;
                let window = default_ar_window(level.max(1));
                let value = ar_number(&i, &jj, window, &self.precision)?.value;
                Ok((jj, window, value))
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    fn digest(&self, claim: Claim, eps: &[Element], with_j: bool) -> String {
        let (j, n) = if with_j {
            (Some(&self.j), Some(self.n_max))
        } else {
            (None, None)
        };
        inputs_digest(claim, self.ring(), &self.fs, eps, j, n, &self.precision)
    }

    /// The graded pieces of `R/(f + eps)` are bounded by those of `R/(f)`
    /// once every `eps_i` lies in `J^{k+1}`, `k` the Artin–Rees number of `(f)`.
    pub fn check_surjection_monotonicity(&self, eps: &[Element]) -> Result<VerdictRecord> {
        let claim = Claim::Monotonicity;
        let digest = self.digest(claim, eps, true);
        let pert = perturb(&self.fs, eps)?;
        let inconclusive = |note: String| {
            record(
                claim,
                digest.clone(),
                Outcome::Inconclusive,
                None,
                false,
                Vec::new(),
                eps,
                note,
            )
        };

        if !self.j.is_m_primary() {
            return Ok(inconclusive("J is not certified m-primary".into()));
        }
        let (_, _, ar) = self.artin_rees()?;
        let Some(k) = ar.certified_finite() else {
            return Ok(inconclusive(format!("Artin-Rees number not determined: {ar}")));
        };
        let filt = Filtration::new(&self.j, k as usize + 1);
        if let Some(pos) = eps
            .iter()
            .position(|e| !filt.power(k as usize + 1).contains(e.coords()))
        {
            return Ok(inconclusive(format!("perturbation {} is not in J^{}", pos + 1, k + 1)));
        }
        let new = gr_hilbert_function(&generated(&pert)?, &self.j, self.n_max)?;
        let (rows, outcome, witness) = compare_tables(
            self.table()?,
            &new,
            |a, b| matches!((a, b), (Value::Finite(a), Value::Finite(b)) if b > a),
        );
        Ok(record(
            claim,
            digest,
            outcome,
            witness,
            false,
            rows,
            eps,
            format!("k={k}"),
        ))
    }

    /// Equality of the associated graded Hilbert functions of `R/(f)` and
    /// `R/(f + eps)` in degrees `0..=n_max`.
    pub fn check_main_equality(&self, eps: &[Element]) -> Result<VerdictRecord> {
        let claim = Claim::MainEquality;
        let digest = self.digest(claim, eps, true);
        let pert = perturb(&self.fs, eps)?;
        let negative = self.negative_control()?;
        let new = gr_hilbert_function(&generated(&pert)?, &self.j, self.n_max)?;
        let (rows, outcome, witness) = compare_tables(self.table()?, &new, |a, b| a != b);
        Ok(record(
            claim,
            digest,
            outcome,
            witness,
            negative,
            rows,
            eps,
            String::new(),
        ))
    }

    /// For each `i`, `l((A_i : g_i)/A_i) <= h` and `m^h (A_i : g_i) ⊆ A_i`,
    /// where `g = f + eps`, `A_i` is generated by the other `g_j` and
    /// `h = l(H_1(f; R))`.
    pub fn check_control_colon(&self, eps: &[Element]) -> Result<VerdictRecord> {
        let claim = Claim::ControlColon;
        let digest = self.digest(claim, eps, false);
        let pert = perturb(&self.fs, eps)?;
        let negative = self.negative_control()?;
        let h1 = self.koszul_h1()?;
        let Some(h) = h1.certified_finite() else {
            return Ok(record(
                claim,
                digest,
                Outcome::Inconclusive,
                None,
                negative,
                Vec::new(),
                eps,
                format!("H_1 length not certified: {h1}"),
            ));
        };
        let mut rows = Vec::new();
        let mut witness = None;
        let mut uncertified = false;
        for i in 0..pert.len() {
            let (len, kills) = colon_against_rest(&pert, i, h as usize, &self.precision)?;
            let mut certification = len.status.meet(h1.status);
            if kills.is_none() {
                certification = Status::Uncertified;
            }
            if certification == Status::Uncertified {
                uncertified = true;
            } else if witness.is_none() && (len.finite().unwrap() > h || kills == Some(false)) {
                witness = Some(i + 1);
            }
            rows.push(Row {
                index: i + 1,
                orig: Value::Finite(h),
                pert: len.value,
                certification,
            });
        }
        let outcome = match (witness, uncertified) {
            (Some(_), _) => Outcome::Violated,
            (None, true) => Outcome::Inconclusive,
            (None, false) => Outcome::Verified,
        };
        Ok(record(
            claim,
            digest,
            outcome,
            witness,
            negative,
            rows,
            eps,
            format!("h={h}"),
        ))
    }

    /// Whether `f + eps` is still a filter-regular sequence. A failing step
    /// (including an unstable annihilator exponent) is reported as a
    /// violation at that position.
    pub fn check_perturbed_filter_regular(&self, eps: &[Element]) -> Result<VerdictRecord> {
        let claim = Claim::Preservation;
        let digest = self.digest(claim, eps, false);
        let pert = perturb(&self.fs, eps)?;
        let orig = self.sequence_report()?;
        let new = filter_regular_sequence_check(&pert, &self.precision)?;
        let rows = (0..self.fs.len())
            .map(|k| {
                let a = orig.steps.get(k).map(|s| &s.h);
                let b = new.steps.get(k).map(|s| &s.h);
                Row {
                    index: k + 1,
                    orig: a.map_or(Value::Infinite, |v| v.value),
                    pert: b.map_or(Value::Infinite, |v| v.value),
                    certification: match (a, b) {
                        (Some(a), Some(b)) => a.status.meet(b.status),
                        _ => Status::Uncertified,
                    },
                }
            })
            .collect();
        let (outcome, witness) = if new.regular {
            (Outcome::Verified, None)
        } else {
            (Outcome::Violated, new.failing_index)
        };
        Ok(record(
            claim,
            digest,
            outcome,
            witness,
            !orig.regular,
            rows,
            eps,
            String::new(),
        ))
    }

    /// Artin–Rees numbers of `(f)` and `(f + eps)` over the default window.
    /// Recorded, never judged: equal values are `verified`, different values
    /// `inconclusive`.
    pub fn report_ar_comparison(&self, eps: &[Element]) -> Result<VerdictRecord> {
        let claim = Claim::ArComparison;
        let digest = inputs_digest(claim, self.ring(), &self.fs, eps, Some(&self.j), None, &self.precision);
        let pert = perturb(&self.fs, eps)?;
        let negative = self.negative_control()?;
        let (jj, window, a) = self.artin_rees()?;
        let b = ar_number(&generated(&pert)?, jj, *window, &self.precision)?.value;
        let rows = vec![Row {
            index: 0,
            orig: a.value,
            pert: b.value,
            certification: a.status.meet(b.status),
        }];
        let outcome = if a.value == b.value {
            Outcome::Verified
        } else {
            Outcome::Inconclusive
        };
        Ok(record(
            claim,
            digest,
            outcome,
            None,
            negative,
            rows,
            eps,
            format!("window={window}"),
        ))
    }
}

/// Colon quotient of one perturbed element against the others, read at
/// `D` and `D + delta`: `(length, m^h kills it)`.
fn colon_against_rest(
    g: &[Element],
    i: usize,
    h: usize,
    precision: &Precision,
) -> Result<(CertifiedValue, Option<bool>)> {
    let ring = g[i].ring().clone();
    let rest: Vec<Element> = g
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != i)
        .map(|(_, e)| e.clone())
        .collect();
    let rest = Ideal::new(&ring, rest)?;
    let exact = rest.is_m_primary();
    let levels = if exact {
        vec![ring.order()]
    } else {
        precision.levels(ring.order())
    };
    let mut lens = Vec::new();
    let mut kills = Vec::new();
    for d in levels {
        let r = ring_at(&ring, d)?;
        let a = rest.transfer(&r)?;
        let c = lifted_colon(&a, &g[i].transfer(&r)?, precision.lift)?;
        lens.push((d, Value::Finite((c.rank() - a.space().rank()) as u64)));
        kills.push(annihilating_power_of(&r, h, &c, a.space()));
    }
    let len = if exact {
        CertifiedValue::exact(lens[0].1.finite().unwrap(), ring.order())
    } else {
        CertifiedValue::from_levels(lens)
    };
    let agreed = kills.iter().all(|k| *k == kills[0]);
    Ok((len, agreed.then_some(kills[0])))
}

pub fn check_surjection_monotonicity(
    fs: &[Element],
    eps: &[Element],
    j: &Ideal,
    n_max: usize,
    precision: &Precision,
) -> Result<VerdictRecord> {
    Baseline::new(fs, j, n_max, precision)?.check_surjection_monotonicity(eps)
}

pub fn check_main_equality(
    fs: &[Element],
    eps: &[Element],
    j: &Ideal,
    n_max: usize,
    precision: &Precision,
) -> Result<VerdictRecord> {
    Baseline::new(fs, j, n_max, precision)?.check_main_equality(eps)
}

pub fn check_control_colon(fs: &[Element], eps: &[Element], precision: &Precision) -> Result<VerdictRecord> {
    let ring = generated(fs)?.ring().clone();
    Baseline::new(fs, &Ideal::maximal(&ring), 0, precision)?.check_control_colon(eps)
}

pub fn check_perturbed_filter_regular(fs: &[Element], eps: &[Element], precision: &Precision) -> Result<VerdictRecord> {
    let ring = generated(fs)?.ring().clone();
    Baseline::new(fs, &Ideal::maximal(&ring), 0, precision)?.check_perturbed_filter_regular(eps)
}

pub fn report_ar_comparison(
    fs: &[Element],
    eps: &[Element],
    j: &Ideal,
    precision: &Precision,
) -> Result<VerdictRecord> {
    Baseline::new(fs, j, 0, precision)?.report_ar_comparison(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;

    fn plane(d: usize) -> Arc<Ring> {
        Ring::build(5, &["x", "y"], &[], d).unwrap()
    }

    fn els(r: &Arc<Ring>, xs: &[&str]) -> Vec<Element> {
        xs.iter().map(|x| r.parse(x).unwrap()).collect()
    }

    #[test]
    fn bound_for_line() {
        let r = plane(11);
        let rep = bound_n_one_element(&r.var(0), &Ideal::maximal(&r), &Precision::default()).unwrap();
        assert_eq!(rep.to_string(), "t=1 k=1 h=1 N=2");
        assert!(rep.n.is_certified());
    }

    #[test]
    fn bound_rejects_nilpotent() {
        let r = Ring::build(5, &["x", "y"], &["x^2"], 11).unwrap();
        let err = bound_n_one_element(&r.var(0), &Ideal::maximal(&r), &Precision::default()).unwrap_err();
        assert!(matches!(err, Error::NotFilterRegular(_)));
    }

    #[test]
    fn main_equality_for_line() {
        let r = plane(11);
        let m = Ideal::maximal(&r);
        let p = Precision::default();
        let v = check_main_equality(&els(&r, &["x"]), &els(&r, &["y^2"]), &m, 8, &p).unwrap();
        assert_eq!(v.outcome, Outcome::Verified);
        assert_eq!(v.certification, Status::Exact);
        assert_eq!(v.rows.len(), 9);
        let v = check_main_equality(&els(&r, &["x"]), &els(&r, &["0"]), &m, 8, &p).unwrap();
        assert_eq!(v.outcome, Outcome::Verified);
    }

    #[test]
    fn negative_control_node() {
        let r = Ring::build(5, &["x", "y"], &["x*y"], 11).unwrap();
        let m = Ideal::maximal(&r);
        let v = check_main_equality(&els(&r, &["y"]), &els(&r, &["x^3"]), &m, 8, &Precision::default()).unwrap();
        assert!(v.negative_control);
        assert_eq!(v.outcome, Outcome::Violated);
        // R/(y + x^3) is k[x]/(x^4)
        assert_eq!(v.witness, Some(4));
        let pert: Vec<u64> = v.rows.iter().map(|r| r.pert.finite().unwrap()).collect();
        assert_eq!(pert, vec![1, 1, 1, 1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn monotonicity_examples() {
        let p = Precision::default();
        let r = plane(11);
        let m = Ideal::maximal(&r);
        let v = check_surjection_monotonicity(&els(&r, &["x"]), &els(&r, &["y^2"]), &m, 8, &p).unwrap();
        assert_eq!(v.outcome, Outcome::Verified);
        assert!(v.rows.iter().all(|r| r.orig == r.pert));

        let s = Ring::build(5, &["x", "y"], &["x*y"], 11).unwrap();
        let m = Ideal::maximal(&s);
        let v = check_surjection_monotonicity(&els(&s, &["y"]), &els(&s, &["x^3"]), &m, 8, &p).unwrap();
        assert_eq!(v.outcome, Outcome::Verified);
        assert!(v.rows.iter().any(|r| r.pert.finite() < r.orig.finite()));

        let v = check_surjection_monotonicity(&els(&s, &["y"]), &els(&s, &["x"]), &m, 8, &p).unwrap();
        assert_eq!(v.outcome, Outcome::Inconclusive);
    }

    #[test]
    fn control_colon_examples() {
        let p = Precision::default();
        let r = plane(8);
        let v = check_control_colon(&r.vars(), &els(&r, &["y^3", "x^2*y"]), &p).unwrap();
        assert_eq!(v.outcome, Outcome::Verified);
        assert!(v.rows.iter().all(|r| r.pert == Value::Finite(0)));

        let s = Ring::build(5, &["x", "y", "z"], &["x*y", "x*z"], 8).unwrap();
        let v = check_control_colon(&els(&s, &["x+y", "z"]), &els(&s, &["0", "0"]), &p).unwrap();
        assert_eq!(v.outcome, Outcome::Verified, "{v}");
    }

    #[test]
    fn preservation_examples() {
        let p = Precision::default();
        let s = Ring::build(5, &["x", "y", "z"], &["x*y", "x*z"], 8).unwrap();
        let fs = els(&s, &["x+y", "z"]);
        let v = check_perturbed_filter_regular(&fs, &els(&s, &["0", "0"]), &p).unwrap();
        assert_eq!(v.outcome, Outcome::Verified);
        let v = check_perturbed_filter_regular(&fs, &els(&s, &["y^3", "x^3"]), &p).unwrap();
        assert_eq!(v.outcome, Outcome::Verified);
        assert_eq!(v.perturbation_orders, vec![Some(3), Some(3)]);

        let r = plane(8);
        let v = check_perturbed_filter_regular(&els(&r, &["x"]), &els(&r, &["y"]), &p).unwrap();
        assert_eq!(v.outcome, Outcome::Verified);
        let v = check_perturbed_filter_regular(&els(&s, &["z", "x+y"]), &els(&s, &["0", "0"]), &p).unwrap();
        assert!(v.negative_control);
        assert_eq!((v.outcome, v.witness), (Outcome::Violated, Some(1)));
    }

    #[test]
    fn ar_comparison_line() {
        let r = plane(11);
        let m = Ideal::maximal(&r);
        let v = report_ar_comparison(&els(&r, &["x"]), &els(&r, &["y^2"]), &m, &Precision::default()).unwrap();
        assert_eq!(v.outcome, Outcome::Verified);
        assert_eq!(v.rows[0].orig, Value::Finite(1));
        assert_eq!(v.rows[0].pert, Value::Finite(1));
    }

    #[test]
    fn digests_are_stable() {
        let r = plane(8);
        let p = Precision::default();
        let a = inputs_digest(
            Claim::MainEquality,
            &r,
            &r.vars(),
            &els(&r, &["0", "0"]),
            None,
            Some(3),
            &p,
        );
        let b = inputs_digest(
            Claim::MainEquality,
            &r,
            &r.vars(),
            &els(&r, &["0", "0"]),
            None,
            Some(3),
            &p,
        );
        let c = inputs_digest(
            Claim::MainEquality,
            &r,
            &r.vars(),
            &els(&r, &["0", "0"]),
            None,
            Some(4),
            &p,
        );
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 64);
    }

    #[test]
    fn claim_names_round_trip() {
        for c in Claim::ALL {
            assert_eq!(Claim::parse(c.as_str()), Some(c));
        }
    }
}
