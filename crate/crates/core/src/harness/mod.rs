//! Seeded perturbation experiments: draw perturbations from `m^N`, sweep `N`,
//! and locate the smallest depth past which every sample keeps the
//! associated graded Hilbert function.

mod catalog;

use std::ops::RangeInclusive;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng as _, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::certified::{CertifiedValue, Status};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::invariants::{
    default_ar_window, default_order, filter_regular_check, filter_regular_sequence_check, gr_hilbert_function,
    koszul_report, primary_level, HilbertTable, Precision,
};
use crate::ring::{Element, Ring, RingSpec};
use crate::verify::{bound_n_one_element, Baseline, Claim, Outcome, VerdictRecord};

pub use catalog::{catalog, catalog_entry, CatalogEntry};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub p: u64,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    pub sequence: Vec<String>,
    pub j: Vec<String>,
    /// Truncation order; `None` picks the default rule.
    pub order: Option<usize>,
    pub n_max: usize,
    /// Perturbation depths to sweep; may be empty.
    pub n_range: RangeInclusive<usize>,
    pub samples: usize,
    pub seed: u64,
    pub delta: usize,
    pub lift: usize,
    /// Checks run on every sample.
    pub claims: Vec<Claim>,
    /// Use `eps = 0` for every sample.
    pub zero_perturbation: bool,
    pub catalog: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let p = Precision::default();
        Self {
            p: 5,
            vars: vec!["x".into(), "y".into()],
            relations: Vec::new(),
            sequence: Vec::new(),
            j: Vec::new(),
            order: None,
            n_max: 8,
            #[allow(clippy::reversed_empty_ranges)]
            n_range: 1..=0,
            samples: 20,
            seed: 0,
            delta: p.delta,
            lift: p.lift,
            claims: Claim::ALL.to_vec(),
            zero_perturbation: false,
            catalog: None,
        }
    }
}

/// A configuration resolved to concrete ring elements.
#[derive(Debug, Clone)]
pub struct Problem {
    pub ring: Arc<Ring>,
    pub sequence: Vec<Element>,
    pub j: Ideal,
    pub n_max: usize,
    pub precision: Precision,
}

impl ExperimentConfig {
    pub fn spec(&self) -> Result<RingSpec> {
        let vars: Vec<&str> = self.vars.iter().map(String::as_str).collect();
        let rels: Vec<&str> = self.relations.iter().map(String::as_str).collect();
        RingSpec::new(self.p, &vars, &rels)
    }

    pub fn precision(&self) -> Precision {
        Precision::new(self.delta, self.lift)
    }

    /// The explicit order, or the least order making the Hilbert table up to
    /// `n_max` and the Artin–Rees windows exact, and exceeding every depth.
    pub fn resolve_order(&self) -> Result<usize> {
        if let Some(d) = self.order {
            return Ok(d);
        }
        let spec = self.spec()?;
        let seq = spec.parse_all(&self.sequence)?;
        let j = spec.parse_all(&self.j)?;
        let both: Vec<_> = seq.iter().chain(&j).cloned().collect();
        let t = primary_level(&spec, &both)?.max(1);
        let window = |t: usize| t * default_ar_window(t) + 2;
        let mut d = default_order(t, self.n_max).max(window(t));
        if let Ok(tj) = primary_level(&spec, &j) {
            d = d.max(window(tj.max(1)));
        }
        if !self.n_range.is_empty() {
            d = d.max(self.n_range.end() + 1);
        }
        Ok(d)
    }

    pub fn problem(&self) -> Result<Problem> {
        if self.sequence.is_empty() {
            return Err(Error::InvalidArgument("sequence is empty".into()));
        }
        let order = self.resolve_order()?;
        let ring = self.spec()?.build(order)?;
        let sequence = self
            .sequence
            .iter()
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        let j = Ideal::parse(&ring, &self.j)?;
        Ok(Problem {
            ring,
            sequence,
            j,
            n_max: self.n_max,
            precision: self.precision(),
        })
    }

    /// sha256 of a canonical rendering of every field that affects results.
    pub fn digest(&self) -> String {
        let claims: Vec<&str> = self.claims.iter().map(|c| c.as_str()).collect();
        let text = format!(
            "p={}\nvars={}\nrelations={}\nsequence={}\nj={}\norder={:?}\nn_max={}\nrange={}..={}\nsamples={}\nseed={}\ndelta={}\nlift={}\nclaims={}\nzero={}\n",
            self.p,
            self.vars.join(","),
            self.relations.join(";"),
            self.sequence.join(";"),
            self.j.join(";"),
            self.order,
            self.n_max,
            self.n_range.start(),
            self.n_range.end(),
            self.samples,
            self.seed,
            self.delta,
            self.lift,
            claims.join(","),
            self.zero_perturbation,
        );
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

/// `count` elements of `m^n`, each with independent uniform coefficients on
/// the standard monomials of degree in `[n, D)`.
pub fn sample_in_power(ring: &Arc<Ring>, n: usize, seed: u64, count: usize) -> Result<Vec<Element>> {
    if n >= ring.order() {
        return Err(Error::TruncationTooSmall {
            order: ring.order(),
            needed: format!("sampling m^{n} needs order > {n}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = ring.field().characteristic();
    let start = ring.degree_start(n);
    Ok((0..count)
        .map(|_| {
            let mut coords = vec![0u32; ring.dim()];
            for c in &mut coords[start..] {
                *c = rng.gen_range(0..p);
            }
            ring.element_from_coords(coords)
        })
        .collect())
}

/// Per-sample seeds at one depth: the ChaCha8 stream `depth` of `seed`.
pub fn sample_seeds(seed: u64, depth: usize, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(depth as u64);
    (0..count).map(|_| rng.next_u64()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trial {
    pub depth: usize,
    pub sample: usize,
    pub seed: u64,
    pub perturbation: Vec<String>,
    pub verdicts: Vec<VerdictRecord>,
    pub errors: Vec<String>,
}

impl Trial {
    pub fn verdict(&self, claim: Claim) -> Option<&VerdictRecord> {
        self.verdicts.iter().find(|v| v.claim == claim)
    }
}

/// A named scalar result computed once per experiment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub value: String,
    pub certification: Status,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub config_digest: String,
    pub catalog: Option<String>,
    pub order: usize,
    pub n_max: usize,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    /// Associated graded Hilbert function of `R/(f)`.
    pub table: Option<HilbertTable>,
    pub bound: Option<String>,
    pub theoretical_n: Option<CertifiedValue>,
    pub trials: Vec<Trial>,
    /// Least depth from which every sample at every larger depth passes the
    /// main equality check.
    pub n_star: Option<usize>,
    /// `N* <= theoretical N` for a single element.
    pub bound_respected: Option<bool>,
    pub errors: Vec<String>,
    pub elapsed: Duration,
}

impl ExperimentReport {
    pub fn verdicts(&self) -> impl Iterator<Item = &VerdictRecord> {
        self.trials.iter().flat_map(|t| &t.verdicts)
    }

    pub fn count(&self, claim: Claim, outcome: Outcome) -> usize {
        self.verdicts()
            .filter(|v| v.claim == claim && v.outcome == outcome)
            .count()
    }

    pub fn has_violation(&self) -> bool {
        self.bound_respected == Some(false) || self.verdicts().any(|v| v.outcome == Outcome::Violated)
    }

    /// Number of verdicts at each certification level.
    pub fn certification_summary(&self) -> Vec<(Status, usize)> {
        [Status::Exact, Status::TwoLevelStable, Status::Uncertified]
            .into_iter()
            .map(|s| (s, self.verdicts().filter(|v| v.certification == s).count()))
            .collect()
    }
}

fn run_claim(base: &Baseline, claim: Claim, eps: &[Element]) -> Result<VerdictRecord> {
    match claim {
        Claim::MainEquality => base.check_main_equality(eps),
        Claim::Monotonicity => base.check_surjection_monotonicity(eps),
        Claim::ControlColon => base.check_control_colon(eps),
        Claim::Preservation => base.check_perturbed_filter_regular(eps),
        Claim::ArComparison => base.report_ar_comparison(eps),
    }
}

fn run_trial(base: &Baseline, config: &ExperimentConfig, depth: usize, sample: usize, seed: u64) -> Trial {
    let r = base.sequence().len();
    let eps = if config.zero_perturbation {
        Ok(vec![base.ring().zero(); r])
    } else {
        sample_in_power(base.ring(), depth, seed, r)
    };
    let mut trial = Trial {
        depth,
        sample,
        seed,
        perturbation: Vec::new(),
        verdicts: Vec::new(),
        errors: Vec::new(),
    };
    match eps {
        Ok(eps) => {
            trial.perturbation = eps.iter().map(|e| e.to_string()).collect();
            for &claim in &config.claims {
                match run_claim(base, claim, &eps) {
                    Ok(v) => trial.verdicts.push(v),
                    Err(e) => trial.errors.push(format!("{claim}: {e}")),
                }
            }
        }
        Err(e) => trial.errors.push(e.to_string()),
    }
    trial
}

fn sweep(problem: &Problem, config: &ExperimentConfig) -> Result<(Vec<Trial>, Option<usize>)> {
    let base = Baseline::new(&problem.sequence, &problem.j, problem.n_max, &problem.precision)?;
    let jobs: Vec<(usize, usize, u64)> = config
        .n_range
        .clone()
        .flat_map(|depth| {
            sample_seeds(config.seed, depth, config.samples)
                .into_iter()
                .enumerate()
                .map(move |(s, seed)| (depth, s, seed))
        })
        .collect();
    let trials: Vec<Trial> = jobs
        .par_iter()
        .map(|&(depth, sample, seed)| run_trial(&base, config, depth, sample, seed))
        .collect();

    let n_star = if config.claims.contains(&Claim::MainEquality) {
        let depths: Vec<usize> = config.n_range.clone().collect();
        let passes = |d: usize| {
            trials.iter().filter(|t| t.depth == d).all(|t| {
                t.verdict(Claim::MainEquality)
                    .is_some_and(|v| v.outcome == Outcome::Verified)
            })
        };
        let mut first = None;
        for &d in depths.iter().rev() {
            if passes(d) {
                first = Some(d);
            } else {
                break;
            }
        }
        first
    } else {
        None
    };
    Ok((trials, n_star))
}

fn execute(config: &ExperimentConfig, with_checks: bool) -> Result<ExperimentReport> {
    let start = Instant::now();
    let problem = config.problem()?;
    let p = &problem.precision;
    let mut report = ExperimentReport {
        config_digest: config.digest(),
        catalog: config.catalog.clone(),
        order: problem.ring.order(),
        n_max: config.n_max,
        seed: config.seed,
        checks: Vec::new(),
        table: None,
        bound: None,
        theoretical_n: None,
        trials: Vec::new(),
        n_star: None,
        bound_respected: None,
        errors: Vec::new(),
        elapsed: Duration::ZERO,
    };

    if with_checks {
        let zero = Ideal::zero(&problem.ring);
        for (k, f) in problem.sequence.iter().enumerate() {
            match filter_regular_check(&zero, f, p) {
                Ok(rep) => report.checks.push(CheckRecord {
                    name: format!("filter-regular f{}", k + 1),
                    value: rep.regular.to_string(),
                    certification: rep.h.status,
                }),
                Err(e) => report.errors.push(format!("filter-regular f{}: {e}", k + 1)),
            }
        }
        let mut orders = vec![("sequence", problem.sequence.clone())];
        if problem.sequence.len() > 1 {
            orders.push(("reversed sequence", problem.sequence.iter().rev().cloned().collect()));
        }
        for (name, seq) in orders {
            match filter_regular_sequence_check(&seq, p) {
                Ok(rep) => {
                    let value = match rep.failing_index {
                        None => "true".to_string(),
                        Some(i) => format!("false at {i}"),
                    };
                    let certification = rep.steps.iter().fold(Status::Exact, |s, st| s.meet(st.h.status));
                    report.checks.push(CheckRecord {
                        name: format!("filter-regular {name}"),
                        value,
                        certification,
                    });
                }
                Err(e) => report.errors.push(format!("filter-regular {name}: {e}")),
            }
        }
        match koszul_report(&problem.sequence, p) {
            Ok(k) => {
                for h in &k.homology {
                    report.checks.push(CheckRecord {
                        name: format!("koszul H{}", h.degree),
                        value: h.length.value.to_string(),
                        certification: h.length.status,
                    });
                }
            }
            Err(e) => report.errors.push(format!("koszul: {e}")),
        }
        match Ideal::new(&problem.ring, problem.sequence.clone())
            .and_then(|i| gr_hilbert_function(&i, &problem.j, config.n_max))
        {
            Ok(t) => report.table = Some(t),
            Err(e) => report.errors.push(format!("hilbert: {e}")),
        }
    }

    if problem.sequence.len() == 1 {
        match bound_n_one_element(&problem.sequence[0], &problem.j, p) {
            Ok(b) => {
                report.bound = Some(b.to_string());
                report.theoretical_n = Some(b.n);
            }
            Err(e) => report.errors.push(format!("bound: {e}")),
        }
    }

    let (trials, n_star) = sweep(&problem, config)?;
    report.trials = trials;
    report.n_star = n_star;
    if let Some(theo) = report.theoretical_n.as_ref().and_then(|n| n.certified_finite()) {
        let theo = theo as usize;
        report.bound_respected = match n_star {
            Some(ns) => Some(ns <= theo),
            None if config.n_range.contains(&theo) && config.claims.contains(&Claim::MainEquality) => Some(false),
            None => None,
        };
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Sweeps the configured depths and reports `N*`, with the explicit bound
/// for comparison when the sequence has one element.
pub fn find_min_n(config: &ExperimentConfig) -> Result<ExperimentReport> {
    execute(config, false)
}

/// Full report: filter-regularity checks, Koszul homology, the Hilbert
/// table of `R/(f)`, the explicit bound and the depth sweep. Failures of
/// individual components are collected in `errors`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    execute(config, true)
}
