use std::path::Path;

use filtreg::harness::{find_min_n, run_experiment, ExperimentConfig, ExperimentReport, Problem, Trial};
use filtreg::invariants::{
    ar_number, default_ar_window, filter_regular_check, filter_regular_sequence_check, gr_hilbert_function,
    hilbert_samuel_table, koszul_homology, HilbertTable,
};
use filtreg::verify::{bound_n_one_element, Baseline, Claim, Outcome, VerdictRecord};
use filtreg::{CertifiedValue, Ideal, Status};

use crate::manifest::{Manifest, OrderSpec};
use crate::report::{Report, ReportRow};
use crate::CliError;

pub fn run_manifest(text: &str) -> Result<Report, CliError> {
    let manifest = Manifest::parse(text).map_err(CliError::Parse)?;
    run_parsed(&manifest)
}

pub fn run_manifest_path(path: &Path) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    run_manifest(&text)
}

pub fn run_parsed(m: &Manifest) -> Result<Report, CliError> {
    let config = m.config()?;
    let problem = config.problem()?;
    let mut report = Report::new(&m.task.command, problem.ring.order(), m.ring.order == OrderSpec::Auto);
    match m.task.command.as_str() {
        "check-filter-regular" => check_filter_regular(m, &problem, &mut report)?,
        "hilbert" => hilbert(m, &problem, &mut report)?,
        "ar-number" => artin_rees(m, &problem, &mut report)?,
        "koszul" => koszul(m, &problem, &mut report)?,
        "bound-n" => bound(&problem, &mut report)?,
        "verify" => verify(m, &config, &problem, &mut report)?,
        "find-min-n" => sweep(find_min_n(&config)?, &mut report),
        "experiment" => sweep(run_experiment(&config)?, &mut report),
        other => return Err(CliError::Manifest(format!("unknown command `{other}`"))),
    }
    Ok(report)
}

fn status_str(s: Status) -> String {
    s.as_str().to_string()
}

fn value_row(claim: &str, n: Option<usize>, v: &CertifiedValue, status: &str) -> ReportRow {
    ReportRow {
        claim: claim.to_string(),
        n,
        value_orig: v.value.to_string(),
        status: status.to_string(),
        certification: status_str(v.status),
        ..ReportRow::default()
    }
}

fn table_rows(claim: &str, t: &HilbertTable) -> Vec<ReportRow> {
    t.entries
        .iter()
        .enumerate()
        .map(|(n, e)| value_row(claim, Some(n), e, "computed"))
        .collect()
}

fn check_filter_regular(m: &Manifest, problem: &Problem, report: &mut Report) -> Result<(), CliError> {
    let ring = &problem.ring;
    let seq = &problem.sequence;
    if seq.len() == 1 {
        let base = match &m.task.modulo {
            Some(r) => Ideal::parse(ring, &m.resolve(r)?)?,
            None => Ideal::zero(ring),
        };
        let rep = filter_regular_check(&base, &seq[0], &problem.precision)?;
        report.summary.push(rep.regular.to_string());
        let mut row = value_row("filter-regular", Some(1), &rep.h, &rep.regular.to_string());
        row.value_pert = rep.colon_length.value.to_string();
        report.rows.push(row);
        return Ok(());
    }
    if m.task.modulo.is_some() {
        return Err(CliError::Manifest("`modulo` applies to a single element".into()));
    }
    let rep = filter_regular_sequence_check(seq, &problem.precision)?;
    report.summary.push(match rep.failing_index {
        None => "true".to_string(),
        Some(i) => format!("false at {i}"),
    });
    for (k, step) in rep.steps.iter().enumerate() {
        let mut row = value_row("filter-regular", Some(k + 1), &step.h, &step.regular.to_string());
        row.value_pert = step.colon_length.value.to_string();
        report.rows.push(row);
    }
    Ok(())
}

fn hilbert(m: &Manifest, problem: &Problem, report: &mut Report) -> Result<(), CliError> {
    let i = Ideal::new(&problem.ring, problem.sequence.clone())?;
    let (name, table) = match m.task.convention.as_deref().unwrap_or("gr") {
        "gr" => ("gr", gr_hilbert_function(&i, &problem.j, problem.n_max)?),
        "hilbert-samuel" => ("hilbert-samuel", hilbert_samuel_table(&i, &problem.j, problem.n_max)?),
        other => {
            return Err(CliError::Manifest(format!(
                "unknown convention `{other}`; expected gr or hilbert-samuel"
            )))
        }
    };
    report.summary.push(table.to_string());
    report.rows = table_rows(name, &table);
    report.tables.push((name.to_string(), table));
    Ok(())
}

fn artin_rees(m: &Manifest, problem: &Problem, report: &mut Report) -> Result<(), CliError> {
    let i = Ideal::new(&problem.ring, problem.sequence.clone())?;
    let window = match m.task.n_max {
        Some(n) => n,
        None => {
            let t = problem.j.m_primary_level().finite().unwrap_or(1);
            default_ar_window(t.max(1) as usize)
        }
    };
    let rep = ar_number(&i, &problem.j, window, &problem.precision)?;
    let mut line = format!("k={}", rep.value.value);
    if let Some((s, n)) = rep.witness {
        line.push_str(&format!(" (inclusion fails at s={s}, n={n})"));
    }
    report.summary.push(line);
    report.rows.push(value_row("ar-number", None, &rep.value, "computed"));
    Ok(())
}

fn koszul(m: &Manifest, problem: &Problem, report: &mut Report) -> Result<(), CliError> {
    let r = problem.sequence.len();
    let degrees: Vec<usize> = match m.task.degree {
        Some(i) => vec![i],
        None => (0..=r).collect(),
    };
    let mut parts = Vec::new();
    for i in degrees {
        let h = koszul_homology(&problem.sequence, i, &problem.precision)?;
        parts.push(format!("H{i}={}", h.length.value));
        report.rows.push(value_row("koszul", Some(i), &h.length, "computed"));
    }
    report.summary.push(parts.join(" "));
    Ok(())
}

fn bound(problem: &Problem, report: &mut Report) -> Result<(), CliError> {
    let [f] = problem.sequence.as_slice() else {
        return Err(CliError::Manifest("bound-n takes a single element".into()));
    };
    let b = bound_n_one_element(f, &problem.j, &problem.precision)?;
    report.summary.push(b.to_string());
    for (name, v) in [
        ("bound-t", &b.t),
        ("bound-k", &b.k),
        ("bound-h", &b.h),
        ("bound-N", &b.n),
    ] {
        report.rows.push(value_row(name, None, v, "computed"));
    }
    Ok(())
}

fn verify(m: &Manifest, config: &ExperimentConfig, problem: &Problem, report: &mut Report) -> Result<(), CliError> {
    let claim = m
        .task
        .claim
        .as_deref()
        .ok_or_else(|| CliError::Manifest("verify needs `claim`".into()))?;
    let claim = Claim::parse(claim).ok_or_else(|| CliError::Manifest(format!("unknown claim `{claim}`")))?;
    let Some(pert) = &m.task.perturbation else {
        if config.n_range.is_empty() {
            return Err(CliError::Manifest("verify needs `perturbation` or `n-range`".into()));
        }
        let config = ExperimentConfig {
            claims: vec![claim],
            ..config.clone()
        };
        sweep(find_min_n(&config)?, report);
        return Ok(());
    };
    let eps = pert
        .iter()
        .map(|s| problem.ring.parse(s))
        .collect::<filtreg::Result<Vec<_>>>()?;
    let base = Baseline::new(&problem.sequence, &problem.j, problem.n_max, &problem.precision)?;
    let v = match claim {
        Claim::MainEquality => base.check_main_equality(&eps),
        Claim::Monotonicity => base.check_surjection_monotonicity(&eps),
        Claim::ControlColon => base.check_control_colon(&eps),
        Claim::Preservation => base.check_perturbed_filter_regular(&eps),
        Claim::ArComparison => base.report_ar_comparison(&eps),
    }?;
    report.summary.push(v.to_string());
    report.violated = v.outcome == Outcome::Violated;
    report.rows.extend(verdict_rows(&v, None, None, None));
    Ok(())
}

fn verdict_rows(v: &VerdictRecord, depth: Option<usize>, sample: Option<usize>, seed: Option<u64>) -> Vec<ReportRow> {
    let base = ReportRow {
        claim: v.claim.as_str().to_string(),
        depth,
        sample,
        status: v.outcome.as_str().to_string(),
        certification: status_str(v.certification),
        seed,
        ..ReportRow::default()
    };
    if v.rows.is_empty() {
        return vec![base];
    }
    v.rows
        .iter()
        .map(|r| ReportRow {
            n: Some(r.index),
            value_orig: r.orig.to_string(),
            value_pert: r.pert.to_string(),
            certification: status_str(r.certification),
            ..base.clone()
        })
        .collect()
}

fn trial_rows(t: &Trial) -> Vec<ReportRow> {
    t.verdicts
        .iter()
        .flat_map(|v| verdict_rows(v, Some(t.depth), Some(t.sample), Some(t.seed)))
        .collect()
}

fn sweep(rep: ExperimentReport, report: &mut Report) {
    for c in &rep.checks {
        report
            .summary
            .push(format!("{}: {} [{}]", c.name, c.value, c.certification.as_str()));
        report.rows.push(ReportRow {
            claim: c.name.clone(),
            value_orig: c.value.clone(),
            status: "computed".into(),
            certification: status_str(c.certification),
            ..ReportRow::default()
        });
    }
    if let Some(t) = &rep.table {
        report.summary.push(format!("gr: {t}"));
        report.rows.extend(table_rows("gr", t));
        report.tables.push(("gr".into(), t.clone()));
    }
    if let Some(b) = &rep.bound {
        report.summary.push(format!("bound: {b}"));
    }
    let depths: Vec<usize> = {
        let mut d: Vec<usize> = rep.trials.iter().map(|t| t.depth).collect();
        d.dedup();
        d
    };
    if !depths.is_empty() {
        match rep.n_star {
            Some(n) => report.summary.push(format!("N*={n}")),
            None => report.summary.push("N*=none".into()),
        }
    }
    if let Some(ok) = rep.bound_respected {
        report.summary.push(format!("bound respected: {ok}"));
    }
    for claim in Claim::ALL {
        let counts: Vec<String> = [Outcome::Verified, Outcome::Violated, Outcome::Inconclusive]
            .into_iter()
            .map(|o| (o, rep.count(claim, o)))
            .filter(|(_, n)| *n > 0)
            .map(|(o, n)| format!("{n} {o}"))
            .collect();
        if !counts.is_empty() {
            report.summary.push(format!("{claim}: {}", counts.join(", ")));
        }
    }
    if rep.trials.iter().any(|t| !t.verdicts.is_empty()) {
        let cert: Vec<String> = rep
            .certification_summary()
            .into_iter()
            .map(|(s, n)| format!("{n} {}", s.as_str()))
            .collect();
        report.summary.push(format!("certification: {}", cert.join(", ")));
    }
    for t in &rep.trials {
        report.rows.extend(trial_rows(t));
        for e in &t.errors {
            report.errors.push(format!("N={} sample={}: {e}", t.depth, t.sample));
        }
    }
    report.errors.extend(rep.errors.iter().cloned());
    report.violated = rep.has_violation();
}
