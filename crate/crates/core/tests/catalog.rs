use filtreg::harness::{catalog, catalog_entry, find_min_n, run_experiment, sample_in_power, sample_seeds};
use filtreg::invariants::{filter_regular_check, filter_regular_sequence_check, koszul_homology, Precision};
use filtreg::verify::{bound_n_one_element, Baseline, Claim, Outcome};
use filtreg::{Ideal, Status, Value};

#[test]
fn image_of_first_element_is_filter_regular_mod_the_rest() {
    let p = Precision::default();
    let mut seen = 0;
    for entry in catalog().iter().filter(|e| e.sequence.len() >= 2) {
        let problem = entry.config().problem().unwrap();
        let fs = &problem.sequence;
        if !filter_regular_sequence_check(fs, &p).unwrap().regular {
            continue;
        }
        let rest = Ideal::new(&problem.ring, fs[1..].to_vec()).unwrap();
        let rep = filter_regular_check(&rest, &fs[0], &p).unwrap();
        assert!(rep.regular, "{}", entry.id);
        seen += 1;
    }
    assert_eq!(seen, 2);
}

#[test]
fn koszul_h0_is_the_quotient_length() {
    let p = Precision::default();
    for entry in catalog() {
        let problem = entry.config().problem().unwrap();
        let i = Ideal::new(&problem.ring, problem.sequence.clone()).unwrap();
        let len = i.length();
        let h0 = koszul_homology(&problem.sequence, 0, &p).unwrap().length;
        if len.status == Status::Exact {
            assert_eq!(h0.value, len.value, "{}", entry.id);
            assert!(h0.is_certified());
        } else {
            assert_eq!(len.value, Value::Infinite);
        }
    }
}

#[test]
fn remark_sequence_facts() {
    let problem = catalog_entry("remark-2-4").unwrap().config().problem().unwrap();
    let p = problem.precision;
    let (s, z) = (&problem.sequence[0], &problem.sequence[1]);
    let zero = Ideal::zero(&problem.ring);
    assert!(!filter_regular_check(&zero, z, &p).unwrap().regular);
    let plus = filter_regular_check(&zero, s, &p).unwrap();
    assert!(plus.regular);
    assert_eq!(plus.h.value, Value::Finite(1));
    let back = filter_regular_sequence_check(&[z.clone(), s.clone()], &p).unwrap();
    assert_eq!(back.failing_index, Some(1));
}

#[test]
fn certified_values_agree_across_precision() {
    for entry in catalog() {
        let problem = entry.config().problem().unwrap();
        let zero = Ideal::zero(&problem.ring);
        let (two, four) = (Precision::new(2, 4), Precision::new(4, 4));
        for f in &problem.sequence {
            let a = filter_regular_check(&zero, f, &two).unwrap();
            let b = filter_regular_check(&zero, f, &four).unwrap();
            if a.h.is_certified() && b.h.is_certified() {
                assert_eq!(a.h.value, b.h.value, "{}", entry.id);
                assert_eq!(a.regular, b.regular, "{}", entry.id);
            }
        }
        for i in 0..=problem.sequence.len() {
            let a = koszul_homology(&problem.sequence, i, &two).unwrap().length;
            let b = koszul_homology(&problem.sequence, i, &four).unwrap().length;
            if a.is_certified() && b.is_certified() {
                assert_eq!(a.value, b.value, "{} H{i}", entry.id);
            }
        }
    }
}

#[test]
fn bound_then_main_equality_on_single_elements() {
    for entry in catalog().iter().filter(|e| e.genuine && e.sequence.len() == 1) {
        let problem = entry.config().problem().unwrap();
        let f = &problem.sequence[0];
        let b = bound_n_one_element(f, &problem.j, &problem.precision).unwrap();
        let n = b.n.certified_finite().unwrap() as usize;
        let base = Baseline::new(&problem.sequence, &problem.j, problem.n_max, &problem.precision).unwrap();
        for seed in sample_seeds(17, n, 10) {
            let eps = sample_in_power(&problem.ring, n, seed, 1).unwrap();
            let v = base.check_main_equality(&eps).unwrap();
            assert_eq!(v.outcome, Outcome::Verified, "{} {}", entry.id, eps[0]);
        }
    }
}

#[test]
fn zero_perturbation_verifies_every_claim() {
    for entry in catalog().iter().filter(|e| e.genuine) {
        let problem = entry.config().problem().unwrap();
        let base = Baseline::new(&problem.sequence, &problem.j, problem.n_max, &problem.precision).unwrap();
        let eps = vec![problem.ring.zero(); problem.sequence.len()];
        for v in [
            base.check_main_equality(&eps).unwrap(),
            base.check_surjection_monotonicity(&eps).unwrap(),
            base.check_control_colon(&eps).unwrap(),
            base.check_perturbed_filter_regular(&eps).unwrap(),
            base.report_ar_comparison(&eps).unwrap(),
        ] {
            assert_eq!(v.outcome, Outcome::Verified, "{}: {v}", entry.id);
        }
    }
}

#[test]
fn main_equality_refines_downward() {
    let problem = catalog_entry("node-sum").unwrap().config().problem().unwrap();
    let p = problem.precision;
    let big = Baseline::new(&problem.sequence, &problem.j, 8, &p).unwrap();
    for seed in sample_seeds(1, 2, 6) {
        let eps = sample_in_power(&problem.ring, 2, seed, 1).unwrap();
        if big.check_main_equality(&eps).unwrap().outcome == Outcome::Verified {
            for n in 0..8 {
                let small = Baseline::new(&problem.sequence, &problem.j, n, &p).unwrap();
                assert_eq!(small.check_main_equality(&eps).unwrap().outcome, Outcome::Verified);
            }
        }
    }
}

#[test]
fn experiments_are_deterministic() {
    let mut config = catalog_entry("node-sum").unwrap().config();
    config.n_range = 1..=3;
    config.samples = 4;
    config.seed = 77;
    let a = run_experiment(&config).unwrap();
    let b = run_experiment(&config).unwrap();
    assert_eq!(a.trials, b.trials);
    assert_eq!(a.checks, b.checks);
    assert_eq!(a.n_star, b.n_star);
    assert_eq!(a.config_digest, b.config_digest);
}

#[test]
fn n_star_never_decreases_with_n_max() {
    let mut config = catalog_entry("remark-2-4").unwrap().config();
    config.order = Some(11);
    config.n_range = 1..=4;
    config.samples = 6;
    config.seed = 3;
    config.claims = vec![Claim::MainEquality];
    let mut last = 0;
    for n_max in [2, 5, 8] {
        config.n_max = n_max;
        let n_star = find_min_n(&config).unwrap().n_star.unwrap_or(usize::MAX);
        assert!(n_star >= last, "n_max {n_max}: {n_star} < {last}");
        last = n_star;
    }
}

#[test]
fn genuine_entries_never_violate_past_n_star() {
    for entry in catalog().iter().filter(|e| e.genuine) {
        let mut config = entry.config();
        config.n_range = 1..=4;
        config.samples = 4;
        config.seed = 12;
        config.claims = vec![Claim::MainEquality, Claim::Monotonicity];
        let rep = find_min_n(&config).unwrap();
        let n_star = rep.n_star.expect(entry.id);
        for t in rep.trials.iter().filter(|t| t.depth >= n_star) {
            assert_eq!(t.verdict(Claim::MainEquality).unwrap().outcome, Outcome::Verified);
        }
        assert_eq!(rep.count(Claim::Monotonicity, Outcome::Violated), 0, "{}", entry.id);
    }
}
