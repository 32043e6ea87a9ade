use std::sync::Arc;

use filtreg::invariants::{ar_number, gr_hilbert_function, hilbert_samuel_table, Precision};
use filtreg::{Ideal, Ring, Status, Value};
use proptest::prelude::*;

/// A polynomial with no constant term, as text.
fn poly(max_deg: u32) -> impl Strategy<Value = String> {
    prop::collection::vec((1u32..5, 0u32..=max_deg, 0u32..=max_deg), 1..4).prop_map(|terms| {
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(c, a, b)| {
                let (a, b) = if a + b == 0 { (1, 0) } else { (a, b) };
                format!("{c}*x^{a}*y^{b}")
            })
            .collect();
        parts.join(" + ")
    })
}

fn gens(max_deg: u32) -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(poly(max_deg), 1..3)
}

/// `(p, relations, order)`.
fn ring() -> impl Strategy<Value = (u64, Vec<String>, usize)> {
    (
        prop::sample::select(vec![2u64, 3, 5]),
        prop::collection::vec(poly(3), 0..2)
            .prop_map(|rs| rs.into_iter().map(|r| format!("x*y*({r}) + x^3")).collect::<Vec<_>>()),
        4usize..=6,
    )
}

fn build(p: u64, rels: &[String], order: usize) -> Arc<Ring> {
    let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
    Ring::build(p, &["x", "y"], &rels, order).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn colength_plus_rank_is_dim((p, rels, d) in ring(), a in gens(3)) {
        let r = build(p, &rels, d);
        let a = Ideal::parse(&r, &a).unwrap();
        prop_assert_eq!(a.colength() + a.rank(), r.dim());
    }

    #[test]
    fn modular_law((p, rels, d) in ring(), a in gens(3), b in gens(3), c in gens(3)) {
        let r = build(p, &rels, d);
        let a = Ideal::parse(&r, &a).unwrap();
        let b = Ideal::parse(&r, &b).unwrap();
        let c = a.sum(&Ideal::parse(&r, &c).unwrap()).unwrap();
        let lhs = a.sum(&b.intersection(&c).unwrap()).unwrap();
        let rhs = a.sum(&b).unwrap().intersection(&c).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn colon_times_f_lies_in_ideal((p, rels, d) in ring(), a in gens(3), f in poly(3)) {
        let r = build(p, &rels, d);
        let a = Ideal::parse(&r, &a).unwrap();
        let f = r.parse(&f).unwrap();
        let colon = a.colon(&f).unwrap().ideal;
        prop_assert!(colon.contains_ideal(&a));
        for g in colon.gens() {
            prop_assert!(a.contains(&g.mul(&f).unwrap()));
        }
    }

    #[test]
    fn products_and_powers_shrink((p, rels, d) in ring(), a in gens(3), b in gens(3)) {
        let r = build(p, &rels, d);
        let a = Ideal::parse(&r, &a).unwrap();
        let b = Ideal::parse(&r, &b).unwrap();
        let ab = a.product(&b).unwrap();
        prop_assert!(a.intersection(&b).unwrap().contains_ideal(&ab));
        prop_assert!(a.contains_ideal(&a.power(2)));
        prop_assert!(a.power(2).contains_ideal(&a.power(3)));
        prop_assert!(a.power(2).equals(&a.product(&a).unwrap()));
    }

    #[test]
    fn hilbert_tables((p, rels, _d) in ring(), a in gens(2)) {
        let r = build(p, &rels, 8);
        let i = Ideal::parse(&r, &a).unwrap();
        let m = Ideal::maximal(&r);
        let hs = hilbert_samuel_table(&i, &m, 4).unwrap();
        let gr = gr_hilbert_function(&i, &m, 4).unwrap();
        let hs: Vec<u64> = hs.certified_values().unwrap();
        let gr: Vec<u64> = gr.certified_values().unwrap();
        prop_assert!(hs.windows(2).all(|w| w[0] <= w[1]));
        let mut acc = 0;
        for n in 0..hs.len() {
            acc += gr[n];
            prop_assert_eq!(acc, hs[n]);
        }
    }

    #[test]
    fn artin_rees_inclusion_always_holds((p, rels, _d) in ring(), a in gens(2), k in 0u32..3, extra in 0u32..3) {
        let r = build(p, &rels, 9);
        let i = Ideal::parse(&r, &a).unwrap();
        let m = Ideal::maximal(&r);
        let n = k + extra;
        let rhs = m.power(n - k).product(&m.power(k).intersection(&i).unwrap()).unwrap();
        let lhs = m.power(n).intersection(&i).unwrap();
        prop_assert!(lhs.contains_ideal(&rhs));
    }

    #[test]
    fn artin_rees_witness_is_minimal((p, rels, _d) in ring(), a in gens(2)) {
        let r = build(p, &rels, 12);
        let i = Ideal::parse(&r, &a).unwrap();
        let m = Ideal::maximal(&r);
        let rep = ar_number(&i, &m, 5, &Precision::default()).unwrap();
        if let (Some(s), Some((ws, wn))) = (rep.value.finite(), rep.witness) {
            prop_assert_eq!(ws as u64 + 1, s);
            let lhs = m.power(wn as u32).intersection(&i).unwrap();
            let rhs = m.power((wn - ws) as u32).product(&m.power(ws as u32).intersection(&i).unwrap()).unwrap();
            prop_assert!(!rhs.contains_ideal(&lhs));
        }
    }

    #[test]
    fn nakayama_certificate_survives_more_precision((p, rels, d) in ring(), a in gens(2)) {
        let r = build(p, &rels, d);
        let a = Ideal::parse(&r, &a).unwrap();
        if let (Value::Finite(t), Status::Exact) = (a.m_primary_level().value, a.m_primary_level().status) {
            let high = r.at_order(d + 4).unwrap();
            let ah = a.transfer(&high).unwrap();
            prop_assert!(ah.space().contains_subspace(&high.power_of_maximal(t as usize)));
            prop_assert_eq!(ah.length(), filtreg::CertifiedValue::exact(a.colength() as u64, d + 4));
        }
    }

    #[test]
    fn truncation_is_compatible((p, rels, d) in ring(), a in gens(3), b in gens(3)) {
        let low = build(p, &rels, d);
        let high = low.at_order(d + 2).unwrap();
        let (al, bl) = (Ideal::parse(&low, &a).unwrap(), Ideal::parse(&low, &b).unwrap());
        let (ah, bh) = (Ideal::parse(&high, &a).unwrap(), Ideal::parse(&high, &b).unwrap());
        let proj = |i: &Ideal| low.project_subspace(&high, i.space()).unwrap();
        prop_assert_eq!(&proj(&ah), al.space());
        prop_assert_eq!(proj(&ah.product(&bh).unwrap()), al.product(&bl).unwrap().space().clone());
        prop_assert_eq!(proj(&ah.sum(&bh).unwrap()), al.sum(&bl).unwrap().space().clone());
    }
}
