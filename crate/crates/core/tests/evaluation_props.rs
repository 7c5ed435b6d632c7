use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use sentimeter_core::metrics::covered_count;
use sentimeter_core::{
    agreement_matrix, combine_corpus, confusion, coverage, metric_set, tradeoff_curve, AgreementMode, ConfusionCounts,
    EnsembleConfig, Label, MethodId, Polarity, Strategy as Combine, Verdict,
};

fn polarity() -> impl Strategy<Value = Polarity> {
    prop::sample::select(vec![Polarity::Positive, Polarity::Negative, Polarity::Neutral, Polarity::Undetermined])
}

const MEMBERS: [MethodId; 5] = [
    MethodId::Emoticons,
    MethodId::SentiStrength,
    MethodId::HappinessIndex,
    MethodId::SenticNet,
    MethodId::Sasa,
];

/// Per-method polarity lists over `n` messages plus labels.
fn verdict_table() -> impl Strategy<Value = (BTreeMap<MethodId, Vec<Verdict>>, Vec<Label>)> {
    (1usize..40).prop_flat_map(|n| {
        (
            prop::collection::vec(prop::collection::vec(polarity(), n), MEMBERS.len()),
            prop::collection::vec(prop::bool::ANY.prop_map(|b| if b { Label::Positive } else { Label::Negative }), n),
        )
            .prop_map(|(cols, labels)| {
                let table = MEMBERS
                    .iter()
                    .zip(cols)
                    .map(|(m, ps)| (*m, ps.into_iter().map(|p| Verdict::new(*m, p, 0.0)).collect()))
                    .collect();
                (table, labels)
            })
    })
}

fn union_coverage(table: &BTreeMap<MethodId, Vec<Verdict>>, members: &[MethodId]) -> f64 {
    let n = table.values().next().unwrap().len();
    let covered: BTreeSet<usize> = members
        .iter()
        .flat_map(|m| table[m].iter().enumerate().filter(|(_, v)| v.is_covered()).map(|(i, _)| i))
        .collect();
    covered.len() as f64 / n as f64
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fmeasure_between_precision_and_recall(a in 0usize..50, b in 0usize..50, c in 0usize..50, d in 0usize..50) {
        let m = metric_set::<f64>(&ConfusionCounts { a, b, c, d });
        for v in [m.recall, m.precision, m.accuracy, m.fmeasure].into_iter().flatten() {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        if let (Some(p), Some(r), Some(f)) = (m.precision, m.recall, m.fmeasure) {
            prop_assert!(p.min(r) - 1e-12 <= f && f <= p.max(r) + 1e-12);
            prop_assert!((f - 2.0 * p * r / (p + r)).abs() <= 1e-12);
        }
    }

    #[test]
    fn coverage_complements_exactly(ps in prop::collection::vec(polarity(), 1..60)) {
        let covered: f64 = coverage(&ps).unwrap();
        let uncovered = ps.iter().filter(|p| !p.is_covered()).count() as f64 / ps.len() as f64;
        prop_assert_eq!(covered + uncovered, 1.0);
    }

    #[test]
    fn confusion_counts_only_covered((table, labels) in verdict_table()) {
        for list in table.values() {
            let cc = confusion(list, &labels).unwrap();
            prop_assert_eq!(cc.total(), covered_count(list));
        }
    }

    #[test]
    fn agreement_is_symmetric_with_unit_diagonal((table, _) in verdict_table()) {
        let m = agreement_matrix(&table).unwrap();
        for i in 0..m.methods.len() {
            prop_assert_eq!(m.agreement::<f64>(i, i, AgreementMode::Symmetric), (m.covered[i] > 0).then_some(1.0));
            for j in 0..m.methods.len() {
                prop_assert_eq!(m.cell(i, j), m.cell(j, i));
                prop_assert!(m.cell(i, j).same_polarity <= m.cell(i, j).both_covered);
            }
        }
    }

    #[test]
    fn ensemble_coverage_is_union_coverage(
        (table, labels) in verdict_table(),
        scores in prop::collection::vec(0.0f64..1.0, MEMBERS.len()),
    ) {
        let ranking: BTreeMap<MethodId, f64> = MEMBERS.iter().copied().zip(scores).collect();
        for strategy in Combine::ALL {
            let curve = tradeoff_curve(&table, &labels, &MEMBERS, &ranking, strategy).unwrap();
            for (k, point) in curve.iter().enumerate() {
                prop_assert_eq!(point.coverage, union_coverage(&table, &MEMBERS[..=k]));
                if k > 0 {
                    prop_assert!(point.coverage >= curve[k - 1].coverage);
                }
            }
            let best_single = MEMBERS.iter().map(|m| union_coverage(&table, &[*m])).fold(0.0, f64::max);
            prop_assert!(curve.last().unwrap().coverage >= best_single);
        }
    }

    #[test]
    fn cascade_ignores_weight_magnitudes(
        (table, _) in verdict_table(),
        order in Just(MEMBERS.to_vec()).prop_shuffle(),
        bump in 0u8..3,
    ) {
        // Same ordering, different magnitudes.
        let dense: BTreeMap<MethodId, u8> = order.iter().enumerate().map(|(i, m)| (*m, (5 - i) as u8)).collect();
        let sparse: BTreeMap<MethodId, u8> = order
            .iter()
            .enumerate()
            .map(|(i, m)| (*m, if i == 0 { 5 + bump } else { (5 - i) as u8 }))
            .collect();
        let a = combine_corpus(&table, &EnsembleConfig::new(dense, Combine::Cascade).unwrap()).unwrap();
        let b = combine_corpus(&table, &EnsembleConfig::new(sparse, Combine::Cascade).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn combination_is_deterministic((table, _) in verdict_table()) {
        let cfg = EnsembleConfig::new(MEMBERS.iter().map(|m| (*m, 2)).collect(), Combine::WeightedVote).unwrap();
        prop_assert_eq!(combine_corpus(&table, &cfg).unwrap(), combine_corpus(&table, &cfg).unwrap());
    }
}
