use chrono::{DateTime, Utc};
use proptest::prelude::*;
use sentimeter_core::{filter_event, CorpusFormat, EventSpec, LabeledCorpus, Message};

fn row() -> impl Strategy<Value = (bool, String)> {
    (prop::bool::ANY, "[a-z]{1,6}( [a-z!?.,:)(]{1,6}){0,4}")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn two_column_serialization_round_trips(rows in prop::collection::vec(row(), 1..40)) {
        let text: String = rows
            .iter()
            .map(|(pos, t)| format!("{}\t{t}\n", if *pos { "positive" } else { "negative" }))
            .collect();
        let corpus = LabeledCorpus::parse(&text, "c", CorpusFormat::TwoColumn).unwrap();
        prop_assert_eq!(corpus.to_two_column(), text.clone());
        let stats = corpus.stats();
        prop_assert!((stats.positive_fraction + stats.negative_fraction - 1.0).abs() < 1e-9);
        prop_assert_eq!(stats.positive, rows.iter().filter(|(p, _)| *p).count());
    }

    #[test]
    fn strength_pairs_skip_ties(rows in prop::collection::vec((1u8..=5, 1u8..=5, "[a-z]{1,8}"), 1..40)) {
        let text: String = rows.iter().map(|(p, n, t)| format!("{p}\t{n}\t{t}\n")).collect();
        let ties = rows.iter().filter(|(p, n, _)| p == n).count();
        match LabeledCorpus::parse(&text, "c", CorpusFormat::StrengthPair) {
            Ok(corpus) => {
                prop_assert_eq!(corpus.stats().skipped, ties);
                prop_assert_eq!(corpus.len() + ties, rows.len());
            }
            Err(e) => prop_assert!(ties == rows.len() && e.to_string().contains("empty corpus")),
        }
    }

    #[test]
    fn event_filter_is_an_order_preserving_subset(
        texts in prop::collection::vec("(crash|virus|lunch|a330|plane|dog)( (crash|lunch|447|cat)){0,3}", 0..30),
        offsets in prop::collection::vec(0i64..(20 * 86_400), 30),
    ) {
        let start: DateTime<Utc> = "2009-05-25T00:00:00Z".parse().unwrap();
        let messages: Vec<Message> = texts
            .iter()
            .zip(&offsets)
            .enumerate()
            .map(|(i, (t, off))| Message::new(i.to_string(), t.clone()).with_timestamp(start + chrono::TimeDelta::seconds(*off)))
            .collect();
        let spec = &sentimeter_core::reference_events()[0];
        let kept = filter_event(messages.clone(), spec);
        let mut cursor = 0;
        for m in &kept {
            let pos = messages[cursor..].iter().position(|x| x == m);
            prop_assert!(pos.is_some());
            cursor += pos.unwrap() + 1;
            prop_assert!(spec.mentions(&m.text));
        }
        let unbounded = EventSpec::new("any", None, spec.keywords.clone()).unwrap();
        prop_assert!(filter_event(messages, &unbounded).len() >= kept.len());
    }
}
