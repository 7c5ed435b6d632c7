use super::{compare_sides, MethodId, Verdict};
use crate::lexicon::SynsetLexicon;
use crate::textcore::Token;

/// Averages the positive and negative scores of every synset entry keyed by
/// a matched word. Objective scores are never read.
pub fn sentiwordnet_classify(tokens: &[Token], synlex: &SynsetLexicon) -> Verdict {
    let matcher = synlex.matcher();
    let (mut pos_sum, mut neg_sum, mut count) = (0.0, 0.0, 0usize);
    for hit in matcher.match_all(tokens) {
        for &entry in matcher.entries(hit.pattern) {
            let scores = synlex.entry(entry);
            pos_sum += scores.pos;
            neg_sum += scores.neg;
            count += 1;
        }
    }
    if count == 0 {
        return Verdict::undetermined(MethodId::SentiWordNet);
    }
    let n = count as f64;
    let (avg_pos, avg_neg) = (pos_sum / n, neg_sum / n);
    // Both averages share the denominator, so compare the raw sums.
    let polarity = compare_sides(pos_sum, neg_sum, true);
    Verdict::new(MethodId::SentiWordNet, polarity, avg_pos - avg_neg)
        .with_detail("avg_pos", avg_pos)
        .with_detail("avg_neg", avg_neg)
        .with_detail("synsets", n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::SynsetEntry;
    use crate::polarity::Polarity;
    use crate::textcore::Tokenizer;

    fn entry(pos: f64, neg: f64) -> SynsetEntry {
        SynsetEntry { pos, neg, obj: 1.0 - pos - neg }
    }

    fn run(lex: &SynsetLexicon, text: &str) -> Verdict {
        sentiwordnet_classify(&Tokenizer::default().tokenize(text), lex)
    }

    #[test]
    fn worked_example_is_negative() {
        let lex = SynsetLexicon::from_entries([("bad", SynsetEntry { pos: 0.0, neg: 0.850, obj: 0.150 })]).unwrap();
        assert_eq!(run(&lex, "that was bad").polarity, Polarity::Negative);
        assert_eq!(run(&lex, "nothing here").polarity, Polarity::Undetermined);
    }

    #[test]
    fn symmetric_pair_is_neutral() {
        let lex = SynsetLexicon::from_entries([("up", entry(0.6, 0.2)), ("down", entry(0.2, 0.6))]).unwrap();
        let v = run(&lex, "up and down");
        assert_eq!(v.polarity, Polarity::Neutral);
        assert!((v.detail["avg_pos"] - 0.4).abs() < 1e-12);
    }

    #[test]
    fn all_senses_of_a_word_are_averaged() {
        let lex = SynsetLexicon::from_entries([("fine", entry(0.5, 0.0)), ("fine", entry(0.0, 0.75))]).unwrap();
        let v = run(&lex, "fine");
        assert_eq!(v.detail["synsets"], 2.0);
        assert_eq!(v.polarity, Polarity::Negative);
    }

    #[test]
    fn objective_scores_are_ignored() {
        let a = SynsetLexicon::from_entries([("w", SynsetEntry { pos: 0.3, neg: 0.1, obj: 0.6 })]).unwrap();
        let b = SynsetLexicon::from_entries([("w", SynsetEntry { pos: 0.3, neg: 0.1, obj: 0.6 }), ("x", entry(0.0, 0.0))])
            .unwrap();
        assert_eq!(run(&a, "w").polarity, run(&b, "w").polarity);
    }
}
