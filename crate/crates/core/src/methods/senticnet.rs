use super::{MethodId, Verdict};
use crate::lexicon::ConceptLexicon;
use crate::polarity::Polarity;
use crate::textcore::Token;

/// Mean score of the concepts found in the text, longest phrase first.
pub fn senticnet_classify(tokens: &[Token], conlex: &ConceptLexicon) -> Verdict {
    let matcher = conlex.matcher();
    let scores: Vec<f64> = matcher
        .match_all(tokens)
        .into_iter()
        .flat_map(|hit| matcher.entries(hit.pattern).iter().map(|&e| conlex.score(e)))
        .collect();
    if scores.is_empty() {
        return Verdict::undetermined(MethodId::SenticNet);
    }
    let mean = scores.iter().sum::<f64>() / scores.len() as f64;
    let polarity = if mean > 0.0 {
        Polarity::Positive
    } else if mean < 0.0 {
        Polarity::Negative
    } else {
        Polarity::Neutral
    };
    Verdict::new(MethodId::SenticNet, polarity, mean).with_detail("concepts", scores.len() as f64)
}
