use super::{MethodId, Verdict};
use crate::lexicon::ValenceLexicon;
use crate::polarity::Polarity;
use crate::textcore::Token;

/// Scores at or above this are positive; below it, negative.
pub const HAPPINESS_SPLIT: f64 = 5.0;

/// Frequency-weighted mean valence of the words found in the text.
pub fn happiness_classify(tokens: &[Token], vlex: &ValenceLexicon) -> Verdict {
    let matcher = vlex.matcher();
    let (mut total, mut count) = (0.0, 0usize);
    for hit in matcher.match_all(tokens) {
        for &entry in matcher.entries(hit.pattern) {
            total += vlex.valence(entry);
            count += 1;
        }
    }
    if count == 0 {
        return Verdict::undetermined(MethodId::HappinessIndex);
    }
    let score = total / count as f64;
    let polarity = if score >= HAPPINESS_SPLIT {
        Polarity::Positive
    } else {
        Polarity::Negative
    };
    Verdict::new(MethodId::HappinessIndex, polarity, score).with_detail("matches", count as f64)
}
