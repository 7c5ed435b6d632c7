use super::{compare_sides, MethodId, Verdict};
use crate::lexicon::StrengthLexicon;
use crate::textcore::{Token, TokenKind};

/// A negator this many tokens or fewer before a term flips the term.
pub const NEGATION_WINDOW: usize = 2;

/// Shortest punctuation run that adds emphasis to the preceding term.
pub const PUNCTUATION_RUN_MIN: usize = 3;

/// Strength contributed by a lexicon emoticon: one above the baseline.
pub const EMOTICON_STRENGTH: i32 = 2;

const BASELINE: i32 = 1;
const MAX_STRENGTH: i32 = 5;
// A punctuation run applies to a term ending at most this many tokens back.
const PUNCTUATION_REACH: usize = 2;

struct TermHit {
    first: usize,
    last: usize,
    base: i32,
    punctuation_bonus: bool,
}

/// Dual-scale strength classifier.
///
/// Each matched term starts at its lexicon strength. The word directly in
/// front of it may be a booster that shifts its magnitude, a following run
/// of three or more punctuation marks adds one, the magnitude is clamped to
/// [1, 5], and a negator within the two preceding tokens flips its sign.
/// Lexicon emoticons count as strength-2 hits on their side. The result is
/// the strongest positive and strongest negative hit, each floored at 1.
pub fn strength_classify(tokens: &[Token], slex: &StrengthLexicon) -> Verdict {
    let matcher = slex.matcher();
    let mut hits: Vec<TermHit> = matcher
        .match_all(tokens)
        .into_iter()
        .map(|m| TermHit {
            first: m.tokens.start,
            last: m.tokens.end - 1,
            base: slex.term_strength(matcher.entries(m.pattern)[0]),
            punctuation_bonus: false,
        })
        .collect();

    for (index, token) in tokens.iter().enumerate() {
        if token.kind == TokenKind::PunctuationRun && token.char_len() >= PUNCTUATION_RUN_MIN {
            if let Some(hit) = hits
                .iter_mut()
                .rev()
                .find(|h| h.last < index && index - h.last <= PUNCTUATION_REACH)
            {
                hit.punctuation_bonus = true;
            }
        }
    }

    let mut positive = BASELINE;
    let mut negative = BASELINE;
    let mut matched = false;

    for hit in &hits {
        matched = true;
        let mut magnitude = hit.base.abs();
        if hit.first > 0 {
            let prev = &tokens[hit.first - 1];
            if prev.kind.is_lexical() {
                magnitude += slex.booster(&prev.normalized).unwrap_or(0);
            }
        }
        if hit.punctuation_bonus {
            magnitude += 1;
        }
        let magnitude = magnitude.clamp(BASELINE, MAX_STRENGTH);
        let negated = tokens[hit.first.saturating_sub(NEGATION_WINDOW)..hit.first]
            .iter()
            .any(|t| t.kind.is_lexical() && slex.is_negator(&t.normalized));
        let positive_side = (hit.base > 0) != negated;
        if positive_side {
            positive = positive.max(magnitude);
        } else {
            negative = negative.max(magnitude);
        }
    }

    for token in tokens.iter().filter(|t| t.kind == TokenKind::Emoticon) {
        if let Some(sign) = slex.emoticon(&token.surface) {
            matched = true;
            if sign > 0 {
                positive = positive.max(EMOTICON_STRENGTH);
            } else {
                negative = negative.max(EMOTICON_STRENGTH);
            }
        }
    }

    let polarity = compare_sides(positive, negative, matched);
    Verdict::new(MethodId::SentiStrength, polarity, f64::from(positive - negative))
        .with_detail("pos_strength", f64::from(positive))
        .with_detail("neg_strength", f64::from(negative))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::LexiconFormat;
    use crate::polarity::Polarity;
    use crate::textcore::Tokenizer;

    const LEX: &str = "[terms]\ngood\t2\nbad\t-3\ncool\t2\nawful\t-5\n[boosters]\nvery\t1\nsomewhat\t-1\nextremely\t2\n\
                       [negators]\nnot\nnever\n[emoticons]\n:)\t+1\n:(\t-1\n";

    fn run(text: &str) -> (Polarity, f64, f64) {
        let lex = StrengthLexicon::parse(LEX, "t").unwrap();
        let tokens = Tokenizer::new([":)", ":("]).tokenize(text);
        let v = strength_classify(&tokens, &lex);
        (v.polarity, v.detail["pos_strength"], v.detail["neg_strength"])
    }

    #[test]
    fn single_term() {
        assert_eq!(run("good"), (Polarity::Positive, 2.0, 1.0));
    }

    #[test]
    fn booster_raises_magnitude() {
        assert_eq!(run("very bad"), (Polarity::Negative, 1.0, 4.0));
        assert_eq!(run("somewhat good"), (Polarity::Neutral, 1.0, 1.0));
        // Clamped at five.
        assert_eq!(run("extremely awful"), (Polarity::Negative, 1.0, 5.0));
    }

    #[test]
    fn negation_flips() {
        assert_eq!(run("not bad"), (Polarity::Positive, 3.0, 1.0));
        assert_eq!(run("never very good"), (Polarity::Negative, 1.0, 3.0));
        // Outside the two-token window.
        assert_eq!(run("not at all a good"), (Polarity::Positive, 2.0, 1.0));
    }

    #[test]
    fn repeated_punctuation_emphasizes() {
        assert_eq!(run("Cool!!!!"), (Polarity::Positive, 3.0, 1.0));
        assert_eq!(run("Cool!!"), (Polarity::Positive, 2.0, 1.0));
        assert_eq!(run("cool movie today!!!"), (Polarity::Positive, 2.0, 1.0));
        assert_eq!(run("cool movie!!!"), (Polarity::Positive, 3.0, 1.0));
    }

    #[test]
    fn emoticons_and_ties() {
        assert_eq!(run("meh :("), (Polarity::Negative, 1.0, 2.0));
        assert_eq!(run("good :("), (Polarity::Neutral, 2.0, 2.0));
        assert_eq!(run("nothing here"), (Polarity::Undetermined, 1.0, 1.0));
    }
}
