use super::{MethodId, Verdict};
use crate::lexicon::EmoticonLexicon;
use crate::polarity::Polarity;
use crate::textcore::{Token, TokenKind};

/// Polarity of the leftmost emoticon that the lexicon knows.
pub fn emoticon_classify(tokens: &[Token], emolex: &EmoticonLexicon) -> Verdict {
    let first = tokens
        .iter()
        .filter(|t| t.kind == TokenKind::Emoticon)
        .find_map(|t| emolex.polarity_of(&t.surface).map(|p| (t, p)));
    match first {
        Some((token, polarity)) => {
            let score = match polarity {
                Polarity::Positive => 1.0,
                Polarity::Negative => -1.0,
                _ => 0.0,
            };
            let mut verdict = Verdict::new(MethodId::Emoticons, polarity, score);
            verdict.detail.insert("offset".into(), token.span.start as f64);
            verdict
        }
        None => Verdict::undetermined(MethodId::Emoticons),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::bundled_emoticons;

    fn classify(text: &str) -> Polarity {
        let lex = bundled_emoticons();
        emoticon_classify(&lex.tokenizer().tokenize(text), &lex).polarity
    }

    #[test]
    fn examples() {
        assert_eq!(classify(":)"), Polarity::Positive);
        assert_eq!(classify("great day"), Polarity::Undetermined);
        assert_eq!(classify(":( but then :)"), Polarity::Negative);
        assert_eq!(classify("hmm :| ok :)"), Polarity::Neutral);
    }
}
