use super::{compare_sides, MethodId, Verdict};
use crate::lexicon::{Affect, CategoryLexicon};
use crate::textcore::Token;

/// Compares how many matched words fall in positive-affect categories with
/// how many fall in negative-affect ones. A word counts at most once per
/// side, however many categories of that side it belongs to.
pub fn liwc_classify(tokens: &[Token], catlex: &CategoryLexicon) -> Verdict {
    let matcher = catlex.matcher();
    let (mut positive, mut negative) = (0u32, 0u32);
    for hit in matcher.match_all(tokens) {
        let entries = matcher.entries(hit.pattern);
        if entries.iter().any(|&e| catlex.entry_has_affect(e, Affect::Positive)) {
            positive += 1;
        }
        if entries.iter().any(|&e| catlex.entry_has_affect(e, Affect::Negative)) {
            negative += 1;
        }
    }
    let total = positive + negative;
    let polarity = compare_sides(positive, negative, total > 0);
    let score = if total > 0 {
        (f64::from(positive) - f64::from(negative)) / f64::from(total)
    } else {
        0.0
    };
    Verdict::new(MethodId::Liwc, polarity, score)
        .with_detail("positive", f64::from(positive))
        .with_detail("negative", f64::from(negative))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::LexiconFormat;
    use crate::polarity::Polarity;
    use crate::textcore::Tokenizer;

    fn lexicon() -> CategoryLexicon {
        let text = "%cat\t1\tassent\tother\n%cat\t2\taffect\tother\n%cat\t3\tposemo\tpositive-affect\n\
                    %cat\t4\tposfeel\tpositive-affect\n%cat\t5\tcogmech\tother\n%cat\t6\tnegemo\tnegative-affect\n\
                    agree\t1,2,3,4,5\ngood\t3\nnice\t3\nbad\t6\nsad\t6\nthink\t5\n";
        CategoryLexicon::parse(text, "t").unwrap()
    }

    fn run(text: &str) -> Verdict {
        liwc_classify(&Tokenizer::default().tokenize(text), &lexicon())
    }

    #[test]
    fn examples() {
        let v = run("good");
        assert_eq!((v.polarity, v.score), (Polarity::Positive, 1.0));
        assert_eq!(run("I agree").polarity, Polarity::Positive);
        assert_eq!(run("I agree").detail["positive"], 1.0);
        let v = run("good nice bad sad");
        assert_eq!((v.polarity, v.score), (Polarity::Neutral, 0.0));
        assert_eq!(run("I think so").polarity, Polarity::Undetermined);
        assert_eq!(run("bad").score, -1.0);
    }
}
