use proptest::prelude::*;
use sentimeter_core::lexicon::bundled_emoticons;
use sentimeter_core::{Polarity, TokenKind, Tokenizer};

fn text_strategy() -> impl Strategy<Value = String> {
    let pieces = prop_oneof![
        "[a-zA-Z]{1,6}",
        "[0-9]{1,4}",
        "[0-9]{1,2}[.,][0-9]{1,2}",
        "[!?.,;:()\\[\\]<>/\\\\'\"*=^_-]{1,4}",
        Just(":)".to_string()),
        Just(":-(".to_string()),
        Just("<3".to_string()),
        Just("XD".to_string()),
        Just("héllo".to_string()),
        Just("😀".to_string()),
        Just("@user".to_string()),
        Just("http://x.io/a".to_string()),
    ];
    let sep = prop_oneof![Just(""), Just(" "), Just("  "), Just("\t"), Just("\n")];
    prop::collection::vec((pieces, sep), 0..12)
        .prop_map(|parts| parts.into_iter().map(|(p, s)| format!("{p}{s}")).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn spans_partition_the_non_whitespace(text in text_strategy()) {
        let tokenizer = bundled_emoticons().tokenizer();
        let tokens = tokenizer.tokenize(&text);
        let mut covered = 0;
        for (i, t) in tokens.iter().enumerate() {
            prop_assert!(t.span.start < t.span.end);
            prop_assert_eq!(&text[t.span.clone()], t.surface.as_str());
            if i > 0 {
                prop_assert!(tokens[i - 1].span.end <= t.span.start);
                prop_assert!(text[tokens[i - 1].span.end..t.span.start].chars().all(char::is_whitespace));
            } else {
                prop_assert!(text[..t.span.start].chars().all(char::is_whitespace));
            }
            prop_assert!(!t.surface.chars().any(char::is_whitespace));
            covered = t.span.end;
        }
        prop_assert!(text[covered..].chars().all(char::is_whitespace));
    }

    #[test]
    fn tokenization_is_deterministic(text in text_strategy()) {
        let tokenizer = bundled_emoticons().tokenizer();
        prop_assert_eq!(tokenizer.tokenize(&text), tokenizer.tokenize(&text));
    }

    #[test]
    fn words_are_lowercased_and_others_untouched(text in text_strategy()) {
        for t in Tokenizer::default().tokenize(&text) {
            match t.kind {
                TokenKind::Word => prop_assert_eq!(t.normalized, t.surface.to_lowercase()),
                _ => prop_assert_eq!(t.normalized, t.surface),
            }
        }
    }
}

#[test]
fn every_table_emoticon_is_one_token_in_a_sentence() {
    let lex = bundled_emoticons();
    let tokenizer = lex.tokenizer();
    for (symbol, polarity) in lex.entries() {
        let text = format!("see you {symbol} later");
        let tokens = tokenizer.tokenize(&text);
        let emoticons: Vec<_> = tokens.iter().filter(|t| t.kind == TokenKind::Emoticon).collect();
        assert_eq!(emoticons.len(), 1, "{symbol}: {tokens:?}");
        assert_eq!(emoticons[0].surface, symbol, "longest symbol must win");
        assert!(polarity != Polarity::Undetermined);
    }
}
