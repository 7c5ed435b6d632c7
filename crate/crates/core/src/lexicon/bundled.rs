//! Lexicons compiled into the binary.
//!
//! The emoticon table is complete; everything else is a small demonstration
//! list. Real dictionaries are supplied as files in a lexicon directory.

use super::{EmoticonLexicon, LexiconFormat, LexiconShape};

pub struct BundledFile {
    pub name: &'static str,
    pub shape: Option<LexiconShape>,
    pub contents: &'static str,
}

pub const EMOTICONS_TSV: &str = include_str!("../../lexicons/emoticons.tsv");

pub const BUNDLED_FILES: &[BundledFile] = &[
    BundledFile {
        name: "emoticons.tsv",
        shape: Some(LexiconShape::Emoticon),
        contents: EMOTICONS_TSV,
    },
    BundledFile {
        name: "categories.tsv",
        shape: Some(LexiconShape::Category),
        contents: include_str!("../../lexicons/categories.tsv"),
    },
    BundledFile {
        name: "strength.txt",
        shape: Some(LexiconShape::Strength),
        contents: include_str!("../../lexicons/strength.txt"),
    },
    BundledFile {
        name: "sentiwordnet.tsv",
        shape: Some(LexiconShape::Score),
        contents: include_str!("../../lexicons/sentiwordnet.tsv"),
    },
    BundledFile {
        name: "senticnet.tsv",
        shape: Some(LexiconShape::Score),
        contents: include_str!("../../lexicons/senticnet.tsv"),
    },
    BundledFile {
        name: "anew.tsv",
        shape: Some(LexiconShape::Valence),
        contents: include_str!("../../lexicons/anew.tsv"),
    },
    BundledFile {
        name: "panas.tsv",
        shape: Some(LexiconShape::Mood),
        contents: include_str!("../../lexicons/panas.tsv"),
    },
    BundledFile {
        name: "sasa.model",
        shape: None,
        contents: include_str!("../../lexicons/sasa.model"),
    },
];

pub fn bundled_file(name: &str) -> Option<&'static BundledFile> {
    BUNDLED_FILES.iter().find(|f| f.name == name)
}

/// The full emoticon table.
pub fn bundled_emoticons() -> EmoticonLexicon {
    EmoticonLexicon::parse(EMOTICONS_TSV, "bundled emoticons.tsv").expect("bundled emoticon table is valid")
}

/// Contents of a bundled demonstration file by name.
pub fn bundled_demo(name: &str) -> Option<&'static str> {
    bundled_file(name).map(|f| f.contents)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::parse_lexicon;
    use crate::polarity::Polarity;

    #[test]
    fn every_bundled_lexicon_parses() {
        for file in BUNDLED_FILES {
            if let Some(shape) = file.shape {
                parse_lexicon(file.contents, file.name, shape)
                    .unwrap_or_else(|e| panic!("{}: {e}", file.name));
            }
        }
    }

    /// The shipped model must be exactly what training on the shipped
    /// examples produces. Set `SENTIMETER_BLESS=1` to rewrite it.
    #[test]
    fn bundled_sasa_model_matches_training() {
        use crate::methods::{parse_sasa_training, sasa_train_examples, SASA_MARGIN, SASA_SMOOTHING};
        use crate::textcore::Tokenizer;

        let mut symbols: Vec<String> = bundled_emoticons().symbols().map(str::to_string).collect();
        let strength = crate::lexicon::StrengthLexicon::parse(bundled_demo("strength.txt").unwrap(), "s").unwrap();
        symbols.extend(strength.emoticon_symbols().map(str::to_string));
        let tokenizer = Tokenizer::new(symbols);
        let examples = parse_sasa_training(include_str!("../../lexicons/sasa_train.tsv"), "sasa_train.tsv").unwrap();
        let model = sasa_train_examples(&examples, &tokenizer, SASA_SMOOTHING, SASA_MARGIN).unwrap();
        let text = model.to_text();
        if std::env::var_os("SENTIMETER_BLESS").is_some() {
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/lexicons/sasa.model");
            std::fs::write(path, &text).unwrap();
            return;
        }
        assert_eq!(bundled_demo("sasa.model").unwrap(), text);
    }

    #[test]
    fn emoticon_table_basics() {
        let lex = bundled_emoticons();
        assert_eq!(lex.len(), 131);
        assert_eq!(lex.polarity_of(":)"), Some(Polarity::Positive));
        assert_eq!(lex.polarity_of(":("), Some(Polarity::Negative));
        assert_eq!(lex.polarity_of(":|"), Some(Polarity::Neutral));
    }
}
