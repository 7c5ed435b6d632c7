use std::collections::BTreeMap;

use super::{content_lines, ensure_nonempty, fields, LexiconFormat};
use crate::error::{Error, Result};
use crate::polarity::Polarity;
use crate::textcore::Tokenizer;

/// Literal emoticon symbols and their polarity.
#[derive(Debug, Clone, PartialEq)]
pub struct EmoticonLexicon {
    entries: BTreeMap<String, Polarity>,
}

impl EmoticonLexicon {
    pub fn from_entries<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Polarity)>,
        S: Into<String>,
    {
        let mut map = BTreeMap::new();
        for (symbol, polarity) in entries {
            let symbol = symbol.into();
            validate_symbol(&symbol)?;
            if polarity == Polarity::Undetermined {
                return Err(Error::invariant(symbol, "emoticon polarity must be positive, negative or neutral"));
            }
            if let Some(previous) = map.insert(symbol.clone(), polarity) {
                if previous != polarity {
                    return Err(Error::invariant(symbol, "symbol maps to two polarities"));
                }
            }
        }
        ensure_nonempty(map.len(), "emoticons")?;
        Ok(EmoticonLexicon { entries: map })
    }

    pub fn polarity_of(&self, symbol: &str) -> Option<Polarity> {
        self.entries.get(symbol).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, Polarity)> {
        self.entries.iter().map(|(s, p)| (s.as_str(), *p))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// A tokenizer that recognizes every symbol of this lexicon.
    pub fn tokenizer(&self) -> Tokenizer {
        Tokenizer::new(self.symbols())
    }
}

pub(crate) fn validate_symbol(symbol: &str) -> Result<()> {
    if symbol.chars().count() < 2 {
        return Err(Error::invariant(symbol, "emoticon symbols need at least two characters"));
    }
    if symbol.chars().any(char::is_whitespace) {
        return Err(Error::invariant(symbol, "emoticon symbols cannot contain whitespace"));
    }
    Ok(())
}

impl LexiconFormat for EmoticonLexicon {
    fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in content_lines(text) {
            let parts = fields(line, 2, origin, lineno)?;
            let polarity: Polarity = parts[1]
                .parse()
                .map_err(|e: Error| Error::malformed(origin, lineno, e.to_string()))?;
            entries.push((parts[0].to_string(), polarity));
        }
        ensure_nonempty(entries.len(), origin)?;
        Self::from_entries(entries)
    }

    fn to_text(&self) -> String {
        self.entries
            .iter()
            .map(|(symbol, polarity)| format!("{symbol}\t{polarity}\n"))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conflicting_polarities_are_rejected() {
        let err = EmoticonLexicon::parse(":)\tpositive\n:)\tnegative\n", "t").unwrap_err();
        assert!(matches!(err, Error::InvariantViolation { .. }));
        // Repeating a symbol with the same polarity is harmless.
        let lex = EmoticonLexicon::parse(":)\tpositive\n:)\tpositive\n", "t").unwrap();
        assert_eq!(lex.len(), 1);
    }

    #[test]
    fn bad_lines() {
        assert!(matches!(
            EmoticonLexicon::parse(":)\thappy\n", "t"),
            Err(Error::MalformedLine { line: 1, .. })
        ));
        assert!(matches!(EmoticonLexicon::parse("# nothing\n", "t"), Err(Error::Empty(_))));
        assert!(EmoticonLexicon::parse(")\tpositive\n", "t").is_err());
        assert!(EmoticonLexicon::parse(":)\tundetermined\n", "t").is_err());
    }
}
