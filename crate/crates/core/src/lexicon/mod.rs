//! Lexicon file formats, validation, and compiled matchers.
//!
//! Every lexicon is a UTF-8, tab-separated text file with one entry per
//! line; blank lines and lines starting with `#` are ignored. Lexicons are
//! validated on load and immutable afterwards.

mod bundled;
mod category;
mod emoticon;
pub mod matcher;
mod mood;
mod score;
mod strength;
mod valence;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use bundled::{bundled_demo, bundled_emoticons, bundled_file, BundledFile, BUNDLED_FILES};
pub use category::{Category, CategoryEntry, CategoryLexicon};
pub use emoticon::EmoticonLexicon;
pub use matcher::{CompiledMatcher, Match, PatternKey};
pub use mood::{Mood, MoodLexicon};
pub use score::{ConceptLexicon, ScoreLexicon, SynsetEntry, SynsetLexicon, MAX_CONCEPT_TOKENS};
pub use strength::StrengthLexicon;
pub use valence::ValenceLexicon;

use crate::error::{Error, Result};

/// Affective orientation of a category or mood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Affect {
    Positive,
    Negative,
    /// Neither positive nor negative affect (`other` in category files,
    /// neutral for moods).
    Other,
}

impl Affect {
    pub fn as_str(self) -> &'static str {
        match self {
            Affect::Positive => "positive-affect",
            Affect::Negative => "negative-affect",
            Affect::Other => "other",
        }
    }
}

impl FromStr for Affect {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "positive-affect" => Ok(Affect::Positive),
            "negative-affect" => Ok(Affect::Negative),
            "other" => Ok(Affect::Other),
            other => Err(Error::invariant(other, "expected positive-affect, negative-affect or other")),
        }
    }
}

/// A lexicon text format.
pub trait LexiconFormat: Sized {
    /// Parses and validates lexicon text. `origin` names the source in errors.
    fn parse(text: &str, origin: &str) -> Result<Self>;

    /// Renders the lexicon back into its text format.
    fn to_text(&self) -> String;

    fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LexiconShape {
    Emoticon,
    Category,
    Valence,
    Strength,
    Score,
    Mood,
}

impl fmt::Display for LexiconShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            LexiconShape::Emoticon => "emoticon",
            LexiconShape::Category => "category",
            LexiconShape::Valence => "valence",
            LexiconShape::Strength => "strength",
            LexiconShape::Score => "score",
            LexiconShape::Mood => "mood",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Lexicon {
    Emoticon(EmoticonLexicon),
    Category(CategoryLexicon),
    Valence(ValenceLexicon),
    Strength(StrengthLexicon),
    Score(ScoreLexicon),
    Mood(MoodLexicon),
}

impl Lexicon {
    pub fn shape(&self) -> LexiconShape {
        match self {
            Lexicon::Emoticon(_) => LexiconShape::Emoticon,
            Lexicon::Category(_) => LexiconShape::Category,
            Lexicon::Valence(_) => LexiconShape::Valence,
            Lexicon::Strength(_) => LexiconShape::Strength,
            Lexicon::Score(_) => LexiconShape::Score,
            Lexicon::Mood(_) => LexiconShape::Mood,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Lexicon::Emoticon(l) => l.to_text(),
            Lexicon::Category(l) => l.to_text(),
            Lexicon::Valence(l) => l.to_text(),
            Lexicon::Strength(l) => l.to_text(),
            Lexicon::Score(l) => l.to_text(),
            Lexicon::Mood(l) => l.to_text(),
        }
    }
}

pub fn parse_lexicon(text: &str, origin: &str, shape: LexiconShape) -> Result<Lexicon> {
    Ok(match shape {
        LexiconShape::Emoticon => Lexicon::Emoticon(EmoticonLexicon::parse(text, origin)?),
        LexiconShape::Category => Lexicon::Category(CategoryLexicon::parse(text, origin)?),
        LexiconShape::Valence => Lexicon::Valence(ValenceLexicon::parse(text, origin)?),
        LexiconShape::Strength => Lexicon::Strength(StrengthLexicon::parse(text, origin)?),
        LexiconShape::Score => Lexicon::Score(ScoreLexicon::parse(text, origin)?),
        LexiconShape::Mood => Lexicon::Mood(MoodLexicon::parse(text, origin)?),
    })
}

/// Reads and validates a lexicon file of the given shape.
pub fn load_lexicon(path: impl AsRef<Path>, shape: LexiconShape) -> Result<Lexicon> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_lexicon(&text, &path.display().to_string(), shape)
}

/// Content lines of a lexicon file as `(1-based line number, line)`.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim_end_matches('\r');
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

/// Splits a line into exactly `n` tab-separated fields.
pub(crate) fn fields<'a>(line: &'a str, n: usize, origin: &str, lineno: usize) -> Result<Vec<&'a str>> {
    let parts: Vec<&str> = line.split('\t').map(str::trim).collect();
    if parts.len() != n {
        return Err(Error::malformed(
            origin,
            lineno,
            format!("expected {n} tab-separated fields, found {}", parts.len()),
        ));
    }
    if parts.iter().any(|p| p.is_empty()) {
        return Err(Error::malformed(origin, lineno, "empty field"));
    }
    Ok(parts)
}

pub(crate) fn parse_real(field: &str, origin: &str, lineno: usize) -> Result<f64> {
    field
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::malformed(origin, lineno, format!("not a number: {field:?}")))
}

pub(crate) fn parse_int(field: &str, origin: &str, lineno: usize) -> Result<i32> {
    field
        .trim_start_matches('+')
        .parse::<i32>()
        .map_err(|_| Error::malformed(origin, lineno, format!("not an integer: {field:?}")))
}

pub(crate) fn parse_key(raw: &str, origin: &str, lineno: usize) -> Result<PatternKey> {
    PatternKey::parse(raw).map_err(|e| Error::malformed(origin, lineno, e.to_string()))
}

/// Parses a key that must be a single plain word (no stem, no phrase).
pub(crate) fn parse_word(raw: &str, origin: &str, lineno: usize) -> Result<String> {
    let key = parse_key(raw, origin, lineno)?;
    if key.stem || key.len() != 1 {
        return Err(Error::malformed(origin, lineno, format!("expected a single word, found {raw:?}")));
    }
    Ok(key.tokens.into_iter().next().expect("one token"))
}

pub(crate) fn ensure_nonempty(count: usize, origin: &str) -> Result<()> {
    if count == 0 {
        Err(Error::Empty(format!("lexicon {origin}")))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn content_lines_skip_comments_and_blanks() {
        let text = "# header\n\na\tb\r\n  # indented comment\nc\td\n";
        let lines: Vec<_> = content_lines(text).collect();
        assert_eq!(lines, vec![(3, "a\tb"), (5, "c\td")]);
    }

    #[test]
    fn field_count_is_checked() {
        assert!(fields("a\tb", 2, "x", 1).is_ok());
        let err = fields("a b", 2, "x", 7).unwrap_err();
        assert!(err.to_string().contains("x:7"));
    }

    #[test]
    fn load_reports_missing_file() {
        let err = load_lexicon("/nonexistent/lexicon.tsv", LexiconShape::Valence).unwrap_err();
        assert!(matches!(err, Error::Io { .. }));
    }
}
