use std::collections::HashSet;

use super::{content_lines, ensure_nonempty, fields, parse_key, parse_real, CompiledMatcher, LexiconFormat, PatternKey};
use crate::error::{Error, Result};

/// Longest concept phrase considered when extracting concepts.
pub const MAX_CONCEPT_TOKENS: usize = 4;

const SYNSET_SUM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynsetEntry {
    pub pos: f64,
    pub neg: f64,
    pub obj: f64,
}

/// Per-synset positive/negative/objective scores. A key may repeat: each
/// line is one synset the word belongs to.
#[derive(Debug, Clone)]
pub struct SynsetLexicon {
    entries: Vec<(String, SynsetEntry)>,
    matcher: CompiledMatcher,
}

impl PartialEq for SynsetLexicon {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl SynsetLexicon {
    pub fn from_entries<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, SynsetEntry)>,
        S: Into<String>,
    {
        let entries: Vec<(String, SynsetEntry)> = entries.into_iter().map(|(k, e)| (k.into(), e)).collect();
        ensure_nonempty(entries.len(), "synset")?;
        let mut keys = Vec::with_capacity(entries.len());
        for (index, (key, e)) in entries.iter().enumerate() {
            for (name, v) in [("pos", e.pos), ("neg", e.neg), ("obj", e.obj)] {
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::invariant(key, format!("{name} score {v} outside [0, 1]")));
                }
            }
            let sum = e.pos + e.neg + e.obj;
            if (sum - 1.0).abs() > SYNSET_SUM_TOLERANCE {
                return Err(Error::invariant(key, format!("pos + neg + obj = {sum}, expected 1")));
            }
            keys.push((PatternKey::parse(key)?, index));
        }
        Ok(SynsetLexicon {
            entries,
            matcher: CompiledMatcher::build(keys),
        })
    }

    pub fn entries(&self) -> &[(String, SynsetEntry)] {
        &self.entries
    }

    pub fn entry(&self, index: usize) -> &SynsetEntry {
        &self.entries[index].1
    }

    pub fn matcher(&self) -> &CompiledMatcher {
        &self.matcher
    }
}

/// Concept phrases (one to a few words) with a polarity score in [-1, 1].
#[derive(Debug, Clone)]
pub struct ConceptLexicon {
    entries: Vec<(String, f64)>,
    matcher: CompiledMatcher,
}

impl PartialEq for ConceptLexicon {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl ConceptLexicon {
    pub fn from_entries<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let entries: Vec<(String, f64)> = entries.into_iter().map(|(k, s)| (k.into(), s)).collect();
        ensure_nonempty(entries.len(), "concept")?;
        let mut seen = HashSet::new();
        let mut keys = Vec::with_capacity(entries.len());
        for (index, (key, score)) in entries.iter().enumerate() {
            if !(-1.0..=1.0).contains(score) {
                return Err(Error::invariant(key, format!("concept score {score} outside [-1, 1]")));
            }
            let parsed = PatternKey::parse(key)?;
            if !seen.insert(parsed.clone()) {
                return Err(Error::invariant(key, "duplicate concept"));
            }
            keys.push((parsed, index));
        }
        Ok(ConceptLexicon {
            entries,
            matcher: CompiledMatcher::build_limited(keys, MAX_CONCEPT_TOKENS),
        })
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.entries
    }

    pub fn score(&self, index: usize) -> f64 {
        self.entries[index].1
    }

    pub fn matcher(&self) -> &CompiledMatcher {
        &self.matcher
    }

    /// Same concepts with every score multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::from_entries(self.entries.iter().map(|(k, s)| (k.clone(), s * factor)))
    }
}

/// A score lexicon file, in either synset or concept mode. The mode is
/// detected from the column count of the first entry.
#[derive(Debug, Clone, PartialEq)]
pub enum ScoreLexicon {
    Synset(SynsetLexicon),
    Concept(ConceptLexicon),
}

impl ScoreLexicon {
    pub fn mode(&self) -> &'static str {
        match self {
            ScoreLexicon::Synset(_) => "synset",
            ScoreLexicon::Concept(_) => "concept",
        }
    }
}

impl LexiconFormat for ScoreLexicon {
    fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut lines = content_lines(text).peekable();
        let columns = match lines.peek() {
            Some((_, line)) => line.split('\t').count(),
            None => return Err(Error::Empty(format!("lexicon {origin}"))),
        };
        match columns {
            4 => {
                let mut entries = Vec::new();
                for (lineno, line) in lines {
                    let parts = fields(line, 4, origin, lineno)?;
                    parse_key(parts[0], origin, lineno)?;
                    let entry = SynsetEntry {
                        pos: parse_real(parts[1], origin, lineno)?,
                        neg: parse_real(parts[2], origin, lineno)?,
                        obj: parse_real(parts[3], origin, lineno)?,
                    };
                    entries.push((parts[0].to_string(), entry));
                }
                SynsetLexicon::from_entries(entries).map(ScoreLexicon::Synset)
            }
            2 => {
                let mut entries = Vec::new();
                for (lineno, line) in lines {
                    let parts = fields(line, 2, origin, lineno)?;
                    parse_key(parts[0], origin, lineno)?;
                    entries.push((parts[0].to_string(), parse_real(parts[1], origin, lineno)?));
                }
                ConceptLexicon::from_entries(entries).map(ScoreLexicon::Concept)
            }
            n => {
                let lineno = content_lines(text).next().map_or(0, |(l, _)| l);
                Err(Error::malformed(
                    origin,
                    lineno,
                    format!("score lexicons have 2 (concept) or 4 (synset) columns, found {n}"),
                ))
            }
        }
    }

    fn to_text(&self) -> String {
        match self {
            ScoreLexicon::Synset(l) => l
                .entries
                .iter()
                .map(|(k, e)| format!("{k}\t{}\t{}\t{}\n", e.pos, e.neg, e.obj))
                .collect(),
            ScoreLexicon::Concept(l) => l.entries.iter().map(|(k, s)| format!("{k}\t{s}\n")).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synset_sum_is_enforced() {
        let err = ScoreLexicon::parse("bad\t0.5\t0.6\t0.1\n", "t").unwrap_err();
        assert!(matches!(err, Error::InvariantViolation { .. }), "{err}");
        let ok = ScoreLexicon::parse("bad\t0.0\t0.850\t0.150\n", "t").unwrap();
        assert_eq!(ok.mode(), "synset");
        // Just inside and just outside the 1e-6 band.
        assert!(ScoreLexicon::parse("x\t0.5\t0.5\t0.0000009\n", "t").is_ok());
        assert!(ScoreLexicon::parse("x\t0.5\t0.5\t0.0000011\n", "t").is_err());
    }

    #[test]
    fn synset_keys_may_repeat() {
        let lex = ScoreLexicon::parse("bad\t0\t0.85\t0.15\nbad\t0.125\t0.625\t0.25\n", "t").unwrap();
        let ScoreLexicon::Synset(lex) = lex else { panic!("synset mode") };
        let key = PatternKey::parse("bad").unwrap();
        let pattern = lex.matcher().find_key(&key).unwrap();
        assert_eq!(lex.matcher().entries(pattern), &[0, 1]);
    }

    #[test]
    fn concept_mode() {
        let lex = ScoreLexicon::parse("boring\t-0.383\nmonday morning\t0.228\n", "t").unwrap();
        assert_eq!(lex.mode(), "concept");
        assert!(ScoreLexicon::parse("x\t1.5\n", "t").is_err());
        assert!(ScoreLexicon::parse("x\t0.1\t0.2\n", "t").is_err());
        assert!(matches!(
            ScoreLexicon::parse("x\t0.1\ny\t0.1\t0.8\t0.1\n", "t"),
            Err(Error::MalformedLine { line: 2, .. })
        ));
    }
}
