use std::collections::HashSet;

use super::{content_lines, ensure_nonempty, fields, parse_key, parse_real, CompiledMatcher, LexiconFormat, PatternKey};
use crate::error::{Error, Result};

pub const VALENCE_MIN: f64 = 1.0;
pub const VALENCE_MAX: f64 = 9.0;

/// Word valences on the 1..9 pleasantness scale.
#[derive(Debug, Clone)]
pub struct ValenceLexicon {
    entries: Vec<(String, f64)>,
    matcher: CompiledMatcher,
}

impl PartialEq for ValenceLexicon {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl ValenceLexicon {
    pub fn from_entries<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let entries: Vec<(String, f64)> = entries.into_iter().map(|(w, v)| (w.into(), v)).collect();
        ensure_nonempty(entries.len(), "valence")?;
        let mut seen = HashSet::new();
        let mut keys = Vec::with_capacity(entries.len());
        for (index, (word, valence)) in entries.iter().enumerate() {
            if !(VALENCE_MIN..=VALENCE_MAX).contains(valence) {
                return Err(Error::invariant(word, format!("valence {valence} outside [1, 9]")));
            }
            let key = PatternKey::parse(word)?;
            if !seen.insert(key.clone()) {
                return Err(Error::invariant(word, "duplicate word"));
            }
            keys.push((key, index));
        }
        Ok(ValenceLexicon {
            entries,
            matcher: CompiledMatcher::build(keys),
        })
    }

    pub fn entries(&self) -> &[(String, f64)] {
        &self.entries
    }

    pub fn valence(&self, index: usize) -> f64 {
        self.entries[index].1
    }

    pub fn matcher(&self) -> &CompiledMatcher {
        &self.matcher
    }
}

impl LexiconFormat for ValenceLexicon {
    fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in content_lines(text) {
            let parts = fields(line, 2, origin, lineno)?;
            parse_key(parts[0], origin, lineno)?;
            let valence = parse_real(parts[1], origin, lineno)?;
            entries.push((parts[0].to_string(), valence));
        }
        ensure_nonempty(entries.len(), origin)?;
        Self::from_entries(entries)
    }

    fn to_text(&self) -> String {
        self.entries.iter().map(|(w, v)| format!("{w}\t{v}\n")).collect()
    }
}
