use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{content_lines, ensure_nonempty, fields, parse_key, Affect, CompiledMatcher, LexiconFormat, PatternKey};
use crate::error::{Error, Result};

/// The eleven moods of the PANAS-t scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mood {
    Joviality,
    Assurance,
    Serenity,
    Surprise,
    Fear,
    Sadness,
    Guilt,
    Hostility,
    Shyness,
    Fatigue,
    Attentiveness,
}

impl Mood {
    pub const ALL: [Mood; 11] = [
        Mood::Joviality,
        Mood::Assurance,
        Mood::Serenity,
        Mood::Surprise,
        Mood::Fear,
        Mood::Sadness,
        Mood::Guilt,
        Mood::Hostility,
        Mood::Shyness,
        Mood::Fatigue,
        Mood::Attentiveness,
    ];

    /// Fixed mood-to-affect mapping; attentiveness is neutral.
    pub fn affect(self) -> Affect {
        match self {
            Mood::Joviality | Mood::Assurance | Mood::Serenity | Mood::Surprise => Affect::Positive,
            Mood::Fear | Mood::Sadness | Mood::Guilt | Mood::Hostility | Mood::Shyness | Mood::Fatigue => {
                Affect::Negative
            }
            Mood::Attentiveness => Affect::Other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mood::Joviality => "joviality",
            Mood::Assurance => "assurance",
            Mood::Serenity => "serenity",
            Mood::Surprise => "surprise",
            Mood::Fear => "fear",
            Mood::Sadness => "sadness",
            Mood::Guilt => "guilt",
            Mood::Hostility => "hostility",
            Mood::Shyness => "shyness",
            Mood::Fatigue => "fatigue",
            Mood::Attentiveness => "attentiveness",
        }
    }
}

impl fmt::Display for Mood {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mood {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        Mood::ALL
            .into_iter()
            .find(|m| m.as_str() == lower)
            .ok_or_else(|| Error::invariant(s, "unknown mood"))
    }
}

/// Mood word lists. A word may belong to several moods.
#[derive(Debug, Clone)]
pub struct MoodLexicon {
    entries: Vec<(String, Mood)>,
    matcher: CompiledMatcher,
}

impl PartialEq for MoodLexicon {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl MoodLexicon {
    pub fn from_entries<I, S>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Mood)>,
        S: Into<String>,
    {
        let entries: Vec<(String, Mood)> = entries.into_iter().map(|(w, m)| (w.into(), m)).collect();
        ensure_nonempty(entries.len(), "mood")?;
        let keys = entries
            .iter()
            .enumerate()
            .map(|(i, (w, _))| PatternKey::parse(w).map(|k| (k, i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MoodLexicon {
            entries,
            matcher: CompiledMatcher::build(keys),
        })
    }

    pub fn entries(&self) -> &[(String, Mood)] {
        &self.entries
    }

    pub fn mood(&self, index: usize) -> Mood {
        self.entries[index].1
    }

    pub fn matcher(&self) -> &CompiledMatcher {
        &self.matcher
    }
}

impl LexiconFormat for MoodLexicon {
    fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (lineno, line) in content_lines(text) {
            let parts = fields(line, 2, origin, lineno)?;
            parse_key(parts[0], origin, lineno)?;
            let mood: Mood = parts[1]
                .parse()
                .map_err(|e: Error| Error::malformed(origin, lineno, e.to_string()))?;
            entries.push((parts[0].to_string(), mood));
        }
        ensure_nonempty(entries.len(), origin)?;
        Self::from_entries(entries)
    }

    fn to_text(&self) -> String {
        self.entries.iter().map(|(w, m)| format!("{w}\t{m}\n")).collect()
    }
}
