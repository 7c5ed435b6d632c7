use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::emoticon::validate_symbol;
use super::{content_lines, ensure_nonempty, fields, parse_int, parse_key, parse_word, CompiledMatcher, LexiconFormat, PatternKey};
use crate::error::{Error, Result};

/// Sentiment-strength word lists: scored terms, boosters, negators and
/// emoticons.
#[derive(Debug, Clone)]
pub struct StrengthLexicon {
    terms: Vec<(String, i32)>,
    boosters: BTreeMap<String, i32>,
    negators: BTreeSet<String>,
    emoticons: BTreeMap<String, i32>,
    matcher: CompiledMatcher,
}

impl PartialEq for StrengthLexicon {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
            && self.boosters == other.boosters
            && self.negators == other.negators
            && self.emoticons == other.emoticons
    }
}

impl StrengthLexicon {
    pub fn new(
        terms: Vec<(String, i32)>,
        boosters: BTreeMap<String, i32>,
        negators: BTreeSet<String>,
        emoticons: BTreeMap<String, i32>,
    ) -> Result<Self> {
        if terms.is_empty() && emoticons.is_empty() {
            return Err(Error::Empty("strength lexicon".into()));
        }
        let mut seen = HashSet::new();
        let mut keys = Vec::with_capacity(terms.len());
        for (index, (pattern, strength)) in terms.iter().enumerate() {
            if *strength == 0 || strength.abs() > 5 {
                return Err(Error::invariant(pattern, format!("term strength {strength} outside [-5,-1] or [1,5]")));
            }
            let key = PatternKey::parse(pattern)?;
            if !seen.insert(key.clone()) {
                return Err(Error::invariant(pattern, "duplicate term"));
            }
            keys.push((key, index));
        }
        for (word, offset) in &boosters {
            if offset.abs() > 2 {
                return Err(Error::invariant(word, format!("booster offset {offset} outside [-2, 2]")));
            }
        }
        for (symbol, strength) in &emoticons {
            validate_symbol(symbol)?;
            if strength.abs() != 1 {
                return Err(Error::invariant(symbol, "emoticon strength must be +1 or -1"));
            }
        }
        Ok(StrengthLexicon {
            terms,
            boosters,
            negators,
            emoticons,
            matcher: CompiledMatcher::build(keys),
        })
    }

    pub fn terms(&self) -> &[(String, i32)] {
        &self.terms
    }

    pub fn term_strength(&self, index: usize) -> i32 {
        self.terms[index].1
    }

    pub fn booster(&self, word: &str) -> Option<i32> {
        self.boosters.get(word).copied()
    }

    pub fn is_negator(&self, word: &str) -> bool {
        self.negators.contains(word)
    }

    pub fn emoticon(&self, symbol: &str) -> Option<i32> {
        self.emoticons.get(symbol).copied()
    }

    pub fn emoticon_symbols(&self) -> impl Iterator<Item = &str> {
        self.emoticons.keys().map(String::as_str)
    }

    pub fn matcher(&self) -> &CompiledMatcher {
        &self.matcher
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    Terms,
    Boosters,
    Negators,
    Emoticons,
}

impl LexiconFormat for StrengthLexicon {
    fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut section = None;
        let mut terms = Vec::new();
        let mut boosters = BTreeMap::new();
        let mut negators = BTreeSet::new();
        let mut emoticons = BTreeMap::new();
        let mut count = 0;
        for (lineno, line) in content_lines(text) {
            let trimmed = line.trim();
            if trimmed.starts_with('[') && trimmed.ends_with(']') {
                section = Some(match trimmed {
                    "[terms]" => Section::Terms,
                    "[boosters]" => Section::Boosters,
                    "[negators]" => Section::Negators,
                    "[emoticons]" => Section::Emoticons,
                    other => return Err(Error::malformed(origin, lineno, format!("unknown section {other}"))),
                });
                continue;
            }
            count += 1;
            match section {
                None => return Err(Error::malformed(origin, lineno, "entry before any [section]")),
                Some(Section::Terms) => {
                    let parts = fields(line, 2, origin, lineno)?;
                    parse_key(parts[0], origin, lineno)?;
                    terms.push((parts[0].to_string(), parse_int(parts[1], origin, lineno)?));
                }
                Some(Section::Boosters) => {
                    let parts = fields(line, 2, origin, lineno)?;
                    let word = parse_word(parts[0], origin, lineno)?;
                    boosters.insert(word, parse_int(parts[1], origin, lineno)?);
                }
                Some(Section::Negators) => {
                    let parts = fields(line, 1, origin, lineno)?;
                    negators.insert(parse_word(parts[0], origin, lineno)?);
                }
                Some(Section::Emoticons) => {
                    let parts = fields(line, 2, origin, lineno)?;
                    emoticons.insert(parts[0].to_string(), parse_int(parts[1], origin, lineno)?);
                }
            }
        }
        ensure_nonempty(count, origin)?;
        Self::new(terms, boosters, negators, emoticons)
    }

    fn to_text(&self) -> String {
        let mut out = String::from("[terms]\n");
        for (pattern, strength) in &self.terms {
            out.push_str(&format!("{pattern}\t{strength}\n"));
        }
        out.push_str("[boosters]\n");
        for (word, offset) in &self.boosters {
            out.push_str(&format!("{word}\t{offset}\n"));
        }
        out.push_str("[negators]\n");
        for word in &self.negators {
            out.push_str(&format!("{word}\n"));
        }
        out.push_str("[emoticons]\n");
        for (symbol, strength) in &self.emoticons {
            out.push_str(&format!("{symbol}\t{strength:+}\n"));
        }
        out
    }
}
