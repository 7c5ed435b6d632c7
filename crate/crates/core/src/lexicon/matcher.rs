//! Token-level multi-pattern matcher.
//!
//! Patterns are sequences of normalized tokens. The last token of a pattern
//! may be a stem (`happi*`), which matches any token that starts with it.
//! All patterns of a lexicon are compiled into one trie whose edges are
//! whole tokens; stem edges hang off each node in a character trie so a
//! token is tested against every stem in a single walk.

use std::collections::HashMap;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::textcore::{Token, Tokenizer};

/// A parsed lexicon key: one or more normalized tokens, optionally ending in
/// a stem.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PatternKey {
    pub tokens: Vec<String>,
    pub stem: bool,
}

impl PatternKey {
    /// Parses `word`, `stem*` or a multiword phrase such as `monday morning`.
    ///
    /// The phrase is tokenized the same way message text is, and only word
    /// and number tokens are kept, so `half-blood prince` becomes three
    /// tokens.
    pub fn parse(raw: &str) -> Result<PatternKey> {
        let trimmed = raw.trim();
        let (body, stem) = match trimmed.strip_suffix('*') {
            Some(body) => (body, true),
            None => (trimmed, false),
        };
        if body.contains('*') {
            return Err(Error::invalid_pattern(raw, "'*' is only allowed in final position"));
        }
        if stem && body.ends_with(char::is_whitespace) {
            return Err(Error::invalid_pattern(raw, "'*' must directly follow a stem"));
        }
        let tokens: Vec<String> = Tokenizer::default()
            .tokenize(body)
            .into_iter()
            .filter(|t| t.kind.is_lexical())
            .map(|t| t.normalized.to_lowercase())
            .collect();
        if tokens.is_empty() {
            return Err(Error::invalid_pattern(raw, "pattern has no word or number"));
        }
        Ok(PatternKey { tokens, stem })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// One hit of [`CompiledMatcher::match_all`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Match {
    /// Index of the pattern in the matcher.
    pub pattern: usize,
    /// Index range into the token slice that was matched against.
    pub tokens: Range<usize>,
    /// Byte span in the source text.
    pub span: Range<usize>,
}

#[derive(Debug, Clone, Default)]
struct StemTrie {
    nodes: Vec<StemNode>,
}

#[derive(Debug, Clone, Default)]
struct StemNode {
    children: HashMap<char, usize>,
    // Pattern-trie node reached when a stem ends here.
    target: Option<usize>,
}

impl StemTrie {
    fn new() -> Self {
        StemTrie {
            nodes: vec![StemNode::default()],
        }
    }

    fn insert(&mut self, stem: &str, target: usize) -> Option<usize> {
        let mut at = 0;
        for c in stem.chars() {
            at = match self.nodes[at].children.get(&c) {
                Some(&next) => next,
                None => {
                    self.nodes.push(StemNode::default());
                    let next = self.nodes.len() - 1;
                    self.nodes[at].children.insert(c, next);
                    next
                }
            };
        }
        if self.nodes[at].target.is_none() {
            self.nodes[at].target = Some(target);
        }
        self.nodes[at].target
    }

    fn get(&self, stem: &str) -> Option<usize> {
        let mut at = 0;
        for c in stem.chars() {
            at = *self.nodes[at].children.get(&c)?;
        }
        self.nodes[at].target
    }

    /// Every (stem byte length, target) whose stem is a prefix of `token`.
    fn prefixes_of<'a>(&'a self, token: &'a str) -> impl Iterator<Item = (usize, usize)> + 'a {
        let mut at = Some(0);
        let root_hit = self.nodes[0].target.map(|t| (0, t));
        root_hit.into_iter().chain(token.char_indices().filter_map(move |(i, c)| {
            let node = at?;
            at = self.nodes[node].children.get(&c).copied();
            at.and_then(|n| self.nodes[n].target.map(|t| (i + c.len_utf8(), t)))
        }))
    }
}

#[derive(Debug, Clone, Default)]
struct Node {
    exact: HashMap<String, usize>,
    stems: Option<StemTrie>,
    terminal: Option<usize>,
}

/// Ranking of a candidate match: more tokens first, then an exact final
/// token over a stem, then a longer stem over a shorter one.
type Rank = (usize, bool, usize);

/// Immutable automaton over every pattern of one lexicon.
#[derive(Debug, Clone)]
pub struct CompiledMatcher {
    nodes: Vec<Node>,
    keys: Vec<PatternKey>,
    payloads: Vec<Vec<usize>>,
    max_tokens: usize,
}

impl Default for CompiledMatcher {
    fn default() -> Self {
        CompiledMatcher {
            nodes: vec![Node::default()],
            keys: Vec::new(),
            payloads: Vec::new(),
            max_tokens: 0,
        }
    }
}

impl CompiledMatcher {
    /// Compiles `(key, entry index)` pairs. Identical keys collapse into one
    /// pattern carrying every entry index, in insertion order.
    pub fn build<I>(patterns: I) -> Self
    where
        I: IntoIterator<Item = (PatternKey, usize)>,
    {
        let mut matcher = CompiledMatcher::default();
        for (key, entry) in patterns {
            matcher.insert(key, entry);
        }
        matcher
    }

    /// Like [`CompiledMatcher::build`], but drops patterns longer than
    /// `max_tokens` tokens.
    pub fn build_limited<I>(patterns: I, max_tokens: usize) -> Self
    where
        I: IntoIterator<Item = (PatternKey, usize)>,
    {
        Self::build(patterns.into_iter().filter(|(key, _)| key.len() <= max_tokens))
    }

    fn insert(&mut self, key: PatternKey, entry: usize) {
        let last = key.tokens.len() - 1;
        let mut at = 0;
        for (i, token) in key.tokens.iter().enumerate() {
            if i == last && key.stem {
                let fresh = self.nodes.len();
                let trie = self.nodes[at].stems.get_or_insert_with(StemTrie::new);
                let target = trie.insert(token, fresh).expect("insert returns a target");
                if target == fresh {
                    self.nodes.push(Node::default());
                }
                at = target;
            } else {
                at = match self.nodes[at].exact.get(token) {
                    Some(&next) => next,
                    None => {
                        self.nodes.push(Node::default());
                        let next = self.nodes.len() - 1;
                        self.nodes[at].exact.insert(token.clone(), next);
                        next
                    }
                };
            }
        }
        match self.nodes[at].terminal {
            Some(pattern) => self.payloads[pattern].push(entry),
            None => {
                self.max_tokens = self.max_tokens.max(key.len());
                self.nodes[at].terminal = Some(self.keys.len());
                self.keys.push(key);
                self.payloads.push(vec![entry]);
            }
        }
    }

    pub fn pattern_count(&self) -> usize {
        self.keys.len()
    }

    pub fn key(&self, pattern: usize) -> &PatternKey {
        &self.keys[pattern]
    }

    /// Lexicon entry indices attached to a pattern.
    pub fn entries(&self, pattern: usize) -> &[usize] {
        &self.payloads[pattern]
    }

    /// Looks up the pattern id compiled for `key`, if any.
    pub fn find_key(&self, key: &PatternKey) -> Option<usize> {
        let last = key.tokens.len().checked_sub(1)?;
        let mut at = 0;
        for (i, token) in key.tokens.iter().enumerate() {
            at = if i == last && key.stem {
                self.nodes[at].stems.as_ref()?.get(token)?
            } else {
                *self.nodes[at].exact.get(token)?
            };
        }
        self.nodes[at].terminal
    }

    /// Every match in text order. Only word and number tokens take part;
    /// any other token breaks multiword contiguity. Overlaps resolve
    /// leftmost-first, then longest-first, and matched tokens are consumed.
    pub fn match_all(&self, tokens: &[Token]) -> Vec<Match> {
        let mut out = Vec::new();
        let mut i = 0;
        while i < tokens.len() {
            if !tokens[i].kind.is_lexical() {
                i += 1;
                continue;
            }
            let end = tokens[i..]
                .iter()
                .position(|t| !t.kind.is_lexical())
                .map_or(tokens.len(), |p| i + p);
            match self.longest_at(&tokens[i..end]) {
                Some((len, pattern)) => {
                    out.push(Match {
                        pattern,
                        tokens: i..i + len,
                        span: tokens[i].span.start..tokens[i + len - 1].span.end,
                    });
                    i += len;
                }
                None => i += 1,
            }
        }
        out
    }

    fn longest_at(&self, segment: &[Token]) -> Option<(usize, usize)> {
        let mut best: Option<(Rank, usize)> = None;
        self.descend(0, segment, 0, &mut best);
        best.map(|((len, _, _), pattern)| (len, pattern))
    }

    fn descend(&self, node: usize, segment: &[Token], depth: usize, best: &mut Option<(Rank, usize)>) {
        if depth >= segment.len() || depth >= self.max_tokens {
            return;
        }
        let token = segment[depth].normalized.as_str();
        let here = &self.nodes[node];
        if let Some(&next) = here.exact.get(token) {
            if let Some(pattern) = self.nodes[next].terminal {
                offer(best, (depth + 1, true, 0), pattern);
            }
            self.descend(next, segment, depth + 1, best);
        }
        if let Some(stems) = &here.stems {
            for (stem_len, next) in stems.prefixes_of(token) {
                if let Some(pattern) = self.nodes[next].terminal {
                    offer(best, (depth + 1, false, stem_len), pattern);
                }
            }
        }
    }
}

fn offer(best: &mut Option<(Rank, usize)>, rank: Rank, pattern: usize) {
    if best.as_ref().is_none_or(|(current, _)| rank > *current) {
        *best = Some((rank, pattern));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn compile(patterns: &[&str]) -> CompiledMatcher {
        CompiledMatcher::build(
            patterns
                .iter()
                .enumerate()
                .map(|(i, p)| (PatternKey::parse(p).unwrap(), i)),
        )
    }

    fn hits(m: &CompiledMatcher, text: &str) -> Vec<String> {
        let tokens = Tokenizer::default().tokenize(text);
        m.match_all(&tokens)
            .into_iter()
            .map(|h| text[h.span].to_string())
            .collect()
    }

    #[test]
    fn pattern_parsing() {
        let key = PatternKey::parse("Monday Morning").unwrap();
        assert_eq!(key.tokens, vec!["monday", "morning"]);
        assert!(!key.stem);
        assert!(PatternKey::parse("happi*").unwrap().stem);
        assert!(PatternKey::parse("ha*ppy").is_err());
        assert!(PatternKey::parse("").is_err());
        assert!(PatternKey::parse("*").is_err());
        assert!(PatternKey::parse("!!").is_err());
        assert_eq!(PatternKey::parse("half-blood prince").unwrap().len(), 3);
    }

    #[test]
    fn stems_match_prefixes_only() {
        let m = compile(&["happi*"]);
        assert_eq!(hits(&m, "happiness and happier days"), vec!["happiness", "happier"]);
        assert!(hits(&m, "haphazard").is_empty());
    }

    #[test]
    fn exact_patterns_are_whole_token() {
        let m = compile(&["good"]);
        assert!(hits(&m, "goodness").is_empty());
        assert_eq!(hits(&m, "Good"), vec!["Good"]);
    }

    #[test]
    fn repetition_and_longest_first() {
        let m = compile(&["bad"]);
        assert_eq!(hits(&m, "bad bad"), vec!["bad", "bad"]);
        let m = compile(&["monday", "monday morning"]);
        assert_eq!(hits(&m, "monday morning"), vec!["monday morning"]);
        assert_eq!(hits(&m, "it's monday morning"), vec!["monday morning"]);
        assert_eq!(hits(&m, "monday, morning"), vec!["monday"]);
    }

    #[test]
    fn exact_beats_stem_and_longer_stem_wins() {
        let m = compile(&["hap*", "happi*", "happiness"]);
        let tokens = Tokenizer::default().tokenize("happiness happier happen");
        let got: Vec<_> = m.match_all(&tokens).into_iter().map(|h| h.pattern).collect();
        assert_eq!(got, vec![2, 1, 0]);
    }

    #[test]
    fn duplicate_keys_share_a_pattern() {
        let m = compile(&["bad", "bad", "evil"]);
        assert_eq!(m.pattern_count(), 2);
        assert_eq!(m.entries(0), &[0, 1]);
        let key = PatternKey::parse("bad").unwrap();
        assert_eq!(m.find_key(&key), Some(0));
    }

    #[test]
    fn limited_build_drops_long_patterns() {
        let patterns = ["a b c d e", "a b"]
            .iter()
            .enumerate()
            .map(|(i, p)| (PatternKey::parse(p).unwrap(), i));
        let m = CompiledMatcher::build_limited(patterns, 4);
        assert_eq!(m.pattern_count(), 1);
    }

    #[test]
    fn multiword_with_stem_tail() {
        let m = compile(&["world health organi*"]);
        assert_eq!(hits(&m, "the World Health Organisation said"), vec!["World Health Organisation"]);
    }
}
