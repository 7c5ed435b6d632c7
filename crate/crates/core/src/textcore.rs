//! Tokenization of short informal texts.
//!
//! Emoticons are recognized before anything else so that symbols such as
//! `:-)` or `>:-(` survive as single tokens instead of being shredded into
//! punctuation. Runs of repeated punctuation (`!!!!`) are kept together
//! because the rule-based classifier reads their length.

use std::collections::HashMap;
use std::ops::Range;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

/// A single short text, such as a tweet or a forum comment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub id: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<DateTime<Utc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

impl Message {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Message {
            id: id.into(),
            text: text.into(),
            timestamp: None,
            source: None,
        }
    }

    pub fn with_timestamp(mut self, timestamp: DateTime<Utc>) -> Self {
        self.timestamp = Some(timestamp);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenKind {
    Word,
    Emoticon,
    PunctuationRun,
    Number,
    Other,
}

impl TokenKind {
    /// Words and numbers are the only kinds that lexicon lookups consider.
    pub fn is_lexical(self) -> bool {
        matches!(self, TokenKind::Word | TokenKind::Number)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub normalized: String,
    pub kind: TokenKind,
    /// Byte offsets into the source text, end exclusive.
    pub span: Range<usize>,
}

impl Token {
    pub fn new(surface: &str, kind: TokenKind, span: Range<usize>) -> Self {
        let normalized = match kind {
            TokenKind::Word => surface.to_lowercase(),
            _ => surface.to_string(),
        };
        Token {
            surface: surface.to_string(),
            normalized,
            kind,
            span,
        }
    }

    /// Character count of the surface form.
    pub fn char_len(&self) -> usize {
        self.surface.chars().count()
    }
}

/// Lowercases word tokens; every other kind passes through untouched.
pub fn normalize(token: Token) -> Token {
    match token.kind {
        TokenKind::Word => Token {
            normalized: token.normalized.to_lowercase(),
            ..token
        },
        _ => token,
    }
}

/// Longest-match literal scanner for emoticon symbols.
#[derive(Debug, Clone, Default)]
pub struct Tokenizer {
    // Patterns bucketed by first char, each bucket sorted longest first.
    emoticons: HashMap<char, Vec<String>>,
}

impl Tokenizer {
    pub fn new<I, S>(emoticon_patterns: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut emoticons: HashMap<char, Vec<String>> = HashMap::new();
        for pattern in emoticon_patterns {
            let pattern = pattern.as_ref();
            if let Some(first) = pattern.chars().next() {
                emoticons.entry(first).or_default().push(pattern.to_string());
            }
        }
        for bucket in emoticons.values_mut() {
            bucket.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
            bucket.dedup();
        }
        Tokenizer { emoticons }
    }

    /// Splits `text` into tokens. Whitespace is never part of a token.
    pub fn tokenize(&self, text: &str) -> Vec<Token> {
        let mut tokens = Vec::new();
        let mut pos = 0;
        while pos < text.len() {
            let rest = &text[pos..];
            let c = rest.chars().next().expect("pos is a char boundary");
            if c.is_whitespace() {
                pos += c.len_utf8();
                continue;
            }
            let prev = text[..pos].chars().next_back();

            if let Some(len) = self.emoticon_at(text, pos, prev) {
                tokens.push(Token::new(&text[pos..pos + len], TokenKind::Emoticon, pos..pos + len));
                pos += len;
                continue;
            }

            if let Some(len) = url_or_mention_len(rest, prev) {
                tokens.push(Token::new(&text[pos..pos + len], TokenKind::Other, pos..pos + len));
                pos += len;
                continue;
            }

            let (kind, len) = if c.is_alphabetic() {
                (TokenKind::Word, word_len(rest))
            } else if c.is_numeric() {
                (TokenKind::Number, number_len(rest))
            } else if c.is_ascii_punctuation() {
                (TokenKind::PunctuationRun, self.punctuation_len(text, pos))
            } else {
                (TokenKind::Other, c.len_utf8())
            };
            tokens.push(Token::new(&text[pos..pos + len], kind, pos..pos + len));
            pos += len;
        }
        tokens
    }

    /// Byte length of the longest emoticon starting at `pos`, if any.
    ///
    /// A symbol that begins (ends) with an alphanumeric char only matches
    /// when the preceding (following) char is not alphanumeric, so `Oo` is
    /// not found inside "Oops" and `:p` is not found in ":pizza".
    fn emoticon_at(&self, text: &str, pos: usize, prev: Option<char>) -> Option<usize> {
        let rest = &text[pos..];
        let first = rest.chars().next()?;
        let bucket = self.emoticons.get(&first)?;
        bucket
            .iter()
            .find(|pattern| {
                if !rest.starts_with(pattern.as_str()) {
                    return false;
                }
                if first.is_alphanumeric() && prev.is_some_and(char::is_alphanumeric) {
                    return false;
                }
                let last = pattern.chars().next_back().expect("non-empty pattern");
                let next = rest[pattern.len()..].chars().next();
                !(last.is_alphanumeric() && next.is_some_and(char::is_alphanumeric))
            })
            .map(|pattern| pattern.len())
    }

    fn punctuation_len(&self, text: &str, start: usize) -> usize {
        let mut pos = start;
        for c in text[start..].chars() {
            if !c.is_ascii_punctuation() {
                break;
            }
            if pos > start {
                let prev = text[..pos].chars().next_back();
                if self.emoticon_at(text, pos, prev).is_some() {
                    break;
                }
            }
            pos += c.len_utf8();
        }
        pos - start
    }
}

/// Tokenizes `text` recognizing the given literal emoticon symbols.
pub fn tokenize<S: AsRef<str>>(text: &str, emoticon_patterns: &[S]) -> Vec<Token> {
    Tokenizer::new(emoticon_patterns.iter().map(AsRef::as_ref)).tokenize(text)
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

// Letter-initial run of letters and digits; an apostrophe is kept only when
// a letter follows it ("don't", "britain's").
fn word_len(s: &str) -> usize {
    let mut len = 0;
    let mut chars = s.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if c.is_alphanumeric() {
            len = i + c.len_utf8();
        } else if is_apostrophe(c) {
            match chars.peek() {
                Some(&(_, next)) if next.is_alphabetic() => len = i + c.len_utf8(),
                _ => break,
            }
        } else {
            break;
        }
    }
    len
}

// Digits with internal '.' or ',' separators ("1,000", "3.5").
fn number_len(s: &str) -> usize {
    let bytes = s.as_bytes();
    let mut len = 0;
    for (i, c) in s.char_indices() {
        if c.is_numeric() {
            len = i + c.len_utf8();
        } else if (c == '.' || c == ',') && bytes.get(i + 1).is_some_and(u8::is_ascii_digit) {
            continue;
        } else {
            break;
        }
    }
    len
}

fn url_or_mention_len(rest: &str, prev: Option<char>) -> Option<usize> {
    if prev.is_some_and(char::is_alphanumeric) {
        return None;
    }
    let lower_prefix: String = rest.chars().take(8).collect::<String>().to_ascii_lowercase();
    if lower_prefix.starts_with("http://")
        || lower_prefix.starts_with("https://")
        || lower_prefix.starts_with("www.")
    {
        return Some(rest.find(char::is_whitespace).unwrap_or(rest.len()));
    }
    if let Some(handle) = rest.strip_prefix('@') {
        let len: usize = handle
            .chars()
            .take_while(|c| c.is_alphanumeric() || *c == '_')
            .map(char::len_utf8)
            .sum();
        if len > 0 {
            return Some(1 + len);
        }
    }
    None
}

/// Contiguous word n-grams joined by single spaces, in text order.
///
/// Any non-word token breaks contiguity. `n` of zero yields nothing.
pub fn ngrams(tokens: &[Token], n: usize) -> Vec<(String, Range<usize>)> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for run in tokens.split(|t| t.kind != TokenKind::Word) {
        for window in run.windows(n) {
            let joined = window
                .iter()
                .map(|t| t.normalized.as_str())
                .collect::<Vec<_>>()
                .join(" ");
            let span = window[0].span.start..window[n - 1].span.end;
            out.push((joined, span));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table_tokenizer() -> Tokenizer {
        Tokenizer::new([":)", ":(", ":-)", ":o", ":o)", "D:", "Oo", ":p", ":0", "-.-", "-.-'", ":'("])
    }

    fn kinds(tokens: &[Token]) -> Vec<(TokenKind, &str)> {
        tokens.iter().map(|t| (t.kind, t.normalized.as_str())).collect()
    }

    #[test]
    fn empty_text_yields_nothing() {
        assert!(table_tokenizer().tokenize("").is_empty());
        assert!(table_tokenizer().tokenize("   \t\n").is_empty());
    }

    #[test]
    fn repeated_punctuation_is_one_token() {
        let tokens = table_tokenizer().tokenize("Cool!!!!");
        assert_eq!(
            kinds(&tokens),
            vec![(TokenKind::Word, "cool"), (TokenKind::PunctuationRun, "!!!!")]
        );
    }

    #[test]
    fn apostrophes_stay_in_words_and_emoticons_survive() {
        let tokens = table_tokenizer().tokenize("I'm sad :(");
        assert_eq!(
            kinds(&tokens),
            vec![
                (TokenKind::Word, "i'm"),
                (TokenKind::Word, "sad"),
                (TokenKind::Emoticon, ":("),
            ]
        );
    }

    #[test]
    fn longest_emoticon_wins() {
        let tokens = table_tokenizer().tokenize("ok :o) -.-' :-)");
        let emoticons: Vec<_> = tokens
            .iter()
            .filter(|t| t.kind == TokenKind::Emoticon)
            .map(|t| t.surface.as_str())
            .collect();
        assert_eq!(emoticons, vec![":o)", "-.-'", ":-)"]);
    }

    #[test]
    fn alphanumeric_emoticons_respect_word_boundaries() {
        let t = table_tokenizer();
        assert_eq!(kinds(&t.tokenize("Oops")), vec![(TokenKind::Word, "oops")]);
        assert_eq!(kinds(&t.tokenize("Oo")), vec![(TokenKind::Emoticon, "Oo")]);
        assert_eq!(
            kinds(&t.tokenize("AND: x")),
            vec![
                (TokenKind::Word, "and"),
                (TokenKind::PunctuationRun, ":"),
                (TokenKind::Word, "x")
            ]
        );
        assert_eq!(kinds(&t.tokenize("D: ugh"))[0], (TokenKind::Emoticon, "D:"));
        // ":0" must not fire inside a clock time.
        assert!(t.tokenize("10:00").iter().all(|tok| tok.kind != TokenKind::Emoticon));
    }

    #[test]
    fn emoticon_ends_a_punctuation_run() {
        let tokens = table_tokenizer().tokenize("great!!:)");
        assert_eq!(
            kinds(&tokens),
            vec![
                (TokenKind::Word, "great"),
                (TokenKind::PunctuationRun, "!!"),
                (TokenKind::Emoticon, ":)"),
            ]
        );
    }

    #[test]
    fn urls_and_mentions_are_other() {
        let tokens = table_tokenizer().tokenize("@bob see http://x.co/a?b=1 now");
        assert_eq!(
            kinds(&tokens),
            vec![
                (TokenKind::Other, "@bob"),
                (TokenKind::Word, "see"),
                (TokenKind::Other, "http://x.co/a?b=1"),
                (TokenKind::Word, "now"),
            ]
        );
    }

    #[test]
    fn alphanumeric_words_and_numbers() {
        let tokens = table_tokenizer().tokenize("the A330 flight 447 cost 1,000.50");
        assert_eq!(
            kinds(&tokens),
            vec![
                (TokenKind::Word, "the"),
                (TokenKind::Word, "a330"),
                (TokenKind::Word, "flight"),
                (TokenKind::Number, "447"),
                (TokenKind::Word, "cost"),
                (TokenKind::Number, "1,000.50"),
            ]
        );
    }

    #[test]
    fn normalize_cases() {
        let word = Token::new("LOVE", TokenKind::Word, 0..4);
        assert_eq!(normalize(word).normalized, "love");
        let emo = Token::new(":-)", TokenKind::Emoticon, 0..3);
        assert_eq!(normalize(emo.clone()), emo);
        let dont = Token::new("Don't", TokenKind::Word, 0..5);
        let once = normalize(dont);
        assert_eq!(once.normalized, "don't");
        assert_eq!(normalize(once.clone()), once);
    }

    #[test]
    fn ngram_examples() {
        let t = table_tokenizer();
        let grams = ngrams(&t.tokenize("monday morning"), 2);
        assert_eq!(grams, vec![("monday morning".to_string(), 0..14)]);
        assert!(ngrams(&t.tokenize("sad :( day"), 2).is_empty());
        let uni: Vec<_> = ngrams(&t.tokenize("Nice day!"), 1).into_iter().map(|g| g.0).collect();
        assert_eq!(uni, vec!["nice", "day"]);
    }

    #[test]
    fn curly_apostrophe() {
        let tokens = table_tokenizer().tokenize("it\u{2019}s");
        assert_eq!(tokens.len(), 1);
        assert_eq!(tokens[0].kind, TokenKind::Word);
    }
}
