//! Labeled corpora and keyword-filtered event slices.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use chrono::{DateTime, NaiveDate, NaiveTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexicon::{content_lines, CompiledMatcher, PatternKey};
use crate::polarity::Label;
use crate::textcore::{Message, Token, Tokenizer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusFormat {
    /// `label<TAB>text`
    TwoColumn,
    /// `pos_strength<TAB>neg_strength<TAB>text`, strengths in 1..=5
    StrengthPair,
}

impl FromStr for CorpusFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "two-column" => Ok(CorpusFormat::TwoColumn),
            "strength-pair" => Ok(CorpusFormat::StrengthPair),
            other => Err(Error::InvalidConfig(format!(
                "unknown corpus format {other:?} (expected two-column or strength-pair)"
            ))),
        }
    }
}

impl fmt::Display for CorpusFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CorpusFormat::TwoColumn => "two-column",
            CorpusFormat::StrengthPair => "strength-pair",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub messages: usize,
    pub positive: usize,
    pub negative: usize,
    pub positive_fraction: f64,
    pub negative_fraction: f64,
    /// Rows dropped while loading because their two strengths were equal.
    pub skipped: usize,
}

/// Messages with binary ground-truth labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledCorpus {
    name: String,
    messages: Vec<Message>,
    labels: Vec<Label>,
    skipped: usize,
}

impl LabeledCorpus {
    pub fn new(name: impl Into<String>, items: Vec<(Message, Label)>) -> Result<Self> {
        let name = name.into();
        if items.is_empty() {
            return Err(Error::Empty(format!("corpus {name}")));
        }
        let mut seen = std::collections::HashSet::new();
        for (message, _) in &items {
            if !seen.insert(message.id.as_str()) {
                return Err(Error::invariant(&message.id, "duplicate message id"));
            }
        }
        let (messages, labels) = items.into_iter().unzip();
        Ok(LabeledCorpus {
            name,
            messages,
            labels,
            skipped: 0,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn messages(&self) -> &[Message] {
        &self.messages
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.messages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.messages.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Message, Label)> {
        self.messages.iter().zip(self.labels.iter().copied())
    }

    pub fn label_of(&self, id: &str) -> Option<Label> {
        self.messages.iter().position(|m| m.id == id).map(|i| self.labels[i])
    }

    pub fn stats(&self) -> CorpusStats {
        corpus_stats(self)
    }

    /// Renders the corpus in the two-column format.
    pub fn to_two_column(&self) -> String {
        self.iter()
            .map(|(m, label)| format!("{label}\t{}\n", m.text))
            .collect()
    }

    pub fn parse(text: &str, name: &str, format: CorpusFormat) -> Result<Self> {
        let mut items = Vec::new();
        let mut skipped = 0;
        for (lineno, line) in content_lines(text) {
            let id = format!("{name}:{lineno}");
            match format {
                CorpusFormat::TwoColumn => {
                    let (label, body) = line
                        .split_once('\t')
                        .ok_or_else(|| Error::malformed(name, lineno, "expected label<TAB>text"))?;
                    let label: Label = label
                        .parse()
                        .map_err(|e: Error| Error::malformed(name, lineno, e.to_string()))?;
                    items.push((Message::new(id, body), label));
                }
                CorpusFormat::StrengthPair => {
                    let mut parts = line.splitn(3, '\t');
                    let (Some(pos), Some(neg), Some(body)) = (parts.next(), parts.next(), parts.next()) else {
                        return Err(Error::malformed(name, lineno, "expected pos<TAB>neg<TAB>text"));
                    };
                    let pos = parse_strength(pos, name, lineno)?;
                    let neg = parse_strength(neg, name, lineno)?;
                    let label = match pos.cmp(&neg) {
                        std::cmp::Ordering::Greater => Label::Positive,
                        std::cmp::Ordering::Less => Label::Negative,
                        std::cmp::Ordering::Equal => {
                            skipped += 1;
                            continue;
                        }
                    };
                    items.push((Message::new(id, body), label));
                }
            }
        }
        let mut corpus = Self::new(name, items)?;
        corpus.skipped = skipped;
        Ok(corpus)
    }
}

fn parse_strength(field: &str, origin: &str, lineno: usize) -> Result<u8> {
    match field.trim().parse::<u8>() {
        Ok(v) if (1..=5).contains(&v) => Ok(v),
        _ => Err(Error::malformed(origin, lineno, format!("strength must be an integer in 1..=5, got {field:?}"))),
    }
}

/// Loads a labeled corpus; the corpus is named after the file stem.
pub fn load_labeled_corpus(path: impl AsRef<Path>, format: CorpusFormat) -> Result<LabeledCorpus> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    LabeledCorpus::parse(&text, &name, format)
}

pub fn corpus_stats(corpus: &LabeledCorpus) -> CorpusStats {
    let messages = corpus.len();
    let positive = corpus.labels.iter().filter(|l| **l == Label::Positive).count();
    let negative = messages - positive;
    let (positive_fraction, negative_fraction) = if messages == 0 {
        (0.0, 0.0)
    } else {
        (positive as f64 / messages as f64, negative as f64 / messages as f64)
    };
    CorpusStats {
        messages,
        positive,
        negative,
        positive_fraction,
        negative_fraction,
        skipped: corpus.skipped,
    }
}

/// A topic defined by keywords and an optional inclusive time window.
#[derive(Debug, Clone)]
pub struct EventSpec {
    pub name: String,
    pub period: Option<(DateTime<Utc>, DateTime<Utc>)>,
    pub keywords: Vec<String>,
    matcher: CompiledMatcher,
}

impl EventSpec {
    pub fn new<I, S>(name: impl Into<String>, period: Option<(DateTime<Utc>, DateTime<Utc>)>, keywords: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let name = name.into();
        let keywords: Vec<String> = keywords.into_iter().map(|k| k.into().to_lowercase()).collect();
        if keywords.is_empty() {
            return Err(Error::invariant(&name, "an event needs at least one keyword"));
        }
        if let Some((start, end)) = period {
            if start > end {
                return Err(Error::invariant(&name, "period starts after it ends"));
            }
        }
        let keys = keywords
            .iter()
            .enumerate()
            .map(|(i, k)| PatternKey::parse(k).map(|key| (key, i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(EventSpec {
            name,
            period,
            keywords,
            matcher: CompiledMatcher::build(keys),
        })
    }

    /// Whole days, both ends inclusive.
    pub fn with_days(
        name: &str,
        first: NaiveDate,
        last: NaiveDate,
        keywords: &[&str],
    ) -> Result<Self> {
        let start = first.and_time(NaiveTime::MIN).and_utc();
        let end = last
            .and_hms_opt(23, 59, 59)
            .expect("valid time")
            .and_utc();
        Self::new(name, Some((start, end)), keywords.iter().copied())
    }

    fn in_period(&self, message: &Message) -> bool {
        match (self.period, message.timestamp) {
            (None, _) => true,
            (Some((start, end)), Some(ts)) => start <= ts && ts <= end,
            (Some(_), None) => false,
        }
    }

    /// Does the message mention at least one keyword?
    pub fn mentions(&self, text: &str) -> bool {
        // Punctuation is ignored so that "half-blood prince" matches across
        // the hyphen.
        let tokens: Vec<Token> = Tokenizer::default()
            .tokenize(text)
            .into_iter()
            .filter(|t| t.kind.is_lexical())
            .collect();
        !self.matcher.match_all(&tokens).is_empty()
    }
}

/// Keeps messages that mention a keyword and fall inside the period, in
/// input order.
pub fn filter_event<I>(messages: I, spec: &EventSpec) -> Vec<Message>
where
    I: IntoIterator<Item = Message>,
{
    messages
        .into_iter()
        .filter(|m| spec.in_period(m) && spec.mentions(&m.text))
        .collect()
}

fn day(y: i32, m: u32, d: u32) -> NaiveDate {
    NaiveDate::from_ymd_opt(y, m, d).expect("valid date")
}

/// The six reference topics, with their keyword lists and date ranges.
pub fn reference_events() -> Vec<EventSpec> {
    let specs: [(&str, NaiveDate, NaiveDate, &[&str]); 6] = [
        (
            "AirFrance",
            day(2009, 6, 1),
            day(2009, 6, 6),
            &["victims", "passengers", "a330", "447", "crash", "airplane", "airfrance"],
        ),
        (
            "2008US-Elect",
            day(2008, 11, 2),
            day(2008, 11, 6),
            &["voting", "vote", "candidate", "campaign", "mccain", "democrat*", "republican*", "obama", "bush"],
        ),
        (
            "2008Olympics",
            day(2008, 8, 6),
            day(2008, 8, 26),
            &["olympics", "medal*", "china", "beijing", "sports", "peking", "sponsor"],
        ),
        (
            "Susan Boyle",
            day(2009, 4, 11),
            day(2009, 4, 16),
            &["susan boyle", "I dreamed a dream", "britain's got talent", "les miserables"],
        ),
        (
            "H1N1",
            day(2009, 6, 9),
            day(2009, 6, 26),
            &["outbreak", "virus", "influenza", "pandemi*", "h1n1", "swine", "world health organization"],
        ),
        (
            "Harry-Potter",
            day(2009, 7, 13),
            day(2009, 7, 17),
            &["harry potter", "half-blood prince", "rowling"],
        ),
    ];
    specs
        .into_iter()
        .map(|(name, first, last, keywords)| {
            EventSpec::with_days(name, first, last, keywords).expect("reference events are valid")
        })
        .collect()
}

/// Parses `id<TAB>timestamp<TAB>text` lines; timestamps are RFC 3339.
pub fn parse_message_stream(text: &str, origin: &str) -> Result<Vec<Message>> {
    let mut messages = Vec::new();
    for (lineno, line) in content_lines(text) {
        let mut parts = line.splitn(3, '\t');
        let (Some(id), Some(ts), Some(body)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::malformed(origin, lineno, "expected id<TAB>timestamp<TAB>text"));
        };
        let timestamp = DateTime::parse_from_rfc3339(ts.trim())
            .map_err(|e| Error::malformed(origin, lineno, format!("bad timestamp {ts:?}: {e}")))?
            .with_timezone(&Utc);
        messages.push(Message::new(id.trim(), body).with_timestamp(timestamp));
    }
    Ok(messages)
}

pub fn load_message_stream(path: impl AsRef<Path>) -> Result<Vec<Message>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_message_stream(&text, &path.display().to_string())
}
