use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Outcome of a single method on a single message.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
    Neutral,
    Undetermined,
}

impl Polarity {
    /// Positive or negative: the message counts toward coverage.
    pub fn is_covered(self) -> bool {
        matches!(self, Polarity::Positive | Polarity::Negative)
    }

    pub fn as_label(self) -> Option<Label> {
        match self {
            Polarity::Positive => Some(Label::Positive),
            Polarity::Negative => Some(Label::Negative),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
            Polarity::Neutral => "neutral",
            Polarity::Undetermined => "undetermined",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Polarity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "positive" | "pos" => Ok(Polarity::Positive),
            "negative" | "neg" => Ok(Polarity::Negative),
            "neutral" => Ok(Polarity::Neutral),
            "undetermined" | "undefined" => Ok(Polarity::Undetermined),
            other => Err(Error::invariant(other, "unknown polarity")),
        }
    }
}

/// Binary ground-truth label of a labeled corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Positive,
    Negative,
}

impl Label {
    pub fn polarity(self) -> Polarity {
        match self {
            Label::Positive => Polarity::Positive,
            Label::Negative => Polarity::Negative,
        }
    }

    pub fn as_str(self) -> &'static str {
        self.polarity().as_str()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.parse::<Polarity>()? {
            Polarity::Positive => Ok(Label::Positive),
            Polarity::Negative => Ok(Label::Negative),
            other => Err(Error::invariant(
                other.as_str(),
                "labels must be positive or negative",
            )),
        }
    }
}
