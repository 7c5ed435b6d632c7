//! The eight polarity classifiers.
//!
//! Every classifier is a pure function from tokens plus a lexicon (or a
//! trained model) to a [`Verdict`]. A lexical method returns
//! [`Polarity::Undetermined`] exactly when nothing in the text matched its
//! lexicon.

mod emoticons;
mod happiness;
mod liwc;
mod panas;
mod sasa;
mod senticnet;
mod sentistrength;
mod sentiwordnet;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use emoticons::emoticon_classify;
pub use happiness::{happiness_classify, HAPPINESS_SPLIT};
pub use liwc::liwc_classify;
pub use panas::{panas_baseline, panas_classify, panas_timeseries, MoodSeries};
pub use sasa::{
    load_sasa_training, parse_sasa_training, sasa_classify, sasa_train, sasa_train_examples, SasaClass, SasaModel,
    TrainingExample, DEFAULT_MARGIN as SASA_MARGIN, DEFAULT_SMOOTHING as SASA_SMOOTHING,
};
pub use senticnet::senticnet_classify;
pub use sentistrength::{strength_classify, EMOTICON_STRENGTH, NEGATION_WINDOW, PUNCTUATION_RUN_MIN};
pub use sentiwordnet::sentiwordnet_classify;

use crate::error::Error;
use crate::polarity::Polarity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MethodId {
    #[serde(rename = "emoticons")]
    Emoticons,
    #[serde(rename = "liwc")]
    Liwc,
    #[serde(rename = "sentistrength")]
    SentiStrength,
    #[serde(rename = "sentiwordnet")]
    SentiWordNet,
    #[serde(rename = "senticnet")]
    SenticNet,
    #[serde(rename = "sasa")]
    Sasa,
    #[serde(rename = "happiness")]
    HappinessIndex,
    #[serde(rename = "panas-t")]
    PanasT,
    /// The ensemble over other methods.
    #[serde(rename = "combined")]
    Combined,
}

impl MethodId {
    /// The eight base methods, in a fixed reporting order.
    pub const ALL: [MethodId; 8] = [
        MethodId::Emoticons,
        MethodId::Liwc,
        MethodId::SentiStrength,
        MethodId::SentiWordNet,
        MethodId::SenticNet,
        MethodId::Sasa,
        MethodId::HappinessIndex,
        MethodId::PanasT,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MethodId::Emoticons => "emoticons",
            MethodId::Liwc => "liwc",
            MethodId::SentiStrength => "sentistrength",
            MethodId::SentiWordNet => "sentiwordnet",
            MethodId::SenticNet => "senticnet",
            MethodId::Sasa => "sasa",
            MethodId::HappinessIndex => "happiness",
            MethodId::PanasT => "panas-t",
            MethodId::Combined => "combined",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            MethodId::Emoticons => "Emoticons",
            MethodId::Liwc => "LIWC",
            MethodId::SentiStrength => "SentiStrength",
            MethodId::SentiWordNet => "SentiWordNet",
            MethodId::SenticNet => "SenticNet",
            MethodId::Sasa => "SASA",
            MethodId::HappinessIndex => "Happiness Index",
            MethodId::PanasT => "PANAS-t",
            MethodId::Combined => "Combined",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            MethodId::Emoticons => "polarity of the first emoticon in the text",
            MethodId::Liwc => "positive vs negative affect category counts",
            MethodId::SentiStrength => "term strengths with boosters, negation and punctuation emphasis",
            MethodId::SentiWordNet => "average positive vs negative synset scores",
            MethodId::SenticNet => "mean polarity of matched concepts",
            MethodId::Sasa => "trained bag-of-words classifier with an undefined band",
            MethodId::HappinessIndex => "frequency-weighted mean word valence, split at 5",
            MethodId::PanasT => "mood word counts mapped to positive and negative affect",
            MethodId::Combined => "rank-weighted ensemble of the other methods",
        }
    }
}

impl fmt::Display for MethodId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let lower = s.trim().to_ascii_lowercase();
        let id = match lower.as_str() {
            "emoticons" | "emoticon" => MethodId::Emoticons,
            "liwc" => MethodId::Liwc,
            "sentistrength" => MethodId::SentiStrength,
            "sentiwordnet" => MethodId::SentiWordNet,
            "senticnet" => MethodId::SenticNet,
            "sasa" => MethodId::Sasa,
            "happiness" | "happiness-index" | "happinessindex" => MethodId::HappinessIndex,
            "panas-t" | "panas" | "panast" => MethodId::PanasT,
            "combined" => MethodId::Combined,
            _ => return Err(Error::UnknownMethod(s.to_string())),
        };
        Ok(id)
    }
}

/// One method's judgment of one message.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub method: MethodId,
    pub polarity: Polarity,
    /// Method-specific scale; its sign agrees with the polarity where the
    /// method has a signed score.
    pub score: f64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub detail: BTreeMap<String, f64>,
}

impl Verdict {
    pub fn new(method: MethodId, polarity: Polarity, score: f64) -> Self {
        Verdict {
            method,
            polarity,
            score,
            detail: BTreeMap::new(),
        }
    }

    pub fn undetermined(method: MethodId) -> Self {
        Self::new(method, Polarity::Undetermined, 0.0)
    }

    pub fn with_detail(mut self, name: &str, value: f64) -> Self {
        self.detail.insert(name.to_string(), value);
        self
    }

    pub fn is_covered(&self) -> bool {
        self.polarity.is_covered()
    }
}

/// Polarity from two competing tallies: the larger side wins, a tie with
/// at least one match is neutral, and no matches at all is undetermined.
pub(crate) fn compare_sides<T: PartialOrd>(positive: T, negative: T, matched: bool) -> Polarity {
    if !matched {
        Polarity::Undetermined
    } else if positive > negative {
        Polarity::Positive
    } else if negative > positive {
        Polarity::Negative
    } else {
        Polarity::Neutral
    }
}
