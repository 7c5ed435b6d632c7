//! Sentiment polarity from eight lexicon and model based methods, with
//! evaluation metrics and a rank-weighted ensemble.
//!
//! ```
//! use sentimeter_core::{Engine, EnsembleConfig, MethodId, Polarity, Strategy};
//!
//! let engine = Engine::bundled();
//! let cfg = EnsembleConfig::reference(Strategy::WeightedVote);
//! let verdicts = engine.analyze("what a day :)", &[MethodId::Emoticons], &cfg).unwrap();
//! assert_eq!(verdicts[0].polarity, Polarity::Positive);
//! ```

pub mod combiner;
pub mod corpus;
pub mod engine;
pub mod error;
pub mod lexicon;
pub mod methods;
pub mod metrics;
pub mod polarity;
pub mod report;
pub mod textcore;

pub use combiner::{
    calibrate_weights, combine_corpus, combined_classify, tradeoff_curve, EnsembleConfig, Strategy, TradeoffPoint,
    REFERENCE_FMEASURES,
};
pub use corpus::{
    corpus_stats, filter_event, load_labeled_corpus, load_message_stream, parse_message_stream, reference_events,
    CorpusFormat, CorpusStats, EventSpec, LabeledCorpus,
};
pub use engine::{Engine, MethodInfo, LEXICON_DIR_ENV};
pub use error::{Error, Result};
pub use methods::{MethodId, Verdict};
pub use metrics::{
    agreement_matrix, confusion, coverage, macro_average, metric_set, polarity_delta, AgreementCell, AgreementMatrix,
    AgreementMode, ConfusionCounts, MetricSet,
};
pub use polarity::{Label, Polarity};
pub use textcore::{tokenize, Message, Token, TokenKind, Tokenizer};

/// Metrics in double precision.
pub type MetricSetF64 = MetricSet<f64>;

/// Metrics as exact fractions.
pub type ExactMetricSet = MetricSet<num_rational::Ratio<i64>>;
