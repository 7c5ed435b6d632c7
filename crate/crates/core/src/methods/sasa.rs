//! Trainable bag-of-words polarity classifier with a four-way output:
//! positive, negative, neutral, or undefined when the top two classes are
//! too close to call.
//!
//! The model is multinomial naive Bayes with additive smoothing. Words never
//! seen in training are skipped at classification time, so a text made
//! only of unseen words is scored by the class priors alone.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{MethodId, Verdict};
use crate::corpus::LabeledCorpus;
use crate::error::{Error, Result};
use crate::lexicon::{content_lines, fields, parse_real};
use crate::polarity::{Label, Polarity};
use crate::textcore::{Token, Tokenizer};

const FORMAT_TAG: &str = "sasa-model";
const FORMAT_VERSION: &str = "1";
const PRIOR_TOLERANCE: f64 = 1e-9;

pub const DEFAULT_SMOOTHING: f64 = 1.0;
/// Log-posterior gap below which the verdict is undefined.
pub const DEFAULT_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SasaClass {
    Positive,
    Negative,
    Neutral,
}

impl SasaClass {
    pub const ALL: [SasaClass; 3] = [SasaClass::Positive, SasaClass::Negative, SasaClass::Neutral];

    pub fn as_str(self) -> &'static str {
        match self {
            SasaClass::Positive => "positive",
            SasaClass::Negative => "negative",
            SasaClass::Neutral => "neutral",
        }
    }

    fn polarity(self) -> Polarity {
        match self {
            SasaClass::Positive => Polarity::Positive,
            SasaClass::Negative => Polarity::Negative,
            SasaClass::Neutral => Polarity::Neutral,
        }
    }
}

impl fmt::Display for SasaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SasaClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "positive" => Ok(SasaClass::Positive),
            "negative" => Ok(SasaClass::Negative),
            "neutral" => Ok(SasaClass::Neutral),
            other => Err(Error::invariant(other, "expected positive, negative or neutral")),
        }
    }
}

impl From<Label> for SasaClass {
    fn from(label: Label) -> Self {
        match label {
            Label::Positive => SasaClass::Positive,
            Label::Negative => SasaClass::Negative,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingExample {
    pub text: String,
    pub class: SasaClass,
}

/// Parses `label<TAB>text` lines where the label may also be `neutral`.
pub fn parse_sasa_training(text: &str, origin: &str) -> Result<Vec<TrainingExample>> {
    let mut examples = Vec::new();
    for (lineno, line) in content_lines(text) {
        let (label, body) = line
            .split_once('\t')
            .ok_or_else(|| Error::malformed(origin, lineno, "expected label<TAB>text"))?;
        let class: SasaClass = label
            .parse()
            .map_err(|e: Error| Error::malformed(origin, lineno, e.to_string()))?;
        examples.push(TrainingExample {
            text: body.to_string(),
            class,
        });
    }
    if examples.is_empty() {
        return Err(Error::Empty(format!("training set {origin}")));
    }
    Ok(examples)
}

pub fn load_sasa_training(path: impl AsRef<Path>) -> Result<Vec<TrainingExample>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_sasa_training(&text, &path.display().to_string())
}

fn features(tokens: &[Token]) -> impl Iterator<Item = &str> {
    tokens.iter().filter(|t| t.kind.is_lexical()).map(|t| t.normalized.as_str())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SasaModel {
    smoothing: f64,
    margin: f64,
    /// Classes seen in training, in canonical order.
    classes: Vec<SasaClass>,
    priors: Vec<f64>,
    counts: Vec<BTreeMap<String, u64>>,
    totals: Vec<u64>,
    vocabulary: BTreeSet<String>,
}

impl SasaModel {
    /// Trains on pre-tokenized documents.
    pub fn train<'a, I>(documents: I, smoothing: f64, margin: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [Token], SasaClass)>,
    {
        if !(smoothing > 0.0 && smoothing.is_finite()) {
            return Err(Error::InvalidConfig(format!("smoothing must be positive, got {smoothing}")));
        }
        if margin.is_nan() || margin < 0.0 {
            return Err(Error::InvalidConfig(format!("margin must be non-negative, got {margin}")));
        }
        let mut docs: BTreeMap<SasaClass, u64> = BTreeMap::new();
        let mut counts: BTreeMap<SasaClass, BTreeMap<String, u64>> = BTreeMap::new();
        for (tokens, class) in documents {
            *docs.entry(class).or_insert(0) += 1;
            let per_class = counts.entry(class).or_default();
            for word in features(tokens) {
                *per_class.entry(word.to_string()).or_insert(0) += 1;
            }
        }
        for required in [SasaClass::Positive, SasaClass::Negative] {
            if !docs.contains_key(&required) {
                return Err(Error::EmptyClass(required.as_str()));
            }
        }
        let total_docs: u64 = docs.values().sum();
        let classes: Vec<SasaClass> = docs.keys().copied().collect();
        let priors = classes.iter().map(|c| docs[c] as f64 / total_docs as f64).collect();
        let counts: Vec<BTreeMap<String, u64>> = classes
            .iter()
            .map(|c| counts.remove(c).unwrap_or_default())
            .collect();
        Ok(Self::assemble(smoothing, margin, classes, priors, counts))
    }

    fn assemble(
        smoothing: f64,
        margin: f64,
        classes: Vec<SasaClass>,
        priors: Vec<f64>,
        counts: Vec<BTreeMap<String, u64>>,
    ) -> Self {
        let totals = counts.iter().map(|m| m.values().sum()).collect();
        let vocabulary = counts.iter().flat_map(|m| m.keys().cloned()).collect();
        SasaModel {
            smoothing,
            margin,
            classes,
            priors,
            counts,
            totals,
            vocabulary,
        }
    }

    pub fn smoothing(&self) -> f64 {
        self.smoothing
    }

    pub fn margin(&self) -> f64 {
        self.margin
    }

    pub fn with_margin(mut self, margin: f64) -> Self {
        self.margin = margin;
        self
    }

    pub fn classes(&self) -> &[SasaClass] {
        &self.classes
    }

    pub fn prior(&self, class: SasaClass) -> Option<f64> {
        self.class_index(class).map(|i| self.priors[i])
    }

    /// Times `word` was seen under `class` in training.
    pub fn count(&self, class: SasaClass, word: &str) -> u64 {
        self.class_index(class)
            .and_then(|i| self.counts[i].get(word).copied())
            .unwrap_or(0)
    }

    pub fn vocabulary_size(&self) -> usize {
        self.vocabulary.len()
    }

    fn class_index(&self, class: SasaClass) -> Option<usize> {
        self.classes.iter().position(|c| *c == class)
    }

    /// Normalized log-posteriors for each trained class.
    pub fn log_posteriors(&self, tokens: &[Token]) -> Vec<(SasaClass, f64)> {
        let vocab = self.vocabulary.len() as f64;
        let mut joint: Vec<f64> = self.priors.iter().map(|p| p.ln()).collect();
        for word in features(tokens).filter(|w| self.vocabulary.contains(*w)) {
            for (i, score) in joint.iter_mut().enumerate() {
                let count = self.counts[i].get(word).copied().unwrap_or(0) as f64;
                let denom = self.totals[i] as f64 + self.smoothing * vocab;
                *score += ((count + self.smoothing) / denom).ln();
            }
        }
        let max = joint.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let log_norm = max + joint.iter().map(|s| (s - max).exp()).sum::<f64>().ln();
        self.classes
            .iter()
            .zip(joint)
            .map(|(c, s)| (*c, s - log_norm))
            .collect()
    }

    /// Serializes to the versioned text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{FORMAT_TAG}\t{FORMAT_VERSION}\nsmoothing\t{}\nmargin\t{}\n", self.smoothing, self.margin);
        for (class, prior) in self.classes.iter().zip(&self.priors) {
            out.push_str(&format!("prior\t{class}\t{prior}\n"));
        }
        for (class, counts) in self.classes.iter().zip(&self.counts) {
            for (word, n) in counts {
                out.push_str(&format!("{class}\t{word}\t{n}\n"));
            }
        }
        out
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        match lines.next() {
            Some((_, line)) if line.trim() == format!("{FORMAT_TAG}\t{FORMAT_VERSION}") => {}
            Some((lineno, _)) => {
                return Err(Error::malformed(origin, lineno, format!("expected header {FORMAT_TAG}<TAB>{FORMAT_VERSION}")))
            }
            None => return Err(Error::Empty(format!("model {origin}"))),
        }
        let mut smoothing = None;
        let mut margin = None;
        let mut priors: BTreeMap<SasaClass, f64> = BTreeMap::new();
        let mut counts: BTreeMap<SasaClass, BTreeMap<String, u64>> = BTreeMap::new();
        for (lineno, line) in lines {
            let head = line.split('\t').next().unwrap_or_default();
            match head {
                "smoothing" | "margin" => {
                    let parts = fields(line, 2, origin, lineno)?;
                    let value = parts[1]
                        .parse::<f64>()
                        .map_err(|_| Error::malformed(origin, lineno, format!("not a number: {:?}", parts[1])))?;
                    if head == "smoothing" {
                        smoothing = Some(value);
                    } else {
                        margin = Some(value);
                    }
                }
                "prior" => {
                    let parts = fields(line, 3, origin, lineno)?;
                    let class = parse_class(parts[1], origin, lineno)?;
                    priors.insert(class, parse_real(parts[2], origin, lineno)?);
                }
                _ => {
                    let parts = fields(line, 3, origin, lineno)?;
                    let class = parse_class(parts[0], origin, lineno)?;
                    let n = parts[2]
                        .parse::<u64>()
                        .map_err(|_| Error::malformed(origin, lineno, format!("not a count: {:?}", parts[2])))?;
                    counts.entry(class).or_default().insert(parts[1].to_string(), n);
                }
            }
        }
        let smoothing = smoothing.ok_or_else(|| Error::malformed(origin, 0, "missing smoothing"))?;
        let margin = margin.ok_or_else(|| Error::malformed(origin, 0, "missing margin"))?;
        if !(smoothing > 0.0 && smoothing.is_finite()) || margin.is_nan() || margin < 0.0 {
            return Err(Error::invariant(origin, "smoothing must be positive and margin non-negative"));
        }
        for required in [SasaClass::Positive, SasaClass::Negative] {
            if !priors.contains_key(&required) {
                return Err(Error::EmptyClass(required.as_str()));
            }
        }
        if let Some(class) = counts.keys().find(|c| !priors.contains_key(c)) {
            return Err(Error::invariant(class.as_str(), "counts for a class without a prior"));
        }
        let sum: f64 = priors.values().sum();
        if priors.values().any(|p| *p <= 0.0) || (sum - 1.0).abs() > PRIOR_TOLERANCE {
            return Err(Error::invariant("prior", format!("priors must be positive and sum to 1, got {sum}")));
        }
        let classes: Vec<SasaClass> = priors.keys().copied().collect();
        let counts = classes.iter().map(|c| counts.remove(c).unwrap_or_default()).collect();
        Ok(Self::assemble(smoothing, margin, classes, priors.into_values().collect(), counts))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }
}

fn parse_class(field: &str, origin: &str, lineno: usize) -> Result<SasaClass> {
    field
        .parse()
        .map_err(|e: Error| Error::malformed(origin, lineno, e.to_string()))
}

/// Trains on a labeled corpus (positive and negative classes only).
pub fn sasa_train(corpus: &LabeledCorpus, tokenizer: &Tokenizer, smoothing: f64, margin: f64) -> Result<SasaModel> {
    let tokenized: Vec<(Vec<Token>, SasaClass)> = corpus
        .iter()
        .map(|(message, label)| (tokenizer.tokenize(&message.text), SasaClass::from(label)))
        .collect();
    SasaModel::train(tokenized.iter().map(|(t, c)| (t.as_slice(), *c)), smoothing, margin)
}

/// Trains on examples that may include a neutral class.
pub fn sasa_train_examples(
    examples: &[TrainingExample],
    tokenizer: &Tokenizer,
    smoothing: f64,
    margin: f64,
) -> Result<SasaModel> {
    let tokenized: Vec<(Vec<Token>, SasaClass)> = examples
        .iter()
        .map(|e| (tokenizer.tokenize(&e.text), e.class))
        .collect();
    SasaModel::train(tokenized.iter().map(|(t, c)| (t.as_slice(), *c)), smoothing, margin)
}

/// Argmax class, or undetermined when the two best log-posteriors differ
/// by less than the model margin.
pub fn sasa_classify(model: &SasaModel, tokens: &[Token]) -> Verdict {
    let mut posteriors = model.log_posteriors(tokens);
    let prob = |class: SasaClass| {
        posteriors
            .iter()
            .find(|(c, _)| *c == class)
            .map_or(0.0, |(_, lp)| lp.exp())
    };
    let (p_pos, p_neg) = (prob(SasaClass::Positive), prob(SasaClass::Negative));
    let mut detail = BTreeMap::new();
    for (class, lp) in &posteriors {
        detail.insert(format!("p_{class}"), lp.exp());
    }

    // Stable sort keeps the canonical class order among exact ties.
    posteriors.sort_by(|a, b| b.1.total_cmp(&a.1));
    let gap = posteriors[0].1 - posteriors[1].1;
    let polarity = if gap < model.margin {
        Polarity::Undetermined
    } else {
        posteriors[0].0.polarity()
    };
    Verdict {
        method: MethodId::Sasa,
        polarity,
        score: p_pos - p_neg,
        detail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn docs(pairs: &[(&str, SasaClass)]) -> Vec<(Vec<Token>, SasaClass)> {
        pairs
            .iter()
            .map(|(t, c)| (Tokenizer::default().tokenize(t), *c))
            .collect()
    }

    fn train(pairs: &[(&str, SasaClass)], margin: f64) -> SasaModel {
        let d = docs(pairs);
        SasaModel::train(d.iter().map(|(t, c)| (t.as_slice(), *c)), 1.0, margin).unwrap()
    }

    fn classify(model: &SasaModel, text: &str) -> Verdict {
        sasa_classify(model, &Tokenizer::default().tokenize(text))
    }

    #[test]
    fn good_good_is_positive() {
        let model = train(&[("good", SasaClass::Positive), ("bad", SasaClass::Negative)], 0.0);
        let v = classify(&model, "good good");
        assert_eq!(v.polarity, Polarity::Positive);
        // Hand computation: P(good|+) = 2/3, P(good|-) = 1/3, equal priors,
        // so the posterior odds are (2/3)^2 : (1/3)^2 = 4 : 1.
        assert!((v.detail["p_positive"] - 0.8).abs() < 1e-12);
    }

    #[test]
    fn unseen_words_fall_back_to_priors() {
        let model = train(
            &[
                ("good", SasaClass::Positive),
                ("nice", SasaClass::Positive),
                ("bad", SasaClass::Negative),
            ],
            0.0,
        );
        let v = classify(&model, "zebra quantum");
        assert_eq!(v.polarity, Polarity::Positive);
        assert!((v.detail["p_positive"] - 2.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn infinite_margin_is_always_undetermined() {
        let model = train(&[("good", SasaClass::Positive), ("bad", SasaClass::Negative)], f64::INFINITY);
        for text in ["good", "bad", "good good good", ""] {
            assert_eq!(classify(&model, text).polarity, Polarity::Undetermined);
        }
    }

    #[test]
    fn neutral_class_is_optional() {
        let model = train(
            &[
                ("good", SasaClass::Positive),
                ("bad", SasaClass::Negative),
                ("train station", SasaClass::Neutral),
            ],
            0.0,
        );
        assert_eq!(model.classes().len(), 3);
        assert_eq!(classify(&model, "station").polarity, Polarity::Neutral);
    }

    #[test]
    fn training_errors() {
        let d = docs(&[("good", SasaClass::Positive)]);
        let err = SasaModel::train(d.iter().map(|(t, c)| (t.as_slice(), *c)), 1.0, 0.0).unwrap_err();
        assert!(matches!(err, Error::EmptyClass("negative")));
        let d = docs(&[("good", SasaClass::Positive), ("bad", SasaClass::Negative)]);
        assert!(SasaModel::train(d.iter().map(|(t, c)| (t.as_slice(), *c)), 0.0, 0.0).is_err());
        assert!(SasaModel::train(d.iter().map(|(t, c)| (t.as_slice(), *c)), 1.0, -1.0).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let model = train(
            &[
                ("good day", SasaClass::Positive),
                ("bad day", SasaClass::Negative),
                ("a day", SasaClass::Neutral),
            ],
            0.25,
        );
        let text = model.to_text();
        assert!(text.starts_with("sasa-model\t1\nsmoothing\t1\nmargin\t0.25\n"));
        assert!(text.contains("positive\tgood\t1\n"));
        assert_eq!(SasaModel::parse(&text, "t").unwrap(), model);
        let inf = model.clone().with_margin(f64::INFINITY);
        assert_eq!(SasaModel::parse(&inf.to_text(), "t").unwrap(), inf);
    }

    #[test]
    fn rejects_bad_model_files() {
        assert!(SasaModel::parse("nonsense\n", "t").is_err());
        let no_neg = "sasa-model\t1\nsmoothing\t1\nmargin\t0\nprior\tpositive\t1\n";
        assert!(matches!(SasaModel::parse(no_neg, "t"), Err(Error::EmptyClass("negative"))));
        let bad_sum = "sasa-model\t1\nsmoothing\t1\nmargin\t0\nprior\tpositive\t0.7\nprior\tnegative\t0.7\n";
        assert!(SasaModel::parse(bad_sum, "t").is_err());
    }

    #[test]
    fn training_file_parser() {
        let ex = parse_sasa_training("# c\npositive\tyay\nneutral\tthe bus\n", "t").unwrap();
        assert_eq!(ex.len(), 2);
        assert_eq!(ex[1].class, SasaClass::Neutral);
        assert!(parse_sasa_training("happy\tyay\n", "t").is_err());
    }
}
