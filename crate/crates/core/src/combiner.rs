//! Rank-weighted ensemble over the base methods.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexicon::content_lines;
use crate::methods::{MethodId, Verdict};
use crate::metrics::{confusion, covered_count, metric_set, ratio};
use crate::polarity::{Label, Polarity};

pub const MAX_WEIGHT: u8 = 7;

/// F-measures of the seven default members on the reference benchmark.
pub const REFERENCE_FMEASURES: [(MethodId, f64); 7] = [
    (MethodId::Emoticons, 0.846),
    (MethodId::SentiStrength, 0.765),
    (MethodId::HappinessIndex, 0.665),
    (MethodId::SenticNet, 0.658),
    (MethodId::SentiWordNet, 0.646),
    (MethodId::PanasT, 0.632),
    (MethodId::Sasa, 0.627),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    #[default]
    WeightedVote,
    Cascade,
}

impl Strategy {
    pub const ALL: [Strategy; 2] = [Strategy::WeightedVote, Strategy::Cascade];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::WeightedVote => "weighted-vote",
            Strategy::Cascade => "cascade",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "weighted-vote" | "vote" => Ok(Strategy::WeightedVote),
            "cascade" => Ok(Strategy::Cascade),
            other => Err(Error::InvalidConfig(format!(
                "unknown strategy {other:?} (expected weighted-vote or cascade)"
            ))),
        }
    }
}

/// Turns per-method F-measures into integer weights: the best of M methods
/// gets M, the worst gets 1, and tied methods all get the lowest weight of
/// their group. Methods with an undefined F-measure are left out.
pub fn calibrate_weights<I>(fmeasures: I) -> Result<BTreeMap<MethodId, u8>>
where
    I: IntoIterator<Item = (MethodId, Option<f64>)>,
{
    let mut ranked: Vec<(MethodId, f64)> = fmeasures
        .into_iter()
        .filter_map(|(m, f)| f.filter(|f| !f.is_nan()).map(|f| (m, f)))
        .collect();
    if ranked.len() < 2 {
        return Err(Error::TooFewMethods {
            needed: 2,
            found: ranked.len(),
        });
    }
    if ranked.len() > MAX_WEIGHT as usize {
        return Err(Error::TooManyMethods {
            max: MAX_WEIGHT as usize,
            found: ranked.len(),
        });
    }
    if let Some((m, _)) = ranked.iter().find(|(m, _)| *m == MethodId::Combined) {
        return Err(Error::InvalidConfig(format!("{m} cannot be an ensemble member")));
    }
    ranked.sort_by(|x, y| y.1.total_cmp(&x.1));
    let total = ranked.len();
    let mut weights = BTreeMap::new();
    let mut start = 0;
    while start < total {
        let mut end = start + 1;
        while end < total && ranked[end].1 == ranked[start].1 {
            end += 1;
        }
        // positions start..end (0-based) share the weight of the last one
        let weight = (total - (end - 1)) as u8;
        for (m, _) in &ranked[start..end] {
            if weights.insert(*m, weight).is_some() {
                return Err(Error::InvalidConfig(format!("method {m} listed twice")));
            }
        }
        start = end;
    }
    Ok(weights)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    members: Vec<MethodId>,
    weights: BTreeMap<MethodId, u8>,
    strategy: Strategy,
}

impl EnsembleConfig {
    /// Members are ordered by descending weight; equal weights keep the
    /// order of `MethodId::ALL`.
    pub fn new(weights: BTreeMap<MethodId, u8>, strategy: Strategy) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidConfig("ensemble has no members".into()));
        }
        for (m, w) in &weights {
            if *m == MethodId::Combined {
                return Err(Error::InvalidConfig(format!("{m} cannot be an ensemble member")));
            }
            if !(1..=MAX_WEIGHT).contains(w) {
                return Err(Error::InvalidConfig(format!("weight {w} for {m} outside 1..={MAX_WEIGHT}")));
            }
        }
        let mut members: Vec<MethodId> = weights.keys().copied().collect();
        members.sort_by_key(|m| std::cmp::Reverse(weights[m]));
        Ok(EnsembleConfig {
            members,
            weights,
            strategy,
        })
    }

    pub fn from_fmeasures<I>(fmeasures: I, strategy: Strategy) -> Result<Self>
    where
        I: IntoIterator<Item = (MethodId, Option<f64>)>,
    {
        Self::new(calibrate_weights(fmeasures)?, strategy)
    }

    /// Seven members without LIWC, weighted 7..1 from the reference
    /// F-measures.
    pub fn reference(strategy: Strategy) -> Self {
        Self::from_fmeasures(REFERENCE_FMEASURES.iter().map(|(m, f)| (*m, Some(*f))), strategy)
            .expect("reference F-measures calibrate")
    }

    /// Members in descending weight order.
    pub fn members(&self) -> &[MethodId] {
        &self.members
    }

    pub fn weight(&self, method: MethodId) -> Option<u8> {
        self.weights.get(&method).copied()
    }

    pub fn weights(&self) -> &BTreeMap<MethodId, u8> {
        &self.weights
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    /// Keeps only the given members, with their existing weights.
    pub fn restricted_to(&self, keep: &BTreeSet<MethodId>) -> Result<Self> {
        let weights = self
            .weights
            .iter()
            .filter(|(m, _)| keep.contains(m))
            .map(|(m, w)| (*m, *w))
            .collect();
        Self::new(weights, self.strategy)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("strategy={}\n", self.strategy);
        for m in &self.members {
            out.push_str(&format!("{m}\t{}\n", self.weights[m]));
        }
        out
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut weights = BTreeMap::new();
        let mut strategy = None;
        for (lineno, line) in content_lines(text) {
            let line = line.trim();
            if let Some(value) = line.strip_prefix("strategy=") {
                let s = value.parse().map_err(|e: Error| Error::malformed(origin, lineno, e.to_string()))?;
                if strategy.replace(s).is_some() {
                    return Err(Error::malformed(origin, lineno, "strategy given twice"));
                }
                continue;
            }
            let (method, weight) = line
                .split_once('\t')
                .ok_or_else(|| Error::malformed(origin, lineno, "expected method<TAB>weight or strategy=..."))?;
            let method: MethodId = method
                .parse()
                .map_err(|e: Error| Error::malformed(origin, lineno, e.to_string()))?;
            let weight: u8 = weight
                .trim()
                .parse()
                .map_err(|_| Error::malformed(origin, lineno, format!("bad weight {weight:?}")))?;
            if weights.insert(method, weight).is_some() {
                return Err(Error::malformed(origin, lineno, format!("method {method} listed twice")));
            }
        }
        Self::new(weights, strategy.unwrap_or_default())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }
}

/// Combines member verdicts for one message. Either strategy covers the
/// message exactly when some member covers it.
pub fn combined_classify(verdicts: &[Verdict], cfg: &EnsembleConfig) -> Result<Verdict> {
    let mut covering = Vec::with_capacity(cfg.members.len());
    for (rank, &member) in cfg.members.iter().enumerate() {
        let verdict = verdicts
            .iter()
            .find(|v| v.method == member)
            .ok_or_else(|| Error::MissingMember(member.to_string()))?;
        if verdict.is_covered() {
            covering.push((rank, verdict.polarity, u32::from(cfg.weights[&member])));
        }
    }
    let Some(&(leader_rank, leader, _)) = covering.first() else {
        return Ok(Verdict::undetermined(MethodId::Combined));
    };
    if cfg.strategy == Strategy::Cascade {
        // Only the member order matters here, never the weight values.
        let score = if leader == Polarity::Positive { 1.0 } else { -1.0 };
        return Ok(Verdict::new(MethodId::Combined, leader, score).with_detail("decided_by_rank", (leader_rank + 1) as f64));
    }
    let side = |p: Polarity| -> u32 { covering.iter().filter(|(_, q, _)| *q == p).map(|(_, _, w)| w).sum() };
    let (pos, neg) = (side(Polarity::Positive), side(Polarity::Negative));
    let polarity = match pos.cmp(&neg) {
        std::cmp::Ordering::Greater => Polarity::Positive,
        std::cmp::Ordering::Less => Polarity::Negative,
        std::cmp::Ordering::Equal => leader,
    };
    let score = (f64::from(pos) - f64::from(neg)) / f64::from(pos + neg);
    Ok(Verdict::new(MethodId::Combined, polarity, score)
        .with_detail("positive_weight", f64::from(pos))
        .with_detail("negative_weight", f64::from(neg)))
}

/// Applies the ensemble message by message. `per_method` lists must be
/// aligned.
pub fn combine_corpus(per_method: &BTreeMap<MethodId, Vec<Verdict>>, cfg: &EnsembleConfig) -> Result<Vec<Verdict>> {
    let n = per_method.values().next().map_or(0, Vec::len);
    for list in per_method.values() {
        if list.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: list.len(),
            });
        }
    }
    let mut out = Vec::with_capacity(n);
    let mut row = Vec::with_capacity(cfg.members.len());
    for i in 0..n {
        row.clear();
        for m in &cfg.members {
            if let Some(list) = per_method.get(m) {
                row.push(list[i].clone());
            }
        }
        out.push(combined_classify(&row, cfg)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TradeoffPoint {
    pub prefix_size: usize,
    /// The method added at this step.
    pub added: MethodId,
    pub coverage: f64,
    pub fmeasure: Option<f64>,
}

/// Grows the ensemble one method at a time in `order`. Each prefix is
/// weighted by ranking `rank_scores` (usually calibration F-measures)
/// restricted to that prefix; a one-method prefix has weight 1.
pub fn tradeoff_curve(
    per_method: &BTreeMap<MethodId, Vec<Verdict>>,
    labels: &[Label],
    order: &[MethodId],
    rank_scores: &BTreeMap<MethodId, f64>,
    strategy: Strategy,
) -> Result<Vec<TradeoffPoint>> {
    if order.is_empty() {
        return Err(Error::InvalidConfig("tradeoff order is empty".into()));
    }
    if labels.is_empty() {
        return Err(Error::Empty("corpus".into()));
    }
    let mut points = Vec::with_capacity(order.len());
    for k in 1..=order.len() {
        let prefix = &order[..k];
        let mut scores = Vec::with_capacity(k);
        for m in prefix {
            if !per_method.contains_key(m) {
                return Err(Error::MissingMember(m.to_string()));
            }
            let score = rank_scores
                .get(m)
                .copied()
                .ok_or_else(|| Error::InvalidConfig(format!("no ranking score for {m}")))?;
            scores.push((*m, Some(score)));
        }
        let weights = if k == 1 {
            BTreeMap::from([(prefix[0], 1)])
        } else {
            calibrate_weights(scores)?
        };
        let cfg = EnsembleConfig::new(weights, strategy)?;
        let combined = combine_corpus(per_method, &cfg)?;
        let coverage = ratio::<f64>(covered_count(&combined), combined.len()).unwrap_or(0.0);
        let fmeasure = metric_set::<f64>(&confusion(&combined, labels)?).fmeasure;
        points.push(TradeoffPoint {
            prefix_size: k,
            added: prefix[k - 1],
            coverage,
            fmeasure,
        });
    }
    Ok(points)
}
