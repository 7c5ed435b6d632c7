//! Confusion counts, prediction metrics, coverage and pairwise agreement.
//!
//! Ratios are generic over the scalar so that the same code can run on
//! `f64`, `f32` or exact rationals. Any ratio with a zero denominator is
//! `None`.

use std::collections::BTreeMap;

use num_traits::{FromPrimitive, Num};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::methods::{MethodId, Verdict};
use crate::polarity::{Label, Polarity};

/// Scalar types the metric layer can compute in.
pub trait Scalar: Num + Clone + PartialOrd + FromPrimitive {}

impl<T: Num + Clone + PartialOrd + FromPrimitive> Scalar for T {}

fn count<T: Scalar>(n: usize) -> T {
    T::from_usize(n).expect("count representable in scalar type")
}

/// `num / den`, or `None` when `den` is zero.
pub fn ratio<T: Scalar>(num: usize, den: usize) -> Option<T> {
    (den > 0).then(|| count::<T>(num) / count::<T>(den))
}

/// Anything that carries a polarity: a verdict, or a bare polarity.
pub trait HasPolarity {
    fn polarity(&self) -> Polarity;
}

impl HasPolarity for Polarity {
    fn polarity(&self) -> Polarity {
        *self
    }
}

impl HasPolarity for Verdict {
    fn polarity(&self) -> Polarity {
        self.polarity
    }
}

impl<P: HasPolarity> HasPolarity for &P {
    fn polarity(&self) -> Polarity {
        (**self).polarity()
    }
}

/// a: predicted and actual positive; b: predicted positive, actually
/// negative; c: predicted negative, actually positive; d: both negative.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl ConfusionCounts {
    pub fn total(&self) -> usize {
        self.a + self.b + self.c + self.d
    }
}

impl std::ops::Add for ConfusionCounts {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        ConfusionCounts {
            a: self.a + o.a,
            b: self.b + o.b,
            c: self.c + o.c,
            d: self.d + o.d,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSet<T> {
    pub recall: Option<T>,
    pub precision: Option<T>,
    pub accuracy: Option<T>,
    pub fmeasure: Option<T>,
}

impl<T> MetricSet<T> {
    pub fn map<U>(self, f: impl Fn(T) -> U) -> MetricSet<U> {
        MetricSet {
            recall: self.recall.map(&f),
            precision: self.precision.map(&f),
            accuracy: self.accuracy.map(&f),
            fmeasure: self.fmeasure.map(&f),
        }
    }
}

fn check_aligned(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// Counts only messages the method classified as positive or negative.
pub fn confusion<V: HasPolarity>(verdicts: &[V], labels: &[Label]) -> Result<ConfusionCounts> {
    check_aligned(labels.len(), verdicts.len())?;
    let mut cc = ConfusionCounts::default();
    for (v, label) in verdicts.iter().zip(labels) {
        match (v.polarity(), label) {
            (Polarity::Positive, Label::Positive) => cc.a += 1,
            (Polarity::Positive, Label::Negative) => cc.b += 1,
            (Polarity::Negative, Label::Positive) => cc.c += 1,
            (Polarity::Negative, Label::Negative) => cc.d += 1,
            _ => {}
        }
    }
    Ok(cc)
}

pub fn metric_set<T: Scalar>(cc: &ConfusionCounts) -> MetricSet<T> {
    let recall = ratio::<T>(cc.a, cc.a + cc.c);
    let precision = ratio::<T>(cc.a, cc.a + cc.b);
    let accuracy = ratio::<T>(cc.a + cc.d, cc.total());
    let fmeasure = match (&precision, &recall) {
        (Some(p), Some(r)) => {
            let sum = p.clone() + r.clone();
            if sum.is_zero() {
                None
            } else {
                let two = T::one() + T::one();
                Some(two * p.clone() * r.clone() / sum)
            }
        }
        _ => None,
    };
    MetricSet {
        recall,
        precision,
        accuracy,
        fmeasure,
    }
}

pub fn covered_count<V: HasPolarity>(verdicts: &[V]) -> usize {
    verdicts.iter().filter(|v| v.polarity().is_covered()).count()
}

/// Fraction of verdicts that are positive or negative.
pub fn coverage<T: Scalar, V: HasPolarity>(verdicts: &[V]) -> Result<T> {
    ratio(covered_count(verdicts), verdicts.len()).ok_or_else(|| Error::Empty("verdict list".into()))
}

/// Positive fraction minus negative fraction, over all verdicts.
pub fn polarity_delta<T: Scalar, V: HasPolarity>(verdicts: &[V]) -> Result<T> {
    if verdicts.is_empty() {
        return Err(Error::Empty("verdict list".into()));
    }
    let pos = verdicts.iter().filter(|v| v.polarity() == Polarity::Positive).count();
    let neg = verdicts.iter().filter(|v| v.polarity() == Polarity::Negative).count();
    // one division, so e.g. 3 - 1 of 5 is exactly 0.4
    let diff = if pos >= neg {
        count::<T>(pos - neg)
    } else {
        T::zero() - count::<T>(neg - pos)
    };
    Ok(diff / count::<T>(verdicts.len()))
}

/// Plain mean of each metric over the defined values; a metric that is
/// undefined everywhere stays undefined.
pub fn macro_average<T: Scalar>(sets: &[MetricSet<T>]) -> MetricSet<T> {
    fn mean<T: Scalar>(values: impl Iterator<Item = Option<T>>) -> Option<T> {
        let defined: Vec<T> = values.flatten().collect();
        let n = defined.len();
        let total = defined.into_iter().fold(T::zero(), |acc, v| acc + v);
        (n > 0).then(|| total / count::<T>(n))
    }
    MetricSet {
        recall: mean(sets.iter().map(|s| s.recall.clone())),
        precision: mean(sets.iter().map(|s| s.precision.clone())),
        accuracy: mean(sets.iter().map(|s| s.accuracy.clone())),
        fmeasure: mean(sets.iter().map(|s| s.fmeasure.clone())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementCell {
    pub both_covered: usize,
    pub same_polarity: usize,
}

impl AgreementCell {
    pub fn agreement<T: Scalar>(&self) -> Option<T> {
        ratio(self.same_polarity, self.both_covered)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AgreementMode {
    /// Same polarity over messages both methods cover.
    #[default]
    Symmetric,
    /// Same polarity over all messages the row method covers.
    RowNormalized,
}

impl std::str::FromStr for AgreementMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symmetric" => Ok(AgreementMode::Symmetric),
            "row" | "row-normalized" => Ok(AgreementMode::RowNormalized),
            other => Err(Error::InvalidConfig(format!("unknown agreement mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementMatrix {
    pub methods: Vec<MethodId>,
    pub cells: Vec<Vec<AgreementCell>>,
    /// Messages covered by each method.
    pub covered: Vec<usize>,
}

impl AgreementMatrix {
    pub fn cell(&self, i: usize, j: usize) -> AgreementCell {
        self.cells[i][j]
    }

    pub fn agreement<T: Scalar>(&self, i: usize, j: usize, mode: AgreementMode) -> Option<T> {
        let cell = self.cells[i][j];
        match mode {
            AgreementMode::Symmetric => cell.agreement(),
            AgreementMode::RowNormalized => ratio(cell.same_polarity, self.covered[i]),
        }
    }

    /// Mean of the defined off-diagonal values in row `i`.
    pub fn row_average(&self, i: usize, mode: AgreementMode) -> Option<f64> {
        let values: Vec<f64> = (0..self.methods.len())
            .filter(|&j| j != i)
            .filter_map(|j| self.agreement::<f64>(i, j, mode))
            .collect();
        (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
    }
}

/// Pairwise agreement over the messages each pair of methods both cover.
pub fn agreement_matrix<V: HasPolarity>(per_method: &BTreeMap<MethodId, Vec<V>>) -> Result<AgreementMatrix> {
    let methods: Vec<MethodId> = per_method.keys().copied().collect();
    let lists: Vec<&Vec<V>> = per_method.values().collect();
    if let Some(first) = lists.first() {
        for list in &lists {
            check_aligned(first.len(), list.len())?;
        }
    }
    let n = methods.len();
    let mut cells = vec![
        vec![
            AgreementCell {
                both_covered: 0,
                same_polarity: 0
            };
            n
        ];
        n
    ];
    for i in 0..n {
        for j in i..n {
            let mut cell = AgreementCell {
                both_covered: 0,
                same_polarity: 0,
            };
            for (x, y) in lists[i].iter().zip(lists[j].iter()) {
                let (px, py) = (x.polarity(), y.polarity());
                if px.is_covered() && py.is_covered() {
                    cell.both_covered += 1;
                    if px == py {
                        cell.same_polarity += 1;
                    }
                }
            }
            cells[i][j] = cell;
            cells[j][i] = cell;
        }
    }
    let covered = lists.iter().map(|l| covered_count(l)).collect();
    Ok(AgreementMatrix { methods, cells, covered })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;
    use Polarity::{Negative as N, Neutral as Z, Positive as P, Undetermined as U};

    #[test]
    fn confusion_examples() {
        let cc = confusion(&[P, N, P, N], &[Label::Positive, Label::Positive, Label::Negative, Label::Negative]).unwrap();
        assert_eq!(cc, ConfusionCounts { a: 1, b: 1, c: 1, d: 1 });
        let cc = confusion(&[P; 10], &[Label::Positive; 10]).unwrap();
        assert_eq!(cc, ConfusionCounts { a: 10, b: 0, c: 0, d: 0 });
        let cc = confusion(&[U, Z], &[Label::Positive, Label::Negative]).unwrap();
        assert_eq!(cc.total(), 0);
        assert!(matches!(confusion(&[P], &[]), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn metric_examples() {
        let m = metric_set::<f64>(&ConfusionCounts { a: 1, b: 1, c: 1, d: 1 });
        assert_eq!(m, MetricSet { recall: Some(0.5), precision: Some(0.5), accuracy: Some(0.5), fmeasure: Some(0.5) });
        let m = metric_set::<f64>(&ConfusionCounts { a: 10, b: 0, c: 0, d: 10 });
        assert_eq!(m.fmeasure, Some(1.0));
        assert_eq!(m.accuracy, Some(1.0));
        let m = metric_set::<f64>(&ConfusionCounts { a: 0, b: 0, c: 5, d: 5 });
        assert_eq!((m.precision, m.recall, m.fmeasure, m.accuracy), (None, Some(0.0), None, Some(0.5)));
        let m = metric_set::<f64>(&ConfusionCounts::default());
        assert_eq!(m, MetricSet { recall: None, precision: None, accuracy: None, fmeasure: None });
    }

    #[test]
    fn exact_rationals() {
        let m = metric_set::<Ratio<i64>>(&ConfusionCounts { a: 2, b: 1, c: 3, d: 0 });
        assert_eq!(m.precision, Some(Ratio::new(2, 3)));
        assert_eq!(m.recall, Some(Ratio::new(2, 5)));
        assert_eq!(m.fmeasure, Some(Ratio::new(1, 2)));
    }

    #[test]
    fn coverage_and_delta() {
        let mut v = vec![U; 9];
        v.push(P);
        assert_eq!(coverage::<f64, _>(&v).unwrap(), 0.1);
        assert_eq!(coverage::<f64, _>(&[Z, Z]).unwrap(), 0.0);
        assert!(coverage::<f64, Polarity>(&[]).is_err());
        assert_eq!(polarity_delta::<f64, _>(&[P, P, P, N, U]).unwrap(), 0.4);
        assert_eq!(polarity_delta::<f64, _>(&[P, N]).unwrap(), 0.0);
        assert_eq!(polarity_delta::<f64, _>(&[P, P]).unwrap(), 1.0);
    }

    #[test]
    fn agreement_examples() {
        let mut m = BTreeMap::new();
        m.insert(MethodId::Emoticons, vec![P, N, U]);
        m.insert(MethodId::Sasa, vec![P, P, P]);
        let am = agreement_matrix(&m).unwrap();
        assert_eq!(am.cell(0, 1), AgreementCell { both_covered: 2, same_polarity: 1 });
        assert_eq!(am.agreement::<f64>(0, 1, AgreementMode::Symmetric), Some(0.5));
        assert_eq!(am.agreement::<f64>(1, 1, AgreementMode::Symmetric), Some(1.0));
        assert_eq!(am.agreement::<f64>(1, 0, AgreementMode::RowNormalized), Some(1.0 / 3.0));

        let mut m = BTreeMap::new();
        m.insert(MethodId::Emoticons, vec![P, P]);
        m.insert(MethodId::Sasa, vec![N, N]);
        assert_eq!(agreement_matrix(&m).unwrap().agreement::<f64>(0, 1, AgreementMode::Symmetric), Some(0.0));

        m.insert(MethodId::Liwc, vec![N]);
        assert!(agreement_matrix(&m).is_err());
    }

    #[test]
    fn macro_average_skips_undefined() {
        let a = MetricSet { recall: Some(0.5), precision: None, accuracy: Some(1.0), fmeasure: None };
        let b = MetricSet { recall: Some(1.0), precision: Some(0.25), accuracy: Some(0.0), fmeasure: None };
        let avg = macro_average(&[a, b]);
        assert_eq!(avg, MetricSet { recall: Some(0.75), precision: Some(0.25), accuracy: Some(0.5), fmeasure: None });
    }
}
