use std::collections::{BTreeMap, BTreeSet};

use chrono::{DateTime, TimeDelta, Utc};

use super::{compare_sides, MethodId, Verdict};
use crate::error::{Error, Result};
use crate::lexicon::{Affect, Mood, MoodLexicon};
use crate::textcore::{Message, Token, Tokenizer};

/// Counts mood words and compares positive-affect against negative-affect
/// moods. Attentiveness words alone make the text neutral.
pub fn panas_classify(tokens: &[Token], mlex: &MoodLexicon) -> Verdict {
    let counts = mood_counts(tokens, mlex);
    let tally = |affect: Affect| -> u32 {
        counts
            .iter()
            .filter(|(mood, _)| mood.affect() == affect)
            .map(|(_, n)| *n)
            .sum()
    };
    let positive = tally(Affect::Positive);
    let negative = tally(Affect::Negative);
    let polarity = compare_sides(positive, negative, !counts.is_empty());
    let decided = positive + negative;
    let score = if decided > 0 {
        (f64::from(positive) - f64::from(negative)) / f64::from(decided)
    } else {
        0.0
    };
    let mut verdict = Verdict::new(MethodId::PanasT, polarity, score);
    for (mood, n) in counts {
        verdict.detail.insert(mood.as_str().to_string(), f64::from(n));
    }
    verdict
}

fn mood_counts(tokens: &[Token], mlex: &MoodLexicon) -> BTreeMap<Mood, u32> {
    let matcher = mlex.matcher();
    let mut counts = BTreeMap::new();
    for hit in matcher.match_all(tokens) {
        for &entry in matcher.entries(hit.pattern) {
            *counts.entry(mlex.mood(entry)).or_insert(0) += 1;
        }
    }
    counts
}

fn moods_present(text: &str, tokenizer: &Tokenizer, mlex: &MoodLexicon) -> BTreeSet<Mood> {
    mood_counts(&tokenizer.tokenize(text), mlex).into_keys().collect()
}

/// Fraction of reference messages containing at least one word of each
/// mood. Every mood appears in the result, possibly with 0.
pub fn panas_baseline(reference: &[Message], tokenizer: &Tokenizer, mlex: &MoodLexicon) -> Result<BTreeMap<Mood, f64>> {
    if reference.is_empty() {
        return Err(Error::Empty("baseline corpus".into()));
    }
    let mut hits: BTreeMap<Mood, usize> = Mood::ALL.iter().map(|m| (*m, 0)).collect();
    for message in reference {
        for mood in moods_present(&message.text, tokenizer, mlex) {
            *hits.get_mut(&mood).expect("every mood seeded") += 1;
        }
    }
    let n = reference.len() as f64;
    Ok(hits.into_iter().map(|(m, k)| (m, k as f64 / n)).collect())
}

/// Per-mood P(s) series keyed by bucket start.
pub type MoodSeries = BTreeMap<Mood, BTreeMap<DateTime<Utc>, f64>>;

/// Relative change of each mood's prevalence against its baseline, per
/// time bucket: `clamp((f - b) / b, -1, 1)` where `f` is the fraction of
/// bucket messages with a word of that mood. Buckets are aligned to the
/// Unix epoch; empty buckets are absent.
pub fn panas_timeseries(
    corpus: &[Message],
    tokenizer: &Tokenizer,
    mlex: &MoodLexicon,
    baseline: &BTreeMap<Mood, f64>,
    period: TimeDelta,
) -> Result<MoodSeries> {
    for mood in Mood::ALL {
        match baseline.get(&mood) {
            Some(b) if *b > 0.0 && b.is_finite() => {}
            _ => return Err(Error::ZeroBaseline(mood.to_string())),
        }
    }
    let period_secs = period.num_seconds();
    if period_secs <= 0 {
        return Err(Error::InvalidConfig("time bucket must be at least one second".into()));
    }

    // bucket start -> (messages, per-mood hits)
    let mut buckets: BTreeMap<i64, (usize, BTreeMap<Mood, usize>)> = BTreeMap::new();
    for message in corpus {
        let ts = message
            .timestamp
            .ok_or_else(|| Error::MissingTimestamp(message.id.clone()))?;
        let start = ts.timestamp().div_euclid(period_secs) * period_secs;
        let bucket = buckets.entry(start).or_default();
        bucket.0 += 1;
        for mood in moods_present(&message.text, tokenizer, mlex) {
            *bucket.1.entry(mood).or_insert(0) += 1;
        }
    }

    let mut series: MoodSeries = Mood::ALL.iter().map(|m| (*m, BTreeMap::new())).collect();
    for (start, (total, hits)) in buckets {
        let when = DateTime::<Utc>::from_timestamp(start, 0).expect("bucket start in range");
        for mood in Mood::ALL {
            let f = hits.get(&mood).copied().unwrap_or(0) as f64 / total as f64;
            let b = baseline[&mood];
            let change = ((f - b) / b).clamp(-1.0, 1.0);
            series.get_mut(&mood).expect("seeded").insert(when, change);
        }
    }
    Ok(series)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::LexiconFormat;
    use crate::polarity::Polarity;

    fn lexicon() -> MoodLexicon {
        MoodLexicon::parse(
            "happy\tjoviality\nsad\tsadness\nafraid\tfear\nalert\tattentiveness\nwow\tsurprise\n",
            "t",
        )
        .unwrap()
    }

    fn run(text: &str) -> Verdict {
        panas_classify(&Tokenizer::default().tokenize(text), &lexicon())
    }

    #[test]
    fn classification_examples() {
        assert_eq!(run("so sad").polarity, Polarity::Negative);
        assert_eq!(run("happy but afraid").polarity, Polarity::Neutral);
        assert_eq!(run("stay alert").polarity, Polarity::Neutral);
        assert_eq!(run("nothing").polarity, Polarity::Undetermined);
        let v = run("happy happy sad");
        assert_eq!(v.polarity, Polarity::Positive);
        assert_eq!(v.detail["joviality"], 2.0);
    }

    fn flat_baseline(value: f64) -> BTreeMap<Mood, f64> {
        Mood::ALL.iter().map(|m| (*m, value)).collect()
    }

    fn at(secs: i64, text: &str) -> Message {
        Message::new(format!("m{secs}"), text).with_timestamp(DateTime::from_timestamp(secs, 0).unwrap())
    }

    #[test]
    fn relative_change_and_clamping() {
        let mut baseline = flat_baseline(0.25);
        baseline.insert(Mood::Surprise, 0.5);
        // 5 of 8 messages mention surprise: 0.625 = 1.25 x 0.5.
        let mut corpus: Vec<Message> = (0..5).map(|i| at(i, "wow")).collect();
        corpus.extend((5..8).map(|i| at(i, "meh")));
        let series = panas_timeseries(&corpus, &Tokenizer::default(), &lexicon(), &baseline, TimeDelta::days(1)).unwrap();
        let (&day, &p) = series[&Mood::Surprise].iter().next().unwrap();
        assert_eq!(day.timestamp(), 0);
        assert_eq!(p, 0.25);
        // No fear words at all: a full drop.
        assert_eq!(series[&Mood::Fear][&day], -1.0);

        // Three times the baseline clamps to +1.
        let mut baseline = flat_baseline(0.25);
        baseline.insert(Mood::Sadness, 0.25);
        let corpus: Vec<Message> = (0..4).map(|i| at(i, if i < 3 { "sad" } else { "x" })).collect();
        let series = panas_timeseries(&corpus, &Tokenizer::default(), &lexicon(), &baseline, TimeDelta::days(1)).unwrap();
        assert_eq!(series[&Mood::Sadness].values().next(), Some(&1.0));
    }

    #[test]
    fn unchanged_frequency_is_zero_and_buckets_split() {
        let baseline = flat_baseline(0.5);
        let corpus = vec![at(0, "happy"), at(10, "x"), at(86_400, "happy"), at(86_401, "happy")];
        let series = panas_timeseries(&corpus, &Tokenizer::default(), &lexicon(), &baseline, TimeDelta::days(1)).unwrap();
        let values: Vec<f64> = series[&Mood::Joviality].values().copied().collect();
        assert_eq!(values, vec![0.0, 1.0]);
    }

    #[test]
    fn errors() {
        let mut baseline = flat_baseline(0.5);
        baseline.insert(Mood::Guilt, 0.0);
        let err = panas_timeseries(&[at(0, "x")], &Tokenizer::default(), &lexicon(), &baseline, TimeDelta::days(1))
            .unwrap_err();
        assert!(matches!(err, Error::ZeroBaseline(ref m) if m == "guilt"));
        let err = panas_timeseries(
            &[Message::new("a", "x")],
            &Tokenizer::default(),
            &lexicon(),
            &flat_baseline(0.5),
            TimeDelta::days(1),
        )
        .unwrap_err();
        assert!(matches!(err, Error::MissingTimestamp(_)));
    }

    #[test]
    fn baseline_fractions() {
        let reference = vec![Message::new("1", "happy sad"), Message::new("2", "happy"), Message::new("3", "x")];
        let b = panas_baseline(&reference, &Tokenizer::default(), &lexicon()).unwrap();
        assert!((b[&Mood::Joviality] - 2.0 / 3.0).abs() < 1e-15);
        assert!((b[&Mood::Sadness] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(b[&Mood::Guilt], 0.0);
    }
}
