use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufWriter, Write};
use std::path::Path;

use chrono::TimeDelta;
use sentimeter_core::lexicon::Mood;
use sentimeter_core::methods::{load_sasa_training, sasa_train_examples, SasaModel};
use sentimeter_core::report::{
    agreement_table, coverage_table, fmt_value, metric_table, series_table, tradeoff_table, Table,
};
use sentimeter_core::{
    agreement_matrix, combine_corpus, confusion, coverage as coverage_of, filter_event, load_labeled_corpus,
    load_message_stream, macro_average, metric_set, polarity_delta, reference_events, tradeoff_curve, CorpusFormat,
    Engine, EnsembleConfig, EventSpec, LabeledCorpus, Message, MethodId, MetricSet, Strategy, Verdict,
};
use sentimeter_service::ServiceConfig;
use serde::Serialize;

use crate::output::{read_input, write_file, Output};
use crate::{
    AgreementArgs, AnalyzeArgs, BenchmarkArgs, CalibrateArgs, CombineArgs, CoverageArgs, EnsembleArgs, EventsArgs,
    Failure, LexiconArgs, MessagesArgs, MoodsArgs, ServeArgs, TrainSasaArgs,
};

fn load_engine(args: &LexiconArgs) -> Result<Engine, Failure> {
    let mut engine = match &args.lexicon_dir {
        Some(dir) => Engine::from_dir(dir)?,
        None => Engine::bundled(),
    };
    if let Some(path) = &args.sasa_model {
        engine = engine.with_sasa(SasaModel::load(path)?);
    }
    Ok(engine)
}

fn load_ensemble(args: &EnsembleArgs) -> Result<EnsembleConfig, Failure> {
    let cfg = match &args.ensemble {
        Some(path) => EnsembleConfig::load(path)?,
        None => EnsembleConfig::reference(Strategy::WeightedVote),
    };
    Ok(match args.strategy {
        Some(strategy) => cfg.with_strategy(strategy),
        None => cfg,
    })
}

fn or_all(methods: Vec<MethodId>) -> Vec<MethodId> {
    if methods.is_empty() {
        MethodId::ALL.to_vec()
    } else {
        methods
    }
}

fn base_methods(methods: &[MethodId]) -> Vec<MethodId> {
    methods.iter().copied().filter(|m| *m != MethodId::Combined).collect()
}

/// Runs the requested methods plus whatever the ensemble needs.
fn classify_with(
    engine: &Engine,
    messages: &[Message],
    methods: &[MethodId],
    ensemble: Option<&EnsembleConfig>,
) -> BTreeMap<MethodId, Vec<Verdict>> {
    let mut needed: BTreeSet<MethodId> = methods.iter().copied().collect();
    if let Some(cfg) = ensemble {
        needed.extend(cfg.members().iter().copied());
    }
    let needed: Vec<MethodId> = needed.into_iter().collect();
    engine.classify_corpus(messages, &needed)
}

fn combined_column(strategy: Strategy) -> String {
    format!("Combined ({strategy})")
}

fn names(methods: &[MethodId]) -> Vec<String> {
    methods.iter().map(|m| m.display_name().to_string()).collect()
}

fn load_messages(args: &MessagesArgs) -> Result<Vec<Message>, Failure> {
    if args.format == "text" {
        let text = read_input(&args.corpus)?;
        let origin = file_stem(&args.corpus);
        let messages: Vec<Message> = text
            .lines()
            .enumerate()
            .filter(|(_, line)| !line.trim().is_empty())
            .map(|(i, line)| Message::new(format!("{origin}:{}", i + 1), line))
            .collect();
        if messages.is_empty() {
            return Err(Failure::Input(format!("empty corpus {origin}")));
        }
        return Ok(messages);
    }
    let format: CorpusFormat = args.format.parse()?;
    Ok(load_labeled_corpus(&args.corpus, format)?.messages().to_vec())
}

fn file_stem(path: &Path) -> String {
    if path == Path::new("-") {
        return "stdin".to_string();
    }
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

#[derive(Serialize)]
struct AnalyzeLine<'a> {
    #[serde(skip_serializing_if = "Option::is_none")]
    id: Option<&'a str>,
    #[serde(flatten)]
    verdict: &'a Verdict,
}

pub fn analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    let engine = load_engine(&args.lexicons)?;
    let ensemble = load_ensemble(&args.ensemble)?;
    let methods = if args.methods.is_empty() {
        MethodId::ALL.into_iter().chain([MethodId::Combined]).collect()
    } else {
        args.methods
    };
    let mut out = BufWriter::new(std::io::stdout().lock());
    let mut emit = |id: Option<&str>, text: &str| -> Result<(), Failure> {
        for verdict in &engine.analyze(text, &methods, &ensemble)? {
            let line = serde_json::to_string(&AnalyzeLine { id, verdict }).map_err(|e| Failure::Internal(e.to_string()))?;
            writeln!(out, "{line}").map_err(|e| Failure::Internal(format!("stdout: {e}")))?;
        }
        Ok(())
    };
    match (&args.text, &args.file) {
        (Some(text), _) => emit(None, text)?,
        (None, Some(path)) => {
            let text = read_input(path)?;
            let origin = file_stem(path);
            for (i, line) in text.lines().enumerate() {
                if !line.trim().is_empty() {
                    emit(Some(&format!("{origin}:{}", i + 1)), line)?;
                }
            }
        }
        (None, None) => return Err(Failure::Input("give --text or --file".into())),
    }
    out.flush().map_err(|e| Failure::Internal(format!("stdout: {e}")))
}

pub fn benchmark(args: BenchmarkArgs) -> Result<(), Failure> {
    let engine = load_engine(&args.lexicons)?;
    let methods = base_methods(&or_all(args.methods));
    let corpora = args
        .corpus
        .iter()
        .map(|p| load_labeled_corpus(p, args.format))
        .collect::<Result<Vec<LabeledCorpus>, _>>()?;
    let ensemble = match &args.calibration {
        Some(path) => {
            let calibration = load_labeled_corpus(path, args.format)?;
            let candidates = EnsembleConfig::reference(Strategy::WeightedVote).members().to_vec();
            calibrated(&engine, &calibration, &candidates, Strategy::WeightedVote)?.0
        }
        None => load_ensemble(&args.ensemble)?,
    };
    let out = Output::new(args.out)?;
    if let Some(dir) = out.dir() {
        write_file(&dir.join("ensemble.tsv"), &ensemble.to_text())?;
    }

    let mut columns = names(&methods);
    columns.extend(Strategy::ALL.map(combined_column));

    let mut stats = Table::new(["Dataset", "Messages", "Positive", "Negative", "Skipped"]);
    let mut fmeasures = Vec::new();
    let mut coverages = Vec::new();
    let mut deltas = Vec::new();
    let mut sets: Vec<Vec<MetricSet<f64>>> = vec![Vec::new(); columns.len()];
    for corpus in &corpora {
        let s = corpus.stats();
        stats.push_row([
            corpus.name().to_string(),
            s.messages.to_string(),
            fmt_value(Some(s.positive_fraction * 100.0), 2),
            fmt_value(Some(s.negative_fraction * 100.0), 2),
            s.skipped.to_string(),
        ]);

        let per_method = classify_with(&engine, corpus.messages(), &methods, Some(&ensemble));
        let mut lists: Vec<Vec<Verdict>> = methods.iter().map(|m| per_method[m].clone()).collect();
        for strategy in Strategy::ALL {
            lists.push(combine_corpus(&per_method, &ensemble.clone().with_strategy(strategy))?);
        }
        let mut f_row = Vec::new();
        let mut cov_row = Vec::new();
        let mut delta_row = Vec::new();
        for (col, list) in lists.iter().enumerate() {
            let set = metric_set::<f64>(&confusion(list, corpus.labels())?);
            f_row.push(set.fmeasure);
            sets[col].push(set);
            cov_row.push(Some(coverage_of::<f64, _>(list)?));
            delta_row.push(Some(polarity_delta::<f64, _>(list)?));
        }
        fmeasures.push((corpus.name().to_string(), f_row));
        coverages.push((corpus.name().to_string(), cov_row));
        deltas.push((corpus.name().to_string(), delta_row));
    }
    let averaged: Vec<(String, MetricSet<f64>)> = columns
        .iter()
        .cloned()
        .zip(sets.iter().map(|s| macro_average(s)))
        .collect();

    out.table("corpora", "Corpora", &stats)?;
    out.table("metrics", "Average metrics across datasets", &metric_table(&averaged))?;
    out.table("fmeasure", "F-measure per dataset", &series_table("Dataset", &columns, &fmeasures, 3))?;
    out.table("coverage", "Coverage per dataset", &series_table("Dataset", &columns, &coverages, 4))?;
    out.table("polarity_delta", "Positive minus negative fraction", &series_table("Dataset", &columns, &deltas, 4))?;
    Ok(())
}

type Scores = Vec<(MethodId, Option<f64>)>;

/// Per-method F-measure on a labeled corpus and the ensemble it ranks to.
fn calibrated(
    engine: &Engine,
    corpus: &LabeledCorpus,
    candidates: &[MethodId],
    strategy: Strategy,
) -> Result<(EnsembleConfig, Scores), Failure> {
    let candidates = base_methods(candidates);
    let per_method = engine.classify_corpus(corpus.messages(), &candidates);
    let mut scores = Vec::with_capacity(candidates.len());
    for m in &candidates {
        let f = metric_set::<f64>(&confusion(&per_method[m], corpus.labels())?).fmeasure;
        scores.push((*m, f));
    }
    let cfg = EnsembleConfig::from_fmeasures(scores.clone(), strategy)?;
    Ok((cfg, scores))
}

pub fn agreement(args: AgreementArgs) -> Result<(), Failure> {
    let engine = load_engine(&args.lexicons)?;
    let methods = base_methods(&or_all(args.methods));
    let messages = load_messages(&args.input)?;
    let per_method = classify_with(&engine, &messages, &methods, None);
    let matrix = agreement_matrix(&per_method)?;
    let out = Output::new(args.out)?;
    out.table("agreement", &format!("Agreement ({})", mode_name(args.mode)), &agreement_table(&matrix, args.mode))
}

fn mode_name(mode: sentimeter_core::AgreementMode) -> &'static str {
    match mode {
        sentimeter_core::AgreementMode::Symmetric => "symmetric",
        sentimeter_core::AgreementMode::RowNormalized => "row-normalized",
    }
}

pub fn coverage(args: CoverageArgs) -> Result<(), Failure> {
    let engine = load_engine(&args.lexicons)?;
    let methods = base_methods(&or_all(args.methods));
    let messages = load_messages(&args.input)?;
    let per_method = classify_with(&engine, &messages, &methods, None);
    let mut rows = Vec::with_capacity(methods.len() + 1);
    for m in &methods {
        rows.push((m.display_name().to_string(), coverage_of::<f64, _>(&per_method[m])?));
    }
    let union = (0..messages.len())
        .filter(|&i| methods.iter().any(|m| per_method[m][i].is_covered()))
        .count();
    rows.push(("Union".to_string(), union as f64 / messages.len() as f64));
    Output::new(args.out)?.table("coverage", "Coverage", &coverage_table(&rows))
}

pub fn calibrate(args: CalibrateArgs) -> Result<(), Failure> {
    let engine = load_engine(&args.lexicons)?;
    let corpus = load_labeled_corpus(&args.corpus.corpus, args.corpus.format)?;
    let candidates = if args.methods.is_empty() {
        EnsembleConfig::reference(Strategy::WeightedVote).members().to_vec()
    } else {
        args.methods
    };
    let (cfg, scores) = calibrated(&engine, &corpus, &candidates, args.strategy)?;
    for (m, f) in &scores {
        let weight = cfg.weight(*m).map_or("-".to_string(), |w| w.to_string());
        eprintln!("{:<16} F={:<8} weight={weight}", m.as_str(), fmt_value(*f, 4));
    }
    match &args.out {
        Some(path) => write_file(path, &cfg.to_text()),
        None => {
            print!("{}", cfg.to_text());
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct CombinedLine<'a> {
    id: &'a str,
    label: sentimeter_core::Label,
    #[serde(flatten)]
    verdict: &'a Verdict,
}

pub fn combine(args: CombineArgs) -> Result<(), Failure> {
    let engine = load_engine(&args.lexicons)?;
    let corpus = load_labeled_corpus(&args.corpus.corpus, args.corpus.format)?;
    let mut cfg = match &args.config {
        Some(path) => EnsembleConfig::load(path)?,
        None => EnsembleConfig::reference(Strategy::WeightedVote),
    };
    if let Some(strategy) = args.strategy {
        cfg = cfg.with_strategy(strategy);
    }
    let order = if args.order.is_empty() {
        cfg.members().to_vec()
    } else {
        args.order
    };
    let rank_scores: BTreeMap<MethodId, f64> = cfg.weights().iter().map(|(m, w)| (*m, f64::from(*w))).collect();
    let per_method = classify_with(&engine, corpus.messages(), &order, Some(&cfg));
    let combined = combine_corpus(&per_method, &cfg)?;
    let curve = tradeoff_curve(&per_method, corpus.labels(), &order, &rank_scores, cfg.strategy())?;

    let out = Output::new(args.out)?;
    if let Some(dir) = out.dir() {
        let mut lines = String::new();
        for ((message, label), verdict) in corpus.iter().zip(&combined) {
            let line = CombinedLine {
                id: &message.id,
                label,
                verdict,
            };
            lines.push_str(&serde_json::to_string(&line).map_err(|e| Failure::Internal(e.to_string()))?);
            lines.push('\n');
        }
        write_file(&dir.join("combined.jsonl"), &lines)?;
    }
    let set = metric_set::<f64>(&confusion(&combined, corpus.labels())?);
    out.table("combined", "Ensemble", &metric_table(&[(combined_column(cfg.strategy()), set)]))?;
    out.table("tradeoff", "Coverage and F-measure by ensemble size", &tradeoff_table(&curve))
}

pub fn serve(args: ServeArgs) -> Result<(), Failure> {
    let mut cfg = match &args.config {
        Some(path) => ServiceConfig::load(path)?,
        None => ServiceConfig::default(),
    };
    if let Some(listen) = args.listen {
        cfg.listen = listen;
    }
    if let Some(dir) = args.lexicon_dir {
        cfg.lexicon_dir = Some(dir);
    }
    if let Some(dir) = args.static_dir {
        cfg.static_dir = Some(dir);
    }
    if let Some(n) = args.max_text_length {
        if n == 0 {
            return Err(Failure::Input("--max-text-length must be at least 1".into()));
        }
        cfg.max_text_length = n;
    }
    tracing_subscriber::fmt().with_writer(std::io::stderr).init();
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| Failure::Internal(format!("runtime: {e}")))?;
    runtime.block_on(sentimeter_service::serve(cfg))?;
    Ok(())
}

pub fn train_sasa(args: TrainSasaArgs) -> Result<(), Failure> {
    let engine = load_engine(&args.lexicons)?;
    let examples = load_sasa_training(&args.input)?;
    let model = sasa_train_examples(&examples, engine.tokenizer(), args.smoothing, args.margin)?;
    eprintln!("{} examples, vocabulary {}", examples.len(), model.vocabulary_size());
    write_file(&args.out, &model.to_text())
}

pub fn events(args: EventsArgs) -> Result<(), Failure> {
    let engine = load_engine(&args.lexicons)?;
    let ensemble = load_ensemble(&args.ensemble)?;
    let methods = base_methods(&or_all(args.methods));
    let stream = load_message_stream(&args.stream)?;

    let mut specs = reference_events();
    if !args.event.is_empty() {
        let wanted: Vec<String> = args.event.iter().map(|e| e.trim().to_lowercase()).collect();
        for name in &wanted {
            if !specs.iter().any(|s| s.name.to_lowercase() == *name) {
                let known: Vec<&str> = specs.iter().map(|s| s.name.as_str()).collect();
                return Err(Failure::Input(format!("unknown event {name:?}; known: {}", known.join(", "))));
            }
        }
        specs.retain(|s| wanted.contains(&s.name.to_lowercase()));
    }
    if args.ignore_period {
        specs = specs
            .into_iter()
            .map(|s| EventSpec::new(s.name.clone(), None, s.keywords.clone()))
            .collect::<Result<_, _>>()?;
    }

    let mut columns = names(&methods);
    columns.push(combined_column(ensemble.strategy()));
    let mut counts = Table::new(["Event", "Messages"]);
    let mut deltas = Vec::new();
    for spec in &specs {
        let messages = filter_event(stream.iter().cloned(), spec);
        counts.push_row([spec.name.clone(), messages.len().to_string()]);
        if messages.is_empty() {
            deltas.push((spec.name.clone(), vec![None; columns.len()]));
            continue;
        }
        let per_method = classify_with(&engine, &messages, &methods, Some(&ensemble));
        let mut row: Vec<Option<f64>> = methods
            .iter()
            .map(|m| polarity_delta::<f64, _>(&per_method[m]).ok())
            .collect();
        row.push(polarity_delta::<f64, _>(&combine_corpus(&per_method, &ensemble)?).ok());
        deltas.push((spec.name.clone(), row));
    }
    let out = Output::new(args.out)?;
    out.table("events", "Event messages", &counts)?;
    out.table("event_polarity", "Positive minus negative fraction per event", &series_table("Event", &columns, &deltas, 4))
}

pub fn moods(args: MoodsArgs) -> Result<(), Failure> {
    let engine = load_engine(&args.lexicons)?;
    let lexicon = engine
        .moods()
        .ok_or_else(|| Failure::Input("the PANAS-t lexicon is not loaded".into()))?;
    if args.bucket_hours == 0 {
        return Err(Failure::Input("--bucket-hours must be at least 1".into()));
    }
    let baseline_messages = load_message_stream(&args.baseline)?;
    let stream = load_message_stream(&args.stream)?;
    let baseline = sentimeter_core::methods::panas_baseline(&baseline_messages, engine.tokenizer(), lexicon)?;
    let series = sentimeter_core::methods::panas_timeseries(
        &stream,
        engine.tokenizer(),
        lexicon,
        &baseline,
        TimeDelta::hours(i64::from(args.bucket_hours)),
    )?;

    let buckets: BTreeSet<_> = series.values().flat_map(|s| s.keys().copied()).collect();
    let columns: Vec<String> = Mood::ALL.iter().map(|m| m.as_str().to_string()).collect();
    let rows: Vec<(String, Vec<Option<f64>>)> = buckets
        .iter()
        .map(|b| {
            let values = Mood::ALL.iter().map(|m| series[m].get(b).copied()).collect();
            (b.to_rfc3339(), values)
        })
        .collect();
    Output::new(args.out)?.table("moods", "Mood change against baseline", &series_table("Bucket", &columns, &rows, 4))
}
