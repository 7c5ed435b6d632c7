mod commands;
mod output;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sentimeter_core::{AgreementMode, CorpusFormat, MethodId, Strategy, LEXICON_DIR_ENV};

/// Sentiment polarity with several lexicon and model based methods.
#[derive(Debug, Parser)]
#[command(name = "sentimeter", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify a text, or every line of a file.
    Analyze(AnalyzeArgs),
    /// Evaluate every method on labeled corpora.
    Benchmark(BenchmarkArgs),
    /// Pairwise agreement between methods.
    Agreement(AgreementArgs),
    /// Fraction of messages each method decides.
    Coverage(CoverageArgs),
    /// Derive ensemble weights from F-measures on a labeled corpus.
    Calibrate(CalibrateArgs),
    /// Run the ensemble on a corpus and grow it one method at a time.
    Combine(CombineArgs),
    /// Start the HTTP API.
    Serve(ServeArgs),
    /// Train a SASA model from labeled text.
    TrainSasa(TrainSasaArgs),
    /// Polarity per event over a timestamped message stream.
    Events(EventsArgs),
    /// PANAS-t mood changes over time against a baseline stream.
    Moods(MoodsArgs),
}

#[derive(Debug, Args)]
struct LexiconArgs {
    /// Lexicon directory; the bundled lexicons are used when unset.
    #[arg(long, env = LEXICON_DIR_ENV)]
    lexicon_dir: Option<PathBuf>,
    /// SASA model replacing the one from the lexicon directory.
    #[arg(long)]
    sasa_model: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EnsembleArgs {
    /// Ensemble weights file (`strategy=...` then `method<TAB>weight` lines).
    #[arg(long)]
    ensemble: Option<PathBuf>,
    /// Override the ensemble strategy.
    #[arg(long, value_parser = parse_strategy)]
    strategy: Option<Strategy>,
}

#[derive(Debug, Args)]
struct CorpusArgs {
    /// Labeled corpus file.
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, default_value = "two-column", value_parser = parse_format)]
    format: CorpusFormat,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    text: Option<String>,
    /// One message per line; `-` reads stdin.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Comma separated; all methods plus `combined` by default.
    #[arg(long, value_delimiter = ',', value_parser = parse_method)]
    methods: Vec<MethodId>,
    #[command(flatten)]
    lexicons: LexiconArgs,
    #[command(flatten)]
    ensemble: EnsembleArgs,
}

#[derive(Debug, Args)]
struct BenchmarkArgs {
    /// Labeled corpus; repeat for several datasets.
    #[arg(long, required = true)]
    corpus: Vec<PathBuf>,
    #[arg(long, default_value = "two-column", value_parser = parse_format)]
    format: CorpusFormat,
    /// Calibrate the ensemble on this labeled corpus instead of using fixed weights.
    #[arg(long, conflicts_with = "ensemble")]
    calibration: Option<PathBuf>,
    #[arg(long, value_delimiter = ',', value_parser = parse_method)]
    methods: Vec<MethodId>,
    /// Write CSV and Markdown tables here instead of printing Markdown.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    lexicons: LexiconArgs,
    #[command(flatten)]
    ensemble: EnsembleArgs,
}

#[derive(Debug, Args)]
struct MessagesArgs {
    /// Corpus file.
    #[arg(long)]
    corpus: PathBuf,
    /// two-column, strength-pair, or text for one unlabeled message per line.
    #[arg(long, default_value = "two-column")]
    format: String,
}

#[derive(Debug, Args)]
struct AgreementArgs {
    #[command(flatten)]
    input: MessagesArgs,
    #[arg(long, default_value = "symmetric", value_parser = parse_mode)]
    mode: AgreementMode,
    #[arg(long, value_delimiter = ',', value_parser = parse_method)]
    methods: Vec<MethodId>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    lexicons: LexiconArgs,
}

#[derive(Debug, Args)]
struct CoverageArgs {
    #[command(flatten)]
    input: MessagesArgs,
    #[arg(long, value_delimiter = ',', value_parser = parse_method)]
    methods: Vec<MethodId>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    lexicons: LexiconArgs,
}

#[derive(Debug, Args)]
struct CalibrateArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Candidate members; the seven reference members by default.
    #[arg(long, value_delimiter = ',', value_parser = parse_method)]
    methods: Vec<MethodId>,
    #[arg(long, default_value = "weighted-vote", value_parser = parse_strategy)]
    strategy: Strategy,
    /// Where to write the ensemble file; stdout by default.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    lexicons: LexiconArgs,
}

#[derive(Debug, Args)]
struct CombineArgs {
    #[command(flatten)]
    corpus: CorpusArgs,
    /// Ensemble weights file; the reference ensemble by default.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = parse_strategy)]
    strategy: Option<Strategy>,
    /// Order in which methods join the ensemble; member rank order by default.
    #[arg(long, value_delimiter = ',', value_parser = parse_method)]
    order: Vec<MethodId>,
    /// Writes combined.jsonl and the tradeoff tables here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    lexicons: LexiconArgs,
}

#[derive(Debug, Args)]
struct ServeArgs {
    /// TOML service configuration.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    listen: Option<SocketAddr>,
    #[arg(long, env = LEXICON_DIR_ENV)]
    lexicon_dir: Option<PathBuf>,
    #[arg(long)]
    static_dir: Option<PathBuf>,
    #[arg(long)]
    max_text_length: Option<usize>,
}

#[derive(Debug, Args)]
struct TrainSasaArgs {
    /// `label<TAB>text` lines; labels are positive, negative or neutral.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = sentimeter_core::methods::SASA_SMOOTHING)]
    smoothing: f64,
    /// Minimum log-posterior gap for a decision.
    #[arg(long, default_value_t = sentimeter_core::methods::SASA_MARGIN)]
    margin: f64,
    #[command(flatten)]
    lexicons: LexiconArgs,
}

#[derive(Debug, Args)]
struct EventsArgs {
    /// `id<TAB>RFC3339 time<TAB>text` lines.
    #[arg(long)]
    stream: PathBuf,
    /// Event names to report; all reference events by default.
    #[arg(long, value_delimiter = ',')]
    event: Vec<String>,
    /// Match keywords only, regardless of the event period.
    #[arg(long)]
    ignore_period: bool,
    #[arg(long, value_delimiter = ',', value_parser = parse_method)]
    methods: Vec<MethodId>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    lexicons: LexiconArgs,
    #[command(flatten)]
    ensemble: EnsembleArgs,
}

#[derive(Debug, Args)]
struct MoodsArgs {
    /// Stream whose mood prevalence is the baseline.
    #[arg(long)]
    baseline: PathBuf,
    /// Stream to measure.
    #[arg(long)]
    stream: PathBuf,
    /// Bucket length in hours.
    #[arg(long, default_value_t = 24)]
    bucket_hours: u32,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    lexicons: LexiconArgs,
}

fn parse_method(s: &str) -> Result<MethodId, String> {
    s.trim().parse().map_err(|e: sentimeter_core::Error| e.to_string())
}

fn parse_strategy(s: &str) -> Result<Strategy, String> {
    s.parse().map_err(|e: sentimeter_core::Error| e.to_string())
}

fn parse_format(s: &str) -> Result<CorpusFormat, String> {
    s.parse().map_err(|e: sentimeter_core::Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<AgreementMode, String> {
    s.parse().map_err(|e: sentimeter_core::Error| e.to_string())
}

/// Exit status 1 for bad input, 2 for everything else.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Internal(String),
}

impl From<sentimeter_core::Error> for Failure {
    fn from(e: sentimeter_core::Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

impl From<sentimeter_service::ServiceError> for Failure {
    fn from(e: sentimeter_service::ServiceError) -> Self {
        use sentimeter_service::ServiceError;
        match e {
            ServiceError::Config(_) => Failure::Input(e.to_string()),
            ServiceError::Core(e) => e.into(),
            ServiceError::Io(_) => Failure::Internal(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Analyze(args) => commands::analyze(args),
        Command::Benchmark(args) => commands::benchmark(args),
        Command::Agreement(args) => commands::agreement(args),
        Command::Coverage(args) => commands::coverage(args),
        Command::Calibrate(args) => commands::calibrate(args),
        Command::Combine(args) => commands::combine(args),
        Command::Serve(args) => commands::serve(args),
        Command::TrainSasa(args) => commands::train_sasa(args),
        Command::Events(args) => commands::events(args),
        Command::Moods(args) => commands::moods(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(message)) => {
            eprintln!("internal error: {message}");
            ExitCode::from(2)
        }
    }
}
