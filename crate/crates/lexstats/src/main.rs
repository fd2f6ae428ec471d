//! Command-line front end. Every subcommand is a thin adapter over the
//! library: parse flags, call one module, format rows. Exit codes: 0 ok,
//! 1 data/processing error, 2 usage error (from the parser).

use std::collections::BTreeSet;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use lexstats::association::{
    self, CountUnit, Direction, JointCounts, WindowConfig, DEFAULT_MIN_FREQ,
};
use lexstats::classifier::{self, ScoreMode};
use lexstats::corpus::{ingest, parse_unit, term_frequency, Corpus, TokenizerConfig};
use lexstats::disambiguator::{self, GraphConfig};
use lexstats::dispersion::{self, DispersionConfig};
use lexstats::freq;
use lexstats::neology::{self, NeologyConfig};
use lexstats::output::fmt6;
use lexstats::similarity::{self, Measure};

#[derive(Parser)]
#[command(name = "lexstats", version, about = "Corpus statistics toolkit")]
struct Cli {
    /// Corpus root directory (manifest paths are relative to it)
    #[arg(long, global = true, default_value = ".")]
    root: PathBuf,
    /// Manifest TSV: path<TAB>partition[<TAB>class]
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    /// Keep original letter case
    #[arg(long, global = true)]
    no_lowercase: bool,
    /// Emit punctuation characters as tokens instead of dropping them
    #[arg(long, global = true)]
    keep_punctuation: bool,
    /// Drop purely numeric tokens
    #[arg(long, global = true)]
    drop_numbers: bool,
    /// Write results here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Seed for any randomized step (fold assignment)
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads for corpus processing (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Dice,
    Jaccard,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Measure {
        match m {
            MeasureArg::Dice => Measure::Dice,
            MeasureArg::Jaccard => Measure::Jaccard,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Raw,
    Normalized,
    DocWeighted,
}

impl From<ModeArg> for ScoreMode {
    fn from(m: ModeArg) -> ScoreMode {
        match m {
            ModeArg::Raw => ScoreMode::Raw,
            ModeArg::Normalized => ScoreMode::Normalized,
            ModeArg::DocWeighted => ScoreMode::DocWeighted,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitArg {
    Window,
    Sentence,
    Document,
}

#[derive(Subcommand)]
enum Command {
    /// Ingest the corpus and report its shape
    Ingest,
    /// Frequency and probability of one unit
    Freq(FreqArgs),
    /// Rank-frequency profile, Zipf constants and the Mandelbrot fit
    Zipf(ZipfArgs),
    /// Association scores of a target's cooccurring neighbors
    Assoc(AssocArgs),
    /// Positional cooccurrence histogram of a target/neighbor pair
    Histogram(HistogramArgs),
    /// Dispersion scores and distribution curves over partitions
    Disperse(DisperseArgs),
    /// Similarity tools
    #[command(subcommand)]
    Sim(SimCommand),
    /// Train per-class bigram models from the manifest's class column
    Train(TrainArgs),
    /// Classify documents against a trained model file
    Classify(ClassifyArgs),
    /// Cross-validated accuracy report
    Evaluate(EvaluateArgs),
    /// Induce senses of an ambiguous form from its cooccurrence graph
    Disambiguate(DisambiguateArgs),
    /// Rank units by closeness to the ideal neologism curve
    Neo(NeoArgs),
}

#[derive(Args)]
struct FreqArgs {
    /// Term or space-separated n-gram
    #[arg(long)]
    term: String,
}

#[derive(Args)]
struct ZipfArgs {
    #[arg(long, default_value_t = 1)]
    min_rank: usize,
    #[arg(long, default_value_t = usize::MAX)]
    max_rank: usize,
    /// Fit the Mandelbrot law over the rank range and emit JSON
    #[arg(long)]
    fit: bool,
    /// Report the log-log Pearson correlation over the rank range
    #[arg(long)]
    correlation: bool,
}

#[derive(Args)]
struct AssocArgs {
    #[arg(long)]
    target: String,
    #[arg(long, default_value_t = 10)]
    width: usize,
    /// Observation unit for the probability denominators
    #[arg(long, value_enum, default_value_t = UnitArg::Window)]
    unit: UnitArg,
    /// Sort by: mi | cond
    #[arg(long, default_value = "mi")]
    sort_by: String,
    #[arg(long, default_value_t = DEFAULT_MIN_FREQ)]
    min_freq: u64,
    #[arg(long, default_value_t = 50)]
    top: usize,
}

#[derive(Args)]
struct HistogramArgs {
    #[arg(long)]
    target: String,
    #[arg(long)]
    neighbor: String,
    #[arg(long, default_value_t = 10)]
    width: usize,
}

#[derive(Args)]
struct DisperseArgs {
    /// Units to score, comma-separated (multiword units use spaces)
    #[arg(long, value_delimiter = ',')]
    units: Vec<String>,
    /// File with one unit per line (alternative to --units)
    #[arg(long)]
    units_file: Option<PathBuf>,
    /// Low-frequency threshold k for Cr
    #[arg(long, default_value_t = 1)]
    k: u64,
    /// Use absolute peak counts instead of scaled relative frequency
    #[arg(long)]
    absolute_max: bool,
    /// Emit the distribution curve of this single unit as CSV
    #[arg(long)]
    curve: Option<String>,
}

#[derive(Subcommand)]
enum SimCommand {
    /// Character-n-gram similarity of two unit strings
    Pair(SimPairArgs),
    /// Build a binary cooccurrence matrix (TSV to --out or stdout)
    Matrix(SimMatrixArgs),
    /// Nearest neighbors of a row in a stored matrix
    Knn(SimKnnArgs),
    /// Rank lexicon entries by string similarity to a query
    Strings(SimStringsArgs),
}

#[derive(Args)]
struct SimPairArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    #[arg(long, default_value_t = 3)]
    n: usize,
}

#[derive(Args)]
struct SimMatrixArgs {
    /// File of row units, one per line; omit for doc-by-term mode
    #[arg(long)]
    rows: Option<PathBuf>,
    /// File of column units, one per line
    #[arg(long)]
    cols: PathBuf,
    #[arg(long, default_value_t = 10)]
    width: usize,
}

#[derive(Args)]
struct SimKnnArgs {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    query: String,
    #[arg(long, value_enum, default_value_t = MeasureArg::Dice)]
    measure: MeasureArg,
    #[arg(long, default_value_t = 10)]
    top: usize,
}

#[derive(Args)]
struct SimStringsArgs {
    /// Lexicon file, one term per line
    #[arg(long)]
    lexicon: PathBuf,
    #[arg(long)]
    query: String,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, value_enum, default_value_t = MeasureArg::Dice)]
    measure: MeasureArg,
    #[arg(long, default_value_t = 10)]
    top: usize,
}

#[derive(Args)]
struct TrainArgs {
    /// Model file to write (JSON)
    #[arg(long)]
    model: PathBuf,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    model: PathBuf,
    #[arg(long, value_enum, default_value_t = ModeArg::Raw)]
    mode: ModeArg,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(long, default_value_t = 5)]
    folds: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Raw)]
    mode: ModeArg,
}

#[derive(Args)]
struct DisambiguateArgs {
    #[arg(long)]
    form: String,
    #[arg(long, default_value_t = 10)]
    width: usize,
    #[arg(long, default_value_t = 2)]
    min_node_freq: u64,
    #[arg(long, default_value_t = 2)]
    min_edge_weight: u64,
    #[arg(long, default_value_t = 0.01)]
    stop_ratio: f64,
    /// Write the graph as JSON here
    #[arg(long)]
    graph_out: Option<PathBuf>,
    /// Write per-context assignments as TSV here
    #[arg(long)]
    assignments_out: Option<PathBuf>,
}

#[derive(Args)]
struct NeoArgs {
    #[arg(long, default_value_t = 10.0)]
    k: f64,
    #[arg(long, default_value_t = 1)]
    max_ngram: usize,
    #[arg(long, default_value_t = 10)]
    min_freq: u64,
    /// Exclusion list file, one unit per line
    #[arg(long)]
    exclude: Option<PathBuf>,
    #[arg(long, default_value_t = 100)]
    top: usize,
    /// Compare raw relative frequencies instead of unit-sum shapes
    #[arg(long)]
    raw_distance: bool,
    /// Also write each reported unit's curve as CSV into this directory
    #[arg(long)]
    curves_dir: Option<PathBuf>,
}

/// A result table: header plus stringly-typed rows, rendered as TSV, CSV or
/// a JSON envelope.
struct Table {
    command: String,
    params: Vec<(String, String)>,
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(command: &str, header: Vec<&'static str>) -> Self {
        Table {
            command: command.to_string(),
            params: Vec::new(),
            header,
            rows: Vec::new(),
        }
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.push((key.to_string(), value.to_string()));
        self
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn render(&self, format: Format, w: &mut dyn Write) -> anyhow::Result<()> {
        match format {
            Format::Tsv => {
                writeln!(w, "{}", self.header.join("\t"))?;
                for row in &self.rows {
                    writeln!(w, "{}", row.join("\t"))?;
                }
            }
            Format::Csv => {
                writeln!(w, "{}", self.header.join(","))?;
                for row in &self.rows {
                    writeln!(w, "{}", row.join(","))?;
                }
            }
            Format::Json => {
                let results: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        self.header
                            .iter()
                            .zip(row)
                            .map(|(h, v)| ((*h).to_string(), serde_json::Value::String(v.clone())))
                            .collect::<serde_json::Map<_, _>>()
                            .into()
                    })
                    .collect();
                let params: serde_json::Map<String, serde_json::Value> = self
                    .params
                    .iter()
                    .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
                    .collect();
                let envelope = serde_json::json!({
                    "command": self.command,
                    "params": params,
                    "results": results,
                });
                writeln!(w, "{}", serde_json::to_string_pretty(&envelope)?)?;
            }
        }
        Ok(())
    }
}

fn tokenizer_config(cli: &Cli) -> TokenizerConfig {
    TokenizerConfig {
        lowercase: !cli.no_lowercase,
        strip_punctuation: !cli.keep_punctuation,
        keep_numbers: !cli.drop_numbers,
        ..TokenizerConfig::default()
    }
}

fn load_corpus(cli: &Cli) -> anyhow::Result<Corpus> {
    let manifest = cli
        .manifest
        .clone()
        .ok_or_else(|| anyhow::anyhow!("--manifest is required for this subcommand"))?;
    Ok(ingest(&cli.root, &manifest, &tokenizer_config(cli))?)
}

fn read_unit_list(path: &PathBuf) -> anyhow::Result<Vec<Vec<String>>> {
    Ok(fs::read_to_string(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(parse_unit)
        .collect())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        // ignore failure if a pool already exists (tests call run twice)
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(fs::File::create(path)?),
        None => Box::new(std::io::stdout().lock()),
    };
    let table = build_table(cli, &mut sink)?;
    if let Some(table) = table {
        table.render(cli.format, &mut sink)?;
    }
    Ok(())
}

fn build_table(cli: &Cli, sink: &mut Box<dyn Write>) -> anyhow::Result<Option<Table>> {
    match &cli.command {
        Command::Ingest => {
            let corpus = load_corpus(cli)?;
            let mut t = Table::new("ingest", vec!["documents", "tokens", "vocabulary", "partitions"]);
            t.push(vec![
                corpus.documents.len().to_string(),
                corpus.total_tokens.to_string(),
                corpus.vocab_size().to_string(),
                corpus.partitions.join(","),
            ]);
            Ok(Some(t))
        }
        Command::Freq(args) => {
            let corpus = load_corpus(cli)?;
            let unit = parse_unit(&args.term);
            let count = term_frequency(&corpus, &unit);
            let prob = if unit.len() == 1 {
                freq::unigram_probability(&corpus, &unit[0])?
            } else {
                let table = association::count_ngrams(&corpus, unit.len());
                table.probability(&args.term)
            };
            let mut t =
                Table::new("freq", vec!["unit", "count", "probability"]).param("term", &args.term);
            t.push(vec![args.term.clone(), count.to_string(), fmt6(prob)]);
            Ok(Some(t))
        }
        Command::Zipf(args) => {
            let corpus = load_corpus(cli)?;
            let profile = freq::rank_profile(&corpus)?;
            let max_rank = args.max_rank.min(profile.entries.len());
            let range = args.min_rank..=max_rank;
            if args.fit {
                let fit = freq::fit_mandelbrot(&profile, range)?;
                writeln!(sink, "{}", serde_json::to_string_pretty(&fit)?)?;
                return Ok(None);
            }
            if args.correlation {
                let r = freq::log_log_correlation(&profile, range)?;
                let mut t = Table::new("zipf", vec!["min_rank", "max_rank", "correlation"]);
                t.push(vec![
                    args.min_rank.to_string(),
                    max_rank.to_string(),
                    fmt6(r),
                ]);
                return Ok(Some(t));
            }
            let constants = freq::zipf_constants(&profile);
            let mut t = Table::new("zipf", vec!["rank", "term", "freq", "c"]);
            for (entry, (_, c)) in profile.entries.iter().zip(&constants) {
                if range.contains(&entry.rank) {
                    t.push(vec![
                        entry.rank.to_string(),
                        entry.term.clone(),
                        entry.freq.to_string(),
                        fmt6(*c),
                    ]);
                }
            }
            Ok(Some(t))
        }
        Command::Assoc(args) => {
            let corpus = load_corpus(cli)?;
            let cfg = WindowConfig {
                width: args.width,
                count_unit: CountUnit::Tokens,
            };
            let window_counts = association::windowed_cooccurrence(&corpus, &args.target, &cfg);
            let mut rows: Vec<(String, JointCounts, f64, f64, f64)> = Vec::new();
            for (neighbor, wcounts) in &window_counts {
                let counts = match args.unit {
                    UnitArg::Window => *wcounts,
                    UnitArg::Document => association::unit_cooccurrence(
                        &corpus,
                        &args.target,
                        neighbor,
                        CountUnit::Documents,
                    ),
                    UnitArg::Sentence => association::unit_cooccurrence(
                        &corpus,
                        &args.target,
                        neighbor,
                        CountUnit::Sentences,
                    ),
                };
                let mi = match association::mutual_information(&counts, args.min_freq) {
                    Ok(v) => v,
                    Err(_) => continue,
                };
                let p_ij =
                    association::conditional_probability(&counts, Direction::FirstGivenSecond)?;
                let p_ji =
                    association::conditional_probability(&counts, Direction::SecondGivenFirst)?;
                rows.push((neighbor.clone(), counts, mi, p_ij, p_ji));
            }
            let sort_key = |r: &(String, JointCounts, f64, f64, f64)| match args.sort_by.as_str() {
                "cond" => r.3,
                _ => r.2,
            };
            rows.sort_by(|a, b| {
                sort_key(b)
                    .partial_cmp(&sort_key(a))
                    .unwrap()
                    .then(a.0.cmp(&b.0))
            });
            rows.truncate(args.top);
            let mut t = Table::new(
                "assoc",
                vec!["term_i", "term_j", "n_ii", "n_i", "n_j", "mi", "p_i_given_j", "p_j_given_i"],
            )
            .param("target", &args.target)
            .param("unit", format!("{:?}", args.unit as usize));
            for (neighbor, counts, mi, p_ij, p_ji) in rows {
                t.push(vec![
                    args.target.clone(),
                    neighbor,
                    counts.joint.to_string(),
                    counts.left.to_string(),
                    counts.right.to_string(),
                    fmt6(mi),
                    fmt6(p_ij),
                    fmt6(p_ji),
                ]);
            }
            Ok(Some(t))
        }
        Command::Histogram(args) => {
            let corpus = load_corpus(cli)?;
            let cfg = WindowConfig {
                width: args.width,
                count_unit: CountUnit::Tokens,
            };
            let hist =
                association::positional_histogram(&corpus, &args.target, &args.neighbor, &cfg);
            let mut t = Table::new("histogram", vec!["offset", "count"])
                .param("target", &args.target)
                .param("neighbor", &args.neighbor);
            let w = args.width as i64;
            for offset in -w..=w {
                if offset == 0 {
                    continue;
                }
                let count = hist.offsets.get(&offset).copied().unwrap_or(0);
                t.push(vec![offset.to_string(), count.to_string()]);
            }
            Ok(Some(t))
        }
        Command::Disperse(args) => {
            let corpus = load_corpus(cli)?;
            let cfg = DispersionConfig {
                low_freq_threshold: args.k,
                absolute_max: args.absolute_max,
                ..Default::default()
            };
            if let Some(unit) = &args.curve {
                let ts = dispersion::distribution_curve(&corpus, &parse_unit(unit))?;
                let mut t =
                    Table::new("disperse", vec!["partition", "rel_freq"]).param("unit", unit);
                for (label, v) in &ts.points {
                    t.push(vec![label.clone(), fmt6(*v)]);
                }
                return Ok(Some(t));
            }
            let mut units: Vec<Vec<String>> =
                args.units.iter().map(|u| parse_unit(u)).collect();
            if let Some(path) = &args.units_file {
                units.extend(read_unit_list(path)?);
            }
            if units.is_empty() {
                anyhow::bail!("no units given: use --units or --units-file");
            }
            let ranked = dispersion::rank_by_regularity(&corpus, &units, &cfg)?;
            let mut t = Table::new("disperse", vec!["unit", "d", "max_rel_freq", "cr"])
                .param("k", args.k);
            for (unit, score) in ranked {
                t.push(vec![
                    unit,
                    fmt6(score.d),
                    fmt6(score.max_freq),
                    score.irregular_partitions.to_string(),
                ]);
            }
            Ok(Some(t))
        }
        Command::Sim(sim) => run_sim(cli, sim),
        Command::Train(args) => {
            let corpus = load_corpus(cli)?;
            let models = classifier::train(&corpus.documents)?;
            let file = fs::File::create(&args.model)?;
            classifier::save_models(&models, file)?;
            let mut t = Table::new("train", vec!["class", "bigram_types", "bigram_tokens"]);
            for m in &models {
                t.push(vec![
                    m.label.clone(),
                    m.bigram_freqs.len().to_string(),
                    m.total_bigrams.to_string(),
                ]);
            }
            Ok(Some(t))
        }
        Command::Classify(args) => {
            let corpus = load_corpus(cli)?;
            let models = classifier::load_models(fs::File::open(&args.model)?)?;
            let mut t = Table::new("classify", vec!["doc_id", "predicted", "margin", "scores"]);
            for doc in &corpus.documents {
                let r = classifier::classify(&doc.tokens, &models, args.mode.into())?;
                let scores = r
                    .scores
                    .iter()
                    .map(|(l, s)| format!("{l}={}", fmt6(*s)))
                    .collect::<Vec<_>>()
                    .join(",");
                t.push(vec![
                    doc.id.clone(),
                    r.predicted.unwrap_or_else(|| "(abstain)".to_string()),
                    fmt6(r.margin),
                    scores,
                ]);
            }
            Ok(Some(t))
        }
        Command::Evaluate(args) => {
            let corpus = load_corpus(cli)?;
            let report = classifier::evaluate(&corpus, args.folds, args.mode.into(), cli.seed)?;
            writeln!(sink, "{}", serde_json::to_string_pretty(&report)?)?;
            Ok(None)
        }
        Command::Disambiguate(args) => {
            let corpus = load_corpus(cli)?;
            let cfg = GraphConfig {
                min_node_freq: args.min_node_freq,
                min_edge_weight: args.min_edge_weight,
                stop_ratio: args.stop_ratio,
                ..Default::default()
            };
            let result = disambiguator::induce_senses(&corpus, &args.form, args.width, &cfg)?;
            if let Some(path) = &args.graph_out {
                let nodes: Vec<serde_json::Value> = result
                    .graph
                    .nodes
                    .iter()
                    .map(|(term, freq)| serde_json::json!({"term": term, "freq": freq}))
                    .collect();
                let edges: Vec<serde_json::Value> = result
                    .graph
                    .edges
                    .iter()
                    .map(|((a, b), w)| serde_json::json!([a, b, w]))
                    .collect();
                let graph = serde_json::json!({
                    "root": result.graph.root,
                    "nodes": nodes,
                    "edges": edges,
                });
                fs::write(path, serde_json::to_string_pretty(&graph)?)?;
            }
            if let Some(path) = &args.assignments_out {
                let mut out = String::from("doc_id\toffset\tcluster\n");
                for (ctx, assigned) in result.contexts.contexts.iter().zip(&result.assignments) {
                    let cluster = assigned
                        .map(|id| id.to_string())
                        .unwrap_or_else(|| "unassigned".to_string());
                    out.push_str(&format!("{}\t{}\t{}\n", ctx.doc_id, ctx.offset, cluster));
                }
                fs::write(path, out)?;
            }
            let mut t = Table::new("disambiguate", vec!["cluster", "label", "term"])
                .param("form", &args.form);
            for cluster in &result.clusters {
                for member in &cluster.members {
                    t.push(vec![
                        cluster.id.to_string(),
                        cluster.label.clone(),
                        member.clone(),
                    ]);
                }
            }
            Ok(Some(t))
        }
        Command::Neo(args) => {
            let corpus = load_corpus(cli)?;
            let exclusion_list: BTreeSet<String> = match &args.exclude {
                Some(path) => fs::read_to_string(path)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .map(str::to_string)
                    .collect(),
                None => BTreeSet::new(),
            };
            let cfg = NeologyConfig {
                exponent: args.k,
                max_ngram: args.max_ngram,
                exclusion_list,
                min_total_freq: args.min_freq,
                normalize: !args.raw_distance,
            };
            let ranked = neology::rank_candidates(&corpus, &cfg)?;
            if let Some(dir) = &args.curves_dir {
                fs::create_dir_all(dir)?;
                for cand in ranked.iter().take(args.top) {
                    let mut csv = String::from("partition,rel_freq\n");
                    for (label, v) in corpus.partitions.iter().zip(&cand.curve) {
                        csv.push_str(&format!("{label},{}\n", fmt6(*v)));
                    }
                    let name = cand.unit.replace(' ', "_");
                    fs::write(dir.join(format!("{name}.csv")), csv)?;
                }
            }
            let mut t = Table::new("neo", vec!["rank", "unit", "distance", "total_freq"])
                .param("k", args.k)
                .param("max_ngram", args.max_ngram);
            for (i, cand) in ranked.iter().take(args.top).enumerate() {
                t.push(vec![
                    (i + 1).to_string(),
                    cand.unit.clone(),
                    fmt6(cand.distance),
                    cand.total_freq.to_string(),
                ]);
            }
            Ok(Some(t))
        }
    }
}

fn run_sim(cli: &Cli, sim: &SimCommand) -> anyhow::Result<Option<Table>> {
    match sim {
        SimCommand::Pair(args) => {
            let dice = similarity::char_ngram_similarity(&args.a, &args.b, args.n, Measure::Dice)?;
            let jac =
                similarity::char_ngram_similarity(&args.a, &args.b, args.n, Measure::Jaccard)?;
            let mut t = Table::new("sim pair", vec!["a", "b", "dice", "jaccard"])
                .param("n", args.n);
            t.push(vec![args.a.clone(), args.b.clone(), fmt6(dice), fmt6(jac)]);
            Ok(Some(t))
        }
        SimCommand::Matrix(args) => {
            let corpus = load_corpus(cli)?;
            let cols = read_unit_list(&args.cols)?;
            let matrix = match &args.rows {
                Some(rows_path) => {
                    let rows = read_unit_list(rows_path)?;
                    let cfg = WindowConfig {
                        width: args.width,
                        count_unit: CountUnit::Tokens,
                    };
                    similarity::build_matrix(&corpus, &rows, &cols, &cfg)
                }
                None => similarity::build_doc_term_matrix(&corpus, &cols),
            };
            let mut sink: Box<dyn Write> = match &cli.out {
                Some(path) => Box::new(fs::File::create(path)?),
                None => Box::new(std::io::stdout().lock()),
            };
            matrix.write_tsv(&mut sink)?;
            Ok(None)
        }
        SimCommand::Knn(args) => {
            let file = fs::File::open(&args.matrix)?;
            let matrix = similarity::BinaryMatrix::read_tsv(std::io::BufReader::new(file))?;
            let ranked = similarity::nearest_neighbors(
                &matrix,
                &args.query,
                args.measure.into(),
                args.top,
            )?;
            let mut t = Table::new("sim knn", vec!["row", "score"]).param("query", &args.query);
            for (row, score) in ranked {
                t.push(vec![row, fmt6(score)]);
            }
            Ok(Some(t))
        }
        SimCommand::Strings(args) => {
            let lexicon: Vec<String> = fs::read_to_string(&args.lexicon)?
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .map(str::to_string)
                .collect();
            let ranked = similarity::rank_string_variants(
                &lexicon,
                &args.query,
                args.n,
                args.measure.into(),
                args.top,
            )?;
            let mut t =
                Table::new("sim strings", vec!["term", "score"]).param("query", &args.query);
            for (term, score) in ranked {
                t.push(vec![term, fmt6(score)]);
            }
            Ok(Some(t))
        }
    }
}
