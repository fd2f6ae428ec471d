use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("missing corpus file: {0}")]
    MissingFile(PathBuf),
    #[error("duplicate document id: {0}")]
    DuplicateDocument(String),
    #[error("document {0} is empty after tokenization")]
    EmptyDocument(String),
    #[error("manifest {path}, line {line}: {msg}")]
    BadManifest {
        path: PathBuf,
        line: usize,
        msg: String,
    },
    #[error("empty corpus")]
    EmptyCorpus,
    #[error("corpus has no partitions")]
    Unpartitioned,
    #[error("need at least {need} partitions, corpus has {have}")]
    TooFewPartitions { need: usize, have: usize },
    #[error("empty token sequence")]
    EmptyTokens,
    #[error("rank range holds {found} usable entries, need at least {need}")]
    TooFewRanks { need: usize, found: usize },
    #[error("counts below minimum frequency {min_freq} (n_i={left}, n_j={right})")]
    LowFrequency { min_freq: u64, left: u64, right: u64 },
    #[error("zero denominator in conditional probability")]
    ZeroDenominator,
    #[error("similarity of two empty vectors is undefined")]
    EmptyVectors,
    #[error("string {0:?} is shorter than n-gram size {1}")]
    StringTooShort(String, usize),
    #[error("unknown matrix row: {0}")]
    UnknownRow(String),
    #[error("need at least 2 classes, got {0}")]
    TooFewClasses(usize),
    #[error("class {label} has {docs} document(s), cannot split into {folds} folds")]
    TooFewClassDocs {
        label: String,
        docs: usize,
        folds: usize,
    },
    #[error("no class models supplied")]
    NoModels,
    #[error("form {0:?} does not occur in the corpus")]
    AbsentForm(String),
    #[error("need at least {need} contexts, got {got}")]
    TooFewContexts { need: usize, got: usize },
    #[error("graph thresholds removed every node ({0})")]
    EmptyGraph(String),
    #[error("ideal curve needs at least 2 partitions, got {0}")]
    CurveTooShort(usize),
    #[error("series length {series} does not match curve length {curve}")]
    LengthMismatch { series: usize, curve: usize },
    #[error("time series is all zero, no curve shape to compare")]
    AllZeroSeries,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported model file version {0}")]
    ModelVersion(u32),
    #[error("bad matrix file: {0}")]
    BadMatrix(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
