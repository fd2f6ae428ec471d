//! Corpus ingestion and tokenization.
//!
//! A corpus is an immutable collection of tokenized documents, optionally
//! partitioned (e.g. by year) and class-labeled (e.g. by author). All other
//! modules read it without mutation.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Tokenizer settings. The same text and config always yield the same tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenizerConfig {
    pub lowercase: bool,
    pub strip_punctuation: bool,
    /// Characters that close a sentence (used for sentence-level counting).
    pub sentence_boundary_chars: BTreeSet<char>,
    pub keep_numbers: bool,
}

impl Default for TokenizerConfig {
    fn default() -> Self {
        TokenizerConfig {
            lowercase: true,
            strip_punctuation: true,
            sentence_boundary_chars: ['.', '!', '?'].into_iter().collect(),
            keep_numbers: true,
        }
    }
}

/// A token is a maximal run of Unicode letters/digits; everything else
/// separates. With `strip_punctuation` off, each punctuation character
/// becomes its own token instead of vanishing.
pub fn tokenize(text: &str, cfg: &TokenizerConfig) -> Vec<String> {
    tokenize_with_sentences(text, cfg).0
}

/// Like [`tokenize`], also returning a sentence index per token.
pub fn tokenize_with_sentences(text: &str, cfg: &TokenizerConfig) -> (Vec<String>, Vec<u32>) {
    let mut tokens = Vec::new();
    let mut sentence_ids = Vec::new();
    let mut current = String::new();
    let mut sentence: u32 = 0;
    let push = |tok: &mut String, tokens: &mut Vec<String>, ids: &mut Vec<u32>, s: u32| {
        if tok.is_empty() {
            return;
        }
        if cfg.keep_numbers || !tok.chars().all(|c| c.is_numeric()) {
            tokens.push(std::mem::take(tok));
            ids.push(s);
        } else {
            tok.clear();
        }
    };
    for ch in text.chars() {
        if ch.is_alphanumeric() {
            if cfg.lowercase {
                current.extend(ch.to_lowercase());
            } else {
                current.push(ch);
            }
        } else {
            push(&mut current, &mut tokens, &mut sentence_ids, sentence);
            if !ch.is_whitespace() && !cfg.strip_punctuation {
                tokens.push(ch.to_string());
                sentence_ids.push(sentence);
            }
            if cfg.sentence_boundary_chars.contains(&ch) {
                sentence += 1;
            }
        }
    }
    push(&mut current, &mut tokens, &mut sentence_ids, sentence);
    (tokens, sentence_ids)
}

/// One tokenized document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub tokens: Vec<String>,
    pub sentence_ids: Vec<u32>,
    pub partition: Option<String>,
    pub class_label: Option<String>,
}

impl Document {
    pub fn new(id: impl Into<String>, tokens: Vec<String>) -> Self {
        let sentence_ids = vec![0; tokens.len()];
        Document {
            id: id.into(),
            tokens,
            sentence_ids,
            partition: None,
            class_label: None,
        }
    }

    pub fn with_partition(mut self, partition: impl Into<String>) -> Self {
        self.partition = Some(partition.into());
        self
    }

    pub fn with_class(mut self, class: impl Into<String>) -> Self {
        self.class_label = Some(class.into());
        self
    }
}

/// Unit -> count map with the total-token denominator for probabilities.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FrequencyTable {
    pub counts: BTreeMap<String, u64>,
    /// Total number of unit tokens observed (the N of f/N).
    pub total: u64,
}

impl FrequencyTable {
    pub fn count(&self, unit: &str) -> u64 {
        self.counts.get(unit).copied().unwrap_or(0)
    }

    pub fn probability(&self, unit: &str) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        self.count(unit) as f64 / self.total as f64
    }

    pub fn vocab_size(&self) -> usize {
        self.counts.len()
    }
}

/// An immutable, tokenized, optionally partitioned corpus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub documents: Vec<Document>,
    pub total_tokens: u64,
    /// Distinct partition labels in manifest (first-seen) order.
    pub partitions: Vec<String>,
    unigrams: FrequencyTable,
}

impl Corpus {
    /// Build a corpus from already-tokenized documents. Rejects empty
    /// documents and duplicate ids.
    pub fn from_documents(documents: Vec<Document>) -> Result<Corpus> {
        let mut seen = BTreeSet::new();
        let mut partitions = Vec::new();
        let mut unigrams = FrequencyTable::default();
        let mut total_tokens = 0u64;
        for doc in &documents {
            if doc.tokens.is_empty() {
                return Err(Error::EmptyDocument(doc.id.clone()));
            }
            if !seen.insert(doc.id.clone()) {
                return Err(Error::DuplicateDocument(doc.id.clone()));
            }
            if let Some(p) = &doc.partition {
                if !partitions.contains(p) {
                    partitions.push(p.clone());
                }
            }
            total_tokens += doc.tokens.len() as u64;
            for tok in &doc.tokens {
                *unigrams.counts.entry(tok.clone()).or_insert(0) += 1;
            }
        }
        unigrams.total = total_tokens;
        Ok(Corpus {
            documents,
            total_tokens,
            partitions,
            unigrams,
        })
    }

    pub fn unigrams(&self) -> &FrequencyTable {
        &self.unigrams
    }

    pub fn vocabulary(&self) -> impl Iterator<Item = &str> {
        self.unigrams.counts.keys().map(|s| s.as_str())
    }

    pub fn vocab_size(&self) -> usize {
        self.unigrams.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.total_tokens == 0
    }

    /// Token totals per partition, aligned with `self.partitions`.
    pub fn partition_token_counts(&self) -> Vec<u64> {
        let mut totals = vec![0u64; self.partitions.len()];
        for doc in &self.documents {
            if let Some(p) = &doc.partition {
                if let Some(i) = self.partitions.iter().position(|q| q == p) {
                    totals[i] += doc.tokens.len() as u64;
                }
            }
        }
        totals
    }
}

#[derive(Debug, Clone)]
struct ManifestRow {
    path: PathBuf,
    partition: String,
    class: Option<String>,
}

fn parse_manifest(manifest: &Path) -> Result<Vec<ManifestRow>> {
    let text = fs::read_to_string(manifest)
        .map_err(|_| Error::MissingFile(manifest.to_path_buf()))?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split('\t');
        let path = fields.next().unwrap_or("");
        let partition = fields.next();
        if path.is_empty() || partition.is_none() {
            return Err(Error::BadManifest {
                path: manifest.to_path_buf(),
                line: lineno + 1,
                msg: "expected `path<TAB>partition[<TAB>class]`".into(),
            });
        }
        rows.push(ManifestRow {
            path: PathBuf::from(path),
            partition: partition.unwrap().to_string(),
            class: fields.next().map(|s| s.to_string()),
        });
    }
    Ok(rows)
}

/// Read every manifest row under `root`, tokenize the files concurrently and
/// assemble a corpus whose partition order follows the manifest.
pub fn ingest(root: &Path, manifest: &Path, cfg: &TokenizerConfig) -> Result<Corpus> {
    let rows = parse_manifest(manifest)?;
    let docs: Vec<Result<Document>> = rows
        .par_iter()
        .map(|row| {
            let full = root.join(&row.path);
            let text =
                fs::read_to_string(&full).map_err(|_| Error::MissingFile(full.clone()))?;
            let (tokens, sentence_ids) = tokenize_with_sentences(&text, cfg);
            Ok(Document {
                id: row.path.to_string_lossy().into_owned(),
                tokens,
                sentence_ids,
                partition: Some(row.partition.clone()),
                class_label: row.class.clone(),
            })
        })
        .collect();
    let docs = docs.into_iter().collect::<Result<Vec<_>>>()?;
    Corpus::from_documents(docs)
}

/// Split a space-separated unit string ("telefono movil") into its tokens.
pub fn parse_unit(unit: &str) -> Vec<String> {
    unit.split_whitespace().map(|s| s.to_string()).collect()
}

/// Occurrence count of a term or n-gram; n-grams never span documents.
pub fn term_frequency(corpus: &Corpus, unit: &[String]) -> u64 {
    if unit.is_empty() {
        return 0;
    }
    if unit.len() == 1 {
        return corpus.unigrams().count(&unit[0]);
    }
    corpus
        .documents
        .iter()
        .map(|doc| count_occurrences(&doc.tokens, unit) as u64)
        .sum()
}

/// Start positions of a token subsequence within one document.
pub fn occurrence_positions(tokens: &[String], unit: &[String]) -> Vec<usize> {
    if unit.is_empty() || tokens.len() < unit.len() {
        return Vec::new();
    }
    (0..=tokens.len() - unit.len())
        .filter(|&i| tokens[i..i + unit.len()] == *unit)
        .collect()
}

fn count_occurrences(tokens: &[String], unit: &[String]) -> usize {
    occurrence_positions(tokens, unit).len()
}
