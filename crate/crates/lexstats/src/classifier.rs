//! Supervised document classification on raw bigram frequencies: each class
//! becomes a bigram frequency vector, a document is scored by summing the
//! class frequencies of the bigrams they share, and the highest sum wins.
//! No preprocessing beyond tokenization.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Document};
use crate::error::{Error, Result};

/// Per-class bigram frequency vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassModel {
    pub label: String,
    pub bigram_freqs: BTreeMap<String, u64>,
    /// Total bigram tokens in the class, the denominator of normalized mode.
    pub total_bigrams: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScoreMode {
    /// Sum of class frequencies over distinct shared bigrams.
    Raw,
    /// Same sum with each class frequency divided by the class total;
    /// counters the size advantage of larger training classes.
    Normalized,
    /// Shared bigrams weighted by their multiplicity in the test document.
    DocWeighted,
}

fn doc_bigram_counts(tokens: &[String]) -> BTreeMap<String, u64> {
    let mut counts = BTreeMap::new();
    for w in tokens.windows(2) {
        *counts.entry(w.join(" ")).or_insert(0) += 1;
    }
    counts
}

/// Pool bigram counts per class over the labeled documents.
pub fn train(docs: &[Document]) -> Result<Vec<ClassModel>> {
    let mut by_class: BTreeMap<String, (BTreeMap<String, u64>, u64)> = BTreeMap::new();
    for doc in docs {
        let label = match &doc.class_label {
            Some(l) => l.clone(),
            None => continue,
        };
        let entry = by_class.entry(label).or_default();
        for w in doc.tokens.windows(2) {
            *entry.0.entry(w.join(" ")).or_insert(0) += 1;
            entry.1 += 1;
        }
    }
    if by_class.len() < 2 {
        return Err(Error::TooFewClasses(by_class.len()));
    }
    Ok(by_class
        .into_iter()
        .map(|(label, (bigram_freqs, total_bigrams))| ClassModel {
            label,
            bigram_freqs,
            total_bigrams,
        })
        .collect())
}

pub fn score(tokens: &[String], model: &ClassModel, mode: ScoreMode) -> f64 {
    let doc_counts = doc_bigram_counts(tokens);
    let mut sum = 0.0;
    for (bigram, &doc_count) in &doc_counts {
        if let Some(&freq) = model.bigram_freqs.get(bigram) {
            let weight = match mode {
                ScoreMode::DocWeighted => doc_count as f64,
                _ => 1.0,
            };
            let value = match mode {
                ScoreMode::Normalized => freq as f64 / model.total_bigrams.max(1) as f64,
                _ => freq as f64,
            };
            sum += weight * value;
        }
    }
    sum
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationResult {
    /// None means abstain: the document shared no bigram with any class.
    pub predicted: Option<String>,
    pub scores: BTreeMap<String, f64>,
    /// Top score minus second score (0 when fewer than 2 classes scored).
    pub margin: f64,
    /// An exact tie was broken lexicographically.
    pub tie: bool,
}

pub fn classify(
    tokens: &[String],
    models: &[ClassModel],
    mode: ScoreMode,
) -> Result<ClassificationResult> {
    if models.is_empty() {
        return Err(Error::NoModels);
    }
    let scores: BTreeMap<String, f64> = models
        .iter()
        .map(|m| (m.label.clone(), score(tokens, m, mode)))
        .collect();
    let mut ordered: Vec<(&String, f64)> = scores.iter().map(|(l, &s)| (l, s)).collect();
    // descending score; lexicographic label on ties (BTreeMap order is
    // already lexicographic, the stable sort preserves it)
    ordered.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    let top = ordered[0];
    let second = ordered.get(1).map(|x| x.1).unwrap_or(0.0);
    let all_zero = top.1 == 0.0;
    Ok(ClassificationResult {
        predicted: if all_zero { None } else { Some(top.0.clone()) },
        margin: top.1 - second,
        tie: !all_zero && ordered.len() > 1 && top.1 == second,
        scores,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub accuracy: f64,
    pub total: u64,
    pub correct: u64,
    pub abstained: u64,
    /// actual label -> predicted label (or "(abstain)") -> count
    pub confusion: BTreeMap<String, BTreeMap<String, u64>>,
}

/// Cross-validated accuracy with deterministic, seeded fold assignment.
pub fn evaluate(corpus: &Corpus, folds: usize, mode: ScoreMode, seed: u64) -> Result<EvalReport> {
    if folds == 0 {
        return Err(Error::InvalidParameter("folds must be >= 1".into()));
    }
    let mut by_class: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, doc) in corpus.documents.iter().enumerate() {
        if let Some(l) = &doc.class_label {
            by_class.entry(l.clone()).or_default().push(i);
        }
    }
    if by_class.len() < 2 {
        return Err(Error::TooFewClasses(by_class.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fold_of = vec![0usize; corpus.documents.len()];
    for (label, indices) in &by_class {
        if folds > 1 && indices.len() < folds.min(2) {
            return Err(Error::TooFewClassDocs {
                label: label.clone(),
                docs: indices.len(),
                folds,
            });
        }
        let mut shuffled = indices.clone();
        shuffled.shuffle(&mut rng);
        for (j, &doc_idx) in shuffled.iter().enumerate() {
            fold_of[doc_idx] = j % folds;
        }
    }
    let mut correct = 0u64;
    let mut total = 0u64;
    let mut abstained = 0u64;
    let mut confusion: BTreeMap<String, BTreeMap<String, u64>> = BTreeMap::new();
    for fold in 0..folds {
        let train_docs: Vec<Document> = corpus
            .documents
            .iter()
            .enumerate()
            .filter(|(i, d)| {
                d.class_label.is_some() && (folds == 1 || fold_of[*i] != fold)
            })
            .map(|(_, d)| d.clone())
            .collect();
        let models = train(&train_docs)?;
        for (i, doc) in corpus.documents.iter().enumerate() {
            let actual = match &doc.class_label {
                Some(l) => l,
                None => continue,
            };
            if fold_of[i] != fold {
                continue;
            }
            let result = classify(&doc.tokens, &models, mode)?;
            total += 1;
            let predicted = result.predicted.as_deref().unwrap_or("(abstain)");
            if result.predicted.is_none() {
                abstained += 1;
            }
            if predicted == actual {
                correct += 1;
            }
            *confusion
                .entry(actual.clone())
                .or_default()
                .entry(predicted.to_string())
                .or_insert(0) += 1;
        }
    }
    Ok(EvalReport {
        accuracy: if total == 0 {
            0.0
        } else {
            correct as f64 / total as f64
        },
        total,
        correct,
        abstained,
        confusion,
    })
}

// versioned on-disk model format; entries sorted by bigram for byte-stable
// output
#[derive(Serialize, Deserialize)]
struct ModelFile {
    version: u32,
    models: Vec<ModelEntry>,
}

#[derive(Serialize, Deserialize)]
struct ModelEntry {
    label: String,
    total_bigrams: u64,
    entries: Vec<(String, u64)>,
}

pub fn save_models<W: Write>(models: &[ClassModel], w: W) -> Result<()> {
    let file = ModelFile {
        version: 1,
        models: models
            .iter()
            .map(|m| ModelEntry {
                label: m.label.clone(),
                total_bigrams: m.total_bigrams,
                entries: m.bigram_freqs.iter().map(|(b, &c)| (b.clone(), c)).collect(),
            })
            .collect(),
    };
    serde_json::to_writer_pretty(w, &file)?;
    Ok(())
}

pub fn load_models<R: Read>(r: R) -> Result<Vec<ClassModel>> {
    let file: ModelFile = serde_json::from_reader(r)?;
    if file.version != 1 {
        return Err(Error::ModelVersion(file.version));
    }
    Ok(file
        .models
        .into_iter()
        .map(|m| ClassModel {
            label: m.label,
            total_bigrams: m.total_bigrams,
            bigram_freqs: m.entries.into_iter().collect(),
        })
        .collect())
}
