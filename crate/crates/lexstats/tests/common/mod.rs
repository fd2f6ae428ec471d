//! Shared generators and independent brute-force oracles for the
//! integration and acceptance suites. Oracles deliberately use naive
//! quadratic scans and explicit arithmetic so they share no code path with
//! the implementations they check.
#![allow(dead_code)] // each test binary uses its own subset

use std::collections::{BTreeMap, BTreeSet};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use lexstats::corpus::{Corpus, Document};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random small corpus over a closed vocabulary.
pub fn random_corpus(rng: &mut ChaCha8Rng, max_docs: usize, max_len: usize, vocab: usize) -> Corpus {
    let n_docs = rng.gen_range(1..=max_docs);
    let docs = (0..n_docs)
        .map(|i| {
            let len = rng.gen_range(1..=max_len);
            let tokens: Vec<String> = (0..len)
                .map(|_| format!("w{}", rng.gen_range(0..vocab)))
                .collect();
            Document::new(format!("d{i}"), tokens)
        })
        .collect();
    Corpus::from_documents(docs).unwrap()
}

// ---------------------------------------------------------------- oracles

/// Sliding-window n-gram counts by explicit index loops.
pub fn oracle_ngram_counts(corpus: &Corpus, n: usize) -> (BTreeMap<String, u64>, u64) {
    let mut counts = BTreeMap::new();
    let mut total = 0u64;
    for doc in &corpus.documents {
        if doc.tokens.len() < n {
            continue;
        }
        for start in 0..=(doc.tokens.len() - n) {
            let mut gram = String::new();
            for k in 0..n {
                if k > 0 {
                    gram.push(' ');
                }
                gram.push_str(&doc.tokens[start + k]);
            }
            *counts.entry(gram).or_insert(0) += 1;
            total += 1;
        }
    }
    (counts, total)
}

/// Quadratic pair scan: joint counts of every neighbor within +/-width of
/// each target occurrence.
pub fn oracle_windowed_joints(
    corpus: &Corpus,
    target: &str,
    width: usize,
) -> BTreeMap<String, u64> {
    let mut joints = BTreeMap::new();
    for doc in &corpus.documents {
        for i in 0..doc.tokens.len() {
            if doc.tokens[i] != target {
                continue;
            }
            for j in 0..doc.tokens.len() {
                if i == j {
                    continue;
                }
                let dist = i.abs_diff(j);
                if dist <= width {
                    *joints.entry(doc.tokens[j].clone()).or_insert(0) += 1;
                }
            }
        }
    }
    joints
}

/// Quadratic signed-offset scan for one target/neighbor pair.
pub fn oracle_histogram(
    corpus: &Corpus,
    target: &str,
    neighbor: &str,
    width: usize,
) -> BTreeMap<i64, u64> {
    let mut offsets = BTreeMap::new();
    for doc in &corpus.documents {
        for i in 0..doc.tokens.len() {
            if doc.tokens[i] != target {
                continue;
            }
            for j in 0..doc.tokens.len() {
                if i == j || doc.tokens[j] != neighbor {
                    continue;
                }
                let offset = j as i64 - i as i64;
                if offset >= -(width as i64) && offset <= width as i64 {
                    *offsets.entry(offset).or_insert(0) += 1;
                }
            }
        }
    }
    offsets
}

/// Set-op free Dice: explicit membership loops.
pub fn oracle_dice(x: &BTreeSet<String>, y: &BTreeSet<String>) -> f64 {
    let mut shared = 0usize;
    for item in x {
        if y.contains(item) {
            shared += 1;
        }
    }
    2.0 * shared as f64 / (x.len() + y.len()) as f64
}

pub fn oracle_jaccard(x: &BTreeSet<String>, y: &BTreeSet<String>) -> f64 {
    let mut shared = 0usize;
    for item in x {
        if y.contains(item) {
            shared += 1;
        }
    }
    let union = x.len() + y.len() - shared;
    shared as f64 / union as f64
}

/// Dispersion D by direct per-partition scanning.
pub fn oracle_dispersion(corpus: &Corpus, unit: &str, k: u64, scale: f64) -> f64 {
    let mut max_rel = 0.0f64;
    let mut cr = 0usize;
    for partition in &corpus.partitions {
        let mut count = 0u64;
        let mut tokens = 0u64;
        for doc in &corpus.documents {
            if doc.partition.as_deref() != Some(partition.as_str()) {
                continue;
            }
            tokens += doc.tokens.len() as u64;
            for t in &doc.tokens {
                if t == unit {
                    count += 1;
                }
            }
        }
        if tokens > 0 {
            let rel = count as f64 / tokens as f64 * scale;
            if rel > max_rel {
                max_rel = rel;
            }
        }
        if count < k {
            cr += 1;
        }
    }
    max_rel * cr as f64
}

/// Euclidean distance of unit-sum-normalized curves, written out longhand.
pub fn oracle_curve_distance(series: &[f64], curve: &[f64]) -> f64 {
    let s_sum: f64 = series.iter().sum();
    let c_sum: f64 = curve.iter().sum();
    let mut acc = 0.0;
    for i in 0..series.len() {
        let a = series[i] / s_sum;
        let b = curve[i] / c_sum;
        acc += (a - b) * (a - b);
    }
    acc.sqrt()
}

// ------------------------------------------------------------- generators

/// Deterministic book-sized sample from a heavy-tailed rank distribution.
/// Stands in for a public-domain novel when none is on disk.
pub fn synthetic_book(seed: u64, tokens: usize) -> Corpus {
    let vocab = 15_000usize;
    let weights: Vec<f64> = (1..=vocab)
        .map(|r| (r as f64 + 2.7).powf(-1.12))
        .collect();
    let mut cumulative = Vec::with_capacity(vocab);
    let mut acc = 0.0;
    for w in &weights {
        acc += w;
        cumulative.push(acc);
    }
    let total = acc;
    let mut rng = rng(seed);
    let tokens: Vec<String> = (0..tokens)
        .map(|_| {
            let u: f64 = rng.gen::<f64>() * total;
            let idx = cumulative.partition_point(|&c| c < u);
            format!("w{}", idx.min(vocab - 1))
        })
        .collect();
    Corpus::from_documents(vec![Document::new("book", tokens)]).unwrap()
}

/// Two synthetic authors sharing a vocabulary but preferring different
/// bigram chains; each token follows the author's chain with probability
/// `chain_prob`, otherwise it is uniform noise.
pub struct TwoAuthorCorpus {
    pub train: Vec<Document>,
    pub held_out: Vec<Document>,
}

pub fn two_author_corpus(
    seed: u64,
    train_per_class: usize,
    held_out_per_class: usize,
    doc_len: usize,
    chain_prob: f64,
) -> TwoAuthorCorpus {
    let vocab = 100usize;
    let next_word = |author: usize, current: usize| -> usize {
        match author {
            0 => (current * 7 + 13) % vocab,
            _ => (current * 31 + 5) % vocab,
        }
    };
    let mut rng = rng(seed);
    let mut make_doc = |author: usize, id: String| -> Document {
        let mut tokens = Vec::with_capacity(doc_len);
        let mut current = rng.gen_range(0..vocab);
        tokens.push(format!("v{current}"));
        for _ in 1..doc_len {
            current = if rng.gen::<f64>() < chain_prob {
                next_word(author, current)
            } else {
                rng.gen_range(0..vocab)
            };
            tokens.push(format!("v{current}"));
        }
        Document::new(id, tokens).with_class(if author == 0 { "A" } else { "B" })
    };
    let mut train = Vec::new();
    let mut held_out = Vec::new();
    for author in 0..2 {
        for i in 0..train_per_class {
            train.push(make_doc(author, format!("train_{author}_{i}")));
        }
        for i in 0..held_out_per_class {
            held_out.push(make_doc(author, format!("test_{author}_{i}")));
        }
    }
    TwoAuthorCorpus { train, held_out }
}

/// Fully separable pair of authors: disjoint vocabularies, so every bigram
/// identifies its writer.
pub fn separable_two_author_corpus(
    seed: u64,
    train_per_class: usize,
    held_out_per_class: usize,
    doc_len: usize,
) -> TwoAuthorCorpus {
    let mut rng = rng(seed);
    let mut make_doc = |author: usize, id: String| -> Document {
        let prefix = if author == 0 { "a" } else { "b" };
        let tokens: Vec<String> = (0..doc_len)
            .map(|_| format!("{prefix}{}", rng.gen_range(0..50)))
            .collect();
        Document::new(id, tokens).with_class(if author == 0 { "A" } else { "B" })
    };
    let mut train = Vec::new();
    let mut held_out = Vec::new();
    for author in 0..2 {
        for i in 0..train_per_class {
            train.push(make_doc(author, format!("train_{author}_{i}")));
        }
        for i in 0..held_out_per_class {
            held_out.push(make_doc(author, format!("test_{author}_{i}")));
        }
    }
    TwoAuthorCorpus { train, held_out }
}

/// Generated two-sense corpus around an ambiguous target form, with the
/// generation label of every context.
pub struct TwoSenseCorpus {
    pub corpus: Corpus,
    /// per document: 0 or 1, in document order (one context per doc)
    pub labels: Vec<usize>,
    pub target: String,
}

pub const SENSE_VOCABS: [&[&str]; 2] = [
    &["cromosoma", "mamifero", "rata", "genoma", "laboratorio", "bacteria"],
    &["usuario", "pantalla", "teclado", "clic"],
];

pub fn two_sense_corpus(seed: u64, contexts_per_sense: usize) -> TwoSenseCorpus {
    let mut rng = rng(seed);
    let mut docs = Vec::new();
    let mut labels = Vec::new();
    for (sense, vocab) in SENSE_VOCABS.iter().enumerate() {
        for i in 0..contexts_per_sense {
            let mut tokens: Vec<String> = Vec::new();
            let n_left = rng.gen_range(2..=4);
            let n_right = rng.gen_range(2..=4);
            for _ in 0..n_left {
                tokens.push(vocab[rng.gen_range(0..vocab.len())].to_string());
            }
            tokens.push("raton".to_string());
            for _ in 0..n_right {
                tokens.push(vocab[rng.gen_range(0..vocab.len())].to_string());
            }
            docs.push(Document::new(format!("s{sense}_{i}"), tokens));
            labels.push(sense);
        }
    }
    TwoSenseCorpus {
        corpus: Corpus::from_documents(docs).unwrap(),
        labels,
        target: "raton".to_string(),
    }
}

/// Diachronic corpus with planted exponential-growth units among flat or
/// fluctuating decoys, all partitions padded to the same token total.
pub struct NeologyCorpus {
    pub corpus: Corpus,
    pub planted: Vec<String>,
}

pub fn neology_corpus(seed: u64, partitions: usize, decoys: usize, planted: usize) -> NeologyCorpus {
    let mut rng = rng(seed);
    let m = partitions as f64;
    let planted_names: Vec<String> = (0..planted).map(|i| format!("neo{i}")).collect();
    let mut docs = Vec::new();
    for x in 1..=partitions {
        let mut tokens: Vec<String> = Vec::new();
        for name in &planted_names {
            let count = (2000.0 * (x as f64 / m).powi(10)).round() as usize;
            for _ in 0..count {
                tokens.push(name.clone());
            }
        }
        for d in 0..decoys {
            // half flat, half fluctuating
            let count = if d % 2 == 0 {
                5
            } else {
                rng.gen_range(1..=10)
            };
            for _ in 0..count {
                tokens.push(format!("decoy{d}"));
            }
        }
        let target_len = 2000 * planted + decoys * 10 + 100;
        while tokens.len() < target_len {
            tokens.push("pad".to_string());
        }
        docs.push(
            Document::new(format!("d{x}"), tokens).with_partition(format!("{}", 2000 + x)),
        );
    }
    NeologyCorpus {
        corpus: Corpus::from_documents(docs).unwrap(),
        planted: planted_names,
    }
}
