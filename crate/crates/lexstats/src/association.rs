//! Cooccurrence counting and association scoring: sequential n-grams,
//! windowed cooccurrence, positional histograms, the independence baseline,
//! mutual information and conditional probability.
//!
//! Scores are meant for ranking candidate pairs, not for hypothesis tests.

use std::collections::BTreeMap;

use crate::corpus::Corpus;
use crate::corpus::FrequencyTable;
use crate::error::{Error, Result};

/// Observation unit for joint-occurrence probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountUnit {
    /// Token positions (pair counting inside a window).
    Tokens,
    Sentences,
    Documents,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WindowConfig {
    /// Tokens per side; 10 means a 20-token window around the target.
    pub width: usize,
    pub count_unit: CountUnit,
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig {
            width: 10,
            count_unit: CountUnit::Tokens,
        }
    }
}

/// Raw counts feeding Eq.-style probabilities: joint, the two marginals and
/// the number of observation units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JointCounts {
    /// n_ii: joint occurrences of the pair.
    pub joint: u64,
    /// n_i: occurrences of the first unit.
    pub left: u64,
    /// n_j: occurrences of the second unit.
    pub right: u64,
    /// n_total: number of observation units.
    pub total: u64,
}

impl JointCounts {
    pub fn swapped(self) -> JointCounts {
        JointCounts {
            joint: self.joint,
            left: self.right,
            right: self.left,
            total: self.total,
        }
    }
}

/// Count all sequential n-grams (1 <= n <= 5) within documents; the table
/// total is the number of n-gram tokens, so table probabilities follow the
/// frequency-over-total rule.
pub fn count_ngrams(corpus: &Corpus, n: usize) -> FrequencyTable {
    let mut table = FrequencyTable::default();
    if n == 0 {
        return table;
    }
    for doc in &corpus.documents {
        if doc.tokens.len() < n {
            continue;
        }
        for window in doc.tokens.windows(n) {
            *table.counts.entry(window.join(" ")).or_insert(0) += 1;
            table.total += 1;
        }
    }
    table
}

/// Pair counting around every target occurrence: each (target occurrence,
/// neighbor occurrence) pair within +/-width in the same document counts
/// once. Marginals are corpus token counts; the total follows the config's
/// observation unit.
pub fn windowed_cooccurrence(
    corpus: &Corpus,
    target: &str,
    cfg: &WindowConfig,
) -> BTreeMap<String, JointCounts> {
    let mut joints: BTreeMap<String, u64> = BTreeMap::new();
    for doc in &corpus.documents {
        for (i, tok) in doc.tokens.iter().enumerate() {
            if tok != target {
                continue;
            }
            let lo = i.saturating_sub(cfg.width);
            let hi = (i + cfg.width).min(doc.tokens.len().saturating_sub(1));
            for j in lo..=hi {
                if j == i {
                    continue;
                }
                *joints.entry(doc.tokens[j].clone()).or_insert(0) += 1;
            }
        }
    }
    let n_target = corpus.unigrams().count(target);
    let total = unit_total(corpus, cfg.count_unit);
    joints
        .into_iter()
        .map(|(neighbor, joint)| {
            let right = corpus.unigrams().count(&neighbor);
            (
                neighbor,
                JointCounts {
                    joint,
                    left: n_target,
                    right,
                    total,
                },
            )
        })
        .collect()
}

fn unit_total(corpus: &Corpus, unit: CountUnit) -> u64 {
    match unit {
        CountUnit::Tokens => corpus.total_tokens,
        CountUnit::Documents => corpus.documents.len() as u64,
        CountUnit::Sentences => corpus
            .documents
            .iter()
            .map(|d| d.sentence_ids.last().map(|&s| s as u64 + 1).unwrap_or(0))
            .sum(),
    }
}

/// Joint counts at the document or sentence level: a unit "occurs" in an
/// observation unit if it appears there at least once. The default reading
/// for mutual information and conditional probability.
pub fn unit_cooccurrence(corpus: &Corpus, i: &str, j: &str, unit: CountUnit) -> JointCounts {
    let mut joint = 0u64;
    let mut left = 0u64;
    let mut right = 0u64;
    let mut total = 0u64;
    match unit {
        CountUnit::Documents => {
            for doc in &corpus.documents {
                total += 1;
                let has_i = doc.tokens.iter().any(|t| t == i);
                let has_j = doc.tokens.iter().any(|t| t == j);
                left += has_i as u64;
                right += has_j as u64;
                joint += (has_i && has_j) as u64;
            }
        }
        CountUnit::Sentences | CountUnit::Tokens => {
            for doc in &corpus.documents {
                let n_sent = doc.sentence_ids.last().map(|&s| s + 1).unwrap_or(0);
                for s in 0..n_sent {
                    total += 1;
                    let mut has_i = false;
                    let mut has_j = false;
                    for (t, &sid) in doc.tokens.iter().zip(&doc.sentence_ids) {
                        if sid == s {
                            has_i |= t == i;
                            has_j |= t == j;
                        }
                    }
                    left += has_i as u64;
                    right += has_j as u64;
                    joint += (has_i && has_j) as u64;
                }
            }
        }
    }
    JointCounts {
        joint,
        left,
        right,
        total,
    }
}

/// Signed-offset counts of one neighbor around a target; offset 0 never
/// appears (a token is not its own neighbor).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionalHistogram {
    pub target: String,
    pub neighbor: String,
    pub width: usize,
    pub offsets: BTreeMap<i64, u64>,
}

impl PositionalHistogram {
    pub fn mass(&self) -> u64 {
        self.offsets.values().sum()
    }
}

/// Offsets are neighbor index minus target index, within +/-width.
/// Histogram mass equals the windowed joint count of the pair.
pub fn positional_histogram(
    corpus: &Corpus,
    target: &str,
    neighbor: &str,
    cfg: &WindowConfig,
) -> PositionalHistogram {
    let mut offsets: BTreeMap<i64, u64> = BTreeMap::new();
    let width = cfg.width as i64;
    for doc in &corpus.documents {
        for (i, tok) in doc.tokens.iter().enumerate() {
            if tok != target {
                continue;
            }
            for (j, other) in doc.tokens.iter().enumerate() {
                if j == i || other != neighbor {
                    continue;
                }
                let offset = j as i64 - i as i64;
                if offset.abs() <= width {
                    *offsets.entry(offset).or_insert(0) += 1;
                }
            }
        }
    }
    PositionalHistogram {
        target: target.to_string(),
        neighbor: neighbor.to_string(),
        width: cfg.width,
        offsets,
    }
}

/// Independence baseline: the joint probability if the two units combined
/// at random.
pub fn expected_joint_probability(p_i: f64, p_j: f64) -> f64 {
    p_i * p_j
}

pub const DEFAULT_MIN_FREQ: u64 = 5;

/// Pointwise mutual information in bits. Refuses low-frequency marginals:
/// rare pairs land together by chance and would score absurdly high.
pub fn mutual_information(counts: &JointCounts, min_freq: u64) -> Result<f64> {
    if counts.left < min_freq || counts.right < min_freq {
        return Err(Error::LowFrequency {
            min_freq,
            left: counts.left,
            right: counts.right,
        });
    }
    if counts.joint == 0 || counts.total == 0 {
        return Err(Error::LowFrequency {
            min_freq: 1,
            left: counts.joint,
            right: counts.joint,
        });
    }
    let p_joint = counts.joint as f64 / counts.total as f64;
    let p_i = counts.left as f64 / counts.total as f64;
    let p_j = counts.right as f64 / counts.total as f64;
    Ok((p_joint / (p_i * p_j)).log2())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// p(i | j) = n_ii / n_j
    FirstGivenSecond,
    /// p(j | i) = n_ii / n_i
    SecondGivenFirst,
}

pub fn conditional_probability(counts: &JointCounts, direction: Direction) -> Result<f64> {
    let denom = match direction {
        Direction::FirstGivenSecond => counts.right,
        Direction::SecondGivenFirst => counts.left,
    };
    if denom == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(counts.joint as f64 / denom as f64)
}
