//! Formal neology detection: rank corpus units by how closely their
//! diachronic frequency curve tracks the ideal neologism curve x^k.
//! Semantic neologisms are out of reach here; route those contexts through
//! the disambiguator instead.

use std::collections::BTreeSet;

use crate::association::count_ngrams;
use crate::corpus::Corpus;
use crate::dispersion::TimeSeries;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NeologyConfig {
    /// Exponent of the ideal curve.
    pub exponent: f64,
    /// Candidate units span 1..=max_ngram tokens (at most 5).
    pub max_ngram: usize,
    /// Units never reported (stands in for manual proper-noun filtering).
    pub exclusion_list: BTreeSet<String>,
    /// Ultra-rare units produce degenerate shapes; require this much mass.
    pub min_total_freq: u64,
    /// Compare unit-sum-normalized curves (scale-invariant). When off, raw
    /// relative frequencies are compared directly.
    pub normalize: bool,
}

impl Default for NeologyConfig {
    fn default() -> Self {
        NeologyConfig {
            exponent: 10.0,
            max_ngram: 1,
            exclusion_list: BTreeSet::new(),
            min_total_freq: 10,
            normalize: true,
        }
    }
}

/// The ideal neologism curve over m partitions: value at partition x
/// (1-based) proportional to x^k, normalized to unit sum.
#[derive(Debug, Clone, PartialEq)]
pub struct IdealCurve {
    pub values: Vec<f64>,
}

pub fn ideal_curve(partitions: usize, exponent: f64) -> Result<IdealCurve> {
    if partitions < 2 {
        return Err(Error::CurveTooShort(partitions));
    }
    if exponent <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "curve exponent must be positive, got {exponent}"
        )));
    }
    let raw: Vec<f64> = (1..=partitions)
        .map(|x| (x as f64).powf(exponent))
        .collect();
    let sum: f64 = raw.iter().sum();
    Ok(IdealCurve {
        values: raw.into_iter().map(|v| v / sum).collect(),
    })
}

fn unit_sum(values: &[f64]) -> Option<Vec<f64>> {
    let sum: f64 = values.iter().sum();
    if sum <= 0.0 {
        return None;
    }
    Some(values.iter().map(|v| v / sum).collect())
}

/// Euclidean distance between the series and the ideal curve. With
/// normalization both curves are scaled to unit sum first, so only shape
/// matters.
pub fn curve_distance(ts: &TimeSeries, curve: &IdealCurve, normalize: bool) -> Result<f64> {
    let values = ts.values();
    if values.len() != curve.values.len() {
        return Err(Error::LengthMismatch {
            series: values.len(),
            curve: curve.values.len(),
        });
    }
    let series = if normalize {
        unit_sum(&values).ok_or(Error::AllZeroSeries)?
    } else {
        if values.iter().all(|&v| v == 0.0) {
            return Err(Error::AllZeroSeries);
        }
        values
    };
    Ok(series
        .iter()
        .zip(&curve.values)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub unit: String,
    pub distance: f64,
    pub total_freq: u64,
    /// Relative frequency per partition, manifest order.
    pub curve: Vec<f64>,
}

/// All 1..=max_ngram units frequent enough and not excluded, sorted by
/// distance to the ideal curve ascending. Ties prefer the unit more
/// frequent in the most recent partition, then the lexicographically
/// smaller one.
pub fn rank_candidates(corpus: &Corpus, cfg: &NeologyConfig) -> Result<Vec<Candidate>> {
    let m = corpus.partitions.len();
    if m < 3 {
        return Err(Error::TooFewPartitions { need: 3, have: m });
    }
    if cfg.max_ngram == 0 || cfg.max_ngram > 5 {
        return Err(Error::InvalidParameter(format!(
            "max_ngram must be 1..5, got {}",
            cfg.max_ngram
        )));
    }
    let curve = ideal_curve(m, cfg.exponent)?;
    let partition_index: std::collections::BTreeMap<&String, usize> = corpus
        .partitions
        .iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();
    let partition_tokens = corpus.partition_token_counts();

    let mut candidates: Vec<(String, Vec<u64>)> = Vec::new();
    for n in 1..=cfg.max_ngram {
        let totals = count_ngrams(corpus, n);
        // per-partition counts in one pass per n
        let mut per_part: std::collections::BTreeMap<&str, Vec<u64>> = totals
            .counts
            .iter()
            .filter(|(u, &c)| c >= cfg.min_total_freq && !cfg.exclusion_list.contains(*u))
            .map(|(u, _)| (u.as_str(), vec![0u64; m]))
            .collect();
        if per_part.is_empty() {
            continue;
        }
        for doc in &corpus.documents {
            let pi = match doc.partition.as_ref().and_then(|p| partition_index.get(p)) {
                Some(&i) => i,
                None => continue,
            };
            if doc.tokens.len() < n {
                continue;
            }
            for w in doc.tokens.windows(n) {
                let key = w.join(" ");
                if let Some(counts) = per_part.get_mut(key.as_str()) {
                    counts[pi] += 1;
                }
            }
        }
        candidates.extend(
            per_part
                .into_iter()
                .map(|(u, counts)| (u.to_string(), counts)),
        );
    }

    let mut scored: Vec<Candidate> = candidates
        .into_iter()
        .filter_map(|(unit, counts)| {
            let rel: Vec<f64> = counts
                .iter()
                .zip(&partition_tokens)
                .map(|(&c, &n)| if n == 0 { 0.0 } else { c as f64 / n as f64 })
                .collect();
            let ts = TimeSeries {
                unit: unit.clone(),
                points: corpus
                    .partitions
                    .iter()
                    .zip(&rel)
                    .map(|(p, &v)| (p.clone(), v))
                    .collect(),
            };
            let distance = curve_distance(&ts, &curve, cfg.normalize).ok()?;
            Some(Candidate {
                unit,
                distance,
                total_freq: counts.iter().sum(),
                curve: rel,
            })
        })
        .collect();
    scored.sort_by(|a, b| {
        a.distance
            .partial_cmp(&b.distance)
            .unwrap()
            .then_with(|| {
                let ra = a.curve.last().copied().unwrap_or(0.0);
                let rb = b.curve.last().copied().unwrap_or(0.0);
                rb.partial_cmp(&ra).unwrap()
            })
            .then_with(|| a.unit.cmp(&b.unit))
    });
    Ok(scored)
}
