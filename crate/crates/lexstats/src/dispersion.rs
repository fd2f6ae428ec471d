//! Per-partition distribution curves and the dispersion score D:
//! the peak frequency of a unit times the number of partitions where it is
//! rare. Flat, ever-present core vocabulary scores 0; bursty referential
//! units score high.

use crate::corpus::{occurrence_positions, Corpus};
use crate::error::{Error, Result};

/// Relative frequency of one unit per partition, in manifest order.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub unit: String,
    pub points: Vec<(String, f64)>,
}

impl TimeSeries {
    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.1).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionConfig {
    /// Partitions with absolute count below this threshold count toward Cr.
    /// k = 1 means only zero-frequency partitions do.
    pub low_freq_threshold: u64,
    /// Scale applied to the max relative frequency (occurrences per
    /// `scale` tokens); 1e6 keeps D values readable.
    pub scale: f64,
    /// Use the absolute partition count as the max instead of relative
    /// frequency.
    pub absolute_max: bool,
}

impl Default for DispersionConfig {
    fn default() -> Self {
        DispersionConfig {
            low_freq_threshold: 1,
            scale: 1e6,
            absolute_max: false,
        }
    }
}

/// Absolute counts of a unit per partition, aligned with `corpus.partitions`.
pub fn partition_counts(corpus: &Corpus, unit: &[String]) -> Result<Vec<u64>> {
    if corpus.partitions.is_empty() {
        return Err(Error::Unpartitioned);
    }
    let mut counts = vec![0u64; corpus.partitions.len()];
    for doc in &corpus.documents {
        if let Some(p) = &doc.partition {
            if let Some(i) = corpus.partitions.iter().position(|q| q == p) {
                counts[i] += occurrence_positions(&doc.tokens, unit).len() as u64;
            }
        }
    }
    Ok(counts)
}

/// Relative frequency of the unit in each partition (count over partition
/// token total).
pub fn distribution_curve(corpus: &Corpus, unit: &[String]) -> Result<TimeSeries> {
    if corpus.partitions.len() < 2 {
        return Err(Error::TooFewPartitions {
            need: 2,
            have: corpus.partitions.len(),
        });
    }
    let counts = partition_counts(corpus, unit)?;
    let totals = corpus.partition_token_counts();
    let points = corpus
        .partitions
        .iter()
        .zip(counts.iter().zip(&totals))
        .map(|(label, (&c, &n))| {
            let rel = if n == 0 { 0.0 } else { c as f64 / n as f64 };
            (label.clone(), rel)
        })
        .collect();
    Ok(TimeSeries {
        unit: unit.join(" "),
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionScore {
    /// D = max_freq * irregular_partitions.
    pub d: f64,
    /// Peak frequency over partitions (scaled relative, or absolute).
    pub max_freq: f64,
    /// Cr: partitions where the absolute count falls below the threshold.
    pub irregular_partitions: usize,
}

pub fn dispersion_score(
    corpus: &Corpus,
    unit: &[String],
    cfg: &DispersionConfig,
) -> Result<DispersionScore> {
    let counts = partition_counts(corpus, unit)?;
    let totals = corpus.partition_token_counts();
    let max_freq = if cfg.absolute_max {
        counts.iter().copied().max().unwrap_or(0) as f64
    } else {
        counts
            .iter()
            .zip(&totals)
            .map(|(&c, &n)| {
                if n == 0 {
                    0.0
                } else {
                    c as f64 / n as f64 * cfg.scale
                }
            })
            .fold(0.0f64, f64::max)
    };
    let irregular = counts
        .iter()
        .filter(|&&c| c < cfg.low_freq_threshold)
        .count();
    Ok(DispersionScore {
        d: max_freq * irregular as f64,
        max_freq,
        irregular_partitions: irregular,
    })
}

/// Units sorted by D ascending (most regular first); ties broken by higher
/// total frequency, then lexicographically.
pub fn rank_by_regularity(
    corpus: &Corpus,
    units: &[Vec<String>],
    cfg: &DispersionConfig,
) -> Result<Vec<(String, DispersionScore)>> {
    let mut scored: Vec<(String, DispersionScore, u64)> = units
        .iter()
        .map(|u| {
            let score = dispersion_score(corpus, u, cfg)?;
            let total = partition_counts(corpus, u)?.iter().sum();
            Ok((u.join(" "), score, total))
        })
        .collect::<Result<_>>()?;
    scored.sort_by(|a, b| {
        a.1.d
            .partial_cmp(&b.1.d)
            .unwrap()
            .then(b.2.cmp(&a.2))
            .then(a.0.cmp(&b.0))
    });
    Ok(scored.into_iter().map(|(u, s, _)| (u, s)).collect())
}
