//! Unigram probability, rank-frequency profiles, Zipf constants, the
//! Mandelbrot rank-frequency fit, lexical richness and rarity against a
//! reference model.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, FrequencyTable};
use crate::error::{Error, Result};

/// p(term) = f(term) / N over the whole corpus.
pub fn unigram_probability(corpus: &Corpus, term: &str) -> Result<f64> {
    if corpus.total_tokens == 0 {
        return Err(Error::EmptyCorpus);
    }
    Ok(corpus.unigrams().count(term) as f64 / corpus.total_tokens as f64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankEntry {
    pub rank: usize,
    pub term: String,
    pub freq: u64,
}

/// Vocabulary sorted by decreasing frequency, rank 1 first.
/// Ties break lexicographically so the profile is reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankProfile {
    pub entries: Vec<RankEntry>,
}

pub fn rank_profile(corpus: &Corpus) -> Result<RankProfile> {
    if corpus.total_tokens == 0 {
        return Err(Error::EmptyCorpus);
    }
    profile_from_table(corpus.unigrams())
}

/// Rank profile of an arbitrary frequency table (n-grams included).
pub fn profile_from_table(table: &FrequencyTable) -> Result<RankProfile> {
    if table.counts.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut items: Vec<(&String, u64)> =
        table.counts.iter().map(|(t, &f)| (t, f)).collect();
    items.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let entries = items
        .into_iter()
        .enumerate()
        .map(|(i, (term, freq))| RankEntry {
            rank: i + 1,
            term: term.clone(),
            freq,
        })
        .collect();
    Ok(RankProfile { entries })
}

/// The Zipf constant c = f * r per rank, no smoothing.
pub fn zipf_constants(profile: &RankProfile) -> Vec<(usize, f64)> {
    profile
        .entries
        .iter()
        .map(|e| (e.rank, e.freq as f64 * e.rank as f64))
        .collect()
}

/// Pearson correlation of log f against log r over a rank range.
/// The standard desk check of Zipf behavior: strongly negative on natural text.
pub fn log_log_correlation(profile: &RankProfile, range: RangeInclusive<usize>) -> Result<f64> {
    let pts: Vec<(f64, f64)> = profile
        .entries
        .iter()
        .filter(|e| range.contains(&e.rank) && e.freq >= 1)
        .map(|e| ((e.rank as f64).ln(), (e.freq as f64).ln()))
        .collect();
    if pts.len() < 3 {
        return Err(Error::TooFewRanks {
            need: 3,
            found: pts.len(),
        });
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in &pts {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Ok(0.0);
    }
    Ok(sxy / (sxx * syy).sqrt())
}

/// Parameters of f(r) = P * (r + p)^(-B), fit in log-log space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MandelbrotFit {
    /// Amplitude P.
    #[serde(rename = "P")]
    pub amplitude: f64,
    /// Rank shift p >= 0.
    #[serde(rename = "p")]
    pub rank_shift: f64,
    /// Decay exponent B.
    #[serde(rename = "B")]
    pub exponent: f64,
    /// Root-mean-square of log f_obs - log f_pred over the fitted ranks.
    pub rmse: f64,
}

fn fit_points(profile: &RankProfile, range: &RangeInclusive<usize>) -> Vec<(f64, f64)> {
    profile
        .entries
        .iter()
        .filter(|e| range.contains(&e.rank) && e.freq >= 1)
        .map(|e| (e.rank as f64, (e.freq as f64).ln()))
        .collect()
}

/// For fixed (p, B), ln P minimizing squared log error has a closed form:
/// the mean of ln f + B ln(r + p). Returns (ln P, sse).
fn solve_amplitude(points: &[(f64, f64)], shift: f64, exponent: f64) -> (f64, f64) {
    let n = points.len() as f64;
    let ln_p = points
        .iter()
        .map(|(r, lf)| lf + exponent * (r + shift).ln())
        .sum::<f64>()
        / n;
    let sse = points
        .iter()
        .map(|(r, lf)| {
            let pred = ln_p - exponent * (r + shift).ln();
            (lf - pred) * (lf - pred)
        })
        .sum::<f64>();
    (ln_p, sse)
}

fn objective(points: &[(f64, f64)], shift: f64, exponent: f64) -> f64 {
    if shift < 0.0 || exponent <= 0.0 {
        return f64::INFINITY;
    }
    solve_amplitude(points, shift, exponent).1
}

/// Derivative-free fit: coarse grid over (p, B) seeds a Nelder-Mead
/// refinement; P is solved in closed form at every probe. The pure-Zipf
/// point (p=0, B=1) is always probed, so the result is never worse than
/// the best pure-Zipf fit on the same range.
pub fn fit_mandelbrot(
    profile: &RankProfile,
    range: RangeInclusive<usize>,
) -> Result<MandelbrotFit> {
    let points = fit_points(profile, &range);
    fit_mandelbrot_points(&points)
}

/// Fit directly on (rank, ln frequency) points; lets callers supply
/// real-valued frequencies (integer rounding is itself noise at the tail).
pub fn fit_mandelbrot_points(points: &[(f64, f64)]) -> Result<MandelbrotFit> {
    if points.len() < 10 {
        return Err(Error::TooFewRanks {
            need: 10,
            found: points.len(),
        });
    }
    let points = points.to_vec();
    let mut best = (0.0f64, 1.0f64);
    let mut best_sse = objective(&points, 0.0, 1.0);
    let shift_grid = [0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 5.0, 8.0, 12.0, 20.0, 35.0, 50.0];
    for &s in &shift_grid {
        let mut b = 0.5;
        while b <= 2.0 + 1e-9 {
            let sse = objective(&points, s, b);
            if sse < best_sse {
                best_sse = sse;
                best = (s, b);
            }
            b += 0.05;
        }
    }
    let (shift, exponent, sse) = nelder_mead(&points, best.0, best.1, best_sse);
    let (ln_p, sse_final) = solve_amplitude(&points, shift, exponent);
    let rmse = (sse_final.min(sse) / points.len() as f64).sqrt();
    Ok(MandelbrotFit {
        amplitude: ln_p.exp(),
        rank_shift: shift,
        exponent,
        rmse,
    })
}

/// RMSE of the best pure-Zipf fit (p = 0, B = 1, P free) on the range.
pub fn pure_zipf_rmse(profile: &RankProfile, range: RangeInclusive<usize>) -> Result<f64> {
    let points = fit_points(profile, &range);
    if points.is_empty() {
        return Err(Error::TooFewRanks {
            need: 1,
            found: 0,
        });
    }
    let (_, sse) = solve_amplitude(&points, 0.0, 1.0);
    Ok((sse / points.len() as f64).sqrt())
}

/// 2-D Nelder-Mead over (shift, exponent). Small and self-contained; the
/// objective is cheap and well-behaved after the grid seed.
fn nelder_mead(points: &[(f64, f64)], s0: f64, b0: f64, f0: f64) -> (f64, f64, f64) {
    let mut simplex = [([s0, b0], f0),
        ([s0 + 0.5, b0], objective(points, s0 + 0.5, b0)),
        ([s0, b0 + 0.05], objective(points, s0, b0 + 0.05))];
    for _ in 0..400 {
        simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
        let (best, worst) = (simplex[0], simplex[2]);
        if (worst.1 - best.1).abs() < 1e-14 {
            break;
        }
        let centroid = [
            (simplex[0].0[0] + simplex[1].0[0]) / 2.0,
            (simplex[0].0[1] + simplex[1].0[1]) / 2.0,
        ];
        let probe = |c: f64| {
            let p = [
                centroid[0] + c * (centroid[0] - worst.0[0]),
                centroid[1] + c * (centroid[1] - worst.0[1]),
            ];
            (p, objective(points, p[0].max(0.0), p[1]))
        };
        let reflected = probe(1.0);
        let replacement = if reflected.1 < best.1 {
            let expanded = probe(2.0);
            if expanded.1 < reflected.1 {
                expanded
            } else {
                reflected
            }
        } else if reflected.1 < simplex[1].1 {
            reflected
        } else {
            let contracted = probe(-0.5);
            if contracted.1 < worst.1 {
                contracted
            } else {
                // shrink toward the best vertex
                for v in simplex.iter_mut().skip(1) {
                    v.0[0] = (v.0[0] + best.0[0]) / 2.0;
                    v.0[1] = (v.0[1] + best.0[1]) / 2.0;
                    v.1 = objective(points, v.0[0].max(0.0), v.0[1]);
                }
                continue;
            }
        };
        simplex[2] = replacement;
    }
    simplex.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    (simplex[0].0[0].max(0.0), simplex[0].0[1], simplex[0].1)
}

/// Distinct tokens over total tokens.
pub fn type_token_ratio(tokens: &[String]) -> Result<f64> {
    if tokens.is_empty() {
        return Err(Error::EmptyTokens);
    }
    let distinct: BTreeSet<&String> = tokens.iter().collect();
    Ok(distinct.len() as f64 / tokens.len() as f64)
}

/// Background frequency table standing in for "normal" language.
#[derive(Debug, Clone)]
pub struct ReferenceModel {
    pub table: FrequencyTable,
}

impl ReferenceModel {
    pub fn from_corpus(corpus: &Corpus) -> Result<ReferenceModel> {
        if corpus.total_tokens == 0 {
            return Err(Error::EmptyCorpus);
        }
        Ok(ReferenceModel {
            table: corpus.unigrams().clone(),
        })
    }

    pub fn token_count(&self) -> u64 {
        self.table.total
    }
}

#[derive(Debug, Clone)]
pub struct RarityProfile {
    /// (token, surprisal in bits) per document token, in document order.
    pub surprisals: Vec<(String, f64)>,
    pub mean: f64,
}

/// Surprisal of each token against the reference model:
/// -log2((f_ref + s) / (N_ref + s * |V_ref|)). Add-one smoothing keeps
/// unseen terms finite; with s = 0 an unseen term is infinitely surprising.
pub fn rarity_profile(
    tokens: &[String],
    model: &ReferenceModel,
    smoothing: f64,
) -> Result<RarityProfile> {
    if model.table.total == 0 {
        return Err(Error::EmptyCorpus);
    }
    if tokens.is_empty() {
        return Err(Error::EmptyTokens);
    }
    let denom = model.table.total as f64 + smoothing * model.table.vocab_size() as f64;
    let surprisals: Vec<(String, f64)> = tokens
        .iter()
        .map(|t| {
            let p = (model.table.count(t) as f64 + smoothing) / denom;
            (t.clone(), -p.log2())
        })
        .collect();
    let mean = surprisals.iter().map(|(_, s)| s).sum::<f64>() / surprisals.len() as f64;
    Ok(RarityProfile { surprisals, mean })
}
