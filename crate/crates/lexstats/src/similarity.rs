//! Binary-vector similarity (Dice, Jaccard), character-n-gram string
//! similarity for pseudolemmatization, and binary cooccurrence matrices with
//! nearest-neighbor search.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use crate::association::WindowConfig;
use crate::corpus::{occurrence_positions, Corpus};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Dice,
    Jaccard,
}

impl Measure {
    pub fn score(self, x: &BinaryVector, y: &BinaryVector) -> Result<f64> {
        match self {
            Measure::Dice => dice(x, y),
            Measure::Jaccard => jaccard(x, y),
        }
    }
}

/// Set of "on" attributes of a binary vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BinaryVector {
    pub bits: BTreeSet<String>,
}

impl BinaryVector {
    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(bits: I) -> Self {
        BinaryVector {
            bits: bits.into_iter().map(Into::into).collect(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

/// Dice(X,Y) = 2|X ∩ Y| / (|X| + |Y|). Undefined when both are empty.
pub fn dice(x: &BinaryVector, y: &BinaryVector) -> Result<f64> {
    if x.is_empty() && y.is_empty() {
        return Err(Error::EmptyVectors);
    }
    let shared = x.bits.intersection(&y.bits).count();
    Ok(2.0 * shared as f64 / (x.bits.len() + y.bits.len()) as f64)
}

/// Jaccard(X,Y) = |X ∩ Y| / |X ∪ Y|. Undefined when both are empty.
pub fn jaccard(x: &BinaryVector, y: &BinaryVector) -> Result<f64> {
    if x.is_empty() && y.is_empty() {
        return Err(Error::EmptyVectors);
    }
    let shared = x.bits.intersection(&y.bits).count();
    let union = x.bits.union(&y.bits).count();
    Ok(shared as f64 / union as f64)
}

const PAD: char = '\u{1}';

/// Character n-grams of a string, padded with one boundary marker per side.
pub fn char_ngrams(s: &str, n: usize) -> BTreeSet<String> {
    let chars: Vec<char> = std::iter::once(PAD)
        .chain(s.chars())
        .chain(std::iter::once(PAD))
        .collect();
    chars
        .windows(n)
        .map(|w| w.iter().collect::<String>())
        .collect()
}

/// Similarity of the two strings' character-n-gram sets. Groups
/// inflectional variants (enfermedad / enfermedades) without a
/// morphological analyzer.
pub fn char_ngram_similarity(s: &str, t: &str, n: usize, measure: Measure) -> Result<f64> {
    if !(2..=4).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "character n-gram size must be 2..4, got {n}"
        )));
    }
    for w in [s, t] {
        if w.chars().count() < n {
            return Err(Error::StringTooShort(w.to_string(), n));
        }
    }
    let x = BinaryVector {
        bits: char_ngrams(s, n),
    };
    let y = BinaryVector {
        bits: char_ngrams(t, n),
    };
    measure.score(&x, &y)
}

/// Binary matrix over declared row and column labels; a cell is 1 when the
/// row and column unit cooccur.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMatrix {
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    cells: BTreeSet<(String, String)>,
}

impl BinaryMatrix {
    pub fn new(rows: Vec<String>, cols: Vec<String>) -> Self {
        BinaryMatrix {
            rows,
            cols,
            cells: BTreeSet::new(),
        }
    }

    pub fn set(&mut self, row: &str, col: &str) {
        self.cells.insert((row.to_string(), col.to_string()));
    }

    pub fn get(&self, row: &str, col: &str) -> bool {
        self.cells.contains(&(row.to_string(), col.to_string()))
    }

    /// The row as a binary vector over the column attributes.
    pub fn row_vector(&self, row: &str) -> BinaryVector {
        BinaryVector {
            bits: self
                .cols
                .iter()
                .filter(|c| self.get(row, c))
                .cloned()
                .collect(),
        }
    }

    /// TSV: header of column labels, then one 0/1 row per row label.
    pub fn write_tsv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "\t{}", self.cols.join("\t"))?;
        for row in &self.rows {
            let bits: Vec<&str> = self
                .cols
                .iter()
                .map(|c| if self.get(row, c) { "1" } else { "0" })
                .collect();
            writeln!(w, "{row}\t{}", bits.join("\t"))?;
        }
        Ok(())
    }

    pub fn read_tsv<R: BufRead>(r: R) -> Result<BinaryMatrix> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::BadMatrix("empty file".into()))??;
        let cols: Vec<String> = header
            .split('\t')
            .skip(1)
            .map(|s| s.to_string())
            .collect();
        let mut matrix = BinaryMatrix::new(Vec::new(), cols);
        for line in lines {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split('\t');
            let row = fields
                .next()
                .ok_or_else(|| Error::BadMatrix("missing row label".into()))?
                .to_string();
            for (col, bit) in matrix.cols.clone().iter().zip(fields) {
                if bit == "1" {
                    matrix.set(&row, col);
                }
            }
            matrix.rows.push(row);
        }
        Ok(matrix)
    }
}

/// Cell (r, c) = 1 iff the row and column units cooccur at least once
/// within the window width in some document. Units may be multiword; they
/// match as token subsequences and their position is the first token.
pub fn build_matrix(
    corpus: &Corpus,
    rows: &[Vec<String>],
    cols: &[Vec<String>],
    cfg: &WindowConfig,
) -> BinaryMatrix {
    let mut matrix = BinaryMatrix::new(
        rows.iter().map(|u| u.join(" ")).collect(),
        cols.iter().map(|u| u.join(" ")).collect(),
    );
    for doc in &corpus.documents {
        let row_pos: Vec<Vec<usize>> = rows
            .iter()
            .map(|u| occurrence_positions(&doc.tokens, u))
            .collect();
        let col_pos: Vec<Vec<usize>> = cols
            .iter()
            .map(|u| occurrence_positions(&doc.tokens, u))
            .collect();
        for (ri, rp) in row_pos.iter().enumerate() {
            if rp.is_empty() {
                continue;
            }
            for (ci, cp) in col_pos.iter().enumerate() {
                if matrix.get(&matrix.rows[ri].clone(), &matrix.cols[ci].clone()) {
                    continue;
                }
                let near = rp.iter().any(|&a| {
                    cp.iter()
                        .any(|&b| a != b && a.abs_diff(b) <= cfg.width)
                });
                if near {
                    let (r, c) = (matrix.rows[ri].clone(), matrix.cols[ci].clone());
                    matrix.set(&r, &c);
                }
            }
        }
    }
    matrix
}

/// Document-by-term matrix: rows are document ids, cell = 1 iff the
/// document contains the column unit.
pub fn build_doc_term_matrix(corpus: &Corpus, cols: &[Vec<String>]) -> BinaryMatrix {
    let mut matrix = BinaryMatrix::new(
        corpus.documents.iter().map(|d| d.id.clone()).collect(),
        cols.iter().map(|u| u.join(" ")).collect(),
    );
    for doc in &corpus.documents {
        for (ci, unit) in cols.iter().enumerate() {
            if !occurrence_positions(&doc.tokens, unit).is_empty() {
                let c = matrix.cols[ci].clone();
                matrix.set(&doc.id, &c);
            }
        }
    }
    matrix
}

/// Other rows ranked by similarity to the query row, descending; ties
/// lexicographic. Rows with no bits score 0 instead of erroring.
pub fn nearest_neighbors(
    matrix: &BinaryMatrix,
    row: &str,
    measure: Measure,
    top_k: usize,
) -> Result<Vec<(String, f64)>> {
    if !matrix.rows.iter().any(|r| r == row) {
        return Err(Error::UnknownRow(row.to_string()));
    }
    let query = matrix.row_vector(row);
    let mut scored: Vec<(String, f64)> = matrix
        .rows
        .iter()
        .filter(|r| r.as_str() != row)
        .map(|r| {
            let v = matrix.row_vector(r);
            let score = if query.is_empty() || v.is_empty() {
                0.0
            } else {
                measure.score(&query, &v).unwrap()
            };
            (r.clone(), score)
        })
        .collect();
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    scored.truncate(top_k);
    Ok(scored)
}

/// Lexicon entries ranked by string similarity to the query term.
pub fn rank_string_variants(
    lexicon: &[String],
    query: &str,
    n: usize,
    measure: Measure,
    top_k: usize,
) -> Result<Vec<(String, f64)>> {
    let mut scored: Vec<(String, f64)> = lexicon
        .iter()
        .filter(|t| t.as_str() != query)
        .map(|t| {
            let score = char_ngram_similarity(query, t, n, measure).unwrap_or(0.0);
            (t.clone(), score)
        })
        .collect();
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    scored.truncate(top_k);
    Ok(scored)
}
