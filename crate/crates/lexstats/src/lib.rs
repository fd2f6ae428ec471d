//! Corpus-statistics toolkit for language-independent lexical analysis:
//! n-gram frequencies and rank-frequency laws, association measures,
//! diachronic dispersion, binary-vector and string similarity, bigram-based
//! authorship classification, cooccurrence-graph sense induction and
//! neology detection. No lemmatizer, no POS tagger, no dictionaries.

#![forbid(unsafe_code)]

pub mod association;
pub mod classifier;
pub mod corpus;
pub mod disambiguator;
pub mod dispersion;
pub mod error;
pub mod freq;
pub mod neology;
pub mod output;
pub mod similarity;

pub use crate::corpus::{ingest, parse_unit, term_frequency, tokenize, Corpus, Document, FrequencyTable, TokenizerConfig};
pub use crate::error::{Error, Result};
