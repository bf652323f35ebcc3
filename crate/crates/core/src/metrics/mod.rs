//! The two official evaluation metrics.
//!
//! - Fernández-Huerta readability: `206.84 − 0.60·P − 1.02·F` where
//!   `P = 100·S/W` (syllables per 100 words) and `F = 100·N/W` (sentences per
//!   100 words), clamped to `[0, 100]`.
//! - SIM: the arithmetic mean of a bag-of-words cosine and a sentence
//!   embedding cosine between output and reference. Without an embedder the
//!   score degrades to BoW-only and is flagged as such.

mod embed;
mod sentences;
mod syllables;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::tokenize::tokenize_words;

pub use embed::{Embedder, HttpEmbedder, TrigramEmbedder};
pub use sentences::segment_sentences;
pub use syllables::count_syllables;

#[derive(Debug, thiserror::Error)]
pub enum MetricsError {
    #[error("text contains no word tokens")]
    NoWords,
    #[error("embedder unavailable: {0}")]
    EmbedderUnavailable(String),
    #[error("embedding dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// Word, syllable and sentence tallies with the raw and clamped index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReadabilityBreakdown {
    pub words: usize,
    pub syllables: usize,
    pub sentences: usize,
    pub raw: f64,
    pub score: f64,
}

/// Compute the Fernández-Huerta readability breakdown for `text`.
///
/// The sentence count is floored at 1 so punctuation-less fragments remain
/// scorable; the clamped score follows the official 0 (very difficult) to
/// 100 (very easy) range, with the raw value retained for diagnostics.
pub fn fh_breakdown(text: &str) -> Result<ReadabilityBreakdown, MetricsError> {
    let tokens = tokenize_words(text);
    if tokens.is_empty() {
        return Err(MetricsError::NoWords);
    }
    let words = tokens.len();
    let syllables: usize = tokens.iter().map(|t| count_syllables(t)).sum();
    let sentences = segment_sentences(text).len().max(1);

    let w = words as f64;
    let p = 100.0 * syllables as f64 / w;
    let f = 100.0 * sentences as f64 / w;
    let raw = 206.84 - 0.60 * p - 1.02 * f;

    Ok(ReadabilityBreakdown {
        words,
        syllables,
        sentences,
        raw,
        score: raw.clamp(0.0, 100.0),
    })
}

/// Fernández-Huerta score of `text`, clamped to `[0, 100]`.
pub fn fernandez_huerta(text: &str) -> Result<f64, MetricsError> {
    fh_breakdown(text).map(|b| b.score)
}

fn bow_counts(text: &str) -> BTreeMap<String, f64> {
    let mut counts = BTreeMap::new();
    for token in tokenize_words(text) {
        *counts.entry(token.to_lowercase()).or_insert(0.0) += 1.0;
    }
    counts
}

/// Cosine similarity of lowercase word-frequency vectors.
///
/// Either text empty (no tokens) yields 0 by convention. The result is in
/// `[0, 1]` for frequency vectors. Accumulation runs in sorted vocabulary
/// order and the norms multiply under a single square root, so the function
/// is exactly symmetric and exactly invariant under text duplication.
pub fn bow_cosine(a: &str, b: &str) -> f64 {
    let counts_a = bow_counts(a);
    let counts_b = bow_counts(b);
    if counts_a.is_empty() || counts_b.is_empty() {
        return 0.0;
    }

    let mut dot = 0.0;
    for (token, &ca) in &counts_a {
        if let Some(&cb) = counts_b.get(token) {
            dot += ca * cb;
        }
    }
    let norm_a_sq: f64 = counts_a.values().map(|c| c * c).sum();
    let norm_b_sq: f64 = counts_b.values().map(|c| c * c).sum();
    dot / (norm_a_sq * norm_b_sq).sqrt()
}

/// Cosine similarity of the embedder's vectors for `a` and `b`.
pub fn embedding_cosine(a: &str, b: &str, embedder: &dyn Embedder) -> Result<f64, MetricsError> {
    let vectors = embedder.embed(&[a, b])?;
    let [va, vb] = <[Vec<f64>; 2]>::try_from(vectors)
        .map_err(|v: Vec<Vec<f64>>| MetricsError::EmbedderUnavailable(format!("expected 2 vectors, got {}", v.len())))?;
    if va.len() != vb.len() {
        return Err(MetricsError::DimensionMismatch(va.len(), vb.len()));
    }
    let dot: f64 = va.iter().zip(&vb).map(|(x, y)| x * y).sum();
    let na_sq: f64 = va.iter().map(|x| x * x).sum();
    let nb_sq: f64 = vb.iter().map(|x| x * x).sum();
    if na_sq == 0.0 || nb_sq == 0.0 {
        return Ok(0.0);
    }
    Ok(dot / (na_sq * nb_sq).sqrt())
}

/// The SIM components for one (output, reference) pair.
///
/// `combined` is the mean of `bow` and `embedding` when an embedding cosine
/// is present, and equal to `bow` in degraded (BoW-only) mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimScore {
    pub bow: f64,
    pub embedding: Option<f64>,
    pub combined: f64,
    pub degraded: bool,
}

/// Compute SIM between `output` and `reference`.
///
/// With no embedder the score is BoW-only and flagged degraded. When the
/// embedder fails, `strict` decides between propagating the error and
/// falling back to degraded mode.
pub fn sim_score(
    output: &str,
    reference: &str,
    embedder: Option<&dyn Embedder>,
    strict: bool,
) -> Result<SimScore, MetricsError> {
    let bow = bow_cosine(output, reference);
    let embedding = match embedder {
        None => None,
        Some(embedder) => match embedding_cosine(output, reference, embedder) {
            Ok(value) => Some(value),
            Err(err) if strict => return Err(err),
            Err(_) => None,
        },
    };
    let combined = match embedding {
        Some(e) => (bow + e) / 2.0,
        None => bow,
    };
    Ok(SimScore { bow, embedding, combined, degraded: embedding.is_none() })
}

/// Per-document evaluation: SIM against the reference and Fernández-Huerta
/// readability of the system output (the score the task ranks on).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub doc_id: String,
    pub sim: SimScore,
    pub fh: f64,
    pub fh_raw: f64,
    pub output_words: usize,
    pub reference_words: usize,
}

pub fn evaluate_pair(
    doc_id: &str,
    output: &str,
    reference: &str,
    embedder: Option<&dyn Embedder>,
    strict: bool,
) -> Result<PairReport, MetricsError> {
    let breakdown = fh_breakdown(output)?;
    let sim = sim_score(output, reference, embedder, strict)?;
    Ok(PairReport {
        doc_id: doc_id.to_string(),
        sim,
        fh: breakdown.score,
        fh_raw: breakdown.raw,
        output_words: breakdown.words,
        reference_words: tokenize_words(reference).len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Test embedder returning a fixed vector per exact text.
    struct StubEmbedder(std::collections::HashMap<String, Vec<f64>>);

    impl Embedder for StubEmbedder {
        fn embed(&self, texts: &[&str]) -> Result<Vec<Vec<f64>>, MetricsError> {
            texts
                .iter()
                .map(|t| {
                    self.0
                        .get(*t)
                        .cloned()
                        .ok_or_else(|| MetricsError::EmbedderUnavailable(format!("no vector for `{t}`")))
                })
                .collect()
        }
    }

    fn stub(pairs: &[(&str, &[f64])]) -> StubEmbedder {
        StubEmbedder(pairs.iter().map(|(k, v)| (k.to_string(), v.to_vec())).collect())
    }

    #[test]
    fn fh_clamps_easy_text() {
        // 100 monosyllabic words in 4 sentences: raw 142.76, clamped to 100.
        let sentence = {
            let mut words = vec!["Sol"];
            words.extend(std::iter::repeat("sol").take(24));
            words.join(" ") + "."
        };
        let text = vec![sentence; 4].join(" ");
        let breakdown = fh_breakdown(&text).unwrap();
        assert_eq!(breakdown.words, 100);
        assert_eq!(breakdown.syllables, 100);
        assert_eq!(breakdown.sentences, 4);
        assert!((breakdown.raw - 142.76).abs() < 1e-9);
        assert_eq!(breakdown.score, 100.0);
    }

    #[test]
    fn fh_hand_arithmetic() {
        // 10 words of 3 syllables each, one sentence: 206.84 − 180 − 10.2.
        let text = vec!["ventana"; 10].join(" ") + ".";
        let breakdown = fh_breakdown(&text).unwrap();
        assert_eq!(breakdown.words, 10);
        assert_eq!(breakdown.syllables, 30);
        assert_eq!(breakdown.sentences, 1);
        assert!((breakdown.raw - 16.64).abs() < 1e-9);
        assert!((breakdown.score - 16.64).abs() < 1e-9);
    }

    #[test]
    fn fh_empty_is_error() {
        assert!(matches!(fernandez_huerta(""), Err(MetricsError::NoWords)));
        assert!(matches!(fernandez_huerta("  \n "), Err(MetricsError::NoWords)));
    }

    #[test]
    fn fh_floors_sentences_at_one() {
        let breakdown = fh_breakdown("titular sin puntuación").unwrap();
        assert_eq!(breakdown.sentences, 1);
    }

    #[test]
    fn bow_identical_texts() {
        assert_eq!(bow_cosine("hola mundo", "hola mundo"), 1.0);
    }

    #[test]
    fn bow_half_overlap_is_exactly_half() {
        assert_eq!(bow_cosine("a b", "a c"), 0.5);
    }

    #[test]
    fn bow_disjoint_texts() {
        assert_eq!(bow_cosine("x", "y"), 0.0);
    }

    #[test]
    fn bow_empty_is_zero() {
        assert_eq!(bow_cosine("", "hola"), 0.0);
        assert_eq!(bow_cosine("", ""), 0.0);
    }

    #[test]
    fn bow_is_case_insensitive() {
        assert_eq!(bow_cosine("Hola Mundo", "hola mundo"), 1.0);
    }

    #[test]
    fn embedding_cosine_identity_orthogonal_antipodal() {
        let e = stub(&[("p", &[1.0, 0.0]), ("q", &[0.0, 1.0]), ("r", &[-1.0, 0.0])]);
        assert_eq!(embedding_cosine("p", "p", &e).unwrap(), 1.0);
        assert_eq!(embedding_cosine("p", "q", &e).unwrap(), 0.0);
        assert_eq!(embedding_cosine("p", "r", &e).unwrap(), -1.0);
    }

    #[test]
    fn embedding_cosine_dimension_mismatch() {
        let e = stub(&[("p", &[1.0, 0.0]), ("q", &[0.0, 1.0, 0.0])]);
        assert!(matches!(
            embedding_cosine("p", "q", &e),
            Err(MetricsError::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn sim_averages_components() {
        // bow("a b", "a c") = 0.5; stub vectors give embedding 1.0.
        let e = stub(&[("a b", &[2.0, 0.0]), ("a c", &[1.0, 0.0])]);
        let score = sim_score("a b", "a c", Some(&e), true).unwrap();
        assert_eq!(score.bow, 0.5);
        assert_eq!(score.embedding, Some(1.0));
        assert_eq!(score.combined, 0.75);
        assert!(!score.degraded);
    }

    #[test]
    fn sim_identical_with_embedder_is_one() {
        let e = stub(&[("hola mundo", &[0.3, 0.4])]);
        let score = sim_score("hola mundo", "hola mundo", Some(&e), true).unwrap();
        assert_eq!(score.combined, 1.0);
    }

    #[test]
    fn sim_degraded_without_embedder() {
        let score = sim_score("a b", "a c", None, true).unwrap();
        assert_eq!(score.combined, 0.5);
        assert!(score.degraded);
        assert_eq!(score.embedding, None);
    }

    #[test]
    fn sim_strictness_controls_embedder_failure() {
        let empty = stub(&[]);
        assert!(sim_score("a", "b", Some(&empty), true).is_err());
        let score = sim_score("a b", "a c", Some(&empty), false).unwrap();
        assert!(score.degraded);
        assert_eq!(score.combined, 0.5);
    }

    #[test]
    fn evaluate_pair_composes() {
        let e = stub(&[("hola mundo.", &[1.0, 1.0])]);
        let report = evaluate_pair("doc1", "hola mundo.", "hola mundo.", Some(&e), true).unwrap();
        assert_eq!(report.sim.combined, 1.0);
        assert_eq!(report.output_words, 2);
        assert_eq!(report.reference_words, 2);
        assert!(report.fh >= 0.0 && report.fh <= 100.0);
    }

    #[test]
    fn evaluate_pair_empty_output_is_error() {
        assert!(matches!(
            evaluate_pair("d", "", "ref", None, true),
            Err(MetricsError::NoWords)
        ));
    }
}
