//! Sentence embedding backends for the SIM metric.
//!
//! Two implementations of [`Embedder`]: an HTTP client speaking the common
//! embeddings wire format (POST with model + input strings, JSON vector
//! response) and a deterministic offline fake built from hashed character
//! trigrams, good enough to exercise every code path in tests without a
//! model service.

use serde::{Deserialize, Serialize};

use super::MetricsError;

/// Maps a batch of texts to fixed-dimension real vectors.
///
/// Implementations must be safe for concurrent calls (or internally
/// serialized); the pipeline may evaluate documents in parallel.
pub trait Embedder: Send + Sync {
    fn embed(&self, texts: &[&str]) -> Result<Vec<Vec<f64>>, MetricsError>;

    fn id(&self) -> &str {
        "embedder"
    }
}

/// Deterministic offline embedder: hashed character-trigram frequency
/// vectors, L2-normalized. Identical texts map to identical vectors on every
/// platform, so cosine similarities are reproducible byte for byte.
#[derive(Debug, Clone)]
pub struct TrigramEmbedder {
    dims: usize,
}

impl Default for TrigramEmbedder {
    fn default() -> Self {
        Self { dims: 256 }
    }
}

impl TrigramEmbedder {
    pub fn new(dims: usize) -> Self {
        Self { dims: dims.max(8) }
    }

    fn vector(&self, text: &str) -> Vec<f64> {
        let mut v = vec![0.0f64; self.dims];
        let lowered = text.to_lowercase();
        let chars: Vec<char> = lowered.chars().collect();
        if chars.is_empty() {
            return v;
        }
        // Pad so single characters still produce a trigram.
        let mut padded = vec![' '; 1];
        padded.extend(chars);
        padded.push(' ');
        for window in padded.windows(3) {
            let slot = (fnv1a(window) % self.dims as u64) as usize;
            v[slot] += 1.0;
        }
        let norm_sq: f64 = v.iter().map(|x| x * x).sum();
        if norm_sq > 0.0 {
            let norm = norm_sq.sqrt();
            for x in &mut v {
                *x /= norm;
            }
        }
        v
    }
}

/// FNV-1a over the UTF-8 bytes of a char window. Stable across platforms and
/// Rust versions, unlike the std hasher.
fn fnv1a(chars: &[char]) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    let mut buf = [0u8; 4];
    for &c in chars {
        for &b in c.encode_utf8(&mut buf).as_bytes() {
            hash ^= b as u64;
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    hash
}

impl Embedder for TrigramEmbedder {
    fn embed(&self, texts: &[&str]) -> Result<Vec<Vec<f64>>, MetricsError> {
        Ok(texts.iter().map(|t| self.vector(t)).collect())
    }

    fn id(&self) -> &str {
        "offline-fake"
    }
}

#[derive(Serialize)]
struct EmbeddingRequest<'a> {
    model: &'a str,
    input: &'a [&'a str],
}

#[derive(Deserialize)]
struct EmbeddingResponse {
    data: Vec<EmbeddingItem>,
}

#[derive(Deserialize)]
struct EmbeddingItem {
    #[serde(default)]
    index: usize,
    embedding: Vec<f64>,
}

/// HTTP embeddings client. POSTs `{model, input}` to `<base_url>/embeddings`
/// and reads the `data[i].embedding` vectors back.
pub struct HttpEmbedder {
    base_url: String,
    model: String,
    api_key: Option<String>,
    client: reqwest::blocking::Client,
}

impl HttpEmbedder {
    pub fn new(base_url: impl Into<String>, model: impl Into<String>, api_key: Option<String>) -> Self {
        Self {
            base_url: base_url.into().trim_end_matches('/').to_string(),
            model: model.into(),
            api_key,
            client: reqwest::blocking::Client::new(),
        }
    }
}

impl Embedder for HttpEmbedder {
    fn embed(&self, texts: &[&str]) -> Result<Vec<Vec<f64>>, MetricsError> {
        let url = format!("{}/embeddings", self.base_url);
        let mut request = self
            .client
            .post(&url)
            .json(&EmbeddingRequest { model: &self.model, input: texts });
        if let Some(key) = &self.api_key {
            request = request.bearer_auth(key);
        }
        let response = request
            .send()
            .map_err(|e| MetricsError::EmbedderUnavailable(e.to_string()))?;
        let status = response.status();
        if !status.is_success() {
            let body = response.text().unwrap_or_default();
            let excerpt: String = body.chars().take(200).collect();
            return Err(MetricsError::EmbedderUnavailable(format!("{status}: {excerpt}")));
        }
        let parsed: EmbeddingResponse = response
            .json()
            .map_err(|e| MetricsError::EmbedderUnavailable(e.to_string()))?;
        let mut items = parsed.data;
        items.sort_by_key(|item| item.index);
        if items.len() != texts.len() {
            return Err(MetricsError::EmbedderUnavailable(format!(
                "expected {} vectors, got {}",
                texts.len(),
                items.len()
            )));
        }
        Ok(items.into_iter().map(|item| item.embedding).collect())
    }

    fn id(&self) -> &str {
        "http"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trigram_vectors_are_deterministic_and_unit_length() {
        let embedder = TrigramEmbedder::default();
        let a = embedder.embed(&["hola mundo"]).unwrap();
        let b = embedder.embed(&["hola mundo"]).unwrap();
        assert_eq!(a, b);
        let norm: f64 = a[0].iter().map(|x| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn trigram_distinguishes_texts() {
        let embedder = TrigramEmbedder::default();
        let vs = embedder.embed(&["ayuntamiento de alicante", "fiesta mayor"]).unwrap();
        assert_ne!(vs[0], vs[1]);
    }

    #[test]
    fn empty_text_embeds_to_zero() {
        let embedder = TrigramEmbedder::default();
        let vs = embedder.embed(&[""]).unwrap();
        assert!(vs[0].iter().all(|&x| x == 0.0));
    }
}
