//! Corpora of (original, adaptation) text pairs: loading, validation,
//! persistence, summary statistics and subset construction.
//!
//! Two file formats are supported, both UTF-8:
//!
//! - CSV with RFC-4180 quoting and the header `id,original,adapted,origin,topic`
//! - JSON Lines with one object per line using the same keys
//!
//! Empty strings in optional columns are read back as absent, so writing and
//! reloading a corpus in either format is the identity.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;

use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::tokenize::{line_count, tokenize_words, word_count};

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("missing field `{field}` in row {row}")]
    MissingField { field: &'static str, row: usize },
    #[error("duplicate document id `{0}`")]
    DuplicateId(String),
    #[error("file is not valid UTF-8: {0}")]
    EncodingError(String),
    #[error("corpus contains no documents")]
    EmptyCorpus,
    #[error("field `adapted` requested but document `{0}` has no adaptation")]
    MissingAdaptation(String),
    #[error("subset size {requested} exceeds corpus size {available}")]
    SizeExceedsCorpus { requested: usize, available: usize },
    #[error("document `{0}` lacks the `{1}` key required for a categories subset")]
    MissingGroupKey(String, GroupKey),
    #[error("random subset requires a seed")]
    MissingSeed,
    #[error("subset size must be positive")]
    ZeroSize,
    #[error("unsupported corpus format `{0}` (expected csv or jsonl)")]
    UnknownFormat(String),
    #[error("malformed {format} at line {line}: {message}")]
    Parse { format: CorpusFormat, line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// One corpus entry: an original administrative text and, when available,
/// its reference plain-language adaptation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub original: String,
    pub adapted: Option<String>,
    pub origin: Option<String>,
    pub topic: Option<String>,
    word_count: usize,
}

impl Document {
    /// Build a document, deriving the word count from the original text.
    /// The id must be non-empty and the original non-blank.
    pub fn new(
        id: impl Into<String>,
        original: impl Into<String>,
    ) -> Result<Self, CorpusError> {
        let id = id.into();
        let original = original.into();
        if id.trim().is_empty() {
            return Err(CorpusError::MissingField { field: "id", row: 0 });
        }
        if original.trim().is_empty() {
            return Err(CorpusError::MissingField { field: "original", row: 0 });
        }
        let word_count = word_count(&original);
        Ok(Self { id, original, adapted: None, origin: None, topic: None, word_count })
    }

    pub fn with_adapted(mut self, adapted: impl Into<String>) -> Self {
        self.adapted = non_empty(adapted.into());
        self
    }

    pub fn with_origin(mut self, origin: impl Into<String>) -> Self {
        self.origin = non_empty(origin.into());
        self
    }

    pub fn with_topic(mut self, topic: impl Into<String>) -> Self {
        self.topic = non_empty(topic.into());
        self
    }

    /// Number of word tokens in the original text.
    pub fn word_count(&self) -> usize {
        self.word_count
    }
}

fn non_empty(s: String) -> Option<String> {
    if s.is_empty() {
        None
    } else {
        Some(s)
    }
}

/// An ordered, duplicate-free collection of documents.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Corpus {
    documents: Vec<Document>,
    pub source_path: Option<String>,
}

/// Supported on-disk corpus formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CorpusFormat {
    Csv,
    Jsonl,
}

impl fmt::Display for CorpusFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusFormat::Csv => write!(f, "csv"),
            CorpusFormat::Jsonl => write!(f, "jsonl"),
        }
    }
}

impl std::str::FromStr for CorpusFormat {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(CorpusFormat::Csv),
            "jsonl" | "json" => Ok(CorpusFormat::Jsonl),
            other => Err(CorpusError::UnknownFormat(other.to_string())),
        }
    }
}

impl CorpusFormat {
    /// Guess the format from a file extension, defaulting to CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") | Some("json") | Some("ndjson") => CorpusFormat::Jsonl,
            _ => CorpusFormat::Csv,
        }
    }
}

/// Raw record as it appears on disk; `Document` derives the rest.
#[derive(Debug, Serialize, Deserialize)]
struct RawRecord {
    id: String,
    #[serde(default)]
    original: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    adapted: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    origin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    topic: Option<String>,
}

impl Corpus {
    pub fn from_documents(documents: Vec<Document>) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        for doc in &documents {
            if !seen.insert(doc.id.clone()) {
                return Err(CorpusError::DuplicateId(doc.id.clone()));
            }
        }
        Ok(Self { documents, source_path: None })
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Document> {
        self.documents.iter().find(|d| d.id == id)
    }

    /// True when every document carries an adaptation.
    pub fn fully_adapted(&self) -> bool {
        self.documents.iter().all(|d| d.adapted.is_some())
    }
}

/// Load a corpus from `path` in the given format.
///
/// Required fields are `id` and `original`; `adapted`, `origin` and `topic`
/// are optional. Duplicate ids and non-UTF-8 content are rejected.
pub fn load_corpus(path: impl AsRef<Path>, format: CorpusFormat) -> Result<Corpus, CorpusError> {
    let path = path.as_ref();
    let bytes = fs::read(path)?;
    let text = std::str::from_utf8(&bytes)
        .map_err(|e| CorpusError::EncodingError(format!("{}: {e}", path.display())))?;

    let raws = match format {
        CorpusFormat::Csv => parse_csv(text)?,
        CorpusFormat::Jsonl => parse_jsonl(text)?,
    };

    let mut documents = Vec::with_capacity(raws.len());
    let mut seen = HashSet::new();
    for (row, raw) in raws.into_iter().enumerate() {
        let row = row + 1;
        if raw.id.trim().is_empty() {
            return Err(CorpusError::MissingField { field: "id", row });
        }
        let original = match raw.original {
            Some(o) if !o.trim().is_empty() => o,
            _ => return Err(CorpusError::MissingField { field: "original", row }),
        };
        if !seen.insert(raw.id.clone()) {
            return Err(CorpusError::DuplicateId(raw.id));
        }
        let mut doc = Document::new(raw.id, original)?;
        doc.adapted = raw.adapted.and_then(non_empty);
        doc.origin = raw.origin.and_then(non_empty);
        doc.topic = raw.topic.and_then(non_empty);
        documents.push(doc);
    }

    if documents.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }

    Ok(Corpus { documents, source_path: Some(path.display().to_string()) })
}

fn parse_csv(text: &str) -> Result<Vec<RawRecord>, CorpusError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(text.as_bytes());

    let headers = reader
        .headers()
        .map_err(|e| CorpusError::Parse { format: CorpusFormat::Csv, line: 1, message: e.to_string() })?
        .clone();
    if !headers.iter().any(|h| h == "id") {
        return Err(CorpusError::MissingField { field: "id", row: 0 });
    }
    if !headers.iter().any(|h| h == "original") {
        return Err(CorpusError::MissingField { field: "original", row: 0 });
    }

    let mut raws = Vec::new();
    for (idx, record) in reader.deserialize::<RawRecord>().enumerate() {
        let raw = record.map_err(|e| CorpusError::Parse {
            format: CorpusFormat::Csv,
            line: idx + 2,
            message: e.to_string(),
        })?;
        raws.push(raw);
    }
    Ok(raws)
}

fn parse_jsonl(text: &str) -> Result<Vec<RawRecord>, CorpusError> {
    let mut raws = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value =
            serde_json::from_str(line).map_err(|e| CorpusError::Parse {
                format: CorpusFormat::Jsonl,
                line: idx + 1,
                message: e.to_string(),
            })?;
        if value.get("id").and_then(|v| v.as_str()).is_none() {
            return Err(CorpusError::MissingField { field: "id", row: idx + 1 });
        }
        if value.get("original").and_then(|v| v.as_str()).is_none() {
            return Err(CorpusError::MissingField { field: "original", row: idx + 1 });
        }
        let raw: RawRecord = serde_json::from_value(value).map_err(|e| CorpusError::Parse {
            format: CorpusFormat::Jsonl,
            line: idx + 1,
            message: e.to_string(),
        })?;
        raws.push(raw);
    }
    Ok(raws)
}

/// Persist a corpus to `path`. Reloading the written file in the same format
/// reproduces the corpus exactly (ids, texts, metadata, order).
pub fn write_corpus(
    corpus: &Corpus,
    path: impl AsRef<Path>,
    format: CorpusFormat,
) -> Result<(), CorpusError> {
    let path = path.as_ref();
    let mut out: Vec<u8> = Vec::new();
    match format {
        CorpusFormat::Csv => {
            let mut writer = csv::Writer::from_writer(&mut out);
            writer
                .write_record(["id", "original", "adapted", "origin", "topic"])
                .map_err(csv_io)?;
            for doc in corpus.documents() {
                writer
                    .write_record([
                        doc.id.as_str(),
                        doc.original.as_str(),
                        doc.adapted.as_deref().unwrap_or(""),
                        doc.origin.as_deref().unwrap_or(""),
                        doc.topic.as_deref().unwrap_or(""),
                    ])
                    .map_err(csv_io)?;
            }
            writer.flush()?;
            drop(writer);
        }
        CorpusFormat::Jsonl => {
            for doc in corpus.documents() {
                let raw = RawRecord {
                    id: doc.id.clone(),
                    original: Some(doc.original.clone()),
                    adapted: doc.adapted.clone(),
                    origin: doc.origin.clone(),
                    topic: doc.topic.clone(),
                };
                serde_json::to_writer(&mut out, &raw)
                    .map_err(|e| CorpusError::Parse {
                        format: CorpusFormat::Jsonl,
                        line: 0,
                        message: e.to_string(),
                    })?;
                out.push(b'\n');
            }
        }
    }
    let mut file = fs::File::create(path)?;
    file.write_all(&out)?;
    Ok(())
}

fn csv_io(err: csv::Error) -> CorpusError {
    match err.into_kind() {
        csv::ErrorKind::Io(io) => CorpusError::Io(io),
        other => CorpusError::Parse {
            format: CorpusFormat::Csv,
            line: 0,
            message: format!("{other:?}"),
        },
    }
}

/// Which text field statistics are computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatsField {
    Original,
    Adapted,
}

/// Corpus-level summary statistics.
///
/// `avg_word_length_chars` is the mean character length over all word tokens
/// in the corpus (token mean), not the mean of per-document means.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub n_samples: usize,
    pub avg_words: f64,
    pub avg_lines: f64,
    pub avg_word_length_chars: f64,
}

/// Compute summary statistics over the chosen field.
///
/// An empty corpus yields all-zero statistics so that stats stay usable in
/// pipelines operating on filtered corpora.
pub fn corpus_stats(corpus: &Corpus, field: StatsField) -> Result<CorpusStats, CorpusError> {
    let mut texts = Vec::with_capacity(corpus.len());
    for doc in corpus.documents() {
        match field {
            StatsField::Original => texts.push(doc.original.as_str()),
            StatsField::Adapted => match &doc.adapted {
                Some(a) => texts.push(a.as_str()),
                None => return Err(CorpusError::MissingAdaptation(doc.id.clone())),
            },
        }
    }

    let n = texts.len();
    if n == 0 {
        return Ok(CorpusStats { n_samples: 0, avg_words: 0.0, avg_lines: 0.0, avg_word_length_chars: 0.0 });
    }

    let mut total_words = 0usize;
    let mut total_lines = 0usize;
    let mut total_token_chars = 0usize;
    for text in &texts {
        let tokens = tokenize_words(text);
        total_words += tokens.len();
        total_lines += line_count(text);
        total_token_chars += tokens.iter().map(|t| t.chars().count()).sum::<usize>();
    }

    Ok(CorpusStats {
        n_samples: n,
        avg_words: total_words as f64 / n as f64,
        avg_lines: total_lines as f64 / n as f64,
        avg_word_length_chars: if total_words == 0 {
            0.0
        } else {
            total_token_chars as f64 / total_words as f64
        },
    })
}

/// Selection strategies for internal validation subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubsetKind {
    Smallest,
    Random,
    Categories,
}

/// Metadata column used to group documents for a categories subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKey {
    Origin,
    Topic,
}

impl fmt::Display for GroupKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKey::Origin => write!(f, "origin"),
            GroupKey::Topic => write!(f, "topic"),
        }
    }
}

/// A subset request: which strategy, how many documents, and the strategy's
/// parameters (seed for random, grouping column for categories).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetSpec {
    pub kind: SubsetKind,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_key: Option<GroupKey>,
}

/// Build a reduced corpus according to `spec`.
///
/// - `Smallest`: the `size` documents with fewest original-text words, ties
///   broken by ascending id; output ordered by (word count, id).
/// - `Random`: a seeded uniform sample without replacement drawn over the
///   sorted id list (membership is independent of document order); output
///   ordered by original corpus position.
/// - `Categories`: round robin across the distinct values of `group_key`
///   (groups visited in sorted order, each group sorted by id) until `size`
///   documents are selected, so every group with members is represented.
pub fn build_subset(corpus: &Corpus, spec: &SubsetSpec) -> Result<Corpus, CorpusError> {
    if spec.size == 0 {
        return Err(CorpusError::ZeroSize);
    }
    if spec.size > corpus.len() {
        return Err(CorpusError::SizeExceedsCorpus { requested: spec.size, available: corpus.len() });
    }

    let selected: Vec<Document> = match spec.kind {
        SubsetKind::Smallest => {
            let mut docs: Vec<&Document> = corpus.documents().iter().collect();
            docs.sort_by(|a, b| a.word_count().cmp(&b.word_count()).then_with(|| a.id.cmp(&b.id)));
            docs.into_iter().take(spec.size).cloned().collect()
        }
        SubsetKind::Random => {
            let seed = spec.seed.ok_or(CorpusError::MissingSeed)?;
            let mut ids: Vec<&str> = corpus.documents().iter().map(|d| d.id.as_str()).collect();
            ids.sort_unstable();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let chosen = rand::seq::index::sample(&mut rng, ids.len(), spec.size);
            let chosen_ids: HashSet<&str> = chosen.iter().map(|i| ids[i]).collect();
            corpus
                .documents()
                .iter()
                .filter(|d| chosen_ids.contains(d.id.as_str()))
                .cloned()
                .collect()
        }
        SubsetKind::Categories => {
            let key = spec.group_key.unwrap_or(GroupKey::Origin);
            let mut groups: BTreeMap<&str, Vec<&Document>> = BTreeMap::new();
            for doc in corpus.documents() {
                let value = match key {
                    GroupKey::Origin => doc.origin.as_deref(),
                    GroupKey::Topic => doc.topic.as_deref(),
                };
                match value {
                    Some(v) => groups.entry(v).or_default().push(doc),
                    None => return Err(CorpusError::MissingGroupKey(doc.id.clone(), key)),
                }
            }
            for members in groups.values_mut() {
                members.sort_by(|a, b| a.id.cmp(&b.id));
            }
            let mut picked = Vec::with_capacity(spec.size);
            let mut depth = 0usize;
            while picked.len() < spec.size {
                let mut advanced = false;
                for members in groups.values() {
                    if picked.len() == spec.size {
                        break;
                    }
                    if let Some(doc) = members.get(depth) {
                        picked.push((*doc).clone());
                        advanced = true;
                    }
                }
                if !advanced {
                    break;
                }
                depth += 1;
            }
            picked
        }
    };

    Corpus::from_documents(selected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    fn doc(id: &str, original: &str) -> Document {
        Document::new(id, original).unwrap()
    }

    fn toy_corpus() -> Corpus {
        Corpus::from_documents(vec![
            doc("1", "hola mundo"),
            doc("2", "adiós"),
        ])
        .unwrap()
    }

    #[test]
    fn load_csv_basic() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "id,original,adapted,origin,topic").unwrap();
        writeln!(file, "1,hola mundo,,,").unwrap();
        writeln!(file, "2,adiós,,,").unwrap();
        let corpus = load_corpus(file.path(), CorpusFormat::Csv).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.documents()[0].word_count(), 2);
        assert_eq!(corpus.documents()[1].word_count(), 1);
    }

    #[test]
    fn load_csv_duplicate_id() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "id,original").unwrap();
        writeln!(file, "7,uno").unwrap();
        writeln!(file, "7,dos").unwrap();
        let err = load_corpus(file.path(), CorpusFormat::Csv).unwrap_err();
        assert!(matches!(err, CorpusError::DuplicateId(id) if id == "7"));
    }

    #[test]
    fn load_jsonl_missing_original() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "{}", r#"{"id":"1","topic":"x"}"#).unwrap();
        let err = load_corpus(file.path(), CorpusFormat::Jsonl).unwrap_err();
        match err {
            CorpusError::MissingField { field, row } => {
                assert_eq!(field, "original");
                assert_eq!(row, 1);
            }
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn load_rejects_non_utf8() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(b"id,original\n1,hol\x018a\xFF\n").unwrap();
        let err = load_corpus(file.path(), CorpusFormat::Csv).unwrap_err();
        assert!(matches!(err, CorpusError::EncodingError(_)));
    }

    #[test]
    fn load_rejects_empty() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "id,original").unwrap();
        let err = load_corpus(file.path(), CorpusFormat::Csv).unwrap_err();
        assert!(matches!(err, CorpusError::EmptyCorpus));
    }

    #[test]
    fn roundtrip_with_newlines_and_quotes() {
        let tricky = Document::new("q1", "línea \"uno\",\ncon salto").unwrap()
            .with_adapted("texto, \"citado\"")
            .with_origin("Alicante");
        let corpus = Corpus::from_documents(vec![tricky, doc("q2", "normal")]).unwrap();
        for format in [CorpusFormat::Csv, CorpusFormat::Jsonl] {
            let file = tempfile::NamedTempFile::new().unwrap();
            write_corpus(&corpus, file.path(), format).unwrap();
            let mut reloaded = load_corpus(file.path(), format).unwrap();
            reloaded.source_path = None;
            assert_eq!(reloaded, corpus, "round trip failed for {format}");
        }
    }

    #[test]
    fn write_to_unwritable_path_is_io_error() {
        let corpus = toy_corpus();
        let err = write_corpus(&corpus, "/nonexistent-dir/x.csv", CorpusFormat::Csv).unwrap_err();
        assert!(matches!(err, CorpusError::Io(_)));
    }

    #[test]
    fn stats_single_document() {
        let corpus = Corpus::from_documents(vec![doc("1", "hola mundo")]).unwrap();
        let stats = corpus_stats(&corpus, StatsField::Original).unwrap();
        assert_eq!(stats.n_samples, 1);
        assert_eq!(stats.avg_words, 2.0);
        assert_eq!(stats.avg_lines, 1.0);
        assert_eq!(stats.avg_word_length_chars, 4.5);
    }

    #[test]
    fn stats_token_mean_not_document_mean() {
        let corpus = Corpus::from_documents(vec![doc("1", "a b c"), doc("2", "dd ee")]).unwrap();
        let stats = corpus_stats(&corpus, StatsField::Original).unwrap();
        assert_eq!(stats.avg_words, 2.5);
        assert_eq!(stats.avg_word_length_chars, 1.4);
    }

    #[test]
    fn stats_empty_corpus_is_all_zero() {
        let corpus = Corpus::default();
        let stats = corpus_stats(&corpus, StatsField::Original).unwrap();
        assert_eq!(stats.n_samples, 0);
        assert_eq!(stats.avg_words, 0.0);
        assert_eq!(stats.avg_lines, 0.0);
        assert_eq!(stats.avg_word_length_chars, 0.0);
    }

    #[test]
    fn stats_adapted_requires_adaptations() {
        let corpus = toy_corpus();
        let err = corpus_stats(&corpus, StatsField::Adapted).unwrap_err();
        assert!(matches!(err, CorpusError::MissingAdaptation(_)));
    }

    #[test]
    fn stats_invariant_under_reordering() {
        let a = Corpus::from_documents(vec![doc("1", "uno dos"), doc("2", "tres")]).unwrap();
        let b = Corpus::from_documents(vec![doc("2", "tres"), doc("1", "uno dos")]).unwrap();
        assert_eq!(
            corpus_stats(&a, StatsField::Original).unwrap(),
            corpus_stats(&b, StatsField::Original).unwrap()
        );
    }

    #[test]
    fn subset_smallest_orders_by_count() {
        let corpus = Corpus::from_documents(vec![
            doc("a", "uno dos tres cuatro cinco"),
            doc("b", "uno dos"),
            doc("c", "uno dos tres cuatro cinco seis siete ocho nueve"),
        ])
        .unwrap();
        let spec = SubsetSpec { kind: SubsetKind::Smallest, size: 2, seed: None, group_key: None };
        let subset = build_subset(&corpus, &spec).unwrap();
        let counts: Vec<usize> = subset.documents().iter().map(|d| d.word_count()).collect();
        assert_eq!(counts, vec![2, 5]);
    }

    #[test]
    fn subset_random_is_deterministic() {
        let docs: Vec<Document> =
            (0..20).map(|i| doc(&format!("d{i:02}"), "texto de prueba")).collect();
        let corpus = Corpus::from_documents(docs).unwrap();
        let spec = SubsetSpec { kind: SubsetKind::Random, size: 5, seed: Some(42), group_key: None };
        let first = build_subset(&corpus, &spec).unwrap();
        let second = build_subset(&corpus, &spec).unwrap();
        let ids = |c: &Corpus| c.documents().iter().map(|d| d.id.clone()).collect::<Vec<_>>();
        assert_eq!(ids(&first), ids(&second));
    }

    #[test]
    fn subset_random_requires_seed() {
        let corpus = toy_corpus();
        let spec = SubsetSpec { kind: SubsetKind::Random, size: 1, seed: None, group_key: None };
        assert!(matches!(build_subset(&corpus, &spec), Err(CorpusError::MissingSeed)));
    }

    #[test]
    fn subset_random_membership_ignores_document_order() {
        let docs: Vec<Document> =
            (0..30).map(|i| doc(&format!("d{i:02}"), "texto de prueba")).collect();
        let mut reversed = docs.clone();
        reversed.reverse();
        let a = Corpus::from_documents(docs).unwrap();
        let b = Corpus::from_documents(reversed).unwrap();
        let spec = SubsetSpec { kind: SubsetKind::Random, size: 7, seed: Some(9), group_key: None };
        let ids = |c: &Corpus| {
            let mut v: Vec<String> =
                build_subset(c, &spec).unwrap().documents().iter().map(|d| d.id.clone()).collect();
            v.sort();
            v
        };
        assert_eq!(ids(&a), ids(&b));
    }

    #[test]
    fn subset_categories_round_robin() {
        let corpus = Corpus::from_documents(vec![
            doc("1", "texto uno").with_origin("A"),
            doc("2", "texto dos").with_origin("A"),
            doc("3", "texto tres").with_origin("B"),
            doc("4", "texto cuatro").with_origin("B"),
        ])
        .unwrap();
        let spec = SubsetSpec {
            kind: SubsetKind::Categories,
            size: 2,
            seed: None,
            group_key: Some(GroupKey::Origin),
        };
        let subset = build_subset(&corpus, &spec).unwrap();
        let origins: Vec<&str> =
            subset.documents().iter().map(|d| d.origin.as_deref().unwrap()).collect();
        assert_eq!(origins, vec!["A", "B"]);
    }

    #[test]
    fn subset_categories_missing_key() {
        let corpus = toy_corpus();
        let spec = SubsetSpec {
            kind: SubsetKind::Categories,
            size: 1,
            seed: None,
            group_key: Some(GroupKey::Topic),
        };
        assert!(matches!(build_subset(&corpus, &spec), Err(CorpusError::MissingGroupKey(_, _))));
    }

    #[test]
    fn subset_size_exceeds_corpus() {
        let corpus = toy_corpus();
        let spec = SubsetSpec { kind: SubsetKind::Smallest, size: 3, seed: None, group_key: None };
        assert!(matches!(build_subset(&corpus, &spec), Err(CorpusError::SizeExceedsCorpus { .. })));
    }
}
