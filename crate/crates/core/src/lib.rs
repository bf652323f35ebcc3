//! Plain-language adaptation toolkit for Spanish administrative texts.
//!
//! The crate is organized around the stages of a simplification run:
//!
//! - [`corpus`]: loading, persisting, summarizing and subsetting corpora of
//!   (original, adaptation) text pairs.
//! - [`textnorm`]: deterministic pre/postprocessing — humanizing times and
//!   money amounts, and protecting fragile numeric expressions across the
//!   model round trip.
//! - [`prompts`]: the three prompt strategies (P1 two-step, P2 unified,
//!   P3 category-based) rendered from versioned template files.
//! - [`llm`]: a uniform chat-completion backend interface with a live HTTP
//!   client and a record/replay store for offline, reproducible runs.
//! - [`metrics`]: the evaluation metrics — Fernández-Huerta readability
//!   (rule-based Spanish syllabification plus sentence segmentation) and
//!   SIM, the average of bag-of-words and embedding cosine similarity.
//! - [`pipeline`]: batch orchestration, evaluation reports and table
//!   rendering used by the `llano` CLI.

pub mod corpus;
pub mod llm;
pub mod metrics;
pub mod pipeline;
pub mod prompts;
pub mod textnorm;
pub mod tokenize;

pub use corpus::{Corpus, CorpusStats, Document, SubsetKind, SubsetSpec};
pub use llm::{AdaptationResult, Backend, GenerationRequest, GenerationResponse, ReplayStore};
pub use metrics::{Embedder, PairReport, SimScore};
pub use prompts::{Category, MessageSet, PromptPlan, Strategy, TemplateSet};
pub use textnorm::{NormalizationConfig, ProtectedText};
