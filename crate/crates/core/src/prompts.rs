//! The three prompt strategies, rendered from versioned template files.
//!
//! Strategies follow the shared task write-up: P1 is a two-step pipeline
//! (structural reduction, then plain-language rewriting), P2 a single unified
//! prompt, and P3 classifies the text into one of four categories and adds
//! category-specific adjustments to a common rule block.
//!
//! Templates live under the repository's `prompts/` directory as plain text
//! with a front-matter block (`strategy`, `step`, `category`) and role
//! sections `<<system>>` / `<<user>>`; the working text replaces a single
//! `{{TEXT}}` placeholder. The default set is embedded at build time and can
//! be overridden from a directory at run time; SHA-256 checksums of whatever
//! set is active are recorded in run manifests.
//!
//! Wording note: only the P2 instruction bullets are quoted from the task
//! system description; all other template text is a reconstruction authored
//! for this artifact.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use once_cell::sync::Lazy;
use regex::Regex;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::tokenize::word_count;

#[derive(Debug, thiserror::Error)]
pub enum PromptError {
    #[error("input text is empty")]
    EmptyText,
    #[error("template `{name}`: {message}")]
    BadTemplate { name: String, message: String },
    #[error("template `{0}` is missing from the template set")]
    MissingTemplate(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// The three prompt strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Strategy {
    P1,
    P2,
    P3,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::P1 => write!(f, "P1"),
            Strategy::P2 => write!(f, "P2"),
            Strategy::P3 => write!(f, "P3"),
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "P1" => Ok(Strategy::P1),
            "P2" => Ok(Strategy::P2),
            "P3" => Ok(Strategy::P3),
            other => Err(format!("unknown strategy `{other}` (expected P1, P2 or P3)")),
        }
    }
}

/// The four text categories used by strategy P3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    EventListing,
    EconomicNotice,
    ShortNews,
    InstitutionalNote,
}

impl Category {
    pub const ALL: [Category; 4] = [
        Category::EventListing,
        Category::EconomicNotice,
        Category::ShortNews,
        Category::InstitutionalNote,
    ];

    fn template_key(self) -> &'static str {
        match self {
            Category::EventListing => "event_listing",
            Category::EconomicNotice => "economic_notice",
            Category::ShortNews => "short_news",
            Category::InstitutionalNote => "institutional_note",
        }
    }
}

impl fmt::Display for Category {
    fmt_display_via_key!();
}

macro_rules! fmt_display_via_key {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{}", self.template_key())
        }
    };
}
use fmt_display_via_key;

/// One system + one user message, the unit sent to a backend per step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MessageSet {
    pub system: String,
    pub user: String,
}

/// P1's two stages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum P1Stage {
    Reduce,
    Rewrite,
}

/// Which template a plan step renders with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Reduce,
    Rewrite,
    Unified,
    Categorized(Category),
}

impl StepKind {
    pub fn label(&self) -> String {
        match self {
            StepKind::Reduce => "reduce".to_string(),
            StepKind::Rewrite => "rewrite".to_string(),
            StepKind::Unified => "unified".to_string(),
            StepKind::Categorized(cat) => format!("categorized:{cat}"),
        }
    }
}

/// One step of a plan. `messages` is `None` while the step is pending, i.e.
/// its working text only becomes known after the previous step executes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanStep {
    pub kind: StepKind,
    pub messages: Option<MessageSet>,
}

/// An ordered list of message sets realizing one strategy for one document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptPlan {
    pub strategy: Strategy,
    pub steps: Vec<PlanStep>,
    pub category: Option<Category>,
}

#[derive(Debug, Clone)]
struct Template {
    system: String,
    user: Option<String>,
}

/// A loaded, validated set of prompt templates plus their checksums.
#[derive(Debug, Clone)]
pub struct TemplateSet {
    p1_reduce: Template,
    p1_rewrite: Template,
    p2: Template,
    p3_common: Template,
    p3_categories: BTreeMap<&'static str, Template>,
    checksums: BTreeMap<String, String>,
}

const TEMPLATE_FILES: [(&str, &str); 8] = [
    ("p1_reduce.prompt", include_str!("../../../prompts/p1_reduce.prompt")),
    ("p1_rewrite.prompt", include_str!("../../../prompts/p1_rewrite.prompt")),
    ("p2.prompt", include_str!("../../../prompts/p2.prompt")),
    ("p3_common.prompt", include_str!("../../../prompts/p3_common.prompt")),
    ("p3_event_listing.prompt", include_str!("../../../prompts/p3_event_listing.prompt")),
    ("p3_economic_notice.prompt", include_str!("../../../prompts/p3_economic_notice.prompt")),
    ("p3_short_news.prompt", include_str!("../../../prompts/p3_short_news.prompt")),
    ("p3_institutional_note.prompt", include_str!("../../../prompts/p3_institutional_note.prompt")),
];

impl TemplateSet {
    /// The template set embedded at build time from `prompts/`.
    pub fn builtin() -> Self {
        Self::from_sources(TEMPLATE_FILES.iter().map(|(n, c)| (n.to_string(), c.to_string())))
            .expect("embedded templates are validated by tests")
    }

    /// Load templates from a directory containing the eight `.prompt` files.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Self, PromptError> {
        let dir = dir.as_ref();
        let mut sources = Vec::new();
        for (name, _) in TEMPLATE_FILES {
            let path = dir.join(name);
            let content = std::fs::read_to_string(&path)?;
            sources.push((name.to_string(), content));
        }
        Self::from_sources(sources.into_iter())
    }

    fn from_sources(sources: impl Iterator<Item = (String, String)>) -> Result<Self, PromptError> {
        let mut parsed: BTreeMap<String, Template> = BTreeMap::new();
        let mut checksums = BTreeMap::new();
        for (name, content) in sources {
            checksums.insert(name.clone(), sha256_hex(content.as_bytes()));
            parsed.insert(name.clone(), parse_template(&name, &content)?);
        }

        let mut take = |name: &str| {
            parsed
                .remove(name)
                .ok_or_else(|| PromptError::MissingTemplate(name.to_string()))
        };

        let p1_reduce = take("p1_reduce.prompt")?;
        let p1_rewrite = take("p1_rewrite.prompt")?;
        let p2 = take("p2.prompt")?;
        let p3_common = take("p3_common.prompt")?;
        let mut p3_categories = BTreeMap::new();
        for category in Category::ALL {
            let key = category.template_key();
            let template = take(&format!("p3_{key}.prompt"))?;
            p3_categories.insert(key, template);
        }

        for (name, template, needs_user) in [
            ("p1_reduce.prompt", &p1_reduce, true),
            ("p1_rewrite.prompt", &p1_rewrite, true),
            ("p2.prompt", &p2, true),
            ("p3_common.prompt", &p3_common, true),
        ] {
            if needs_user && template.user.is_none() {
                return Err(PromptError::BadTemplate {
                    name: name.to_string(),
                    message: "missing <<user>> section".to_string(),
                });
            }
        }

        Ok(Self { p1_reduce, p1_rewrite, p2, p3_common, p3_categories, checksums })
    }

    /// SHA-256 checksums of the template files, keyed by file name.
    pub fn checksums(&self) -> &BTreeMap<String, String> {
        &self.checksums
    }

    fn instantiate(&self, template: &Template, text: &str) -> MessageSet {
        let user = template
            .user
            .as_deref()
            .unwrap_or("{{TEXT}}")
            .replace("{{TEXT}}", text);
        MessageSet { system: template.system.clone(), user }
    }

    /// Render one of P1's two stages. The rewrite stage expects the reduce
    /// stage's output as its text.
    pub fn render_p1(&self, text: &str, stage: P1Stage) -> Result<MessageSet, PromptError> {
        require_text(text)?;
        let template = match stage {
            P1Stage::Reduce => &self.p1_reduce,
            P1Stage::Rewrite => &self.p1_rewrite,
        };
        Ok(self.instantiate(template, text))
    }

    /// Render the unified P2 prompt.
    pub fn render_p2(&self, text: &str) -> Result<MessageSet, PromptError> {
        require_text(text)?;
        Ok(self.instantiate(&self.p2, text))
    }

    /// Render the P3 prompt for `category`: the shared rule block followed by
    /// the category-specific block.
    pub fn render_p3(&self, text: &str, category: Category) -> Result<MessageSet, PromptError> {
        require_text(text)?;
        let fragment = &self.p3_categories[category.template_key()];
        let mut base = self.instantiate(&self.p3_common, text);
        base.system = format!("{}\n\n{}", base.system, fragment.system);
        Ok(base)
    }

    /// Render the message set for a plan step, used to fill pending steps
    /// once the working text is known.
    pub fn render_step(&self, kind: StepKind, text: &str) -> Result<MessageSet, PromptError> {
        match kind {
            StepKind::Reduce => self.render_p1(text, P1Stage::Reduce),
            StepKind::Rewrite => self.render_p1(text, P1Stage::Rewrite),
            StepKind::Unified => self.render_p2(text),
            StepKind::Categorized(category) => self.render_p3(text, category),
        }
    }

    /// Build the plan for `strategy` over `text`.
    ///
    /// P1 yields two steps with the second pending (its text is the first
    /// step's output); P2 and P3 yield a single ready step; P3 records the
    /// classified category.
    pub fn plan(&self, strategy: Strategy, text: &str) -> Result<PromptPlan, PromptError> {
        require_text(text)?;
        let plan = match strategy {
            Strategy::P1 => PromptPlan {
                strategy,
                steps: vec![
                    PlanStep {
                        kind: StepKind::Reduce,
                        messages: Some(self.render_p1(text, P1Stage::Reduce)?),
                    },
                    PlanStep { kind: StepKind::Rewrite, messages: None },
                ],
                category: None,
            },
            Strategy::P2 => PromptPlan {
                strategy,
                steps: vec![PlanStep {
                    kind: StepKind::Unified,
                    messages: Some(self.render_p2(text)?),
                }],
                category: None,
            },
            Strategy::P3 => {
                let category = classify_category(text);
                PromptPlan {
                    strategy,
                    steps: vec![PlanStep {
                        kind: StepKind::Categorized(category),
                        messages: Some(self.render_p3(text, category)?),
                    }],
                    category: Some(category),
                }
            }
        };
        Ok(plan)
    }
}

fn require_text(text: &str) -> Result<(), PromptError> {
    if text.trim().is_empty() {
        Err(PromptError::EmptyText)
    } else {
        Ok(())
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("{:x}", hasher.finalize())
}

fn parse_template(name: &str, content: &str) -> Result<Template, PromptError> {
    let bad = |message: &str| PromptError::BadTemplate {
        name: name.to_string(),
        message: message.to_string(),
    };

    let rest = content
        .strip_prefix("---\n")
        .ok_or_else(|| bad("missing front-matter opening `---`"))?;
    let (_front, body) = rest
        .split_once("\n---\n")
        .ok_or_else(|| bad("missing front-matter closing `---`"))?;

    let mut system: Option<String> = None;
    let mut user: Option<String> = None;
    let mut current: Option<&str> = None;
    let mut buffer = String::new();

    let mut flush = |section: Option<&str>, buffer: &mut String, system: &mut Option<String>, user: &mut Option<String>| {
        if let Some(role) = section {
            let text = buffer.trim().to_string();
            match role {
                "system" => *system = Some(text),
                "user" => *user = Some(text),
                _ => {}
            }
        }
        buffer.clear();
    };

    for line in body.lines() {
        match line.trim() {
            "<<system>>" => {
                flush(current, &mut buffer, &mut system, &mut user);
                current = Some("system");
            }
            "<<user>>" => {
                flush(current, &mut buffer, &mut system, &mut user);
                current = Some("user");
            }
            _ => {
                buffer.push_str(line);
                buffer.push('\n');
            }
        }
    }
    flush(current, &mut buffer, &mut system, &mut user);

    let system = system.ok_or_else(|| bad("missing <<system>> section"))?;
    if system.matches("{{TEXT}}").count() != 0 {
        return Err(bad("the system section must not contain {{TEXT}}"));
    }
    if let Some(user_text) = &user {
        if user_text.matches("{{TEXT}}").count() != 1 {
            return Err(bad("the user section must contain {{TEXT}} exactly once"));
        }
    }

    Ok(Template { system, user })
}

/// Default word-count ceiling below which an otherwise unmarked text counts
/// as a short news item.
pub const SHORT_NEWS_MAX_WORDS: usize = 60;

static DATETIME_RES: Lazy<Vec<Regex>> = Lazy::new(|| {
    let months = "enero|febrero|marzo|abril|mayo|junio|julio|agosto|septiembre|setiembre|octubre|noviembre|diciembre";
    vec![
        Regex::new(r"\b\d{1,2}:\d{2}\b").unwrap(),
        Regex::new(r"(?i)\blas?\s+\d{1,2}(?:\s+y\s+(?:cuarto|media|\d{1,2}\s+minutos))?\s+(?:de\s+la|del)\s+(?:madrugada|mañana|mediodía|tarde|noche)\b").unwrap(),
        Regex::new(&format!(r"(?i)\b\d{{1,2}}\s+de\s+(?:{months})\b")).unwrap(),
        Regex::new(r"(?i)\b(?:lunes|martes|miércoles|jueves|viernes|sábado|domingo)\b").unwrap(),
    ]
});

static ECONOMIC_RE: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r"(?i)€|\bEUR\b|\beuros?\b|\bpresupuestos?\b|\bsubvencion(?:es)?\b|\bsubvención\b|\bayudas?\s+económicas?\b|\bimporte\b|\btasas?\b|\bfacturas?\b").unwrap()
});

static VENUE_RE: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r"(?i)\b(?:biblioteca|teatro|plaza|centro|sala|auditorio|museo|parque|polideportivo|pabellón|casa\s+de\s+cultura|salón)\b").unwrap()
});

static LIST_MARKER_RE: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?m)^\s*(?:[-–•*]|\d+[.)])\s+").unwrap());

/// Classify a text into one of the four P3 categories.
///
/// The rule table, checked in priority order (event > economic > short news >
/// institutional, which also breaks ties):
///
/// 1. `EventListing` — at least two date/time patterns (clock times,
///    verbalized times, "D de MONTH" dates, weekday names), or at least one
///    list marker together with a venue word.
/// 2. `EconomicNotice` — currency marks (€, EUR, euros) or budget vocabulary
///    (presupuesto, subvención, importe, tasas, ayudas económicas).
/// 3. `ShortNews` — fewer than [`SHORT_NEWS_MAX_WORDS`] word tokens.
/// 4. `InstitutionalNote` — everything else.
///
/// Total on any input and stable under whitespace-only edits.
pub fn classify_category(text: &str) -> Category {
    classify_category_with_threshold(text, SHORT_NEWS_MAX_WORDS)
}

/// [`classify_category`] with a custom short-news word-count ceiling.
pub fn classify_category_with_threshold(text: &str, short_news_max_words: usize) -> Category {
    let datetime_hits: usize = DATETIME_RES.iter().map(|re| re.find_iter(text).count()).sum();
    let list_markers = LIST_MARKER_RE.find_iter(text).count();
    let has_venue = VENUE_RE.is_match(text);

    if datetime_hits >= 2 || (list_markers >= 1 && has_venue) {
        return Category::EventListing;
    }
    if ECONOMIC_RE.is_match(text) {
        return Category::EconomicNotice;
    }
    if word_count(text) < short_news_max_words {
        return Category::ShortNews;
    }
    Category::InstitutionalNote
}
