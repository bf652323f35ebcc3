//! Deterministic pre/postprocessing of Spanish administrative text.
//!
//! Three rule families, applied in a fixed order (times, money, protection)
//! so that protection never hides a normalizable form:
//!
//! - clock times ("20:00 horas") become natural phrases ("las 8 de la tarde")
//! - decimal money amounts ("13.50 EUR") become spoken forms ("13 con 50 euros")
//! - fragile numeric expressions (percentages, years, date ranges, large
//!   numbers) are swapped for opaque sentinels `⟦NUMk⟧` before the model sees
//!   the text, and restored afterwards
//!
//! Postprocessing re-applies the time and money rules because models
//! occasionally undo them, collapses blank-line runs, and strips echoed
//! instruction headers.

use once_cell::sync::Lazy;
use regex::{Captures, Regex};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TextNormError {
    #[error("sentinel ⟦NUM{0}⟧ has no entry in the span table")]
    OrphanSentinel(u32),
    #[error("input already contains a ⟦NUMk⟧ sentinel")]
    SentinelCollision,
    #[error("period map must cover all 24 hours exactly once (hour {0} is {1})")]
    PeriodMapGap(u8, &'static str),
}

/// What kind of numeric expression a protected span held.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NumericKind {
    Percentage,
    Year,
    DateRange,
    LargeNumber,
}

/// One protected span: the sentinel id, the exact surface it replaced, and
/// its classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtectedSpan {
    pub sentinel_id: u32,
    pub original_surface: String,
    pub kind: NumericKind,
}

/// Text with sentinel tokens plus the span table needed to restore them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProtectedText {
    pub text: String,
    pub spans: Vec<ProtectedSpan>,
}

/// A non-fatal issue observed while restoring sentinels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "sentinel_id")]
pub enum RestoreWarning {
    /// The model emitted a sentinel we never issued (or corrupted its id).
    OrphanSentinel(u32),
    /// A protected span no longer appears in the model output.
    DroppedSentinel(u32),
}

impl std::fmt::Display for RestoreWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RestoreWarning::OrphanSentinel(id) => write!(f, "orphan sentinel ⟦NUM{id}⟧"),
            RestoreWarning::DroppedSentinel(id) => write!(f, "dropped sentinel ⟦NUM{id}⟧"),
        }
    }
}

/// One entry of the hour → day-period table: hours `from..=to` map to a
/// connector phrase like "de la tarde".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodEntry {
    pub from: u8,
    pub to: u8,
    pub phrase: String,
}

/// Toggles for the normalization stages plus the day-period table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct NormalizationConfig {
    pub enable_time: bool,
    pub enable_money: bool,
    pub enable_protection: bool,
    pub period_map: Vec<PeriodEntry>,
}

impl Default for NormalizationConfig {
    fn default() -> Self {
        let entry = |from: u8, to: u8, phrase: &str| PeriodEntry { from, to, phrase: phrase.to_string() };
        Self {
            enable_time: true,
            enable_money: true,
            enable_protection: true,
            period_map: vec![
                entry(0, 5, "de la madrugada"),
                entry(6, 11, "de la mañana"),
                entry(12, 12, "del mediodía"),
                entry(13, 20, "de la tarde"),
                entry(21, 23, "de la noche"),
            ],
        }
    }
}

impl NormalizationConfig {
    /// Check that the period map covers each of the 24 hours exactly once.
    pub fn validate(&self) -> Result<(), TextNormError> {
        let mut covered = [0u8; 24];
        for entry in &self.period_map {
            for hour in entry.from..=entry.to.min(23) {
                covered[hour as usize] += 1;
            }
        }
        for (hour, count) in covered.iter().enumerate() {
            match count {
                0 => return Err(TextNormError::PeriodMapGap(hour as u8, "uncovered")),
                1 => {}
                _ => return Err(TextNormError::PeriodMapGap(hour as u8, "covered twice")),
            }
        }
        Ok(())
    }

    fn period_phrase(&self, hour: u8) -> &str {
        self.period_map
            .iter()
            .find(|e| (e.from..=e.to).contains(&hour))
            .map(|e| e.phrase.as_str())
            .unwrap_or("de la tarde")
    }
}

static TIME_RE: Lazy<Regex> = Lazy::new(|| {
    // Optional preceding article "la/las" is absorbed so "a las 20:00 horas"
    // becomes "a las 8 de la tarde" rather than "a las las 8 …".
    Regex::new(r"(?i)\b(?:(?P<art>las?)\s+)?(?P<h>\d{1,2}):(?P<m>\d{2})(?P<unit>\s*(?:horas\b|hs\.?|h\.(?:\s|$)|h\b))?").unwrap()
});

/// Rewrite clock times as natural Spanish phrases.
///
/// "20:00 horas" → "las 8 de la tarde"; minutes render as "y cuarto" (15),
/// "y media" (30) or "y M minutos". Invalid times (hours > 23, minutes > 59)
/// are left untouched.
pub fn normalize_time(text: &str, config: &NormalizationConfig) -> String {
    TIME_RE
        .replace_all(text, |caps: &Captures| {
            let hour: u32 = caps["h"].parse().unwrap_or(99);
            let minute: u32 = caps["m"].parse().unwrap_or(99);
            if hour > 23 || minute > 59 {
                return caps[0].to_string();
            }
            let mut h12 = hour % 12;
            if h12 == 0 {
                h12 = 12;
            }
            let article = if h12 == 1 { "la" } else { "las" };
            let minutes = match minute {
                0 => String::new(),
                15 => " y cuarto".to_string(),
                30 => " y media".to_string(),
                m => format!(" y {m} minutos"),
            };
            let period = config.period_phrase(hour as u8);
            // Trailing whitespace captured by a bare "h." unit is put back.
            let tail = caps
                .name("unit")
                .map(|u| if u.as_str().ends_with(char::is_whitespace) { " " } else { "" })
                .unwrap_or("");
            format!("{article} {h12}{minutes} {period}{tail}")
        })
        .into_owned()
}

static MONEY_RE: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r"(?i)\b(?P<int>\d{1,3}(?:\.\d{3})+|\d+)[.,](?P<cents>\d{2})\s*(?P<unit>EUR\b|euros?\b|€)").unwrap()
});

/// Rewrite decimal euro amounts as spoken forms: "13.50 EUR" → "13 con 50
/// euros". Whole amounts ("200 euros") are left unchanged; thousands
/// separators in the integer part are dropped ("1.234,56 €" → "1234 con 56
/// euros").
pub fn normalize_money(text: &str) -> String {
    MONEY_RE
        .replace_all(text, |caps: &Captures| {
            let int_part: String = caps["int"].chars().filter(char::is_ascii_digit).collect();
            let cents = &caps["cents"];
            format!("{int_part} con {cents} euros")
        })
        .into_owned()
}

const MONTHS: &str = "enero|febrero|marzo|abril|mayo|junio|julio|agosto|septiembre|setiembre|octubre|noviembre|diciembre";

static SENTINEL_RE: Lazy<Regex> = Lazy::new(|| Regex::new(r"⟦NUM(\d+)⟧").unwrap());
static PERCENT_RE: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"\d+(?:[.,]\d+)?\s?%").unwrap());
static DATE_RANGE_RE: Lazy<Regex> = Lazy::new(|| {
    Regex::new(&format!(
        r"(?i)\b\d{{1,2}}\s*(?:al\s+|[–—-]\s*)\d{{1,2}}\s+de\s+(?:{MONTHS})\b"
    ))
    .unwrap()
});
static YEAR_RE: Lazy<Regex> = Lazy::new(|| Regex::new(r"\b(?:19|20)\d{2}\b").unwrap());
static LARGE_NUMBER_RE: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"\b\d{1,3}(?:\.\d{3})+\b|\b\d{5,}\b").unwrap());

fn sentinel(id: u32) -> String {
    format!("⟦NUM{id}⟧")
}

/// Replace fragile numeric expressions with `⟦NUMk⟧` sentinels, left to
/// right, recording each surface in the span table.
///
/// Match classes in priority order: percentage, date range, year (standalone
/// 1900–2099), large number (≥5 contiguous digits or dot-separated digit
/// groups). Input that already contains a sentinel is rejected.
pub fn protect_numerics(text: &str) -> Result<ProtectedText, TextNormError> {
    if SENTINEL_RE.is_match(text) {
        return Err(TextNormError::SentinelCollision);
    }

    // (start, end, kind) of accepted matches; earlier classes win overlaps.
    let mut claimed: Vec<(usize, usize, NumericKind)> = Vec::new();
    let classes: [(&Regex, NumericKind); 4] = [
        (&PERCENT_RE, NumericKind::Percentage),
        (&DATE_RANGE_RE, NumericKind::DateRange),
        (&YEAR_RE, NumericKind::Year),
        (&LARGE_NUMBER_RE, NumericKind::LargeNumber),
    ];
    for (re, kind) in classes {
        for m in re.find_iter(text) {
            let overlaps = claimed.iter().any(|&(s, e, _)| m.start() < e && s < m.end());
            if !overlaps {
                claimed.push((m.start(), m.end(), kind));
            }
        }
    }
    claimed.sort_by_key(|&(start, _, _)| start);

    let mut out = String::with_capacity(text.len());
    let mut spans = Vec::with_capacity(claimed.len());
    let mut cursor = 0usize;
    for (idx, (start, end, kind)) in claimed.into_iter().enumerate() {
        let id = idx as u32;
        out.push_str(&text[cursor..start]);
        out.push_str(&sentinel(id));
        spans.push(ProtectedSpan {
            sentinel_id: id,
            original_surface: text[start..end].to_string(),
            kind,
        });
        cursor = end;
    }
    out.push_str(&text[cursor..]);

    Ok(ProtectedText { text: out, spans })
}

/// Restore all sentinels in `protected.text` from the span table.
///
/// A sentinel with no span entry is an error (the model corrupted a token);
/// a span whose sentinel no longer appears is reported as a warning and
/// restoration proceeds.
pub fn restore_numerics(protected: &ProtectedText) -> Result<(String, Vec<RestoreWarning>), TextNormError> {
    for caps in SENTINEL_RE.captures_iter(&protected.text) {
        let id: u32 = caps[1].parse().map_err(|_| TextNormError::SentinelCollision)?;
        if !protected.spans.iter().any(|s| s.sentinel_id == id) {
            return Err(TextNormError::OrphanSentinel(id));
        }
    }
    Ok(restore_lenient(&protected.text, &protected.spans))
}

/// Restore every sentinel that has a span entry, leaving unknown sentinels in
/// place. Never fails; all anomalies come back as warnings.
pub fn restore_lenient(text: &str, spans: &[ProtectedSpan]) -> (String, Vec<RestoreWarning>) {
    let mut warnings = Vec::new();
    let restored = SENTINEL_RE
        .replace_all(text, |caps: &Captures| {
            let id: u32 = caps[1].parse().unwrap_or(u32::MAX);
            match spans.iter().find(|s| s.sentinel_id == id) {
                Some(span) => span.original_surface.clone(),
                None => {
                    warnings.push(RestoreWarning::OrphanSentinel(id));
                    caps[0].to_string()
                }
            }
        })
        .into_owned();
    for span in spans {
        if !text.contains(&sentinel(span.sentinel_id)) {
            warnings.push(RestoreWarning::DroppedSentinel(span.sentinel_id));
        }
    }
    (restored, warnings)
}

/// Preprocess a document for generation: normalize times and money, then
/// protect fragile numerics. Stage order is fixed (time, money, protection)
/// so protection never hides a normalizable form; each stage can be toggled
/// off in the config.
pub fn preprocess(text: &str, config: &NormalizationConfig) -> Result<ProtectedText, TextNormError> {
    let mut current = text.to_string();
    if config.enable_time {
        current = normalize_time(&current, config);
    }
    if config.enable_money {
        current = normalize_money(&current);
    }
    if config.enable_protection {
        protect_numerics(&current)
    } else {
        Ok(ProtectedText { text: current, spans: Vec::new() })
    }
}

/// Leading lines a model sometimes prepends when it echoes the instructions;
/// they are stripped before restoring sentinels.
static PREAMBLE_RE: Lazy<Regex> = Lazy::new(|| {
    Regex::new(
        r"(?i)^\s*(?:texto\s+(?:adaptado|reducido|reescrito|simplificado|en\s+lenguaje\s+(?:claro|llano))|versión\s+(?:adaptada|simplificada|reducida)|adaptación|respuesta|resultado|salida|aquí\s+tienes.*|a\s+continuación.*)\s*[:.]?\s*$",
    )
    .unwrap()
});

/// Postprocess model output: strip echoed instruction headers, restore
/// protected sentinels, re-apply the time and money rules (models sometimes
/// reverse them), trim trailing spaces and collapse blank-line runs.
///
/// Restoration anomalies are returned as warnings, never as errors: losing
/// one protected token must not abort a long batch run.
pub fn postprocess(
    llm_output: &str,
    spans: &[ProtectedSpan],
    config: &NormalizationConfig,
) -> (String, Vec<RestoreWarning>) {
    let mut lines: Vec<&str> = llm_output.lines().collect();
    let mut skip = 0usize;
    for line in &lines {
        if line.trim().is_empty() || PREAMBLE_RE.is_match(line) {
            skip += 1;
        } else {
            break;
        }
    }
    lines.drain(..skip);
    let body = lines.join("\n");

    let (mut restored, warnings) = restore_lenient(&body, spans);
    if config.enable_time {
        restored = normalize_time(&restored, config);
    }
    if config.enable_money {
        restored = normalize_money(&restored);
    }

    let trimmed_lines: Vec<&str> = restored.lines().map(str::trim_end).collect();
    let mut out = String::with_capacity(restored.len());
    let mut blank_run = 0usize;
    for line in trimmed_lines {
        if line.is_empty() {
            blank_run += 1;
            continue;
        }
        if !out.is_empty() {
            out.push('\n');
            if blank_run > 0 {
                out.push('\n');
            }
        }
        blank_run = 0;
        out.push_str(line);
    }

    (out, warnings)
}
