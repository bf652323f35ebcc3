//! Word tokenization shared by corpus statistics and the metrics module.
//!
//! A word token is a maximal run of Unicode letters/digits, keeping internal
//! hyphens and apostrophes ("teórico-práctico", "O'Donnell"). URLs count as a
//! single token so that addresses like "www.agendacultural.org" do not inflate
//! word counts.

use once_cell::sync::Lazy;
use regex::Regex;

static TOKEN_RE: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r"(?:https?://|www\.)\S+|[\p{L}\p{N}]+(?:['’\-][\p{L}\p{N}]+)*").unwrap()
});

/// Characters trimmed from the tail of a URL match: sentence punctuation that
/// belongs to the surrounding text, not the address.
const URL_TRAILERS: &[char] = &['.', ',', ';', ':', '!', '?', ')', ']', '»', '"', '\'', '…'];

/// Split `text` into word tokens.
pub fn tokenize_words(text: &str) -> Vec<&str> {
    TOKEN_RE
        .find_iter(text)
        .map(|m| {
            let tok = m.as_str();
            if tok.starts_with("http") || tok.starts_with("www.") {
                tok.trim_end_matches(URL_TRAILERS)
            } else {
                tok
            }
        })
        .filter(|tok| !tok.is_empty())
        .collect()
}

/// Number of word tokens in `text`.
pub fn word_count(text: &str) -> usize {
    tokenize_words(text).len()
}

/// Number of non-empty lines in `text`.
pub fn line_count(text: &str) -> usize {
    text.lines().filter(|line| !line.trim().is_empty()).count()
}
