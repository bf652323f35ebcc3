//! Sentence boundary detection for Spanish prose.
//!
//! A boundary is a run of terminal punctuation (`.`, `!`, `?`, `…`) followed
//! by whitespace and an uppercase letter or digit, or by the end of the line.
//! Decimal points, enumerator dots ("1. Primero"), single-letter initials
//! ("J. Pérez") and a list of common Spanish abbreviations do not split.
//! Sentences never cross line boundaries: a line without terminal punctuation
//! counts as one sentence on its own.

/// Abbreviations whose trailing dot does not end a sentence (compared without
/// the dot, case-insensitively).
const ABBREVIATIONS: &[&str] = &[
    "sr", "sra", "srta", "dr", "dra", "dña", "prof", "lic", "núm", "num", "nro", "art", "arts",
    "pág", "pag", "págs", "pags", "tel", "tfno", "avda", "av", "cfr", "etc", "ud", "uds", "vd",
    "vds", "aprox", "ej", "pp", "dpto", "depto", "excmo", "excma", "ilmo", "ilma", "sto", "sta",
    "cap", "vol", "ed", "fig", "máx", "mín", "seg", "ref", "admón", "ee", "uu",
];

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?' | '…')
}

/// Characters that may close a sentence after the terminal punctuation
/// (quotes, brackets) without blocking the boundary.
fn is_closer(c: char) -> bool {
    matches!(c, '"' | '\'' | '»' | '”' | '’' | ')' | ']')
}

/// Split `text` into sentences. Whitespace-only input yields an empty list.
pub fn segment_sentences(text: &str) -> Vec<String> {
    let mut sentences = Vec::new();
    for line in text.lines() {
        split_line(line, &mut sentences);
    }
    sentences
}

fn split_line(line: &str, out: &mut Vec<String>) {
    let chars: Vec<char> = line.chars().collect();
    let n = chars.len();
    let mut start = 0usize;
    let mut i = 0usize;

    while i < n {
        let c = chars[i];
        if !is_terminal(c) {
            i += 1;
            continue;
        }

        // Consume the whole terminal run ("...", "?!").
        let mut end = i + 1;
        while end < n && is_terminal(chars[end]) {
            end += 1;
        }

        if c == '.' && end - i == 1 && !dot_is_boundary(&chars, start, i) {
            i = end;
            continue;
        }

        // Skip closing quotes/brackets, then require whitespace + an
        // uppercase letter or digit, or the end of the line.
        let mut j = end;
        while j < n && is_closer(chars[j]) {
            j += 1;
        }
        let close_end = j;
        let had_space = j < n && chars[j].is_whitespace();
        while j < n && chars[j].is_whitespace() {
            j += 1;
        }
        let boundary = if j >= n {
            true
        } else {
            had_space && (chars[j].is_uppercase() || chars[j].is_numeric())
        };

        if boundary {
            push_sentence(&chars[start..close_end], out);
            start = j;
            i = j;
        } else {
            i = end;
        }
    }

    if start < n {
        push_sentence(&chars[start..], out);
    }
}

fn push_sentence(chars: &[char], out: &mut Vec<String>) {
    let sentence: String = chars.iter().collect::<String>().trim().to_string();
    if !sentence.is_empty() {
        out.push(sentence);
    }
}

/// Decide whether the single dot at `dot` (within `chars[start..]`) can end a
/// sentence.
fn dot_is_boundary(chars: &[char], start: usize, dot: usize) -> bool {
    // Decimal point or intra-number dot: digit on both sides.
    if dot > start && dot + 1 < chars.len() {
        if chars[dot - 1].is_ascii_digit() && chars[dot + 1].is_ascii_digit() {
            return false;
        }
    }

    // Token immediately before the dot.
    let mut tok_start = dot;
    while tok_start > start && chars[tok_start - 1].is_alphanumeric() {
        tok_start -= 1;
    }
    let token: String = chars[tok_start..dot].iter().collect::<String>().to_lowercase();

    if token.is_empty() {
        return true;
    }

    // Enumerators: a bare number that opens the segment ("1. Primero").
    if token.chars().all(|c| c.is_numeric()) {
        let before: String = chars[start..tok_start].iter().collect();
        if before.trim().is_empty() {
            return false;
        }
        return true;
    }

    // Initials ("J. Pérez") and listed abbreviations.
    if token.chars().count() == 1 && token.chars().all(char::is_alphabetic) {
        return false;
    }
    !ABBREVIATIONS.contains(&token.as_str())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_split() {
        assert_eq!(segment_sentences("Hola. Adiós."), vec!["Hola.", "Adiós."]);
    }

    #[test]
    fn abbreviation_does_not_split() {
        assert_eq!(segment_sentences("El Sr. Pérez vino."), vec!["El Sr. Pérez vino."]);
        assert_eq!(
            segment_sentences("Ver pág. 4 del art. 7."),
            vec!["Ver pág. 4 del art. 7."]
        );
    }

    #[test]
    fn decimal_point_does_not_split() {
        assert_eq!(
            segment_sentences("Cuesta 13.50 EUR hoy."),
            vec!["Cuesta 13.50 EUR hoy."]
        );
    }

    #[test]
    fn initials_do_not_split() {
        assert_eq!(segment_sentences("D. José M. García habló."), vec!["D. José M. García habló."]);
    }

    #[test]
    fn enumerator_does_not_split() {
        assert_eq!(
            segment_sentences("1. Primero de todo."),
            vec!["1. Primero de todo."]
        );
    }

    #[test]
    fn question_and_exclamation() {
        assert_eq!(
            segment_sentences("¿Vienes? ¡Claro que sí! Vale."),
            vec!["¿Vienes?", "¡Claro que sí!", "Vale."]
        );
    }

    #[test]
    fn ellipsis_splits_once() {
        assert_eq!(
            segment_sentences("No sé... Quizá mañana."),
            vec!["No sé...", "Quizá mañana."]
        );
        assert_eq!(segment_sentences("Espera… Ya voy."), vec!["Espera…", "Ya voy."]);
    }

    #[test]
    fn lowercase_continuation_does_not_split() {
        assert_eq!(
            segment_sentences("El acto fue en el C.P. municipal."),
            vec!["El acto fue en el C.P. municipal."]
        );
    }

    #[test]
    fn lines_without_punctuation_are_sentences() {
        assert_eq!(
            segment_sentences("Actividades de verano\nMás información en la web"),
            vec!["Actividades de verano", "Más información en la web"]
        );
    }

    #[test]
    fn blank_input_is_empty() {
        assert!(segment_sentences("").is_empty());
        assert!(segment_sentences("   \n  ").is_empty());
    }

    #[test]
    fn closing_quotes_stay_with_sentence() {
        assert_eq!(
            segment_sentences("Dijo «hola». Luego se fue."),
            vec!["Dijo «hola».", "Luego se fue."]
        );
    }

    #[test]
    fn split_before_digit() {
        assert_eq!(
            segment_sentences("Abrimos hoy. 25 plazas libres."),
            vec!["Abrimos hoy.", "25 plazas libres."]
        );
    }
}
