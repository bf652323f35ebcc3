//! Rule-based Spanish syllable counting.
//!
//! Phonotactic rules rather than a dictionary: the count equals the number of
//! vowel nuclei, where adjacent vowels split into separate nuclei on hiatus
//! (two strong vowels, identical vowels, or an accented weak vowel next to a
//! strong one) and stay together on diphthongs/triphthongs (an unaccented
//! weak vowel combined with anything else).
//!
//! Special cases: the `u` in "que/qui/gue/gui" is silent and never a nucleus;
//! `ü` always is one; a word-final `y` after a vowel acts as the weak vowel
//! `i` ("buey", "convoy"); vowel-less tokens ("2023", "xyz") count as one.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum VowelClass {
    /// a, e, o and their accented forms.
    Strong,
    /// Unaccented i, u and ü.
    Weak,
    /// í, ú: weak vowels promoted by a written accent; they break diphthongs
    /// with strong vowels ("María", "baúl") but not with weak ones ("cuídate").
    AccentedWeak,
}

fn classify(c: char) -> Option<VowelClass> {
    match c {
        'a' | 'e' | 'o' | 'á' | 'é' | 'ó' => Some(VowelClass::Strong),
        'i' | 'u' | 'ü' => Some(VowelClass::Weak),
        'í' | 'ú' => Some(VowelClass::AccentedWeak),
        _ => None,
    }
}

/// Base letter ignoring accents, used to detect identical-vowel hiatus
/// ("leer", "chiita").
fn base_vowel(c: char) -> char {
    match c {
        'á' => 'a',
        'é' => 'e',
        'ó' => 'o',
        'í' => 'i',
        'ú' | 'ü' => 'u',
        other => other,
    }
}

fn splits(prev: (char, VowelClass), next: (char, VowelClass)) -> bool {
    use VowelClass::*;
    if base_vowel(prev.0) == base_vowel(next.0) {
        return true;
    }
    matches!(
        (prev.1, next.1),
        (Strong, Strong) | (AccentedWeak, Strong) | (Strong, AccentedWeak)
    )
}

/// Count the syllables of a single word token.
pub fn count_syllables(word: &str) -> usize {
    let chars: Vec<char> = word
        .chars()
        .flat_map(|c| c.to_lowercase())
        .collect();
    let n = chars.len();

    let mut nuclei = 0usize;
    let mut prev_vowel: Option<(char, VowelClass)> = None;

    for (idx, &c) in chars.iter().enumerate() {
        // Word-final y after a vowel (or standalone) sounds as the vowel i.
        let effective = if c == 'y' {
            let is_final = idx + 1 == n;
            let after_vowel = idx > 0 && classify(chars[idx - 1]).is_some();
            if is_final && (after_vowel || n == 1) {
                'i'
            } else {
                c
            }
        } else {
            c
        };

        let class = match classify(effective) {
            Some(class) => class,
            None => {
                prev_vowel = None;
                continue;
            }
        };

        // Silent u in que/qui/gue/gui: not a nucleus and transparent to the
        // surrounding letters (the following vowel starts fresh).
        if effective == 'u'
            && idx > 0
            && matches!(chars[idx - 1], 'q' | 'g')
            && matches!(chars.get(idx + 1), Some('e' | 'i' | 'é' | 'í'))
        {
            prev_vowel = None;
            continue;
        }

        match prev_vowel {
            Some(prev) if !splits(prev, (effective, class)) => {
                // Continues the current diphthong/triphthong.
            }
            _ => nuclei += 1,
        }
        prev_vowel = Some((effective, class));
    }

    nuclei.max(1)
}
