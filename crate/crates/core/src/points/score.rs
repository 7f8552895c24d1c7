//! Answer-object parsing and the scoring rubric.
//!
//! Scores: +5 correct, +1 legal formula over the right numbers that misses
//! the target, -2 invalid numbers, -3 illegal syntax or an unparsable answer
//! object. Checks run in rubric order (syntax, numbers, target) so co-
//! occurring defects score deterministically.

use serde::{Deserialize, Serialize};

use crate::formula::{check_formula, same_multiset, FormulaVerdict};
use crate::prompts::parse_response;

use super::GPInstance;

/// The three keys of the answer object, as written by the model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GPAnswer {
    pub cards_field: Vec<String>,
    pub number_field: Vec<i64>,
    pub formula_field: String,
}

/// Rubric outcome for one response.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GPScore {
    pub points: i32,
    pub verdict: FormulaVerdict,
    pub success: bool,
}

impl GPScore {
    fn of(points: i32, verdict: FormulaVerdict) -> GPScore {
        GPScore { points, verdict, success: points == 5 }
    }
}

/// Extract the `cards` / `number` / `formula` object from an answer block.
///
/// Tolerant of the template's pseudo-JSON: single- or double-quoted strings,
/// trailing commas, and unquoted formulas. Returns `None` when any key is
/// missing or malformed, which scores -3.
pub fn parse_gp_answer(answer_text: &str) -> Option<GPAnswer> {
    let cards_raw = find_array(answer_text, "cards")?;
    let number_raw = find_array(answer_text, "number")?;
    let formula_field = find_scalar(answer_text, "formula")?;

    let cards_field: Vec<String> = cards_raw.iter().map(|e| unquote(e).to_string()).collect();
    let mut number_field = Vec::with_capacity(number_raw.len());
    for entry in &number_raw {
        number_field.push(unquote(entry).parse::<i64>().ok()?);
    }
    if formula_field.trim().is_empty() {
        return None;
    }
    Some(GPAnswer { cards_field, number_field, formula_field })
}

/// Position just after the colon of `"key":` (quotes around the key are
/// optional; first occurrence wins).
fn find_key(text: &str, key: &str) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut from = 0;
    while let Some(rel) = text[from..].find(key) {
        let start = from + rel;
        from = start + 1;
        // preceding char must not be part of a larger word
        if start > 0 {
            let prev = bytes[start - 1];
            if prev.is_ascii_alphanumeric() || prev == b'_' {
                continue;
            }
        }
        let mut i = start + key.len();
        if i < bytes.len() && (bytes[i] == b'"' || bytes[i] == b'\'') {
            i += 1;
        }
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i < bytes.len() && bytes[i] == b':' {
            return Some(i + 1);
        }
    }
    None
}

/// Entries of the `[...]` array following `key`, split on top-level commas,
/// trailing comma tolerated.
fn find_array(text: &str, key: &str) -> Option<Vec<String>> {
    let after = find_key(text, key)?;
    let rest = text[after..].trim_start();
    let inner = rest.strip_prefix('[')?;
    let close = inner.find(']')?;
    let body = &inner[..close];
    let mut entries: Vec<String> =
        body.split(',').map(|e| e.trim().to_string()).collect();
    while entries.last().is_some_and(String::is_empty) {
        entries.pop();
    }
    if entries.iter().any(String::is_empty) {
        return None;
    }
    Some(entries)
}

/// The scalar value following `key`: a quoted span, or raw text up to the
/// next `,`, `}` or line end.
fn find_scalar(text: &str, key: &str) -> Option<String> {
    let after = find_key(text, key)?;
    let rest = text[after..].trim_start();
    let mut chars = rest.chars();
    match chars.next()? {
        quote @ ('"' | '\'') => {
            let body = chars.as_str();
            let end = body.find(quote)?;
            Some(body[..end].to_string())
        }
        _ => {
            let end = rest.find([',', '}', '\n']).unwrap_or(rest.len());
            Some(rest[..end].trim().to_string())
        }
    }
}

fn unquote(entry: &str) -> &str {
    let e = entry.trim();
    for quote in ['"', '\''] {
        if e.len() >= 2 && e.starts_with(quote) && e.ends_with(quote) {
            return &e[1..e.len() - 1];
        }
    }
    e
}

/// Score a raw model response against an instance.
///
/// The answer block is extracted with [`parse_response`]; the rubric runs
/// against the instance's scoring mapping. On the fake split that is the
/// training mapping regardless of what the prompt declared.
pub fn score_gp_answer(response_text: &str, instance: &GPInstance) -> GPScore {
    let parsed = parse_response(response_text);
    let Some(answer) = parse_gp_answer(&parsed.answer_text) else {
        return GPScore::of(-3, FormulaVerdict::Illegal);
    };
    let required = instance.scoring_values();
    let verdict = check_formula(&answer.formula_field, &required, instance.target);
    if verdict == FormulaVerdict::Illegal {
        return GPScore::of(-3, FormulaVerdict::Illegal);
    }
    if verdict == FormulaVerdict::WrongNumbers || !same_multiset(&answer.number_field, &required) {
        return GPScore::of(-2, FormulaVerdict::WrongNumbers);
    }
    if verdict == FormulaVerdict::WrongTarget {
        return GPScore::of(1, FormulaVerdict::WrongTarget);
    }
    GPScore::of(5, FormulaVerdict::Correct)
}
