//! Drug and product name canonicalisation.
//!
//! Matching across the source datasets is exact-match after normalisation,
//! so everything here has to be deterministic and locale-independent:
//! lowercasing, punctuation and whitespace folding, unit token unification
//! ("10 mg" -> "10mg", "µg" -> "mcg"), spelling-variant folding
//! (sulphate -> sulfate), strength/form descriptor stripping, and salt
//! suffix extraction against a data-driven lexicon.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use thiserror::Error;

/// Unit tokens recognised by the strength pattern (number + unit).
const UNIT_TOKENS: &[&str] = &["mg", "g", "mcg", "ml", "l", "iu"];

/// Pharmaceutical form tokens removed by [`strip_descriptors`].
const FORM_TOKENS: &[&str] = &[
    "tablet",
    "tablets",
    "capsule",
    "capsules",
    "caplet",
    "caplets",
    "suspension",
    "syrup",
    "solution",
    "injection",
    "infusion",
    "cream",
    "ointment",
    "gel",
    "drops",
    "inhaler",
    "powder",
    "spray",
    "suppository",
    "suppositories",
    "patch",
    "patches",
    "lozenge",
    "lozenges",
    "sachet",
    "sachets",
    "effervescent",
    "dispersible",
    "chewable",
    "gastro-resistant",
    "film-coated",
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NormalizeError {
    #[error("empty input: name contains no usable tokens")]
    EmptyInput,
}

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("failed to read lexicon file {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("lexicon entry {0:?} is not lowercase")]
    NotLowercase(String),
    #[error("malformed spelling-map line {0:?} (expected `variant<TAB>canonical`)")]
    MalformedSpellingLine(String),
}

/// A name in canonical matching form, paired with the text it came from.
///
/// `canonical` is lowercase, single-spaced, free of punctuation except
/// intra-word hyphens and the `+` combination separator, and is a fixed
/// point of [`normalize_name`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalizedName {
    pub canonical: String,
    pub original: String,
}

impl NormalizedName {
    /// Wraps an already-canonical string. Used where a derived form
    /// (salt-stripped base, descriptor-stripped name) is built from
    /// tokens that are canonical by construction.
    fn from_canonical(canonical: String, original: String) -> Self {
        NormalizedName {
            canonical,
            original,
        }
    }
}

impl fmt::Display for NormalizedName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical)
    }
}

/// Salt/hydrate suffix tokens plus orthographic spelling variants.
///
/// Ships as two editable data files (`salts.txt`, `spelling.tsv`); the
/// compiled-in copies are the defaults and a directory override can be
/// supplied at runtime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaltLexicon {
    pub entries: BTreeSet<String>,
    pub spelling_map: BTreeMap<String, String>,
}

impl SaltLexicon {
    /// The lexicon compiled into the binary from `data/salts.txt` and
    /// `data/spelling.tsv`.
    pub fn builtin() -> Self {
        // Unwrap is fine: the embedded files are validated by tests.
        Self::parse(
            include_str!("../data/salts.txt"),
            include_str!("../data/spelling.tsv"),
        )
        .expect("embedded lexicon is well-formed")
    }

    /// Loads `salts.txt` and `spelling.tsv` from a directory.
    pub fn load_dir(dir: &Path) -> Result<Self, LexiconError> {
        let read = |name: &str| -> Result<String, LexiconError> {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|source| LexiconError::Io {
                path: path.display().to_string(),
                source,
            })
        };
        Self::parse(&read("salts.txt")?, &read("spelling.tsv")?)
    }

    fn parse(salts: &str, spelling: &str) -> Result<Self, LexiconError> {
        let mut entries = BTreeSet::new();
        for line in salts.lines() {
            let token = line.trim();
            if token.is_empty() || token.starts_with('#') {
                continue;
            }
            if token != token.to_lowercase() {
                return Err(LexiconError::NotLowercase(token.to_string()));
            }
            entries.insert(token.to_string());
        }
        let mut spelling_map = BTreeMap::new();
        for line in spelling.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (variant, canonical) = line
                .split_once('\t')
                .ok_or_else(|| LexiconError::MalformedSpellingLine(line.to_string()))?;
            let (variant, canonical) = (variant.trim(), canonical.trim());
            if variant.is_empty() || canonical.is_empty() {
                return Err(LexiconError::MalformedSpellingLine(line.to_string()));
            }
            for token in [variant, canonical] {
                if token != token.to_lowercase() {
                    return Err(LexiconError::NotLowercase(token.to_string()));
                }
            }
            spelling_map.insert(variant.to_string(), canonical.to_string());
        }
        Ok(SaltLexicon {
            entries,
            spelling_map,
        })
    }
}

fn is_number(token: &str) -> bool {
    let mut dots = 0;
    let mut digits = 0;
    for c in token.chars() {
        match c {
            '0'..='9' => digits += 1,
            '.' => dots += 1,
            _ => return false,
        }
    }
    digits > 0 && dots <= 1 && !token.starts_with('.') && !token.ends_with('.')
}

fn is_unit(token: &str) -> bool {
    UNIT_TOKENS.contains(&token)
}

/// True for merged strength tokens like `500mg` or `2.5mcg`.
fn is_strength(token: &str) -> bool {
    let digits_end = token
        .find(|c: char| !c.is_ascii_digit() && c != '.')
        .unwrap_or(token.len());
    if digits_end == 0 {
        return false;
    }
    is_number(&token[..digits_end]) && is_unit(&token[digits_end..])
}

/// Canonicalises a raw name for matching.
///
/// Lowercases, folds punctuation to spaces (keeping intra-word hyphens,
/// decimal points inside numbers, and `+`), applies the spelling map per
/// token, merges `number unit` pairs, and collapses whitespace. The result
/// is idempotent: renormalising a canonical form is a no-op.
pub fn normalize_name(raw: &str, lexicon: &SaltLexicon) -> Result<NormalizedName, NormalizeError> {
    if raw.trim().is_empty() {
        return Err(NormalizeError::EmptyInput);
    }
    let lowered = raw.to_lowercase().replace("µg", "mcg").replace("μg", "mcg");
    let chars: Vec<char> = lowered.chars().collect();
    let mut folded = String::with_capacity(lowered.len());
    for (i, &c) in chars.iter().enumerate() {
        let prev = i.checked_sub(1).map(|p| chars[p]);
        let next = chars.get(i + 1).copied();
        let keep = match c {
            _ if c.is_alphanumeric() || c == '+' => true,
            // intra-word hyphen only
            '-' => {
                prev.is_some_and(char::is_alphanumeric) && next.is_some_and(char::is_alphanumeric)
            }
            // decimal point inside a number only
            '.' => {
                prev.is_some_and(|p| p.is_ascii_digit()) && next.is_some_and(|n| n.is_ascii_digit())
            }
            _ => false,
        };
        folded.push(if keep { c } else { ' ' });
    }

    let tokens: Vec<&str> = folded.split_whitespace().collect();
    let mut merged: Vec<String> = Vec::with_capacity(tokens.len());
    let mut i = 0;
    while i < tokens.len() {
        let token = lexicon
            .spelling_map
            .get(tokens[i])
            .map(String::as_str)
            .unwrap_or(tokens[i]);
        if i + 1 < tokens.len() && is_number(token) && is_unit(tokens[i + 1]) {
            merged.push(format!("{}{}", token, tokens[i + 1]));
            i += 2;
        } else {
            merged.push(token.to_string());
            i += 1;
        }
    }

    let canonical = merged.join(" ");
    if canonical.is_empty() {
        return Err(NormalizeError::EmptyInput);
    }
    Ok(NormalizedName {
        canonical,
        original: raw.to_string(),
    })
}

/// Removes strength tokens (`500mg`) and pharmaceutical-form tokens
/// (`tablets`, `suspension`, ...) from a canonical name, so product names
/// like "zyrtec 10mg tablets" can be compared against ingredient names.
///
/// Returns the input unchanged when there is nothing to strip or when
/// stripping would leave nothing.
pub fn strip_descriptors(name: &NormalizedName) -> NormalizedName {
    let kept: Vec<&str> = name
        .canonical
        .split(' ')
        .filter(|t| !is_strength(t) && !FORM_TOKENS.contains(t))
        .collect();
    if kept.is_empty() {
        return name.clone();
    }
    NormalizedName::from_canonical(kept.join(" "), name.original.clone())
}

/// Result of splitting a trailing salt suffix off a name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaltSplit {
    pub base: NormalizedName,
    pub salt: Option<String>,
}

/// Splits trailing lexicon tokens off a canonical name.
///
/// "esomeprazole magnesium" -> base "esomeprazole", salt "magnesium".
/// Names with no lexicon suffix come back untouched, as do names that
/// would be consumed entirely (a bare salt token is left alone). Callers
/// dealing with brand names skip this operation; a brand ending in a salt
/// token is ambiguous, not a salt form.
pub fn strip_salt(name: &NormalizedName, lexicon: &SaltLexicon) -> SaltSplit {
    let mut tokens: Vec<&str> = name.canonical.split(' ').collect();
    let mut salt: Vec<&str> = Vec::new();
    while tokens.len() >= 2 && lexicon.entries.contains(*tokens.last().expect("nonempty")) {
        salt.insert(0, tokens.pop().expect("nonempty"));
    }
    if salt.is_empty() {
        return SaltSplit {
            base: name.clone(),
            salt: None,
        };
    }
    SaltSplit {
        base: NormalizedName::from_canonical(tokens.join(" "), name.original.clone()),
        salt: Some(salt.join(" ")),
    }
}

/// IRI-safe slug of one text component: lowercase ASCII alphanumerics,
/// with whitespace, `/`, `_`, and `-` folded to single hyphens and every
/// other byte percent-encoded (lowercase hex).
pub fn slugify(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for byte in text.to_lowercase().bytes() {
        match byte {
            b'a'..=b'z' | b'0'..=b'9' => out.push(byte as char),
            b' ' | b'/' | b'-' | b'_' => {
                if !out.is_empty() && !out.ends_with('-') {
                    out.push('-');
                }
            }
            _ => out.push_str(&format!("%{byte:02x}")),
        }
    }
    out.trim_end_matches('-').to_string()
}

/// Looks a canonical name up in a synonym index, returning every canonical
/// id whose synonym set contains it (empty when unknown).
pub fn synonym_keys(
    name: &NormalizedName,
    synonym_index: &BTreeMap<String, BTreeSet<String>>,
) -> BTreeSet<String> {
    synonym_index
        .get(&name.canonical)
        .cloned()
        .unwrap_or_default()
}
