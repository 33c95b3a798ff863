//! Fixed token tables shared by the tools and the evaluator: number words,
//! the question-vocabulary synonyms, and descriptor classification for
//! `filter_part` lists.
//!
//! Questions say "tiny", "matte", "ball" while scenes store "small",
//! "rubber", "sphere"; the synonym table bridges the two.

use thiserror::Error;

const NUMBER_WORDS: [(&str, i64); 10] = [
    ("one", 1),
    ("two", 2),
    ("three", 3),
    ("four", 4),
    ("five", 5),
    ("six", 6),
    ("seven", 7),
    ("eight", 8),
    ("nine", 9),
    ("ten", 10),
];

const SYNONYMS: [(&str, &str); 7] = [
    ("tiny", "small"),
    ("big", "large"),
    ("matte", "rubber"),
    ("shiny", "metal"),
    ("metallic", "metal"),
    ("ball", "sphere"),
    ("block", "cube"),
];

const COLORS: [&str; 8] = [
    "gray", "blue", "brown", "yellow", "red", "green", "purple", "cyan",
];
const SIZES: [&str; 2] = ["small", "large"];
const MATERIALS: [&str; 2] = ["rubber", "metal"];

/// Lowercase, trim, and collapse interior whitespace runs.
pub fn canonical(token: &str) -> String {
    token
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_lowercase()
}

/// Canonical form with the synonym table applied.
pub fn canonical_term(token: &str) -> String {
    let canon = canonical(token);
    for (from, to) in SYNONYMS {
        if canon == from {
            return to.to_string();
        }
    }
    canon
}

pub fn number_word(token: &str) -> Option<i64> {
    let canon = canonical(token);
    NUMBER_WORDS
        .iter()
        .find(|(w, _)| *w == canon)
        .map(|&(_, n)| n)
}

pub fn is_color(term: &str) -> bool {
    COLORS.contains(&term)
}

pub fn is_size(term: &str) -> bool {
    SIZES.contains(&term)
}

pub fn is_material(term: &str) -> bool {
    MATERIALS.contains(&term)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("descriptor error: {0}")]
pub struct DescriptorError(pub String);

/// A raw `filter_part` list element after variable substitution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescriptorToken {
    Text(String),
    Count(i64),
}

/// Classified `filter_part` constraints: at most one entry per slot.
/// Multi-word part names ("leg bar", "arm vertical bar") are single tokens;
/// anything that is not a number word, color, size, or material lands in the
/// part/shape name slot.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DescriptorList {
    pub count: Option<i64>,
    pub color: Option<String>,
    pub size: Option<String>,
    pub material: Option<String>,
    pub name: Option<String>,
}

impl DescriptorList {
    pub fn classify(tokens: &[DescriptorToken]) -> Result<DescriptorList, DescriptorError> {
        if tokens.is_empty() {
            return Err(DescriptorError("descriptor list is empty".into()));
        }
        let mut list = DescriptorList::default();
        let fill = |slot: &mut Option<String>, kind: &str, value: String| {
            if let Some(previous) = slot {
                Err(DescriptorError(format!(
                    "both \"{previous}\" and \"{value}\" claim the {kind} slot"
                )))
            } else {
                *slot = Some(value);
                Ok(())
            }
        };
        for token in tokens {
            match token {
                DescriptorToken::Count(n) => {
                    if let Some(previous) = list.count {
                        return Err(DescriptorError(format!(
                            "both {previous} and {n} claim the count slot"
                        )));
                    }
                    list.count = Some(*n);
                }
                DescriptorToken::Text(raw) => {
                    if let Some(n) = number_word(raw) {
                        if let Some(previous) = list.count {
                            return Err(DescriptorError(format!(
                                "both {previous} and {n} claim the count slot"
                            )));
                        }
                        list.count = Some(n);
                        continue;
                    }
                    let term = canonical_term(raw);
                    if is_color(&term) {
                        fill(&mut list.color, "color", term)?;
                    } else if is_size(&term) {
                        fill(&mut list.size, "size", term)?;
                    } else if is_material(&term) {
                        fill(&mut list.material, "material", term)?;
                    } else {
                        fill(&mut list.name, "part/shape name", term)?;
                    }
                }
            }
        }
        Ok(list)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn text(s: &str) -> DescriptorToken {
        DescriptorToken::Text(s.to_string())
    }

    #[test]
    fn synonyms_map_to_scene_vocabulary() {
        assert_eq!(canonical_term("tiny"), "small");
        assert_eq!(canonical_term("Matte"), "rubber");
        assert_eq!(canonical_term("metallic"), "metal");
        assert_eq!(canonical_term("ball"), "sphere");
        assert_eq!(canonical_term("leg bar"), "leg bar");
    }

    #[test]
    fn canonical_collapses_whitespace() {
        assert_eq!(canonical("  Arm   Vertical  Bar "), "arm vertical bar");
    }

    #[test]
    fn number_words_cover_one_to_ten() {
        assert_eq!(number_word("one"), Some(1));
        assert_eq!(number_word("Ten"), Some(10));
        assert_eq!(number_word("eleven"), None);
    }

    #[test]
    fn classifies_mixed_descriptor_list() {
        let list =
            DescriptorList::classify(&[text("four"), text("brown"), text("arm vertical bar")])
                .unwrap();
        assert_eq!(list.count, Some(4));
        assert_eq!(list.color.as_deref(), Some("brown"));
        assert_eq!(list.name.as_deref(), Some("arm vertical bar"));
    }

    #[test]
    fn classifies_attribute_descriptors() {
        let list =
            DescriptorList::classify(&[text("tiny"), text("gray"), text("metallic"), text("ball")])
                .unwrap();
        assert_eq!(list.size.as_deref(), Some("small"));
        assert_eq!(list.color.as_deref(), Some("gray"));
        assert_eq!(list.material.as_deref(), Some("metal"));
        assert_eq!(list.name.as_deref(), Some("sphere"));
    }

    #[test]
    fn rejects_double_slot_claim() {
        assert!(DescriptorList::classify(&[text("red"), text("green")]).is_err());
        assert!(DescriptorList::classify(&[text("two"), DescriptorToken::Count(3)]).is_err());
        assert!(DescriptorList::classify(&[]).is_err());
    }
}
