use std::collections::{BTreeMap, HashSet};

use super::{content_lines, ensure_nonempty, fields, parse_key, Affect, CompiledMatcher, LexiconFormat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Category {
    pub name: String,
    pub affect: Affect,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryEntry {
    /// Word, multiword phrase, or stem ending in `*`.
    pub pattern: String,
    pub categories: Vec<String>,
}

/// Word-category dictionary in the open `.dic`-like format.
#[derive(Debug, Clone)]
pub struct CategoryLexicon {
    categories: BTreeMap<String, Category>,
    entries: Vec<CategoryEntry>,
    matcher: CompiledMatcher,
}

impl PartialEq for CategoryLexicon {
    fn eq(&self, other: &Self) -> bool {
        self.categories == other.categories && self.entries == other.entries
    }
}

impl CategoryLexicon {
    pub fn new(categories: BTreeMap<String, Category>, entries: Vec<CategoryEntry>) -> Result<Self> {
        if !categories.values().any(|c| c.affect == Affect::Positive)
            || !categories.values().any(|c| c.affect == Affect::Negative)
        {
            return Err(Error::invariant(
                "categories",
                "need at least one positive-affect and one negative-affect category",
            ));
        }
        ensure_nonempty(entries.len(), "categories")?;
        let mut seen = HashSet::new();
        let mut keys = Vec::with_capacity(entries.len());
        for (index, entry) in entries.iter().enumerate() {
            let key = super::PatternKey::parse(&entry.pattern)?;
            if !seen.insert(key.clone()) {
                return Err(Error::invariant(&entry.pattern, "duplicate pattern"));
            }
            if entry.categories.is_empty() {
                return Err(Error::invariant(&entry.pattern, "pattern has no categories"));
            }
            if let Some(unknown) = entry.categories.iter().find(|c| !categories.contains_key(*c)) {
                return Err(Error::invariant(&entry.pattern, format!("unknown category {unknown:?}")));
            }
            keys.push((key, index));
        }
        Ok(CategoryLexicon {
            categories,
            entries,
            matcher: CompiledMatcher::build(keys),
        })
    }

    pub fn categories(&self) -> &BTreeMap<String, Category> {
        &self.categories
    }

    pub fn entries(&self) -> &[CategoryEntry] {
        &self.entries
    }

    pub fn matcher(&self) -> &CompiledMatcher {
        &self.matcher
    }

    /// Does entry `index` belong to at least one category with `affect`?
    pub fn entry_has_affect(&self, index: usize, affect: Affect) -> bool {
        self.entries[index]
            .categories
            .iter()
            .any(|c| self.categories[c].affect == affect)
    }
}

impl LexiconFormat for CategoryLexicon {
    fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut categories = BTreeMap::new();
        let mut entries = Vec::new();
        for (lineno, line) in content_lines(text) {
            if line.starts_with("%cat") {
                let parts = fields(line, 4, origin, lineno)?;
                if parts[0] != "%cat" {
                    return Err(Error::malformed(origin, lineno, "header lines start with %cat"));
                }
                if !entries.is_empty() {
                    return Err(Error::malformed(origin, lineno, "category header after entries"));
                }
                let affect: Affect = parts[3]
                    .parse()
                    .map_err(|e: Error| Error::malformed(origin, lineno, e.to_string()))?;
                let category = Category {
                    name: parts[2].to_string(),
                    affect,
                };
                if categories.insert(parts[1].to_string(), category).is_some() {
                    return Err(Error::malformed(origin, lineno, format!("duplicate category id {}", parts[1])));
                }
                continue;
            }
            let parts = fields(line, 2, origin, lineno)?;
            parse_key(parts[0], origin, lineno)?;
            let cats: Vec<String> = parts[1]
                .split(',')
                .map(str::trim)
                .filter(|c| !c.is_empty())
                .map(str::to_string)
                .collect();
            if cats.is_empty() {
                return Err(Error::malformed(origin, lineno, "no categories listed"));
            }
            entries.push(CategoryEntry {
                pattern: parts[0].to_string(),
                categories: cats,
            });
        }
        ensure_nonempty(entries.len(), origin)?;
        Self::new(categories, entries)
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        for (id, cat) in &self.categories {
            out.push_str(&format!("%cat\t{id}\t{}\t{}\n", cat.name, cat.affect.as_str()));
        }
        for entry in &self.entries {
            out.push_str(&format!("{}\t{}\n", entry.pattern, entry.categories.join(",")));
        }
        out
    }
}
