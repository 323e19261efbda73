//! Diagrams bundled with the crate, read from `data/catalog.pd`.

use thiserror::Error;

use crate::diagram::{parse_pd, PDCode, ParseError};

const CATALOG: &str = include_str!("../data/catalog.pd");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry '{name}'; available: {}", available.join(", "))]
    Unknown { name: String, available: Vec<String> },
    #[error("catalog entry '{name}' is invalid: {source}")]
    Invalid { name: String, source: ParseError },
}

/// One bundled diagram with its comment lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub name: String,
    pub notes: Vec<String>,
    pub pd: String,
}

impl Entry {
    pub fn diagram(&self) -> Result<PDCode, CatalogError> {
        parse_pd(&self.pd).map_err(|source| CatalogError::Invalid {
            name: self.name.clone(),
            source,
        })
    }
}

/// All entries in file order.
pub fn entries() -> Vec<Entry> {
    let mut out: Vec<Entry> = Vec::new();
    for line in CATALOG.lines() {
        let line = line.trim();
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            out.push(Entry {
                name: name.to_string(),
                notes: Vec::new(),
                pd: String::new(),
            });
            continue;
        }
        let Some(e) = out.last_mut() else { continue };
        if let Some(note) = line.strip_prefix('#') {
            e.notes.push(note.trim().to_string());
        } else if !line.is_empty() {
            if !e.pd.is_empty() {
                e.pd.push(' ');
            }
            e.pd.push_str(line);
        }
    }
    out
}

pub fn names() -> Vec<String> {
    entries().into_iter().map(|e| e.name).collect()
}

pub fn lookup(name: &str) -> Result<PDCode, CatalogError> {
    let all = entries();
    match all.iter().find(|e| e.name == name) {
        Some(e) => e.diagram(),
        None => Err(CatalogError::Unknown {
            name: name.to_string(),
            available: all.into_iter().map(|e| e.name).collect(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_parses() {
        let all = entries();
        assert!(all.len() >= 9);
        for e in &all {
            e.diagram().unwrap();
            assert!(!e.notes.is_empty(), "{} has no provenance note", e.name);
        }
    }

    #[test]
    fn lookups() {
        assert_eq!(lookup("unknot").unwrap().crossing_count(), 0);
        assert_eq!(lookup("3_1").unwrap().crossing_count(), 3);
        match lookup("9_42") {
            Err(CatalogError::Unknown { available, .. }) => assert!(available.contains(&"6_2".to_string())),
            other => panic!("unexpected {other:?}"),
        }
    }
}
