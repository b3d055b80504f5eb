//! Named knot tables in TSV form: `name<TAB>gauss code[<TAB>note]`.
//! Blank lines and lines starting with `#` are skipped.

use std::collections::HashSet;
use std::path::Path;

use thiserror::Error;

use crate::gausscode::{GaussCodeError, GaussDiagram};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotEntry {
    pub name: String,
    pub code: GaussDiagram,
    pub note: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnotTable {
    pub entries: Vec<KnotEntry>,
}

#[derive(Debug, Error)]
pub enum KnotTableError {
    #[error("line {line}: {source}")]
    Code { line: usize, source: GaussCodeError },
    #[error("line {line}: expected name and code separated by a tab")]
    Format { line: usize },
    #[error("line {line}: duplicate knot name {name}")]
    Duplicate { line: usize, name: String },
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl KnotTable {
    pub fn parse(text: &str) -> Result<Self, KnotTableError> {
        let mut entries = Vec::new();
        let mut names = HashSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let mut fields = raw.splitn(3, '\t');
            let name = fields.next().unwrap_or("").trim();
            let code = fields.next().ok_or(KnotTableError::Format { line })?;
            let note = fields.next().unwrap_or("").trim().to_string();
            if name.is_empty() {
                return Err(KnotTableError::Format { line });
            }
            let code = GaussDiagram::parse(code).map_err(|source| KnotTableError::Code { line, source })?;
            if !names.insert(name.to_string()) {
                return Err(KnotTableError::Duplicate { line, name: name.to_string() });
            }
            entries.push(KnotEntry { name: name.to_string(), code, note });
        }
        Ok(KnotTable { entries })
    }

    pub fn load(path: &Path) -> Result<Self, KnotTableError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| KnotTableError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn get(&self, name: &str) -> Option<&KnotEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// The diagram, its reverse, its mirror and its reversed mirror.
pub fn orientation_variants(d: &GaussDiagram) -> [GaussDiagram; 4] {
    let reversed = d.reverse_orientation();
    let mirrored = d.mirror();
    let both = reversed.mirror();
    [d.clone(), reversed, mirrored, both]
}

pub const VARIANT_NAMES: [&str; 4] = ["original", "reverse", "mirror", "reverse-mirror"];
