use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Algebra;
use crate::error::{Error, Result};
use crate::exactfield::FieldSpec;

/// On-disk form of an algebra. Indices are 1-based, `i < j`, and omitted
/// pairs are zero brackets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub out: Vec<OutputTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputTerm {
    pub k: usize,
    pub c: String,
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<Algebra> {
        let n = self.dim;
        let mut seen = BTreeSet::new();
        let mut terms = Vec::new();
        for (b, entry) in self.brackets.iter().enumerate() {
            let at = |what: &str| format!("brackets[{b}].{what}");
            if entry.i < 1 || entry.i > n {
                return Err(Error::input(at("i"), format!("{} is outside 1..={n}", entry.i)));
            }
            if entry.j < 1 || entry.j > n {
                return Err(Error::input(at("j"), format!("{} is outside 1..={n}", entry.j)));
            }
            if entry.i >= entry.j {
                return Err(Error::input(at("j"), format!("need i < j, got i={} j={}", entry.i, entry.j)));
            }
            if !seen.insert((entry.i, entry.j)) {
                return Err(Error::input(at("i"), format!("pair ({},{}) listed twice", entry.i, entry.j)));
            }
            for (t, term) in entry.out.iter().enumerate() {
                if term.k < 1 || term.k > n {
                    return Err(Error::input(
                        format!("brackets[{b}].out[{t}].k"),
                        format!("{} is outside 1..={n}", term.k),
                    ));
                }
                let c = self.field.parse_scalar(&term.c).map_err(|e| {
                    Error::input(format!("brackets[{b}].out[{t}].c"), e.to_string())
                })?;
                terms.push((entry.i, entry.j, term.k, c));
            }
        }
        Algebra::from_terms(self.field, n, &terms)
    }
}

impl Algebra {
    pub fn to_file(&self) -> AlgebraFile {
        let mut brackets: Vec<BracketEntry> = Vec::new();
        for (i, j, k, c) in self.constants() {
            let term = OutputTerm { k, c: c.literal() };
            match brackets.last_mut() {
                Some(last) if last.i == i && last.j == j => last.out.push(term),
                _ => brackets.push(BracketEntry { i, j, out: vec![term] }),
            }
        }
        AlgebraFile {
            field: self.field(),
            dim: self.dim(),
            brackets,
        }
    }

    /// Parses the JSON file format. Syntax errors carry line and column;
    /// semantic errors name the offending field.
    pub fn from_json(text: &str) -> Result<Algebra> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| {
            Error::input(format!("line {} column {}", e.line(), e.column()), e.to_string())
        })?;
        file.to_algebra()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_file()).expect("serializable");
        s.push('\n');
        s
    }
}
