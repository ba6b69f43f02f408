//! Every algebra with printed structure constants, its recorded expected
//! data, and the end-to-end verification reports.

mod report;
mod tables;
mod classification;
mod witnesses;

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::algcore::{Algebra, IdentityFlags};
use crate::error::{Error, Result};
use crate::exactfield::{FieldSpec, Scalar};

pub use report::{Assertion, Report, Status};
pub use tables::{table_row, verify_tables, AnnExpectation, TableRow, TABLE_ROWS};
pub use classification::{
    count_classes, l58_automorphism, l58_c_prime, lambda_alpha_samples, m51_automorphism, m51_c_prime,
    verify_cd, verify_counts, verify_b61_isomorphism, L58Aut, M51Aut, ClassCount,
};
pub use witnesses::{printed_witnesses, run_witness, witness_algebras, verify_degenerations, PrintedWitness, WitnessOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Class {
    Lie,
    /// Malcev but not Lie.
    Malcev,
    /// Binary Lie but not Malcev.
    BinaryLie,
}

#[derive(Clone, Copy, Debug)]
pub struct Entry {
    pub name: &'static str,
    pub dim: usize,
    pub param: Option<&'static str>,
    pub class: Class,
    /// Holds the anticommutative CD identity.
    pub cd: bool,
    pub der_dim: Option<usize>,
    terms: &'static [(usize, usize, usize, Coef)],
}

/// Structure constant: an integer or the entry's parameter times an
/// integer.
#[derive(Clone, Copy, Debug)]
enum Coef {
    Int(i64),
    Param(i64),
}

use Coef::{Int, Param};

const fn lie(name: &'static str, dim: usize, terms: &'static [(usize, usize, usize, Coef)]) -> Entry {
    Entry {
        name,
        dim,
        param: None,
        class: Class::Lie,
        cd: true,
        der_dim: None,
        terms,
    }
}

pub const ENTRIES: &[Entry] = &[
    lie("L_1_1", 1, &[]),
    lie("L_2_1", 2, &[]),
    lie("L_3_1", 3, &[]),
    lie("L_3_2", 3, &[(1, 2, 3, Int(1))]),
    lie("L_4_1", 4, &[]),
    lie("L_4_2", 4, &[(1, 2, 3, Int(1))]),
    lie("L_4_3", 4, &[(1, 2, 3, Int(1)), (1, 3, 4, Int(1))]),
    lie("L_5_1", 5, &[]),
    lie("L_5_2", 5, &[(1, 2, 3, Int(1))]),
    lie("L_5_3", 5, &[(1, 2, 3, Int(1)), (1, 3, 4, Int(1))]),
    lie("L_5_4", 5, &[(1, 2, 5, Int(1)), (3, 4, 5, Int(1))]),
    lie("L_5_5", 5, &[(1, 2, 3, Int(1)), (1, 3, 5, Int(1)), (2, 4, 5, Int(1))]),
    lie(
        "L_5_6",
        5,
        &[(1, 2, 3, Int(1)), (1, 3, 4, Int(1)), (1, 4, 5, Int(1)), (2, 3, 5, Int(1))],
    ),
    lie("L_5_7", 5, &[(1, 2, 3, Int(1)), (1, 3, 4, Int(1)), (1, 4, 5, Int(1))]),
    lie("L_5_8", 5, &[(1, 2, 4, Int(1)), (1, 3, 5, Int(1))]),
    lie("L_5_9", 5, &[(1, 2, 3, Int(1)), (1, 3, 4, Int(1)), (2, 3, 5, Int(1))]),
    Entry {
        name: "M_5_1",
        dim: 5,
        param: None,
        class: Class::Malcev,
        cd: true,
        der_dim: None,
        terms: &[(1, 2, 3, Int(1)), (3, 4, 5, Int(1))],
    },
    Entry {
        name: "B_6_1",
        dim: 6,
        param: Some("alpha"),
        class: Class::BinaryLie,
        cd: true,
        der_dim: None,
        terms: &[(1, 2, 4, Int(1)), (1, 3, 5, Int(1)), (2, 3, 6, Param(1)), (4, 5, 6, Int(1))],
    },
    Entry {
        name: "B_6_2",
        dim: 6,
        param: None,
        class: Class::BinaryLie,
        cd: false,
        der_dim: None,
        terms: &[(1, 2, 3, Int(1)), (3, 4, 5, Int(1)), (4, 5, 6, Int(1))],
    },
    Entry {
        name: "B_6_3",
        dim: 6,
        param: None,
        class: Class::BinaryLie,
        cd: false,
        der_dim: Some(8),
        terms: &[(1, 2, 3, Int(1)), (3, 4, 5, Int(1)), (1, 3, 6, Int(1)), (4, 5, 6, Int(1))],
    },
    Entry {
        name: "g_6",
        dim: 6,
        param: None,
        class: Class::Lie,
        cd: true,
        der_dim: Some(8),
        terms: &[
            (1, 2, 3, Int(1)),
            (1, 3, 4, Int(1)),
            (1, 4, 5, Int(1)),
            (2, 3, 5, Int(1)),
            (2, 5, 6, Int(1)),
            (3, 4, 6, Int(-1)),
        ],
    },
    Entry {
        name: "M_6",
        dim: 6,
        param: Some("epsilon"),
        class: Class::Malcev,
        cd: true,
        der_dim: None,
        terms: &[
            (1, 2, 3, Int(1)),
            (1, 3, 5, Int(1)),
            (1, 5, 6, Int(1)),
            (2, 4, 5, Param(1)),
            (3, 4, 6, Int(1)),
        ],
    },
];

fn normalize(name: &str) -> String {
    name.chars().filter(|c| *c != '_').flat_map(char::to_lowercase).collect()
}

pub fn entry(name: &str) -> Result<&'static Entry> {
    let key = normalize(name);
    ENTRIES
        .iter()
        .find(|e| normalize(e.name) == key)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}

impl Entry {
    /// Flags at a parameter value. `M_6^1` is Lie: its only nonzero
    /// Jacobian is `J(e1,e2,e4) = (1 - epsilon) e6`.
    pub fn flags(&self, param: Option<&Scalar>) -> IdentityFlags {
        let lie = self.name == "M_6" && param.is_some_and(|p| p.is_one());
        IdentityFlags {
            lie: lie || self.class == Class::Lie,
            malcev: self.class != Class::BinaryLie,
            binary_lie: true,
            cd: self.cd,
        }
    }

    pub fn build(&self, field: FieldSpec, param: Option<&Scalar>) -> Result<Algebra> {
        let p = match (self.param, param) {
            (Some(_), Some(v)) => {
                if v.field() != field {
                    return Err(Error::MixedFields(field, v.field()));
                }
                Some(v.clone())
            }
            (Some(name), None) => {
                return Err(Error::MissingParam {
                    entry: self.name.into(),
                    param: name.into(),
                })
            }
            (None, Some(_)) => {
                return Err(Error::input(self.name, "this entry takes no parameter"));
            }
            (None, None) => None,
        };
        let terms: Vec<(usize, usize, usize, Scalar)> = self
            .terms
            .iter()
            .map(|&(i, j, k, c)| {
                let v = match c {
                    Int(n) => field.from_i64(n),
                    Param(n) => &field.from_i64(n) * p.as_ref().expect("checked"),
                };
                (i, j, k, v)
            })
            .collect();
        Algebra::from_terms(field, self.dim, &terms)
    }
}

/// Builds an entry by name; `params` maps parameter names (`alpha`,
/// `epsilon`, or their first letter) to values.
pub fn build(name: &str, params: &BTreeMap<String, Scalar>, field: FieldSpec) -> Result<Algebra> {
    let e = entry(name)?;
    let value = e.param.and_then(|p| {
        params
            .get(p)
            .or_else(|| params.get(&p[..1]))
            .cloned()
    });
    e.build(field, value.as_ref())
}

/// A catalog reference such as `B_6_1:alpha=2` or `M_6:epsilon=1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogRef {
    pub name: String,
    pub params: BTreeMap<String, String>,
}

impl CatalogRef {
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.split(':');
        let name = parts.next().unwrap_or("").trim().to_string();
        entry(&name)?;
        let mut params = BTreeMap::new();
        for p in parts {
            for kv in p.split(',') {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| Error::parse("catalog reference", text, "expected name=value"))?;
                params.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        Ok(CatalogRef { name, params })
    }

    /// Builds the algebra; a parameter value `e` is replaced by `epsilon`.
    pub fn build(&self, field: FieldSpec, epsilon: Option<&Scalar>) -> Result<Algebra> {
        let mut values = BTreeMap::new();
        for (k, v) in &self.params {
            let x = match (v.as_str(), epsilon) {
                ("e", Some(e)) => e.clone(),
                ("e", None) => {
                    return Err(Error::MissingParam {
                        entry: self.name.clone(),
                        param: k.clone(),
                    })
                }
                _ => field.parse_scalar(v)?,
            };
            values.insert(k.clone(), x);
        }
        build(&self.name, &values, field)
    }
}

impl fmt::Display for CatalogRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for (k, (name, v)) in self.params.iter().enumerate() {
            write!(f, "{}{name}={v}", if k == 0 { ':' } else { ',' })?;
        }
        Ok(())
    }
}

/// Loads an algebra from a catalog reference or a JSON file path; relative
/// paths are taken from `base`.
pub fn resolve(text: &str, field: FieldSpec, epsilon: Option<&Scalar>, base: Option<&Path>) -> Result<Algebra> {
    if text.ends_with(".json") {
        let path = match base {
            Some(b) if Path::new(text).is_relative() => b.join(text),
            _ => Path::new(text).to_path_buf(),
        };
        let s = std::fs::read_to_string(&path).map_err(|e| Error::input(path.display().to_string(), e.to_string()))?;
        return Algebra::from_json(&s).map_err(|e| match e {
            Error::Input { location, reason } => Error::input(format!("{}: {location}", path.display()), reason),
            other => other,
        });
    }
    CatalogRef::parse(text)?.build(field, epsilon)
}

fn small(field: FieldSpec, v: &[(i64, i64)]) -> Vec<Scalar> {
    v.iter()
        .map(|&(n, d)| field.from_i64(n).checked_div(&field.from_i64(d)).expect("nonzero"))
        .collect()
}

/// Parameter samples: the whole field for `p ≤ 13`, otherwise
/// `{0, 1, −1, 2, 1/2}`.
pub fn parameter_samples(field: FieldSpec) -> Vec<Scalar> {
    match field {
        FieldSpec::Prime(p) if p <= 13 => field.elements().expect("finite"),
        _ => small(field, &[(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2)]),
    }
}

/// File stem for an entry instance, e.g. `B_6_1.alpha_1_2` for `α = 1/2`.
pub fn file_stem(e: &Entry, param: Option<&Scalar>) -> String {
    match (e.param, param) {
        (Some(p), Some(v)) => {
            let lit = v.literal().replace('/', "_").replace('-', "m");
            format!("{}.{p}_{lit}", e.name)
        }
        _ => e.name.to_string(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectedRecord {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub param: Option<BTreeMap<String, String>>,
    pub identity_flags: IdentityFlags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub der_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h2m_generators: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h2bl_extra: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ann_basis: Option<Vec<usize>>,
    /// Set when the printed value is not a subspace of the algebra.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ann_printed: Option<String>,
}

pub fn expected_record(e: &Entry, param: Option<&Scalar>) -> ExpectedRecord {
    let row = table_row(e.name);
    ExpectedRecord {
        name: e.name.to_string(),
        param: e.param.zip(param).map(|(k, v)| BTreeMap::from([(k.to_string(), v.literal())])),
        identity_flags: e.flags(param),
        der_dim: e.der_dim,
        h2m_generators: row.map(|r| r.h2m.iter().map(|s| s.to_string()).collect()),
        h2bl_extra: row.map(|r| r.h2bl_extra.iter().map(|s| s.to_string()).collect()),
        ann_basis: row.and_then(|r| match r.ann {
            AnnExpectation::Whole => Some((1..=e.dim).collect()),
            AnnExpectation::Coords(c) => Some(c.to_vec()),
            AnnExpectation::Misprinted { .. } => None,
        }),
        ann_printed: row.and_then(|r| match r.ann {
            AnnExpectation::Misprinted { printed } => Some(printed.to_string()),
            _ => None,
        }),
    }
}

/// The files of the `catalog/` directory: algebra JSON, expected data and
/// printed witnesses, as `(relative path, contents)`.
pub fn export_files() -> Result<Vec<(String, String)>> {
    let f = FieldSpec::Rational;
    let mut out = Vec::new();
    for e in ENTRIES {
        let params: Vec<Option<Scalar>> = match e.param {
            Some(_) => parameter_samples(f).into_iter().map(Some).collect(),
            None => vec![None],
        };
        for p in params {
            let stem = file_stem(e, p.as_ref());
            let a = e.build(f, p.as_ref())?;
            out.push((format!("{stem}.json"), a.to_json()));
            let mut rec = serde_json::to_string_pretty(&expected_record(e, p.as_ref())).expect("serializable");
            rec.push('\n');
            out.push((format!("{stem}.expected.json"), rec));
        }
    }
    for w in printed_witnesses() {
        out.push((format!("witnesses/{}.json", w.id), w.file.to_json()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algcore::Identity;

    #[test]
    fn builds_and_refs() {
        let f = FieldSpec::Rational;
        let b = CatalogRef::parse("B_6_1:alpha=2").unwrap().build(f, None).unwrap();
        assert_eq!(b.product(1, 2)[5], f.from_i64(2));
        let g = build("g_6", &BTreeMap::new(), f).unwrap();
        assert_eq!(g.product(2, 3)[5], f.from_i64(-1));
        assert!(build("L_1_1", &BTreeMap::new(), f).unwrap().is_abelian());
        assert!(matches!(build("X_9", &BTreeMap::new(), f), Err(Error::UnknownEntry(_))));
        assert!(matches!(build("B_6_1", &BTreeMap::new(), f), Err(Error::MissingParam { .. })));
        assert_eq!(entry("l58").unwrap().name, "L_5_8");
        let m = CatalogRef::parse("M_6:epsilon=e").unwrap();
        assert!(m.build(f, None).is_err());
        assert!(m.build(f, Some(&f.from_i64(3))).is_ok());
    }

    #[test]
    fn every_entry_is_binary_lie() {
        for field in [FieldSpec::Rational, FieldSpec::prime(3).unwrap(), FieldSpec::prime(5).unwrap()] {
            for e in ENTRIES {
                let ps: Vec<Option<Scalar>> = match e.param {
                    Some(_) => parameter_samples(field).into_iter().map(Some).collect(),
                    None => vec![None],
                };
                for p in ps {
                    let a = e.build(field, p.as_ref()).unwrap();
                    assert!(a.check_identity(Identity::BinaryLie, 1).holds(), "{} {p:?} over {field}", e.name);
                }
            }
        }
    }

    #[test]
    fn file_names() {
        let e = entry("B_6_1").unwrap();
        let f = FieldSpec::Rational;
        assert_eq!(file_stem(e, Some(&small(f, &[(-1, 2)])[0])), "B_6_1.alpha_m1_2");
        assert_eq!(file_stem(entry("B_6_2").unwrap(), None), "B_6_2");
    }
}
