use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The recorded value is internally inconsistent; the computed value is
    /// reported instead.
    Discrepancy,
    /// Rests on results that are not re-derivable here.
    External,
    OutOfScope,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Discrepancy => "DISCREPANCY",
            Status::External => "EXTERNAL",
            Status::OutOfScope => "OUT-OF-SCOPE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub id: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub section: String,
    pub assertions: Vec<Assertion>,
}

impl Report {
    pub fn new(section: impl Into<String>) -> Self {
        Report {
            section: section.into(),
            assertions: Vec::new(),
        }
    }

    pub fn push(&mut self, id: impl Into<String>, expected: impl fmt::Display, computed: impl fmt::Display, status: Status) {
        self.assertions.push(Assertion {
            id: id.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            status,
        });
    }

    /// Pass when `expected == computed` as strings.
    pub fn check(&mut self, id: impl Into<String>, expected: impl fmt::Display, computed: impl fmt::Display) -> bool {
        let (e, c) = (expected.to_string(), computed.to_string());
        let ok = e == c;
        self.push(id, e, c, if ok { Status::Pass } else { Status::Fail });
        ok
    }

    pub fn check_bool(&mut self, id: impl Into<String>, ok: bool, computed: impl fmt::Display) -> bool {
        self.push(id, "true", computed, if ok { Status::Pass } else { Status::Fail });
        ok
    }

    pub fn extend(&mut self, other: Report) {
        self.assertions.extend(other.assertions);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Assertion> {
        self.assertions.iter().filter(|a| a.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    /// Assertions whose id starts with `prefix`.
    pub fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a Assertion> + 'a {
        self.assertions.iter().filter(move |a| a.id.starts_with(prefix))
    }

    pub fn count(&self, status: Status) -> usize {
        self.assertions.iter().filter(|a| a.status == status).count()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.section)?;
        for a in &self.assertions {
            if a.expected == a.computed {
                writeln!(f, "[{}] {}: {}", a.status.label(), a.id, a.computed)?;
            } else {
                writeln!(f, "[{}] {}: expected {}, computed {}", a.status.label(), a.id, a.expected, a.computed)?;
            }
        }
        write!(
            f,
            "-- {}: {} pass, {} fail, {} discrepancy, {} external, {} out of scope",
            self.section,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Discrepancy),
            self.count(Status::External),
            self.count(Status::OutOfScope)
        )
    }
}
