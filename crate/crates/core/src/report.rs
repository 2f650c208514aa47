//! Check results shared by every verification suite.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Catalog key or axiom name the check certifies.
    pub anchor: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
    /// Worst tuple or object, when the check ranges over several.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    /// A numerical check; NaN never passes.
    pub fn measure(
        name: impl Into<String>,
        anchor: impl Into<String>,
        residual: f64,
        tol: f64,
    ) -> Check {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            residual,
            tol,
            pass: residual <= tol,
            at: None,
            detail: None,
        }
    }

    /// A yes/no check, reported with residual 0 or 1.
    pub fn flag(name: impl Into<String>, anchor: impl Into<String>, ok: bool) -> Check {
        let mut c = Check::measure(name, anchor, if ok { 0.0 } else { 1.0 }, 0.0);
        c.pass = ok;
        c
    }

    pub fn at(mut self, at: impl Into<String>) -> Check {
        self.at = Some(at.into());
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Check {
        self.detail = Some(d.into());
        self
    }

    /// A failed check recording an error raised while computing it.
    pub fn error(name: impl Into<String>, anchor: impl Into<String>, e: &Error) -> Check {
        Check::flag(name, anchor, false).detail(e.to_string())
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<40} residual={:.3e} tol={:.1e} [{}]",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.residual,
            self.tol,
            self.anchor
        )?;
        if let Some(at) = &self.at {
            write!(f, " at {at}")?;
        }
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

/// Running maximum of residuals over a family, remembering where it occurred.
#[derive(Clone, Debug, Default)]
pub struct Worst {
    pub residual: f64,
    pub at: Option<String>,
}

impl Worst {
    pub fn record(&mut self, residual: f64, at: impl FnOnce() -> String) {
        if self.residual.is_nan() {
            return;
        }
        if self.at.is_none() || residual.is_nan() || residual > self.residual {
            self.residual = residual;
            self.at = Some(at());
        }
    }

    pub fn check(self, name: &str, anchor: &str, tol: f64) -> Check {
        let c = Check::measure(name, anchor, self.residual, tol);
        match self.at {
            Some(at) => c.at(at),
            None => c,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Report {
    pub title: String,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Report {
        Report {
            title: title.into(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) -> &mut Self {
        self.checks.push(c);
        self
    }

    pub fn note(&mut self, n: impl Into<String>) -> &mut Self {
        self.notes.push(n.into());
        self
    }

    pub fn absorb(&mut self, other: Report) -> &mut Self {
        self.checks.extend(other.checks);
        self.notes.extend(other.notes);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// The failing check with the largest residual.
    pub fn worst(&self) -> Option<&Check> {
        self.failures()
            .into_iter()
            .max_by(|a, b| a.residual.total_cmp(&b.residual))
    }

    /// `Ok` when every check passes, else `ResidualExceeded` for the worst.
    pub fn ensure(self) -> Result<Report> {
        match self.worst() {
            None => Ok(self),
            Some(c) => Err(Error::ResidualExceeded {
                check: c.name.clone(),
                at: c.at.clone().unwrap_or_default(),
                residual: c.residual,
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# {}", self.title)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        let failed = self.failures().len();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worst_and_ensure() {
        let mut r = Report::new("t");
        r.push(Check::measure("a", "x", 1e-3, 1e-9));
        r.push(Check::measure("b", "x", 0.0, 0.0));
        r.push(Check::measure("c", "x", 2e-3, 1e-9).at("(1,2)"));
        assert!(!r.passed());
        assert_eq!(r.worst().unwrap().name, "c");
        match r.ensure() {
            Err(Error::ResidualExceeded { check, at, .. }) => {
                assert_eq!((check.as_str(), at.as_str()), ("c", "(1,2)"))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nan_fails_and_is_kept() {
        assert!(!Check::measure("n", "x", f64::NAN, 1.0).pass);
        let mut w = Worst::default();
        w.record(f64::NAN, || "here".into());
        w.record(5.0, || "there".into());
        assert_eq!(w.at.as_deref(), Some("here"));
    }
}
