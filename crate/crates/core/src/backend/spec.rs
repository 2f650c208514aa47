//! Fusion data of a skeletal braided category.
//!
//! F-symbol convention: for labels `(a, b, c, d; e, f)` the left tree
//! `((a b)_e c)_d` equals `Σ_f F[e][f]` times the right tree `(a (b c)_f)_d`.
//! R-symbol `(a, b; c)` is the braiding `a⊠b → b⊠a` on the `c` channel.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::scalar::Coeff;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScalarMode {
    Float { tol: f64 },
    Exact,
}

impl ScalarMode {
    pub fn tol(self) -> f64 {
        match self {
            ScalarMode::Float { tol } => tol,
            ScalarMode::Exact => 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CategorySpec {
    pub name: String,
    pub simples: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    pub parity: Vec<u8>,
    /// Admissible triples `(a, b, c)`: `N(a, b; c) = 1`.
    pub fusion: BTreeSet<(usize, usize, usize)>,
    pub f: BTreeMap<[usize; 6], Coeff>,
    pub r: BTreeMap<[usize; 3], Coeff>,
    pub twist: Vec<Coeff>,
    pub mode: ScalarMode,
}

impl CategorySpec {
    pub fn rank(&self) -> usize {
        self.simples.len()
    }

    pub fn label(&self, name: &str) -> Result<usize> {
        self.simples
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn admissible(&self, a: usize, b: usize, c: usize) -> bool {
        self.fusion.contains(&(a, b, c))
    }

    /// Channels of `a⊠b`, ascending.
    pub fn fuse(&self, a: usize, b: usize) -> Vec<usize> {
        self.fusion
            .range((a, b, 0)..=(a, b, usize::MAX))
            .map(|t| t.2)
            .collect()
    }

    /// Every scalar in the tables is a Gaussian rational.
    pub fn is_rational(&self) -> bool {
        let rat = |c: &Coeff| {
            matches!(
                (c.re, c.im),
                (crate::scalar::Real::Rat(..), crate::scalar::Real::Rat(..))
            )
        };
        self.f.values().all(rat) && self.r.values().all(rat) && self.twist.iter().all(rat)
    }

    /// Admissible F-symbol label tuples `(a, b, c, d, e, f)`.
    pub fn f_tuples(&self) -> Vec<[usize; 6]> {
        let n = self.rank();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for e in self.fuse(a, b) {
                        for d in self.fuse(e, c) {
                            for f in self.fuse(b, c) {
                                if self.admissible(a, f, d) {
                                    out.push([a, b, c, d, e, f]);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn r_tuples(&self) -> Vec<[usize; 3]> {
        self.fusion.iter().map(|&(a, b, c)| [a, b, c]).collect()
    }

    /// Structural completeness: unit and dual rules, table coverage,
    /// multiplicity-free symmetric fusion.
    pub fn check_tables(&self) -> Result<()> {
        let n = self.rank();
        let name = |i: usize| {
            self.simples
                .get(i)
                .cloned()
                .unwrap_or_else(|| format!("#{i}"))
        };
        if self.unit >= n || self.dual.len() != n || self.parity.len() != n || self.twist.len() != n
        {
            return Err(Error::Format(
                "label tables have inconsistent lengths".into(),
            ));
        }
        for &(a, b, c) in &self.fusion {
            if a >= n || b >= n || c >= n {
                return Err(Error::Format("fusion triple out of range".into()));
            }
        }
        for a in 0..n {
            let u = self.unit;
            if self.fuse(u, a) != vec![a] || self.fuse(a, u) != vec![a] {
                return Err(Error::MissingEntry(format!("unit fusion for {}", name(a))));
            }
            if !self.admissible(a, self.dual[a], u) {
                return Err(Error::MissingEntry(format!(
                    "N({}, {}; {})",
                    name(a),
                    name(self.dual[a]),
                    name(u)
                )));
            }
        }
        for t in self.f_tuples() {
            if !self.f.contains_key(&t) {
                let s: Vec<String> = t.iter().map(|&i| name(i)).collect();
                return Err(Error::MissingEntry(format!("F({})", s.join(","))));
            }
        }
        for t in self.r_tuples() {
            if !self.r.contains_key(&t) {
                let s: Vec<String> = t.iter().map(|&i| name(i)).collect();
                return Err(Error::MissingEntry(format!("R({})", s.join(","))));
            }
        }
        Ok(())
    }
}
