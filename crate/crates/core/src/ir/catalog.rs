//! Closed catalog of named composites and of the step-by-step equalities used
//! to establish the projector decomposition.
//!
//! Standard names: object `V`, module objects (default `W`) with action
//! generator `mu<W>`, algebra generators `mu`, `iota`, `eps`, `coev` (the
//! two-sided coevaluation ĩ), and one `V → V` generator per group element,
//! named by the caller.
//!
//! A chain is a list of displays, each a closed expression with the same
//! domain and codomain; consecutive displays give the identities
//! `<chain>.<k>` (display k equals display k+1).

use std::collections::BTreeMap;

use thiserror::Error;

use super::build::*;
use super::{Context, MorExpr, ObjectExpr, Parity};
use crate::scalar::Coeff;

#[derive(Clone, Debug, PartialEq)]
pub enum Param {
    Element(String),
    Elements(Vec<String>),
    Object(ObjectExpr),
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormulaId {
    pub name: String,
    pub params: BTreeMap<String, Param>,
}

impl FormulaId {
    pub fn new(name: &str) -> Self {
        FormulaId {
            name: name.to_string(),
            params: BTreeMap::new(),
        }
    }

    pub fn element(mut self, slot: &str, name: &str) -> Self {
        self.params
            .insert(slot.to_string(), Param::Element(name.to_string()));
        self
    }

    pub fn elements(mut self, slot: &str, names: &[String]) -> Self {
        self.params
            .insert(slot.to_string(), Param::Elements(names.to_vec()));
        self
    }

    pub fn object(mut self, slot: &str, o: ObjectExpr) -> Self {
        self.params.insert(slot.to_string(), Param::Object(o));
        self
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum FormulaError {
    #[error("unknown formula `{0}`")]
    UnknownFormula(String),
    #[error("formula `{formula}` needs parameter `{param}`")]
    MissingParameter { formula: String, param: String },
}

pub const FORMULAS: &[&str] = &[
    "pi_g",
    "Pi_g",
    "monodromy",
    "mu1",
    "mu2",
    "snake_left",
    "snake_right",
    "trace_g",
    "counit_pair",
    "rigidlike_L",
    "rigidlike_R",
    "induction_action",
];

/// Chains of displayed equalities. Sub-chains rewrite a piece of the enclosing
/// chain in isolation.
pub const CHAINS: &[&str] = &[
    "rigidlike",
    "two_mult_L",
    "two_mult_R",
    "tr_g",
    "pi_g_vhom",
    "image_twisted",
    "image_twisted_a",
    "image_twisted_b",
    "image_twisted_c",
    "image_twisted_d",
    "pig_pih",
    "sum_pi_g",
];

/// The generator name of the action on a module object.
pub fn action_name(module: &str) -> String {
    format!("mu{module}")
}

/// Declarations for `V`, the algebra data, the given module objects and the
/// given group elements.
pub fn standard_context(modules: &[&str], elements: &[&str]) -> Context {
    let v = o("V");
    let mut c = Context::new();
    c.declare("mu", t(v.clone(), v.clone()), v.clone(), Parity::Even)
        .declare("iota", unit(), v.clone(), Parity::Even)
        .declare("eps", v.clone(), unit(), Parity::Even)
        .declare("coev", unit(), t(v.clone(), v.clone()), Parity::Even);
    for m in modules {
        c.declare(&action_name(m), t(v.clone(), o(m)), o(m), Parity::Even);
    }
    for g in elements {
        c.declare(g, v.clone(), v.clone(), Parity::Even);
    }
    c
}

struct Args<'a> {
    id: &'a FormulaId,
}

impl Args<'_> {
    fn missing<T>(&self, slot: &str) -> Result<T, FormulaError> {
        Err(FormulaError::MissingParameter {
            formula: self.id.name.clone(),
            param: slot.to_string(),
        })
    }

    fn element(&self, slot: &str) -> Result<MorExpr, FormulaError> {
        match self.id.params.get(slot) {
            Some(Param::Element(n)) => Ok(gen(n)),
            _ => self.missing(slot),
        }
    }

    fn element_name(&self, slot: &str) -> Result<&str, FormulaError> {
        match self.id.params.get(slot) {
            Some(Param::Element(n)) => Ok(n),
            _ => self.missing(slot),
        }
    }

    fn elements(&self, slot: &str) -> Result<Vec<String>, FormulaError> {
        match self.id.params.get(slot) {
            Some(Param::Elements(ns)) if !ns.is_empty() => Ok(ns.clone()),
            _ => self.missing(slot),
        }
    }

    fn object(&self, slot: &str, default: &str) -> Result<ObjectExpr, FormulaError> {
        match self.id.params.get(slot) {
            Some(Param::Object(x)) => Ok(x.clone()),
            Some(_) => self.missing(slot),
            None => Ok(o(default)),
        }
    }

    /// A module slot: an object generator whose action is `mu<name>`.
    fn module(&self, slot: &str, default: &str) -> Result<(ObjectExpr, MorExpr), FormulaError> {
        match self.object(slot, default)? {
            ObjectExpr::Gen(n) => Ok((o(&n), gen(&action_name(&n)))),
            _ => self.missing(slot),
        }
    }
}

fn v() -> ObjectExpr {
    o("V")
}
fn vv() -> ObjectExpr {
    t(v(), v())
}
fn iv() -> MorExpr {
    id(v())
}
fn mu() -> MorExpr {
    gen("mu")
}
fn coev() -> MorExpr {
    gen("coev")
}
/// ε∘μ, the evaluation of the self-duality.
fn em() -> MorExpr {
    comp(gen("eps"), mu())
}
pub fn monodromy(a: ObjectExpr, b: ObjectExpr) -> MorExpr {
    comp(braid(b.clone(), a.clone()), braid(a, b))
}

/// Π_g on a module (W, μ_W); unnormalized.
pub fn big_pi(g: MorExpr, w: &ObjectExpr, muw: &MorExpr) -> MorExpr {
    let iw = id(w.clone());
    chain(vec![
        lunit_inv(w.clone()),
        ten(coev(), iw.clone()),
        assoc_inv(v(), v(), w.clone()),
        ten(iv(), monodromy(v(), w.clone())),
        ten(iv(), ten(g, iw)),
        ten(iv(), muw.clone()),
        muw.clone(),
    ])
}

pub fn formula(fid: &FormulaId) -> Result<MorExpr, FormulaError> {
    let a = Args { id: fid };
    Ok(match fid.name.as_str() {
        "Pi_g" => {
            let (w, muw) = a.module("W", "W")?;
            big_pi(a.element("g")?, &w, &muw)
        }
        "pi_g" => {
            let (w, muw) = a.module("W", "W")?;
            let n = a.elements("G")?.len() as i64;
            scale(Coeff::recip(n), big_pi(a.element("g")?, &w, &muw))
        }
        "monodromy" => monodromy(a.object("A", "V")?, a.object("B", "W")?),
        "mu1" => {
            let (w1, mu1) = a.module("W1", "W1")?;
            let (w2, _) = a.module("W2", "W2")?;
            chain(vec![assoc(v(), w1, w2.clone()), ten(mu1, id(w2))])
        }
        "mu2" => {
            let (w1, _) = a.module("W1", "W1")?;
            let (w2, mu2) = a.module("W2", "W2")?;
            chain(vec![
                assoc(v(), w1.clone(), w2.clone()),
                ten(braid(v(), w1.clone()), id(w2.clone())),
                assoc_inv(w1.clone(), v(), w2),
                ten(id(w1), mu2),
            ])
        }
        "snake_left" => chain(vec![
            lunit_inv(v()),
            ten(coev(), iv()),
            assoc_inv(v(), v(), v()),
            ten(iv(), em()),
            runit(v()),
        ]),
        "snake_right" => chain(vec![
            runit_inv(v()),
            ten(iv(), coev()),
            assoc(v(), v(), v()),
            ten(em(), iv()),
            lunit(v()),
        ]),
        "trace_g" => chain(vec![coev(), ten(iv(), a.element("g")?), mu()]),
        "counit_pair" => chain(vec![coev(), ten(iv(), gen("eps")), runit(v())]),
        "rigidlike_L" => chain(vec![
            lunit_inv(v()),
            ten(coev(), iv()),
            assoc_inv(v(), v(), v()),
            ten(iv(), mu()),
        ]),
        "rigidlike_R" => chain(vec![
            runit_inv(v()),
            ten(iv(), coev()),
            assoc(v(), v(), v()),
            ten(mu(), iv()),
        ]),
        "induction_action" => {
            let x = a.object("X", "X")?;
            chain(vec![assoc(v(), v(), x.clone()), ten(mu(), id(x))])
        }
        other => return Err(FormulaError::UnknownFormula(other.to_string())),
    })
}

/// Parameters a chain reads: `g`, `g_inv`, `h_inv_g`, `h` (elements), `G`
/// (element list) and `W` (module object).
pub fn chain_params(chain: &str) -> &'static [&'static str] {
    match chain {
        "rigidlike" | "two_mult_L" | "two_mult_R" => &[],
        "tr_g" => &["g", "g_inv"],
        "pi_g_vhom" | "image_twisted" | "image_twisted_c" => &["g", "W"],
        "image_twisted_a" | "image_twisted_b" | "image_twisted_d" => &["W"],
        "pig_pih" => &["g", "h", "h_inv_g", "G", "W"],
        "sum_pi_g" => &["G", "W"],
        _ => &[],
    }
}

/// All displays of a chain, in order.
pub fn chain_displays(chain_name: &str, params: &FormulaId) -> Result<Vec<MorExpr>, FormulaError> {
    let a = Args { id: params };
    let x = super::build::chain;
    let (v, vv, iv) = (v(), vv(), iv());
    let (mu, coev, em) = (mu(), coev(), em());
    let rvv = braid(v.clone(), v.clone());
    Ok(match chain_name {
        "rigidlike" => vec![
            formula(&FormulaId::new("rigidlike_L"))?,
            formula(&FormulaId::new("rigidlike_R"))?,
        ],
        "two_mult_L" => {
            let ivv = id(vv.clone());
            vec![
                x(vec![
                    ten(ivv.clone(), lunit_inv(v.clone())),
                    ten(ivv.clone(), ten(coev.clone(), iv.clone())),
                    ten(ivv.clone(), assoc_inv(v.clone(), v.clone(), v.clone())),
                    ten(ivv.clone(), ten(iv.clone(), mu.clone())),
                    assoc_inv(v.clone(), v.clone(), vv.clone()),
                    ten(iv.clone(), assoc(v.clone(), v.clone(), v.clone())),
                    ten(iv.clone(), ten(em.clone(), iv.clone())),
                    ten(iv.clone(), lunit(v.clone())),
                    em.clone(),
                ]),
                x(vec![
                    assoc_inv(v.clone(), v.clone(), v.clone()),
                    ten(iv.clone(), ten(iv.clone(), lunit_inv(v.clone()))),
                    ten(iv.clone(), ten(iv.clone(), ten(coev.clone(), iv.clone()))),
                    ten(
                        iv.clone(),
                        ten(iv.clone(), assoc_inv(v.clone(), v.clone(), v.clone())),
                    ),
                    ten(iv.clone(), assoc(v.clone(), v.clone(), vv.clone())),
                    ten(iv.clone(), ten(em.clone(), ivv.clone())),
                    ten(iv.clone(), lunit(vv.clone())),
                    ten(iv.clone(), mu.clone()),
                    em.clone(),
                ]),
                x(vec![
                    assoc_inv(v.clone(), v.clone(), v.clone()),
                    ten(iv.clone(), ten(runit_inv(v.clone()), iv.clone())),
                    ten(iv.clone(), ten(ten(iv.clone(), coev.clone()), iv.clone())),
                    ten(iv.clone(), assoc_inv(v.clone(), vv.clone(), v.clone())),
                    ten(
                        iv.clone(),
                        ten(iv.clone(), assoc_inv(v.clone(), v.clone(), v.clone())),
                    ),
                    ten(iv.clone(), assoc(v.clone(), v.clone(), vv.clone())),
                    ten(iv.clone(), assoc(vv.clone(), v.clone(), v.clone())),
                    ten(iv.clone(), ten(ten(em.clone(), iv.clone()), iv.clone())),
                    ten(iv.clone(), ten(lunit(v.clone()), iv.clone())),
                    ten(iv.clone(), mu.clone()),
                    em.clone(),
                ]),
                x(vec![
                    assoc_inv(v.clone(), v.clone(), v.clone()),
                    ten(iv.clone(), mu.clone()),
                    em.clone(),
                ]),
                x(vec![ten(mu.clone(), iv.clone()), em.clone()]),
            ]
        }
        "two_mult_R" => {
            let ivv = id(vv.clone());
            vec![
                x(vec![
                    ten(ivv.clone(), runit_inv(v.clone())),
                    ten(ivv.clone(), ten(iv.clone(), coev.clone())),
                    ten(ivv.clone(), assoc(v.clone(), v.clone(), v.clone())),
                    ten(ivv.clone(), ten(mu.clone(), iv.clone())),
                    assoc_inv(v.clone(), v.clone(), vv.clone()),
                    ten(iv.clone(), assoc(v.clone(), v.clone(), v.clone())),
                    ten(iv.clone(), ten(em.clone(), iv.clone())),
                    ten(iv.clone(), lunit(v.clone())),
                    em.clone(),
                ]),
                x(vec![
                    assoc_inv(v.clone(), v.clone(), v.clone()),
                    ten(iv.clone(), ten(iv.clone(), runit_inv(v.clone()))),
                    ten(iv.clone(), ten(iv.clone(), ten(iv.clone(), coev.clone()))),
                    ten(
                        iv.clone(),
                        ten(iv.clone(), assoc(v.clone(), v.clone(), v.clone())),
                    ),
                    ten(iv.clone(), assoc(v.clone(), vv.clone(), v.clone())),
                    ten(
                        iv.clone(),
                        ten(assoc(v.clone(), v.clone(), v.clone()), iv.clone()),
                    ),
                    ten(iv.clone(), ten(ten(mu.clone(), iv.clone()), iv.clone())),
                    ten(iv.clone(), ten(em.clone(), iv.clone())),
                    ten(iv.clone(), lunit(v.clone())),
                    em.clone(),
                ]),
                x(vec![
                    assoc_inv(v.clone(), v.clone(), v.clone()),
                    ten(iv.clone(), ten(iv.clone(), runit_inv(v.clone()))),
                    ten(iv.clone(), assoc(v.clone(), v.clone(), unit())),
                    ten(iv.clone(), ten(ivv.clone(), coev.clone())),
                    ten(iv.clone(), ten(mu.clone(), ivv.clone())),
                    ten(iv.clone(), assoc(v.clone(), v.clone(), v.clone())),
                    ten(iv.clone(), ten(em.clone(), iv.clone())),
                    ten(iv.clone(), lunit(v.clone())),
                    em.clone(),
                ]),
                x(vec![
                    assoc_inv(v.clone(), v.clone(), v.clone()),
                    ten(iv.clone(), mu.clone()),
                    ten(iv.clone(), runit_inv(v.clone())),
                    ten(iv.clone(), ten(iv.clone(), coev.clone())),
                    ten(iv.clone(), assoc(v.clone(), v.clone(), v.clone())),
                    ten(iv.clone(), ten(em.clone(), iv.clone())),
                    ten(iv.clone(), lunit(v.clone())),
                    em.clone(),
                ]),
                x(vec![
                    assoc_inv(v.clone(), v.clone(), v.clone()),
                    ten(iv.clone(), mu.clone()),
                    em.clone(),
                ]),
            ]
        }
        "tr_g" => {
            let g = a.element("g")?;
            let gi = a.element("g_inv")?;
            vec![
                x(vec![
                    lunit_inv(v.clone()),
                    ten(coev.clone(), iv.clone()),
                    ten(ten(iv.clone(), g.clone()), iv.clone()),
                    ten(mu.clone(), iv.clone()),
                    mu.clone(),
                ]),
                x(vec![
                    lunit_inv(v.clone()),
                    ten(coev.clone(), iv.clone()),
                    ten(ten(gi.clone(), iv.clone()), gi.clone()),
                    ten(mu.clone(), iv.clone()),
                    mu.clone(),
                    g.clone(),
                ]),
                x(vec![
                    gi.clone(),
                    lunit_inv(v.clone()),
                    ten(coev.clone(), iv.clone()),
                    assoc_inv(v.clone(), v.clone(), v.clone()),
                    ten(iv.clone(), mu.clone()),
                    ten(gi.clone(), iv.clone()),
                    mu.clone(),
                    g.clone(),
                ]),
                x(vec![
                    gi.clone(),
                    runit_inv(v.clone()),
                    ten(iv.clone(), coev.clone()),
                    assoc(v.clone(), v.clone(), v.clone()),
                    ten(mu.clone(), iv.clone()),
                    ten(iv.clone(), g.clone()),
                    mu.clone(),
                ]),
                x(vec![
                    gi.clone(),
                    runit_inv(v.clone()),
                    ten(iv.clone(), coev.clone()),
                    ten(iv.clone(), ten(iv.clone(), g.clone())),
                    ten(iv.clone(), mu.clone()),
                    mu.clone(),
                ]),
            ]
        }
        "pi_g_vhom" => {
            let g = a.element("g")?;
            let (w, muw) = a.module("W", "W")?;
            let iw = id(w.clone());
            let vw = t(v.clone(), w.clone());
            let m = monodromy(v.clone(), w.clone());
            let gm = comp(ten(g.clone(), iw.clone()), m.clone());
            let head = || vec![lunit_inv(vw.clone()), ten(coev.clone(), id(vw.clone()))];
            let seq = |mut h: Vec<MorExpr>, rest: Vec<MorExpr>| {
                h.extend(rest);
                x(h)
            };
            vec![
                x(vec![
                    ten(iv.clone(), lunit_inv(w.clone())),
                    ten(iv.clone(), ten(coev.clone(), iw.clone())),
                    ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                    ten(iv.clone(), ten(iv.clone(), gm.clone())),
                    ten(iv.clone(), ten(iv.clone(), muw.clone())),
                    ten(iv.clone(), muw.clone()),
                    muw.clone(),
                ]),
                x(vec![
                    ten(lunit_inv(v.clone()), iw.clone()),
                    ten(braid(unit(), v.clone()), iw.clone()),
                    assoc_inv(v.clone(), unit(), w.clone()),
                    ten(iv.clone(), ten(coev.clone(), iw.clone())),
                    ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                    ten(iv.clone(), ten(iv.clone(), gm.clone())),
                    ten(iv.clone(), assoc(v.clone(), v.clone(), w.clone())),
                    ten(iv.clone(), ten(mu.clone(), iw.clone())),
                    ten(iv.clone(), muw.clone()),
                    muw.clone(),
                ]),
                seq(
                    head(),
                    vec![
                        assoc(vv.clone(), v.clone(), w.clone()),
                        ten(braid(vv.clone(), v.clone()), iw.clone()),
                        assoc_inv(v.clone(), vv.clone(), w.clone()),
                        ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                        ten(iv.clone(), ten(iv.clone(), gm.clone())),
                        ten(iv.clone(), assoc(v.clone(), v.clone(), w.clone())),
                        assoc(v.clone(), vv.clone(), w.clone()),
                        ten(ten(iv.clone(), mu.clone()), iw.clone()),
                        ten(mu.clone(), iw.clone()),
                        muw.clone(),
                    ],
                ),
                seq(
                    head(),
                    vec![
                        assoc(vv.clone(), v.clone(), w.clone()),
                        ten(assoc_inv(v.clone(), v.clone(), v.clone()), iw.clone()),
                        ten(ten(iv.clone(), rvv.clone()), iw.clone()),
                        ten(assoc(v.clone(), v.clone(), v.clone()), iw.clone()),
                        ten(ten(rvv.clone(), iv.clone()), iw.clone()),
                        assoc_inv(vv.clone(), v.clone(), w.clone()),
                        assoc_inv(v.clone(), v.clone(), vw.clone()),
                        ten(iv.clone(), ten(iv.clone(), gm.clone())),
                        assoc(v.clone(), v.clone(), vw.clone()),
                        assoc(vv.clone(), v.clone(), w.clone()),
                        ten(ten(mu.clone(), iv.clone()), iw.clone()),
                        ten(mu.clone(), iw.clone()),
                        muw.clone(),
                    ],
                ),
                seq(
                    head(),
                    vec![
                        assoc(vv.clone(), v.clone(), w.clone()),
                        ten(assoc_inv(v.clone(), v.clone(), v.clone()), iw.clone()),
                        ten(ten(iv.clone(), rvv.clone()), iw.clone()),
                        ten(assoc(v.clone(), v.clone(), v.clone()), iw.clone()),
                        assoc_inv(vv.clone(), v.clone(), w.clone()),
                        ten(id(vv.clone()), gm.clone()),
                        assoc(vv.clone(), v.clone(), w.clone()),
                        ten(assoc_inv(v.clone(), v.clone(), v.clone()), iw.clone()),
                        ten(ten(iv.clone(), mu.clone()), iw.clone()),
                        ten(mu.clone(), iw.clone()),
                        muw.clone(),
                    ],
                ),
                seq(
                    head(),
                    vec![
                        assoc(vv.clone(), v.clone(), w.clone()),
                        ten(assoc_inv(v.clone(), v.clone(), v.clone()), iw.clone()),
                        ten(ten(iv.clone(), rvv.clone()), iw.clone()),
                        ten(assoc(v.clone(), v.clone(), v.clone()), iw.clone()),
                        assoc_inv(vv.clone(), v.clone(), w.clone()),
                        ten(id(vv.clone()), gm.clone()),
                        assoc_inv(v.clone(), v.clone(), vw.clone()),
                        ten(iv.clone(), assoc(v.clone(), v.clone(), w.clone())),
                        ten(iv.clone(), ten(rvv.clone(), iw.clone())),
                        ten(iv.clone(), ten(mu.clone(), iw.clone())),
                        ten(iv.clone(), muw.clone()),
                        muw.clone(),
                    ],
                ),
                seq(
                    head(),
                    vec![
                        assoc(vv.clone(), v.clone(), w.clone()),
                        ten(assoc_inv(v.clone(), v.clone(), v.clone()), iw.clone()),
                        ten(ten(iv.clone(), rvv.clone()), iw.clone()),
                        assoc_inv(v.clone(), vv.clone(), w.clone()),
                        ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                        ten(iv.clone(), ten(iv.clone(), m.clone())),
                        ten(iv.clone(), assoc(v.clone(), v.clone(), w.clone())),
                        ten(iv.clone(), ten(rvv.clone(), iw.clone())),
                        ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                        ten(iv.clone(), ten(iv.clone(), muw.clone())),
                        ten(iv.clone(), ten(g.clone(), iw.clone())),
                        ten(iv.clone(), muw.clone()),
                        muw.clone(),
                    ],
                ),
                seq(
                    head(),
                    vec![
                        assoc_inv(v.clone(), v.clone(), vw.clone()),
                        ten(iv.clone(), assoc(v.clone(), v.clone(), w.clone())),
                        ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                        ten(iv.clone(), braid(v.clone(), vw.clone())),
                        ten(iv.clone(), assoc_inv(v.clone(), w.clone(), v.clone())),
                        ten(iv.clone(), assoc(v.clone(), w.clone(), v.clone())),
                        ten(iv.clone(), braid(vw.clone(), v.clone())),
                        ten(iv.clone(), assoc(v.clone(), v.clone(), w.clone())),
                        ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                        ten(iv.clone(), ten(iv.clone(), muw.clone())),
                        ten(iv.clone(), ten(g.clone(), iw.clone())),
                        ten(iv.clone(), muw.clone()),
                        muw.clone(),
                    ],
                ),
                comp(big_pi(g.clone(), &w, &muw), muw.clone()),
            ]
        }
        "image_twisted" => {
            let g = a.element("g")?;
            let (w, muw) = a.module("W", "W")?;
            let iw = id(w.clone());
            let vw = t(v.clone(), w.clone());
            let m = monodromy(v.clone(), w.clone());
            let gm = comp(ten(g.clone(), iw.clone()), m.clone());
            let ivv = id(vv.clone());
            let head = vec![lunit_inv(vw.clone()), ten(coev.clone(), id(vw.clone()))];
            let cat = |parts: Vec<Vec<MorExpr>>| x(parts.into_iter().flatten().collect());
            vec![
                x(vec![
                    m.clone(),
                    ten(iv.clone(), lunit_inv(w.clone())),
                    ten(iv.clone(), ten(coev.clone(), iw.clone())),
                    ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                    ten(g.clone(), ten(iv.clone(), gm.clone())),
                    ten(iv.clone(), ten(iv.clone(), muw.clone())),
                    ten(iv.clone(), muw.clone()),
                    muw.clone(),
                ]),
                cat(vec![
                    vec![m.clone()],
                    head.clone(),
                    vec![
                        assoc(vv.clone(), v.clone(), w.clone()),
                        ten(assoc_inv(v.clone(), v.clone(), v.clone()), iw.clone()),
                        ten(ten(iv.clone(), rvv.clone()), iw.clone()),
                        ten(assoc(v.clone(), v.clone(), v.clone()), iw.clone()),
                        ten(ten(rvv.clone(), iv.clone()), iw.clone()),
                        assoc_inv(vv.clone(), v.clone(), w.clone()),
                        ten(ten(g.clone(), iv.clone()), gm.clone()),
                        assoc(vv.clone(), v.clone(), w.clone()),
                        ten(assoc_inv(v.clone(), v.clone(), v.clone()), iw.clone()),
                        ten(ten(iv.clone(), rvv.clone()), iw.clone()),
                        ten(assoc(v.clone(), v.clone(), v.clone()), iw.clone()),
                        ten(ten(mu.clone(), iv.clone()), iw.clone()),
                        ten(mu.clone(), iw.clone()),
                        muw.clone(),
                    ],
                ]),
                cat(vec![
                    head.clone(),
                    vec![
                        ten(ivv.clone(), m.clone()),
                        assoc(vv.clone(), v.clone(), w.clone()),
                        ten(assoc_inv(v.clone(), v.clone(), v.clone()), iw.clone()),
                        ten(ten(iv.clone(), rvv.clone()), iw.clone()),
                        ten(assoc(v.clone(), v.clone(), v.clone()), iw.clone()),
                        assoc_inv(vv.clone(), v.clone(), w.clone()),
                        ten(ivv.clone(), m.clone()),
                        assoc(vv.clone(), v.clone(), w.clone()),
                        ten(ten(rvv.clone(), iv.clone()), iw.clone()),
                        ten(assoc_inv(v.clone(), v.clone(), v.clone()), iw.clone()),
                        ten(ten(iv.clone(), rvv.clone()), iw.clone()),
                        ten(assoc(v.clone(), v.clone(), v.clone()), iw.clone()),
                        ten(ten(mu.clone(), iv.clone()), iw.clone()),
                        ten(ten(g.clone(), iv.clone()), iw.clone()),
                        ten(mu.clone(), iw.clone()),
                        muw.clone(),
                    ],
                ]),
                cat(vec![
                    head.clone(),
                    vec![
                        ten(ivv.clone(), m.clone()),
                        assoc_inv(v.clone(), v.clone(), vw.clone()),
                        ten(iv.clone(), assoc(v.clone(), v.clone(), w.clone())),
                        assoc(v.clone(), vv.clone(), w.clone()),
                        ten(ten(iv.clone(), rvv.clone()), iw.clone()),
                        assoc_inv(v.clone(), vv.clone(), w.clone()),
                        ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                        assoc(v.clone(), v.clone(), vw.clone()),
                        ten(ivv.clone(), m.clone()),
                        assoc(vv.clone(), v.clone(), w.clone()),
                        ten(assoc_inv(v.clone(), v.clone(), v.clone()), iw.clone()),
                        ten(ten(iv.clone(), mu.clone()), iw.clone()),
                        ten(ten(iv.clone(), g.clone()), iw.clone()),
                        ten(mu.clone(), iw.clone()),
                        muw.clone(),
                    ],
                ]),
                cat(vec![
                    head.clone(),
                    vec![
                        assoc_inv(v.clone(), v.clone(), vw.clone()),
                        ten(iv.clone(), ten(iv.clone(), m.clone())),
                        ten(iv.clone(), assoc(v.clone(), v.clone(), w.clone())),
                        ten(iv.clone(), ten(rvv.clone(), iw.clone())),
                        ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                        ten(iv.clone(), ten(iv.clone(), m.clone())),
                        ten(iv.clone(), assoc(v.clone(), v.clone(), w.clone())),
                        assoc(v.clone(), vv.clone(), w.clone()),
                        ten(ten(iv.clone(), mu.clone()), iw.clone()),
                        ten(ten(iv.clone(), g.clone()), iw.clone()),
                        ten(mu.clone(), iw.clone()),
                        muw.clone(),
                    ],
                ]),
                cat(vec![
                    head.clone(),
                    vec![
                        assoc_inv(v.clone(), v.clone(), vw.clone()),
                        ten(iv.clone(), assoc(v.clone(), v.clone(), w.clone())),
                        ten(iv.clone(), monodromy(vv.clone(), w.clone())),
                        ten(iv.clone(), ten(rvv.clone(), iw.clone())),
                        assoc(v.clone(), vv.clone(), w.clone()),
                        ten(ten(iv.clone(), mu.clone()), iw.clone()),
                        ten(ten(iv.clone(), g.clone()), iw.clone()),
                        ten(mu.clone(), iw.clone()),
                        muw.clone(),
                    ],
                ]),
                x(vec![
                    ten(lunit_inv(v.clone()), iw.clone()),
                    ten(ten(coev.clone(), iv.clone()), iw.clone()),
                    assoc_inv(vv.clone(), v.clone(), w.clone()),
                    assoc_inv(v.clone(), v.clone(), vw.clone()),
                    ten(iv.clone(), assoc(v.clone(), v.clone(), w.clone())),
                    ten(iv.clone(), ten(mu.clone(), iw.clone())),
                    ten(iv.clone(), m.clone()),
                    assoc(v.clone(), v.clone(), w.clone()),
                    ten(ten(iv.clone(), g.clone()), iw.clone()),
                    ten(mu.clone(), iw.clone()),
                    muw.clone(),
                ]),
                x(vec![
                    ten(lunit_inv(v.clone()), iw.clone()),
                    ten(ten(coev.clone(), iv.clone()), iw.clone()),
                    ten(assoc_inv(v.clone(), v.clone(), v.clone()), iw.clone()),
                    ten(ten(iv.clone(), mu.clone()), iw.clone()),
                    assoc_inv(v.clone(), v.clone(), w.clone()),
                    ten(iv.clone(), gm.clone()),
                    ten(iv.clone(), muw.clone()),
                    muw.clone(),
                ]),
                x(vec![
                    ten(iv.clone(), lunit_inv(w.clone())),
                    assoc(v.clone(), unit(), w.clone()),
                    ten(ten(iv.clone(), coev.clone()), iw.clone()),
                    ten(assoc(v.clone(), v.clone(), v.clone()), iw.clone()),
                    ten(ten(mu.clone(), iv.clone()), iw.clone()),
                    assoc_inv(v.clone(), v.clone(), w.clone()),
                    ten(iv.clone(), gm.clone()),
                    ten(iv.clone(), muw.clone()),
                    muw.clone(),
                ]),
                x(vec![
                    ten(iv.clone(), lunit_inv(w.clone())),
                    ten(iv.clone(), ten(coev.clone(), iw.clone())),
                    ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                    assoc(v.clone(), v.clone(), vw.clone()),
                    ten(ivv.clone(), gm.clone()),
                    ten(ivv.clone(), muw.clone()),
                    ten(mu.clone(), iw.clone()),
                    muw.clone(),
                ]),
                x(vec![
                    ten(iv.clone(), lunit_inv(w.clone())),
                    ten(iv.clone(), ten(coev.clone(), iw.clone())),
                    ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                    ten(iv.clone(), ten(iv.clone(), gm.clone())),
                    ten(iv.clone(), ten(iv.clone(), muw.clone())),
                    ten(iv.clone(), muw.clone()),
                    muw.clone(),
                ]),
            ]
        }
        "image_twisted_a" => {
            let (w, _) = a.module("W", "W")?;
            let iw = id(w.clone());
            let vw = t(v.clone(), w.clone());
            vec![
                x(vec![
                    ten(runit_inv(v.clone()), iw.clone()),
                    assoc_inv(v.clone(), unit(), w.clone()),
                    ten(iv.clone(), ten(coev.clone(), iw.clone())),
                    ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                ]),
                x(vec![
                    ten(lunit_inv(v.clone()), iw.clone()),
                    ten(braid(unit(), v.clone()), iw.clone()),
                    ten(ten(iv.clone(), coev.clone()), iw.clone()),
                    assoc_inv(v.clone(), vv.clone(), w.clone()),
                    ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                ]),
                x(vec![
                    lunit_inv(vw.clone()),
                    assoc(unit(), v.clone(), w.clone()),
                    ten(ten(coev.clone(), iv.clone()), iw.clone()),
                    ten(braid(vv.clone(), v.clone()), iw.clone()),
                    assoc_inv(v.clone(), vv.clone(), w.clone()),
                    ten(iv.clone(), assoc_inv(v.clone(), v.clone(), w.clone())),
                ]),
                x(vec![
                    lunit_inv(vw.clone()),
                    ten(coev.clone(), id(vw.clone())),
                    assoc(vv.clone(), v.clone(), w.clone()),
                    ten(assoc_inv(v.clone(), v.clone(), v.clone()), iw.clone()),
                    ten(ten(iv.clone(), rvv.clone()), iw.clone()),
                    ten(assoc(v.clone(), v.clone(), v.clone()), iw.clone()),
                    ten(ten(rvv.clone(), iv.clone()), iw.clone()),
                    assoc_inv(vv.clone(), v.clone(), w.clone()),
                    assoc_inv(v.clone(), v.clone(), vw.clone()),
                ]),
            ]
        }
        "image_twisted_b" => {
            let (w, muw) = a.module("W", "W")?;
            let iw = id(w.clone());
            let vw = t(v.clone(), w.clone());
            vec![
                x(vec![
                    ten(iv.clone(), ten(iv.clone(), muw.clone())),
                    ten(iv.clone(), muw.clone()),
                    muw.clone(),
                ]),
                x(vec![
                    ten(iv.clone(), assoc(v.clone(), v.clone(), w.clone())),
                    ten(iv.clone(), ten(mu.clone(), iw.clone())),
                    ten(iv.clone(), muw.clone()),
                    muw.clone(),
                ]),
                x(vec![
                    ten(iv.clone(), assoc(v.clone(), v.clone(), w.clone())),
                    ten(iv.clone(), ten(rvv.clone(), iw.clone())),
                    ten(iv.clone(), ten(mu.clone(), iw.clone())),
                    assoc(v.clone(), v.clone(), w.clone()),
                    ten(mu.clone(), iw.clone()),
                    muw.clone(),
                ]),
                x(vec![
                    ten(iv.clone(), assoc(v.clone(), v.clone(), w.clone())),
                    assoc(v.clone(), vv.clone(), w.clone()),
                    ten(ten(iv.clone(), rvv.clone()), iw.clone()),
                    ten(ten(iv.clone(), mu.clone()), iw.clone()),
                    ten(mu.clone(), iw.clone()),
                    muw.clone(),
                ]),
                x(vec![
                    assoc(v.clone(), v.clone(), vw.clone()),
                    assoc(vv.clone(), v.clone(), w.clone()),
                    ten(assoc_inv(v.clone(), v.clone(), v.clone()), iw.clone()),
                    ten(ten(iv.clone(), rvv.clone()), iw.clone()),
                    ten(assoc(v.clone(), v.clone(), v.clone()), iw.clone()),
                    ten(ten(mu.clone(), iv.clone()), iw.clone()),
                    ten(mu.clone(), iw.clone()),
                    muw.clone(),
                ]),
            ]
        }
        "image_twisted_c" => {
            let g = a.element("g")?;
            vec![
                x(vec![
                    ten(rvv.clone(), iv.clone()),
                    assoc_inv(v.clone(), v.clone(), v.clone()),
                    ten(iv.clone(), rvv.clone()),
                    assoc(v.clone(), v.clone(), v.clone()),
                    ten(mu.clone(), iv.clone()),
                    ten(g.clone(), iv.clone()),
                    mu.clone(),
                ]),
                x(vec![
                    assoc_inv(v.clone(), v.clone(), v.clone()),
                    braid(v.clone(), vv.clone()),
                    ten(mu.clone(), iv.clone()),
                    ten(g.clone(), iv.clone()),
                    mu.clone(),
                ]),
                x(vec![
                    assoc_inv(v.clone(), v.clone(), v.clone()),
                    ten(iv.clone(), mu.clone()),
                    ten(iv.clone(), g.clone()),
                    rvv.clone(),
                    mu.clone(),
                ]),
                x(vec![
                    assoc_inv(v.clone(), v.clone(), v.clone()),
                    ten(iv.clone(), mu.clone()),
                    ten(iv.clone(), g.clone()),
                    mu.clone(),
                ]),
            ]
        }
        "image_twisted_d" => {
            let (w, _) = a.module("W", "W")?;
            let iw = id(w.clone());
            let m = monodromy(v.clone(), w.clone());
            vec![
                x(vec![
                    ten(iv.clone(), m.clone()),
                    assoc(v.clone(), v.clone(), w.clone()),
                    ten(rvv.clone(), iw.clone()),
                    assoc_inv(v.clone(), v.clone(), w.clone()),
                    ten(iv.clone(), m.clone()),
                    assoc(v.clone(), v.clone(), w.clone()),
                ]),
                x(vec![
                    ten(iv.clone(), braid(v.clone(), w.clone())),
                    assoc(v.clone(), w.clone(), v.clone()),
                    ten(braid(v.clone(), w.clone()), iv.clone()),
                    assoc_inv(w.clone(), v.clone(), v.clone()),
                    ten(iw.clone(), rvv.clone()),
                    assoc(w.clone(), v.clone(), v.clone()),
                    ten(braid(w.clone(), v.clone()), iv.clone()),
                    assoc_inv(v.clone(), w.clone(), v.clone()),
                    ten(iv.clone(), braid(w.clone(), v.clone())),
                    assoc(v.clone(), v.clone(), w.clone()),
                ]),
                x(vec![
                    ten(iv.clone(), braid(v.clone(), w.clone())),
                    assoc(v.clone(), w.clone(), v.clone()),
                    ten(braid(v.clone(), w.clone()), iv.clone()),
                    ten(braid(w.clone(), v.clone()), iv.clone()),
                    assoc_inv(v.clone(), w.clone(), v.clone()),
                    ten(iv.clone(), braid(w.clone(), v.clone())),
                    assoc(v.clone(), v.clone(), w.clone()),
                    ten(rvv.clone(), iw.clone()),
                ]),
                x(vec![
                    assoc(v.clone(), v.clone(), w.clone()),
                    braid(vv.clone(), w.clone()),
                    assoc(w.clone(), v.clone(), v.clone()),
                    assoc_inv(w.clone(), v.clone(), v.clone()),
                    braid(w.clone(), vv.clone()),
                    ten(rvv.clone(), iw.clone()),
                ]),
            ]
        }
        "pig_pih" => {
            let g = a.element("g")?;
            let hg = a.element("h_inv_g")?;
            let n = a.elements("G")?.len() as i64;
            let delta = a.element_name("g")? == a.element_name("h")?;
            let (w, muw) = a.module("W", "W")?;
            let iw = id(w.clone());
            vec![
                big_pi(g, &w, &muw),
                x(vec![
                    lunit_inv(w.clone()),
                    ten(coev.clone(), iw.clone()),
                    assoc_inv(v.clone(), v.clone(), w.clone()),
                    ten(iv.clone(), ten(hg.clone(), iw.clone())),
                    ten(iv.clone(), muw.clone()),
                    muw.clone(),
                ]),
                x(vec![
                    lunit_inv(w.clone()),
                    ten(coev.clone(), iw.clone()),
                    ten(ten(iv.clone(), hg.clone()), iw.clone()),
                    ten(mu.clone(), iw.clone()),
                    muw.clone(),
                ]),
                scale(Coeff::int(if delta { n } else { 0 }), iw.clone()),
            ]
        }
        "sum_pi_g" => {
            let gs = a.elements("G")?;
            let n = gs.len() as i64;
            let (w, muw) = a.module("W", "W")?;
            let iw = id(w.clone());
            let head = vec![
                lunit_inv(w.clone()),
                ten(coev.clone(), iw.clone()),
                assoc_inv(v.clone(), v.clone(), w.clone()),
                ten(iv.clone(), monodromy(v.clone(), w.clone())),
            ];
            let avg = scale(Coeff::recip(n), sum(gs.iter().map(|g| gen(g)).collect()));
            let mut d1 = head.clone();
            d1.extend([
                ten(iv.clone(), ten(avg, iw.clone())),
                ten(iv.clone(), muw.clone()),
                muw.clone(),
            ]);
            let mut d2 = head;
            d2.extend([
                ten(iv.clone(), ten(gen("eps"), iw.clone())),
                ten(iv.clone(), lunit(w.clone())),
                muw.clone(),
            ]);
            let recovered = super::build::chain(vec![
                coev.clone(),
                ten(iv.clone(), gen("eps")),
                runit(v.clone()),
            ]);
            vec![
                sum(gs
                    .iter()
                    .map(|g| scale(Coeff::recip(n), big_pi(gen(g), &w, &muw)))
                    .collect()),
                x(d1),
                x(d2),
                x(vec![
                    lunit_inv(w.clone()),
                    ten(coev.clone(), iw.clone()),
                    ten(ten(iv.clone(), gen("eps")), iw.clone()),
                    assoc_inv(v.clone(), unit(), w.clone()),
                    ten(iv.clone(), lunit(w.clone())),
                    muw.clone(),
                ]),
                x(vec![
                    lunit_inv(w.clone()),
                    ten(recovered, iw.clone()),
                    muw.clone(),
                ]),
                iw,
            ]
        }
        other => return Err(FormulaError::UnknownFormula(other.to_string())),
    })
}

/// One step of a chain as an identity to be checked.
#[derive(Clone, Debug)]
pub struct ChainIdentity {
    pub key: String,
    pub lhs: MorExpr,
    pub rhs: MorExpr,
}

impl ChainIdentity {
    pub fn anchor(&self) -> String {
        format!("catalog:{}", self.key)
    }
}

/// Consecutive-display identities of a chain.
pub fn chain_identities(
    chain_name: &str,
    params: &FormulaId,
) -> Result<Vec<ChainIdentity>, FormulaError> {
    let displays = chain_displays(chain_name, params)?;
    Ok(displays
        .windows(2)
        .enumerate()
        .map(|(k, w)| ChainIdentity {
            key: format!("{chain_name}.{k}"),
            lhs: w[0].clone(),
            rhs: w[1].clone(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{text, typecheck};

    fn params() -> FormulaId {
        let gs = vec!["g0".to_string(), "g1".to_string()];
        FormulaId::new("params")
            .element("g", "g1")
            .element("g_inv", "g1")
            .element("h", "g1")
            .element("h_inv_g", "g0")
            .elements("G", &gs)
    }

    fn ctx() -> Context {
        standard_context(&["W", "W1", "W2", "X"], &["g0", "g1"])
    }

    #[test]
    fn every_formula_typechecks() {
        let c = ctx();
        for name in FORMULAS {
            let mut id = params();
            id.name = name.to_string();
            let e = formula(&id).unwrap();
            typecheck(&e, &c).unwrap_or_else(|err| panic!("{name}: {err}"));
            assert_eq!(text::parse(&text::render(&e)).unwrap(), e, "{name}");
        }
    }

    #[test]
    fn every_chain_display_shares_its_type() {
        let c = ctx();
        for name in CHAINS {
            let ds = chain_displays(name, &params()).unwrap();
            assert!(ds.len() >= 2, "{name}");
            let ty = typecheck(&ds[0], &c).unwrap_or_else(|e| panic!("{name}.0: {e}"));
            for (k, d) in ds.iter().enumerate() {
                let t = typecheck(d, &c).unwrap_or_else(|e| panic!("{name}.{k}: {e}"));
                assert_eq!(t, ty, "{name} display {k}");
            }
        }
    }

    #[test]
    fn monodromy_shape() {
        let e = formula(
            &FormulaId::new("monodromy")
                .object("A", o("V"))
                .object("B", o("W")),
        )
        .unwrap();
        assert_eq!(e, comp(braid(o("W"), o("V")), braid(o("V"), o("W"))));
    }

    #[test]
    fn missing_and_unknown() {
        assert_eq!(
            formula(&FormulaId::new("nope")),
            Err(FormulaError::UnknownFormula("nope".into()))
        );
        assert!(matches!(
            formula(&FormulaId::new("pi_g")),
            Err(FormulaError::MissingParameter { .. })
        ));
    }
}
