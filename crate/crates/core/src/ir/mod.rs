//! Expressions for objects and morphisms of the free braided monoidal
//! supercategory on a set of declared generators.
//!
//! Conventions:
//! - `Compose(after, before)` is `after ∘ before`.
//! - `Assoc(a, b, c)` is `a⊠(b⊠c) → (a⊠b)⊠c`; the inverse flag reverses it.
//! - `LUnit(a)`: `1⊠a → a`, `RUnit(a)`: `a⊠1 → a`.
//! - `Braid(a, b)`: `a⊠b → b⊠a`; with the inverse flag it is `R_{a,b}⁻¹: b⊠a → a⊠b`.
//!
//! Generator expressions carry only a name; domain, codomain and parity live
//! in a [`Context`]. Super signs are not encoded here, only parities.

pub mod catalog;
pub mod random;
pub mod simplify;
pub mod text;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::Coeff;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ObjectExpr {
    Unit,
    Gen(String),
    Tensor(Box<ObjectExpr>, Box<ObjectExpr>),
}

impl ObjectExpr {
    pub fn gen(name: &str) -> ObjectExpr {
        ObjectExpr::Gen(name.to_string())
    }

    pub fn tensor(a: ObjectExpr, b: ObjectExpr) -> ObjectExpr {
        ObjectExpr::Tensor(Box::new(a), Box::new(b))
    }

    pub fn leaves(&self) -> usize {
        match self {
            ObjectExpr::Tensor(a, b) => a.leaves() + b.leaves(),
            _ => 1,
        }
    }
}

impl fmt::Display for ObjectExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render_object(self))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn add(self, o: Parity) -> Parity {
        match (self, o) {
            (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }

    pub fn bit(self) -> Option<u8> {
        match self {
            Parity::Even => Some(0),
            Parity::Odd => Some(1),
            Parity::Mixed => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum MorExpr {
    Identity(ObjectExpr),
    Gen(String),
    Compose(Box<MorExpr>, Box<MorExpr>),
    Tensor(Box<MorExpr>, Box<MorExpr>),
    Assoc(ObjectExpr, ObjectExpr, ObjectExpr, bool),
    LUnit(ObjectExpr, bool),
    RUnit(ObjectExpr, bool),
    Braid(ObjectExpr, ObjectExpr, bool),
    Scale(Coeff, Box<MorExpr>),
    Sum(Vec<MorExpr>),
}

impl MorExpr {
    pub fn node_count(&self) -> usize {
        match self {
            MorExpr::Compose(a, b) | MorExpr::Tensor(a, b) => 1 + a.node_count() + b.node_count(),
            MorExpr::Scale(_, a) => 1 + a.node_count(),
            MorExpr::Sum(ts) => 1 + ts.iter().map(MorExpr::node_count).sum::<usize>(),
            _ => 1,
        }
    }

    pub fn braid_count(&self) -> usize {
        match self {
            MorExpr::Compose(a, b) | MorExpr::Tensor(a, b) => a.braid_count() + b.braid_count(),
            MorExpr::Scale(_, a) => a.braid_count(),
            MorExpr::Sum(ts) => ts.iter().map(MorExpr::braid_count).sum(),
            MorExpr::Braid(..) => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for MorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&text::render(self))
    }
}

/// Declared type of a morphism generator.
#[derive(Clone, Debug, PartialEq)]
pub struct Decl {
    pub dom: ObjectExpr,
    pub cod: ObjectExpr,
    pub parity: Parity,
}

/// Generator declarations.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Context {
    pub decls: BTreeMap<String, Decl>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(
        &mut self,
        name: &str,
        dom: ObjectExpr,
        cod: ObjectExpr,
        parity: Parity,
    ) -> &mut Self {
        self.decls
            .insert(name.to_string(), Decl { dom, cod, parity });
        self
    }

    pub fn get(&self, name: &str) -> Option<&Decl> {
        self.decls.get(name)
    }
}

#[derive(Clone, Debug, Error, PartialEq)]
pub enum TypeError {
    #[error("composition mismatch in `{subterm}`: expected {expected}, found {found}")]
    CompositionMismatch {
        subterm: String,
        expected: String,
        found: String,
    },
    #[error("undeclared generator `{0}`")]
    UndeclaredGenerator(String),
    #[error("empty sum")]
    EmptySum,
}

fn mismatch(e: &MorExpr, expected: &ObjectExpr, found: &ObjectExpr) -> TypeError {
    TypeError::CompositionMismatch {
        subterm: text::render(e),
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

/// Domain and codomain of `e`.
pub fn typecheck(e: &MorExpr, ctx: &Context) -> Result<(ObjectExpr, ObjectExpr), TypeError> {
    use ObjectExpr as O;
    let t = O::tensor;
    Ok(match e {
        MorExpr::Identity(a) => (a.clone(), a.clone()),
        MorExpr::Gen(n) => {
            let d = ctx
                .get(n)
                .ok_or_else(|| TypeError::UndeclaredGenerator(n.clone()))?;
            (d.dom.clone(), d.cod.clone())
        }
        MorExpr::Compose(f, g) => {
            let (fd, fc) = typecheck(f, ctx)?;
            let (gd, gc) = typecheck(g, ctx)?;
            if gc != fd {
                return Err(mismatch(e, &fd, &gc));
            }
            (gd, fc)
        }
        MorExpr::Tensor(f, g) => {
            let (fd, fc) = typecheck(f, ctx)?;
            let (gd, gc) = typecheck(g, ctx)?;
            (t(fd, gd), t(fc, gc))
        }
        MorExpr::Assoc(a, b, c, inv) => {
            let right = t(a.clone(), t(b.clone(), c.clone()));
            let left = t(t(a.clone(), b.clone()), c.clone());
            if *inv {
                (left, right)
            } else {
                (right, left)
            }
        }
        MorExpr::LUnit(a, inv) => {
            let d = t(O::Unit, a.clone());
            if *inv {
                (a.clone(), d)
            } else {
                (d, a.clone())
            }
        }
        MorExpr::RUnit(a, inv) => {
            let d = t(a.clone(), O::Unit);
            if *inv {
                (a.clone(), d)
            } else {
                (d, a.clone())
            }
        }
        MorExpr::Braid(a, b, inv) => {
            let ab = t(a.clone(), b.clone());
            let ba = t(b.clone(), a.clone());
            if *inv {
                (ba, ab)
            } else {
                (ab, ba)
            }
        }
        MorExpr::Scale(_, f) => typecheck(f, ctx)?,
        MorExpr::Sum(ts) => {
            let first = ts.first().ok_or(TypeError::EmptySum)?;
            let (d, c) = typecheck(first, ctx)?;
            for term in &ts[1..] {
                let (d2, c2) = typecheck(term, ctx)?;
                if d2 != d {
                    return Err(mismatch(e, &d, &d2));
                }
                if c2 != c {
                    return Err(mismatch(e, &c, &c2));
                }
            }
            (d, c)
        }
    })
}

/// Parity of a well-typed expression. Sums of terms with different parities
/// are mixed; a scalar multiple of zero still carries the parity of its body.
pub fn parity_of(e: &MorExpr, ctx: &Context) -> Result<Parity, TypeError> {
    typecheck(e, ctx)?;
    Ok(parity_unchecked(e, ctx))
}

pub(crate) fn parity_unchecked(e: &MorExpr, ctx: &Context) -> Parity {
    match e {
        MorExpr::Gen(n) => ctx.get(n).map_or(Parity::Mixed, |d| d.parity),
        MorExpr::Compose(f, g) | MorExpr::Tensor(f, g) => {
            parity_unchecked(f, ctx).add(parity_unchecked(g, ctx))
        }
        MorExpr::Scale(_, f) => parity_unchecked(f, ctx),
        MorExpr::Sum(ts) => {
            let mut ps = ts.iter().map(|t| parity_unchecked(t, ctx));
            let first = ps.next().unwrap_or(Parity::Even);
            ps.fold(first, |acc, p| if acc == p { acc } else { Parity::Mixed })
        }
        _ => Parity::Even,
    }
}

/// Shorthand constructors used by the catalog and by tests.
pub mod build {
    use super::*;

    pub fn o(name: &str) -> ObjectExpr {
        ObjectExpr::gen(name)
    }
    pub fn unit() -> ObjectExpr {
        ObjectExpr::Unit
    }
    pub fn t(a: ObjectExpr, b: ObjectExpr) -> ObjectExpr {
        ObjectExpr::tensor(a, b)
    }
    pub fn id(a: ObjectExpr) -> MorExpr {
        MorExpr::Identity(a)
    }
    pub fn gen(name: &str) -> MorExpr {
        MorExpr::Gen(name.to_string())
    }
    /// `after ∘ before`.
    pub fn comp(after: MorExpr, before: MorExpr) -> MorExpr {
        MorExpr::Compose(Box::new(after), Box::new(before))
    }
    /// Composite in arrow order: the first morphism is applied first.
    pub fn chain(steps: Vec<MorExpr>) -> MorExpr {
        let mut it = steps.into_iter();
        let first = it.next().expect("empty chain");
        it.fold(first, |acc, f| comp(f, acc))
    }
    pub fn ten(f: MorExpr, g: MorExpr) -> MorExpr {
        MorExpr::Tensor(Box::new(f), Box::new(g))
    }
    pub fn assoc(a: ObjectExpr, b: ObjectExpr, c: ObjectExpr) -> MorExpr {
        MorExpr::Assoc(a, b, c, false)
    }
    pub fn assoc_inv(a: ObjectExpr, b: ObjectExpr, c: ObjectExpr) -> MorExpr {
        MorExpr::Assoc(a, b, c, true)
    }
    pub fn lunit(a: ObjectExpr) -> MorExpr {
        MorExpr::LUnit(a, false)
    }
    pub fn lunit_inv(a: ObjectExpr) -> MorExpr {
        MorExpr::LUnit(a, true)
    }
    pub fn runit(a: ObjectExpr) -> MorExpr {
        MorExpr::RUnit(a, false)
    }
    pub fn runit_inv(a: ObjectExpr) -> MorExpr {
        MorExpr::RUnit(a, true)
    }
    pub fn braid(a: ObjectExpr, b: ObjectExpr) -> MorExpr {
        MorExpr::Braid(a, b, false)
    }
    pub fn braid_inv(a: ObjectExpr, b: ObjectExpr) -> MorExpr {
        MorExpr::Braid(a, b, true)
    }
    pub fn scale(c: Coeff, f: MorExpr) -> MorExpr {
        MorExpr::Scale(c, Box::new(f))
    }
    pub fn sum(ts: Vec<MorExpr>) -> MorExpr {
        MorExpr::Sum(ts)
    }
}

#[cfg(test)]
mod tests {
    use super::build::*;
    use super::*;

    fn ctx() -> Context {
        let mut c = Context::new();
        c.declare("mu", t(o("V"), o("V")), o("V"), Parity::Even)
            .declare("iota", unit(), o("V"), Parity::Even)
            .declare("x", o("V"), o("V"), Parity::Odd);
        c
    }

    #[test]
    fn identity_on_unit() {
        assert_eq!(typecheck(&id(unit()), &ctx()), Ok((unit(), unit())));
    }

    #[test]
    fn supercommutativity_side_is_well_typed() {
        let e = comp(gen("mu"), braid(o("V"), o("V")));
        assert_eq!(typecheck(&e, &ctx()), Ok((t(o("V"), o("V")), o("V"))));
    }

    #[test]
    fn mu_after_iota_is_rejected() {
        let e = comp(gen("mu"), gen("iota"));
        match typecheck(&e, &ctx()) {
            Err(TypeError::CompositionMismatch {
                expected, found, ..
            }) => {
                assert_eq!(expected, "(V * V)");
                assert_eq!(found, "V");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            typecheck(&gen("nu"), &ctx()),
            Err(TypeError::UndeclaredGenerator("nu".into()))
        );
    }

    #[test]
    fn parity_rules() {
        let c = ctx();
        assert_eq!(parity_of(&braid(o("V"), o("W")), &c), Ok(Parity::Even));
        assert_eq!(parity_of(&ten(gen("x"), gen("x")), &c), Ok(Parity::Even));
        assert_eq!(parity_of(&comp(gen("x"), id(o("V"))), &c), Ok(Parity::Odd));
        assert_eq!(
            parity_of(&sum(vec![id(o("V")), gen("x")]), &c),
            Ok(Parity::Mixed)
        );
    }
}
