//! Interpretation of expressions as matrices.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::category::{Category, Morph};
use super::word::Word;
use crate::error::{Error, Result};
use crate::ir::{typecheck, Context, MorExpr, ObjectExpr};
use crate::scalar::Scalar;

/// Bindings of object and generator symbols, plus the declarations they
/// induce.
#[derive(Clone)]
pub struct Environment<S: Scalar> {
    pub cat: Arc<Category<S>>,
    pub ctx: Context,
    objects: BTreeMap<String, Word>,
    gens: BTreeMap<String, Morph<S>>,
}

impl<S: Scalar> Environment<S> {
    pub fn new(cat: Arc<Category<S>>) -> Self {
        Environment {
            cat,
            ctx: Context::new(),
            objects: BTreeMap::new(),
            gens: BTreeMap::new(),
        }
    }

    pub fn bind_object(&mut self, name: &str, w: Word) -> &mut Self {
        self.objects.insert(name.to_string(), w);
        self
    }

    /// Binds a generator after checking that its matrix lives between the
    /// words of `dom` and `cod` and respects the simple decomposition.
    pub fn bind_gen(
        &mut self,
        name: &str,
        dom: ObjectExpr,
        cod: ObjectExpr,
        m: Morph<S>,
    ) -> Result<&mut Self> {
        let (dw, cw) = (self.word(&dom)?, self.word(&cod)?);
        if *m.dom_word() != dw || *m.cod_word() != cw {
            return Err(Error::BindingMismatch {
                name: name.to_string(),
                detail: format!(
                    "bound {} -> {}, declared {} -> {}",
                    m.dom_word(),
                    m.cod_word(),
                    dw,
                    cw
                ),
            });
        }
        if !m.is_schur() {
            return Err(Error::BindingMismatch {
                name: name.to_string(),
                detail: "maps between distinct simples".into(),
            });
        }
        self.ctx.declare(name, dom, cod, m.parity());
        self.gens.insert(name.to_string(), m);
        Ok(self)
    }

    pub fn word(&self, o: &ObjectExpr) -> Result<Word> {
        Ok(match o {
            ObjectExpr::Unit => self.cat.unit_word(),
            ObjectExpr::Gen(n) => self
                .objects
                .get(n)
                .cloned()
                .ok_or_else(|| Error::UnboundSymbol(n.clone()))?,
            ObjectExpr::Tensor(a, b) => Word::node(self.word(a)?, self.word(b)?),
        })
    }

    pub fn eval(&self, e: &MorExpr) -> Result<Morph<S>> {
        typecheck(e, &self.ctx)?;
        self.eval_rec(e)
    }

    fn eval_rec(&self, e: &MorExpr) -> Result<Morph<S>> {
        let cat = &self.cat;
        Ok(match e {
            MorExpr::Identity(a) => cat.identity(&self.word(a)?),
            MorExpr::Gen(n) => self
                .gens
                .get(n)
                .cloned()
                .ok_or_else(|| Error::UnboundSymbol(n.clone()))?,
            MorExpr::Compose(f, g) => self.eval_rec(f)?.compose(&self.eval_rec(g)?)?,
            MorExpr::Tensor(f, g) => cat.tensor(&self.eval_rec(f)?, &self.eval_rec(g)?),
            MorExpr::Assoc(a, b, c, inv) => {
                cat.assoc(&self.word(a)?, &self.word(b)?, &self.word(c)?, *inv)
            }
            MorExpr::LUnit(a, inv) => cat.lunit(&self.word(a)?, *inv),
            MorExpr::RUnit(a, inv) => cat.runit(&self.word(a)?, *inv),
            MorExpr::Braid(a, b, inv) => cat.braid(&self.word(a)?, &self.word(b)?, *inv),
            MorExpr::Scale(c, f) => self.eval_rec(f)?.scale(&S::from_coeff(c)),
            MorExpr::Sum(ts) => {
                let mut it = ts.iter();
                let first = it.next().ok_or(crate::ir::TypeError::EmptySum)?;
                let mut acc = self.eval_rec(first)?;
                for t in it {
                    acc = acc.add(&self.eval_rec(t)?)?;
                }
                acc
            }
        })
    }

    /// Largest entrywise difference of the two evaluations.
    pub fn residual(&self, lhs: &MorExpr, rhs: &MorExpr) -> Result<f64> {
        Ok(self.eval(lhs)?.dist(&self.eval(rhs)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::instances;
    use crate::backend::word::ConcreteObject;
    use crate::ir::build::*;
    use crate::ir::catalog::{formula, FormulaId};
    use crate::scalar::QI;

    #[test]
    fn monodromy_on_ph_is_minus_one_on_x10() {
        let cat = Arc::new(Category::<QI>::new(instances::ph()).unwrap());
        let (x00, x10, x01) = (
            cat.spec.label("X00").unwrap(),
            cat.spec.label("X10").unwrap(),
            cat.spec.label("X01").unwrap(),
        );
        let mut env = Environment::new(cat.clone());
        env.bind_object(
            "V",
            Word::leaf(ConcreteObject::new(vec![(x00, 0), (x10, 0)])),
        );
        env.bind_object("W", Word::leaf(ConcreteObject::simple(x01)));
        let m = env
            .eval(
                &formula(
                    &FormulaId::new("monodromy")
                        .object("A", o("V"))
                        .object("B", o("W")),
                )
                .unwrap(),
            )
            .unwrap();
        let b = m.dom.clone();
        for (k, e) in b.elems.iter().enumerate() {
            let left = b.left.as_ref().unwrap().elems[e.l].total;
            let want = if left == x10 {
                -QI::from_int(1)
            } else {
                QI::from_int(1)
            };
            assert_eq!(m.m.at(k, k), &want);
        }
    }

    #[test]
    fn identity_and_unbound() {
        let cat = Arc::new(Category::<QI>::new(instances::ph()).unwrap());
        let mut env = Environment::new(cat);
        env.bind_object("V", Word::leaf(ConcreteObject::new(vec![(0, 0), (1, 0)])));
        assert_eq!(
            env.eval(&id(o("V"))).unwrap().m,
            crate::linalg::Mat::identity(2)
        );
        assert!(matches!(
            env.eval(&id(o("Q"))),
            Err(Error::UnboundSymbol(_))
        ));
    }
}
