//! Twisted modules and the sector projectors π_g.

use crate::algebra::element_name;
use crate::backend::factor::{factor, solve, FactorMode, Side};
use crate::backend::{Morph, Word};
use crate::error::{Error, Result};
use crate::ir::build::*;
use crate::ir::catalog::{action_name, formula, monodromy, FormulaId};
use crate::report::{Check, Report, Worst};
use crate::repv::{Module, RepV};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Sector<S: Scalar> {
    pub g: usize,
    pub module: Module<S>,
    /// Inclusion `W_g → W`.
    pub q: Morph<S>,
    /// Projection `W → W_g`.
    pub p: Morph<S>,
}

#[derive(Clone, Debug)]
pub struct TwistedDecomposition<S: Scalar> {
    pub sectors: Vec<Sector<S>>,
}

impl<S: Scalar> TwistedDecomposition<S> {
    pub fn sector(&self, g: usize) -> Option<&Sector<S>> {
        self.sectors.iter().find(|s| s.g == g)
    }
}

impl<S: Scalar> RepV<S> {
    /// `‖μ_W(g⊠1)M_{V,W} − μ_W‖`.
    pub fn twist_residual(&self, m: &Module<S>, g: usize) -> Result<f64> {
        let env = self.env(&[("W", m)])?;
        let mw = gen(&action_name("W"));
        let lhs = chain(vec![
            monodromy(o("V"), o("W")),
            ten(gen(&element_name(g)), id(o("W"))),
            mw.clone(),
        ]);
        env.residual(&lhs, &mw)
    }

    pub fn is_g_twisted(&self, m: &Module<S>, g: usize) -> Result<bool> {
        Ok(self.twist_residual(m, g)? <= self.tol())
    }

    /// The unique `g` for which `m` is g-twisted, if there is exactly one.
    pub fn twist_of(&self, m: &Module<S>) -> Result<Option<usize>> {
        let mut hits = Vec::new();
        for g in 0..self.alg.order() {
            if self.is_g_twisted(m, g)? {
                hits.push(g);
            }
        }
        Ok(if hits.len() == 1 { Some(hits[0]) } else { None })
    }

    /// `π_g = |G|⁻¹ Π_g` on `m`.
    pub fn projector(&self, m: &Module<S>, g: usize) -> Result<Morph<S>> {
        let env = self.env(&[("W", m)])?;
        let f = FormulaId::new("pi_g")
            .element("g", &element_name(g))
            .elements("G", &self.alg.group.ir_names())
            .object("W", o("W"));
        env.eval(&formula(&f)?)
    }

    /// Splits `m` into its twisted sectors after checking the projector
    /// identities. Zero sectors are omitted.
    pub fn decompose_twisted(&self, m: &Module<S>) -> Result<(TwistedDecomposition<S>, Report)> {
        let n = self.alg.order();
        let tol = self.tol();
        let pis: Vec<Morph<S>> = (0..n)
            .map(|g| self.projector(m, g))
            .collect::<Result<_>>()?;
        let mut rep = Report::new(format!("projectors on {}", m.name));
        let mut hom = Worst::default();
        let mut orth = Worst::default();
        for (g, pg) in pis.iter().enumerate() {
            hom.record(self.is_module_map(pg, m, m)?, || {
                self.alg.group.names[g].clone()
            });
            for (h, ph) in pis.iter().enumerate() {
                let want = if g == h {
                    pg.clone()
                } else {
                    self.cat().zero(&m.word(), &m.word())
                };
                orth.record(pg.compose(ph)?.dist(&want), || {
                    format!("{},{}", self.alg.group.names[g], self.alg.group.names[h])
                });
            }
        }
        let mut total = self.cat().zero(&m.word(), &m.word());
        for p in &pis {
            total = total.add(p)?;
        }
        let sum = total.dist(&self.cat().identity(&m.word()));
        let mut sectors = Vec::new();
        let mut twisted = Worst::default();
        for (g, pg) in pis.iter().enumerate() {
            let (obj, q) = factor(self.cat(), pg, FactorMode::Image)?;
            if obj.is_empty() {
                continue;
            }
            let p = solve(self.cat(), &q, pg, Side::Left)?.x;
            let action = p.compose(&m.action)?.compose(
                &self
                    .cat()
                    .tensor(&self.cat().identity(&self.alg.word()), &q),
            )?;
            let module = Module::new(
                &format!("{}[{}]", m.name, self.alg.group.names[g]),
                obj,
                action,
            );
            twisted.record(self.twist_residual(&module, g)?, || module.name.clone());
            sectors.push(Sector { g, module, q, p });
        }
        rep.push(hom.check("pi_g_module_map", "catalog:pi_g_vhom", tol));
        rep.push(orth.check("pi_g_orthogonal", "catalog:pig_pih", tol));
        rep.push(Check::measure("pi_g_sum", "catalog:sum_pi_g", sum, tol));
        rep.push(twisted.check("image_twisted", "catalog:image_twisted", tol));
        if let Some(bad) = rep.worst() {
            return Err(Error::ProjectorDefect {
                check: bad.name.clone(),
                residual: bad.residual,
            });
        }
        Ok((TwistedDecomposition { sectors }, rep))
    }

    /// Sum of two modules, `W₁ ⊕ W₂`.
    pub fn direct_sum(&self, a: &Module<S>, b: &Module<S>) -> Result<Module<S>> {
        let cat = self.cat();
        let mut s = a.w.summands.clone();
        s.extend(&b.w.summands);
        let w = crate::backend::ConcreteObject::new(s);
        let v = self.alg.word();
        let dom = cat.basis(&Word::node(v.clone(), Word::leaf(w.clone())));
        let (da, db) = (
            cat.basis(&Word::node(v.clone(), a.word())),
            cat.basis(&Word::node(v.clone(), b.word())),
        );
        let mut act = cat.zero(
            &Word::node(v, Word::leaf(w.clone())),
            &Word::leaf(w.clone()),
        );
        let na = a.dim();
        for (k, e) in dom.elems.iter().enumerate() {
            let (src, basis, j, off) = if e.r < na {
                (a, &da, e.r, 0)
            } else {
                (b, &db, e.r - na, na)
            };
            let col = basis.find(e.l, j, e.total).expect("same trees");
            for r in 0..src.dim() {
                act.m.set(r + off, k, src.action.m.at(r, col).clone());
            }
        }
        Ok(Module::new(&format!("{}+{}", a.name, b.name), w, act))
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{load, module};
    use crate::backend::ConcreteObject;
    use crate::scalar::{C64, QI};

    /// Sign of the double braiding of two PH labels `(x₁,x₂)`, `(y₁,y₂)`
    /// under `β(x,y) = (−1)^{x₁y₂}`.
    fn ph_monodromy(x: (u32, u32), y: (u32, u32)) -> i32 {
        if (x.0 * y.1 + y.0 * x.1) % 2 == 1 {
            -1
        } else {
            1
        }
    }

    #[test]
    fn monodromy_oracle_predicts_ph_twists() {
        // V = X00 ⊕ X10 with g = diag(1, −1); W is g-twisted exactly when
        // g(a)·M(a, b) = 1 for every summand pair.
        let v = [((0, 0), 1), ((1, 0), -1)];
        let (inst, rep) = load::<QI>("PH");
        for (label, x) in [
            ("X00", (0, 0)),
            ("X01", (0, 1)),
            ("X10", (1, 0)),
            ("X11", (1, 1)),
        ] {
            let w = module(&inst, &rep, &format!("F({label})"));
            for g in 0..2usize {
                let predicted = v
                    .iter()
                    .all(|&(a, ga)| (if g == 0 { 1 } else { ga }) * ph_monodromy(a, x) == 1);
                assert_eq!(
                    rep.is_g_twisted(&w, g).unwrap(),
                    predicted,
                    "{label} at {g}"
                );
            }
        }
    }

    #[test]
    fn unit_module_is_untwisted() {
        let (_, rep) = load::<QI>("PH");
        let v = rep.unit_module();
        assert_eq!(rep.twist_of(&v).unwrap(), Some(rep.alg.group.identity));
        let pi1 = rep.projector(&v, rep.alg.group.identity).unwrap();
        assert_eq!(pi1.dist(&rep.cat().identity(&v.word())), 0.0);
    }

    #[test]
    fn ph_free_module_lives_in_the_g_sector() {
        let (inst, rep) = load::<QI>("PH");
        let w = module(&inst, &rep, "F(X01)");
        let g = rep.alg.group.index("g").unwrap();
        assert_eq!(rep.twist_of(&w).unwrap(), Some(g));
        assert!(rep.projector(&w, 0).unwrap().is_zero(0.0));
        assert_eq!(
            rep.projector(&w, g)
                .unwrap()
                .dist(&rep.cat().identity(&w.word())),
            0.0
        );
        let (dec, report) = rep.decompose_twisted(&w).unwrap();
        assert!(report.passed());
        assert_eq!(dec.sectors.len(), 1);
        assert_eq!(dec.sectors[0].g, g);
    }

    #[test]
    fn mixed_free_module_splits_into_two_sectors() {
        let (_, rep) = load::<QI>("PH");
        let w = rep
            .induce(&ConcreteObject::new(vec![(1, 0), (0, 0)]), "F(X01+X00)")
            .unwrap();
        let (dec, _) = rep.decompose_twisted(&w).unwrap();
        let dims: Vec<(usize, usize)> = dec.sectors.iter().map(|s| (s.g, s.module.dim())).collect();
        assert_eq!(dims, vec![(0, 2), (1, 2)]);
        for s in &dec.sectors {
            assert_eq!(s.p.compose(&s.q).unwrap().dist(&rep.idm(&s.module)), 0.0);
            assert_eq!(rep.is_module_map(&s.q, &s.module, &w).unwrap(), 0.0);
        }
        let mut sum = rep.cat().zero(&w.word(), &w.word());
        for s in &dec.sectors {
            sum = sum.add(&s.q.compose(&s.p).unwrap()).unwrap();
        }
        assert_eq!(sum.dist(&rep.idm(&w)), 0.0);
    }

    #[test]
    fn projectors_on_a_direct_sum_are_the_block_projectors() {
        let (inst, rep) = load::<QI>("PH");
        let a = rep.unit_module();
        let b = module(&inst, &rep, "F(X01)");
        let w = rep.direct_sum(&a, &b).unwrap();
        assert!(rep.check_module(&w).unwrap().passed());
        for g in 0..2 {
            let p = rep.projector(&w, g).unwrap();
            for k in 0..4 {
                for j in 0..4 {
                    let want = k == j && (k < 2) == (g == 0);
                    assert_eq!(
                        p.m.at(k, j).re,
                        num_rational::BigRational::from_integer((want as i64).into()),
                        "g={g} ({k},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn ising_sigma_sector_is_parity_twisted() {
        let (inst, rep) = load::<C64>("ising");
        let w = module(&inst, &rep, "F(sigma)");
        let p = rep.alg.group.parity.unwrap();
        assert_eq!(rep.twist_of(&w).unwrap(), Some(p));
        let (dec, _) = rep.decompose_twisted(&w).unwrap();
        assert_eq!(dec.sectors.len(), 1);
        assert_eq!(dec.sectors[0].g, p);
        assert_eq!(
            rep.twist_of(&rep.flip(&rep.unit_module()).unwrap())
                .unwrap(),
            Some(0)
        );
    }

    #[test]
    fn broken_monodromy_is_a_projector_defect() {
        // an action that ignores the algebra is not a module; its projectors
        // fail the idempotent checks
        let (inst, rep) = load::<QI>("PH");
        let mut w = module(&inst, &rep, "F(X01)");
        w.action = w.action.scale(&crate::scalar::Scalar::from_int(2));
        assert!(matches!(
            rep.decompose_twisted(&w),
            Err(crate::Error::ProjectorDefect { .. })
        ));
    }
}
