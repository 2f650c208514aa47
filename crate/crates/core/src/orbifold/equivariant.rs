//! G-equivariant modules, their tensor product and braiding, and the
//! comparison between `C` and `(Rep V)^G`.

use crate::backend::factor::{factor, flatten, span_kernel, FactorMode};
use crate::backend::{ConcreteObject, Morph, Word};
use crate::error::{Error, Result};
use crate::ir::Parity;
use crate::report::{Check, Report, Worst};
use crate::repv::{flat, unflat, Module, RepV};
use crate::scalar::{Scalar, C64};

/// A module with `φ(g): T_g(W) → W` for every group element, by index.
#[derive(Clone, Debug)]
pub struct EquivariantModule<S: Scalar> {
    pub module: Module<S>,
    pub phi: Vec<Morph<S>>,
}

impl<S: Scalar> RepV<S> {
    /// The invariants of an equivariant module, as checks.
    pub fn equivariant_check(&self, e: &EquivariantModule<S>) -> Result<Report> {
        let tol = self.tol();
        let grp = &self.alg.group;
        let m = &e.module;
        let mut rep = Report::new(format!("equivariant {}", m.name));
        let ok = e.phi.len() == grp.order()
            && e.phi.iter().all(|p| {
                p.parity() == Parity::Even && p.inverse(tol).is_some() && p.dom_word() == &m.word()
            });
        rep.push(Check::flag("phi_even_invertible", "equivariant:phi", ok));
        if !ok {
            return Ok(rep);
        }
        let cat = self.cat();
        let mut inter = Worst::default();
        for (g, p) in e.phi.iter().enumerate() {
            let lhs = p.compose(&m.action)?;
            let rhs = m.action.compose(&cat.tensor(&grp.elements[g], p))?;
            inter.record(lhs.dist(&rhs), || grp.names[g].clone());
        }
        rep.push(inter.check("phi_intertwines", "equivariant:phi_mu", tol));
        let mut hom = Worst::default();
        hom.record(e.phi[grp.identity].dist(&cat.identity(&m.word())), || {
            "identity".into()
        });
        for a in 0..grp.order() {
            for b in 0..grp.order() {
                let d = e.phi[grp.mul(a, b)].dist(&e.phi[a].compose(&e.phi[b])?);
                hom.record(d, || format!("{},{}", grp.names[a], grp.names[b]));
            }
        }
        rep.push(hom.check("phi_representation", "equivariant:phi_hom", tol));
        let par = match grp.parity {
            Some(p) => e.phi[p].dist(&cat.parity_operator(&m.word())),
            None => f64::INFINITY,
        };
        rep.push(Check::measure(
            "phi_parity",
            "equivariant:phi_parity",
            par,
            tol,
        ));
        Ok(rep)
    }

    /// Converts a failing [`equivariant_check`](Self::equivariant_check) into
    /// the matching error.
    pub fn require_equivariant(&self, e: &EquivariantModule<S>) -> Result<()> {
        let rep = self.equivariant_check(e)?;
        match rep.failures().first() {
            None => Ok(()),
            Some(c) if c.name == "phi_parity" => Err(Error::PhiParityMismatch),
            Some(c) => Err(Error::PhiNotRepresentation(format!(
                "{} ({:.3e})",
                c.name, c.residual
            ))),
        }
    }

    /// `φ_{W₁⊠W₂}(g) = (φ₁(g)⊠φ₂(g)) τ_{g;W₁,W₂}`.
    pub fn equivariant_tensor(
        &self,
        a: &EquivariantModule<S>,
        b: &EquivariantModule<S>,
    ) -> Result<EquivariantModule<S>> {
        let module = self.product(&a.module, &b.module)?;
        let mut phi = Vec::new();
        for g in 0..self.alg.order() {
            let (ta, tb) = (self.act_t(g, &a.module)?, self.act_t(g, &b.module)?);
            let f = self.tensor_of_maps(&a.phi[g], &ta, &a.module, &b.phi[g], &tb, &b.module)?;
            phi.push(f.compose(&self.tau(g, &a.module, &b.module)?)?);
        }
        Ok(EquivariantModule { module, phi })
    }

    /// `Σ_g (φ₂(g)⊠q_g) R^V (p_g⊠1)` over the sectors of the first factor.
    pub fn equivariant_braiding(
        &self,
        a: &EquivariantModule<S>,
        b: &EquivariantModule<S>,
    ) -> Result<Morph<S>> {
        let (w1, w2) = (&a.module, &b.module);
        let (dec, _) = self.decompose_twisted(w1)?;
        let p12 = self.product(w1, w2)?;
        let p21 = self.product(w2, w1)?;
        let mut acc = self.cat().zero(&p12.word(), &p21.word());
        for s in &dec.sectors {
            let tw2 = self.act_t(s.g, w2)?;
            let proj = self.tensor_right(&s.p, w1, &s.module, w2)?;
            let r = self.crossed_braiding(&s.module, w2)?;
            let back = self.tensor_of_maps(&b.phi[s.g], &tw2, w2, &s.q, &s.module, w1)?;
            acc = acc.add(&back.compose(&r)?.compose(&proj)?)?;
        }
        Ok(acc)
    }

    /// `(F(X), φ(g) = g⊠1)`.
    pub fn equivariantize_induce(
        &self,
        x: &ConcreteObject,
        name: &str,
    ) -> Result<EquivariantModule<S>> {
        let module = self.induce(x, name)?;
        let cat = self.cat();
        let (v, xw) = (self.alg.word(), Word::leaf(x.clone()));
        let vx = Word::node(v, xw.clone());
        let phi = self
            .alg
            .group
            .elements
            .iter()
            .map(|g| {
                flat(cat, &vx)
                    .compose(&cat.tensor(g, &cat.identity(&xw)))?
                    .compose(&unflat(cat, &vx))
            })
            .collect::<Result<_>>()?;
        Ok(EquivariantModule { module, phi })
    }

    /// `E^G` with its inclusion, the image of `|G|⁻¹Σφ(g)`.
    pub fn invariants(&self, e: &EquivariantModule<S>) -> Result<(ConcreteObject, Morph<S>)> {
        let mut avg = self.cat().zero(&e.module.word(), &e.module.word());
        for p in &e.phi {
            avg = avg.add(p)?;
        }
        let avg = avg.scale(&(S::one() / S::from_int(e.phi.len() as i64)));
        factor(self.cat(), &avg, FactorMode::Image)
    }

    /// `Ψ_E = μ_W(1⊠ι_W): F(E^G) → W`, with `F(E^G)` as an equivariant module.
    pub fn psi(
        &self,
        e: &EquivariantModule<S>,
    ) -> Result<(Morph<S>, EquivariantModule<S>, Morph<S>)> {
        let (obj, j) = self.invariants(e)?;
        let fe = self.equivariantize_induce(&obj, &format!("F({}^G)", e.module.name))?;
        Ok((self.adjoint_psi(&j, &e.module)?, fe, j))
    }

    /// Dimension of the even module maps commuting with both φ structures.
    pub fn equivariant_hom_dim(
        &self,
        a: &EquivariantModule<S>,
        b: &EquivariantModule<S>,
    ) -> Result<usize> {
        let (basis, _) = self.hom_modules(&a.module, &b.module)?;
        if basis.is_empty() {
            return Ok(0);
        }
        let cols: Vec<Vec<S>> = basis
            .iter()
            .map(|f| {
                let d: Vec<Morph<S>> = (0..self.alg.order())
                    .map(|g| f.compose(&a.phi[g])?.sub(&b.phi[g].compose(f)?))
                    .collect::<Result<_>>()?;
                Ok(flatten(&d))
            })
            .collect::<Result<_>>()?;
        let len = cols[0].len();
        Ok(span_kernel(&cols, len, self.tol()).len())
    }

    /// All equivariant structures on a simple module for a cyclic group,
    /// keeping those that pass [`equivariant_check`](Self::equivariant_check).
    pub fn enumerate_equivariant(&self, m: &Module<S>) -> Result<Vec<EquivariantModule<S>>> {
        let grp = &self.alg.group;
        let n = grp.order();
        let mut powers = None;
        for r in 0..n {
            let mut seq = vec![grp.identity];
            while seq.len() < n {
                let next = grp.mul(r, *seq.last().expect("nonempty"));
                if next == grp.identity {
                    break;
                }
                seq.push(next);
            }
            if seq.len() == n {
                powers = Some((r, seq));
                break;
            }
        }
        let (r, seq) = powers
            .ok_or_else(|| Error::Format("equivariant enumeration needs a cyclic group".into()))?;
        let tr = self.act_t(r, m)?;
        let (homs, _) = self.hom_modules(&tr, m)?;
        let b = match homs.as_slice() {
            [] => return Ok(vec![]),
            [b] => b.clone(),
            _ => return Err(Error::ShapeMismatch(format!("{} is not simple", m.name))),
        };
        // b^n = s·1 by Schur; φ(r) = c·b with c^n s = 1
        let mut bn = self.idm(m);
        for _ in 0..n {
            bn = b.compose(&bn)?;
        }
        let k = (0..m.dim())
            .find(|&k| !bn.m.at(k, k).negligible(self.tol()))
            .ok_or(Error::NoSolution(f64::NAN))?;
        let s = bn.m.at(k, k).clone();
        if bn.dist(&self.idm(m).scale(&s)) > self.tol() {
            return Err(Error::ShapeMismatch(format!("{} is not simple", m.name)));
        }
        let base = (C64::new(1.0, 0.0) / s.to_c64()).powf(1.0 / n as f64);
        let mut out = Vec::new();
        for j in 0..n {
            let z = base * C64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64);
            let c = if S::EXACT {
                S::recognize(z).ok_or_else(|| Error::Format("root of unity is not exact".into()))?
            } else {
                S::from_c64(z)
            };
            let phr = b.scale(&c);
            let mut phi = vec![self.idm(m); n];
            let mut acc = self.idm(m);
            for &el in &seq {
                phi[el] = acc.clone();
                acc = phr.compose(&acc)?;
            }
            let e = EquivariantModule {
                module: m.clone(),
                phi,
            };
            if self.equivariant_check(&e)?.passed() {
                out.push(e);
            }
        }
        Ok(out)
    }

    /// Pairwise non-isomorphic simple equivariant modules on the given
    /// modules.
    pub fn equivariant_simples(&self, modules: &[Module<S>]) -> Result<Vec<EquivariantModule<S>>> {
        let mut classes: Vec<EquivariantModule<S>> = Vec::new();
        for m in modules {
            for e in self.enumerate_equivariant(m)? {
                if self.equivariant_hom_dim(&e, &e)? != 1 {
                    continue;
                }
                let mut new = true;
                for c in &classes {
                    if self.equivariant_hom_dim(c, &e)? > 0 {
                        new = false;
                        break;
                    }
                }
                if new {
                    classes.push(e);
                }
            }
        }
        Ok(classes)
    }

    /// The simple `X` of the base category as an even object: labels
    /// declared odd carry a parity shift.
    pub fn even_simple(&self, x: usize) -> ConcreteObject {
        ConcreteObject::new(vec![(x, self.cat().spec.parity[x])])
    }

    /// `F(X)^G → X`, the composite `l_X(ε⊠1)` restricted to invariants.
    pub fn invariants_to_object(&self, x: &ConcreteObject) -> Result<Morph<S>> {
        let cat = self.cat();
        let e = self.equivariantize_induce(x, "F(X)")?;
        let (_, j) = self.invariants(&e)?;
        let xw = Word::leaf(x.clone());
        let eps = self.alg.epsilon.clone().ok_or(Error::NoCounit)?;
        cat.lunit(&xw, false)
            .compose(&cat.tensor(&eps, &cat.identity(&xw)))?
            .compose(&unflat(cat, &Word::node(self.alg.word(), xw)))?
            .compose(&j)
    }

    /// Compares `C` with `(Rep V)^G` on the simples of `C` and on the
    /// equivariant simples found over `modules`.
    pub fn verify_equivalence(&self, modules: &[Module<S>]) -> Result<Report> {
        let tol = self.tol();
        let cat = self.cat();
        let mut rep = Report::new("equivariantization");
        let rank = cat.spec.rank();
        let mut recover = Worst::default();
        let mut induced = true;
        for x in 0..rank {
            let obj = self.even_simple(x);
            let e = self.equivariantize_induce(&obj, &format!("F({})", cat.spec.simples[x]))?;
            induced &= self.equivariant_check(&e)?.passed();
            let f = self.invariants_to_object(&obj)?;
            let r = if f.inverse(tol).is_some() {
                0.0
            } else {
                f64::INFINITY
            };
            recover.record(r, || cat.spec.simples[x].clone());
        }
        rep.push(Check::flag(
            "induced_equivariant",
            "equivariant:induce",
            induced,
        ));
        let c = recover.check("invariants_recover_object", "equivariant:invariants", tol);
        if !c.pass {
            return Err(Error::EquivalenceDefect {
                check: c.name,
                residual: c.residual,
            });
        }
        rep.push(c);

        let simples = self.equivariant_simples(modules)?;
        let mut psi_iso = Worst::default();
        let mut psi_eq = Worst::default();
        let mut psi_unit = Worst::default();
        for e in &simples {
            let (psi, fe, j) = self.psi(e)?;
            let name = || e.module.name.clone();
            let inv = if psi.inverse(tol).is_some() {
                0.0
            } else {
                f64::INFINITY
            };
            psi_iso.record(
                self.is_module_map(&psi, &fe.module, &e.module)?.max(inv),
                name,
            );
            let mut d = 0.0f64;
            for g in 0..self.alg.order() {
                d = d.max(psi.compose(&fe.phi[g])?.dist(&e.phi[g].compose(&psi)?));
            }
            psi_eq.record(d, name);
            let iw = Word::leaf(leaf(&j)?);
            let lhs = psi
                .compose(&flat(cat, &Word::node(self.alg.word(), iw.clone())))?
                .compose(&cat.tensor(&self.alg.iota, &cat.identity(&iw)))?;
            let rhs = j.compose(&cat.lunit(&iw, false))?;
            psi_unit.record(lhs.dist(&rhs), name);
        }
        for (c, name) in [
            (psi_iso, "psi_iso"),
            (psi_eq, "psi_equivariant"),
            (psi_unit, "psi_unit"),
        ] {
            let c = c.check(name, "equivariant:psi", tol);
            if !c.pass {
                return Err(Error::EquivalenceDefect {
                    check: c.name,
                    residual: c.residual,
                });
            }
            rep.push(c);
        }
        let names: Vec<String> = simples.iter().map(|e| e.module.name.clone()).collect();
        rep.push(
            Check::flag("simple_counts", "equivariant:counts", simples.len() == rank).detail(
                format!(
                    "C: {rank}, (Rep V)^G: {} [{}]",
                    simples.len(),
                    names.join(", ")
                ),
            ),
        );
        rep.absorb(self.check_equivariant_braiding(&simples)?);
        Ok(rep)
    }

    /// The braiding of `(Rep V)^G`: even isomorphisms commuting with φ, and
    /// both hexagons, on all pairs and triples from `objs`.
    pub fn check_equivariant_braiding(&self, objs: &[EquivariantModule<S>]) -> Result<Report> {
        let tol = self.tol();
        let mut rep = Report::new("equivariant braiding");
        let mut iso = Worst::default();
        let mut eq = Worst::default();
        for a in objs {
            for b in objs {
                let c = self.equivariant_braiding(a, b)?;
                let at = || format!("{},{}", a.module.name, b.module.name);
                let bad = c.parity() != Parity::Even || c.inverse(tol).is_none();
                let (ab, ba) = (
                    self.equivariant_tensor(a, b)?,
                    self.equivariant_tensor(b, a)?,
                );
                iso.record(
                    if bad {
                        f64::INFINITY
                    } else {
                        self.is_module_map(&c, &ab.module, &ba.module)?
                    },
                    at,
                );
                let mut d = 0.0f64;
                for g in 0..self.alg.order() {
                    d = d.max(c.compose(&ab.phi[g])?.dist(&ba.phi[g].compose(&c)?));
                }
                eq.record(d, at);
            }
        }
        rep.push(iso.check("braiding_iso", "equivariant:braiding", tol));
        rep.push(eq.check("braiding_equivariant", "equivariant:braiding", tol));
        let mut hl = Worst::default();
        let mut hr = Worst::default();
        for x in objs {
            for y in objs {
                for z in objs {
                    let at = || format!("{},{},{}", x.module.name, y.module.name, z.module.name);
                    let (xm, ym, zm) = (&x.module, &y.module, &z.module);
                    let yz = self.equivariant_tensor(y, z)?;
                    let lhs = self
                        .assoc(ym, zm, xm)?
                        .inverse(tol)
                        .ok_or(Error::NoSolution(f64::INFINITY))?
                        .compose(&self.equivariant_braiding(x, &yz)?)?;
                    let xz = self.product(xm, zm)?;
                    let xy = self.product(xm, ym)?;
                    let rhs = self
                        .tensor_left(
                            ym,
                            &self.equivariant_braiding(x, z)?,
                            &xz,
                            &self.product(zm, xm)?,
                        )?
                        .compose(
                            &self
                                .assoc(ym, xm, zm)?
                                .inverse(tol)
                                .ok_or(Error::NoSolution(f64::INFINITY))?,
                        )?
                        .compose(&self.tensor_right(
                            &self.equivariant_braiding(x, y)?,
                            &xy,
                            &self.product(ym, xm)?,
                            zm,
                        )?)?
                        .compose(&self.assoc(xm, ym, zm)?)?;
                    hl.record(lhs.dist(&rhs), at);
                    let xye = self.equivariant_tensor(x, y)?;
                    let lhs = self
                        .assoc(zm, xm, ym)?
                        .compose(&self.equivariant_braiding(&xye, z)?)?;
                    let yz_m = self.product(ym, zm)?;
                    let rhs = self
                        .tensor_right(
                            &self.equivariant_braiding(x, z)?,
                            &xz,
                            &self.product(zm, xm)?,
                            ym,
                        )?
                        .compose(&self.assoc(xm, zm, ym)?)?
                        .compose(&self.tensor_left(
                            xm,
                            &self.equivariant_braiding(y, z)?,
                            &yz_m,
                            &self.product(zm, ym)?,
                        )?)?
                        .compose(
                            &self
                                .assoc(xm, ym, zm)?
                                .inverse(tol)
                                .ok_or(Error::NoSolution(f64::INFINITY))?,
                        )?;
                    hr.record(lhs.dist(&rhs), at);
                }
            }
        }
        rep.push(hl.check("braiding_hexagon_left", "equivariant:hexagon", tol));
        rep.push(hr.check("braiding_hexagon_right", "equivariant:hexagon", tol));
        Ok(rep)
    }

    /// Induction as a monoidal functor: `F(X₁⊠X₂) → F(X₁)⊠_V F(X₂)` is an
    /// isomorphism of modules for all pairs of simples.
    pub fn check_induction(&self) -> Result<Report> {
        let tol = self.tol();
        let rank = self.cat().spec.rank();
        let mut rep = Report::new("induction functor");
        let mut w = Worst::default();
        for a in 0..rank {
            for b in 0..rank {
                let (m, f12, prod) =
                    self.induction_tensorator(&self.even_simple(a), &self.even_simple(b))?;
                let inv = if m.inverse(tol).is_some() {
                    0.0
                } else {
                    f64::INFINITY
                };
                w.record(self.is_module_map(&m, &f12, &prod)?.max(inv), || {
                    format!(
                        "{},{}",
                        self.cat().spec.simples[a],
                        self.cat().spec.simples[b]
                    )
                });
            }
        }
        rep.push(w.check("induction_monoidal", "functor:induction", tol));
        Ok(rep)
    }
}

fn leaf<S: Scalar>(j: &Morph<S>) -> Result<ConcreteObject> {
    crate::repv::leaf_of(j.dom_word())
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{load, module};
    use super::*;
    use crate::scalar::QI;

    fn unit_equivariant<S: Scalar>(rep: &RepV<S>) -> EquivariantModule<S> {
        EquivariantModule {
            module: rep.unit_module(),
            phi: rep.alg.group.elements.clone(),
        }
    }

    #[test]
    fn unit_with_group_action_is_equivariant() {
        let (_, rep) = load::<QI>("PH");
        assert!(rep
            .equivariant_check(&unit_equivariant(&rep))
            .unwrap()
            .passed());
        assert!(rep.require_equivariant(&unit_equivariant(&rep)).is_ok());
    }

    #[test]
    fn sigma_needs_the_parity_operator() {
        let (inst, rep) = load::<C64>("ising");
        let w = module(&inst, &rep, "F(sigma)");
        let p = rep.alg.group.parity.unwrap();
        let par = rep.cat().parity_operator(&w.word());
        let mut phi = vec![rep.idm(&w); 2];
        phi[p] = par.clone();
        let good = EquivariantModule {
            module: w.clone(),
            phi: phi.clone(),
        };
        assert!(rep.equivariant_check(&good).unwrap().passed());
        phi[p] = par.scale(&C64::new(-1.0, 0.0));
        let bad = EquivariantModule { module: w, phi };
        let report = rep.equivariant_check(&bad).unwrap();
        assert!(!report.get("phi_parity").unwrap().pass);
        assert_eq!(rep.require_equivariant(&bad), Err(Error::PhiParityMismatch));
    }

    #[test]
    fn non_homomorphism_is_rejected() {
        let (_, rep) = load::<QI>("PH");
        let mut e = unit_equivariant(&rep);
        e.phi[0] = e.phi[1].clone();
        assert!(matches!(
            rep.require_equivariant(&e),
            Err(Error::PhiNotRepresentation(_))
        ));
    }

    #[test]
    fn tensor_of_equivariant_modules_is_equivariant() {
        let (inst, rep) = load::<QI>("PH");
        let w = module(&inst, &rep, "F(X01)");
        let es = rep.enumerate_equivariant(&w).unwrap();
        assert_eq!(es.len(), 2);
        for a in &es {
            for b in &es {
                let t = rep.equivariant_tensor(a, b).unwrap();
                assert!(rep.equivariant_check(&t).unwrap().passed());
            }
        }
    }

    #[test]
    fn untwisted_braiding_is_the_crossed_one() {
        let (_, rep) = load::<QI>("PH");
        let e = unit_equivariant(&rep);
        let v = rep.unit_module();
        let c = rep.equivariant_braiding(&e, &e).unwrap();
        assert_eq!(c.dist(&rep.crossed_braiding(&v, &v).unwrap()), 0.0);
    }

    #[test]
    fn ph_has_four_equivariant_simples() {
        let (inst, rep) = load::<QI>("PH");
        let report = rep
            .verify_equivalence(&inst.object_set(&rep).unwrap())
            .unwrap();
        assert!(report.passed(), "{report}");
        assert!(report
            .get("simple_counts")
            .unwrap()
            .detail
            .as_deref()
            .unwrap()
            .contains("(Rep V)^G: 4"));
    }

    #[test]
    fn ising_has_three_equivariant_simples() {
        let (inst, rep) = load::<C64>("ising");
        let report = rep
            .verify_equivalence(&inst.object_set(&rep).unwrap())
            .unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn cyclic_groups_match_their_rank() {
        for name in ["Z2", "Z4"] {
            let (inst, rep) = load::<QI>(name);
            let s = rep
                .equivariant_simples(&inst.object_set(&rep).unwrap())
                .unwrap();
            assert_eq!(s.len(), rep.cat().spec.rank(), "{name}");
        }
        let (inst, rep) = load::<C64>("Z3");
        assert!(rep
            .verify_equivalence(&inst.object_set(&rep).unwrap())
            .unwrap()
            .passed());
    }

    #[test]
    fn invariants_of_induced_modules_recover_the_object() {
        let (_, rep) = load::<QI>("PH");
        for x in 0..4 {
            let f = rep
                .invariants_to_object(&ConcreteObject::simple(x))
                .unwrap();
            assert!(f.inverse(0.0).is_some());
        }
    }

    #[test]
    fn induction_is_monoidal() {
        let (_, rep) = load::<QI>("PH");
        assert!(rep.check_induction().unwrap().passed());
    }
}
