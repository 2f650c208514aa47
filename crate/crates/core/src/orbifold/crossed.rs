//! The G-action `T_g`, its tensor structure τ, the crossed braiding, and
//! the braided G-crossed axioms.

use crate::backend::factor::{solve, Side};
use crate::backend::Morph;
use crate::error::{Error, Result};
use crate::report::{Check, Report, Worst};
use crate::repv::{Module, RepV};
use crate::scalar::Scalar;

impl<S: Scalar> RepV<S> {
    /// `T_g(W, μ_W) = (W, μ_W(g⁻¹⊠1))`, composed with any twist `W` already
    /// carries so that `T_g T_h = T_{gh}` exactly.
    pub fn act_t(&self, g: usize, m: &Module<S>) -> Result<Module<S>> {
        let grp = &self.alg.group;
        let s = grp.mul(g, m.shift.unwrap_or(grp.identity));
        let mut out = m.clone();
        if s == grp.identity {
            out.name = m.base.clone();
            out.shift = None;
            out.action = m.base_action.clone();
            return Ok(out);
        }
        let ginv = &grp.elements[grp.inverse(s)];
        out.action = m
            .base_action
            .compose(&self.cat().tensor(ginv, &self.cat().identity(&m.word())))?;
        out.name = format!("T[{}]{}", grp.names[s], m.base);
        out.shift = Some(s);
        Ok(out)
    }

    /// `φ_g = g`, the module isomorphism `T_g(V) → V`.
    pub fn phi_g(&self, g: usize) -> Morph<S> {
        self.alg.group.elements[g].clone()
    }

    /// `τ_{g;W₁,W₂}: T_g(W₁⊠_V W₂) → T_g W₁ ⊠_V T_g W₂` with `τ I = I`.
    pub fn tau(&self, g: usize, a: &Module<S>, b: &Module<S>) -> Result<Morph<S>> {
        let src = self.tensor(a, b)?;
        let dst = self.tensor(&self.act_t(g, a)?, &self.act_t(g, b)?)?;
        let s = solve(self.cat(), &src.i, &dst.i, Side::Right)?;
        Ok(s.x)
    }

    /// `R^V_{W₁,W₂}: W₁⊠_V W₂ → T_g W₂ ⊠_V W₁` for g-twisted `W₁`, from
    /// `R^V I_{W₁,W₂} = I_{T_g W₂, W₁} R_{W₁,W₂}`.
    pub fn crossed_braiding(&self, a: &Module<S>, b: &Module<S>) -> Result<Morph<S>> {
        let g = self.twist_of(a)?.ok_or(Error::NoSolution(f64::INFINITY))?;
        let src = self.tensor(a, b)?;
        let dst = self.tensor(&self.act_t(g, b)?, a)?;
        let rhs = dst
            .i
            .compose(&self.cat().braid(&a.word(), &b.word(), false))?;
        let s = solve(self.cat(), &src.i, &rhs, Side::Right)?;
        if s.x.inverse(self.tol()).is_none() {
            return Err(Error::NoSolution(f64::INFINITY));
        }
        Ok(s.x)
    }

    pub(crate) fn product(&self, a: &Module<S>, b: &Module<S>) -> Result<Module<S>> {
        Ok(self.tensor(a, b)?.product.clone())
    }

    pub(crate) fn idm(&self, m: &Module<S>) -> Morph<S> {
        self.cat().identity(&m.word())
    }

    /// `f ⊠_V 1_M`.
    pub(crate) fn tensor_right(
        &self,
        f: &Morph<S>,
        p: &Module<S>,
        q: &Module<S>,
        m: &Module<S>,
    ) -> Result<Morph<S>> {
        self.tensor_of_maps(f, p, q, &self.idm(m), m, m)
    }

    /// `1_M ⊠_V f`.
    pub(crate) fn tensor_left(
        &self,
        m: &Module<S>,
        f: &Morph<S>,
        p: &Module<S>,
        q: &Module<S>,
    ) -> Result<Morph<S>> {
        self.tensor_of_maps(&self.idm(m), m, m, f, p, q)
    }

    fn assoc_inv(&self, a: &Module<S>, b: &Module<S>, c: &Module<S>) -> Result<Morph<S>> {
        self.assoc(a, b, c)?
            .inverse(self.tol())
            .ok_or(Error::NoSolution(f64::INFINITY))
    }

    /// Checks the braided G-crossed structure on a set of homogeneous objects.
    pub fn check_gcrossed(&self, objects: &[Module<S>]) -> Result<Report> {
        self.check_gcrossed_with(objects, None)
    }

    /// As [`check_gcrossed`](Self::check_gcrossed); `perturb` names a pair
    /// whose crossed braiding is replaced by the inverse matrix.
    pub fn check_gcrossed_with(
        &self,
        objects: &[Module<S>],
        perturb: Option<(&str, &str)>,
    ) -> Result<Report> {
        let tol = self.tol();
        let grp = &self.alg.group;
        let n = grp.order();
        let mut rep = Report::new("braided G-crossed axioms");
        let mut twists = Vec::new();
        for x in objects {
            match self.twist_of(x)? {
                Some(g) => twists.push(g),
                None => {
                    rep.push(
                        Check::flag("homogeneous", "crossed:grading", false).at(x.name.clone()),
                    );
                    return Ok(rep);
                }
            }
        }
        let rv = |a: &Module<S>, b: &Module<S>| -> Result<Morph<S>> {
            let r = self.crossed_braiding(a, b)?;
            if perturb == Some((a.name.as_str(), b.name.as_str())) {
                let inv = r.inverse(tol).ok_or(Error::NoSolution(f64::INFINITY))?;
                return Ok(Morph {
                    dom: r.dom.clone(),
                    cod: r.cod.clone(),
                    m: inv.m,
                });
            }
            Ok(r)
        };

        // grading of ⊠_V and of the action
        let mut grading = true;
        let mut at = None;
        for (x, &gx) in objects.iter().zip(&twists) {
            for (y, &gy) in objects.iter().zip(&twists) {
                let p = self.product(x, y)?;
                if p.dim() > 0 && self.twist_of(&p)? != Some(grp.mul(gx, gy)) {
                    grading = false;
                    at.get_or_insert_with(|| format!("{}*{}", x.name, y.name));
                }
            }
        }
        let mut c = Check::flag("tensor_grading", "crossed:tensor_grading", grading);
        if let Some(a) = at {
            c = c.at(a);
        }
        rep.push(c);
        let mut tgrade = true;
        let mut func = Worst::default();
        for (x, &gx) in objects.iter().zip(&twists) {
            for h in 0..n {
                let th = self.act_t(h, x)?;
                let want = grp.mul(grp.mul(h, gx), grp.inverse(h));
                tgrade &= self.twist_of(&th)? == Some(want);
                for k in 0..n {
                    let two = self.act_t(h, &self.act_t(k, x)?)?;
                    let one = self.act_t(grp.mul(h, k), x)?;
                    func.record(two.action.dist(&one.action), || {
                        format!("{},{},{}", grp.names[h], grp.names[k], x.name)
                    });
                }
            }
        }
        rep.push(Check::flag(
            "action_grading",
            "crossed:action_grading",
            tgrade,
        ));
        rep.push(func.check("action_functorial", "crossed:action_functorial", tol));

        // τ: Rep V isomorphisms compatible with the unit isomorphisms
        let v = self.unit_module();
        let mut tau_ok = Worst::default();
        let mut tri = Worst::default();
        for g in 0..n {
            for x in objects {
                for y in objects {
                    let t = self.tau(g, x, y)?;
                    let src = self.act_t(g, &self.product(x, y)?)?;
                    let dst = self.product(&self.act_t(g, x)?, &self.act_t(g, y)?)?;
                    let inv = if t.inverse(tol).is_some() {
                        0.0
                    } else {
                        f64::INFINITY
                    };
                    tau_ok.record(self.is_module_map(&t, &src, &dst)?.max(inv), || {
                        format!("{};{},{}", grp.names[g], x.name, y.name)
                    });
                }
                let (tv, tx) = (self.act_t(g, &v)?, self.act_t(g, x)?);
                let left = self
                    .lunit(&tx)?
                    .compose(&self.tensor_right(&self.phi_g(g), &tv, &v, &tx)?)?
                    .compose(&self.tau(g, &v, x)?)?;
                tri.record(left.dist(&self.lunit(x)?), || {
                    format!("left {};{}", grp.names[g], x.name)
                });
                let right = self
                    .runit(&tx)?
                    .compose(&self.tensor_left(&tx, &self.phi_g(g), &tv, &v)?)?
                    .compose(&self.tau(g, x, &v)?)?;
                tri.record(right.dist(&self.runit(x)?), || {
                    format!("right {};{}", grp.names[g], x.name)
                });
            }
        }
        rep.push(tau_ok.check("tau_iso", "crossed:tau", tol));
        rep.push(tri.check("tau_unit_triangles", "crossed:tau_unit", tol));

        // τ_{h;T_g Y,X} T_h(R) = R τ_h
        let mut square = Worst::default();
        for (x, &gx) in objects.iter().zip(&twists) {
            for y in objects {
                let r = rv(x, y)?;
                let tgy = self.act_t(gx, y)?;
                for h in 0..n {
                    let lhs = self.tau(h, &tgy, x)?.compose(&r)?;
                    let (thx, thy) = (self.act_t(h, x)?, self.act_t(h, y)?);
                    let rhs = rv(&thx, &thy)?.compose(&self.tau(h, x, y)?)?;
                    square.record(lhs.dist(&rhs), || {
                        format!("{};{},{}", grp.names[h], x.name, y.name)
                    });
                }
            }
        }
        rep.push(square.check("compatibility_square", "crossed:compatibility", tol));

        let mut hept = Worst::default();
        let mut hex = Worst::default();
        for (x, &gx) in objects.iter().zip(&twists) {
            for (y, &gy) in objects.iter().zip(&twists) {
                for z in objects {
                    let at = || format!("{},{},{}", x.name, y.name, z.name);
                    hept.record(self.heptagon(x, gx, y, z, &rv)?, at);
                    hex.record(self.crossed_hexagon(x, gx, y, gy, z, &rv)?, at);
                }
            }
        }
        rep.push(hept.check("heptagon", "crossed:heptagon", tol));
        rep.push(hex.check("hexagon", "crossed:hexagon", tol));
        Ok(rep)
    }

    /// `(τ_{g;Y,Z}⊠1) R_{X,Y⊠Z}` against
    /// `A (1⊠R_{X,Z}) A⁻¹ (R_{X,Y}⊠1) A`.
    fn heptagon(
        &self,
        x: &Module<S>,
        g: usize,
        y: &Module<S>,
        z: &Module<S>,
        rv: &dyn Fn(&Module<S>, &Module<S>) -> Result<Morph<S>>,
    ) -> Result<f64> {
        let (tgy, tgz) = (self.act_t(g, y)?, self.act_t(g, z)?);
        let yz = self.product(y, z)?;
        let tg_yz = self.act_t(g, &yz)?;
        let tys = self.product(&tgy, &tgz)?;
        let lhs = self
            .tensor_right(&self.tau(g, y, z)?, &tg_yz, &tys, x)?
            .compose(&rv(x, &yz)?)?;
        let (xy, xz) = (self.product(x, y)?, self.product(x, z)?);
        let rhs = self
            .assoc(&tgy, &tgz, x)?
            .compose(&self.tensor_left(&tgy, &rv(x, z)?, &xz, &self.product(&tgz, x)?)?)?
            .compose(&self.assoc_inv(&tgy, x, z)?)?
            .compose(&self.tensor_right(&rv(x, y)?, &xy, &self.product(&tgy, x)?, z)?)?
            .compose(&self.assoc(x, y, z)?)?;
        Ok(lhs.dist(&rhs))
    }

    /// `R_{X⊠Y,Z}` against `A⁻¹ (R_{X,T_h Z}⊠1) A (1⊠R_{Y,Z}) A⁻¹`.
    fn crossed_hexagon(
        &self,
        x: &Module<S>,
        g: usize,
        y: &Module<S>,
        h: usize,
        z: &Module<S>,
        rv: &dyn Fn(&Module<S>, &Module<S>) -> Result<Morph<S>>,
    ) -> Result<f64> {
        let xy = self.product(x, y)?;
        if xy.dim() == 0 {
            return Ok(0.0);
        }
        let lhs = rv(&xy, z)?;
        let thz = self.act_t(h, z)?;
        let tghz = self.act_t(g, &thz)?;
        let rhs = self
            .assoc_inv(&tghz, x, y)?
            .compose(&self.tensor_right(
                &rv(x, &thz)?,
                &self.product(x, &thz)?,
                &self.product(&tghz, x)?,
                y,
            )?)?
            .compose(&self.assoc(x, &thz, y)?)?
            .compose(&self.tensor_left(
                x,
                &rv(y, z)?,
                &self.product(y, z)?,
                &self.product(&thz, y)?,
            )?)?
            .compose(&self.assoc_inv(x, y, z)?)?;
        Ok(lhs.dist(&rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::{load, module};
    use crate::scalar::{C64, QI};

    #[test]
    fn ph_crossed_axioms_hold_exactly() {
        let (inst, rep) = load::<QI>("PH");
        let objs = inst.object_set(&rep).unwrap();
        let report = rep.check_gcrossed(&objs).unwrap();
        assert!(report.passed(), "{report}");
        for c in &report.checks {
            assert_eq!(c.residual, 0.0, "{}", c.name);
        }
    }

    #[test]
    fn ising_crossed_axioms_hold() {
        let (inst, rep) = load::<C64>("ising");
        let objs = inst.object_set(&rep).unwrap();
        let report = rep.check_gcrossed(&objs).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.checks.iter().all(|c| c.residual <= 1e-9));
    }

    #[test]
    fn inverted_braiding_breaks_the_heptagon() {
        let (inst, rep) = load::<C64>("ising");
        let objs = inst.object_set(&rep).unwrap();
        let report = rep
            .check_gcrossed_with(&objs, Some(("F(sigma)", "F(sigma)")))
            .unwrap();
        assert!(!report.get("heptagon").unwrap().pass, "{report}");
    }

    #[test]
    fn trivial_element_acts_trivially() {
        let (inst, rep) = load::<QI>("PH");
        for m in inst.object_set(&rep).unwrap() {
            let t = rep.act_t(rep.alg.group.identity, &m).unwrap();
            assert_eq!(t.action.dist(&m.action), 0.0);
            assert!(rep
                .check_module(&rep.act_t(1, &m).unwrap())
                .unwrap()
                .passed());
        }
    }

    #[test]
    fn parity_twist_of_sigma_is_isomorphic_to_it() {
        let (inst, rep) = load::<C64>("ising");
        let w = module(&inst, &rep, "F(sigma)");
        let p = rep.alg.group.parity.unwrap();
        let t = rep.act_t(p, &w).unwrap();
        assert_eq!(rep.twist_of(&t).unwrap(), Some(p));
        let (even, _) = rep.hom_modules(&t, &w).unwrap();
        assert!(even.iter().any(|f| f.inverse(1e-9).is_some()));
    }

    #[test]
    fn tau_on_the_unit_is_invertible() {
        let (_, rep) = load::<QI>("PH");
        let v = rep.unit_module();
        let t = rep.tau(1, &v, &v).unwrap();
        assert!(t.inverse(0.0).is_some());
        assert_eq!(t.m.rows, 2);
    }

    #[test]
    fn double_crossed_braiding_on_untwisted_pair_is_the_monodromy() {
        use crate::backend::factor::{solve, Side};
        for name in ["F(X00)", "F(X10)"] {
            let (inst, rep) = load::<QI>("PH");
            let v = rep.unit_module();
            let w = module(&inst, &rep, name);
            assert_eq!(rep.twist_of(&w).unwrap(), Some(0));
            let double = rep
                .crossed_braiding(&w, &v)
                .unwrap()
                .compose(&rep.crossed_braiding(&v, &w).unwrap())
                .unwrap();
            let cat = rep.cat();
            let m = cat
                .braid(&w.word(), &v.word(), false)
                .compose(&cat.braid(&v.word(), &w.word(), false))
                .unwrap();
            let i = &rep.tensor(&v, &w).unwrap().i;
            let induced = solve(cat, i, &i.compose(&m).unwrap(), Side::Right)
                .unwrap()
                .x;
            assert_eq!(double.dist(&induced), 0.0, "{name}");
        }
    }
}
