//! Modules over a superalgebra object, the cokernel tensor product, and
//! induction.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::algebra::SuperAlgebra;
use crate::backend::factor::{combine, factor, flatten, solve, span_kernel, FactorMode, Side};
use crate::backend::{Category, ConcreteObject, Environment, Morph, Word};
use crate::error::{Error, Result};
use crate::ir::build::*;
use crate::ir::catalog::{action_name, formula, FormulaId};
use crate::ir::Parity;
use crate::report::{Check, Report};
use crate::scalar::Scalar;

/// A module `(W, μ_W)`; `W` is always a single leaf object.
///
/// Modules obtained by twisting with `T_g` remember the untwisted action so
/// that `T_g T_h = T_{gh}` holds on the nose.
#[derive(Clone, Debug)]
pub struct Module<S: Scalar> {
    pub name: String,
    pub base: String,
    /// Group index of the twist `T_g` applied to the base module, if any.
    pub shift: Option<usize>,
    pub w: ConcreteObject,
    pub action: Morph<S>,
    pub base_action: Morph<S>,
}

impl<S: Scalar> Module<S> {
    pub fn new(name: &str, w: ConcreteObject, action: Morph<S>) -> Self {
        Module {
            name: name.to_string(),
            base: name.to_string(),
            shift: None,
            w,
            action: action.clone(),
            base_action: action,
        }
    }

    pub fn word(&self) -> Word {
        Word::leaf(self.w.clone())
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }
}

/// `W₁ ⊠_V W₂` with its structure maps.
#[derive(Clone, Debug)]
pub struct TensorProduct<S: Scalar> {
    pub product: Module<S>,
    /// The cokernel projection `W₁⊠W₂ → product`.
    pub i: Morph<S>,
    pub mu1: Morph<S>,
    pub mu2: Morph<S>,
}

pub fn leaf_of(w: &Word) -> Result<ConcreteObject> {
    w.as_leaf()
        .cloned()
        .ok_or_else(|| Error::ShapeMismatch(format!("{w} is not a leaf")))
}

/// Identity matrix from a word to its flattened leaf.
pub fn flat<S: Scalar>(cat: &Category<S>, w: &Word) -> Morph<S> {
    cat.flatten(w).1
}

/// Identity matrix from the flattened leaf back to the word.
pub fn unflat<S: Scalar>(cat: &Category<S>, w: &Word) -> Morph<S> {
    let f = cat.flatten(w).1;
    Morph {
        dom: f.cod,
        cod: f.dom,
        m: f.m,
    }
}

/// Both factors are stored so that a name reused for a different module
/// misses the cache.
type Cached<S> = (Morph<S>, Morph<S>, Arc<TensorProduct<S>>);

pub struct RepV<S: Scalar> {
    pub alg: Arc<SuperAlgebra<S>>,
    products: Mutex<HashMap<(String, String), Cached<S>>>,
}

impl<S: Scalar> RepV<S> {
    pub fn new(alg: Arc<SuperAlgebra<S>>) -> Self {
        RepV {
            alg,
            products: Mutex::new(HashMap::new()),
        }
    }

    pub fn cat(&self) -> &Arc<Category<S>> {
        &self.alg.cat
    }

    pub fn tol(&self) -> f64 {
        self.alg.cat.tol
    }

    fn v(&self) -> Word {
        self.alg.word()
    }

    /// The algebra environment with each module bound to a slot symbol and
    /// its action to `mu<slot>`.
    pub fn env(&self, slots: &[(&str, &Module<S>)]) -> Result<Environment<S>> {
        let mut env = self.alg.env()?;
        for (slot, m) in slots {
            env.bind_object(slot, m.word());
            env.bind_gen(
                &action_name(slot),
                t(o("V"), o(slot)),
                o(slot),
                m.action.clone(),
            )?;
        }
        Ok(env)
    }

    /// `(V, μ_V)`.
    pub fn unit_module(&self) -> Module<S> {
        Module::new("V", self.alg.v.clone(), self.alg.mu.clone())
    }

    /// `ΠW`, with the same action matrix.
    pub fn flip(&self, m: &Module<S>) -> Result<Module<S>> {
        let w = m.w.flipped();
        let a = self.cat().from_matrix(
            &Word::node(self.v(), Word::leaf(w.clone())),
            &Word::leaf(w.clone()),
            m.action.m.clone(),
        )?;
        Ok(Module::new(&format!("Pi({})", m.name), w, a))
    }

    pub fn check_module(&self, m: &Module<S>) -> Result<Report> {
        if *m.action.dom_word() != Word::node(self.v(), m.word())
            || *m.action.cod_word() != m.word()
        {
            return Err(Error::ShapeMismatch(format!(
                "action of {} must be V⊠W → W",
                m.name
            )));
        }
        let env = self.env(&[("W", m)])?;
        let (v, w) = (o("V"), o("W"));
        let mw = gen(&action_name("W"));
        let mut rep = Report::new(format!("module {}", m.name));
        rep.push(Check::flag(
            "action_even",
            "module:even",
            m.action.parity() == Parity::Even,
        ));
        let unit_l = chain(vec![
            lunit_inv(w.clone()),
            ten(gen("iota"), id(w.clone())),
            mw.clone(),
        ]);
        rep.push(Check::measure(
            "module_unit",
            "module:unit",
            env.residual(&unit_l, &id(w.clone()))?,
            self.tol(),
        ));
        let lhs = chain(vec![ten(id(v.clone()), mw.clone()), mw.clone()]);
        let rhs = chain(vec![
            assoc(v.clone(), v.clone(), w),
            ten(gen("mu"), id(o("W"))),
            mw,
        ]);
        rep.push(Check::measure(
            "module_assoc",
            "module:associativity",
            env.residual(&lhs, &rhs)?,
            self.tol(),
        ));
        Ok(rep)
    }

    /// `f μ₁ − μ₂ (1⊠f)`.
    pub fn intertwining_defect(
        &self,
        f: &Morph<S>,
        m1: &Module<S>,
        m2: &Module<S>,
    ) -> Result<Morph<S>> {
        let lhs = f.compose(&m1.action)?;
        let rhs = m2
            .action
            .compose(&self.cat().tensor(&self.cat().identity(&self.v()), f))?;
        lhs.sub(&rhs)
    }

    pub fn is_module_map(&self, f: &Morph<S>, m1: &Module<S>, m2: &Module<S>) -> Result<f64> {
        Ok(self.intertwining_defect(f, m1, m2)?.m.max_abs())
    }

    /// Bases of the even and odd module maps `m1 → m2`.
    pub fn hom_modules(
        &self,
        m1: &Module<S>,
        m2: &Module<S>,
    ) -> Result<(Vec<Morph<S>>, Vec<Morph<S>>)> {
        let mut out = Vec::new();
        for odd in [false, true] {
            let basis = self.cat().hom_basis_parity(&m1.word(), &m2.word(), odd);
            let cols: Vec<Vec<S>> = basis
                .iter()
                .map(|b| Ok(flatten(&[self.intertwining_defect(b, m1, m2)?])))
                .collect::<Result<_>>()?;
            let len = cols.first().map_or(0, Vec::len);
            let ker = if basis.is_empty() {
                vec![]
            } else {
                span_kernel(&cols, len, self.tol())
            };
            out.push(
                ker.iter()
                    .map(|c| combine(self.cat(), &basis, c, &m1.word(), &m2.word()))
                    .collect(),
            );
        }
        let odd = out.pop().expect("two parities");
        let even = out.pop().expect("two parities");
        Ok((even, odd))
    }

    /// The two actions on `W₁⊠W₂` (as maps `V⊠(W₁⊠W₂) → W₁⊠W₂`).
    pub fn two_actions(&self, a: &Module<S>, b: &Module<S>) -> Result<(Morph<S>, Morph<S>)> {
        let env = self.env(&[("W1", a), ("W2", b)])?;
        let mu1 = env.eval(&formula(
            &FormulaId::new("mu1")
                .object("W1", o("W1"))
                .object("W2", o("W2")),
        )?)?;
        let mu2 = env.eval(&formula(
            &FormulaId::new("mu2")
                .object("W1", o("W1"))
                .object("W2", o("W2")),
        )?)?;
        Ok((mu1, mu2))
    }

    /// `W₁ ⊠_V W₂`, memoized by module names and actions.
    pub fn tensor(&self, a: &Module<S>, b: &Module<S>) -> Result<Arc<TensorProduct<S>>> {
        let key = (a.name.clone(), b.name.clone());
        let same = |x: &Morph<S>, y: &Morph<S>| x.dom_word() == y.dom_word() && x.m == y.m;
        let mut fresh = true;
        if let Some((ca, cb, p)) = self.products.lock().expect("product cache").get(&key) {
            if same(ca, &a.action) && same(cb, &b.action) {
                return Ok(p.clone());
            }
            fresh = false;
        }
        let (mu1, mu2) = self.two_actions(a, b)?;
        let (obj, i) = factor(self.cat(), &mu1.sub(&mu2)?, FactorMode::Cokernel)?;
        let one_i = self.cat().tensor(&self.cat().identity(&self.v()), &i);
        let target = i.compose(&mu1)?;
        let s = solve(self.cat(), &one_i, &target, Side::Right)?;
        if s.nullity != 0 {
            return Err(Error::NoSolution(f64::NAN));
        }
        let product = Module::new(&format!("({}*{})", a.name, b.name), obj, s.x);
        let tp = Arc::new(TensorProduct {
            product,
            i,
            mu1,
            mu2,
        });
        if fresh {
            self.products
                .lock()
                .expect("product cache")
                .insert(key, (a.action.clone(), b.action.clone(), tp.clone()));
        }
        Ok(tp)
    }

    /// `I μ⁽¹⁾ = I μ⁽²⁾ = μ₃(1⊠I)` for `I: W₁⊠W₂ → W₃`.
    pub fn is_intertwiner(
        &self,
        i: &Morph<S>,
        a: &Module<S>,
        b: &Module<S>,
        c: &Module<S>,
    ) -> Result<bool> {
        let (mu1, mu2) = self.two_actions(a, b)?;
        let x = i.compose(&mu1)?;
        let y = i.compose(&mu2)?;
        let z = c
            .action
            .compose(&self.cat().tensor(&self.cat().identity(&self.v()), i))?;
        Ok(x.dist(&y) <= self.tol() && x.dist(&z) <= self.tol())
    }

    fn solved_iso(&self, a: &Morph<S>, b: &Morph<S>) -> Result<Morph<S>> {
        let s = solve(self.cat(), a, b, Side::Right)?;
        if s.x.inverse(self.tol()).is_none() {
            return Err(Error::NoSolution(f64::INFINITY));
        }
        Ok(s.x)
    }

    /// `l^V_W: V⊠_V W → W` with `l^V I_{V,W} = μ_W`.
    pub fn lunit(&self, m: &Module<S>) -> Result<Morph<S>> {
        let tp = self.tensor(&self.unit_module(), m)?;
        self.solved_iso(&tp.i, &m.action)
    }

    /// `r^V_W: W⊠_V V → W` with `r^V I_{W,V} = μ_W R⁻¹_{V,W}`.
    pub fn runit(&self, m: &Module<S>) -> Result<Morph<S>> {
        let tp = self.tensor(m, &self.unit_module())?;
        let b = m
            .action
            .compose(&self.cat().braid(&self.v(), &m.word(), true))?;
        self.solved_iso(&tp.i, &b)
    }

    /// `A^V: W₁⊠_V(W₂⊠_V W₃) → (W₁⊠_V W₂)⊠_V W₃`.
    pub fn assoc(&self, a: &Module<S>, b: &Module<S>, c: &Module<S>) -> Result<Morph<S>> {
        let cat = self.cat();
        let bc = self.tensor(b, c)?;
        let a_bc = self.tensor(a, &bc.product)?;
        let ab = self.tensor(a, b)?;
        let ab_c = self.tensor(&ab.product, c)?;
        let x = a_bc
            .i
            .compose(&cat.tensor(&cat.identity(&a.word()), &bc.i))?;
        let y = ab_c
            .i
            .compose(&cat.tensor(&ab.i, &cat.identity(&c.word())))?
            .compose(&cat.assoc(&a.word(), &b.word(), &c.word(), false))?;
        self.solved_iso(&x, &y)
    }

    /// `F(X) = (V⊠X, (μ⊠1)A)`, flattened to a leaf.
    pub fn induce(&self, x: &ConcreteObject, name: &str) -> Result<Module<S>> {
        let cat = self.cat();
        let xw = Word::leaf(x.clone());
        let vx = Word::node(self.v(), xw.clone());
        let mut env = self.alg.env()?;
        env.bind_object("X", xw);
        let act = env.eval(&formula(
            &FormulaId::new("induction_action").object("X", o("X")),
        )?)?;
        let (obj, fl) = cat.flatten(&vx);
        let action = fl
            .compose(&act)?
            .compose(&cat.tensor(&cat.identity(&self.v()), &unflat(cat, &vx)))?;
        Ok(Module::new(name, obj, action))
    }

    /// `F(f) = 1_V⊠f` between flattened leaves.
    pub fn induce_mor(&self, f: &Morph<S>) -> Result<Morph<S>> {
        let cat = self.cat();
        let (dx, dy) = (
            Word::node(self.v(), f.dom_word().clone()),
            Word::node(self.v(), f.cod_word().clone()),
        );
        flat(cat, &dy)
            .compose(&cat.tensor(&cat.identity(&self.v()), f))?
            .compose(&unflat(cat, &dx))
    }

    /// `Ψ(f) = μ_W(1⊠f): F(X) → W` for `f: X → W`.
    pub fn adjoint_psi(&self, f: &Morph<S>, m: &Module<S>) -> Result<Morph<S>> {
        let cat = self.cat();
        let dx = Word::node(self.v(), f.dom_word().clone());
        m.action
            .compose(&cat.tensor(&cat.identity(&self.v()), f))?
            .compose(&unflat(cat, &dx))
    }

    /// `F(X₁⊠X₂) → F(X₁)⊠_V F(X₂)` through `1⊠(ι⊠1)l⁻¹` and `I`.
    pub fn induction_tensorator(
        &self,
        x1: &ConcreteObject,
        x2: &ConcreteObject,
    ) -> Result<(Morph<S>, Module<S>, Module<S>)> {
        let cat = self.cat();
        let (f1, f2) = (self.induce(x1, "F1")?, self.induce(x2, "F2")?);
        let (w1, w2) = (Word::leaf(x1.clone()), Word::leaf(x2.clone()));
        let x12 = Word::node(w1.clone(), w2.clone());
        let (o12, _) = cat.flatten(&x12);
        let f12 = self.induce(&o12, "F12")?;
        let tp = self.tensor(&f1, &f2)?;
        let v = self.v();
        let iota_x2 = self.alg.iota.clone();
        let into_f2 = flat(cat, &Word::node(v.clone(), w2.clone()))
            .compose(&cat.tensor(&iota_x2, &cat.identity(&w2)))?
            .compose(&cat.lunit(&w2, true))?;
        let vx1 = Word::node(v.clone(), w1.clone());
        let m =
            tp.i.compose(&cat.tensor(&flat(cat, &vx1), &into_f2))?
                .compose(&cat.assoc(&v, &w1, &w2, false))?
                .compose(&cat.tensor(&cat.identity(&v), &unflat(cat, &x12)))?
                .compose(&unflat(cat, &Word::node(v, Word::leaf(o12))))?;
        Ok((m, f12, tp.product.clone()))
    }
}

impl<S: Scalar> RepV<S> {
    /// `f ⊠_V g: P₁⊠_V P₂ → Q₁⊠_V Q₂`, solved from `(f⊠_V g) I = I (f⊠g)`.
    pub fn tensor_of_maps(
        &self,
        f: &Morph<S>,
        p1: &Module<S>,
        q1: &Module<S>,
        g: &Morph<S>,
        p2: &Module<S>,
        q2: &Module<S>,
    ) -> Result<Morph<S>> {
        let src = self.tensor(p1, p2)?;
        let dst = self.tensor(q1, q2)?;
        let b = dst.i.compose(&self.cat().tensor(f, g))?;
        Ok(solve(self.cat(), &src.i, &b, Side::Right)?.x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{close_group, diagonal, multiplication_by_labels, unit_inclusion};
    use crate::backend::instances;
    use crate::scalar::{C64, QI};

    fn ph() -> RepV<QI> {
        let cat = Arc::new(Category::<QI>::new(instances::ph()).unwrap());
        let v = ConcreteObject::new(vec![(0, 0), (2, 0)]);
        let mu = multiplication_by_labels(&cat, &v, |_, _| QI::from_int(1)).unwrap();
        let iota = unit_inclusion(&cat, &v).unwrap();
        let g = diagonal(&cat, &v, &[QI::from_int(1), QI::from_int(-1)]);
        let group = close_group(&cat, &Word::leaf(v.clone()), vec![("g".into(), g)], 10).unwrap();
        RepV::new(Arc::new(
            SuperAlgebra::new(cat, v, mu, iota, group)
                .unwrap()
                .complete()
                .unwrap(),
        ))
    }

    fn ising() -> RepV<C64> {
        let cat = Arc::new(Category::<C64>::new(instances::ising()).unwrap());
        let v = ConcreteObject::new(vec![(0, 0), (1, 0)]);
        let mu = multiplication_by_labels(&cat, &v, |_, _| C64::new(1.0, 0.0)).unwrap();
        let iota = unit_inclusion(&cat, &v).unwrap();
        let p = cat.parity_operator(&Word::leaf(v.clone()));
        let group = close_group(&cat, &Word::leaf(v.clone()), vec![("P".into(), p)], 10).unwrap();
        RepV::new(Arc::new(
            SuperAlgebra::new(cat, v, mu, iota, group)
                .unwrap()
                .complete()
                .unwrap(),
        ))
    }

    fn sorted_labels(o: &ConcreteObject) -> Vec<usize> {
        let mut l: Vec<usize> = o.summands.iter().map(|x| x.0).collect();
        l.sort();
        l
    }

    #[test]
    fn unit_and_free_modules_are_modules() {
        let r = ph();
        assert!(r.check_module(&r.unit_module()).unwrap().passed());
        let f = r.induce(&ConcreteObject::simple(1), "F(X01)").unwrap();
        assert_eq!(f.dim(), 2);
        let rep = r.check_module(&f).unwrap();
        assert!(rep.passed(), "{rep}");
        let g = &r.alg.group.elements[1];
        let twisted = r
            .alg
            .mu
            .compose(&r.cat().tensor(g, &r.cat().identity(&r.v())))
            .unwrap();
        assert!(r
            .check_module(&Module::new("TgV", r.alg.v.clone(), twisted))
            .unwrap()
            .passed());
    }

    #[test]
    fn hom_dimensions() {
        let r = ph();
        let v = r.unit_module();
        let f = r.induce(&ConcreteObject::simple(1), "F(X01)").unwrap();
        assert_eq!(r.hom_modules(&v, &v).unwrap().0.len(), 1);
        let (e, o) = r.hom_modules(&v, &f).unwrap();
        assert_eq!(e.len() + o.len(), 0);
        let s = ising();
        let fs = s.induce(&ConcreteObject::simple(2), "F(sigma)").unwrap();
        let (e, o) = s.hom_modules(&fs, &fs).unwrap();
        assert_eq!((e.len(), o.len()), (1, 1));
    }

    #[test]
    fn unit_product_and_unitors() {
        let r = ph();
        let v = r.unit_module();
        let tp = r.tensor(&v, &v).unwrap();
        assert_eq!(sorted_labels(&tp.product.w), sorted_labels(&r.alg.v));
        assert!(r.check_module(&tp.product).unwrap().passed());
        assert!(r.is_intertwiner(&tp.i, &v, &v, &tp.product).unwrap());
        assert!(r.is_intertwiner(&v.action, &v, &v, &v).unwrap());
        let l = r.lunit(&v).unwrap();
        assert!(l.dist(&r.runit(&v).unwrap()) <= r.tol());
    }

    #[test]
    fn random_map_is_not_an_intertwiner() {
        let r = ph();
        let v = r.unit_module();
        let vv = Word::node(v.word(), v.word());
        let basis = r.cat().hom_basis_parity(&vv, &v.word(), false);
        assert!(!r.is_intertwiner(&basis[0], &v, &v, &v).unwrap());
    }

    #[test]
    fn ising_sigma_squared() {
        let s = ising();
        let fs = s.induce(&ConcreteObject::simple(2), "F(sigma)").unwrap();
        let tp = s.tensor(&fs, &fs).unwrap();
        assert_eq!(sorted_labels(&tp.product.w), vec![0, 0, 1, 1]);
        let rep = s.check_module(&tp.product).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(s.lunit(&fs).is_ok() && s.runit(&fs).is_ok());
    }

    #[test]
    fn pentagon_and_triangle() {
        let r = ph();
        let v = r.unit_module();
        let w = r.induce(&ConcreteObject::simple(1), "W").unwrap();
        let p = |x: &Module<QI>, y: &Module<QI>| r.tensor(x, y).unwrap().product.clone();
        let idm = |m: &Module<QI>| r.cat().identity(&m.word());
        let (a, b, c, d) = (&v, &w, &v, &w);
        let (ab, bc, cd) = (p(a, b), p(b, c), p(c, d));
        let (abc, bcd) = (p(&ab, c), p(&bc, d));
        let lhs = r
            .assoc(&ab, c, d)
            .unwrap()
            .compose(&r.assoc(a, b, &cd).unwrap())
            .unwrap();
        let x = r
            .tensor_of_maps(&r.assoc(a, b, c).unwrap(), &p(a, &bc), &abc, &idm(d), d, d)
            .unwrap();
        let y = r.assoc(a, &bc, d).unwrap();
        let z = r
            .tensor_of_maps(&idm(a), a, a, &r.assoc(b, c, d).unwrap(), &p(b, &cd), &bcd)
            .unwrap();
        let rhs = x.compose(&y).unwrap().compose(&z).unwrap();
        assert_eq!(lhs.dist(&rhs), 0.0);
        // (r⊠1) A = 1⊠l on (W, V, W)
        let (w1, w2) = (&w, &w);
        let t1 = r
            .tensor_of_maps(&r.runit(w1).unwrap(), &p(w1, &v), w1, &idm(w2), w2, w2)
            .unwrap();
        let lhs = t1.compose(&r.assoc(w1, &v, w2).unwrap()).unwrap();
        let rhs = r
            .tensor_of_maps(&idm(w1), w1, w1, &r.lunit(w2).unwrap(), &p(&v, w2), w2)
            .unwrap();
        assert_eq!(lhs.dist(&rhs), 0.0);
    }

    #[test]
    fn induction_is_monoidal() {
        let r = ph();
        let (m, f12, prod) = r
            .induction_tensorator(&ConcreteObject::simple(1), &ConcreteObject::simple(2))
            .unwrap();
        assert!(m.inverse(r.tol()).is_some());
        assert_eq!(r.is_module_map(&m, &f12, &prod).unwrap(), 0.0);
    }

    #[test]
    fn adjunction_recovers_f() {
        let r = ph();
        let v = r.unit_module();
        let x = ConcreteObject::simple(0);
        let f = r.alg.iota.clone();
        let psi = r.adjoint_psi(&f, &v).unwrap();
        let fx = r.induce(&x, "F(1)").unwrap();
        assert_eq!(r.is_module_map(&psi, &fx, &v).unwrap(), 0.0);
        let cat = r.cat();
        let xw = Word::leaf(x);
        let back = psi
            .compose(&flat(cat, &Word::node(r.v(), xw.clone())))
            .unwrap()
            .compose(&cat.tensor(&r.alg.iota, &cat.identity(&xw)))
            .unwrap()
            .compose(&cat.lunit(&xw, true))
            .unwrap();
        assert_eq!(back.dist(&f), 0.0);
    }
}
