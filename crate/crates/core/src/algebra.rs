//! Superalgebra objects: axioms, automorphism groups, counit and two-sided
//! coevaluation.

use std::sync::Arc;

use crate::backend::factor::{combine, flatten, span_solve};
use crate::backend::{Category, ConcreteObject, Environment, Morph, Word};
use crate::error::{Error, Result};
use crate::ir::build::*;
use crate::ir::catalog::{chain_identities, formula, FormulaId};
use crate::ir::{MorExpr, Parity};
use crate::report::{Check, Report};
use crate::scalar::{show, Scalar};

/// IR generator name of the group element with index `i`.
pub fn element_name(i: usize) -> String {
    format!("g_{i}")
}

#[derive(Clone, Debug)]
pub struct AutomorphismGroup<S: Scalar> {
    pub names: Vec<String>,
    pub elements: Vec<Morph<S>>,
    /// `table[a][b]` is the index of `a ∘ b`.
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
    /// Index of the parity involution P_V, if it belongs to the group.
    pub parity: Option<usize>,
}

impl<S: Scalar> AutomorphismGroup<S> {
    /// Builds the multiplication table of an explicit list of `V → V` maps.
    /// `parity_name`, when given, must name the parity involution; otherwise
    /// it is searched for.
    pub fn from_elements(
        cat: &Category<S>,
        v: &Word,
        named: Vec<(String, Morph<S>)>,
        parity_name: Option<&str>,
    ) -> Result<Self> {
        let n = named.len();
        let (names, elements): (Vec<String>, Vec<Morph<S>>) = named.into_iter().unzip();
        for (name, g) in names.iter().zip(&elements) {
            if g.dom_word() != v || g.cod_word() != v {
                return Err(Error::BindingMismatch {
                    name: name.clone(),
                    detail: "group elements are maps V -> V".into(),
                });
            }
        }
        let find = |m: &Morph<S>| elements.iter().position(|e| e.dist(m) <= cat.tol);
        let identity = find(&cat.identity(v)).ok_or(Error::NotClosed(n))?;
        let mut table = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                table[a][b] =
                    find(&elements[a].compose(&elements[b])?).ok_or(Error::NotClosed(n))?;
            }
        }
        let parity = match parity_name {
            Some(p) => Some(
                names
                    .iter()
                    .position(|x| x == p)
                    .ok_or_else(|| Error::UnknownName(p.to_string()))?,
            ),
            None => find(&cat.parity_operator(v)),
        };
        Ok(AutomorphismGroup {
            names,
            elements,
            table,
            identity,
            parity,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.table[a][b] == self.identity)
            .expect("finite group has inverses")
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|x| x == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn ir_names(&self) -> Vec<String> {
        (0..self.order()).map(element_name).collect()
    }
}

/// Closes a set of generators under composition, starting from the identity.
pub fn close_group<S: Scalar>(
    cat: &Category<S>,
    v: &Word,
    generators: Vec<(String, Morph<S>)>,
    cap: usize,
) -> Result<AutomorphismGroup<S>> {
    let mut named = vec![("1".to_string(), cat.identity(v))];
    let mut k = 0;
    while k < named.len() {
        for (gn, g) in &generators {
            let y = g.compose(&named[k].1)?;
            if named.iter().all(|(_, e)| e.dist(&y) > cat.tol) {
                if named.len() >= cap {
                    return Err(Error::NotClosed(cap));
                }
                let name = if k == 0 {
                    gn.clone()
                } else {
                    format!("{gn}*{}", named[k].0)
                };
                named.push((name, y));
            }
        }
        k += 1;
    }
    AutomorphismGroup::from_elements(cat, v, named, None)
}

/// Multiplication that sends the summand pair `(i, j)` to the summand of `V`
/// carrying the fused label, with coefficient `coeff(i, j)`. Each label may
/// occur in `V` at most once.
pub fn multiplication_by_labels<S: Scalar>(
    cat: &Category<S>,
    v: &ConcreteObject,
    coeff: impl Fn(usize, usize) -> S,
) -> Result<Morph<S>> {
    let vw = Word::leaf(v.clone());
    let vv = Word::node(vw.clone(), vw.clone());
    let b = cat.basis(&vv);
    let target = cat.basis(&vw);
    let mut mu = cat.zero(&vv, &vw);
    for (col, e) in b.elems.iter().enumerate() {
        let hits: Vec<usize> = v
            .summands
            .iter()
            .enumerate()
            .filter(|(_, s)| s.0 == e.total)
            .map(|(k, _)| k)
            .collect();
        match hits.as_slice() {
            [] => {}
            [k] => mu.m.set(*k, col, coeff(e.l, e.r)),
            _ => return Err(Error::ShapeMismatch("label repeated in V".into())),
        }
    }
    debug_assert_eq!(mu.cod.len(), target.len());
    Ok(mu)
}

/// `ι: 1 → V` onto the first summand carrying the unit label.
pub fn unit_inclusion<S: Scalar>(cat: &Category<S>, v: &ConcreteObject) -> Result<Morph<S>> {
    let u = cat.spec.unit;
    let k = v
        .summands
        .iter()
        .position(|s| *s == (u, 0))
        .ok_or_else(|| Error::ShapeMismatch("V has no even unit summand".into()))?;
    let mut iota = cat.zero(&cat.unit_word(), &Word::leaf(v.clone()));
    iota.m.set(k, 0, S::one());
    Ok(iota)
}

/// A diagonal endomorphism of a leaf object.
pub fn diagonal<S: Scalar>(cat: &Category<S>, v: &ConcreteObject, d: &[S]) -> Morph<S> {
    let mut m = cat.identity(&Word::leaf(v.clone()));
    for (k, x) in d.iter().enumerate() {
        m.m.set(k, k, x.clone());
    }
    m
}

#[derive(Clone, Debug)]
pub struct SuperAlgebra<S: Scalar> {
    pub cat: Arc<Category<S>>,
    pub v: ConcreteObject,
    pub mu: Morph<S>,
    pub iota: Morph<S>,
    pub epsilon: Option<Morph<S>>,
    pub coev: Option<Morph<S>>,
    pub group: AutomorphismGroup<S>,
    /// Dimensions of the solution spaces left over when ε and ĩ were derived.
    pub counit_nullity: usize,
    pub coev_nullity: usize,
}

impl<S: Scalar> SuperAlgebra<S> {
    pub fn new(
        cat: Arc<Category<S>>,
        v: ConcreteObject,
        mu: Morph<S>,
        iota: Morph<S>,
        group: AutomorphismGroup<S>,
    ) -> Result<Self> {
        let vw = Word::leaf(v.clone());
        if *mu.dom_word() != Word::node(vw.clone(), vw.clone()) || *mu.cod_word() != vw {
            return Err(Error::ShapeMismatch("mu must be V⊠V → V".into()));
        }
        if *iota.dom_word() != cat.unit_word() || *iota.cod_word() != vw {
            return Err(Error::ShapeMismatch("iota must be 1 → V".into()));
        }
        Ok(SuperAlgebra {
            cat,
            v,
            mu,
            iota,
            epsilon: None,
            coev: None,
            group,
            counit_nullity: 0,
            coev_nullity: 0,
        })
    }

    pub fn word(&self) -> Word {
        Word::leaf(self.v.clone())
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    fn order_scalar(&self) -> S {
        S::from_int(self.order() as i64)
    }

    /// Derives ε and ĩ where they are missing; user-supplied ones are kept
    /// and checked later.
    pub fn complete(mut self) -> Result<Self> {
        if self.epsilon.is_none() {
            let (e, n) = self.derive_counit()?;
            self.epsilon = Some(e);
            self.counit_nullity = n;
        }
        if self.coev.is_none() {
            let (c, n) = self.derive_coev()?;
            self.coev = Some(c);
            self.coev_nullity = n;
        }
        Ok(self)
    }

    /// Environment binding `V`, `mu`, `iota`, `eps`, `coev` (when present)
    /// and the group elements `g_<i>`.
    pub fn env(&self) -> Result<Environment<S>> {
        let mut env = Environment::new(self.cat.clone());
        let v = o("V");
        env.bind_object("V", self.word());
        env.bind_gen("mu", t(v.clone(), v.clone()), v.clone(), self.mu.clone())?;
        env.bind_gen("iota", unit(), v.clone(), self.iota.clone())?;
        if let Some(e) = &self.epsilon {
            env.bind_gen("eps", v.clone(), unit(), e.clone())?;
        }
        if let Some(c) = &self.coev {
            env.bind_gen("coev", unit(), t(v.clone(), v.clone()), c.clone())?;
        }
        for (i, g) in self.group.elements.iter().enumerate() {
            env.bind_gen(&element_name(i), v.clone(), v.clone(), g.clone())?;
        }
        Ok(env)
    }

    fn tol(&self) -> f64 {
        self.cat.tol
    }

    fn measure(
        &self,
        env: &Environment<S>,
        name: &str,
        anchor: &str,
        lhs: &MorExpr,
        rhs: &MorExpr,
    ) -> Check {
        match env.residual(lhs, rhs) {
            Ok(r) => Check::measure(name, anchor, r, self.tol()),
            Err(e) => Check::error(name, anchor, &e),
        }
    }

    /// Unit, associativity and supercommutativity.
    pub fn check_superalgebra(&self) -> Result<Report> {
        let env = self.env()?;
        let v = o("V");
        let iv = id(v.clone());
        let mut rep = Report::new("superalgebra axioms");
        rep.push(Check::flag(
            "mu_even",
            "algebra:even",
            self.mu.parity() == Parity::Even,
        ));
        rep.push(Check::flag(
            "iota_even",
            "algebra:even",
            self.iota.parity() == Parity::Even,
        ));
        let lu = chain(vec![
            lunit_inv(v.clone()),
            ten(gen("iota"), iv.clone()),
            gen("mu"),
        ]);
        rep.push(self.measure(&env, "left_unit", "algebra:left_unit", &lu, &iv));
        let ru = chain(vec![
            runit_inv(v.clone()),
            ten(iv.clone(), gen("iota")),
            gen("mu"),
        ]);
        rep.push(self.measure(&env, "right_unit", "algebra:right_unit", &ru, &iv));
        let lhs = chain(vec![ten(iv.clone(), gen("mu")), gen("mu")]);
        let rhs = chain(vec![
            assoc(v.clone(), v.clone(), v.clone()),
            ten(gen("mu"), iv),
            gen("mu"),
        ]);
        rep.push(self.measure(&env, "associativity", "algebra:associativity", &lhs, &rhs));
        let sc = chain(vec![braid(v.clone(), v), gen("mu")]);
        rep.push(self.measure(
            &env,
            "supercommutativity",
            "algebra:supercommutativity",
            &gen("mu"),
            &sc,
        ));
        Ok(rep)
    }

    /// `gμ = μ(g⊠g)` and `gι = ι` for an even invertible `f: V → V`.
    pub fn check_automorphism(&self, f: &Morph<S>) -> Result<bool> {
        let vw = self.word();
        if f.dom_word() != &vw || f.cod_word() != &vw {
            return Err(Error::NotAutomorphism("not an endomorphism of V".into()));
        }
        if f.parity() != Parity::Even || f.inverse(self.tol()).is_none() {
            return Err(Error::NotAutomorphism("not even and invertible".into()));
        }
        let a = f
            .compose(&self.mu)?
            .dist(&self.mu.compose(&self.cat.tensor(f, f))?);
        let b = f.compose(&self.iota)?.dist(&self.iota);
        Ok(a <= self.tol() && b <= self.tol())
    }

    /// `|G|⁻¹ Σ_g g`.
    pub fn average(&self) -> Result<Morph<S>> {
        let mut acc = self.cat.zero(&self.word(), &self.word());
        for g in &self.group.elements {
            acc = acc.add(g)?;
        }
        Ok(acc.scale(&(S::one() / self.order_scalar())))
    }

    pub fn even_unit_dim(&self) -> usize {
        self.cat
            .hom_basis_parity(&self.cat.unit_word(), &self.word(), false)
            .len()
    }

    /// The even ε with `ει = 1` and `ιε = |G|⁻¹Σ g`, and the dimension of
    /// the remaining freedom.
    pub fn derive_counit(&self) -> Result<(Morph<S>, usize)> {
        let dim = self.even_unit_dim();
        if dim != 1 {
            return Err(Error::NotHaploid(dim));
        }
        let (vw, uw) = (self.word(), self.cat.unit_word());
        let basis = self.cat.hom_basis_parity(&vw, &uw, false);
        let cols: Vec<Vec<S>> = basis
            .iter()
            .map(|b| Ok(flatten(&[b.compose(&self.iota)?, self.iota.compose(b)?])))
            .collect::<Result<_>>()?;
        let target = flatten(&[self.cat.identity(&uw), self.average()?]);
        let (c, nullity) = span_solve(&cols, &target, self.tol()).ok_or(Error::NoCounit)?;
        Ok((combine(&self.cat, &basis, &c, &vw, &uw), nullity))
    }

    /// The even ĩ solving both snake equations for the pairing `εμ`; also
    /// checks `μĩ = |G|ι`.
    pub fn derive_coev(&self) -> Result<(Morph<S>, usize)> {
        let eps = match &self.epsilon {
            Some(e) => e.clone(),
            None => self.derive_counit()?.0,
        };
        let (vw, uw) = (self.word(), self.cat.unit_word());
        let vv = Word::node(vw.clone(), vw.clone());
        let basis = self.cat.hom_basis_parity(&uw, &vv, false);
        let mut env = self.env()?;
        env.bind_gen("eps", o("V"), unit(), eps)?;
        let snakes = [
            formula(&FormulaId::new("snake_left"))?,
            formula(&FormulaId::new("snake_right"))?,
        ];
        let mut cols = Vec::new();
        for b in &basis {
            env.bind_gen("coev", unit(), t(o("V"), o("V")), b.clone())?;
            cols.push(flatten(&[env.eval(&snakes[0])?, env.eval(&snakes[1])?]));
        }
        let idv = self.cat.identity(&vw);
        let (c, nullity) = span_solve(&cols, &flatten(&[idv.clone(), idv]), self.tol())
            .ok_or(Error::PairingDegenerate)?;
        let coev = combine(&self.cat, &basis, &c, &uw, &vv);
        let found = self.scalar_of(&self.mu.compose(&coev)?);
        let expected = self.order_scalar();
        match found {
            Some(s) if (s.clone() - expected.clone()).modulus() <= self.tol() => {
                Ok((coev, nullity))
            }
            other => Err(Error::DimensionMismatch {
                expected: show(&expected),
                found: other.map_or_else(|| "not a multiple".into(), |s| show(&s)),
            }),
        }
    }

    /// `s` with `f = s·ι`, for `f: 1 → V`.
    pub fn scalar_of(&self, f: &Morph<S>) -> Option<S> {
        span_solve(
            &[flatten(std::slice::from_ref(&self.iota))],
            &flatten(std::slice::from_ref(f)),
            self.tol(),
        )
        .map(|(c, _)| c[0].clone())
    }

    /// Tr(g), the scalar of `μ(1⊠g)ĩ`.
    pub fn trace(&self, g: usize) -> Result<S> {
        let env = self.env()?;
        let f = env.eval(&formula(
            &FormulaId::new("trace_g").element("g", &element_name(g)),
        )?)?;
        self.scalar_of(&f).ok_or(Error::NoSolution(f64::NAN))
    }

    /// Every clause of the standing assumption on `(V, G)`, plus the three
    /// consequences used by the projector theorem.
    pub fn check_assumption(&self) -> Report {
        let mut rep = Report::new("assumption");
        let tol = self.tol();
        let n = self.order();
        let vw = self.word();
        rep.push(Check::flag("group_finite", "algebra:group", n > 0).detail(format!("|G| = {n}")));
        let mut worst = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                let d = self.group.elements[a]
                    .compose(&self.group.elements[b])
                    .map_or(f64::INFINITY, |p| {
                        p.dist(&self.group.elements[self.group.mul(a, b)])
                    });
                worst = worst.max(d);
            }
        }
        rep.push(Check::measure("group_table", "algebra:group", worst, tol));
        let autos: Vec<bool> = self
            .group
            .elements
            .iter()
            .map(|g| self.check_automorphism(g).unwrap_or(false))
            .collect();
        rep.push(Check::flag(
            "automorphisms",
            "algebra:automorphism",
            autos.iter().all(|&x| x),
        ));
        let pv = self.cat.parity_operator(&vw);
        let has_parity = self
            .group
            .parity
            .is_some_and(|p| self.group.elements[p].dist(&pv) <= tol);
        rep.push(Check::flag(
            "parity_in_group",
            "algebra:parity_involution",
            has_parity,
        ));
        let pv_trivial = pv.dist(&self.cat.identity(&vw)) <= tol;
        let mut even = Check::flag(
            "order_even",
            "algebra:group_order",
            n.is_multiple_of(2) || pv_trivial,
        );
        if n % 2 == 1 && pv_trivial {
            even = even.detail("odd order accepted: P_V is the identity");
            rep.note(format!(
                "|G| = {n} is odd; accepted because V is purely even"
            ));
        }
        rep.push(even);
        rep.push(Check::flag(
            "order_invertible",
            "algebra:group_order",
            n > 0,
        ));
        let hd = self.even_unit_dim();
        rep.push(Check::flag("haploid", "algebra:haploid", hd == 1).detail(format!("dim = {hd}")));

        let (Some(eps), Some(coev)) = (&self.epsilon, &self.coev) else {
            rep.push(
                Check::flag("counit_and_coev", "algebra:counit", false)
                    .detail("epsilon or coev missing"),
            );
            return rep;
        };
        rep.push(Check::flag(
            "counit_even",
            "algebra:counit",
            eps.parity() == Parity::Even,
        ));
        rep.push(Check::flag(
            "coev_even",
            "algebra:coev",
            coev.parity() == Parity::Even,
        ));
        let uw = self.cat.unit_word();
        let r = eps
            .compose(&self.iota)
            .map_or(f64::INFINITY, |x| x.dist(&self.cat.identity(&uw)));
        rep.push(Check::measure("eps_iota", "algebra:counit", r, tol));
        let r = match (self.iota.compose(eps), self.average()) {
            (Ok(x), Ok(avg)) => x.dist(&avg),
            _ => f64::INFINITY,
        };
        rep.push(Check::measure("iota_eps", "algebra:counit", r, tol));
        rep.push(Check::flag(
            "counit_unique",
            "algebra:counit",
            self.counit_nullity == 0,
        ));
        rep.push(Check::flag(
            "coev_unique",
            "algebra:coev",
            self.coev_nullity == 0,
        ));

        let env = match self.env() {
            Ok(e) => e,
            Err(e) => {
                rep.push(Check::error("environment", "algebra:bind", &e));
                return rep;
            }
        };
        let iv = id(o("V"));
        for name in ["snake_left", "snake_right"] {
            match formula(&FormulaId::new(name)) {
                Ok(f) => rep.push(self.measure(&env, name, &format!("catalog:{name}"), &f, &iv)),
                Err(e) => rep.push(Check::error(name, format!("catalog:{name}"), &e.into())),
            };
        }
        let r = self.mu.compose(coev).map_or(f64::INFINITY, |x| {
            x.dist(&self.iota.scale(&self.order_scalar()))
        });
        rep.push(Check::measure("mu_coev", "algebra:mu_coev", r, tol));

        for g in 0..n {
            let want = if g == self.group.identity {
                self.order_scalar()
            } else {
                S::zero()
            };
            let name = format!("trace[{}]", self.group.names[g]);
            match self.trace(g) {
                Ok(s) => rep.push(
                    Check::measure(name, "catalog:trace_g", (s.clone() - want).modulus(), tol)
                        .detail(format!("Tr = {}", show(&s))),
                ),
                Err(e) => rep.push(Check::error(name, "catalog:trace_g", &e)),
            };
        }
        if let Ok(f) = formula(&FormulaId::new("counit_pair")) {
            rep.push(self.measure(
                &env,
                "iota_recovery",
                "catalog:counit_pair",
                &f,
                &gen("iota"),
            ));
        }
        if let Ok(ids) = chain_identities("rigidlike", &FormulaId::new("rigidlike")) {
            for ci in ids {
                rep.push(self.measure(&env, "two_sided_coev", &ci.anchor(), &ci.lhs, &ci.rhs));
            }
        }
        rep
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::instances;
    use crate::scalar::{C64, QI};

    fn ph_algebra(scaled: (usize, usize)) -> SuperAlgebra<QI> {
        let cat = Arc::new(Category::<QI>::new(instances::ph()).unwrap());
        let v = ConcreteObject::new(vec![(0, 0), (2, 0)]);
        assert_eq!(cat.spec.simples[2], "X10");
        let mu = multiplication_by_labels(&cat, &v, |i, j| {
            QI::from_int(if (i, j) == scaled { 2 } else { 1 })
        })
        .unwrap();
        let iota = unit_inclusion(&cat, &v).unwrap();
        let g = diagonal(&cat, &v, &[QI::from_int(1), QI::from_int(-1)]);
        let group = close_group(&cat, &Word::leaf(v.clone()), vec![("g".into(), g)], 10).unwrap();
        SuperAlgebra::new(cat, v, mu, iota, group).unwrap()
    }

    fn ising_algebra(m: f64) -> SuperAlgebra<C64> {
        let cat = Arc::new(Category::<C64>::new(instances::ising()).unwrap());
        let v = ConcreteObject::new(vec![(0, 0), (1, 0)]);
        let mu = multiplication_by_labels(&cat, &v, |i, j| {
            C64::new(if i == 1 && j == 1 { m } else { 1.0 }, 0.0)
        })
        .unwrap();
        let iota = unit_inclusion(&cat, &v).unwrap();
        let p = cat.parity_operator(&Word::leaf(v.clone()));
        let group = close_group(&cat, &Word::leaf(v.clone()), vec![("P".into(), p)], 10).unwrap();
        SuperAlgebra::new(cat, v, mu, iota, group).unwrap()
    }

    #[test]
    fn ph_axioms_and_assumption() {
        let alg = ph_algebra((9, 9)).complete().unwrap();
        let r = alg.check_superalgebra().unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks.iter().all(|c| c.residual == 0.0));
        assert_eq!(alg.group.order(), 2);
        assert_eq!(alg.group.table, vec![vec![0, 1], vec![1, 0]]);
        let eps = alg.epsilon.as_ref().unwrap();
        assert_eq!(eps.m.data, vec![QI::from_int(1), QI::from_int(0)]);
        let a = alg.check_assumption();
        assert!(a.passed(), "{a}");
        assert_eq!(alg.trace(0).unwrap(), QI::from_int(2));
        assert_eq!(alg.trace(1).unwrap(), QI::from_int(0));
    }

    #[test]
    fn ph_coev_is_sum_of_squares() {
        let alg = ph_algebra((9, 9)).complete().unwrap();
        let c = alg.coev.as_ref().unwrap();
        let b = &c.cod;
        for (k, e) in b.elems.iter().enumerate() {
            let want = if e.l == e.r { 1 } else { 0 };
            assert_eq!(c.m.at(k, 0), &QI::from_int(want));
        }
    }

    #[test]
    fn broken_multiplication_fails_associativity() {
        let r = ph_algebra((0, 1)).check_superalgebra().unwrap();
        assert!(!r.get("associativity").unwrap().pass);
        assert!(!r.get("left_unit").unwrap().pass);
        // rescaling the square of the generator is a coboundary
        assert!(
            ph_algebra((1, 1))
                .check_superalgebra()
                .unwrap()
                .get("associativity")
                .unwrap()
                .pass
        );
    }

    #[test]
    fn automorphism_test() {
        let alg = ph_algebra((9, 9));
        let i = QI::from_c64(C64::new(0.0, 1.0));
        assert!(!alg
            .check_automorphism(&diagonal(&alg.cat, &alg.v, &[QI::from_int(1), i]))
            .unwrap());
        assert!(alg.check_automorphism(&alg.group.elements[1]).unwrap());
    }

    #[test]
    fn ising_passes_with_any_nonzero_m() {
        for m in [1.0, -2.5] {
            let alg = ising_algebra(m).complete().unwrap();
            assert!(alg.check_superalgebra().unwrap().passed());
            let a = alg.check_assumption();
            assert!(a.passed(), "{a}");
            assert!(alg.trace(1).unwrap().norm() < 1e-9);
        }
    }

    #[test]
    fn exterior_algebra_is_degenerate() {
        let alg = ising_algebra(0.0);
        assert!(alg.check_superalgebra().unwrap().passed());
        assert_eq!(alg.complete().unwrap_err(), Error::PairingDegenerate);
    }

    #[test]
    fn non_haploid() {
        let cat = Arc::new(Category::<QI>::new(instances::ph()).unwrap());
        let v = ConcreteObject::new(vec![(0, 0), (0, 0)]);
        let mu = cat.zero(
            &Word::node(Word::leaf(v.clone()), Word::leaf(v.clone())),
            &Word::leaf(v.clone()),
        );
        let iota = unit_inclusion(&cat, &v).unwrap();
        let group = close_group(&cat, &Word::leaf(v.clone()), vec![], 10).unwrap();
        let alg = SuperAlgebra::new(cat, v, mu, iota, group).unwrap();
        assert_eq!(alg.derive_counit().unwrap_err(), Error::NotHaploid(2));
    }
}
