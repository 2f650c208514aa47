//! Seeded generator of well-typed expressions over a declaration context.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::build::*;
use super::{Context, MorExpr, ObjectExpr};
use crate::scalar::{Coeff, Real};

pub struct RandomExprs {
    rng: ChaCha8Rng,
    atoms: Vec<ObjectExpr>,
    gens: Vec<(String, ObjectExpr, ObjectExpr)>,
}

impl RandomExprs {
    /// `atoms` are the object symbols words are built from; generators are
    /// taken from `ctx`.
    pub fn new(seed: u64, ctx: &Context, atoms: &[&str]) -> Self {
        let gens = ctx
            .decls
            .iter()
            .map(|(n, d)| (n.clone(), d.dom.clone(), d.cod.clone()))
            .collect();
        RandomExprs {
            rng: ChaCha8Rng::seed_from_u64(seed),
            atoms: atoms.iter().map(|a| o(a)).collect(),
            gens,
        }
    }

    /// A tensor word of at most `depth` levels; the unit appears rarely.
    pub fn object(&mut self, depth: usize) -> ObjectExpr {
        if depth == 0 || self.rng.random_bool(0.4) {
            if self.atoms.is_empty() || self.rng.random_bool(0.1) {
                return unit();
            }
            let k = self.rng.random_range(0..self.atoms.len());
            return self.atoms[k].clone();
        }
        t(self.object(depth - 1), self.object(depth - 1))
    }

    fn coeff(&mut self) -> Coeff {
        let pick = [
            (1, 1, 0),
            (-1, 1, 0),
            (2, 1, 0),
            (1, 2, 0),
            (0, 1, 1),
            (-3, 4, 0),
        ];
        let (p, q, im) = pick[self.rng.random_range(0..pick.len())];
        Coeff::new(Real::rat(p, q).expect("nonzero"), Real::int(im))
    }

    /// A single structural or generator step out of `dom`.
    fn step(&mut self, dom: &ObjectExpr) -> (MorExpr, ObjectExpr) {
        let mut options: Vec<(MorExpr, ObjectExpr)> = vec![(id(dom.clone()), dom.clone())];
        options.push((lunit_inv(dom.clone()), t(unit(), dom.clone())));
        options.push((runit_inv(dom.clone()), t(dom.clone(), unit())));
        if let ObjectExpr::Tensor(a, b) = dom {
            let (a, b) = (a.as_ref().clone(), b.as_ref().clone());
            options.push((braid(a.clone(), b.clone()), t(b.clone(), a.clone())));
            options.push((braid_inv(b.clone(), a.clone()), t(b.clone(), a.clone())));
            if a == ObjectExpr::Unit {
                options.push((lunit(b.clone()), b.clone()));
            }
            if b == ObjectExpr::Unit {
                options.push((runit(a.clone()), a.clone()));
            }
            if let ObjectExpr::Tensor(b1, b2) = &b {
                let (b1, b2) = (b1.as_ref().clone(), b2.as_ref().clone());
                options.push((
                    assoc(a.clone(), b1.clone(), b2.clone()),
                    t(t(a.clone(), b1), b2),
                ));
            }
            if let ObjectExpr::Tensor(a1, a2) = &a {
                let (a1, a2) = (a1.as_ref().clone(), a2.as_ref().clone());
                options.push((
                    assoc_inv(a1.clone(), a2.clone(), b.clone()),
                    t(a1, t(a2, b.clone())),
                ));
            }
        }
        for (n, d, c) in &self.gens {
            if d == dom {
                options.push((gen(n), c.clone()));
                options.push((gen(n), c.clone()));
            }
        }
        let k = self.rng.random_range(0..options.len());
        options.swap_remove(k)
    }

    /// A morphism out of `dom` with nesting at most `depth`, and its codomain.
    pub fn morphism_from(&mut self, dom: &ObjectExpr, depth: usize) -> (MorExpr, ObjectExpr) {
        if depth == 0 {
            return self.step(dom);
        }
        match self.rng.random_range(0..10) {
            0..=2 => self.step(dom),
            3..=5 => {
                let (f, mid) = self.morphism_from(dom, depth - 1);
                let (g, cod) = self.morphism_from(&mid, depth - 1);
                (comp(g, f), cod)
            }
            6 | 7 => match dom {
                ObjectExpr::Tensor(a, b) => {
                    let (f, fa) = self.morphism_from(a, depth - 1);
                    let (g, gb) = self.morphism_from(b, depth - 1);
                    (ten(f, g), t(fa, gb))
                }
                _ => self.step(dom),
            },
            8 => {
                let c = self.coeff();
                let (f, cod) = self.morphism_from(dom, depth - 1);
                (scale(c, f), cod)
            }
            _ => {
                // terms sharing a type: the morphism, a rescaling, and a
                // padding by identities
                let (f, cod) = self.morphism_from(dom, depth - 1);
                let mut terms = vec![f.clone()];
                if self.rng.random_bool(0.5) {
                    let c = self.coeff();
                    terms.push(scale(c, f.clone()));
                }
                if self.rng.random_bool(0.5) {
                    terms.push(comp(id(cod.clone()), f));
                }
                (sum(terms), cod)
            }
        }
    }

    /// A morphism out of a random object.
    pub fn morphism(&mut self, depth: usize) -> MorExpr {
        let dom = self.object(3);
        self.morphism_from(&dom, depth).0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::{typecheck, Parity};

    fn ctx() -> Context {
        let mut c = Context::new();
        c.declare("mu", t(o("V"), o("V")), o("V"), Parity::Even);
        c.declare("iota", unit(), o("V"), Parity::Even);
        c.declare("odd", o("W"), o("W"), Parity::Odd);
        c
    }

    #[test]
    fn generated_expressions_typecheck() {
        let c = ctx();
        let mut g = RandomExprs::new(7, &c, &["V", "W"]);
        for _ in 0..300 {
            let dom = g.object(3);
            let (e, cod) = g.morphism_from(&dom, 6);
            assert_eq!(typecheck(&e, &c).unwrap(), (dom, cod), "{e}");
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let c = ctx();
        let a: Vec<MorExpr> = {
            let mut g = RandomExprs::new(3, &c, &["V"]);
            (0..20).map(|_| g.morphism(5)).collect()
        };
        let b: Vec<MorExpr> = {
            let mut g = RandomExprs::new(3, &c, &["V"]);
            (0..20).map(|_| g.morphism(5)).collect()
        };
        assert_eq!(a, b);
    }
}
