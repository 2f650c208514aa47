//! Matrices of morphisms between fusion-tree bases, and the structural maps.
//!
//! Associators, unitors and braidings act on the top vertex of their operand
//! words only; subtrees are carried along unchanged. Pentagon and hexagon
//! therefore test the F and R tables rather than hold by construction.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::spec::CategorySpec;
use super::word::{Basis, ConcreteObject, Word};
use crate::error::{Error, Result};
use crate::ir::Parity;
use crate::linalg::{inverse, Mat};
use crate::scalar::Scalar;

/// A morphism: matrix with rows indexed by the codomain basis.
#[derive(Clone, Debug)]
pub struct Morph<S> {
    pub dom: Arc<Basis>,
    pub cod: Arc<Basis>,
    pub m: Mat<S>,
}

impl<S: Scalar> Morph<S> {
    pub fn dom_word(&self) -> &Word {
        &self.dom.word
    }

    pub fn cod_word(&self) -> &Word {
        &self.cod.word
    }

    pub fn parity(&self) -> Parity {
        let (mut even, mut odd) = (false, false);
        for i in 0..self.m.rows {
            for j in 0..self.m.cols {
                if self.m.at(i, j).is_zero() {
                    continue;
                }
                if self.cod.elems[i].grade == self.dom.elems[j].grade {
                    even = true;
                } else {
                    odd = true;
                }
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            _ => Parity::Mixed,
        }
    }

    fn part(&self, keep_odd: bool) -> Morph<S> {
        let m = Mat::from_fn(self.m.rows, self.m.cols, |i, j| {
            let odd = self.cod.elems[i].grade != self.dom.elems[j].grade;
            if odd == keep_odd {
                self.m.at(i, j).clone()
            } else {
                S::zero()
            }
        });
        Morph {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            m,
        }
    }

    pub fn even_part(&self) -> Morph<S> {
        self.part(false)
    }

    pub fn odd_part(&self) -> Morph<S> {
        self.part(true)
    }

    /// Entries only between trees with equal total label.
    pub fn is_schur(&self) -> bool {
        (0..self.m.rows).all(|i| {
            (0..self.m.cols).all(|j| {
                self.m.at(i, j).is_zero() || self.cod.elems[i].total == self.dom.elems[j].total
            })
        })
    }

    pub fn compose(&self, before: &Morph<S>) -> Result<Morph<S>> {
        if before.cod.word != self.dom.word {
            return Err(Error::ShapeMismatch(format!(
                "compose {} after {}",
                self.dom.word, before.cod.word
            )));
        }
        Ok(Morph {
            dom: before.dom.clone(),
            cod: self.cod.clone(),
            m: self.m.mul(&before.m),
        })
    }

    fn same_shape(&self, o: &Morph<S>) -> Result<()> {
        if self.dom.word != o.dom.word || self.cod.word != o.cod.word {
            return Err(Error::ShapeMismatch(format!(
                "{} -> {} vs {} -> {}",
                self.dom.word, self.cod.word, o.dom.word, o.cod.word
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &Morph<S>) -> Result<Morph<S>> {
        self.same_shape(o)?;
        Ok(Morph {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            m: self.m.add(&o.m),
        })
    }

    pub fn sub(&self, o: &Morph<S>) -> Result<Morph<S>> {
        self.same_shape(o)?;
        Ok(Morph {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            m: self.m.sub(&o.m),
        })
    }

    pub fn scale(&self, s: &S) -> Morph<S> {
        Morph {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            m: self.m.scale(s),
        }
    }

    /// Entrywise distance; infinite when the shapes differ.
    pub fn dist(&self, o: &Morph<S>) -> f64 {
        if self.same_shape(o).is_err() {
            return f64::INFINITY;
        }
        self.m.dist(&o.m)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.m.is_negligible(tol)
    }

    pub fn inverse(&self, tol: f64) -> Option<Morph<S>> {
        let inv = inverse(&self.m, tol)?;
        Some(Morph {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            m: inv,
        })
    }

    /// The same matrix between different words with identical bases.
    pub fn rebase(&self, dom: Arc<Basis>, cod: Arc<Basis>) -> Morph<S> {
        assert_eq!(
            (dom.len(), cod.len()),
            (self.dom.len(), self.cod.len()),
            "rebase shape"
        );
        Morph {
            dom,
            cod,
            m: self.m.clone(),
        }
    }
}

struct FBlock<S> {
    es: Vec<usize>,
    fs: Vec<usize>,
    /// Rows e, columns f.
    f: Mat<S>,
    /// Rows f, columns e.
    finv: Mat<S>,
}

/// A category instance specialized to a scalar field.
pub struct Category<S: Scalar> {
    pub spec: CategorySpec,
    pub tol: f64,
    fblocks: HashMap<[usize; 4], FBlock<S>>,
    r: HashMap<[usize; 3], (S, S)>,
    bases: Mutex<HashMap<Word, Arc<Basis>>>,
}

impl<S: Scalar> std::fmt::Debug for Category<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Category({})", self.spec.name)
    }
}

impl<S: Scalar> Category<S> {
    pub fn new(spec: CategorySpec) -> Result<Self> {
        spec.check_tables()?;
        if S::EXACT && !spec.is_rational() {
            return Err(Error::Format(format!(
                "instance {} has irrational data; exact mode is unavailable",
                spec.name
            )));
        }
        let tol = if S::EXACT {
            0.0
        } else {
            spec.mode.tol().max(1e-15)
        };
        let n = spec.rank();
        let mut fblocks = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let es: Vec<usize> = spec
                            .fuse(a, b)
                            .into_iter()
                            .filter(|&e| spec.admissible(e, c, d))
                            .collect();
                        let fs: Vec<usize> = spec
                            .fuse(b, c)
                            .into_iter()
                            .filter(|&f| spec.admissible(a, f, d))
                            .collect();
                        if es.is_empty() && fs.is_empty() {
                            continue;
                        }
                        if es.len() != fs.len() {
                            return Err(Error::Format(format!(
                                "F block ({a},{b},{c},{d}) is not square"
                            )));
                        }
                        let f = Mat::from_fn(es.len(), fs.len(), |i, j| {
                            S::from_coeff(&spec.f[&[a, b, c, d, es[i], fs[j]]])
                        });
                        let finv = inverse(&f, tol).ok_or_else(|| {
                            Error::Format(format!("F block ({a},{b},{c},{d}) is singular"))
                        })?;
                        fblocks.insert([a, b, c, d], FBlock { es, fs, f, finv });
                    }
                }
            }
        }
        let mut r = HashMap::new();
        for (k, v) in &spec.r {
            let x = S::from_coeff(v);
            if x.is_zero() {
                return Err(Error::Format(format!("R symbol {k:?} vanishes")));
            }
            r.insert(*k, (x.clone(), S::one() / x));
        }
        Ok(Category {
            spec,
            tol,
            fblocks,
            r,
            bases: Mutex::new(HashMap::new()),
        })
    }

    pub fn unit_word(&self) -> Word {
        Word::Leaf(ConcreteObject::simple(self.spec.unit))
    }

    pub fn basis(&self, w: &Word) -> Arc<Basis> {
        if let Some(b) = self.bases.lock().expect("basis cache").get(w) {
            return b.clone();
        }
        let b = match w {
            Word::Leaf(o) => Arc::new(Basis::leaf(o, &self.spec.parity)),
            Word::Node(x, y) => {
                let (bx, by) = (self.basis(x), self.basis(y));
                Arc::new(Basis::node(w.clone(), bx, by, |a, b| self.spec.fuse(a, b)))
            }
        };
        self.bases
            .lock()
            .expect("basis cache")
            .entry(w.clone())
            .or_insert(b)
            .clone()
    }

    pub fn zero(&self, dom: &Word, cod: &Word) -> Morph<S> {
        let (d, c) = (self.basis(dom), self.basis(cod));
        let m = Mat::zeros(c.len(), d.len());
        Morph { dom: d, cod: c, m }
    }

    pub fn identity(&self, w: &Word) -> Morph<S> {
        let b = self.basis(w);
        Morph {
            dom: b.clone(),
            cod: b.clone(),
            m: Mat::identity(b.len()),
        }
    }

    pub fn from_matrix(&self, dom: &Word, cod: &Word, m: Mat<S>) -> Result<Morph<S>> {
        let (d, c) = (self.basis(dom), self.basis(cod));
        if (m.rows, m.cols) != (c.len(), d.len()) {
            return Err(Error::ShapeMismatch(format!(
                "matrix is {}x{}, expected {}x{} for {} -> {}",
                m.rows,
                m.cols,
                c.len(),
                d.len(),
                dom,
                cod
            )));
        }
        Ok(Morph { dom: d, cod: c, m })
    }

    /// Diagonal ±1 by parity of each tree.
    pub fn parity_operator(&self, w: &Word) -> Morph<S> {
        let b = self.basis(w);
        let m = Mat::from_fn(b.len(), b.len(), |i, j| {
            if i != j {
                S::zero()
            } else if b.elems[i].grade == 1 {
                -S::one()
            } else {
                S::one()
            }
        });
        Morph {
            dom: b.clone(),
            cod: b,
            m,
        }
    }

    /// `f ⊠ g` with the Koszul sign `(−1)^{|g||x|}` on `x ⊗ y`.
    pub fn tensor(&self, f: &Morph<S>, g: &Morph<S>) -> Morph<S> {
        let dom = self.basis(&Word::node(f.dom.word.clone(), g.dom.word.clone()));
        let cod = self.basis(&Word::node(f.cod.word.clone(), g.cod.word.clone()));
        let cols = |h: &Morph<S>| -> Vec<Vec<(usize, S)>> {
            (0..h.m.cols)
                .map(|j| {
                    (0..h.m.rows)
                        .filter(|&i| !h.m.at(i, j).is_zero())
                        .map(|i| (i, h.m.at(i, j).clone()))
                        .collect()
                })
                .collect()
        };
        let (fc, gc) = (cols(f), cols(g));
        let mut m = Mat::zeros(cod.len(), dom.len());
        for (k, e) in dom.elems.iter().enumerate() {
            let gx = f.dom.elems[e.l].grade;
            let gy = g.dom.elems[e.r].grade;
            for (x2, fv) in &fc[e.l] {
                for (y2, gv) in &gc[e.r] {
                    let Some(idx) = cod.find(*x2, *y2, e.total) else {
                        continue;
                    };
                    let v = fv.clone() * gv.clone();
                    let odd = gx & (gy ^ g.cod.elems[*y2].grade) == 1;
                    m.add_at(idx, k, if odd { -v } else { v });
                }
            }
        }
        Morph { dom, cod, m }
    }

    /// `A_{X,Y,Z}: X⊠(Y⊠Z) → (X⊠Y)⊠Z`, or its inverse.
    pub fn assoc(&self, x: &Word, y: &Word, z: &Word, inv: bool) -> Morph<S> {
        let right = self.basis(&Word::node(x.clone(), Word::node(y.clone(), z.clone())));
        let left = self.basis(&Word::node(Word::node(x.clone(), y.clone()), z.clone()));
        let (bx, by, bz) = (self.basis(x), self.basis(y), self.basis(z));
        let (xy, yz) = (
            left.left.clone().expect("node"),
            right.right.clone().expect("node"),
        );
        let mut m = if inv {
            Mat::zeros(right.len(), left.len())
        } else {
            Mat::zeros(left.len(), right.len())
        };
        if !inv {
            for (k, el) in right.elems.iter().enumerate() {
                let t = yz.elems[el.r];
                let (ix, iy, iz) = (el.l, t.l, t.r);
                let (a, b, c, d) = (
                    bx.elems[ix].total,
                    by.elems[iy].total,
                    bz.elems[iz].total,
                    el.total,
                );
                let blk = &self.fblocks[&[a, b, c, d]];
                let fi = blk
                    .fs
                    .iter()
                    .position(|&f| f == t.total)
                    .expect("admissible f");
                for (ei, &e) in blk.es.iter().enumerate() {
                    let v = blk.finv.at(fi, ei);
                    if v.is_zero() {
                        continue;
                    }
                    let ixy = xy.find(ix, iy, e).expect("admissible e");
                    let row = left.find(ixy, iz, d).expect("admissible d");
                    m.set(row, k, v.clone());
                }
            }
        } else {
            for (k, el) in left.elems.iter().enumerate() {
                let t = xy.elems[el.l];
                let (ix, iy, iz) = (t.l, t.r, el.r);
                let (a, b, c, d) = (
                    bx.elems[ix].total,
                    by.elems[iy].total,
                    bz.elems[iz].total,
                    el.total,
                );
                let blk = &self.fblocks[&[a, b, c, d]];
                let ei = blk
                    .es
                    .iter()
                    .position(|&e| e == t.total)
                    .expect("admissible e");
                for (fi, &f) in blk.fs.iter().enumerate() {
                    let v = blk.f.at(ei, fi);
                    if v.is_zero() {
                        continue;
                    }
                    let iyz = yz.find(iy, iz, f).expect("admissible f");
                    let row = right.find(ix, iyz, d).expect("admissible d");
                    m.set(row, k, v.clone());
                }
            }
        }
        let (dom, cod) = if inv { (left, right) } else { (right, left) };
        Morph { dom, cod, m }
    }

    fn unitor(&self, x: &Word, inv: bool, left_side: bool) -> Morph<S> {
        let u = self.unit_word();
        let big = if left_side {
            Word::node(u, x.clone())
        } else {
            Word::node(x.clone(), u)
        };
        let (bb, bx) = (self.basis(&big), self.basis(x));
        let mut m = Mat::zeros(bx.len(), bb.len());
        for (k, e) in bb.elems.iter().enumerate() {
            let i = if left_side { e.r } else { e.l };
            m.set(i, k, S::one());
        }
        if inv {
            Morph {
                dom: bx,
                cod: bb,
                m: m.transpose(),
            }
        } else {
            Morph {
                dom: bb,
                cod: bx,
                m,
            }
        }
    }

    /// `l_X: 1⊠X → X`.
    pub fn lunit(&self, x: &Word, inv: bool) -> Morph<S> {
        self.unitor(x, inv, true)
    }

    /// `r_X: X⊠1 → X`.
    pub fn runit(&self, x: &Word, inv: bool) -> Morph<S> {
        self.unitor(x, inv, false)
    }

    /// `R_{X,Y}: X⊠Y → Y⊠X`; with `inv`, `R_{X,Y}⁻¹: Y⊠X → X⊠Y`. The super sign
    /// is `(−1)^{|x||y|}` on the parities of the two subtrees.
    pub fn braid(&self, x: &Word, y: &Word, inv: bool) -> Morph<S> {
        let xy = self.basis(&Word::node(x.clone(), y.clone()));
        let yx = self.basis(&Word::node(y.clone(), x.clone()));
        let (bx, by) = (self.basis(x), self.basis(y));
        let mut m = Mat::zeros(yx.len(), xy.len());
        for (k, e) in xy.elems.iter().enumerate() {
            let (a, b) = (bx.elems[e.l].total, by.elems[e.r].total);
            let (rv, rinv) = &self.r[&[a, b, e.total]];
            let mut v = if inv { rinv.clone() } else { rv.clone() };
            if bx.elems[e.l].grade & by.elems[e.r].grade == 1 {
                v = -v;
            }
            let row = yx.find(e.r, e.l, e.total).expect("braid target");
            m.set(row, k, v);
        }
        if inv {
            Morph {
                dom: yx,
                cod: xy,
                m: m.transpose(),
            }
        } else {
            Morph {
                dom: xy,
                cod: yx,
                m,
            }
        }
    }

    /// Elementary matrices spanning all morphisms `x → y`.
    pub fn hom_basis(&self, x: &Word, y: &Word) -> Vec<Morph<S>> {
        let (bx, by) = (self.basis(x), self.basis(y));
        let mut out = Vec::new();
        for (j, ej) in bx.elems.iter().enumerate() {
            for (i, ei) in by.elems.iter().enumerate() {
                if ei.total == ej.total {
                    let mut m = Mat::zeros(by.len(), bx.len());
                    m.set(i, j, S::one());
                    out.push(Morph {
                        dom: bx.clone(),
                        cod: by.clone(),
                        m,
                    });
                }
            }
        }
        out
    }

    /// Hom basis restricted to one parity.
    pub fn hom_basis_parity(&self, x: &Word, y: &Word, odd: bool) -> Vec<Morph<S>> {
        self.hom_basis(x, y)
            .into_iter()
            .filter(|f| (f.parity() == Parity::Odd) == odd)
            .collect()
    }

    /// The identity between a word and its flattened leaf.
    pub fn flatten(&self, w: &Word) -> (ConcreteObject, Morph<S>) {
        let b = self.basis(w);
        let o = b.flattened(&self.spec.parity);
        let leaf = self.basis(&Word::Leaf(o.clone()));
        let n = o.len();
        (
            o,
            Morph {
                dom: b,
                cod: leaf,
                m: Mat::identity(n),
            },
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::instances;
    use crate::scalar::{C64, QI};

    #[test]
    fn basis_sizes() {
        let ising = Category::<C64>::new(instances::ising()).unwrap();
        let s = ising.spec.label("sigma").unwrap();
        let w = Word::node(
            Word::leaf(ConcreteObject::simple(s)),
            Word::leaf(ConcreteObject::simple(s)),
        );
        let b = ising.basis(&w);
        assert_eq!(b.len(), 2);
        assert_eq!(
            b.elems
                .iter()
                .filter(|e| e.total == ising.spec.unit)
                .count(),
            1
        );
        let ph = Category::<QI>::new(instances::ph()).unwrap();
        let (x01, x10, x11) = (
            ph.spec.label("X01").unwrap(),
            ph.spec.label("X10").unwrap(),
            ph.spec.label("X11").unwrap(),
        );
        let w = Word::node(
            Word::leaf(ConcreteObject::simple(x01)),
            Word::leaf(ConcreteObject::simple(x10)),
        );
        let b = ph.basis(&w);
        assert_eq!(b.len(), 1);
        assert_eq!(b.elems[0].total, x11);
    }

    #[test]
    fn psi_braids_with_itself_to_plus_one() {
        let ising = Category::<C64>::new(instances::ising()).unwrap();
        let psi = Word::leaf(ConcreteObject::simple(ising.spec.label("psi").unwrap()));
        let r = ising.braid(&psi, &psi, false);
        assert!((r.m.at(0, 0) - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn unit_braid_is_identity_matrix() {
        let ph = Category::<QI>::new(instances::ph()).unwrap();
        let x = Word::leaf(ConcreteObject::new(vec![(1, 0), (2, 1)]));
        let r = ph.braid(&ph.unit_word(), &x, false);
        assert_eq!(r.m, Mat::identity(2));
    }

    #[test]
    fn hom_counts() {
        let ising = Category::<C64>::new(instances::ising()).unwrap();
        let (one, psi, s) = (
            0,
            ising.spec.label("psi").unwrap(),
            ising.spec.label("sigma").unwrap(),
        );
        let v = Word::leaf(ConcreteObject::new(vec![(one, 0), (psi, 0)]));
        let homs = ising.hom_basis(&ising.unit_word(), &v);
        assert_eq!(homs.len(), 1);
        assert_eq!(homs[0].parity(), Parity::Even);
        let ss = Word::leaf(ConcreteObject::new(vec![(s, 0), (s, 0)]));
        assert_eq!(
            ising
                .hom_basis(&Word::leaf(ConcreteObject::simple(s)), &ss)
                .len(),
            2
        );
        let ph = Category::<QI>::new(instances::ph()).unwrap();
        let a = Word::leaf(ConcreteObject::simple(ph.spec.label("X01").unwrap()));
        let b = Word::leaf(ConcreteObject::simple(ph.spec.label("X10").unwrap()));
        assert!(ph.hom_basis(&a, &b).is_empty());
    }

    #[test]
    fn assoc_round_trip() {
        let ising = Category::<C64>::new(instances::ising()).unwrap();
        let s = Word::leaf(ConcreteObject::simple(ising.spec.label("sigma").unwrap()));
        let a = ising.assoc(&s, &s, &s, false);
        let ai = ising.assoc(&s, &s, &s, true);
        let id = ising.identity(a.dom_word());
        assert!(ai.compose(&a).unwrap().dist(&id) < 1e-12);
    }
}
