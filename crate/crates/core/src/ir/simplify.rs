//! Directed rewrites from the coherence axioms.
//!
//! Each accepted rewrite lowers the pair (braid count, node count)
//! lexicographically, so the fixpoint loop terminates. The rules:
//! - drop identity factors of composites, `id ⊠ id → id`;
//! - cancel adjacent inverse pairs of structural nodes;
//! - interchange `(f⊠g)(f'⊠g')` into `(ff')⊠(gg')` (with the super sign)
//!   only when the result gets smaller;
//! - naturality of unitors: `l(1⊠f) → f l`, `r(f⊠1) → f r`;
//! - triangle: `(r⊠1)A_{a,1,b} → 1⊠l` and `(1⊠l)A⁻¹_{a,1,b} → r⊠1`;
//! - unit braids: `R_{1,X} → r⁻¹l`, `R_{X,1} → l⁻¹r`;
//! - scalar and sum normalization.

use super::build::*;
use super::{parity_unchecked, typecheck, Context, MorExpr, ObjectExpr, Parity, TypeError};
use crate::scalar::Coeff;

fn measure(e: &MorExpr) -> (usize, usize) {
    (e.braid_count(), e.node_count())
}

pub fn simplify(e: &MorExpr, ctx: &Context) -> Result<MorExpr, TypeError> {
    typecheck(e, ctx)?;
    let mut cur = e.clone();
    loop {
        let next = pass(&cur, ctx);
        if measure(&next) < measure(&cur) {
            cur = next;
        } else {
            return Ok(cur);
        }
    }
}

/// Composite factors in application order (first applied first).
fn factors(e: &MorExpr, out: &mut Vec<MorExpr>) {
    match e {
        MorExpr::Compose(f, g) => {
            factors(g, out);
            factors(f, out);
        }
        other => out.push(other.clone()),
    }
}

fn is_identity(e: &MorExpr) -> bool {
    match e {
        MorExpr::Identity(_) => true,
        MorExpr::Tensor(f, g) => is_identity(f) && is_identity(g),
        _ => false,
    }
}

fn inverse_pair(first: &MorExpr, second: &MorExpr) -> bool {
    use MorExpr::*;
    match (first, second) {
        (Assoc(a, b, c, x), Assoc(a2, b2, c2, y)) => a == a2 && b == b2 && c == c2 && x != y,
        (LUnit(a, x), LUnit(a2, y)) | (RUnit(a, x), RUnit(a2, y)) => a == a2 && x != y,
        (Braid(a, b, x), Braid(a2, b2, y)) => a == a2 && b == b2 && x != y,
        _ => false,
    }
}

/// Rewrites on two adjacent factors; `None` if no rule applies.
fn pair_rule(first: &MorExpr, second: &MorExpr, ctx: &Context) -> Option<Vec<MorExpr>> {
    use MorExpr::*;
    if inverse_pair(first, second) {
        return Some(vec![]);
    }
    match (first, second) {
        // l_W ∘ (1_𝟏 ⊠ f) = f ∘ l_{dom f}
        (Tensor(u, f), LUnit(_, false)) if matches!(**u, Identity(ObjectExpr::Unit)) => {
            let (d, _) = typecheck(f, ctx).ok()?;
            return Some(vec![lunit(d), (**f).clone()]);
        }
        (Tensor(f, u), RUnit(_, false)) if matches!(**u, Identity(ObjectExpr::Unit)) => {
            let (d, _) = typecheck(f, ctx).ok()?;
            return Some(vec![runit(d), (**f).clone()]);
        }
        (Assoc(a, ObjectExpr::Unit, b, false), Tensor(r, i))
            if matches!(&**r, RUnit(a2, false) if a2 == a)
                && matches!(&**i, Identity(b2) if b2 == b) =>
        {
            return Some(vec![ten(id(a.clone()), lunit(b.clone()))]);
        }
        (Assoc(a, ObjectExpr::Unit, b, true), Tensor(i, l))
            if matches!(&**i, Identity(a2) if a2 == a)
                && matches!(&**l, LUnit(b2, false) if b2 == b) =>
        {
            return Some(vec![ten(runit(a.clone()), id(b.clone()))]);
        }
        (Tensor(f1, g1), Tensor(f2, g2)) => {
            // (f2⊠g2)(f1⊠g1) = (−1)^{|g2||f1|} (f2f1)⊠(g2g1)
            let sign = match (parity_unchecked(g2, ctx), parity_unchecked(f1, ctx)) {
                (Parity::Odd, Parity::Odd) => -1,
                (Parity::Even, _) | (_, Parity::Even) => 1,
                _ => return None,
            };
            let merged = ten(
                comp((**f2).clone(), (**f1).clone()),
                comp((**g2).clone(), (**g1).clone()),
            );
            let merged = if sign < 0 {
                scale(Coeff::int(-1), merged)
            } else {
                merged
            };
            let merged = pass(&merged, ctx);
            let before = comp(second.clone(), first.clone());
            if measure(&merged) < measure(&before) {
                return Some(vec![merged]);
            }
        }
        _ => {}
    }
    None
}

fn unit_braid(e: &MorExpr) -> Option<MorExpr> {
    match e {
        MorExpr::Braid(ObjectExpr::Unit, x, false) | MorExpr::Braid(x, ObjectExpr::Unit, true) => {
            Some(comp(runit_inv(x.clone()), lunit(x.clone())))
        }
        MorExpr::Braid(x, ObjectExpr::Unit, false) | MorExpr::Braid(ObjectExpr::Unit, x, true) => {
            Some(comp(lunit_inv(x.clone()), runit(x.clone())))
        }
        _ => None,
    }
}

fn pass(e: &MorExpr, ctx: &Context) -> MorExpr {
    use MorExpr::*;
    if let Some(r) = unit_braid(e) {
        return r;
    }
    match e {
        Compose(..) => {
            let mut fs = Vec::new();
            factors(e, &mut fs);
            let dom = typecheck(e, ctx).map(|(d, _)| d).ok();
            let mut fs: Vec<MorExpr> = fs
                .iter()
                .map(|f| pass(f, ctx))
                .filter(|f| !is_identity(f))
                .collect();
            let mut i = 0;
            while i + 1 < fs.len() {
                if let Some(rep) = pair_rule(&fs[i], &fs[i + 1], ctx) {
                    fs.splice(i..i + 2, rep);
                    fs.retain(|f| !is_identity(f));
                    i = i.saturating_sub(1);
                } else {
                    i += 1;
                }
            }
            match fs.len() {
                0 => Identity(dom.unwrap_or(ObjectExpr::Unit)),
                _ => chain(fs),
            }
        }
        Tensor(f, g) => {
            let (f, g) = (pass(f, ctx), pass(g, ctx));
            match (&f, &g) {
                (Identity(a), Identity(b)) => Identity(ObjectExpr::tensor(a.clone(), b.clone())),
                _ => ten(f, g),
            }
        }
        Scale(c, f) => {
            let f = pass(f, ctx);
            if c.is_one() {
                return f;
            }
            match f {
                Scale(d, inner) => scale(c.mul(d), *inner),
                f => scale(*c, f),
            }
        }
        Sum(ts) => {
            let mut flat = Vec::new();
            for t in ts {
                match pass(t, ctx) {
                    Sum(inner) => flat.extend(inner),
                    t => flat.push(t),
                }
            }
            if flat.len() == 1 {
                flat.pop().unwrap()
            } else {
                Sum(flat)
            }
        }
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ir::Parity;

    fn ctx() -> Context {
        let mut c = Context::new();
        c.declare("f", o("X"), o("Y"), Parity::Odd)
            .declare("h", o("Y"), o("Z"), Parity::Even);
        c
    }

    #[test]
    fn inverse_pair_cancels() {
        let (a, b, c) = (o("a"), o("b"), o("c"));
        let e = comp(
            assoc(a.clone(), b.clone(), c.clone()),
            assoc_inv(a.clone(), b.clone(), c.clone()),
        );
        assert_eq!(simplify(&e, &ctx()).unwrap(), id(t(t(a, b), c)));
    }

    #[test]
    fn unitor_naturality() {
        let e = comp(lunit(o("Y")), ten(id(unit()), gen("f")));
        let s = simplify(&e, &ctx()).unwrap();
        assert_eq!(s, comp(gen("f"), lunit(o("X"))));
        assert!(s.node_count() < e.node_count());
    }

    #[test]
    fn unit_braid_becomes_unitors() {
        let e = braid(unit(), o("X"));
        let s = simplify(&e, &ctx()).unwrap();
        assert_eq!(s.braid_count(), 0);
        assert_eq!(typecheck(&s, &ctx()), typecheck(&e, &ctx()));
    }

    #[test]
    fn interchange_merges_in_application_order() {
        let mut c = ctx();
        c.declare("k", o("P"), o("Q"), Parity::Odd);
        // (h⊠1)(f⊠k) = (hf)⊠k, with no sign since h is even
        let e = comp(ten(gen("h"), id(o("Q"))), ten(gen("f"), gen("k")));
        let s = simplify(&e, &c).unwrap();
        assert_eq!(s, ten(comp(gen("h"), gen("f")), gen("k")));
        // (1⊠k)(f⊠1) picks up the sign of passing k over f
        let e = comp(ten(id(o("Y")), gen("k")), ten(gen("f"), id(o("P"))));
        let merged = scale(Coeff::int(-1), ten(gen("f"), gen("k")));
        assert_eq!(
            typecheck(&simplify(&e, &c).unwrap(), &c),
            typecheck(&merged, &c)
        );
    }

    #[test]
    fn triangle() {
        let (a, b) = (o("a"), o("b"));
        let e = comp(
            ten(runit(a.clone()), id(b.clone())),
            assoc(a.clone(), unit(), b.clone()),
        );
        assert_eq!(simplify(&e, &ctx()).unwrap(), ten(id(a), lunit(b)));
    }

    #[test]
    fn interchange_keeps_super_sign() {
        let mut c = ctx();
        c.declare("k", o("P"), o("Q"), Parity::Odd);
        // (1⊠k)(f⊠1) -> -(f⊠k) is not smaller, so the composite stays.
        let e = comp(ten(id(o("Y")), gen("k")), ten(gen("f"), id(o("P"))));
        let s = simplify(&e, &c).unwrap();
        assert_eq!(typecheck(&s, &c), typecheck(&e, &c));
    }
}
