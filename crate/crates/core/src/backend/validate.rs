//! Coherence checks on category data, evaluated through the IR.

use std::sync::Arc;

use super::category::Category;
use super::eval::Environment;
use super::spec::{CategorySpec, ScalarMode};
use super::word::{ConcreteObject, Word};
use crate::error::Result;
use crate::ir::build::*;
use crate::ir::MorExpr;
use crate::report::{Check, Report, Worst};
use crate::scalar::{Scalar, C64, QI};

const NAMES: [&str; 4] = ["a", "b", "c", "d"];

fn env_for<S: Scalar>(cat: &Arc<Category<S>>, labels: &[usize]) -> Environment<S> {
    let mut env = Environment::new(cat.clone());
    for (n, &l) in NAMES.iter().zip(labels) {
        env.bind_object(n, Word::leaf(ConcreteObject::simple(l)));
    }
    env
}

fn tuple(spec: &CategorySpec, labels: &[usize]) -> String {
    let names: Vec<&str> = labels.iter().map(|&l| spec.simples[l].as_str()).collect();
    format!("({})", names.join(","))
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| (0..n).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

/// Both sides of the pentagon for `A: X⊠(Y⊠Z) → (X⊠Y)⊠Z`.
pub fn pentagon() -> (MorExpr, MorExpr) {
    let (a, b, c, d) = (o("a"), o("b"), o("c"), o("d"));
    let lhs = chain(vec![
        assoc(a.clone(), b.clone(), t(c.clone(), d.clone())),
        assoc(t(a.clone(), b.clone()), c.clone(), d.clone()),
    ]);
    let rhs = chain(vec![
        ten(id(a.clone()), assoc(b.clone(), c.clone(), d.clone())),
        assoc(a.clone(), t(b.clone(), c.clone()), d.clone()),
        ten(assoc(a, b, c), id(d)),
    ]);
    (lhs, rhs)
}

/// `R_{X,Y⊠Z}` against its composite through associators.
pub fn hexagon_left() -> (MorExpr, MorExpr) {
    let (x, y, z) = (o("a"), o("b"), o("c"));
    let lhs = chain(vec![
        braid(x.clone(), t(y.clone(), z.clone())),
        assoc_inv(y.clone(), z.clone(), x.clone()),
    ]);
    let rhs = chain(vec![
        assoc(x.clone(), y.clone(), z.clone()),
        ten(braid(x.clone(), y.clone()), id(z.clone())),
        assoc_inv(y.clone(), x.clone(), z.clone()),
        ten(id(y), braid(x, z)),
    ]);
    (lhs, rhs)
}

/// `R_{X⊠Y,Z}` against its composite through associators.
pub fn hexagon_right() -> (MorExpr, MorExpr) {
    let (x, y, z) = (o("a"), o("b"), o("c"));
    let lhs = chain(vec![
        braid(t(x.clone(), y.clone()), z.clone()),
        assoc(z.clone(), x.clone(), y.clone()),
    ]);
    let rhs = chain(vec![
        assoc_inv(x.clone(), y.clone(), z.clone()),
        ten(id(x.clone()), braid(y.clone(), z.clone())),
        assoc(x.clone(), z.clone(), y.clone()),
        ten(braid(x, z), id(y)),
    ]);
    (lhs, rhs)
}

/// `(r_X ⊠ 1) A_{X,1,Y} = 1 ⊠ l_Y`.
pub fn triangle() -> (MorExpr, MorExpr) {
    let (x, y) = (o("a"), o("b"));
    (
        chain(vec![
            assoc(x.clone(), unit(), y.clone()),
            ten(runit(x.clone()), id(y.clone())),
        ]),
        ten(id(x), lunit(y)),
    )
}

fn coherence<S: Scalar>(
    cat: &Arc<Category<S>>,
    arity: usize,
    sides: (MorExpr, MorExpr),
    name: &str,
    tol: f64,
) -> Result<Check> {
    let mut worst = Worst::default();
    for ls in tuples(cat.spec.rank(), arity) {
        let r = env_for(cat, &ls).residual(&sides.0, &sides.1)?;
        worst.record(r, || tuple(&cat.spec, &ls));
    }
    Ok(worst.check(name, &format!("axiom:{name}"), tol))
}

/// Runs every check on a category already specialized to a scalar type.
pub fn validate_category<S: Scalar>(cat: &Arc<Category<S>>) -> Result<Report> {
    let spec = &cat.spec;
    let tol = cat.tol;
    let mut rep = Report::new(format!("validate {}", spec.name));
    rep.push(coherence(cat, 4, pentagon(), "pentagon", tol)?);
    rep.push(coherence(cat, 3, hexagon_left(), "hexagon_left", tol)?);
    rep.push(coherence(cat, 3, hexagon_right(), "hexagon_right", tol)?);
    rep.push(coherence(cat, 2, triangle(), "triangle", tol)?);

    let n = spec.rank();
    let u = spec.unit;
    let mut bad = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let exp = a == b;
            if spec.admissible(u, a, b) != exp || spec.admissible(a, u, b) != exp {
                bad.push(format!("unit fusion at {}", tuple(spec, &[a, b])));
            }
        }
        let d = spec.dual[a];
        if !spec.admissible(a, d, u) || !spec.admissible(d, a, u) || spec.dual[d] != a {
            bad.push(format!("dual of {}", spec.simples[a]));
        }
    }
    if spec.parity[u] != 0 {
        bad.push("unit is odd".into());
    }
    let mut c = Check::flag("unit_dual", "axiom:unit_dual", bad.is_empty());
    if !bad.is_empty() {
        c = c.detail(bad.join("; "));
    }
    rep.push(c);

    // θ_c / (θ_a θ_b) = R^{ba}_c R^{ab}_c, with twist(1) = 1
    let th: Vec<S> = spec.twist.iter().map(S::from_coeff).collect();
    let mut worst = Worst::default();
    worst.record((th[u].clone() - S::one()).modulus(), || tuple(spec, &[u]));
    for &[a, b, c] in spec.r.keys() {
        let rab = S::from_coeff(&spec.r[&[a, b, c]]);
        let rba = S::from_coeff(&spec.r[&[b, a, c]]);
        let lhs = rba * rab * th[a].clone() * th[b].clone();
        worst.record((lhs - th[c].clone()).modulus(), || tuple(spec, &[a, b, c]));
    }
    rep.push(worst.check("balancing", "axiom:balancing", tol));
    Ok(rep)
}

/// Validates category data in the scalar mode it declares.
pub fn validate_spec(spec: &CategorySpec) -> Result<Report> {
    match spec.mode {
        ScalarMode::Exact => validate_category(&Arc::new(Category::<QI>::new(spec.clone())?)),
        ScalarMode::Float { .. } => {
            validate_category(&Arc::new(Category::<C64>::new(spec.clone())?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::instances;
    use crate::error::Error;
    use crate::scalar::Coeff;

    #[test]
    fn ph_is_exact() {
        let r = validate_spec(&instances::ph()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.checks.iter().all(|c| c.residual == 0.0));
    }

    #[test]
    fn ising_passes() {
        let r = validate_spec(&instances::ising()).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.get("hexagon_left").unwrap().residual <= 1e-9);
    }

    #[test]
    fn conjugated_r_breaks_a_hexagon() {
        let mut s = instances::ising();
        let k = [2, 2, 0];
        let v = s.r[&k];
        s.r.insert(k, Coeff::float(v.to_c64().conj()));
        let r = validate_spec(&s).unwrap();
        assert!(!r.get("hexagon_left").unwrap().pass || !r.get("hexagon_right").unwrap().pass);
        assert!(matches!(r.ensure(), Err(Error::ResidualExceeded { .. })));
    }

    #[test]
    fn missing_entry() {
        let mut s = instances::ph();
        s.f.pop_first();
        assert!(matches!(validate_spec(&s), Err(Error::MissingEntry(_))));
    }
}
