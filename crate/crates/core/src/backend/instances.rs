//! Built-in category data.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use super::spec::{CategorySpec, ScalarMode};
use crate::error::{Error, Result};
use crate::scalar::{Coeff, Real, C64};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Elements of `Z/n1 × ... × Z/nk` in lexicographic order.
pub fn group_elements(orders: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &n in orders {
        out = out
            .into_iter()
            .flat_map(|p| (0..n).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

fn label(x: &[u32]) -> String {
    let digits: Vec<String> = x.iter().map(|d| d.to_string()).collect();
    format!(
        "X{}",
        digits.join(if x.iter().any(|&d| d > 9) { "_" } else { "" })
    )
}

fn close(a: Coeff, b: Coeff) -> bool {
    (a.to_c64() - b.to_c64()).norm() < 1e-12
}

/// Pointed braided category on a finite abelian group with trivial
/// associator, `R^{a,b} = β(a,b)` and twist `β(a,a)`.
pub fn pointed(
    name: &str,
    orders: &[u32],
    beta: impl Fn(&[u32], &[u32]) -> Coeff,
    parity_hom: impl Fn(&[u32]) -> u8,
) -> Result<CategorySpec> {
    let els = group_elements(orders);
    let add = |a: &[u32], b: &[u32]| -> Vec<u32> {
        a.iter()
            .zip(b)
            .zip(orders)
            .map(|((x, y), m)| (x + y) % m)
            .collect()
    };
    let idx = |x: &[u32]| els.iter().position(|e| e == x).expect("group element");
    for a in &els {
        for b in &els {
            for c in &els {
                let ab = add(a, b);
                let bc = add(b, c);
                if !close(beta(&ab, c), beta(a, c).mul(beta(b, c)))
                    || !close(beta(a, &bc), beta(a, b).mul(beta(a, c)))
                {
                    return Err(Error::NotBicharacter(format!(
                        "at {}, {}, {}",
                        label(a),
                        label(b),
                        label(c)
                    )));
                }
            }
            if parity_hom(&add(a, b)) != (parity_hom(a) ^ parity_hom(b)) {
                return Err(Error::ParityNotHomomorphism(format!(
                    "at {}, {}",
                    label(a),
                    label(b)
                )));
            }
        }
    }
    let zero = vec![0u32; orders.len()];
    let mut fusion = BTreeSet::new();
    let mut f = BTreeMap::new();
    let mut r = BTreeMap::new();
    for a in &els {
        for b in &els {
            let c = idx(&add(a, b));
            fusion.insert((idx(a), idx(b), c));
            r.insert([idx(a), idx(b), c], beta(a, b));
            for cc in &els {
                let e = c;
                let ff = idx(&add(b, cc));
                let d = idx(&add(&add(a, b), cc));
                f.insert([idx(a), idx(b), idx(cc), d, e, ff], Coeff::ONE);
            }
        }
    }
    let dual = els
        .iter()
        .map(|a| {
            idx(&a
                .iter()
                .zip(orders)
                .map(|(x, m)| (m - x) % m)
                .collect::<Vec<_>>())
        })
        .collect();
    let mut spec = CategorySpec {
        name: name.to_string(),
        simples: els.iter().map(|e| label(e)).collect(),
        unit: idx(&zero),
        dual,
        parity: els.iter().map(|e| parity_hom(e)).collect(),
        fusion,
        f,
        r,
        twist: els.iter().map(|e| beta(e, e)).collect(),
        mode: ScalarMode::Exact,
    };
    if !spec.is_rational() {
        spec.mode = ScalarMode::Float { tol: DEFAULT_TOL };
    }
    Ok(spec)
}

/// `Z/2 × Z/2` with `β((x1,y1),(x2,y2)) = (−1)^{x1 y2}` and trivial parity.
pub fn ph() -> CategorySpec {
    pointed(
        "PH",
        &[2, 2],
        |a, b| Coeff::int(if a[0] * b[1] % 2 == 1 { -1 } else { 1 }),
        |_| 0,
    )
    .expect("hyperbolic form is a bicharacter")
}

/// `Z/n` with trivial braiding.
pub fn regular_pointed(n: u32) -> CategorySpec {
    pointed(&format!("Z{n}"), &[n], |_, _| Coeff::ONE, |_| 0).expect("trivial bicharacter")
}

fn cexp(theta: f64) -> Coeff {
    let z = C64::from_polar(1.0, theta);
    // keep exact zeros and units exact
    let clean = |x: f64| {
        let r = x.round();
        if (x - r).abs() < 1e-15 {
            Real::int(r as i64)
        } else {
            Real::Float(x)
        }
    };
    Coeff::new(clean(z.re), clean(z.im))
}

/// Ising data: simples 1, psi (odd), sigma.
pub fn ising() -> CategorySpec {
    let (one, psi, sig) = (0usize, 1usize, 2usize);
    let mut fusion = BTreeSet::new();
    let rules: &[(usize, usize, &[usize])] = &[
        (one, one, &[one]),
        (one, psi, &[psi]),
        (one, sig, &[sig]),
        (psi, one, &[psi]),
        (psi, psi, &[one]),
        (psi, sig, &[sig]),
        (sig, one, &[sig]),
        (sig, psi, &[sig]),
        (sig, sig, &[one, psi]),
    ];
    for (a, b, cs) in rules {
        for c in *cs {
            fusion.insert((*a, *b, *c));
        }
    }
    let mut spec = CategorySpec {
        name: "ising".into(),
        simples: vec!["1".into(), "psi".into(), "sigma".into()],
        unit: one,
        dual: vec![one, psi, sig],
        parity: vec![0, 1, 0],
        fusion,
        f: BTreeMap::new(),
        r: BTreeMap::new(),
        twist: vec![Coeff::ONE, Coeff::int(-1), cexp(PI / 8.0)],
        mode: ScalarMode::Float { tol: DEFAULT_TOL },
    };
    let h = Coeff::real(Real::Float(std::f64::consts::FRAC_1_SQRT_2));
    let mh = Coeff::real(Real::Float(-std::f64::consts::FRAC_1_SQRT_2));
    for t in spec.f_tuples() {
        let v = match t {
            [2, 2, 2, 2, e, f] => {
                if e == psi && f == psi {
                    mh
                } else {
                    h
                }
            }
            [2, 1, 2, 1, 2, 2] | [1, 2, 1, 2, 2, 2] => Coeff::int(-1),
            _ => Coeff::ONE,
        };
        spec.f.insert(t, v);
    }
    for t in spec.r_tuples() {
        let v = match t {
            [1, 1, 0] => Coeff::int(-1),
            [2, 1, 2] | [1, 2, 2] => Coeff::new(Real::int(0), Real::int(-1)),
            [2, 2, 0] => cexp(-PI / 8.0),
            [2, 2, 1] => cexp(3.0 * PI / 8.0),
            _ => Coeff::ONE,
        };
        spec.r.insert(t, v);
    }
    spec
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(ph().rank(), 4);
        assert_eq!(regular_pointed(2).rank(), 2);
        assert_eq!(ising().rank(), 3);
        assert_eq!(ising().parity, vec![0, 1, 0]);
        assert_eq!(ph().mode, ScalarMode::Exact);
    }

    #[test]
    fn rejects_bad_input() {
        let bad = pointed(
            "bad",
            &[2],
            |a, b| Coeff::int(if a[0] == 1 && b[0] == 1 { 2 } else { 1 }),
            |_| 0,
        );
        assert!(matches!(bad, Err(Error::NotBicharacter(_))));
        let bad = pointed("bad", &[3], |_, _| Coeff::ONE, |a| (a[0] == 1) as u8);
        assert!(matches!(bad, Err(Error::ParityNotHomomorphism(_))));
    }
}
