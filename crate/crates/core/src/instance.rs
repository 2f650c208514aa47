//! Instance files: category data, an optional superalgebra with its
//! automorphism group, and declared modules.
//!
//! Scalars are written as JSON integers, `"p/q"` strings or floats, so an
//! exact instance reads back bit for bit. Labels are referred to by name.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    close_group, diagonal, multiplication_by_labels, unit_inclusion, AutomorphismGroup,
    SuperAlgebra,
};
use crate::backend::{instances, Category, CategorySpec, ConcreteObject, Morph, ScalarMode, Word};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::repv::{Module, RepV};
use crate::scalar::{Coeff, Real, Scalar, C64, QI};

/// A real number in file form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub Real);

impl Serialize for Num {
    fn serialize<Z: Serializer>(&self, s: Z) -> std::result::Result<Z::Ok, Z::Error> {
        match self.0 {
            Real::Rat(p, 1) => s.serialize_i64(p),
            Real::Rat(..) => s.serialize_str(&self.0.render()),
            Real::Float(x) => s.serialize_f64(x),
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Float(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Num(Real::int(n))),
            Raw::Float(x) => Ok(Num(Real::Float(x))),
            Raw::Text(t) => Real::parse(&t)
                .map(Num)
                .ok_or_else(|| de::Error::custom(format!("bad number `{t}`"))),
        }
    }
}

/// `[re, im]`.
pub type Complex2 = [Num; 2];

fn to_pair(c: Coeff) -> Complex2 {
    [Num(c.re), Num(c.im)]
}

fn from_pair(p: &Complex2) -> Coeff {
    Coeff::new(p[0].0, p[1].0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FEntry {
    pub labels: [String; 6],
    pub value: Complex2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct REntry {
    pub labels: [String; 3],
    pub value: Complex2,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModeDoc {
    Exact,
    Float { tol: f64 },
}

/// `(label name, parity shift)`; the shift is 1 for `ΠX`.
pub type SummandDoc = (String, u8);

/// Dense matrix, rows of `[re, im]`.
pub type MatrixDoc = Vec<Vec<Complex2>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupDoc {
    /// Element name to matrix on `V`. Missing products are closed over.
    pub elements: BTreeMap<String, MatrixDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parity_involution: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub summands: Vec<SummandDoc>,
    pub mu: MatrixDoc,
    pub iota: MatrixDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<MatrixDoc>,
    pub group: GroupDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleDoc {
    pub name: String,
    pub summands: Vec<SummandDoc>,
    /// `V⊠W → W`.
    pub action: MatrixDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub name: String,
    pub simples: Vec<String>,
    pub unit: String,
    pub dual: Vec<String>,
    pub parity: Vec<u8>,
    pub fusion: Vec<[String; 3]>,
    #[serde(rename = "F")]
    pub f: Vec<FEntry>,
    #[serde(rename = "R")]
    pub r: Vec<REntry>,
    pub twist: Vec<Complex2>,
    pub scalar_mode: ModeDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleDoc>,
    /// Module names used for the G-crossed and equivariantization suites;
    /// all declared modules when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object_set: Option<Vec<String>>,
}

impl InstanceDoc {
    pub fn from_json(text: &str) -> Result<InstanceDoc> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance documents serialize")
    }

    /// The category data as a checked [`CategorySpec`].
    pub fn spec(&self) -> Result<CategorySpec> {
        let label = |n: &str| {
            self.simples
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| Error::UnknownName(n.to_string()))
        };
        let labels = |ns: &[String]| ns.iter().map(|n| label(n)).collect::<Result<Vec<usize>>>();
        let mut f = BTreeMap::new();
        for e in &self.f {
            let l = labels(&e.labels)?;
            f.insert([l[0], l[1], l[2], l[3], l[4], l[5]], from_pair(&e.value));
        }
        let mut r = BTreeMap::new();
        for e in &self.r {
            let l = labels(&e.labels)?;
            r.insert([l[0], l[1], l[2]], from_pair(&e.value));
        }
        let fusion = self
            .fusion
            .iter()
            .map(|t| Ok((label(&t[0])?, label(&t[1])?, label(&t[2])?)))
            .collect::<Result<_>>()?;
        let spec = CategorySpec {
            name: self.name.clone(),
            simples: self.simples.clone(),
            unit: label(&self.unit)?,
            dual: labels(&self.dual)?,
            parity: self.parity.clone(),
            fusion,
            f,
            r,
            twist: self.twist.iter().map(from_pair).collect(),
            mode: match self.scalar_mode {
                ModeDoc::Exact => ScalarMode::Exact,
                ModeDoc::Float { tol } => ScalarMode::Float { tol },
            },
        };
        spec.check_tables()?;
        Ok(spec)
    }

    /// Writes the category part of a spec; algebra and modules are left empty.
    pub fn from_spec(spec: &CategorySpec) -> InstanceDoc {
        let n = |i: usize| spec.simples[i].clone();
        InstanceDoc {
            name: spec.name.clone(),
            simples: spec.simples.clone(),
            unit: n(spec.unit),
            dual: spec.dual.iter().map(|&d| n(d)).collect(),
            parity: spec.parity.clone(),
            fusion: spec
                .fusion
                .iter()
                .map(|&(a, b, c)| [n(a), n(b), n(c)])
                .collect(),
            f: spec
                .f
                .iter()
                .map(|(k, v)| FEntry {
                    labels: k.map(n),
                    value: to_pair(*v),
                })
                .collect(),
            r: spec
                .r
                .iter()
                .map(|(k, v)| REntry {
                    labels: k.map(n),
                    value: to_pair(*v),
                })
                .collect(),
            twist: spec.twist.iter().map(|c| to_pair(*c)).collect(),
            scalar_mode: match spec.mode {
                ScalarMode::Exact => ModeDoc::Exact,
                ScalarMode::Float { tol } => ModeDoc::Float { tol },
            },
            algebra: None,
            modules: vec![],
            object_set: None,
        }
    }
}

fn object_of(spec: &CategorySpec, s: &[SummandDoc]) -> Result<ConcreteObject> {
    let mut out = Vec::new();
    for (name, p) in s {
        if *p > 1 {
            return Err(Error::Format(format!(
                "parity shift of {name} must be 0 or 1"
            )));
        }
        out.push((spec.label(name)?, *p));
    }
    Ok(ConcreteObject::new(out))
}

fn summands_of(spec: &CategorySpec, o: &ConcreteObject) -> Vec<SummandDoc> {
    o.summands
        .iter()
        .map(|&(l, p)| (spec.simples[l].clone(), p))
        .collect()
}

fn matrix_of<S: Scalar>(
    cat: &Category<S>,
    dom: &Word,
    cod: &Word,
    m: &MatrixDoc,
    what: &str,
) -> Result<Morph<S>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::Format(format!("{what}: ragged matrix")));
    }
    let (want_r, want_c) = (cat.basis(cod).len(), cat.basis(dom).len());
    let empty = rows * cols == 0 && want_r * want_c == 0;
    if (rows, cols) != (want_r, want_c) && !empty {
        return Err(Error::ShapeMismatch(format!(
            "{what}: expected {want_r}x{want_c}, found {rows}x{cols}"
        )));
    }
    if S::EXACT
        && m.iter()
            .flatten()
            .flatten()
            .any(|x| matches!(x.0, Real::Float(_)))
    {
        return Err(Error::Format(format!(
            "{what}: floating-point entries in an exact instance"
        )));
    }
    let mat = Mat::from_fn(want_r, want_c, |i, j| S::from_coeff(&from_pair(&m[i][j])));
    cat.from_matrix(dom, cod, mat).map_err(|e| match e {
        Error::ShapeMismatch(d) => Error::ShapeMismatch(format!("{what}: {d}")),
        e => e,
    })
}

fn doc_of<S: Scalar>(m: &Morph<S>) -> MatrixDoc {
    (0..m.m.rows)
        .map(|i| {
            (0..m.m.cols)
                .map(|j| to_pair(m.m.at(i, j).to_coeff()))
                .collect()
        })
        .collect()
}

/// A loaded instance over a scalar field.
pub struct Instance<S: Scalar> {
    pub doc: InstanceDoc,
    pub cat: Arc<Category<S>>,
    algebra: Option<std::result::Result<Arc<SuperAlgebra<S>>, Error>>,
}

impl<S: Scalar> Instance<S> {
    pub fn new(doc: InstanceDoc) -> Result<Self> {
        let cat = Arc::new(Category::new(doc.spec()?)?);
        let algebra = doc
            .algebra
            .as_ref()
            .map(|a| build_algebra(&cat, a).map(Arc::new));
        Ok(Instance { doc, cat, algebra })
    }

    /// The algebra as written, before ε and ĩ are derived.
    pub fn raw_algebra(&self) -> Result<Arc<SuperAlgebra<S>>> {
        match &self.algebra {
            None => Err(Error::Format(format!(
                "instance {} declares no algebra",
                self.doc.name
            ))),
            Some(r) => r.clone(),
        }
    }

    /// `Rep V` for the completed algebra.
    pub fn rep(&self) -> Result<RepV<S>> {
        let alg = (*self.raw_algebra()?).clone().complete()?;
        Ok(RepV::new(Arc::new(alg)))
    }

    /// The declared modules, in file order.
    pub fn modules(&self, rep: &RepV<S>) -> Result<Vec<Module<S>>> {
        self.doc
            .modules
            .iter()
            .map(|m| module_from_doc(rep, m))
            .collect()
    }

    /// A declared module, or `F(<simple>)`, `Pi(<module>)` built on demand.
    pub fn module(&self, rep: &RepV<S>, name: &str) -> Result<Module<S>> {
        if let Some(m) = self.doc.modules.iter().find(|m| m.name == name) {
            return module_from_doc(rep, m);
        }
        if name == "V" {
            return Ok(rep.unit_module());
        }
        if let Some(inner) = name.strip_prefix("F(").and_then(|r| r.strip_suffix(')')) {
            return rep.induce(&rep.even_simple(self.cat.spec.label(inner)?), name);
        }
        if let Some(inner) = name.strip_prefix("Pi(").and_then(|r| r.strip_suffix(')')) {
            return rep.flip(&self.module(rep, inner)?);
        }
        Err(Error::UnknownName(name.to_string()))
    }

    /// The object set for the G-crossed and equivariantization suites.
    pub fn object_set(&self, rep: &RepV<S>) -> Result<Vec<Module<S>>> {
        match &self.doc.object_set {
            Some(names) => names.iter().map(|n| self.module(rep, n)).collect(),
            None => self.modules(rep),
        }
    }
}

fn module_from_doc<S: Scalar>(rep: &RepV<S>, m: &ModuleDoc) -> Result<Module<S>> {
    let cat = rep.cat();
    let w = object_of(&cat.spec, &m.summands)?;
    let dom = Word::node(rep.alg.word(), Word::leaf(w.clone()));
    let action = matrix_of(
        cat,
        &dom,
        &Word::leaf(w.clone()),
        &m.action,
        &format!("action of {}", m.name),
    )?;
    Ok(Module::new(&m.name, w, action))
}

fn build_algebra<S: Scalar>(cat: &Arc<Category<S>>, a: &AlgebraDoc) -> Result<SuperAlgebra<S>> {
    let v = object_of(&cat.spec, &a.summands)?;
    let vw = Word::leaf(v.clone());
    let mu = matrix_of(cat, &Word::node(vw.clone(), vw.clone()), &vw, &a.mu, "mu")?;
    let iota = matrix_of(cat, &cat.unit_word(), &vw, &a.iota, "iota")?;
    let gens = a
        .group
        .elements
        .iter()
        .map(|(n, m)| {
            Ok((
                n.clone(),
                matrix_of(cat, &vw, &vw, m, &format!("group element {n}"))?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let group = match &a.group.parity_involution {
        Some(p) if gens.iter().all(|(n, _)| n != p) => return Err(Error::UnknownName(p.clone())),
        _ => group_from(cat, &vw, gens, a.group.parity_involution.as_deref())?,
    };
    let mut alg = SuperAlgebra::new(cat.clone(), v, mu, iota, group)?;
    if let Some(e) = &a.epsilon {
        alg.epsilon = Some(matrix_of(cat, &vw, &cat.unit_word(), e, "epsilon")?);
    }
    Ok(alg)
}

/// Uses the listed elements as the whole group when they close, and as
/// generators otherwise.
fn group_from<S: Scalar>(
    cat: &Category<S>,
    v: &Word,
    named: Vec<(String, Morph<S>)>,
    parity: Option<&str>,
) -> Result<AutomorphismGroup<S>> {
    match AutomorphismGroup::from_elements(cat, v, named.clone(), parity) {
        Ok(g) => Ok(g),
        Err(Error::NotClosed(_)) => {
            let gens: Vec<_> = named
                .into_iter()
                .filter(|(_, m)| m.dist(&cat.identity(v)) > cat.tol)
                .collect();
            let mut g = close_group(cat, v, gens, 64)?;
            if let Some(p) = parity {
                g.parity = Some(g.index(p)?);
            }
            Ok(g)
        }
        Err(e) => Err(e),
    }
}

/// Writes an instance back to file form. Declared modules are exported
/// with their actions; the group is written element by element.
pub fn export<S: Scalar>(
    cat: &Category<S>,
    alg: Option<&SuperAlgebra<S>>,
    modules: &[Module<S>],
    object_set: Option<Vec<String>>,
) -> InstanceDoc {
    let mut doc = InstanceDoc::from_spec(&cat.spec);
    if let Some(a) = alg {
        doc.algebra = Some(AlgebraDoc {
            summands: summands_of(&cat.spec, &a.v),
            mu: doc_of(&a.mu),
            iota: doc_of(&a.iota),
            epsilon: None,
            group: GroupDoc {
                elements: a
                    .group
                    .names
                    .iter()
                    .cloned()
                    .zip(a.group.elements.iter().map(doc_of))
                    .collect(),
                parity_involution: a.group.parity.map(|p| a.group.names[p].clone()),
            },
        });
    }
    doc.modules = modules
        .iter()
        .map(|m| ModuleDoc {
            name: m.name.clone(),
            summands: summands_of(&cat.spec, &m.w),
            action: doc_of(&m.action),
        })
        .collect();
    doc.object_set = object_set;
    doc
}

/// Names accepted by [`builtin`].
pub const BUILTINS: [&str; 5] = ["PH", "ising", "Z2", "Z3", "Z4"];

/// `e^{2πik/n}` in `S`, exactly when `S` is exact and the value is a Gaussian
/// rational.
pub fn root_of_unity<S: Scalar>(k: i64, n: i64) -> Result<S> {
    let z = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / n as f64);
    if S::EXACT {
        S::recognize(z)
            .ok_or_else(|| Error::Format(format!("e^(2πi·{k}/{n}) is not a Gaussian rational")))
    } else {
        Ok(S::from_c64(z))
    }
}

fn builtin_parts<S: Scalar>(
    name: &str,
) -> Result<(Arc<Category<S>>, SuperAlgebra<S>, Vec<String>)> {
    let (spec, summands, gen): (CategorySpec, Vec<(usize, u8)>, &str) = match name {
        "PH" => (instances::ph(), vec![(0, 0), (2, 0)], "g"),
        "ising" => (instances::ising(), vec![(0, 0), (1, 0)], "P"),
        _ => {
            let n: u32 = name
                .strip_prefix('Z')
                .and_then(|k| k.parse().ok())
                .filter(|&n| n >= 2)
                .ok_or_else(|| Error::UnknownName(name.to_string()))?;
            (
                instances::regular_pointed(n),
                (0..n as usize).map(|j| (j, 0)).collect(),
                "chi",
            )
        }
    };
    let mut spec = spec;
    if !S::EXACT {
        spec.mode = ScalarMode::Float {
            tol: instances::DEFAULT_TOL,
        };
    }
    let cat = Arc::new(Category::<S>::new(spec)?);
    let v = ConcreteObject::new(summands);
    let vw = Word::leaf(v.clone());
    let mu = multiplication_by_labels(&cat, &v, |_, _| S::one())?;
    let iota = unit_inclusion(&cat, &v)?;
    let g = match gen {
        "g" => diagonal(&cat, &v, &[S::one(), -S::one()]),
        "P" => cat.parity_operator(&vw),
        _ => {
            let n = v.len() as i64;
            let d = (0..n)
                .map(|j| root_of_unity::<S>(j, n))
                .collect::<Result<Vec<_>>>()?;
            diagonal(&cat, &v, &d)
        }
    };
    let group = close_group(&cat, &vw, vec![(gen.to_string(), g)], 64)?;
    let alg = SuperAlgebra::new(cat.clone(), v, mu, iota, group)?;
    let modules = match name {
        "PH" => vec!["V".into(), "F(X01)".into()],
        "ising" => vec!["V".into(), "Pi(V)".into(), "F(sigma)".into()],
        _ => vec!["V".into()],
    };
    Ok((cat, alg, modules))
}

/// A built-in instance as a document: PH (exact), ising (float), and `Zn`
/// (the regular algebra of `Z/n` with its character group).
pub fn builtin(name: &str) -> Result<InstanceDoc> {
    // the character group of Z/n is Gaussian rational only for n | 4
    let exact = matches!(name, "PH" | "Z2" | "Z4");
    if exact {
        builtin_doc::<QI>(name)
    } else {
        builtin_doc::<C64>(name)
    }
}

fn builtin_doc<S: Scalar>(name: &str) -> Result<InstanceDoc> {
    let (cat, alg, names) = builtin_parts::<S>(name)?;
    let rep = RepV::new(Arc::new(alg.clone()));
    let mut modules = Vec::new();
    for n in &names {
        let m = match n.as_str() {
            "V" => rep.unit_module(),
            "Pi(V)" => rep.flip(&rep.unit_module())?,
            _ => {
                let inner = &n[2..n.len() - 1];
                rep.induce(&ConcreteObject::simple(cat.spec.label(inner)?), n)?
            }
        };
        modules.push(m);
    }
    Ok(export(&cat, Some(&alg), &modules, Some(names)))
}

/// An instance with its scalar field chosen at load time.
pub enum AnyInstance {
    Exact(Instance<QI>),
    Float(Instance<C64>),
}

/// Overrides applied when loading.
#[derive(Clone, Copy, Debug, Default)]
pub struct LoadOptions {
    pub exact: bool,
    pub tol: Option<f64>,
}

impl AnyInstance {
    /// Exact when requested or when the file says so; a tolerance override
    /// switches a float instance's tolerance.
    pub fn load(mut doc: InstanceDoc, opts: LoadOptions) -> Result<AnyInstance> {
        if let Some(t) = opts.tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::Format(format!(
                    "tolerance must be positive, got {t}"
                )));
            }
            if let ModeDoc::Float { tol } = &mut doc.scalar_mode {
                *tol = t;
            }
        }
        if opts.exact {
            doc.scalar_mode = ModeDoc::Exact;
        }
        match doc.scalar_mode {
            ModeDoc::Exact => Ok(AnyInstance::Exact(Instance::new(doc)?)),
            ModeDoc::Float { .. } => Ok(AnyInstance::Float(Instance::new(doc)?)),
        }
    }

    /// A path to an instance file, or the name of a built-in instance.
    pub fn open(source: &str, opts: LoadOptions) -> Result<AnyInstance> {
        let path = std::path::Path::new(source);
        let doc = if path.is_file() {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Format(format!("{source}: {e}")))?;
            InstanceDoc::from_json(&text)?
        } else if BUILTINS.contains(&source) || source.starts_with('Z') {
            builtin(source)?
        } else {
            return Err(Error::Format(format!(
                "{source}: no such file or built-in instance"
            )));
        };
        AnyInstance::load(doc, opts)
    }

    pub fn doc(&self) -> &InstanceDoc {
        match self {
            AnyInstance::Exact(i) => &i.doc,
            AnyInstance::Float(i) => &i.doc,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_keep_their_kind() {
        for (text, want) in [
            ("3", Real::int(3)),
            ("\"-1/2\"", Real::Rat(-1, 2)),
            ("0.5", Real::Float(0.5)),
            ("1.0", Real::Float(1.0)),
        ] {
            let n: Num = serde_json::from_str(text).unwrap();
            assert_eq!(n.0, want);
            assert_eq!(serde_json::to_string(&n).unwrap(), text);
        }
        assert!(serde_json::from_str::<Num>("\"x\"").is_err());
    }

    #[test]
    fn builtins_load_in_their_modes() {
        for name in BUILTINS {
            let inst = AnyInstance::open(name, LoadOptions::default()).unwrap();
            let exact = matches!(inst, AnyInstance::Exact(_));
            assert_eq!(exact, name != "ising" && name != "Z3", "{name}");
        }
        assert!(matches!(
            AnyInstance::open(
                "ising",
                LoadOptions {
                    exact: true,
                    tol: None
                }
            ),
            Err(Error::Format(_))
        ));
        assert!(AnyInstance::open("nothing", LoadOptions::default()).is_err());
    }

    #[test]
    fn exact_round_trip_is_bit_identical() {
        let doc = builtin("PH").unwrap();
        let text = doc.to_json();
        let back = InstanceDoc::from_json(&text).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.to_json(), text);
        let inst = Instance::<QI>::new(back).unwrap();
        let rep = inst.rep().unwrap();
        let again = export(
            &inst.cat,
            Some(&rep.alg),
            &inst.modules(&rep).unwrap(),
            inst.doc.object_set.clone(),
        );
        assert_eq!(again.to_json(), text);
    }

    #[test]
    fn float_round_trip_preserves_values() {
        let doc = builtin("ising").unwrap();
        let back = InstanceDoc::from_json(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn modules_resolve_by_name() {
        let inst = Instance::<QI>::new(builtin("PH").unwrap()).unwrap();
        let rep = inst.rep().unwrap();
        assert_eq!(inst.module(&rep, "F(X11)").unwrap().dim(), 2);
        assert_eq!(inst.module(&rep, "Pi(F(X01))").unwrap().w.summands[0].1, 1);
        assert!(matches!(
            inst.module(&rep, "F(Y)"),
            Err(Error::UnknownName(_))
        ));
        assert_eq!(inst.object_set(&rep).unwrap().len(), 2);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        let mut doc = builtin("PH").unwrap();
        doc.algebra.as_mut().unwrap().mu.pop();
        let inst = Instance::<QI>::new(doc).unwrap();
        assert!(matches!(inst.rep(), Err(Error::ShapeMismatch(_))));
        let mut doc = builtin("PH").unwrap();
        doc.r.pop();
        assert!(matches!(
            Instance::<QI>::new(doc),
            Err(Error::MissingEntry(_))
        ));
        assert!(InstanceDoc::from_json("{\"name\": 1}").is_err());
    }
}
