//! Concrete objects, tensor words, and their fusion-tree bases.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A direct sum of simples; each summand is `(label, flip)` and has parity
/// `parity(label) XOR flip`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConcreteObject {
    pub summands: Vec<(usize, u8)>,
}

impl ConcreteObject {
    pub fn new(summands: Vec<(usize, u8)>) -> Self {
        ConcreteObject { summands }
    }

    pub fn simple(label: usize) -> Self {
        ConcreteObject {
            summands: vec![(label, 0)],
        }
    }

    pub fn zero() -> Self {
        ConcreteObject::default()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// The parity-flipped object ΠX.
    pub fn flipped(&self) -> Self {
        ConcreteObject {
            summands: self.summands.iter().map(|&(l, f)| (l, f ^ 1)).collect(),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        if self.summands.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|&(l, f)| format!("{}{}", names[l], if f == 1 { "'" } else { "" }))
            .collect();
        parts.join("+")
    }
}

/// A bracketed tensor word whose leaves are concrete objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Word {
    Leaf(ConcreteObject),
    Node(Arc<Word>, Arc<Word>),
}

impl Word {
    pub fn leaf(o: ConcreteObject) -> Word {
        Word::Leaf(o)
    }

    pub fn node(a: Word, b: Word) -> Word {
        Word::Node(Arc::new(a), Arc::new(b))
    }

    pub fn as_leaf(&self) -> Option<&ConcreteObject> {
        match self {
            Word::Leaf(o) => Some(o),
            Word::Node(..) => None,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Leaf(o) => {
                let s: Vec<String> = o
                    .summands
                    .iter()
                    .map(|(l, fl)| format!("{l}{}", if *fl == 1 { "'" } else { "" }))
                    .collect();
                write!(f, "[{}]", s.join(","))
            }
            Word::Node(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

/// One fusion tree: total label, parity, and the indices of its left and
/// right subtrees (for a leaf, `l` is the summand index).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Elem {
    pub total: usize,
    pub grade: u8,
    pub l: usize,
    pub r: usize,
}

/// Ordered fusion-tree basis of a word: lexicographic in the sequence of
/// leaf summand indices, then in internal labels (children before parent).
#[derive(Debug)]
pub struct Basis {
    pub word: Word,
    pub elems: Vec<Elem>,
    pub left: Option<Arc<Basis>>,
    pub right: Option<Arc<Basis>>,
    keys: Vec<(Vec<usize>, Vec<usize>)>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl Basis {
    pub fn leaf(o: &ConcreteObject, parity: &[u8]) -> Basis {
        let elems: Vec<Elem> = o
            .summands
            .iter()
            .enumerate()
            .map(|(i, &(l, f))| Elem {
                total: l,
                grade: parity[l] ^ f,
                l: i,
                r: 0,
            })
            .collect();
        let keys = (0..elems.len()).map(|i| (vec![i], vec![])).collect();
        let index = elems
            .iter()
            .enumerate()
            .map(|(k, e)| ((e.l, 0, e.total), k))
            .collect();
        Basis {
            word: Word::Leaf(o.clone()),
            elems,
            left: None,
            right: None,
            keys,
            index,
        }
    }

    pub fn node(
        word: Word,
        left: Arc<Basis>,
        right: Arc<Basis>,
        fuse: impl Fn(usize, usize) -> Vec<usize>,
    ) -> Basis {
        let mut items = Vec::new();
        for (i, a) in left.elems.iter().enumerate() {
            for (j, b) in right.elems.iter().enumerate() {
                for c in fuse(a.total, b.total) {
                    let mut seq = left.keys[i].0.clone();
                    seq.extend(&right.keys[j].0);
                    let mut labels = left.keys[i].1.clone();
                    labels.extend(&right.keys[j].1);
                    labels.push(c);
                    items.push((
                        (seq, labels),
                        Elem {
                            total: c,
                            grade: a.grade ^ b.grade,
                            l: i,
                            r: j,
                        },
                    ));
                }
            }
        }
        items.sort_by(|x, y| x.0.cmp(&y.0));
        let index = items
            .iter()
            .enumerate()
            .map(|(k, (_, e))| ((e.l, e.r, e.total), k))
            .collect();
        let (keys, elems) = items.into_iter().unzip();
        Basis {
            word,
            elems,
            left: Some(left),
            right: Some(right),
            keys,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Index of the tree `(l, r; c)` (for a leaf: `(summand, 0; label)`).
    pub fn find(&self, l: usize, r: usize, c: usize) -> Option<usize> {
        self.index.get(&(l, r, c)).copied()
    }

    /// The leaf object with one summand per tree, in basis order.
    pub fn flattened(&self, parity: &[u8]) -> ConcreteObject {
        ConcreteObject {
            summands: self
                .elems
                .iter()
                .map(|e| (e.total, e.grade ^ parity[e.total]))
                .collect(),
        }
    }
}
