use std::fmt;

use super::BitSet;
use crate::error::{Error, Result};
use crate::monoid::MonoidView;
use crate::ordinal::Ordinal;

/// Name of a poset element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Label {
    Ord(Ordinal),
    Atom(usize),
    Pair(Box<Label>, Box<Label>),
    Root,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Ord(o) => write!(f, "{o}"),
            Label::Atom(i) => write!(f, "{i}"),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
            Label::Root => f.write_str("root"),
        }
    }
}

/// A finite partial order with a global minimum, stored as up-set and
/// down-set rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<Label>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
    min: usize,
}

impl FinitePoset {
    /// `up[i]` lists every `j` with `i <= j`. The relation is validated.
    pub fn new(labels: Vec<Label>, up: Vec<BitSet>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidPoset("no elements".into()));
        }
        if up.len() != n || up.iter().any(|r| r.capacity() != n) {
            return Err(Error::InvalidPoset("relation has the wrong shape".into()));
        }
        for (i, row) in up.iter().enumerate() {
            if !row.contains(i) {
                return Err(Error::InvalidPoset(format!("not reflexive at {}", labels[i])));
            }
            for j in row.iter() {
                if j != i && up[j].contains(i) {
                    return Err(Error::InvalidPoset(format!(
                        "{} and {} are mutually below each other",
                        labels[i], labels[j]
                    )));
                }
                if !up[j].is_subset(row) {
                    return Err(Error::InvalidPoset(format!("not transitive through {}", labels[j])));
                }
            }
        }
        let min = (0..n)
            .find(|&i| up[i].count() == n)
            .ok_or_else(|| Error::InvalidPoset("no global minimum".into()))?;
        let mut down = vec![BitSet::new(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row.iter() {
                down[j].insert(i);
            }
        }
        Ok(FinitePoset {
            labels,
            up,
            down,
            min,
        })
    }

    pub fn from_fn(labels: Vec<Label>, mut leq: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let n = labels.len();
        let up = (0..n)
            .map(|i| BitSet::from_indices(n, (0..n).filter(|&j| i == j || leq(i, j))))
            .collect();
        Self::new(labels, up)
    }

    /// Like [`from_fn`](Self::from_fn) but takes the transitive closure of
    /// the given relation first.
    pub fn from_fn_closed(
        labels: Vec<Label>,
        mut leq: impl FnMut(usize, usize) -> bool,
    ) -> Result<Self> {
        let n = labels.len();
        let mut up: Vec<BitSet> = (0..n)
            .map(|i| BitSet::from_indices(n, (0..n).filter(|&j| i == j || leq(i, j))))
            .collect();
        for k in 0..n {
            let row = up[k].clone();
            for r in up.iter_mut() {
                if r.contains(k) {
                    r.union_with(&row);
                }
            }
        }
        Self::new(labels, up)
    }

    /// The listed part of a monoid view under the monoid order. Pairs the
    /// view cannot decide are left incomparable before closing.
    pub fn from_view(view: &MonoidView, cap: usize) -> Result<Self> {
        if view.len() > cap {
            return Err(Error::SizeCap {
                size: view.len(),
                cap,
            });
        }
        let labels = view.elements().iter().cloned().map(Label::Ord).collect();
        Self::from_fn_closed(labels, |i, j| view.leq_index(i, j).is_yes())
    }

    pub fn point() -> Self {
        Self::chain(1)
    }

    /// `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        let labels = (0..n).map(Label::Atom).collect();
        Self::from_fn(labels, |i, j| i <= j).expect("a chain is a poset")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn min_index(&self) -> usize {
        self.min
    }

    /// The global maximum, if there is one.
    pub fn max_index(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.down[i].count() == self.len())
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn up(&self, i: usize) -> &BitSet {
        &self.up[i]
    }

    pub fn down(&self, i: usize) -> &BitSet {
        &self.down[i]
    }

    /// Pairs `(i, j)` where `j` covers `i`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            let mut strict = self.up[i].clone();
            strict.remove(i);
            let mut above = BitSet::new(self.len());
            for j in strict.iter() {
                let mut s = self.up[j].clone();
                s.remove(j);
                above.union_with(&s);
            }
            out.extend(strict.difference(&above).iter().map(|j| (i, j)));
        }
        out
    }

    /// Lexicographic product: `(p,t) <= (p',t')` iff `p < p'`, or `p = p'`
    /// and `t <= t'`. Element `(i, j)` sits at index `i * |t| + j`.
    pub fn lex_product(p: &FinitePoset, t: &FinitePoset) -> FinitePoset {
        let (np, nt) = (p.len(), t.len());
        let n = np * nt;
        let mut labels = Vec::with_capacity(n);
        let mut up = Vec::with_capacity(n);
        for i in 0..np {
            for j in 0..nt {
                labels.push(Label::Pair(
                    Box::new(p.labels[i].clone()),
                    Box::new(t.labels[j].clone()),
                ));
                let mut row = BitSet::new(n);
                for i2 in p.up[i].iter().filter(|&i2| i2 != i) {
                    for j2 in 0..nt {
                        row.insert(i2 * nt + j2);
                    }
                }
                for j2 in t.up[j].iter() {
                    row.insert(i * nt + j2);
                }
                up.push(row);
            }
        }
        FinitePoset::new(labels, up).expect("lexicographic product of posets")
    }

    /// `p^0` is a point and `p^(n+1) = p x p^n`.
    pub fn power(p: &FinitePoset, n: u32, cap: usize) -> Result<FinitePoset> {
        let size = p.len().checked_pow(n).unwrap_or(usize::MAX);
        if size > cap {
            return Err(Error::SizeCap { size, cap });
        }
        let mut acc = FinitePoset::point();
        for _ in 0..n {
            acc = FinitePoset::lex_product(p, &acc);
        }
        Ok(acc)
    }

    /// Two disjoint copies of `t` over a new minimum at index 0.
    pub fn twin(t: &FinitePoset) -> FinitePoset {
        let m = t.len();
        let n = 2 * m + 1;
        let mut labels = vec![Label::Root];
        let mut up = vec![BitSet::full(n)];
        for copy in 0..2 {
            for j in 0..m {
                labels.push(Label::Pair(
                    Box::new(Label::Atom(copy)),
                    Box::new(t.labels[j].clone()),
                ));
                up.push(BitSet::from_indices(
                    n,
                    t.up[j].iter().map(|j2| 1 + copy * m + j2),
                ));
            }
        }
        FinitePoset::new(labels, up).expect("twin of a poset")
    }
}
