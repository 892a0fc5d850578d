use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{BitSet, FinitePoset, Label};
use crate::error::{Error, Result};

/// A Chomp position: the surviving down-set of a finite poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Position {
    poset: Arc<FinitePoset>,
    alive: BitSet,
}

impl Position {
    pub fn new(poset: Arc<FinitePoset>) -> Self {
        let alive = BitSet::full(poset.len());
        Position { poset, alive }
    }

    /// Rejects alive sets that are not down-sets.
    pub fn with_alive(poset: Arc<FinitePoset>, alive: BitSet) -> Result<Self> {
        if alive.capacity() != poset.len() {
            return Err(Error::InvalidPoset("alive set has the wrong size".into()));
        }
        for i in alive.iter() {
            if !poset.down(i).is_subset(&alive) {
                return Err(Error::InvalidPoset(format!(
                    "alive set is not closed below {}",
                    poset.label(i)
                )));
            }
        }
        Ok(Position { poset, alive })
    }

    pub fn poset(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn alive(&self) -> &BitSet {
        &self.alive
    }

    pub fn len(&self) -> usize {
        self.alive.count()
    }

    pub fn is_empty(&self) -> bool {
        self.alive.is_empty()
    }

    pub fn is_alive(&self, i: usize) -> bool {
        self.alive.contains(i)
    }

    pub fn alive_labels(&self) -> Vec<&Label> {
        self.alive.iter().map(|i| self.poset.label(i)).collect()
    }

    /// Removes `x` and everything above it.
    pub fn play(&self, x: usize) -> Result<Position> {
        if !self.alive.contains(x) {
            let name = if x < self.poset.len() {
                self.poset.label(x).to_string()
            } else {
                format!("#{x}")
            };
            return Err(Error::DeadElement(name));
        }
        Ok(Position {
            poset: Arc::clone(&self.poset),
            alive: self.alive.difference(self.poset.up(x)),
        })
    }

    /// Equal for isomorphic alive sets; unequal keys mean non-isomorphic.
    pub fn canonical_key(&self) -> u64 {
        Shape::of(&self.poset, &self.alive).key
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    A,
    B,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::A => "A",
            Player::B => "B",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quality {
    Exact,
    /// The verdict holds on a truncation with this bound.
    BoundedScan(u64),
}

impl fmt::Display for Quality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quality::Exact => f.write_str("exact"),
            Quality::BoundedScan(n) => write!(f, "bounded({n})"),
        }
    }
}

/// Outcome with A to move first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub winner: Player,
    pub winning_move: Option<Label>,
    pub winning_index: Option<usize>,
    pub quality: Quality,
}

impl Verdict {
    pub fn with_quality(mut self, quality: Quality) -> Self {
        self.quality = quality;
        self
    }
}

/// Order structure of an alive set, relabelled `0..n`, with a stable
/// colour refinement.
#[derive(Debug, Clone)]
struct Shape {
    up: Vec<BitSet>,
    colors: Vec<u32>,
    key: u64,
}

type Signature = (u32, Vec<u32>, Vec<u32>);

impl Shape {
    fn of(poset: &FinitePoset, alive: &BitSet) -> Shape {
        let members: Vec<usize> = alive.iter().collect();
        let n = members.len();
        let mut local = vec![usize::MAX; poset.len()];
        for (k, &i) in members.iter().enumerate() {
            local[i] = k;
        }
        let mut up = vec![BitSet::new(n); n];
        let mut down = vec![Vec::new(); n];
        let mut ups = vec![Vec::new(); n];
        for (k, &i) in members.iter().enumerate() {
            for j in poset.up(i).intersection(alive).iter() {
                if j != i {
                    up[k].insert(local[j]);
                    ups[k].push(local[j]);
                    down[local[j]].push(k);
                }
            }
        }

        let mut colors = vec![0u32; n];
        let mut classes = 0;
        loop {
            let sigs: Vec<Signature> = (0..n)
                .map(|k| {
                    let mut u: Vec<u32> = ups[k].iter().map(|&j| colors[j]).collect();
                    let mut d: Vec<u32> = down[k].iter().map(|&j| colors[j]).collect();
                    u.sort_unstable();
                    d.sort_unstable();
                    (colors[k], u, d)
                })
                .collect();
            let mut distinct = sigs.clone();
            distinct.sort();
            distinct.dedup();
            let next: Vec<u32> = sigs
                .iter()
                .map(|s| distinct.binary_search(s).expect("present") as u32)
                .collect();
            if distinct.len() == classes {
                let mut all = sigs;
                all.sort();
                let mut h = DefaultHasher::new();
                n.hash(&mut h);
                all.hash(&mut h);
                return Shape {
                    up,
                    colors: next,
                    key: h.finish(),
                };
            }
            classes = distinct.len();
            colors = next;
        }
    }

    fn isomorphic(&self, other: &Shape) -> bool {
        let n = self.up.len();
        if n != other.up.len() || self.key != other.key {
            return false;
        }
        let mut by_color: HashMap<u32, Vec<usize>> = HashMap::new();
        for (k, &c) in other.colors.iter().enumerate() {
            by_color.entry(c).or_default().push(k);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&k| {
            let c = self.colors[k];
            (by_color.get(&c).map_or(0, Vec::len), c)
        });
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend(other, &order, &by_color, &mut map, &mut used, 0)
    }

    fn extend(
        &self,
        other: &Shape,
        order: &[usize],
        by_color: &HashMap<u32, Vec<usize>>,
        map: &mut [usize],
        used: &mut [bool],
        depth: usize,
    ) -> bool {
        let Some(&v) = order.get(depth) else {
            return true;
        };
        let Some(cands) = by_color.get(&self.colors[v]) else {
            return false;
        };
        for &w in cands {
            if used[w] {
                continue;
            }
            let consistent = order[..depth].iter().all(|&u| {
                let mu = map[u];
                self.up[u].contains(v) == other.up[mu].contains(w)
                    && self.up[v].contains(u) == other.up[w].contains(mu)
            });
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if self.extend(other, order, by_color, map, used, depth + 1) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }
}

/// Default size up to which positions are also memoized up to isomorphism.
pub const DEFAULT_ISO_LIMIT: usize = 24;

/// Memoized minimax for Chomp where taking the minimum loses.
///
/// Results are cached per alive set of the current poset and, for small
/// positions, per isomorphism class across posets.
#[derive(Debug)]
pub struct Solver {
    poset: Option<Arc<FinitePoset>>,
    exact: HashMap<BitSet, bool>,
    iso: HashMap<u64, Vec<(Shape, bool)>>,
    iso_limit: usize,
    node_limit: Option<u64>,
    nodes: u64,
}

impl Default for Solver {
    fn default() -> Self {
        Self::new()
    }
}

impl Solver {
    pub fn new() -> Self {
        Solver {
            poset: None,
            exact: HashMap::new(),
            iso: HashMap::new(),
            iso_limit: DEFAULT_ISO_LIMIT,
            node_limit: None,
            nodes: 0,
        }
    }

    /// Caps the positions expanded by one query.
    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    /// Zero disables the isomorphism memo.
    pub fn with_iso_limit(mut self, limit: usize) -> Self {
        self.iso_limit = limit;
        self
    }

    /// Positions expanded by the last query.
    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn attach(&mut self, poset: &Arc<FinitePoset>) {
        let same = self.poset.as_ref().is_some_and(|p| Arc::ptr_eq(p, poset));
        if !same {
            self.exact.clear();
            self.poset = Some(Arc::clone(poset));
        }
        self.nodes = 0;
    }

    /// Whether the player to move wins.
    pub fn mover_wins(&mut self, pos: &Position) -> Result<bool> {
        if pos.is_empty() {
            return Err(Error::InvalidPoset("empty position".into()));
        }
        let poset = Arc::clone(pos.poset());
        self.attach(&poset);
        self.wins(&poset, pos.alive())
    }

    /// The least winning move, if the mover has one.
    pub fn best_move(&mut self, pos: &Position) -> Result<Option<usize>> {
        if pos.is_empty() {
            return Err(Error::InvalidPoset("empty position".into()));
        }
        let poset = Arc::clone(pos.poset());
        self.attach(&poset);
        let min = poset.min_index();
        for x in pos.alive().iter().filter(|&x| x != min) {
            let child = pos.alive().difference(poset.up(x));
            if !self.wins(&poset, &child)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    pub fn solve(&mut self, pos: &Position) -> Result<Verdict> {
        let best = self.best_move(pos)?;
        Ok(Verdict {
            winner: if best.is_some() { Player::A } else { Player::B },
            winning_move: best.map(|x| pos.poset().label(x).clone()),
            winning_index: best,
            quality: Quality::Exact,
        })
    }

    fn wins(&mut self, poset: &FinitePoset, alive: &BitSet) -> Result<bool> {
        if let Some(&v) = self.exact.get(alive) {
            return Ok(v);
        }
        let count = alive.count();
        if count <= 1 {
            return Ok(false);
        }
        let shape = if count <= self.iso_limit {
            let shape = Shape::of(poset, alive);
            if let Some(v) = self.iso_lookup(&shape) {
                self.exact.insert(alive.clone(), v);
                return Ok(v);
            }
            Some(shape)
        } else {
            None
        };
        self.nodes += 1;
        if let Some(limit) = self.node_limit {
            if self.nodes > limit {
                return Err(Error::SearchBudget(limit));
            }
        }
        let min = poset.min_index();
        let mut result = false;
        for x in alive.iter().filter(|&x| x != min) {
            let child = alive.difference(poset.up(x));
            if !self.wins(poset, &child)? {
                result = true;
                break;
            }
        }
        self.exact.insert(alive.clone(), result);
        if let Some(shape) = shape {
            self.iso.entry(shape.key).or_default().push((shape, result));
        }
        Ok(result)
    }

    fn iso_lookup(&self, shape: &Shape) -> Option<bool> {
        self.iso
            .get(&shape.key)?
            .iter()
            .find(|(s, _)| s.isomorphic(shape))
            .map(|&(_, v)| v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solve(p: FinitePoset) -> Verdict {
        Solver::new().solve(&Position::new(Arc::new(p))).unwrap()
    }

    #[test]
    fn moves() {
        let chain = Arc::new(FinitePoset::chain(2));
        let pos = Position::new(chain);
        let after = pos.play(1).unwrap();
        assert_eq!(after.alive().iter().collect::<Vec<_>>(), vec![0]);
        assert!(pos.play(0).unwrap().is_empty());
        assert!(matches!(after.play(1), Err(Error::DeadElement(_))));
    }

    #[test]
    fn small_verdicts() {
        assert_eq!(solve(FinitePoset::point()).winner, Player::B);
        let v = solve(FinitePoset::chain(2));
        assert_eq!(v.winner, Player::A);
        assert_eq!(v.winning_index, Some(1));
        assert_eq!(v.winning_move, Some(Label::Atom(1)));
        assert_eq!(solve(FinitePoset::twin(&FinitePoset::point())).winner, Player::B);
        assert_eq!(solve(FinitePoset::twin(&FinitePoset::chain(3))).winner, Player::B);
        // a chain of three: take the middle element
        assert_eq!(solve(FinitePoset::chain(3)).winning_index, Some(1));
    }

    #[test]
    fn winning_move_is_valid() {
        let p = FinitePoset::lex_product(&FinitePoset::twin(&FinitePoset::point()), &FinitePoset::chain(2));
        let pos = Position::new(Arc::new(p));
        let mut solver = Solver::new();
        let v = solver.solve(&pos).unwrap();
        assert_eq!(v.winner, Player::A);
        let next = pos.play(v.winning_index.unwrap()).unwrap();
        assert!(!solver.mover_wins(&next).unwrap());
    }

    #[test]
    fn iso_memo_agrees_with_plain_search() {
        let t = FinitePoset::twin(&FinitePoset::lex_product(&FinitePoset::chain(2), &FinitePoset::twin(&FinitePoset::point())));
        let pos = Position::new(Arc::new(t));
        let a = Solver::new().solve(&pos).unwrap();
        let b = Solver::new().with_iso_limit(0).solve(&pos).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.winner, Player::B);
    }

    #[test]
    fn canonical_keys() {
        let t = Arc::new(FinitePoset::twin(&FinitePoset::chain(2)));
        let pos = Position::new(Arc::clone(&t));
        // removing the top of either copy gives isomorphic positions
        assert_eq!(pos.play(2).unwrap().canonical_key(), pos.play(4).unwrap().canonical_key());
        assert_ne!(pos.play(1).unwrap().canonical_key(), pos.play(2).unwrap().canonical_key());
        let a = Shape::of(&t, pos.play(2).unwrap().alive());
        let b = Shape::of(&t, pos.play(4).unwrap().alive());
        assert!(a.isomorphic(&b));
    }

    #[test]
    fn node_limit() {
        let p = FinitePoset::power(&FinitePoset::twin(&FinitePoset::point()), 3, 100).unwrap();
        let pos = Position::new(Arc::new(p));
        let err = Solver::new().with_node_limit(3).with_iso_limit(0).solve(&pos);
        assert_eq!(err, Err(Error::SearchBudget(3)));
    }

    #[test]
    fn rejects_non_down_sets() {
        let chain = Arc::new(FinitePoset::chain(3));
        assert!(Position::with_alive(Arc::clone(&chain), BitSet::from_indices(3, [0, 2])).is_err());
        assert!(Position::with_alive(chain, BitSet::from_indices(3, [0, 1])).is_ok());
    }
}
