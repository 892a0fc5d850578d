use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_traits::ToPrimitive;

use super::{scan_first_moves, BitSet, FinitePoset, Label, Player, Position, ScanConfig, Solver};
use crate::error::{Error, Result};
use crate::monoid::{GeneratorSet, MonoidView};
use crate::ordinal::Ordinal;

/// Node budget for the solver consulted on moves with no matching reply.
pub const FALLBACK_BUDGET: u64 = 100_000;

/// Second-player strategy on `S^2` for a numerical semigroup `S` of maximal
/// embedding dimension on which B wins.
///
/// With `n` the multiplicity and `p_2 < ... < p_n` the other minimal
/// generators, the coefficients of `S` split into layers `{kn}` and
/// `{(k-1)n + p_i}`. A move whose leading coefficient is `kn` is answered by
/// `(k-1)n + p_i` on the same term and the converse, leaving the rest of the
/// element unchanged.
#[derive(Debug)]
pub struct MirrorAgent {
    poset: Arc<FinitePoset>,
    replies: Vec<Vec<usize>>,
    solver: Solver,
    fallbacks: u64,
}

/// Builds the agent on the largest square `{w*a + b : a, b in S, a, b <= K}`
/// of the coefficient-bounded view whose layers up to `K` are complete.
pub fn mirror_agent(g: &GeneratorSet, coeff_bound: u64, scan: &ScanConfig) -> Result<MirrorAgent> {
    if !g.is_numeric() {
        return Err(Error::NotApplicable("the generators must all be natural numbers".into()));
    }
    let num = g.numeric_monoid()?;
    if num.gcd() != 1 {
        return Err(Error::InfiniteGaps(num.gcd()));
    }
    if !num.has_max_embedding_dimension() {
        return Err(Error::NotApplicable("the semigroup does not have maximal embedding dimension".into()));
    }
    let level_one = scan_first_moves(g, &Ordinal::one(), scan)?;
    if level_one.winner == Player::A {
        let m = level_one.winning_move.map(|l| l.to_string()).unwrap_or_default();
        return Err(Error::NotApplicable(format!("A wins at level one by taking {m}")));
    }

    let gens = num.minimal_generators();
    let n = gens[0];
    let others = &gens[1..];
    let view = MonoidView::enumerate(g, &Ordinal::from(2u64), coeff_bound)?;
    let listed: HashSet<u64> = view.elements().iter().filter_map(Ordinal::to_u64).collect();
    let mut top = 0;
    for k in 1.. {
        let layer = std::iter::once(k * n).chain(others.iter().map(|p| (k - 1) * n + p));
        if !layer.clone().all(|c| listed.contains(&c)) {
            break;
        }
        top = layer.max().expect("nonempty layer");
    }

    let mut elems = Vec::new();
    for e in view.elements() {
        let a = e.coeff_at(&Ordinal::one()).to_u64().unwrap_or(u64::MAX);
        let b = e.coeff_at(&Ordinal::zero()).to_u64().unwrap_or(u64::MAX);
        if a <= top && b <= top && listed.contains(&a) && listed.contains(&b) {
            elems.push(e.clone());
        }
    }
    let oracle = view.oracle();
    let poset = FinitePoset::from_fn_closed(
        elems.iter().cloned().map(Label::Ord).collect(),
        |i, j| oracle.leq(&elems[i], &elems[j]).is_yes(),
    )?;
    let index: HashMap<&Ordinal, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();

    let replies = elems
        .iter()
        .map(|x| {
            let Some(lead) = x.terms().first() else {
                return Vec::new();
            };
            let c = lead.coeff.to_u64().unwrap_or(u64::MAX);
            let rest = Ordinal::from_normal_terms(x.terms()[1..].to_vec()).expect("tail of a normal form");
            let with = |coeff: u64| {
                let head = Ordinal::monomial(lead.exp.clone(), coeff.into());
                index.get(&head.ordinary_add(&rest)).copied()
            };
            if c % n == 0 {
                let k = c / n;
                others.iter().filter_map(|p| with((k - 1) * n + p)).collect()
            } else {
                others
                    .iter()
                    .find(|&&p| c >= p && (c - p) % n == 0)
                    .and_then(|p| with(c - p + n))
                    .into_iter()
                    .collect()
            }
        })
        .collect();

    Ok(MirrorAgent {
        poset: Arc::new(poset),
        replies,
        solver: Solver::new().with_node_limit(FALLBACK_BUDGET),
        fallbacks: 0,
    })
}

impl MirrorAgent {
    pub fn poset(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    /// Replies that fell back to search.
    pub fn fallbacks(&self) -> u64 {
        self.fallbacks
    }

    /// Reply to A's move `last`, given the position after it. Takes the
    /// minimum only when nothing else is alive.
    pub fn respond(&mut self, pos: &Position, last: usize) -> usize {
        if let Some(&y) = self.replies[last].iter().find(|&&y| pos.is_alive(y)) {
            return y;
        }
        self.fallbacks += 1;
        if let Ok(Some(y)) = self.solver.best_move(pos) {
            return y;
        }
        let min = self.poset.min_index();
        pos.alive().iter().find(|&y| y != min).unwrap_or(min)
    }
}

/// Result of playing every line of A's moves against the agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdversaryReport {
    /// Distinct positions with A to move.
    pub positions: usize,
    /// Lines where the agent had to take the minimum.
    pub losses: usize,
    pub first_loss: Option<String>,
}

/// Explores every sequence of A's moves with the agent answering each,
/// starting from the whole truncated poset with A to move.
pub fn exhaustive_adversary(agent: &mut MirrorAgent) -> AdversaryReport {
    let poset = Arc::clone(&agent.poset);
    let min = poset.min_index();
    let start = BitSet::full(poset.len());
    let mut seen: HashSet<BitSet> = HashSet::from([start.clone()]);
    let mut stack = vec![start];
    let mut losses = 0;
    let mut first_loss = None;
    while let Some(alive) = stack.pop() {
        for x in alive.iter().filter(|&x| x != min) {
            let after = alive.difference(poset.up(x));
            let pos = Position::with_alive(Arc::clone(&poset), after).expect("down-set");
            let y = agent.respond(&pos, x);
            if y == min {
                losses += 1;
                if first_loss.is_none() {
                    let names: Vec<String> = pos.alive_labels().iter().map(|l| l.to_string()).collect();
                    first_loss = Some(format!(
                        "after A takes {} the agent is left with {{{}}}",
                        poset.label(x),
                        names.join(", ")
                    ));
                }
                continue;
            }
            let next = pos.alive().difference(poset.up(y));
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    AdversaryReport {
        positions: seen.len(),
        losses,
        first_loss,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(s: &str) -> GeneratorSet {
        GeneratorSet::parse_list(s).unwrap()
    }

    #[test]
    fn replies_follow_layers() {
        let mut agent = mirror_agent(&gens("2,3"), 2, &ScanConfig::default()).unwrap();
        let poset = Arc::clone(agent.poset());
        let idx = |s: &str| poset.index_of(&Label::Ord(s.parse().unwrap())).unwrap();
        let pos = Position::new(Arc::clone(&poset));
        let reply = |agent: &mut MirrorAgent, x: &str| {
            let after = pos.play(idx(x)).unwrap();
            poset.label(agent.respond(&after, idx(x))).to_string()
        };
        assert_eq!(reply(&mut agent, "w*4+3"), "w*5+3");
        assert_eq!(reply(&mut agent, "w*5+3"), "w*4+3");
        assert_eq!(reply(&mut agent, "w*2"), "w*3");
        assert_eq!(reply(&mut agent, "2"), "3");
        assert_eq!(reply(&mut agent, "3"), "2");
        assert_eq!(agent.fallbacks(), 0);
    }

    #[test]
    fn preconditions() {
        let cfg = ScanConfig::default();
        assert!(matches!(mirror_agent(&gens("3,5"), 2, &cfg), Err(Error::NotApplicable(_))));
        assert!(matches!(mirror_agent(&gens("w+1"), 2, &cfg), Err(Error::NotApplicable(_))));
        assert_eq!(mirror_agent(&gens("2,4"), 2, &cfg).unwrap_err(), Error::InfiniteGaps(2));
    }

    #[test]
    fn survives_small_truncation() {
        let mut agent = mirror_agent(&gens("2,3"), 2, &ScanConfig::default()).unwrap();
        let report = exhaustive_adversary(&mut agent);
        assert_eq!(report.losses, 0, "{:?}", report.first_loss);
        assert!(report.positions > 1);
        let pos = Position::new(Arc::clone(agent.poset()));
        assert!(!Solver::new().mover_wins(&pos).unwrap());
    }
}
