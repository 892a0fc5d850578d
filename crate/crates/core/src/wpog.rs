//! Tests for whether a finite generator set yields well partial orders at
//! every level.
//!
//! Two structural checks settle many cases outright. Otherwise the search
//! looks for long antichains at the least level `e(G) + 1`, which is the
//! only level that matters for finite generator sets.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::monoid::{GeneratorSet, MonoidView, Oracle};
use crate::ordinal::Ordinal;

pub const DEFAULT_COEFF_BOUND: u64 = 5;
pub const DEFAULT_SIZE: usize = 5;
pub const DEFAULT_NODE_BUDGET: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WpogConfig {
    pub coeff_bound: u64,
    /// Length of the antichains taken as evidence of an infinite one.
    pub size: usize,
    pub node_budget: u64,
}

impl Default for WpogConfig {
    fn default() -> Self {
        WpogConfig {
            coeff_bound: DEFAULT_COEFF_BOUND,
            size: DEFAULT_SIZE,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NecessaryOutcome {
    Pass,
    /// The smallest generators have lower terms, and the multiples of the
    /// chosen one were checked to be pairwise incomparable.
    Fail { witness: Vec<Ordinal> },
    /// The smallest generators have lower terms but the multiples could not
    /// all be separated.
    Unverified { candidate: Vec<Ordinal> },
}

/// The smallest generators of a finite wpog are single terms `w^g * p`.
///
/// On failure the witness is `{a (x) p : 1 <= p <= k}` for the smallest
/// generator `a` maximising the ratio of its last coefficient to its first,
/// checked at level `e(G) + 1`.
pub fn necessary_condition(g: &GeneratorSet, k: usize) -> Result<NecessaryOutcome> {
    let low = g.gens().iter().map(Ordinal::leading_exp).min().expect("non-empty");
    let group: Vec<&Ordinal> = g.gens().iter().filter(|x| x.leading_exp() == low).collect();
    if group.iter().all(|x| x.terms().len() == 1) {
        return Ok(NecessaryOutcome::Pass);
    }
    let last = group
        .iter()
        .filter_map(|x| x.last_exp())
        .min()
        .expect("non-empty")
        .clone();
    // a/b > c/d  iff  a*d > c*b
    let mut best = group[0];
    for &x in &group[1..] {
        let lhs = x.coeff_at(&last) * best.leading_coeff();
        let rhs = best.coeff_at(&last) * x.leading_coeff();
        if lhs > rhs {
            best = x;
        }
    }
    let multiples: Vec<Ordinal> = (1..=k as u64)
        .map(|p| best.scale(&BigUint::from(p)))
        .collect();
    let oracle = Oracle::new(g, &g.least_level())?;
    if pairwise_incomparable(&oracle, &multiples) {
        Ok(NecessaryOutcome::Fail { witness: multiples })
    } else {
        Ok(NecessaryOutcome::Unverified {
            candidate: multiples,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AntichainSearch {
    Found(Vec<Ordinal>),
    NotFound,
    BudgetExhausted,
}

/// Searches for `size` pairwise incomparable elements of the form
/// `x (+) n (x) d`, `n = 0, 1, ...`, with `x` and `d` listed in the view.
///
/// Pairs are tried with `d` ascending, then `x` ascending, so the first
/// witness in that order is returned. Whether such a progression is an
/// antichain depends on `d` and on the part of `x` below the leading
/// exponent of `d` only, so each such pair is examined once; the node
/// budget counts these examinations.
pub fn find_antichain(
    g: &GeneratorSet,
    level: &Ordinal,
    size: usize,
    coeff_bound: u64,
    node_budget: u64,
) -> Result<AntichainSearch> {
    if size < 2 {
        return Err(Error::NotApplicable("antichain size must be at least 2".into()));
    }
    let view = MonoidView::enumerate(g, level, coeff_bound)?;
    let oracle = view.oracle();
    let mut tails: HashMap<Ordinal, Vec<usize>> = HashMap::new();
    let mut nodes = 0u64;

    for step in view.elements().iter().skip(1) {
        let top = step.leading_exp();
        if top.is_zero() {
            // the step is natural and x (+) d - x = d is a member
            continue;
        }
        let starts = tails
            .entry(top.clone())
            .or_insert_with(|| separable_starts(&view, &top));
        for &first in starts.iter() {
            nodes += 1;
            if nodes > node_budget {
                return Ok(AntichainSearch::BudgetExhausted);
            }
            let run = progression(&view.elements()[first], step, size);
            if pairwise_incomparable(oracle, &run) {
                return Ok(AntichainSearch::Found(run));
            }
        }
    }
    Ok(AntichainSearch::NotFound)
}

/// For each distinct part below `exp` of the listed elements, the index of
/// the first element carrying it, ascending.
///
/// Parts that are members are dropped, since `x <= x (+) d` whenever
/// `d (+) tail` is a member.
fn separable_starts(view: &MonoidView, exp: &Ordinal) -> Vec<usize> {
    let mut seen: HashMap<Ordinal, usize> = HashMap::new();
    for (i, x) in view.elements().iter().enumerate() {
        seen.entry(x.tail_below(exp)).or_insert(i);
    }
    let mut out: Vec<usize> = seen
        .into_iter()
        .filter(|(t, _)| !view.contains(t).is_yes())
        .map(|(_, i)| i)
        .collect();
    out.sort_unstable();
    out
}

fn progression(start: &Ordinal, step: &Ordinal, len: usize) -> Vec<Ordinal> {
    let mut out = Vec::with_capacity(len);
    let mut cur = start.clone();
    for _ in 0..len {
        let next = cur.natural_sum(step);
        out.push(cur);
        cur = next;
    }
    out
}

/// Every pair certified incomparable (an `Unknown` does not count).
pub fn pairwise_incomparable(oracle: &Oracle, elems: &[Ordinal]) -> bool {
    elems.iter().enumerate().all(|(i, a)| {
        elems[i + 1..]
            .iter()
            .all(|b| oracle.leq(a, b).is_no() && oracle.leq(b, a).is_no())
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeCertificate {
    /// The natural-number generators; their gcd is 1.
    pub numeric: Vec<u64>,
    /// The shared `a` of the remaining generators `w^(a+1)*x + w^a*y`.
    pub alpha: Option<Ordinal>,
    pub pairs: Vec<(BigUint, BigUint)>,
}

/// Matches `G = {p_1, ..., p_n} ∪ {w^(a+1)*x_i + w^a*y_i}` with coprime
/// `p_i` and one shared `a`.
pub fn sufficient_shape(g: &GeneratorSet) -> Option<ShapeCertificate> {
    let numeric = g.numeric_part().ok()?;
    if numeric.is_empty() || numeric.iter().fold(0u64, |acc, p| acc.gcd(p)) != 1 {
        return None;
    }
    let mut alpha: Option<Ordinal> = None;
    let mut pairs = Vec::new();
    for x in g.gens().iter().filter(|x| !x.is_finite()) {
        let [hi, lo] = x.terms() else {
            return None;
        };
        if hi.exp != lo.exp.succ() {
            return None;
        }
        match &alpha {
            Some(a) if *a != lo.exp => return None,
            Some(_) => {}
            None => alpha = Some(lo.exp.clone()),
        }
        pairs.push((hi.coeff.clone(), lo.coeff.clone()));
    }
    Some(ShapeCertificate {
        numeric,
        alpha,
        pairs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WpogReason {
    Corollary(ShapeCertificate),
    /// Natural-number generators only.
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WpogStatus {
    IsWpog(WpogReason),
    NotWpog(Vec<Ordinal>),
    Inconclusive { size: usize, coeff_bound: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpogVerdict {
    pub status: WpogStatus,
    pub level_checked: Ordinal,
}

pub fn wpog_verdict(g: &GeneratorSet, config: &WpogConfig) -> Result<WpogVerdict> {
    let level = g.least_level();
    let status = if let Some(cert) = sufficient_shape(g) {
        WpogStatus::IsWpog(WpogReason::Corollary(cert))
    } else if g.is_numeric() {
        WpogStatus::IsWpog(WpogReason::Numeric)
    } else if let NecessaryOutcome::Fail { witness } = necessary_condition(g, config.size)? {
        WpogStatus::NotWpog(witness)
    } else {
        match find_antichain(g, &level, config.size, config.coeff_bound, config.node_budget)? {
            AntichainSearch::Found(witness) => WpogStatus::NotWpog(witness),
            AntichainSearch::NotFound | AntichainSearch::BudgetExhausted => {
                WpogStatus::Inconclusive {
                    size: config.size,
                    coeff_bound: config.coeff_bound,
                }
            }
        }
    };
    Ok(WpogVerdict {
        status,
        level_checked: level,
    })
}

impl fmt::Display for WpogVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            WpogStatus::IsWpog(WpogReason::Corollary(_)) => writeln!(f, "wpog: yes (corollary)"),
            WpogStatus::IsWpog(WpogReason::Numeric) => writeln!(f, "wpog: yes (numeric)"),
            WpogStatus::NotWpog(witness) => {
                writeln!(f, "wpog: no")?;
                for w in witness {
                    writeln!(f, "{w}")?;
                }
                Ok(())
            }
            WpogStatus::Inconclusive { size, coeff_bound } => writeln!(
                f,
                "wpog: inconclusive (no antichain of size {size} within bound {coeff_bound})"
            ),
        }
    }
}
