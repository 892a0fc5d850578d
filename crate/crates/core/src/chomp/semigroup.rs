use std::sync::Arc;

use super::{BitSet, FinitePoset, Label, Player, Position, Quality, Solver, Verdict};
use crate::error::{Error, Result};
use crate::monoid::{GeneratorSet, MonoidView, NumericMonoid};
use crate::ordinal::Ordinal;

/// `S` cut at `upto`, ordered by `a <= b` iff `b - a` is in `S`.
pub fn semigroup_poset(num: &NumericMonoid, upto: u64) -> FinitePoset {
    let members: Vec<u64> = (0..=upto).filter(|&s| num.contains(s)).collect();
    let labels = members.iter().map(|&s| Label::Ord(Ordinal::from(s))).collect();
    FinitePoset::from_fn(labels, |i, j| {
        members[j] >= members[i] && num.contains(members[j] - members[i])
    })
    .expect("a numerical semigroup order is a partial order")
}

fn numeric(g: &GeneratorSet) -> Result<NumericMonoid> {
    if !g.is_numeric() {
        return Err(Error::NotApplicable("the generators must all be natural numbers".into()));
    }
    let num = g.numeric_monoid()?;
    if num.gcd() != 1 {
        return Err(Error::InfiniteGaps(num.gcd()));
    }
    Ok(num)
}

/// `max(4 * (F + largest generator), largest generator)`.
pub fn default_move_bound(num: &NumericMonoid) -> Result<u64> {
    let top = num.minimal_generators().into_iter().max().unwrap_or(1);
    let f = num.frobenius()?;
    Ok((4 * (f + top as i64)).max(top as i64) as u64)
}

fn after_move(poset: &Arc<FinitePoset>, num: &NumericMonoid, a: u64) -> Result<Position> {
    let alive = BitSet::from_indices(
        poset.len(),
        poset.labels().iter().enumerate().filter_map(|(i, l)| {
            let b = match l {
                Label::Ord(o) => o.to_u64().expect("natural label"),
                _ => unreachable!("semigroup posets carry ordinal labels"),
            };
            (b < a || !num.contains(b - a)).then_some(i)
        }),
    );
    Position::with_alive(Arc::clone(poset), alive)
}

/// The exact position left after the first move `a` on `S`. Everything that
/// survives lies below `a + F`.
pub fn semigroup_position_after(g: &GeneratorSet, a: u64) -> Result<Position> {
    let num = numeric(g)?;
    if a == 0 || !num.contains(a) {
        return Err(Error::NotInSemigroup(a.to_string()));
    }
    let f = num.frobenius()?.max(0) as u64;
    let poset = Arc::new(semigroup_poset(&num, a + f));
    after_move(&poset, &num, a)
}

/// Bounds for [`scan_first_moves`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    /// Largest first move tried on `S`; `None` uses [`default_move_bound`].
    pub move_bound: Option<u64>,
    /// Truncation of the view above level one.
    pub coeff_bound: u64,
    pub node_budget: u64,
    pub max_elements: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            move_bound: None,
            coeff_bound: 3,
            node_budget: 2_000_000,
            max_elements: 4096,
        }
    }
}

/// Chomp on `<G>^s` with A moving first.
///
/// At level one with natural generators every first move leaves a finite
/// position, so each is solved exactly and a win for A is exact; a win for
/// B is only established up to the move bound. Elsewhere the game is solved
/// on the coefficient-bounded view and labelled as such.
pub fn scan_first_moves(g: &GeneratorSet, sigma: &Ordinal, cfg: &ScanConfig) -> Result<Verdict> {
    if *sigma == Ordinal::one() && g.is_numeric() {
        let num = numeric(g)?;
        let bound = match cfg.move_bound {
            Some(b) => b,
            None => default_move_bound(&num)?,
        };
        let f = num.frobenius()?.max(0) as u64;
        let poset = Arc::new(semigroup_poset(&num, bound + f));
        let mut solver = Solver::new().with_node_limit(cfg.node_budget);
        for a in (1..=bound).filter(|&a| num.contains(a)) {
            let pos = after_move(&poset, &num, a)?;
            if !solver.mover_wins(&pos)? {
                let index = poset.index_of(&Label::Ord(Ordinal::from(a)));
                return Ok(Verdict {
                    winner: Player::A,
                    winning_move: Some(Label::Ord(Ordinal::from(a))),
                    winning_index: index,
                    quality: Quality::Exact,
                });
            }
        }
        return Ok(Verdict {
            winner: Player::B,
            winning_move: None,
            winning_index: None,
            quality: Quality::BoundedScan(bound),
        });
    }
    let view = MonoidView::enumerate(g, sigma, cfg.coeff_bound)?;
    let poset = Arc::new(FinitePoset::from_view(&view, cfg.max_elements)?);
    let verdict = Solver::new()
        .with_node_limit(cfg.node_budget)
        .solve(&Position::new(poset))?;
    Ok(verdict.with_quality(Quality::BoundedScan(cfg.coeff_bound)))
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap;

    use super::*;

    fn gens(s: &str) -> GeneratorSet {
        GeneratorSet::parse_list(s).unwrap()
    }

    fn alive_values(p: &Position) -> Vec<u64> {
        p.alive_labels()
            .into_iter()
            .map(|l| match l {
                Label::Ord(o) => o.to_u64().unwrap(),
                _ => unreachable!(),
            })
            .collect()
    }

    /// Members of `S` up to 40 not above `a`.
    fn brute_after(gens: &[u64], a: u64) -> Vec<u64> {
        let mut member = [false; 41];
        member[0] = true;
        for n in 1..=40 {
            member[n] = gens.iter().any(|&g| g as usize <= n && member[n - g as usize]);
        }
        (0..=40u64)
            .filter(|&b| member[b as usize] && !(b >= a && member[(b - a) as usize]))
            .collect()
    }

    #[test]
    fn positions_after_first_move() {
        let g = gens("3,5");
        assert_eq!(
            alive_values(&semigroup_position_after(&g, 8).unwrap()),
            vec![0, 3, 5, 6, 9, 10, 12, 15]
        );
        for a in [3, 5, 6, 8, 9, 10, 11, 20] {
            let got = alive_values(&semigroup_position_after(&g, a).unwrap());
            assert_eq!(got, brute_after(&[3, 5], a), "a = {a}");
        }
        assert_eq!(alive_values(&semigroup_position_after(&gens("2,3"), 2).unwrap()), vec![0, 3]);
        assert_eq!(
            semigroup_position_after(&g, 7),
            Err(Error::NotInSemigroup("7".into()))
        );
        assert!(semigroup_position_after(&g, 0).is_err());
        assert_eq!(semigroup_position_after(&gens("2,4"), 2), Err(Error::InfiniteGaps(2)));
        assert!(matches!(
            semigroup_position_after(&gens("w+1"), 2),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn position_sizes_past_frobenius() {
        let g = gens("3,5");
        for a in [8, 9, 10, 12, 15] {
            let below = (0..a).filter(|&b| brute_after(&[3, 5], 41).contains(&b)).count();
            assert_eq!(semigroup_position_after(&g, a).unwrap().len(), below + 4);
        }
    }

    fn naive_wins(alive: Vec<u64>, gens: &[u64], memo: &mut HashMap<Vec<u64>, bool>) -> bool {
        if alive.len() == 1 {
            return false;
        }
        if let Some(&v) = memo.get(&alive) {
            return v;
        }
        let member = |n: u64| brute_member(gens, n);
        let v = alive[1..].iter().any(|&x| {
            let child = alive.iter().copied().filter(|&b| !(b >= x && member(b - x))).collect();
            !naive_wins(child, gens, memo)
        });
        memo.insert(alive, v);
        v
    }

    fn brute_member(gens: &[u64], n: u64) -> bool {
        n == 0 || gens.iter().any(|&g| g <= n && brute_member(gens, n - g))
    }

    #[test]
    fn scans_agree_with_naive_game() {
        for (list, gs) in [
            ("2,3", vec![2u64, 3]),
            ("3,5", vec![3, 5]),
            ("3,4,5", vec![3, 4, 5]),
            ("3,4", vec![3, 4]),
            ("2,5", vec![2, 5]),
        ] {
            let cfg = ScanConfig {
                move_bound: Some(20),
                ..ScanConfig::default()
            };
            let v = scan_first_moves(&gens(list), &Ordinal::one(), &cfg).unwrap();
            let f = 2 * gs.iter().max().unwrap() * gs.iter().max().unwrap();
            let mut memo = HashMap::new();
            let first = (1..=20u64).filter(|&a| brute_member(&gs, a)).find(|&a| {
                let after = (0..=a + f)
                    .filter(|&b| brute_member(&gs, b) && !(b >= a && brute_member(&gs, b - a)))
                    .collect();
                !naive_wins(after, &gs, &mut memo)
            });
            match first {
                Some(a) => {
                    assert_eq!(v.winner, Player::A, "{list}");
                    assert_eq!(v.winning_move, Some(Label::Ord(Ordinal::from(a))), "{list}");
                }
                None => {
                    assert_eq!(v.winner, Player::B, "{list}");
                    assert_eq!(v.quality, Quality::BoundedScan(20));
                }
            }
        }
    }

    #[test]
    fn level_one_scans() {
        let one = Ordinal::one();
        let v = scan_first_moves(&gens("1"), &one, &ScanConfig::default()).unwrap();
        assert_eq!(v.winner, Player::A);
        assert_eq!(v.winning_move, Some(Label::Ord(Ordinal::from(1u64))));
        assert_eq!(v.quality, Quality::Exact);

        let num = gens("2,3").numeric_monoid().unwrap();
        assert_eq!(default_move_bound(&num).unwrap(), 16);
        assert_eq!(default_move_bound(&gens("1").numeric_monoid().unwrap()).unwrap(), 1);
    }

    #[test]
    fn level_two_truncation() {
        let cfg = ScanConfig {
            coeff_bound: 2,
            ..ScanConfig::default()
        };
        let v = scan_first_moves(&gens("3,4,5"), &Ordinal::from(2u64), &cfg).unwrap();
        assert_eq!(v.winner, Player::A);
        assert_eq!(v.quality, Quality::BoundedScan(2));
        assert_eq!(v.winning_move, Some(Label::Ord(Ordinal::from(3u64))));
    }
}
