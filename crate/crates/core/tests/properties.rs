use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;

use ordchomp::chomp::random::random_poset;
use ordchomp::chomp::{semigroup_position_after, FinitePoset, Label, Player, Position, Solver};
use ordchomp::monoid::{recompose, Decision, GeneratorSet, MonoidView, Oracle};
use ordchomp::{Ordinal, Term};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ordinal(depth: u32) -> BoxedStrategy<Ordinal> {
    if depth == 0 {
        return Just(Ordinal::zero()).boxed();
    }
    prop::collection::vec((ordinal(depth - 1), 1u32..=9), 0..=3)
        .prop_map(|mut terms| {
            terms.sort_by(|a, b| b.0.cmp(&a.0));
            terms.dedup_by(|a, b| a.0 == b.0);
            let terms = terms
                .into_iter()
                .map(|(exp, c)| Term {
                    exp,
                    coeff: BigUint::from(c),
                })
                .collect();
            Ordinal::from_normal_terms(terms).unwrap()
        })
        .boxed()
}

/// The part of `x` below `w^bound`.
fn below(x: &Ordinal, bound: &Ordinal) -> Ordinal {
    Ordinal::from_normal_terms(x.terms().iter().filter(|t| t.exp < *bound).cloned().collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn natural_sum_laws(a in ordinal(3), b in ordinal(3), c in ordinal(3)) {
        prop_assert_eq!(a.natural_sum(&b), b.natural_sum(&a));
        prop_assert_eq!(a.natural_sum(&b).natural_sum(&c), a.natural_sum(&b.natural_sum(&c)));
        prop_assert_eq!(a.natural_sum(&Ordinal::zero()), a.clone());
    }

    #[test]
    fn natural_product_laws(a in ordinal(3), b in ordinal(3), c in ordinal(3)) {
        prop_assert_eq!(a.natural_product(&b), b.natural_product(&a));
        prop_assert_eq!(a.natural_product(&b).natural_product(&c), a.natural_product(&b.natural_product(&c)));
        prop_assert_eq!(
            a.natural_product(&b.natural_sum(&c)),
            a.natural_product(&b).natural_sum(&a.natural_product(&c))
        );
        prop_assert_eq!(a.natural_product(&Ordinal::one()), a.clone());
    }

    #[test]
    fn closure_under_natural_operations(a in ordinal(3), b in ordinal(3), s in ordinal(2)) {
        let (x, y) = (below(&a, &s), below(&b, &s));
        prop_assert!(x.natural_sum(&y) < Ordinal::omega_power(s.clone()));
        let e = Ordinal::omega_power(s);
        let (x, y) = (below(&a, &e), below(&b, &e));
        prop_assert!(x.natural_product(&y) < Ordinal::omega_power(e));
    }

    #[test]
    fn subtraction_round_trip(a in ordinal(3), b in ordinal(3), c in ordinal(3)) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert_eq!(lo.ordinary_add(&hi.subtract(&lo).unwrap()), hi);
        let sum = c.ordinary_add(&lo);
        prop_assert_eq!(c.ordinary_add(&sum.subtract(&c).unwrap()), sum);
    }

    #[test]
    fn natural_sum_is_strictly_monotone(a in ordinal(3), b in ordinal(3), c in ordinal(3)) {
        prop_assume!(a != b);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assert!(lo.natural_sum(&c) < hi.natural_sum(&c));
    }

    #[test]
    fn comparison_is_a_total_order(a in ordinal(3), b in ordinal(3), c in ordinal(3)) {
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        prop_assert_eq!(a == b, a.cmp(&b).is_eq());
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
    }

    #[test]
    fn print_parse_round_trip(a in ordinal(3)) {
        prop_assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a);
    }
}

const VIEWS: [(&str, u64, u64); 6] = [
    ("3,5", 1, 6),
    ("2,3", 1, 8),
    ("w+1", 2, 3),
    ("2,w+1", 2, 2),
    ("3,w^2+w*2", 3, 1),
    ("w*2+1,w+3", 2, 2),
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn monoid_order_axioms(k in 0..VIEWS.len(), seed in any::<u64>()) {
        let (gens, sigma, bound) = VIEWS[k];
        let g = GeneratorSet::parse_list(gens).unwrap();
        let view = MonoidView::enumerate(&g, &Ordinal::from(sigma), bound).unwrap();
        prop_assert!(view.len() <= 200);
        let n = view.len();
        let pick = |s: u64| (s % n as u64) as usize;
        let (i, j, l) = (pick(seed), pick(seed >> 16), pick(seed >> 32));
        let leq = |x, y| view.leq_index(x, y);
        prop_assert_eq!(leq(i, i), Decision::Yes);
        if i != j {
            prop_assert!(!(leq(i, j).is_yes() && leq(j, i).is_yes()));
        }
        if leq(i, j).is_yes() && leq(j, l).is_yes() {
            prop_assert_eq!(leq(i, l), Decision::Yes);
        }
        let (a, b) = (&view.elements()[i], &view.elements()[j]);
        prop_assert_eq!(view.contains(&a.natural_sum(b)), Decision::Yes);
        prop_assert_eq!(recompose(&view.decompose(a).unwrap()), a.clone());
    }

    #[test]
    fn level_one_order_is_divisibility(gens in prop::collection::vec(2u64..12, 1..4), a in 0u64..60, b in 0u64..60) {
        let list = gens.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let g = GeneratorSet::parse_list(&list).unwrap();
        let oracle = Oracle::new(&g, &Ordinal::one()).unwrap();
        let mut member = [false; 61];
        member[0] = true;
        for x in 1..=60usize {
            member[x] = gens.iter().any(|&p| p as usize <= x && member[x - p as usize]);
        }
        prop_assert_eq!(oracle.contains(&Ordinal::from(a)).is_yes(), member[a as usize]);
        let expected = a == b || (a < b && member[(b - a) as usize]);
        prop_assert_eq!(oracle.leq(&Ordinal::from(a), &Ordinal::from(b)).is_yes(), expected);
    }

    #[test]
    fn semigroup_position_sizes(gens in prop::collection::vec(2u64..9, 2..4), a in 1u64..40) {
        let list = gens.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let g = GeneratorSet::parse_list(&list).unwrap();
        let num = g.numeric_monoid().unwrap();
        prop_assume!(num.gcd() == 1 && num.contains(a));
        let gaps = num.gaps().unwrap();
        let pos = semigroup_position_after(&g, a).unwrap();
        let below = (0..a).filter(|&b| num.contains(b)).count();
        let reachable = gaps.iter().filter(|&&q| num.contains(a + q)).count();
        prop_assert_eq!(pos.len(), below + reachable);
        if a as i64 > num.frobenius().unwrap() {
            prop_assert_eq!(pos.len(), below + gaps.len());
        }
    }
}

fn poset(seed: u64, max: usize) -> FinitePoset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 1 + (seed % max as u64) as usize;
    random_poset(&mut rng, n, 0.2 + ((seed >> 8) % 5) as f64 / 10.0)
}

fn winner(p: FinitePoset) -> Player {
    Solver::new().solve(&Position::new(Arc::new(p))).unwrap().winner
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn winning_moves_leave_losing_positions(seed in any::<u64>()) {
        let pos = Position::new(Arc::new(poset(seed, 10)));
        let mut solver = Solver::new();
        let v = solver.solve(&pos).unwrap();
        prop_assert_eq!(v.winning_index.is_some(), v.winner == Player::A);
        if let Some(x) = v.winning_index {
            let next = pos.play(x).unwrap();
            prop_assert!(!solver.mover_wins(&next).unwrap());
            // no smaller move also wins
            for y in pos.alive().iter().filter(|&y| y != pos.poset().min_index() && y < x) {
                prop_assert!(solver.mover_wins(&pos.play(y).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn solving_is_deterministic(seed in any::<u64>()) {
        let pos = Position::new(Arc::new(poset(seed, 10)));
        let a = Solver::new().solve(&pos).unwrap();
        let b = Solver::new().with_iso_limit(0).solve(&pos).unwrap();
        let mut shared = Solver::new();
        let c = shared.solve(&pos).unwrap();
        let d = shared.solve(&pos).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(&a, &c);
        prop_assert_eq!(&c, &d);
    }

    #[test]
    fn relabelling_keeps_canonical_keys(seed in any::<u64>(), shift in 1usize..10) {
        let p = poset(seed, 9);
        let n = p.len();
        let perm: Vec<usize> = (0..n).map(|i| (i + shift) % n).collect();
        let mut inv = vec![0; n];
        for (i, &j) in perm.iter().enumerate() {
            inv[j] = i;
        }
        let q = FinitePoset::from_fn((0..n).map(Label::Atom).collect(), |i, j| p.leq(inv[i], inv[j])).unwrap();
        let kp = Position::new(Arc::new(p)).canonical_key();
        let kq = Position::new(Arc::new(q.clone())).canonical_key();
        prop_assert_eq!(kp, kq);
    }

    #[test]
    fn twins_are_second_player_wins(seed in any::<u64>()) {
        prop_assert_eq!(winner(FinitePoset::twin(&poset(seed, 7))), Player::B);
    }

    #[test]
    fn products_keep_first_player_wins(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (p, t) = (poset(s1, 5), poset(s2, 5));
        if winner(t.clone()) == Player::A {
            prop_assert_eq!(winner(FinitePoset::lex_product(&p, &t)), Player::A);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn first_player_wins_persist_in_higher_powers(seed in any::<u64>()) {
        let p = poset(seed, 3);
        let wins: Vec<Player> = (1..=3)
            .map(|n| winner(FinitePoset::power(&p, n, 64).unwrap()))
            .collect();
        for m in 0..wins.len() {
            if wins[m] == Player::A {
                prop_assert!(wins[m..].iter().all(|&w| w == Player::A), "{:?}", wins);
            }
        }
    }
}
