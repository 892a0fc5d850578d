//! The acceptance checks, runnable from the library, the test suite and the
//! command line.

use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chomp::random::{random_poset, random_poset_with_max};
use crate::chomp::{
    exhaustive_adversary, mirror_agent, scan_first_moves, semigroup_position_after, FinitePoset,
    Label, Player, Position, ScanConfig, Solver,
};
use crate::cli;
use crate::monoid::{GeneratorSet, NumericMonoid, Oracle};
use crate::ordinal::{Ordinal, Term};
use crate::wpog::{find_antichain, pairwise_incomparable, AntichainSearch, DEFAULT_COEFF_BOUND, DEFAULT_SIZE};

/// Criterion identifiers in report order.
pub const CRITERIA: [u8; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10];

pub const LAW_TIME_LIMIT: Duration = Duration::from_secs(5);
pub const SHADOW_TIME_LIMIT: Duration = Duration::from_secs(60);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelftestConfig {
    pub seed: u64,
    pub ordinal_cases: usize,
    pub twin_cases: usize,
    pub max_twin_size: usize,
    pub strategy_cases: usize,
    pub max_poset_size: usize,
    pub product_cases: usize,
    pub max_factor_size: usize,
    pub mirror_coeff_bound: u64,
}

impl SelftestConfig {
    pub fn full(seed: u64) -> Self {
        SelftestConfig {
            seed,
            ordinal_cases: 1000,
            twin_cases: 100,
            max_twin_size: 7,
            strategy_cases: 100,
            max_poset_size: 9,
            product_cases: 50,
            max_factor_size: 5,
            mirror_coeff_bound: 6,
        }
    }

    pub fn quick(seed: u64) -> Self {
        SelftestConfig {
            ordinal_cases: 200,
            twin_cases: 20,
            strategy_cases: 20,
            product_cases: 10,
            mirror_coeff_bound: 2,
            ..Self::full(seed)
        }
    }

    fn rng(&self, id: u8) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(1_000_003).wrapping_add(u64::from(id)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} [{}] {}: {}", self.id, self.name, self.detail)
    }
}

pub fn name(id: u8) -> &'static str {
    match id {
        1 => "natural sum and product laws",
        2 => "subtraction round trip",
        3 => "non-wpog witnesses",
        4 => "twin posets are second-player wins",
        5 => "posets with a maximum are first-player wins",
        6 => "lexicographic products keep first-player wins",
        7 => "first-player wins lift from level one to level two",
        8 => "positions after a first move",
        9 => "mirror strategy on level two",
        10 => "wpog certificates",
        _ => "unknown criterion",
    }
}

pub fn run_criterion(id: u8, cfg: &SelftestConfig) -> CriterionReport {
    let (passed, detail) = match id {
        1 => laws(cfg),
        2 => subtraction(cfg),
        3 => witnesses(),
        4 => twins(cfg),
        5 => strategy_stealing(cfg),
        6 => products(cfg),
        7 => downward_shadow(),
        8 => positions_after(),
        9 => mirror(cfg),
        10 => certificates(),
        _ => (false, "no such criterion".to_string()),
    };
    CriterionReport {
        id,
        name: name(id),
        passed,
        detail,
    }
}

pub fn run_all(cfg: &SelftestConfig) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|&id| run_criterion(id, cfg)).collect()
}

/// A random ordinal of nesting depth at most `depth` with up to three terms
/// per level and coefficients in `1..=9`.
pub fn random_ordinal<R: Rng + ?Sized>(rng: &mut R, depth: usize) -> Ordinal {
    if depth == 0 {
        return Ordinal::zero();
    }
    let mut exps: Vec<Ordinal> = (0..rng.gen_range(0..=3))
        .map(|_| random_ordinal(rng, depth - 1))
        .collect();
    exps.sort_by(|a, b| b.cmp(a));
    exps.dedup();
    let terms = exps
        .into_iter()
        .map(|exp| Term {
            exp,
            coeff: BigUint::from(rng.gen_range(1..=9u32)),
        })
        .collect();
    Ordinal::from_normal_terms(terms).expect("strictly decreasing exponents")
}

fn laws(cfg: &SelftestConfig) -> (bool, String) {
    let mut rng = cfg.rng(1);
    let start = Instant::now();
    let mut failures = 0;
    for _ in 0..cfg.ordinal_cases {
        let [a, b, c] = [0; 3].map(|_| random_ordinal(&mut rng, 3));
        let ok = a.natural_sum(&b) == b.natural_sum(&a)
            && a.natural_sum(&b).natural_sum(&c) == a.natural_sum(&b.natural_sum(&c))
            && a.natural_product(&b) == b.natural_product(&a)
            && a.natural_product(&b).natural_product(&c) == a.natural_product(&b.natural_product(&c))
            && a.natural_product(&b.natural_sum(&c))
                == a.natural_product(&b).natural_sum(&a.natural_product(&c));
        failures += usize::from(!ok);
    }
    let elapsed = start.elapsed();
    (
        failures == 0 && elapsed < LAW_TIME_LIMIT,
        format!(
            "{} triples, {failures} failures, {:.2}s (limit {}s)",
            cfg.ordinal_cases,
            elapsed.as_secs_f64(),
            LAW_TIME_LIMIT.as_secs()
        ),
    )
}

fn subtraction(cfg: &SelftestConfig) -> (bool, String) {
    let mut rng = cfg.rng(2);
    let mut failures = 0;
    for k in 0..cfg.ordinal_cases {
        let x = random_ordinal(&mut rng, 3);
        let y = random_ordinal(&mut rng, 3);
        // half the pairs are built as a + c so the difference is not absorbed
        let (a, b) = if k % 2 == 0 {
            (x.clone().min(y.clone()), x.max(y))
        } else {
            let b = x.ordinary_add(&y);
            (x, b)
        };
        let ok = match b.subtract(&a) {
            Ok(d) => a.ordinary_add(&d) == b,
            Err(_) => false,
        };
        failures += usize::from(!ok);
    }
    (failures == 0, format!("{} pairs, {failures} failures", cfg.ordinal_cases))
}

fn wpog_lines(gens: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(
        ["ordchomp", "wpog", "--gens", gens],
        &mut std::io::empty(),
        &mut out,
        &mut err,
    );
    if code != 0 {
        return Err(String::from_utf8_lossy(&err).trim().to_string());
    }
    Ok(String::from_utf8_lossy(&out).lines().map(str::to_string).collect())
}

fn parse_all(items: &[String]) -> Option<Vec<Ordinal>> {
    items.iter().map(|s| s.parse().ok()).collect()
}

fn check_witness(gens: &str, expected: &[Ordinal]) -> Result<usize, String> {
    let lines = wpog_lines(gens)?;
    if lines.first().map(String::as_str) != Some("wpog: no") {
        return Err(format!("{gens}: got {:?}", lines.first()));
    }
    let witness = parse_all(&lines[1..]).ok_or_else(|| format!("{gens}: unreadable witness"))?;
    if witness.len() < expected.len() || witness[..expected.len()] != *expected {
        return Err(format!("{gens}: witness starts {:?}", &lines[1..]));
    }
    let g = GeneratorSet::parse_list(gens).map_err(|e| e.to_string())?;
    let oracle = Oracle::new(&g, &g.least_level()).map_err(|e| e.to_string())?;
    let members = witness.iter().all(|w| oracle.contains(w).is_yes());
    if !members || !pairwise_incomparable(&oracle, &witness) {
        return Err(format!("{gens}: witness fails the order check"));
    }
    Ok(witness.len())
}

fn witnesses() -> (bool, String) {
    let a1: Vec<Ordinal> = (1..=4u64)
        .map(|n| Ordinal::omega().scale(&n.into()).ordinary_add(&Ordinal::from(n)))
        .collect();
    let a3: Vec<Ordinal> = (0..=2u64)
        .map(|n| {
            let s = format!("w^2+w*{}+1", 1 + 2 * n);
            s.parse().expect("valid")
        })
        .collect();
    match (check_witness("w+1", &a1), check_witness("2,3,w^2+w+1", &a3)) {
        (Ok(n1), Ok(n3)) => (
            true,
            format!("w+1: {n1} incomparable elements, 2,3,w^2+w+1: {n3} incomparable elements"),
        ),
        (Err(e), _) | (_, Err(e)) => (false, e),
    }
}

fn random_size<R: Rng + ?Sized>(rng: &mut R, lo: usize, hi: usize) -> (usize, f64) {
    (rng.gen_range(lo..=hi), rng.gen_range(0.15..0.7))
}

fn solve(solver: &mut Solver, p: FinitePoset) -> Player {
    solver
        .solve(&Position::new(Arc::new(p)))
        .expect("unbounded solver")
        .winner
}

fn twins(cfg: &SelftestConfig) -> (bool, String) {
    let mut rng = cfg.rng(4);
    let mut solver = Solver::new();
    let mut b_wins = 0;
    for _ in 0..cfg.twin_cases {
        let (n, d) = random_size(&mut rng, 1, cfg.max_twin_size);
        let t = random_poset(&mut rng, n, d);
        b_wins += usize::from(solve(&mut solver, FinitePoset::twin(&t)) == Player::B);
    }
    (
        b_wins == cfg.twin_cases,
        format!("B wins {b_wins}/{} twins", cfg.twin_cases),
    )
}

fn strategy_stealing(cfg: &SelftestConfig) -> (bool, String) {
    let mut rng = cfg.rng(5);
    let mut solver = Solver::new();
    let mut a_wins = 0;
    for _ in 0..cfg.strategy_cases {
        let (n, d) = random_size(&mut rng, 2, cfg.max_poset_size);
        let p = random_poset_with_max(&mut rng, n, d);
        a_wins += usize::from(solve(&mut solver, p) == Player::A);
    }
    (
        a_wins == cfg.strategy_cases,
        format!("A wins {a_wins}/{} posets", cfg.strategy_cases),
    )
}

fn products(cfg: &SelftestConfig) -> (bool, String) {
    let mut rng = cfg.rng(6);
    let mut solver = Solver::new();
    let mut premises = 0;
    let mut violations = 0;
    for _ in 0..cfg.product_cases {
        let (np, dp) = random_size(&mut rng, 1, cfg.max_factor_size);
        let (nt, dt) = random_size(&mut rng, 1, cfg.max_factor_size);
        let p = random_poset(&mut rng, np, dp);
        let t = random_poset(&mut rng, nt, dt);
        if solve(&mut solver, t.clone()) == Player::A {
            premises += 1;
            if solve(&mut solver, FinitePoset::lex_product(&p, &t)) != Player::A {
                violations += 1;
            }
        }
    }
    (
        violations == 0,
        format!(
            "{} pairs, {premises} with A winning on the second factor, {violations} violations",
            cfg.product_cases
        ),
    )
}

/// For each semigroup: the level-one verdict and, when A wins there, the
/// verdict on a level-two truncation holding the whole position after the
/// winning move.
fn downward_shadow() -> (bool, String) {
    let start = Instant::now();
    let mut violations = 0;
    let mut notes = Vec::new();
    for gens in ["3,5", "2,3", "3,4,5"] {
        let g = GeneratorSet::parse_list(gens).expect("valid");
        let one = match scan_first_moves(&g, &Ordinal::one(), &ScanConfig::default()) {
            Ok(v) => v,
            Err(e) => return (false, format!("<{gens}>: {e}")),
        };
        let Some(Label::Ord(a)) = one.winning_move.clone().filter(|_| one.winner == Player::A)
        else {
            notes.push(format!("<{gens}> level 1: B ({}), nothing to lift", one.quality));
            continue;
        };
        let num = g.numeric_monoid().expect("numeric");
        let reach = a.to_u64().expect("natural") + num.frobenius().expect("gcd 1").max(0) as u64;
        let small = *num.minimal_generators().first().expect("generators");
        let cfg = ScanConfig {
            coeff_bound: reach.div_ceil(small).max(1),
            ..ScanConfig::default()
        };
        match scan_first_moves(&g, &Ordinal::from(2u64), &cfg) {
            Ok(two) => {
                if two.winner != Player::A {
                    violations += 1;
                }
                notes.push(format!(
                    "<{gens}> level 1: A by {a}, level 2: {} ({})",
                    two.winner, two.quality
                ));
            }
            Err(e) => {
                violations += 1;
                notes.push(format!("<{gens}> level 2: {e}"));
            }
        }
    }
    let elapsed = start.elapsed();
    (
        violations == 0 && elapsed < SHADOW_TIME_LIMIT,
        format!(
            "{}; {violations} violations, {:.2}s (limit {}s)",
            notes.join("; "),
            elapsed.as_secs_f64(),
            SHADOW_TIME_LIMIT.as_secs()
        ),
    )
}

fn brute_members(gens: &[u64], upto: u64) -> Vec<bool> {
    let mut member = vec![false; upto as usize + 1];
    member[0] = true;
    for n in 1..=upto as usize {
        member[n] = gens.iter().any(|&g| g as usize <= n && member[n - g as usize]);
    }
    member
}

fn positions_after() -> (bool, String) {
    let g = GeneratorSet::parse_list("3,5").expect("valid");
    let member = brute_members(&[3, 5], 40);
    let mut mismatches = Vec::new();
    for a in [3u64, 5, 6, 8, 9] {
        let expected: Vec<u64> = (0..=40u64)
            .filter(|&b| member[b as usize] && !(b >= a && member[(b - a) as usize]))
            .collect();
        let got: Option<Vec<u64>> = semigroup_position_after(&g, a).ok().map(|p| {
            p.alive_labels()
                .into_iter()
                .filter_map(|l| match l {
                    Label::Ord(o) => o.to_u64(),
                    _ => None,
                })
                .collect()
        });
        if got.as_ref() != Some(&expected) {
            mismatches.push(format!("a={a}: got {got:?}, expected {expected:?}"));
        }
    }
    if mismatches.is_empty() {
        (true, "<3,5> first moves 3,5,6,8,9 match S∩[0,40] minus the up-set".into())
    } else {
        (false, mismatches.join("; "))
    }
}

/// Numerical semigroups of maximal embedding dimension with multiplicity
/// `n` and other generators below `3n`, in lexicographic order.
fn med_candidates(max_n: u64) -> Vec<Vec<u64>> {
    fn choose(from: &[u64], k: usize, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if k == 0 {
            out.push(acc.clone());
            return;
        }
        for (i, &x) in from.iter().enumerate() {
            acc.push(x);
            choose(&from[i + 1..], k - 1, acc, out);
            acc.pop();
        }
    }
    let mut found = Vec::new();
    for n in 2..=max_n {
        let pool: Vec<u64> = (n + 1..3 * n).collect();
        let mut sets = Vec::new();
        choose(&pool, n as usize - 1, &mut Vec::new(), &mut sets);
        for rest in sets {
            let gens: Vec<u64> = std::iter::once(n).chain(rest).collect();
            let Ok(num) = NumericMonoid::new(&gens) else { continue };
            if num.gcd() == 1 && num.minimal_generators() == gens && num.has_max_embedding_dimension() {
                found.push(gens);
            }
        }
    }
    found
}

fn mirror(cfg: &SelftestConfig) -> (bool, String) {
    let scan = ScanConfig::default();
    let mut candidate = None;
    for gens in med_candidates(4) {
        let list = gens.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let g = GeneratorSet::parse_list(&list).expect("valid");
        if let Ok(v) = scan_first_moves(&g, &Ordinal::one(), &scan) {
            if v.winner == Player::B {
                candidate = Some((list, g, v.quality));
                break;
            }
        }
    }
    let Some((list, g, quality)) = candidate else {
        return (false, "no candidate with B winning at level one".into());
    };
    let mut agent = match mirror_agent(&g, cfg.mirror_coeff_bound, &scan) {
        Ok(a) => a,
        Err(e) => return (false, format!("<{list}>: {e}")),
    };
    let size = agent.poset().len();
    let report = exhaustive_adversary(&mut agent);
    let mut detail = format!(
        "<{list}> (B at level 1, {quality}), {size} elements at coefficient bound {}, {} positions, {} losses, {} fallbacks",
        cfg.mirror_coeff_bound,
        report.positions,
        report.losses,
        agent.fallbacks()
    );
    if let Some(line) = &report.first_loss {
        detail.push_str(&format!("; {line}"));
    }
    (report.losses == 0, detail)
}

fn certificates() -> (bool, String) {
    let mut notes = Vec::new();
    let mut ok = true;
    for gens in ["3,5", "2,3,w^2*4+w*7"] {
        let lines = match wpog_lines(gens) {
            Ok(l) => l,
            Err(e) => return (false, e),
        };
        let head = lines.first().cloned().unwrap_or_default();
        let g = GeneratorSet::parse_list(gens).expect("valid");
        let level = g.least_level();
        let search = find_antichain(&g, &level, DEFAULT_SIZE, DEFAULT_COEFF_BOUND, 10_000_000);
        let concurs = matches!(search, Ok(AntichainSearch::NotFound));
        ok &= head == "wpog: yes (corollary)" && concurs;
        notes.push(format!(
            "{gens}: {head}; antichain search at level {level} bound {DEFAULT_COEFF_BOUND}: {}",
            match search {
                Ok(AntichainSearch::NotFound) => "none".to_string(),
                Ok(other) => format!("{other:?}"),
                Err(e) => e.to_string(),
            }
        ));
    }
    (ok, notes.join("; "))
}
