use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{biguint_to_u64, GeneratorSet, Oracle};
use crate::error::{Error, Result};
use crate::ordinal::{Ordinal, Term};

pub const DEFAULT_MAX_ELEMENTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumLimits {
    /// Cap on the number of listed elements (and on intermediate tables).
    pub max_elements: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits {
            max_elements: DEFAULT_MAX_ELEMENTS,
        }
    }
}

/// Three-valued answer for questions the bounded view may not settle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decision {
    Yes,
    No,
    Unknown,
}

impl Decision {
    pub fn is_yes(self) -> bool {
        self == Decision::Yes
    }

    pub fn is_no(self) -> bool {
        self == Decision::No
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Decision::Yes => "true",
            Decision::No => "false",
            Decision::Unknown => "unknown",
        }
    }
}

/// The members of `<G>^s` whose multipliers have every coefficient at most
/// `coeff_bound`, listed in ascending ordinal order.
///
/// Every listed element has its exponents drawn from a fixed finite `basis`,
/// so elements are also stored as coefficient vectors over that basis.
/// Lexicographic order on those vectors is the ordinal order.
#[derive(Debug, Clone)]
pub struct MonoidView {
    gamma: GeneratorSet,
    sigma: Ordinal,
    coeff_bound: u64,
    ceiling: Ordinal,
    basis: Vec<Ordinal>,
    coords: Vec<Box<[u64]>>,
    elements: Vec<Ordinal>,
    index: HashMap<Box<[u64]>, usize>,
    oracle: Oracle,
}

impl MonoidView {
    pub fn enumerate(gamma: &GeneratorSet, sigma: &Ordinal, coeff_bound: u64) -> Result<Self> {
        Self::enumerate_with(gamma, sigma, coeff_bound, EnumLimits::default())
    }

    pub fn enumerate_with(
        gamma: &GeneratorSet,
        sigma: &Ordinal,
        coeff_bound: u64,
        limits: EnumLimits,
    ) -> Result<Self> {
        if coeff_bound == 0 {
            return Err(Error::NotApplicable("coefficient bound must be positive".into()));
        }
        let cap = limits.max_elements;
        let ceiling = Ordinal::omega_power(sigma.clone());
        if let Some(g) = gamma.gens().iter().find(|g| **g >= ceiling) {
            return Err(Error::InvalidGenerators(format!(
                "generator {g} is not below w^({sigma})"
            )));
        }

        let universe = exponent_universe(sigma, coeff_bound, cap)?;
        let mut products: Vec<Vec<Ordinal>> = Vec::with_capacity(gamma.gens().len());
        for g in gamma.gens() {
            let top = g.leading_exp();
            let exps: Vec<&Ordinal> = universe
                .iter()
                .filter(|d| d.natural_sum(&top) < *sigma)
                .collect();
            products.push(
                multipliers(&exps, coeff_bound, cap)?
                    .iter()
                    .map(|m| m.natural_product(g))
                    .collect(),
            );
        }

        let mut basis: Vec<Ordinal> = products
            .iter()
            .flatten()
            .flat_map(|p| p.terms().iter().map(|t| t.exp.clone()))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        basis.sort_by(|a, b| b.cmp(a));
        let position: HashMap<&Ordinal, usize> =
            basis.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let dim = basis.len();

        let mut acc: HashSet<Box<[u64]>> = HashSet::from([vec![0u64; dim].into_boxed_slice()]);
        for list in &products {
            let vecs = list
                .iter()
                .map(|p| to_coords_with(&position, dim, p))
                .collect::<Result<Vec<_>>>()?;
            let mut next: HashSet<Box<[u64]>> = HashSet::with_capacity(acc.len());
            for a in &acc {
                for v in &vecs {
                    let sum = a
                        .iter()
                        .zip(v.iter())
                        .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow("coefficient".into())))
                        .collect::<Result<Box<[u64]>>>()?;
                    next.insert(sum);
                    if next.len() > cap {
                        return Err(Error::BoundTooLarge { cap });
                    }
                }
            }
            acc = next;
        }

        let mut coords: Vec<Box<[u64]>> = acc.into_iter().collect();
        coords.sort();
        let elements = coords.iter().map(|c| from_coords(&basis, c)).collect();
        let index = coords
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        Ok(MonoidView {
            gamma: gamma.clone(),
            sigma: sigma.clone(),
            coeff_bound,
            ceiling,
            basis,
            coords,
            elements,
            index,
            oracle: Oracle::new(gamma, sigma)?,
        })
    }

    pub fn gamma(&self) -> &GeneratorSet {
        &self.gamma
    }

    pub fn sigma(&self) -> &Ordinal {
        &self.sigma
    }

    pub fn coeff_bound(&self) -> u64 {
        self.coeff_bound
    }

    pub fn elements(&self) -> &[Ordinal] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Exponents spanning every listed element, descending.
    pub fn basis(&self) -> &[Ordinal] {
        &self.basis
    }

    pub fn coords(&self, i: usize) -> &[u64] {
        &self.coords[i]
    }

    pub fn index_of(&self, beta: &Ordinal) -> Option<usize> {
        self.to_coords(beta).and_then(|c| self.index.get(&c).copied())
    }

    pub fn index_of_coords(&self, coords: &[u64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Coefficient vector of `beta` over the basis, if it fits.
    pub fn to_coords(&self, beta: &Ordinal) -> Option<Box<[u64]>> {
        let mut out = vec![0u64; self.basis.len()];
        let mut k = 0;
        for t in beta.terms() {
            while k < self.basis.len() && self.basis[k] > t.exp {
                k += 1;
            }
            if k == self.basis.len() || self.basis[k] != t.exp {
                return None;
            }
            out[k] = t.coeff.to_u64()?;
        }
        Some(out.into_boxed_slice())
    }

    pub fn from_coords(&self, coords: &[u64]) -> Ordinal {
        from_coords(&self.basis, coords)
    }

    /// Membership of `beta` in the whole monoid `<G>^s`, not just the
    /// listed part.
    pub fn contains(&self, beta: &Ordinal) -> Decision {
        if *beta >= self.ceiling {
            return Decision::No;
        }
        if self.index_of(beta).is_some() {
            return Decision::Yes;
        }
        self.oracle.contains(beta)
    }

    pub fn oracle(&self) -> &Oracle {
        &self.oracle
    }

    /// The monoid order: `a <= b` iff `a == b`, or `a < b` and `b - a` is a
    /// member.
    pub fn leq(&self, a: &Ordinal, b: &Ordinal) -> Decision {
        if a == b {
            return Decision::Yes;
        }
        if a > b {
            return Decision::No;
        }
        let diff = b.subtract(a).expect("a < b");
        self.contains(&diff)
    }

    /// [`leq`](Self::leq) on listed elements, by index.
    pub fn leq_index(&self, i: usize, j: usize) -> Decision {
        if i == j {
            return Decision::Yes;
        }
        if i > j {
            return Decision::No;
        }
        let (a, b) = (&self.coords[i], &self.coords[j]);
        let k = a.iter().zip(b.iter()).position(|(x, y)| x != y).expect("distinct");
        let mut diff = vec![0u64; a.len()];
        diff[k] = b[k] - a[k];
        diff[k + 1..].copy_from_slice(&b[k + 1..]);
        if self.index.contains_key(diff.as_slice()) {
            return Decision::Yes;
        }
        self.contains(&self.from_coords(&diff))
    }

    /// [`GeneratorSet::decompose`] after certifying membership.
    pub fn decompose(&self, beta: &Ordinal) -> Result<Vec<(Ordinal, Ordinal)>> {
        if !self.contains(beta).is_yes() {
            return Err(Error::NotDecomposable(beta.to_string()));
        }
        Ok(self.gamma.decompose(beta))
    }

    /// One canonical element per line, ascending.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.elements {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }
}

fn from_coords(basis: &[Ordinal], coords: &[u64]) -> Ordinal {
    let terms = basis
        .iter()
        .zip(coords)
        .filter(|(_, &c)| c > 0)
        .map(|(e, &c)| Term {
            exp: e.clone(),
            coeff: BigUint::from(c),
        })
        .collect();
    Ordinal::from_normal_terms(terms).expect("basis is descending")
}

fn to_coords_with(
    position: &HashMap<&Ordinal, usize>,
    dim: usize,
    beta: &Ordinal,
) -> Result<Box<[u64]>> {
    let mut out = vec![0u64; dim];
    for t in beta.terms() {
        out[position[&t.exp]] = biguint_to_u64(&t.coeff)?;
    }
    Ok(out.into_boxed_slice())
}

/// Candidate multiplier exponents: every ordinal below `sigma` when `sigma`
/// is finite; otherwise the ordinals below `sigma` whose coefficients, at
/// every nesting level, are at most `bound`.
pub(crate) fn exponent_universe(sigma: &Ordinal, bound: u64, cap: usize) -> Result<Vec<Ordinal>> {
    if let Some(n) = sigma.as_natural() {
        let n = n.to_usize().filter(|&n| n <= cap).ok_or(Error::BoundTooLarge { cap })?;
        return Ok((0..n as u64).map(Ordinal::from).collect());
    }
    let mut inner = exponent_universe(&sigma.leading_exp().succ(), bound, cap)?;
    inner.sort_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    sums_below(&inner, bound, sigma, &mut prefix, &mut out, cap)?;
    out.sort();
    Ok(out)
}

fn sums_below(
    exps: &[Ordinal],
    bound: u64,
    sigma: &Ordinal,
    prefix: &mut Vec<Term>,
    out: &mut Vec<Ordinal>,
    cap: usize,
) -> Result<()> {
    let Some((head, rest)) = exps.split_first() else {
        out.push(Ordinal::from_normal_terms(prefix.clone()).expect("descending"));
        if out.len() > cap {
            return Err(Error::BoundTooLarge { cap });
        }
        return Ok(());
    };
    sums_below(rest, bound, sigma, prefix, out, cap)?;
    for c in 1..=bound {
        prefix.push(Term {
            exp: head.clone(),
            coeff: BigUint::from(c),
        });
        let current = Ordinal::from_normal_terms(prefix.clone()).expect("descending");
        let below = current < *sigma;
        if below {
            sums_below(rest, bound, sigma, prefix, out, cap)?;
        }
        prefix.pop();
        if !below {
            break;
        }
    }
    Ok(())
}

/// All ordinals with exponents from `exps` and coefficients in `0..=bound`.
fn multipliers(exps: &[&Ordinal], bound: u64, cap: usize) -> Result<Vec<Ordinal>> {
    let count = (bound + 1)
        .checked_pow(exps.len() as u32)
        .filter(|&c| c <= cap as u64)
        .ok_or(Error::BoundTooLarge { cap })?;
    let mut sorted: Vec<&Ordinal> = exps.to_vec();
    sorted.sort_by(|a, b| b.cmp(a));
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0u64; sorted.len()];
    loop {
        let terms = sorted
            .iter()
            .zip(&digits)
            .filter(|(_, &c)| c > 0)
            .map(|(e, &c)| Term {
                exp: (*e).clone(),
                coeff: BigUint::from(c),
            })
            .collect();
        out.push(Ordinal::from_normal_terms(terms).expect("descending"));
        let mut k = 0;
        loop {
            if k == digits.len() {
                return Ok(out);
            }
            digits[k] += 1;
            if digits[k] <= bound {
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn view(gens: &str, sigma: &str, bound: u64) -> MonoidView {
        MonoidView::enumerate(&GeneratorSet::parse_list(gens).unwrap(), &o(sigma), bound).unwrap()
    }

    fn strs(v: &[Ordinal]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn numeric_view_prefix() {
        // oracle: 3a + 5b with a, b <= 4
        let mut brute: Vec<u64> = (0..=4u64)
            .flat_map(|a| (0..=4u64).map(move |b| 3 * a + 5 * b))
            .collect();
        brute.sort();
        brute.dedup();
        let v = view("3,5", "1", 4);
        let listed: Vec<u64> = v.elements().iter().map(|e| e.to_u64().unwrap()).collect();
        assert_eq!(listed, brute);
        let low: Vec<u64> = listed.into_iter().filter(|&x| x <= 20).collect();
        assert_eq!(low, vec![0, 3, 5, 6, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20]);
    }

    #[test]
    fn omega_plus_one_view() {
        let v = view("w+1", "2", 3);
        assert_eq!(strs(v.elements()), vec!["0", "w+1", "w*2+2", "w*3+3"]);
    }

    #[test]
    fn level_two_contains_cross_terms() {
        let v = view("3,5", "2", 2);
        assert!(v.index_of(&o("w*3+5")).is_some());
        assert_eq!(v.basis(), &[o("1"), o("0")]);
        assert!(v.elements().iter().all(|e| *e < o("w^2")));
    }

    #[test]
    fn membership_examples() {
        let v = view("3,5", "1", 4);
        assert_eq!(v.contains(&o("7")), Decision::No);
        assert_eq!(v.contains(&Ordinal::zero()), Decision::Yes);
        // beyond the listed prefix, decided exactly
        assert_eq!(v.contains(&o("1000001")), Decision::Yes);
        assert_eq!(v.contains(&o("w")), Decision::No);

        let v = view("w+1", "2", 3);
        assert_eq!(v.contains(&o("w+2")), Decision::No);
        assert_eq!(v.contains(&o("w*3+3")), Decision::Yes);
        assert_eq!(v.contains(&o("w*9+9")), Decision::Yes);
        assert_eq!(v.contains(&o("w*2+3")), Decision::No);
    }

    #[test]
    fn order_examples() {
        let v = view("3,5", "1", 4);
        assert_eq!(v.leq(&o("3"), &o("6")), Decision::Yes);
        assert_eq!(v.leq(&o("3"), &o("5")), Decision::No);
        assert_eq!(v.leq(&o("6"), &o("3")), Decision::No);
        assert_eq!(v.leq(&o("5"), &o("5")), Decision::Yes);
        let v = view("w+1", "2", 3);
        assert_eq!(v.leq(&o("w+1"), &o("w*2+2")), Decision::No);
        assert_eq!(v.leq(&Ordinal::zero(), &o("w*2+2")), Decision::Yes);
    }

    #[test]
    fn leq_index_agrees_with_leq() {
        let v = view("2,3,w^2+w+1", "3", 2);
        for i in 0..v.len() {
            for j in (0..v.len()).step_by(7) {
                assert_eq!(
                    v.leq_index(i, j),
                    v.leq(&v.elements()[i], &v.elements()[j]),
                    "{} {}",
                    v.elements()[i],
                    v.elements()[j]
                );
            }
        }
    }

    #[test]
    fn decompose_requires_membership() {
        let v = view("3,5", "3", 3);
        assert_eq!(
            v.decompose(&o("w^2*6+3")).unwrap(),
            vec![(o("2"), o("6")), (o("0"), o("3"))]
        );
        assert!(matches!(v.decompose(&o("w*4")), Err(Error::NotDecomposable(_))));
    }

    #[test]
    fn limit_level_universe() {
        let u = exponent_universe(&o("w"), 3, 1000).unwrap();
        assert_eq!(strs(&u), vec!["0", "1", "2", "3"]);
        let u = exponent_universe(&o("w+1"), 2, 1000).unwrap();
        assert_eq!(strs(&u), vec!["0", "1", "2", "w"]);
        let v = view("3,5", "w", 2);
        assert!(v.index_of(&o("w^2*3")).is_some());
        assert!(v.elements().iter().all(|e| *e < o("w^(w)")));
    }

    #[test]
    fn caps_and_bad_input() {
        let g = GeneratorSet::parse_list("3,5").unwrap();
        let limits = EnumLimits { max_elements: 50 };
        assert_eq!(
            MonoidView::enumerate_with(&g, &o("2"), 6, limits).unwrap_err(),
            Error::BoundTooLarge { cap: 50 }
        );
        let g = GeneratorSet::parse_list("w^2").unwrap();
        assert!(matches!(
            MonoidView::enumerate(&g, &o("2"), 2),
            Err(Error::InvalidGenerators(_))
        ));
        let g = GeneratorSet::parse_list("3").unwrap();
        assert!(MonoidView::enumerate(&g, &o("1"), 0).is_err());
    }

    #[test]
    fn text_export() {
        let v = view("w+1", "2", 2);
        assert_eq!(v.to_text(), "0\nw+1\nw*2+2\n");
    }
}
