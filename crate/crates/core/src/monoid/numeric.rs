//! Submonoids of the naturals: membership, gaps, Frobenius number and
//! Apery sets.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_integer::Integer;

use crate::error::{Error, Result};

/// The largest least-generator for which Apery tables are built.
pub const MAX_MODULUS: u64 = 1 << 20;

/// `<p_1, ..., p_n>`, the additive submonoid of the naturals spanned by the
/// given generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericMonoid {
    gens: Vec<u64>,
    gcd: u64,
    /// Apery set of the reduced monoid `<p_i / gcd>` with respect to its
    /// least generator: `apery[r]` is the least member congruent to `r`.
    apery: Vec<u64>,
}

impl NumericMonoid {
    pub fn new(gens: &[u64]) -> Result<Self> {
        let mut gens: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return Err(Error::InvalidGenerators(
                "a numeric monoid needs a positive generator".into(),
            ));
        }
        let gcd = gens.iter().fold(0, |acc, &g| acc.gcd(&g));
        let reduced: Vec<u64> = gens.iter().map(|g| g / gcd).collect();
        let modulus = reduced[0];
        if modulus > MAX_MODULUS {
            return Err(Error::Overflow(modulus.to_string()));
        }
        Ok(NumericMonoid {
            apery: apery_set(&reduced),
            gens,
            gcd,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.gens
    }

    pub fn gcd(&self) -> u64 {
        self.gcd
    }

    pub fn contains(&self, n: u64) -> bool {
        if !n.is_multiple_of(self.gcd) {
            return false;
        }
        let n = n / self.gcd;
        let m = self.apery.len() as u64;
        n >= self.apery[(n % m) as usize]
    }

    /// Apery set with respect to the least generator (for gcd 1 monoids).
    pub fn apery(&self) -> Result<&[u64]> {
        self.require_cofinite()?;
        Ok(&self.apery)
    }

    fn require_cofinite(&self) -> Result<()> {
        if self.gcd != 1 {
            return Err(Error::InfiniteGaps(self.gcd));
        }
        Ok(())
    }

    /// Largest non-member, or -1 when the monoid is all of the naturals.
    pub fn frobenius(&self) -> Result<i64> {
        self.require_cofinite()?;
        let m = self.apery.len() as i64;
        let top = *self.apery.iter().max().expect("non-empty") as i64;
        Ok(top - m)
    }

    /// The finitely many naturals outside the monoid, ascending.
    pub fn gaps(&self) -> Result<Vec<u64>> {
        let f = self.frobenius()?;
        Ok((1..=f.max(0) as u64).filter(|&n| !self.contains(n)).collect())
    }

    /// Generators not expressible through the others.
    pub fn minimal_generators(&self) -> Vec<u64> {
        let mut minimal: Vec<u64> = Vec::new();
        for &g in &self.gens {
            if !representable(g, &minimal) {
                minimal.push(g);
            }
        }
        minimal
    }

    /// Least generator equals the number of minimal generators.
    pub fn has_max_embedding_dimension(&self) -> bool {
        let minimal = self.minimal_generators();
        minimal[0] == minimal.len() as u64
    }
}

/// Shortest paths on residues modulo the least generator.
fn apery_set(gens: &[u64]) -> Vec<u64> {
    let m = gens[0] as usize;
    let mut dist = vec![u64::MAX; m];
    dist[0] = 0;
    let mut heap = BinaryHeap::from([Reverse((0u64, 0usize))]);
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &g in &gens[1..] {
            let nd = d + g;
            let nr = (r + (g % m as u64) as usize) % m;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr)));
            }
        }
    }
    dist
}

fn representable(n: u64, gens: &[u64]) -> bool {
    if gens.is_empty() {
        return n == 0;
    }
    let mut reach = vec![false; n as usize + 1];
    reach[0] = true;
    for i in 1..=n as usize {
        reach[i] = gens.iter().any(|&g| g as usize <= i && reach[i - g as usize]);
    }
    reach[n as usize]
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: dynamic programming over sums of generators.
    fn brute_members(gens: &[u64], limit: u64) -> Vec<bool> {
        let mut reach = vec![false; limit as usize + 1];
        reach[0] = true;
        for i in 1..=limit as usize {
            reach[i] = gens.iter().any(|&g| g as usize <= i && reach[i - g as usize]);
        }
        reach
    }

    #[test]
    fn gaps_and_frobenius_examples() {
        let s = NumericMonoid::new(&[3, 5]).unwrap();
        assert_eq!(s.gaps().unwrap(), vec![1, 2, 4, 7]);
        assert_eq!(s.frobenius().unwrap(), 7);
        let s = NumericMonoid::new(&[2, 3]).unwrap();
        assert_eq!(s.gaps().unwrap(), vec![1]);
        assert_eq!(s.frobenius().unwrap(), 1);
        let s = NumericMonoid::new(&[1]).unwrap();
        assert!(s.gaps().unwrap().is_empty());
        assert_eq!(s.frobenius().unwrap(), -1);
    }

    #[test]
    fn non_coprime_generators() {
        let s = NumericMonoid::new(&[4, 6]).unwrap();
        assert_eq!(s.gaps(), Err(Error::InfiniteGaps(2)));
        assert!(s.contains(10));
        assert!(!s.contains(2));
        assert!(!s.contains(11));
    }

    #[test]
    fn membership_matches_dynamic_programming() {
        for gens in [vec![3, 5], vec![4, 6, 9], vec![5, 7, 11, 13], vec![6, 10, 15]] {
            let s = NumericMonoid::new(&gens).unwrap();
            let oracle = brute_members(&gens, 200);
            for (n, &member) in oracle.iter().enumerate() {
                assert_eq!(s.contains(n as u64), member, "{gens:?} {n}");
            }
        }
    }

    #[test]
    fn apery_and_embedding_dimension() {
        let s = NumericMonoid::new(&[3, 5]).unwrap();
        assert_eq!(s.apery().unwrap(), &[0, 10, 5]);
        let s = NumericMonoid::new(&[2, 3, 4]).unwrap();
        assert_eq!(s.minimal_generators(), vec![2, 3]);
        assert!(s.has_max_embedding_dimension());
        assert!(!NumericMonoid::new(&[3, 5]).unwrap().has_max_embedding_dimension());
        assert!(NumericMonoid::new(&[3, 4, 5]).unwrap().has_max_embedding_dimension());
    }
}
