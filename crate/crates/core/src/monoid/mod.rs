//! Monoids of ordinals generated under natural sum and natural product.
//!
//! For a finite generator set `G` and an ordinal `s`, the monoid `<G>^s`
//! consists of all natural sums `a_1 (x) g_1 (+) ... (+) a_n (x) g_n` with
//! `g_i` in `G` and every `a_i (x) g_i` below `w^s`. It is ordered by
//! `x <= y` iff `x == y`, or `x < y` and the ordinary difference `y - x`
//! lies in the monoid again.

mod member;
pub mod numeric;
mod view;

pub use member::{Oracle, DEFAULT_MEMBER_BUDGET};
pub use numeric::NumericMonoid;
pub use view::{Decision, EnumLimits, MonoidView, DEFAULT_MAX_ELEMENTS};

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ordinal::{Ordinal, Term};

/// A finite set of distinct nonzero generators, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    gens: Vec<Ordinal>,
    ebar: Ordinal,
    epsilon: Ordinal,
}

impl GeneratorSet {
    /// Duplicates are merged; zero is rejected.
    pub fn new(gens: impl IntoIterator<Item = Ordinal>) -> Result<Self> {
        let mut gens: Vec<Ordinal> = gens.into_iter().collect();
        if gens.is_empty() {
            return Err(Error::InvalidGenerators("no generators given".into()));
        }
        if gens.iter().any(Ordinal::is_zero) {
            return Err(Error::InvalidGenerators("0 cannot be a generator".into()));
        }
        gens.sort();
        gens.dedup();
        let ebar = gens
            .iter()
            .map(Ordinal::leading_exp)
            .max()
            .expect("non-empty");
        let epsilon = compute_epsilon(&gens);
        Ok(GeneratorSet {
            gens,
            ebar,
            epsilon,
        })
    }

    /// Parses a comma-separated list such as `"2,3,w^2+w+1"`.
    pub fn parse_list(text: &str) -> Result<Self> {
        let gens = text
            .split(',')
            .map(|part| part.parse::<Ordinal>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(gens)
    }

    pub fn gens(&self) -> &[Ordinal] {
        &self.gens
    }

    /// Largest leading exponent over the generators.
    pub fn ebar(&self) -> &Ordinal {
        &self.ebar
    }

    /// The least `s` with every generator below `w^s`.
    pub fn least_level(&self) -> Ordinal {
        self.ebar.succ()
    }

    pub fn epsilon(&self) -> &Ordinal {
        &self.epsilon
    }

    /// True when every generator is a natural number.
    pub fn is_numeric(&self) -> bool {
        self.gens.iter().all(Ordinal::is_finite)
    }

    /// The generators below `w`, as machine integers.
    pub fn numeric_part(&self) -> Result<Vec<u64>> {
        self.gens
            .iter()
            .filter(|g| g.is_finite())
            .map(|g| g.to_u64().ok_or_else(|| Error::Overflow(g.to_string())))
            .collect()
    }

    /// The numerical monoid spanned by the natural generators.
    pub fn numeric_monoid(&self) -> Result<NumericMonoid> {
        let part = self.numeric_part()?;
        if part.is_empty() {
            return Err(Error::InvalidGenerators(
                "no natural-number generators".into(),
            ));
        }
        NumericMonoid::new(&part)
    }

    /// Gaps of the monoid spanned by the natural generators.
    pub fn gaps(&self) -> Result<Vec<u64>> {
        self.numeric_monoid()?.gaps()
    }

    pub fn frobenius(&self) -> Result<i64> {
        self.numeric_monoid()?.frobenius()
    }

    /// Whether `w^alpha` is closed under natural sums of multiples of the
    /// generators: the last exponent of `alpha` is at least epsilon.
    ///
    /// Zero is never closed.
    pub fn is_gamma_closed(&self, alpha: &Ordinal) -> bool {
        alpha.last_exp().is_some_and(|e| *e >= self.epsilon)
    }

    /// Splits `beta` as `w^(a_1) (x) b_1 + ... + w^(a_m) (x) b_m + b_(m+1)`
    /// with each `a_i` closed (see [`is_gamma_closed`](Self::is_gamma_closed)),
    /// `a_1 > ... > a_m`, and every block `b_i` below `w^(w^epsilon)`.
    ///
    /// The trailing block, if any, carries exponent zero. This is purely
    /// structural; [`MonoidView::decompose`] also certifies membership.
    pub fn decompose(&self, beta: &Ordinal) -> Vec<(Ordinal, Ordinal)> {
        let mut blocks: Vec<(Ordinal, Vec<Term>)> = Vec::new();
        for t in beta.terms() {
            let (head, rest) = split_exponent(&t.exp, &self.epsilon);
            let term = Term {
                exp: rest,
                coeff: t.coeff.clone(),
            };
            match blocks.last_mut() {
                Some((h, terms)) if *h == head => terms.push(term),
                _ => blocks.push((head, vec![term])),
            }
        }
        blocks
            .into_iter()
            .map(|(head, terms)| {
                let block = Ordinal::from_normal_terms(terms).expect("suffixes stay ordered");
                (head, block)
            })
            .collect()
    }
}

/// Splits `exp` into the terms with exponent `>= epsilon` and the rest.
fn split_exponent(exp: &Ordinal, epsilon: &Ordinal) -> (Ordinal, Ordinal) {
    let cut = exp
        .terms()
        .iter()
        .position(|t| t.exp < *epsilon)
        .unwrap_or(exp.terms().len());
    let head = exp.terms()[..cut].to_vec();
    let tail = exp.terms()[cut..].to_vec();
    (
        Ordinal::from_normal_terms(head).expect("prefix of a normal form"),
        Ordinal::from_normal_terms(tail).expect("suffix of a normal form"),
    )
}

/// Rebuilds an ordinal from [`GeneratorSet::decompose`] blocks.
pub fn recompose(blocks: &[(Ordinal, Ordinal)]) -> Ordinal {
    blocks.iter().fold(Ordinal::zero(), |acc, (head, block)| {
        acc.ordinary_add(&Ordinal::omega_power(head.clone()).natural_product(block))
    })
}

fn compute_epsilon(gens: &[Ordinal]) -> Ordinal {
    if gens.iter().all(Ordinal::is_finite) {
        return Ordinal::zero();
    }
    // finite set, so the supremum is attained and epsilon is its successor
    gens.iter()
        .map(|g| g.leading_exp().leading_exp())
        .max()
        .expect("non-empty")
        .succ()
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

pub(crate) fn biguint_to_u64(n: &BigUint) -> Result<u64> {
    n.to_u64().ok_or_else(|| Error::Overflow(n.to_string()))
}
