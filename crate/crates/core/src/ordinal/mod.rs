//! Ordinals below epsilon-zero in Cantor normal form.
//!
//! An [`Ordinal`] is a strictly decreasing list of terms `w^e * c` where each
//! exponent `e` is itself an [`Ordinal`] and every coefficient is a positive
//! arbitrary-precision integer. Zero is the empty list.

mod parse;

pub use parse::{parse, parse_with_depth, DEFAULT_MAX_DEPTH};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A single `w^exp * coeff` summand. `coeff` is never zero inside an [`Ordinal`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub exp: Ordinal,
    pub coeff: BigUint,
}

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Ordinal {
    terms: Vec<Term>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::nat(1u32)
    }

    pub fn omega() -> Self {
        Self::omega_power(Self::one())
    }

    pub fn nat(n: impl Into<BigUint>) -> Self {
        Self::monomial(Self::zero(), n.into())
    }

    /// `w^exp`.
    pub fn omega_power(exp: Ordinal) -> Self {
        Self::monomial(exp, BigUint::one())
    }

    /// `w^exp * coeff`; a zero coefficient gives zero.
    pub fn monomial(exp: Ordinal, coeff: BigUint) -> Self {
        if coeff.is_zero() {
            return Self::zero();
        }
        Ordinal {
            terms: vec![Term { exp, coeff }],
        }
    }

    /// Builds an ordinal from terms that are already in normal form.
    ///
    /// Returns `None` if the exponents are not strictly decreasing or a
    /// coefficient is zero.
    pub fn from_normal_terms(terms: Vec<Term>) -> Option<Self> {
        if terms.iter().any(|t| t.coeff.is_zero()) {
            return None;
        }
        if terms.windows(2).any(|w| w[0].exp <= w[1].exp) {
            return None;
        }
        Some(Ordinal { terms })
    }

    /// Reads a written sum `t1 + t2 + ...` left to right with ordinary addition.
    pub fn from_sum<I: IntoIterator<Item = Term>>(terms: I) -> Self {
        terms.into_iter().fold(Self::zero(), |acc, t| {
            acc.ordinary_add(&Self::monomial(t.exp, t.coeff))
        })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the natural numbers (including zero).
    pub fn is_finite(&self) -> bool {
        match self.terms.as_slice() {
            [] => true,
            [t] => t.exp.is_zero(),
            _ => false,
        }
    }

    /// The value of a natural number, or `None` for infinite ordinals.
    pub fn as_natural(&self) -> Option<BigUint> {
        match self.terms.as_slice() {
            [] => Some(BigUint::zero()),
            [t] if t.exp.is_zero() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.as_natural().and_then(|n| n.to_u64())
    }

    /// The largest exponent of the normal form, and zero for zero.
    pub fn leading_exp(&self) -> Ordinal {
        self.terms.first().map(|t| t.exp.clone()).unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> BigUint {
        self.terms
            .first()
            .map(|t| t.coeff.clone())
            .unwrap_or_default()
    }

    /// The smallest exponent of the normal form, `None` for zero.
    pub fn last_exp(&self) -> Option<&Ordinal> {
        self.terms.last().map(|t| &t.exp)
    }

    /// Coefficient of `w^exp` in the normal form (zero when absent).
    pub fn coeff_at(&self, exp: &Ordinal) -> BigUint {
        self.terms
            .iter()
            .find(|t| &t.exp == exp)
            .map(|t| t.coeff.clone())
            .unwrap_or_default()
    }

    pub fn is_successor(&self) -> bool {
        self.last_exp().is_some_and(|e| e.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// Nesting depth: 0 for zero, 1 for a nonzero natural, and one more than
    /// the deepest exponent otherwise.
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .map(|t| 1 + t.exp.depth())
            .max()
            .unwrap_or(0)
    }

    /// Largest coefficient appearing anywhere, exponents included.
    pub fn max_nested_coeff(&self) -> BigUint {
        self.terms
            .iter()
            .map(|t| t.coeff.clone().max(t.exp.max_nested_coeff()))
            .max()
            .unwrap_or_default()
    }

    /// `self + 1`.
    pub fn succ(&self) -> Ordinal {
        self.ordinary_add(&Ordinal::one())
    }

    /// Ordinary (left-absorbing) ordinal addition.
    pub fn ordinary_add(&self, rhs: &Ordinal) -> Ordinal {
        let Some(head) = rhs.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut merged = head.coeff.clone();
        for t in &self.terms {
            match t.exp.cmp(&head.exp) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => merged += &t.coeff,
                Ordering::Less => break,
            }
        }
        terms.push(Term {
            exp: head.exp.clone(),
            coeff: merged,
        });
        terms.extend(rhs.terms[1..].iter().cloned());
        Ordinal { terms }
    }

    /// Natural (Hessenberg) sum: coefficients add exponent by exponent.
    pub fn natural_sum(&self, rhs: &Ordinal) -> Ordinal {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            let (a, b) = (&self.terms[i], &rhs.terms[j]);
            match a.exp.cmp(&b.exp) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(Term {
                        exp: a.exp.clone(),
                        coeff: &a.coeff + &b.coeff,
                    });
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(rhs.terms[j..].iter().cloned());
        Ordinal { terms: out }
    }

    /// Natural (Hessenberg) product: the natural sum over all pairs of terms
    /// of `w^(e1 (+) e2) * c1 * c2`.
    pub fn natural_product(&self, rhs: &Ordinal) -> Ordinal {
        if self.is_zero() || rhs.is_zero() {
            return Ordinal::zero();
        }
        let mut acc: BTreeMap<Ordinal, BigUint> = BTreeMap::new();
        for a in &self.terms {
            for b in &rhs.terms {
                *acc.entry(a.exp.natural_sum(&b.exp)).or_default() += &a.coeff * &b.coeff;
            }
        }
        Ordinal {
            terms: acc
                .into_iter()
                .rev()
                .map(|(exp, coeff)| Term { exp, coeff })
                .collect(),
        }
    }

    /// Natural product with a natural number.
    pub fn scale(&self, k: &BigUint) -> Ordinal {
        if k.is_zero() {
            return Ordinal::zero();
        }
        Ordinal {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    exp: t.exp.clone(),
                    coeff: &t.coeff * k,
                })
                .collect(),
        }
    }

    /// The `g` with `g (+) rhs == self`, if there is one.
    pub fn natural_difference(&self, rhs: &Ordinal) -> Option<Ordinal> {
        let mut out = Vec::with_capacity(self.terms.len());
        let mut j = 0;
        for t in &self.terms {
            match rhs.terms.get(j) {
                Some(r) if r.exp > t.exp => return None,
                Some(r) if r.exp == t.exp => {
                    if r.coeff > t.coeff {
                        return None;
                    }
                    if r.coeff < t.coeff {
                        out.push(Term {
                            exp: t.exp.clone(),
                            coeff: &t.coeff - &r.coeff,
                        });
                    }
                    j += 1;
                }
                _ => out.push(t.clone()),
            }
        }
        (j == rhs.terms.len()).then_some(Ordinal { terms: out })
    }

    /// The terms with exponent below `exp`.
    pub fn tail_below(&self, exp: &Ordinal) -> Ordinal {
        Ordinal {
            terms: self.terms.iter().filter(|t| t.exp < *exp).cloned().collect(),
        }
    }

    /// The unique `g` with `rhs + g == self`; fails when `rhs > self`.
    pub fn subtract(&self, rhs: &Ordinal) -> Result<Ordinal> {
        for (i, b) in self.terms.iter().enumerate() {
            let Some(a) = rhs.terms.get(i) else {
                // rhs is a proper prefix of self
                return Ok(Ordinal {
                    terms: self.terms[i..].to_vec(),
                });
            };
            if a == b {
                continue;
            }
            return match b.exp.cmp(&a.exp).then_with(|| b.coeff.cmp(&a.coeff)) {
                Ordering::Greater if b.exp == a.exp => {
                    let mut terms = Vec::with_capacity(self.terms.len() - i);
                    terms.push(Term {
                        exp: b.exp.clone(),
                        coeff: &b.coeff - &a.coeff,
                    });
                    terms.extend(self.terms[i + 1..].iter().cloned());
                    Ok(Ordinal { terms })
                }
                Ordering::Greater => Ok(Ordinal {
                    terms: self.terms[i..].to_vec(),
                }),
                _ => Err(self.underflow(rhs)),
            };
        }
        if rhs.terms.len() > self.terms.len() {
            Err(self.underflow(rhs))
        } else {
            Ok(Ordinal::zero())
        }
    }

    fn underflow(&self, rhs: &Ordinal) -> Error {
        Error::Underflow {
            minuend: self.to_string(),
            subtrahend: rhs.to_string(),
        }
    }

    /// Checks the normal-form invariants recursively.
    pub fn is_normal(&self) -> bool {
        self.terms
            .iter()
            .all(|t| !t.coeff.is_zero() && t.exp.is_normal())
            && self.terms.windows(2).all(|w| w[0].exp > w[1].exp)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.exp.cmp(&b.exp).then_with(|| a.coeff.cmp(&b.coeff));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: &Ordinal) -> Ordinal {
        self.ordinary_add(rhs)
    }
}

impl Add for Ordinal {
    type Output = Ordinal;
    fn add(self, rhs: Ordinal) -> Ordinal {
        self.ordinary_add(&rhs)
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

impl From<u32> for Ordinal {
    fn from(n: u32) -> Self {
        Ordinal::nat(n)
    }
}

impl From<BigUint> for Ordinal {
    fn from(n: BigUint) -> Self {
        Ordinal::nat(n)
    }
}

impl std::str::FromStr for Ordinal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            if t.exp.is_zero() {
                write!(f, "{}", t.coeff)?;
                continue;
            }
            f.write_str("w")?;
            match t.exp.as_natural() {
                Some(n) if n.is_one() => {}
                Some(n) => write!(f, "^{n}")?,
                None => write!(f, "^({})", t.exp)?,
            }
            if !t.coeff.is_one() {
                write!(f, "*{}", t.coeff)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w^({})*{}", self.exp, self.coeff)
    }
}
