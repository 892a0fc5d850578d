use num_traits::{ToPrimitive, Zero};

use super::{Decision, GeneratorSet, NumericMonoid};
use crate::error::Result;
use crate::ordinal::Ordinal;

/// Default node budget for one membership query.
pub const DEFAULT_MEMBER_BUDGET: u64 = 1_000_000;

/// Decides membership in `<G>^s` and the induced order without enumerating.
///
/// Any representation `beta = a_1 (x) g_1 (+) ... ` only uses multiplier
/// exponents `d` for which every `d (+) e` (with `e` an exponent of the
/// generator) is an exponent of `beta`, so membership reduces to a bounded
/// system of linear equations over the multiplier coefficients. The system
/// is solved by depth-first search, one exponent of `beta` at a time.
#[derive(Debug, Clone)]
pub struct Oracle {
    gamma: GeneratorSet,
    sigma: Ordinal,
    ceiling: Ordinal,
    finite_part: Option<NumericMonoid>,
    budget: u64,
}

impl Oracle {
    pub fn new(gamma: &GeneratorSet, sigma: &Ordinal) -> Result<Self> {
        let part = gamma.numeric_part()?;
        let finite_part = if part.is_empty() {
            None
        } else {
            Some(NumericMonoid::new(&part)?)
        };
        Ok(Oracle {
            gamma: gamma.clone(),
            sigma: sigma.clone(),
            ceiling: Ordinal::omega_power(sigma.clone()),
            finite_part,
            budget: DEFAULT_MEMBER_BUDGET,
        })
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn gamma(&self) -> &GeneratorSet {
        &self.gamma
    }

    pub fn sigma(&self) -> &Ordinal {
        &self.sigma
    }

    /// `Unknown` only when the search budget runs out.
    pub fn contains(&self, beta: &Ordinal) -> Decision {
        if *beta >= self.ceiling {
            return Decision::No;
        }
        if beta.is_zero() {
            return Decision::Yes;
        }
        if let Some(num) = &self.finite_part {
            if beta.is_finite() || self.gamma.is_numeric() {
                // coefficients of members are exactly the members of the
                // natural-number part when all generators are natural
                let member = beta.terms().iter().all(|t| match t.coeff.to_u64() {
                    Some(c) => num.contains(c),
                    None => (&t.coeff % num.gcd()).is_zero(),
                });
                return if member { Decision::Yes } else { Decision::No };
            }
        } else if beta.is_finite() {
            return Decision::No;
        }
        self.solve(beta)
    }

    pub fn leq(&self, a: &Ordinal, b: &Ordinal) -> Decision {
        if a == b {
            return Decision::Yes;
        }
        if a > b {
            return Decision::No;
        }
        self.contains(&b.subtract(a).expect("a < b"))
    }

    fn solve(&self, beta: &Ordinal) -> Decision {
        let exps: Vec<&Ordinal> = beta.terms().iter().map(|t| &t.exp).collect();
        let Some(target) = beta
            .terms()
            .iter()
            .map(|t| t.coeff.to_u64())
            .collect::<Option<Vec<u64>>>()
        else {
            return Decision::Unknown;
        };

        let mut unknowns = Vec::new();
        for g in self.gamma.gens() {
            let lead = g.leading_exp();
            let Some(coeffs) = g
                .terms()
                .iter()
                .map(|t| t.coeff.to_u64())
                .collect::<Option<Vec<u64>>>()
            else {
                return Decision::Unknown;
            };
            for e in &exps {
                let Some(d) = e.natural_difference(&lead) else {
                    continue;
                };
                let hits: Option<Vec<(usize, u64)>> = g
                    .terms()
                    .iter()
                    .zip(&coeffs)
                    .map(|(t, &c)| {
                        let target_exp = d.natural_sum(&t.exp);
                        exps.iter().position(|x| **x == target_exp).map(|k| (k, c))
                    })
                    .collect();
                if let Some(hits) = hits {
                    unknowns.push(Unknown {
                        lead: hits[0].0,
                        hits,
                    });
                }
            }
        }
        unknowns.sort_by_key(|u| u.lead);

        let mut search = Search {
            unknowns: &unknowns,
            residual: target,
            nodes: 0,
            budget: self.budget,
        };
        match search.run(0, 0) {
            Some(true) => Decision::Yes,
            Some(false) => Decision::No,
            None => Decision::Unknown,
        }
    }
}

struct Unknown {
    /// Index of the exponent fed by the generator's leading term.
    lead: usize,
    /// `(exponent index, coefficient)` for every term of the generator.
    hits: Vec<(usize, u64)>,
}

struct Search<'a> {
    unknowns: &'a [Unknown],
    residual: Vec<u64>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// `settled` counts exponents whose residual can no longer change.
    fn run(&mut self, next: usize, settled: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return None;
        }
        let frontier = self.unknowns.get(next).map_or(self.residual.len(), |u| u.lead);
        if self.residual[settled..frontier].iter().any(|&r| r != 0) {
            return Some(false);
        }
        let Some(u) = self.unknowns.get(next) else {
            return Some(true);
        };
        let max = u
            .hits
            .iter()
            .map(|&(k, c)| self.residual[k] / c)
            .min()
            .unwrap_or(0);
        for a in (0..=max).rev() {
            for &(k, c) in &u.hits {
                self.residual[k] -= a * c;
            }
            let found = self.run(next + 1, frontier);
            for &(k, c) in &u.hits {
                self.residual[k] += a * c;
            }
            match found {
                Some(false) => {}
                other => return other,
            }
        }
        Some(false)
    }
}
