//! Random finite posets for property suites.

use rand::Rng;

use super::{FinitePoset, Label};

/// `n` elements where index 0 is the minimum and each pair `i < j` of the
/// rest is related with probability `density` before closing.
pub fn random_poset<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> FinitePoset {
    assert!(n >= 1);
    let rel = relation(rng, n, density);
    FinitePoset::from_fn_closed((0..n).map(Label::Atom).collect(), |i, j| {
        i == 0 || rel[i][j]
    })
    .expect("random order")
}

/// As [`random_poset`] but with index `n - 1` a maximum distinct from the
/// minimum.
pub fn random_poset_with_max<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> FinitePoset {
    assert!(n >= 2);
    let rel = relation(rng, n, density);
    FinitePoset::from_fn_closed((0..n).map(Label::Atom).collect(), |i, j| {
        i == 0 || j == n - 1 || rel[i][j]
    })
    .expect("random order")
}

fn relation<R: Rng + ?Sized>(rng: &mut R, n: usize, density: f64) -> Vec<Vec<bool>> {
    (0..n)
        .map(|i| (0..n).map(|j| i >= 1 && j > i && rng.gen_bool(density)).collect())
        .collect()
}
