//! Exact arithmetic in the braid groups `B_n`.

mod endo;
mod garside;
mod handle;
mod word;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use endo::{shift, shifted_conjugate, unshift, Endomorphism};
pub use garside::{normal_form, GarsideNormalForm, PermBraid};
pub use handle::{handle_reduce, is_trivial_handle_reduction, DEFAULT_REDUCTION_BUDGET};
pub use word::BraidWord;

use crate::error::{Error, Result};

pub(crate) fn delta_letters(n: usize) -> Vec<i32> {
    let mut letters = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for top in (1..n).rev() {
        letters.extend(1..=top as i32);
    }
    letters
}

/// The fundamental braid `Δ_n = (σ_1⋯σ_{n-1})(σ_1⋯σ_{n-2})⋯σ_1`.
pub fn delta(n: usize) -> Result<BraidWord> {
    if n < 2 {
        return Err(Error::TooFewStrands { min: 2, got: n });
    }
    Ok(BraidWord::from_raw(n, delta_letters(n)))
}

/// Word problem: do `a` and `b` represent the same braid?
pub fn words_equal(a: &BraidWord, b: &BraidWord) -> bool {
    if a == b {
        return true;
    }
    normal_form(&a.compose(&b.invert())).is_identity()
}

pub fn is_identity(a: &BraidWord) -> bool {
    a.is_empty() || normal_form(a).is_identity()
}

/// `a · b = b · a`?
pub fn commute(a: &BraidWord, b: &BraidWord) -> bool {
    words_equal(&a.compose(b), &b.compose(a))
}

pub fn canonical_length(a: &BraidWord) -> usize {
    normal_form(a).canonical_length()
}

/// Re-expands `a` from its normal form, hiding the letters it was built from.
pub fn rewrite(a: &BraidWord) -> BraidWord {
    normal_form(a).to_word()
}

/// Product of `length` alphabet entries (or their inverses when `inverses`)
/// drawn from `rng`.
pub fn random_word_with<R: Rng>(
    alphabet: &[BraidWord],
    length: usize,
    inverses: bool,
    rng: &mut R,
) -> Result<BraidWord> {
    if alphabet.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    let strands = alphabet.iter().map(BraidWord::strands).max().unwrap_or(1);
    let mut out = BraidWord::identity(strands);
    for _ in 0..length {
        let g = &alphabet[rng.gen_range(0..alphabet.len())];
        if inverses && rng.gen_bool(0.5) {
            out = out.compose(&g.invert());
        } else {
            out = out.compose(g);
        }
    }
    Ok(out)
}

/// Seeded form of [`random_word_with`]; identical inputs give identical words.
pub fn random_word(
    alphabet: &[BraidWord],
    length: usize,
    seed: u64,
    inverses: bool,
) -> Result<BraidWord> {
    random_word_with(alphabet, length, inverses, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `σ_1, …, σ_{n-1}` as single-letter words.
pub fn artin_generators(n: usize) -> Vec<BraidWord> {
    (1..n as i32).map(|i| BraidWord::from_raw(n, vec![i])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn delta_words() {
        assert_eq!(delta(2).unwrap(), w(2, &[1]));
        assert_eq!(delta(3).unwrap(), w(3, &[1, 2, 1]));
        assert!(delta(1).is_err());
    }

    #[test]
    fn delta_flips_generators() {
        let d = delta(4).unwrap();
        assert!(words_equal(&d.conjugate(&w(4, &[1])), &w(4, &[3])));
        assert!(words_equal(&d.conjugate(&w(4, &[2])), &w(4, &[2])));
    }

    #[test]
    fn basic_equalities() {
        assert!(words_equal(&w(3, &[1, 2, 1]), &w(3, &[2, 1, 2])));
        assert!(words_equal(&w(4, &[1, 3]), &w(4, &[3, 1])));
        assert!(!words_equal(&w(3, &[1]), &w(3, &[2])));
        assert!(words_equal(&w(2, &[1, -1]), &BraidWord::identity(2)));
    }

    #[test]
    fn canonical_lengths() {
        let d = delta(4).unwrap();
        assert_eq!(canonical_length(&d.pow(3)), 0);
        assert_eq!(canonical_length(&d.pow(-2)), 0);
        assert_eq!(canonical_length(&BraidWord::identity(4)), 0);
        assert_eq!(canonical_length(&w(4, &[1, 3])), 1);
        assert_eq!(canonical_length(&w(3, &[1, 1])), 2);
    }

    #[test]
    fn random_word_cases() {
        let alpha = vec![w(3, &[1])];
        assert!(random_word(&alpha, 0, 7, true).unwrap().is_empty());
        assert_eq!(random_word(&alpha, 3, 7, false).unwrap(), w(3, &[1, 1, 1]));
        let gens = artin_generators(5);
        assert_eq!(
            random_word(&gens, 12, 42, true).unwrap(),
            random_word(&gens, 12, 42, true).unwrap()
        );
        assert_eq!(random_word(&[], 3, 1, true), Err(Error::EmptyAlphabet));
    }
}
