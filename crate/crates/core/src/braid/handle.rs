//! Dehornoy handle reduction, used as an independent word-problem oracle.
//!
//! A `σ_i`-handle is a subword `σ_i^e v σ_i^{-e}` in which `v` only uses
//! generators of index greater than `i`. Reducing it replaces every
//! `σ_{i+1}^d` in `v` by `σ_{i+1}^{-e} σ_i^d σ_{i+1}^e` and drops the two ends.
//! The handle whose right end is leftmost is always permitted, so reducing
//! that one repeatedly terminates; the word is trivial iff it ends empty.

use super::word::BraidWord;
use crate::error::{Error, Result};

pub const DEFAULT_REDUCTION_BUDGET: u64 = 1_000_000;

/// Fully reduces `word`, returning the handle-free result.
pub fn handle_reduce(word: &BraidWord, budget: u64) -> Result<Vec<i32>> {
    let mut w: Vec<i32> = word.letters().to_vec();
    let mut steps: u64 = 0;
    let mut k = 0;
    while k < w.len() {
        match handle_ending_at(&w, k) {
            Some(j) => {
                steps += 1;
                if steps > budget {
                    return Err(Error::ReductionBudgetExceeded(budget));
                }
                reduce_handle(&mut w, j, k);
                // nothing before j changed, and no handle ended before k
                k = j;
            }
            None => k += 1,
        }
    }
    Ok(w)
}

/// Start of the handle ending at `k`, if any.
fn handle_ending_at(w: &[i32], k: usize) -> Option<usize> {
    let last = w[k];
    let i = last.abs();
    for j in (0..k).rev() {
        let l = w[j];
        if l.abs() < i {
            return None;
        }
        if l.abs() == i {
            return (l == -last).then_some(j);
        }
    }
    None
}

fn reduce_handle(w: &mut Vec<i32>, j: usize, k: usize) {
    let e = w[j].signum();
    let i = w[j].abs();
    let mut inner = Vec::with_capacity(3 * (k - j));
    for &l in &w[j + 1..k] {
        if l.abs() == i + 1 {
            let d = l.signum();
            inner.push(-e * (i + 1));
            inner.push(d * i);
            inner.push(e * (i + 1));
        } else {
            inner.push(l);
        }
    }
    w.splice(j..=k, inner);
}

/// True iff `word` represents the identity.
pub fn is_trivial_handle_reduction(word: &BraidWord, budget: u64) -> Result<bool> {
    handle_reduce(word, budget).map(|w| w.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn relator_is_trivial() {
        let r = w(3, &[1, 2, 1, -2, -1, -2]);
        assert!(is_trivial_handle_reduction(&r, DEFAULT_REDUCTION_BUDGET).unwrap());
    }

    #[test]
    fn generator_is_not_trivial() {
        assert!(!is_trivial_handle_reduction(&w(3, &[1]), DEFAULT_REDUCTION_BUDGET).unwrap());
        assert!(!is_trivial_handle_reduction(&w(4, &[1, 3, -1]), DEFAULT_REDUCTION_BUDGET).unwrap());
    }

    #[test]
    fn far_commutator_is_trivial() {
        let c = w(4, &[1, 3, -1, -3]);
        assert!(is_trivial_handle_reduction(&c, DEFAULT_REDUCTION_BUDGET).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let c = w(3, &[1, 2, 1, -2, -1, -2]);
        assert_eq!(
            is_trivial_handle_reduction(&c, 0),
            Err(Error::ReductionBudgetExceeded(0))
        );
    }

    #[test]
    fn reduced_words_are_handle_free() {
        let x = w(4, &[2, 1, -3, -2, 3, 1, -1, 2]);
        let r = handle_reduce(&x, DEFAULT_REDUCTION_BUDGET).unwrap();
        for k in 0..r.len() {
            assert!(handle_ending_at(&r, k).is_none());
        }
    }
}
