//! Left Garside normal form.
//!
//! Every braid is written uniquely as `Δ^inf · A_1 ⋯ A_l` where each `A_t` is a
//! permutation braid different from `e` and `Δ`, and consecutive factors are
//! left-weighted: the starting set of `A_{t+1}` lies inside the finishing set
//! of `A_t`.
//!
//! A permutation braid is stored as `strand_at[pos]`: the (0-based) starting
//! position of the strand that ends at position `pos`. Appending `σ_i` swaps
//! positions `i-1, i`; prepending it swaps the values `i-1, i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::BraidWord;

/// A positive braid in which every pair of strands crosses at most once.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<u16>", into = "Vec<u16>")]
pub struct PermBraid {
    strand_at: Vec<u8>,
}

impl From<Vec<u16>> for PermBraid {
    fn from(one_based: Vec<u16>) -> Self {
        PermBraid {
            strand_at: one_based.into_iter().map(|v| (v - 1) as u8).collect(),
        }
    }
}

impl From<PermBraid> for Vec<u16> {
    fn from(p: PermBraid) -> Self {
        p.strand_at.into_iter().map(|v| v as u16 + 1).collect()
    }
}

impl PermBraid {
    pub fn identity(strands: usize) -> Self {
        PermBraid {
            strand_at: (0..strands as u8).collect(),
        }
    }

    pub fn delta(strands: usize) -> Self {
        PermBraid {
            strand_at: (0..strands as u8).rev().collect(),
        }
    }

    /// `Δ · σ_i⁻¹`, the simple element left over when `σ_i⁻¹` is rewritten as
    /// `Δ⁻¹ · (Δ σ_i⁻¹)`.
    pub fn delta_over_generator(strands: usize, i: usize) -> Self {
        let mut p = Self::delta(strands);
        p.strand_at.swap(i - 1, i);
        p
    }

    pub fn strands(&self) -> usize {
        self.strand_at.len()
    }

    /// The permutation as 1-based images, `result[pos] = strand`.
    pub fn permutation(&self) -> Vec<usize> {
        self.strand_at.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.strand_at.iter().enumerate().all(|(k, &v)| k == v as usize)
    }

    pub fn is_delta(&self) -> bool {
        let n = self.strand_at.len();
        self.strand_at
            .iter()
            .enumerate()
            .all(|(k, &v)| v as usize == n - 1 - k)
    }

    /// Number of crossings.
    pub fn length(&self) -> usize {
        let p = &self.strand_at;
        let mut inv = 0;
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if p[a] > p[b] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// `self = X · σ_i` for some positive `X`.
    pub fn finishes_with(&self, i: usize) -> bool {
        self.strand_at[i - 1] > self.strand_at[i]
    }

    /// `self = σ_i · X` for some positive `X`.
    pub fn starts_with(&self, i: usize) -> bool {
        let a = i as u8 - 1;
        let b = i as u8;
        self.position_of(a) > self.position_of(b)
    }

    fn position_of(&self, strand: u8) -> usize {
        self.strand_at.iter().position(|&v| v == strand).unwrap()
    }

    /// Appends `σ_i`; returns false (and leaves `self` alone) if the result
    /// would not be a permutation braid.
    pub fn try_push(&mut self, i: usize) -> bool {
        if self.finishes_with(i) {
            return false;
        }
        self.strand_at.swap(i - 1, i);
        true
    }

    /// Removes a leading `σ_i`; caller guarantees `starts_with(i)`.
    fn strip_front(&mut self, i: usize) {
        let a = i as u8 - 1;
        let b = i as u8;
        for v in self.strand_at.iter_mut() {
            if *v == a {
                *v = b;
            } else if *v == b {
                *v = a;
            }
        }
    }

    /// Conjugation by `Δ`: `σ_i ↦ σ_{n-i}`.
    pub fn flip(&self) -> PermBraid {
        let n = self.strand_at.len();
        PermBraid {
            strand_at: (0..n)
                .map(|pos| (n - 1) as u8 - self.strand_at[n - 1 - pos])
                .collect(),
        }
    }

    /// A positive word for this permutation braid.
    pub fn to_letters(&self) -> Vec<i32> {
        let mut p = self.strand_at.clone();
        let mut rev = Vec::new();
        'outer: loop {
            for i in 1..p.len() {
                if p[i - 1] > p[i] {
                    p.swap(i - 1, i);
                    rev.push(i as i32);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        rev
    }

    /// Rewrites `(self, next)` into a left-weighted pair with the same
    /// product. Returns true if anything moved.
    pub fn left_weight(&mut self, next: &mut PermBraid) -> bool {
        let n = self.strand_at.len();
        let mut changed = false;
        loop {
            let movable = (1..n).find(|&i| next.starts_with(i) && !self.finishes_with(i));
            match movable {
                Some(i) => {
                    self.strand_at.swap(i - 1, i);
                    next.strip_front(i);
                    changed = true;
                }
                None => return changed,
            }
        }
    }
}

impl fmt::Debug for PermBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.permutation())
    }
}

/// `Δ^inf · A_1 ⋯ A_l`, the left normal form of a braid.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GarsideNormalForm {
    #[serde(rename = "n")]
    strands: usize,
    inf: i64,
    factors: Vec<PermBraid>,
}

impl GarsideNormalForm {
    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn infimum(&self) -> i64 {
        self.inf
    }

    pub fn factors(&self) -> &[PermBraid] {
        &self.factors
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    /// `inf + canonical_length`.
    pub fn supremum(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    /// Crossings in `Δ^|inf|` plus crossings in all factors.
    pub fn letter_length(&self) -> usize {
        let n = self.strands;
        self.inf.unsigned_abs() as usize * n * (n - 1) / 2
            + self.factors.iter().map(PermBraid::length).sum::<usize>()
    }

    /// Re-expands the form into a word (`Δ` written as `σ_1σ_2σ_1⋯`).
    pub fn to_word(&self) -> BraidWord {
        let delta = super::delta_letters(self.strands);
        let mut letters = Vec::new();
        if self.inf >= 0 {
            for _ in 0..self.inf {
                letters.extend_from_slice(&delta);
            }
        } else {
            let inv: Vec<i32> = delta.iter().rev().map(|l| -l).collect();
            for _ in 0..-self.inf {
                letters.extend_from_slice(&inv);
            }
        }
        for f in &self.factors {
            letters.extend(f.to_letters());
        }
        BraidWord::from_raw(self.strands, letters)
    }

    /// Checks the structural invariants of a left normal form.
    pub fn is_well_formed(&self) -> bool {
        let n = self.strands;
        if self
            .factors
            .iter()
            .any(|f| f.strands() != n || f.is_identity() || f.is_delta())
        {
            return false;
        }
        self.factors.windows(2).all(|w| {
            (1..n).all(|i| !w[1].starts_with(i) || w[0].finishes_with(i))
        })
    }
}

/// Computes the left normal form of a word.
pub fn normal_form(word: &BraidWord) -> GarsideNormalForm {
    let n = word.strands();
    if n < 2 {
        return GarsideNormalForm {
            strands: n,
            inf: 0,
            factors: Vec::new(),
        };
    }

    // σ_i⁻¹ = Δ⁻¹ · (Δσ_i⁻¹); pushing every Δ⁻¹ to the front flips each
    // earlier factor once per Δ⁻¹ it passes.
    let letters = word.letters();
    let mut negatives_right = vec![0usize; letters.len()];
    let mut count = 0;
    for (k, &l) in letters.iter().enumerate().rev() {
        negatives_right[k] = count;
        if l < 0 {
            count += 1;
        }
    }

    let mut nf: Vec<PermBraid> = Vec::new();
    let mut current = PermBraid::identity(n);
    for (k, &l) in letters.iter().enumerate() {
        let i = l.unsigned_abs() as usize;
        let i = if negatives_right[k] % 2 == 1 { n - i } else { i };
        if l > 0 {
            if !current.try_push(i) {
                push_factor(&mut nf, std::mem::replace(&mut current, PermBraid::identity(n)));
                current.try_push(i);
            }
        } else {
            if !current.is_identity() {
                push_factor(&mut nf, std::mem::replace(&mut current, PermBraid::identity(n)));
            }
            push_factor(&mut nf, PermBraid::delta_over_generator(n, i));
        }
    }
    if !current.is_identity() {
        push_factor(&mut nf, current);
    }

    let deltas = nf.iter().take_while(|f| f.is_delta()).count();
    nf.drain(..deltas);
    while nf.last().is_some_and(PermBraid::is_identity) {
        nf.pop();
    }
    let form = GarsideNormalForm {
        strands: n,
        inf: deltas as i64 - count as i64,
        factors: nf,
    };
    debug_assert!(form.is_well_formed(), "malformed normal form {form:?}");
    form
}

/// Right-multiplies a left-weighted sequence by one simple element.
fn push_factor(nf: &mut Vec<PermBraid>, factor: PermBraid) {
    if factor.is_identity() {
        return;
    }
    nf.push(factor);
    let mut t = nf.len() - 1;
    while t > 0 {
        let (head, tail) = nf.split_at_mut(t);
        if !head[t - 1].left_weight(&mut tail[0]) {
            break;
        }
        t -= 1;
    }
    while nf.last().is_some_and(PermBraid::is_identity) {
        nf.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn delta_has_no_factors() {
        let nf = normal_form(&w(3, &[1, 2, 1]));
        assert_eq!(nf.infimum(), 1);
        assert_eq!(nf.canonical_length(), 0);
    }

    #[test]
    fn identity_form() {
        let nf = normal_form(&BraidWord::identity(4));
        assert!(nf.is_identity());
        assert!(normal_form(&w(4, &[2, -2, 3, 1, -1, -3])).is_identity());
    }

    #[test]
    fn single_simple_factor() {
        let nf = normal_form(&w(3, &[2, 1]));
        assert_eq!(nf.infimum(), 0);
        assert_eq!(nf.canonical_length(), 1);
        assert_eq!(nf.factors()[0].to_letters(), vec![2, 1]);
    }

    #[test]
    fn inverse_generator() {
        let nf = normal_form(&w(3, &[-1]));
        assert_eq!(nf.infimum(), -1);
        assert_eq!(nf.canonical_length(), 1);
        assert!(normal_form(&nf.to_word().compose(&w(3, &[1]))).is_identity());
    }

    #[test]
    fn serde_shape() {
        let nf = normal_form(&w(3, &[2, 1]));
        let s = serde_json::to_string(&nf).unwrap();
        assert_eq!(s, r#"{"n":3,"inf":0,"factors":[[3,1,2]]}"#);
        let back: GarsideNormalForm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, nf);
    }

    #[test]
    fn flip_maps_generators() {
        let mut p = PermBraid::identity(5);
        p.try_push(1);
        let mut q = PermBraid::identity(5);
        q.try_push(4);
        assert_eq!(p.flip(), q);
    }
}
