use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A word over signed Artin generators on an explicit number of strands.
///
/// Letter `i > 0` stands for `σ_i`, letter `-i` for `σ_i⁻¹`. The empty word is
/// the identity. A word on `n` strands is read in `B_m` for any `m ≥ n` through
/// the natural inclusion; binary operations reconcile to the larger count.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawWord", into = "RawWord")]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct RawWord {
    n: usize,
    word: Vec<i32>,
}

impl TryFrom<RawWord> for BraidWord {
    type Error = Error;

    fn try_from(raw: RawWord) -> Result<Self> {
        BraidWord::new(raw.n, raw.word)
    }
}

impl From<BraidWord> for RawWord {
    fn from(w: BraidWord) -> Self {
        RawWord {
            n: w.strands,
            word: w.letters,
        }
    }
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::TooFewStrands { min: 1, got: 0 });
        }
        for &l in &letters {
            if l == 0 {
                return Err(Error::ZeroLetter);
            }
            if l.unsigned_abs() as usize >= strands {
                return Err(Error::InvalidLetter { letter: l, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Builds a word whose letters are already known to be in range.
    pub(crate) fn from_raw(strands: usize, letters: Vec<i32>) -> Self {
        debug_assert!(letters
            .iter()
            .all(|&l| l != 0 && (l.unsigned_abs() as usize) < strands));
        BraidWord { strands, letters }
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord {
            strands: strands.max(1),
            letters: Vec::new(),
        }
    }

    /// The single generator `σ_i^{±1}`.
    pub fn generator(strands: usize, letter: i32) -> Result<Self> {
        BraidWord::new(strands, vec![letter])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reinterprets the word on `strands` strands (natural inclusion).
    /// Counts below the current one are ignored.
    pub fn widen(&self, strands: usize) -> BraidWord {
        BraidWord {
            strands: self.strands.max(strands),
            letters: self.letters.clone(),
        }
    }

    /// Concatenation, i.e. the product `self · other`.
    pub fn compose(&self, other: &BraidWord) -> BraidWord {
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands.max(other.strands),
            letters,
        }
    }

    /// Letters reversed with signs flipped.
    pub fn invert(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// `self^k`; negative exponents use the inverse.
    pub fn pow(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let reps = k.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(base.letters.len() * reps);
        for _ in 0..reps {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// `self · g · self⁻¹`.
    pub fn conjugate(&self, g: &BraidWord) -> BraidWord {
        self.compose(g).compose(&self.invert())
    }

    /// Cancels adjacent `σ_i σ_i⁻¹` pairs. Purely syntactic.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            strands: self.strands,
            letters: out,
        }
    }

    /// Largest generator index used, 0 for the empty word.
    pub fn max_index(&self) -> usize {
        self.letters
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Strands touched by at least one crossing (1-based).
    pub fn support(&self) -> Vec<usize> {
        let mut touched = vec![false; self.strands + 1];
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            touched[i] = true;
            touched[i + 1] = true;
        }
        (1..=self.strands).filter(|&s| touched[s]).collect()
    }

    /// True if every letter is a positive generator.
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }
}

impl fmt::Debug for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}{:?}", self.strands, self.letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if *l > 0 {
                write!(f, "s{l}")?;
            } else {
                write!(f, "s{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_letters() {
        assert_eq!(BraidWord::new(3, vec![3]), Err(Error::InvalidLetter { letter: 3, strands: 3 }));
        assert_eq!(BraidWord::new(3, vec![0]), Err(Error::ZeroLetter));
        assert!(BraidWord::new(0, vec![]).is_err());
        assert!(BraidWord::new(3, vec![-2, 1]).is_ok());
    }

    #[test]
    fn compose_pads_strands() {
        let ab = w(2, &[1]).compose(&w(4, &[3]));
        assert_eq!(ab, w(4, &[1, 3]));
        let e = BraidWord::identity(3);
        assert_eq!(e.compose(&w(3, &[2, -1])), w(3, &[2, -1]));
    }

    #[test]
    fn invert_reverses_and_flips() {
        assert_eq!(w(3, &[1, 2]).invert(), w(3, &[-2, -1]));
        assert_eq!(BraidWord::identity(3).invert(), BraidWord::identity(3));
        let x = w(5, &[1, -3, 4, 2]);
        assert_eq!(x.invert().invert(), x);
    }

    #[test]
    fn free_reduce_cancels_pairs() {
        assert!(w(3, &[1, 2, -2, -1]).free_reduce().is_empty());
        assert_eq!(w(3, &[1, 2, -1]).free_reduce(), w(3, &[1, 2, -1]));
    }

    #[test]
    fn serde_shape() {
        let x = w(4, &[1, -3]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"n":4,"word":[1,-3]}"#);
        let back: BraidWord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<BraidWord>(r#"{"n":2,"word":[2]}"#).is_err());
    }

    #[test]
    fn support_and_pow() {
        assert_eq!(w(5, &[1, 3]).support(), vec![1, 2, 3, 4]);
        assert_eq!(w(3, &[1]).pow(3), w(3, &[1, 1, 1]));
        assert_eq!(w(3, &[1, 2]).pow(-1), w(3, &[-2, -1]));
    }
}
