use serde::{Deserialize, Serialize};

use super::word::BraidWord;
use crate::error::{Error, Result};

/// The endomorphisms the attacks need: identity, the shift `σ_i ↦ σ_{i+1}`
/// and inner automorphisms `g ↦ h g h⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "by", rename_all = "snake_case")]
pub enum Endomorphism {
    Identity,
    Shift,
    Inner(BraidWord),
}

impl Endomorphism {
    pub fn apply(&self, a: &BraidWord) -> BraidWord {
        match self {
            Endomorphism::Identity => a.clone(),
            Endomorphism::Shift => shift(a),
            Endomorphism::Inner(h) => h.conjugate(a),
        }
    }

    /// Undoes `apply` on a word in its image. Shift is undone syntactically
    /// (see [`unshift`]); inner automorphisms are undone by conjugating back.
    pub fn invert_on(&self, image: &BraidWord) -> Result<BraidWord> {
        match self {
            Endomorphism::Identity => Ok(image.clone()),
            Endomorphism::Shift => unshift(image),
            Endomorphism::Inner(h) => Ok(h.invert().conjugate(image)),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Endomorphism::Identity => "identity",
            Endomorphism::Shift => "shift",
            Endomorphism::Inner(_) => "inner",
        }
    }
}

/// `σ_i ↦ σ_{i+1}` on letters, `n ↦ n+1` on strands.
pub fn shift(a: &BraidWord) -> BraidWord {
    let letters = a.letters().iter().map(|&l| l + l.signum()).collect();
    BraidWord::from_raw(a.strands() + 1, letters)
}

/// Inverse of [`shift`] on words that avoid `σ_1^{±1}` literally.
pub fn unshift(a: &BraidWord) -> Result<BraidWord> {
    if a.letters().iter().any(|l| l.abs() == 1) {
        return Err(Error::NotInShiftImage);
    }
    let letters = a.letters().iter().map(|&l| l - l.signum()).collect();
    Ok(BraidWord::from_raw((a.strands() - 1).max(1), letters))
}

/// Shifted conjugation `r ∗ p = r · d(p) · σ_1 · d(r)⁻¹`.
pub fn shifted_conjugate(r: &BraidWord, p: &BraidWord) -> BraidWord {
    let sigma1 = BraidWord::from_raw(2, vec![1]);
    r.compose(&shift(p))
        .compose(&sigma1)
        .compose(&shift(r).invert())
}
