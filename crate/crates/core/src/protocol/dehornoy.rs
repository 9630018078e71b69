//! Three-pass authentication built on shifted conjugation `r ∗ p`.
//!
//! Public key `(p, p' = s ∗ p)`, secret `s`. The prover commits to
//! `x = r ∗ p`, `x' = r ∗ p'`; on challenge 0 it reveals `r`, on challenge 1
//! it reveals `t = r ∗ s`, and the verifier checks `x' = t ∗ x`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::braid::{random_word_with, rewrite, shifted_conjugate, words_equal, BraidWord};
use crate::error::{Error, Result};
use crate::subgroup::{interval_generators, SubgroupSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DehornoyPublic {
    pub strands: usize,
    pub p: BraidWord,
    pub p_prime: BraidWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DehornoyKeys {
    pub public: DehornoyPublic,
    pub s: BraidWord,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Challenge {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Commitment {
    pub x: BraidWord,
    pub x_prime: BraidWord,
}

/// Letters allowed in `p`, `s` and `r`: `σ_1, …, σ_{n-2}`, so that shifted
/// words still live in `B_n`.
pub fn secret_alphabet(n: usize) -> Result<SubgroupSpec> {
    if n < 3 {
        return Err(Error::TooFewStrands { min: 3, got: n });
    }
    interval_generators(n, 1, n - 2)
}

impl DehornoyKeys {
    pub fn generate(n: usize, length: usize, seed: u64) -> Result<Self> {
        let alpha = secret_alphabet(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_word_with(alpha.generators(), length, true, &mut rng)?;
        let s = random_word_with(alpha.generators(), length, true, &mut rng)?;
        Self::from_parts(n, p, s)
    }

    pub fn from_parts(n: usize, p: BraidWord, s: BraidWord) -> Result<Self> {
        let p_prime = rewrite(&shifted_conjugate(&s, &p));
        Ok(DehornoyKeys {
            public: DehornoyPublic {
                strands: n.max(p_prime.strands()),
                p,
                p_prime,
            },
            s,
        })
    }

    pub fn commit(&self, r: &BraidWord) -> Commitment {
        Commitment {
            x: rewrite(&shifted_conjugate(r, &self.public.p)),
            x_prime: rewrite(&shifted_conjugate(r, &self.public.p_prime)),
        }
    }

    pub fn respond(&self, r: &BraidWord, challenge: Challenge) -> BraidWord {
        match challenge {
            Challenge::Zero => r.clone(),
            Challenge::One => rewrite(&shifted_conjugate(r, &self.s)),
        }
    }
}

impl DehornoyPublic {
    pub fn verify(&self, commitment: &Commitment, challenge: Challenge, response: &BraidWord) -> bool {
        match challenge {
            Challenge::Zero => {
                words_equal(&commitment.x, &shifted_conjugate(response, &self.p))
                    && words_equal(&commitment.x_prime, &shifted_conjugate(response, &self.p_prime))
            }
            Challenge::One => words_equal(
                &commitment.x_prime,
                &shifted_conjugate(response, &commitment.x),
            ),
        }
    }
}

/// One complete round, for simulation and attack inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DehornoyRound {
    pub commitment: Commitment,
    pub challenge: Challenge,
    pub response: BraidWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DehornoySession {
    pub public: DehornoyPublic,
    /// Subgroup the commitment randomness is drawn from, when published.
    pub r_subgroup: Option<SubgroupSpec>,
    pub rounds: Vec<DehornoyRound>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DehornoySecrets {
    pub s: BraidWord,
    pub r: Vec<BraidWord>,
}

/// Runs `rounds` honest rounds with `r` drawn from `r_subgroup` (or from the
/// secret alphabet) and random challenges.
pub fn simulate_session(
    keys: &DehornoyKeys,
    r_subgroup: Option<&SubgroupSpec>,
    r_length: usize,
    rounds: usize,
    seed: u64,
) -> Result<(DehornoySession, DehornoySecrets)> {
    let default = secret_alphabet(keys.public.strands)?;
    let alpha = r_subgroup.unwrap_or(&default);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(rounds);
    let mut rs = Vec::with_capacity(rounds);
    for _ in 0..rounds {
        let r = random_word_with(alpha.generators(), r_length, true, &mut rng)?;
        let challenge = if rng.gen_bool(0.5) { Challenge::One } else { Challenge::Zero };
        let commitment = keys.commit(&r);
        let response = keys.respond(&r, challenge);
        debug_assert!(keys.public.verify(&commitment, challenge, &response));
        out.push(DehornoyRound {
            commitment,
            challenge,
            response,
        });
        rs.push(r);
    }
    Ok((
        DehornoySession {
            public: keys.public.clone(),
            r_subgroup: r_subgroup.cloned(),
            rounds: out,
        },
        DehornoySecrets {
            s: keys.s.clone(),
            r: rs,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn honest_rounds_verify() {
        let keys = DehornoyKeys::generate(5, 6, 11).unwrap();
        for (i, seed) in (0..10u64).enumerate() {
            let r = crate::braid::random_word(secret_alphabet(5).unwrap().generators(), 5, seed, true).unwrap();
            let c = keys.commit(&r);
            let ch = if i % 2 == 0 { Challenge::Zero } else { Challenge::One };
            assert!(keys.public.verify(&c, ch, &keys.respond(&r, ch)));
        }
    }

    #[test]
    fn wrong_response_rejected() {
        let keys = DehornoyKeys::generate(5, 6, 11).unwrap();
        let r = BraidWord::new(5, vec![1, 2]).unwrap();
        let c = keys.commit(&r);
        let bad = BraidWord::new(5, vec![2]).unwrap();
        assert!(!keys.public.verify(&c, Challenge::Zero, &bad));
        assert!(!keys.public.verify(&c, Challenge::One, &bad));
    }

    #[test]
    fn session_is_seeded() {
        let keys = DehornoyKeys::generate(4, 4, 1).unwrap();
        let a = simulate_session(&keys, None, 3, 4, 9).unwrap();
        let b = simulate_session(&keys, None, 3, 4, 9).unwrap();
        assert_eq!(a, b);
        assert!(a.0.rounds.iter().all(|r| a.0.public.verify(&r.commitment, r.challenge, &r.response)));
    }

    #[test]
    fn challenge_serde() {
        assert_eq!(serde_json::to_string(&Challenge::One).unwrap(), "\"1\"");
    }
}
