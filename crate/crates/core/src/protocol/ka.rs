//! Two-sided key agreement `K_A = a₁ z a₂`, `K_B = b₁ z b₂`,
//! `κ = a₁ K_B a₂ = b₁ K_A b₂`, with presets for the concrete schemes it
//! generalizes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::braid::{self, random_word_with, rewrite, words_equal, BraidWord};
use crate::error::{Error, Result};
use crate::subgroup::{
    centralizer_search, interval_generators, noncommuting_witness, SubgroupSpec,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    Generalized,
    Klchkp,
    Cklhc,
    Stickel,
    ShpilrainCentral,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::Generalized,
        Preset::Klchkp,
        Preset::Cklhc,
        Preset::Stickel,
        Preset::ShpilrainCentral,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Preset::Generalized => "generalized",
            Preset::Klchkp => "klchkp",
            Preset::Cklhc => "cklhc",
            Preset::Stickel => "stickel",
            Preset::ShpilrainCentral => "shpilrain-central",
        }
    }
}

/// Which family of commutation conditions the configuration claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionMode {
    /// `z ≠ e`
    Conditions2,
    /// `z = e`
    Conditions3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecretSampling {
    /// Number of subgroup generators multiplied together per secret
    /// (for Stickel: the largest exponent).
    pub length: usize,
    pub positive_only: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KaConfig {
    pub preset: Preset,
    pub strands: usize,
    pub l_a: SubgroupSpec,
    pub r_a: SubgroupSpec,
    pub l_b: SubgroupSpec,
    pub r_b: SubgroupSpec,
    pub z: BraidWord,
    pub mode: ConditionMode,
    pub sampling: SecretSampling,
    /// Seed used to draw the public base element and any committed elements.
    pub setup_seed: u64,
}

pub const DEFAULT_STRANDS: usize = 8;
pub const DEFAULT_SECRET_LENGTH: usize = 8;
/// Letters in the (positive) public base element, per strand. Shorter words
/// often fail to mix the strand blocks.
pub const Z_LETTERS_PER_STRAND: usize = 6;

/// The two public Stickel words: an alternating-sign product and `σ_1⋯σ_{n-1}`.
pub fn stickel_publics(n: usize) -> Result<(BraidWord, BraidWord)> {
    if n < 3 {
        return Err(Error::TooFewStrands { min: 3, got: n });
    }
    let a: Vec<i32> = (1..n as i32).map(|i| if i % 2 == 1 { i } else { -i }).collect();
    let b: Vec<i32> = (1..n as i32).collect();
    Ok((BraidWord::new(n, a)?, BraidWord::new(n, b)?))
}

/// `a^r · b^s`.
pub fn stickel_token(a: &BraidWord, b: &BraidWord, r: u32, s: u32) -> BraidWord {
    a.pow(r as i64).compose(&b.pow(s as i64))
}

impl KaConfig {
    /// Builds a preset on `n` strands. `setup_seed` draws the public element
    /// `z` (and, for the centralizer preset, the committed elements whose
    /// centralizers are published).
    pub fn preset(preset: Preset, n: usize, secret_length: usize, setup_seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(setup_seed);
        let sampling = SecretSampling {
            length: secret_length,
            positive_only: false,
        };
        let l = n / 2;
        let all = braid::artin_generators(n);
        let random_z = |rng: &mut ChaCha8Rng| -> Result<BraidWord> {
            Ok(random_word_with(&all, Z_LETTERS_PER_STRAND * n, false, rng)?.free_reduce())
        };
        let cfg = match preset {
            Preset::Klchkp | Preset::Cklhc => {
                if n < 4 {
                    return Err(Error::TooFewStrands { min: 4, got: n });
                }
                let lower = interval_generators(n, 1, l - 1)?.renamed("LB");
                let upper = interval_generators(n, l + 1, n - 1)?.renamed("UB");
                KaConfig {
                    preset,
                    strands: n,
                    l_a: lower.renamed("L_A"),
                    r_a: lower.renamed("R_A"),
                    l_b: upper.renamed("L_B"),
                    r_b: upper.renamed("R_B"),
                    z: random_z(&mut rng)?,
                    mode: ConditionMode::Conditions2,
                    sampling,
                    setup_seed,
                }
            }
            Preset::Generalized => {
                if n < 6 {
                    return Err(Error::TooFewStrands { min: 6, got: n });
                }
                KaConfig {
                    preset,
                    strands: n,
                    l_a: interval_generators(n, 1, l - 1)?.renamed("L_A"),
                    r_a: interval_generators(n, 2, l)?.renamed("R_A"),
                    l_b: interval_generators(n, l + 1, n - 1)?.renamed("L_B"),
                    r_b: interval_generators(n, l + 2, n - 1)?.renamed("R_B"),
                    z: random_z(&mut rng)?,
                    mode: ConditionMode::Conditions2,
                    sampling,
                    setup_seed,
                }
            }
            Preset::Stickel => {
                let (a, b) = stickel_publics(n)?;
                let left = SubgroupSpec::new("<a>", n, vec![a])?;
                let right = SubgroupSpec::new("<b>", n, vec![b])?;
                KaConfig {
                    preset,
                    strands: n,
                    l_a: left.renamed("L_A"),
                    r_a: right.renamed("R_A"),
                    l_b: left.renamed("L_B"),
                    r_b: right.renamed("R_B"),
                    z: BraidWord::identity(n),
                    mode: ConditionMode::Conditions3,
                    sampling: SecretSampling {
                        length: secret_length,
                        positive_only: true,
                    },
                    setup_seed,
                }
            }
            Preset::ShpilrainCentral => {
                if n < 4 {
                    return Err(Error::TooFewStrands { min: 4, got: n });
                }
                // Alice commits to c1, c2 and publishes generators of their
                // centralizers; Bob's subgroups are those centralizers.
                let left_block = interval_generators(n, 1, l)?;
                let right_block = interval_generators(n, l, n - 1)?;
                // a trivial commitment would publish the whole group
                let mut committed = |block: &SubgroupSpec| -> Result<BraidWord> {
                    loop {
                        let c = random_word_with(block.generators(), secret_length.max(1), true, &mut rng)?;
                        if !braid::is_identity(&c) {
                            return Ok(c);
                        }
                    }
                };
                let c1 = committed(&left_block)?;
                let c2 = committed(&right_block)?;
                let full = SubgroupSpec::full("B_n", n)?;
                let l_a = SubgroupSpec::new("L_A", n, vec![c1])?;
                let r_a = SubgroupSpec::new("R_A", n, vec![c2])?;
                let published = |target: &SubgroupSpec, name: &str| -> Result<SubgroupSpec> {
                    let report = centralizer_search(target, 1, &full, 16);
                    let mut gens = report.informative();
                    if gens.is_empty() {
                        gens = report.words();
                    }
                    SubgroupSpec::new(name, n, gens)
                };
                KaConfig {
                    preset,
                    strands: n,
                    l_b: published(&l_a, "L_B")?,
                    r_b: published(&r_a, "R_B")?,
                    l_a,
                    r_a,
                    z: random_z(&mut rng)?,
                    mode: ConditionMode::Conditions2,
                    sampling,
                    setup_seed,
                }
            }
        };
        Ok(cfg)
    }

    pub fn with_positive_secrets(mut self, positive_only: bool) -> Self {
        self.sampling.positive_only = positive_only;
        self
    }

    /// Are the left and right subgroups of each party kept private?
    pub fn private_own_subgroups(&self) -> bool {
        self.preset == Preset::ShpilrainCentral
    }

    fn z_spec(&self) -> Result<SubgroupSpec> {
        SubgroupSpec::new("Z", self.strands, vec![self.z.clone()])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Commute,
    NonCommute,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub name: String,
    pub required: Relation,
    pub holds: bool,
    /// A non-commuting generator pair, when one exists.
    pub witness: Option<(BraidWord, BraidWord)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub mode: ConditionMode,
    pub checks: Vec<ConditionCheck>,
}

impl ConditionReport {
    /// All `[X, Y] = 1` entries hold; these are what key agreement needs.
    pub fn commutations_hold(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.required == Relation::Commute)
            .all(|c| c.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn validate_conditions(config: &KaConfig) -> Result<ConditionReport> {
    let z_trivial = braid::is_identity(&config.z);
    match (config.mode, z_trivial) {
        (ConditionMode::Conditions3, false) => {
            return Err(Error::InvalidConfig("conditions-3 requires z = e".into()))
        }
        (ConditionMode::Conditions2, true) => {
            return Err(Error::InvalidConfig("conditions-2 requires z != e".into()))
        }
        _ => {}
    }
    let z = config.z_spec()?;
    let (la, ra, lb, rb) = (&config.l_a, &config.r_a, &config.l_b, &config.r_b);
    let mut list: Vec<(&str, &SubgroupSpec, &SubgroupSpec, Relation)> = vec![
        ("[L_A,L_B]=1", la, lb, Relation::Commute),
        ("[R_A,R_B]=1", ra, rb, Relation::Commute),
    ];
    match config.mode {
        ConditionMode::Conditions2 => list.extend([
            ("[L_B,Z]!=1", lb, &z, Relation::NonCommute),
            ("[L_A,Z]!=1", la, &z, Relation::NonCommute),
            ("[R_B,Z]!=1", rb, &z, Relation::NonCommute),
            ("[R_A,Z]!=1", ra, &z, Relation::NonCommute),
            ("[L_A,R_A]!=1", la, ra, Relation::NonCommute),
            ("[L_B,R_B]!=1", lb, rb, Relation::NonCommute),
        ]),
        ConditionMode::Conditions3 => list.extend([
            ("[L_A,R_A]!=1", la, ra, Relation::NonCommute),
            ("[L_B,R_B]!=1", lb, rb, Relation::NonCommute),
            ("[L_B,R_A]!=1", lb, ra, Relation::NonCommute),
            ("[L_A,R_B]!=1", la, rb, Relation::NonCommute),
        ]),
    }
    let checks = list
        .into_iter()
        .map(|(name, x, y, required)| {
            let witness = noncommuting_witness(x, y);
            let holds = match required {
                Relation::Commute => witness.is_none(),
                Relation::NonCommute => witness.is_some(),
            };
            ConditionCheck {
                name: name.to_string(),
                required,
                holds,
                witness,
            }
        })
        .collect();
    Ok(ConditionReport {
        mode: config.mode,
        checks,
    })
}

/// What an eavesdropper sees.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublicTranscript {
    pub preset: Preset,
    pub strands: usize,
    pub mode: ConditionMode,
    pub sampling: SecretSampling,
    /// `None` when the preset keeps it private.
    pub l_a: Option<SubgroupSpec>,
    pub r_a: Option<SubgroupSpec>,
    pub l_b: SubgroupSpec,
    pub r_b: SubgroupSpec,
    pub z: BraidWord,
    pub k_a: BraidWord,
    pub k_b: BraidWord,
}

/// Harness-only record of one run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecretRecord {
    pub a1: BraidWord,
    pub a2: BraidWord,
    pub b1: BraidWord,
    pub b2: BraidWord,
    pub kappa: BraidWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProtocolTranscript {
    pub config: KaConfig,
    public: PublicTranscript,
    secret: SecretRecord,
}

impl ProtocolTranscript {
    pub fn public(&self) -> &PublicTranscript {
        &self.public
    }

    pub fn secret(&self) -> &SecretRecord {
        &self.secret
    }

    pub fn into_parts(self) -> (PublicTranscript, SecretRecord) {
        (self.public, self.secret)
    }
}

fn sample(spec: &SubgroupSpec, length: usize, positive_only: bool, rng: &mut ChaCha8Rng) -> Result<BraidWord> {
    Ok(random_word_with(spec.generators(), length, !positive_only, rng)?
        .widen(spec.strands()))
}

/// `g^k` for `g` the single generator of a cyclic spec, `k ∈ [0, max]`.
fn sample_power(spec: &SubgroupSpec, max: usize, rng: &mut ChaCha8Rng) -> BraidWord {
    let k = rng.gen_range(0..=max);
    spec.generators()[0].pow(k as i64)
}

/// Runs both honest parties and checks that their keys agree.
pub fn ka_run(config: &KaConfig, seed: u64) -> Result<ProtocolTranscript> {
    let report = validate_conditions(config)?;
    if let Some(bad) = report
        .checks
        .iter()
        .find(|c| c.required == Relation::Commute && !c.holds)
    {
        return Err(Error::ConditionFailed(bad.name.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let SecretSampling { length, positive_only } = config.sampling;
    let (a1, a2, b1, b2) = match config.preset {
        Preset::Klchkp => {
            let a = sample(&config.l_a, length, positive_only, &mut rng)?;
            let b = sample(&config.l_b, length, positive_only, &mut rng)?;
            let (ai, bi) = (a.invert(), b.invert());
            (a, ai, b, bi)
        }
        Preset::Stickel => (
            sample_power(&config.l_a, length, &mut rng),
            sample_power(&config.r_a, length, &mut rng),
            sample_power(&config.l_b, length, &mut rng),
            sample_power(&config.r_b, length, &mut rng),
        ),
        _ => (
            sample(&config.l_a, length, positive_only, &mut rng)?,
            sample(&config.r_a, length, positive_only, &mut rng)?,
            sample(&config.l_b, length, positive_only, &mut rng)?,
            sample(&config.r_b, length, positive_only, &mut rng)?,
        ),
    };
    let z = &config.z;
    let k_a = rewrite(&a1.compose(z).compose(&a2));
    let k_b = rewrite(&b1.compose(z).compose(&b2));
    let kappa_a = a1.compose(&k_b).compose(&a2);
    let kappa_b = b1.compose(&k_a).compose(&b2);
    if !words_equal(&kappa_a, &kappa_b) {
        return Err(Error::KeyMismatch);
    }
    let private = config.private_own_subgroups();
    let public = PublicTranscript {
        preset: config.preset,
        strands: config.strands,
        mode: config.mode,
        sampling: config.sampling,
        l_a: (!private).then(|| config.l_a.clone()),
        r_a: (!private).then(|| config.r_a.clone()),
        l_b: config.l_b.clone(),
        r_b: config.r_b.clone(),
        z: z.clone(),
        k_a,
        k_b,
    };
    let secret = SecretRecord {
        a1,
        a2,
        b1,
        b2,
        kappa: rewrite(&kappa_a),
    };
    Ok(ProtocolTranscript {
        config: config.clone(),
        public,
        secret,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn klchkp_conditions() {
        let cfg = KaConfig::preset(Preset::Klchkp, 6, 4, 1).unwrap();
        let rep = validate_conditions(&cfg).unwrap();
        assert!(rep.get("[L_A,L_B]=1").unwrap().holds);
        let c = rep.get("[L_A,R_A]!=1").unwrap();
        assert!(c.holds);
        assert!(c.witness.is_some());
    }

    #[test]
    fn conditions3_with_nontrivial_z_rejected() {
        let mut cfg = KaConfig::preset(Preset::Stickel, 5, 3, 1).unwrap();
        cfg.z = BraidWord::generator(5, 1).unwrap();
        assert!(matches!(validate_conditions(&cfg), Err(Error::InvalidConfig(_))));
        assert!(ka_run(&cfg, 3).is_err());
    }

    #[test]
    fn stickel_left_subgroups_commute() {
        let cfg = KaConfig::preset(Preset::Stickel, 5, 3, 1).unwrap();
        let rep = validate_conditions(&cfg).unwrap();
        assert!(rep.get("[L_A,L_B]=1").unwrap().holds);
        assert!(rep.get("[L_B,R_A]!=1").unwrap().holds);
    }

    #[test]
    fn klchkp_agreement_and_shape() {
        let cfg = KaConfig::preset(Preset::Klchkp, 6, 4, 9).unwrap();
        let t = ka_run(&cfg, 17).unwrap();
        let s = t.secret();
        assert_eq!(s.a2, s.a1.invert());
        assert!(words_equal(&t.public().k_a, &s.a1.conjugate(&cfg.z)));
    }

    #[test]
    fn empty_secrets_give_z() {
        let cfg = KaConfig::preset(Preset::Cklhc, 6, 0, 2).unwrap();
        let t = ka_run(&cfg, 5).unwrap();
        assert!(words_equal(&t.secret().kappa, &cfg.z));
    }

    #[test]
    fn cklhc_token_is_a_decomposition() {
        let cfg = KaConfig::preset(Preset::Cklhc, 6, 3, 4).unwrap();
        let t = ka_run(&cfg, 8).unwrap();
        let s = t.secret();
        assert!(words_equal(&t.public().k_a, &s.a1.compose(&cfg.z).compose(&s.a2)));
    }

    #[test]
    fn stickel_tokens() {
        let (a, b) = stickel_publics(5).unwrap();
        assert!(stickel_token(&a, &b, 0, 0).is_empty());
        assert_eq!(stickel_token(&a, &b, 1, 0), a);
        assert!(!braid::commute(&a, &b));
        // shared key from both sides is a^{r+t} b^{s+u}
        let (r, s, t, u) = (2, 1, 3, 2);
        let alice = stickel_token(&a, &b, r, s);
        let bob = stickel_token(&a, &b, t, u);
        let k_alice = a.pow(r as i64).compose(&bob).compose(&b.pow(s as i64));
        let k_bob = a.pow(t as i64).compose(&alice).compose(&b.pow(u as i64));
        let expected = stickel_token(&a, &b, r + t, s + u);
        assert!(words_equal(&k_alice, &expected));
        assert!(words_equal(&k_bob, &expected));
    }

    #[test]
    fn shpilrain_hides_own_subgroups() {
        let cfg = KaConfig::preset(Preset::ShpilrainCentral, 8, 4, 3).unwrap();
        let t = ka_run(&cfg, 1).unwrap();
        assert!(t.public().l_a.is_none());
        assert!(t.public().r_a.is_none());
    }

    #[test]
    fn failing_commutation_is_an_error() {
        let mut cfg = KaConfig::preset(Preset::Klchkp, 6, 2, 1).unwrap();
        cfg.l_b = interval_generators(6, 2, 3).unwrap();
        assert!(matches!(ka_run(&cfg, 1), Err(Error::ConditionFailed(_))));
    }
}
