//! Desk-scale solvers for simultaneous conjugacy instances.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::braid::{
    handle_reduce, normal_form, words_equal, BraidWord, GarsideNormalForm, DEFAULT_REDUCTION_BUDGET,
};
use crate::error::{Error, Result};
use crate::extract::CspInstance;
use crate::subgroup::{SubgroupSpec, WordEnumerator};

/// How a subgroup word `c` becomes a candidate conjugator.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "t", rename_all = "snake_case")]
pub enum CandidateTransform {
    #[default]
    Identity,
    /// `c · t`
    Append(BraidWord),
}

impl CandidateTransform {
    pub fn apply(&self, c: &BraidWord) -> BraidWord {
        match self {
            CandidateTransform::Identity => c.clone(),
            CandidateTransform::Append(t) => c.compose(t),
        }
    }
}

/// Quantity minimized by the length descent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthFunctional {
    #[default]
    CanonicalLength,
    /// canonical length plus `|inf|`
    InfimumAdjusted,
    /// letters in the normal-form expansion
    LetterLength,
    /// letters left after handle reduction
    HandleReduced,
}

impl LengthFunctional {
    /// Canonical representative the descent carries between steps.
    pub fn represent(self, w: &BraidWord) -> BraidWord {
        if self == LengthFunctional::HandleReduced {
            if let Ok(letters) = handle_reduce(w, DEFAULT_REDUCTION_BUDGET) {
                return BraidWord::from_raw(w.strands(), letters);
            }
        }
        normal_form(w).to_word()
    }

    /// Length of a word produced by [`represent`](Self::represent).
    pub fn measure(self, w: &BraidWord) -> u64 {
        let nf = || normal_form(w);
        match self {
            LengthFunctional::CanonicalLength => nf().canonical_length() as u64,
            LengthFunctional::InfimumAdjusted => {
                let nf = nf();
                nf.canonical_length() as u64 + nf.infimum().unsigned_abs()
            }
            LengthFunctional::LetterLength => nf().letter_length() as u64,
            LengthFunctional::HandleReduced => w.len() as u64,
        }
    }
}

pub const DEFAULT_BUDGET: u64 = 2_000_000;

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub max_len: usize,
    /// `None` searches the instance's own alphabet.
    #[serde(default)]
    pub alphabet: Option<SubgroupSpec>,
    pub inverses: bool,
    #[serde(default)]
    pub transform: CandidateTransform,
    /// Maximum number of candidates tested.
    pub budget: u64,
    pub seed: u64,
    /// Random-prefix restarts for the descent.
    pub restarts: usize,
    /// Longest word peeled in one descent step.
    #[serde(default = "one")]
    pub lookahead: usize,
    #[serde(default)]
    pub functional: LengthFunctional,
    /// Verify candidates on the rayon pool; results are unchanged.
    #[serde(default)]
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            max_len: 3,
            alphabet: None,
            inverses: true,
            transform: CandidateTransform::Identity,
            budget: DEFAULT_BUDGET,
            seed: 0,
            restarts: 8,
            lookahead: 1,
            functional: LengthFunctional::CanonicalLength,
            parallel: false,
        }
    }
}

impl SolverConfig {
    /// Coset search matching the instance's post transform.
    pub fn for_instance(instance: &CspInstance, max_len: usize) -> Self {
        SolverConfig {
            max_len,
            transform: instance
                .candidate_suffix()
                .map_or(CandidateTransform::Identity, CandidateTransform::Append),
            ..SolverConfig::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidConfig("solver budget must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Solved,
    Exhausted,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentStep {
    pub letter: BraidWord,
    pub functional: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub status: SolveStatus,
    pub solution: Option<BraidWord>,
    pub candidates_tested: u64,
    /// Per-pair verification of `solution` (empty when unsolved).
    pub pair_checks: Vec<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<DescentStep>,
}

impl SolutionReport {
    pub fn solved(&self) -> bool {
        self.status == SolveStatus::Solved
    }

    fn unsolved(status: SolveStatus, tested: u64) -> Self {
        SolutionReport {
            status,
            solution: None,
            candidates_tested: tested,
            pair_checks: Vec::new(),
            trace: Vec::new(),
        }
    }

    fn found(instance: &CspInstance, g: BraidWord, tested: u64) -> Self {
        let pair_checks = verify_solution(instance, &g);
        assert!(pair_checks.iter().all(|&b| b), "solver returned a non-solution");
        SolutionReport {
            status: SolveStatus::Solved,
            solution: Some(g),
            candidates_tested: tested,
            pair_checks,
            trace: Vec::new(),
        }
    }
}

/// `g · x_i · g⁻¹ = y_i`, per pair.
pub fn verify_solution(instance: &CspInstance, g: &BraidWord) -> Vec<bool> {
    instance
        .pairs
        .iter()
        .map(|p| words_equal(&g.conjugate(&p.x), &p.y))
        .collect()
}

fn verifies(instance: &CspInstance, g: &BraidWord) -> bool {
    instance
        .pairs
        .iter()
        .all(|p| words_equal(&g.conjugate(&p.x), &p.y))
}

const CHUNK: usize = 512;

/// Candidates in canonical order that solve the instance, at most `limit`,
/// deduplicated by normal form. The report describes the whole scan.
pub fn enumerate_solutions(
    instance: &CspInstance,
    config: &SolverConfig,
    limit: usize,
) -> Result<(Vec<BraidWord>, SolutionReport)> {
    config.validate()?;
    if instance.pairs.is_empty() {
        return Err(Error::EmptyInstance);
    }
    let alphabet = config.alphabet.as_ref().unwrap_or(&instance.alphabet);
    let mut words = WordEnumerator::new(alphabet, config.max_len, config.inverses).map(|(_, w)| w);
    let mut tested = 0u64;
    let mut found: Vec<BraidWord> = Vec::new();
    let mut seen: HashSet<GarsideNormalForm> = HashSet::new();
    loop {
        let room = (config.budget - tested).min(CHUNK as u64) as usize;
        let chunk: Vec<BraidWord> = words.by_ref().take(room).collect();
        if chunk.is_empty() {
            let status = if room == 0 {
                SolveStatus::BudgetExceeded
            } else {
                SolveStatus::Exhausted
            };
            let report = match found.first() {
                Some(g) => SolutionReport::found(instance, g.clone(), tested),
                None => SolutionReport::unsolved(status, tested),
            };
            return Ok((found, report));
        }
        let hits: Vec<(usize, BraidWord)> = if config.parallel {
            chunk
                .par_iter()
                .enumerate()
                .filter_map(|(k, c)| {
                    let g = config.transform.apply(c);
                    verifies(instance, &g).then_some((k, g))
                })
                .collect()
        } else {
            chunk
                .iter()
                .enumerate()
                .filter_map(|(k, c)| {
                    let g = config.transform.apply(c);
                    verifies(instance, &g).then_some((k, g))
                })
                .collect()
        };
        for (k, g) in hits {
            if seen.insert(normal_form(&g)) {
                found.push(g);
                if found.len() >= limit {
                    let tested = tested + k as u64 + 1;
                    let report = SolutionReport::found(instance, found[0].clone(), tested);
                    return Ok((found, report));
                }
            }
        }
        tested += chunk.len() as u64;
    }
}

/// First candidate in canonical (length, lexicographic) order that solves
/// every pair.
pub fn solve_exhaustive(instance: &CspInstance, config: &SolverConfig) -> Result<SolutionReport> {
    Ok(enumerate_solutions(instance, config, 1)?.1)
}

/// Tests `a^0, a^1, …, a^max` (then `a^-1, …, a^-max` when `inverses`),
/// where `a` is the instance's single alphabet generator.
pub fn solve_power(instance: &CspInstance, max_exponent: u32, inverses: bool) -> Result<SolutionReport> {
    if instance.pairs.is_empty() {
        return Err(Error::EmptyInstance);
    }
    let a = &instance.alphabet.generators()[0];
    let mut exps: Vec<i64> = (0..=max_exponent as i64).collect();
    if inverses {
        exps.extend((1..=max_exponent as i64).map(|k| -k));
    }
    let mut tested = 0;
    for k in exps {
        tested += 1;
        let g = a.pow(k);
        if verifies(instance, &g) {
            return Ok(SolutionReport::found(instance, g, tested));
        }
    }
    Ok(SolutionReport::unsolved(SolveStatus::Exhausted, tested))
}

struct Descent {
    xs: Vec<BraidWord>,
    functional: LengthFunctional,
}

impl Descent {
    fn score(&self, ys: &[BraidWord]) -> u64 {
        ys.iter().map(|y| self.functional.measure(y)).sum()
    }

    fn done(&self, ys: &[BraidWord]) -> bool {
        ys.iter().zip(&self.xs).all(|(y, x)| words_equal(y, x))
    }

    fn peel(&self, ys: &[BraidWord], s: &BraidWord) -> Vec<BraidWord> {
        let si = s.invert();
        ys.iter()
            .map(|y| self.functional.represent(&si.compose(y).compose(s)))
            .collect()
    }
}

/// Greedy length descent. Peels words `s` (up to `lookahead` letters) off the conjugated side,
/// `y ← s⁻¹ y s`, choosing the letter that minimizes the summed length
/// functional (lowest index wins ties). On a stall it restarts from a
/// seeded random prefix.
pub fn solve_length_descent(instance: &CspInstance, config: &SolverConfig) -> Result<SolutionReport> {
    config.validate()?;
    if instance.pairs.is_empty() {
        return Err(Error::EmptyInstance);
    }
    let alphabet = config.alphabet.as_ref().unwrap_or(&instance.alphabet);
    let letters: Vec<BraidWord> = WordEnumerator::new(alphabet, 1, config.inverses)
        .tokens()
        .to_vec();
    if letters.is_empty() {
        return Err(Error::EmptyAlphabet);
    }
    // candidate steps: distinct nontrivial words of length ≤ lookahead
    let mut seen = HashSet::new();
    let steps: Vec<BraidWord> = WordEnumerator::new(alphabet, config.lookahead.max(1), config.inverses)
        .map(|(_, w)| w)
        .filter(|w| !w.is_empty() && seen.insert(normal_form(w)))
        .collect();
    // with g = c·t the instance in c is (t x t⁻¹, y)
    let xs: Vec<BraidWord> = instance
        .pairs
        .iter()
        .map(|p| match &config.transform {
            CandidateTransform::Identity => p.x.clone(),
            CandidateTransform::Append(t) => t.conjugate(&p.x),
        })
        .collect();
    let d = Descent {
        xs,
        functional: config.functional,
    };
    let ys0: Vec<BraidWord> = instance
        .pairs
        .iter()
        .map(|p| config.functional.represent(&p.y))
        .collect();
    let strands = instance.strands();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tested = 0u64;
    let mut best_trace = Vec::new();

    for attempt in 0..=config.restarts {
        let mut c = BraidWord::identity(strands);
        let mut ys = ys0.clone();
        let mut trace = Vec::new();
        if attempt > 0 {
            let k = rng.gen_range(1..=config.max_len.clamp(1, 3));
            for _ in 0..k {
                let s = &letters[rng.gen_range(0..letters.len())];
                ys = d.peel(&ys, s);
                c = c.compose(s);
            }
        }
        let mut current = d.score(&ys);
        loop {
            if d.done(&ys) {
                let g = config.transform.apply(&c);
                let mut report = SolutionReport::found(instance, g, tested);
                report.trace = trace;
                return Ok(report);
            }
            if trace.len() >= config.max_len + 3 {
                break;
            }
            let mut best: Option<(u64, usize, Vec<BraidWord>)> = None;
            for (k, s) in steps.iter().enumerate() {
                if tested >= config.budget {
                    let mut r = SolutionReport::unsolved(SolveStatus::BudgetExceeded, tested);
                    r.trace = trace;
                    return Ok(r);
                }
                tested += 1;
                let next = d.peel(&ys, s);
                if d.done(&next) {
                    best = Some((0, k, next));
                    break;
                }
                let f = d.score(&next);
                if best.as_ref().map_or(true, |(bf, _, _)| f < *bf) {
                    best = Some((f, k, next));
                }
            }
            match best {
                Some((f, k, next)) if f < current || d.done(&next) => {
                    c = c.compose(&steps[k]);
                    ys = next;
                    current = f;
                    trace.push(DescentStep {
                        letter: steps[k].clone(),
                        functional: f,
                    });
                }
                _ => break,
            }
        }
        if trace.len() > best_trace.len() {
            best_trace = trace;
        }
    }
    let mut r = SolutionReport::unsolved(SolveStatus::BudgetExceeded, tested);
    r.trace = best_trace;
    Ok(r)
}
