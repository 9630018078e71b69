use serde::{Deserialize, Serialize};

use crate::braid::{rewrite, words_equal, BraidWord};
use crate::error::{Error, Result};
use crate::extract::{ce_difference_pair, CeSide, CspInstance, CspPair, InstanceMeta};
use crate::solve::{enumerate_solutions, SolutionReport, SolverConfig};
use crate::subgroup::SubgroupSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdlConfig {
    /// Alphabet and bounds for both factor searches.
    pub solver: SolverConfig,
    pub alphabet: SubgroupSpec,
    /// Distinct solutions kept per side before combining.
    pub candidates: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdlVerdict {
    Yes,
    /// Nothing found; this is not evidence of absence.
    NoEvidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdlOutcome {
    pub subset: Vec<usize>,
    pub verdict: EdlVerdict,
    /// `(g₁, g₂)` with `y_i = g₁ x_i g₂` on the subset.
    pub witnesses: Option<(BraidWord, BraidWord)>,
    pub solver_reports: Vec<SolutionReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
}

impl EdlOutcome {
    pub fn is_yes(&self) -> bool {
        self.verdict == EdlVerdict::Yes
    }
}

/// Do the equations `y_i = u x_i v` (for `i` in each subset) share a factor
/// pair `(u, v)`? Each subset is decided separately; `None` means all
/// indices at once.
pub fn decide_edl(
    tokens: &[(BraidWord, BraidWord)],
    subsets: Option<&[Vec<usize>]>,
    config: &EdlConfig,
) -> Result<Vec<EdlOutcome>> {
    if tokens.len() < 2 {
        return Err(Error::TooFewTokens {
            need: 2,
            got: tokens.len(),
        });
    }
    let all = vec![(0..tokens.len()).collect::<Vec<_>>()];
    let subsets = subsets.unwrap_or(&all);
    subsets
        .iter()
        .map(|s| decide_subset(tokens, s, config))
        .collect()
}

fn decide_subset(tokens: &[(BraidWord, BraidWord)], subset: &[usize], config: &EdlConfig) -> Result<EdlOutcome> {
    if subset.len() < 2 {
        return Err(Error::TooFewTokens {
            need: 2,
            got: subset.len(),
        });
    }
    if let Some(&bad) = subset.iter().find(|&&i| i >= tokens.len()) {
        return Err(Error::InvalidConfig(format!("token index {bad} out of range")));
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for w in subset.windows(2) {
        let ((xi, yi), (xj, yj)) = (&tokens[w[0]], &tokens[w[1]]);
        // y_i y_j⁻¹ = u (x_i x_j⁻¹) u⁻¹
        left.push(CspPair {
            x: xi.compose(&xj.invert()),
            y: rewrite(&ce_difference_pair(yi, yj, CeSide::Left)),
        });
        // y_i⁻¹ y_j = v⁻¹ (x_i⁻¹ x_j) v
        right.push(CspPair {
            x: xi.invert().compose(xj),
            y: rewrite(&ce_difference_pair(yj, yi, CeSide::Right)),
        });
    }
    let meta = |target: &str| InstanceMeta {
        extractor: "edl-difference".into(),
        target: target.into(),
        flags: Vec::new(),
    };
    let left = CspInstance::new(left, config.alphabet.clone(), meta("u"))?;
    let right = CspInstance::new(right, config.alphabet.clone(), meta("v^-1"))?;
    let solver = SolverConfig {
        alphabet: None,
        ..config.solver.clone()
    };
    let (g1s, r1) = enumerate_solutions(&left, &solver, config.candidates)?;
    let (g2s, r2) = enumerate_solutions(&right, &solver, config.candidates)?;
    let mut outcome = EdlOutcome {
        subset: subset.to_vec(),
        verdict: EdlVerdict::NoEvidence,
        witnesses: None,
        solver_reports: vec![r1, r2],
        diagnostics: Vec::new(),
    };
    if g1s.is_empty() {
        outcome.diagnostics.push("no left factor within bound".into());
    }
    if g2s.is_empty() {
        outcome.diagnostics.push("no right factor within bound".into());
    }
    for g1 in &g1s {
        for g in &g2s {
            let g2 = g.invert();
            let verified = subset
                .iter()
                .all(|&i| words_equal(&tokens[i].1, &g1.compose(&tokens[i].0).compose(&g2)));
            if verified {
                outcome.verdict = EdlVerdict::Yes;
                outcome.witnesses = Some((g1.clone(), g2));
                return Ok(outcome);
            }
        }
    }
    if !g1s.is_empty() && !g2s.is_empty() {
        outcome.diagnostics.push("no candidate pair verified".into());
    }
    Ok(outcome)
}
