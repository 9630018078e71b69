use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::braid::{commute, normal_form, rewrite, BraidWord, GarsideNormalForm};
use crate::error::Result;
use crate::extract::{ce_conjugate_sample, CeSide, CspInstance, CspPair, InstanceMeta};
use crate::solve::{enumerate_solutions, SolutionReport, SolverConfig};
use crate::subgroup::{SubgroupSpec, WordEnumerator};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialFactorConfig {
    /// Bounds for the per-probe conjugacy search (over `A ∪ Z`).
    pub solver: SolverConfig,
    /// Solutions kept per probe.
    pub candidates: usize,
    /// Longest `A`-word and `Z`-word tried by the completion.
    pub a_len: usize,
    pub z_len: usize,
}

impl Default for PartialFactorConfig {
    fn default() -> Self {
        PartialFactorConfig {
            solver: SolverConfig {
                max_len: 4,
                ..SolverConfig::default()
            },
            candidates: 4096,
            a_len: 2,
            z_len: 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialFactorResult {
    pub probe: BraidWord,
    pub report: SolutionReport,
    /// `s⁻¹ · u'` for the accepted solution `s`: a right factor of `z`.
    pub residual: Option<BraidWord>,
    pub depth: usize,
    /// The token left after peeling, `u' · residual⁻¹`.
    pub remaining: Option<BraidWord>,
    /// Residual commutes with the probe.
    pub commutes_with_probe: bool,
    /// `solution · residual = u'`.
    pub certificate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Completion {
    pub a: BraidWord,
    pub z: BraidWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialFactorOutcome {
    pub peels: Vec<PartialFactorResult>,
    pub completion: Option<Completion>,
}

fn nf_set(spec: &SubgroupSpec, max_len: usize) -> HashSet<GarsideNormalForm> {
    WordEnumerator::new(spec, max_len, true)
        .map(|(_, w)| normal_form(&w))
        .collect()
}

/// Peels right factors of `z` off `u = x · a · z` with one probe per level,
/// then brute-forces the remaining factor.
///
/// For probe `S`, `u' S u'⁻¹` is conjugate to `S` by `x · a · z̄` whenever
/// `z = z̄ · z_T` with `z_T` commuting with `S`. Solving for `s = x · c`
/// (`c` over `A ∪ Z`) leaves the residual `s⁻¹ u'`; the next level works on
/// `s`. Every candidate solution of the last level is offered to the
/// completion, which looks for a `Z`-word `z̄` with `x⁻¹ s z̄⁻¹ ∈ A` and
/// `z̄ · residuals ∈ Z`.
pub fn partial_factor_attack(
    x: &BraidWord,
    u: &BraidWord,
    a_spec: &SubgroupSpec,
    z_spec: &SubgroupSpec,
    probes: &[BraidWord],
    config: &PartialFactorConfig,
) -> Result<PartialFactorOutcome> {
    let n = a_spec.strands().max(z_spec.strands()).max(u.strands());
    let mut gens = a_spec.generators().to_vec();
    gens.extend(z_spec.generators().iter().cloned());
    let union = SubgroupSpec::new("A+Z", n, gens)?;
    let xi = x.invert();
    let solver = SolverConfig {
        alphabet: None,
        ..config.solver.clone()
    };

    let mut peels = Vec::new();
    let mut token = u.clone();
    let mut acc = BraidWord::identity(n);
    let mut last_solutions: Vec<BraidWord> = Vec::new();
    for (depth, probe) in probes.iter().enumerate() {
        let ce = ce_conjugate_sample(&token, probe, CeSide::Left).output;
        // solve for c = x⁻¹ s directly
        let inst = CspInstance::new(
            vec![CspPair {
                x: probe.clone(),
                y: rewrite(&xi.compose(&ce).compose(x)),
            }],
            union.clone(),
            InstanceMeta {
                extractor: "partial-factor".into(),
                target: "x^-1*s".into(),
                flags: Vec::new(),
            },
        )?;
        let (cs, report) = enumerate_solutions(&inst, &solver, config.candidates)?;
        let solutions: Vec<BraidWord> = cs.iter().map(|c| x.compose(c)).collect();
        let Some(s) = solutions.first().cloned() else {
            peels.push(PartialFactorResult {
                probe: probe.clone(),
                report,
                residual: None,
                depth,
                remaining: None,
                commutes_with_probe: false,
                certificate: false,
            });
            break;
        };
        let residual = s.invert().compose(&token);
        let certificate = crate::braid::words_equal(&s.compose(&residual), &token);
        peels.push(PartialFactorResult {
            probe: probe.clone(),
            report,
            commutes_with_probe: commute(&residual, probe),
            certificate,
            residual: Some(residual.clone()),
            depth,
            remaining: Some(s.clone()),
        });
        if depth + 1 == probes.len() {
            last_solutions = solutions;
        } else {
            acc = residual.compose(&acc);
            token = s;
        }
    }

    if last_solutions.is_empty() {
        // plain brute force on whatever is left
        last_solutions.push(token.clone());
    }
    let completion = complete(x, &token, &acc, &last_solutions, a_spec, z_spec, config);
    Ok(PartialFactorOutcome { peels, completion })
}

fn complete(
    x: &BraidWord,
    token: &BraidWord,
    acc: &BraidWord,
    solutions: &[BraidWord],
    a_spec: &SubgroupSpec,
    z_spec: &SubgroupSpec,
    config: &PartialFactorConfig,
) -> Option<Completion> {
    let a_set = nf_set(a_spec, config.a_len);
    let z_set = nf_set(z_spec, config.z_len);
    let xi = x.invert();
    let zbars: Vec<BraidWord> = WordEnumerator::new(z_spec, config.z_len, true)
        .map(|(_, w)| w)
        .collect();
    for s in solutions {
        let tail = s.invert().compose(token).compose(acc);
        for zbar in &zbars {
            let z = zbar.compose(&tail);
            if !z_set.contains(&normal_form(&z)) {
                continue;
            }
            let a = xi.compose(s).compose(&zbar.invert());
            if a_set.contains(&normal_form(&a)) {
                return Some(Completion {
                    a: rewrite(&a),
                    z: rewrite(&z),
                });
            }
        }
    }
    None
}
