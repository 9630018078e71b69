use crate::braid::{
    shift, shifted_conjugate, unshift, words_equal, BraidWord, Endomorphism,
};
use crate::error::{Error, Result};
use crate::extract::{build_dehornoy_centralizer_instance, build_dehornoy_pair_instance};
use crate::protocol::dehornoy::secret_alphabet;
use crate::protocol::{Challenge, Commitment, DehornoyPublic, DehornoyRound};
use crate::solve::enumerate_solutions;
use crate::subgroup::{centralizer_search, SubgroupSpec, WordEnumerator};

use super::{AttackConfig, AttackReport, Timer};

/// A word `w` over `alphabet` with `shift(w) = image`, searched up to
/// `max_len`. Needed when `image` equals a shifted word without literally
/// being one.
pub fn shift_preimage(image: &BraidWord, alphabet: &SubgroupSpec, max_len: usize) -> Option<BraidWord> {
    if let Ok(w) = unshift(image) {
        return Some(w);
    }
    WordEnumerator::new(alphabet, max_len, true)
        .map(|(_, w)| w)
        .find(|w| words_equal(&shift(w), image))
}

/// From a round answered with `t = r ∗ s`: solves
/// `r · (dp dp'⁻¹) · r⁻¹ = x x'⁻¹` for `r`, then `ds = r⁻¹ · t · dr · σ₁⁻¹`
/// and `s = unshift(ds)`, accepting only if `p' = s ∗ p`.
pub fn attack_dehornoy_pair(
    public: &DehornoyPublic,
    round: &DehornoyRound,
    config: &AttackConfig,
) -> Result<AttackReport> {
    if round.challenge != Challenge::One {
        return Err(Error::InvalidConfig("the pair attack needs a challenge-1 round".into()));
    }
    let mut report = AttackReport::new("dehornoy-pair");
    let mut timer = Timer::new(config.timings);
    let alphabet = secret_alphabet(public.strands)?;
    let Commitment { x, x_prime } = &round.commitment;
    let inst = build_dehornoy_pair_instance(&public.p, &public.p_prime, x, x_prime, &alphabet)?;
    if inst.meta.flags.iter().any(|f| f == "degenerate") {
        report.notes.push("p and p' coincide: the instance carries no information".into());
    }
    let (found, sr) = enumerate_solutions(&inst, &config.solver_for(&inst), config.candidates)?;
    report.solver_reports.push(sr);
    timer.lap(&mut report, "solve");

    let sigma1_inv = BraidWord::new(2, vec![-1])?;
    let t = &round.response;
    let mut best: Option<(BraidWord, Option<BraidWord>, bool)> = None;
    for r in &found {
        let ds = r.invert().compose(t).compose(&shift(r)).compose(&sigma1_inv);
        let s = shift_preimage(&ds, &alphabet, config.solver.max_len);
        let ok = s
            .as_ref()
            .is_some_and(|s| words_equal(&shifted_conjugate(s, &public.p), &public.p_prime));
        if best.is_none() || ok {
            best = Some((r.clone(), s, ok));
        }
        if ok {
            break;
        }
    }
    match best {
        None => {
            report.check("solver", false);
        }
        Some((r, s, ok)) => {
            report.check("unshift", s.is_some());
            report.check("p' = s*p", ok);
            report.recovered.insert("r-candidate".into(), r);
            if let Some(s) = s {
                report.recovered.insert("s-candidate".into(), s);
            }
        }
    }
    timer.lap(&mut report, "recover");
    Ok(report.conclude())
}

/// With `r` drawn from a published subgroup `R`: probes `N` commuting with
/// `R` give pairs `(N, x⁻¹ N x)` conjugated by `dr · σ₁⁻¹ · dp⁻¹`; the
/// search runs over `d(R)` so that `dr` unshifts to `r`. Accepts only if
/// `r ∗ p = x` (and `r ∗ p' = x'`).
pub fn attack_dehornoy_centralizer(
    public: &DehornoyPublic,
    r_spec: &SubgroupSpec,
    commitment: &Commitment,
    config: &AttackConfig,
) -> Result<AttackReport> {
    let mut report = AttackReport::new("dehornoy-centralizer");
    let mut timer = Timer::new(config.timings);
    let n = public.strands.max(r_spec.strands());
    let full = SubgroupSpec::full("B_n", n)?;
    let probes: Vec<BraidWord> = centralizer_search(r_spec, 1, &full, 16)
        .words()
        .into_iter()
        .filter(|w| !crate::braid::is_identity(w))
        .collect();
    if probes.is_empty() {
        return Err(Error::EmptyCentralizer);
    }
    let inst = build_dehornoy_centralizer_instance(&public.p, &commitment.x, r_spec, &probes)?;
    report.notes.extend(inst.meta.flags.iter().cloned());
    let (found, sr) = enumerate_solutions(&inst, &config.solver_for(&inst), config.candidates)?;
    report.solver_reports.push(sr);
    timer.lap(&mut report, "solve");

    let mut best: Option<(BraidWord, bool)> = None;
    for g in &found {
        let dr = inst.answer_from(g);
        let Ok(r) = Endomorphism::Shift.invert_on(&dr) else {
            continue;
        };
        let ok = words_equal(&shifted_conjugate(&r, &public.p), &commitment.x)
            && words_equal(&shifted_conjugate(&r, &public.p_prime), &commitment.x_prime);
        if best.is_none() || ok {
            best = Some((r, ok));
        }
        if ok {
            break;
        }
    }
    match best {
        None => {
            report.check("solver", false);
        }
        Some((r, ok)) => {
            report.check("x = r*p", ok);
            report.recovered.insert("r-candidate".into(), r);
        }
    }
    timer.lap(&mut report, "recover");
    Ok(report.conclude())
}
