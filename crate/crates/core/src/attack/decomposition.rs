use crate::braid::{commute, rewrite, words_equal, BraidWord};
use crate::error::{Error, Result};
use crate::extract::{
    build_mscsp_dhdp, prescribed_probes, probe_words, CspInstance, CspPair, DhdpTarget,
    InstanceMeta,
};
use crate::protocol::{Preset, PublicTranscript};
use crate::solve::{enumerate_solutions, solve_length_descent};
use crate::subgroup::SubgroupSpec;

use super::{AttackConfig, AttackReport, Timer, KEY};

fn all_commute(x: &BraidWord, spec: &SubgroupSpec) -> bool {
    spec.generators().iter().all(|g| commute(x, g))
}

/// Recovers one party's factors from its token and combines them with the
/// other token. Alice's side is used when her subgroups are public, Bob's
/// otherwise.
pub fn attack_decomposition(public: &PublicTranscript, config: &AttackConfig) -> Result<AttackReport> {
    let mut report = AttackReport::new("decomposition");
    let mut timer = Timer::new(config.timings);
    let alice = public.l_a.is_some() && public.r_a.is_some();
    let (left_t, right_t, names) = if alice {
        (DhdpTarget::A, DhdpTarget::B, ["a-candidate", "b-candidate"])
    } else {
        (DhdpTarget::C, DhdpTarget::D, ["c-candidate", "d-candidate"])
    };
    let (token, other) = if alice {
        (&public.k_a, &public.k_b)
    } else {
        (&public.k_b, &public.k_a)
    };

    let mut sides: Vec<Vec<BraidWord>> = Vec::new();
    for target in [left_t, right_t] {
        let spec = prescribed_probes(public, target)?;
        let probes = probe_words(&spec, config.extra_probes, config.probe_len, config.probe_seed)?;
        let inst = build_mscsp_dhdp(public, target, &probes)?;
        let (found, sr) = enumerate_solutions(&inst, &config.solver_for(&inst), config.candidates)?;
        report.solver_reports.push(sr);
        sides.push(found.iter().map(|g| inst.answer_from(g)).collect());
    }
    timer.lap(&mut report, "solve");
    if sides.iter().any(Vec::is_empty) {
        report.notes.push("no solution within the search bound".into());
        report.check("solver", false);
        return Ok(report.conclude());
    }

    // the peer subgroups each recovered factor must commute with
    let (peer_left, peer_right) = if alice {
        (Some(&public.l_b), Some(&public.r_b))
    } else {
        (public.l_a.as_ref(), public.r_a.as_ref())
    };
    let mut best: Option<(BraidWord, BraidWord, Vec<(String, bool)>)> = None;
    'outer: for left in &sides[0] {
        for right in &sides[1] {
            let mut checks = vec![(
                "token".to_string(),
                words_equal(&left.compose(&public.z).compose(right), token),
            )];
            match peer_left {
                Some(s) => checks.push(("left-commutes-peer".into(), all_commute(left, s))),
                None => checks.push(("left-in-own-subgroup".into(), true)),
            }
            match peer_right {
                Some(s) => checks.push(("right-commutes-peer".into(), all_commute(right, s))),
                None => checks.push(("right-in-own-subgroup".into(), true)),
            }
            let pass = checks.iter().all(|c| c.1);
            if best.is_none() || pass {
                best = Some((left.clone(), right.clone(), checks));
            }
            if pass {
                break 'outer;
            }
        }
    }
    let (left, right, checks) = best.expect("both sides nonempty");
    for (name, pass) in checks {
        report.check(name, pass);
    }
    let key = rewrite(&left.compose(other).compose(&right));
    report.recovered.insert(names[0].into(), left);
    report.recovered.insert(names[1].into(), right);
    if report.checks_pass() {
        report.recovered.insert(KEY.into(), key);
    }
    timer.lap(&mut report, "combine");
    Ok(report.conclude())
}

/// The protocol's own conjugacy pair `(z, K_A)` for schemes whose tokens are
/// conjugates (`a₂ = a₁⁻¹`).
pub fn build_native_csp(public: &PublicTranscript) -> Result<CspInstance> {
    if public.preset != Preset::Klchkp {
        return Err(Error::InvalidConfig(
            "the native conjugacy pair needs conjugate tokens".into(),
        ));
    }
    let alphabet = public
        .l_a
        .clone()
        .ok_or_else(|| Error::InvalidConfig("left subgroup is private".into()))?;
    CspInstance::new(
        vec![CspPair {
            x: public.z.clone(),
            y: public.k_a.clone(),
        }],
        alphabet,
        InstanceMeta {
            extractor: "native".into(),
            target: "a1".into(),
            flags: Vec::new(),
        },
    )
}

/// Length-based attack on conjugate tokens: descent for `ã` with
/// `ã z ã⁻¹ = K_A`, then key `ã K_B ã⁻¹`.
pub fn attack_length(public: &PublicTranscript, config: &AttackConfig) -> Result<AttackReport> {
    let mut report = AttackReport::new("length");
    let mut timer = Timer::new(config.timings);
    let inst = build_native_csp(public)?;
    let sr = solve_length_descent(&inst, &config.solver_for(&inst))?;
    timer.lap(&mut report, "descent");
    let found = sr.solution.clone();
    report.solver_reports.push(sr);
    let Some(a) = found else {
        report.check("solver", false);
        return Ok(report.conclude());
    };
    report.check("token", words_equal(&a.conjugate(&public.z), &public.k_a));
    report.check("left-commutes-peer", all_commute(&a, &public.l_b));
    if report.checks_pass() {
        report
            .recovered
            .insert(KEY.into(), rewrite(&a.conjugate(&public.k_b)));
    }
    report.recovered.insert("a-candidate".into(), a);
    Ok(report.conclude())
}
