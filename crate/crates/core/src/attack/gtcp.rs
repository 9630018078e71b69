use crate::braid::{words_equal, BraidWord, Endomorphism};
use crate::error::Result;
use crate::extract::{build_gtcp_instances, CentralizerBudget, GtcpEndos, GtcpMode, GtcpSample};
use crate::solve::enumerate_solutions;
use crate::subgroup::SubgroupSpec;

use super::dehornoy::shift_preimage;
use super::{AttackConfig, AttackReport, Timer};

/// Recovers `r` from samples `y_i = u(r) v(p_i) w(r)⁻¹` and checks that it
/// reproduces every sample.
pub fn solve_gtcp(
    samples: &[GtcpSample],
    endos: &GtcpEndos,
    mode: GtcpMode,
    r_alphabet: &SubgroupSpec,
    config: &AttackConfig,
) -> Result<AttackReport> {
    let mut report = AttackReport::new(format!("gtcp-{}", mode.label()));
    let mut timer = Timer::new(config.timings);
    let inst = build_gtcp_instances(samples, endos, mode, r_alphabet, CentralizerBudget::default())?;
    let (found, sr) = enumerate_solutions(&inst, &config.solver_for(&inst), config.candidates)?;
    report.solver_reports.push(sr);
    timer.lap(&mut report, "solve");
    let endo = mode.recovering_endo(endos);

    let mut first: Option<(BraidWord, BraidWord)> = None;
    for g in &found {
        let image = inst.answer_from(g);
        let r = match endo.invert_on(&image) {
            Ok(r) => r,
            // a word equal to a shift image but not literally one
            Err(_) if *endo == Endomorphism::Shift => {
                match shift_preimage(&image, r_alphabet, config.solver.max_len) {
                    Some(r) => r,
                    None => continue,
                }
            }
            Err(e) => return Err(e),
        };
        let reproduces = samples
            .iter()
            .all(|s| words_equal(&endos.token(&r, &s.p), &s.y));
        if first.is_none() || reproduces {
            first = Some((image, r));
        }
        if reproduces {
            break;
        }
    }
    match first {
        Some((image, r)) => {
            let ok = samples
                .iter()
                .all(|s| words_equal(&endos.token(&r, &s.p), &s.y));
            report.check("samples-reproduced", ok);
            report.recovered.insert("image-candidate".into(), image);
            report.recovered.insert("r-candidate".into(), r);
        }
        None => {
            report.check("solver", false);
        }
    }
    timer.lap(&mut report, "verify");
    Ok(report.conclude())
}
