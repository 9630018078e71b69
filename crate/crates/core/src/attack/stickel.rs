use serde::{Deserialize, Serialize};

use crate::braid::{rewrite, words_equal, BraidWord};
use crate::error::{Error, Result};
use crate::extract::build_stickel_instance;
use crate::protocol::{Preset, PublicTranscript};
use crate::solve::solve_power;

use super::{AttackReport, Timer, KEY};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StickelConfig {
    /// Largest exponent tried for either public element.
    pub bound: u32,
    /// Probe `b^alpha`.
    pub alpha: u32,
    pub timings: bool,
}

impl Default for StickelConfig {
    fn default() -> Self {
        StickelConfig {
            bound: 8,
            alpha: 1,
            timings: false,
        }
    }
}

/// `c = a^r b^s`, `d = a^t b^u`: recovers `a^r` from `c b^α c⁻¹ = a^r b^α a^{-r}`,
/// checks that `a^{-r} c` is a bounded power of `b`, and returns
/// `a^r · d · b^s`.
pub fn attack_stickel(
    a: &BraidWord,
    b: &BraidWord,
    c: &BraidWord,
    d: &BraidWord,
    config: &StickelConfig,
) -> Result<AttackReport> {
    let mut report = AttackReport::new("stickel");
    let mut timer = Timer::new(config.timings);
    let inst = build_stickel_instance(a, b, c, config.alpha)?;
    let sr = solve_power(&inst, config.bound, false)?;
    let found = sr.solution.clone();
    report.solver_reports.push(sr);
    timer.lap(&mut report, "power-search");
    let Some(ar) = found else {
        report.check("solver", false);
        return Ok(report.conclude());
    };
    // a^{-r} c should be b^s for some s within the bound
    let rest = ar.invert().compose(c);
    let bs = (0..=config.bound as i64)
        .map(|s| b.pow(s))
        .find(|bs| words_equal(&rest, bs));
    report.check("c = a^r b^s", bs.is_some());
    if let Some(bs) = bs {
        report
            .recovered
            .insert(KEY.into(), rewrite(&ar.compose(d).compose(&bs)));
        report.recovered.insert("b^s-candidate".into(), bs);
    }
    report.recovered.insert("a^r-candidate".into(), ar);
    timer.lap(&mut report, "combine");
    Ok(report.conclude())
}

/// [`attack_stickel`] on a transcript of the Stickel preset.
pub fn attack_stickel_transcript(public: &PublicTranscript, config: &StickelConfig) -> Result<AttackReport> {
    if public.preset != Preset::Stickel {
        return Err(Error::InvalidConfig("not a stickel transcript".into()));
    }
    let a = public
        .l_a
        .as_ref()
        .map(|s| s.generators()[0].clone())
        .ok_or_else(|| Error::InvalidConfig("missing public a".into()))?;
    let b = public
        .r_a
        .as_ref()
        .map(|s| s.generators()[0].clone())
        .ok_or_else(|| Error::InvalidConfig("missing public b".into()))?;
    attack_stickel(&a, &b, &public.k_a, &public.k_b, config)
}
