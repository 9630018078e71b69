//! Conjugacy extractors: public transcript data in, conjugacy-search
//! instances out.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::braid::{
    commute, random_word_with, rewrite, shift, words_equal, BraidWord, Endomorphism,
};
use crate::error::{Error, Result};
use crate::protocol::PublicTranscript;
use crate::subgroup::{centralizer_search, is_central, SubgroupSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CspPair {
    pub x: BraidWord,
    pub y: BraidWord,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub extractor: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

/// Find `g` with `g · x_i · g⁻¹ = y_i` for every pair.
///
/// The quantity an attack actually wants is `g · post_transform`, inverted
/// when `invert_answer` is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CspInstance {
    pub pairs: Vec<CspPair>,
    pub alphabet: SubgroupSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub post_transform: Option<BraidWord>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub invert_answer: bool,
    pub meta: InstanceMeta,
}

impl CspInstance {
    pub fn new(pairs: Vec<CspPair>, alphabet: SubgroupSpec, meta: InstanceMeta) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::EmptyInstance);
        }
        Ok(CspInstance {
            pairs,
            alphabet,
            post_transform: None,
            invert_answer: false,
            meta,
        })
    }

    pub fn with_post_transform(mut self, t: BraidWord, invert: bool) -> Self {
        self.post_transform = Some(t);
        self.invert_answer = invert;
        self
    }

    /// Single pair: a plain conjugacy search instance.
    pub fn is_csp(&self) -> bool {
        self.pairs.len() == 1
    }

    /// The fixed right factor a coset search appends to subgroup words,
    /// i.e. the inverse of `post_transform`.
    pub fn candidate_suffix(&self) -> Option<BraidWord> {
        self.post_transform.as_ref().map(BraidWord::invert)
    }

    /// Maps a solution `g` to the attack target. Free reduction makes
    /// `(c·t)·t⁻¹` collapse to the literal subgroup word `c`.
    pub fn answer_from(&self, g: &BraidWord) -> BraidWord {
        let h = match &self.post_transform {
            Some(t) => g.compose(t).free_reduce(),
            None => g.clone(),
        };
        if self.invert_answer {
            h.invert()
        } else {
            h
        }
    }

    pub fn strands(&self) -> usize {
        self.pairs
            .iter()
            .map(|p| p.x.strands().max(p.y.strands()))
            .max()
            .unwrap_or(1)
            .max(self.alphabet.strands())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CeSide {
    /// `y · R · y⁻¹`
    Left,
    /// `y⁻¹ · R · y`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CeSample {
    pub probe: BraidWord,
    pub side: CeSide,
    pub token: BraidWord,
    pub output: BraidWord,
}

pub fn ce_conjugate_sample(token: &BraidWord, probe: &BraidWord, side: CeSide) -> CeSample {
    let output = match side {
        CeSide::Left => token.compose(probe).compose(&token.invert()),
        CeSide::Right => token.invert().compose(probe).compose(token),
    };
    CeSample {
        probe: probe.clone(),
        side,
        token: token.clone(),
        output,
    }
}

/// `Left: y_i · y_j⁻¹`, `Right: y_j⁻¹ · y_i`.
pub fn ce_difference_pair(y_i: &BraidWord, y_j: &BraidWord, side: CeSide) -> BraidWord {
    match side {
        CeSide::Left => y_i.compose(&y_j.invert()),
        CeSide::Right => y_j.invert().compose(y_i),
    }
}

/// Which secret factor of `K_A = a₁ z a₂`, `K_B = b₁ z b₂` an extractor
/// targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DhdpTarget {
    /// `a₁` via `K_A · R · K_A⁻¹`, target `a₁ z`.
    A,
    /// `a₂` via `K_A⁻¹ · R · K_A`, target `a₂⁻¹ z⁻¹`.
    B,
    /// `b₁` via `K_B · R · K_B⁻¹`, target `b₁ z`.
    C,
    /// `b₂` via `K_B⁻¹ · R · K_B`, target `b₂⁻¹ z⁻¹`.
    D,
}

impl DhdpTarget {
    pub const ALL: [DhdpTarget; 4] = [DhdpTarget::A, DhdpTarget::B, DhdpTarget::C, DhdpTarget::D];

    pub fn extractor(self) -> &'static str {
        match self {
            DhdpTarget::A => "CE1",
            DhdpTarget::C => "CE2",
            DhdpTarget::B => "CE3",
            DhdpTarget::D => "CE4",
        }
    }

    pub fn side(self) -> CeSide {
        match self {
            DhdpTarget::A | DhdpTarget::C => CeSide::Left,
            DhdpTarget::B | DhdpTarget::D => CeSide::Right,
        }
    }

    pub fn token(self, t: &PublicTranscript) -> &BraidWord {
        match self {
            DhdpTarget::A | DhdpTarget::B => &t.k_a,
            DhdpTarget::C | DhdpTarget::D => &t.k_b,
        }
    }

    /// The subgroup the recovered factor lives in.
    pub fn alphabet(self, t: &PublicTranscript) -> Option<SubgroupSpec> {
        match self {
            DhdpTarget::A => t.l_a.clone(),
            DhdpTarget::B => t.r_a.clone(),
            DhdpTarget::C => Some(t.l_b.clone()),
            DhdpTarget::D => Some(t.r_b.clone()),
        }
    }

    /// Subgroup of the factor on the far side of `z`, which probes must
    /// commute with.
    pub fn hidden(self, t: &PublicTranscript) -> Option<&SubgroupSpec> {
        match self {
            DhdpTarget::A => t.r_a.as_ref(),
            DhdpTarget::B => t.l_a.as_ref(),
            DhdpTarget::C => Some(&t.r_b),
            DhdpTarget::D => Some(&t.l_b),
        }
    }

    /// The public subgroup known to commute with [`hidden`](Self::hidden),
    /// when there is one.
    fn partner(self, t: &PublicTranscript) -> Option<&SubgroupSpec> {
        match self {
            DhdpTarget::A => Some(&t.r_b),
            DhdpTarget::B => Some(&t.l_b),
            DhdpTarget::C => t.r_a.as_ref(),
            DhdpTarget::D => t.l_a.as_ref(),
        }
    }

    /// Same-party subgroup whose centralizer can stand in for a private
    /// partner subgroup.
    fn own_opposite(self, t: &PublicTranscript) -> Option<&SubgroupSpec> {
        match self {
            DhdpTarget::C => Some(&t.r_b),
            DhdpTarget::D => Some(&t.l_b),
            _ => None,
        }
    }
}

/// Elements that commute with the hidden factor of `target`: the peer's
/// published subgroup when there is one, otherwise centralizer elements of
/// the hidden subgroup.
pub fn prescribed_probes(public: &PublicTranscript, target: DhdpTarget) -> Result<SubgroupSpec> {
    if let Some(spec) = target.partner(public) {
        return Ok(spec.clone());
    }
    let hidden = target
        .own_opposite(public)
        .ok_or_else(|| Error::InvalidConfig(format!("{} needs the private subgroups", target.extractor())))?;
    let full = SubgroupSpec::full("B_n", public.strands)?;
    let report = centralizer_search(hidden, 1, &full, 32);
    let gens = report.informative();
    if gens.is_empty() {
        return Err(Error::EmptyCentralizer);
    }
    SubgroupSpec::new(format!("C({})", hidden.name()), public.strands, gens)
}

/// The generators of `spec`, followed by `extra` random words of length
/// `len` over them.
pub fn probe_words(spec: &SubgroupSpec, extra: usize, len: usize, seed: u64) -> Result<Vec<BraidWord>> {
    let mut out = spec.generators().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extra {
        out.push(random_word_with(spec.generators(), len, true, &mut rng)?.free_reduce());
    }
    Ok(out)
}

fn check_probes(probes: &[BraidWord], hidden: Option<&SubgroupSpec>, prescribed: &SubgroupSpec) -> Result<()> {
    for (index, p) in probes.iter().enumerate() {
        match hidden {
            Some(h) => {
                if !h.generators().iter().all(|g| commute(g, p)) {
                    return Err(Error::ProbeNotCommuting {
                        index,
                        spec: h.name().to_string(),
                    });
                }
            }
            None => {
                if !prescribed.has_generator(p) {
                    return Err(Error::ProbeNotInCommutant {
                        index,
                        spec: prescribed.name().to_string(),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Multiple simultaneous conjugacy instance for one secret factor of a
/// two-sided decomposition transcript. CE outputs are rewritten through
/// their normal forms.
pub fn build_mscsp_dhdp(
    public: &PublicTranscript,
    target: DhdpTarget,
    probes: &[BraidWord],
) -> Result<CspInstance> {
    if probes.is_empty() {
        return Err(Error::EmptyInstance);
    }
    let alphabet = target.alphabet(public).ok_or_else(|| {
        Error::InvalidConfig(format!("{} needs a private subgroup", target.extractor()))
    })?;
    let prescribed = prescribed_probes(public, target)?;
    check_probes(probes, target.hidden(public), &prescribed)?;
    let token = target.token(public);
    let side = target.side();
    let pairs = probes
        .iter()
        .map(|p| CspPair {
            x: p.clone(),
            y: rewrite(&ce_conjugate_sample(token, p, side).output),
        })
        .collect();
    let meta = InstanceMeta {
        extractor: target.extractor().to_string(),
        target: match target {
            DhdpTarget::A => "a1*z",
            DhdpTarget::B => "a2^-1*z^-1",
            DhdpTarget::C => "b1*z",
            DhdpTarget::D => "b2^-1*z^-1",
        }
        .to_string(),
        flags: Vec::new(),
    };
    let inst = CspInstance::new(pairs, alphabet, meta)?;
    Ok(match side {
        CeSide::Left => inst.with_post_transform(public.z.invert(), false),
        CeSide::Right => inst.with_post_transform(public.z.clone(), true),
    })
}

/// Single pair `(b^α, c · b^α · c⁻¹)`, solved by `a^r` when `c = a^r b^s`.
pub fn build_stickel_instance(a: &BraidWord, b: &BraidWord, c: &BraidWord, alpha: u32) -> Result<CspInstance> {
    if alpha == 0 {
        return Err(Error::InvalidConfig("probe exponent must be at least 1".into()));
    }
    let probe = b.pow(alpha as i64);
    let y = rewrite(&ce_conjugate_sample(c, &probe, CeSide::Left).output);
    let alphabet = SubgroupSpec::new("<a>", a.strands(), vec![a.clone()])?;
    CspInstance::new(
        vec![CspPair { x: probe, y }],
        alphabet,
        InstanceMeta {
            extractor: "stickel".into(),
            target: "a^r".into(),
            flags: Vec::new(),
        },
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtcpSample {
    pub y: BraidWord,
    pub p: BraidWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GtcpEndos {
    pub u: Endomorphism,
    pub v: Endomorphism,
    pub w: Endomorphism,
}

impl GtcpEndos {
    pub fn identity() -> Self {
        GtcpEndos {
            u: Endomorphism::Identity,
            v: Endomorphism::Identity,
            w: Endomorphism::Identity,
        }
    }

    /// `u(r) · v(p) · w(r)⁻¹`
    pub fn token(&self, r: &BraidWord, p: &BraidWord) -> BraidWord {
        self.u
            .apply(r)
            .compose(&self.v.apply(p))
            .compose(&self.w.apply(r).invert())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GtcpMode {
    /// Differences `y_i y_j⁻¹`, target `u(r)`.
    PairwiseCe1,
    /// Differences `y_j⁻¹ y_i`, target `w(r)`.
    PairwiseCe2,
    /// `y_i M y_i⁻¹` with `M ∈ C(w(S))`, target `u(r) v(p_i)`.
    CentralizerCe3,
    /// `y_i⁻¹ M y_i` with `M ∈ C(u(S))`, target `w(r) v(p_i)⁻¹`.
    CentralizerCe4,
}

impl GtcpMode {
    pub const ALL: [GtcpMode; 4] = [
        GtcpMode::PairwiseCe1,
        GtcpMode::PairwiseCe2,
        GtcpMode::CentralizerCe3,
        GtcpMode::CentralizerCe4,
    ];

    /// Endomorphism whose image the recovered word lives in.
    pub fn recovering_endo(self, endos: &GtcpEndos) -> &Endomorphism {
        match self {
            GtcpMode::PairwiseCe1 | GtcpMode::CentralizerCe3 => &endos.u,
            GtcpMode::PairwiseCe2 | GtcpMode::CentralizerCe4 => &endos.w,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralizerBudget {
    pub max_len: usize,
    pub limit: usize,
}

impl Default for CentralizerBudget {
    fn default() -> Self {
        CentralizerBudget { max_len: 1, limit: 16 }
    }
}

/// Builds the instance for one GTCP mode. `r_alphabet` is the subgroup the
/// secret `r` is drawn from; centralizer modes use sample 0.
pub fn build_gtcp_instances(
    samples: &[GtcpSample],
    endos: &GtcpEndos,
    mode: GtcpMode,
    r_alphabet: &SubgroupSpec,
    budget: CentralizerBudget,
) -> Result<CspInstance> {
    let first = samples.first().ok_or(Error::EmptyInstance)?;
    let endo = mode.recovering_endo(endos);
    let alphabet = r_alphabet.map(endo, format!("{}({})", endo.label(), r_alphabet.name()));
    let vp: Vec<BraidWord> = samples.iter().map(|s| endos.v.apply(&s.p)).collect();
    let mut meta = InstanceMeta {
        extractor: format!("gtcp-{}", mode.label()),
        target: String::new(),
        flags: Vec::new(),
    };
    match mode {
        GtcpMode::PairwiseCe1 | GtcpMode::PairwiseCe2 => {
            if samples.len() < 2 {
                return Err(Error::TooFewTokens {
                    need: 2,
                    got: samples.len(),
                });
            }
            let mut pairs = Vec::new();
            for i in 0..samples.len() {
                for j in i + 1..samples.len() {
                    if words_equal(&vp[i], &vp[j]) {
                        continue;
                    }
                    let (x, side) = match mode {
                        GtcpMode::PairwiseCe1 => (vp[i].compose(&vp[j].invert()), CeSide::Left),
                        _ => (vp[j].invert().compose(&vp[i]), CeSide::Right),
                    };
                    let y = rewrite(&ce_difference_pair(&samples[i].y, &samples[j].y, side));
                    pairs.push(CspPair { x, y });
                }
            }
            if pairs.is_empty() {
                return Err(Error::NoDistinctSamples);
            }
            meta.target = match mode {
                GtcpMode::PairwiseCe1 => "u(r)",
                _ => "w(r)",
            }
            .into();
            CspInstance::new(pairs, alphabet, meta)
        }
        GtcpMode::CentralizerCe3 | GtcpMode::CentralizerCe4 => {
            // probes commute with the factor on the far side of v(p_0)
            let (far, side) = match mode {
                GtcpMode::CentralizerCe3 => (&endos.w, CeSide::Left),
                _ => (&endos.u, CeSide::Right),
            };
            let far_spec = r_alphabet.map(far, "far");
            let n = far_spec.strands().max(alphabet.strands()).max(first.y.strands());
            let base = centralizer_search(r_alphabet, budget.max_len, &SubgroupSpec::full("B_n", r_alphabet.strands())?, budget.limit);
            let mut probes: Vec<BraidWord> = Vec::new();
            let mut candidates: Vec<BraidWord> = base.words().iter().map(|g| far.apply(g)).collect();
            // generators of the ambient group that avoid the image support
            let support = far_spec.support();
            for j in 1..n {
                if !support.contains(&j) && !support.contains(&(j + 1)) {
                    candidates.push(BraidWord::generator(n, j as i32)?);
                }
            }
            for m in candidates {
                let m = m.widen(n);
                if is_central(&m) || probes.iter().any(|q| words_equal(q, &m)) {
                    continue;
                }
                if far_spec.generators().iter().all(|g| commute(g, &m)) {
                    probes.push(m);
                }
            }
            if probes.is_empty() {
                return Err(Error::EmptyCentralizer);
            }
            let pairs = probes
                .into_iter()
                .map(|m| CspPair {
                    y: rewrite(&ce_conjugate_sample(&first.y, &m, side).output),
                    x: m,
                })
                .collect();
            meta.target = match mode {
                GtcpMode::CentralizerCe3 => "u(r)*v(p_0)",
                _ => "w(r)*v(p_0)^-1",
            }
            .into();
            let inst = CspInstance::new(pairs, alphabet, meta)?;
            Ok(match mode {
                GtcpMode::CentralizerCe3 => inst.with_post_transform(vp[0].invert(), false),
                _ => inst.with_post_transform(vp[0].clone(), false),
            })
        }
    }
}

impl GtcpMode {
    pub fn label(self) -> &'static str {
        match self {
            GtcpMode::PairwiseCe1 => "pairwise-ce1",
            GtcpMode::PairwiseCe2 => "pairwise-ce2",
            GtcpMode::CentralizerCe3 => "centralizer-ce3",
            GtcpMode::CentralizerCe4 => "centralizer-ce4",
        }
    }
}

/// Pairs `(N, x⁻¹ N x)` for a commitment `x = r ∗ p` with `r` in a published
/// subgroup `R` and `N` commuting with `R`. Solutions have the form
/// `dr · σ₁⁻¹ · dp⁻¹`, so the post transform `dp · σ₁` leaves `dr`.
pub fn build_dehornoy_centralizer_instance(
    p: &BraidWord,
    x: &BraidWord,
    r_spec: &SubgroupSpec,
    probes: &[BraidWord],
) -> Result<CspInstance> {
    if probes.is_empty() {
        return Err(Error::EmptyInstance);
    }
    let mut flags = Vec::new();
    for (index, nprobe) in probes.iter().enumerate() {
        if !r_spec.generators().iter().all(|g| commute(g, nprobe)) {
            return Err(Error::ProbeNotCommuting {
                index,
                spec: r_spec.name().to_string(),
            });
        }
        if is_central(nprobe) {
            flags.push(format!("central-probe:{index}"));
        }
    }
    let pairs = probes
        .iter()
        .map(|nprobe| CspPair {
            x: nprobe.clone(),
            y: rewrite(&ce_conjugate_sample(x, nprobe, CeSide::Right).output),
        })
        .collect();
    let alphabet = r_spec.map(&Endomorphism::Shift, format!("d({})", r_spec.name()));
    let sigma1 = BraidWord::generator(2, 1)?;
    let post = shift(p).compose(&sigma1);
    Ok(CspInstance::new(
        pairs,
        alphabet,
        InstanceMeta {
            extractor: "dehornoy-centralizer".into(),
            target: "dr*s1^-1*dp^-1".into(),
            flags,
        },
    )?
    .with_post_transform(post, false))
}

/// Single pair `(dp · dp'⁻¹, x · x'⁻¹)`, solved by the commitment secret `r`.
pub fn build_dehornoy_pair_instance(
    p: &BraidWord,
    p_prime: &BraidWord,
    x: &BraidWord,
    x_prime: &BraidWord,
    r_alphabet: &SubgroupSpec,
) -> Result<CspInstance> {
    let dx = shift(p).compose(&shift(p_prime).invert());
    let mut flags = Vec::new();
    if words_equal(&shift(p), &shift(p_prime)) {
        flags.push("degenerate".to_string());
    }
    let y = rewrite(&ce_difference_pair(x, x_prime, CeSide::Left));
    CspInstance::new(
        vec![CspPair { x: dx, y }],
        r_alphabet.clone(),
        InstanceMeta {
            extractor: "dehornoy-pair".into(),
            target: "r".into(),
            flags,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn trivial_token_returns_probe() {
        let probe = w(4, &[1, -3]);
        for side in [CeSide::Left, CeSide::Right] {
            let s = ce_conjugate_sample(&BraidWord::identity(4), &probe, side);
            assert!(words_equal(&s.output, &probe));
        }
    }

    #[test]
    fn left_and_right_samples() {
        // y = a x b with a = σ1, x = σ2, b = σ3 in B5
        let y = w(5, &[1, 2, 3]);
        let probe = w(5, &[1]);
        let left = ce_conjugate_sample(&y, &probe, CeSide::Left);
        let ax = w(5, &[1, 2]);
        assert!(words_equal(&left.output, &ax.conjugate(&probe)));
        let c = w(5, &[3]);
        let right = ce_conjugate_sample(&y, &c, CeSide::Right);
        let target = w(5, &[-3, -2]);
        assert!(words_equal(&right.output, &target.conjugate(&c)));
    }

    #[test]
    fn differences() {
        let y = w(4, &[2, 1, 3]);
        assert!(crate::braid::is_identity(&ce_difference_pair(&y, &y, CeSide::Left)));
        let ya = w(4, &[2, 1, 3]);
        let yb = w(4, &[2, -1, 3]);
        let d = ce_difference_pair(&ya, &yb, CeSide::Left);
        assert!(words_equal(&d, &w(4, &[2]).conjugate(&w(4, &[1, 1]))));
    }

    #[test]
    fn answer_from_strips_suffix() {
        let inst = CspInstance::new(
            vec![CspPair {
                x: w(3, &[1]),
                y: w(3, &[1]),
            }],
            SubgroupSpec::full("B3", 3).unwrap(),
            InstanceMeta::default(),
        )
        .unwrap()
        .with_post_transform(w(3, &[-2, 1]), true);
        let c = w(3, &[2, 2]);
        let g = c.compose(&inst.candidate_suffix().unwrap());
        assert_eq!(inst.answer_from(&g), c.invert());
    }

    #[test]
    fn empty_instance_rejected() {
        let spec = SubgroupSpec::full("B3", 3).unwrap();
        assert_eq!(
            CspInstance::new(vec![], spec, InstanceMeta::default()),
            Err(Error::EmptyInstance)
        );
    }

    #[test]
    fn stickel_zero_exponents() {
        let (a, b) = crate::protocol::stickel_publics(4).unwrap();
        let inst = build_stickel_instance(&a, &b, &BraidWord::identity(4), 1).unwrap();
        assert!(words_equal(&inst.pairs[0].x, &inst.pairs[0].y));
        assert!(build_stickel_instance(&a, &b, &a, 0).is_err());
    }

    #[test]
    fn instance_serde_shape() {
        let inst = CspInstance::new(
            vec![CspPair {
                x: w(3, &[1]),
                y: w(3, &[2]),
            }],
            SubgroupSpec::full("B3", 3).unwrap(),
            InstanceMeta {
                extractor: "CE1".into(),
                target: "a1*z".into(),
                flags: vec![],
            },
        )
        .unwrap();
        let v: serde_json::Value = serde_json::to_value(&inst).unwrap();
        assert!(v.get("pairs").is_some());
        assert!(v.get("post_transform").is_none());
        assert_eq!(v["meta"]["extractor"], "CE1");
        let back: CspInstance = serde_json::from_value(v).unwrap();
        assert_eq!(back, inst);
    }
}
