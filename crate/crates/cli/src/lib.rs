//! Experiment driver: simulate protocols, run attacks against stored
//! transcripts, solve stored instances and aggregate sweeps.
//!
//! Every command is a pure function of its [`ExperimentConfig`]; report files
//! carry no wall-clock data unless timings are requested.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use braidkit::attack::{
    attack_decomposition, attack_dehornoy_centralizer, attack_dehornoy_pair, attack_length,
    attack_stickel_transcript, AttackConfig, AttackReport, StickelConfig,
};
use braidkit::braid::{words_equal, BraidWord};
use braidkit::extract::{
    build_dehornoy_pair_instance, build_mscsp_dhdp, build_stickel_instance, prescribed_probes,
    probe_words, CspInstance, DhdpTarget,
};
use braidkit::protocol::dehornoy::secret_alphabet;
use braidkit::protocol::{
    ka_run, simulate_session, Challenge, DehornoyKeys, DehornoySecrets, DehornoySession, KaConfig,
    Preset, PublicTranscript, SecretRecord,
};
use braidkit::solve::{solve_exhaustive, solve_length_descent, SolutionReport, SolverConfig, DEFAULT_BUDGET};
use braidkit::subgroup::SubgroupSpec;

pub mod selftest;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error(transparent)]
    Core(#[from] braidkit::Error),
}

impl CliError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Simulate,
    Attack,
    Solve,
    Selftest,
    Sweep,
}

/// Protocol presets plus the authentication scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    Ka(Preset),
    Dehornoy,
}

impl Scheme {
    pub fn label(self) -> &'static str {
        match self {
            Scheme::Ka(p) => p.label(),
            Scheme::Dehornoy => "dehornoy",
        }
    }

    pub fn parse(s: &str) -> Option<Scheme> {
        if s == "dehornoy" {
            return Some(Scheme::Dehornoy);
        }
        Preset::ALL.into_iter().find(|p| p.label() == s).map(Scheme::Ka)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Decomposition via conjugacy extractors (or the scheme's own attack).
    #[default]
    Decomposition,
    /// Length-based descent on the conjugate tokens.
    Length,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveMethod {
    #[default]
    Exhaustive,
    Descent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: Command,
    pub scheme: Option<Scheme>,
    pub strands: usize,
    pub secret_len: usize,
    /// Search bound; defaults per attack when absent. For Stickel it is the
    /// exponent bound.
    pub max_len: Option<usize>,
    pub budget: u64,
    pub seed: u64,
    pub reps: usize,
    pub method: Method,
    pub solve_method: SolveMethod,
    pub positive: bool,
    pub timings: bool,
    pub input: Option<PathBuf>,
    pub oracle: Option<PathBuf>,
    pub out: PathBuf,
}

impl ExperimentConfig {
    pub fn new(command: Command) -> Self {
        ExperimentConfig {
            command,
            scheme: None,
            strands: braidkit::protocol::ka::DEFAULT_STRANDS,
            secret_len: braidkit::protocol::ka::DEFAULT_SECRET_LENGTH,
            max_len: None,
            budget: DEFAULT_BUDGET,
            seed: 0,
            reps: 10,
            method: Method::Decomposition,
            solve_method: SolveMethod::Exhaustive,
            positive: false,
            timings: false,
            input: None,
            oracle: None,
            out: PathBuf::from("."),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(CliError::Config("--budget must be positive".into()));
        }
        if self.command == Command::Sweep && self.reps == 0 {
            return Err(CliError::Config("--reps must be positive".into()));
        }
        if matches!(self.command, Command::Simulate | Command::Sweep) && self.scheme.is_none() {
            return Err(CliError::Config("--preset is required".into()));
        }
        if self.command == Command::Solve && self.input.is_none() {
            return Err(CliError::Config("solve needs --in".into()));
        }
        Ok(())
    }

    fn scheme(&self) -> Result<Scheme> {
        self.scheme
            .ok_or_else(|| CliError::Config("--preset is required".into()))
    }

    fn default_max_len(&self, scheme: Scheme) -> usize {
        self.max_len.unwrap_or(match (scheme, self.method) {
            (Scheme::Ka(Preset::Stickel), _) => 8,
            (_, Method::Length) => self.secret_len.max(1),
            _ => 3,
        })
    }

    fn attack_config(&self, scheme: Scheme) -> AttackConfig {
        let max_len = self.default_max_len(scheme);
        let mut cfg = match self.method {
            Method::Length => AttackConfig::length_attack(max_len, self.positive),
            Method::Decomposition => AttackConfig {
                solver: SolverConfig {
                    max_len,
                    ..SolverConfig::default()
                },
                ..AttackConfig::default()
            },
        };
        cfg.solver.budget = self.budget;
        cfg.solver.seed = self.seed;
        cfg.timings = self.timings;
        cfg
    }
}

/// What a command produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    /// 0: done, 1: an attack or solve did not complete.
    pub exit_code: i32,
    pub files: Vec<PathBuf>,
}

/// Aggregate over a list of attack reports. Independent of report order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub reports: usize,
    pub successes: usize,
    pub success_rate: f64,
    /// Reports whose harness verdict was computed, and how many were right.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdicts: Option<(usize, usize)>,
    pub mean_candidates: f64,
    pub median_candidates: f64,
    /// 50th, 90th and 100th percentile of total milliseconds, when timed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<[u64; 3]>,
}

pub fn summarize(reports: &[AttackReport]) -> Result<Summary> {
    if reports.is_empty() {
        return Err(braidkit::Error::EmptyReportList.into());
    }
    let n = reports.len();
    let successes = reports.iter().filter(|r| r.success).count();
    let mut cands: Vec<u64> = reports.iter().map(|r| r.candidates_tested()).collect();
    cands.sort_unstable();
    let median = if n % 2 == 1 {
        cands[n / 2] as f64
    } else {
        (cands[n / 2 - 1] + cands[n / 2]) as f64 / 2.0
    };
    let judged: Vec<bool> = reports.iter().filter_map(|r| r.harness_verdict).collect();
    let mut times: Vec<u64> = reports
        .iter()
        .filter(|r| !r.timings_ms.is_empty())
        .map(|r| r.timings_ms.values().sum())
        .collect();
    times.sort_unstable();
    let pct = |q: f64| times[(((times.len() - 1) as f64) * q).round() as usize];
    Ok(Summary {
        reports: n,
        successes,
        success_rate: successes as f64 / n as f64,
        verdicts: (!judged.is_empty()).then(|| (judged.len(), judged.iter().filter(|v| **v).count())),
        mean_candidates: cands.iter().sum::<u64>() as f64 / n as f64,
        median_candidates: median,
        timing_ms: (!times.is_empty()).then(|| [pct(0.5), pct(0.9), pct(1.0)]),
    })
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<PathBuf> {
    let mut text = serde_json::to_string_pretty(value).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(path.to_path_buf())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// Public half of a simulated run, as written to `public.json`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PublicFile {
    Ka(PublicTranscript),
    Dehornoy(DehornoySession),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SecretFile {
    Ka(SecretRecord),
    Dehornoy(DehornoySecrets),
}

/// Rounds per simulated authentication session.
pub const DEHORNOY_ROUNDS: usize = 4;

/// The published subgroup commitment randomness is drawn from.
pub fn dehornoy_r_subgroup(n: usize) -> Result<SubgroupSpec> {
    Ok(SubgroupSpec::new("R", n, vec![BraidWord::generator(n, 1)?])?)
}

pub fn simulate(scheme: Scheme, n: usize, secret_len: usize, positive: bool, seed: u64) -> Result<(PublicFile, SecretFile)> {
    match scheme {
        Scheme::Ka(preset) => {
            let cfg = KaConfig::preset(preset, n, secret_len, seed)?;
            let cfg = if positive { cfg.with_positive_secrets(true) } else { cfg };
            let (public, secret) = ka_run(&cfg, seed)?.into_parts();
            Ok((PublicFile::Ka(public), SecretFile::Ka(secret)))
        }
        Scheme::Dehornoy => {
            let keys = DehornoyKeys::generate(n, secret_len, seed)?;
            let r = dehornoy_r_subgroup(n)?;
            let (session, secrets) = simulate_session(&keys, Some(&r), secret_len, DEHORNOY_ROUNDS, seed)?;
            Ok((PublicFile::Dehornoy(session), SecretFile::Dehornoy(secrets)))
        }
    }
}

/// Instances an attacker can build from a public file, labelled.
pub fn public_instances(public: &PublicFile) -> Vec<(String, CspInstance)> {
    let mut out = Vec::new();
    match public {
        PublicFile::Ka(t) if t.preset == Preset::Stickel => {
            if let (Some(l), Some(r)) = (&t.l_a, &t.r_a) {
                let (a, b) = (&l.generators()[0], &r.generators()[0]);
                if let Ok(inst) = build_stickel_instance(a, b, &t.k_a, 1) {
                    out.push(("stickel".to_string(), inst));
                }
            }
        }
        PublicFile::Ka(t) => {
            for target in DhdpTarget::ALL {
                let built = prescribed_probes(t, target)
                    .and_then(|spec| probe_words(&spec, 0, 1, 0))
                    .and_then(|probes| build_mscsp_dhdp(t, target, &probes));
                if let Ok(inst) = built {
                    out.push((target.extractor().to_lowercase(), inst));
                }
            }
        }
        PublicFile::Dehornoy(s) => {
            let Ok(alpha) = secret_alphabet(s.public.strands) else {
                return out;
            };
            for (i, round) in s.rounds.iter().enumerate() {
                let c = &round.commitment;
                if let Ok(inst) = build_dehornoy_pair_instance(&s.public.p, &s.public.p_prime, &c.x, &c.x_prime, &alpha) {
                    out.push((format!("dehornoy-pair-{i}"), inst));
                }
            }
        }
    }
    out
}

/// Runs the attack(s) that apply to a public file; attaches verdicts when a
/// secret file is supplied.
pub fn attack_public(
    public: &PublicFile,
    secret: Option<&SecretFile>,
    cfg: &ExperimentConfig,
) -> Result<Vec<AttackReport>> {
    match public {
        PublicFile::Ka(t) => {
            let scheme = Scheme::Ka(t.preset);
            let mut report = if t.preset == Preset::Stickel {
                let sc = StickelConfig {
                    bound: cfg.default_max_len(scheme) as u32,
                    timings: cfg.timings,
                    ..StickelConfig::default()
                };
                attack_stickel_transcript(t, &sc)?
            } else if cfg.method == Method::Length {
                attack_length(t, &cfg.attack_config(scheme))?
            } else {
                attack_decomposition(t, &cfg.attack_config(scheme))?
            };
            match secret {
                Some(SecretFile::Ka(s)) => report.set_verdict(&s.kappa),
                Some(_) => return Err(CliError::Config("secret file does not match the public file".into())),
                None => {}
            }
            Ok(vec![report])
        }
        PublicFile::Dehornoy(session) => {
            let secrets = match secret {
                Some(SecretFile::Dehornoy(s)) => Some(s),
                Some(_) => return Err(CliError::Config("secret file does not match the public file".into())),
                None => None,
            };
            let acfg = cfg.attack_config(Scheme::Dehornoy);
            let mut out = Vec::new();
            for (i, round) in session.rounds.iter().enumerate() {
                if round.challenge == Challenge::One {
                    let mut r = attack_dehornoy_pair(&session.public, round, &acfg)?;
                    r.attack = format!("{}#{i}", r.attack);
                    if let Some(s) = secrets {
                        r.harness_verdict = Some(r.recovered("s-candidate").is_some_and(|c| words_equal(c, &s.s)));
                    }
                    out.push(r);
                }
                if let Some(spec) = &session.r_subgroup {
                    let mut r = attack_dehornoy_centralizer(&session.public, spec, &round.commitment, &acfg)?;
                    r.attack = format!("{}#{i}", r.attack);
                    if let Some(s) = secrets {
                        r.harness_verdict = Some(
                            r.recovered("r-candidate")
                                .zip(s.r.get(i))
                                .is_some_and(|(c, t)| words_equal(c, t)),
                        );
                    }
                    out.push(r);
                }
            }
            Ok(out)
        }
    }
}

fn create_out(out: &Path) -> Result<()> {
    fs::create_dir_all(out).map_err(|source| CliError::Io {
        path: out.to_path_buf(),
        source,
    })
}

/// One sweep repetition, as recorded in `reports.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub seed: u64,
    pub reports: Vec<AttackReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub config: ExperimentConfig,
    pub summary: Summary,
}

pub fn run(cfg: &ExperimentConfig) -> Result<Outcome> {
    cfg.validate()?;
    create_out(&cfg.out)?;
    let mut files = Vec::new();
    let exit_code = match cfg.command {
        Command::Simulate => {
            let scheme = cfg.scheme()?;
            let (public, secret) = simulate(scheme, cfg.strands, cfg.secret_len, cfg.positive, cfg.seed)?;
            files.push(write_json(&cfg.out.join("public.json"), &public)?);
            files.push(write_json(&cfg.out.join("secret.json"), &secret)?);
            for (label, inst) in public_instances(&public) {
                files.push(write_json(&cfg.out.join(format!("instance-{label}.json")), &inst)?);
            }
            0
        }
        Command::Attack => {
            let public: PublicFile = match &cfg.input {
                Some(path) => read_json(path)?,
                None => simulate(cfg.scheme()?, cfg.strands, cfg.secret_len, cfg.positive, cfg.seed)?.0,
            };
            if let (Some(want), PublicFile::Ka(t)) = (cfg.scheme, &public) {
                if want != Scheme::Ka(t.preset) {
                    return Err(CliError::Config(format!(
                        "--preset {} does not match the transcript ({})",
                        want.label(),
                        t.preset.label()
                    )));
                }
            }
            // the oracle is read only when explicitly supplied
            let secret: Option<SecretFile> = cfg.oracle.as_deref().map(read_json).transpose()?;
            let reports = attack_public(&public, secret.as_ref(), cfg)?;
            files.push(write_json(&cfg.out.join("report.json"), &reports)?);
            if !reports.is_empty() && reports.iter().all(|r| r.success) {
                0
            } else {
                1
            }
        }
        Command::Solve => {
            let path = cfg.input.as_deref().expect("validated");
            let inst: CspInstance = read_json(path)?;
            let max_len = cfg.max_len.unwrap_or(3);
            let mut sc = SolverConfig::for_instance(&inst, max_len);
            sc.budget = cfg.budget;
            sc.seed = cfg.seed;
            let report: SolutionReport = match cfg.solve_method {
                SolveMethod::Exhaustive => solve_exhaustive(&inst, &sc)?,
                SolveMethod::Descent => {
                    sc.lookahead = 3;
                    sc.restarts = 16;
                    solve_length_descent(&inst, &sc)?
                }
            };
            files.push(write_json(&cfg.out.join("solution.json"), &report)?);
            if report.solved() {
                0
            } else {
                1
            }
        }
        Command::Selftest => {
            let results = selftest::run_all(cfg.seed);
            files.push(write_json(&cfg.out.join("selftest.json"), &results)?);
            if results.iter().all(|c| c.pass) {
                0
            } else {
                1
            }
        }
        Command::Sweep => {
            let scheme = cfg.scheme()?;
            let entries: Vec<SweepEntry> = (0..cfg.reps as u64)
                .into_par_iter()
                .map(|i| {
                    let seed = cfg.seed + i;
                    let (public, secret) = simulate(scheme, cfg.strands, cfg.secret_len, cfg.positive, seed)?;
                    let mut per = cfg.clone();
                    per.seed = seed;
                    let reports = attack_public(&public, Some(&secret), &per)?;
                    Ok(SweepEntry { seed, reports })
                })
                .collect::<Result<_>>()?;
            let all: Vec<AttackReport> = entries.iter().flat_map(|e| e.reports.iter().cloned()).collect();
            let summary = summarize(&all)?;
            files.push(write_json(&cfg.out.join("reports.json"), &entries)?);
            files.push(write_json(
                &cfg.out.join("summary.json"),
                &SweepSummary {
                    config: cfg.clone(),
                    summary,
                },
            )?);
            0
        }
    };
    Ok(Outcome { exit_code, files })
}
