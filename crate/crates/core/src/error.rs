use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} is out of range for {strands} strands")]
    InvalidLetter { letter: i32, strands: usize },
    #[error("letter 0 is not an Artin generator")]
    ZeroLetter,
    #[error("at least {min} strands required, got {got}")]
    TooFewStrands { min: usize, got: usize },
    #[error("word contains sigma_1 and is not in the image of the shift map")]
    NotInShiftImage,
    #[error("handle reduction exceeded its budget of {0} steps")]
    ReductionBudgetExceeded(u64),
    #[error("cannot sample from an empty alphabet")]
    EmptyAlphabet,
    #[error("invalid generator range [{lo}, {hi}] for {strands} strands")]
    InvalidRange { lo: usize, hi: usize, strands: usize },
    #[error("subgroup {name} has no generators")]
    EmptySubgroup { name: String },
    #[error("generator on {got} strands does not fit subgroup {name} on {strands} strands")]
    GeneratorTooWide { name: String, got: usize, strands: usize },
    #[error("configuration rejected: {0}")]
    InvalidConfig(String),
    #[error("commutation condition failed: {0}")]
    ConditionFailed(String),
    #[error("shared keys disagree: the configuration does not guarantee agreement")]
    KeyMismatch,
    #[error("probe {index} is not a generator of the prescribed subgroup {spec}")]
    ProbeNotInCommutant { index: usize, spec: String },
    #[error("probe {index} does not commute with the generators of {spec}")]
    ProbeNotCommuting { index: usize, spec: String },
    #[error("instance has no conjugacy pairs")]
    EmptyInstance,
    #[error("no sample pair with distinct v(p_i) values")]
    NoDistinctSamples,
    #[error("centralizer search found no usable probes")]
    EmptyCentralizer,
    #[error("need at least {need} tokens, got {got}")]
    TooFewTokens { need: usize, got: usize },
    #[error("cannot summarize an empty report list")]
    EmptyReportList,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
