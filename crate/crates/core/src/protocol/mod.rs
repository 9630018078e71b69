//! Honest-party simulations of the schemes under attack.

pub mod dehornoy;
pub mod ka;

pub use dehornoy::{
    simulate_session, Challenge, Commitment, DehornoyKeys, DehornoyPublic, DehornoyRound,
    DehornoySecrets, DehornoySession,
};
pub use ka::{
    ka_run, stickel_publics, stickel_token, validate_conditions, ConditionCheck, ConditionMode,
    ConditionReport, KaConfig, Preset, ProtocolTranscript, PublicTranscript, Relation,
    SecretRecord, SecretSampling,
};
