use thiserror::Error;

/// Errors produced by automaton construction, evaluation and the oracles.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("track index {index} out of range for {tracks} track(s)")]
    TrackOutOfRange { index: usize, tracks: usize },
    #[error("cannot project a single-track automaton")]
    SingleTrack,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("letter {0} is not in the output alphabet")]
    UnknownLetter(u32),
    #[error("state cap of {cap} exceeded during {during}")]
    StateCapExceeded { cap: usize, during: &'static str },
    #[error(
        "iteration cap of {cap} exceeded: the positions do not form a bounded number of blocks \
         (as for the concatenation of all binary numerals 1 10 11 100 ...)"
    )]
    IterationCapExceeded { cap: usize },
    #[error("{0} is outside the domain of the function")]
    Domain(u64),
    #[error("function-graph invariant broken at n = {n}: {detail}")]
    BrokenInvariant { n: u64, detail: String },
    #[error("prefix of length {len} is too short to stabilise {what} (cap {cap})")]
    Instability { what: String, len: usize, cap: usize },
    #[error("sequence is not leading-zero invariant: outputs differ at n = {0}")]
    LeadingZeros(u64),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
