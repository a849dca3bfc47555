use thiserror::Error;

/// Errors surfaced by the algebra, embedding and spectral layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("monomials live in rings of different dimension ({0} vs {1})")]
    DimensionMismatch(usize, usize),

    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("S-pair budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("variables {0:?} do not form an elimination block for this order")]
    NotEliminationBlock(Vec<String>),

    #[error("ideal is not binary-closed: missing field equation for `{0}`")]
    NotBinaryClosed(String),

    #[error("penalty parameters must satisfy a1 < -a3, a2 < -a3, a3 > 0, M > 0")]
    InvalidPenalty,

    #[error("polynomial has degree {0}, expected degree <= 2")]
    NotQuadratic(usize),

    #[error("{0} exceeds the configured bound of {1}")]
    SizeBound(usize, usize),

    #[error("group closure exceeds bound of {0} elements")]
    GroupBound(usize),

    #[error("invariant candidates are functionally dependent (Jacobian rank {rank} < {expected})")]
    RankDeficient { rank: usize, expected: usize },

    #[error("folding failed: {0}")]
    FoldFailure(String),

    #[error("automorphism search supports at most {0} vertices; supply generators manually")]
    AutomorphismBound(usize),

    #[error("no reduction of the objective embeds into the hardware graph; attempts: {0:?}")]
    InfeasibleCompile(Vec<String>),

    #[error("eigensolver did not converge: residual norms {0:?}")]
    EigenNonConvergence(Vec<f64>),

    #[error("spectral gap {0} below tolerance {1}; adiabatic estimate unreliable")]
    GapNearClosure(f64, f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("ground-state set exceeds cap of {0} configurations")]
    GroundSetTooLarge(usize),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
