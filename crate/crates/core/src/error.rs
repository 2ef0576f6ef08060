use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong in the library.
///
/// `Violation` is special: it is raised when a statement that is a theorem
/// fails on a concrete instance. Callers that separate operational failures
/// from mathematical findings should match on it explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("empty generating set")]
    EmptyGenerators,

    #[error("group enumeration exceeded cap {cap} (reached {reached} elements)")]
    CapExceeded { reached: usize, cap: usize },

    #[error("subloop scan bound exceeded: order {order} > bound {bound}")]
    BoundExceeded { order: usize, bound: usize },

    #[error("element set is not a subgroup")]
    NotASubgroup,

    #[error("subloop is not normal")]
    NotNormal,

    #[error("not a loop: {0}")]
    NotALoop(String),

    #[error("identity is not element 0: {0}")]
    IdentityNotZero(String),

    #[error("not a twisted subgroup: {0}")]
    NotTwisted(String),

    #[error("not 2-divisible: element {0} has even order")]
    NotTwoDivisible(usize),

    #[error("twisted subgroup does not generate its ambient group ({generated} of {ambient} elements)")]
    NotGenerating { generated: usize, ambient: usize },

    #[error("not a left Bol loop")]
    NotBol,

    #[error("loop has even order {0}")]
    NotOdd(usize),

    #[error("not an autotopism: {0}")]
    NotAutotopism(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("not a left transversal: {0}")]
    NotATransversal(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("element {0} is not in the ambient group")]
    NotAMember(String),

    #[error("theorem violation in {check}: {detail}")]
    Violation { check: String, detail: String },
}

impl Error {
    pub(crate) fn violation(check: &str, detail: impl Into<String>) -> Self {
        Error::Violation { check: check.to_string(), detail: detail.into() }
    }

    /// True when the error records a counterexample rather than a failed
    /// computation.
    pub fn is_finding(&self) -> bool {
        matches!(self, Error::Violation { .. })
    }
}
