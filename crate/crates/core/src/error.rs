use thiserror::Error;

/// Errors raised by the group, homomorphism, action and crossed-module layers.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed table: {0}")]
    BadTable(String),
    #[error("not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("index 0 is not a two-sided identity (fails at element {0})")]
    NoIdentityAtZero(usize),
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("order {order} exceeds the size cap {cap}")]
    SizeCapExceeded { order: usize, cap: usize },
    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),
    #[error("subgroup is not normal: conjugate of {element} by {by} escapes it")]
    NotNormal { element: usize, by: usize },
    #[error("not a homomorphism: map({0}*{1}) != map({0})*map({1})")]
    NotHomomorphism(usize, usize),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("action of {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("action is not functorial at ({0}, {1})")]
    NotFunctorial(usize, usize),
    #[error("identity of the actor does not act as the identity")]
    IdentityNotFixed,
    #[error("invalid split extension: {0}")]
    InvalidExtension(String),
    #[error("conjugate of k({x}) by e({b}) is not in the image of k")]
    ConjugateEscapesKernel { b: usize, x: usize },
    #[error("cospan is not jointly generating (extremally epic)")]
    CospanNotExtremallyEpic,
    #[error("homomorphism is not surjective")]
    NotSurjective,
    #[error("homomorphism is not injective")]
    NotInjective,
    #[error("pair does not satisfy the precrossed module condition")]
    PcmFails,
    #[error("internal cross-check failure: {0}")]
    InternalCrossCheckFailure(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
