use thiserror::Error;

use crate::cohomology::Axiom;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building or interrogating an algebra.
///
/// Witness fields carry element indices of the offending algebra, reported
/// in the first failing position of a fixed scan order.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table entry {value} at ({row}, {col}) is out of range for order {order}")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("table has wrong shape: expected {expected} entries, found {found}")]
    BadShape { expected: usize, found: usize },
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: u32, b: u32, c: u32 },
    #[error("element {identity} is not a two-sided identity (fails at {element})")]
    BadIdentity { identity: u32, element: u32 },
    #[error("element {element} has no two-sided inverse")]
    NotAGroup { element: u32 },
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("algebra is not a symmetric group with permutation metadata")]
    NotASymmetricGroup,
    #[error("order {order} exceeds the configured cap {cap}")]
    OrderTooLarge { order: usize, cap: usize },
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("map is not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("subgroups live in different ambient algebras (orders {left} and {right})")]
    AmbientMismatch { left: usize, right: usize },
    #[error("subgroup is not normal: conjugating {member} by {by} leaves it")]
    NotNormal { member: u32, by: u32 },
    #[error("subgroup is not a complement: {0}")]
    NotComplement(String),
    #[error("embedding is not injective: {a} and {b} have the same image")]
    NotInjective { a: u32, b: u32 },
    #[error("map is not a cocycle: {0}")]
    NotACocycle(String),
    #[error("search space of {needed} candidates exceeds budget {budget}")]
    SearchBudgetExceeded { needed: u128, budget: u128 },
    #[error("p o j is not the identity at {element}")]
    NotSplit { element: u32 },
    #[error(
        "element {element} has {decompositions} decompositions k * jp(a) (expected exactly one)"
    )]
    NotSchreier { element: u32, decompositions: usize },
    #[error("homomorphism is not central: {0}")]
    NotCentral(String),
    #[error("action violates axiom ({axiom}): {witness}")]
    AxiomViolated { axiom: Axiom, witness: String },
    #[error("map is not in Hom^f_g(K, L): {0}")]
    NotInHomSet(String),
    #[error("hypothesis f(K) within g(L) fails at k = {k}")]
    HypothesisFailed { k: u32 },
    #[error("invalid permutation: {0}")]
    BadPermutation(String),
    #[error("invalid document: {0}")]
    BadDocument(String),
}
