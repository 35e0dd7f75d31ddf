use crate::var::VarName;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid variable name: {0:?}")]
    InvalidVarName(String),
    #[error("domains overlap on {0}")]
    DomainOverlap(VarName),
    #[error("{0} is not in the domain")]
    NotInDomain(VarName),
    #[error("{0} is not a vertex of the graph")]
    NotInGraph(VarName),
    #[error("relation is not a trifunctional partial order on a nonempty domain")]
    NotFtp,
    #[error("relation is not a partial order")]
    NotPartialOrder,
    #[error("term is not diversified: {0} occurs more than once")]
    NotDiversified(VarName),
    #[error("adding the pair would contradict the order")]
    PairConflict,
    #[error("permutation domain does not match")]
    DomainMismatch,
    #[error("instance size {size} exceeds the budget of {limit}")]
    BudgetExceeded { size: usize, limit: usize },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("malformed forest set: {0}")]
    MalformedForestSet(String),
    #[error("term is not a destruction history of the graph")]
    NotAForestOf,
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
}

pub type Result<T> = std::result::Result<T, Error>;
