use thiserror::Error;

use crate::coxeter::{HermitianPair, Node};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid pair: {0}")]
    InvalidPair(String),
    #[error("cannot parse pair spec `{0}`")]
    PairSpec(String),
    #[error("{0} is not a node of {1}")]
    UnknownNode(Node, HermitianPair),
    #[error("bond requested between {0} and itself")]
    SameNode(Node),
    #[error("word is not reduced")]
    NotReduced,
    #[error("tile [{0},{1}] is not admissible")]
    Inadmissible(i32, i32),
    #[error("region of {0} has {1} tiles; at most 128 are supported")]
    RegionTooLarge(HermitianPair, usize),
    #[error("{0} is not simply laced")]
    NotSimplyLaced(HermitianPair),
    #[error("not a tile partition")]
    NotPartition,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
