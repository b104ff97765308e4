use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown algebra {0:?}; expected one of e6_2, e7_m5, e8_m24, f4_4, e6_6, e7_7, e8_8, so4d(d)")]
    NotInCatalog(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} is not an admissible K-type for {1}")]
    InvalidKType(String, String),
    #[error("the operator Omega is only defined for e6_2, e7_m5, e8_m24 and so4d(d) with d even; got {0}")]
    OmegaNotDefined(String),
    #[error("search degree {0} is below the minimum of 4")]
    BoundTooSmall(i64),
    #[error("K-type {0} is not a node of the graph")]
    UnknownNode(String),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
