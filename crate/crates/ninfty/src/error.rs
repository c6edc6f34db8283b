use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse group spec `{0}`: {1}")]
    ParseSpec(String, String),

    #[error("group order {order} exceeds the supported maximum {max}")]
    SizeLimit { order: usize, max: usize },

    #[error("group table is not a valid group: {0}")]
    BadTable(String),

    #[error("subgroup {sub} is not contained in {sup}")]
    NotContained { sub: usize, sup: usize },

    #[error("subgroup {0} is not normal")]
    NotNormal(usize),

    #[error("operation requires both operands over the same subgroup lattice")]
    LatticeMismatch,

    #[error("operation requires both universes over the same group and field")]
    UniverseMismatch,

    #[error("operation is only defined over an abelian group (got `{0}`)")]
    NonAbelian(String),

    #[error("operation is only defined over a cyclic group (got `{0}`)")]
    NotCyclic(String),

    #[error("relation pair ({0}, {1}) violates subgroup containment")]
    PairNotContainment(usize, usize),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("value {0} is not an integer within tolerance")]
    NonIntegral(f64),

    #[error("character table construction failed: {0}")]
    CharacterTable(String),

    #[error("computation refused as infeasible: {0}")]
    Infeasible(String),

    #[error("bad argument: {0}")]
    BadArgument(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::BadArgument(e.to_string())
    }
}
