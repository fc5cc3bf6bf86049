use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid format: {0}")]
    Format(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("Cartan matrix is singular (affine type); enlarge the diagram first")]
    AffineType,
    #[error("not in the root lattice: {0}")]
    NotInRootLattice(String),
    #[error("diagram is not of finite type")]
    NotFiniteType,
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("word `{0}` is not reduced")]
    NotReduced(String),
    #[error("`{0}` is not a minimal double coset representative")]
    NotMinimalCoset(String),
    #[error("{0} is not a positive root")]
    NotPositiveRoot(String),
    #[error("matrix is not skew-symmetric")]
    NotSkew,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("degree cone is not pointed; monomial basis would be infinite")]
    InfiniteMonomialBasis,
    #[error("selected entries may not form a regular sequence: {0}")]
    RegularSequenceSuspect(String),
    #[error("identity failed: {0}")]
    IdentityFailure(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
