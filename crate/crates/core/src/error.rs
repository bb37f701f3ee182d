use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{origin}:{line}:{col}: syntax error: expected {expected}, found {found}")]
    Syntax {
        origin: String,
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },

    #[error("DuplicateClass: class `{0}` is declared more than once")]
    DuplicateClass(String),

    #[error("UnknownClass: `{0}` does not name a declared class")]
    UnknownClass(String),

    #[error("ArityMismatch: `{class}` takes {expected} type argument(s), got {found}")]
    ArityMismatch {
        class: String,
        expected: usize,
        found: usize,
    },

    #[error("CyclicSubclassing: {}", .0.join(" extends "))]
    CyclicSubclassing(Vec<String>),

    #[error("CyclicBound: the bound of a parameter of `{0}` depends on itself through other bounds")]
    CyclicBound(String),

    #[error("IllFormedArgument: in `{ty}`: {reason}")]
    IllFormedArgument { ty: String, reason: String },

    #[error("NullHasNoErasure: the null type has no class")]
    NullHasNoErasure,

    #[error("ResourceLimit: {what} exceeds the cap of {limit}")]
    ResourceLimit { what: String, limit: usize },

    #[error("UnsupportedBound: parameter {param} of `{class}`: {reason}")]
    UnsupportedBound {
        class: String,
        param: usize,
        reason: String,
    },

    #[error("UnsupportedSuperclass: `{class}`: {reason}")]
    UnsupportedSuperclass { class: String, reason: String },

    #[error("BaseMismatch: merge inputs are not derived from one base poset")]
    BaseMismatch,

    #[error("QuotientNotAntisymmetric: `{0}` and `{1}` are mutually below each other but canonically distinct")]
    QuotientNotAntisymmetric(String, String),

    #[error("UnknownObject: `{0}` is not an object of the category")]
    UnknownObject(String),

    #[error("InvalidPresentation: {0}")]
    InvalidPresentation(String),

    #[error("InvalidFunctor: {0}")]
    InvalidFunctor(String),

    #[error("CapExceeded: hom-set enumeration is sensitive to the path cap {0}")]
    CapExceeded(usize),
}

/// Coarse error classes; the CLI maps these onto exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Resource,
    Unsupported,
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Syntax { .. }
            | Error::DuplicateClass(_)
            | Error::UnknownClass(_)
            | Error::ArityMismatch { .. }
            | Error::CyclicSubclassing(_)
            | Error::CyclicBound(_)
            | Error::IllFormedArgument { .. }
            | Error::NullHasNoErasure
            | Error::UnknownObject(_)
            | Error::InvalidPresentation(_) => ErrorKind::Input,
            Error::ResourceLimit { .. } | Error::CapExceeded(_) => ErrorKind::Resource,
            Error::UnsupportedBound { .. } | Error::UnsupportedSuperclass { .. } => {
                ErrorKind::Unsupported
            }
            Error::BaseMismatch
            | Error::QuotientNotAntisymmetric(..)
            | Error::InvalidFunctor(_) => ErrorKind::Internal,
        }
    }
}
