use thiserror::Error;

use crate::report::ValidationReport;
use crate::Elem;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input:\n{0}")]
    Invalid(ValidationReport),

    #[error("{0} is empty")]
    Empty(&'static str),

    #[error("{what} has size {size}, above the limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("element {0} is not a unit")]
    NotAUnit(Elem),

    #[error("bases differ: {0}")]
    BaseMismatch(String),

    #[error("map target `{0}` is not a base label of the groupoid")]
    NotInBase(String),

    #[error("quasipermutations of degrees {0} and {1} cannot be composed")]
    DegreeMismatch(usize, usize),

    #[error("invalid quasipermutation: {0}")]
    BadQuasipermutation(String),

    #[error("morphism is not strong: f({0})·f({1}) is defined but {0}·{1} is not")]
    NotStrong(Elem, Elem),

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("{0} overflows the integer type")]
    Overflow(&'static str),

    #[error("{0} is not prime")]
    NotPrime(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
