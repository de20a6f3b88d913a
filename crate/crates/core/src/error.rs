use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rejected parameters: {0}")]
    RejectedParameters(String),

    #[error("graph C_{n}({a},{b}) is not strongly connected: gcd(n, a, b) = {gcd} != 1")]
    DisconnectedGraph { n: u64, a: u64, b: u64, gcd: u64 },

    #[error("({l}, {k}) is not a lattice point of C_{n}({a},{b})")]
    NotLatticePoint { n: u64, a: u64, b: u64, l: i64, k: i64 },

    #[error("step sequence does not close on C_{n}({a},{b}): transit distance {transit} is not a multiple of {n}")]
    DoesNotClose { n: u64, a: u64, b: u64, transit: u128 },

    #[error("budget exceeded: {what} needs {needed} candidates, budget is {budget}")]
    BudgetExceeded { what: String, needed: u128, budget: u128 },

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("undefined: {0}")]
    Undefined(&'static str),

    #[error("non-integer result: {0}")]
    NonIntegerResult(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
