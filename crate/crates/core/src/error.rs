use thiserror::Error;

/// Errors raised by the simulation layers (field, state, ops, oracle, algorithm).
///
/// DIMACS parsing has its own error type, [`crate::parser::ParseError`],
/// because it carries a source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime; a field modulus must be prime")]
    NotPrime(u32),
    #[error("cannot combine scalars of GF({left}) and GF({right})")]
    MixedFields { left: u32, right: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero vector is not a valid state")]
    ZeroVector,
    #[error("register of {qubits} qubits exceeds the limit of {limit}")]
    RegisterTooLarge { qubits: usize, limit: usize },
    #[error("operation is only defined over GF(2), not GF({p})")]
    UnsupportedField { p: u32 },
    #[error("gate is not invertible; evolution requires an invertible map")]
    NonInvertibleGate,
    #[error("control qubit {qubit} also appears among the targets")]
    ControlInTargets { qubit: usize },
    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("truth table may only contain 0 and 1, found {0:?}")]
    InvalidTable(char),
    #[error("{n} variables exceeds the limit of {limit}")]
    TooManyVariables { n: usize, limit: usize },
    #[error("a Boolean function needs at least one input")]
    ZeroArity,
    #[error("invalid CNF: {0}")]
    InvalidCnf(String),
    #[error("promise violated: function has {count} satisfying assignments (at most 1 allowed)")]
    PromiseViolated { count: u64 },
    #[error("final support holds |0..0> alongside {others} other outcomes; impossible under the promise")]
    InternalContradiction { others: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
