use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A register would exceed the configured number of qubits.
    #[error("register of {required} qubits exceeds the capacity of {max} qubits")]
    Capacity { required: usize, max: usize },

    /// The full chain cannot hold the requested number of steps.
    #[error(
        "full chain for {requested} steps needs {required} qubits but capacity is {max_qubits}; \
         at most {max_steps} steps are feasible"
    )]
    StepCapacity {
        requested: usize,
        required: usize,
        max_qubits: usize,
        max_steps: usize,
    },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    /// A matrix violates a density-operator or unitary invariant.
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    /// Short machine-readable tag, used by the CLI error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Capacity { .. } | Error::StepCapacity { .. } => "capacity",
            Error::Argument(_) => "argument",
            Error::Unsupported(_) => "unsupported",
            Error::Invariant(_) => "invariant",
        }
    }
}
