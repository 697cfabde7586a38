//! Simulator for modal quantum theory: quantum mechanics with the complex
//! numbers replaced by a finite field GF(p).
//!
//! Over GF(2) a qubit has exactly three states (`|0⟩`, `|1⟩`, `|+⟩`),
//! evolution is any invertible linear map, and measurement picks some basis
//! ket from the support with no probabilities attached. In that setting a
//! constant-depth circuit decides UNIQUE-SAT deterministically; see
//! [`algorithm`].
//!
//! ```
//! use mqt::{run_unique_sat, BoolFn, RunOptions, Verdict};
//!
//! let f = BoolFn::point(3, 0b101).unwrap();
//! let result = run_unique_sat(&f, &RunOptions::default()).unwrap();
//! assert_eq!(result.verdict, Some(Verdict::Sat));
//! assert!(!result.final_support.contains(&0));
//! ```

pub mod algorithm;
pub mod bits;
pub mod cli;
pub mod error;
pub mod field;
pub mod ops;
pub mod oracle;
pub mod parser;
pub mod state;
pub mod verify;

pub use algorithm::{
    check_promise, run_unique_sat, run_unique_sat_sampled, trace, RunOptions, RunResult, StepLabel, Trace, Verdict,
};
pub use error::{Error, Result};
pub use field::{FieldSpec, Gf2, Scalar};
pub use ops::{apply_single, apply_single_raw, compose, enumerate_1q_maps, fanout_cnot, named_gate, Gate2, GateName};
pub use oracle::{apply_oracle, BoolFn, Cnf};
pub use parser::{format_dimacs, parse_dimacs, parse_dimacs_with, ParseError, ParseOptions};
pub use state::{Backend, BasisIndex, Outcome, State, Vector};
