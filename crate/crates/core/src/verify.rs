//! Batch checking of the circuit against brute-force ground truth.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algorithm::{run_unique_sat, RunOptions, Verdict};
use crate::error::{Error, Result};
use crate::oracle::BoolFn;
use crate::state::{Backend, MAX_QUBITS};

/// Arities up to this bound are swept exhaustively.
pub const EXHAUSTIVE_MAX: usize = 4;

/// Largest arity the circuit can simulate.
pub const MAX_SIMULATED_INPUTS: usize = MAX_QUBITS - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub n_max: usize,
    pub random_per_n: usize,
    pub seed: u64,
    pub backend: Backend,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub exhaustive: bool,
    pub instances: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub instances: usize,
    pub failures: usize,
}

/// Instances for one arity: the constant-false function followed by point
/// functions (all of them when `n <= EXHAUSTIVE_MAX`, otherwise
/// `random_per_n` drawn from a stream keyed by `(seed, n)`).
pub fn instances(n: usize, random_per_n: usize, seed: u64) -> Result<Vec<BoolFn>> {
    let mut out = vec![BoolFn::constant(n, false)?];
    if n <= EXHAUSTIVE_MAX {
        for a in 0..1usize << n {
            out.push(BoolFn::point(n, a)?);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(n as u64);
        for _ in 0..random_per_n {
            out.push(BoolFn::point(n, rng.random_range(0..1usize << n))?);
        }
    }
    Ok(out)
}

/// True when the run agrees with ground truth: UNSAT exactly for zero
/// satisfying assignments, with support `[0]` for UNSAT and no index 0 for SAT.
pub fn check_instance(f: &BoolFn, backend: Backend) -> bool {
    let options = RunOptions {
        backend,
        ..RunOptions::default()
    };
    let Ok(result) = run_unique_sat(f, &options) else {
        return false;
    };
    let expected = if f.count_sat() == 0 {
        Verdict::Unsat
    } else {
        Verdict::Sat
    };
    let support_ok = match expected {
        Verdict::Unsat => result.final_support == [0],
        Verdict::Sat => !result.final_support.contains(&0),
    };
    result.verdict == Some(expected) && support_ok
}

pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    if config.n_max == 0 {
        return Err(Error::ZeroArity);
    }
    if config.n_max > MAX_SIMULATED_INPUTS {
        return Err(Error::RegisterTooLarge {
            qubits: config.n_max + 1,
            limit: MAX_QUBITS,
        });
    }
    let mut rows = Vec::with_capacity(config.n_max);
    for n in 1..=config.n_max {
        let fs = instances(n, config.random_per_n, config.seed)?;
        let failures = fs.par_iter().filter(|f| !check_instance(f, config.backend)).count();
        rows.push(SweepRow {
            n,
            exhaustive: n <= EXHAUSTIVE_MAX,
            instances: fs.len(),
            failures,
        });
    }
    Ok(SweepReport {
        instances: rows.iter().map(|r| r.instances).sum(),
        failures: rows.iter().map(|r| r.failures).sum(),
        rows,
    })
}
