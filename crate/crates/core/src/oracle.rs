//! Boolean functions as truth tables, CNF formulas, and the black box
//! `U_f |y⟩|x̄⟩ = |y ⊕ f(x̄)⟩|x̄⟩`.

use std::fmt;

use crate::bits::PackedBits;
use crate::error::{Error, Result};
use crate::ops::permute_basis;
use crate::state::{Coeffs, State};

/// Largest arity of a truth table. Running the circuit needs `n + 1` qubits,
/// so functions of the full arity can be tabulated and counted but not simulated.
pub const MAX_INPUTS: usize = 26;

/// `f : {0,1}^n → {0,1}` as an explicit table indexed by `x`, with `x₁` the
/// most significant bit of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoolFn {
    n: usize,
    table: PackedBits,
}

fn check_arity(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroArity);
    }
    if n > MAX_INPUTS {
        return Err(Error::TooManyVariables { n, limit: MAX_INPUTS });
    }
    Ok(())
}

impl BoolFn {
    pub fn from_table(n: usize, bits: &[bool]) -> Result<Self> {
        check_arity(n)?;
        if bits.len() != 1 << n {
            return Err(Error::LengthMismatch {
                expected: 1 << n,
                found: bits.len(),
            });
        }
        Ok(BoolFn {
            n,
            table: bits.iter().copied().collect(),
        })
    }

    /// Parses a string of `0`/`1` characters of length `2^n`.
    pub fn from_bitstring(n: usize, bits: &str) -> Result<Self> {
        let parsed: Vec<bool> = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::InvalidTable(other)),
            })
            .collect::<Result<_>>()?;
        BoolFn::from_table(n, &parsed)
    }

    pub fn constant(n: usize, value: bool) -> Result<Self> {
        check_arity(n)?;
        let table = if value {
            PackedBits::ones(1 << n)
        } else {
            PackedBits::zeros(1 << n)
        };
        Ok(BoolFn { n, table })
    }

    /// True exactly at `a`.
    pub fn point(n: usize, a: usize) -> Result<Self> {
        check_arity(n)?;
        if a >= 1 << n {
            return Err(Error::IndexOutOfRange {
                index: a,
                bound: 1 << n,
            });
        }
        let mut table = PackedBits::zeros(1 << n);
        table.set(a, true);
        Ok(BoolFn { n, table })
    }

    /// Truth table of a CNF formula. Each clause removes the cube of
    /// assignments that falsify every one of its literals.
    pub fn from_cnf(cnf: &Cnf) -> Result<Self> {
        let n = cnf.num_vars();
        check_arity(n)?;
        let all = (1usize << n) - 1;
        let mut table = PackedBits::ones(1 << n);
        'clauses: for clause in cnf.clauses() {
            let mut fixed = 0usize;
            let mut value = 0usize;
            for &lit in clause {
                let bit = 1usize << (n - lit.unsigned_abs() as usize);
                let falsifying = if lit < 0 { bit } else { 0 };
                if fixed & bit != 0 {
                    if value & bit != falsifying {
                        // v ∨ ¬v: the clause is a tautology
                        continue 'clauses;
                    }
                } else {
                    fixed |= bit;
                    value |= falsifying;
                }
            }
            let free = all & !fixed;
            let mut sub = free;
            loop {
                table.set(value | sub, false);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        Ok(BoolFn { n, table })
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn eval(&self, x: usize) -> bool {
        self.table.get(x)
    }

    pub fn table(&self) -> &PackedBits {
        &self.table
    }

    /// Number of satisfying assignments, by exhaustive count.
    pub fn count_sat(&self) -> u64 {
        self.table.count_ones()
    }

    pub fn satisfying_assignments(&self) -> Vec<usize> {
        self.table.iter_ones().collect()
    }

    pub fn to_bitstring(&self) -> String {
        (0..1usize << self.n)
            .map(|x| if self.eval(x) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for BoolFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.n, self.to_bitstring())
    }
}

/// Applies `U_f` to an `(n+1)`-qubit GF(2) state whose top wire is `y`.
pub fn apply_oracle(f: &BoolFn, s: &State) -> Result<State> {
    if !s.field().is_gf2() {
        return Err(Error::UnsupportedField { p: s.field().modulus() });
    }
    if s.qubits() != f.n + 1 {
        return Err(Error::DimensionMismatch {
            expected: f.n + 1,
            found: s.qubits(),
        });
    }
    let half = 1usize << f.n;
    let v = match &s.coeffs {
        Coeffs::Bits(bits) => {
            // swap the y=0 and y=1 halves wherever f(x) = 1
            let mut out = bits.clone();
            let mask = f.table.words();
            let words = out.words_mut();
            if half >= 64 {
                let (lo, hi) = words.split_at_mut(half / 64);
                for ((l, h), &m) in lo.iter_mut().zip(hi.iter_mut()).zip(mask) {
                    let t = (*l ^ *h) & m;
                    *l ^= t;
                    *h ^= t;
                }
            } else {
                let w = &mut words[0];
                let lo = *w & ((1u64 << half) - 1);
                let hi = *w >> half;
                let t = (lo ^ hi) & mask[0];
                *w ^= t | (t << half);
            }
            s.with_coeffs(Coeffs::Bits(out))
        }
        _ => permute_basis(s, |i| if f.eval(i & (half - 1)) { i ^ half } else { i }),
    };
    State::try_from(v)
}

/// A CNF formula over variables `1..=num_vars`; literal `-v` is the negation of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cnf {
    num_vars: usize,
    clauses: Vec<Vec<i32>>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for clause in &clauses {
            for &lit in clause {
                if lit == 0 {
                    return Err(Error::InvalidCnf("literal 0 inside a clause".into()));
                }
                if lit.unsigned_abs() as usize > num_vars {
                    return Err(Error::InvalidCnf(format!(
                        "literal {lit} refers past variable {num_vars}"
                    )));
                }
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    /// Direct evaluation on one assignment `x` (`x₁` most significant).
    pub fn eval(&self, x: usize) -> bool {
        let n = self.num_vars;
        self.clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let v = lit.unsigned_abs() as usize;
                let bit = (x >> (n - v)) & 1 == 1;
                if lit > 0 {
                    bit
                } else {
                    !bit
                }
            })
        })
    }
}
