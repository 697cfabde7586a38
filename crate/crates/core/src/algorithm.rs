//! The constant-depth UNIQUE-SAT circuit over GF(2).
//!
//! ```text
//! y  = |0⟩ ──────────┤    ├─ s† ──●── s† ── measure
//! x₁ = |0⟩ ── s ─────┤ U_f├─ s ───⊕──────── measure
//!  ⋮                 │    │       ⋮
//! xₙ = |0⟩ ── s ─────┤    ├─ s ───⊕──────── measure
//! ```
//!
//! Given `f` with at most one satisfying assignment, the final state is
//! exactly `|0⟩|0…0⟩` when `f` is unsatisfiable and has no `|0⟩|0…0⟩`
//! component when it is satisfiable. The default verdict inspects the whole
//! final support; [`run_unique_sat_sampled`] instead takes a single
//! measurement.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::ops::{apply_single, fanout_cnot, named_gate, GateName};
use crate::oracle::{apply_oracle, BoolFn};
use crate::state::{Backend, Outcome, State};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Unsat,
    Sat,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Unsat => "unsat",
            Verdict::Sat => "sat",
        })
    }
}

/// The eight recorded points of a run. Names are stable JSON labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepLabel {
    Init,
    Spread,
    Oracle,
    Unspread,
    SdagY,
    Cnot,
    SdagY2,
    Decide,
}

impl StepLabel {
    pub const ALL: [StepLabel; 8] = [
        StepLabel::Init,
        StepLabel::Spread,
        StepLabel::Oracle,
        StepLabel::Unspread,
        StepLabel::SdagY,
        StepLabel::Cnot,
        StepLabel::SdagY2,
        StepLabel::Decide,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StepLabel::Init => "init",
            StepLabel::Spread => "spread",
            StepLabel::Oracle => "oracle",
            StepLabel::Unspread => "unspread",
            StepLabel::SdagY => "sdag_y",
            StepLabel::Cnot => "cnot",
            StepLabel::SdagY2 => "sdag_y2",
            StepLabel::Decide => "decide",
        }
    }
}

impl fmt::Display for StepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One circuit element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instruction {
    Single { gate: GateName, qubit: usize },
    Oracle,
    FanoutCnot { control: usize, targets: Vec<usize> },
}

/// Instructions acting on disjoint wires, executed as one time step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub label: StepLabel,
    pub instructions: Vec<Instruction>,
}

/// The six gate layers between initialization and measurement, for `n` inputs.
pub fn unique_sat_circuit(n: usize) -> Vec<Layer> {
    let on_inputs = |gate| {
        (1..=n)
            .map(|qubit| Instruction::Single { gate, qubit })
            .collect::<Vec<_>>()
    };
    let on_y = |gate| vec![Instruction::Single { gate, qubit: 0 }];
    vec![
        Layer {
            label: StepLabel::Spread,
            instructions: on_inputs(GateName::S),
        },
        Layer {
            label: StepLabel::Oracle,
            instructions: vec![Instruction::Oracle],
        },
        Layer {
            label: StepLabel::Unspread,
            instructions: on_inputs(GateName::S),
        },
        Layer {
            label: StepLabel::SdagY,
            instructions: on_y(GateName::SDag),
        },
        Layer {
            label: StepLabel::Cnot,
            instructions: vec![Instruction::FanoutCnot {
                control: 0,
                targets: (1..=n).collect(),
            }],
        },
        Layer {
            label: StepLabel::SdagY2,
            instructions: on_y(GateName::SDag),
        },
    ]
}

/// Operations actually executed during a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct GateCounts {
    pub single_qubit: usize,
    pub oracle_calls: usize,
    pub fanout_cnots: usize,
    /// Number of layers, i.e. circuit depth.
    pub layers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub label: StepLabel,
    pub state: State,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub n: usize,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn state(&self, label: StepLabel) -> &State {
        &self
            .steps
            .iter()
            .find(|s| s.label == label)
            .expect("every label is recorded")
            .state
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.steps
                .iter()
                .map(|s| json!({ "label": s.label.name(), "state": s.state.render() }))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunOptions {
    /// Run even if `f` has more than one satisfying assignment. No verdict is
    /// named in that case.
    pub skip_promise_check: bool,
    pub capture_trace: bool,
    pub backend: Backend,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunResult {
    pub n: usize,
    /// `None` only for promise-violating inputs run with `skip_promise_check`.
    pub verdict: Option<Verdict>,
    pub sat_count: u64,
    pub final_support: Vec<usize>,
    pub outcome: Option<Outcome>,
    pub trace: Option<Trace>,
    pub gate_counts: GateCounts,
}

impl RunResult {
    /// Stable report object:
    /// `{"n", "verdict", "sat_count", "support", "outcome", "trace"}`.
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "verdict": self.verdict,
            "sat_count": self.sat_count,
            "support": self.final_support,
            "outcome": self.outcome.map(|o| o.index),
            "trace": self.trace.as_ref().map(Trace::to_json),
        })
    }
}

/// Ground-truth number of satisfying assignments.
pub fn check_promise(f: &BoolFn) -> u64 {
    f.count_sat()
}

struct Execution {
    final_state: State,
    trace: Option<Trace>,
    counts: GateCounts,
}

fn execute(f: &BoolFn, options: &RunOptions) -> Result<Execution> {
    let n = f.arity();
    let mut state = State::basis(n + 1, 0, FieldSpec::GF2, options.backend)?;
    let mut steps = Vec::new();
    if options.capture_trace {
        steps.push(TraceStep {
            label: StepLabel::Init,
            state: state.clone(),
        });
    }
    let mut counts = GateCounts::default();
    for layer in unique_sat_circuit(n) {
        for instruction in &layer.instructions {
            state = match instruction {
                Instruction::Single { gate, qubit } => {
                    counts.single_qubit += 1;
                    apply_single(&named_gate(*gate, FieldSpec::GF2)?, *qubit, &state)?
                }
                Instruction::Oracle => {
                    counts.oracle_calls += 1;
                    apply_oracle(f, &state)?
                }
                Instruction::FanoutCnot { control, targets } => {
                    counts.fanout_cnots += 1;
                    fanout_cnot(*control, targets, &state)?
                }
            };
        }
        counts.layers += 1;
        if options.capture_trace {
            steps.push(TraceStep {
                label: layer.label,
                state: state.clone(),
            });
        }
    }
    let trace = options.capture_trace.then(|| {
        steps.push(TraceStep {
            label: StepLabel::Decide,
            state: state.clone(),
        });
        Trace { n, steps }
    });
    Ok(Execution {
        final_state: state,
        trace,
        counts,
    })
}

fn enforce_promise(f: &BoolFn, options: &RunOptions) -> Result<u64> {
    let count = check_promise(f);
    if count > 1 && !options.skip_promise_check {
        return Err(Error::PromiseViolated { count });
    }
    Ok(count)
}

// Support-based decision; `None` when the promise does not hold.
fn decide(sat_count: u64, support: &[usize]) -> Result<Option<Verdict>> {
    if sat_count > 1 {
        return Ok(None);
    }
    match support {
        [0] => Ok(Some(Verdict::Unsat)),
        [0, rest @ ..] => Err(Error::InternalContradiction { others: rest.len() }),
        _ => Ok(Some(Verdict::Sat)),
    }
}

/// Runs the circuit and decides from the full final support.
pub fn run_unique_sat(f: &BoolFn, options: &RunOptions) -> Result<RunResult> {
    let sat_count = enforce_promise(f, options)?;
    let exec = execute(f, options)?;
    let final_support = exec.final_state.support();
    let verdict = decide(sat_count, &final_support)?;
    Ok(RunResult {
        n: f.arity(),
        verdict,
        sat_count,
        final_support,
        outcome: None,
        trace: exec.trace,
        gate_counts: exec.counts,
    })
}

/// Runs the circuit and decides from one measurement: UNSAT iff the outcome is `|0⟩|0…0⟩`.
pub fn run_unique_sat_sampled(f: &BoolFn, seed: u64, options: &RunOptions) -> Result<RunResult> {
    let sat_count = enforce_promise(f, options)?;
    let exec = execute(f, options)?;
    let final_support = exec.final_state.support();
    decide(sat_count, &final_support)?;
    let outcome = exec.final_state.measure(seed);
    let verdict = (sat_count <= 1).then_some(if outcome.index == 0 {
        Verdict::Unsat
    } else {
        Verdict::Sat
    });
    Ok(RunResult {
        n: f.arity(),
        verdict,
        sat_count,
        final_support,
        outcome: Some(outcome),
        trace: exec.trace,
        gate_counts: exec.counts,
    })
}

/// The eight intermediate states of a run. The promise is enforced.
pub fn trace(f: &BoolFn, backend: Backend) -> Result<Trace> {
    let options = RunOptions {
        skip_promise_check: false,
        capture_trace: true,
        backend,
    };
    let result = run_unique_sat(f, &options)?;
    Ok(result.trace.expect("trace requested"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::Vector;

    fn ket(list: &[&str]) -> State {
        State::try_from(Vector::from_kets(Backend::Dense, list).unwrap()).unwrap()
    }

    fn run(f: &BoolFn) -> RunResult {
        run_unique_sat(
            f,
            &RunOptions {
                capture_trace: true,
                ..RunOptions::default()
            },
        )
        .unwrap()
    }

    #[test]
    fn unsat_n2() {
        let r = run(&BoolFn::constant(2, false).unwrap());
        assert_eq!(r.verdict, Some(Verdict::Unsat));
        assert_eq!(r.final_support, vec![0]);
        assert_eq!(r.sat_count, 0);
    }

    #[test]
    fn point_at_10_n2() {
        let r = run(&BoolFn::point(2, 0b10).unwrap());
        assert_eq!(r.verdict, Some(Verdict::Sat));
        assert_eq!(r.final_support, vec![1, 4, 5]);
        let t = r.trace.unwrap();
        assert_eq!(t.state(StepLabel::Decide).render(), "|001⟩ + |100⟩ + |101⟩");
    }

    #[test]
    fn identity_function_n1_stepwise() {
        let r = run(&BoolFn::from_bitstring(1, "01").unwrap());
        assert_eq!(r.final_support, vec![2]);
        assert_eq!(r.verdict, Some(Verdict::Sat));
        let t = r.trace.unwrap();
        let expected = [
            ket(&["00"]),
            ket(&["00", "01"]),
            ket(&["00", "11"]),
            ket(&["00", "01", "11"]),
            ket(&["00", "11"]),
            ket(&["00", "10"]),
            ket(&["10"]),
            ket(&["10"]),
        ];
        for (step, want) in t.steps.iter().zip(&expected) {
            assert_eq!(&step.state, want, "step {}", step.label);
        }
    }

    #[test]
    fn trace_labels_and_shape() {
        let t = trace(&BoolFn::constant(3, false).unwrap(), Backend::Sparse).unwrap();
        let labels: Vec<StepLabel> = t.steps.iter().map(|s| s.label).collect();
        assert_eq!(labels, StepLabel::ALL);
        assert!(t.steps.iter().all(|s| s.state.qubits() == 4));
        assert_eq!(t.steps[0].state.support(), vec![0]);
    }

    #[test]
    fn promise_violation() {
        let f = BoolFn::from_bitstring(2, "1100").unwrap();
        assert_eq!(check_promise(&f), 2);
        assert_eq!(
            run_unique_sat(&f, &RunOptions::default()),
            Err(Error::PromiseViolated { count: 2 })
        );
        let r = run_unique_sat(
            &f,
            &RunOptions {
                skip_promise_check: true,
                ..RunOptions::default()
            },
        )
        .unwrap();
        assert_eq!(r.verdict, None);
        assert_eq!(r.sat_count, 2);
        assert!(!r.final_support.is_empty());
        assert!(trace(&f, Backend::Dense).is_err());
    }

    #[test]
    fn decide_flags_contradictions() {
        assert_eq!(decide(1, &[0, 3]), Err(Error::InternalContradiction { others: 1 }));
        assert_eq!(decide(0, &[0]).unwrap(), Some(Verdict::Unsat));
        assert_eq!(decide(1, &[2, 3]).unwrap(), Some(Verdict::Sat));
        assert_eq!(decide(2, &[0, 3]).unwrap(), None);
    }

    #[test]
    fn sampled_mode() {
        let f = BoolFn::constant(3, false).unwrap();
        for seed in 0..20 {
            let r = run_unique_sat_sampled(&f, seed, &RunOptions::default()).unwrap();
            assert_eq!(r.outcome.unwrap().index, 0);
            assert_eq!(r.verdict, Some(Verdict::Unsat));
        }
        let f = BoolFn::point(2, 0b10).unwrap();
        for seed in 0..100 {
            let r = run_unique_sat_sampled(&f, seed, &RunOptions::default()).unwrap();
            assert!([1, 4, 5].contains(&r.outcome.unwrap().index));
            assert_eq!(r.verdict, Some(Verdict::Sat));
        }
        let f = BoolFn::from_bitstring(1, "01").unwrap();
        let r = run_unique_sat_sampled(&f, 42, &RunOptions::default()).unwrap();
        assert_eq!(r.outcome.unwrap().index, 2);
    }

    #[test]
    fn gate_counts_are_structural() {
        for n in 1..=8 {
            let r = run_unique_sat(&BoolFn::point(n, 0).unwrap(), &RunOptions::default()).unwrap();
            assert_eq!(
                r.gate_counts,
                GateCounts {
                    single_qubit: 2 * n + 2,
                    oracle_calls: 1,
                    fanout_cnots: 1,
                    layers: 6
                }
            );
        }
    }

    #[test]
    fn json_shape() {
        let r = run(&BoolFn::from_bitstring(1, "01").unwrap());
        let v = r.to_json();
        assert_eq!(v["verdict"], "sat");
        assert_eq!(v["support"], json!([2]));
        assert_eq!(v["outcome"], Value::Null);
        assert_eq!(v["trace"][0]["label"], "init");
        assert_eq!(v["trace"][7]["state"], "|10⟩");
    }
}
