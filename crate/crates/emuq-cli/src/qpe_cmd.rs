// Copyright contributors to the emuq project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! `emuq qpe`: estimate an eigenphase through a chosen (or auto-selected)
//! strategy, reporting the result and per-step timings as JSON.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use emuq_core::dense::DenseUnitary;
use emuq_core::gates::Gate;
use emuq_core::qpe::{
    emulate_qpe_eigen, emulate_qpe_squaring, select_strategy, simulate_qpe_prepared,
    InverseQftMode, Strategy,
};
use emuq_core::{Circuit, StateVector};
use serde::Serialize;

use crate::app::{resource, usage, AppError};
use crate::formats::parse_circuit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum QpeBuiltin {
    /// Single T gate; eigenstate |1⟩, phase exactly 1/8.
    TGate,
    /// Single Z gate; eigenstate |1⟩, phase exactly 1/2.
    ZGate,
    /// One Ising-model Trotter step on --n qubits.
    Tfim,
    /// The Fourier-transform circuit on --n qubits (order-4 operator).
    Qft,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum StrategyArg {
    Simulate,
    Square,
    Eigen,
    Auto,
}

#[derive(Args, Debug)]
pub struct QpeArgs {
    /// Built-in unitary.
    #[arg(long, value_enum, conflicts_with = "circuit")]
    pub builtin: Option<QpeBuiltin>,

    /// Unitary as a circuit file in the text format.
    #[arg(long)]
    pub circuit: Option<PathBuf>,

    /// Qubit count for the tfim/qft builtins.
    #[arg(long)]
    pub n: Option<usize>,

    /// Precision bits.
    #[arg(long, default_value_t = 4)]
    pub b: usize,

    /// Which route to run; auto picks the cheapest by the cost model.
    #[arg(long, value_enum, default_value = "auto")]
    pub strategy: StrategyArg,

    /// Write the result JSON here as well as to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Refuse joint registers wider than this many qubits.
    #[arg(long, default_value_t = 26)]
    pub max_qubits: usize,

    /// Refuse dense-matrix construction beyond this many qubits.
    #[arg(long, default_value_t = 14)]
    pub dense_limit: usize,

    /// Run the inverse Fourier transform inside the simulation at gate
    /// level instead of the emulated fast transform.
    #[arg(long)]
    pub gate_level_iqft: bool,
}

#[derive(Serialize)]
struct QpeReport {
    strategy: &'static str,
    phi: f64,
    bits: usize,
    distribution: Vec<(usize, f64)>,
    wall_time_s: f64,
    timings: BTreeMap<&'static str, f64>,
}

/// The unitary under estimation plus how to prepare an eigenstate.
struct QpeProblem {
    circuit: Circuit,
    /// Eigenstate preparation circuit, when one is known in closed form.
    prep: Option<Circuit>,
}

fn load_problem(args: &QpeArgs) -> Result<QpeProblem, AppError> {
    match (&args.builtin, &args.circuit) {
        (Some(builtin), None) => {
            let single = |gate: Gate, label: &str| {
                let mut c = Circuit::new(1, label);
                c.push(gate);
                c
            };
            let x_prep = || {
                let mut c = Circuit::new(1, "prep");
                c.x(0);
                c
            };
            Ok(match builtin {
                QpeBuiltin::TGate => {
                    QpeProblem { circuit: single(Gate::t(0), "t-gate"), prep: Some(x_prep()) }
                }
                QpeBuiltin::ZGate => {
                    QpeProblem { circuit: single(Gate::z(0), "z-gate"), prep: Some(x_prep()) }
                }
                QpeBuiltin::Tfim => {
                    let n = args.n.ok_or_else(|| usage("tfim takes --n"))?;
                    QpeProblem {
                        circuit: emuq_core::circuit::build_tfim_trotter(n, 0.1, 1.0, 1.0),
                        prep: None,
                    }
                }
                QpeBuiltin::Qft => {
                    let n = args.n.ok_or_else(|| usage("qft takes --n"))?;
                    QpeProblem { circuit: emuq_core::circuit::build_qft(n), prep: None }
                }
            })
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| resource(format!("cannot read {}: {e}", path.display())))?;
            let circuit = parse_circuit(&text).map_err(|e| usage(e.to_string()))?;
            Ok(QpeProblem { circuit, prep: None })
        }
        _ => Err(usage("exactly one of --builtin or --circuit is required")),
    }
}

fn dense_and_representative(
    args: &QpeArgs,
    circuit: &Circuit,
) -> Result<(DenseUnitary, usize, Vec<emuq_core::qpe::EigenPair>), AppError> {
    let dense = circuit.to_dense_matrix_with_limit(args.dense_limit)?;
    let pairs = emulate_qpe_eigen(&dense)?;
    // Deterministic pick: the mid-spectrum pair in solver order. For the
    // diagonal builtins this is the |1⟩ eigenstate.
    let idx = pairs.len() / 2;
    Ok((dense, idx, pairs))
}

pub fn cmd_qpe(args: &QpeArgs) -> Result<(), AppError> {
    if args.b == 0 {
        return Err(usage("--b must be at least 1"));
    }
    let problem = load_problem(args)?;
    let n = problem.circuit.n();
    let g = problem.circuit.gate_count();

    let requested = match args.strategy {
        StrategyArg::Simulate => Strategy::Simulate,
        StrategyArg::Square => Strategy::Square,
        StrategyArg::Eigen => Strategy::Eigen,
        // Our gate-level route is the coherent b-ancilla variant.
        StrategyArg::Auto => select_strategy(n, args.b, g, true),
    };

    let mut timings: BTreeMap<&'static str, f64> = BTreeMap::new();
    let started = Instant::now();
    let report = match requested {
        Strategy::Simulate => {
            if n + args.b > args.max_qubits {
                return Err(resource(format!(
                    "simulation needs {} joint qubits, over --max-qubits {}",
                    n + args.b,
                    args.max_qubits
                )));
            }
            let system = match &problem.prep {
                Some(prep) => {
                    let mut s = StateVector::basis_state(n, 0)?;
                    emuq_core::circuit::apply_circuit(&mut s, prep)?;
                    s
                }
                None if n <= args.dense_limit => {
                    let (_, idx, pairs) = dense_and_representative(args, &problem.circuit)?;
                    StateVector::from_amps(pairs[idx].vector.clone())?
                }
                None => {
                    eprintln!(
                        "note: no eigenstate available beyond --dense-limit; preparing |0…0⟩"
                    );
                    StateVector::basis_state(n, 0)?
                }
            };
            let mode = if args.gate_level_iqft {
                InverseQftMode::GateLevel
            } else {
                InverseQftMode::Emulated
            };
            let t0 = Instant::now();
            let estimate = simulate_qpe_prepared(&problem.circuit, &system, args.b, mode)?;
            let controlled_secs = t0.elapsed().as_secs_f64();
            // Per-application cost of the controlled unitary on the joint
            // register: the 2^b - 1 repetitions dominate the run.
            let applications = (1u64 << args.b) - 1;
            timings.insert("apply_u_s", controlled_secs / applications as f64);
            let distribution = estimate
                .distribution
                .as_ref()
                .map(|d| d.probs().iter().copied().enumerate().collect())
                .unwrap_or_default();
            QpeReport {
                strategy: "simulate",
                phi: estimate.phi,
                bits: estimate.bits,
                distribution,
                wall_time_s: started.elapsed().as_secs_f64(),
                timings,
            }
        }
        Strategy::Square => {
            let t0 = Instant::now();
            let dense = problem.circuit.to_dense_matrix_with_limit(args.dense_limit)?;
            timings.insert("dense_construction_s", t0.elapsed().as_secs_f64());

            // The squaring route consumes an eigenvector; the eigensolve
            // that finds it is bookkeeping, not part of the squaring cost.
            let pairs = emulate_qpe_eigen(&dense)?;
            let vector = pairs[pairs.len() / 2].vector.clone();

            let t0 = Instant::now();
            let estimate = emulate_qpe_squaring(&dense, &vector, args.b)?;
            timings.insert("squaring_s", t0.elapsed().as_secs_f64());
            QpeReport {
                strategy: "square",
                phi: estimate.phi,
                bits: estimate.bits,
                distribution: Vec::new(),
                wall_time_s: started.elapsed().as_secs_f64(),
                timings,
            }
        }
        Strategy::Eigen => {
            let t0 = Instant::now();
            let dense = problem.circuit.to_dense_matrix_with_limit(args.dense_limit)?;
            timings.insert("dense_construction_s", t0.elapsed().as_secs_f64());

            let t0 = Instant::now();
            let pairs = emulate_qpe_eigen(&dense)?;
            timings.insert("eigensolver_s", t0.elapsed().as_secs_f64());

            let idx = pairs.len() / 2;
            QpeReport {
                strategy: "eigen",
                phi: pairs[idx].phi,
                bits: args.b,
                distribution: Vec::new(),
                wall_time_s: started.elapsed().as_secs_f64(),
                timings,
            }
        }
    };

    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| usage(format!("serialization failed: {e}")))?;
    println!("{json}");
    if let Some(path) = &args.out {
        std::fs::write(path, &json)
            .map_err(|e| resource(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}
