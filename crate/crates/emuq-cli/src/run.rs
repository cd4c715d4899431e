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

//! `emuq run`: execute one workload gate-by-gate, as a classical
//! shortcut, or both ways with a comparison.

use std::path::PathBuf;

use clap::Args;
use emuq_core::circuit::apply_circuit;
use emuq_core::emulator::{emulate_divide, emulate_multiply, emulate_qft, full_distribution};
use emuq_core::StateVector;

use std::time::Instant;

use crate::app::{resource, usage, AppError};
use crate::formats::{distribution_csv, parse_circuit, state_csv, write_circuit};
use crate::workloads::{build_builtin, initial_state, Builtin, EmulationPath, TfimParams, Workload};

/// Paths that diverge beyond this distance make `--mode compare` fail
/// with exit code 1.
pub const COMPARE_TOLERANCE: f64 = 1e-8;

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Built-in workload (qft, entangler, tfim, mul, div).
    #[arg(long, value_enum, conflicts_with = "circuit")]
    pub builtin: Option<Builtin>,

    /// Circuit file in the text format (one gate per line).
    #[arg(long)]
    pub circuit: Option<PathBuf>,

    /// Qubit count for qft/entangler/tfim.
    #[arg(long)]
    pub n: Option<usize>,

    /// Bits per register for mul/div (total qubits 3m plus work qubits
    /// on the simulated path).
    #[arg(long)]
    pub m: Option<usize>,

    /// simulate, emulate, or compare.
    #[arg(long, default_value = "simulate")]
    pub mode: Mode,

    /// Initial state: a basis index in decimal, or "uniform".
    #[arg(long, default_value = "0")]
    pub init: String,

    /// Write the final state as CSV (`index,re,im`) to this path.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Write the full measurement distribution over all qubits as CSV
    /// (`outcome,probability`) to this path.
    #[arg(long)]
    pub out_dist: Option<PathBuf>,

    /// Print the circuit in the text format and exit without running.
    #[arg(long)]
    pub dump_circuit: bool,

    /// Refuse workloads wider than this many qubits.
    #[arg(long, default_value_t = 26)]
    pub max_qubits: usize,

    /// Ising-step time step (tfim builtin).
    #[arg(long, default_value_t = 0.1)]
    pub dt: f64,

    /// Ising-step transverse field strength (tfim builtin).
    #[arg(long, default_value_t = 1.0)]
    pub field: f64,

    /// Ising-step coupling (tfim builtin).
    #[arg(long, default_value_t = 1.0)]
    pub coupling: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Simulate,
    Emulate,
    Compare,
}

pub fn load_workload(args: &RunArgs) -> Result<Workload, AppError> {
    match (&args.builtin, &args.circuit) {
        (Some(builtin), None) => {
            let size = match builtin {
                Builtin::Mul | Builtin::Div => args
                    .m
                    .ok_or_else(|| usage("mul/div take --m (bits per register)"))?,
                _ => args.n.ok_or_else(|| usage("qft/entangler/tfim take --n (qubits)"))?,
            };
            let tfim = TfimParams { dt: args.dt, field: args.field, coupling: args.coupling };
            build_builtin(*builtin, size, tfim).map_err(|e| usage(e.to_string()))
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| resource(format!("cannot read {}: {e}", path.display())))?;
            let circuit = parse_circuit(&text).map_err(|e| usage(e.to_string()))?;
            Ok(Workload { circuit, emulation: EmulationPath::None })
        }
        _ => Err(usage("exactly one of --builtin or --circuit is required")),
    }
}

fn emulate(state: &mut StateVector, workload: &Workload) -> Result<(), AppError> {
    match &workload.emulation {
        EmulationPath::Qft => {
            let qubits: Vec<usize> = (0..workload.circuit.n()).collect();
            emulate_qft(state, &qubits).map_err(AppError::from)
        }
        EmulationPath::Arithmetic { layout, divide } => {
            if *divide {
                emulate_divide(state, layout).map_err(AppError::from)
            } else {
                emulate_multiply(state, layout).map_err(AppError::from)
            }
        }
        EmulationPath::None => Err(usage(format!(
            "workload '{}' has no emulation path (compare/emulate support qft, mul, div)",
            workload.circuit.label()
        ))),
    }
}

fn write_outputs(args: &RunArgs, state: &StateVector) -> Result<(), AppError> {
    if let Some(path) = &args.out {
        std::fs::write(path, state_csv(state))
            .map_err(|e| resource(format!("cannot write {}: {e}", path.display())))?;
        println!("state csv: {}", path.display());
    }
    if let Some(path) = &args.out_dist {
        let qubits: Vec<usize> = (0..state.n()).collect();
        let dist = full_distribution(state, &qubits)?;
        std::fs::write(path, distribution_csv(&dist))
            .map_err(|e| resource(format!("cannot write {}: {e}", path.display())))?;
        println!("distribution csv: {}", path.display());
    }
    Ok(())
}

pub fn cmd_run(args: &RunArgs) -> Result<(), AppError> {
    let workload = load_workload(args)?;
    let n = workload.circuit.n();
    if n > args.max_qubits {
        return Err(resource(format!(
            "workload needs {n} qubits, over the --max-qubits ceiling of {}",
            args.max_qubits
        )));
    }

    if args.dump_circuit {
        let text = write_circuit(&workload.circuit).map_err(|e| usage(e.to_string()))?;
        print!("{text}");
        return Ok(());
    }

    let initial = initial_state(&workload, &args.init)?;
    println!(
        "workload: {} ({n} qubits, {} gates)",
        workload.circuit.label(),
        workload.circuit.gate_count()
    );

    match args.mode {
        Mode::Simulate => {
            let mut state = initial;
            let t0 = Instant::now();
            apply_circuit(&mut state, &workload.circuit)?;
            println!("simulate: {:.6} s", t0.elapsed().as_secs_f64());
            write_outputs(args, &state)?;
        }
        Mode::Emulate => {
            let mut state = initial;
            let t0 = Instant::now();
            emulate(&mut state, &workload)?;
            println!("emulate: {:.6} s", t0.elapsed().as_secs_f64());
            write_outputs(args, &state)?;
        }
        Mode::Compare => {
            let mut simulated = initial.clone();
            let t0 = Instant::now();
            apply_circuit(&mut simulated, &workload.circuit)?;
            let sim_secs = t0.elapsed().as_secs_f64();

            let mut emulated = initial;
            let t0 = Instant::now();
            emulate(&mut emulated, &workload)?;
            let emu_secs = t0.elapsed().as_secs_f64();

            let distance = simulated.distance(&emulated)?;
            println!("simulate: {sim_secs:.6} s");
            println!("emulate:  {emu_secs:.6} s");
            println!("distance: {distance:.3e}");
            write_outputs(args, &simulated)?;
            // NaN must fail the comparison too.
            if distance.is_nan() || distance > COMPARE_TOLERANCE {
                return Err(AppError::Comparison(format!(
                    "paths diverge: distance {distance:.3e} exceeds {COMPARE_TOLERANCE:.0e}"
                )));
            }
        }
    }
    Ok(())
}
