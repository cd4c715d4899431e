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

//! `emuq bench`: per-size median wall times of the simulated and emulated
//! paths, with speedup columns, as CSV.
//!
//! The arithmetic suites time the simulated circuit on the full register
//! (3m qubits plus work qubits) and the emulated permutation on the bare
//! 3m-qubit register; the work qubits are exactly what emulation avoids
//! paying for.

use std::path::PathBuf;

use clap::Args;
use emuq_core::arithmetic::RegisterLayout;
use emuq_core::circuit::{apply_circuit, build_qft, build_tfim_trotter};
use emuq_core::emulator::{emulate_divide, emulate_multiply, emulate_qft};
use emuq_core::qpe::{emulate_qpe_eigen, emulate_qpe_squaring, simulate_qpe_prepared, InverseQftMode};
use emuq_core::StateVector;

use crate::app::{resource, usage, AppError};
use crate::timing::median_seconds;
use crate::workloads::{build_builtin, random_state, uniform_ab_state, Builtin, EmulationPath, TfimParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Qft,
    Mul,
    Div,
    Qpe,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Which workload family to measure.
    #[arg(long, value_enum)]
    pub suite: Suite,

    /// Size range `LO..HI` (inclusive): qubits for qft/qpe, register bits
    /// for mul/div.
    #[arg(long, value_parser = crate::app::parse_range)]
    pub sizes: (usize, usize),

    /// Timed repetitions per measurement (one warm-up run is discarded).
    #[arg(long, default_value_t = 5)]
    pub reps: usize,

    /// Write the benchmark CSV here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,

    /// Seed for the random benchmark inputs.
    #[arg(long, default_value_t = 2016)]
    pub seed: u64,

    /// Skip any measurement whose register would exceed this many qubits.
    #[arg(long, default_value_t = 26)]
    pub max_qubits: usize,

    /// Precision bits for the qpe suite.
    #[arg(long, default_value_t = 6)]
    pub qpe_bits: usize,

    /// Skip dense-matrix construction beyond this many qubits (qpe suite).
    #[arg(long, default_value_t = 10)]
    pub dense_limit: usize,
}

struct Row {
    suite: &'static str,
    size: usize,
    mode: &'static str,
    median_s: Option<f64>,
    speedup: Option<f64>,
}

impl Row {
    fn csv(&self) -> String {
        let median = self.median_s.map_or(String::new(), |s| format!("{s:.6e}"));
        let speedup = self.speedup.map_or(String::new(), |s| format!("{s:.3}"));
        format!("{},{},{},{},{}", self.suite, self.size, self.mode, median, speedup)
    }
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Qft => "qft",
        Suite::Mul => "mul",
        Suite::Div => "div",
        Suite::Qpe => "qpe",
    }
}

pub fn cmd_bench(args: &BenchArgs) -> Result<(), AppError> {
    let (lo, hi) = args.sizes;
    if lo > hi || lo == 0 {
        return Err(usage("--sizes must be a nonempty ascending range"));
    }
    let mut rows: Vec<Row> = Vec::new();
    for size in lo..=hi {
        match args.suite {
            Suite::Qft => bench_qft(args, size, &mut rows)?,
            Suite::Mul | Suite::Div => bench_arithmetic(args, size, &mut rows)?,
            Suite::Qpe => bench_qpe(args, size, &mut rows)?,
        }
    }

    let mut out = String::from("suite,size,mode,median_s,speedup\n");
    for row in &rows {
        out.push_str(&row.csv());
        out.push('\n');
    }
    match &args.csv {
        Some(path) => {
            std::fs::write(path, out)
                .map_err(|e| resource(format!("cannot write {}: {e}", path.display())))?;
            println!("benchmark csv: {}", path.display());
        }
        None => print!("{out}"),
    }
    Ok(())
}

fn bench_qft(args: &BenchArgs, n: usize, rows: &mut Vec<Row>) -> Result<(), AppError> {
    if n > args.max_qubits {
        eprintln!("warning: qft n={n} exceeds --max-qubits {}, skipped", args.max_qubits);
        rows.push(Row { suite: "qft", size: n, mode: "simulate", median_s: None, speedup: None });
        rows.push(Row { suite: "qft", size: n, mode: "emulate", median_s: None, speedup: None });
        return Ok(());
    }
    let circuit = build_qft(n);
    let input = random_state(n, args.seed ^ n as u64).map_err(|e| resource(e.to_string()))?;
    let qubits: Vec<usize> = (0..n).collect();

    let sim = median_seconds(args.reps, || {
        let mut s = input.clone();
        apply_circuit(&mut s, &circuit).expect("benchmark circuit applies");
    });
    let emu = median_seconds(args.reps, || {
        let mut s = input.clone();
        emulate_qft(&mut s, &qubits).expect("benchmark transform applies");
    });
    rows.push(Row { suite: "qft", size: n, mode: "simulate", median_s: Some(sim), speedup: None });
    rows.push(Row {
        suite: "qft",
        size: n,
        mode: "emulate",
        median_s: Some(emu),
        speedup: Some(sim / emu),
    });
    Ok(())
}

fn bench_arithmetic(args: &BenchArgs, m: usize, rows: &mut Vec<Row>) -> Result<(), AppError> {
    let builtin = if args.suite == Suite::Div { Builtin::Div } else { Builtin::Mul };
    let name = suite_name(args.suite);
    let workload = build_builtin(builtin, m, TfimParams::default())
        .map_err(|e| usage(e.to_string()))?;
    let EmulationPath::Arithmetic { layout, divide } = workload.emulation else {
        unreachable!("arithmetic builtins carry layouts");
    };

    // Emulation runs on the bare 3m-qubit register.
    let compact = RegisterLayout::contiguous(m, 0);
    let emu = if 3 * m > args.max_qubits {
        eprintln!("warning: {name} m={m} emulation needs {} qubits, skipped", 3 * m);
        None
    } else {
        let input = uniform_ab_state(&compact, 3 * m)?;
        Some(median_seconds(args.reps, || {
            let mut s = input.clone();
            if divide {
                emulate_divide(&mut s, &compact).expect("emulated arithmetic applies");
            } else {
                emulate_multiply(&mut s, &compact).expect("emulated arithmetic applies");
            }
        }))
    };

    let width = workload.circuit.n();
    let sim = if width > args.max_qubits {
        eprintln!("warning: {name} m={m} simulation needs {width} qubits, skipped");
        None
    } else {
        let input = uniform_ab_state(&layout, width)?;
        Some(median_seconds(args.reps, || {
            let mut s = input.clone();
            apply_circuit(&mut s, &workload.circuit).expect("benchmark circuit applies");
        }))
    };

    let speedup = match (sim, emu) {
        (Some(s), Some(e)) => Some(s / e),
        _ => None,
    };
    rows.push(Row { suite: name, size: m, mode: "simulate", median_s: sim, speedup: None });
    rows.push(Row { suite: name, size: m, mode: "emulate", median_s: emu, speedup });
    Ok(())
}

fn bench_qpe(args: &BenchArgs, n: usize, rows: &mut Vec<Row>) -> Result<(), AppError> {
    if n < 2 {
        return Err(usage("the qpe suite needs sizes >= 2 (Ising-step unitaries)"));
    }
    let bits = args.qpe_bits.max(1);
    let circuit = build_tfim_trotter(n, 0.1, 1.0, 1.0);

    let sim = if n + bits > args.max_qubits {
        eprintln!(
            "warning: qpe n={n} simulation needs {} qubits, skipped",
            n + bits
        );
        None
    } else {
        let system = StateVector::basis_state(n, 0).map_err(AppError::from)?;
        Some(median_seconds(args.reps, || {
            simulate_qpe_prepared(&circuit, &system, bits, InverseQftMode::Emulated)
                .expect("benchmark estimation runs");
        }))
    };
    rows.push(Row { suite: "qpe", size: n, mode: "simulate", median_s: sim, speedup: None });

    if n > args.dense_limit {
        eprintln!("warning: qpe n={n} dense routes exceed --dense-limit {}, skipped", args.dense_limit);
        rows.push(Row { suite: "qpe", size: n, mode: "square", median_s: None, speedup: None });
        rows.push(Row { suite: "qpe", size: n, mode: "eigen", median_s: None, speedup: None });
        return Ok(());
    }

    // The squaring route needs an eigenvector as input; obtain one outside
    // the timed region.
    let dense = circuit
        .to_dense_matrix_with_limit(args.dense_limit)
        .map_err(AppError::from)?;
    let pairs = emulate_qpe_eigen(&dense).map_err(AppError::from)?;
    let vector = pairs[pairs.len() / 2].vector.clone();

    let square = median_seconds(args.reps, || {
        let u = circuit.to_dense_matrix_with_limit(args.dense_limit).expect("within limit");
        emulate_qpe_squaring(&u, &vector, bits).expect("benchmark squaring runs");
    });
    rows.push(Row {
        suite: "qpe",
        size: n,
        mode: "square",
        median_s: Some(square),
        speedup: sim.map(|s| s / square),
    });

    let eigen = median_seconds(args.reps, || {
        let u = circuit.to_dense_matrix_with_limit(args.dense_limit).expect("within limit");
        emulate_qpe_eigen(&u).expect("benchmark eigensolve runs");
    });
    rows.push(Row {
        suite: "qpe",
        size: n,
        mode: "eigen",
        median_s: Some(eigen),
        speedup: sim.map(|s| s / eigen),
    });
    Ok(())
}
