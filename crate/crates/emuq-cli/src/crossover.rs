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

//! `emuq crossover`: the precision (in bits) at which each emulation
//! route overtakes gate-level simulation, per unitary size.
//!
//! Analytic mode evaluates the asymptotic cost expressions. Measured mode
//! times the four primitive steps on this machine (one application of the
//! unitary with the simulator, dense construction, one dense-by-dense
//! multiply, one eigensolve) and finds the smallest `b` with
//! `T_construct + b·T_multiply < (2^b - 1)·T_apply` (squaring) or
//! `T_construct + T_eigensolve < (2^b - 1)·T_apply` (eigendecomposition).

use std::path::PathBuf;

use clap::Args;
use emuq_core::circuit::{apply_circuit, build_tfim_trotter};
use emuq_core::costmodel::{crossover_bits_eigen, crossover_bits_squaring};
use emuq_core::qpe::emulate_qpe_eigen;

use crate::app::{resource, usage, AppError};
use crate::timing::median_seconds;
use crate::workloads::random_state;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum CrossoverMode {
    Analytic,
    Measured,
}

#[derive(Args, Debug)]
pub struct CrossoverArgs {
    /// Unitary sizes to tabulate, `LO..HI` inclusive.
    #[arg(long, value_parser = crate::app::parse_range)]
    pub n_range: (usize, usize),

    /// Largest precision considered when scanning for a crossover.
    #[arg(long, default_value_t = 64)]
    pub b_max: usize,

    #[arg(long, value_enum, default_value = "analytic")]
    pub mode: CrossoverMode,

    /// Use the sub-cubic multiplication exponent in the squaring cost.
    #[arg(long)]
    pub strassen: bool,

    /// Write the crossover CSV here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,

    /// Timed repetitions per primitive step (measured mode).
    #[arg(long, default_value_t = 3)]
    pub reps: usize,

    /// Refuse measured dense steps beyond this many qubits.
    #[arg(long, default_value_t = 10)]
    pub dense_limit: usize,

    /// Seed for the measured-mode probe states.
    #[arg(long, default_value_t = 2016)]
    pub seed: u64,
}

pub fn cmd_crossover(args: &CrossoverArgs) -> Result<(), AppError> {
    let (lo, hi) = args.n_range;
    if lo < 2 {
        return Err(usage("--n-range sizes must be >= 2 (Ising-step unitaries)"));
    }
    let mut out = String::from("n,crossover_bits_squaring,crossover_bits_eigen,mode\n");
    for n in lo..=hi {
        let g = 4 * n - 3;
        let (sq, ei, mode) = match args.mode {
            CrossoverMode::Analytic => {
                let sq = crossover_bits_squaring(n, g, false, args.strassen, args.b_max);
                let ei = crossover_bits_eigen(n, g, false, args.b_max);
                (sq, ei, "analytic")
            }
            CrossoverMode::Measured => {
                let (sq, ei) = measured_crossovers(args, n)?;
                (sq, ei, "measured")
            }
        };
        let fmt = |v: Option<usize>| v.map_or(String::new(), |b| b.to_string());
        out.push_str(&format!("{n},{},{},{mode}\n", fmt(sq), fmt(ei)));
    }
    match &args.csv {
        Some(path) => {
            std::fs::write(path, out)
                .map_err(|e| resource(format!("cannot write {}: {e}", path.display())))?;
            println!("crossover csv: {}", path.display());
        }
        None => print!("{out}"),
    }
    Ok(())
}

fn measured_crossovers(
    args: &CrossoverArgs,
    n: usize,
) -> Result<(Option<usize>, Option<usize>), AppError> {
    if n > args.dense_limit {
        return Err(resource(format!(
            "measured mode needs dense matrices; n={n} exceeds --dense-limit {}",
            args.dense_limit
        )));
    }
    let circuit = build_tfim_trotter(n, 0.1, 1.0, 1.0);
    let probe = random_state(n, args.seed ^ n as u64)?;

    let t_apply = median_seconds(args.reps, || {
        let mut s = probe.clone();
        apply_circuit(&mut s, &circuit).expect("probe circuit applies");
    });
    let (dense, t_construct) = {
        let t = median_seconds(args.reps, || {
            circuit.to_dense_matrix_with_limit(args.dense_limit).expect("within limit");
        });
        (circuit.to_dense_matrix_with_limit(args.dense_limit)?, t)
    };
    let t_multiply = median_seconds(args.reps, || {
        dense.mul(&dense).expect("square dims match");
    });
    let t_eigen = median_seconds(args.reps, || {
        emulate_qpe_eigen(&dense).expect("probe eigensolve runs");
    });

    let simulate_cost = |b: usize| ((1u128 << b) - 1) as f64 * t_apply;
    let sq = (1..=args.b_max).find(|&b| t_construct + b as f64 * t_multiply < simulate_cost(b));
    let ei = (1..=args.b_max).find(|&b| t_construct + t_eigen < simulate_cost(b));
    Ok((sq, ei))
}
