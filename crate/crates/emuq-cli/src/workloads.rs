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

//! Built-in workloads and their initial states, shared by the run and
//! bench commands.

use anyhow::{anyhow, Result};
use clap::ValueEnum;

use crate::app::{resource, AppError};
use emuq_core::arithmetic::{build_divider, build_multiplier, RegisterLayout};
use emuq_core::circuit::{build_entangler, build_qft, build_tfim_trotter, TFIM_DEFAULTS};
use emuq_core::{Circuit, Complex64, StateVector};
use rand_core::{RngCore, SeedableRng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Qft,
    Entangler,
    Tfim,
    Mul,
    Div,
}

/// What the emulation path of a workload is, if it has one.
pub enum EmulationPath {
    /// Fast Fourier transform over the whole register.
    Qft,
    /// Basis-permutation arithmetic over the layout's registers.
    Arithmetic { layout: RegisterLayout, divide: bool },
    /// Gate-level only (entangler, Ising step, circuit files).
    None,
}

pub struct Workload {
    pub circuit: Circuit,
    pub emulation: EmulationPath,
}

/// Ising-step parameters (`dt`, field, coupling).
#[derive(Clone, Copy, Debug)]
pub struct TfimParams {
    pub dt: f64,
    pub field: f64,
    pub coupling: f64,
}

impl Default for TfimParams {
    fn default() -> Self {
        let (dt, field, coupling) = TFIM_DEFAULTS;
        TfimParams { dt, field, coupling }
    }
}

/// Builds a named workload. `size` is the qubit count for qft, entangler,
/// and tfim, and the per-register bit width for mul and div (whose
/// simulated circuits occupy `3m` register qubits plus work qubits).
pub fn build_builtin(builtin: Builtin, size: usize, tfim: TfimParams) -> Result<Workload> {
    let workload = match builtin {
        Builtin::Qft => {
            if size < 1 {
                return Err(anyhow!("qft needs --n >= 1"));
            }
            Workload { circuit: build_qft(size), emulation: EmulationPath::Qft }
        }
        Builtin::Entangler => {
            if size < 2 {
                return Err(anyhow!("entangler needs --n >= 2"));
            }
            Workload { circuit: build_entangler(size), emulation: EmulationPath::None }
        }
        Builtin::Tfim => {
            if size < 2 {
                return Err(anyhow!("tfim needs --n >= 2"));
            }
            Workload {
                circuit: build_tfim_trotter(size, tfim.dt, tfim.field, tfim.coupling),
                emulation: EmulationPath::None,
            }
        }
        Builtin::Mul | Builtin::Div => {
            if size < 1 {
                return Err(anyhow!("arithmetic workloads need --m >= 1"));
            }
            let divide = builtin == Builtin::Div;
            let layout =
                if divide { RegisterLayout::for_div(size) } else { RegisterLayout::for_mul(size) };
            let circuit = if divide {
                build_divider(&layout)?
            } else {
                build_multiplier(&layout)?
            };
            Workload { circuit, emulation: EmulationPath::Arithmetic { layout, divide } }
        }
    };
    Ok(workload)
}

/// Fallible amplitude-vector allocation, so oversized requests surface as
/// resource errors instead of aborting.
fn alloc_amps(n: usize) -> Result<Vec<Complex64>, AppError> {
    if n == 0 || n > emuq_core::statevector::MAX_QUBITS {
        return Err(resource(format!("unsupported qubit count {n}")));
    }
    let len = 1usize << n;
    let mut amps = Vec::new();
    amps.try_reserve_exact(len)
        .map_err(|_| resource(format!("cannot allocate state vector for {n} qubits")))?;
    amps.resize(len, Complex64::new(0.0, 0.0));
    Ok(amps)
}

/// Uniform superposition over the a and b registers with c and all work
/// qubits cleared, on a register of `width` qubits.
pub fn uniform_ab_state(layout: &RegisterLayout, width: usize) -> Result<StateVector, AppError> {
    let m = layout.m();
    let mut amps = alloc_amps(width)?;
    let amp = Complex64::new(1.0 / (1usize << m) as f64, 0.0);
    for a in 0..1usize << m {
        for b in 0..1usize << m {
            amps[layout.encode(a, b, 0)] = amp;
        }
    }
    Ok(StateVector::from_amps(amps)?)
}

/// Seeded random normalized state, used as benchmark input.
pub fn random_state(n: usize, seed: u64) -> Result<StateVector, AppError> {
    let mut amps = alloc_amps(n)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut f = move || ((rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
    for a in &mut amps {
        *a = Complex64::new(f(), f());
    }
    let mut state = StateVector::from_amps(amps)?;
    state.normalize();
    Ok(state)
}

/// The initial state of a run: a basis index or the uniform superposition
/// (over the whole register, or over a,b for the arithmetic workloads).
pub fn initial_state(workload: &Workload, init: &str) -> Result<StateVector, AppError> {
    let n = workload.circuit.n();
    if init == "uniform" {
        return match &workload.emulation {
            EmulationPath::Arithmetic { layout, .. } => uniform_ab_state(layout, n),
            _ => Ok(StateVector::uniform(n)?),
        };
    }
    let index: usize = init.parse().map_err(|_| {
        crate::app::usage(format!("--init must be a basis index or 'uniform', got '{init}'"))
    })?;
    Ok(StateVector::basis_state(n, index)?)
}
