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

use core::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors surfaced by simulation and emulation operations.
///
/// Preconditions that would silently corrupt a state (out-of-range qubits,
/// unnormalized inputs, dirty target registers) are reported as values
/// instead of panicking, so a front end can surface them with context.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A qubit index is `>= n` for the state or circuit it was used with.
    QubitOutOfRange { qubit: usize, n: usize },
    /// A basis-state index is `>= 2^n`.
    IndexOutOfRange { index: usize, len: usize },
    /// The same qubit was named twice (target/control overlap or duplicates).
    DuplicateQubit { qubit: usize },
    /// Two states (or a state and a circuit) differ in qubit count.
    DimensionMismatch { left: usize, right: usize },
    /// The backing store for `2^n` amplitudes could not be allocated.
    AllocationFailed { qubits: usize },
    /// A qubit count outside the supported range (`1..=MAX_QUBITS`).
    InvalidQubitCount { n: usize },
    /// The state's norm² is too far from 1 for the requested operation.
    NotNormalized { norm_sq: f64 },
    /// A measurement outcome with probability below threshold was forced.
    ZeroProbabilityOutcome { probability: f64 },
    /// An emulated arithmetic op found amplitude on a non-clear target
    /// register; `index` is the offending basis state with the largest
    /// magnitude.
    RegisterNotClear { index: usize, magnitude: f64 },
    /// A claimed basis-index bijection mapped two sources to one target.
    NotInjective { target: usize },
    /// A register layout is malformed (overlap, width mismatch).
    BadLayout { reason: &'static str },
    /// A builder was handed fewer work qubits than its construction needs.
    InsufficientAncilla { needed: usize, got: usize },
    /// Dense-matrix export refused because `n` exceeds the configured limit.
    DenseLimitExceeded { n: usize, limit: usize },
    /// The supplied vector is not an eigenvector within tolerance.
    NotAnEigenvector { residual: f64 },
    /// The QR iteration did not converge within the iteration cap.
    EigensolverDidNotConverge { remaining: usize },
    /// Phase estimation needs at least one precision bit.
    InvalidPrecision { bits: usize },
    /// Model fitting had too few or degenerate samples.
    DegenerateFit { reason: &'static str },
    /// A machine parameter violated its domain (positivity etc.).
    BadMachineParams { reason: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::QubitOutOfRange { qubit, n } => {
                write!(f, "qubit {qubit} out of range for {n}-qubit register")
            }
            Error::IndexOutOfRange { index, len } => {
                write!(f, "basis index {index} out of range for dimension {len}")
            }
            Error::DuplicateQubit { qubit } => {
                write!(f, "qubit {qubit} appears more than once")
            }
            Error::DimensionMismatch { left, right } => {
                write!(f, "qubit counts differ: {left} vs {right}")
            }
            Error::AllocationFailed { qubits } => {
                write!(f, "cannot allocate state vector for {qubits} qubits")
            }
            Error::InvalidQubitCount { n } => {
                write!(f, "unsupported qubit count {n}")
            }
            Error::NotNormalized { norm_sq } => {
                write!(f, "state is not normalized: |ψ|² = {norm_sq}")
            }
            Error::ZeroProbabilityOutcome { probability } => {
                write!(f, "measurement outcome has probability {probability}")
            }
            Error::RegisterNotClear { index, magnitude } => {
                write!(
                    f,
                    "target register not clear: basis index {index} carries |amplitude| {magnitude:e}"
                )
            }
            Error::NotInjective { target } => {
                write!(f, "map is not injective: two sources hit index {target}")
            }
            Error::BadLayout { reason } => write!(f, "bad register layout: {reason}"),
            Error::InsufficientAncilla { needed, got } => {
                write!(f, "need {needed} ancilla qubits, layout provides {got}")
            }
            Error::DenseLimitExceeded { n, limit } => {
                write!(f, "dense export of {n} qubits exceeds limit of {limit}")
            }
            Error::NotAnEigenvector { residual } => {
                write!(f, "vector is not an eigenvector: residual {residual:e}")
            }
            Error::EigensolverDidNotConverge { remaining } => {
                write!(f, "eigensolver hit iteration cap with {remaining} eigenvalues left")
            }
            Error::InvalidPrecision { bits } => {
                write!(f, "phase estimation needs b >= 1 precision bits, got {bits}")
            }
            Error::DegenerateFit { reason } => write!(f, "degenerate fit: {reason}"),
            Error::BadMachineParams { reason } => write!(f, "bad machine parameters: {reason}"),
        }
    }
}

impl core::error::Error for Error {}
