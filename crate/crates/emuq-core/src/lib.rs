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

//! Quantum circuits executed two ways: exact gate-level state-vector
//! simulation and high-level classical emulation shortcuts.
//!
//! Every workload in this crate can be run through per-gate kernels
//! ([`gates`], [`circuit`], [`arithmetic`]) or replaced wholesale by a
//! classical shortcut ([`emulator`], [`qpe`]) that produces the same final
//! state: arithmetic circuits become basis-state permutations, the quantum
//! Fourier transform becomes an FFT over the amplitude vector, and phase
//! estimation becomes repeated matrix squaring or a dense eigensolve.
//! [`costmodel`] carries the analytic performance models used to pick
//! between the strategies.
//!
//! The crate is `no_std` (with `alloc`); everything that needs a clock,
//! a file, or a terminal lives in the companion `emuq-cli` crate.
//!
//! # Conventions
//!
//! * Qubit `k` is bit `k` of the amplitude index, bit 0 least significant.
//!   `|q1 q0⟩ = |01⟩` is amplitude index 1.
//! * Amplitudes are double-precision complex numbers.
//! * The Fourier convention is `α_l ← 2^{-n/2} Σ_k α_k exp(+2πi·kl/2^n)`.

#![no_std]

extern crate alloc;

pub mod arithmetic;
pub mod circuit;
pub mod costmodel;
pub mod dense;
pub mod emulator;
mod error;
pub mod gates;
pub mod qpe;
pub mod statevector;

pub use error::{Error, Result};

/// The amplitude scalar type, re-exported for downstream crates.
pub use num_complex::Complex64;

pub use circuit::Circuit;
pub use dense::DenseUnitary;
pub use gates::{Gate, GateKind};
pub use statevector::{MeasurementOutcome, StateVector};
