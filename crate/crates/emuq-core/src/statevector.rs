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

//! The wave-function representation: `2^n` complex amplitudes plus
//! initialization, comparison, and measurement semantics.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
// Float supplies the f64 math in the no_std build; test builds pull std
// into the crate graph (via dev-deps), whose inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;
use rand_core::RngCore;

use crate::error::{Error, Result};

/// Hard ceiling on qubit counts. Allocation of the amplitude vector is
/// attempted fallibly, so the practical limit is available memory; this
/// bound only keeps `1 << n` from overflowing.
pub const MAX_QUBITS: usize = 40;

/// States whose norm² strays further than this from 1 are rejected by
/// [`StateVector::sample_all`].
pub const SAMPLING_NORM_TOLERANCE: f64 = 1e-6;

/// Outcomes with probability at or below this cannot be forced by
/// [`StateVector::collapse`].
pub const MIN_COLLAPSE_PROBABILITY: f64 = 1e-12;

/// An n-qubit pure state as a dense vector of `2^n` complex amplitudes.
///
/// Qubit `k` is bit `k` of the amplitude index with bit 0 least
/// significant, so `|q1 q0⟩ = |10⟩` lives at index 2. Kronecker-product
/// constructions that place qubit 0 as the most significant factor (the
/// other common convention) are the bit-reversal of this layout.
///
/// A state is exclusively owned by one operation at a time; it can be
/// moved between threads but never mutated concurrently.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StateVector({} qubits", self.n)?;
        for (i, a) in self.amps.iter().enumerate().filter(|(_, a)| a.norm_sqr() > 1e-20) {
            write!(f, ", [{i}]={a}")?;
        }
        write!(f, ")")
    }
}

/// Result of sampling every qubit at once: the classical bit string (as a
/// basis index) and its probability at the moment of measurement.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementOutcome {
    pub bits: usize,
    pub probability: f64,
}

fn alloc_amps(n: usize) -> Result<Vec<Complex64>> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::InvalidQubitCount { n });
    }
    let len = 1usize << n;
    let mut amps = Vec::new();
    amps.try_reserve_exact(len)
        .map_err(|_| Error::AllocationFailed { qubits: n })?;
    amps.resize(len, Complex64::new(0.0, 0.0));
    Ok(amps)
}

impl StateVector {
    /// Creates the computational basis state `|index⟩` on `n` qubits.
    ///
    /// Allocation failure is reported as an error rather than aborting, so
    /// front ends can refuse oversized requests gracefully.
    pub fn basis_state(n: usize, index: usize) -> Result<Self> {
        let mut amps = alloc_amps(n)?;
        if index >= amps.len() {
            return Err(Error::IndexOutOfRange { index, len: amps.len() });
        }
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    /// Creates the uniform superposition `2^{-n/2} Σ_i |i⟩`.
    pub fn uniform(n: usize) -> Result<Self> {
        let mut amps = alloc_amps(n)?;
        let len = amps.len();
        let a = Complex64::new(1.0 / (len as f64).sqrt(), 0.0);
        amps.fill(a);
        Ok(StateVector { n, amps })
    }

    /// Wraps an amplitude vector whose length must be a power of two.
    /// No normalization is performed.
    pub fn from_amps(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidQubitCount { n: 0 });
        }
        Ok(StateVector { n: len.trailing_zeros() as usize, amps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    /// Swaps the backing storage with `other`'s (used by out-of-place
    /// permutation and transform kernels). Both must have equal length.
    pub(crate) fn swap_amps(&mut self, other: &mut Vec<Complex64>) {
        debug_assert_eq!(self.amps.len(), other.len());
        core::mem::swap(&mut self.amps, other);
    }

    /// Returns `Σ_i |amps[i]|²`.
    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Rescales the state to unit norm. No-op on the zero vector.
    pub fn normalize(&mut self) {
        let norm = self.norm_sq().sqrt();
        if norm > 0.0 {
            let inv = 1.0 / norm;
            for a in &mut self.amps {
                *a *= inv;
            }
        }
    }

    /// Maximum amplitude difference after aligning global phase.
    ///
    /// `other` is multiplied by the unit phase maximizing `Re⟨self, other⟩`
    /// (closed form from the inner product) before taking
    /// `max_i |a_i - b_i|`, so states that differ only by a global phase
    /// compare as equal. Alignment is skipped when the inner product
    /// vanishes (orthogonal or zero input).
    pub fn distance(&self, other: &StateVector) -> Result<f64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        let ip: Complex64 = self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum();
        let phase = if ip.norm_sqr() > 0.0 {
            ip.conj() / ip.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut max = 0.0f64;
        for (a, b) in self.amps.iter().zip(&other.amps) {
            let d = (a - phase * b).norm();
            if d > max {
                max = d;
            }
        }
        Ok(max)
    }

    /// Samples all qubits, returning basis index `i` with probability
    /// `|amps[i]|²`. The state is not mutated; collapse is a separate
    /// operation.
    ///
    /// Fails if the state is not normalized to within
    /// [`SAMPLING_NORM_TOLERANCE`].
    pub fn sample_all<R: RngCore + ?Sized>(&self, rng: &mut R) -> Result<MeasurementOutcome> {
        let total = self.norm_sq();
        if (total - 1.0).abs() > SAMPLING_NORM_TOLERANCE {
            return Err(Error::NotNormalized { norm_sq: total });
        }
        // 53 random mantissa bits -> uniform in [0, 1).
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let target = u * total;
        let mut acc = 0.0;
        let mut hit = self.amps.len() - 1;
        for (i, a) in self.amps.iter().enumerate() {
            acc += a.norm_sqr();
            if acc > target {
                hit = i;
                break;
            }
        }
        Ok(MeasurementOutcome { bits: hit, probability: self.amps[hit].norm_sqr() })
    }

    /// Projects onto the subspace where the listed qubits read `outcome`
    /// (bit `j` of `outcome` is the required value of `qubits[j]`) and
    /// renormalizes.
    ///
    /// Fails when the requested outcome carries probability at or below
    /// [`MIN_COLLAPSE_PROBABILITY`]; the state is left untouched on error.
    pub fn collapse(&mut self, qubits: &[usize], outcome: usize) -> Result<()> {
        check_qubits(self.n, qubits)?;
        if outcome >= 1usize << qubits.len() {
            return Err(Error::IndexOutOfRange { index: outcome, len: 1usize << qubits.len() });
        }
        let matches = |i: usize| {
            qubits
                .iter()
                .enumerate()
                .all(|(j, &q)| (i >> q) & 1 == (outcome >> j) & 1)
        };
        let prob: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| matches(*i))
            .map(|(_, a)| a.norm_sqr())
            .sum();
        if prob <= MIN_COLLAPSE_PROBABILITY {
            return Err(Error::ZeroProbabilityOutcome { probability: prob });
        }
        let scale = 1.0 / prob.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if matches(i) {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        Ok(())
    }
}

/// Validates that `qubits` are pairwise distinct and all `< n`.
pub(crate) fn check_qubits(n: usize, qubits: &[usize]) -> Result<()> {
    for (j, &q) in qubits.iter().enumerate() {
        if q >= n {
            return Err(Error::QubitOutOfRange { qubit: q, n });
        }
        if qubits[..j].contains(&q) {
            return Err(Error::DuplicateQubit { qubit: q });
        }
    }
    Ok(())
}

/// Extracts the value stored in `qubits` (list position 0 = bit 0) from a
/// basis index.
pub(crate) fn gather_bits(index: usize, qubits: &[usize]) -> usize {
    let mut v = 0;
    for (j, &q) in qubits.iter().enumerate() {
        v |= ((index >> q) & 1) << j;
    }
    v
}

/// Overwrites the bits of `index` at `qubits` with the bits of `value`.
pub(crate) fn set_bits(index: usize, qubits: &[usize], value: usize) -> usize {
    let mut i = index;
    for (j, &q) in qubits.iter().enumerate() {
        i = (i & !(1usize << q)) | (((value >> j) & 1) << q);
    }
    i
}
