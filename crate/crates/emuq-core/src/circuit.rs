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

//! Circuit IR, builders for the benchmark workloads, execution, and dense
//! matrix export.

use alloc::string::String;
use alloc::vec::Vec;

use crate::dense::DenseUnitary;
use crate::error::{Error, Result};
use crate::gates::{self, Gate};
use crate::statevector::StateVector;

/// Default cap for [`Circuit::to_dense_matrix`]: a 14-qubit operator is a
/// `2^28`-entry complex matrix (4 GiB), the desk-scale ceiling.
pub const DEFAULT_DENSE_LIMIT: usize = 14;

/// Default transverse-field Ising step parameters used by the built-in
/// workload: `dt = 0.1`, field `h = 1.0`, coupling `J = 1.0`.
pub const TFIM_DEFAULTS: (f64, f64, f64) = (0.1, 1.0, 1.0);

/// An ordered gate sequence over `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
    label: String,
}

impl Circuit {
    pub fn new(n: usize, label: &str) -> Self {
        assert!(n >= 1, "a circuit needs at least one qubit");
        Circuit { n, gates: Vec::new(), label: String::from(label) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// Appends a gate.
    ///
    /// # Panics
    /// If the gate references a qubit `>= n`. Callers constructing circuits
    /// from untrusted input validate indices first (the circuit text parser
    /// does).
    pub fn push(&mut self, gate: Gate) -> &mut Self {
        assert!(
            gate.max_qubit() < self.n,
            "gate on qubit {} exceeds circuit width {}",
            gate.max_qubit(),
            self.n
        );
        self.gates.push(gate);
        self
    }

    pub fn h(&mut self, q: usize) -> &mut Self {
        self.push(Gate::h(q))
    }

    pub fn x(&mut self, q: usize) -> &mut Self {
        self.push(Gate::x(q))
    }

    pub fn rz(&mut self, theta: f64, q: usize) -> &mut Self {
        self.push(Gate::rz(theta, q))
    }

    pub fn rx(&mut self, theta: f64, q: usize) -> &mut Self {
        self.push(Gate::rx(theta, q))
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> &mut Self {
        self.push(Gate::cnot(control, target))
    }

    pub fn cr(&mut self, theta: f64, control: usize, target: usize) -> &mut Self {
        self.push(Gate::cr(theta, control, target))
    }

    pub fn toffoli(&mut self, c1: usize, c2: usize, target: usize) -> &mut Self {
        self.push(Gate::toffoli(c1, c2, target))
    }

    pub fn swap(&mut self, a: usize, b: usize) -> &mut Self {
        self.push(Gate::swap(a, b))
    }

    /// The inverse circuit: gates reversed and adjointed.
    pub fn inverse(&self) -> Circuit {
        let mut label = self.label.clone();
        label.push_str("-inverse");
        Circuit {
            n: self.n,
            gates: self.gates.iter().rev().map(Gate::adjoint).collect(),
            label,
        }
    }

    /// The same circuit acting on qubits `offset..offset+n` of a wider
    /// `new_n`-qubit register.
    pub fn embedded(&self, new_n: usize, offset: usize) -> Result<Circuit> {
        if offset + self.n > new_n {
            return Err(Error::QubitOutOfRange { qubit: offset + self.n - 1, n: new_n });
        }
        let mut gates = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            let mut mapped = g.clone();
            mapped.target += offset;
            if let crate::gates::GateKind::Swap(b) = &mut mapped.kind {
                *b += offset;
            }
            for c in &mut mapped.controls {
                *c += offset;
            }
            gates.push(mapped);
        }
        Ok(Circuit { n: new_n, gates, label: self.label.clone() })
    }

    /// Builds the dense `2^n x 2^n` matrix of the whole circuit, column
    /// `i` being the circuit applied to basis state `|i⟩`. Guarded by
    /// [`DEFAULT_DENSE_LIMIT`].
    pub fn to_dense_matrix(&self) -> Result<DenseUnitary> {
        self.to_dense_matrix_with_limit(DEFAULT_DENSE_LIMIT)
    }

    pub fn to_dense_matrix_with_limit(&self, limit: usize) -> Result<DenseUnitary> {
        if self.n > limit {
            return Err(Error::DenseLimitExceeded { n: self.n, limit });
        }
        let dim = 1usize << self.n;
        let mut m = DenseUnitary::zeros(dim);
        for col in 0..dim {
            let mut state = StateVector::basis_state(self.n, col)?;
            apply_circuit(&mut state, self)?;
            m.set_column(col, state.amps());
        }
        Ok(m)
    }
}

/// Runs the circuit's gates in order against the state.
pub fn apply_circuit(state: &mut StateVector, circuit: &Circuit) -> Result<()> {
    if state.n() != circuit.n {
        return Err(Error::DimensionMismatch { left: state.n(), right: circuit.n });
    }
    for gate in &circuit.gates {
        gates::apply(state, gate)?;
    }
    Ok(())
}

/// Standard quantum Fourier transform circuit on `n` qubits, including the
/// terminal swap network, realizing
/// `α_l ← 2^{-n/2} Σ_k α_k exp(+2πi·kl/2^n)` with no bit reversal left in
/// the output.
///
/// Gate inventory: `n` Hadamards, `n(n-1)/2` conditional phase shifts,
/// `floor(n/2)` swaps.
pub fn build_qft(n: usize) -> Circuit {
    let mut c = Circuit::new(n, "qft");
    for j in (0..n).rev() {
        c.h(j);
        for k in 2..=(j + 1) {
            let control = j + 1 - k;
            let theta = core::f64::consts::TAU / (1u64 << k) as f64;
            c.cr(theta, control, j);
        }
    }
    for i in 0..n / 2 {
        c.swap(i, n - 1 - i);
    }
    c
}

/// Hadamard on qubit 0 followed by CNOTs fanning out to every other qubit;
/// on `|0…0⟩` this produces the GHZ state.
pub fn build_entangler(n: usize) -> Circuit {
    assert!(n >= 2, "entangler needs at least two qubits");
    let mut c = Circuit::new(n, "entangler");
    c.h(0);
    for target in 1..n {
        c.cnot(0, target);
    }
    c
}

/// One first-order Trotter step of the open-chain transverse-field Ising
/// model: `Rx(2h·dt)` on every qubit, then each nearest-neighbor ZZ
/// coupling as `CNOT · Rz(2J·dt) · CNOT`. Total gates: `4n - 3`.
pub fn build_tfim_trotter(n: usize, dt: f64, field: f64, coupling: f64) -> Circuit {
    assert!(n >= 2, "the Ising chain needs at least two qubits");
    let mut c = Circuit::new(n, "tfim");
    for q in 0..n {
        c.rx(2.0 * field * dt, q);
    }
    for q in 0..n - 1 {
        c.cnot(q, q + 1);
        c.rz(2.0 * coupling * dt, q + 1);
        c.cnot(q, q + 1);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::GateKind;
    use alloc::vec;
    use num_complex::Complex64;
    // Float supplies the f64 math in the no_std build; test builds pull std
// into the crate graph (via dev-deps), whose inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;
    use rand_core::{RngCore, SeedableRng};

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_state(n: usize, seed: u64) -> StateVector {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut f = move || ((rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
        let mut amps = vec![c64(0.0, 0.0); 1 << n];
        for a in &mut amps {
            *a = c64(f(), f());
        }
        let mut s = StateVector::from_amps(amps).unwrap();
        s.normalize();
        s
    }

    /// Direct evaluation of the transform matrix
    /// `F[l][k] = 2^{-n/2} exp(+2πi·kl/2^n)`.
    fn dft_matrix(n: usize) -> DenseUnitary {
        let dim = 1usize << n;
        let scale = 1.0 / (dim as f64).sqrt();
        let mut m = DenseUnitary::zeros(dim);
        for l in 0..dim {
            for k in 0..dim {
                let angle = core::f64::consts::TAU * (k as f64 * l as f64) / dim as f64;
                m.set(l, k, Complex64::from_polar(scale, angle));
            }
        }
        m
    }

    #[test]
    fn qft_on_one_qubit_is_a_single_hadamard() {
        let c = build_qft(1);
        assert_eq!(c.gate_count(), 1);
        assert!(matches!(c.gates()[0].kind, GateKind::H));
    }

    #[test]
    fn qft_gate_inventory() {
        let c = build_qft(4);
        assert_eq!(c.gate_count(), 12); // 4 H + 6 CR + 2 swaps
        let h = c.gates().iter().filter(|g| matches!(g.kind, GateKind::H)).count();
        let cr = c
            .gates()
            .iter()
            .filter(|g| matches!(g.kind, GateKind::Phase(_)) && g.controls.len() == 1)
            .count();
        let swaps = c.gates().iter().filter(|g| matches!(g.kind, GateKind::Swap(_))).count();
        assert_eq!((h, cr, swaps), (4, 6, 2));
    }

    #[test]
    fn qft_of_zero_state_is_uniform() {
        let mut s = StateVector::basis_state(3, 0).unwrap();
        apply_circuit(&mut s, &build_qft(3)).unwrap();
        let expect = c64(1.0 / 8.0f64.sqrt(), 0.0);
        for i in 0..8 {
            assert!((s.amp(i) - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn qft_dense_matrix_matches_direct_formula() {
        for n in 1..=5 {
            let u = build_qft(n).to_dense_matrix().unwrap();
            let f = dft_matrix(n);
            let diff = u.max_abs_diff(&f).unwrap();
            assert!(diff < 1e-12, "qft({n}) differs from the DFT matrix by {diff}");
        }
    }

    #[test]
    fn entangler_produces_ghz() {
        let mut s = StateVector::basis_state(2, 0).unwrap();
        apply_circuit(&mut s, &build_entangler(2)).unwrap();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amp(0) - c64(h, 0.0)).norm() < 1e-15);
        assert!((s.amp(3) - c64(h, 0.0)).norm() < 1e-15);

        assert_eq!(build_entangler(5).gate_count(), 5);

        let mut s = StateVector::basis_state(3, 0).unwrap();
        apply_circuit(&mut s, &build_entangler(3)).unwrap();
        assert!((s.amp(0) - c64(h, 0.0)).norm() < 1e-15);
        assert!((s.amp(7) - c64(h, 0.0)).norm() < 1e-15);
        assert!(s.amp(3).norm() < 1e-15);
    }

    #[test]
    fn tfim_gate_counts_match_4n_minus_3() {
        for (n, expect) in [(8, 29), (14, 53)] {
            let c = build_tfim_trotter(n, 0.1, 1.0, 1.0);
            assert_eq!(c.gate_count(), expect);
        }
        for n in 2..=20 {
            assert_eq!(build_tfim_trotter(n, 0.1, 1.0, 1.0).gate_count(), 4 * n - 3);
        }
    }

    #[test]
    fn tfim_with_zero_step_is_identity() {
        let c = build_tfim_trotter(5, 0.0, 1.3, 0.8);
        let original = random_state(5, 21);
        let mut s = original.clone();
        apply_circuit(&mut s, &c).unwrap();
        assert!(s.distance(&original).unwrap() < 1e-12);
    }

    #[test]
    fn circuit_then_inverse_is_identity() {
        let mut c = Circuit::new(4, "scramble");
        c.h(0).cnot(0, 2).rz(0.7, 1).toffoli(1, 3, 0).swap(2, 3).rx(1.1, 3).cr(0.9, 0, 3);
        c.push(Gate::s(2)).push(Gate::t(1));
        let original = random_state(4, 5);
        let mut s = original.clone();
        apply_circuit(&mut s, &c).unwrap();
        apply_circuit(&mut s, &c.inverse()).unwrap();
        assert!(s.distance(&original).unwrap() < 1e-11);
    }

    #[test]
    fn dense_export_of_single_x() {
        let mut c = Circuit::new(1, "x");
        c.x(0);
        let m = c.to_dense_matrix().unwrap();
        assert_eq!(m.get(0, 1), c64(1.0, 0.0));
        assert_eq!(m.get(1, 0), c64(1.0, 0.0));
        assert_eq!(m.get(0, 0), c64(0.0, 0.0));
        assert_eq!(m.get(1, 1), c64(0.0, 0.0));
    }

    #[test]
    fn dense_export_of_empty_circuit_is_identity() {
        let c = Circuit::new(3, "empty");
        let m = c.to_dense_matrix().unwrap();
        assert!(m.max_abs_diff(&DenseUnitary::identity(8)).unwrap() < 1e-15);
    }

    #[test]
    fn dense_export_respects_the_limit() {
        let c = Circuit::new(5, "wide");
        assert!(matches!(
            c.to_dense_matrix_with_limit(4),
            Err(Error::DenseLimitExceeded { n: 5, limit: 4 })
        ));
    }

    #[test]
    fn x_on_high_qubit_matches_kronecker_with_identity() {
        // In the MSB-first reading (qubit index 0 as the most significant
        // factor), NOT on that qubit is X ⊗ 1₂. With this crate's LSB-first
        // indexing the same matrix belongs to X acting on qubit 1.
        let mut c = Circuit::new(2, "x-high");
        c.x(1);
        let m = c.to_dense_matrix().unwrap();
        let expect = [
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ];
        for r in 0..4 {
            for col in 0..4 {
                assert_eq!(m.get(r, col), c64(expect[r][col], 0.0));
            }
        }
    }

    #[test]
    fn apply_circuit_checks_dimensions() {
        let c = build_entangler(3);
        let mut s = StateVector::basis_state(2, 0).unwrap();
        assert!(matches!(
            apply_circuit(&mut s, &c),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn embedded_circuit_acts_on_shifted_qubits() {
        let mut c = Circuit::new(2, "bell");
        c.h(0).cnot(0, 1);
        let wide = c.embedded(4, 2).unwrap();
        let mut s = StateVector::basis_state(4, 0).unwrap();
        apply_circuit(&mut s, &wide).unwrap();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amp(0) - c64(h, 0.0)).norm() < 1e-15);
        assert!((s.amp(0b1100) - c64(h, 0.0)).norm() < 1e-15);
    }
}
