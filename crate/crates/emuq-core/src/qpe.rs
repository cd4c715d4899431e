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

//! Quantum phase estimation three ways.
//!
//! Eigenphases are reported as `φ ∈ [0, 1)` with eigenvalue `e^{2πi·φ}`,
//! so a `b`-bit ancilla readout is just `outcome / 2^b`.
//!
//! * [`simulate_qpe`]: coherent gate-level run with `b` ancillas; every
//!   elementary gate of the unitary is applied under control of each
//!   ancilla, `2^j` repetitions for ancilla `j`, then an inverse Fourier
//!   transform on the ancilla register. Cost grows as `G·2^{n+b}`
//!   amplitude-pair updates.
//! * [`emulate_qpe_squaring`]: dense matrix powers by repeated squaring,
//!   reading the phase of each power off a Rayleigh quotient.
//! * [`emulate_qpe_eigen`]: full dense eigendecomposition.
//!
//! [`select_strategy`] picks between them from the asymptotic cost
//! expressions in [`crate::costmodel`].

use alloc::vec::Vec;

use num_complex::Complex64;
// Float supplies the f64 math in the no_std build; test builds pull std
// into the crate graph (via dev-deps), whose inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::circuit::{apply_circuit, build_qft, Circuit};
use crate::costmodel;
use crate::dense::DenseUnitary;
use crate::emulator::{emulate_qft_inverse, full_distribution, DistributionTable};
use crate::error::{Error, Result};
use crate::gates;
use crate::statevector::StateVector;

/// How close `U·v` must be to `λ·v` for `v` to pass as an eigenvector.
pub const EIGENVECTOR_TOLERANCE: f64 = 1e-6;

/// Which route carries out a phase estimation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Simulate,
    Square,
    Eigen,
}

/// How the inverse Fourier transform inside [`simulate_qpe`] runs.
///
/// The default is the emulated fast transform, which keeps the measured
/// cost attributable to the controlled-unitary applications alone;
/// `GateLevel` forces a pure-simulation run using the inverse of the
/// Fourier circuit on the ancilla register.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum InverseQftMode {
    #[default]
    Emulated,
    GateLevel,
}

/// Outcome of a phase estimation.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseEstimate {
    /// Eigenphase as a fraction of a full turn, in `[0, 1)`. For the
    /// gate-level route this is the modal ancilla outcome over `2^b`; when
    /// the phase has an exact `b`-bit expansion it equals
    /// `round(φ·2^b)/2^b` exactly.
    pub phi: f64,
    /// Precision bits `b`.
    pub bits: usize,
    /// Ancilla outcome distribution (gate-level simulation only).
    pub distribution: Option<DistributionTable>,
}

/// One eigenpair from the dense route.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub phi: f64,
    pub eigenvalue: Complex64,
    pub vector: Vec<Complex64>,
}

/// Coherent gate-level phase estimation with `bits` ancillas, preparing
/// the system register by running `prep` on `|0…0⟩`.
pub fn simulate_qpe(
    u: &Circuit,
    prep: &Circuit,
    bits: usize,
    mode: InverseQftMode,
) -> Result<PhaseEstimate> {
    if prep.n() != u.n() {
        return Err(Error::DimensionMismatch { left: prep.n(), right: u.n() });
    }
    let mut system = StateVector::basis_state(u.n(), 0)?;
    apply_circuit(&mut system, prep)?;
    simulate_qpe_prepared(u, &system, bits, mode)
}

/// Coherent gate-level phase estimation with the system register already
/// prepared in `system` (typically an eigenvector of `u`).
///
/// Ancilla `j` lives on qubit `n + j` of the joint register. Controlled
/// powers are realized by repeating the controlled gate sequence `2^j`
/// times; the powers are never formed as matrices here.
pub fn simulate_qpe_prepared(
    u: &Circuit,
    system: &StateVector,
    bits: usize,
    mode: InverseQftMode,
) -> Result<PhaseEstimate> {
    if bits == 0 {
        return Err(Error::InvalidPrecision { bits });
    }
    if system.n() != u.n() {
        return Err(Error::DimensionMismatch { left: system.n(), right: u.n() });
    }
    let n = u.n();
    let mut joint = StateVector::basis_state(n + bits, 0)?;
    joint.amps_mut()[..system.len()].copy_from_slice(system.amps());

    let ancillas: Vec<usize> = (n..n + bits).collect();
    for &a in &ancillas {
        gates::apply(&mut joint, &gates::Gate::h(a))?;
    }
    for (j, &ancilla) in ancillas.iter().enumerate() {
        let controlled: Vec<gates::Gate> =
            u.gates().iter().map(|g| g.clone().controlled(ancilla)).collect();
        for _ in 0..1usize << j {
            for gate in &controlled {
                gates::apply(&mut joint, gate)?;
            }
        }
    }

    match mode {
        InverseQftMode::Emulated => emulate_qft_inverse(&mut joint, &ancillas)?,
        InverseQftMode::GateLevel => {
            let iqft = build_qft(bits).inverse().embedded(n + bits, n)?;
            apply_circuit(&mut joint, &iqft)?;
        }
    }

    let distribution = full_distribution(&joint, &ancillas)?;
    let (outcome, _) = distribution.modal();
    Ok(PhaseEstimate {
        phi: outcome as f64 / (1u64 << bits) as f64,
        bits,
        distribution: Some(distribution),
    })
}

/// Wraps into `[0, 1)`; `%` alone keeps the sign of its dividend.
fn frac(x: f64) -> f64 {
    let r = x % 1.0;
    if r < 0.0 {
        r + 1.0
    } else {
        r
    }
}

/// `v† U v` for unit `v`.
fn rayleigh_quotient(u: &DenseUnitary, v: &[Complex64]) -> Complex64 {
    let uv = u.mul_vec(v);
    v.iter().zip(&uv).map(|(a, b)| a.conj() * b).sum()
}

fn residual_norm(u: &DenseUnitary, v: &[Complex64], lambda: Complex64) -> f64 {
    let uv = u.mul_vec(v);
    uv.iter()
        .zip(v)
        .map(|(a, b)| (a - lambda * b).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Phase estimation by repeated squaring: forms `U, U², U⁴, …, U^{2^{b-1}}`
/// with `b-1` dense matrix squarings, reads the phase of each power off
/// the Rayleigh quotient of the supplied eigenvector, and assembles the
/// `b`-bit phase from the most significant end down.
pub fn emulate_qpe_squaring(
    u: &DenseUnitary,
    eigenvector: &[Complex64],
    bits: usize,
) -> Result<PhaseEstimate> {
    if bits == 0 {
        return Err(Error::InvalidPrecision { bits });
    }
    if eigenvector.len() != u.dim() {
        return Err(Error::DimensionMismatch { left: eigenvector.len(), right: u.dim() });
    }
    let norm = eigenvector.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return Err(Error::NotAnEigenvector { residual: f64::INFINITY });
    }
    let v: Vec<Complex64> = eigenvector.iter().map(|a| a / norm).collect();

    let lambda = rayleigh_quotient(u, &v);
    let residual = residual_norm(u, &v, lambda);
    if residual >= EIGENVECTOR_TOLERANCE {
        return Err(Error::NotAnEigenvector { residual });
    }

    // thetas[i] = phase of U^{2^i} on v, as a fraction of a turn.
    let mut thetas = Vec::with_capacity(bits);
    let mut power = u.clone();
    for i in 0..bits {
        let theta = rayleigh_quotient(&power, &v).arg() / core::f64::consts::TAU;
        thetas.push(frac(theta));
        if i + 1 < bits {
            power = power.mul(&power)?;
        }
    }

    // theta_i ≈ 0.x_{i+1} x_{i+2} … in binary; recover bits from the
    // least significant stage upward, subtracting the already-known tail.
    let mut tail = 0.0f64;
    for i in (0..bits).rev() {
        let delta = frac(thetas[i] - tail / 2.0);
        let bit = if (0.25..0.75).contains(&delta) { 1.0 } else { 0.0 };
        tail = bit / 2.0 + tail / 2.0;
    }

    Ok(PhaseEstimate { phi: tail, bits, distribution: None })
}

/// Classical phase estimation by full eigendecomposition: every eigenphase
/// of `u` at once, each with its eigenvector.
pub fn emulate_qpe_eigen(u: &DenseUnitary) -> Result<Vec<EigenPair>> {
    let (values, vectors) = u.eig()?;
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(k, eigenvalue)| EigenPair {
            phi: frac(eigenvalue.arg() / core::f64::consts::TAU),
            eigenvalue,
            vector: vectors.column(k),
        })
        .collect())
}

/// Picks the cheapest route from the asymptotic cost expressions (constant
/// factors set to 1). Ties break toward `Simulate`, which never pays the
/// dense-matrix memory blowup.
pub fn select_strategy(n: usize, bits: usize, gate_count: usize, coherent: bool) -> Strategy {
    let c = costmodel::qpe_costs(n, bits, gate_count, coherent, false);
    if c.simulate <= c.square && c.simulate <= c.eigen {
        Strategy::Simulate
    } else if c.square <= c.eigen {
        Strategy::Square
    } else {
        Strategy::Eigen
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::build_tfim_trotter;
    use crate::gates::Gate;
    use alloc::vec;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Distance between phases on the unit circle (mod 1).
    fn phase_distance(a: f64, b: f64) -> f64 {
        let d = (a - b).rem_euclid(1.0);
        d.min(1.0 - d)
    }

    fn single_gate_circuit(g: Gate) -> Circuit {
        let mut c = Circuit::new(1, "u");
        c.push(g);
        c
    }

    fn x_prep() -> Circuit {
        let mut c = Circuit::new(1, "prep");
        c.x(0);
        c
    }

    #[test]
    fn t_gate_phase_is_recovered_exactly() {
        // T|1⟩ = e^{iπ/4}|1⟩, φ = 1/8, exactly 3 bits.
        let u = single_gate_circuit(Gate::t(0));
        let est = simulate_qpe(&u, &x_prep(), 3, InverseQftMode::Emulated).unwrap();
        assert_eq!(est.phi, 0.125);
        let dist = est.distribution.unwrap();
        let (outcome, p) = dist.modal();
        assert_eq!(outcome, 1);
        assert!((p - 1.0).abs() < 1e-10, "modal probability {p}");
    }

    #[test]
    fn z_gate_with_one_bit() {
        let u = single_gate_circuit(Gate::z(0));
        let est = simulate_qpe(&u, &x_prep(), 1, InverseQftMode::Emulated).unwrap();
        assert_eq!(est.phi, 0.5);
        assert!((est.distribution.unwrap().probs()[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn four_bit_phase_five_sixteenths() {
        let u = single_gate_circuit(Gate::phase(core::f64::consts::TAU * 5.0 / 16.0, 0));
        let est = simulate_qpe(&u, &x_prep(), 4, InverseQftMode::Emulated).unwrap();
        let dist = est.distribution.as_ref().unwrap();
        let (outcome, p) = dist.modal();
        assert_eq!(outcome, 5);
        assert!((p - 1.0).abs() < 1e-9);
        assert_eq!(est.phi, 5.0 / 16.0);
    }

    #[test]
    fn gate_level_inverse_qft_agrees_with_emulated() {
        let u = single_gate_circuit(Gate::t(0));
        let a = simulate_qpe(&u, &x_prep(), 3, InverseQftMode::Emulated).unwrap();
        let b = simulate_qpe(&u, &x_prep(), 3, InverseQftMode::GateLevel).unwrap();
        assert_eq!(a.phi, b.phi);
        let (pa, pb) = (a.distribution.unwrap(), b.distribution.unwrap());
        for (x, y) in pa.probs().iter().zip(pb.probs()) {
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn non_eigenstate_prep_spreads_the_distribution() {
        // |0⟩ + |1⟩ mixes the two Z eigenphases 0 and 1/2.
        let u = single_gate_circuit(Gate::z(0));
        let mut prep = Circuit::new(1, "plus");
        prep.h(0);
        let est = simulate_qpe(&u, &prep, 2, InverseQftMode::Emulated).unwrap();
        let probs = est.distribution.unwrap();
        assert!((probs.probs()[0] - 0.5).abs() < 1e-10);
        assert!((probs.probs()[2] - 0.5).abs() < 1e-10);
    }

    #[test]
    fn squaring_on_a_diagonal_unitary() {
        let u = DenseUnitary::from_rows(&[
            &[c64(1.0, 0.0), c64(0.0, 0.0)],
            &[c64(0.0, 0.0), Complex64::from_polar(1.0, core::f64::consts::TAU / 8.0)],
        ]);
        let est = emulate_qpe_squaring(&u, &[c64(0.0, 0.0), c64(1.0, 0.0)], 3).unwrap();
        assert_eq!(est.phi, 0.125);
        assert!(est.distribution.is_none());
    }

    #[test]
    fn squaring_on_identity_gives_zero_phase() {
        let u = DenseUnitary::identity(4);
        let v = vec![c64(0.5, 0.0); 4];
        for bits in 1..=6 {
            assert_eq!(emulate_qpe_squaring(&u, &v, bits).unwrap().phi, 0.0);
        }
    }

    #[test]
    fn squaring_rejects_non_eigenvectors() {
        let u = DenseUnitary::from_rows(&[
            &[c64(1.0, 0.0), c64(0.0, 0.0)],
            &[c64(0.0, 0.0), c64(0.0, 1.0)],
        ]);
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let err = emulate_qpe_squaring(&u, &[c64(h, 0.0), c64(h, 0.0)], 3).unwrap_err();
        assert!(matches!(err, Error::NotAnEigenvector { residual } if residual > 0.1));
    }

    #[test]
    fn eigen_route_on_small_gates() {
        let u = DenseUnitary::from_rows(&[
            &[c64(1.0, 0.0), c64(0.0, 0.0)],
            &[c64(0.0, 0.0), c64(0.0, 1.0)],
        ]);
        let mut phis: Vec<f64> = emulate_qpe_eigen(&u).unwrap().iter().map(|p| p.phi).collect();
        phis.sort_by(f64::total_cmp);
        assert!((phis[0] - 0.0).abs() < 1e-10);
        assert!((phis[1] - 0.25).abs() < 1e-10);

        let h = core::f64::consts::FRAC_1_SQRT_2;
        let had = DenseUnitary::from_rows(&[&[c64(h, 0.0), c64(h, 0.0)], &[c64(h, 0.0), c64(-h, 0.0)]]);
        let mut phis: Vec<f64> = emulate_qpe_eigen(&had).unwrap().iter().map(|p| p.phi).collect();
        phis.sort_by(f64::total_cmp);
        assert!((phis[0] - 0.0).abs() < 1e-8);
        assert!((phis[1] - 0.5).abs() < 1e-8);
    }

    #[test]
    fn qft_eigenphases_are_quarter_multiples() {
        // The Fourier-transform operator has order 4, so every eigenvalue
        // is a 4th root of unity.
        let u = build_qft(3).to_dense_matrix().unwrap();
        for pair in emulate_qpe_eigen(&u).unwrap() {
            let scaled = pair.phi * 4.0;
            let nearest = scaled.round();
            assert!(
                (scaled - nearest).abs() < 1e-7,
                "phase {} is not a multiple of 1/4",
                pair.phi
            );
            // Residual check against the original matrix.
            let r = residual_norm(&u, &pair.vector, pair.eigenvalue);
            assert!(r < 1e-8, "residual {r}");
        }
    }

    #[test]
    fn all_three_strategies_agree_on_the_ising_step() {
        let n = 3;
        let bits = 4;
        let u_circ = build_tfim_trotter(n, 0.1, 1.0, 1.0);
        let u = u_circ.to_dense_matrix().unwrap();
        let pairs = emulate_qpe_eigen(&u).unwrap();
        // A mid-spectrum eigenvector, away from the degenerate corners.
        let pair = &pairs[pairs.len() / 2];

        let system = StateVector::from_amps(pair.vector.clone()).unwrap();
        let sim = simulate_qpe_prepared(&u_circ, &system, bits, InverseQftMode::Emulated).unwrap();
        let sq = emulate_qpe_squaring(&u, &pair.vector, bits).unwrap();

        let tol = 1.0 / (1u64 << bits) as f64;
        assert!(phase_distance(sim.phi, pair.phi) <= tol, "sim {} vs eigen {}", sim.phi, pair.phi);
        assert!(phase_distance(sq.phi, pair.phi) <= tol, "square {} vs eigen {}", sq.phi, pair.phi);
        assert!(phase_distance(sim.phi, sq.phi) <= tol);
    }

    #[test]
    fn repeated_squaring_matches_sequential_applications() {
        let u = build_tfim_trotter(3, 0.07, 0.9, 1.2).to_dense_matrix().unwrap();
        let k = 6; // U^64
        let mut power = u.clone();
        for _ in 0..k {
            power = power.mul(&power).unwrap();
        }
        let mut w = vec![c64(0.0, 0.0); 8];
        w[3] = c64(0.6, 0.0);
        w[5] = c64(0.0, 0.8);
        let via_squaring = power.mul_vec(&w);
        let mut seq = w;
        for _ in 0..1u32 << k {
            seq = u.mul_vec(&seq);
        }
        let diff: f64 = via_squaring
            .iter()
            .zip(&seq)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(diff < 1e-8, "power route diverged by {diff}");
    }

    #[test]
    fn strategy_selection_follows_the_cost_model() {
        // Deep in the b >= 2n region dense routes beat simulation.
        let c = costmodel::qpe_costs(8, 24, 29, false, false);
        assert!(c.square < c.simulate);
        assert_ne!(select_strategy(8, 24, 29, false), Strategy::Simulate);

        // Tiny b: the exponential dense cost dominates.
        assert_eq!(select_strategy(8, 2, 29, false), Strategy::Simulate);

        // Coherent QPE with b > n favors the eigensolver.
        assert_eq!(select_strategy(8, 10, 29, true), Strategy::Eigen);
    }

    #[test]
    fn selection_is_scale_invariant() {
        // Multiplying all three costs by a common factor never changes the
        // argmin; equivalent to comparing at a different abstract unit.
        for (n, b, g) in [(4usize, 3usize, 13usize), (8, 24, 29), (6, 12, 21), (10, 4, 37)] {
            let c = costmodel::qpe_costs(n, b, g, false, false);
            let pick = select_strategy(n, b, g, false);
            for scale in [1e-6, 1.0, 1e6] {
                let scaled = [c.simulate * scale, c.square * scale, c.eigen * scale];
                let argmin = if scaled[0] <= scaled[1] && scaled[0] <= scaled[2] {
                    Strategy::Simulate
                } else if scaled[1] <= scaled[2] {
                    Strategy::Square
                } else {
                    Strategy::Eigen
                };
                assert_eq!(argmin, pick);
            }
        }
    }

    #[test]
    fn zero_bits_is_rejected() {
        let u = single_gate_circuit(Gate::t(0));
        assert!(matches!(
            simulate_qpe(&u, &x_prep(), 0, InverseQftMode::Emulated),
            Err(Error::InvalidPrecision { bits: 0 })
        ));
        let d = DenseUnitary::identity(2);
        assert!(matches!(
            emulate_qpe_squaring(&d, &[c64(1.0, 0.0), c64(0.0, 0.0)], 0),
            Err(Error::InvalidPrecision { bits: 0 })
        ));
    }
}
