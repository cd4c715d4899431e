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

//! The standard gate library and the state-vector application kernels.
//!
//! Every gate is a small base unitary (2x2, or the 4x4 swap) plus an
//! optional list of control qubits, so CNOT is X with one control, the
//! conditional phase shift CR(θ) is Phase(θ) with one control, and Toffoli
//! is X with two controls. Kernels enumerate exactly the amplitudes a gate
//! can touch: a controlled gate with k controls reads and writes only the
//! `2^{n-k}` amplitudes in the all-controls-set sector. The controlled
//! phase shift additionally skips its target's 0-sector, touching a
//! quarter of the state vector.

use alloc::vec::Vec;

use num_complex::Complex64;
// Float supplies the f64 math in the no_std build; test builds pull std
// into the crate graph (via dev-deps), whose inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::dense::DenseUnitary;
use crate::error::{Error, Result};
use crate::statevector::{check_qubits, StateVector};

/// A 2x2 complex matrix in row-major order.
pub type Mat2 = [[Complex64; 2]; 2];

/// Base operation of a gate, before controls are attached.
#[derive(Clone, Debug, PartialEq)]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    T,
    /// Rotation about Z: `diag(e^{-iθ/2}, e^{iθ/2})`.
    Rz(f64),
    /// Rotation about X: `cos(θ/2)·I - i·sin(θ/2)·X`.
    Rx(f64),
    /// Phase shift `diag(1, e^{iθ})`; with one control this is the
    /// conditional phase-shift gate CR(θ).
    Phase(f64),
    /// Exchange of the target qubit with the stored partner qubit.
    Swap(usize),
    /// Arbitrary single-qubit unitary.
    Custom(Mat2),
}

/// A gate instance: base kind, target qubit, and control qubits.
///
/// Invariants: target, swap partner, and controls are pairwise distinct
/// (enforced by the constructors), and the base matrix of every kind is
/// unitary.
#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<usize>,
}

fn unit(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

impl Gate {
    fn plain(kind: GateKind, target: usize) -> Self {
        Gate { kind, target, controls: Vec::new() }
    }

    pub fn x(target: usize) -> Self {
        Self::plain(GateKind::X, target)
    }

    pub fn y(target: usize) -> Self {
        Self::plain(GateKind::Y, target)
    }

    pub fn z(target: usize) -> Self {
        Self::plain(GateKind::Z, target)
    }

    pub fn h(target: usize) -> Self {
        Self::plain(GateKind::H, target)
    }

    pub fn s(target: usize) -> Self {
        Self::plain(GateKind::S, target)
    }

    pub fn t(target: usize) -> Self {
        Self::plain(GateKind::T, target)
    }

    pub fn rz(theta: f64, target: usize) -> Self {
        Self::plain(GateKind::Rz(theta), target)
    }

    pub fn rx(theta: f64, target: usize) -> Self {
        Self::plain(GateKind::Rx(theta), target)
    }

    pub fn phase(theta: f64, target: usize) -> Self {
        Self::plain(GateKind::Phase(theta), target)
    }

    /// # Panics
    /// If `control == target`.
    pub fn cnot(control: usize, target: usize) -> Self {
        Self::x(target).controlled(control)
    }

    /// Conditional phase shift CR(θ). Symmetric in its two qubits.
    ///
    /// # Panics
    /// If `control == target`.
    pub fn cr(theta: f64, control: usize, target: usize) -> Self {
        Self::phase(theta, target).controlled(control)
    }

    /// # Panics
    /// If the three qubits are not distinct.
    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Self {
        Self::x(target).controlled(c1).controlled(c2)
    }

    /// # Panics
    /// If `a == b`.
    pub fn swap(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "swap requires two distinct qubits");
        Self::plain(GateKind::Swap(b), a)
    }

    /// Arbitrary 2x2 gate; rejected unless unitary to within 1e-12.
    pub fn custom(matrix: Mat2, target: usize) -> Result<Self> {
        if unitarity_error2(&matrix) >= 1e-12 {
            return Err(Error::BadLayout { reason: "custom gate matrix is not unitary" });
        }
        Ok(Self::plain(GateKind::Custom(matrix), target))
    }

    /// Adds a control qubit.
    ///
    /// # Panics
    /// If `control` collides with the target, swap partner, or an existing
    /// control.
    pub fn controlled(mut self, control: usize) -> Self {
        assert!(
            !self.qubits().contains(&control),
            "control qubit {control} already used by the gate"
        );
        self.controls.push(control);
        self
    }

    /// All qubits the gate touches: target, swap partner (if any), then
    /// controls.
    pub fn qubits(&self) -> Vec<usize> {
        let mut qs = Vec::with_capacity(2 + self.controls.len());
        qs.push(self.target);
        if let GateKind::Swap(b) = self.kind {
            qs.push(b);
        }
        qs.extend_from_slice(&self.controls);
        qs
    }

    pub fn max_qubit(&self) -> usize {
        self.qubits().into_iter().max().unwrap_or(0)
    }

    /// The inverse gate. Self-inverse kinds stay as they are; S and T turn
    /// into phase gates with negated angles.
    pub fn adjoint(&self) -> Gate {
        use GateKind::*;
        let kind = match &self.kind {
            X => X,
            Y => Y,
            Z => Z,
            H => H,
            S => Phase(-core::f64::consts::FRAC_PI_2),
            T => Phase(-core::f64::consts::FRAC_PI_4),
            Rz(t) => Rz(-t),
            Rx(t) => Rx(-t),
            Phase(t) => Phase(-t),
            Swap(b) => Swap(*b),
            Custom(m) => Custom([
                [m[0][0].conj(), m[1][0].conj()],
                [m[0][1].conj(), m[1][1].conj()],
            ]),
        };
        Gate { kind, target: self.target, controls: self.controls.clone() }
    }

    /// The 2x2 base matrix, or `None` for swap.
    pub fn base_matrix(&self) -> Option<Mat2> {
        use GateKind::*;
        let zero = unit(0.0, 0.0);
        let one = unit(1.0, 0.0);
        let m = match &self.kind {
            X => [[zero, one], [one, zero]],
            Y => [[zero, unit(0.0, -1.0)], [unit(0.0, 1.0), zero]],
            Z => [[one, zero], [zero, unit(-1.0, 0.0)]],
            H => {
                let h = unit(core::f64::consts::FRAC_1_SQRT_2, 0.0);
                [[h, h], [h, -h]]
            }
            S => [[one, zero], [zero, unit(0.0, 1.0)]],
            T => [[one, zero], [zero, Complex64::from_polar(1.0, core::f64::consts::FRAC_PI_4)]],
            Rz(t) => [
                [Complex64::from_polar(1.0, -t / 2.0), zero],
                [zero, Complex64::from_polar(1.0, t / 2.0)],
            ],
            Rx(t) => {
                let c = unit((t / 2.0).cos(), 0.0);
                let s = unit(0.0, -(t / 2.0).sin());
                [[c, s], [s, c]]
            }
            Phase(t) => [[one, zero], [zero, Complex64::from_polar(1.0, *t)]],
            Swap(_) => return None,
            Custom(m) => *m,
        };
        Some(m)
    }

    /// The gate's full matrix including controls, with the target as bit 0
    /// (the swap partner as bit 1) and controls as the higher bits in list
    /// order. With that ordering an uncontrolled gate gives its 2x2 matrix
    /// and single-controlled gates give the familiar 4x4 forms, e.g. CNOT
    /// as `[[1,0,0,0],[0,1,0,0],[0,0,0,1],[0,0,1,0]]` and CR(θ) as
    /// `diag(1,1,1,e^{iθ})`.
    pub fn matrix_of(&self) -> DenseUnitary {
        let k = self.controls.len();
        match self.base_matrix() {
            Some(u) => {
                let dim = 1usize << (1 + k);
                let mut m = DenseUnitary::zeros(dim);
                let cmask = ((1usize << k) - 1) << 1;
                for col in 0..dim {
                    if col & cmask == cmask {
                        let t = col & 1;
                        m.set(col & !1, col, u[0][t]);
                        m.set(col | 1, col, u[1][t]);
                    } else {
                        m.set(col, col, unit(1.0, 0.0));
                    }
                }
                m
            }
            None => {
                // Swap: target is bit 0, partner bit 1, controls above.
                let dim = 1usize << (2 + k);
                let mut m = DenseUnitary::zeros(dim);
                let cmask = ((1usize << k) - 1) << 2;
                for col in 0..dim {
                    let row = if col & cmask == cmask {
                        let (b0, b1) = (col & 1, (col >> 1) & 1);
                        (col & !3) | (b0 << 1) | b1
                    } else {
                        col
                    };
                    m.set(row, col, unit(1.0, 0.0));
                }
                m
            }
        }
    }
}

fn unitarity_error2(m: &Mat2) -> f64 {
    let mut max = 0.0f64;
    for i in 0..2 {
        for j in 0..2 {
            let mut s = m[0][i].conj() * m[0][j] + m[1][i].conj() * m[1][j];
            if i == j {
                s -= 1.0;
            }
            max = max.max(s.norm());
        }
    }
    max
}

/// Inserts `bit` at position `pos`, shifting higher bits left by one.
#[inline]
pub(crate) fn insert_bit(x: usize, pos: usize, bit: usize) -> usize {
    let low = x & ((1usize << pos) - 1);
    let high = (x >> pos) << (pos + 1);
    high | (bit << pos) | low
}

/// Expands a compact index by pinning fixed bits at the given positions.
/// `fixed` must be sorted by position ascending.
#[inline]
pub(crate) fn expand_index(compact: usize, fixed: &[(usize, usize)]) -> usize {
    let mut x = compact;
    for &(pos, bit) in fixed {
        x = insert_bit(x, pos, bit);
    }
    x
}

/// Applies a 2x2 unitary to the target qubit: every amplitude pair whose
/// indices differ only in bit `target` is multiplied by `u`. Equivalent to
/// multiplying the state by the Kronecker-product embedding of `u`.
pub fn apply_single_qubit(state: &mut StateVector, u: &Mat2, target: usize) -> Result<()> {
    if target >= state.n() {
        return Err(Error::QubitOutOfRange { qubit: target, n: state.n() });
    }
    let step = 1usize << target;
    let amps = state.amps_mut();
    let mut base = 0;
    while base < amps.len() {
        for i0 in base..base + step {
            let i1 = i0 + step;
            let a = amps[i0];
            let b = amps[i1];
            amps[i0] = u[0][0] * a + u[0][1] * b;
            amps[i1] = u[1][0] * a + u[1][1] * b;
        }
        base += 2 * step;
    }
    Ok(())
}

/// Applies `u` on `target` only where every control bit is 1; all other
/// amplitudes are untouched. Generalizes CNOT (one control) and Toffoli
/// (two controls) to any number of controls.
pub fn apply_controlled(
    state: &mut StateVector,
    u: &Mat2,
    target: usize,
    controls: &[usize],
) -> Result<()> {
    if controls.is_empty() {
        return apply_single_qubit(state, u, target);
    }
    let mut qubits = Vec::with_capacity(1 + controls.len());
    qubits.push(target);
    qubits.extend_from_slice(controls);
    check_qubits(state.n(), &qubits)?;

    // Pin target=0 and all controls=1; enumerate the remaining bits.
    let mut fixed: Vec<(usize, usize)> = controls.iter().map(|&c| (c, 1)).collect();
    fixed.push((target, 0));
    fixed.sort_unstable_by_key(|&(p, _)| p);

    let free = state.n() - fixed.len();
    let step = 1usize << target;
    let amps = state.amps_mut();
    for compact in 0..1usize << free {
        let i0 = expand_index(compact, &fixed);
        let i1 = i0 | step;
        let a = amps[i0];
        let b = amps[i1];
        amps[i0] = u[0][0] * a + u[0][1] * b;
        amps[i1] = u[1][0] * a + u[1][1] * b;
    }
    Ok(())
}

/// Conditional phase shift: multiplies by `e^{iθ}` every amplitude whose
/// `q1` and `q2` bits are both set. Reads and writes exactly the `2^{n-2}`
/// amplitudes of that sector (a quarter of the state vector), never the
/// rest.
pub fn apply_controlled_phase(
    state: &mut StateVector,
    theta: f64,
    q1: usize,
    q2: usize,
) -> Result<()> {
    check_qubits(state.n(), &[q1, q2])?;
    let fixed = if q1 < q2 { [(q1, 1), (q2, 1)] } else { [(q2, 1), (q1, 1)] };
    let phase = Complex64::from_polar(1.0, theta);
    let free = state.n() - 2;
    let amps = state.amps_mut();
    for compact in 0..1usize << free {
        let i = expand_index(compact, &fixed);
        amps[i] *= phase;
    }
    Ok(())
}

/// Exchanges qubits `a` and `b`, optionally under controls.
pub fn apply_swap(
    state: &mut StateVector,
    a: usize,
    b: usize,
    controls: &[usize],
) -> Result<()> {
    let mut qubits = alloc::vec![a, b];
    qubits.extend_from_slice(controls);
    check_qubits(state.n(), &qubits)?;

    // Amplitudes move only between index pairs with (a,b) = (1,0)/(0,1).
    let mut fixed: Vec<(usize, usize)> = controls.iter().map(|&c| (c, 1)).collect();
    fixed.push((a, 1));
    fixed.push((b, 0));
    fixed.sort_unstable_by_key(|&(p, _)| p);

    let free = state.n() - fixed.len();
    let flip = (1usize << a) | (1usize << b);
    let amps = state.amps_mut();
    for compact in 0..1usize << free {
        let i = expand_index(compact, &fixed);
        amps.swap(i, i ^ flip);
    }
    Ok(())
}

/// Applies one gate, dispatching to the appropriate kernel. The
/// single-controlled phase gate takes the quarter-vector fast path.
pub fn apply(state: &mut StateVector, gate: &Gate) -> Result<()> {
    check_qubits(state.n(), &gate.qubits())?;
    match (&gate.kind, gate.controls.as_slice()) {
        (GateKind::Swap(b), controls) => apply_swap(state, gate.target, *b, controls),
        (GateKind::Phase(theta), &[control]) => {
            apply_controlled_phase(state, *theta, control, gate.target)
        }
        (_, controls) => {
            let u = gate.base_matrix().expect("non-swap kinds have a base matrix");
            apply_controlled(state, &u, gate.target, controls)
        }
    }
}
