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

//! Gate-level reversible arithmetic: ripple-carry addition, shift-and-add
//! multiplication, and restoring division, built as explicit circuits over
//! a register layout.
//!
//! The adder is the Cuccaro ripple-carry construction (MAJ/UMA ladders of
//! CNOT and Toffoli gates, one carry ancilla) in its modular form, so
//! addition wraps at `2^m`. The multiplier selects each shifted addend
//! into a temporary register with Toffolis and adds it. The divider runs
//! restoring long division: per quotient bit it subtracts the divisor from
//! a sliding remainder window (two's-complement trick), reads the borrow
//! off the adder's carry output (the "overflow check") and adds the
//! divisor back under control of that borrow. Everything stays within
//! CNOT/Toffoli/X, so the circuits round-trip through the text format.

use alloc::vec::Vec;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::statevector::{check_qubits, gather_bits, set_bits};

/// Assignment of the logical integer registers a, b, c and the work qubits
/// to qubit indices. List position 0 is the least significant bit,
/// matching the state-vector convention.
#[derive(Clone, Debug, PartialEq)]
pub struct RegisterLayout {
    m: usize,
    a: Vec<usize>,
    b: Vec<usize>,
    c: Vec<usize>,
    ancilla: Vec<usize>,
}

/// The arithmetic circuit families with a gate-level construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithmeticOp {
    Add,
    Mul,
    Div,
}

/// Exact number of work qubits the corresponding builder needs for
/// `m`-bit registers.
///
/// * `Add`: 1 (the ripple carry).
/// * `Mul`: `m + 1` (shifted-addend temporary plus the carry).
/// * `Div`: `2m + 2` (remainder-window extension, carry, a zero extension
///   for the widened subtraction, and the restore temporary); strictly
///   more than multiplication for every `m`, which is what makes simulated
///   division so much more expensive.
pub fn ancilla_count(op: ArithmeticOp, m: usize) -> usize {
    match op {
        ArithmeticOp::Add => 1,
        ArithmeticOp::Mul => m + 1,
        ArithmeticOp::Div => 2 * m + 2,
    }
}

impl RegisterLayout {
    /// Builds a layout from explicit index lists. `a` and `b` must have
    /// equal nonzero length `m`; `c` must be empty or length `m`; all
    /// lists pairwise disjoint.
    pub fn new(a: Vec<usize>, b: Vec<usize>, c: Vec<usize>, ancilla: Vec<usize>) -> Result<Self> {
        let m = a.len();
        if m == 0 || b.len() != m {
            return Err(Error::BadLayout {
                reason: "a and b registers must have equal nonzero width",
            });
        }
        if !c.is_empty() && c.len() != m {
            return Err(Error::BadLayout { reason: "c register must be empty or m bits wide" });
        }
        let mut all: Vec<usize> = Vec::new();
        all.extend_from_slice(&a);
        all.extend_from_slice(&b);
        all.extend_from_slice(&c);
        all.extend_from_slice(&ancilla);
        let width = all.iter().max().map_or(0, |w| w + 1);
        check_qubits(width, &all)
            .map_err(|_| Error::BadLayout { reason: "register qubits overlap" })?;
        Ok(RegisterLayout { m, a, b, c, ancilla })
    }

    /// Contiguous layout for addition: a, b, then one carry ancilla.
    pub fn for_add(m: usize) -> Self {
        Self::new((0..m).collect(), (m..2 * m).collect(), Vec::new(), alloc::vec![2 * m])
            .expect("contiguous layout is valid")
    }

    /// Contiguous layout for multiplication: a, b, c, then the
    /// [`ancilla_count`] work qubits.
    pub fn for_mul(m: usize) -> Self {
        Self::contiguous(m, ancilla_count(ArithmeticOp::Mul, m))
    }

    /// Contiguous layout for division.
    pub fn for_div(m: usize) -> Self {
        Self::contiguous(m, ancilla_count(ArithmeticOp::Div, m))
    }

    /// Contiguous a, b, c registers with `ancillas` work qubits above.
    pub fn contiguous(m: usize, ancillas: usize) -> Self {
        Self::new(
            (0..m).collect(),
            (m..2 * m).collect(),
            (2 * m..3 * m).collect(),
            (3 * m..3 * m + ancillas).collect(),
        )
        .expect("contiguous layout is valid")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn a_qubits(&self) -> &[usize] {
        &self.a
    }

    pub fn b_qubits(&self) -> &[usize] {
        &self.b
    }

    pub fn c_qubits(&self) -> &[usize] {
        &self.c
    }

    pub fn ancilla_qubits(&self) -> &[usize] {
        &self.ancilla
    }

    /// One past the highest qubit index the layout mentions.
    pub fn width(&self) -> usize {
        self.a
            .iter()
            .chain(&self.b)
            .chain(&self.c)
            .chain(&self.ancilla)
            .max()
            .map_or(0, |w| w + 1)
    }

    pub fn a_value(&self, index: usize) -> usize {
        gather_bits(index, &self.a)
    }

    pub fn b_value(&self, index: usize) -> usize {
        gather_bits(index, &self.b)
    }

    pub fn c_value(&self, index: usize) -> usize {
        gather_bits(index, &self.c)
    }

    pub fn ancilla_value(&self, index: usize) -> usize {
        gather_bits(index, &self.ancilla)
    }

    /// Basis index with the registers set to the given values (everything
    /// else zero).
    pub fn encode(&self, a: usize, b: usize, c: usize) -> usize {
        let i = set_bits(0, &self.a, a);
        let i = set_bits(i, &self.b, b);
        set_bits(i, &self.c, c)
    }

    pub(crate) fn set_a(&self, index: usize, value: usize) -> usize {
        set_bits(index, &self.a, value)
    }

    pub(crate) fn set_c(&self, index: usize, value: usize) -> usize {
        set_bits(index, &self.c, value)
    }
}

/// MAJ block of the ripple-carry adder: after it, `a` holds the carry out
/// of `a + b + c`.
fn maj(circ: &mut Circuit, c: usize, b: usize, a: usize) {
    circ.cnot(a, b);
    circ.cnot(a, c);
    circ.toffoli(c, b, a);
}

/// UMA block: undoes MAJ's scrambling and leaves the sum bit in `b`.
fn uma(circ: &mut Circuit, c: usize, b: usize, a: usize) {
    circ.toffoli(c, b, a);
    circ.cnot(a, c);
    circ.cnot(c, b);
}

/// Appends a modular ripple-carry addition `target += addend` to the
/// circuit. `carry` must be a clean ancilla (returned clean). If
/// `capture_carry_out` is given, the final carry is copied there with a
/// CNOT before the ladder unwinds (used as the overflow test).
fn push_ripple_add(
    circ: &mut Circuit,
    addend: &[usize],
    target: &[usize],
    carry: usize,
    capture_carry_out: Option<usize>,
) {
    debug_assert_eq!(addend.len(), target.len());
    let m = addend.len();
    for i in 0..m {
        let carry_in = if i == 0 { carry } else { addend[i - 1] };
        maj(circ, carry_in, target[i], addend[i]);
    }
    if let Some(out) = capture_carry_out {
        circ.cnot(addend[m - 1], out);
    }
    for i in (0..m).rev() {
        let carry_in = if i == 0 { carry } else { addend[i - 1] };
        uma(circ, carry_in, target[i], addend[i]);
    }
}

/// Ripple-carry adder circuit: maps basis states
/// `(a, b, carry=0) -> (a, (a+b) mod 2^m, carry=0)`.
pub fn build_adder(layout: &RegisterLayout) -> Result<Circuit> {
    let needed = ancilla_count(ArithmeticOp::Add, layout.m);
    if layout.ancilla.len() < needed {
        return Err(Error::InsufficientAncilla { needed, got: layout.ancilla.len() });
    }
    let mut circ = Circuit::new(layout.width(), "adder");
    push_ripple_add(&mut circ, &layout.a, &layout.b, layout.ancilla[0], None);
    Ok(circ)
}

/// Shift-and-add multiplier: maps `(a, b, 0) -> (a, b, a·b mod 2^m)` with
/// all work qubits returned clean. For each bit `j` of `b` the shifted
/// addend `(a << j) mod 2^m` is materialized into the temporary register
/// under control of `b_j`, added into `c`, and uncomputed.
#[allow(clippy::needless_range_loop)]
pub fn build_multiplier(layout: &RegisterLayout) -> Result<Circuit> {
    let m = layout.m;
    if layout.c.len() != m {
        return Err(Error::BadLayout { reason: "multiplier needs an m-bit c register" });
    }
    let needed = ancilla_count(ArithmeticOp::Mul, m);
    if layout.ancilla.len() < needed {
        return Err(Error::InsufficientAncilla { needed, got: layout.ancilla.len() });
    }
    let temp = &layout.ancilla[0..m];
    let carry = layout.ancilla[m];

    let mut circ = Circuit::new(layout.width(), "multiplier");
    for j in 0..m {
        for i in j..m {
            circ.toffoli(layout.b[j], layout.a[i - j], temp[i]);
        }
        push_ripple_add(&mut circ, temp, &layout.c, carry, None);
        for i in j..m {
            circ.toffoli(layout.b[j], layout.a[i - j], temp[i]);
        }
    }
    Ok(circ)
}

/// Restoring divider: maps `(a, b, 0) -> (a mod b, b, a/b)` for `b != 0`
/// and acts as the identity when `b = 0`; all work qubits returned clean.
///
/// Long division processes dividend bits from the top. The remainder
/// occupies a sliding `m+1`-bit window over the dividend register plus the
/// extension ancillas; each round subtracts the divisor from the window in
/// two's complement, copies the borrow (the carry out of the widened
/// addition) into the quotient bit, undoes the subtraction under control
/// of that borrow, and flips the quotient bit so 1 means "divisor fit".
/// A final pass flips all quotient bits back when `b = 0`, which turns
/// that branch into the identity.
#[allow(clippy::needless_range_loop)]
pub fn build_divider(layout: &RegisterLayout) -> Result<Circuit> {
    let m = layout.m;
    if layout.c.len() != m {
        return Err(Error::BadLayout { reason: "divider needs an m-bit c register" });
    }
    let needed = ancilla_count(ArithmeticOp::Div, m);
    if layout.ancilla.len() < needed {
        return Err(Error::InsufficientAncilla { needed, got: layout.ancilla.len() });
    }
    let ext_window = &layout.ancilla[0..m];
    let carry = layout.ancilla[m];
    let zero_ext = layout.ancilla[m + 1];
    let temp = &layout.ancilla[m + 2..2 * m + 2];

    let mut subtrahend: Vec<usize> = layout.b.clone();
    subtrahend.push(zero_ext);
    let mut restore: Vec<usize> = temp.to_vec();
    restore.push(zero_ext);

    let mut circ = Circuit::new(layout.width(), "divider");
    for j in (0..m).rev() {
        let quotient_bit = layout.c[j];
        let window: Vec<usize> =
            layout.a[j..m].iter().chain(&ext_window[0..=j]).copied().collect();

        // window -= b, borrow into the quotient bit:
        // W - b = NOT(NOT(W) + b), borrow = carry out of NOT(W) + b.
        for &w in &window {
            circ.x(w);
        }
        push_ripple_add(&mut circ, &subtrahend, &window, carry, Some(quotient_bit));
        for &w in &window {
            circ.x(w);
        }

        // Restore on borrow: window += (borrow ? b : 0).
        for i in 0..m {
            circ.toffoli(quotient_bit, layout.b[i], temp[i]);
        }
        push_ripple_add(&mut circ, &restore, &window, carry, None);
        for i in 0..m {
            circ.toffoli(quotient_bit, layout.b[i], temp[i]);
        }

        // Quotient bit currently holds the borrow; invert it.
        circ.x(quotient_bit);
    }

    // b = 0 leaves every borrow clear, so the loop above wrote an all-ones
    // quotient; flip it back to zero exactly on the b = 0 branch. The
    // window extension qubits are clean again and serve as the AND chain.
    for i in 0..m {
        circ.x(layout.b[i]);
    }
    match m {
        1 => {
            circ.cnot(layout.b[0], layout.c[0]);
        }
        2 => {
            circ.toffoli(layout.b[0], layout.b[1], layout.c[0]);
            circ.toffoli(layout.b[0], layout.b[1], layout.c[1]);
        }
        _ => {
            circ.toffoli(layout.b[0], layout.b[1], ext_window[0]);
            for i in 2..m {
                circ.toffoli(ext_window[i - 2], layout.b[i], ext_window[i - 1]);
            }
            for j in 0..m {
                circ.cnot(ext_window[m - 2], layout.c[j]);
            }
            for i in (2..m).rev() {
                circ.toffoli(ext_window[i - 2], layout.b[i], ext_window[i - 1]);
            }
            circ.toffoli(layout.b[0], layout.b[1], ext_window[0]);
        }
    }
    for i in 0..m {
        circ.x(layout.b[i]);
    }
    Ok(circ)
}

/// Builds the circuit for `op` over a contiguous layout of width `m`.
pub fn build_op(op: ArithmeticOp, m: usize) -> Result<(RegisterLayout, Circuit)> {
    let layout = match op {
        ArithmeticOp::Add => RegisterLayout::for_add(m),
        ArithmeticOp::Mul => RegisterLayout::for_mul(m),
        ArithmeticOp::Div => RegisterLayout::for_div(m),
    };
    let circ = match op {
        ArithmeticOp::Add => build_adder(&layout)?,
        ArithmeticOp::Mul => build_multiplier(&layout)?,
        ArithmeticOp::Div => build_divider(&layout)?,
    };
    Ok((layout, circ))
}
