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

//! Shared fixtures for the integration suites: seeded random states and
//! the brute-force oracles the kernels are checked against. The oracles
//! build explicit matrices from definitions and multiply them out; they
//! share no code with the kernels under test.

#![allow(dead_code)]

use emuq_core::{Gate, StateVector};
use num_complex::Complex64;
use rand_core::{RngCore, SeedableRng};

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn random_state(n: usize, seed: u64) -> StateVector {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut f = move || ((rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
    let mut amps = vec![c64(0.0, 0.0); 1 << n];
    for a in &mut amps {
        *a = c64(f(), f());
    }
    let total: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
    let scale = 1.0 / total.sqrt();
    for a in &mut amps {
        *a *= scale;
    }
    StateVector::from_amps(amps).unwrap()
}

/// Dense column-major-free matrix as nested Vec, for oracle arithmetic.
pub type Dense = Vec<Vec<Complex64>>;

pub fn dense_identity(dim: usize) -> Dense {
    let mut m = vec![vec![c64(0.0, 0.0); dim]; dim];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = c64(1.0, 0.0);
    }
    m
}

/// Kronecker product chain `factors[n-1] ⊗ … ⊗ factors[0]`, so that
/// `factors[k]` acts on bit `k` of the row/column index.
pub fn kron_chain(factors: &[[[Complex64; 2]; 2]]) -> Dense {
    let n = factors.len();
    let dim = 1usize << n;
    let mut m = vec![vec![c64(0.0, 0.0); dim]; dim];
    for (r, row) in m.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            let mut v = c64(1.0, 0.0);
            for (k, f) in factors.iter().enumerate() {
                v *= f[(r >> k) & 1][(c >> k) & 1];
            }
            *entry = v;
        }
    }
    m
}

pub fn dense_add(a: &Dense, b: &Dense, sign: f64) -> Dense {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + sign * y).collect())
        .collect()
}

pub fn dense_mul_vec(m: &Dense, v: &[Complex64]) -> Vec<Complex64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

const ID2: [[Complex64; 2]; 2] = {
    let one = Complex64 { re: 1.0, im: 0.0 };
    let zero = Complex64 { re: 0.0, im: 0.0 };
    [[one, zero], [zero, one]]
};

const P1: [[Complex64; 2]; 2] = {
    let one = Complex64 { re: 1.0, im: 0.0 };
    let zero = Complex64 { re: 0.0, im: 0.0 };
    [[zero, zero], [zero, one]]
};

/// The full `2^n x 2^n` matrix of a (multi-)controlled single-qubit gate,
/// built straight from the definition: `M = A + I - Proj`, where `A`
/// places the base matrix on the target under `|1…1⟩⟨1…1|` projectors on
/// the controls and `Proj` is that projector chain with identity on the
/// target.
pub fn controlled_gate_matrix(
    n: usize,
    base: [[Complex64; 2]; 2],
    target: usize,
    controls: &[usize],
) -> Dense {
    let mut with_u: Vec<[[Complex64; 2]; 2]> = vec![ID2; n];
    let mut proj: Vec<[[Complex64; 2]; 2]> = vec![ID2; n];
    with_u[target] = base;
    for &c in controls {
        with_u[c] = P1;
        proj[c] = P1;
    }
    let a = kron_chain(&with_u);
    if controls.is_empty() {
        return a;
    }
    let p = kron_chain(&proj);
    dense_add(&dense_add(&a, &dense_identity(1 << n), 1.0), &p, -1.0)
}

/// The `2^n x 2^n` matrix realized by a [`Gate`], via the oracle route.
pub fn gate_matrix_oracle(n: usize, gate: &Gate) -> Dense {
    match &gate.kind {
        emuq_core::GateKind::Swap(b) => {
            // SWAP(a,b) = CNOT(a,b) · CNOT(b,a) · CNOT(a,b), as dense
            // products of the oracle CNOT matrices, optionally projected
            // under the controls the same way as above.
            let x = [[c64(0.0, 0.0), c64(1.0, 0.0)], [c64(1.0, 0.0), c64(0.0, 0.0)]];
            let (qa, qb) = (gate.target, *b);
            let mut cnot_ab = controlled_gate_matrix(n, x, qb, &[qa]);
            let cnot_ba = controlled_gate_matrix(n, x, qa, &[qb]);
            cnot_ab = dense_mul(&cnot_ab, &dense_mul(&cnot_ba, &cnot_ab));
            if gate.controls.is_empty() {
                cnot_ab
            } else {
                // M = Proj·S + (I - Proj)
                let mut proj_factors: Vec<[[Complex64; 2]; 2]> = vec![ID2; n];
                for &c in &gate.controls {
                    proj_factors[c] = P1;
                }
                let proj = kron_chain(&proj_factors);
                let ps = dense_mul(&proj, &cnot_ab);
                dense_add(&dense_add(&ps, &dense_identity(1 << n), 1.0), &proj, -1.0)
            }
        }
        _ => {
            let base = gate.base_matrix().expect("non-swap gates have a base matrix");
            controlled_gate_matrix(n, base, gate.target, &gate.controls)
        }
    }
}

pub fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let dim = a.len();
    let mut out = vec![vec![c64(0.0, 0.0); dim]; dim];
    for i in 0..dim {
        for k in 0..dim {
            let v = a[i][k];
            if v.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..dim {
                out[i][j] += v * b[k][j];
            }
        }
    }
    out
}

/// Direct evaluation of `F[l][k] = 2^{-n/2}·exp(+2πi·kl/2^n)`.
pub fn dft_matrix(n: usize) -> Dense {
    let dim = 1usize << n;
    let scale = 1.0 / (dim as f64).sqrt();
    (0..dim)
        .map(|l| {
            (0..dim)
                .map(|k| {
                    Complex64::from_polar(
                        scale,
                        core::f64::consts::TAU * (k as f64 * l as f64) / dim as f64,
                    )
                })
                .collect()
        })
        .collect()
}

/// Applies the DFT to a state by direct `O(4^n)` summation.
pub fn dft_oracle(state: &StateVector) -> StateVector {
    let out = dense_mul_vec(&dft_matrix(state.n()), state.amps());
    StateVector::from_amps(out).unwrap()
}
