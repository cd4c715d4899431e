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

//! The classical shortcut layer.
//!
//! Instead of simulating a gate network, these routines act on the state
//! vector at the level of the subroutine's mathematical description:
//! reversible arithmetic is a permutation of the amplitude array, the
//! quantum Fourier transform is a radix-2 FFT, and measurement statistics
//! are read off in one pass as a complete distribution rather than
//! sampled shot by shot.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
// Float supplies the f64 math in the no_std build; test builds pull std
// into the crate graph (via dev-deps), whose inherent methods shadow it.
#[allow(unused_imports)]
use num_traits::Float;

use crate::arithmetic::RegisterLayout;
use crate::error::{Error, Result};
use crate::statevector::{check_qubits, gather_bits, StateVector};

/// Amplitudes at or below this magnitude count as numerical round-off when
/// checking the cleared-register precondition.
pub const SUPPORT_TOLERANCE: f64 = 1e-12;

/// Probabilities of every outcome of a measured qubit subset.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributionTable {
    probs: Vec<f64>,
    qubit_set: Vec<usize>,
}

impl DistributionTable {
    /// Probability of each outcome, indexed by the value read off the
    /// measured qubits (list position 0 = bit 0).
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn qubit_set(&self) -> &[usize] {
        &self.qubit_set
    }

    pub fn outcome_count(&self) -> usize {
        self.probs.len()
    }

    /// The most probable outcome and its probability.
    pub fn modal(&self) -> (usize, f64) {
        let mut best = (0, f64::MIN);
        for (o, &p) in self.probs.iter().enumerate() {
            if p > best.1 {
                best = (o, p);
            }
        }
        best
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// Permutes the state's amplitudes by a basis-index bijection evaluated on
/// the cleared-target subspace; arithmetic emulation is an instance of
/// this with `f` computing the register map.
///
/// When the layout has a `c` register, every amplitude above
/// [`SUPPORT_TOLERANCE`] must sit in the `c = 0` subspace, and `f` is
/// evaluated only there; the map is completed to a permutation of the full
/// index space by matching leftover sources to leftover targets in
/// ascending order, so the amplitude multiset (and therefore the norm)
/// is preserved exactly. Detected non-injectivity of `f` is an error.
pub fn emulate_classical_function<F>(
    state: &mut StateVector,
    layout: &RegisterLayout,
    f: F,
) -> Result<()>
where
    F: Fn(usize) -> usize,
{
    if layout.width() > state.n() {
        return Err(Error::QubitOutOfRange { qubit: layout.width() - 1, n: state.n() });
    }
    let len = state.len();
    let c_qubits = layout.c_qubits();

    check_support_clear(state, c_qubits)?;

    // Bitmap of already-claimed target indices.
    let mut claimed = vec![0u64; len.div_ceil(64)];
    let mut scratch = vec![Complex64::new(0.0, 0.0); len];

    let in_domain = |i: usize| c_qubits.is_empty() || gather_bits(i, c_qubits) == 0;
    for i in 0..len {
        if !in_domain(i) {
            continue;
        }
        let t = f(i);
        if t >= len {
            return Err(Error::IndexOutOfRange { index: t, len });
        }
        if claimed[t / 64] >> (t % 64) & 1 == 1 {
            return Err(Error::NotInjective { target: t });
        }
        claimed[t / 64] |= 1 << (t % 64);
        scratch[t] = state.amp(i);
    }

    // Route the (negligible) out-of-domain amplitudes to the unclaimed
    // slots in ascending order, completing the bijection.
    if !c_qubits.is_empty() {
        let mut next_free = 0usize;
        for i in 0..len {
            if in_domain(i) {
                continue;
            }
            while claimed[next_free / 64] >> (next_free % 64) & 1 == 1 {
                next_free += 1;
            }
            scratch[next_free] = state.amp(i);
            next_free += 1;
        }
    }

    state.swap_amps(&mut scratch);
    Ok(())
}

fn check_support_clear(state: &StateVector, c_qubits: &[usize]) -> Result<()> {
    if c_qubits.is_empty() {
        return Ok(());
    }
    let mut worst: Option<(usize, f64)> = None;
    for (i, a) in state.amps().iter().enumerate() {
        if gather_bits(i, c_qubits) != 0 {
            let mag = a.norm();
            if mag > SUPPORT_TOLERANCE && worst.is_none_or(|(_, w)| mag > w) {
                worst = Some((i, mag));
            }
        }
    }
    match worst {
        Some((index, magnitude)) => Err(Error::RegisterNotClear { index, magnitude }),
        None => Ok(()),
    }
}

/// Moves the amplitude at `(a, b, c=0)` to `(a, b, a·b mod 2^m)`: the
/// whole multiplication circuit collapsed into one permutation pass.
pub fn emulate_multiply(state: &mut StateVector, layout: &RegisterLayout) -> Result<()> {
    require_c_register(layout)?;
    let mask = (1usize << layout.m()) - 1;
    emulate_classical_function(state, layout, |i| {
        let product = layout.a_value(i).wrapping_mul(layout.b_value(i)) & mask;
        layout.set_c(i, product)
    })
}

/// Moves the amplitude at `(a, b, c=0)` to `(a mod b, b, a/b)`; `b = 0`
/// basis states are left in place.
#[allow(clippy::manual_checked_ops)]
pub fn emulate_divide(state: &mut StateVector, layout: &RegisterLayout) -> Result<()> {
    require_c_register(layout)?;
    emulate_classical_function(state, layout, |i| {
        let (a, b) = (layout.a_value(i), layout.b_value(i));
        if b == 0 {
            i
        } else {
            layout.set_a(layout.set_c(i, a / b), a % b)
        }
    })
}

fn require_c_register(layout: &RegisterLayout) -> Result<()> {
    if layout.c_qubits().len() != layout.m() {
        return Err(Error::BadLayout { reason: "arithmetic emulation needs an m-bit c register" });
    }
    Ok(())
}

/// Applies the k-qubit Fourier transform
/// `α_l ← 2^{-k/2} Σ_k α_k exp(+2πi·kl/2^k)` on the indexing induced by
/// `qubits` (list position j = bit j of the transform index), as a fast
/// transform rather than a gate sequence.
///
/// With `qubits = [0, 1, .., n-1]` this is the full-vector in-place FFT;
/// any other subset runs the FFT per coset of the untouched qubits via
/// gather/scatter.
pub fn emulate_qft(state: &mut StateVector, qubits: &[usize]) -> Result<()> {
    transform(state, qubits, 1.0)
}

/// Inverse of [`emulate_qft`] (conjugate transform, same normalization).
pub fn emulate_qft_inverse(state: &mut StateVector, qubits: &[usize]) -> Result<()> {
    transform(state, qubits, -1.0)
}

fn transform(state: &mut StateVector, qubits: &[usize], sign: f64) -> Result<()> {
    check_qubits(state.n(), qubits)?;
    let k = qubits.len();
    if k == 0 {
        return Ok(());
    }
    let n = state.n();
    let sub = 1usize << k;
    let scale = 1.0 / (sub as f64).sqrt();

    // Low-order qubits in natural order: the cosets are contiguous chunks
    // and the transform runs in place.
    if qubits.iter().enumerate().all(|(j, &q)| q == j) {
        for chunk in state.amps_mut().chunks_mut(sub) {
            fft_radix2(chunk, sign);
            for a in chunk {
                *a *= scale;
            }
        }
        return Ok(());
    }

    // General case: gather each coset, transform, scatter back.
    let mut offsets = vec![0usize; sub];
    for kappa in 1..sub {
        let low = kappa & (kappa - 1);
        let j = kappa.trailing_zeros() as usize;
        offsets[kappa] = offsets[low] | (1 << qubits[j]);
    }
    let complement: Vec<usize> = (0..n).filter(|q| !qubits.contains(q)).collect();
    let mut buf = vec![Complex64::new(0.0, 0.0); sub];
    let amps = state.amps_mut();
    for compact in 0..1usize << complement.len() {
        let mut base = 0usize;
        for (j, &q) in complement.iter().enumerate() {
            base |= ((compact >> j) & 1) << q;
        }
        for (kappa, slot) in buf.iter_mut().enumerate() {
            *slot = amps[base + offsets[kappa]];
        }
        fft_radix2(&mut buf, sign);
        for (kappa, slot) in buf.iter().enumerate() {
            amps[base + offsets[kappa]] = slot * scale;
        }
    }
    Ok(())
}

/// In-place iterative radix-2 transform:
/// `X[l] = Σ_k x[k] exp(sign·2πi·kl/N)`, unnormalized. Twiddles are
/// refreshed from sin/cos every 512 butterflies to stop the recurrence
/// from accumulating error on long runs.
fn fft_radix2(buf: &mut [Complex64], sign: f64) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    if n <= 1 {
        return;
    }

    // Bit-reversal reordering.
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            buf.swap(i, j);
        }
    }

    let mut len = 2usize;
    while len <= n {
        let ang = sign * core::f64::consts::TAU / len as f64;
        let wstep = Complex64::from_polar(1.0, ang);
        let half = len / 2;
        for start in (0..n).step_by(len) {
            let mut w = Complex64::new(1.0, 0.0);
            for off in 0..half {
                if off != 0 && off.is_multiple_of(512) {
                    w = Complex64::from_polar(1.0, ang * off as f64);
                }
                let u = buf[start + off];
                let v = buf[start + off + half] * w;
                buf[start + off] = u + v;
                buf[start + off + half] = u - v;
                w *= wstep;
            }
        }
        len <<= 1;
    }
}

/// Probabilities of every outcome of the listed qubits, in one pass over
/// the state vector: the complete measurement distribution instead of a
/// single sample.
pub fn full_distribution(state: &StateVector, qubits: &[usize]) -> Result<DistributionTable> {
    check_qubits(state.n(), qubits)?;
    let mut probs = vec![0.0f64; 1usize << qubits.len()];
    for (i, a) in state.amps().iter().enumerate() {
        probs[gather_bits(i, qubits)] += a.norm_sqr();
    }
    Ok(DistributionTable { probs, qubit_set: qubits.to_vec() })
}

/// Expectation of a diagonal observable over the measured qubits,
/// evaluated from the full distribution, no sampling involved.
pub fn expectation<F>(state: &StateVector, observable: F, qubits: &[usize]) -> Result<f64>
where
    F: Fn(usize) -> f64,
{
    let dist = full_distribution(state, qubits)?;
    Ok(dist
        .probs
        .iter()
        .enumerate()
        .map(|(o, &p)| p * observable(o))
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::{build_multiplier, RegisterLayout};
    use crate::circuit::{apply_circuit, build_entangler, build_qft};
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

    /// Random normalized superposition over the a and b registers, with
    /// the c register and every work qubit cleared.
    fn random_ab_state(layout: &RegisterLayout, seed: u64) -> StateVector {
        let mut s = random_state(layout.width(), seed);
        let c_qubits = layout.c_qubits().to_vec();
        let anc = layout.ancilla_qubits().to_vec();
        for (i, a) in s.amps_mut().iter_mut().enumerate() {
            if gather_bits(i, &c_qubits) != 0 || gather_bits(i, &anc) != 0 {
                *a = c64(0.0, 0.0);
            }
        }
        s.normalize();
        s
    }

    #[test]
    fn multiply_basis_states() {
        let layout = RegisterLayout::for_mul(3);
        let mut s = StateVector::basis_state(layout.width(), layout.encode(3, 2, 0)).unwrap();
        emulate_multiply(&mut s, &layout).unwrap();
        assert_eq!(s.amp(layout.encode(3, 2, 6)), c64(1.0, 0.0));

        let mut s = StateVector::basis_state(layout.width(), layout.encode(5, 3, 0)).unwrap();
        emulate_multiply(&mut s, &layout).unwrap();
        assert_eq!(s.amp(layout.encode(5, 3, 7)), c64(1.0, 0.0)); // 15 mod 8
    }

    #[test]
    fn multiply_matches_gate_level_circuit_on_superpositions() {
        let layout = RegisterLayout::for_mul(2);
        let circ = build_multiplier(&layout).unwrap();
        for seed in 0..3 {
            let input = random_ab_state(&layout, seed);
            let mut simulated = input.clone();
            apply_circuit(&mut simulated, &circ).unwrap();
            let mut emulated = input;
            emulate_multiply(&mut emulated, &layout).unwrap();
            assert!(simulated.distance(&emulated).unwrap() < 1e-11);
        }
    }

    #[test]
    fn multiply_is_a_pure_permutation_of_amplitudes() {
        let layout = RegisterLayout::for_mul(3);
        let input = random_ab_state(&layout, 9);
        let mut s = input.clone();
        emulate_multiply(&mut s, &layout).unwrap();

        // Bit-identical amplitude multiset: the norm is untouched by
        // construction, not merely up to round-off.
        let key = |a: &Complex64| (a.re.to_bits(), a.im.to_bits());
        let mut before: Vec<_> = input.amps().iter().map(key).collect();
        let mut after: Vec<_> = s.amps().iter().map(key).collect();
        before.sort_unstable();
        after.sort_unstable();
        assert_eq!(before, after);
    }

    #[test]
    fn divide_basis_states() {
        let layout = RegisterLayout::for_div(3);
        let mut s = StateVector::basis_state(layout.width(), layout.encode(7, 2, 0)).unwrap();
        emulate_divide(&mut s, &layout).unwrap();
        assert_eq!(s.amp(layout.encode(1, 2, 3)), c64(1.0, 0.0));

        let mut s = StateVector::basis_state(layout.width(), layout.encode(4, 0, 0)).unwrap();
        let before = s.clone();
        emulate_divide(&mut s, &layout).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn dirty_target_register_is_reported_with_worst_index() {
        let layout = RegisterLayout::for_mul(2);
        let mut amps = vec![c64(0.0, 0.0); 1 << layout.width()];
        let bad_small = layout.encode(1, 1, 1);
        let bad_big = layout.encode(2, 1, 3);
        amps[layout.encode(0, 0, 0)] = c64(0.8, 0.0);
        amps[bad_small] = c64(0.3, 0.0);
        amps[bad_big] = c64(0.5, 0.2);
        let mut s = StateVector::from_amps(amps).unwrap();
        match emulate_multiply(&mut s, &layout) {
            Err(Error::RegisterNotClear { index, .. }) => assert_eq!(index, bad_big),
            other => panic!("expected RegisterNotClear, got {other:?}"),
        }
    }

    #[test]
    fn classical_function_identity_and_increment() {
        let layout = RegisterLayout::new(vec![0], vec![1], vec![], vec![]).unwrap();
        let original = random_state(3, 4);

        let mut s = original.clone();
        emulate_classical_function(&mut s, &layout, |i| i).unwrap();
        assert_eq!(s, original);

        let mut s = original.clone();
        emulate_classical_function(&mut s, &layout, |i| (i + 1) % 8).unwrap();
        for i in 0..8 {
            assert_eq!(s.amp((i + 1) % 8), original.amp(i));
        }
    }

    #[test]
    fn classical_function_reproduces_multiply() {
        let layout = RegisterLayout::for_mul(2);
        let input = random_ab_state(&layout, 17);
        let mut direct = input.clone();
        emulate_multiply(&mut direct, &layout).unwrap();
        let mut generic = input;
        emulate_classical_function(&mut generic, &layout, |i| {
            layout.set_c(i, (layout.a_value(i) * layout.b_value(i)) % 4)
        })
        .unwrap();
        assert_eq!(direct, generic);
    }

    #[test]
    fn non_injective_map_is_rejected() {
        let layout = RegisterLayout::new(vec![0], vec![1], vec![], vec![]).unwrap();
        let mut s = random_state(2, 8);
        assert_eq!(
            emulate_classical_function(&mut s, &layout, |_| 0).unwrap_err(),
            Error::NotInjective { target: 0 }
        );
    }

    #[test]
    fn qft_of_zero_is_uniform() {
        let mut s = StateVector::basis_state(4, 0).unwrap();
        emulate_qft(&mut s, &[0, 1, 2, 3]).unwrap();
        let expect = c64(0.25, 0.0);
        for i in 0..16 {
            assert!((s.amp(i) - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn single_qubit_qft_is_hadamard() {
        let mut s = StateVector::basis_state(1, 1).unwrap();
        emulate_qft(&mut s, &[0]).unwrap();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amp(0) - c64(h, 0.0)).norm() < 1e-15);
        assert!((s.amp(1) - c64(-h, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn fft_matches_gate_level_qft_on_random_states() {
        for n in 1..=6 {
            let input = random_state(n, 100 + n as u64);
            let mut simulated = input.clone();
            apply_circuit(&mut simulated, &build_qft(n)).unwrap();
            let mut emulated = input;
            let qubits: Vec<usize> = (0..n).collect();
            emulate_qft(&mut emulated, &qubits).unwrap();
            let d = simulated.distance(&emulated).unwrap();
            assert!(d < 1e-11, "n={n}: simulate/emulate distance {d}");
        }
    }

    #[test]
    fn qft_then_inverse_recovers_input() {
        let input = random_state(7, 55);
        let mut s = input.clone();
        let qubits: Vec<usize> = (0..7).collect();
        emulate_qft(&mut s, &qubits).unwrap();
        assert!((s.norm_sq() - 1.0).abs() < 1e-12);
        emulate_qft_inverse(&mut s, &qubits).unwrap();
        assert!(s.distance(&input).unwrap() < 1e-11);
    }

    #[test]
    fn partial_qft_on_low_qubits_matches_embedded_circuit() {
        let n = 5;
        let k = 3;
        let input = random_state(n, 31);
        let mut simulated = input.clone();
        apply_circuit(&mut simulated, &build_qft(k).embedded(n, 0).unwrap()).unwrap();
        let mut emulated = input;
        emulate_qft(&mut emulated, &[0, 1, 2]).unwrap();
        assert!(simulated.distance(&emulated).unwrap() < 1e-11);
    }

    #[test]
    fn partial_qft_on_scattered_qubits_matches_direct_sum() {
        // Direct coset-wise DFT summation oracle.
        let n = 5;
        let qubits = [3usize, 1];
        let input = random_state(n, 77);
        let mut emulated = input.clone();
        emulate_qft(&mut emulated, &qubits).unwrap();

        let sub = 1 << qubits.len();
        let scale = 1.0 / (sub as f64).sqrt();
        let mut expect = vec![c64(0.0, 0.0); 1 << n];
        for base in 0..1usize << n {
            if qubits.iter().any(|&q| (base >> q) & 1 == 1) {
                continue;
            }
            for l in 0..sub {
                let mut acc = c64(0.0, 0.0);
                for k in 0..sub {
                    let mut src = base;
                    for (j, &q) in qubits.iter().enumerate() {
                        src |= ((k >> j) & 1) << q;
                    }
                    let ang = core::f64::consts::TAU * (k * l) as f64 / sub as f64;
                    acc += input.amp(src) * Complex64::from_polar(scale, ang);
                }
                let mut dst = base;
                for (j, &q) in qubits.iter().enumerate() {
                    dst |= ((l >> j) & 1) << q;
                }
                expect[dst] = acc;
            }
        }
        let expect = StateVector::from_amps(expect).unwrap();
        assert!(emulated.distance(&expect).unwrap() < 1e-12);
    }

    #[test]
    fn ghz_distribution_has_two_outcomes() {
        let mut s = StateVector::basis_state(3, 0).unwrap();
        apply_circuit(&mut s, &build_entangler(3)).unwrap();
        let dist = full_distribution(&s, &[0, 1, 2]).unwrap();
        assert!((dist.probs()[0] - 0.5).abs() < 1e-12);
        assert!((dist.probs()[7] - 0.5).abs() < 1e-12);
        assert!((dist.total() - 1.0).abs() < 1e-12);
        for o in 1..7 {
            assert_eq!(dist.probs()[o], 0.0);
        }
    }

    #[test]
    fn basis_state_distribution_is_a_delta() {
        let s = StateVector::basis_state(4, 0b1010).unwrap();
        let dist = full_distribution(&s, &[1, 3]).unwrap();
        assert_eq!(dist.probs(), &[0.0, 0.0, 0.0, 1.0]);
        assert_eq!(dist.modal(), (3, 1.0));
    }

    #[test]
    fn distribution_matches_seeded_sampling_frequencies() {
        let s = random_state(4, 1234);
        let qubits = [0usize, 2];
        let dist = full_distribution(&s, &qubits).unwrap();

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        let shots = 100_000usize;
        let mut counts = [0usize; 4];
        for _ in 0..shots {
            let o = s.sample_all(&mut rng).unwrap();
            counts[gather_bits(o.bits, &qubits)] += 1;
        }
        let l1: f64 = counts
            .iter()
            .zip(dist.probs())
            .map(|(&cnt, &p)| (cnt as f64 / shots as f64 - p).abs())
            .sum();
        assert!(l1 < 0.02, "L1 distance {l1} too large");
    }

    #[test]
    fn expectation_examples() {
        let s = StateVector::basis_state(1, 0).unwrap();
        assert!((expectation(&s, |_| 1.0, &[0]).unwrap() - 1.0).abs() < 1e-15);
        // Z on |0⟩
        let z = |o: usize| if o == 0 { 1.0 } else { -1.0 };
        assert!((expectation(&s, z, &[0]).unwrap() - 1.0).abs() < 1e-15);

        // Z⊗Z on the Bell state: perfectly correlated parities.
        let mut bell = StateVector::basis_state(2, 0).unwrap();
        apply_circuit(&mut bell, &build_entangler(2)).unwrap();
        let zz = |o: usize| if (o & 1) ^ ((o >> 1) & 1) == 0 { 1.0 } else { -1.0 };
        assert!((expectation(&bell, zz, &[0, 1]).unwrap() - 1.0).abs() < 1e-12);
    }
}
