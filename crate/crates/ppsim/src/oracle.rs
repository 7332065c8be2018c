//! Dense statevector reference simulator.
//!
//! Deliberately simple and independent of the Pfaffian engine: gates are
//! applied as explicit 4x4 matrices to a length-2^L vector. Used to
//! cross-check overlaps on small systems; refuses L beyond a hard cap.

use num_complex::Complex64 as C64;

use crate::circuits::Circuit;
use crate::gates::PPUGate;
use crate::{Error, Result};

/// Largest L the oracle will simulate (2^14 amplitudes).
pub const MAX_ORACLE_QUBITS: usize = 14;

/// Dense state on `l` qubits. Qubit 0 is the most significant bit of the
/// amplitude index, so bitstrings read left to right as written.
#[derive(Clone, Debug)]
pub struct StateVector {
    l: usize,
    amps: Vec<C64>,
}

fn check_l(l: usize) -> Result<()> {
    if l == 0 || l > MAX_ORACLE_QUBITS {
        return Err(Error::ResourceLimit { l, cap: MAX_ORACLE_QUBITS });
    }
    Ok(())
}

/// Index of a computational basis state under the qubit-0-is-MSB convention.
fn basis_index(bits: &[bool]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

/// |bits⟩ as a dense state.
pub fn basis_state(bits: &[bool]) -> Result<StateVector> {
    check_l(bits.len())?;
    let mut amps = vec![C64::new(0.0, 0.0); 1 << bits.len()];
    amps[basis_index(bits)] = C64::new(1.0, 0.0);
    Ok(StateVector { l: bits.len(), amps })
}

impl StateVector {
    pub fn qubits(&self) -> usize {
        self.l
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> C64 {
        debug_assert_eq!(self.l, other.l);
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Applies `gate` to qubits (q, q+1) in place.
pub fn apply_gate(state: &mut StateVector, gate: &PPUGate, q: usize) -> Result<()> {
    let l = state.l;
    if q + 1 >= l {
        return Err(Error::InvalidLayout {
            reason: format!("gate at qubit {q} exceeds {l} qubits"),
        });
    }
    let g = gate.dense();
    // Bit positions of q and q+1 inside an amplitude index (q is MSB-side).
    let hi = 1usize << (l - 1 - q);
    let lo = hi >> 1;
    let dim = 1usize << l;
    let mut idx = 0usize;
    while idx < dim {
        // Skip indices where either target bit is set; `idx` then enumerates
        // each 4-amplitude group exactly once through its |..0..0..⟩ member.
        if idx & (hi | lo) != 0 {
            idx += 1;
            continue;
        }
        let i00 = idx;
        let i01 = idx | lo;
        let i10 = idx | hi;
        let i11 = idx | hi | lo;
        let v = [state.amps[i00], state.amps[i01], state.amps[i10], state.amps[i11]];
        for (r, &target) in [i00, i01, i10, i11].iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (c, &vc) in v.iter().enumerate() {
                acc += g[r][c] * vc;
            }
            state.amps[target] = acc;
        }
        idx += 1;
    }
    Ok(())
}

/// ⟨psi_f| U |psi_i⟩ by dense simulation of the whole circuit.
pub fn overlap(circuit: &Circuit) -> Result<C64> {
    check_l(circuit.qubits())?;
    let mut state = basis_state(circuit.psi_i())?;
    for layer in circuit.layers() {
        for p in layer {
            apply_gate(&mut state, &p.gate, p.leftmost)?;
        }
    }
    Ok(state.amps[basis_index(circuit.psi_f())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{random_circuit, Planted};
    use crate::gates;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basis_indexing_puts_qubit_zero_at_the_msb() {
        // |100⟩ on 3 qubits: qubit 0 set -> index 4.
        let s = basis_state(&[true, false, false]).unwrap();
        assert_eq!(s.amplitudes()[4], C64::new(1.0, 0.0));
        assert_eq!(s.amplitudes().iter().filter(|a| a.norm() > 0.0).count(), 1);
        assert!(basis_state(&[false; 15]).is_err());
    }

    #[test]
    fn named_gates_act_as_expected_on_basis_states() {
        // CZ phases only |11⟩ of the pair.
        let mut s = basis_state(&[true, true, false]).unwrap();
        apply_gate(&mut s, &gates::cz(), 0).unwrap();
        assert_eq!(s.amplitudes()[6], C64::new(-1.0, 0.0));
        // SWAP moves the particle.
        let mut s = basis_state(&[true, false]).unwrap();
        apply_gate(&mut s, &gates::swap(), 0).unwrap();
        assert_eq!(s.amplitudes()[1], C64::new(1.0, 0.0));
        // cphase(phi) on |11⟩ gives e^{i phi}.
        let phi = 0.37;
        let mut s = basis_state(&[false, true, true]).unwrap();
        apply_gate(&mut s, &gates::cphase(phi), 1).unwrap();
        assert!((s.amplitudes()[3] - C64::from_polar(1.0, phi)).norm() < 1e-15);
        // Out-of-range placement.
        let mut s = basis_state(&[false, false]).unwrap();
        assert!(apply_gate(&mut s, &gates::cz(), 1).is_err());
    }

    #[test]
    fn random_circuits_preserve_norm_and_parity() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for seed in 0..20u64 {
            // l >= 3 so that alternating-offset layers are all non-empty.
            let l = rng.gen_range(3..7usize);
            let d = rng.gen_range(1..5usize);
            let c = random_circuit(l, d, 0, Planted::RandomPpu(None), seed).unwrap();
            // Start from a random even-parity basis state instead of |0..0>.
            let bits: Vec<bool> = {
                let mut b: Vec<bool> = (0..l).map(|_| rng.gen_bool(0.5)).collect();
                if b.iter().filter(|&&x| x).count() % 2 == 1 {
                    b[0] = !b[0];
                }
                b
            };
            let mut s = basis_state(&bits).unwrap();
            let start_parity = bits.iter().filter(|&&x| x).count() % 2;
            for layer in c.layers() {
                for p in layer {
                    apply_gate(&mut s, &p.gate, p.leftmost).unwrap();
                }
            }
            assert!((s.norm() - 1.0).abs() < 1e-12, "norm drifted");
            // Parity-preserving gates keep support in one parity sector.
            for (i, a) in s.amplitudes().iter().enumerate() {
                if a.norm() > 1e-12 {
                    assert_eq!(
                        (i.count_ones() as usize) % 2,
                        start_parity,
                        "amplitude outside the parity sector"
                    );
                }
            }
        }
    }

    #[test]
    fn empty_circuit_overlap_is_a_delta() {
        let c = crate::circuits::Circuit::new(
            4,
            vec![],
            vec![true, true, false, false],
            vec![true, true, false, false],
        )
        .unwrap();
        assert_eq!(overlap(&c).unwrap(), C64::new(1.0, 0.0));
        let c = c
            .with_boundaries(vec![true, true, false, false], vec![false, false, true, true])
            .unwrap();
        assert_eq!(overlap(&c).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn gate_order_within_a_layer_is_irrelevant() {
        // Disjoint gates commute; applying a layer in either order matches.
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g0 = gates::random_ppu(&mut rng, None).unwrap();
        let g1 = gates::random_ppu(&mut rng, None).unwrap();
        let mut s1 = basis_state(&[true, false, false, true]).unwrap();
        apply_gate(&mut s1, &g0, 0).unwrap();
        apply_gate(&mut s1, &g1, 2).unwrap();
        let mut s2 = basis_state(&[true, false, false, true]).unwrap();
        apply_gate(&mut s2, &g1, 2).unwrap();
        apply_gate(&mut s2, &g0, 0).unwrap();
        let diff: f64 = s1
            .amplitudes()
            .iter()
            .zip(s2.amplitudes())
            .map(|(a, b)| (a - b).norm())
            .sum();
        assert!(diff < 1e-14);
    }
}
