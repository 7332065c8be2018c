//! Exact decompositions of a gate into Matchgate pieces.
//!
//! Two factorizations drive the two expansion modes of the engine:
//!
//! - the additive hole split G = M + N γ |11⟩⟨11|, where M is the Matchgate
//!   agreeing with G on every matrix element except ⟨11|G|11⟩ and the rank-1
//!   correction carries all the non-Gaussianity. Expanding each gate's
//!   correction or not is the hole expansion, one order per non-Matchgate.
//! - the two-branch Gaussian split G = c1 B1 + c2 B2 with both branches
//!   Matchgates whose coefficient matrices are ±μ rescalings of G's. The
//!   branch product over all gates gives the 2^m branch expansion, and the
//!   squared coefficient 1-norm (|c1| + |c2|)² is the extent, the standard
//!   cost measure of sampling-based simulation whenever the branches are
//!   unitary (they are for the fSim family).

use num_complex::Complex64 as C64;

use crate::fermionize::{gate_tensor, GateTensor};
use crate::gates::PPUGate;
use crate::{Error, Result};

/// Below this magnitude the coefficient-matrix Pfaffian (or the branch
/// rescaling factor) counts as zero and the two-branch split does not exist.
/// Unitary gates with vacuum amplitude N satisfy |pf A| ≥ 1 and |μ²| =
/// |a22/(N pf A)|, so for unitary input this only triggers when the
/// full-occupation amplitude a22 vanishes along with a11.
const PF_TOL: f64 = 1e-12;

/// The additive split of a gate: `gate = matchgate + n · gamma · |11⟩⟨11|`.
#[derive(Clone, Debug)]
pub struct GammaSplit {
    /// Gaussian part. Agrees with the gate everywhere except ⟨11|·|11⟩; not
    /// unitary in general, but exactly a Matchgate.
    pub matchgate: PPUGate,
    /// Vacuum amplitude ⟨00|gate|00⟩.
    pub n: C64,
    /// Hole coefficient; n·gamma is exactly the ⟨11|·|11⟩ gap between the
    /// gate and its Gaussian part, and n²·gamma = det a − det b.
    pub gamma: C64,
}

/// Splits a gate into its Gaussian (Matchgate) part plus the quartic hole
/// term.
pub fn gamma_split(gate: &PPUGate) -> Result<GammaSplit> {
    let t = gate_tensor(gate)?;
    let mut a = *gate.a();
    a[1][1] = t.n * t.pf();
    Ok(GammaSplit {
        matchgate: PPUGate::new_unchecked(a, *gate.b()),
        n: t.n,
        gamma: t.gamma_t,
    })
}

/// The two-branch Gaussian split of a gate: `gate = c1·b1 + c2·b2` with both
/// branches unit-vacuum Matchgates whose coefficient matrices are the gate's
/// rescaled by ±μ, μ² = 1 + γ/pf A.
#[derive(Clone, Debug)]
pub struct XiSplit {
    pub c1: C64,
    pub c2: C64,
    pub b1: PPUGate,
    pub b2: PPUGate,
    /// Rescaling factor of the branch coefficient matrices.
    pub mu: C64,
}

impl XiSplit {
    /// Squared coefficient 1-norm (|c1| + |c2|)². Equals the simulation-cost
    /// extent when the branches are unitary; for the fSim family this is
    /// 1 + |sin(φ/2)|.
    pub fn extent(&self) -> f64 {
        (self.c1.norm() + self.c2.norm()).powi(2)
    }
}

/// The unit-vacuum Matchgate whose coefficient matrix is `s` times the
/// tensor's. Its matrix elements are the restricted Pfaffians of s·A.
fn scaled_gaussian_gate(t: &GateTensor, s: C64) -> PPUGate {
    let o = C64::new(1.0, 0.0);
    let a = [[o, s * t.a[0][1]], [s * t.a[2][3], s * s * t.pf()]];
    let b = [[s * t.a[1][2], s * t.a[0][2]], [s * t.a[1][3], s * t.a[0][3]]];
    PPUGate::new_unchecked(a, b)
}

/// Splits a gate into two Matchgate branches along its own Gaussian
/// direction. Matchgates collapse to a single branch (c2 = 0).
pub fn xi_split(gate: &PPUGate) -> Result<XiSplit> {
    let t = gate_tensor(gate)?;
    let pf = t.pf();
    if pf.norm() <= PF_TOL {
        return Err(Error::SingularSplit {
            reason: format!(
                "coefficient-matrix Pfaffian magnitude {:.3e} is numerically zero",
                pf.norm()
            ),
        });
    }
    let mu = (C64::new(1.0, 0.0) + t.gamma_t / pf).sqrt();
    if mu.norm() <= PF_TOL {
        return Err(Error::SingularSplit {
            reason: "branch rescaling factor is numerically zero".into(),
        });
    }
    let half = C64::new(0.5, 0.0);
    let inv = C64::new(1.0, 0.0) / mu;
    Ok(XiSplit {
        c1: t.n * half * (C64::new(1.0, 0.0) + inv),
        c2: t.n * half * (C64::new(1.0, 0.0) - inv),
        b1: scaled_gaussian_gate(&t, mu),
        b2: scaled_gaussian_gate(&t, -mu),
        mu,
    })
}

/// Closed-form split of the controlled-phase gate, the worked special case
/// of [`xi_split`]: both branches are products of single-qubit phases
/// diag(1, ±e^{iφ/2}) on the two qubits, hence unitary Matchgates. The
/// branch phases necessarily depend on φ; there is no φ-independent branch
/// pair for this family.
pub fn xi_split_cphase(phi: f64) -> XiSplit {
    let mu = C64::from_polar(1.0, phi / 2.0);
    let q = C64::from_polar(1.0, -phi / 4.0);
    let c1 = q * (phi / 4.0).cos();
    let c2 = q * C64::new(0.0, 1.0) * (phi / 4.0).sin();
    let z = C64::new(0.0, 0.0);
    let o = C64::new(1.0, 0.0);
    let branch = |s: C64| PPUGate::new_unchecked([[o, z], [z, s * s]], [[s, z], [z, s]]);
    XiSplit { c1, c2, b1: branch(mu), b2: branch(-mu), mu }
}

/// Extent of the fSim family: (|c1| + |c2|)² = 1 + |sin(φ/2)|, independent
/// of the hopping angle θ. At φ = 0 the gate is a Matchgate and the extent
/// is 1.
pub fn extent_fsim(phi: f64) -> f64 {
    1.0 + (phi / 2.0).sin().abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dense_gap(x: &[[C64; 4]; 4], y: &[[C64; 4]; 4]) -> f64 {
        let mut gap = 0.0_f64;
        for i in 0..4 {
            for j in 0..4 {
                gap = gap.max((x[i][j] - y[i][j]).norm());
            }
        }
        gap
    }

    #[test]
    fn gamma_split_reconstructs_the_gate() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..2_000 {
            let g = gates::random_ppu(&mut rng, None).unwrap();
            let s = gamma_split(&g).unwrap();
            assert!(s.matchgate.gamma_det().norm() < 1e-12);
            let mut rebuilt = s.matchgate.dense();
            rebuilt[3][3] += s.n * s.gamma;
            assert!(dense_gap(&g.dense(), &rebuilt) < 1e-12);
            // The hole coefficient carries the full classification scalar.
            assert!((s.n * s.n * s.gamma - g.gamma_det()).norm() < 1e-12);
        }
    }

    #[test]
    fn xi_split_reconstructs_with_matchgate_branches() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..2_000 {
            let g = gates::random_ppu(&mut rng, None).unwrap();
            let s = xi_split(&g).unwrap();
            assert!(s.b1.gamma_det().norm() < 1e-10);
            assert!(s.b2.gamma_det().norm() < 1e-10);
            let (d1, d2) = (s.b1.dense(), s.b2.dense());
            let mut rebuilt = [[C64::new(0.0, 0.0); 4]; 4];
            for i in 0..4 {
                for j in 0..4 {
                    rebuilt[i][j] = s.c1 * d1[i][j] + s.c2 * d2[i][j];
                }
            }
            let scale = 1.0 + s.c1.norm() + s.c2.norm();
            assert!(dense_gap(&g.dense(), &rebuilt) < 1e-11 * scale);
        }
    }

    #[test]
    fn matchgates_collapse_to_a_single_branch() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..200 {
            let g = gates::random_matchgate(&mut rng);
            let s = xi_split(&g).unwrap();
            assert!(s.c2.norm() < 1e-10);
            assert!((s.mu - C64::new(1.0, 0.0)).norm() < 1e-10);
        }
        // A Matchgate with unit vacuum amplitude has extent exactly 1.
        let s = xi_split(&gates::fsim(0.42, 0.0)).unwrap();
        assert!((s.extent() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cphase_split_agrees_with_the_general_one() {
        for k in 0..50 {
            let phi = -3.0 + 6.05 * k as f64 / 49.0;
            let s = xi_split_cphase(phi);
            // Closed form reconstructs the gate.
            let (d1, d2) = (s.b1.dense(), s.b2.dense());
            let target = gates::cphase(phi).dense();
            for i in 0..4 {
                for j in 0..4 {
                    let r = s.c1 * d1[i][j] + s.c2 * d2[i][j];
                    assert!((r - target[i][j]).norm() < 1e-13);
                }
            }
            // Branches are unitary, and both routes report the same extent.
            assert!(gates::make_ppu(*s.b1.a(), *s.b1.b()).is_ok());
            assert!(gates::make_ppu(*s.b2.a(), *s.b2.b()).is_ok());
            let general = xi_split(&gates::cphase(phi)).unwrap();
            assert!((s.extent() - general.extent()).abs() < 1e-12);
            assert!((s.extent() - extent_fsim(phi)).abs() < 1e-12);
        }
    }

    #[test]
    fn fsim_extent_is_hopping_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        for _ in 0..100 {
            let theta = rng.gen_range(-3.0..3.0);
            let phi = rng.gen_range(-3.0..3.0);
            let s = xi_split(&gates::fsim(theta, phi)).unwrap();
            assert!((s.extent() - extent_fsim(phi)).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_split_is_rejected() {
        // Non-unitary test point: a = I makes pf A = det b, and a singular
        // odd block zeroes it while the quartic stays finite.
        let o = C64::new(1.0, 0.0);
        let z = C64::new(0.0, 0.0);
        let g = PPUGate::new_unchecked([[o, z], [z, o]], [[o, o], [o, o]]);
        match xi_split(&g) {
            Err(Error::SingularSplit { .. }) => {}
            other => panic!("expected a singular split, got {other:?}"),
        }
        // The additive split still exists there.
        assert!(gamma_split(&g).is_ok());
    }
}
