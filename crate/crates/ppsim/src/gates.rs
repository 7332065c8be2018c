//! Parity-preserving two-qubit gates in (a, b) block form.
//!
//! A parity-preserving unitary (PPU) acts on the even span {|00⟩, |11⟩} with
//! a 2×2 unitary a and on the odd span {|01⟩, |10⟩} with a 2×2 unitary b:
//!
//! ```text
//!         | a11  .    .   a12 |
//! G(a,b) = | .   b11  b12   .  |        (basis order 00, 01, 10, 11)
//!         | .   b21  b22   .  |
//!         | a21  .    .   a22 |
//! ```
//!
//! The scalar γ = det a − det b separates Matchgates (γ = 0), which simulate
//! as free fermions, from gates that cost one expansion order each.

use num_complex::Complex64 as C64;
use rand::Rng;

use crate::{Error, Result};

/// Classification tolerance: gates with |γ| at or below this are treated as
/// Matchgates. Chosen well below expansion-term magnitudes at any truncation
/// order of interest.
pub const MG_TOL: f64 = 1e-12;

/// Unitarity tolerance for the gate blocks.
const UNITARY_TOL: f64 = 1e-10;

/// Attempts before the rejection sampler in [`random_ppu`] gives up.
const MAX_REJECTIONS: u64 = 1_000_000;

/// Mean of |γ| under independent Haar-random blocks. The two block
/// determinants are independent uniform phases, so E|γ| = E|e^{iα} − e^{iβ}|
/// = 4/π; the sampler test checks its empirical mean against this value.
pub const HAAR_MEAN_ABS_GAMMA: f64 = 4.0 / std::f64::consts::PI;

/// Dense 2×2 complex block.
pub type Block = [[C64; 2]; 2];

/// A parity-preserving two-qubit unitary stored as its two blocks.
#[derive(Clone, Debug, PartialEq)]
pub struct PPUGate {
    a: Block,
    b: Block,
}

/// Matchgate/non-Matchgate label with the classifying scalar attached.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind {
    Matchgate { gamma_det: C64 },
    NonMatchgate { gamma_det: C64 },
}

impl GateKind {
    pub fn gamma_det(&self) -> C64 {
        match *self {
            GateKind::Matchgate { gamma_det } | GateKind::NonMatchgate { gamma_det } => gamma_det,
        }
    }

    pub fn is_matchgate(&self) -> bool {
        matches!(self, GateKind::Matchgate { .. })
    }
}

fn det2(m: &Block) -> C64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Largest deviation of m·m† from the identity.
fn unitarity_deviation(m: &Block) -> f64 {
    let mut dev = 0.0_f64;
    for i in 0..2 {
        for j in 0..2 {
            let mut e = m[i][0] * m[j][0].conj() + m[i][1] * m[j][1].conj();
            if i == j {
                e -= C64::new(1.0, 0.0);
            }
            dev = dev.max(e.norm());
        }
    }
    dev
}

impl PPUGate {
    /// Builds a gate from its even- and odd-parity blocks, validating that
    /// both are unitary within 1e-10.
    pub fn new(a: Block, b: Block) -> Result<Self> {
        for block in [&a, &b] {
            let deviation = unitarity_deviation(block);
            if deviation > UNITARY_TOL {
                return Err(Error::NonUnitaryBlock { deviation });
            }
        }
        Ok(Self { a, b })
    }

    /// Builds a gate without the unitarity check. Decompositions factor a
    /// unitary gate into non-unitary Matchgate pieces; this is how those
    /// pieces are represented. Everything downstream (dense matrix, tensor
    /// encoding, the dense simulator) is well defined without unitarity.
    pub fn new_unchecked(a: Block, b: Block) -> Self {
        Self { a, b }
    }

    pub fn a(&self) -> &Block {
        &self.a
    }

    pub fn b(&self) -> &Block {
        &self.b
    }

    /// The dense 4×4 matrix in basis order |00⟩, |01⟩, |10⟩, |11⟩.
    pub fn dense(&self) -> [[C64; 4]; 4] {
        let z = C64::new(0.0, 0.0);
        let (a, b) = (&self.a, &self.b);
        [
            [a[0][0], z, z, a[0][1]],
            [z, b[0][0], b[0][1], z],
            [z, b[1][0], b[1][1], z],
            [a[1][0], z, z, a[1][1]],
        ]
    }

    /// det a − det b, the non-Gaussianity measure.
    pub fn gamma_det(&self) -> C64 {
        det2(&self.a) - det2(&self.b)
    }

    pub fn kind(&self) -> GateKind {
        let gamma_det = self.gamma_det();
        if gamma_det.norm() <= MG_TOL {
            GateKind::Matchgate { gamma_det }
        } else {
            GateKind::NonMatchgate { gamma_det }
        }
    }

    pub fn is_matchgate(&self) -> bool {
        self.kind().is_matchgate()
    }

    /// True when the gate conserves particle number, i.e. the even block is
    /// diagonal within tolerance (the odd block always conserves it).
    pub fn is_number_conserving(&self) -> bool {
        self.a[0][1].norm() <= MG_TOL && self.a[1][0].norm() <= MG_TOL
    }
}

/// `make_ppu(a, b)`: free-function alias for [`PPUGate::new`].
pub fn make_ppu(a: Block, b: Block) -> Result<PPUGate> {
    PPUGate::new(a, b)
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The identity gate.
pub fn identity() -> PPUGate {
    let i2 = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
    PPUGate { a: i2, b: i2 }
}

/// Controlled phase: diag(1, 1, 1, e^{iφ}). γ = e^{iφ} − 1.
pub fn cphase(phi: f64) -> PPUGate {
    let a = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), C64::from_polar(1.0, phi)]];
    let b = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
    PPUGate { a, b }
}

/// Controlled Z: diag(1, 1, 1, −1). γ = −2.
pub fn cz() -> PPUGate {
    let a = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]];
    let b = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
    PPUGate { a, b }
}

/// SWAP. γ = 2.
pub fn swap() -> PPUGate {
    let a = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
    let b = [[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
    PPUGate { a, b }
}

/// fSim convention used throughout: a = diag(1, e^{−iφ}),
/// b = [[cos θ, −i sin θ], [−i sin θ, cos θ]].
///
/// det b = 1, |γ| = 2|sin(φ/2)| for every θ, fsim(θ, 0) is a Matchgate, and
/// fsim(0, φ) = cphase(−φ). The sign of the φ phase is a convention; this one
/// is fixed once and validated end to end against the dense simulator.
pub fn fsim(theta: f64, phi: f64) -> PPUGate {
    let a = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), C64::from_polar(1.0, -phi)]];
    let (s, co) = theta.sin_cos();
    let b = [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]];
    PPUGate { a, b }
}

/// Standard complex normal via Box-Muller.
fn normal_c64<R: Rng>(rng: &mut R) -> C64 {
    let u1: f64 = rng.gen_range(f64::EPSILON..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    let r = (-2.0 * u1.ln()).sqrt();
    let (s, co) = (2.0 * std::f64::consts::PI * u2).sin_cos();
    // The two Box-Muller outputs feed the real and imaginary parts; the
    // extra factor normalizes each to variance 1/2 (standard complex normal).
    C64::new(r * co, r * s) / std::f64::consts::SQRT_2
}

/// Haar-random U(2): QR of a complex Ginibre matrix via Gram-Schmidt with
/// real positive normalization, which is the phase-fixed-R convention that
/// makes Q exactly Haar.
pub fn haar_u2<R: Rng>(rng: &mut R) -> Block {
    loop {
        let g = [[normal_c64(rng), normal_c64(rng)], [normal_c64(rng), normal_c64(rng)]];
        let n1 = (g[0][0].norm_sqr() + g[1][0].norm_sqr()).sqrt();
        if n1 < 1e-12 {
            continue;
        }
        let q1 = [g[0][0] / n1, g[1][0] / n1];
        let proj = q1[0].conj() * g[0][1] + q1[1].conj() * g[1][1];
        let v = [g[0][1] - proj * q1[0], g[1][1] - proj * q1[1]];
        let n2 = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        if n2 < 1e-12 {
            continue;
        }
        return [[q1[0], v[0] / n2], [q1[1], v[1] / n2]];
    }
}

/// Haar-random Matchgate: independent Haar blocks with the odd block
/// re-phased so its determinant matches the even block's exactly.
pub fn random_matchgate<R: Rng>(rng: &mut R) -> PPUGate {
    let a = haar_u2(rng);
    let mut b = haar_u2(rng);
    let ratio = det2(&a) / det2(&b);
    let phase = C64::from_polar(1.0, ratio.arg() / 2.0);
    for row in &mut b {
        for e in row.iter_mut() {
            *e *= phase;
        }
    }
    PPUGate { a, b }
}

/// Random PPU with independent Haar-random blocks, optionally rejection-
/// resampled until |γ| ≤ `gamma_cutoff`. A cutoff at or below the Matchgate
/// tolerance switches to the direct Matchgate sampler, since rejection would
/// essentially never terminate there.
pub fn random_ppu<R: Rng>(rng: &mut R, gamma_cutoff: Option<f64>) -> Result<PPUGate> {
    match gamma_cutoff {
        None => Ok(PPUGate { a: haar_u2(rng), b: haar_u2(rng) }),
        Some(cutoff) if cutoff <= MG_TOL => Ok(random_matchgate(rng)),
        Some(cutoff) => {
            for _ in 0..MAX_REJECTIONS {
                let g = PPUGate { a: haar_u2(rng), b: haar_u2(rng) };
                if g.gamma_det().norm() <= cutoff {
                    return Ok(g);
                }
            }
            Err(Error::SamplingExhausted { attempts: MAX_REJECTIONS })
        }
    }
}
