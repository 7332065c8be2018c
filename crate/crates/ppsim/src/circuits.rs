//! Brick-wall circuits: the circuit type, validation, experiment-family
//! builders, and a lossless human-readable text format.

use num_complex::Complex64 as C64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gates::{self, PPUGate};
use crate::{Error, Result};

/// A gate placed on qubits (leftmost, leftmost + 1).
#[derive(Clone, Debug, PartialEq)]
pub struct Placement {
    pub gate: PPUGate,
    pub leftmost: usize,
}

/// A brick-wall circuit between two computational-basis product states.
///
/// Invariants enforced at construction:
/// - placements within a layer are disjoint, nearest-neighbor, and share the
///   same leftmost-qubit parity (the layer offset);
/// - consecutive non-empty layers alternate offsets;
/// - both boundary bitstrings have length `l` and even parity.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    l: usize,
    layers: Vec<Vec<Placement>>,
    psi_i: Vec<bool>,
    psi_f: Vec<bool>,
}

/// The two named half-filling boundary families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HalfFilling {
    /// Domain wall: all particles on the left half, `1..10..0`.
    H,
    /// Evenly spread: one particle per two-site cell, `1010...`.
    E,
}

/// Which gate replaces the chosen slots in [`random_circuit`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Planted {
    /// Controlled-phase with the given angle (a uniform family, so sweeps
    /// and per-order precomputation apply).
    Cphase(f64),
    /// Haar-random PPU, optionally rejection-sampled to |γ| ≤ cutoff.
    RandomPpu(Option<f64>),
}

fn parity_even(bits: &[bool]) -> bool {
    bits.iter().filter(|&&b| b).count() % 2 == 0
}

fn check_boundary(l: usize, bits: &[bool], which: &str) -> Result<()> {
    if bits.len() != l {
        return Err(Error::InvalidBoundary {
            reason: format!("{which} state has {} bits, circuit has {l} qubits", bits.len()),
        });
    }
    if !parity_even(bits) {
        return Err(Error::InvalidBoundary {
            reason: format!("{which} state has odd parity; only even-parity product states are supported"),
        });
    }
    Ok(())
}

impl Circuit {
    pub fn new(
        l: usize,
        layers: Vec<Vec<Placement>>,
        psi_i: Vec<bool>,
        psi_f: Vec<bool>,
    ) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidLayout { reason: "a circuit needs at least one qubit".into() });
        }
        check_boundary(l, &psi_i, "initial")?;
        check_boundary(l, &psi_f, "final")?;
        let mut prev_offset: Option<usize> = None;
        for (li, layer) in layers.iter().enumerate() {
            let mut seen: Option<usize> = None;
            for p in layer {
                if p.leftmost + 1 >= l {
                    return Err(Error::InvalidLayout {
                        reason: format!("layer {li}: gate at qubit {} exceeds {l} qubits", p.leftmost),
                    });
                }
                if let Some(prev) = seen {
                    if p.leftmost <= prev + 1 {
                        return Err(Error::InvalidLayout {
                            reason: format!(
                                "layer {li}: placements at {prev} and {} overlap or are unsorted",
                                p.leftmost
                            ),
                        });
                    }
                }
                seen = Some(p.leftmost);
            }
            if let Some(first) = layer.first() {
                let offset = first.leftmost % 2;
                if layer.iter().any(|p| p.leftmost % 2 != offset) {
                    return Err(Error::InvalidLayout {
                        reason: format!("layer {li}: mixed leftmost parities break the brick-wall pattern"),
                    });
                }
                if prev_offset == Some(offset) {
                    return Err(Error::InvalidLayout {
                        reason: format!("layer {li}: consecutive layers must alternate offsets"),
                    });
                }
                prev_offset = Some(offset);
            }
        }
        Ok(Self { l, layers, psi_i, psi_f })
    }

    pub fn qubits(&self) -> usize {
        self.l
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Total gate count s.
    pub fn gate_count(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    pub fn layers(&self) -> &[Vec<Placement>] {
        &self.layers
    }

    pub fn psi_i(&self) -> &[bool] {
        &self.psi_i
    }

    pub fn psi_f(&self) -> &[bool] {
        &self.psi_f
    }

    /// Same circuit with different boundary states.
    pub fn with_boundaries(mut self, psi_i: Vec<bool>, psi_f: Vec<bool>) -> Result<Self> {
        check_boundary(self.l, &psi_i, "initial")?;
        check_boundary(self.l, &psi_f, "final")?;
        self.psi_i = psi_i;
        self.psi_f = psi_f;
        Ok(self)
    }

    /// Number of non-Matchgate sites, the expansion length m.
    pub fn nonmg_count(&self) -> usize {
        self.layers
            .iter()
            .flatten()
            .filter(|p| !p.gate.is_matchgate())
            .count()
    }
}

fn bits_all_zero(l: usize) -> Vec<bool> {
    vec![false; l]
}

/// One first-order step: a Matchgate hopping layer on even bonds followed by
/// an interacting layer on odd bonds. Repeated `n` times this approximates
/// evolution under nearest-neighbor hopping `t` on all bonds plus
/// density-density interaction `U` on the odd bonds, for time n·dt.
///
/// Every odd-bond gate is fsim(t·dt, U·dt), so the circuit carries
/// m = n·(L/2 − 1) non-Matchgates when U·dt is away from 0 mod 2π.
pub fn trotter_circuit(l: usize, n: usize, t: f64, u: f64, dt: f64) -> Result<Circuit> {
    floquet_circuit(l, n, t * dt, u * dt)
}

/// `d` repetitions of [fsim(θ, 0) on even bonds; fsim(θ, φ) on odd bonds].
/// For θ, φ ≪ 1 this is the first-order step of the hopping-plus-interaction
/// chain; at finite angles it is the kicked (Floquet) version.
pub fn floquet_circuit(l: usize, d: usize, theta: f64, phi: f64) -> Result<Circuit> {
    if !l.is_multiple_of(2) || l < 4 {
        return Err(Error::InvalidLayout {
            reason: format!("this builder needs an even number of qubits, at least 4, got {l}"),
        });
    }
    let mut layers = Vec::with_capacity(2 * d);
    for _ in 0..d {
        let even: Vec<Placement> = (0..l / 2)
            .map(|j| Placement { gate: gates::fsim(theta, 0.0), leftmost: 2 * j })
            .collect();
        let odd: Vec<Placement> = (0..l / 2 - 1)
            .map(|j| Placement { gate: gates::fsim(theta, phi), leftmost: 2 * j + 1 })
            .collect();
        layers.push(even);
        layers.push(odd);
    }
    Circuit::new(l, layers, bits_all_zero(l), bits_all_zero(l))
}

/// Brick-wall circuit of seeded Haar-random Matchgates with `m` slots
/// replaced by the planted gate kind. Layer offsets alternate starting at 0;
/// boundaries default to |0...0⟩ on both sides.
pub fn random_circuit(l: usize, d: usize, m: usize, kind: Planted, seed: u64) -> Result<Circuit> {
    if l < 2 {
        return Err(Error::InvalidLayout { reason: "need at least two qubits".into() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut layers: Vec<Vec<Placement>> = Vec::with_capacity(d);
    let mut slots: Vec<(usize, usize)> = Vec::new();
    for li in 0..d {
        let offset = li % 2;
        let mut layer = Vec::new();
        let mut q = offset;
        while q + 1 < l {
            slots.push((li, layer.len()));
            layer.push(Placement { gate: gates::random_matchgate(&mut rng), leftmost: q });
            q += 2;
        }
        layers.push(layer);
    }
    if m > slots.len() {
        return Err(Error::InvalidLayout {
            reason: format!("cannot plant {m} gates into {} slots", slots.len()),
        });
    }
    slots.shuffle(&mut rng);
    let mut chosen: Vec<(usize, usize)> = slots[..m].to_vec();
    chosen.sort_unstable();
    for (li, pi) in chosen {
        layers[li][pi].gate = match kind {
            Planted::Cphase(phi) => gates::cphase(phi),
            Planted::RandomPpu(cutoff) => gates::random_ppu(&mut rng, cutoff)?,
        };
    }
    Circuit::new(l, layers, bits_all_zero(l), bits_all_zero(l))
}

/// The two half-filling boundary bitstrings (popcount L/2). Requires L
/// divisible by 4, the regime where the circuit-independent cutoff formulas
/// of the expansion engine apply.
///
/// The concrete patterns are fixed by which ones empirically reproduce those
/// cutoffs on the hopping-chain circuits: the domain wall `1..10..0` for the
/// H family and the evenly spread `1010...` for the E family (see the cutoff
/// tests in the contract module).
pub fn half_filling_states(l: usize, variant: HalfFilling) -> Result<Vec<bool>> {
    if l == 0 || !l.is_multiple_of(4) {
        return Err(Error::InvalidBoundary {
            reason: format!("half-filling boundaries are defined for L divisible by 4, got {l}"),
        });
    }
    Ok(match variant {
        HalfFilling::H => (0..l).map(|q| q < l / 2).collect(),
        HalfFilling::E => (0..l).map(|q| q % 2 == 0).collect(),
    })
}

// --- text format ------------------------------------------------------------

/// Formats f64 so that parsing returns the identical bits (shortest
/// round-trip representation).
fn fmt_f64(x: f64) -> String {
    format!("{x}")
}

fn bits_to_string(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

impl Circuit {
    /// Serializes to the versioned text format. Gate parameters use the
    /// shortest round-trip float representation, so `from_text(to_text(c))`
    /// reproduces the circuit exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::from("ppsim circuit v1\n");
        out.push_str(&format!("qubits {}\n", self.l));
        out.push_str(&format!("initial {}\n", bits_to_string(&self.psi_i)));
        out.push_str(&format!("final {}\n", bits_to_string(&self.psi_f)));
        for layer in &self.layers {
            out.push_str("layer\n");
            for p in layer {
                let g = &p.gate;
                let mut blocks = Vec::with_capacity(16);
                for m in [g.a(), g.b()] {
                    for row in m {
                        for e in row {
                            blocks.push(fmt_f64(e.re));
                            blocks.push(fmt_f64(e.im));
                        }
                    }
                }
                out.push_str(&format!("ppu {} at {}\n", blocks.join(" "), p.leftmost));
            }
        }
        out
    }

    /// Parses the text format produced by [`Circuit::to_text`]. Also accepts
    /// the named-gate forms `cphase PHI at Q`, `fsim THETA PHI at Q`,
    /// `cz at Q`, `swap at Q`, and `id at Q` for hand-written files.
    pub fn from_text(text: &str) -> Result<Circuit> {
        let err = |line: usize, message: &str| Error::Parse { line, message: message.into() };
        let mut l: Option<usize> = None;
        let mut psi_i: Option<Vec<bool>> = None;
        let mut psi_f: Option<Vec<bool>> = None;
        let mut layers: Vec<Vec<Placement>> = Vec::new();
        let mut saw_header = false;

        let parse_bits = |s: &str, line: usize| -> Result<Vec<bool>> {
            s.chars()
                .map(|ch| match ch {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(err(line, "boundary bitstrings may contain only 0 and 1")),
                })
                .collect()
        };

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if !saw_header {
                if content != "ppsim circuit v1" {
                    return Err(err(line, "expected header `ppsim circuit v1`"));
                }
                saw_header = true;
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens[0] {
                "qubits" => {
                    let n = tokens
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err(line, "qubits needs a positive integer"))?;
                    l = Some(n);
                }
                "initial" => {
                    let s = tokens.get(1).ok_or_else(|| err(line, "initial needs a bitstring"))?;
                    psi_i = Some(parse_bits(s, line)?);
                }
                "final" => {
                    let s = tokens.get(1).ok_or_else(|| err(line, "final needs a bitstring"))?;
                    psi_f = Some(parse_bits(s, line)?);
                }
                "layer" => layers.push(Vec::new()),
                name => {
                    let layer = layers
                        .last_mut()
                        .ok_or_else(|| err(line, "gate line before the first `layer`"))?;
                    let at = tokens
                        .iter()
                        .position(|&t| t == "at")
                        .ok_or_else(|| err(line, "gate line is missing `at QUBIT`"))?;
                    let leftmost: usize = tokens
                        .get(at + 1)
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| err(line, "`at` needs a qubit index"))?;
                    let params: Vec<f64> = tokens[1..at]
                        .iter()
                        .map(|t| t.parse::<f64>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| err(line, "bad numeric gate parameter"))?;
                    let gate = match (name, params.len()) {
                        ("cphase", 1) => gates::cphase(params[0]),
                        ("fsim", 2) => gates::fsim(params[0], params[1]),
                        ("cz", 0) => gates::cz(),
                        ("swap", 0) => gates::swap(),
                        ("id", 0) => gates::identity(),
                        ("ppu", 16) => {
                            let v: Vec<C64> = params
                                .chunks(2)
                                .map(|p| C64::new(p[0], p[1]))
                                .collect();
                            let a = [[v[0], v[1]], [v[2], v[3]]];
                            let b = [[v[4], v[5]], [v[6], v[7]]];
                            PPUGate::new(a, b)?
                        }
                        _ => return Err(err(line, "unknown gate or wrong parameter count")),
                    };
                    layer.push(Placement { gate, leftmost });
                }
            }
        }
        let l = l.ok_or_else(|| err(0, "missing `qubits` line"))?;
        let psi_i = psi_i.ok_or_else(|| err(0, "missing `initial` line"))?;
        let psi_f = psi_f.ok_or_else(|| err(0, "missing `final` line"))?;
        // Hand-written files may list a layer's gates in any order.
        for layer in &mut layers {
            layer.sort_by_key(|p| p.leftmost);
        }
        Circuit::new(l, layers, psi_i, psi_f)
    }
}
