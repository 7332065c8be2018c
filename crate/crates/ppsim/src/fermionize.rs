//! From gates to Grassmann tensors, and from circuits to one big
//! antisymmetric generating matrix.
//!
//! Every parity-preserving two-qubit gate G with a nonzero vacuum amplitude
//! a11 is encoded as
//!
//!   G  ~  N exp(half theta^T A theta + gamma_t theta1 theta2 theta3 theta4)
//!
//! on four Grassmann modes in the order (in-left, in-right, out-right,
//! out-left), with N = a11. Matchgates have gamma_t = 0 and are purely
//! Gaussian. Stitching the per-gate tensors together with edge kernels and
//! folding the boundary bitstrings yields a single skew matrix M and a list
//! of quartic "hole" sites; the overlap is then a normalization times a sum
//! of Pfaffians of hole-punched copies of M, which the contraction engine
//! evaluates.
//!
//! Getting the permutation signs of that construction right is the entire
//! art. Modes are numbered layer by layer, and within a layer unit by unit
//! in placement order (in-left, in-right, out-left, out-right). In that
//! order the sign of a layer-transition configuration decomposes into
//!
//!   - a factor -i per unused transition kernel plus a constant per layer
//!     gap (two unused kernels in the same gap always interleave, so the
//!     gap sign is quadratic in their number; particle-number parity fixes
//!     that number mod 2, which turns the quadratic into one fourth root of
//!     unity per kernel),
//!   - a factor -1 when the kernel leaves the left leg of a gate or enters
//!     the right leg of one (the partner mode sits inside the kernel's
//!     span),
//!   - a boundary string at the first and last gap: one factor -1 per
//!     unoccupied boundary slot beyond the kernel's unit, the fermionic
//!     string of the fixed boundary,
//!   - and a per-gate transform of the coefficient matrix itself (swap the
//!     out modes and negate every entry with exactly one out mode), which
//!     converts each gate's contribution into its matrix element times
//!     (-1)^[no outputs occupied], exactly the factor that cancels the
//!     crossing of its two outgoing kernels.
//!
//! The remaining per-edge, per-wire, boundary, and global coefficients are
//! collected in the `FROZEN` table below, pinned by the convention-solver
//! test at the bottom of this file: it matches every occupation
//! configuration of a zoo of small circuits against the dense simulator and
//! solves the resulting linear system over exponents of i.

use num_complex::Complex64 as C64;
use sha2::{Digest, Sha256};

use crate::circuits::Circuit;
use crate::gates::PPUGate;
use crate::pfaffian::SkewMatrix;
use crate::{Error, Result};

/// Gates whose vacuum amplitude |a11| falls below this cannot anchor the
/// Gaussian form (N = a11 appears in every denominator).
pub const VACUUM_TOL: f64 = 1e-12;

/// Grassmann data of one gate: coefficient matrix on modes
/// (in-left, in-right, out-right, out-left), normalization, and the quartic
/// hole coefficient.
#[derive(Clone, Debug)]
pub struct GateTensor {
    pub n: C64,
    pub a: [[C64; 4]; 4],
    pub gamma_t: C64,
}

impl GateTensor {
    /// Pfaffian of the coefficient matrix. The full-occupation matrix
    /// element of the gate is N (pf + gamma_t).
    pub fn pf(&self) -> C64 {
        self.a[0][1] * self.a[2][3] - self.a[0][2] * self.a[1][3] + self.a[0][3] * self.a[1][2]
    }
}

/// Builds the Gaussian-plus-quartic tensor of a gate.
///
/// With blocks a, b of the gate, the nonzero upper entries of A are
/// A12 = a12/N, A13 = b12/N, A14 = b22/N, A23 = b11/N, A24 = b21/N,
/// A34 = a21/N, and gamma_t = a22/N - pf A. These satisfy the identity
/// a11^2 gamma_t = det a - det b, so gamma_t vanishes exactly on Matchgates.
pub fn gate_tensor(gate: &PPUGate) -> Result<GateTensor> {
    let ab = gate.a();
    let bb = gate.b();
    let n = ab[0][0];
    if n.norm() <= VACUUM_TOL {
        return Err(Error::UnsupportedGate { magnitude: n.norm() });
    }
    let z = C64::new(0.0, 0.0);
    let upper = [
        (0, 1, ab[0][1]),
        (0, 2, bb[0][1]),
        (0, 3, bb[1][1]),
        (1, 2, bb[0][0]),
        (1, 3, bb[1][0]),
        (2, 3, ab[1][0]),
    ];
    let mut a = [[z; 4]; 4];
    for &(i, j, v) in &upper {
        a[i][j] = v / n;
        a[j][i] = -v / n;
    }
    let pf = (ab[0][1] * ab[1][0] - bb[0][1] * bb[1][0] + bb[0][0] * bb[1][1]) / (n * n);
    let gamma_t = ab[1][1] / n - pf;
    Ok(GateTensor { n, a, gamma_t })
}

/// Pfaffian of the tensor's coefficient matrix restricted to a sorted subset
/// of its four modes, with the quartic included when all four are present.
/// Equals the gate matrix element for that occupation pattern, divided by N.
#[cfg(test)]
fn local_config_value(t: &GateTensor, occ: &[usize]) -> C64 {
    match occ.len() {
        0 => C64::new(1.0, 0.0),
        2 => t.a[occ[0]][occ[1]],
        4 => t.a[0][1] * t.a[2][3] - t.a[0][2] * t.a[1][3] + t.a[0][3] * t.a[1][2] + t.gamma_t,
        _ => C64::new(0.0, 0.0),
    }
}

/// Upper coefficient entries in placement order (in-left, in-right,
/// out-left, out-right). Relative to the gate-local order this swaps the
/// two out modes and negates every entry with exactly one out mode; the
/// leftover factor -1 per gate is part of the global normalization. The
/// transform turns the gate's placed coefficients into its matrix elements
/// times (-1)^[no outputs occupied], which cancels the crossing sign of the
/// two transition kernels leaving the gate. Being a linear substitution, it
/// maps Matchgates to Matchgates.
fn straight_entry(t: &GateTensor, i: usize, j: usize) -> C64 {
    match (i, j) {
        (0, 1) => t.a[0][1],
        (0, 2) => -t.a[0][3],
        (0, 3) => -t.a[0][2],
        (1, 2) => -t.a[1][3],
        (1, 3) => -t.a[1][2],
        (2, 3) => -t.a[2][3],
        _ => unreachable!("upper entries only"),
    }
}

/// Hole coefficient in placement order: the out-mode swap negates it.
fn straight_gamma(t: &GateTensor) -> C64 {
    -t.gamma_t
}

/// The hole coefficient a gate contributes as a network site, in the
/// placement convention used by [`build_network`] (matching
/// `SiteInfo::gamma`). Parameter sweeps evaluate per-order tables against
/// these values.
pub fn site_gamma(gate: &PPUGate) -> Result<C64> {
    Ok(straight_gamma(&gate_tensor(gate)?))
}

/// Same as `local_config_value` but for the placed (straight-order) data:
/// `occ` is a sorted subset of (in-left, in-right, out-left, out-right).
#[cfg(test)]
fn straight_config_value(t: &GateTensor, occ: &[usize]) -> C64 {
    match occ.len() {
        0 => C64::new(1.0, 0.0),
        2 => straight_entry(t, occ[0], occ[1]),
        4 => -(t.a[0][1] * t.a[2][3] - t.a[0][2] * t.a[1][3] + t.a[0][3] * t.a[1][2] + t.gamma_t),
        _ => C64::new(0.0, 0.0),
    }
}

// --- skeleton: units, modes, and leg types ----------------------------------

const LEG_L: usize = 0;
const LEG_R: usize = 1;
const LEG_W: usize = 2;

/// Mode index, leg type, and owning unit of one qubit slot on one side of a
/// layer.
#[derive(Clone, Copy)]
struct Endpoint {
    mode: usize,
    leg: usize,
    unit: usize,
}

enum UnitKind {
    Gate { tensor: Box<GateTensor>, matchgate: bool },
    Wire,
}

struct Unit {
    base: usize,
    layer: usize,
    leftmost: usize,
    kind: UnitKind,
}

impl Unit {
    fn rightmost(&self) -> usize {
        match self.kind {
            UnitKind::Gate { .. } => self.leftmost + 1,
            UnitKind::Wire => self.leftmost,
        }
    }
}

struct Skeleton {
    l: usize,
    units: Vec<Unit>,
    /// ins[layer][qubit] and outs[layer][qubit] after wire padding; every
    /// slot of every layer is covered.
    ins: Vec<Vec<Endpoint>>,
    outs: Vec<Vec<Endpoint>>,
    modes: usize,
}

/// Pads every uncovered slot with an identity wire and assigns global mode
/// indices unit by unit (layers in order, units left to right, local modes
/// in placement order). A depth-0 circuit becomes a single all-wire layer
/// so the boundaries always have modes to fold into.
fn build_skeleton(circuit: &Circuit) -> Result<Skeleton> {
    let l = circuit.qubits();
    let depth = circuit.depth().max(1);
    let mut units = Vec::new();
    let mut ins = Vec::with_capacity(depth);
    let mut outs = Vec::with_capacity(depth);
    let mut next = 0usize;
    for li in 0..depth {
        let layer: &[crate::circuits::Placement] =
            circuit.layers().get(li).map(Vec::as_slice).unwrap_or(&[]);
        let dummy = Endpoint { mode: usize::MAX, leg: LEG_W, unit: usize::MAX };
        let mut in_row = vec![dummy; l];
        let mut out_row = vec![dummy; l];
        let mut gi = 0usize;
        let mut q = 0usize;
        while q < l {
            let id = units.len();
            if gi < layer.len() && layer[gi].leftmost == q {
                let p = &layer[gi];
                let base = next;
                next += 4;
                in_row[q] = Endpoint { mode: base, leg: LEG_L, unit: id };
                in_row[q + 1] = Endpoint { mode: base + 1, leg: LEG_R, unit: id };
                out_row[q] = Endpoint { mode: base + 2, leg: LEG_L, unit: id };
                out_row[q + 1] = Endpoint { mode: base + 3, leg: LEG_R, unit: id };
                units.push(Unit {
                    base,
                    layer: li,
                    leftmost: q,
                    kind: UnitKind::Gate {
                        tensor: Box::new(gate_tensor(&p.gate)?),
                        matchgate: p.gate.is_matchgate(),
                    },
                });
                gi += 1;
                q += 2;
            } else {
                let base = next;
                next += 2;
                in_row[q] = Endpoint { mode: base, leg: LEG_W, unit: id };
                out_row[q] = Endpoint { mode: base + 1, leg: LEG_W, unit: id };
                units.push(Unit { base, layer: li, leftmost: q, kind: UnitKind::Wire });
                q += 1;
            }
        }
        ins.push(in_row);
        outs.push(out_row);
    }
    Ok(Skeleton { l, units, ins, outs, modes: next })
}

// --- weight features ---------------------------------------------------------

// Every kernel entry, wire entry, and the constant part of the normalization
// is a fourth root of unity, written as i^e with e the dot product of a
// feature-count vector and the frozen coefficient table below. The features
// are per-kernel leg types and boundary strings, per-wire parities, boundary
// occupation counts of the first and last layer, and global shape counts.
// The coefficients are pinned by `convention_solver_pins_the_sign_tables`.

const NF: usize = 30;

// Kernel features, counted once per unused transition kernel.
const F_EDGE_BASE: usize = 0;
const F_EDGE_SRC_GATE_LEFT: usize = 1;
const F_EDGE_SRC_GATE_RIGHT: usize = 2;
const F_EDGE_SRC_WIRE: usize = 3;
const F_EDGE_TGT_GATE_LEFT: usize = 4;
const F_EDGE_TGT_GATE_RIGHT: usize = 5;
const F_EDGE_TGT_WIRE: usize = 6;
const F_EDGE_QUBIT_PARITY: usize = 7;
const F_EDGE_LAYER_PARITY: usize = 8;
/// At the first gap: number of unoccupied initial-state slots to the right
/// of the kernel's source unit.
const F_EDGE_STRING_IN: usize = 9;
/// At the last gap: number of unoccupied final-state slots to the left of
/// the kernel's target unit.
const F_EDGE_STRING_OUT: usize = 10;
// Wire features, counted once per occupied wire.
const F_WIRE_BASE: usize = 11;
const F_WIRE_QUBIT_PARITY: usize = 12;
const F_WIRE_LAYER_PARITY: usize = 13;
// Boundary features of the first and last layer.
const F_BD_FIRST_GATE_OCC: usize = 14;
const F_BD_FIRST_GATE_EMPTY: usize = 15;
const F_BD_FIRST_WIRE_OCC: usize = 16;
const F_BD_LAST_GATE_OCC: usize = 17;
const F_BD_LAST_GATE_EMPTY: usize = 18;
const F_BD_LAST_WIRE_OCC: usize = 19;
// Global shape features, counted once per network.
const F_G_CONST: usize = 20;
const F_G_GATES: usize = 21;
const F_G_FIRST_GATES: usize = 22;
const F_G_LAST_GATES: usize = 23;
/// (l mod 2) * (number of layer gaps).
const F_G_LPAR_GAPS: usize = 24;
const F_G_GAPS: usize = 25;
const F_G_WIRES: usize = 26;
const F_G_LPAR: usize = 27;
const F_G_ODD_LAYER_GATES: usize = 28;
const F_G_QUBITS: usize = 29;

/// Frozen feature coefficients (exponents of i), pinned by the convention
/// solver.
static FROZEN: [u8; NF] = [
    0, 2, 0, 0, 0, 2, 0, 0, 0, 0, 2, // kernel
    0, 0, 0, // wire
    0, 0, 0, 0, 2, 0, // boundary
    0, 2, 0, 0, 0, 0, 0, 0, 0, 0, // global
];

#[cfg(test)]
static FEATURE_NAMES: [&str; NF] = [
    "kernel base",
    "kernel from gate left leg",
    "kernel from gate right leg",
    "kernel from wire",
    "kernel into gate left leg",
    "kernel into gate right leg",
    "kernel into wire",
    "kernel qubit parity",
    "kernel layer parity",
    "kernel initial-boundary string",
    "kernel final-boundary string",
    "wire base",
    "wire qubit parity",
    "wire layer parity",
    "first-layer gate occupied slots",
    "first-layer gates with empty slots",
    "first-layer occupied wires",
    "last-layer gate occupied slots",
    "last-layer gates with empty slots",
    "last-layer occupied wires",
    "global constant",
    "global per gate",
    "global per first-layer gate",
    "global per last-layer gate",
    "global (l mod 2) * gaps",
    "global per gap",
    "global per wire",
    "global l mod 2",
    "global per odd-layer gate",
    "global per qubit",
];

/// i raised to a table exponent.
fn phase(exp: u8) -> C64 {
    match exp & 3 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

fn bump(counts: &mut [u8], f: usize, k: usize) {
    counts[f] = (counts[f] as usize + k) as u8 & 3;
}

fn dot_frozen(counts: &[u8]) -> u8 {
    let mut acc = 0u32;
    for f in 0..NF {
        acc += counts[f] as u32 * FROZEN[f] as u32;
    }
    (acc & 3) as u8
}

/// Feature counts of the transition kernel leaving layer `li` on qubit `q`.
fn edge_features(
    sk: &Skeleton,
    q: usize,
    li: usize,
    psi_i: &[bool],
    psi_f: &[bool],
    counts: &mut [u8],
) {
    let depth = sk.ins.len();
    let u = sk.outs[li][q];
    let v = sk.ins[li + 1][q];
    bump(counts, F_EDGE_BASE, 1);
    let src_feature = match u.leg {
        LEG_L => F_EDGE_SRC_GATE_LEFT,
        LEG_R => F_EDGE_SRC_GATE_RIGHT,
        _ => F_EDGE_SRC_WIRE,
    };
    bump(counts, src_feature, 1);
    let tgt_feature = match v.leg {
        LEG_L => F_EDGE_TGT_GATE_LEFT,
        LEG_R => F_EDGE_TGT_GATE_RIGHT,
        _ => F_EDGE_TGT_WIRE,
    };
    bump(counts, tgt_feature, 1);
    bump(counts, F_EDGE_QUBIT_PARITY, q & 1);
    bump(counts, F_EDGE_LAYER_PARITY, li & 1);
    if li == 0 {
        let right = sk.units[u.unit].rightmost();
        let zeros = (right + 1..sk.l).filter(|&qq| !psi_i[qq]).count();
        bump(counts, F_EDGE_STRING_IN, zeros);
    }
    if li + 2 == depth {
        let left = sk.units[v.unit].leftmost;
        let zeros = (0..left).filter(|&qq| !psi_f[qq]).count();
        bump(counts, F_EDGE_STRING_OUT, zeros);
    }
}

/// Feature counts of an occupied wire.
fn wire_features(q: usize, li: usize, counts: &mut [u8]) {
    bump(counts, F_WIRE_BASE, 1);
    bump(counts, F_WIRE_QUBIT_PARITY, q & 1);
    bump(counts, F_WIRE_LAYER_PARITY, li & 1);
}

/// Boundary and global shape feature counts of a whole network.
fn norm_features(sk: &Skeleton, psi_i: &[bool], psi_f: &[bool], counts: &mut [u8]) {
    let depth = sk.ins.len();
    let mut gates = 0usize;
    let mut first_gates = 0usize;
    let mut last_gates = 0usize;
    let mut odd_layer_gates = 0usize;
    let mut wires = 0usize;
    for unit in &sk.units {
        match unit.kind {
            UnitKind::Gate { .. } => {
                gates += 1;
                odd_layer_gates += unit.layer & 1;
                if unit.layer == 0 {
                    first_gates += 1;
                    let occ = psi_i[unit.leftmost] as usize + psi_i[unit.leftmost + 1] as usize;
                    bump(counts, F_BD_FIRST_GATE_OCC, occ);
                    bump(counts, F_BD_FIRST_GATE_EMPTY, (occ == 0) as usize);
                }
                if unit.layer == depth - 1 {
                    last_gates += 1;
                    let occ = psi_f[unit.leftmost] as usize + psi_f[unit.leftmost + 1] as usize;
                    bump(counts, F_BD_LAST_GATE_OCC, occ);
                    bump(counts, F_BD_LAST_GATE_EMPTY, (occ == 0) as usize);
                }
            }
            UnitKind::Wire => {
                wires += 1;
                if unit.layer == 0 {
                    bump(counts, F_BD_FIRST_WIRE_OCC, psi_i[unit.leftmost] as usize);
                }
                if unit.layer == depth - 1 {
                    bump(counts, F_BD_LAST_WIRE_OCC, psi_f[unit.leftmost] as usize);
                }
            }
        }
    }
    bump(counts, F_G_CONST, 1);
    bump(counts, F_G_GATES, gates);
    bump(counts, F_G_FIRST_GATES, first_gates);
    bump(counts, F_G_LAST_GATES, last_gates);
    bump(counts, F_G_LPAR_GAPS, (sk.l & 1) * (depth - 1));
    bump(counts, F_G_GAPS, depth - 1);
    bump(counts, F_G_WIRES, wires);
    bump(counts, F_G_LPAR, sk.l & 1);
    bump(counts, F_G_ODD_LAYER_GATES, odd_layer_gates);
    bump(counts, F_G_QUBITS, sk.l);
}

// --- network assembly ---------------------------------------------------------

/// One non-Matchgate site of the expansion: its hole coefficient, its
/// normalization, and the positions of its four modes in the compressed
/// generating matrix (None where a boundary zero deleted the mode).
#[derive(Clone, Debug)]
pub struct SiteInfo {
    pub gamma: C64,
    pub n: C64,
    /// Pfaffian of the site's full four-mode coefficient block before any
    /// boundary deletion. The two-branch split rescales the block by
    /// ±sqrt(1 + gamma/pf); the ratio gamma/pf is invariant under the
    /// placement reordering, so branch data can be computed from here.
    pub pf: C64,
    pub modes: [Option<usize>; 4],
    pub layer: usize,
    pub leftmost: usize,
}

/// The fermionic contraction data of a whole circuit: the generating matrix
/// after boundary folding, the scalar normalization, and the expansion sites
/// in layer-major order.
pub struct Network {
    pub m: SkewMatrix,
    pub norm: C64,
    pub sites: Vec<SiteInfo>,
    pub l: usize,
    psi_i: Vec<bool>,
    psi_f: Vec<bool>,
}

/// Assembles the generating matrix of a circuit: per-unit coefficient blocks
/// on the diagonal, transition kernels between consecutive layers, boundary
/// bits folded in (a zero bit deletes the mode, a one bit leaves it to be
/// paired internally). The overlap is `norm` times the hole expansion over
/// `sites`.
pub fn build_network(circuit: &Circuit) -> Result<Network> {
    let sk = build_skeleton(circuit)?;
    let depth = sk.ins.len();
    let psi_i = circuit.psi_i();
    let psi_f = circuit.psi_f();

    // Boundary folding: which modes survive.
    let mut keep = vec![true; sk.modes];
    for q in 0..sk.l {
        if !psi_i[q] {
            keep[sk.ins[0][q].mode] = false;
        }
        if !psi_f[q] {
            keep[sk.outs[depth - 1][q].mode] = false;
        }
    }
    let mut comp = vec![None; sk.modes];
    let mut dim = 0usize;
    for mode in 0..sk.modes {
        if keep[mode] {
            comp[mode] = Some(dim);
            dim += 1;
        }
    }
    debug_assert!(dim.is_multiple_of(2), "even-parity boundaries always leave an even mode count");

    let mut m = SkewMatrix::zeros(dim)?;
    let mut nf = [0u8; NF];
    norm_features(&sk, psi_i, psi_f, &mut nf);
    let mut norm = phase(dot_frozen(&nf));
    let mut sites = Vec::new();
    for unit in &sk.units {
        match &unit.kind {
            UnitKind::Gate { tensor, matchgate } => {
                for i in 0..4 {
                    for j in (i + 1)..4 {
                        if let (Some(ci), Some(cj)) = (comp[unit.base + i], comp[unit.base + j]) {
                            m.set_pair(ci, cj, straight_entry(tensor, i, j));
                        }
                    }
                }
                norm *= tensor.n;
                if !matchgate {
                    let modes = [0, 1, 2, 3].map(|i| comp[unit.base + i]);
                    sites.push(SiteInfo {
                        gamma: straight_gamma(tensor),
                        n: tensor.n,
                        // The placement reordering flips the block Pfaffian
                        // along with the hole coefficient.
                        pf: -tensor.pf(),
                        modes,
                        layer: unit.layer,
                        leftmost: unit.leftmost,
                    });
                }
            }
            UnitKind::Wire => {
                if let (Some(ci), Some(cj)) = (comp[unit.base], comp[unit.base + 1]) {
                    let mut cf = [0u8; NF];
                    wire_features(unit.leftmost, unit.layer, &mut cf);
                    m.set_pair(ci, cj, phase(dot_frozen(&cf)));
                }
            }
        }
    }
    for li in 0..depth - 1 {
        for q in 0..sk.l {
            let u = sk.outs[li][q];
            let v = sk.ins[li + 1][q];
            if let (Some(cu), Some(cv)) = (comp[u.mode], comp[v.mode]) {
                let mut cf = [0u8; NF];
                edge_features(&sk, q, li, psi_i, psi_f, &mut cf);
                m.set_pair(cu, cv, phase(dot_frozen(&cf)));
            }
        }
    }
    Ok(Network {
        m,
        norm,
        sites,
        l: sk.l,
        psi_i: psi_i.to_vec(),
        psi_f: psi_f.to_vec(),
    })
}

impl Network {
    /// Content hash of everything a per-order Pfaffian-sum table depends on:
    /// the generating matrix, the normalization, the site mode layout, and
    /// the boundaries. Site hole coefficients are deliberately excluded;
    /// tables are reusable across families of gates that share the Gaussian
    /// part and differ only in their hole coefficients.
    pub fn fingerprint(&self) -> [u8; 32] {
        let mut h = Sha256::new();
        h.update(b"PPSIM-NET-v1");
        h.update((self.m.dim() as u64).to_le_bytes());
        for e in self.m.as_slice() {
            h.update(e.re.to_le_bytes());
            h.update(e.im.to_le_bytes());
        }
        h.update(self.norm.re.to_le_bytes());
        h.update(self.norm.im.to_le_bytes());
        h.update((self.sites.len() as u64).to_le_bytes());
        for s in &self.sites {
            for mode in s.modes {
                // 0 encodes a deleted mode; kept modes are shifted by one.
                h.update((mode.map_or(0, |x| x as u64 + 1)).to_le_bytes());
            }
        }
        h.update((self.l as u64).to_le_bytes());
        let bits: Vec<u8> = self
            .psi_i
            .iter()
            .chain(self.psi_f.iter())
            .map(|&b| b as u8)
            .collect();
        h.update(&bits);
        h.finalize().into()
    }
}
