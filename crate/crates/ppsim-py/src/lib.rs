//! Python bindings for the ppsim overlap simulator.
//!
//! Exposes the gate and circuit types, the dense reference oracle, the
//! hole-expansion contraction entry points (exact, truncated, branch, and
//! adaptive), per-order sweep tables with their binary file format, the gate
//! decompositions, and the Pfaffian kernel. Complex numbers cross the
//! boundary as Python `complex`; blocks and matrices as nested lists.

// The pyo3 0.22 attribute macros expand every PyResult-returning function
// into glue containing an identity PyErr conversion, which current clippy
// reports as useless_conversion.
#![allow(clippy::useless_conversion)]

use num_complex::Complex64 as C64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ppsim::{circuits, contract, decomp, fermionize, gates, oracle, pfaffian};

/// Maps core errors onto Python exceptions: resource refusals become
/// RuntimeError, everything else ValueError.
fn to_py(e: ppsim::Error) -> PyErr {
    match e {
        ppsim::Error::BudgetExceeded { .. } | ppsim::Error::ResourceLimit { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn hex32(bytes: &[u8; 32]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// A parity-preserving two-qubit unitary, stored as its even block `a`
/// (acting on span{|00>, |11>}) and odd block `b` (acting on
/// span{|01>, |10>}).
#[pyclass(frozen)]
#[derive(Clone)]
struct PpuGate {
    inner: gates::PPUGate,
}

#[pymethods]
impl PpuGate {
    /// Builds a gate from its two 2x2 blocks, validating that the resulting
    /// four-by-four matrix is unitary.
    #[new]
    fn py_new(a: [[C64; 2]; 2], b: [[C64; 2]; 2]) -> PyResult<Self> {
        Ok(Self { inner: gates::PPUGate::new(a, b).map_err(to_py)? })
    }

    /// The identity gate.
    #[staticmethod]
    fn identity() -> Self {
        Self { inner: gates::identity() }
    }

    /// Controlled-phase gate diag(1, 1, 1, e^{i phi}).
    #[staticmethod]
    fn cphase(phi: f64) -> Self {
        Self { inner: gates::cphase(phi) }
    }

    /// Controlled-Z gate, the phi = pi controlled phase.
    #[staticmethod]
    fn cz() -> Self {
        Self { inner: gates::cz() }
    }

    /// The SWAP gate.
    #[staticmethod]
    fn swap() -> Self {
        Self { inner: gates::swap() }
    }

    /// fSim gate: hopping angle theta in the odd block, interaction phase
    /// phi on |11>. A Matchgate exactly when phi = 0 mod 2 pi.
    #[staticmethod]
    fn fsim(theta: f64, phi: f64) -> Self {
        Self { inner: gates::fsim(theta, phi) }
    }

    /// Seeded Haar-random gate (independent Haar blocks). When
    /// `gamma_cutoff` is given, rejection-samples until |gamma| is at or
    /// below the cutoff.
    #[staticmethod]
    #[pyo3(signature = (seed, gamma_cutoff=None))]
    fn random(seed: u64, gamma_cutoff: Option<f64>) -> PyResult<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Ok(Self { inner: gates::random_ppu(&mut rng, gamma_cutoff).map_err(to_py)? })
    }

    /// Seeded Haar-random Matchgate (blocks with equal determinants).
    #[staticmethod]
    fn random_matchgate(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self { inner: gates::random_matchgate(&mut rng) }
    }

    /// The even block as a nested list.
    fn a(&self) -> [[C64; 2]; 2] {
        *self.inner.a()
    }

    /// The odd block as a nested list.
    fn b(&self) -> [[C64; 2]; 2] {
        *self.inner.b()
    }

    /// The dense 4x4 matrix in the computational basis |00>, |01>, |10>,
    /// |11> (first qubit is the high bit).
    fn dense(&self) -> [[C64; 4]; 4] {
        self.inner.dense()
    }

    /// The Matchgate classifier det a - det b; zero exactly for Matchgates.
    #[getter]
    fn gamma_det(&self) -> C64 {
        self.inner.gamma_det()
    }

    #[getter]
    fn is_matchgate(&self) -> bool {
        self.inner.is_matchgate()
    }

    #[getter]
    fn is_number_conserving(&self) -> bool {
        self.inner.is_number_conserving()
    }

    /// The hole coefficient this gate contributes per expansion site, in the
    /// network convention used by `PfSumTable.eval`.
    fn site_gamma(&self) -> PyResult<C64> {
        fermionize::site_gamma(&self.inner).map_err(to_py)
    }

    /// Simulation-cost extent (|c1| + |c2|)^2 of the two-branch Gaussian
    /// split; 1 for Matchgates, 1 + |sin(phi/2)| for fSim gates.
    fn extent(&self) -> PyResult<f64> {
        Ok(decomp::xi_split(&self.inner).map_err(to_py)?.extent())
    }

    fn __repr__(&self) -> String {
        format!(
            "PpuGate(matchgate={}, |gamma_det|={:.6})",
            self.inner.is_matchgate(),
            self.inner.gamma_det().norm()
        )
    }
}

/// A brick-wall circuit of two-qubit gates between two computational-basis
/// product states of even particle-number parity.
#[pyclass(frozen)]
#[derive(Clone)]
struct Circuit {
    inner: circuits::Circuit,
}

#[pymethods]
impl Circuit {
    /// Builds a circuit from explicit layers. Each layer is a list of
    /// (leftmost_qubit, gate) pairs; layers must follow the brick-wall
    /// pattern (disjoint nearest-neighbor placements of one parity per
    /// layer, alternating between consecutive non-empty layers).
    #[new]
    fn py_new(
        l: usize,
        layers: Vec<Vec<(usize, PpuGate)>>,
        psi_i: Vec<bool>,
        psi_f: Vec<bool>,
    ) -> PyResult<Self> {
        let layers = layers
            .into_iter()
            .map(|layer| {
                layer
                    .into_iter()
                    .map(|(leftmost, gate)| circuits::Placement { gate: gate.inner, leftmost })
                    .collect()
            })
            .collect();
        Ok(Self { inner: circuits::Circuit::new(l, layers, psi_i, psi_f).map_err(to_py)? })
    }

    /// First-order step circuit for nearest-neighbor hopping `t` plus
    /// density-density interaction `u` on odd bonds, `n` steps of size `dt`:
    /// per step, a Matchgate hopping layer on even bonds then fsim(t dt,
    /// u dt) on odd bonds. Boundaries default to the all-zero state.
    #[staticmethod]
    #[pyo3(signature = (l, n, t=1.0, u=1.7, dt=0.3))]
    fn trotter(l: usize, n: usize, t: f64, u: f64, dt: f64) -> PyResult<Self> {
        Ok(Self { inner: circuits::trotter_circuit(l, n, t, u, dt).map_err(to_py)? })
    }

    /// `d` repetitions of [fsim(theta, 0) on even bonds; fsim(theta, phi)
    /// on odd bonds]: the kicked version of the hopping-plus-interaction
    /// chain. Boundaries default to the all-zero state.
    #[staticmethod]
    fn floquet(l: usize, d: usize, theta: f64, phi: f64) -> PyResult<Self> {
        Ok(Self { inner: circuits::floquet_circuit(l, d, theta, phi).map_err(to_py)? })
    }

    /// Seeded brick-wall circuit of Haar-random Matchgates with `m` slots
    /// replaced by a planted gate: cphase(phi) when `phi` is given,
    /// otherwise Haar-random gates (optionally rejection-sampled to
    /// |gamma| <= gamma_cutoff). Boundaries default to the all-zero state.
    #[staticmethod]
    #[pyo3(signature = (l, d, m, seed, phi=None, gamma_cutoff=None))]
    fn random(
        l: usize,
        d: usize,
        m: usize,
        seed: u64,
        phi: Option<f64>,
        gamma_cutoff: Option<f64>,
    ) -> PyResult<Self> {
        let kind = match (phi, gamma_cutoff) {
            (Some(_), Some(_)) => {
                return Err(PyValueError::new_err(
                    "phi and gamma_cutoff are mutually exclusive: the planted family is \
                     either controlled-phase or Haar-random",
                ))
            }
            (Some(p), None) => circuits::Planted::Cphase(p),
            (None, cutoff) => circuits::Planted::RandomPpu(cutoff),
        };
        Ok(Self { inner: circuits::random_circuit(l, d, m, kind, seed).map_err(to_py)? })
    }

    /// Parses the lossless text format produced by `to_text`.
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Self { inner: circuits::Circuit::from_text(text).map_err(to_py)? })
    }

    /// Serializes the circuit to the lossless text format (exact float
    /// round-trip).
    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    /// Returns a copy with the given boundary bitstrings (both must have
    /// length `qubits` and even parity).
    fn with_boundaries(&self, psi_i: Vec<bool>, psi_f: Vec<bool>) -> PyResult<Self> {
        Ok(Self { inner: self.inner.clone().with_boundaries(psi_i, psi_f).map_err(to_py)? })
    }

    #[getter]
    fn qubits(&self) -> usize {
        self.inner.qubits()
    }

    #[getter]
    fn depth(&self) -> usize {
        self.inner.depth()
    }

    #[getter]
    fn gate_count(&self) -> usize {
        self.inner.gate_count()
    }

    /// Number of non-Matchgate placements (the expansion site count before
    /// boundary folding).
    #[getter]
    fn nonmg_count(&self) -> usize {
        self.inner.nonmg_count()
    }

    #[getter]
    fn psi_i(&self) -> Vec<bool> {
        self.inner.psi_i().to_vec()
    }

    #[getter]
    fn psi_f(&self) -> Vec<bool> {
        self.inner.psi_f().to_vec()
    }

    /// The layers as lists of (leftmost_qubit, gate) pairs.
    fn layers(&self) -> Vec<Vec<(usize, PpuGate)>> {
        self.inner
            .layers()
            .iter()
            .map(|layer| {
                layer.iter().map(|p| (p.leftmost, PpuGate { inner: p.gate.clone() })).collect()
            })
            .collect()
    }

    /// Hex digest identifying the Gaussian data of this circuit's expansion
    /// network. Circuits sharing the digest can reuse one `PfSumTable`.
    fn network_fingerprint(&self) -> PyResult<String> {
        let net = fermionize::build_network(&self.inner).map_err(to_py)?;
        Ok(hex32(&net.fingerprint()))
    }

    fn __repr__(&self) -> String {
        format!(
            "Circuit(qubits={}, depth={}, gates={}, non_matchgates={})",
            self.inner.qubits(),
            self.inner.depth(),
            self.inner.gate_count(),
            self.inner.nonmg_count()
        )
    }
}

/// Result of one contraction: the overlap value together with how much of
/// the expansion produced it.
#[pyclass(frozen)]
#[derive(Clone)]
struct ExpansionResult {
    inner: contract::ExpansionResult,
}

#[pymethods]
impl ExpansionResult {
    /// The overlap, or its truncated approximation.
    #[getter]
    fn value(&self) -> C64 {
        self.inner.value
    }

    /// Highest expansion order included.
    #[getter]
    fn order(&self) -> usize {
        self.inner.order
    }

    /// Number of live expansion sites (the effective m).
    #[getter]
    fn sites(&self) -> usize {
        self.inner.sites
    }

    /// Pfaffian evaluations performed.
    #[getter]
    fn terms(&self) -> u64 {
        self.inner.terms
    }

    /// Per-order contributions whose compensated sum is `value`; empty for
    /// the branch expansion, which has no order structure.
    #[getter]
    fn per_order(&self) -> Vec<C64> {
        self.inner.per_order.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "ExpansionResult(value=({:+.12e}{:+.12e}j), order={}, sites={}, terms={})",
            self.inner.value.re, self.inner.value.im, self.inner.order, self.inner.sites,
            self.inner.terms
        )
    }
}

/// An order-adaptive contraction together with its stopping certificate.
#[pyclass(frozen)]
#[derive(Clone)]
struct AdaptiveResult {
    inner: contract::AdaptiveResult,
}

#[pymethods]
impl AdaptiveResult {
    /// The accumulated expansion; its `order` is where the scan stopped.
    #[getter]
    fn result(&self) -> ExpansionResult {
        ExpansionResult { inner: self.inner.result.clone() }
    }

    /// True when every order was included (or provably zero), so the value
    /// is exact up to rounding.
    #[getter]
    fn is_exact(&self) -> bool {
        self.inner.certificate == contract::Certificate::Exact
    }

    /// Geometric tail estimate when the scan stopped early, None when the
    /// result is exact. A heuristic, not a bound.
    #[getter]
    fn estimated_rel_tail(&self) -> Option<f64> {
        match self.inner.certificate {
            contract::Certificate::Exact => None,
            contract::Certificate::Proxy { estimated_rel_tail } => Some(estimated_rel_tail),
        }
    }

    #[getter]
    fn target_rel_err(&self) -> f64 {
        self.inner.target_rel_err
    }

    /// Smallest truncation order whose prefix already meets the target
    /// relative to the accumulated value.
    #[getter]
    fn k_target(&self) -> usize {
        self.inner.k_target
    }

    fn __repr__(&self) -> String {
        format!(
            "AdaptiveResult(k_target={}, order={}, exact={})",
            self.inner.k_target,
            self.inner.result.order,
            self.inner.certificate == contract::Certificate::Exact
        )
    }
}

/// Per-order hole sums of one expansion network. Independent of the hole
/// coefficients, so one table serves every circuit whose Gaussian data
/// shares the fingerprint; for a uniform coefficient gamma the overlap is
/// `norm * sum_k gamma^k values[k]`.
#[pyclass(frozen)]
#[derive(Clone)]
struct PfSumTable {
    inner: contract::PfSumTable,
}

#[pymethods]
impl PfSumTable {
    /// Hex digest of the Gaussian data this table belongs to.
    #[getter]
    fn fingerprint(&self) -> String {
        hex32(&self.inner.fingerprint)
    }

    /// Scalar normalization of the network.
    #[getter]
    fn norm(&self) -> C64 {
        self.inner.norm
    }

    /// Live site count m.
    #[getter]
    fn sites(&self) -> usize {
        self.inner.sites
    }

    /// Highest tabulated order; the table is exact when this equals
    /// `sites`.
    #[getter]
    fn k_max(&self) -> usize {
        self.inner.values.len().saturating_sub(1)
    }

    /// The order sums themselves, orders 0..=k_max.
    #[getter]
    fn values(&self) -> Vec<C64> {
        self.inner.values.clone()
    }

    /// Evaluates the overlap at each uniform hole coefficient in `gammas`
    /// (site coefficients in the network convention, `PpuGate.site_gamma`).
    fn eval(&self, gammas: Vec<C64>) -> Vec<C64> {
        contract::eval_sweep(&self.inner, &gammas)
    }

    /// Writes the table to the binary table format.
    fn save(&self, path: &str) -> PyResult<()> {
        contract::save_table(std::path::Path::new(path), &self.inner).map_err(to_py)
    }

    /// Reads a table written by `save`.
    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        Ok(Self { inner: contract::load_table(std::path::Path::new(path)).map_err(to_py)? })
    }

    fn __repr__(&self) -> String {
        format!(
            "PfSumTable(sites={}, k_max={}, fingerprint={})",
            self.inner.sites,
            self.inner.values.len().saturating_sub(1),
            &hex32(&self.inner.fingerprint)[..16]
        )
    }
}

/// Additive split of a gate into its Gaussian (Matchgate) part plus the
/// quartic hole term: `gate = matchgate + n * gamma * |11><11|`.
#[pyclass(frozen)]
#[derive(Clone)]
struct GammaSplit {
    inner: decomp::GammaSplit,
}

#[pymethods]
impl GammaSplit {
    /// The Gaussian part; agrees with the gate everywhere except on the
    /// <11|.|11> element.
    #[getter]
    fn matchgate(&self) -> PpuGate {
        PpuGate { inner: self.inner.matchgate.clone() }
    }

    /// Vacuum amplitude <00|gate|00>.
    #[getter]
    fn n(&self) -> C64 {
        self.inner.n
    }

    /// Hole coefficient: n * gamma is the <11|.|11> gap to the Gaussian
    /// part, and n^2 * gamma = det a - det b.
    #[getter]
    fn gamma(&self) -> C64 {
        self.inner.gamma
    }

    fn __repr__(&self) -> String {
        format!("GammaSplit(|gamma|={:.6})", self.inner.gamma.norm())
    }
}

/// Two-branch Gaussian split `gate = c1 * b1 + c2 * b2` with both branches
/// unit-vacuum Matchgates rescaled by +-mu.
#[pyclass(frozen)]
#[derive(Clone)]
struct XiSplit {
    inner: decomp::XiSplit,
}

#[pymethods]
impl XiSplit {
    #[getter]
    fn c1(&self) -> C64 {
        self.inner.c1
    }

    #[getter]
    fn c2(&self) -> C64 {
        self.inner.c2
    }

    #[getter]
    fn b1(&self) -> PpuGate {
        PpuGate { inner: self.inner.b1.clone() }
    }

    #[getter]
    fn b2(&self) -> PpuGate {
        PpuGate { inner: self.inner.b2.clone() }
    }

    /// Branch rescaling factor, mu^2 = 1 + gamma / pf.
    #[getter]
    fn mu(&self) -> C64 {
        self.inner.mu
    }

    /// Squared coefficient 1-norm (|c1| + |c2|)^2, the simulation-cost
    /// extent when the branches are unitary.
    fn extent(&self) -> f64 {
        self.inner.extent()
    }

    fn __repr__(&self) -> String {
        format!("XiSplit(extent={:.6})", self.inner.extent())
    }
}

/// Reference overlap <psi_f| U |psi_i> by dense state-vector simulation.
/// Cost grows as 2^qubits; intended for validation at small sizes.
#[pyfunction]
fn overlap(circuit: &Circuit) -> PyResult<C64> {
    oracle::overlap(&circuit.inner).map_err(to_py)
}

/// Exact overlap through the hole expansion: all orders 0..=m over the live
/// expansion sites.
#[pyfunction]
fn contract_exact(circuit: &Circuit) -> PyResult<ExpansionResult> {
    Ok(ExpansionResult { inner: contract::contract_exact(&circuit.inner).map_err(to_py)? })
}

/// Order-truncated overlap: expansion orders 0..=k only.
#[pyfunction]
fn contract_truncated(circuit: &Circuit, k: usize) -> PyResult<ExpansionResult> {
    Ok(ExpansionResult { inner: contract::contract_truncated(&circuit.inner, k).map_err(to_py)? })
}

/// Exact overlap through the two-branch Gaussian expansion: 2^m Pfaffians
/// of full-size matrices instead of sum-over-orders hole minors.
#[pyfunction]
fn contract_xi(circuit: &Circuit) -> PyResult<ExpansionResult> {
    Ok(ExpansionResult { inner: contract::contract_xi(&circuit.inner).map_err(to_py)? })
}

/// Order-adaptive overlap: scans orders upward and stops once two
/// consecutive orders contribute below `target_rel_err` times the partial
/// sum, or the `budget` (estimated arithmetic operations) would be
/// exceeded. Raises RuntimeError when even the next order does not fit the
/// budget.
#[pyfunction]
#[pyo3(signature = (circuit, target_rel_err, budget=None))]
fn contract_adaptive(
    circuit: &Circuit,
    target_rel_err: f64,
    budget: Option<u128>,
) -> PyResult<AdaptiveResult> {
    let budget = budget.unwrap_or(contract::DEFAULT_BUDGET);
    Ok(AdaptiveResult {
        inner: contract::contract_adaptive(&circuit.inner, target_rel_err, budget)
            .map_err(to_py)?,
    })
}

/// Heuristic relative tail of a truncated expansion (geometric
/// extrapolation of the per-order decay); 0 when nothing was truncated.
#[pyfunction]
fn truncation_error(result: &ExpansionResult) -> f64 {
    contract::truncation_error(&result.inner)
}

/// Tabulates the per-order Pfaffian sums of the circuit's network up to
/// order `k_max` (clamped to the live site count).
#[pyfunction]
fn pfsum_table(circuit: &Circuit, k_max: usize) -> PyResult<PfSumTable> {
    Ok(PfSumTable { inner: contract::pfsum_table(&circuit.inner, k_max).map_err(to_py)? })
}

/// Exact particle-number truncation cutoff k_c of the circuit: expansion
/// orders above it vanish identically, so truncating there is exact.
/// Dynamic program over occupation patterns; raises RuntimeError above
/// MAX_CUTOFF_QUBITS qubits.
#[pyfunction]
fn cutoff_order(circuit: &Circuit) -> PyResult<usize> {
    contract::cutoff_order(&circuit.inner).map_err(to_py)
}

/// Estimated arithmetic operations for an order-k contraction with m live
/// sites on a dim-dimensional generating matrix:
/// sum_j C(m, j) (dim - 4j)^3 for j 0..=k, saturating.
#[pyfunction]
fn runtime_estimate(m: usize, k: usize, dim: usize) -> u128 {
    contract::runtime_estimate(m, k, dim)
}

/// Pfaffian of a complex antisymmetric matrix, given as a square nested
/// list; 1 for the empty matrix, 0 for odd dimensions by convention
/// (rejected here: the matrix must have even dimension).
#[pyfunction]
fn pfaffian_of(rows: Vec<Vec<C64>>) -> PyResult<C64> {
    let dim = rows.len();
    let mut data = Vec::with_capacity(dim * dim);
    for row in &rows {
        if row.len() != dim {
            return Err(PyValueError::new_err(format!(
                "matrix must be square: {dim} rows but a row of length {}",
                row.len()
            )));
        }
        data.extend_from_slice(row);
    }
    Ok(pfaffian::SkewMatrix::new(dim, data).map_err(to_py)?.pfaffian())
}

/// Additive Gaussian-plus-hole split of a gate.
#[pyfunction]
fn gamma_split(gate: &PpuGate) -> PyResult<GammaSplit> {
    Ok(GammaSplit { inner: decomp::gamma_split(&gate.inner).map_err(to_py)? })
}

/// Two-branch Gaussian split of a gate; raises ValueError when the gate's
/// coefficient-matrix Pfaffian (or the branch rescaling) is numerically
/// zero.
#[pyfunction]
fn xi_split(gate: &PpuGate) -> PyResult<XiSplit> {
    Ok(XiSplit { inner: decomp::xi_split(&gate.inner).map_err(to_py)? })
}

/// Closed-form two-branch split of the controlled-phase gate; both branches
/// are unitary single-qubit phase pairs.
#[pyfunction]
fn xi_split_cphase(phi: f64) -> XiSplit {
    XiSplit { inner: decomp::xi_split_cphase(phi) }
}

/// Extent of the fSim family, 1 + |sin(phi/2)|, independent of the hopping
/// angle.
#[pyfunction]
fn extent_fsim(phi: f64) -> f64 {
    decomp::extent_fsim(phi)
}

/// The two half-filling boundary bitstrings for chains with qubit count
/// divisible by 4: variant "h" is the domain wall `1..10..0`, variant "e"
/// the evenly spread `1010...`.
#[pyfunction]
fn half_filling(l: usize, variant: &str) -> PyResult<Vec<bool>> {
    let v = match variant.to_ascii_lowercase().as_str() {
        "h" => circuits::HalfFilling::H,
        "e" => circuits::HalfFilling::E,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown half-filling variant {other:?}: expected \"h\" or \"e\""
            )))
        }
    };
    circuits::half_filling_states(l, v).map_err(to_py)
}

#[pymodule]
fn ppsim_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PpuGate>()?;
    m.add_class::<Circuit>()?;
    m.add_class::<ExpansionResult>()?;
    m.add_class::<AdaptiveResult>()?;
    m.add_class::<PfSumTable>()?;
    m.add_class::<GammaSplit>()?;
    m.add_class::<XiSplit>()?;
    m.add_function(wrap_pyfunction!(overlap, m)?)?;
    m.add_function(wrap_pyfunction!(contract_exact, m)?)?;
    m.add_function(wrap_pyfunction!(contract_truncated, m)?)?;
    m.add_function(wrap_pyfunction!(contract_xi, m)?)?;
    m.add_function(wrap_pyfunction!(contract_adaptive, m)?)?;
    m.add_function(wrap_pyfunction!(truncation_error, m)?)?;
    m.add_function(wrap_pyfunction!(pfsum_table, m)?)?;
    m.add_function(wrap_pyfunction!(cutoff_order, m)?)?;
    m.add_function(wrap_pyfunction!(runtime_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(pfaffian_of, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_split, m)?)?;
    m.add_function(wrap_pyfunction!(xi_split, m)?)?;
    m.add_function(wrap_pyfunction!(xi_split_cphase, m)?)?;
    m.add_function(wrap_pyfunction!(extent_fsim, m)?)?;
    m.add_function(wrap_pyfunction!(half_filling, m)?)?;
    m.add("DEFAULT_BUDGET", contract::DEFAULT_BUDGET)?;
    m.add("MAX_CUTOFF_QUBITS", contract::MAX_CUTOFF_QUBITS)?;
    Ok(())
}
