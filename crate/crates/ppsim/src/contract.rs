//! The expansion engine: overlaps as sums of Pfaffians of hole-punched
//! minors of one generating matrix.
//!
//! [`build_network`] turns a circuit into a Gaussian part (the matrix M and
//! a scalar norm) plus one quartic site per non-Matchgate. Expanding each
//! site's quartic or not gives
//!
//!   c = norm · Σ_S (∏_{s∈S} γ_s) · Pf(M with the modes of S deleted),
//!
//! summed over subsets S of the live sites (sites with all four modes
//! surviving the boundary fold; a site that lost a mode contributes exactly
//! its Gaussian part). Per-gate modes are contiguous in the layer-major
//! numbering, so deleting a site's quadruple never changes the matching
//! parity and no reordering signs appear in the sum.
//!
//! Truncating at order k keeps |S| ≤ k. For circuits whose sites share one
//! hole coefficient γ (planted-cphase circuits, the fSim family at fixed
//! hopping), the order sums Σ_{|S|=k} Pf(M_S) are γ-independent, so a
//! [`PfSumTable`] computed once serves every γ: a parameter sweep costs one
//! table plus O(k) arithmetic per point. For number-conserving circuits,
//! orders beyond a reachability bound vanish identically; [`cutoff_order`]
//! computes that bound exactly by dynamic programming over occupations.
//!
//! All reductions are compensated (Neumaier) and chunked deterministically:
//! results are bit-identical for every worker-thread count.

use std::path::Path;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::circuits::Circuit;
use crate::fermionize::{build_network, Network};
use crate::pfaffian::PfaffianWorkspace;
use crate::{Error, Result};

/// Fixed chunk length of the deterministic parallel reduction. Terms are
/// summed in enumeration order within a chunk and chunks are combined in
/// index order.
const CHUNK: u64 = 512;

/// Default cost budget. The unit is one complex multiply-add in a Pfaffian
/// elimination inner loop, roughly dim³ per expansion term.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000_000;

/// Hard cap on the branch count of the two-branch expansion.
const MAX_XI_SITES: usize = 40;

/// Runs `f` inside a worker pool sized by the PPSIM_THREADS environment
/// variable when it is set, otherwise on the default pool. The reduction is
/// deterministic either way; the variable only controls resource use.
fn run_pooled<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    let threads = std::env::var("PPSIM_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n > 0);
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("worker pool construction cannot fail with a positive thread count")
            .install(f),
        None => f(),
    }
}

// --- compensated accumulation -------------------------------------------------

/// Neumaier compensated accumulator for one f64 lane.
#[derive(Clone, Copy, Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated complex accumulator.
#[derive(Clone, Copy, Default)]
struct CSum {
    re: Neumaier,
    im: Neumaier,
}

impl CSum {
    fn add(&mut self, z: C64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    fn value(&self) -> C64 {
        C64::new(self.re.value(), self.im.value())
    }
}

// --- subset enumeration --------------------------------------------------------

/// C(n, k), saturating at u128::MAX.
fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut res: u128 = 1;
    for i in 1..=k {
        // res · (n - k + i) is divisible by i at every step.
        match res.checked_mul((n - k + i) as u128) {
            Some(v) => res = v / i as u128,
            None => return u128::MAX,
        }
    }
    res
}

/// The rank-th k-subset of [0, m) as a bitmask, in increasing numeric
/// order. This is the same order Gosper's hack walks, so a chunk can seek
/// here and step locally.
fn unrank_subset(m: usize, k: usize, mut rank: u128) -> u64 {
    let mut word = 0u64;
    let mut kk = k;
    for p in (0..m).rev() {
        if kk == 0 {
            break;
        }
        let c = binomial(p, kk);
        if rank >= c {
            word |= 1u64 << p;
            rank -= c;
            kk -= 1;
        }
    }
    debug_assert_eq!(kk, 0, "rank out of range");
    word
}

/// Next k-subset bitmask in numeric order (Gosper's hack). Requires a
/// nonzero input word.
fn next_subset(w: u64) -> u64 {
    let c = w & w.wrapping_neg();
    let r = w + c;
    r | (((w ^ r) / c) >> 2)
}

// --- expansion core --------------------------------------------------------------

/// Result of one contraction.
#[derive(Clone, Debug)]
pub struct ExpansionResult {
    /// The overlap, or its truncated approximation.
    pub value: C64,
    /// Highest expansion order included.
    pub order: usize,
    /// Number of live expansion sites (the effective m; equal to the
    /// non-Matchgate count unless boundary zeros killed some sites).
    pub sites: usize,
    /// Pfaffian evaluations performed.
    pub terms: u64,
    /// Per-order contributions, normalization included; `value` is their
    /// compensated sum. Empty for the branch expansion, which has no order
    /// structure.
    pub per_order: Vec<C64>,
}

/// Per-site data of the expansion: compressed mode quadruple and hole
/// coefficient for each live site.
struct LiveSites {
    modes: Vec<[usize; 4]>,
    gammas: Vec<C64>,
}

fn live_sites(net: &Network) -> LiveSites {
    let mut modes = Vec::new();
    let mut gammas = Vec::new();
    for s in &net.sites {
        if s.modes.iter().all(Option::is_some) {
            modes.push(s.modes.map(Option::unwrap));
            gammas.push(s.gamma);
        }
    }
    LiveSites { modes, gammas }
}

/// Σ over k-subsets S of the live sites of weight(S)·Pf(M minus S's modes),
/// with weight(S) = ∏_{s∈S} weights[s]. Chunked, compensated, and
/// deterministic.
fn order_sum(mat: &crate::pfaffian::SkewMatrix, sites: &[[usize; 4]], weights: &[C64], k: usize) -> C64 {
    let m = sites.len();
    let dim = mat.dim();
    let total = binomial(m, k);
    debug_assert!(total < u64::MAX as u128, "order too large to enumerate");
    let total = total as u64;
    if total == 0 {
        return C64::new(0.0, 0.0);
    }
    let chunks = total.div_ceil(CHUNK);
    let partials: Vec<C64> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut ws = PfaffianWorkspace::new();
            let mut acc = CSum::default();
            let start = ci * CHUNK;
            let end = total.min(start + CHUNK);
            let mut word = unrank_subset(m, k, start as u128);
            let mut holes: Vec<usize> = Vec::with_capacity(4 * k);
            let mut keep: Vec<usize> = Vec::with_capacity(dim);
            for idx in start..end {
                holes.clear();
                let mut weight = C64::new(1.0, 0.0);
                let mut w = word;
                while w != 0 {
                    let s = w.trailing_zeros() as usize;
                    w &= w - 1;
                    weight *= weights[s];
                    holes.extend_from_slice(&sites[s]);
                }
                // Sites are layer-major and per-site modes ascending, so the
                // hole list is already sorted.
                debug_assert!(holes.windows(2).all(|p| p[0] < p[1]));
                keep.clear();
                let mut h = 0usize;
                for i in 0..dim {
                    if h < holes.len() && holes[h] == i {
                        h += 1;
                    } else {
                        keep.push(i);
                    }
                }
                acc.add(weight * ws.minor_pfaffian(mat, &keep));
                if idx + 1 < end {
                    word = next_subset(word);
                }
            }
            acc.value()
        })
        .collect();
    let mut out = CSum::default();
    for p in partials {
        out.add(p);
    }
    out.value()
}

/// Order-truncated contraction of an assembled network.
pub fn contract_network_truncated(net: &Network, k: usize) -> Result<ExpansionResult> {
    let live = live_sites(net);
    let m = live.modes.len();
    let k = k.min(m);
    run_pooled(|| {
        let mut per_order = Vec::with_capacity(k + 1);
        let mut value = CSum::default();
        let mut terms = 0u64;
        for j in 0..=k {
            let contribution =
                net.norm * order_sum(&net.m, &live.modes, &live.gammas, j);
            value.add(contribution);
            per_order.push(contribution);
            terms = terms.saturating_add(binomial(m, j).min(u64::MAX as u128) as u64);
        }
        Ok(ExpansionResult { value: value.value(), order: k, sites: m, terms, per_order })
    })
}

/// Order-truncated contraction: all hole subsets of size at most k.
pub fn contract_truncated(circuit: &Circuit, k: usize) -> Result<ExpansionResult> {
    contract_network_truncated(&build_network(circuit)?, k)
}

/// Exact contraction: every expansion order.
pub fn contract_exact(circuit: &Circuit) -> Result<ExpansionResult> {
    let net = build_network(circuit)?;
    contract_network_truncated(&net, net.sites.len())
}

// --- the two-branch expansion ----------------------------------------------------

/// Contraction through the two-branch Gaussian split: every live site is
/// replaced by one of its two Matchgate branches, giving 2^m fully Gaussian
/// networks whose Pfaffians are summed with the branch coefficients. Exact,
/// like [`contract_exact`], but with different cost scaling; it serves as an
/// independent cross-check of the hole expansion.
pub fn contract_network_xi(net: &Network) -> Result<ExpansionResult> {
    let live: Vec<usize> = net
        .sites
        .iter()
        .enumerate()
        .filter(|(_, s)| s.modes.iter().all(Option::is_some))
        .map(|(i, _)| i)
        .collect();
    let m = live.len();
    if m > MAX_XI_SITES {
        return Err(Error::BudgetExceeded {
            estimate: u128::MAX,
            budget: (MAX_XI_SITES as u128) << 1,
        });
    }
    // Per site: mode quadruple, branch scale ±μ, and branch weights c/n
    // (the per-gate normalization n is already inside net.norm).
    let mut modes = Vec::with_capacity(m);
    let mut mu = Vec::with_capacity(m);
    let mut weight = Vec::with_capacity(m);
    for &si in &live {
        let s = &net.sites[si];
        if s.pf.norm() <= 1e-12 {
            return Err(Error::SingularSplit {
                reason: format!(
                    "site at layer {}, qubit {}: coefficient-block Pfaffian is numerically zero",
                    s.layer, s.leftmost
                ),
            });
        }
        let m_s = (C64::new(1.0, 0.0) + s.gamma / s.pf).sqrt();
        if m_s.norm() <= 1e-12 {
            return Err(Error::SingularSplit {
                reason: format!(
                    "site at layer {}, qubit {}: branch rescaling factor is numerically zero",
                    s.layer, s.leftmost
                ),
            });
        }
        let inv = C64::new(1.0, 0.0) / m_s;
        let half = C64::new(0.5, 0.0);
        modes.push(s.modes.map(Option::unwrap));
        mu.push(m_s);
        weight.push([
            half * (C64::new(1.0, 0.0) + inv),
            half * (C64::new(1.0, 0.0) - inv),
        ]);
    }
    let dim = net.m.dim();
    let total = 1u64 << m;
    let chunks = total.div_ceil(CHUNK);
    let value = run_pooled(|| {
        let partials: Vec<C64> = (0..chunks)
            .into_par_iter()
            .map(|ci| {
                let mut ws = PfaffianWorkspace::new();
                let mut acc = CSum::default();
                for branch in ci * CHUNK..total.min((ci + 1) * CHUNK) {
                    let buf = ws.load_full(&net.m);
                    let mut coeff = C64::new(1.0, 0.0);
                    for s in 0..m {
                        let choice = (branch >> s & 1) as usize;
                        coeff *= weight[s][choice];
                        let scale = if choice == 0 { mu[s] } else { -mu[s] };
                        let q = &modes[s];
                        for a in 0..4 {
                            for b in (a + 1)..4 {
                                buf[q[a] * dim + q[b]] *= scale;
                                buf[q[b] * dim + q[a]] *= scale;
                            }
                        }
                    }
                    acc.add(coeff * ws.eval(dim));
                }
                acc.value()
            })
            .collect();
        let mut out = CSum::default();
        for p in partials {
            out.add(p);
        }
        out.value()
    });
    Ok(ExpansionResult {
        value: net.norm * value,
        order: m,
        sites: m,
        terms: total,
        per_order: Vec::new(),
    })
}

/// Circuit-level entry point for [`contract_network_xi`].
pub fn contract_xi(circuit: &Circuit) -> Result<ExpansionResult> {
    contract_network_xi(&build_network(circuit)?)
}

// --- cost model -------------------------------------------------------------------

/// Rough cost of an order-k contraction with m live sites on a dim-mode
/// matrix: Σ_{j≤k} C(m,j)·(dim−4j)³, saturating. The unit matches
/// [`DEFAULT_BUDGET`].
pub fn runtime_estimate(m: usize, k: usize, dim: usize) -> u128 {
    let mut total: u128 = 0;
    for j in 0..=k.min(m) {
        let d = dim.saturating_sub(4 * j) as u128;
        let cost = d * d * d;
        total = total.saturating_add(binomial(m, j).saturating_mul(cost.max(1)));
    }
    total
}

/// Rejects jobs whose [`runtime_estimate`] exceeds the budget.
pub fn check_budget(m: usize, k: usize, dim: usize, budget: u128) -> Result<()> {
    let estimate = runtime_estimate(m, k, dim);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    Ok(())
}

// --- adaptive truncation -------------------------------------------------------------

/// What an adaptive contraction can promise about its value.
#[derive(Clone, Debug, PartialEq)]
pub enum Certificate {
    /// Every order was included (or provably zero): exact up to rounding.
    Exact,
    /// Stopped early; the tail estimate is a geometric extrapolation of the
    /// observed per-order decay, a heuristic rather than a bound.
    Proxy { estimated_rel_tail: f64 },
}

/// An order-adaptive contraction with its stopping certificate.
#[derive(Clone, Debug)]
pub struct AdaptiveResult {
    /// The full accumulated expansion (its `order` is where the scan
    /// stopped, two confirmation orders past the last significant one).
    pub result: ExpansionResult,
    pub certificate: Certificate,
    pub target_rel_err: f64,
    /// Smallest truncation order whose prefix already meets the target
    /// relative to the accumulated value: the reported k_t. At most
    /// `result.order`.
    pub k_target: usize,
}

/// Heuristic relative tail of a truncated expansion: geometric
/// extrapolation of the last two nonzero per-order magnitudes, capped by
/// "remaining orders times the last magnitude". Returns 0 when nothing was
/// truncated and infinity when the accumulated value is 0 but the tail is
/// not.
pub fn truncation_error(result: &ExpansionResult) -> f64 {
    if result.order >= result.sites || result.per_order.is_empty() {
        return 0.0;
    }
    let remaining = (result.sites - result.order) as f64;
    let Some(last_nz) = result.per_order.iter().rposition(|c| c.norm() > 0.0) else {
        return 0.0;
    };
    let mag = result.per_order[last_nz].norm();
    let ratio = if last_nz > 0 {
        let prev = result.per_order[last_nz - 1].norm();
        if prev > 0.0 {
            mag / prev
        } else {
            1.0
        }
    } else {
        1.0
    };
    let tail = if ratio < 1.0 {
        (mag * ratio / (1.0 - ratio)).min(mag * remaining)
    } else {
        mag * remaining
    };
    let scale = result.value.norm();
    if scale == 0.0 {
        if tail == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        tail / scale
    }
}

/// Grows the truncation order until the last two order contributions fall
/// below the target relative to the accumulated value, or the expansion is
/// exhausted. Fails with a budget error if the next needed order would
/// exceed `budget` cumulative cost.
pub fn contract_adaptive(
    circuit: &Circuit,
    target_rel_err: f64,
    budget: u128,
) -> Result<AdaptiveResult> {
    if !target_rel_err.is_finite() || target_rel_err <= 0.0 {
        return Err(Error::Config(format!(
            "adaptive contraction needs a positive relative-error target, got {target_rel_err}"
        )));
    }
    let net = build_network(circuit)?;
    let live = live_sites(&net);
    let m = live.modes.len();
    let dim = net.m.dim();
    run_pooled(|| {
        let mut per_order: Vec<C64> = Vec::new();
        let mut value = CSum::default();
        let mut terms = 0u64;
        let mut spent: u128 = 0;
        let mut small_streak = 0usize;
        let mut order = 0usize;
        for j in 0..=m {
            let d = dim.saturating_sub(4 * j) as u128;
            let cost = binomial(m, j).saturating_mul((d * d * d).max(1));
            spent = spent.saturating_add(cost);
            if spent > budget {
                return Err(Error::BudgetExceeded { estimate: spent, budget });
            }
            let contribution = net.norm * order_sum(&net.m, &live.modes, &live.gammas, j);
            value.add(contribution);
            per_order.push(contribution);
            terms = terms.saturating_add(binomial(m, j).min(u64::MAX as u128) as u64);
            order = j;
            if j >= 1 {
                if contribution.norm() <= target_rel_err * value.value().norm() {
                    small_streak += 1;
                } else {
                    small_streak = 0;
                }
                // Two consecutive negligible orders guard against a single
                // accidental zero (parity effects can null one order).
                if small_streak >= 2 {
                    break;
                }
            }
        }
        let result =
            ExpansionResult { value: value.value(), order, sites: m, terms, per_order };
        let certificate = if order >= m {
            Certificate::Exact
        } else {
            Certificate::Proxy { estimated_rel_tail: truncation_error(&result) }
        };
        // Reported k_t: smallest prefix already within the target of the
        // accumulated value (which the stopping rule certifies as the
        // reference, exactly or as the higher-order proxy).
        let mut k_target = order;
        let mut tail = C64::new(0.0, 0.0);
        let bound = target_rel_err * result.value.norm();
        for k in (0..order).rev() {
            tail += result.per_order[k + 1];
            if tail.norm() <= bound {
                k_target = k;
            } else {
                break;
            }
        }
        Ok(AdaptiveResult { result, certificate, target_rel_err, k_target })
    })
}

// --- per-order tables and sweeps --------------------------------------------------------

/// Per-order hole sums of one network: `values[k] = Σ_{|S|=k} Pf(M_S)` over
/// k-subsets of the live sites. The table is independent of the hole
/// coefficients, so it serves every circuit sharing the network fingerprint;
/// for uniform per-site γ the overlap is `norm · Σ_k γ^k values[k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PfSumTable {
    /// [`Network::fingerprint`] of the Gaussian data this table belongs to.
    pub fingerprint: [u8; 32],
    /// Scalar normalization of that network.
    pub norm: C64,
    /// Live site count m.
    pub sites: usize,
    /// Order sums 0..=k_max; exact when k_max = m, truncated otherwise.
    pub values: Vec<C64>,
}

/// Tabulates the per-order Pfaffian sums of a network up to order k_max
/// (clamped to the live site count).
pub fn pfsum_table_network(net: &Network, k_max: usize) -> Result<PfSumTable> {
    let live = live_sites(net);
    let m = live.modes.len();
    let k_max = k_max.min(m);
    let ones = vec![C64::new(1.0, 0.0); m];
    run_pooled(|| {
        let values: Vec<C64> =
            (0..=k_max).map(|k| order_sum(&net.m, &live.modes, &ones, k)).collect();
        Ok(PfSumTable { fingerprint: net.fingerprint(), norm: net.norm, sites: m, values })
    })
}

/// Circuit-level entry point for [`pfsum_table_network`].
pub fn pfsum_table(circuit: &Circuit, k_max: usize) -> Result<PfSumTable> {
    pfsum_table_network(&build_network(circuit)?, k_max)
}

/// Evaluates the uniform-γ expansion at many hole coefficients:
/// `c_j = norm · Σ_k γ_j^k · values[k]`, O(k_max) arithmetic per point.
/// The γ values must be site coefficients in the network convention (see
/// `fermionize::site_gamma`). This is the sweep fast path for families whose
/// Gaussian part does not move with the swept parameter, such as the fSim
/// family swept in φ at fixed hopping.
pub fn eval_sweep(table: &PfSumTable, gammas: &[C64]) -> Vec<C64> {
    gammas
        .iter()
        .map(|&g| {
            let mut acc = CSum::default();
            let mut p = C64::new(1.0, 0.0);
            for &v in &table.values {
                acc.add(v * p);
                p *= g;
            }
            table.norm * acc.value()
        })
        .collect()
}

// --- table files ----------------------------------------------------------------------

const TABLE_MAGIC: &[u8; 4] = b"PFSM";
const TABLE_VERSION: u32 = 1;

/// Serializes a table to the PFSM binary format: magic "PFSM", version,
/// fingerprint, norm, site count, k_max, then the order sums as little-
/// endian f64 pairs.
pub fn save_table(path: &Path, table: &PfSumTable) -> Result<()> {
    let mut bytes = Vec::with_capacity(72 + 16 * table.values.len());
    bytes.extend_from_slice(TABLE_MAGIC);
    bytes.extend_from_slice(&TABLE_VERSION.to_le_bytes());
    bytes.extend_from_slice(&table.fingerprint);
    bytes.extend_from_slice(&table.norm.re.to_le_bytes());
    bytes.extend_from_slice(&table.norm.im.to_le_bytes());
    bytes.extend_from_slice(&(table.sites as u64).to_le_bytes());
    bytes.extend_from_slice(&(table.values.len() as u64 - 1).to_le_bytes());
    for v in &table.values {
        bytes.extend_from_slice(&v.re.to_le_bytes());
        bytes.extend_from_slice(&v.im.to_le_bytes());
    }
    std::fs::write(path, bytes)?;
    Ok(())
}

/// Reads a PFSM table back. The caller should compare the fingerprint
/// against the target network before using it.
pub fn load_table(path: &Path) -> Result<PfSumTable> {
    let bytes = std::fs::read(path)?;
    let fail = |message: &str| Error::Config(format!("{}: {message}", path.display()));
    if bytes.len() < 72 {
        return Err(fail("table file is truncated"));
    }
    if &bytes[0..4] != TABLE_MAGIC {
        return Err(fail("not a PFSM table file (bad magic)"));
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != TABLE_VERSION {
        return Err(fail(&format!("unsupported table version {version}")));
    }
    let mut fingerprint = [0u8; 32];
    fingerprint.copy_from_slice(&bytes[8..40]);
    let f64_at = |off: usize| f64::from_le_bytes(bytes[off..off + 8].try_into().unwrap());
    let norm = C64::new(f64_at(40), f64_at(48));
    let sites = u64::from_le_bytes(bytes[56..64].try_into().unwrap()) as usize;
    let k_max = u64::from_le_bytes(bytes[64..72].try_into().unwrap()) as usize;
    let need = 72 + 16 * (k_max + 1);
    if bytes.len() != need {
        return Err(fail(&format!(
            "table body has {} bytes, expected {need}",
            bytes.len()
        )));
    }
    let values = (0..=k_max)
        .map(|k| C64::new(f64_at(72 + 16 * k), f64_at(80 + 16 * k)))
        .collect();
    Ok(PfSumTable { fingerprint, norm, sites, values })
}

// --- particle-number cutoffs --------------------------------------------------------------

/// Largest number of qubits the occupation-reachability analysis handles.
pub const MAX_CUTOFF_QUBITS: usize = 22;

/// Exact vanishing threshold of the hole expansion: every order above the
/// returned k has PfSum identically zero, because no occupation history
/// consistent with the gates and boundaries makes more than k non-Matchgate
/// sites simultaneously fully occupied (the quartic only fires on a fully
/// occupied site). Computed by dynamic programming over occupation
/// bitmasks; matrix elements below 1e-12 count as forbidden transitions.
///
/// The bound is tight in the generic case but is in any case an upper
/// bound: truncating there is exact. Returns 0 when the final state is
/// unreachable at all (the overlap itself is exactly 0).
pub fn cutoff_order(circuit: &Circuit) -> Result<usize> {
    let l = circuit.qubits();
    if l > MAX_CUTOFF_QUBITS {
        return Err(Error::ResourceLimit { l, cap: MAX_CUTOFF_QUBITS });
    }
    let nstates = 1usize << l;
    const DEAD: i32 = i32::MIN;
    let bit_index = |bits: &[bool]| -> usize {
        bits.iter().enumerate().fold(0usize, |acc, (q, &b)| acc | ((b as usize) << q))
    };
    let mut dp = vec![DEAD; nstates];
    dp[bit_index(circuit.psi_i())] = 0;
    let mut next = vec![DEAD; nstates];
    for layer in circuit.layers() {
        for p in layer {
            let q = p.leftmost;
            let dense = p.gate.dense();
            let hole_candidate = !p.gate.is_matchgate();
            // Allowed local transitions with their hole credit.
            let mut moves: [Vec<(usize, i32)>; 4] = Default::default();
            for (out, row) in dense.iter().enumerate() {
                for (inp, amp) in row.iter().enumerate() {
                    if amp.norm() <= 1e-12 {
                        continue;
                    }
                    let credit = (hole_candidate && inp == 3 && out == 3) as i32;
                    moves[inp].push((out, credit));
                }
            }
            next.fill(DEAD);
            for (state, &best) in dp.iter().enumerate() {
                if best == DEAD {
                    continue;
                }
                // Local input index in the dense convention: first qubit of
                // the pair is the high bit.
                let b1 = state >> q & 1;
                let b2 = state >> (q + 1) & 1;
                let inp = (b1 << 1) | b2;
                let rest = state & !(0b11 << q);
                for &(out, credit) in &moves[inp] {
                    let s2 = rest | ((out >> 1) << q) | ((out & 1) << (q + 1));
                    let cand = best + credit;
                    if cand > next[s2] {
                        next[s2] = cand;
                    }
                }
            }
            std::mem::swap(&mut dp, &mut next);
        }
    }
    let reached = dp[bit_index(circuit.psi_f())];
    Ok(if reached == DEAD { 0 } else { reached as usize })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{
        floquet_circuit, half_filling_states, trotter_circuit, HalfFilling, Placement, Planted,
    };
    use crate::fermionize::site_gamma;
    use crate::pfaffian::SkewMatrix;
    use crate::{gates, oracle};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rel_err(x: C64, reference: C64) -> f64 {
        (x - reference).norm() / reference.norm().max(1e-300)
    }

    /// Random even-parity bitstring.
    fn random_even_bits(rng: &mut ChaCha8Rng, l: usize) -> Vec<bool> {
        let mut bits: Vec<bool> = (0..l).map(|_| rng.gen_bool(0.5)).collect();
        if bits.iter().filter(|&&b| b).count() % 2 == 1 {
            let q = rng.gen_range(0..l);
            bits[q] = !bits[q];
        }
        bits
    }

    #[test]
    fn subset_enumeration_is_consistent() {
        for m in 0..=10usize {
            for k in 0..=m {
                let total = binomial(m, k) as u64;
                let mut word = unrank_subset(m, k, 0);
                for rank in 0..total {
                    assert_eq!(word.count_ones() as usize, k);
                    assert_eq!(word, unrank_subset(m, k, rank as u128), "m={m} k={k} r={rank}");
                    if rank + 1 < total {
                        let nxt = next_subset(word);
                        assert!(nxt > word);
                        word = nxt;
                    }
                }
            }
        }
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn exact_contraction_matches_the_dense_simulator_exhaustively() {
        // Every circuit shape up to 5 qubits and depth 3, random gates,
        // random even-parity boundaries on both sides. This is the
        // end-to-end validation of the whole sign construction at sizes
        // beyond the per-configuration solver.
        let mut rng = ChaCha8Rng::seed_from_u64(401);
        let mut checked = 0usize;
        for l in 2..=5usize {
            for d in 0..=3usize {
                for off0 in 0..=1usize {
                    let mut layers = Vec::new();
                    for li in 0..d {
                        let off = (off0 + li) % 2;
                        let mut layer = Vec::new();
                        let mut q = off;
                        while q + 1 < l {
                            // Two thirds non-Matchgates, one third Matchgates,
                            // so both site kinds appear everywhere.
                            let gate = if rng.gen_range(0..3) == 0 {
                                gates::random_matchgate(&mut rng)
                            } else {
                                gates::random_ppu(&mut rng, None).unwrap()
                            };
                            layer.push(Placement { gate, leftmost: q });
                            q += 2;
                        }
                        layers.push(layer);
                    }
                    for _ in 0..4 {
                        let psi_i = random_even_bits(&mut rng, l);
                        let psi_f = random_even_bits(&mut rng, l);
                        let Ok(c) = crate::circuits::Circuit::new(
                            l,
                            layers.clone(),
                            psi_i,
                            psi_f,
                        ) else {
                            continue;
                        };
                        let want = oracle::overlap(&c).unwrap();
                        let got = contract_exact(&c).unwrap().value;
                        assert!(
                            (got - want).norm() <= 1e-9 * (1.0 + want.norm()),
                            "l={l} d={d} off0={off0}: {got} vs {want}"
                        );
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 100, "exercised only {checked} circuits");
    }

    #[test]
    fn random_larger_circuits_match_the_dense_simulator() {
        // Bigger shapes with mixed planted gates and half-filling-like
        // boundaries; moderate count to keep the suite fast.
        for (seed, l, d, m) in [(1u64, 8, 4, 3), (2, 7, 5, 4), (3, 10, 3, 2), (4, 6, 6, 5)] {
            let base = crate::circuits::random_circuit(l, d, m, Planted::RandomPpu(None), seed)
                .unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xABCD);
            let c = base
                .with_boundaries(random_even_bits(&mut rng, l), random_even_bits(&mut rng, l))
                .unwrap();
            let want = oracle::overlap(&c).unwrap();
            let exact = contract_exact(&c).unwrap();
            assert!(
                (exact.value - want).norm() <= 1e-9 * (1.0 + want.norm()),
                "seed {seed}: {} vs {want}",
                exact.value
            );
            // The per-order pieces really partition the exact value.
            let resummed: C64 = exact.per_order.iter().sum();
            assert!((resummed - exact.value).norm() <= 1e-12 * (1.0 + exact.value.norm()));
        }
    }

    #[test]
    fn truncation_is_a_prefix_of_the_exact_expansion() {
        let c = crate::circuits::random_circuit(8, 4, 4, Planted::RandomPpu(None), 77).unwrap();
        let exact = contract_exact(&c).unwrap();
        for k in 0..=exact.sites {
            let t = contract_truncated(&c, k).unwrap();
            assert_eq!(t.order, k);
            assert_eq!(t.per_order.len(), k + 1);
            for j in 0..=k {
                assert_eq!(t.per_order[j], exact.per_order[j], "order {j} of k={k}");
            }
        }
        // Asking beyond the live site count clamps.
        let over = contract_truncated(&c, exact.sites + 5).unwrap();
        assert_eq!(over.order, exact.sites);
        assert_eq!(over.value, exact.value);
    }

    #[test]
    fn branch_expansion_agrees_with_the_hole_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(501);
        for (seed, l, d, m) in [(11u64, 6, 3, 3), (12, 8, 4, 4), (13, 5, 4, 3)] {
            let c = crate::circuits::random_circuit(l, d, m, Planted::RandomPpu(None), seed)
                .unwrap()
                .with_boundaries(random_even_bits(&mut rng, l), random_even_bits(&mut rng, l))
                .unwrap();
            let gamma = contract_exact(&c).unwrap();
            let xi = contract_xi(&c).unwrap();
            let want = oracle::overlap(&c).unwrap();
            assert!((gamma.value - want).norm() <= 1e-9 * (1.0 + want.norm()));
            assert!(
                (xi.value - gamma.value).norm() <= 1e-9 * (1.0 + gamma.value.norm()),
                "seed {seed}: xi {} vs gamma {}",
                xi.value,
                gamma.value
            );
            assert_eq!(xi.terms, 1 << xi.sites);
        }
    }

    #[test]
    fn single_hole_circuit_reduces_to_two_pfaffians() {
        // One CZ on |11⟩ boundaries: c = norm·(Pf M + γ·Pf M_holed), and the
        // value must match the dense simulator (here, ⟨11|CZ|11⟩ = -1).
        let c = crate::circuits::Circuit::new(
            2,
            vec![vec![Placement { gate: gates::cz(), leftmost: 0 }]],
            vec![true, true],
            vec![true, true],
        )
        .unwrap();
        let net = build_network(&c).unwrap();
        assert_eq!(net.sites.len(), 1);
        let gamma = net.sites[0].gamma;
        let full = net.m.pfaffian();
        let holed = net.m.delete_modes(&[0, 1, 2, 3]).unwrap().pfaffian();
        let manual = net.norm * (full + gamma * holed);
        let engine = contract_exact(&c).unwrap().value;
        assert!((manual - engine).norm() < 1e-14);
        assert!((engine - C64::new(-1.0, 0.0)).norm() < 1e-12);
        assert_eq!(contract_exact(&c).unwrap().terms, 2);
    }

    #[test]
    fn matchgate_circuits_need_one_pfaffian() {
        let mut rng = ChaCha8Rng::seed_from_u64(601);
        for seed in 0..8u64 {
            let l = rng.gen_range(3..9);
            let d = rng.gen_range(1..5);
            let c = crate::circuits::random_circuit(l, d, 0, Planted::RandomPpu(None), seed)
                .unwrap()
                .with_boundaries(random_even_bits(&mut rng, l), random_even_bits(&mut rng, l))
                .unwrap();
            let r = contract_exact(&c).unwrap();
            assert_eq!(r.sites, 0);
            assert_eq!(r.terms, 1);
            let want = oracle::overlap(&c).unwrap();
            assert!((r.value - want).norm() <= 1e-10 * (1.0 + want.norm()));
        }
    }

    #[test]
    fn sweep_table_reproduces_per_point_contraction() {
        // Planted-cphase circuit: the Gaussian data is φ-independent, so one
        // table serves every φ, and the fingerprints agree across φ.
        let l = 8;
        let (d, m, seed) = (4, 5, 909);
        let phis: Vec<f64> = (0..12).map(|j| -2.6 + j as f64 * 0.45).collect();
        let table = {
            let c = crate::circuits::random_circuit(l, d, m, Planted::Cphase(phis[0]), seed)
                .unwrap()
                .with_boundaries(
                    half_filling_states(l, HalfFilling::H).unwrap(),
                    half_filling_states(l, HalfFilling::H).unwrap(),
                )
                .unwrap();
            pfsum_table(&c, m).unwrap()
        };
        let gammas: Vec<C64> =
            phis.iter().map(|&p| site_gamma(&gates::cphase(p)).unwrap()).collect();
        let swept = eval_sweep(&table, &gammas);
        for (j, &phi) in phis.iter().enumerate() {
            let c = crate::circuits::random_circuit(l, d, m, Planted::Cphase(phi), seed)
                .unwrap()
                .with_boundaries(
                    half_filling_states(l, HalfFilling::H).unwrap(),
                    half_filling_states(l, HalfFilling::H).unwrap(),
                )
                .unwrap();
            let net = build_network(&c).unwrap();
            assert_eq!(net.fingerprint(), table.fingerprint, "phi {phi}");
            let direct = contract_network_truncated(&net, net.sites.len()).unwrap().value;
            assert!(
                (swept[j] - direct).norm() <= 1e-12 * (1.0 + direct.norm()),
                "phi {phi}: {} vs {direct}",
                swept[j]
            );
            let want = oracle::overlap(&c).unwrap();
            assert!((direct - want).norm() <= 1e-9 * (1.0 + want.norm()));
        }
    }

    #[test]
    fn tables_round_trip_through_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sums.pfsm");
        let c = crate::circuits::random_circuit(6, 3, 3, Planted::Cphase(0.9), 4242).unwrap();
        let table = pfsum_table(&c, 3).unwrap();
        save_table(&path, &table).unwrap();
        let back = load_table(&path).unwrap();
        assert_eq!(table, back);
        // Corrupted magic is rejected.
        let mut bytes = std::fs::read(&path).unwrap();
        bytes[0] = b'X';
        std::fs::write(&path, &bytes).unwrap();
        assert!(matches!(load_table(&path), Err(Error::Config(_))));
        // Truncated body is rejected.
        let bytes = std::fs::read(&path).unwrap();
        std::fs::write(&path, &bytes[..bytes.len() - 8]).unwrap();
        assert!(matches!(load_table(&path), Err(Error::Config(_))));
    }

    #[test]
    fn adaptive_contraction_hits_its_target_and_certifies() {
        // Weak interactions decay fast in expansion order (and number
        // conservation nulls everything past the reachability bound), so
        // adaptive stops early and still meets the target against exact.
        let bits = half_filling_states(8, HalfFilling::H).unwrap();
        let c = floquet_circuit(8, 3, 0.7, 0.25)
            .unwrap()
            .with_boundaries(bits.clone(), bits)
            .unwrap();
        let exact = contract_exact(&c).unwrap();
        let a = contract_adaptive(&c, 1e-8, DEFAULT_BUDGET).unwrap();
        assert!(a.result.order < a.result.sites, "expected an early stop");
        assert!(matches!(a.certificate, Certificate::Proxy { .. }));
        assert!(rel_err(a.result.value, exact.value) < 1e-6);
        // The reported k_t is the smallest truncation meeting the target
        // against the exact value.
        assert!(a.k_target <= a.result.order);
        let prefix =
            |k: usize| a.result.per_order[..=k].iter().sum::<C64>();
        assert!(rel_err(prefix(a.k_target), exact.value) <= 1e-8 * 1.001);
        if a.k_target > 0 {
            assert!(rel_err(prefix(a.k_target - 1), exact.value) > 1e-8);
        }
        // A loose target stops no later than a tight one.
        let loose = contract_adaptive(&c, 1e-2, DEFAULT_BUDGET).unwrap();
        assert!(loose.result.order <= a.result.order);
        // On a circuit without exact particle-number zeros, an unreachable
        // target runs the expansion to exhaustion and certifies exactness.
        let mut rng = ChaCha8Rng::seed_from_u64(905);
        let g = crate::circuits::random_circuit(6, 3, 4, Planted::RandomPpu(None), 905)
            .unwrap()
            .with_boundaries(random_even_bits(&mut rng, 6), random_even_bits(&mut rng, 6))
            .unwrap();
        let g_exact = contract_exact(&g).unwrap();
        let full = contract_adaptive(&g, 1e-16, DEFAULT_BUDGET).unwrap();
        assert_eq!(full.certificate, Certificate::Exact);
        assert_eq!(full.result.value, g_exact.value);
        // Zero or negative targets are rejected.
        assert!(matches!(
            contract_adaptive(&c, 0.0, DEFAULT_BUDGET),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn budget_guard_trips_before_large_jobs() {
        assert!(check_budget(4, 2, 40, DEFAULT_BUDGET).is_ok());
        match check_budget(30, 15, 200, 1_000_000) {
            Err(Error::BudgetExceeded { estimate, budget }) => {
                assert!(estimate > budget);
            }
            other => panic!("expected a budget error, got {other:?}"),
        }
        let c = floquet_circuit(8, 3, 0.7, 1.3).unwrap();
        match contract_adaptive(&c, 1e-12, 10) {
            Err(Error::BudgetExceeded { .. }) => {}
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn worker_count_does_not_change_bits() {
        let c = crate::circuits::random_circuit(8, 5, 5, Planted::RandomPpu(None), 31415).unwrap();
        let run = |threads: &str| {
            std::env::set_var("PPSIM_THREADS", threads);
            let r = contract_exact(&c).unwrap();
            std::env::remove_var("PPSIM_THREADS");
            (r.value, r.per_order)
        };
        let (v1, p1) = run("1");
        let (v4, p4) = run("4");
        assert_eq!(v1.re.to_bits(), v4.re.to_bits());
        assert_eq!(v1.im.to_bits(), v4.im.to_bits());
        assert_eq!(p1.len(), p4.len());
        for (a, b) in p1.iter().zip(&p4) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn cutoff_bound_is_respected_by_the_order_sums() {
        // Hopping-chain circuits at half filling: orders above the
        // reachability bound vanish identically, and the bound follows the
        // closed-form pattern (L/4 − 1)·n for the domain wall and
        // (L/4)·(n − 1) for the evenly spread state.
        for l in [8usize, 12] {
            for n in 1..=2usize {
                let c = trotter_circuit(l, n, 1.0, 1.7, 0.3).unwrap();
                for variant in [HalfFilling::H, HalfFilling::E] {
                    let bits = half_filling_states(l, variant).unwrap();
                    let c = c.clone().with_boundaries(bits.clone(), bits).unwrap();
                    let kc = cutoff_order(&c).unwrap();
                    let expect = match variant {
                        HalfFilling::H => (l / 4 - 1) * n,
                        HalfFilling::E => (l / 4) * (n - 1),
                    };
                    assert_eq!(kc, expect, "l={l} n={n} {variant:?}");
                    let net = build_network(&c).unwrap();
                    let m_live = net
                        .sites
                        .iter()
                        .filter(|s| s.modes.iter().all(Option::is_some))
                        .count();
                    let table = pfsum_table_network(&net, m_live).unwrap();
                    let scale = table
                        .values
                        .iter()
                        .map(|v| v.norm())
                        .fold(0.0_f64, f64::max)
                        .max(1.0);
                    for (k, v) in table.values.iter().enumerate() {
                        if k > kc {
                            assert!(
                                v.norm() <= 1e-12 * scale,
                                "l={l} n={n} {variant:?}: order {k} = {v} above cutoff {kc}"
                            );
                        }
                    }
                    // The bound is tight here: the last allowed order is
                    // populated (generic angles).
                    if kc > 0 && kc < table.values.len() {
                        assert!(table.values[kc].norm() > 1e-12 * scale);
                    }
                }
            }
        }
    }

    #[test]
    fn cutoff_handles_unreachable_and_oversized_inputs() {
        // Number-conserving circuit between states of different particle
        // number: the final state is unreachable.
        let c = floquet_circuit(4, 1, 0.9, 0.7)
            .unwrap()
            .with_boundaries(vec![true, true, false, false], vec![false; 4])
            .unwrap();
        assert_eq!(cutoff_order(&c).unwrap(), 0);
        assert!((oracle::overlap(&c).unwrap()).norm() < 1e-14);
        assert!((contract_exact(&c).unwrap().value).norm() < 1e-14);
        let big = crate::circuits::Circuit::new(
            MAX_CUTOFF_QUBITS + 2,
            vec![],
            vec![false; MAX_CUTOFF_QUBITS + 2],
            vec![false; MAX_CUTOFF_QUBITS + 2],
        )
        .unwrap();
        assert!(matches!(cutoff_order(&big), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn runtime_estimates_scale_and_saturate() {
        assert_eq!(runtime_estimate(0, 0, 10), 1000);
        // Adding orders only adds cost.
        assert!(runtime_estimate(8, 3, 60) < runtime_estimate(8, 4, 60));
        // Terms with dim clamped to zero still count at least one unit each.
        assert_eq!(runtime_estimate(2, 1, 4), 64 + 2);
        assert_eq!(runtime_estimate(200, 100, 4), u128::MAX);
    }

    #[test]
    fn truncation_error_reports_sane_tails() {
        let exact = ExpansionResult {
            value: C64::new(1.0, 0.0),
            order: 3,
            sites: 3,
            terms: 8,
            per_order: vec![C64::new(1.0, 0.0); 4],
        };
        assert_eq!(truncation_error(&exact), 0.0);
        let truncated = ExpansionResult {
            value: C64::new(1.0, 0.0),
            order: 1,
            sites: 6,
            terms: 7,
            per_order: vec![C64::new(0.9, 0.0), C64::new(0.09, 0.0)],
        };
        let e = truncation_error(&truncated);
        // Geometric tail with ratio 0.1 from magnitude 0.09: 0.01.
        assert!((e - 0.01).abs() < 1e-12);
        // A flat (non-decaying) tail is capped by the remaining order count.
        let flat = ExpansionResult {
            value: C64::new(1.0, 0.0),
            order: 1,
            sites: 4,
            terms: 5,
            per_order: vec![C64::new(0.5, 0.0), C64::new(0.5, 0.0)],
        };
        assert!((truncation_error(&flat) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn dead_site_bookkeeping_matches_the_oracle() {
        // Non-Matchgates in the first and last layer with empty boundary
        // slots have dead quartics; only interior ones count as live. The
        // engine must agree with the oracle and report the reduced site
        // count.
        let phi = 1.3;
        let c = floquet_circuit(8, 2, 0.8, phi).unwrap();
        // All-zero boundaries (the builder default) kill every last-layer
        // interaction site... but the interactions sit on interior layers
        // here, so sites stay live. Instead check a hand-built case.
        let net = build_network(&c).unwrap();
        assert_eq!(net.sites.len(), 2 * 3);
        let mk = |leftmost| Placement { gate: gates::cphase(phi), leftmost };
        let manual = crate::circuits::Circuit::new(
            4,
            vec![
                vec![mk(0), mk(2)],
                vec![mk(1)],
            ],
            vec![true, true, false, false],
            vec![false, true, true, false],
        )
        .unwrap();
        let net = build_network(&manual).unwrap();
        assert_eq!(net.sites.len(), 3);
        let live: Vec<bool> = net
            .sites
            .iter()
            .map(|s| s.modes.iter().all(Option::is_some))
            .collect();
        // First-layer gate at qubits 0-1 has occupied input slots: live.
        // First-layer gate at 2-3 reads empty inputs: dead. The last-layer
        // gate at 1-2 has occupied output slots: live.
        assert_eq!(live, vec![true, false, true]);
        let r = contract_exact(&manual).unwrap();
        assert_eq!(r.sites, 2);
        let want = oracle::overlap(&manual).unwrap();
        assert!((r.value - want).norm() <= 1e-10 * (1.0 + want.norm()));
    }

    #[test]
    fn empty_and_wire_only_circuits_collapse_to_overlaps() {
        // Depth 0: the engine must produce ⟨ψf|ψi⟩ = δ exactly.
        let l = 5;
        let mut rng = ChaCha8Rng::seed_from_u64(808);
        for _ in 0..10 {
            let psi_i = random_even_bits(&mut rng, l);
            let psi_f = random_even_bits(&mut rng, l);
            let c = crate::circuits::Circuit::new(l, vec![], psi_i.clone(), psi_f.clone())
                .unwrap();
            let want = if psi_i == psi_f { 1.0 } else { 0.0 };
            let got = contract_exact(&c).unwrap().value;
            assert!((got - C64::new(want, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn order_sum_internals_match_a_direct_minor_walk() {
        // Cross-check the chunked enumeration against a plain nested loop
        // on a random antisymmetric matrix with synthetic sites.
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let dim = 16;
        let mut m = SkewMatrix::zeros(dim).unwrap();
        for i in 0..dim {
            for j in i + 1..dim {
                m.set_pair(i, j, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
        let sites: Vec<[usize; 4]> = vec![[0, 1, 2, 3], [4, 5, 6, 7], [8, 9, 10, 11], [12, 13, 14, 15]];
        let gammas: Vec<C64> = (0..4)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        for k in 0..=4usize {
            let fast = order_sum(&m, &sites, &gammas, k);
            let mut slow = C64::new(0.0, 0.0);
            for sub in 0usize..16 {
                if sub.count_ones() as usize != k {
                    continue;
                }
                let mut holes = Vec::new();
                let mut w = C64::new(1.0, 0.0);
                for s in 0..4 {
                    if sub >> s & 1 == 1 {
                        holes.extend_from_slice(&sites[s]);
                        w *= gammas[s];
                    }
                }
                slow += w * m.delete_modes(&holes).unwrap().pfaffian();
            }
            assert!((fast - slow).norm() <= 1e-12 * (1.0 + slow.norm()), "order {k}");
        }
    }
}
