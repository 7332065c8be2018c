//! Pfaffians of complex antisymmetric matrices and principal-minor
//! extraction for hole punching.
//!
//! The kernel is skew-symmetric tridiagonalization with partial pivoting
//! (Parlett-Reid), O(dim³). Minors are gathered through an index mask into a
//! reusable workspace instead of materializing submatrices, because the
//! expansion engine evaluates very many principal minors of one shared base
//! matrix and copying would dominate otherwise.

use num_complex::Complex64 as C64;

use crate::{Error, Result};

/// Absolute tolerance for the antisymmetry check at construction.
const SKEW_TOL: f64 = 1e-12;

/// Relative pivot threshold. A pivot column whose largest entry is below
/// this times the largest entry of the input is treated as structurally
/// zero and the Pfaffian short-circuits to 0, so that exactly-singular
/// matrices (as produced by particle-number cutoffs) give clean zeros.
const PIVOT_REL_TOL: f64 = 1e-13;

/// Dense complex antisymmetric matrix.
///
/// Public constructors enforce an even dimension; [`SkewMatrix::delete_modes`]
/// may produce an odd-dimensional matrix, whose Pfaffian is 0 by convention.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl SkewMatrix {
    /// Builds a matrix from row-major entries, validating shape,
    /// finiteness, and antisymmetry (tolerance 1e-12).
    pub fn new(dim: usize, data: Vec<C64>) -> Result<Self> {
        if !dim.is_multiple_of(2) {
            return Err(Error::OddDimension(dim));
        }
        assert_eq!(data.len(), dim * dim, "entry count must be dim^2");
        for i in 0..dim {
            for j in i..dim {
                let (a, b) = (data[i * dim + j], data[j * dim + i]);
                if !a.re.is_finite() || !a.im.is_finite() {
                    return Err(Error::NonFiniteEntry { i, j });
                }
                if !b.re.is_finite() || !b.im.is_finite() {
                    return Err(Error::NonFiniteEntry { i: j, j: i });
                }
                let deviation = (a + b).norm();
                if deviation > SKEW_TOL {
                    return Err(Error::NotAntisymmetric { i, j, deviation });
                }
            }
        }
        Ok(Self { dim, data })
    }

    /// Zero matrix of the given even dimension.
    pub fn zeros(dim: usize) -> Result<Self> {
        if !dim.is_multiple_of(2) {
            return Err(Error::OddDimension(dim));
        }
        Ok(Self { dim, data: vec![C64::new(0.0, 0.0); dim * dim] })
    }

    /// Builds a matrix from its strict upper triangle, listed row by row:
    /// (0,1), (0,2), ..., (0,dim-1), (1,2), ...
    pub fn from_upper(dim: usize, upper: &[C64]) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        assert_eq!(upper.len(), dim * (dim - 1) / 2, "upper triangle length");
        let mut it = upper.iter();
        for i in 0..dim {
            for j in i + 1..dim {
                m.set_pair(i, j, *it.next().unwrap());
            }
        }
        Ok(m)
    }

    /// Internal constructor that skips validation; used where the result is
    /// antisymmetric by construction (possibly of odd dimension).
    pub(crate) fn from_parts_unchecked(dim: usize, data: Vec<C64>) -> Self {
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    /// Sets entry (i,j) to v and (j,i) to -v. Requires i != j.
    pub fn set_pair(&mut self, i: usize, j: usize, v: C64) {
        assert_ne!(i, j, "diagonal entries are identically zero");
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = -v;
    }

    /// Adds v to entry (i,j) and -v to (j,i). Requires i != j.
    pub fn add_pair(&mut self, i: usize, j: usize, v: C64) {
        assert_ne!(i, j, "diagonal entries are identically zero");
        self.data[i * self.dim + j] += v;
        self.data[j * self.dim + i] -= v;
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    /// The Pfaffian. Returns 1 for the 0×0 matrix and 0 for odd dimensions.
    pub fn pfaffian(&self) -> C64 {
        if !self.dim.is_multiple_of(2) {
            return C64::new(0.0, 0.0);
        }
        let mut scratch = self.data.clone();
        pfaffian_in_place(&mut scratch, self.dim)
    }

    /// Principal submatrix on the complement of `modes` (strictly
    /// increasing indices). The input is unmodified.
    pub fn delete_modes(&self, modes: &[usize]) -> Result<SkewMatrix> {
        for w in modes.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::UnsortedModes);
            }
        }
        if let Some(&last) = modes.last() {
            if last >= self.dim {
                return Err(Error::IndexOutOfRange { index: last, dim: self.dim });
            }
        }
        let keep = complement(self.dim, modes);
        let d = keep.len();
        let mut data = Vec::with_capacity(d * d);
        for &i in &keep {
            for &j in &keep {
                data.push(self.data[i * self.dim + j]);
            }
        }
        Ok(SkewMatrix::from_parts_unchecked(d, data))
    }
}

/// Indices of [0, dim) not contained in the sorted list `modes`.
pub(crate) fn complement(dim: usize, modes: &[usize]) -> Vec<usize> {
    let mut keep = Vec::with_capacity(dim - modes.len());
    let mut it = modes.iter().peekable();
    for i in 0..dim {
        if it.peek() == Some(&&i) {
            it.next();
        } else {
            keep.push(i);
        }
    }
    keep
}

/// Parlett-Reid Pfaffian of a row-major antisymmetric matrix, destroying the
/// buffer. `dim` must be even.
pub(crate) fn pfaffian_in_place(a: &mut [C64], dim: usize) -> C64 {
    let mut tau = vec![C64::new(0.0, 0.0); dim.saturating_sub(2)];
    let mut col = vec![C64::new(0.0, 0.0); dim.saturating_sub(2)];
    pfaffian_with_scratch(a, dim, &mut tau, &mut col)
}

/// Kernel with caller-provided scratch so the expansion engine can evaluate
/// many Pfaffians without per-term allocation. `tau` and `col` need room for
/// dim-2 entries each.
pub(crate) fn pfaffian_with_scratch(
    a: &mut [C64],
    dim: usize,
    tau: &mut [C64],
    col: &mut [C64],
) -> C64 {
    debug_assert_eq!(a.len(), dim * dim);
    debug_assert_eq!(dim % 2, 0);
    if dim == 0 {
        return C64::new(1.0, 0.0);
    }
    let scale = a.iter().map(|z| z.norm_sqr()).fold(0.0_f64, f64::max).sqrt();
    if scale == 0.0 {
        return C64::new(0.0, 0.0);
    }
    let thresh = PIVOT_REL_TOL * scale;
    let mut pf = C64::new(1.0, 0.0);
    for k in (0..dim - 1).step_by(2) {
        // Pivot: the largest entry of column k below row k.
        let mut kp = k + 1;
        let mut best = a[(k + 1) * dim + k].norm_sqr();
        for i in k + 2..dim {
            let mag = a[i * dim + k].norm_sqr();
            if mag > best {
                best = mag;
                kp = i;
            }
        }
        if best.sqrt() <= thresh {
            // The column is structurally zero; so is the Pfaffian.
            return C64::new(0.0, 0.0);
        }
        if kp != k + 1 {
            for j in k..dim {
                a.swap((k + 1) * dim + j, kp * dim + j);
            }
            for i in k..dim {
                a.swap(i * dim + k + 1, i * dim + kp);
            }
            pf = -pf;
        }
        let pivot = a[k * dim + k + 1];
        pf *= pivot;
        if k + 2 >= dim {
            break;
        }
        let w = dim - (k + 2);
        for (t, j) in (k + 2..dim).enumerate() {
            tau[t] = a[k * dim + j] / pivot;
            col[t] = a[j * dim + k + 1];
        }
        // Rank-two update of the trailing block:
        // A[i][j] += tau[i]·A[j][k+1] − A[i][k+1]·tau[j].
        for (ti, i) in (k + 2..dim).enumerate() {
            let t_i = tau[ti];
            let c_i = col[ti];
            let row = &mut a[i * dim + k + 2..i * dim + dim];
            for tj in 0..w {
                row[tj] += t_i * col[tj] - c_i * tau[tj];
            }
        }
    }
    pf
}

/// Reusable buffers for evaluating Pfaffians of principal minors of a shared
/// base matrix without per-call allocation.
#[derive(Clone, Debug, Default)]
pub struct PfaffianWorkspace {
    buf: Vec<C64>,
    tau: Vec<C64>,
    col: Vec<C64>,
}

impl PfaffianWorkspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Pfaffian of the principal minor of `base` on the rows and columns
    /// listed in `keep` (strictly increasing). `keep` of odd length gives 0.
    pub fn minor_pfaffian(&mut self, base: &SkewMatrix, keep: &[usize]) -> C64 {
        let d = keep.len();
        if !d.is_multiple_of(2) {
            return C64::new(0.0, 0.0);
        }
        self.reserve(d);
        let n = base.dim;
        for (r, &i) in keep.iter().enumerate() {
            let src = &base.data[i * n..(i + 1) * n];
            let dst = &mut self.buf[r * d..(r + 1) * d];
            for (c, &j) in keep.iter().enumerate() {
                dst[c] = src[j];
            }
        }
        pfaffian_with_scratch(&mut self.buf[..d * d], d, &mut self.tau, &mut self.col)
    }

    /// Copies `base` into the workspace and hands out the buffer so the
    /// caller can modify entries in place before evaluating.
    pub fn load_full(&mut self, base: &SkewMatrix) -> &mut [C64] {
        let d = base.dim;
        self.reserve(d);
        self.buf[..d * d].copy_from_slice(&base.data);
        &mut self.buf[..d * d]
    }

    /// Evaluates the Pfaffian of the currently loaded dim×dim buffer,
    /// destroying it.
    pub fn eval(&mut self, dim: usize) -> C64 {
        pfaffian_with_scratch(&mut self.buf[..dim * dim], dim, &mut self.tau, &mut self.col)
    }

    fn reserve(&mut self, d: usize) {
        if self.buf.len() < d * d {
            self.buf.resize(d * d, C64::new(0.0, 0.0));
        }
        if self.tau.len() < d {
            self.tau.resize(d, C64::new(0.0, 0.0));
            self.col.resize(d, C64::new(0.0, 0.0));
        }
    }
}
