//! Dense complex linear algebra kernel.
//!
//! Hermitian eigendecomposition, spectral matrix functions, Schatten norms
//! and the tensor operations (`kron`, `vectorize`, `matricize`,
//! `partial_trace`) that realize superoperators as ordinary matrices.
//!
//! Conventions used by the whole crate:
//!
//! * vectorization is **row-major**: `vectorize(A)[i*cols + j] = A[(i, j)]`,
//!   so `vec(A X B) = (A ⊗ Bᵀ) vec(X)`;
//! * Schatten norms are computed from singular values obtained as square
//!   roots of the eigenvalues of `A†A`, reusing the one Hermitian solver;
//! * eigenvalues below `CLIP_FACTOR × λ_max` count as zero before negative
//!   powers or logarithms are taken.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Hermiticity tolerance, relative to the matrix scale.
pub const TOL_HERM: f64 = 1e-10;
/// Positive-semidefiniteness tolerance, relative to the matrix scale.
pub const TOL_PSD: f64 = 1e-10;
/// Equality tolerance for scalar cross-checks.
pub const TOL_EQ: f64 = 1e-8;
/// Violation tolerance for inequality margins.
pub const TOL_INEQ: f64 = 1e-9;
/// Spectral clip: eigenvalues below `CLIP_FACTOR * λ_max` are treated as 0.
pub const CLIP_FACTOR: f64 = 1e-12;

/// Largest entry magnitude, used as the scale for relative tolerances.
pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entry magnitude of `A - A†`.
pub fn hermiticity_defect(a: &CMatrix) -> f64 {
    let mut defect = 0.0f64;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            let d = (a[(i, j)] - a[(j, i)].conj()).norm();
            defect = defect.max(d);
        }
    }
    defect
}

/// `(A + A†)/2`, used to remove floating-point drift from products that are
/// Hermitian in exact arithmetic.
pub fn hermitize(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()).map(|z| z * 0.5)
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diagonal().sum()
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    /// Real eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: CMatrix,
}

impl EigenSystem {
    /// `U diag(f(λ)) U†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        self.map_complex(|x| Complex64::new(f(x), 0.0))
    }

    /// `U diag(f(λ)) U†` for complex-valued `f`, e.g. imaginary powers.
    pub fn map_complex(&self, f: impl Fn(f64) -> Complex64) -> CMatrix {
        let n = self.values.len();
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            n,
            self.values.iter().map(|&x| f(x)),
        ));
        &self.vectors * d * self.vectors.adjoint()
    }

    /// Reassembles the original matrix.
    pub fn reconstruct(&self) -> CMatrix {
        self.map(|x| x)
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Clip threshold for this spectrum: `CLIP_FACTOR × max(λ, 0)`.
    pub fn clip(&self) -> f64 {
        CLIP_FACTOR * self.max().max(0.0)
    }
}

/// Hermitian eigendecomposition.
///
/// Rejects non-square input and input whose hermiticity defect exceeds
/// `TOL_HERM` relative to the matrix scale. The result is deterministic for
/// identical input bits; eigenvalues are sorted ascending with ties broken
/// arbitrarily, so downstream code must be basis-independent within
/// degenerate subspaces.
pub fn eigh(h: &CMatrix) -> Result<EigenSystem> {
    if h.nrows() != h.ncols() {
        return Err(Error::ShapeMismatch(format!(
            "eigh expects a square matrix, got {}x{}",
            h.nrows(),
            h.ncols()
        )));
    }
    let scale = max_abs(h).max(1.0);
    let defect = hermiticity_defect(h);
    if defect > TOL_HERM * scale {
        return Err(Error::NotHermitian {
            asymmetry: defect,
            tol: TOL_HERM * scale,
        });
    }
    let se = hermitize(h).symmetric_eigen();
    let n = se.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| se.eigenvalues[i].total_cmp(&se.eigenvalues[j]));
    let values: Vec<f64> = order.iter().map(|&i| se.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| se.eigenvectors[(r, order[c])]);
    Ok(EigenSystem { values, vectors })
}

/// Spectral calculus on a PSD Hermitian matrix: `U diag(f(max(λ, clip))) U†`.
///
/// `clip` is an absolute floor applied to the eigenvalues before `f`; a
/// non-finite `f` value at a clipped eigenvalue is a domain error (e.g.
/// `log` at `clip = 0`).
pub fn apply_fn(h: &CMatrix, f: impl Fn(f64) -> f64, clip: f64) -> Result<CMatrix> {
    let eig = eigh(h)?;
    let scale = max_abs(h).max(1.0);
    if eig.min() < -TOL_PSD * scale {
        return Err(Error::NotPsd { min_eig: eig.min() });
    }
    let mut mapped = Vec::with_capacity(eig.values.len());
    for &l in &eig.values {
        let y = f(l.max(clip));
        if !y.is_finite() {
            return Err(Error::Domain(format!(
                "function not finite at clipped eigenvalue {:.3e}",
                l.max(clip)
            )));
        }
        mapped.push(y);
    }
    let d = DMatrix::from_diagonal(&DVector::from_iterator(
        mapped.len(),
        mapped.iter().map(|&y| Complex64::new(y, 0.0)),
    ));
    Ok(&eig.vectors * d * eig.vectors.adjoint())
}

fn real_power_clipped(l: f64, p: f64, clip: f64) -> Result<f64> {
    if l > clip {
        Ok(l.powf(p))
    } else if p > 0.0 {
        Ok(0.0)
    } else if p == 0.0 {
        // support convention: 0^0 = 0, so x ↦ x^0 is the support projector
        Ok(0.0)
    } else {
        Err(Error::RankDeficient { min_eig: l })
    }
}

/// Real matrix power of a PSD Hermitian matrix with the kernel convention
/// `0^p = 0` for `p ≥ 0`; negative powers of a clipped eigenvalue are a
/// rank-deficiency error. `p = 0` yields the support projector.
pub fn herm_power(h: &CMatrix, p: f64) -> Result<CMatrix> {
    let eig = eigh(h)?;
    let scale = max_abs(h).max(1.0);
    if eig.min() < -TOL_PSD * scale {
        return Err(Error::NotPsd { min_eig: eig.min() });
    }
    let clip = eig.clip();
    let mapped: Result<Vec<f64>> = eig
        .values
        .iter()
        .map(|&l| real_power_clipped(l, p, clip))
        .collect();
    let mapped = mapped?;
    let d = DMatrix::from_diagonal(&DVector::from_iterator(
        mapped.len(),
        mapped.iter().map(|&y| Complex64::new(y, 0.0)),
    ));
    Ok(&eig.vectors * d * eig.vectors.adjoint())
}

/// Projector onto the support (eigenvalues above the clip) of a PSD matrix.
pub fn support_projector(h: &CMatrix) -> Result<CMatrix> {
    herm_power(h, 0.0)
}

/// `log` of a positive-definite Hermitian matrix.
pub fn herm_log(h: &CMatrix) -> Result<CMatrix> {
    let eig = eigh(h)?;
    let clip = eig.clip();
    if eig.min() <= clip {
        return Err(Error::RankDeficient { min_eig: eig.min() });
    }
    Ok(eig.map(f64::ln))
}

/// `exp` of a Hermitian matrix (not necessarily PSD).
pub fn herm_exp(h: &CMatrix) -> Result<CMatrix> {
    Ok(eigh(h)?.map(f64::exp))
}

/// Singular values of an arbitrary matrix, ascending, via `eigh(A†A)`.
pub fn singular_values(a: &CMatrix) -> Result<Vec<f64>> {
    let gram = hermitize(&(a.adjoint() * a));
    let eig = eigh(&gram)?;
    Ok(eig.values.iter().map(|&l| l.max(0.0).sqrt()).collect())
}

/// Schatten p-(quasi)norm `tr(a₊^p)^{1/p}` via singular values.
///
/// `p = ∞` returns the largest singular value; `p ∈ (0, 1)` returns the
/// quasi-norm by the same formula; `p ≤ 0` (or NaN) is rejected.
pub fn schatten_norm(a: &CMatrix, p: f64) -> Result<f64> {
    if !max_abs(a).is_finite() {
        return Err(Error::InvalidParameter("matrix has non-finite entries".into()));
    }
    if p.is_nan() || p <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "Schatten norm needs p > 0, got {p}"
        )));
    }
    let sv = singular_values(a)?;
    if p.is_infinite() {
        return Ok(sv.last().copied().unwrap_or(0.0));
    }
    let sum: f64 = sv.iter().map(|&s| s.powf(p)).sum();
    Ok(sum.powf(1.0 / p))
}

/// Kronecker product in the row-major basis `|i⟩⊗|k⟩ ↦ i·rows(B)+k`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ra, ca) = a.shape();
    let (rb, cb) = b.shape();
    CMatrix::from_fn(ra * rb, ca * cb, |i, j| {
        a[(i / rb, j / cb)] * b[(i % rb, j % cb)]
    })
}

/// Row-major vectorization.
pub fn vectorize(a: &CMatrix) -> CVector {
    let (r, c) = a.shape();
    CVector::from_fn(r * c, |k, _| a[(k / c, k % c)])
}

/// Inverse of [`vectorize`].
pub fn matricize(v: &CVector, rows: usize, cols: usize) -> Result<CMatrix> {
    if v.len() != rows * cols {
        return Err(Error::ShapeMismatch(format!(
            "cannot reshape a length-{} vector into {}x{}",
            v.len(),
            rows,
            cols
        )));
    }
    Ok(CMatrix::from_fn(rows, cols, |i, j| v[i * cols + j]))
}

/// Which tensor factor `partial_trace` traces out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceOut {
    First,
    Second,
}

/// Partial trace of a matrix on `C^{d1} ⊗ C^{d2}`.
pub fn partial_trace(m: &CMatrix, dims: (usize, usize), which: TraceOut) -> Result<CMatrix> {
    let (d1, d2) = dims;
    let n = d1 * d2;
    if m.nrows() != n || m.ncols() != n {
        return Err(Error::ShapeMismatch(format!(
            "partial_trace expects a {n}x{n} matrix for dims ({d1},{d2}), got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    match which {
        TraceOut::Second => Ok(CMatrix::from_fn(d1, d1, |i, j| {
            (0..d2).map(|k| m[(i * d2 + k, j * d2 + k)]).sum()
        })),
        TraceOut::First => Ok(CMatrix::from_fn(d2, d2, |i, j| {
            (0..d1).map(|k| m[(k * d2 + i, k * d2 + j)]).sum()
        })),
    }
}

/// `n`-fold Kronecker power.
pub fn tensor_power(a: &CMatrix, n: usize) -> CMatrix {
    assert!(n >= 1, "tensor_power requires n >= 1");
    let mut out = a.clone();
    for _ in 1..n {
        out = kron(&out, a);
    }
    out
}
