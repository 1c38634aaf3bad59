//! Density matrices, channels, GNS vectorization, relative modular
//! superoperators, weighted (p,ω)-norms and GNS contractions of channels.
//!
//! A state ω with full rank turns `C^{d×d}` into the GNS Hilbert space
//! `H_ω` via the representation `a ↦ vec(a·ω^{1/2})`. The relative modular
//! operator `Δ_{ψ|ω}` acts on vectorized operators as `X ↦ ψ X ω⁻¹`; its
//! real powers generate the interpolating vectors behind every divergence
//! family in this crate, and the (p,ω)-norm of a vector `v` is the Schatten
//! norm `‖mat(v)·ω^{1/p−1/2}‖_p`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linops::{
    self, eigh, herm_power, hermitize, kron, matricize, max_abs, schatten_norm, trace, vectorize,
    CMatrix, CVector, EigenSystem, TOL_EQ, TOL_HERM, TOL_PSD,
};
use crate::{Error, Result};

/// States whose smallest eigenvalue exceeds this are treated as full rank.
pub const RANK_FLOOR: f64 = 1e-10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// ---------------------------------------------------------------------------
// density matrices
// ---------------------------------------------------------------------------

/// A d×d Hermitian PSD unit-trace matrix.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates hermiticity, positivity and unit trace.
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() || matrix.nrows() == 0 {
            return Err(Error::ShapeMismatch(format!(
                "density matrix must be square and nonempty, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let scale = max_abs(&matrix).max(1.0);
        let defect = linops::hermiticity_defect(&matrix);
        if defect > TOL_HERM * scale {
            return Err(Error::NotHermitian {
                asymmetry: defect,
                tol: TOL_HERM * scale,
            });
        }
        let eig = eigh(&matrix)?;
        if eig.min() < -TOL_PSD * scale {
            return Err(Error::NotPsd { min_eig: eig.min() });
        }
        let tr = trace(&matrix).re;
        if (tr - 1.0).abs() > TOL_EQ {
            return Err(Error::InvalidParameter(format!(
                "density matrix trace is {tr}, expected 1"
            )));
        }
        Ok(Self { matrix })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let p = 1.0 / dim as f64;
        Self {
            matrix: CMatrix::identity(dim, dim) * c(p, 0.0),
        }
    }

    /// `|k⟩⟨k|` in the computational basis.
    pub fn pure_basis_state(dim: usize, k: usize) -> Self {
        let mut m = CMatrix::zeros(dim, dim);
        m[(k, k)] = c(1.0, 0.0);
        Self { matrix: m }
    }

    /// Diagonal state from a probability vector.
    pub fn from_probabilities(probs: &[f64]) -> Result<Self> {
        let sum: f64 = probs.iter().sum();
        if probs.iter().any(|&p| p < -TOL_PSD) || (sum - 1.0).abs() > TOL_EQ {
            return Err(Error::InvalidParameter(
                "probabilities must be nonnegative and sum to 1".into(),
            ));
        }
        let d = probs.len();
        Ok(Self {
            matrix: CMatrix::from_fn(d, d, |i, j| {
                if i == j {
                    c(probs[i].max(0.0), 0.0)
                } else {
                    c(0.0, 0.0)
                }
            }),
        })
    }

    /// Pure state `|v⟩⟨v|` from an arbitrary nonzero vector.
    pub fn pure_state(v: &CVector) -> Result<Self> {
        let n2 = v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if n2 <= 0.0 {
            return Err(Error::InvalidParameter("zero state vector".into()));
        }
        let d = v.len();
        Ok(Self {
            matrix: CMatrix::from_fn(d, d, |i, j| v[i] * v[j].conj() / n2),
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn eigensystem(&self) -> Result<EigenSystem> {
        eigh(&self.matrix)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigensystem().map(|e| e.min()).unwrap_or(f64::NAN)
    }

    /// True iff the smallest eigenvalue exceeds [`RANK_FLOOR`].
    pub fn is_full_rank(&self) -> bool {
        self.min_eigenvalue() > RANK_FLOOR
    }

    /// Real matrix power with the kernel convention of [`herm_power`].
    pub fn power(&self, p: f64) -> Result<CMatrix> {
        herm_power(&self.matrix, p)
    }

    pub fn sqrt(&self) -> Result<CMatrix> {
        self.power(0.5)
    }

    /// Depolarized copy `(1−w)·ρ + w·I/d`, handy for conditioning instances.
    pub fn depolarized(&self, w: f64) -> DensityMatrix {
        let d = self.dim();
        let m =
            &self.matrix * c(1.0 - w, 0.0) + CMatrix::identity(d, d) * c(w / d as f64, 0.0);
        DensityMatrix { matrix: m }
    }

    /// Largest entry magnitude of the commutator `[ρ, σ]`.
    pub fn commutator_norm(&self, other: &DensityMatrix) -> f64 {
        let comm = &self.matrix * other.matrix() - other.matrix() * &self.matrix;
        max_abs(&comm)
    }
}

/// Hilbert-Schmidt-induced random state `GG†/tr(GG†)` with `G` a `dim×rank`
/// matrix of independent standard complex Gaussians; deterministic per seed.
pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    random_density_from_rng(dim, rank, &mut rng)
}

/// Same sampler, drawing from a caller-owned generator.
pub fn random_density_from_rng(
    dim: usize,
    rank: usize,
    rng: &mut ChaCha12Rng,
) -> Result<DensityMatrix> {
    if rank == 0 || rank > dim {
        return Err(Error::InvalidParameter(format!(
            "rank must lie in 1..={dim}, got {rank}"
        )));
    }
    let g = CMatrix::from_fn(dim, rank, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c(re, im)
    });
    let w = hermitize(&(&g * g.adjoint()));
    let tr = trace(&w).re;
    DensityMatrix::new(&w * c(1.0 / tr, 0.0))
}

/// Haar-random unitary via QR of a Ginibre matrix with phase-fixed R diagonal.
pub fn haar_unitary(dim: usize, rng: &mut ChaCha12Rng) -> CMatrix {
    haar_isometry(dim, dim, rng)
}

/// Haar-random isometry (`rows ≥ cols`): phase-corrected thin QR of a
/// Ginibre matrix.
pub fn haar_isometry(rows: usize, cols: usize, rng: &mut ChaCha12Rng) -> CMatrix {
    assert!(rows >= cols, "isometry needs rows >= cols");
    let g = CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        c(re, im)
    });
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let phases = nalgebra::DVector::from_fn(cols, |i, _| {
        let rii = r[(i, i)];
        if rii.norm() > 0.0 {
            rii / rii.norm()
        } else {
            c(1.0, 0.0)
        }
    });
    &q * DMatrix::from_diagonal(&phases)
}

// ---------------------------------------------------------------------------
// channels
// ---------------------------------------------------------------------------

/// A quantum channel as a Kraus-operator list, Schrödinger picture
/// `ρ ↦ Σ K_i ρ K_i†` with `Σ K_i† K_i = I` (so the Heisenberg dual is
/// unital).
#[derive(Debug, Clone)]
pub struct Channel {
    kraus: Vec<CMatrix>,
    d_in: usize,
    d_out: usize,
}

impl Channel {
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        let first = kraus
            .first()
            .ok_or_else(|| Error::InvalidParameter("empty Kraus list".into()))?;
        let (d_out, d_in) = first.shape();
        if d_in == 0 || d_out == 0 {
            return Err(Error::ShapeMismatch("zero-dimensional Kraus operator".into()));
        }
        for k in &kraus {
            if k.shape() != (d_out, d_in) {
                return Err(Error::ShapeMismatch(
                    "all Kraus operators must share the same shape".into(),
                ));
            }
        }
        let mut sum = CMatrix::zeros(d_in, d_in);
        for k in &kraus {
            sum += k.adjoint() * k;
        }
        let defect = max_abs(&(sum - CMatrix::identity(d_in, d_in)));
        if defect > TOL_EQ {
            return Err(Error::InvalidParameter(format!(
                "Kraus operators violate trace preservation: |ΣK†K - I| = {defect:.3e}"
            )));
        }
        Ok(Self { kraus, d_in, d_out })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            kraus: vec![CMatrix::identity(dim, dim)],
            d_in: dim,
            d_out: dim,
        }
    }

    pub fn from_unitary(u: &CMatrix) -> Result<Self> {
        Self::new(vec![u.clone()])
    }

    /// The constant channel `ρ ↦ tr(ρ)·σ`, built from the spectral
    /// decomposition of the target state.
    pub fn trace_to(sigma: &DensityMatrix) -> Result<Self> {
        let eig = sigma.eigensystem()?;
        let d = sigma.dim();
        let mut kraus = Vec::new();
        for (i, &s) in eig.values.iter().enumerate() {
            if s <= 0.0 {
                continue;
            }
            let v = eig.vectors.column(i);
            for j in 0..d {
                // √s |v_i⟩⟨j|
                let mut k = CMatrix::zeros(d, d);
                for r in 0..d {
                    k[(r, j)] = v[r] * c(s.sqrt(), 0.0);
                }
                kraus.push(k);
            }
        }
        Self::new(kraus)
    }

    /// Fully depolarizing channel `ρ ↦ tr(ρ)·I/d` from the clock-and-shift
    /// unitary design.
    pub fn fully_depolarizing(dim: usize) -> Result<Self> {
        let d = dim as f64;
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / d);
        let mut kraus = Vec::with_capacity(dim * dim);
        for a in 0..dim {
            for b in 0..dim {
                // X^a Z^b / d
                let k = CMatrix::from_fn(dim, dim, |r, s| {
                    if r == (s + a) % dim {
                        omega.powu((b * s) as u32) / d
                    } else {
                        c(0.0, 0.0)
                    }
                });
                kraus.push(k);
            }
        }
        Self::new(kraus)
    }

    pub fn d_in(&self) -> usize {
        self.d_in
    }

    pub fn d_out(&self) -> usize {
        self.d_out
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    /// Schrödinger action on a raw matrix.
    pub fn apply_matrix(&self, m: &CMatrix) -> Result<CMatrix> {
        if m.shape() != (self.d_in, self.d_in) {
            return Err(Error::ShapeMismatch(format!(
                "channel expects {0}x{0} input, got {1}x{2}",
                self.d_in,
                m.nrows(),
                m.ncols()
            )));
        }
        let mut out = CMatrix::zeros(self.d_out, self.d_out);
        for k in &self.kraus {
            out += k * m * k.adjoint();
        }
        Ok(out)
    }

    /// Schrödinger action on a state; trace is preserved by construction.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        DensityMatrix::new(hermitize(&self.apply_matrix(rho.matrix())?))
    }

    /// Heisenberg dual `b ↦ Σ K_i† b K_i`; unital by the CPTP invariant.
    pub fn dual_apply(&self, b: &CMatrix) -> Result<CMatrix> {
        if b.shape() != (self.d_out, self.d_out) {
            return Err(Error::ShapeMismatch(format!(
                "dual expects {0}x{0} input, got {1}x{2}",
                self.d_out,
                b.nrows(),
                b.ncols()
            )));
        }
        let mut out = CMatrix::zeros(self.d_in, self.d_in);
        for k in &self.kraus {
            out += k.adjoint() * b * k;
        }
        Ok(out)
    }
}

/// Haar-random channel: Kraus operators are the environment blocks of a
/// Haar-random isometry `d_in → d_out ⊗ env`.
pub fn random_channel(d_in: usize, d_out: usize, env_dim: usize, seed: u64) -> Result<Channel> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    random_channel_from_rng(d_in, d_out, env_dim, &mut rng)
}

/// Same sampler, drawing from a caller-owned generator.
pub fn random_channel_from_rng(
    d_in: usize,
    d_out: usize,
    env_dim: usize,
    rng: &mut ChaCha12Rng,
) -> Result<Channel> {
    if d_out * env_dim < d_in {
        return Err(Error::InvalidParameter(format!(
            "need d_out*env >= d_in for an isometry, got {d_out}*{env_dim} < {d_in}"
        )));
    }
    let v = haar_isometry(d_out * env_dim, d_in, rng);
    let kraus: Vec<CMatrix> = (0..env_dim)
        .map(|e| CMatrix::from_fn(d_out, d_in, |o, i| v[(o * env_dim + e, i)]))
        .collect();
    Channel::new(kraus)
}

// ---------------------------------------------------------------------------
// GNS vectors
// ---------------------------------------------------------------------------

/// A vector in the GNS Hilbert space `H_ω ≅ C^{d²}` carrying its reference
/// state.
#[derive(Debug, Clone)]
pub struct GnsVector {
    pub entries: CVector,
    pub ref_state: DensityMatrix,
}

impl GnsVector {
    pub fn new(entries: CVector, ref_state: DensityMatrix) -> Result<Self> {
        let d = ref_state.dim();
        if entries.len() != d * d {
            return Err(Error::ShapeMismatch(format!(
                "GNS vector needs length {}, got {}",
                d * d,
                entries.len()
            )));
        }
        Ok(Self { entries, ref_state })
    }

    pub fn dim(&self) -> usize {
        self.ref_state.dim()
    }

    /// The d×d matrix this vector is the row-major vectorization of.
    pub fn mat(&self) -> CMatrix {
        let d = self.dim();
        matricize(&self.entries, d, d).expect("length validated at construction")
    }

    pub fn norm2(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// The same vector viewed in the GNS space of a different reference.
    pub fn with_reference(&self, omega: &DensityMatrix) -> Result<GnsVector> {
        GnsVector::new(self.entries.clone(), omega.clone())
    }
}

/// Representation map `a ↦ a|Ω⟩ = vec(a·ω^{1/2})`.
pub fn gns_vector(a: &CMatrix, omega: &DensityMatrix) -> Result<GnsVector> {
    let d = omega.dim();
    if a.shape() != (d, d) {
        return Err(Error::ShapeMismatch(format!(
            "operator must be {d}x{d}, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    GnsVector::new(vectorize(&(a * omega.sqrt()?)), omega.clone())
}

/// The GNS vector of the reference itself, `|Ω⟩ = vec(ω^{1/2})`.
pub fn omega_vector(omega: &DensityMatrix) -> Result<GnsVector> {
    GnsVector::new(vectorize(&omega.sqrt()?), omega.clone())
}

/// Natural-cone purification `vec(ρ^{1/2})`.
///
/// The returned vector purifies ρ and is invariant under modular
/// conjugation in every GNS space with a full-rank reference; its
/// `ref_state` is set to ρ itself and can be swapped with
/// [`GnsVector::with_reference`] before taking (p,ω)-norms.
pub fn purify(rho: &DensityMatrix) -> Result<GnsVector> {
    GnsVector::new(vectorize(&rho.sqrt()?), rho.clone())
}

/// Modular conjugation image `J|v⟩ = vec(mat(v)†)` and the natural-cone
/// membership flag (`mat(v)` Hermitian PSD within tolerances).
pub fn modular_cone_ops(v: &GnsVector) -> Result<(GnsVector, bool)> {
    let m = v.mat();
    let j_image = GnsVector::new(vectorize(&m.adjoint()), v.ref_state.clone())?;
    let scale = max_abs(&m).max(1.0);
    let in_cone = if linops::hermiticity_defect(&m) <= TOL_HERM * scale {
        eigh(&hermitize(&m))?.min() >= -TOL_PSD * scale
    } else {
        false
    };
    Ok((j_image, in_cone))
}

// ---------------------------------------------------------------------------
// relative modular operator
// ---------------------------------------------------------------------------

/// Spectral representation of `Δ_{ψ|ω}: X ↦ ψ X ω⁻¹` on vectorized
/// operators. Eigendata of both states is cached at construction; the
/// spectrum is `{p_i/q_j}`.
#[derive(Debug, Clone)]
pub struct ModularOp {
    psi_eig: EigenSystem,
    omega_eig: EigenSystem,
    psi_clip: f64,
    dim: usize,
}

/// Builds `Δ_{ψ|ω}`. ψ is any Hermitian PSD matrix (it may be unnormalized
/// or rank-deficient); ω must be full rank.
pub fn relative_modular(psi: &CMatrix, omega: &DensityMatrix) -> Result<ModularOp> {
    let d = omega.dim();
    if psi.shape() != (d, d) {
        return Err(Error::ShapeMismatch(format!(
            "psi must be {d}x{d}, got {}x{}",
            psi.nrows(),
            psi.ncols()
        )));
    }
    let scale = max_abs(psi).max(1.0);
    let psi_eig = eigh(psi)?;
    if psi_eig.min() < -TOL_PSD * scale {
        return Err(Error::NotPsd {
            min_eig: psi_eig.min(),
        });
    }
    let omega_eig = omega.eigensystem()?;
    if omega_eig.min() <= RANK_FLOOR {
        return Err(Error::RankDeficient {
            min_eig: omega_eig.min(),
        });
    }
    let psi_clip = psi_eig.clip();
    Ok(ModularOp {
        psi_eig,
        omega_eig,
        psi_clip,
        dim: d,
    })
}

impl ModularOp {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The eigenvalue ratios `{p_i/q_j}` (clipped ψ eigenvalues count as 0),
    /// sorted ascending.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.dim * self.dim);
        for &p in &self.psi_eig.values {
            for &q in &self.omega_eig.values {
                let pc = if p > self.psi_clip { p } else { 0.0 };
                out.push(pc / q);
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }

    fn psi_power(&self, t: f64) -> Result<CMatrix> {
        let mapped: Result<Vec<f64>> = self
            .psi_eig
            .values
            .iter()
            .map(|&l| {
                if l > self.psi_clip {
                    Ok(l.powf(t))
                } else if t >= 0.0 {
                    Ok(0.0)
                } else {
                    Err(Error::RankDeficient { min_eig: l })
                }
            })
            .collect();
        let mapped = mapped?;
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            mapped.len(),
            mapped.iter().map(|&y| c(y, 0.0)),
        ));
        Ok(&self.psi_eig.vectors * d * self.psi_eig.vectors.adjoint())
    }

    fn psi_power_complex(&self, z: Complex64) -> Result<CMatrix> {
        if z.re <= 0.0 && self.psi_eig.values.iter().any(|&l| l <= self.psi_clip) {
            return Err(Error::RankDeficient {
                min_eig: self.psi_eig.min(),
            });
        }
        Ok(self.psi_eig.map_complex(|l| {
            if l > self.psi_clip {
                (z * l.ln()).exp()
            } else {
                c(0.0, 0.0)
            }
        }))
    }

    fn omega_power_complex(&self, z: Complex64) -> CMatrix {
        self.omega_eig.map_complex(|l| (z * l.ln()).exp())
    }

    /// `Δ^t v = vec(ψ^t · mat(v) · ω^{−t})` for real `t`.
    pub fn apply_power(&self, t: f64, v: &CVector) -> Result<CVector> {
        let m = matricize(v, self.dim, self.dim)?;
        let left = self.psi_power(t)?;
        let right = self.omega_eig.map(|l| l.powf(-t));
        Ok(vectorize(&(left * m * right)))
    }

    /// `Δ^z v = vec(ψ^z · mat(v) · ω^{−z})` for complex `z`, with the clip
    /// convention `0^z = 0` on ψ's kernel for `Re z > 0`; `Re z ≤ 0` needs a
    /// full-rank ψ.
    pub fn apply_complex_power(&self, z: Complex64, v: &CVector) -> Result<CVector> {
        let m = matricize(v, self.dim, self.dim)?;
        let left = self.psi_power_complex(z)?;
        let right = self.omega_power_complex(-z);
        Ok(vectorize(&(left * m * right)))
    }

    /// Dense d²×d² matrix of `Δ^t = ψ^t ⊗ (ω^{−t})ᵀ` (Hermitian for real t).
    pub fn materialize_power(&self, t: f64) -> Result<CMatrix> {
        let left = self.psi_power(t)?;
        let right = self.omega_eig.map(|l| l.powf(-t)).transpose();
        Ok(kron(&left, &right))
    }

    /// Applies `g(Δ)` spectrally: the eigenvalue of `Δ` on the `(i,j)`
    /// eigenpair is `p_i/q_j` (0 on ψ's clipped kernel).
    pub fn apply_eigen_fn(&self, g: impl Fn(f64) -> f64, v: &CVector) -> Result<CVector> {
        let m = matricize(v, self.dim, self.dim)?;
        // rotate into the (ψ, ω) eigenbases
        let mut mid = self.psi_eig.vectors.adjoint() * m * &self.omega_eig.vectors;
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = self.psi_eig.values[i];
                let q = self.omega_eig.values[j];
                let lam = if p > self.psi_clip { p / q } else { 0.0 };
                let y = g(lam);
                if !y.is_finite() {
                    return Err(Error::Domain(format!(
                        "spectral function not finite at eigenvalue {lam:.6e}"
                    )));
                }
                mid[(i, j)] *= c(y, 0.0);
            }
        }
        let back = &self.psi_eig.vectors * mid * self.omega_eig.vectors.adjoint();
        Ok(vectorize(&back))
    }

    /// Dense d²×d² matrix of `g(Δ)`.
    pub fn materialize_eigen_fn(&self, g: impl Fn(f64) -> f64) -> Result<CMatrix> {
        let n = self.dim * self.dim;
        let mut out = CMatrix::zeros(n, n);
        for i in 0..self.dim {
            for j in 0..self.dim {
                let p = self.psi_eig.values[i];
                let q = self.omega_eig.values[j];
                let lam = if p > self.psi_clip { p / q } else { 0.0 };
                let y = g(lam);
                if !y.is_finite() {
                    return Err(Error::Domain(format!(
                        "spectral function not finite at eigenvalue {lam:.6e}"
                    )));
                }
                // eigenvector of Δ: vec(u_i w_j†) in the row-major layout
                let ui = self.psi_eig.vectors.column(i);
                let wj = self.omega_eig.vectors.column(j);
                let vec_ij =
                    CVector::from_fn(n, |k, _| ui[k / self.dim] * wj[k % self.dim].conj());
                let scaled = &vec_ij * c(y, 0.0);
                out += scaled * vec_ij.adjoint();
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// (p, ω)-norms
// ---------------------------------------------------------------------------

/// The (p,ω)-norm `‖mat(v)·ω^{1/p−1/2}‖_p` of a GNS vector (`p = ∞` uses
/// exponent −1/2). Equals `‖a‖_{p,ω} = ‖a·ω^{1/p}‖_p` when
/// `v = vec(a·ω^{1/2})`.
pub fn pnorm_omega(v: &GnsVector, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "(p,ω)-norm needs p >= 1, got {p}"
        )));
    }
    if !v.ref_state.is_full_rank() {
        return Err(Error::RankDeficient {
            min_eig: v.ref_state.min_eigenvalue(),
        });
    }
    let exponent = if p.is_infinite() { -0.5 } else { 1.0 / p - 0.5 };
    let w = v.ref_state.power(exponent)?;
    schatten_norm(&(v.mat() * w), p)
}

/// Sampled variational bound on the (p,ω)-norm.
///
/// For `p ≥ 2` returns a **lower** bound: the max over random unit vectors
/// χ (plus a local-ascent refinement) of `‖Δ_{χ|ω}^{1/2−1/p} v‖`. For
/// `p ∈ [1,2)` the same expression is minimized, giving an **upper** bound.
/// `p = 2` is exact regardless of samples.
pub fn pnorm_variational_bound(v: &GnsVector, p: f64, n_samples: usize, seed: u64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(Error::InvalidParameter(format!(
            "(p,ω)-norm needs p >= 1, got {p}"
        )));
    }
    let s = if p.is_infinite() { 0.5 } else { 0.5 - 1.0 / p };
    if s == 0.0 {
        return Ok(v.norm2());
    }
    let maximize = p > 2.0;
    let d = v.dim();
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let omega = &v.ref_state;

    let value_for = |chi_mat: &CMatrix| -> Result<f64> {
        // reduced state of the unit vector χ on the algebra side is M M†
        let red = hermitize(&(chi_mat * chi_mat.adjoint()));
        let delta = relative_modular(&red, omega)?;
        let image = delta.apply_power(s, &v.entries)?;
        Ok(image.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
    };

    let draw_chi = |rng: &mut ChaCha12Rng| -> CMatrix {
        loop {
            let g = CMatrix::from_fn(d, d, |_, _| {
                let re: f64 = StandardNormal.sample(rng);
                let im: f64 = StandardNormal.sample(rng);
                c(re, im)
            });
            let n2: f64 = g.iter().map(|z| z.norm_sqr()).sum();
            let g = &g * c(1.0 / n2.sqrt(), 0.0);
            if maximize {
                return g;
            }
            // the inf side applies a negative power of the reduced state,
            // so reject nearly singular draws
            let gram = hermitize(&(&g * g.adjoint()));
            if let Ok(e) = eigh(&gram) {
                if e.min() > 1e-6 * e.max() {
                    return g;
                }
            }
        }
    };

    let mut best_mat = draw_chi(&mut rng);
    let mut best = value_for(&best_mat)?;
    for _ in 1..n_samples.max(1) {
        let m = draw_chi(&mut rng);
        let val = value_for(&m)?;
        if (maximize && val > best) || (!maximize && val < best) {
            best = val;
            best_mat = m;
        }
    }
    // local ascent/descent by coordinate perturbation, step decay 0.7
    let mut step = 0.3;
    for _ in 0..100 {
        let i = rand::Rng::random_range(&mut rng, 0..d);
        let j = rand::Rng::random_range(&mut rng, 0..d);
        let re: f64 = StandardNormal.sample(&mut rng);
        let im: f64 = StandardNormal.sample(&mut rng);
        let mut cand = best_mat.clone();
        cand[(i, j)] += c(re, im) * c(step, 0.0);
        let n2: f64 = cand.iter().map(|z| z.norm_sqr()).sum();
        let cand = &cand * c(1.0 / n2.sqrt(), 0.0);
        match value_for(&cand) {
            Ok(val) if (maximize && val > best) || (!maximize && val < best) => {
                best = val;
                best_mat = cand;
            }
            _ => step *= 0.7,
        }
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// GNS contraction of a channel
// ---------------------------------------------------------------------------

/// The GNS-space operator `F: H_B → H_A` of a channel, defined by
/// `Φ(b)|Ω_A⟩ = F b|Ω_B⟩` where `Φ` is the Heisenberg dual and
/// `ω_B = Φ*(ω_A)`. Materialized densely so operator inequalities can be
/// checked spectrally; `‖F‖_∞ ≤ 1` and `F|Ω_B⟩ = |Ω_A⟩`.
#[derive(Debug, Clone)]
pub struct GnsContraction {
    matrix: CMatrix,
    omega_a: DensityMatrix,
    omega_b: DensityMatrix,
}

impl GnsContraction {
    /// The dense `d_A² × d_B²` matrix.
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn omega_a(&self) -> &DensityMatrix {
        &self.omega_a
    }

    pub fn omega_b(&self) -> &DensityMatrix {
        &self.omega_b
    }

    pub fn operator_norm(&self) -> Result<f64> {
        schatten_norm(&self.matrix, f64::INFINITY)
    }

    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        if v.len() != self.matrix.ncols() {
            return Err(Error::ShapeMismatch(format!(
                "contraction expects input length {}, got {}",
                self.matrix.ncols(),
                v.len()
            )));
        }
        Ok(&self.matrix * v)
    }
}

/// Builds the GNS contraction of `channel` at reference state `ω_A`:
/// `F vec(X) = vec( Φ(X ω_B^{−1/2}) ω_A^{1/2} )`, assembled as
/// `F = Σ_k K_k† ⊗ (ω_B^{−1/2} K_k ω_A^{1/2})ᵀ`.
pub fn gns_contraction(channel: &Channel, omega_a: &DensityMatrix) -> Result<GnsContraction> {
    if omega_a.dim() != channel.d_in() {
        return Err(Error::ShapeMismatch(format!(
            "reference state dimension {} does not match channel input {}",
            omega_a.dim(),
            channel.d_in()
        )));
    }
    if !omega_a.is_full_rank() {
        return Err(Error::RankDeficient {
            min_eig: omega_a.min_eigenvalue(),
        });
    }
    let omega_b = channel.apply(omega_a)?;
    if !omega_b.is_full_rank() {
        return Err(Error::DegenerateInstance(format!(
            "channel output state is rank-deficient (min eigenvalue {:.3e}); resample",
            omega_b.min_eigenvalue()
        )));
    }
    let sqrt_a = omega_a.sqrt()?;
    let inv_sqrt_b = omega_b.power(-0.5)?;
    let da2 = channel.d_in() * channel.d_in();
    let db2 = channel.d_out() * channel.d_out();
    let mut f = CMatrix::zeros(da2, db2);
    for k in channel.kraus() {
        let right = (&inv_sqrt_b * k * &sqrt_a).transpose();
        f += kron(&k.adjoint(), &right);
    }
    Ok(GnsContraction {
        matrix: f,
        omega_a: omega_a.clone(),
        omega_b,
    })
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct SquareMatrixJson {
    dim: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct RectMatrixJson {
    rows: usize,
    cols: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

fn matrix_parts(m: &CMatrix) -> (Vec<f64>, Vec<f64>) {
    let (rows, cols) = m.shape();
    let mut re = Vec::with_capacity(rows * cols);
    let mut im = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            re.push(m[(i, j)].re);
            im.push(m[(i, j)].im);
        }
    }
    (re, im)
}

fn matrix_from_parts(rows: usize, cols: usize, re: &[f64], im: &[f64]) -> Result<CMatrix> {
    if re.len() != rows * cols || im.len() != rows * cols {
        return Err(Error::ShapeMismatch(format!(
            "expected {} entries, got re: {}, im: {}",
            rows * cols,
            re.len(),
            im.len()
        )));
    }
    Ok(CMatrix::from_fn(rows, cols, |i, j| {
        c(re[i * cols + j], im[i * cols + j])
    }))
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let (re, im) = matrix_parts(&self.matrix);
        SquareMatrixJson {
            dim: self.dim(),
            re,
            im,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = SquareMatrixJson::deserialize(deserializer)?;
        let m = matrix_from_parts(j.dim, j.dim, &j.re, &j.im).map_err(D::Error::custom)?;
        DensityMatrix::new(m).map_err(D::Error::custom)
    }
}

impl Serialize for Channel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<RectMatrixJson> = self
            .kraus
            .iter()
            .map(|k| {
                let (re, im) = matrix_parts(k);
                RectMatrixJson {
                    rows: k.nrows(),
                    cols: k.ncols(),
                    re,
                    im,
                }
            })
            .collect();
        list.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Channel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let list = Vec::<RectMatrixJson>::deserialize(deserializer)?;
        let kraus: std::result::Result<Vec<CMatrix>, D::Error> = list
            .iter()
            .map(|j| matrix_from_parts(j.rows, j.cols, &j.re, &j.im).map_err(D::Error::custom))
            .collect();
        Channel::new(kraus?).map_err(D::Error::custom)
    }
}
