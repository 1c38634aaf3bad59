//! Kubo-Ando operator means and the three-state / n-state Rényi
//! divergences built from them, in both matrix and modular-superoperator
//! form, plus the classical generating functional and limit utilities.
//!
//! The Kubo-Ando mean of positive operators is
//! `X ♯_f Y = X^{1/2} f(X^{−1/2} Y X^{−1/2}) X^{1/2}` for an operator
//! monotone `f` with `f(1) = 1`; `♯_α` denotes the weighted geometric mean
//! `f(x) = x^α`. Chains associate right-to-left:
//! `X₁ ♯ X₂ ♯ X₃ = X₁ ♯ (X₂ ♯ X₃)`.
//!
//! With chain exponents α₁..α_{n−1} the derived weights
//! `γ_i = (1−α_i)·α₁⋯α_{i−1}` (with `α_n = 0`) form a probability
//! distribution, and the n-state divergence
//!
//! ```text
//! S = −2r/Π(1−θ_i) · log ‖(ψ₁^{θ₁/(rγ₁)} ♯_{α₁} ⋯ ♯_{α_{n−1}} ψ_n^{θ_n/(rγ_n)})^{1/2} ω^{θ₀/(2r)}‖_{2r}
//! ```
//!
//! is α-independent on commuting inputs and non-increasing under channels
//! for r ≥ 1.

use std::sync::Arc;

use num_complex::Complex64;

use crate::divergences::{relative_entropy, DivergenceValue, Family};
use crate::linops::{
    eigh, herm_exp, herm_log, herm_power, hermitize, schatten_norm, trace, CMatrix, TOL_EQ,
    TOL_PSD,
};
use crate::states::{omega_vector, pnorm_omega, relative_modular, DensityMatrix, GnsVector};
use crate::{Error, Result};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

// ---------------------------------------------------------------------------
// parameter bundles
// ---------------------------------------------------------------------------

/// The probability vector (θ₀, θ₁, …, θ_n): each θ_i ∈ [0,1] with
/// Σ_{i≥1} θ_i ≤ 1 and θ₀ = 1 − Σ θ_i.
#[derive(Debug, Clone)]
pub struct ThetaWeights {
    thetas: Vec<f64>,
    theta0: f64,
}

impl ThetaWeights {
    pub fn new(thetas: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::InvalidParameter("need at least one θ".into()));
        }
        if thetas.iter().any(|&t| !(0.0..=1.0).contains(&t)) {
            return Err(Error::InvalidParameter(
                "each θ_i must lie in [0,1]".into(),
            ));
        }
        let sum: f64 = thetas.iter().sum();
        if sum > 1.0 + 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "Σθ_i = {sum} exceeds 1"
            )));
        }
        Ok(Self {
            thetas,
            theta0: (1.0 - sum).max(0.0),
        })
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn theta0(&self) -> f64 {
        self.theta0
    }

    pub fn len(&self) -> usize {
        self.thetas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thetas.is_empty()
    }
}

/// Geometric-mean chain exponents (α₁, …, α_{n−1}) with the derived
/// γ-weights.
#[derive(Debug, Clone)]
pub struct AlphaChain {
    alphas: Vec<f64>,
    gammas: Vec<f64>,
}

impl AlphaChain {
    pub fn new(alphas: Vec<f64>) -> Result<Self> {
        let gammas = gamma_weights(&alphas)?;
        Ok(Self { alphas, gammas })
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    /// Number of states the chain combines.
    pub fn n_states(&self) -> usize {
        self.alphas.len() + 1
    }
}

/// `γ_i = (1−α_i)·α₁⋯α_{i−1}` with `α_n = 0`; the γ sum telescopes to 1.
pub fn gamma_weights(alphas: &[f64]) -> Result<Vec<f64>> {
    if alphas.iter().any(|&a| !(0.0..=1.0).contains(&a)) {
        return Err(Error::InvalidParameter("each α must lie in [0,1]".into()));
    }
    let n = alphas.len() + 1;
    let mut gammas = Vec::with_capacity(n);
    let mut prefix = 1.0;
    for i in 0..n {
        let alpha_i = if i < alphas.len() { alphas[i] } else { 0.0 };
        gammas.push((1.0 - alpha_i) * prefix);
        prefix *= alpha_i;
    }
    Ok(gammas)
}

// ---------------------------------------------------------------------------
// Kubo-Ando means
// ---------------------------------------------------------------------------

/// The scalar function of a Kubo-Ando mean: `f(1) = 1`, operator monotone.
///
/// The power family is built in; arbitrary functions are accepted with
/// operator monotonicity asserted by the caller (only `f(1) = 1` is
/// machine-checked).
#[derive(Clone)]
pub enum MeanSpec {
    /// `f(x) = x^α` with α ∈ [0,1].
    Power(f64),
    /// A caller-supplied operator monotone function with `f(1) = 1`.
    General(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl std::fmt::Debug for MeanSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MeanSpec::Power(a) => write!(f, "MeanSpec::Power({a})"),
            MeanSpec::General(_) => write!(f, "MeanSpec::General(..)"),
        }
    }
}

impl MeanSpec {
    pub fn power(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::InvalidParameter(format!(
                "power mean needs α ∈ [0,1], got {alpha}"
            )));
        }
        Ok(MeanSpec::Power(alpha))
    }

    pub fn general(f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        let at_one = f(1.0);
        if (at_one - 1.0).abs() > TOL_EQ {
            return Err(Error::InvalidParameter(format!(
                "mean function must satisfy f(1) = 1, got f(1) = {at_one}"
            )));
        }
        Ok(MeanSpec::General(Arc::new(f)))
    }

    fn apply_to_psd(&self, m: &CMatrix) -> Result<CMatrix> {
        match self {
            MeanSpec::Power(a) => herm_power(m, *a),
            MeanSpec::General(f) => {
                let eig = eigh(m)?;
                let scale = crate::linops::max_abs(m).max(1.0);
                if eig.min() < -TOL_PSD * scale {
                    return Err(Error::NotPsd { min_eig: eig.min() });
                }
                let mut mapped = Vec::with_capacity(eig.values.len());
                for &l in &eig.values {
                    let y = f(l.max(0.0));
                    if !y.is_finite() {
                        return Err(Error::Domain(format!(
                            "mean function not finite at eigenvalue {l:.3e}"
                        )));
                    }
                    mapped.push(y);
                }
                Ok(eig.map(|l| {
                    let idx = eig.values.iter().position(|&x| x == l).unwrap_or(0);
                    mapped[idx]
                }))
            }
        }
    }
}

/// Kubo-Ando mean `X ♯_f Y = X^{1/2} f(X^{−1/2} Y X^{−1/2}) X^{1/2}`.
///
/// `X` must be positive definite beyond the clip; `Y` PSD.
pub fn kubo_ando_mean(x: &CMatrix, y: &CMatrix, spec: &MeanSpec) -> Result<CMatrix> {
    if x.shape() != y.shape() {
        return Err(Error::ShapeMismatch(format!(
            "mean arguments differ in shape: {:?} vs {:?}",
            x.shape(),
            y.shape()
        )));
    }
    let xe = eigh(x)?;
    if xe.min() <= xe.clip().max(0.0) {
        return Err(Error::RankDeficient { min_eig: xe.min() });
    }
    let sq = xe.map(f64::sqrt);
    let isq = xe.map(|l| 1.0 / l.sqrt());
    let mid = hermitize(&(&isq * y * &isq));
    let fm = spec.apply_to_psd(&mid)?;
    Ok(hermitize(&(&sq * fm * &sq)))
}

/// Right-associated chain `X₁ ♯_{f₁} (X₂ ♯_{f₂} (… X_n))`.
///
/// All but possibly the last operator must be positive definite.
pub fn chained_mean(ops: &[CMatrix], specs: &[MeanSpec]) -> Result<CMatrix> {
    if ops.is_empty() {
        return Err(Error::InvalidParameter("empty operator chain".into()));
    }
    if specs.len() + 1 != ops.len() {
        return Err(Error::InvalidParameter(format!(
            "chain needs {} mean specs for {} operators, got {}",
            ops.len() - 1,
            ops.len(),
            specs.len()
        )));
    }
    let mut acc = ops.last().unwrap().clone();
    for i in (0..specs.len()).rev() {
        acc = kubo_ando_mean(&ops[i], &acc, &specs[i])?;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// three-state divergences
// ---------------------------------------------------------------------------

fn validate_r(r: f64, min: f64) -> Result<()> {
    if !(r >= min) {
        return Err(Error::InvalidParameter(format!("need r ≥ {min}, got {r}")));
    }
    Ok(())
}

fn check_full_rank(omega: &DensityMatrix) -> Result<()> {
    if !omega.is_full_rank() {
        return Err(Error::RankDeficient {
            min_eig: omega.min_eigenvalue(),
        });
    }
    Ok(())
}

/// Matrix-form three-state Rényi divergence
///
/// ```text
/// S^α_{θ₁,θ₂;r} = −2r/((1−θ₁)(1−θ₂)) ·
///     log ‖(ψ₁^{θ₁/((1−α)r)} ♯_α ψ₂^{θ₂/(αr)})^{1/2} ω^{θ₀/(2r)}‖_{2r}
/// ```
///
/// with `θ₀ = 1 − θ₁ − θ₂`. Needs θ₁, θ₂ ∈ [0,1] with θ₁+θ₂ ≤ 1,
/// r ≥ 1/2, α ∈ (0,1), ω full rank, and ψ₁ positive definite beyond the
/// clip (it is the outer mean argument).
pub fn three_state(
    theta1: f64,
    theta2: f64,
    r: f64,
    alpha: f64,
    psi1: &DensityMatrix,
    psi2: &DensityMatrix,
    omega: &DensityMatrix,
) -> Result<DivergenceValue> {
    if !(0.0..=1.0).contains(&theta1)
        || !(0.0..=1.0).contains(&theta2)
        || theta1 + theta2 > 1.0 + 1e-12
    {
        return Err(Error::InvalidParameter(format!(
            "need θ₁, θ₂ ∈ [0,1] with θ₁+θ₂ ≤ 1, got ({theta1}, {theta2})"
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "three-state mean needs α ∈ (0,1), got {alpha}"
        )));
    }
    validate_r(r, 0.5)?;
    check_full_rank(omega)?;
    let theta0 = (1.0 - theta1 - theta2).max(0.0);

    let x = psi1.power(theta1 / ((1.0 - alpha) * r))?;
    let y = psi2.power(theta2 / (alpha * r))?;
    let mean = kubo_ando_mean(&x, &y, &MeanSpec::Power(alpha))?;
    let half = herm_power(&mean, 0.5)?;
    let tail = omega.power(theta0 / (2.0 * r))?;
    let nrm = schatten_norm(&(half * tail), 2.0 * r)?;
    if nrm <= 0.0 {
        return Ok(DivergenceValue::infinite(Family::ThreeState, None, Some(r)));
    }
    let prefactor = -2.0 * r / ((1.0 - theta1) * (1.0 - theta2));
    Ok(DivergenceValue::finite(
        Family::ThreeState,
        prefactor * nrm.ln(),
        None,
        Some(r),
    ))
}

/// Modular-superoperator route to the three-state divergence.
///
/// For a power mean `♯_α` it builds
/// `Δ_{Ψ₁|Ω}^{θ₁/((1−α)r)} ♯_α Δ_{Ψ₂|Ω}^{θ₂/(αr)}` as a dense d²×d² PSD
/// matrix, applies its square root to `|Ω⟩` and takes the (2r,ω)-norm;
/// this equals [`three_state`]. For a general mean it evaluates
/// `−2r·log ‖(Δ₁^{θ₁/r} ♯_f Δ₂^{θ₂/r})^{1/2}|Ω⟩‖_{2r,ω}` (no ratio
/// prefactor).
pub fn three_state_modular(
    theta1: f64,
    theta2: f64,
    r: f64,
    spec: &MeanSpec,
    psi1: &DensityMatrix,
    psi2: &DensityMatrix,
    omega: &DensityMatrix,
) -> Result<DivergenceValue> {
    if !(0.0..=1.0).contains(&theta1)
        || !(0.0..=1.0).contains(&theta2)
        || theta1 + theta2 > 1.0 + 1e-12
    {
        return Err(Error::InvalidParameter(format!(
            "need θ₁, θ₂ ∈ [0,1] with θ₁+θ₂ ≤ 1, got ({theta1}, {theta2})"
        )));
    }
    validate_r(r, 0.5)?;
    check_full_rank(omega)?;

    let (e1, e2, prefactor) = match spec {
        MeanSpec::Power(alpha) => {
            if !(*alpha > 0.0 && *alpha < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "three-state mean needs α ∈ (0,1), got {alpha}"
                )));
            }
            (
                theta1 / ((1.0 - alpha) * r),
                theta2 / (alpha * r),
                -2.0 * r / ((1.0 - theta1) * (1.0 - theta2)),
            )
        }
        MeanSpec::General(_) => (theta1 / r, theta2 / r, -2.0 * r),
    };

    let d1 = relative_modular(psi1.matrix(), omega)?;
    let d2 = relative_modular(psi2.matrix(), omega)?;
    let big1 = d1.materialize_power(e1)?;
    let big2 = d2.materialize_power(e2)?;
    let mean = kubo_ando_mean(&big1, &big2, spec)?;
    let half = herm_power(&mean, 0.5)?;
    let om = omega_vector(omega)?;
    let image = &half * &om.entries;
    let v = GnsVector::new(image, omega.clone())?;
    let nrm = pnorm_omega(&v, 2.0 * r)?;
    if nrm <= 0.0 {
        return Ok(DivergenceValue::infinite(Family::ThreeState, None, Some(r)));
    }
    Ok(DivergenceValue::finite(
        Family::ThreeState,
        prefactor * nrm.ln(),
        None,
        Some(r),
    ))
}

// ---------------------------------------------------------------------------
// n-state divergences
// ---------------------------------------------------------------------------

/// Matrix-form n-state Rényi divergence (see module docs for the formula).
///
/// `normalized = true` divides by `1 − θ₀`, making the measure symmetric
/// between θ₀ and the other weights. The first n−1 states must be positive
/// definite beyond the clip; chain slots with `γ_i = 0` are allowed only
/// when the matching `θ_i = 0` (the factor then carries no weight and is
/// skipped).
pub fn multi_state(
    weights: &ThetaWeights,
    r: f64,
    chain: &AlphaChain,
    states: &[DensityMatrix],
    omega: &DensityMatrix,
    normalized: bool,
) -> Result<DivergenceValue> {
    let n = states.len();
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one state".into()));
    }
    if weights.len() != n || chain.n_states() != n {
        return Err(Error::InvalidParameter(format!(
            "got {n} states but {} weights and a chain for {} states",
            weights.len(),
            chain.n_states()
        )));
    }
    validate_r(r, 1.0)?;
    check_full_rank(omega)?;
    if states.iter().any(|s| s.dim() != omega.dim()) {
        return Err(Error::ShapeMismatch("state dimensions disagree".into()));
    }
    let theta0 = weights.theta0();
    if normalized && theta0 >= 1.0 - 1e-15 {
        return Err(Error::InvalidParameter(
            "normalized variant needs Σθ_i > 0".into(),
        ));
    }

    let gammas = chain.gammas();
    let mut ops = Vec::with_capacity(n);
    for i in 0..n {
        let theta_i = weights.thetas()[i];
        let gamma_i = gammas[i];
        if gamma_i <= 0.0 {
            if theta_i > 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "γ_{} = 0 with θ_{} = {theta_i} > 0 leaves the exponent undefined",
                    i + 1,
                    i + 1
                )));
            }
            // weightless slot: the mean discards it exactly
            ops.push(CMatrix::identity(omega.dim(), omega.dim()));
        } else {
            ops.push(states[i].power(theta_i / (r * gamma_i))?);
        }
    }
    let specs: Vec<MeanSpec> = chain
        .alphas()
        .iter()
        .map(|&a| MeanSpec::Power(a))
        .collect();
    let mean = chained_mean(&ops, &specs)?;
    let half = herm_power(&mean, 0.5)?;
    let tail = omega.power(theta0 / (2.0 * r))?;
    let nrm = schatten_norm(&(half * tail), 2.0 * r)?;
    if nrm <= 0.0 {
        return Ok(DivergenceValue::infinite(Family::MultiState, None, Some(r)));
    }
    let mut prefactor = -2.0 * r;
    for &t in weights.thetas() {
        prefactor /= 1.0 - t;
    }
    let mut value = prefactor * nrm.ln();
    if normalized {
        value /= 1.0 - theta0;
    }
    Ok(DivergenceValue::finite(Family::MultiState, value, None, Some(r)))
}

/// Modular-superoperator route to the n-state divergence: the same chain
/// evaluated on materialized `Δ_{Ψᵢ|Ω}` powers and the (2r,ω)-norm.
pub fn multi_state_modular(
    weights: &ThetaWeights,
    r: f64,
    chain: &AlphaChain,
    states: &[DensityMatrix],
    omega: &DensityMatrix,
    normalized: bool,
) -> Result<DivergenceValue> {
    let n = states.len();
    if weights.len() != n || chain.n_states() != n {
        return Err(Error::InvalidParameter(format!(
            "got {n} states but {} weights and a chain for {} states",
            weights.len(),
            chain.n_states()
        )));
    }
    validate_r(r, 1.0)?;
    check_full_rank(omega)?;
    let theta0 = weights.theta0();
    if normalized && theta0 >= 1.0 - 1e-15 {
        return Err(Error::InvalidParameter(
            "normalized variant needs Σθ_i > 0".into(),
        ));
    }
    let gammas = chain.gammas();
    let d2 = omega.dim() * omega.dim();
    let mut ops = Vec::with_capacity(n);
    for i in 0..n {
        let theta_i = weights.thetas()[i];
        let gamma_i = gammas[i];
        if gamma_i <= 0.0 {
            if theta_i > 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "γ_{} = 0 with θ_{} = {theta_i} > 0 leaves the exponent undefined",
                    i + 1,
                    i + 1
                )));
            }
            ops.push(CMatrix::identity(d2, d2));
        } else {
            let delta = relative_modular(states[i].matrix(), omega)?;
            ops.push(delta.materialize_power(theta_i / (r * gamma_i))?);
        }
    }
    let specs: Vec<MeanSpec> = chain
        .alphas()
        .iter()
        .map(|&a| MeanSpec::Power(a))
        .collect();
    let mean = chained_mean(&ops, &specs)?;
    let half = herm_power(&mean, 0.5)?;
    let om = omega_vector(omega)?;
    let v = GnsVector::new(&half * &om.entries, omega.clone())?;
    let nrm = pnorm_omega(&v, 2.0 * r)?;
    if nrm <= 0.0 {
        return Ok(DivergenceValue::infinite(Family::MultiState, None, Some(r)));
    }
    let mut prefactor = -2.0 * r;
    for &t in weights.thetas() {
        prefactor /= 1.0 - t;
    }
    let mut value = prefactor * nrm.ln();
    if normalized {
        value /= 1.0 - theta0;
    }
    Ok(DivergenceValue::finite(Family::MultiState, value, None, Some(r)))
}

/// Classical generating functional
/// `−log( Σ_x Π p_i(x)^{θ_i} ) / Π(1−θ_i)` for weights summing to 1, with
/// `0^θ = 0` for θ > 0 and factors with θ = 0 skipped.
pub fn classical_multi(thetas: &[f64], dists: &[Vec<f64>]) -> Result<f64> {
    if thetas.len() != dists.len() || thetas.is_empty() {
        return Err(Error::InvalidParameter(
            "need one weight per distribution".into(),
        ));
    }
    if thetas.iter().any(|&t| !(0.0..=1.0).contains(&t)) {
        return Err(Error::InvalidParameter("weights must lie in [0,1]".into()));
    }
    let sum: f64 = thetas.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(format!(
            "weights must sum to 1, got {sum}"
        )));
    }
    let m = dists[0].len();
    for p in dists {
        if p.len() != m {
            return Err(Error::ShapeMismatch("distribution lengths differ".into()));
        }
        let s: f64 = p.iter().sum();
        if p.iter().any(|&x| x < -1e-12) || (s - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(
                "each distribution must be a probability vector".into(),
            ));
        }
    }
    let mut total = 0.0;
    'outer: for x in 0..m {
        let mut term = 1.0;
        for (theta, p) in thetas.iter().zip(dists.iter()) {
            if *theta == 0.0 {
                continue;
            }
            let px = p[x].max(0.0);
            if px == 0.0 {
                continue 'outer; // 0^θ = 0 kills the product
            }
            term *= px.powf(*theta);
        }
        total += term;
    }
    if total <= 0.0 {
        return Ok(f64::INFINITY);
    }
    let mut denom = 1.0;
    for &t in thetas {
        denom *= 1.0 - t;
    }
    Ok(-total.ln() / denom)
}

/// The r → ∞ limit of the n-state divergence:
/// `−log tr exp(Σ θ_i log ψ_i + θ₀ log ω) / Π(1−θ_i)`; independent of the
/// α-chain and invariant under permuting the (ψ_i, θ_i) pairs.
pub fn multi_r_infinity(
    weights: &ThetaWeights,
    states: &[DensityMatrix],
    omega: &DensityMatrix,
) -> Result<DivergenceValue> {
    let n = states.len();
    if weights.len() != n || n == 0 {
        return Err(Error::InvalidParameter(
            "need one weight per state".into(),
        ));
    }
    check_full_rank(omega)?;
    for s in states {
        if !s.is_full_rank() {
            return Err(Error::RankDeficient {
                min_eig: s.min_eigenvalue(),
            });
        }
        if s.dim() != omega.dim() {
            return Err(Error::ShapeMismatch("state dimensions disagree".into()));
        }
    }
    let d = omega.dim();
    let mut h = CMatrix::zeros(d, d);
    for (theta, s) in weights.thetas().iter().zip(states.iter()) {
        h += herm_log(s.matrix())? * c(*theta, 0.0);
    }
    h += herm_log(omega.matrix())? * c(weights.theta0(), 0.0);
    let t = trace(&herm_exp(&hermitize(&h))?).re;
    let mut prefactor = -1.0;
    for &theta in weights.thetas() {
        prefactor /= 1.0 - theta;
    }
    Ok(DivergenceValue::finite(
        Family::MultiState,
        prefactor * t.ln(),
        None,
        None,
    ))
}

/// Linear Richardson extrapolation to `h → 0` from the two smallest grid
/// points, assuming `f(h) = L + a·h + O(h²)`.
pub fn richardson1(hs: &[f64], values: &[f64]) -> Result<f64> {
    if hs.len() != values.len() || hs.len() < 2 {
        return Err(Error::InvalidParameter(
            "Richardson extrapolation needs at least two points".into(),
        ));
    }
    let mut idx: Vec<usize> = (0..hs.len()).collect();
    idx.sort_by(|&a, &b| hs[a].total_cmp(&hs[b]));
    let (h2, f2) = (hs[idx[0]], values[idx[0]]);
    let (h1, f1) = (hs[idx[1]], values[idx[1]]);
    if h1 == h2 {
        return Err(Error::InvalidParameter("duplicate grid point".into()));
    }
    Ok((h1 * f2 - h2 * f1) / (h1 - h2))
}

/// The ε → 0 entropy limit of the normalized n-state divergence.
///
/// Evaluates the hat-normalized measure at `θ_i = ε·β_i` for `ε` in
/// `eps_sequence` and Richardson-extrapolates to ε → 0. The limit is the
/// β-weighted average of the relative entropies of the reference against
/// each state, `Σ β_i S(ω‖ψ_i)`, which is returned as `target` alongside
/// the extrapolated value.
pub fn weighted_relent_limit(
    beta: &[f64],
    r: f64,
    chain: &AlphaChain,
    states: &[DensityMatrix],
    omega: &DensityMatrix,
    eps_sequence: &[f64],
) -> Result<(f64, f64)> {
    let n = states.len();
    if beta.len() != n || chain.n_states() != n {
        return Err(Error::InvalidParameter(
            "need one β per state and a matching chain".into(),
        ));
    }
    let bsum: f64 = beta.iter().sum();
    if beta.iter().any(|&b| b < 0.0) || (bsum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidParameter(
            "β must be a probability vector".into(),
        ));
    }
    if eps_sequence.len() < 2 {
        return Err(Error::InvalidParameter(
            "need at least two ε values".into(),
        ));
    }
    for s in states {
        if !s.is_full_rank() {
            return Err(Error::RankDeficient {
                min_eig: s.min_eigenvalue(),
            });
        }
    }
    check_full_rank(omega)?;

    let mut values = Vec::with_capacity(eps_sequence.len());
    for &eps in eps_sequence {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "ε must lie in (0,1), got {eps}"
            )));
        }
        let thetas: Vec<f64> = beta.iter().map(|&b| eps * b).collect();
        let w = ThetaWeights::new(thetas)?;
        let v = multi_state(&w, r, chain, states, omega, true)?;
        values.push(v.value);
    }
    let extrapolated = richardson1(eps_sequence, &values)?;
    let mut target = 0.0;
    for (b, s) in beta.iter().zip(states.iter()) {
        target += b * relative_entropy(omega, s)?.value;
    }
    Ok((extrapolated, target))
}

/// Default ε grid for entropy limits: `2^{−k}` for k = 3..=10.
pub fn default_eps_sequence() -> Vec<f64> {
    (3..=10).map(|k| 2.0f64.powi(-k)).collect()
}
