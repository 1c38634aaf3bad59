//! Two-state quantum Rényi divergence families.
//!
//! Everything here is reported in nats. The families:
//!
//! * relative entropy `S(ψ‖ω) = tr ψ(log ψ − log ω)`;
//! * Petz `D_θ = log tr(ψ^θ ω^{1−θ}) / (θ−1)` for θ ∈ (0,1);
//! * sandwiched `S_θ = log tr((ω^{(1−θ)/2θ} ψ ω^{(1−θ)/2θ})^θ) / (θ−1)`;
//! * the two-parameter family
//!   `S_{θ,r} = log tr[(ω^{(1−θ)/2r} ψ^{θ/r} ω^{(1−θ)/2r})^r] / (θ−1)`,
//!   which is Petz at `r = 1` and sandwiched at `r = θ`;
//! * operator-monotone f-divergences
//!   `S^f_r = −2r·log ‖f(Δ^{1/r})^{1/2}|Ω⟩‖_{2r,ω}`;
//! * extensions of `S_{θ,r}` to θ ∈ (−1,1), the r → ∞ limit, and
//!   log-fidelity.
//!
//! [`theta_r_modular`] evaluates `S_{θ,r}` through the relative modular
//! operator and the (2r,ω)-norm instead of the direct trace formula; the
//! two routes agree to high precision and cross-check each other.

use serde::Serialize;

use crate::linops::{eigh, herm_exp, herm_log, hermitize, schatten_norm, trace, CLIP_FACTOR};
use crate::states::{omega_vector, pnorm_omega, relative_modular, DensityMatrix, GnsVector};
use crate::{Error, Result};

/// Which divergence family a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    RelativeEntropy,
    Petz,
    Sandwiched,
    ThetaR,
    FDivergence,
    ExtendedThetaR,
    RInfinity,
    LogFidelity,
    ThreeState,
    MultiState,
    Classical,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Family::RelativeEntropy => "relative_entropy",
            Family::Petz => "petz",
            Family::Sandwiched => "sandwiched",
            Family::ThetaR => "theta_r",
            Family::FDivergence => "f_divergence",
            Family::ExtendedThetaR => "extended_theta_r",
            Family::RInfinity => "r_infinity",
            Family::LogFidelity => "log_fidelity",
            Family::ThreeState => "three_state",
            Family::MultiState => "multi_state",
            Family::Classical => "classical",
        };
        f.write_str(name)
    }
}

/// One divergence evaluation, in nats. `finite = false` means a support
/// condition failed and the value is `+∞`.
#[derive(Debug, Clone, Serialize)]
pub struct DivergenceValue {
    pub value: f64,
    pub finite: bool,
    pub family: Family,
    pub theta: Option<f64>,
    pub r: Option<f64>,
}

impl DivergenceValue {
    pub fn finite(family: Family, value: f64, theta: Option<f64>, r: Option<f64>) -> Self {
        Self {
            value,
            finite: true,
            family,
            theta,
            r,
        }
    }

    pub fn infinite(family: Family, theta: Option<f64>, r: Option<f64>) -> Self {
        Self {
            value: f64::INFINITY,
            finite: false,
            family,
            theta,
            r,
        }
    }
}

fn check_same_dim(psi: &DensityMatrix, omega: &DensityMatrix) -> Result<()> {
    if psi.dim() != omega.dim() {
        return Err(Error::ShapeMismatch(format!(
            "states have different dimensions: {} vs {}",
            psi.dim(),
            omega.dim()
        )));
    }
    Ok(())
}

/// `S(ψ‖ω) = tr ψ(log ψ − log ω)` on the support of ψ; `+∞` when
/// `supp ψ ⊄ supp ω`.
pub fn relative_entropy(psi: &DensityMatrix, omega: &DensityMatrix) -> Result<DivergenceValue> {
    check_same_dim(psi, omega)?;
    let pe = psi.eigensystem()?;
    let qe = omega.eigensystem()?;
    let p_clip = pe.clip().max(CLIP_FACTOR);
    let q_clip = qe.clip().max(CLIP_FACTOR);
    let d = psi.dim();
    let overlaps = pe.vectors.adjoint() * &qe.vectors; // ⟨u_i|w_j⟩
    let mut s = 0.0;
    for i in 0..d {
        let p = pe.values[i];
        if p <= p_clip {
            continue;
        }
        s += p * p.ln();
        for j in 0..d {
            let o = overlaps[(i, j)].norm_sqr();
            let q = qe.values[j];
            if q <= q_clip {
                if p * o > 1e-12 {
                    return Ok(DivergenceValue::infinite(
                        Family::RelativeEntropy,
                        None,
                        None,
                    ));
                }
                continue;
            }
            s -= p * o * q.ln();
        }
    }
    Ok(DivergenceValue::finite(Family::RelativeEntropy, s, None, None))
}

/// Spectral-overlap evaluation of `tr(ψ^θ ω^{1−θ})` with `0^x = 0`.
pub(crate) fn petz_trace(psi: &DensityMatrix, omega: &DensityMatrix, theta: f64) -> Result<f64> {
    let pe = psi.eigensystem()?;
    let qe = omega.eigensystem()?;
    let p_clip = pe.clip().max(CLIP_FACTOR);
    let q_clip = qe.clip().max(CLIP_FACTOR);
    let d = psi.dim();
    let overlaps = pe.vectors.adjoint() * &qe.vectors;
    let mut t = 0.0;
    for i in 0..d {
        let p = pe.values[i];
        if p <= p_clip {
            continue;
        }
        for j in 0..d {
            let q = qe.values[j];
            if q <= q_clip {
                continue;
            }
            t += p.powf(theta) * q.powf(1.0 - theta) * overlaps[(i, j)].norm_sqr();
        }
    }
    Ok(t)
}

/// Petz Rényi divergence, θ ∈ (0,1).
pub fn petz(theta: f64, psi: &DensityMatrix, omega: &DensityMatrix) -> Result<DivergenceValue> {
    check_same_dim(psi, omega)?;
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "Petz divergence needs θ ∈ (0,1), got {theta} (use relative_entropy for θ = 1)"
        )));
    }
    let t = petz_trace(psi, omega, theta)?;
    if t <= 0.0 {
        return Ok(DivergenceValue::infinite(Family::Petz, Some(theta), None));
    }
    Ok(DivergenceValue::finite(
        Family::Petz,
        t.ln() / (theta - 1.0),
        Some(theta),
        None,
    ))
}

/// Sandwiched Rényi divergence, θ ∈ (0,1) ∪ (1,∞). For θ > 1 the reference
/// must be full rank.
pub fn sandwiched(
    theta: f64,
    psi: &DensityMatrix,
    omega: &DensityMatrix,
) -> Result<DivergenceValue> {
    check_same_dim(psi, omega)?;
    if !(theta > 0.0) || theta == 1.0 {
        return Err(Error::InvalidParameter(format!(
            "sandwiched divergence needs θ ∈ (0,1) ∪ (1,∞), got {theta}"
        )));
    }
    let exponent = (1.0 - theta) / (2.0 * theta);
    if exponent < 0.0 && !omega.is_full_rank() {
        return Err(Error::RankDeficient {
            min_eig: omega.min_eigenvalue(),
        });
    }
    let w = omega.power(exponent)?;
    let m = hermitize(&(&w * psi.matrix() * &w));
    let eig = eigh(&m)?;
    let clip = eig.clip().max(CLIP_FACTOR);
    let t: f64 = eig
        .values
        .iter()
        .filter(|&&l| l > clip)
        .map(|&l| l.powf(theta))
        .sum();
    if t <= 0.0 {
        return Ok(DivergenceValue::infinite(Family::Sandwiched, Some(theta), None));
    }
    Ok(DivergenceValue::finite(
        Family::Sandwiched,
        t.ln() / (theta - 1.0),
        Some(theta),
        None,
    ))
}

/// The (θ,r)-Rényi divergence
/// `S_{θ,r} = log tr[(ω^{(1−θ)/2r} ψ^{θ/r} ω^{(1−θ)/2r})^r] / (θ−1)` for
/// θ ∈ [0,1), r ≥ 1/2, full-rank ω.
///
/// `r = 1` is the Petz divergence and `r = θ` the sandwiched one. θ = 0 is
/// the boundary formula with `ψ^0` the support projector; θ = 1 is
/// rejected (its limit is the relative entropy).
pub fn theta_r(
    theta: f64,
    r: f64,
    psi: &DensityMatrix,
    omega: &DensityMatrix,
) -> Result<DivergenceValue> {
    check_same_dim(psi, omega)?;
    if !(0.0..1.0).contains(&theta) {
        return Err(Error::InvalidParameter(format!(
            "(θ,r) divergence needs θ ∈ [0,1), got {theta} (use relative_entropy for θ = 1)"
        )));
    }
    if !(r >= 0.5) {
        return Err(Error::InvalidParameter(format!(
            "(θ,r) divergence needs r ≥ 1/2, got {r}"
        )));
    }
    if !omega.is_full_rank() {
        return Err(Error::RankDeficient {
            min_eig: omega.min_eigenvalue(),
        });
    }
    let w = omega.power((1.0 - theta) / (2.0 * r))?;
    let inner = psi.power(theta / r)?;
    let m = hermitize(&(&w * inner * &w));
    let eig = eigh(&m)?;
    let clip = eig.clip().max(CLIP_FACTOR);
    let t: f64 = eig
        .values
        .iter()
        .filter(|&&l| l > clip)
        .map(|&l| l.powf(r))
        .sum();
    if t <= 0.0 {
        return Ok(DivergenceValue::infinite(Family::ThetaR, Some(theta), Some(r)));
    }
    Ok(DivergenceValue::finite(
        Family::ThetaR,
        t.ln() / (theta - 1.0),
        Some(theta),
        Some(r),
    ))
}

/// Modular-operator evaluation of the (θ,r) divergence:
/// `S_{θ,r} = −2r/(1−θ) · log ‖Δ_{Ψ|Ω}^{θ/(2r)} |Ω⟩‖_{2r,ω}`.
///
/// Independent route from [`theta_r`]; the two agree within crate
/// tolerances on valid inputs.
pub fn theta_r_modular(
    theta: f64,
    r: f64,
    psi: &DensityMatrix,
    omega: &DensityMatrix,
) -> Result<DivergenceValue> {
    check_same_dim(psi, omega)?;
    if !(0.0..1.0).contains(&theta) {
        return Err(Error::InvalidParameter(format!(
            "(θ,r) divergence needs θ ∈ [0,1), got {theta}"
        )));
    }
    if !(r >= 0.5) {
        return Err(Error::InvalidParameter(format!(
            "(θ,r) divergence needs r ≥ 1/2, got {r}"
        )));
    }
    let delta = relative_modular(psi.matrix(), omega)?;
    let om = omega_vector(omega)?;
    let image = delta.apply_power(theta / (2.0 * r), &om.entries)?;
    let v = GnsVector::new(image, omega.clone())?;
    let nrm = pnorm_omega(&v, 2.0 * r)?;
    if nrm <= 0.0 {
        return Ok(DivergenceValue::infinite(Family::ThetaR, Some(theta), Some(r)));
    }
    Ok(DivergenceValue::finite(
        Family::ThetaR,
        -2.0 * r * nrm.ln() / (1.0 - theta),
        Some(theta),
        Some(r),
    ))
}

/// Built-in operator-monotone scalar functions for [`f_divergence`].
#[derive(Debug, Clone, Copy)]
pub enum MonotoneFn {
    /// `x ↦ x^α`, operator monotone for α ∈ [0,1].
    Power(f64),
    /// `x ↦ x·log x` (positive on the spectrum only above 1).
    XLogX,
    /// `x ↦ log x` (positive on the spectrum only above 1).
    Log,
}

impl MonotoneFn {
    pub fn eval(&self, x: f64) -> f64 {
        match self {
            MonotoneFn::Power(a) => {
                if x > 0.0 {
                    x.powf(*a)
                } else if *a > 0.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
            MonotoneFn::XLogX => {
                if x > 0.0 {
                    x * x.ln()
                } else {
                    0.0
                }
            }
            MonotoneFn::Log => {
                if x > 0.0 {
                    x.ln()
                } else {
                    f64::NEG_INFINITY
                }
            }
        }
    }
}

/// Operator-monotone f-divergence
/// `S^f_r = −2r · log ‖f(Δ_{Ψ|Ω}^{1/r})^{1/2} |Ω⟩‖_{2r,ω}` for r ≥ 1.
///
/// `f` must be nonnegative on the clipped spectrum of `Δ^{1/r}` (a
/// negative or non-finite value is a domain error). With `f(x) = x^θ` this
/// reduces to `(1−θ)·S_{θ,r}`.
pub fn f_divergence(
    f: MonotoneFn,
    r: f64,
    psi: &DensityMatrix,
    omega: &DensityMatrix,
) -> Result<DivergenceValue> {
    check_same_dim(psi, omega)?;
    if !(r >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "f-divergence needs r ≥ 1, got {r}"
        )));
    }
    let delta = relative_modular(psi.matrix(), omega)?;
    let om = omega_vector(omega)?;
    // g = sqrt ∘ f ∘ (·)^{1/r}, validated nonnegative on the spectrum
    let bad = std::cell::Cell::new(None);
    let image = delta.apply_eigen_fn(
        |lam| {
            let y = f.eval(lam.powf(1.0 / r));
            if y < 0.0 || !y.is_finite() {
                bad.set(Some(y));
                0.0
            } else {
                y.sqrt()
            }
        },
        &om.entries,
    )?;
    if let Some(y) = bad.get() {
        return Err(Error::Domain(format!(
            "f takes nonpositive or non-finite value {y:.3e} on the spectrum"
        )));
    }
    let v = GnsVector::new(image, omega.clone())?;
    let nrm = pnorm_omega(&v, 2.0 * r)?;
    if nrm <= 0.0 {
        return Ok(DivergenceValue::infinite(Family::FDivergence, None, Some(r)));
    }
    Ok(DivergenceValue::finite(
        Family::FDivergence,
        -2.0 * r * nrm.ln(),
        None,
        Some(r),
    ))
}

/// Normalization variant of the extended-range (θ,r) divergence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtendedVariant {
    /// `−2r·sign(θ)/(1−θ)` prefactor.
    Signed,
    /// `−2r/(θ(1−θ))` prefactor; at r = 1 this interpolates between
    /// `S(ω‖ψ)` at θ → 0 and `S(ψ‖ω)` at θ → 1.
    Hat,
}

/// Extended-range (θ,r) divergence for θ ∈ (−1,1)\{0}, r ≥ 1.
///
/// For θ < 0 the construction needs `supp ω ⊆ supp ψ` and a finite
/// majorization constant `c = ‖ψ^{−1/2} ω ψ^{−1/2}‖_∞` (so that
/// `ω ≤ c·ψ`); a rank-deficient ψ makes the value `+∞`. Returns the value
/// together with the witness `c` (`+∞` when ψ is rank-deficient).
pub fn extended_theta_r(
    theta: f64,
    r: f64,
    psi: &DensityMatrix,
    omega: &DensityMatrix,
    variant: ExtendedVariant,
) -> Result<(DivergenceValue, f64)> {
    check_same_dim(psi, omega)?;
    if !(theta > -1.0 && theta < 1.0) || theta == 0.0 {
        return Err(Error::InvalidParameter(format!(
            "extended range needs θ ∈ (−1,1) \\ {{0}}, got {theta}"
        )));
    }
    if !(r >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "extended range needs r ≥ 1, got {r}"
        )));
    }
    let c_witness = if psi.is_full_rank() {
        let half_inv = psi.power(-0.5)?;
        schatten_norm(&(&half_inv * omega.matrix() * &half_inv), f64::INFINITY)?
    } else {
        f64::INFINITY
    };
    if theta < 0.0 && !psi.is_full_rank() {
        return Ok((
            DivergenceValue::infinite(Family::ExtendedThetaR, Some(theta), Some(r)),
            c_witness,
        ));
    }
    let delta = relative_modular(psi.matrix(), omega)?;
    let om = omega_vector(omega)?;
    let image = delta.apply_power(theta / (2.0 * r), &om.entries)?;
    let v = GnsVector::new(image, omega.clone())?;
    let nrm = pnorm_omega(&v, 2.0 * r)?;
    if nrm <= 0.0 {
        return Ok((
            DivergenceValue::infinite(Family::ExtendedThetaR, Some(theta), Some(r)),
            c_witness,
        ));
    }
    let prefactor = match variant {
        ExtendedVariant::Signed => -2.0 * r * theta.signum() / (1.0 - theta),
        ExtendedVariant::Hat => -2.0 * r / (theta * (1.0 - theta)),
    };
    Ok((
        DivergenceValue::finite(
            Family::ExtendedThetaR,
            prefactor * nrm.ln(),
            Some(theta),
            Some(r),
        ),
        c_witness,
    ))
}

/// The r → ∞ limit of the (θ,r) family:
/// `log tr exp(θ log ψ + (1−θ) log ω) / (θ−1)` for θ ∈ (0,1), full-rank
/// states.
pub fn r_infinity(
    theta: f64,
    psi: &DensityMatrix,
    omega: &DensityMatrix,
) -> Result<DivergenceValue> {
    check_same_dim(psi, omega)?;
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "r_infinity needs θ ∈ (0,1), got {theta}"
        )));
    }
    if !psi.is_full_rank() {
        return Err(Error::RankDeficient {
            min_eig: psi.min_eigenvalue(),
        });
    }
    if !omega.is_full_rank() {
        return Err(Error::RankDeficient {
            min_eig: omega.min_eigenvalue(),
        });
    }
    let h = herm_log(psi.matrix())? * num_complex::Complex64::new(theta, 0.0)
        + herm_log(omega.matrix())? * num_complex::Complex64::new(1.0 - theta, 0.0);
    let t = trace(&herm_exp(&hermitize(&h))?).re;
    Ok(DivergenceValue::finite(
        Family::RInfinity,
        t.ln() / (theta - 1.0),
        Some(theta),
        None,
    ))
}

/// Log-fidelity `−2 log tr √(ω^{1/2} ψ ω^{1/2})`; symmetric under swapping
/// the states and equal to the sandwiched divergence at θ = 1/2.
pub fn log_fidelity(psi: &DensityMatrix, omega: &DensityMatrix) -> Result<DivergenceValue> {
    check_same_dim(psi, omega)?;
    let w = omega.sqrt()?;
    let m = hermitize(&(&w * psi.matrix() * &w));
    let eig = eigh(&m)?;
    let t: f64 = eig.values.iter().map(|&l| l.max(0.0).sqrt()).sum();
    if t <= 1e-150 {
        return Ok(DivergenceValue::infinite(Family::LogFidelity, Some(0.5), None));
    }
    Ok(DivergenceValue::finite(
        Family::LogFidelity,
        -2.0 * t.ln(),
        Some(0.5),
        None,
    ))
}

/// Classical Rényi divergence of two probability vectors (the commuting
/// reduction oracle): `log Σ q_x^θ p_x^{1−θ} / (θ−1)` with `0^x = 0`.
pub fn classical_renyi(theta: f64, q: &[f64], p: &[f64]) -> Result<f64> {
    if q.len() != p.len() {
        return Err(Error::ShapeMismatch("distribution lengths differ".into()));
    }
    if !(theta > 0.0) || theta == 1.0 {
        return Err(Error::InvalidParameter(format!(
            "classical Rényi needs θ ∈ (0,1) ∪ (1,∞), got {theta}"
        )));
    }
    let mut s = 0.0;
    for (&qi, &pi) in q.iter().zip(p.iter()) {
        if qi > 0.0 && pi > 0.0 {
            s += qi.powf(theta) * pi.powf(1.0 - theta);
        } else if qi > 0.0 && pi <= 0.0 && theta > 1.0 {
            return Ok(f64::INFINITY);
        }
    }
    if s <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(s.ln() / (theta - 1.0))
}

/// Classical relative entropy `Σ q log(q/p)` with the usual support
/// conventions.
pub fn classical_kl(q: &[f64], p: &[f64]) -> Result<f64> {
    if q.len() != p.len() {
        return Err(Error::ShapeMismatch("distribution lengths differ".into()));
    }
    let mut s = 0.0;
    for (&qi, &pi) in q.iter().zip(p.iter()) {
        if qi > 0.0 {
            if pi <= 0.0 {
                return Ok(f64::INFINITY);
            }
            s += qi * (qi / pi).ln();
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::random_density;
    use approx::assert_relative_eq;

    fn diag_state(p: &[f64]) -> DensityMatrix {
        DensityMatrix::from_probabilities(p).unwrap()
    }

    #[test]
    fn relative_entropy_examples() {
        let omega = random_density(3, 3, 1).unwrap();
        let zero = relative_entropy(&omega, &omega).unwrap();
        assert!(zero.finite && zero.value.abs() < 1e-10);

        let psi = diag_state(&[1.0, 0.0]);
        let omega = diag_state(&[0.5, 0.5]);
        let v = relative_entropy(&psi, &omega).unwrap();
        assert_relative_eq!(v.value, 2.0f64.ln(), epsilon = 1e-12);

        let psi = diag_state(&[1.0, 0.0]);
        let omega = diag_state(&[0.0, 1.0]);
        let v = relative_entropy(&psi, &omega).unwrap();
        assert!(!v.finite && v.value.is_infinite());
    }

    #[test]
    fn petz_and_sandwiched_examples() {
        let omega = random_density(2, 2, 3).unwrap();
        assert!(petz(0.5, &omega, &omega).unwrap().value.abs() < 1e-10);
        assert!(sandwiched(0.5, &omega, &omega).unwrap().value.abs() < 1e-10);
        assert!(petz(1.0, &omega, &omega).is_err());
        assert!(sandwiched(1.0, &omega, &omega).is_err());

        // commuting states reduce to the classical formula
        let q = [0.6, 0.3, 0.1];
        let p = [0.2, 0.5, 0.3];
        let psi = diag_state(&q);
        let om = diag_state(&p);
        for &theta in &[0.3, 0.5, 0.8] {
            let classical = classical_renyi(theta, &q, &p).unwrap();
            assert_relative_eq!(petz(theta, &psi, &om).unwrap().value, classical, epsilon = 1e-10);
            assert_relative_eq!(
                sandwiched(theta, &psi, &om).unwrap().value,
                classical,
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn sandwiched_half_is_log_fidelity() {
        for seed in 0..5u64 {
            let psi = random_density(3, 3, 10 + seed).unwrap();
            let omega = random_density(3, 3, 20 + seed).unwrap();
            let lf = log_fidelity(&psi, &omega).unwrap();
            let sw = sandwiched(0.5, &psi, &omega).unwrap();
            assert_relative_eq!(lf.value, sw.value, epsilon = 1e-9);
            // symmetry under swap
            let lf_swapped = log_fidelity(&omega, &psi).unwrap();
            assert_relative_eq!(lf.value, lf_swapped.value, epsilon = 1e-9);
        }
    }

    #[test]
    fn log_fidelity_orthogonal_pure_states() {
        let psi = DensityMatrix::pure_basis_state(2, 0);
        let omega = DensityMatrix::pure_basis_state(2, 1);
        let v = log_fidelity(&psi, &omega).unwrap();
        assert!(!v.finite);
    }

    #[test]
    fn theta_r_special_points() {
        for seed in 0..5u64 {
            let psi = random_density(3, 3, 30 + seed).unwrap();
            let omega = random_density(3, 3, 40 + seed).unwrap();
            for &theta in &[0.2, 0.5, 0.8] {
                // r = 1 is Petz
                assert_relative_eq!(
                    theta_r(theta, 1.0, &psi, &omega).unwrap().value,
                    petz(theta, &psi, &omega).unwrap().value,
                    epsilon = 1e-9
                );
            }
            // r = θ is sandwiched (θ ≥ 1/2 keeps r in range)
            for &theta in &[0.5, 0.7, 0.9] {
                assert_relative_eq!(
                    theta_r(theta, theta, &psi, &omega).unwrap().value,
                    sandwiched(theta, &psi, &omega).unwrap().value,
                    epsilon = 1e-9
                );
            }
            // the symmetry (1−θ)·S_{θ,r}(ψ‖ω) = θ·S_{1−θ,r}(ω‖ψ)
            for &(theta, r) in &[(0.3, 1.0), (0.25, 2.0), (0.7, 1.5)] {
                let lhs = (1.0 - theta) * theta_r(theta, r, &psi, &omega).unwrap().value;
                let rhs = theta * theta_r(1.0 - theta, r, &omega, &psi).unwrap().value;
                assert_relative_eq!(lhs, rhs, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn modular_route_matches_trace_route() {
        for seed in 0..10u64 {
            let psi = random_density(3, 3, 60 + seed).unwrap();
            let omega = random_density(3, 3, 80 + seed).unwrap();
            for &(theta, r) in &[(0.3, 2.0), (0.1, 0.5), (0.5, 1.0), (0.9, 4.0)] {
                let a = theta_r(theta, r, &psi, &omega).unwrap().value;
                let b = theta_r_modular(theta, r, &psi, &omega).unwrap().value;
                assert!(
                    (a - b).abs() < 1e-8,
                    "paths disagree: {a} vs {b} at ({theta},{r})"
                );
            }
        }
        // identical states give zero
        let omega = random_density(2, 2, 90).unwrap();
        assert!(theta_r_modular(0.3, 2.0, &omega, &omega).unwrap().value.abs() < 1e-9);
        // commuting states: classical value
        let q = [0.7, 0.3];
        let p = [0.4, 0.6];
        let v = theta_r_modular(0.3, 2.0, &diag_state(&q), &diag_state(&p)).unwrap();
        assert_relative_eq!(
            v.value,
            classical_renyi(0.3, &q, &p).unwrap(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn f_divergence_power_reduces_to_theta_r() {
        for seed in 0..5u64 {
            let psi = random_density(2, 2, 100 + seed).unwrap();
            let omega = random_density(2, 2, 110 + seed).unwrap();
            for &(theta, r) in &[(0.3, 1.0), (0.5, 2.0), (0.8, 1.5)] {
                let f = f_divergence(MonotoneFn::Power(theta), r, &psi, &omega).unwrap();
                let s = theta_r(theta, r, &psi, &omega).unwrap();
                assert_relative_eq!(f.value, (1.0 - theta) * s.value, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn f_divergence_constant_one_is_zero() {
        let psi = random_density(2, 2, 120).unwrap();
        let omega = random_density(2, 2, 121).unwrap();
        // x^0 = 1 on a full-rank spectrum
        let v = f_divergence(MonotoneFn::Power(0.0), 1.0, &psi, &omega).unwrap();
        assert!(v.value.abs() < 1e-9);
        // ψ = ω with any power: spectrum contains 1s, f(1) = 1
        let v = f_divergence(MonotoneFn::Power(0.4), 2.0, &omega, &omega).unwrap();
        assert!(v.value.abs() < 1e-9);
    }

    #[test]
    fn f_divergence_log_rejected_on_small_spectrum() {
        // log is negative below 1, and a generic spectrum dips below 1
        let omega = random_density(2, 2, 130).unwrap();
        assert!(matches!(
            f_divergence(MonotoneFn::Log, 1.0, &omega, &omega),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn extended_theta_r_examples() {
        let psi = random_density(2, 2, 140).unwrap();
        let omega = random_density(2, 2, 141).unwrap();
        // ψ = ω gives zero for both variants, with witness c = 1
        for variant in [ExtendedVariant::Signed, ExtendedVariant::Hat] {
            let (v, cw) = extended_theta_r(0.5, 1.0, &omega, &omega, variant).unwrap();
            assert!(v.value.abs() < 1e-9);
            assert_relative_eq!(cw, 1.0, epsilon = 1e-8);
        }
        // θ < 0 needs full-rank ψ
        let lowrank = random_density(3, 2, 142).unwrap();
        let om3 = random_density(3, 3, 143).unwrap();
        let (v, cw) =
            extended_theta_r(-0.5, 1.0, &lowrank, &om3, ExtendedVariant::Signed).unwrap();
        assert!(!v.finite);
        assert!(cw.is_infinite());
        // positive θ agrees with theta_r for the signed variant
        let (v, _) = extended_theta_r(0.4, 2.0, &psi, &omega, ExtendedVariant::Signed).unwrap();
        let s = theta_r(0.4, 2.0, &psi, &omega).unwrap();
        assert_relative_eq!(v.value, s.value, epsilon = 1e-9);
    }

    #[test]
    fn hat_variant_interpolates_relative_entropies() {
        // at r = 1: θ → 1 gives S(ψ‖ω), θ → 0 gives S(ω‖ψ)
        let psi = random_density(2, 2, 150).unwrap().depolarized(0.2);
        let omega = random_density(2, 2, 151).unwrap().depolarized(0.2);
        let s_po = relative_entropy(&psi, &omega).unwrap().value;
        let s_op = relative_entropy(&omega, &psi).unwrap().value;

        let richardson = |h: f64, f: &dyn Fn(f64) -> f64| 2.0 * f(h / 2.0) - f(h);
        let near_one = |eps: f64| {
            extended_theta_r(1.0 - eps, 1.0, &psi, &omega, ExtendedVariant::Hat)
                .unwrap()
                .0
                .value
        };
        let near_zero = |eps: f64| {
            extended_theta_r(eps, 1.0, &psi, &omega, ExtendedVariant::Hat)
                .unwrap()
                .0
                .value
        };
        assert!((richardson(1e-3, &near_one) - s_po).abs() < 1e-4);
        assert!((richardson(1e-3, &near_zero) - s_op).abs() < 1e-4);
    }

    #[test]
    fn r_infinity_examples() {
        // commuting states: value independent of r
        let q = [0.7, 0.3];
        let p = [0.4, 0.6];
        let psi = diag_state(&q);
        let omega = diag_state(&p);
        let inf = r_infinity(0.4, &psi, &omega).unwrap().value;
        for &r in &[0.5, 1.0, 3.0] {
            assert_relative_eq!(
                theta_r(0.4, r, &psi, &omega).unwrap().value,
                inf,
                epsilon = 1e-10
            );
        }
        assert_relative_eq!(inf, classical_renyi(0.4, &q, &p).unwrap(), epsilon = 1e-12);

        let omega = random_density(2, 2, 160).unwrap();
        assert!(r_infinity(0.3, &omega, &omega).unwrap().value.abs() < 1e-10);

        // convergence sweep: |S_{θ,2^k} − S_∞| decreasing in k
        let psi = random_density(2, 2, 161).unwrap().depolarized(0.3);
        let omega = random_density(2, 2, 162).unwrap().depolarized(0.3);
        let target = r_infinity(0.5, &psi, &omega).unwrap().value;
        let mut last = f64::INFINITY;
        for k in 0..=8i32 {
            let r = 2.0f64.powi(k);
            let gap = (theta_r(0.5, r, &psi, &omega).unwrap().value - target).abs();
            assert!(gap < last + 1e-12, "gap not decreasing at k={k}: {gap} vs {last}");
            last = gap;
        }
        assert!(last < 1e-3, "final gap too large: {last}");
    }

    #[test]
    fn non_negativity_on_normalized_states() {
        for seed in 0..10u64 {
            let psi = random_density(3, 3, 200 + seed).unwrap();
            let omega = random_density(3, 3, 300 + seed).unwrap();
            assert!(relative_entropy(&psi, &omega).unwrap().value >= -1e-9);
            assert!(petz(0.3, &psi, &omega).unwrap().value >= -1e-9);
            assert!(sandwiched(1.7, &psi, &omega).unwrap().value >= -1e-9);
            assert!(theta_r(0.6, 2.0, &psi, &omega).unwrap().value >= -1e-9);
            assert!(log_fidelity(&psi, &omega).unwrap().value >= -1e-9);
        }
    }

    #[test]
    fn unitary_covariance() {
        use crate::states::haar_unitary;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(400);
        let psi = random_density(3, 3, 401).unwrap();
        let omega = random_density(3, 3, 402).unwrap();
        let u = haar_unitary(3, &mut rng);
        let rot = |s: &DensityMatrix| {
            DensityMatrix::new(hermitize(&(&u * s.matrix() * u.adjoint()))).unwrap()
        };
        let (psi_u, omega_u) = (rot(&psi), rot(&omega));
        assert_relative_eq!(
            theta_r(0.4, 2.0, &psi, &omega).unwrap().value,
            theta_r(0.4, 2.0, &psi_u, &omega_u).unwrap().value,
            epsilon = 1e-8
        );
        assert_relative_eq!(
            relative_entropy(&psi, &omega).unwrap().value,
            relative_entropy(&psi_u, &omega_u).unwrap().value,
            epsilon = 1e-8
        );
    }
}
