//! Desk-scale state-discrimination quantities: Chernoff, Hoeffding and
//! converse Hoeffding exponents, the multi-hypothesis minimum relative
//! entropy, the pairwise Chernoff distance, and finite-copy optimal errors
//! (Helstrom error, Neyman-Pearson trade-off curves) on tensor powers.
//!
//! One-dimensional optimizations use a coarse grid followed by
//! golden-section refinement. Only the Chernoff objective
//! `θ ↦ log tr(ψ^θ ω^{1−θ})` is relied on to be convex; the others keep
//! the global grid in case of multiple local optima.

use crate::divergences::{petz_trace, relative_entropy, sandwiched};
use crate::linops::{eigh, hermitize, tensor_power};
use crate::states::DensityMatrix;
use crate::{Error, Result};

/// Largest tensor-power dimension the finite-n routines will materialize.
pub const TENSOR_POWER_CAP: usize = 4096;

/// Result of a one-dimensional exponent optimization.
#[derive(Debug, Clone)]
pub struct ExponentResult {
    /// The optimal value, in nats per copy (`+∞` on disjoint supports).
    pub value: f64,
    /// The θ achieving it.
    pub optimizer: f64,
    /// Width of the final search bracket.
    pub grid_resolution: f64,
    /// True when the optimizer sits at the edge of a finite search window
    /// (only meaningful for [`converse_hoeffding`], whose supremum ranges
    /// over an unbounded set).
    pub at_window_edge: bool,
}

/// A null hypothesis ω together with the alternative states.
#[derive(Debug, Clone)]
pub struct HypothesisSet {
    pub null_state: DensityMatrix,
    pub alternatives: Vec<DensityMatrix>,
}

impl HypothesisSet {
    pub fn new(null_state: DensityMatrix, alternatives: Vec<DensityMatrix>) -> Result<Self> {
        if alternatives.is_empty() {
            return Err(Error::InvalidParameter(
                "need at least one alternative hypothesis".into(),
            ));
        }
        if alternatives.iter().any(|s| s.dim() != null_state.dim()) {
            return Err(Error::ShapeMismatch(
                "hypotheses must share one dimension".into(),
            ));
        }
        Ok(Self {
            null_state,
            alternatives,
        })
    }
}

/// Golden-section minimization of a unimodal function on `[a, b]` down to
/// a bracket of width `tol`.
fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > tol {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 < f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Coarse grid scan followed by golden-section refinement around the best
/// grid point. Returns `(argmin, min, bracket_width)`.
fn grid_then_golden(
    f: &dyn Fn(f64) -> f64,
    grid: &[f64],
    lo: f64,
    hi: f64,
    tol: f64,
) -> (f64, f64, f64) {
    let mut best_idx = 0;
    let mut best = f64::INFINITY;
    for (i, &x) in grid.iter().enumerate() {
        let y = f(x);
        if y < best {
            best = y;
            best_idx = i;
        }
    }
    let a = if best_idx == 0 { lo } else { grid[best_idx - 1] };
    let b = if best_idx + 1 == grid.len() {
        hi
    } else {
        grid[best_idx + 1]
    };
    let (x, y) = golden_min(f, a, b, tol);
    if y < best {
        (x, y, tol)
    } else {
        (grid[best_idx], best, b - a)
    }
}

/// Quantum Chernoff exponent
/// `C(ψ,ω) = −log inf_{θ∈(0,1)} tr(ψ^θ ω^{1−θ})`.
///
/// 64-point grid plus golden-section refinement to a 1e-10 bracket on the
/// convex objective; `+∞` on orthogonal supports.
pub fn chernoff(psi: &DensityMatrix, omega: &DensityMatrix) -> Result<ExponentResult> {
    let overlap = petz_trace(psi, omega, 0.5)?;
    if overlap <= 1e-300 {
        return Ok(ExponentResult {
            value: f64::INFINITY,
            optimizer: 0.5,
            grid_resolution: 0.0,
            at_window_edge: false,
        });
    }
    let objective = |theta: f64| petz_trace(psi, omega, theta).map(f64::ln).unwrap_or(f64::INFINITY);
    let grid: Vec<f64> = (1..=64).map(|k| k as f64 / 65.0).collect();
    let (theta_star, log_q, res) = grid_then_golden(&objective, &grid, 1e-12, 1.0 - 1e-12, 1e-10);
    Ok(ExponentResult {
        value: -log_q,
        optimizer: theta_star,
        grid_resolution: res,
        at_window_edge: false,
    })
}

/// Hoeffding exponent
/// `H_r(ψ‖ω) = sup_{θ∈(0,1)} (θ−1)/θ · (r − D_θ(ψ‖ω))` with `D_θ` the
/// Petz divergence.
///
/// The objective extends continuously to θ = 1 with value 0, which is
/// included as a candidate, so `H_r ≥ 0` always. The supremum can sit at
/// the lower window edge (it diverges there when r is far below the
/// relative entropy gap); that case is genuinely unbounded growth toward
/// θ → 0 and is reported with the window-edge flag.
pub fn hoeffding(r: f64, psi: &DensityMatrix, omega: &DensityMatrix) -> Result<ExponentResult> {
    if r < 0.0 {
        return Err(Error::InvalidParameter(format!("need r ≥ 0, got {r}")));
    }
    let theta_lo = 1e-6;
    let objective = |theta: f64| -> f64 {
        let q = petz_trace(psi, omega, theta).unwrap_or(0.0);
        if q <= 0.0 {
            return f64::INFINITY;
        }
        let d_theta = q.ln() / (theta - 1.0);
        (theta - 1.0) / theta * (r - d_theta)
    };
    let neg = |theta: f64| -objective(theta);
    let grid: Vec<f64> = (0..64)
        .map(|k| theta_lo + (1.0 - 2.0 * theta_lo) * k as f64 / 63.0)
        .collect();
    let (theta_star, min_neg, res) = grid_then_golden(&neg, &grid, theta_lo, 1.0 - theta_lo, 1e-10);
    let mut value = -min_neg;
    let mut optimizer = theta_star;
    // the continuous θ → 1 extension contributes 0
    if value < 0.0 {
        value = 0.0;
        optimizer = 1.0;
    }
    Ok(ExponentResult {
        value,
        optimizer,
        grid_resolution: res,
        at_window_edge: theta_star < theta_lo + 2e-6,
    })
}

/// Converse Hoeffding exponent
/// `H*_r(ψ‖ω) = sup_{θ>1} (θ−1)/θ · (r − S_θ(ψ‖ω))` with `S_θ` the
/// sandwiched divergence, searched on `(1, θ_max]`.
///
/// An optimizer within one grid step of θ_max sets the window-edge flag;
/// it is reported, never silently accepted.
pub fn converse_hoeffding(
    r: f64,
    psi: &DensityMatrix,
    omega: &DensityMatrix,
    theta_max: f64,
) -> Result<ExponentResult> {
    if r < 0.0 || theta_max <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "need r ≥ 0 and θ_max > 1, got r = {r}, θ_max = {theta_max}"
        )));
    }
    let objective = |theta: f64| -> f64 {
        match sandwiched(theta, psi, omega) {
            Ok(v) if v.finite => (theta - 1.0) / theta * (r - v.value),
            _ => f64::NEG_INFINITY,
        }
    };
    let neg = |theta: f64| -objective(theta);
    // geometric grid in θ − 1 from 1e-4 to θ_max − 1
    let n_grid = 64;
    let lo = 1e-4f64;
    let hi = theta_max - 1.0;
    let grid: Vec<f64> = (0..n_grid)
        .map(|k| 1.0 + lo * (hi / lo).powf(k as f64 / (n_grid - 1) as f64))
        .collect();
    let (theta_star, min_neg, res) =
        grid_then_golden(&neg, &grid, 1.0 + lo * 0.5, theta_max, 1e-10);
    let last_step = grid[n_grid - 1] - grid[n_grid - 2];
    Ok(ExponentResult {
        value: -min_neg,
        optimizer: theta_star,
        grid_resolution: res,
        at_window_edge: theta_star >= theta_max - last_step,
    })
}

/// Multi-hypothesis minimum relative entropy
/// `S(K‖ω) = min_i S(ψ_i‖ω)`, with the argmin index (ties broken by the
/// lowest index).
pub fn sanov(k: &HypothesisSet) -> Result<(f64, usize)> {
    let mut best = f64::INFINITY;
    let mut best_idx = 0;
    for (i, psi) in k.alternatives.iter().enumerate() {
        let s = relative_entropy(psi, &k.null_state)?.value;
        if s < best {
            best = s;
            best_idx = i;
        }
    }
    Ok((best, best_idx))
}

/// Pairwise minimum Chernoff distance `ξ = min_{i≠j} C(ψ_i, ψ_j)` over the
/// pooled set (null state plus alternatives). Returns the minimizing
/// unordered pair as indices into the pooled list, null state first.
pub fn multi_chernoff(k: &HypothesisSet) -> Result<(f64, (usize, usize))> {
    let mut pool: Vec<&DensityMatrix> = vec![&k.null_state];
    pool.extend(k.alternatives.iter());
    if pool.len() < 2 {
        return Err(Error::InvalidParameter("need at least two states".into()));
    }
    let mut best = f64::INFINITY;
    let mut best_pair = (0, 1);
    for i in 0..pool.len() {
        for j in (i + 1)..pool.len() {
            let cval = chernoff(pool[i], pool[j])?.value;
            if cval < best {
                best = cval;
                best_pair = (i, j);
            }
        }
    }
    Ok((best, best_pair))
}

fn checked_power_dim(dim: usize, n: usize) -> Result<usize> {
    if n == 0 {
        return Err(Error::InvalidParameter("need n ≥ 1 copies".into()));
    }
    let mut total = 1usize;
    for _ in 0..n {
        total = total.saturating_mul(dim);
        if total > TENSOR_POWER_CAP {
            return Err(Error::CapExceeded {
                requested: total,
                cap: TENSOR_POWER_CAP,
            });
        }
    }
    Ok(total)
}

/// Minimal average error of discriminating `ρ0^{⊗n}` from `ρ1^{⊗n}` with
/// prior `prior0` on the first hypothesis:
/// `(1 − ‖prior0·ρ0^{⊗n} − (1−prior0)·ρ1^{⊗n}‖₁)/2`.
pub fn helstrom_error(
    rho0: &DensityMatrix,
    rho1: &DensityMatrix,
    prior0: f64,
    n: usize,
) -> Result<f64> {
    if !(prior0 > 0.0 && prior0 < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "prior must lie in (0,1), got {prior0}"
        )));
    }
    if rho0.dim() != rho1.dim() {
        return Err(Error::ShapeMismatch("states differ in dimension".into()));
    }
    checked_power_dim(rho0.dim(), n)?;
    let p0 = tensor_power(rho0.matrix(), n);
    let p1 = tensor_power(rho1.matrix(), n);
    let diff = hermitize(
        &(&p0 * num_complex::Complex64::new(prior0, 0.0)
            - &p1 * num_complex::Complex64::new(1.0 - prior0, 0.0)),
    );
    let trace_norm: f64 = eigh(&diff)?.values.iter().map(|l| l.abs()).sum();
    Ok(0.5 * (1.0 - trace_norm))
}

/// One point of the Neyman-Pearson trade-off: for threshold `t`, the test
/// projects onto the positive part of `ψ^{⊗n} − t·ω^{⊗n}` and reports
/// `(α, β)` = (miss probability, false-alarm probability).
pub fn neyman_pearson_curve(
    psi: &DensityMatrix,
    omega: &DensityMatrix,
    n: usize,
    t_grid: &[f64],
) -> Result<Vec<(f64, f64)>> {
    if psi.dim() != omega.dim() {
        return Err(Error::ShapeMismatch("states differ in dimension".into()));
    }
    checked_power_dim(psi.dim(), n)?;
    let p = tensor_power(psi.matrix(), n);
    let q = tensor_power(omega.matrix(), n);
    let mut out = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        if t < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "thresholds must be nonnegative, got {t}"
            )));
        }
        let m = hermitize(&(&p - &q * num_complex::Complex64::new(t, 0.0)));
        let eig = eigh(&m)?;
        // projector onto the strictly positive eigenspace
        let dim = m.nrows();
        let mut alpha = 1.0;
        let mut beta = 0.0;
        for i in 0..dim {
            if eig.values[i] > 0.0 {
                let v = eig.vectors.column(i);
                let pv = (v.adjoint() * &p * v)[(0, 0)].re;
                let qv = (v.adjoint() * &q * v)[(0, 0)].re;
                alpha -= pv;
                beta += qv;
            }
        }
        out.push((alpha.clamp(0.0, 1.0), beta.clamp(0.0, 1.0)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divergences::classical_renyi;
    use crate::states::random_density;
    use approx::assert_relative_eq;

    fn diag_state(p: &[f64]) -> DensityMatrix {
        DensityMatrix::from_probabilities(p).unwrap()
    }

    #[test]
    fn chernoff_examples() {
        let omega = random_density(2, 2, 1).unwrap();
        let c0 = chernoff(&omega, &omega).unwrap();
        assert!(c0.value.abs() < 1e-10, "C(ω,ω) = 0");

        // classical Bernoulli pair: optimizer 1/2 by symmetry
        let psi = diag_state(&[0.9, 0.1]);
        let om = diag_state(&[0.1, 0.9]);
        let res = chernoff(&psi, &om).unwrap();
        let q_half: f64 = 2.0 * (0.9f64 * 0.1).sqrt();
        assert_relative_eq!(res.value, -q_half.ln(), epsilon = 1e-9);
        assert_relative_eq!(res.optimizer, 0.5, epsilon = 1e-5);

        // orthogonal pure states
        let a = DensityMatrix::pure_basis_state(2, 0);
        let b = DensityMatrix::pure_basis_state(2, 1);
        assert!(chernoff(&a, &b).unwrap().value.is_infinite());
    }

    #[test]
    fn chernoff_matches_dense_grid_scan() {
        let psi = random_density(3, 3, 7).unwrap();
        let omega = random_density(3, 3, 8).unwrap();
        let res = chernoff(&psi, &omega).unwrap();
        // C = sup over θ of −log q(θ); a grid scan lower-bounds the sup
        let brute = (1..4096)
            .map(|k| {
                let theta = k as f64 / 4096.0;
                -petz_trace(&psi, &omega, theta).unwrap().ln()
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(res.value >= brute - 1e-9);
        assert!((res.value - brute).abs() < 1e-5);
    }

    #[test]
    fn hoeffding_examples() {
        let psi = diag_state(&[0.8, 0.2]);
        let omega = diag_state(&[0.3, 0.7]);
        // r = 0: supremum of ((1−θ)/θ)·D_θ ≥ 0 at ψ ≠ ω
        let res = hoeffding(0.0, &psi, &omega).unwrap();
        assert!(res.value >= 0.0);

        // ψ = ω: objective is negative on (0,1), sup attained in the
        // θ → 1 limit with value 0
        let om = random_density(2, 2, 11).unwrap();
        let res = hoeffding(0.5, &om, &om).unwrap();
        assert!(res.value.abs() < 1e-9);
        assert_relative_eq!(res.optimizer, 1.0, epsilon = 1e-9);

        // classical oracle on a coarse independent grid
        let res = hoeffding(0.2, &psi, &omega).unwrap();
        let brute = (1..=999)
            .map(|k| {
                let theta = k as f64 / 1000.0;
                let d = classical_renyi(theta, &[0.8, 0.2], &[0.3, 0.7]).unwrap();
                (theta - 1.0) / theta * (0.2 - d)
            })
            .fold(f64::NEG_INFINITY, f64::max)
            .max(0.0);
        assert!(res.value >= brute - 1e-9);
        assert!((res.value - brute).abs() < 1e-4);
    }

    #[test]
    fn converse_hoeffding_examples() {
        let psi = random_density(2, 2, 21).unwrap().depolarized(0.1);
        let omega = random_density(2, 2, 22).unwrap().depolarized(0.1);
        let s = relative_entropy(&psi, &omega).unwrap().value;

        // r below S(ψ‖ω): objective nonpositive near θ → 1
        let r = 0.5 * s;
        let near_one = {
            let v = sandwiched(1.0 + 1e-5, &psi, &omega).unwrap().value;
            (1e-5 / (1.0 + 1e-5)) * (r - v)
        };
        assert!(near_one <= 0.0);

        // ψ = ω: sup = r·(1 − 1/θ_max) at the window edge, flagged
        let om = random_density(2, 2, 23).unwrap();
        let res = converse_hoeffding(0.7, &om, &om, 64.0).unwrap();
        assert_relative_eq!(res.value, 0.7 * (1.0 - 1.0 / 64.0), epsilon = 1e-6);
        assert!(res.at_window_edge);

        // classical oracle
        let psi = diag_state(&[0.8, 0.2]);
        let omc = diag_state(&[0.3, 0.7]);
        let r = 1.5;
        let res = converse_hoeffding(r, &psi, &omc, 64.0).unwrap();
        let brute = (0..4000)
            .map(|k| {
                let theta = 1.0 + 1e-4 * (63.0f64 / 1e-4).powf(k as f64 / 3999.0);
                let d = classical_renyi(theta, &[0.8, 0.2], &[0.3, 0.7]).unwrap();
                (theta - 1.0) / theta * (r - d)
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((res.value - brute).abs() < 1e-4, "{} vs {brute}", res.value);
    }

    #[test]
    fn sanov_examples() {
        let omega = random_density(2, 2, 31).unwrap();
        let k = HypothesisSet::new(omega.clone(), vec![omega.clone()]).unwrap();
        let (v, idx) = sanov(&k).unwrap();
        assert!(v.abs() < 1e-10 && idx == 0);

        // one orthogonal pure state and one equal to ω: min is 0 at ω
        let omega = DensityMatrix::from_probabilities(&[0.6, 0.4]).unwrap();
        let ortho = DensityMatrix::pure_basis_state(2, 0);
        let k = HypothesisSet::new(omega.clone(), vec![ortho, omega.clone()]).unwrap();
        let (v, idx) = sanov(&k).unwrap();
        assert!(v.abs() < 1e-10 && idx == 1);

        // random triple matches a pairwise scan
        let alts: Vec<DensityMatrix> = (0..3)
            .map(|s| random_density(2, 2, 100 + s).unwrap())
            .collect();
        let om = random_density(2, 2, 200).unwrap();
        let k = HypothesisSet::new(om.clone(), alts.clone()).unwrap();
        let (v, idx) = sanov(&k).unwrap();
        let brute: Vec<f64> = alts
            .iter()
            .map(|a| relative_entropy(a, &om).unwrap().value)
            .collect();
        let brute_min = brute.iter().cloned().fold(f64::INFINITY, f64::min);
        assert_relative_eq!(v, brute_min, epsilon = 1e-12);
        assert_relative_eq!(brute[idx], brute_min, epsilon = 1e-12);
    }

    #[test]
    fn multi_chernoff_examples() {
        let s = random_density(2, 2, 41).unwrap();
        let k = HypothesisSet::new(s.clone(), vec![s.clone()]).unwrap();
        let (v, _) = multi_chernoff(&k).unwrap();
        assert!(v.abs() < 1e-9, "identical pair gives 0");

        let a = DensityMatrix::pure_basis_state(3, 0);
        let b = DensityMatrix::pure_basis_state(3, 1);
        let c = DensityMatrix::pure_basis_state(3, 2);
        let k = HypothesisSet::new(a, vec![b, c]).unwrap();
        let (v, _) = multi_chernoff(&k).unwrap();
        assert!(v.is_infinite(), "mutually orthogonal pure states");

        let states: Vec<DensityMatrix> = (0..3)
            .map(|s| random_density(2, 2, 300 + s).unwrap())
            .collect();
        let k = HypothesisSet::new(states[0].clone(), states[1..].to_vec()).unwrap();
        let (v, pair) = multi_chernoff(&k).unwrap();
        let mut brute = f64::INFINITY;
        for i in 0..3 {
            for j in (i + 1)..3 {
                brute = brute.min(chernoff(&states[i], &states[j]).unwrap().value);
            }
        }
        assert_relative_eq!(v, brute, epsilon = 1e-9);
        assert!(pair.0 < pair.1);
    }

    #[test]
    fn helstrom_examples() {
        let rho = random_density(2, 2, 51).unwrap();
        // identical states: error = min(prior, 1−prior)
        for &p in &[0.5, 0.2, 0.8] {
            let e = helstrom_error(&rho, &rho, p, 1).unwrap();
            assert_relative_eq!(e, p.min(1.0 - p), epsilon = 1e-10);
        }
        // orthogonal pure states at n = 1: zero error
        let a = DensityMatrix::pure_basis_state(2, 0);
        let b = DensityMatrix::pure_basis_state(2, 1);
        assert!(helstrom_error(&a, &b, 0.5, 1).unwrap().abs() < 1e-12);

        // cap
        assert!(matches!(
            helstrom_error(&rho, &rho, 0.5, 13),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn helstrom_error_decreases_with_copies() {
        let psi = random_density(2, 2, 61).unwrap().depolarized(0.1);
        let omega = random_density(2, 2, 62).unwrap().depolarized(0.1);
        let mut last = 0.5;
        for n in 1..=6 {
            let e = helstrom_error(&psi, &omega, 0.5, n).unwrap();
            assert!(e <= last + 1e-12, "error must not increase with copies");
            last = e;
        }
    }

    #[test]
    fn helstrom_slope_converges_to_chernoff() {
        // the per-copy slope −log E(n)/n approaches the Chernoff exponent;
        // the gap shrinks as n grows (n ≤ 6 keeps this fast in debug
        // builds; the acceptance suite pushes the same pair to n = 8)
        let v = nalgebra::DVector::from_vec(vec![
            num_complex::Complex64::new(0.5f64.cos(), 0.0),
            num_complex::Complex64::new(0.5f64.sin(), 0.0),
        ]);
        let psi = DensityMatrix::pure_state(&v).unwrap();
        let omega = DensityMatrix::from_probabilities(&[0.25, 0.75]).unwrap();
        let c = chernoff(&psi, &omega).unwrap().value;
        let gap = |n: usize| {
            (-helstrom_error(&psi, &omega, 0.5, n).unwrap().ln() / n as f64 - c).abs()
        };
        assert!(gap(6) < gap(2));
        assert!(gap(6) / c < 0.15, "relative gap at n = 6: {}", gap(6) / c);
    }

    #[test]
    fn neyman_pearson_beta_exponent_trends_to_relative_entropy() {
        // at fixed significance α ≤ 0.05, −log β(n)/n climbs toward S(ψ‖ω)
        // from below as n grows; grid effects put ~0.03 of wobble on top
        let psi = random_density(2, 2, 1).unwrap().depolarized(0.1);
        let omega = random_density(2, 2, 101).unwrap().depolarized(0.1);
        let s = relative_entropy(&psi, &omega).unwrap().value;
        let exponent = |n: usize| {
            let t_grid: Vec<f64> = (0..160)
                .map(|k| (n as f64 * (k as f64 / 159.0 * 2.5 - 0.5) * s).exp())
                .collect();
            neyman_pearson_curve(&psi, &omega, n, &t_grid)
                .unwrap()
                .into_iter()
                .filter(|(alpha, beta)| *alpha <= 0.05 && *beta > 0.0)
                .map(|(_, beta)| -beta.ln() / n as f64)
                .fold(f64::NEG_INFINITY, f64::max)
        };
        let exps: Vec<f64> = (2..=5).map(exponent).collect();
        for w in exps.windows(2) {
            assert!(w[1] >= w[0] - 0.05, "trend broke: {exps:?}");
        }
        for &e in &exps {
            assert!(e <= s + 1e-9, "the exponent may not exceed S");
        }
        assert!(
            (exps[3] - s).abs() < (exps[0] - s).abs(),
            "gap must shrink: {exps:?} vs S = {s}"
        );
    }

    #[test]
    fn hoeffding_objective_slope_near_theta_one() {
        // the objective vanishes at θ = 1 with derivative r − S(ψ‖ω)
        let psi = random_density(2, 2, 81).unwrap().depolarized(0.1);
        let omega = random_density(2, 2, 82).unwrap().depolarized(0.1);
        let s = relative_entropy(&psi, &omega).unwrap().value;
        let r = 0.4;
        let eps = 1e-4;
        let theta = 1.0 - eps;
        let d_theta = petz_trace(&psi, &omega, theta).unwrap().ln() / (theta - 1.0);
        let objective = (theta - 1.0) / theta * (r - d_theta);
        let slope = -objective / eps; // (obj(1) − obj(1−ε))/ε with obj(1) = 0
        assert!(
            (slope - (r - s)).abs() < 1e-2,
            "finite-difference slope {slope} vs r − S = {}",
            r - s
        );
    }

    #[test]
    fn neyman_pearson_examples() {
        let psi = random_density(2, 2, 71).unwrap().depolarized(0.1);
        let omega = random_density(2, 2, 72).unwrap().depolarized(0.1);
        // t → 0: projector approaches the support of ψ − small: α → 0
        let curve = neyman_pearson_curve(&psi, &omega, 1, &[1e-9, 1e9]).unwrap();
        assert!(curve[0].0 < 1e-6, "tiny threshold accepts everything");
        assert!(curve[1].1 < 1e-6, "huge threshold rejects everything");

        // commuting states: classical likelihood-ratio test
        let p = [0.8, 0.2];
        let q = [0.3, 0.7];
        let psi = diag_state(&p);
        let omega = diag_state(&q);
        let t = 1.0;
        let curve = neyman_pearson_curve(&psi, &omega, 1, &[t]).unwrap();
        // accept outcome x iff p(x) > t·q(x): only x = 0
        let alpha = 1.0 - p[0];
        let beta = q[0];
        assert_relative_eq!(curve[0].0, alpha, epsilon = 1e-10);
        assert_relative_eq!(curve[0].1, beta, epsilon = 1e-10);
    }
}
