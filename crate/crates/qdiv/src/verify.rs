//! Seeded randomized property harness.
//!
//! Every inequality and limit the library's divergences satisfy is checked
//! here on randomized desk-scale instances: data processing under random
//! channels, monotonicity of the relative modular operator and its
//! operator-monotone lifts, Kubo-Ando mean monotonicity and the
//! transformer inequality, the generalized Hölder inequality for weighted
//! norms, (p→p)-norm contraction and its Riesz-Thorin interpolation
//! consistency, the extended-range majorization witness, classical
//! reductions, cross-route equalities, and entropy limits.
//!
//! Suites are deterministic: per-trial seeds derive from
//! `(master_seed, suite tag, trial index)`, trials may run in parallel,
//! and reports are aggregated in trial order, so a report file is a pure
//! function of the configuration.
//!
//! Margins are signed slack: `margin ≥ −tolerance` is a pass. Equality
//! checks report `−|difference|`; operator inequalities report the
//! smallest eigenvalue of the slack operator; norm bounds report the
//! unused headroom. Sampled norm estimates are one-sided (lower bounds
//! for suprema), so suites only assert inequalities in the sound
//! direction.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use crate::divergences::{
    classical_kl, classical_renyi, extended_theta_r, petz, r_infinity, relative_entropy,
    sandwiched, theta_r, theta_r_modular, ExtendedVariant,
};
use crate::linops::{eigh, hermitize, max_abs, schatten_norm, vectorize, CMatrix, CVector};
use crate::multistate::{
    classical_multi, kubo_ando_mean, multi_state, richardson1, three_state, three_state_modular,
    weighted_relent_limit, AlphaChain, MeanSpec, ThetaWeights,
};
use crate::states::{
    gns_contraction, omega_vector, pnorm_omega, random_channel_from_rng, random_density_from_rng,
    relative_modular, Channel, DensityMatrix, GnsVector,
};
use crate::{Error, Result};

// re-exported small helpers used by the CLI and tests
pub use report::{summarize, RunSummary, SuiteSummary};

/// One randomized inequality trial.
#[derive(Debug, Clone, Serialize)]
pub struct TrialReport {
    pub suite: String,
    pub trial_index: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub params: BTreeMap<String, f64>,
    /// Signed slack; `≥ −tolerance` means pass.
    pub margin: f64,
    pub pass: bool,
    /// How many degenerate instances were discarded before this one.
    pub resamples: usize,
}

/// Configuration of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub n_trials: usize,
    pub dims: Vec<usize>,
    pub tolerance: f64,
    pub thetas: Vec<f64>,
    pub rs: Vec<f64>,
    pub alphas: Vec<f64>,
    pub master_seed: u64,
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_trials == 0 {
            return Err(Error::InvalidParameter("n_trials must be ≥ 1".into()));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::InvalidParameter("tolerance must be ≥ 0".into()));
        }
        if self.dims.is_empty() {
            return Err(Error::InvalidParameter("dims must be nonempty".into()));
        }
        Ok(())
    }

    fn with(master_seed: u64, n_trials: usize, tolerance: f64) -> Self {
        SuiteConfig {
            n_trials,
            dims: vec![2, 3, 4],
            tolerance,
            thetas: vec![0.1, 0.25, 0.5, 0.75, 0.9],
            rs: vec![1.0, 1.5, 2.0, 4.0],
            alphas: vec![0.3, 0.5, 0.7],
            master_seed,
        }
    }
}

/// Per-trial seed: FNV-1a over the suite tag, mixed with the master seed
/// and trial index through splitmix64 steps.
pub fn derive_seed(master_seed: u64, suite: &str, trial_index: u64) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in suite.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    let mut x = master_seed ^ h.rotate_left(17) ^ trial_index.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for _ in 0..2 {
        x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = x;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        x = z ^ (z >> 31);
    }
    x
}

fn trial_rng(master_seed: u64, suite: &str, trial_index: usize) -> (u64, ChaCha12Rng) {
    let seed = derive_seed(master_seed, suite, trial_index as u64);
    (seed, ChaCha12Rng::seed_from_u64(seed))
}

/// Resample budget for degenerate instances before a trial fails outright.
const MAX_RESAMPLES: usize = 16;

/// Conditioning floor demanded of reference states after a channel.
const CONDITIONING_FLOOR: f64 = 1e-4;

/// Tempering weight mixed into raw Hilbert-Schmidt draws so that operator
/// inequalities are checked on numerically benign spectra.
const TEMPER: f64 = 0.1;

fn draw_state(rng: &mut ChaCha12Rng, dim: usize, temper: f64) -> DensityMatrix {
    random_density_from_rng(dim, dim, rng)
        .expect("full-rank draw cannot fail")
        .depolarized(temper)
}

fn pick<T: Copy>(list: &[T], idx: usize) -> T {
    list[idx % list.len()]
}

struct DpiInstance {
    psi_a: Vec<DensityMatrix>,
    omega_a: DensityMatrix,
    channel: Channel,
    psi_b: Vec<DensityMatrix>,
    omega_b: DensityMatrix,
    resamples: usize,
}

/// Draws states and a Haar channel, resampling (with the count recorded)
/// until the channel outputs are acceptably conditioned.
fn draw_dpi_instance(
    rng: &mut ChaCha12Rng,
    n_states: usize,
    d_in: usize,
    d_out: usize,
    temper: f64,
) -> Result<DpiInstance> {
    for attempt in 0..=MAX_RESAMPLES {
        let psi_a: Vec<DensityMatrix> = (0..n_states)
            .map(|_| draw_state(rng, d_in, temper))
            .collect();
        let omega_a = draw_state(rng, d_in, temper);
        let channel = random_channel_from_rng(d_in, d_out, d_in, rng)?;
        let omega_b = channel.apply(&omega_a)?;
        let psi_b: Result<Vec<DensityMatrix>> =
            psi_a.iter().map(|p| channel.apply(p)).collect();
        let psi_b = psi_b?;
        let ok = omega_b.min_eigenvalue() > CONDITIONING_FLOOR
            && psi_b.iter().all(|p| p.min_eigenvalue() > CONDITIONING_FLOOR * 0.01);
        if ok {
            return Ok(DpiInstance {
                psi_a,
                omega_a,
                channel,
                psi_b,
                omega_b,
                resamples: attempt,
            });
        }
    }
    Err(Error::DegenerateInstance(format!(
        "no acceptable instance after {MAX_RESAMPLES} resamples"
    )))
}

#[allow(clippy::too_many_arguments)]
fn report(
    suite: &str,
    trial_index: usize,
    seed: u64,
    dims: Vec<usize>,
    params: BTreeMap<String, f64>,
    margin: f64,
    tolerance: f64,
    resamples: usize,
) -> TrialReport {
    TrialReport {
        suite: suite.to_string(),
        trial_index,
        seed,
        dims,
        params,
        margin,
        pass: margin >= -tolerance,
        resamples,
    }
}

fn failed_trial(suite: &str, trial_index: usize, seed: u64, err: &Error) -> TrialReport {
    let mut params = BTreeMap::new();
    params.insert("runtime_error".to_string(), 1.0);
    let _ = err;
    TrialReport {
        suite: suite.to_string(),
        trial_index,
        seed,
        dims: vec![],
        params,
        margin: f64::NEG_INFINITY,
        pass: false,
        resamples: MAX_RESAMPLES,
    }
}

fn run_suite(
    cfg: &SuiteConfig,
    tag: &'static str,
    trial: impl Fn(usize, u64, &mut ChaCha12Rng) -> Result<TrialReport> + Sync,
) -> Result<Vec<TrialReport>> {
    cfg.validate()?;
    let mut reports: Vec<TrialReport> = (0..cfg.n_trials)
        .into_par_iter()
        .map(|i| {
            let (seed, mut rng) = trial_rng(cfg.master_seed, tag, i);
            trial(i, seed, &mut rng).unwrap_or_else(|e| failed_trial(tag, i, seed, &e))
        })
        .collect();
    reports.sort_by_key(|r| r.trial_index);
    Ok(reports)
}

// ---------------------------------------------------------------------------
// data processing suites
// ---------------------------------------------------------------------------

/// Which divergence family a DPI suite drives through a random channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpiFamily {
    /// Two-state (θ,r) divergences on the configured grid.
    ThetaR,
    /// n-state divergences with 2 or 3 states and the configured chains.
    MultiState,
    /// Extended-range (θ,r) at negative θ, signed normalization.
    ExtendedThetaR,
}

impl DpiFamily {
    fn tag(&self) -> &'static str {
        match self {
            DpiFamily::ThetaR => "dpi_theta_r",
            DpiFamily::MultiState => "dpi_multi_state",
            DpiFamily::ExtendedThetaR => "dpi_extended_theta_r",
        }
    }
}

/// Data processing: draws states and a random channel, computes the
/// divergence before and after, and reports `margin = before − after`.
pub fn dpi_suite(family: DpiFamily, cfg: &SuiteConfig) -> Result<Vec<TrialReport>> {
    let tag = family.tag();
    run_suite(cfg, tag, move |i, seed, rng| {
        let d_in = pick(&cfg.dims, rng.random_range(0..cfg.dims.len()));
        let d_out = pick(&[2usize, 3], rng.random_range(0..2));
        match family {
            DpiFamily::ThetaR => {
                let theta = pick(&cfg.thetas, i);
                let r = pick(&cfg.rs, i / cfg.thetas.len());
                let inst = draw_dpi_instance(rng, 1, d_in, d_out, TEMPER)?;
                let before = theta_r(theta, r, &inst.psi_a[0], &inst.omega_a)?.value;
                let after = theta_r(theta, r, &inst.psi_b[0], &inst.omega_b)?.value;
                let mut params = BTreeMap::new();
                params.insert("theta".into(), theta);
                params.insert("r".into(), r);
                params.insert("before".into(), before);
                params.insert("after".into(), after);
                Ok(report(
                    tag,
                    i,
                    seed,
                    vec![d_in, d_out],
                    params,
                    before - after,
                    cfg.tolerance,
                    inst.resamples,
                ))
            }
            DpiFamily::MultiState => {
                let chains: [&[f64]; 3] = [&[0.3], &[0.5], &[0.5, 0.5]];
                let alphas = chains[i % chains.len()];
                let n = alphas.len() + 1;
                let r = pick(&[1.0, 2.0], i / chains.len());
                let inst = draw_dpi_instance(rng, n, d_in, d_out, TEMPER)?;
                // θ weights from a Dirichlet draw over n+1 slots
                let mut raw: Vec<f64> = (0..=n).map(|_| -rng.random::<f64>().max(1e-12).ln()).collect();
                let total: f64 = raw.iter().sum();
                raw.iter_mut().for_each(|x| *x /= total);
                let thetas: Vec<f64> = raw[..n].to_vec();
                let weights = ThetaWeights::new(thetas.clone())?;
                let chain = AlphaChain::new(alphas.to_vec())?;
                let before =
                    multi_state(&weights, r, &chain, &inst.psi_a, &inst.omega_a, false)?.value;
                let after =
                    multi_state(&weights, r, &chain, &inst.psi_b, &inst.omega_b, false)?.value;
                let mut params = BTreeMap::new();
                params.insert("n".into(), n as f64);
                params.insert("r".into(), r);
                for (k, t) in thetas.iter().enumerate() {
                    params.insert(format!("theta{}", k + 1), *t);
                }
                Ok(report(
                    tag,
                    i,
                    seed,
                    vec![d_in, d_out],
                    params,
                    before - after,
                    cfg.tolerance,
                    inst.resamples,
                ))
            }
            DpiFamily::ExtendedThetaR => {
                let theta = pick(&[-0.5, -0.25], i);
                let r = pick(&[1.0, 2.0], i / 2);
                let inst = draw_dpi_instance(rng, 1, d_in, d_out, TEMPER)?;
                let before =
                    extended_theta_r(theta, r, &inst.psi_a[0], &inst.omega_a, ExtendedVariant::Signed)?
                        .0
                        .value;
                let after =
                    extended_theta_r(theta, r, &inst.psi_b[0], &inst.omega_b, ExtendedVariant::Signed)?
                        .0
                        .value;
                let mut params = BTreeMap::new();
                params.insert("theta".into(), theta);
                params.insert("r".into(), r);
                Ok(report(
                    tag,
                    i,
                    seed,
                    vec![d_in, d_out],
                    params,
                    before - after,
                    cfg.tolerance,
                    inst.resamples,
                ))
            }
        }
    })
}

// ---------------------------------------------------------------------------
// operator-inequality suites
// ---------------------------------------------------------------------------

/// An operator-monotone lift applied eigenvalue-wise to `Δ`.
type Lift = fn(f64) -> f64;

/// Monotonicity of the relative modular operator under a GNS contraction:
/// `margin = min-eig( f(Δ_B) − F† f(Δ_A) F )` for f ∈ {x, x^0.3, x^0.7,
/// log(1+x)} cycled across trials.
pub fn modular_monotonicity_suite(cfg: &SuiteConfig) -> Result<Vec<TrialReport>> {
    run_suite(cfg, "modular_monotonicity", |i, seed, rng| {
        let d_in = pick(&cfg.dims, rng.random_range(0..cfg.dims.len()));
        let d_out = pick(&[2usize, 3], rng.random_range(0..2));
        let inst = draw_dpi_instance(rng, 1, d_in, d_out, TEMPER)?;
        let f = gns_contraction(&inst.channel, &inst.omega_a)?;
        let delta_a = relative_modular(inst.psi_a[0].matrix(), &inst.omega_a)?;
        let delta_b = relative_modular(inst.psi_b[0].matrix(), &inst.omega_b)?;

        let lifts: [(f64, Lift); 4] = [
            (1.0, |x| x),
            (0.3, |x| x.powf(0.3)),
            (0.7, |x| x.powf(0.7)),
            (-1.0, |x| (1.0 + x).ln()), // −1 encodes the log(1+x) lift
        ];
        let (code, lift) = lifts[i % lifts.len()];
        let ga = delta_a.materialize_eigen_fn(lift)?;
        let gb = delta_b.materialize_eigen_fn(lift)?;
        let slack = hermitize(&(&gb - f.matrix().adjoint() * ga * f.matrix()));
        let margin = eigh(&slack)?.min();
        let mut params = BTreeMap::new();
        params.insert("f_exponent".into(), code);
        Ok(report(
            "modular_monotonicity",
            i,
            seed,
            vec![d_in, d_out],
            params,
            margin,
            cfg.tolerance,
            inst.resamples,
        ))
    })
}

fn random_ginibre(rng: &mut ChaCha12Rng, d: usize) -> CMatrix {
    CMatrix::from_fn(d, d, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(re, im)
    })
}

/// Kubo-Ando mean monotonicity, the transformer inequality for
/// contractions, and transformer equality for invertible maps, cycled
/// across trials (tags `kubo_monotone`, `kubo_transformer`,
/// `kubo_transformer_eq`).
pub fn kubo_ando_suite(cfg: &SuiteConfig) -> Result<Vec<TrialReport>> {
    run_suite(cfg, "kubo_ando", |i, seed, rng| {
        let d = pick(&cfg.dims, rng.random_range(0..cfg.dims.len()));
        let alpha = pick(&cfg.alphas, i);
        let spec = MeanSpec::Power(alpha);
        let psd = |rng: &mut ChaCha12Rng| {
            let g = random_ginibre(rng, d);
            hermitize(&(&g * g.adjoint())) + CMatrix::identity(d, d) * Complex64::new(0.05, 0.0)
        };
        let bump = |rng: &mut ChaCha12Rng| {
            let g = random_ginibre(rng, d);
            hermitize(&(&g * g.adjoint()))
        };
        let xa = psd(rng);
        let ya = psd(rng);
        let mut params = BTreeMap::new();
        params.insert("alpha".into(), alpha);
        match i % 3 {
            0 => {
                // X_A ⪯ X_B, Y_A ⪯ Y_B ⇒ mean(A) ⪯ mean(B)
                let xb = &xa + bump(rng);
                let yb = &ya + bump(rng);
                let ma = kubo_ando_mean(&xa, &ya, &spec)?;
                let mb = kubo_ando_mean(&xb, &yb, &spec)?;
                let margin = eigh(&hermitize(&(mb - ma)))?.min();
                Ok(report(
                    "kubo_monotone",
                    i,
                    seed,
                    vec![d],
                    params,
                    margin,
                    cfg.tolerance,
                    0,
                ))
            }
            1 => {
                // T(X♯Y)T† ⪯ (TXT†)♯(TYT†) for ‖T‖ ≤ 1
                let t_raw = random_ginibre(rng, d);
                let t = &t_raw
                    * Complex64::new(0.9 / schatten_norm(&t_raw, f64::INFINITY)?, 0.0);
                let mean = kubo_ando_mean(&xa, &ya, &spec)?;
                let lhs = &t * mean * t.adjoint();
                let rhs = kubo_ando_mean(
                    &(hermitize(&(&t * &xa * t.adjoint()))
                        + CMatrix::identity(d, d) * Complex64::new(1e-9, 0.0)),
                    &hermitize(&(&t * &ya * t.adjoint())),
                    &spec,
                )?;
                let margin = eigh(&hermitize(&(rhs - lhs)))?.min();
                Ok(report(
                    "kubo_transformer",
                    i,
                    seed,
                    vec![d],
                    params,
                    margin,
                    cfg.tolerance,
                    0,
                ))
            }
            _ => {
                // equality for invertible T
                let mut t = random_ginibre(rng, d);
                let mut resamples = 0;
                loop {
                    let sv = crate::linops::singular_values(&t)?;
                    if sv[0] > 0.05 * sv[sv.len() - 1] {
                        break;
                    }
                    resamples += 1;
                    if resamples > MAX_RESAMPLES {
                        return Err(Error::DegenerateInstance(
                            "no well-conditioned invertible map".into(),
                        ));
                    }
                    t = random_ginibre(rng, d);
                }
                let mean = kubo_ando_mean(&xa, &ya, &spec)?;
                let lhs = &t * mean * t.adjoint();
                let rhs = kubo_ando_mean(
                    &hermitize(&(&t * &xa * t.adjoint())),
                    &hermitize(&(&t * &ya * t.adjoint())),
                    &spec,
                )?;
                let scale = max_abs(&rhs).max(1.0);
                let margin = -max_abs(&(rhs.clone() - lhs)) / scale;
                Ok(report(
                    "kubo_transformer_eq",
                    i,
                    seed,
                    vec![d],
                    params,
                    margin,
                    // equality check runs at the equality tolerance
                    crate::linops::TOL_EQ,
                    resamples,
                ))
            }
        }
    })
}

/// Generalized Hölder inequality for weighted norms:
/// `‖Δ₁^{1/p₁}···Δ_n^{1/p_n}|Ω⟩‖_{r_n,ω} ≤ Π ‖ψ_i‖₁^{1/p_i}` with
/// `1/r_n = Σ 1/p_i`, plus a homogeneity cross-check on unnormalized
/// states (tag `holder_homogeneity`).
pub fn holder_suite(cfg: &SuiteConfig) -> Result<Vec<TrialReport>> {
    run_suite(cfg, "holder", |i, seed, rng| {
        let d = pick(&cfg.dims, rng.random_range(0..cfg.dims.len()));
        let grids: [&[f64]; 3] = [&[4.0, 4.0], &[2.0, 4.0, 4.0], &[3.0, 3.0, 3.0]];
        let ps = grids[i % grids.len()];
        let n = ps.len();
        let rn = 1.0 / ps.iter().map(|p| 1.0 / p).sum::<f64>();
        let omega = draw_state(rng, d, TEMPER);
        let states: Vec<DensityMatrix> = (0..n).map(|_| draw_state(rng, d, 0.0)).collect();

        let vector_norm = |scale_first: f64| -> Result<f64> {
            let mut v: CVector = omega_vector(&omega)?.entries;
            for (k, (psi, p)) in states.iter().zip(ps.iter()).enumerate().rev() {
                let mat = if k == 0 {
                    psi.matrix() * Complex64::new(scale_first, 0.0)
                } else {
                    psi.matrix().clone()
                };
                let delta = relative_modular(&mat, &omega)?;
                v = delta.apply_power(1.0 / p, &v)?;
            }
            pnorm_omega(&GnsVector::new(v, omega.clone())?, rn)
        };

        let mut params = BTreeMap::new();
        params.insert("n".into(), n as f64);
        params.insert("r_n".into(), rn);
        if i % 2 == 0 {
            // normalized states: RHS = 1
            let margin = 1.0 - vector_norm(1.0)?;
            Ok(report(
                "holder",
                i,
                seed,
                vec![d],
                params,
                margin,
                cfg.tolerance,
                0,
            ))
        } else {
            // scaling ψ₁ by 2 scales the norm by exactly 2^{1/p₁}
            let base = vector_norm(1.0)?;
            let scaled = vector_norm(2.0)?;
            let margin = -(scaled - 2.0f64.powf(1.0 / ps[0]) * base).abs();
            Ok(report(
                "holder_homogeneity",
                i,
                seed,
                vec![d],
                params,
                margin,
                crate::linops::TOL_EQ,
                0,
            ))
        }
    })
}

// ---------------------------------------------------------------------------
// contraction-norm suites
// ---------------------------------------------------------------------------

/// Sampled lower bound on `‖F‖_{(p,Ω_B)→(p,Ω_A)}`: best ratio over random
/// vectors plus coordinate-perturbation hill climbing (100 steps, decay
/// 0.7 on rejection). Exact at p = 2 (largest singular value).
fn contraction_norm_lower_bound(
    f: &crate::states::GnsContraction,
    p: f64,
    n_samples: usize,
    rng: &mut ChaCha12Rng,
) -> Result<f64> {
    if p == 2.0 {
        return f.operator_norm();
    }
    let db = f.omega_b().dim();
    let ratio = |v: &CVector| -> Result<f64> {
        let denom = pnorm_omega(&GnsVector::new(v.clone(), f.omega_b().clone())?, p)?;
        if denom <= 1e-12 {
            return Ok(0.0);
        }
        let image = f.apply(v)?;
        let num = pnorm_omega(&GnsVector::new(image, f.omega_a().clone())?, p)?;
        Ok(num / denom)
    };
    let draw = |rng: &mut ChaCha12Rng| -> CVector {
        CVector::from_fn(db * db, |_, _| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im)
        })
    };
    let mut best_v = vectorize(&CMatrix::identity(db, db));
    let mut best = ratio(&best_v)?;
    for _ in 0..n_samples {
        let v = draw(rng);
        let r = ratio(&v)?;
        if r > best {
            best = r;
            best_v = v;
        }
    }
    let mut step = 0.5;
    for _ in 0..100 {
        let k = rng.random_range(0..db * db);
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        let mut cand = best_v.clone();
        cand[k] += Complex64::new(re, im) * Complex64::new(step, 0.0);
        match ratio(&cand) {
            Ok(r) if r > best => {
                best = r;
                best_v = cand;
            }
            _ => step *= 0.7,
        }
    }
    Ok(best)
}

/// Contractions cannot increase the (p,ω)-norm: per random channel,
/// `margin = 1 − L(p)` where `L(p)` is the exact norm at p = 2 and a
/// sampled lower bound at p ∈ {4, 8, ∞}.
pub fn contraction_norm_suite(cfg: &SuiteConfig) -> Result<Vec<TrialReport>> {
    run_suite(cfg, "contraction_norm", |i, seed, rng| {
        let d_in = pick(&cfg.dims, rng.random_range(0..cfg.dims.len()));
        let d_out = pick(&[2usize, 3], rng.random_range(0..2));
        let inst = draw_dpi_instance(rng, 1, d_in, d_out, TEMPER)?;
        let f = gns_contraction(&inst.channel, &inst.omega_a)?;
        let p = pick(&[2.0, 4.0, 8.0, f64::INFINITY], i);
        let bound = contraction_norm_lower_bound(&f, p, 32, rng)?;
        let mut params = BTreeMap::new();
        params.insert("p".into(), p);
        params.insert("bound".into(), bound);
        // p = 2 is exact; other p values are sampled lower bounds
        params.insert("exact".into(), if p == 2.0 { 1.0 } else { 0.0 });
        Ok(report(
            "contraction_norm",
            i,
            seed,
            vec![d_in, d_out],
            params,
            1.0 - bound,
            cfg.tolerance,
            inst.resamples,
        ))
    })
}

/// Riesz-Thorin interpolation consistency for `1/p_θ = (1−θ)/∞ + θ/2`:
/// `margin = U(∞)^{1−θ}·U(2)^θ − L(p_θ)` with `U(2)` the exact largest
/// singular value, `U(∞) = 1` (the dual channel is unital and completely
/// positive, so its ∞→∞ norm is attained at the identity), and `L` the
/// sampled lower bound. A consistency check, not a proof.
pub fn riesz_thorin_suite(cfg: &SuiteConfig) -> Result<Vec<TrialReport>> {
    run_suite(cfg, "riesz_thorin", |i, seed, rng| {
        let d_in = pick(&cfg.dims, rng.random_range(0..cfg.dims.len()));
        let d_out = pick(&[2usize, 3], rng.random_range(0..2));
        let inst = draw_dpi_instance(rng, 1, d_in, d_out, TEMPER)?;
        let f = gns_contraction(&inst.channel, &inst.omega_a)?;
        let theta = pick(&[0.0, 0.5, 1.0], i);
        let u2 = f.operator_norm()?;
        let u_inf: f64 = 1.0;
        let p_theta = if theta == 0.0 { f64::INFINITY } else { 2.0 / theta };
        let interpolated = u_inf.powf(1.0 - theta) * u2.powf(theta);
        let lower = contraction_norm_lower_bound(&f, p_theta, 32, rng)?;
        let mut params = BTreeMap::new();
        params.insert("theta".into(), theta);
        params.insert("p_theta".into(), p_theta);
        params.insert("interpolated".into(), interpolated);
        params.insert("lower".into(), lower);
        Ok(report(
            "riesz_thorin",
            i,
            seed,
            vec![d_in, d_out],
            params,
            interpolated - lower,
            cfg.tolerance,
            inst.resamples,
        ))
    })
}

// ---------------------------------------------------------------------------
// extended range suite
// ---------------------------------------------------------------------------

/// The majorization witness of the extended θ range: with
/// `c = ‖ψ^{−1/2} ω ψ^{−1/2}‖_∞` (so `ω ≤ c·ψ`),
/// `margin = c^θ − ‖Δ_{Ψ|Ω}^{−θ/2} Δ_Ω^{θ/2}‖_∞` for θ in a small grid;
/// every fourth trial instead checks `c·Δ_{Ψ|Ω} ⪰ Δ_Ω` spectrally (tag
/// `extended_theta1_eigen`).
pub fn extended_range_suite(cfg: &SuiteConfig) -> Result<Vec<TrialReport>> {
    run_suite(cfg, "extended_range", |i, seed, rng| {
        let d = pick(&cfg.dims, rng.random_range(0..cfg.dims.len()));
        let psi = draw_state(rng, d, TEMPER);
        let omega = draw_state(rng, d, TEMPER);
        let half_inv = psi.power(-0.5)?;
        let c = schatten_norm(&(&half_inv * omega.matrix() * &half_inv), f64::INFINITY)?;
        let delta_po = relative_modular(psi.matrix(), &omega)?;
        let delta_oo = relative_modular(omega.matrix(), &omega)?;
        let theta = pick(&[0.25, 0.5, 0.75, 1.0], i);
        let mut params = BTreeMap::new();
        params.insert("c".into(), c);
        params.insert("theta".into(), theta);
        if i % 4 == 3 {
            // direct eigenvalue check at θ = 1: cΔ_{Ψ|Ω} ⪰ Δ_Ω
            let big = delta_po.materialize_power(1.0)? * Complex64::new(c, 0.0)
                - delta_oo.materialize_power(1.0)?;
            let margin = eigh(&hermitize(&big))?.min();
            return Ok(report(
                "extended_theta1_eigen",
                i,
                seed,
                vec![d],
                params,
                margin,
                cfg.tolerance,
                0,
            ));
        }
        let t = delta_po.materialize_power(-theta / 2.0)? * delta_oo.materialize_power(theta / 2.0)?;
        let witness = schatten_norm(&t, f64::INFINITY)?;
        params.insert("witness".into(), witness);
        Ok(report(
            "extended_range",
            i,
            seed,
            vec![d],
            params,
            c.powf(theta) - witness,
            cfg.tolerance,
            0,
        ))
    })
}

// ---------------------------------------------------------------------------
// cross-path, classical-reduction and special-case suites
// ---------------------------------------------------------------------------

/// Matrix-route vs modular-route equality for the (θ,r) and three-state
/// divergences; `margin = −|difference|`.
pub fn cross_path_suite(cfg: &SuiteConfig) -> Result<Vec<TrialReport>> {
    run_suite(cfg, "cross_path", |i, seed, rng| {
        let d = pick(&cfg.dims, rng.random_range(0..cfg.dims.len()));
        let mut params = BTreeMap::new();
        if i % 2 == 0 {
            let theta = pick(&[0.1, 0.3, 0.5, 0.7, 0.9], i / 2);
            let r = pick(&[0.5, 1.0, 1.5, 2.0, 4.0], i / 10);
            let psi = draw_state(rng, d, TEMPER);
            let omega = draw_state(rng, d, TEMPER);
            let a = theta_r(theta, r, &psi, &omega)?.value;
            let b = theta_r_modular(theta, r, &psi, &omega)?.value;
            params.insert("theta".into(), theta);
            params.insert("r".into(), r);
            Ok(report(
                "cross_path_theta_r",
                i,
                seed,
                vec![d],
                params,
                -(a - b).abs(),
                cfg.tolerance,
                0,
            ))
        } else {
            let grid = [(0.2, 0.2), (0.2, 0.4), (0.4, 0.2), (0.4, 0.4)];
            let (t1, t2) = grid[(i / 2) % grid.len()];
            let r = pick(&[1.0, 2.0], i / 8);
            let alpha = pick(&cfg.alphas, i / 16);
            let psi1 = draw_state(rng, d, TEMPER);
            let psi2 = draw_state(rng, d, TEMPER);
            let omega = draw_state(rng, d, TEMPER);
            let a = three_state(t1, t2, r, alpha, &psi1, &psi2, &omega)?.value;
            let b = three_state_modular(t1, t2, r, &MeanSpec::Power(alpha), &psi1, &psi2, &omega)?
                .value;
            params.insert("theta1".into(), t1);
            params.insert("theta2".into(), t2);
            params.insert("r".into(), r);
            params.insert("alpha".into(), alpha);
            Ok(report(
                "cross_path_three_state",
                i,
                seed,
                vec![d],
                params,
                -(a - b).abs(),
                cfg.tolerance,
                0,
            ))
        }
    })
}

fn random_distribution(rng: &mut ChaCha12Rng, d: usize) -> Vec<f64> {
    let mut raw: Vec<f64> = (0..d)
        .map(|_| -(rng.random::<f64>().max(1e-12)).ln() + 0.05)
        .collect();
    let total: f64 = raw.iter().sum();
    raw.iter_mut().for_each(|x| *x /= total);
    raw
}

/// Classical reduction on simultaneously diagonal states: the quantum
/// families reproduce their classical formulas, and the n-state measure
/// with θ₀ = 0 is r- and α-chain-independent.
pub fn classical_reduction_suite(cfg: &SuiteConfig) -> Result<Vec<TrialReport>> {
    run_suite(cfg, "classical_reduction", |i, seed, rng| {
        let d = pick(&cfg.dims, rng.random_range(0..cfg.dims.len()));
        let q = random_distribution(rng, d);
        let p = random_distribution(rng, d);
        let psi = DensityMatrix::from_probabilities(&q)?;
        let omega = DensityMatrix::from_probabilities(&p)?;
        let mut params = BTreeMap::new();
        let margin = match i % 3 {
            0 => {
                let theta = pick(&[0.2, 0.5, 0.8], i / 3);
                let r = pick(&[1.0, 2.0], i / 9);
                params.insert("theta".into(), theta);
                params.insert("r".into(), r);
                let quantum = theta_r(theta, r, &psi, &omega)?.value;
                let classical = classical_renyi(theta, &q, &p)?;
                -(quantum - classical).abs()
            }
            1 => {
                let quantum = relative_entropy(&psi, &omega)?.value;
                let classical = classical_kl(&q, &p)?;
                -(quantum - classical).abs()
            }
            _ => {
                // α- and r-independence of the generating functional; the
                // distributions are flattened so the chain exponents
                // θ_i/(rγ_i) keep the powered states above the spectral clip
                let flatten = |v: Vec<f64>| -> Vec<f64> {
                    let u = 1.0 / v.len() as f64;
                    v.into_iter().map(|x| 0.5 * x + 0.5 * u).collect()
                };
                let q = flatten(q.clone());
                let p = flatten(p.clone());
                let p3 = flatten(random_distribution(rng, d));
                let psi = DensityMatrix::from_probabilities(&q)?;
                let omega = DensityMatrix::from_probabilities(&p)?;
                let third = DensityMatrix::from_probabilities(&p3)?;
                let thetas = random_distribution(rng, 3);
                let expected = classical_multi(&thetas, &[q, p, p3])?;
                let weights = ThetaWeights::new(thetas)?;
                let states = [psi, omega, third];
                let mm = DensityMatrix::maximally_mixed(d);
                let mut worst: f64 = 0.0;
                for &r in &[1.0, 2.0, 4.0] {
                    // chains with balanced γ-weights, keeping exponents small
                    for alphas in [[0.5, 0.5], [0.4, 0.6], [0.7, 0.3]] {
                        let chain = AlphaChain::new(alphas.to_vec())?;
                        let v = multi_state(&weights, r, &chain, &states, &mm, false)?.value;
                        worst = worst.max((v - expected).abs());
                    }
                }
                -worst
            }
        };
        Ok(report(
            "classical_reduction",
            i,
            seed,
            vec![d],
            params,
            margin,
            cfg.tolerance,
            0,
        ))
    })
}

/// Special-case identities: `S_{θ,1} = Petz_θ`, `S_{θ,θ} = sandwiched_θ`,
/// the (θ ↔ 1−θ, ψ ↔ ω) symmetry, and the three-state reductions at
/// `θ_i = 0` and `ψ₁ = ψ₂`.
pub fn special_cases_suite(cfg: &SuiteConfig) -> Result<Vec<TrialReport>> {
    run_suite(cfg, "special_cases", |i, seed, rng| {
        let d = pick(&cfg.dims, rng.random_range(0..cfg.dims.len()));
        let psi = draw_state(rng, d, TEMPER);
        let omega = draw_state(rng, d, TEMPER);
        let mut params = BTreeMap::new();
        let (tag, margin) = match i % 5 {
            0 => {
                let theta = pick(&[0.2, 0.5, 0.8], i / 5);
                params.insert("theta".into(), theta);
                let a = theta_r(theta, 1.0, &psi, &omega)?.value;
                let b = petz(theta, &psi, &omega)?.value;
                ("special_petz_at_r1", -(a - b).abs())
            }
            1 => {
                let theta = pick(&[0.5, 0.7, 0.9], i / 5);
                params.insert("theta".into(), theta);
                let a = theta_r(theta, theta, &psi, &omega)?.value;
                let b = sandwiched(theta, &psi, &omega)?.value;
                ("special_sandwiched_at_r_theta", -(a - b).abs())
            }
            2 => {
                let theta = pick(&[0.25, 0.5, 0.75], i / 5);
                let r = pick(&[1.0, 2.0], i / 15);
                params.insert("theta".into(), theta);
                params.insert("r".into(), r);
                let lhs = (1.0 - theta) * theta_r(theta, r, &psi, &omega)?.value;
                let rhs = theta * theta_r(1.0 - theta, r, &omega, &psi)?.value;
                ("special_symmetry", -(lhs - rhs).abs())
            }
            3 => {
                let theta2 = pick(&[0.3, 0.6], i / 5);
                let r = pick(&[1.0, 2.0], i / 10);
                let alpha = pick(&cfg.alphas, i / 20);
                params.insert("theta2".into(), theta2);
                params.insert("r".into(), r);
                let other = draw_state(rng, d, TEMPER);
                let a = three_state(0.0, theta2, r, alpha, &other, &psi, &omega)?.value;
                let b = theta_r(theta2, r, &psi, &omega)?.value;
                ("special_three_state_theta0", -(a - b).abs())
            }
            _ => {
                let (t1, t2) = pick(&[(0.3, 0.4), (0.2, 0.2)], i / 5);
                let r = pick(&[1.0, 2.0], i / 10);
                let alpha = pick(&cfg.alphas, i / 20);
                params.insert("theta1".into(), t1);
                params.insert("theta2".into(), t2);
                let a = three_state(t1, t2, r, alpha, &psi, &psi, &omega)?.value;
                let theta0 = 1.0 - t1 - t2;
                let b = theta0 / ((t1 - 1.0) * (t2 - 1.0))
                    * theta_r(t1 + t2, r, &psi, &omega)?.value;
                ("special_three_state_equal", -(a - b).abs())
            }
        };
        Ok(report(tag, i, seed, vec![d], params, margin, cfg.tolerance, 0))
    })
}

// ---------------------------------------------------------------------------
// limit suite
// ---------------------------------------------------------------------------

/// Entropy limits: Richardson ε → 0 extrapolation of the normalized
/// n-state measure against its weighted relative-entropy target
/// (`limit_weighted_relent`, tolerance per config), the θ → 1 and θ → 0
/// endpoints of the hat-normalized two-state measure
/// (`limit_theta_to_one`, `limit_theta_to_zero`), and the strict decrease
/// plus final size of `|S_{θ,2^k} − S_{θ,∞}|` (`limit_rinf_strict`,
/// `limit_rinf_gap`).
pub fn limit_suite(cfg: &SuiteConfig) -> Result<Vec<TrialReport>> {
    run_suite(cfg, "limits", |i, seed, rng| {
        let mut params = BTreeMap::new();
        match i % 5 {
            0 => {
                // ε → 0 limit of the normalized n-state measure
                let n = pick(&[1usize, 2, 3], i / 5);
                let d = pick(&cfg.dims, rng.random_range(0..cfg.dims.len()));
                let r = pick(&[1.0, 2.0], i / 15);
                let states: Vec<DensityMatrix> =
                    (0..n).map(|_| draw_state(rng, d, 0.2)).collect();
                let omega = draw_state(rng, d, 0.2);
                let beta = random_distribution(rng, n);
                let alphas = vec![0.5; n - 1];
                let chain = AlphaChain::new(alphas)?;
                let eps: Vec<f64> = (3..=10).map(|k| 2.0f64.powi(-k)).collect();
                let (extrap, target) =
                    weighted_relent_limit(&beta, r, &chain, &states, &omega, &eps)?;
                params.insert("n".into(), n as f64);
                params.insert("r".into(), r);
                params.insert("target".into(), target);
                Ok(report(
                    "limit_weighted_relent",
                    i,
                    seed,
                    vec![d],
                    params,
                    -(extrap - target).abs(),
                    cfg.tolerance,
                    0,
                ))
            }
            1 => {
                // θ → 1 endpoint of the hat-normalized measure at r = 1
                let psi = draw_state(rng, 2, 0.2);
                let omega = draw_state(rng, 2, 0.2);
                let s = relative_entropy(&psi, &omega)?.value;
                let hs: Vec<f64> = (10..=13).map(|k| 2.0f64.powi(-k)).collect();
                let vals: Result<Vec<f64>> = hs
                    .iter()
                    .map(|&h| {
                        Ok(crate::divergences::extended_theta_r(
                            1.0 - h,
                            1.0,
                            &psi,
                            &omega,
                            ExtendedVariant::Hat,
                        )?
                        .0
                        .value)
                    })
                    .collect();
                let extrap = richardson1(&hs, &vals?)?;
                params.insert("target".into(), s);
                Ok(report(
                    "limit_theta_to_one",
                    i,
                    seed,
                    vec![2],
                    params,
                    -(extrap - s).abs(),
                    cfg.tolerance,
                    0,
                ))
            }
            2 => {
                // θ → 0 endpoint: the reversed relative entropy
                let psi = draw_state(rng, 2, 0.2);
                let omega = draw_state(rng, 2, 0.2);
                let s = relative_entropy(&omega, &psi)?.value;
                let hs: Vec<f64> = (10..=13).map(|k| 2.0f64.powi(-k)).collect();
                let vals: Result<Vec<f64>> = hs
                    .iter()
                    .map(|&h| {
                        Ok(crate::divergences::extended_theta_r(
                            h,
                            1.0,
                            &psi,
                            &omega,
                            ExtendedVariant::Hat,
                        )?
                        .0
                        .value)
                    })
                    .collect();
                let extrap = richardson1(&hs, &vals?)?;
                params.insert("target".into(), s);
                Ok(report(
                    "limit_theta_to_zero",
                    i,
                    seed,
                    vec![2],
                    params,
                    -(extrap - s).abs(),
                    cfg.tolerance,
                    0,
                ))
            }
            _ => {
                // r → ∞ convergence sweep on qubit pairs
                let theta = pick(&[0.3, 0.5, 0.7], i / 5);
                let psi = draw_state(rng, 2, 0.3);
                let omega = draw_state(rng, 2, 0.3);
                let target = r_infinity(theta, &psi, &omega)?.value;
                let gaps: Result<Vec<f64>> = (0..=8)
                    .map(|k| {
                        let r = 2.0f64.powi(k);
                        Ok((theta_r(theta, r, &psi, &omega)?.value - target).abs())
                    })
                    .collect();
                let gaps = gaps?;
                params.insert("theta".into(), theta);
                params.insert("final_gap".into(), gaps[8]);
                if i % 5 == 3 {
                    let strict = gaps
                        .windows(2)
                        .map(|w| w[0] - w[1])
                        .fold(f64::INFINITY, f64::min);
                    Ok(report(
                        "limit_rinf_strict",
                        i,
                        seed,
                        vec![2],
                        params,
                        strict,
                        1e-12,
                        0,
                    ))
                } else {
                    Ok(report(
                        "limit_rinf_gap",
                        i,
                        seed,
                        vec![2],
                        params,
                        -gaps[8],
                        1e-3,
                        0,
                    ))
                }
            }
        }
    })
}

// ---------------------------------------------------------------------------
// run_all and reporting
// ---------------------------------------------------------------------------

/// Overrides applied to the acceptance-grade default configuration.
#[derive(Debug, Clone, Default, serde::Deserialize)]
pub struct VerifyConfig {
    #[serde(default)]
    pub master_seed: u64,
    /// Replaces every suite's inequality tolerance when set (the limit
    /// tolerances stay pinned).
    #[serde(default)]
    pub tolerance_override: Option<f64>,
    /// Replaces every suite's trial count when set.
    #[serde(default)]
    pub n_trials_override: Option<usize>,
}

mod report {
    use super::TrialReport;
    use serde::Serialize;
    use std::collections::BTreeMap;

    /// Per-suite aggregate.
    #[derive(Debug, Clone, Serialize)]
    pub struct SuiteSummary {
        pub n_trials: usize,
        pub n_passed: usize,
        pub min_margin: f64,
    }

    /// Whole-run aggregate, appended after the trial lines in the report.
    #[derive(Debug, Clone, Serialize)]
    pub struct RunSummary {
        pub master_seed: u64,
        pub suites: BTreeMap<String, SuiteSummary>,
        pub total_trials: usize,
        pub total_passed: usize,
        pub all_pass: bool,
    }

    pub fn summarize(master_seed: u64, reports: &[TrialReport]) -> RunSummary {
        let mut suites: BTreeMap<String, SuiteSummary> = BTreeMap::new();
        for r in reports {
            let entry = suites.entry(r.suite.clone()).or_insert(SuiteSummary {
                n_trials: 0,
                n_passed: 0,
                min_margin: f64::INFINITY,
            });
            entry.n_trials += 1;
            entry.n_passed += r.pass as usize;
            entry.min_margin = entry.min_margin.min(r.margin);
        }
        let total_trials = reports.len();
        let total_passed = reports.iter().filter(|r| r.pass).count();
        RunSummary {
            master_seed,
            suites,
            total_trials,
            total_passed,
            all_pass: total_passed == total_trials,
        }
    }
}

/// Runs every suite at acceptance-grade trial counts and tolerances.
/// Deterministic per master seed; the report is one `TrialReport` JSON
/// line per trial followed by a [`RunSummary`] object.
pub fn run_all(config: &VerifyConfig) -> Result<(Vec<TrialReport>, RunSummary)> {
    let seed = config.master_seed;
    let n = |default: usize| config.n_trials_override.unwrap_or(default);
    let tol = |default: f64| config.tolerance_override.unwrap_or(default);

    let mut reports = Vec::new();
    reports.extend(dpi_suite(
        DpiFamily::ThetaR,
        &SuiteConfig::with(seed, n(500), tol(1e-8)),
    )?);
    reports.extend(dpi_suite(
        DpiFamily::MultiState,
        &SuiteConfig::with(seed, n(200), tol(1e-8)),
    )?);
    reports.extend(dpi_suite(
        DpiFamily::ExtendedThetaR,
        &SuiteConfig::with(seed, n(100), tol(1e-8)),
    )?);
    reports.extend(cross_path_suite(&SuiteConfig::with(seed, n(200), tol(1e-8)))?);
    reports.extend(classical_reduction_suite(&SuiteConfig::with(
        seed,
        n(100),
        tol(1e-10),
    ))?);
    reports.extend(special_cases_suite(&SuiteConfig::with(seed, n(100), tol(1e-8)))?);
    reports.extend(modular_monotonicity_suite(&SuiteConfig::with(
        seed,
        n(300),
        tol(1e-9),
    ))?);
    reports.extend(kubo_ando_suite(&SuiteConfig::with(seed, n(300), tol(1e-9)))?);
    reports.extend(holder_suite(&SuiteConfig::with(seed, n(300), tol(1e-9)))?);
    reports.extend(contraction_norm_suite(&SuiteConfig::with(
        seed,
        n(100),
        tol(1e-8),
    ))?);
    reports.extend(riesz_thorin_suite(&SuiteConfig::with(seed, n(100), tol(1e-8)))?);
    reports.extend(extended_range_suite(&SuiteConfig::with(seed, n(100), tol(1e-9)))?);
    reports.extend(limit_suite(&SuiteConfig::with(seed, n(100), tol(1e-4)))?);

    let summary = summarize(seed, &reports);
    Ok((reports, summary))
}

/// Renders trials plus summary as JSON lines (the report-file format).
pub fn report_jsonl(reports: &[TrialReport], summary: &RunSummary) -> Result<String> {
    let mut out = String::new();
    for r in reports {
        out.push_str(&serde_json::to_string(r)?);
        out.push('\n');
    }
    out.push_str(&serde_json::to_string(summary)?);
    out.push('\n');
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(seed: u64, n: usize, tol: f64) -> SuiteConfig {
        SuiteConfig::with(seed, n, tol)
    }

    #[test]
    fn seeds_are_stable_and_distinct() {
        let a = derive_seed(42, "dpi_theta_r", 0);
        let b = derive_seed(42, "dpi_theta_r", 1);
        let c = derive_seed(42, "holder", 0);
        let d = derive_seed(43, "dpi_theta_r", 0);
        assert_eq!(a, derive_seed(42, "dpi_theta_r", 0));
        assert!(a != b && a != c && a != d);
    }

    #[test]
    fn zero_trials_rejected() {
        let cfg = quick(1, 0, 1e-8);
        assert!(dpi_suite(DpiFamily::ThetaR, &cfg).is_err());
    }

    #[test]
    fn dpi_theta_r_passes_smoke() {
        let reports = dpi_suite(DpiFamily::ThetaR, &quick(7, 40, 1e-8)).unwrap();
        assert_eq!(reports.len(), 40);
        for r in &reports {
            assert!(r.pass, "trial {} margin {}", r.trial_index, r.margin);
        }
    }

    #[test]
    fn dpi_identity_channel_margin_zero() {
        // building the margin by hand with the identity channel
        let psi = crate::states::random_density(3, 3, 5).unwrap();
        let omega = crate::states::random_density(3, 3, 6).unwrap();
        let before = theta_r(0.5, 2.0, &psi, &omega).unwrap().value;
        let after = theta_r(0.5, 2.0, &psi, &omega).unwrap().value;
        assert!((before - after).abs() < 1e-12);
    }

    #[test]
    fn dpi_constant_channel_sends_divergence_to_zero() {
        let psi = crate::states::random_density(2, 2, 15).unwrap();
        let omega = crate::states::random_density(2, 2, 16).unwrap();
        let target = crate::states::random_density(2, 2, 17).unwrap().depolarized(0.1);
        let ch = Channel::trace_to(&target).unwrap();
        let before = theta_r(0.5, 2.0, &psi, &omega).unwrap().value;
        let pb = ch.apply(&psi).unwrap();
        let ob = ch.apply(&omega).unwrap();
        let after = theta_r(0.5, 2.0, &pb, &ob).unwrap().value;
        assert!(after.abs() < 1e-9, "constant channel leaves zero divergence");
        assert!(before >= -1e-9);
    }

    #[test]
    fn suites_smoke_all_pass() {
        for reports in [
            dpi_suite(DpiFamily::MultiState, &quick(11, 18, 1e-8)).unwrap(),
            dpi_suite(DpiFamily::ExtendedThetaR, &quick(11, 12, 1e-8)).unwrap(),
            cross_path_suite(&quick(11, 16, 1e-8)).unwrap(),
            classical_reduction_suite(&quick(11, 12, 1e-10)).unwrap(),
            special_cases_suite(&quick(11, 15, 1e-8)).unwrap(),
            modular_monotonicity_suite(&quick(11, 12, 1e-9)).unwrap(),
            kubo_ando_suite(&quick(11, 12, 1e-9)).unwrap(),
            holder_suite(&quick(11, 12, 1e-9)).unwrap(),
            contraction_norm_suite(&quick(11, 8, 1e-8)).unwrap(),
            riesz_thorin_suite(&quick(11, 6, 1e-8)).unwrap(),
            extended_range_suite(&quick(11, 12, 1e-9)).unwrap(),
            limit_suite(&quick(11, 10, 1e-4)).unwrap(),
        ] {
            for r in &reports {
                assert!(
                    r.pass,
                    "suite {} trial {} failed with margin {}",
                    r.suite, r.trial_index, r.margin
                );
            }
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = VerifyConfig {
            master_seed: 99,
            tolerance_override: None,
            n_trials_override: Some(6),
        };
        let (r1, s1) = run_all(&cfg).unwrap();
        let (r2, s2) = run_all(&cfg).unwrap();
        let text1 = report_jsonl(&r1, &s1).unwrap();
        let text2 = report_jsonl(&r2, &s2).unwrap();
        assert_eq!(text1, text2, "same config must give identical bytes");
        assert!(s1.all_pass);
    }

    #[test]
    fn zero_tolerance_reports_failures() {
        let cfg = VerifyConfig {
            master_seed: 3,
            tolerance_override: Some(0.0),
            n_trials_override: Some(10),
        };
        let (reports, summary) = run_all(&cfg).unwrap();
        // equality-style margins are tiny but negative, so some trials
        // must now fail, exercising the reporting path
        assert!(reports.iter().any(|r| !r.pass));
        assert!(!summary.all_pass);
    }
}
