//! The spectral functional ψ(S) = Σ_{j ∈ ℤ\{0}} μⱼ λⱼ(S) over the two-sided
//! eigenvalue arrangement
//!
//!   λ₁ ≥ λ₂ ≥ … > 0 > … ≥ λ₋₂ ≥ λ₋₁,
//!
//! its truncations ψₘ, rigorous truncation bounds, and the verification
//! campaigns for the functional's convexity structure: subadditivity,
//! convexity, positive homogeneity, Lipschitz continuity in the operator, and
//! unitary invariance.
//!
//! Zero-padding convention: a finite spectrum contributes λⱼ = 0 beyond its
//! rank on either side, which embeds a finite-rank operator into the
//! infinite-dimensional indexing; index 0 carries λ₀ = 0 and μ₀ is never
//! consulted.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::eigen::{eigh, sum_top_k, trace_quadratic, Spectrum};
use crate::matrix::{random_orthogonal, random_symmetric, MatrixError, SymmetricMatrix};
use crate::report::{mix_seed, run_trials, VerificationReport, Witness};
use crate::weights::{WeightError, WeightSequence};

/// Zero-classification threshold for solver output, relative to max |λ|.
pub const SOLVER_ZERO_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum SpectralError {
    /// The series diverges or no tail bound is derivable.
    Convergence(String),
    /// Campaign weights fail the monotone two-sided order required by the
    /// property under test.
    Monotonicity(String),
    Matrix(MatrixError),
    Weights(WeightError),
    InvalidArgument(String),
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::Convergence(msg) => write!(f, "convergence error: {msg}"),
            SpectralError::Monotonicity(msg) => write!(f, "monotonicity error: {msg}"),
            SpectralError::Matrix(e) => write!(f, "{e}"),
            SpectralError::Weights(e) => write!(f, "{e}"),
            SpectralError::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl std::error::Error for SpectralError {}

impl From<MatrixError> for SpectralError {
    fn from(e: MatrixError) -> Self {
        SpectralError::Matrix(e)
    }
}

impl From<WeightError> for SpectralError {
    fn from(e: WeightError) -> Self {
        match e {
            WeightError::NoTailBound(msg) => SpectralError::Convergence(msg),
            other => SpectralError::Weights(other),
        }
    }
}

/// Growth envelope |λ₊ₙ|, |λ₋ₙ| ≤ coeff · n^exponent for all n ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthEnvelope {
    pub coeff: f64,
    pub exponent: f64,
}

/// A source of eigenvalues in the two-sided indexing. `lambda(j)` must be
/// zero-padded beyond the spectrum on either side, and |λ| must be
/// nonincreasing away from 0 on each side whenever the envelope exponent is
/// ≤ 0 (true for arranged finite spectra and for the gallery's closed forms).
pub trait SpectrumSource {
    fn lambda(&self, j: i64) -> f64;
    fn envelope(&self) -> Option<GrowthEnvelope>;
    /// (positive count, negative count) when the spectrum is finite.
    fn finite_rank(&self) -> Option<(usize, usize)>;
}

/// Eigenvalues split by sign per the two-sided arrangement. The positive side
/// descends from λ₁; `negative[j-1]` holds λ₋ⱼ, so the most negative value
/// comes first. Values classified as zero are kept verbatim so the multiset
/// of the source spectrum is preserved exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSidedSpectrum {
    positive: Vec<f64>,
    negative: Vec<f64>,
    zeros: Vec<f64>,
}

impl TwoSidedSpectrum {
    /// Arranges raw eigenvalues. Values with |λ| ≤ zero_tol are classed as
    /// zero (λ₀); the rest split by sign, positives descending toward 0 and
    /// negatives with λ₋₁ the most negative.
    pub fn from_values(values: &[f64], zero_tol: f64) -> Self {
        let mut positive: Vec<f64> = values.iter().copied().filter(|&v| v > zero_tol).collect();
        let mut negative: Vec<f64> = values.iter().copied().filter(|&v| v < -zero_tol).collect();
        let zeros: Vec<f64> = values
            .iter()
            .copied()
            .filter(|&v| v.abs() <= zero_tol)
            .collect();
        positive.sort_by(|a, b| b.partial_cmp(a).unwrap());
        negative.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Self { positive, negative, zeros }
    }

    pub fn positive(&self) -> &[f64] {
        &self.positive
    }

    /// λ₋₁, λ₋₂, … (most negative first).
    pub fn negative(&self) -> &[f64] {
        &self.negative
    }

    pub fn has_zero(&self) -> bool {
        !self.zeros.is_empty()
    }

    pub fn zero_count(&self) -> usize {
        self.zeros.len()
    }

    /// Every source value, sorted descending; equals the sorted input.
    pub fn to_sorted_values(&self) -> Vec<f64> {
        let mut all: Vec<f64> = self
            .positive
            .iter()
            .chain(self.zeros.iter())
            .chain(self.negative.iter())
            .copied()
            .collect();
        all.sort_by(|a, b| b.partial_cmp(a).unwrap());
        all
    }

    pub fn max_abs(&self) -> f64 {
        let top = self.positive.first().copied().unwrap_or(0.0);
        let bottom = self.negative.first().copied().unwrap_or(0.0);
        top.abs().max(bottom.abs())
    }
}

impl SpectrumSource for TwoSidedSpectrum {
    fn lambda(&self, j: i64) -> f64 {
        if j > 0 {
            self.positive.get((j - 1) as usize).copied().unwrap_or(0.0)
        } else if j < 0 {
            self.negative.get((-j - 1) as usize).copied().unwrap_or(0.0)
        } else {
            0.0
        }
    }

    fn envelope(&self) -> Option<GrowthEnvelope> {
        Some(GrowthEnvelope { coeff: self.max_abs(), exponent: 0.0 })
    }

    fn finite_rank(&self) -> Option<(usize, usize)> {
        Some((self.positive.len(), self.negative.len()))
    }
}

/// Arranges a solved spectrum per the two-sided indexing.
pub fn arrange_two_sided(s: &Spectrum, zero_tol: f64) -> TwoSidedSpectrum {
    TwoSidedSpectrum::from_values(s.eigenvalues(), zero_tol)
}

/// ψₘ: the exact finite sum over 1 ≤ |j| ≤ m.
pub fn psi_truncated(source: &dyn SpectrumSource, mu: &WeightSequence, m: usize) -> f64 {
    let mut total = 0.0;
    for j in 1..=m as i64 {
        total += mu.mu(j) * source.lambda(j);
        total += mu.mu(-j) * source.lambda(-j);
    }
    total
}

/// Rigorous upper bound on |ψ − ψₘ| = |Σ_{|j| ≥ m+1} μⱼλⱼ|.
///
/// Routes, in order:
/// - finite spectrum or finite weight support: the exact absolute tail sum
///   (zero once the truncation passes the support);
/// - decaying spectra (envelope exponent ≤ 0) with summable power weights:
///   max{−λ₋ₘ₋₁, λₘ₊₁} · Σ_{|j| ≥ m+1} |μⱼ| with the family's closed-form
///   tail;
/// - otherwise the comparison integral c·C·m^{g−p+1}/(p−g−1), which needs
///   p > g + 1.
pub fn truncation_error_bound(
    source: &dyn SpectrumSource,
    mu: &WeightSequence,
    m: usize,
) -> Result<f64, SpectralError> {
    let exact_tail = |hi: usize| -> f64 {
        ((m + 1)..=hi)
            .map(|j| {
                let j = j as i64;
                (mu.mu(j) * source.lambda(j)).abs() + (mu.mu(-j) * source.lambda(-j)).abs()
            })
            .sum()
    };
    if let Some((pos, neg)) = source.finite_rank() {
        let hi = pos.max(neg);
        return Ok(if hi <= m { 0.0 } else { exact_tail(hi) });
    }
    if let Some(support) = mu.support() {
        return Ok(if support <= m { 0.0 } else { exact_tail(support) });
    }
    let env = source.envelope().ok_or_else(|| {
        SpectralError::Convergence("spectrum exposes no growth envelope".into())
    })?;
    let p = mu
        .decay_exponent()
        .expect("non-finite-list weights always expose a decay exponent");
    if env.exponent <= 0.0 && p > 1.0 {
        let sup = source
            .lambda(m as i64 + 1)
            .abs()
            .max(source.lambda(-(m as i64) - 1).abs());
        return Ok(sup * mu.abs_tail_sum_bound(m)?);
    }
    if p > env.exponent + 1.0 {
        let sides = if matches!(mu, WeightSequence::TwoSidedAntisymmetricPower { .. }) {
            2.0
        } else {
            1.0
        };
        let c_mu = match mu {
            WeightSequence::OneSidedPower { c, .. }
            | WeightSequence::TwoSidedAntisymmetricPower { c, .. } => *c,
            WeightSequence::FiniteList { .. } => unreachable!(),
        };
        let g = env.exponent;
        return Ok(sides * c_mu * env.coeff * (m as f64).powf(g - p + 1.0) / (p - g - 1.0));
    }
    Err(SpectralError::Convergence(format!(
        "no tail bound: weight decay p = {p} does not dominate spectral growth g = {} by more than 1",
        env.exponent
    )))
}

/// Outcome of the absolute-convergence comparison test for Σ μₙλₙ.
#[derive(Debug, Clone, PartialEq)]
pub enum Convergence {
    Convergent,
    Divergent(String),
}

impl Convergence {
    pub fn is_convergent(&self) -> bool {
        matches!(self, Convergence::Convergent)
    }

    pub fn diagnostic(&self) -> Option<&str> {
        match self {
            Convergence::Convergent => None,
            Convergence::Divergent(msg) => Some(msg),
        }
    }
}

/// Comparison test: with |λₙ| ≤ C·nᵍ and μₙ = c·n^{−p}, the series converges
/// absolutely when p > g + 1. Finite spectra and finite weight lists are
/// always convergent; an unknown growth envelope is reported divergent with a
/// diagnostic.
pub fn convergence_check(source: &dyn SpectrumSource, mu: &WeightSequence) -> Convergence {
    if source.finite_rank().is_some() || mu.support().is_some() {
        return Convergence::Convergent;
    }
    let Some(env) = source.envelope() else {
        return Convergence::Divergent("spectrum exposes no growth envelope".into());
    };
    let p = mu
        .decay_exponent()
        .expect("non-finite-list weights always expose a decay exponent");
    if p > env.exponent + 1.0 {
        Convergence::Convergent
    } else {
        Convergence::Divergent(format!(
            "comparison test fails: p = {p} <= g + 1 = {}",
            env.exponent + 1.0
        ))
    }
}

/// Partial sum ψ_terms together with a rigorous tail bound; value ± tail
/// brackets ψ. Fails with a convergence error when no tail bound exists.
pub fn psi(
    source: &dyn SpectrumSource,
    mu: &WeightSequence,
    terms: usize,
) -> Result<(f64, f64), SpectralError> {
    let tail = truncation_error_bound(source, mu, terms)?;
    let value = psi_truncated(source, mu, terms);
    Ok((value, tail))
}

/// ψ of a finite symmetric matrix: eigendecomposition, two-sided arrangement
/// with the solver zero tolerance, then the exact finite sum.
pub fn psi_matrix(x: &SymmetricMatrix, mu: &WeightSequence) -> Result<f64, SpectralError> {
    let spectrum = eigh(x, false)?;
    let max_abs = spectrum
        .eigenvalues()
        .iter()
        .fold(0.0f64, |a, &b| a.max(b.abs()));
    let arranged = arrange_two_sided(&spectrum, SOLVER_ZERO_TOL * max_abs);
    let value = psi_truncated(&arranged, mu, x.n());
    if let Ok(total) = mu.abs_total_sum_bound() {
        debug_assert!(
            value.abs() <= arranged.max_abs() * total + 1e-9 * (1.0 + value.abs()),
            "|psi| exceeded max|lambda| * sum|mu|"
        );
    }
    Ok(value)
}

fn require_monotone(mu: &WeightSequence) -> Result<(), SpectralError> {
    if mu.is_monotone() {
        Ok(())
    } else {
        Err(SpectralError::Monotonicity(format!(
            "{} is not monotone in the two-sided order",
            mu.spec_string()
        )))
    }
}

fn seeded_matrix(dim: usize, seed: u64, salt: u64) -> SymmetricMatrix {
    random_symmetric(dim, mix_seed(seed, salt), 1.0).expect("valid dimensions")
}

/// The canonical subadditivity probe: S = diag(1,0,…), T = diag(0,1,0,…).
/// For any weights, ψ(S) = ψ(T) = μ₁ and ψ(S+T) = μ₁ + μ₂, so subadditivity
/// at this pair is exactly the monotonicity inequality μ₂ ≤ μ₁.
pub fn canonical_diagonal_pair(dim: usize) -> (SymmetricMatrix, SymmetricMatrix) {
    assert!(dim >= 2, "the canonical pair needs dim >= 2");
    let mut s = vec![0.0; dim];
    let mut t = vec![0.0; dim];
    s[0] = 1.0;
    t[1] = 1.0;
    (
        SymmetricMatrix::diagonal(&s).unwrap(),
        SymmetricMatrix::diagonal(&t).unwrap(),
    )
}

/// Single subadditivity check; usable with arbitrary weights.
pub fn subadditivity_gap(
    s: &SymmetricMatrix,
    t: &SymmetricMatrix,
    mu: &WeightSequence,
) -> Result<f64, SpectralError> {
    let sum = s.add(t)?;
    let psi_s = psi_matrix(s, mu)?;
    let psi_t = psi_matrix(t, mu)?;
    let psi_sum = psi_matrix(&sum, mu)?;
    Ok(psi_sum - (psi_s + psi_t))
}

fn sublinearity_campaign(
    dim: usize,
    trials: u64,
    mu: &WeightSequence,
    seed: u64,
    tol: f64,
    jobs: usize,
) -> VerificationReport {
    // Trial 0 is the canonical diagonal pair (for dim >= 2); the remaining
    // trials draw seeded random pairs. The report counts all executed checks.
    let total = trials + u64::from(dim >= 2);
    run_trials("sublinearity", total, tol, seed, jobs, move |trial| {
        let (s, t, label) = if dim >= 2 && trial == 0 {
            let (s, t) = canonical_diagonal_pair(dim);
            (s, t, "canonical diag(1,0,..)/diag(0,1,..) pair".to_string())
        } else {
            let s = seeded_matrix(dim, seed, 2 * trial);
            let t = seeded_matrix(dim, seed, 2 * trial + 1);
            let label = format!("random pair (dim={dim}, seed={seed}, trial={trial})");
            (s, t, label)
        };
        match subadditivity_gap(&s, &t, mu) {
            Ok(gap) => {
                let psi_s = psi_matrix(&s, mu).unwrap_or(f64::NAN);
                let psi_t = psi_matrix(&t, mu).unwrap_or(f64::NAN);
                let scale = 1.0 + psi_s.abs() + psi_t.abs();
                (gap > tol * scale).then(|| Witness {
                    trial,
                    violation: gap,
                    inputs: format!("{label}: psi(S+T) - psi(S) - psi(T) = {gap:e}"),
                })
            }
            Err(e) => Some(Witness {
                trial,
                violation: f64::INFINITY,
                inputs: format!("{label}: {e}"),
            }),
        }
    })
}

/// Campaign: ψ(S+T) ≤ ψ(S) + ψ(T) over seeded pairs. Non-monotone weights
/// are rejected here; use [`verify_sublinearity_unchecked`] to probe them.
pub fn verify_sublinearity(
    dim: usize,
    trials: u64,
    mu: &WeightSequence,
    seed: u64,
    tol: f64,
    jobs: usize,
) -> Result<VerificationReport, SpectralError> {
    require_monotone(mu)?;
    Ok(sublinearity_campaign(dim, trials, mu, seed, tol, jobs))
}

/// Falsification entry point: same campaign, no monotonicity gate. With
/// weights outside the theorem's hypotheses the report records the violations
/// instead of erroring out.
pub fn verify_sublinearity_unchecked(
    dim: usize,
    trials: u64,
    mu: &WeightSequence,
    seed: u64,
    tol: f64,
    jobs: usize,
) -> VerificationReport {
    sublinearity_campaign(dim, trials, mu, seed, tol, jobs)
}

/// Campaign: ψ(tS + (1−t)T) ≤ tψ(S) + (1−t)ψ(T) at t ∈ {0, ½, 1} and one
/// random t per trial.
pub fn verify_convexity(
    dim: usize,
    trials: u64,
    mu: &WeightSequence,
    seed: u64,
    tol: f64,
    jobs: usize,
) -> Result<VerificationReport, SpectralError> {
    require_monotone(mu)?;
    Ok(run_trials("convexity", trials, tol, seed, jobs, move |trial| {
        let s = seeded_matrix(dim, seed, 2 * trial);
        let t_mat = seeded_matrix(dim, seed, 2 * trial + 1);
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, trial ^ 0xC0));
        let ts = [0.0, 0.5, 1.0, rng.gen_range(0.0..1.0)];
        let run = || -> Result<Option<(f64, f64)>, SpectralError> {
            let psi_s = psi_matrix(&s, mu)?;
            let psi_t = psi_matrix(&t_mat, mu)?;
            for &t in &ts {
                let blend = SymmetricMatrix::linear_combination(t, &s, 1.0 - t, &t_mat)?;
                let lhs = psi_matrix(&blend, mu)?;
                let rhs = t * psi_s + (1.0 - t) * psi_t;
                let scale = 1.0 + psi_s.abs() + psi_t.abs();
                if lhs > rhs + tol * scale {
                    return Ok(Some((t, lhs - rhs)));
                }
            }
            Ok(None)
        };
        match run() {
            Ok(None) => None,
            Ok(Some((t, gap))) => Some(Witness {
                trial,
                violation: gap,
                inputs: format!(
                    "convex combination t={t} (dim={dim}, seed={seed}, trial={trial}): gap {gap:e}"
                ),
            }),
            Err(e) => Some(Witness {
                trial,
                violation: f64::INFINITY,
                inputs: format!("trial {trial}: {e}"),
            }),
        }
    }))
}

/// Campaign: ψ(αS) = αψ(S) for α ≥ 0 (always), and ψ(αS) = |α|ψ(S) for α < 0
/// when the weights are an antisymmetric family. The |α| law genuinely needs
/// μ₋ⱼ = −μⱼ; it is not tested otherwise.
pub fn verify_homogeneity(
    dim: usize,
    trials: u64,
    mu: &WeightSequence,
    seed: u64,
    tol: f64,
    jobs: usize,
) -> Result<VerificationReport, SpectralError> {
    require_monotone(mu)?;
    let antisymmetric = mu.is_antisymmetric();
    Ok(run_trials("homogeneity", trials, tol, seed, jobs, move |trial| {
        let s = seeded_matrix(dim, seed, trial);
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, trial ^ 0xA1));
        let mut alphas = vec![0.0, 2.0, rng.gen_range(0.0..3.0)];
        if antisymmetric {
            alphas.push(-1.0);
            alphas.push(-rng.gen_range(0.0..3.0));
        }
        let run = || -> Result<Option<(f64, f64)>, SpectralError> {
            let psi_s = psi_matrix(&s, mu)?;
            for &alpha in &alphas {
                let scaled = s.scale(alpha)?;
                let lhs = psi_matrix(&scaled, mu)?;
                let rhs = alpha.abs() * psi_s;
                let scale = 1.0 + rhs.abs();
                if (lhs - rhs).abs() > tol * scale {
                    return Ok(Some((alpha, (lhs - rhs).abs())));
                }
            }
            Ok(None)
        };
        match run() {
            Ok(None) => None,
            Ok(Some((alpha, gap))) => Some(Witness {
                trial,
                violation: gap,
                inputs: format!(
                    "alpha={alpha} (dim={dim}, seed={seed}, trial={trial}): |psi(aS) - |a|psi(S)| = {gap:e}"
                ),
            }),
            Err(e) => Some(Witness {
                trial,
                violation: f64::INFINITY,
                inputs: format!("trial {trial}: {e}"),
            }),
        }
    }))
}

/// Spectral norm max |λ(E)| via the dense solver.
pub fn spectral_norm(x: &SymmetricMatrix) -> Result<f64, SpectralError> {
    let s = eigh(x, false)?;
    Ok(s.eigenvalues()
        .iter()
        .fold(0.0f64, |a, &b| a.max(b.abs())))
}

/// Campaign for the continuity surrogate: for random perturbations with
/// ‖E‖₂ ≤ max_perturbation,
///
/// (a) |λⱼ(S+E) − λⱼ(S)| ≤ ‖E‖₂ + tol for every sorted index j, and
/// (b) |ψ(S+E) − ψ(S)| ≤ ‖E‖₂ · Σ|μⱼ| + tol,
///
/// the Lipschitz estimate that implies lower semicontinuity along any
/// norm-convergent operator sequence.
#[allow(clippy::too_many_arguments)]
pub fn verify_spectral_continuity(
    dim: usize,
    trials: u64,
    mu: &WeightSequence,
    seed: u64,
    tol: f64,
    max_perturbation: f64,
    jobs: usize,
) -> Result<VerificationReport, SpectralError> {
    require_monotone(mu)?;
    let mu_total = mu.abs_total_sum_bound()?;
    Ok(run_trials("continuity", trials, tol, seed, jobs, move |trial| {
        let run = || -> Result<Option<(String, f64)>, SpectralError> {
            let s = seeded_matrix(dim, seed, 2 * trial);
            let raw = seeded_matrix(dim, seed, 2 * trial + 1);
            let raw_norm = spectral_norm(&raw)?;
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, trial ^ 0xE7));
            let target = rng.gen_range(0.0..max_perturbation);
            let e = if raw_norm == 0.0 {
                raw.clone()
            } else {
                raw.scale(target / raw_norm)?
            };
            let e_norm = spectral_norm(&e)?;
            let perturbed = s.add(&e)?;
            let lam_s = eigh(&s, false)?;
            let lam_p = eigh(&perturbed, false)?;
            for (j, (a, b)) in lam_p
                .eigenvalues()
                .iter()
                .zip(lam_s.eigenvalues())
                .enumerate()
            {
                let shift = (a - b).abs();
                if shift > e_norm + tol {
                    return Ok(Some((
                        format!("eigenvalue {j} moved {shift:e} > ||E|| = {e_norm:e}"),
                        shift - e_norm,
                    )));
                }
            }
            let dpsi = (psi_matrix(&perturbed, mu)? - psi_matrix(&s, mu)?).abs();
            let lipschitz = e_norm * mu_total;
            if dpsi > lipschitz + tol {
                return Ok(Some((
                    format!("|dpsi| = {dpsi:e} > ||E|| sum|mu| = {lipschitz:e}"),
                    dpsi - lipschitz,
                )));
            }
            Ok(None)
        };
        match run() {
            Ok(None) => None,
            Ok(Some((detail, violation))) => Some(Witness {
                trial,
                violation,
                inputs: format!("dim={dim}, seed={seed}, trial={trial}: {detail}"),
            }),
            Err(e) => Some(Witness {
                trial,
                violation: f64::INFINITY,
                inputs: format!("trial {trial}: {e}"),
            }),
        }
    }))
}

/// Campaign: |ψ − ψₘ| ≤ truncation bound at each m, and the ψₘ sequence is
/// Cauchy at the bound's rate. ψ is represented by a reference truncation far
/// beyond max(m_list), whose own tail bound is added to the comparison.
pub fn verify_finite_rank_approximation(
    source: &dyn SpectrumSource,
    mu: &WeightSequence,
    m_list: &[usize],
    tol: f64,
) -> Result<VerificationReport, SpectralError> {
    if m_list.is_empty() {
        return Err(SpectralError::InvalidArgument("empty truncation list".into()));
    }
    if let Convergence::Divergent(msg) = convergence_check(source, mu) {
        return Err(SpectralError::Convergence(msg));
    }
    let mut ms: Vec<usize> = m_list.to_vec();
    ms.sort_unstable();
    let m_ref = ms.last().unwrap().saturating_mul(20).max(10_000);
    let psi_ref = psi_truncated(source, mu, m_ref);
    let tail_ref = truncation_error_bound(source, mu, m_ref)?;

    let values: Vec<(usize, f64, f64)> = ms
        .iter()
        .map(|&m| {
            let v = psi_truncated(source, mu, m);
            let b = truncation_error_bound(source, mu, m).unwrap_or(f64::INFINITY);
            (m, v, b)
        })
        .collect();

    Ok(run_trials(
        "truncation",
        values.len() as u64,
        tol,
        0,
        1,
        move |trial| {
            let (m, value, bound) = values[trial as usize];
            let gap = (psi_ref - value).abs();
            if gap > bound + tail_ref + tol {
                return Some(Witness {
                    trial,
                    violation: gap - bound,
                    inputs: format!("m={m}: |psi - psi_m| = {gap:e} exceeds bound {bound:e}"),
                });
            }
            if trial as usize + 1 < values.len() {
                let (m2, value2, _) = values[trial as usize + 1];
                let step = (value2 - value).abs();
                if step > bound + tol {
                    return Some(Witness {
                        trial,
                        violation: step - bound,
                        inputs: format!(
                            "Cauchy step |psi_{m2} - psi_{m}| = {step:e} exceeds bound {bound:e}"
                        ),
                    });
                }
            }
            None
        },
    ))
}

/// QᵀXQ, re-symmetrized exactly after the floating-point products.
fn conjugate(x: &SymmetricMatrix, q: &crate::matrix::StiefelFrame) -> SymmetricMatrix {
    let n = x.n();
    // B = X·Q
    let mut b = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            b[i * n + j] = (0..n).map(|k| x.get(i, k) * q.get(k, j)).sum();
        }
    }
    // QᵀB
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = (0..n).map(|k| q.get(k, i) * b[k * n + j]).sum();
        }
    }
    SymmetricMatrix::symmetrize(n, &out).expect("finite conjugation")
}

/// Campaign: ψ(QᵀXQ) = ψ(X) for random orthogonal Q (the spectrum is
/// invariant, so the functional of sorted eigenvalues must be too).
pub fn verify_unitary_invariance(
    dim: usize,
    trials: u64,
    mu: &WeightSequence,
    seed: u64,
    tol: f64,
    jobs: usize,
) -> Result<VerificationReport, SpectralError> {
    require_monotone(mu)?;
    Ok(run_trials(
        "unitary-invariance",
        trials,
        tol,
        seed,
        jobs,
        move |trial| {
            let run = || -> Result<Option<f64>, SpectralError> {
                let x = seeded_matrix(dim, seed, trial);
                let q = random_orthogonal(dim, mix_seed(seed, trial ^ 0x0D))?;
                let rotated = conjugate(&x, &q);
                let a = psi_matrix(&x, mu)?;
                let b = psi_matrix(&rotated, mu)?;
                let scale = 1.0 + a.abs();
                Ok(((a - b).abs() > tol * scale).then_some((a - b).abs()))
            };
            match run() {
                Ok(None) => None,
                Ok(Some(gap)) => Some(Witness {
                    trial,
                    violation: gap,
                    inputs: format!(
                        "dim={dim}, seed={seed}, trial={trial}: |psi(QtXQ) - psi(X)| = {gap:e}"
                    ),
                }),
                Err(e) => Some(Witness {
                    trial,
                    violation: f64::INFINITY,
                    inputs: format!("trial {trial}: {e}"),
                }),
            }
        },
    ))
}

/// Campaign for the trace-sup form: over seeded matrices, every random
/// Stiefel frame satisfies tr(AAᵀX) ≤ λ₁ + … + λₖ, and the frame of the top
/// k eigenvectors attains the supremum.
#[allow(clippy::too_many_arguments)]
pub fn verify_trace_sup(
    dim: usize,
    k: usize,
    trials: u64,
    frames_per_trial: u64,
    seed: u64,
    tol: f64,
    jobs: usize,
) -> Result<VerificationReport, SpectralError> {
    if k == 0 || k > dim {
        return Err(SpectralError::InvalidArgument(format!(
            "k={k} out of range for dim={dim}"
        )));
    }
    Ok(run_trials("trace-sup", trials, tol, seed, jobs, move |trial| {
        let run = || -> Result<Option<(String, f64)>, SpectralError> {
            let x = seeded_matrix(dim, seed, trial);
            let top = sum_top_k(&x, k)?;
            let scale = 1.0 + top.abs();
            for f in 0..frames_per_trial {
                let q = random_orthogonal(dim, mix_seed(seed, trial * frames_per_trial + f))?;
                let frame = q.truncated(k)?;
                let value = trace_quadratic(&frame, &x)?;
                if value > top + tol * scale {
                    return Ok(Some((
                        format!("frame {f}: tr(AAtX) = {value} > top-k sum {top}"),
                        value - top,
                    )));
                }
            }
            let eig_frame = eigh(&x, true)?.top_k_frame(k)?;
            let attained = trace_quadratic(&eig_frame, &x)?;
            if (attained - top).abs() > tol * scale {
                return Ok(Some((
                    format!("top-k eigenvector frame attains {attained} vs {top}"),
                    (attained - top).abs(),
                )));
            }
            Ok(None)
        };
        match run() {
            Ok(None) => None,
            Ok(Some((detail, violation))) => Some(Witness {
                trial,
                violation,
                inputs: format!("dim={dim}, k={k}, seed={seed}, trial={trial}: {detail}"),
            }),
            Err(e) => Some(Witness {
                trial,
                violation: f64::INFINITY,
                inputs: format!("trial {trial}: {e}"),
            }),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::parse_weights;

    #[test]
    fn arrangement_examples() {
        let s = TwoSidedSpectrum::from_values(&[3.0, 1.0, -2.0], 0.0);
        assert_eq!(s.positive(), &[3.0, 1.0]);
        assert_eq!(s.negative(), &[-2.0]);
        assert!(!s.has_zero());

        let s = TwoSidedSpectrum::from_values(&[0.0, 0.0, 0.0], 0.0);
        assert!(s.has_zero());
        assert_eq!(s.zero_count(), 3);
        assert!(s.positive().is_empty());
        assert!(s.negative().is_empty());

        // λ₋₁ is the most negative.
        let s = TwoSidedSpectrum::from_values(&[5.0, 4.0, 0.0, -1.0, -6.0], 0.0);
        assert_eq!(s.positive(), &[5.0, 4.0]);
        assert_eq!(s.lambda(-1), -6.0);
        assert_eq!(s.lambda(-2), -1.0);
        assert!(s.has_zero());
        assert_eq!(s.lambda(3), 0.0);
        assert_eq!(s.lambda(0), 0.0);
    }

    #[test]
    fn arrangement_preserves_multiset() {
        let values = [2.5, 1e-14, 0.0, -1e-13, -3.0, 0.5];
        let s = TwoSidedSpectrum::from_values(&values, 1e-12);
        let mut expected = values.to_vec();
        expected.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_eq!(s.to_sorted_values(), expected);
        assert_eq!(s.zero_count(), 3);
    }

    #[test]
    fn psi_hand_example() {
        // Spectrum (2, 1, −1) with μ₁ = 1, μ₂ = ½, μ₋₁ = −1.
        let spec = TwoSidedSpectrum::from_values(&[2.0, 1.0, -1.0], 0.0);
        let mu = WeightSequence::finite_list(vec![1.0, 0.5], vec![-1.0]).unwrap();
        let (value, tail) = psi(&spec, &mu, 4).unwrap();
        assert_eq!(value, 3.5);
        assert_eq!(tail, 0.0);
        // ψ₁ keeps |j| ≤ 1: 1·2 + (−1)(−1) = 3.
        assert_eq!(psi_truncated(&spec, &mu, 1), 3.0);
        // m beyond the rank is exact.
        assert_eq!(psi_truncated(&spec, &mu, 100), 3.5);
    }

    #[test]
    fn psi_zero_operator() {
        let spec = TwoSidedSpectrum::from_values(&[0.0; 5], 0.0);
        let mu = parse_weights("tsap:1:2").unwrap();
        let (value, tail) = psi(&spec, &mu, 10).unwrap();
        assert_eq!(value, 0.0);
        assert_eq!(tail, 0.0);
    }

    #[test]
    fn truncation_bound_zero_for_covered_supports() {
        let spec = TwoSidedSpectrum::from_values(&[2.0, -1.0], 0.0);
        let mu = parse_weights("osp:1:2").unwrap();
        assert_eq!(truncation_error_bound(&spec, &mu, 5).unwrap(), 0.0);
        let list = WeightSequence::finite_list(vec![1.0, 0.5], vec![]).unwrap();
        struct Unbounded;
        impl SpectrumSource for Unbounded {
            fn lambda(&self, j: i64) -> f64 {
                if j > 0 {
                    -((j * j) as f64)
                } else {
                    0.0
                }
            }
            fn envelope(&self) -> Option<GrowthEnvelope> {
                Some(GrowthEnvelope { coeff: 1.0, exponent: 2.0 })
            }
            fn finite_rank(&self) -> Option<(usize, usize)> {
                None
            }
        }
        assert_eq!(truncation_error_bound(&Unbounded, &list, 2).unwrap(), 0.0);
        // Support past the truncation: the exact remaining term |μ₂ λ₂|.
        assert_eq!(truncation_error_bound(&Unbounded, &list, 1).unwrap(), 2.0);
    }

    #[test]
    fn convergence_examples() {
        struct Power {
            g: f64,
        }
        impl SpectrumSource for Power {
            fn lambda(&self, j: i64) -> f64 {
                if j > 0 {
                    -(j as f64).powf(self.g)
                } else {
                    0.0
                }
            }
            fn envelope(&self) -> Option<GrowthEnvelope> {
                Some(GrowthEnvelope { coeff: 1.0, exponent: self.g })
            }
            fn finite_rank(&self) -> Option<(usize, usize)> {
                None
            }
        }
        let well_like = Power { g: 2.0 };
        assert!(convergence_check(&well_like, &parse_weights("osp:1:5").unwrap()).is_convergent());
        assert!(!convergence_check(&well_like, &parse_weights("osp:1:2").unwrap()).is_convergent());
        let bounded = Power { g: 0.0 };
        assert!(convergence_check(&bounded, &parse_weights("osp:1:2").unwrap()).is_convergent());
    }

    #[test]
    fn sublinearity_clean_for_monotone_weights() {
        let mu = parse_weights("tsap:1:2").unwrap();
        let report = verify_sublinearity(8, 200, &mu, 5, 1e-9, 1).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.trials, 201);
    }

    #[test]
    fn sublinearity_counterexample_is_flagged() {
        // μ = (0, 1) is not monotone; the strict entry point refuses it...
        let mu = WeightSequence::finite_list(vec![0.0, 1.0], vec![]).unwrap();
        assert!(matches!(
            verify_sublinearity(2, 10, &mu, 1, 1e-9, 1),
            Err(SpectralError::Monotonicity(_))
        ));
        // ...and the falsification run pins the violation on the canonical
        // pair: ψ(S+T) = μ₁ + μ₂ = 1 > 0 = ψ(S) + ψ(T).
        let report = verify_sublinearity_unchecked(2, 10, &mu, 1, 1e-9, 1);
        assert!(!report.pass);
        assert!(report.violations >= 1);
        let canonical = report.details.iter().find(|w| w.trial == 0).unwrap();
        assert!((canonical.violation - 1.0).abs() < 1e-12);

        // Direct hand check of the witness pair.
        let (s, t) = canonical_diagonal_pair(2);
        let gap = subadditivity_gap(&s, &t, &mu).unwrap();
        assert!((gap - 1.0).abs() < 1e-12);
    }

    #[test]
    fn doubling_is_exact() {
        let mu = parse_weights("tsap:1:2").unwrap();
        let s = seeded_matrix(6, 77, 0);
        let psi_s = psi_matrix(&s, &mu).unwrap();
        let psi_2s = psi_matrix(&s.scale(2.0).unwrap(), &mu).unwrap();
        assert!((psi_2s - 2.0 * psi_s).abs() <= 1e-12 * psi_s.abs());
    }

    #[test]
    fn homogeneity_hand_example_with_antisymmetric_weights() {
        // S = diag(2, −1), μ antisymmetric: ψ(S) = 2μ₁ + μ₁ = 3μ₁ and
        // ψ(−S) = μ₁·1 + μ₋₁·(−2) = 3μ₁.
        let mu = WeightSequence::finite_list(vec![0.5], vec![-0.5]).unwrap();
        let s = SymmetricMatrix::diagonal(&[2.0, -1.0]).unwrap();
        let a = psi_matrix(&s, &mu).unwrap();
        let b = psi_matrix(&s.scale(-1.0).unwrap(), &mu).unwrap();
        assert!((a - 1.5).abs() < 1e-12);
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn convexity_and_homogeneity_campaigns_pass() {
        let mu = parse_weights("tsap:1:2").unwrap();
        assert!(verify_convexity(6, 150, &mu, 9, 1e-9, 1).unwrap().pass);
        assert!(verify_homogeneity(6, 150, &mu, 9, 1e-9, 1).unwrap().pass);
        let osp = parse_weights("osp:1:2").unwrap();
        assert!(verify_homogeneity(6, 150, &osp, 9, 1e-9, 1).unwrap().pass);
    }

    #[test]
    fn continuity_campaign_passes() {
        let mu = parse_weights("tsap:1:2").unwrap();
        let report = verify_spectral_continuity(6, 100, &mu, 13, 1e-10, 0.01, 1).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn zero_perturbation_changes_nothing() {
        let mu = parse_weights("tsap:1:2").unwrap();
        let s = seeded_matrix(5, 3, 0);
        let zero = SymmetricMatrix::zero(5);
        let sum = s.add(&zero).unwrap();
        assert_eq!(psi_matrix(&s, &mu).unwrap(), psi_matrix(&sum, &mu).unwrap());
    }

    #[test]
    fn unitary_invariance_campaign_passes() {
        let mu = parse_weights("tsap:1:2").unwrap();
        let report = verify_unitary_invariance(6, 100, &mu, 41, 1e-9, 1).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn trace_sup_campaign_passes() {
        let report = verify_trace_sup(5, 2, 20, 50, 3, 1e-9, 1).unwrap();
        assert!(report.pass, "{report:?}");
        assert!(verify_trace_sup(5, 9, 20, 50, 3, 1e-9, 1).is_err());
    }

    #[test]
    fn psi_ignores_permutation_of_equal_eigenvalues() {
        // diag entries permuted: identical multiset, identical psi.
        let mu = parse_weights("tsap:1:3").unwrap();
        let a = SymmetricMatrix::diagonal(&[2.0, 2.0, -1.0, 0.5]).unwrap();
        let b = SymmetricMatrix::diagonal(&[0.5, -1.0, 2.0, 2.0]).unwrap();
        assert_eq!(psi_matrix(&a, &mu).unwrap(), psi_matrix(&b, &mu).unwrap());
    }

    #[test]
    fn jobs_do_not_change_campaign_reports() {
        let mu = parse_weights("tsap:1:2").unwrap();
        let a = verify_sublinearity(6, 50, &mu, 19, 1e-9, 1).unwrap();
        let b = verify_sublinearity(6, 50, &mu, 19, 1e-9, 4).unwrap();
        assert_eq!(a, b);
    }
}
