//! Finite-dimensional Schur convexity: the descending cone ℝⁿ_≥, its dual
//! cone, the isotonicity definition, the C¹ derivative criterion, complete
//! elementary symmetric functions, and divided-difference functions.
//!
//! A function f is Schur-convex when x, y descending and y − x in the dual
//! cone (zero sum, nonnegative prefix sums) imply f(x) ≤ f(y). On an open box
//! this is equivalent, for symmetric C¹ functions, to
//! (xᵢ − xⱼ)(∂f/∂xᵢ − ∂f/∂xⱼ) ≥ 0 for all pairs. Both routes are implemented
//! and cross-checked by campaigns.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::{mix_seed, run_trials, VerificationReport, Witness};

#[derive(Debug, Clone, PartialEq)]
pub enum MajorizationError {
    /// Evaluation requested outside the function's domain.
    Domain(String),
    /// Evaluation overflowed to infinity.
    Overflow,
    InvalidArgument(String),
}

impl fmt::Display for MajorizationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MajorizationError::Domain(msg) => write!(f, "domain error: {msg}"),
            MajorizationError::Overflow => write!(f, "evaluation overflowed"),
            MajorizationError::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
        }
    }
}

impl std::error::Error for MajorizationError {}

/// Outcome of a single pair or pointwise check.
#[derive(Debug, Clone, PartialEq)]
pub enum CheckOutcome {
    Holds { margin: f64 },
    Violated { gap: f64, detail: String },
    /// The pair missed a precondition (not descending, difference outside the
    /// dual cone); reported as inapplicable, never as failed.
    Inapplicable { reason: String },
}

impl CheckOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, CheckOutcome::Holds { .. })
    }
}

/// True iff components are nonincreasing (x ∈ ℝⁿ_≥).
pub fn in_descending_cone(x: &[f64]) -> bool {
    x.windows(2).all(|w| w[0] >= w[1])
}

/// Dual cone membership: all prefix sums ≥ −tol and |total sum| ≤ tol.
/// The mathematical cone is exact; the tolerance absorbs rounding in sampled
/// vectors.
pub fn in_dual_cone(y: &[f64], tol: f64) -> bool {
    let mut prefix = 0.0;
    for (i, v) in y.iter().enumerate() {
        prefix += v;
        if i + 1 < y.len() && prefix < -tol {
            return false;
        }
    }
    prefix.abs() <= tol
}

/// Per-component open interval constraint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lower: f64,
    pub upper: f64,
}

impl Domain {
    pub fn all() -> Self {
        Self { lower: f64::NEG_INFINITY, upper: f64::INFINITY }
    }

    pub fn positive() -> Self {
        Self { lower: 0.0, upper: f64::INFINITY }
    }

    pub fn open(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter().all(|&v| v > self.lower && v < self.upper && v.is_finite())
    }
}

/// Complete elementary symmetric function c_r(x) = Σ_{i₁+…+iₙ=r} x₁^{i₁}…xₙ^{iₙ},
/// computed by the prefix recurrence c_r(x₁..xⱼ) = c_r(x₁..xⱼ₋₁) + xⱼ·c_{r−1}(x₁..xⱼ).
pub fn complete_symmetric(x: &[f64], r: usize) -> Result<f64, MajorizationError> {
    if r == 0 {
        return Ok(1.0);
    }
    if x.is_empty() {
        return Ok(0.0);
    }
    let mut h = vec![0.0f64; r + 1];
    h[0] = 1.0;
    for &xi in x {
        for k in 1..=r {
            h[k] += xi * h[k - 1];
        }
    }
    if !h[r].is_finite() {
        return Err(MajorizationError::Overflow);
    }
    Ok(h[r])
}

/// One-variable function with an interval domain, shipped for the
/// divided-difference construction. Built-ins: t³, t⁴, exp(t), and tabulated
/// samples with linear interpolation (whose derivative is the segment slope).
#[derive(Debug, Clone, PartialEq)]
pub struct MerkleFunction {
    name: String,
    interval: (f64, f64),
    kind: MerkleKind,
}

#[derive(Debug, Clone, PartialEq)]
enum MerkleKind {
    Cube,
    Quartic,
    Exp,
    Tabulated { xs: Vec<f64>, ys: Vec<f64> },
}

impl MerkleFunction {
    pub fn cube() -> Self {
        Self {
            name: "cube".into(),
            interval: (f64::NEG_INFINITY, f64::INFINITY),
            kind: MerkleKind::Cube,
        }
    }

    pub fn quartic() -> Self {
        Self {
            name: "quartic".into(),
            interval: (f64::NEG_INFINITY, f64::INFINITY),
            kind: MerkleKind::Quartic,
        }
    }

    pub fn exp() -> Self {
        Self {
            name: "exp".into(),
            interval: (f64::NEG_INFINITY, f64::INFINITY),
            kind: MerkleKind::Exp,
        }
    }

    pub fn tabulated(mut points: Vec<(f64, f64)>) -> Result<Self, MajorizationError> {
        if points.len() < 2 {
            return Err(MajorizationError::InvalidArgument(
                "tabulated function needs at least two points".into(),
            ));
        }
        points.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(MajorizationError::InvalidArgument("duplicate abscissa".into()));
        }
        if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(MajorizationError::InvalidArgument("non-finite table entry".into()));
        }
        let interval = (points[0].0, points[points.len() - 1].0);
        let (xs, ys) = points.into_iter().unzip();
        Ok(Self { name: "tabulated".into(), interval, kind: MerkleKind::Tabulated { xs, ys } })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    fn check(&self, t: f64) -> Result<(), MajorizationError> {
        // Tabulated knots are closed endpoints; analytic built-ins are open.
        let inside = match self.kind {
            MerkleKind::Tabulated { .. } => t >= self.interval.0 && t <= self.interval.1,
            _ => t > self.interval.0 && t < self.interval.1,
        };
        if inside && t.is_finite() {
            Ok(())
        } else {
            Err(MajorizationError::Domain(format!(
                "{} not in the interval of {}",
                t, self.name
            )))
        }
    }

    fn segment(xs: &[f64], t: f64) -> usize {
        match xs.binary_search_by(|v| v.partial_cmp(&t).unwrap()) {
            Ok(i) => i.min(xs.len() - 2),
            Err(i) => i.saturating_sub(1).min(xs.len() - 2),
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64, MajorizationError> {
        self.check(t)?;
        Ok(match &self.kind {
            MerkleKind::Cube => t * t * t,
            MerkleKind::Quartic => t * t * t * t,
            MerkleKind::Exp => t.exp(),
            MerkleKind::Tabulated { xs, ys } => {
                let seg = Self::segment(xs, t);
                let w = (t - xs[seg]) / (xs[seg + 1] - xs[seg]);
                ys[seg] + w * (ys[seg + 1] - ys[seg])
            }
        })
    }

    pub fn derivative(&self, t: f64) -> Result<f64, MajorizationError> {
        self.check(t)?;
        Ok(match &self.kind {
            MerkleKind::Cube => 3.0 * t * t,
            MerkleKind::Quartic => 4.0 * t * t * t,
            MerkleKind::Exp => t.exp(),
            MerkleKind::Tabulated { xs, ys } => {
                let seg = Self::segment(xs, t);
                (ys[seg + 1] - ys[seg]) / (xs[seg + 1] - xs[seg])
            }
        })
    }
}

/// Divided difference F(x, y) = (f(y) − f(x))/(y − x), with F(x, x) = f′(x).
/// F is Schur convex on f's interval squared exactly when f′ is convex.
pub fn merkle_divided_difference(
    f: &MerkleFunction,
    x: f64,
    y: f64,
) -> Result<f64, MajorizationError> {
    if x == y {
        return f.derivative(x);
    }
    Ok((f.eval(y)? - f.eval(x)?) / (y - x))
}

type CustomEval = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// A permutation-symmetric function of n real variables with a box domain.
#[derive(Clone)]
pub enum SymmetricFunction {
    /// Σ xᵢᵖ. Defined on all of ℝⁿ for nonnegative integer p, on the positive
    /// orthant otherwise.
    PowerSum { p: f64 },
    /// Complete elementary symmetric function c_r on the positive orthant.
    CompleteSymmetric { r: usize },
    /// c_r / c_{r−1} on the positive orthant.
    CompleteSymmetricRatio { r: usize },
    /// Two-variable divided difference F(x₁, x₂) of a one-variable function.
    MerkleDividedDifference(MerkleFunction),
    /// Π xᵢ on the positive orthant; Schur-concave, kept as the designed
    /// negative control for criterion campaigns.
    Product,
    /// Caller-supplied symmetric evaluation (not constructible from the CLI).
    Custom { name: String, domain: Domain, eval: CustomEval },
}

impl fmt::Debug for SymmetricFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymmetricFunction({})", self.name())
    }
}

impl SymmetricFunction {
    pub fn name(&self) -> String {
        match self {
            SymmetricFunction::PowerSum { p } => format!("powsum:{p}"),
            SymmetricFunction::CompleteSymmetric { r } => format!("csym:{r}"),
            SymmetricFunction::CompleteSymmetricRatio { r } => format!("csym-ratio:{r}"),
            SymmetricFunction::MerkleDividedDifference(m) => format!("merkle:{}", m.name()),
            SymmetricFunction::Product => "product".into(),
            SymmetricFunction::Custom { name, .. } => name.clone(),
        }
    }

    pub fn domain(&self) -> Domain {
        match self {
            SymmetricFunction::PowerSum { p } => {
                if p.fract() == 0.0 && *p >= 0.0 {
                    Domain::all()
                } else {
                    Domain::positive()
                }
            }
            SymmetricFunction::CompleteSymmetric { .. }
            | SymmetricFunction::CompleteSymmetricRatio { .. }
            | SymmetricFunction::Product => Domain::positive(),
            SymmetricFunction::MerkleDividedDifference(m) => {
                let (lo, hi) = m.interval();
                Domain::open(lo, hi)
            }
            SymmetricFunction::Custom { domain, .. } => *domain,
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64, MajorizationError> {
        if x.is_empty() {
            return Err(MajorizationError::InvalidArgument("empty vector".into()));
        }
        if !self.domain().contains(x) {
            return Err(MajorizationError::Domain(format!(
                "{:?} outside the domain of {}",
                x,
                self.name()
            )));
        }
        let value = match self {
            SymmetricFunction::PowerSum { p } => {
                if p.fract() == 0.0 && p.abs() < i32::MAX as f64 {
                    let pi = *p as i32;
                    x.iter().map(|v| v.powi(pi)).sum()
                } else {
                    x.iter().map(|v| v.powf(*p)).sum()
                }
            }
            SymmetricFunction::CompleteSymmetric { r } => complete_symmetric(x, *r)?,
            SymmetricFunction::CompleteSymmetricRatio { r } => {
                if *r == 0 {
                    return Err(MajorizationError::InvalidArgument("ratio needs r >= 1".into()));
                }
                complete_symmetric(x, *r)? / complete_symmetric(x, *r - 1)?
            }
            SymmetricFunction::MerkleDividedDifference(m) => {
                if x.len() != 2 {
                    return Err(MajorizationError::InvalidArgument(format!(
                        "divided difference takes 2 variables, got {}",
                        x.len()
                    )));
                }
                merkle_divided_difference(m, x[0], x[1])?
            }
            SymmetricFunction::Product => x.iter().product(),
            SymmetricFunction::Custom { eval, .. } => eval(x),
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(MajorizationError::Overflow)
        }
    }
}

/// Checks f(x) ≤ f(y) + tol·(1 + |f(y)|) for a pair with x, y descending and
/// y − x in the dual cone (within tol). Pairs that miss the preconditions are
/// reported inapplicable.
pub fn isotone_pair_check(
    f: &SymmetricFunction,
    x: &[f64],
    y: &[f64],
    tol: f64,
) -> Result<CheckOutcome, MajorizationError> {
    if x.len() != y.len() {
        return Err(MajorizationError::InvalidArgument("length mismatch".into()));
    }
    if !in_descending_cone(x) || !in_descending_cone(y) {
        return Ok(CheckOutcome::Inapplicable {
            reason: "x or y not in the descending cone".into(),
        });
    }
    let diff: Vec<f64> = y.iter().zip(x).map(|(a, b)| a - b).collect();
    if !in_dual_cone(&diff, tol) {
        return Ok(CheckOutcome::Inapplicable {
            reason: "y - x not in the dual cone".into(),
        });
    }
    let fx = f.evaluate(x)?;
    let fy = f.evaluate(y)?;
    let slack = tol * (1.0 + fy.abs());
    if fx <= fy + slack {
        Ok(CheckOutcome::Holds { margin: fy - fx })
    } else {
        Ok(CheckOutcome::Violated {
            gap: fx - fy,
            detail: format!("f{x:?}={fx} > f{y:?}={fy}"),
        })
    }
}

/// Evaluates the derivative criterion (xᵢ − xⱼ)(∂f/∂xᵢ − ∂f/∂xⱼ) ≥ 0 at an
/// interior point, with central-difference gradients of step h·(1 + |xᵢ|).
pub fn schur_criterion_check(
    f: &SymmetricFunction,
    x: &[f64],
    h: f64,
    tol: f64,
) -> Result<CheckOutcome, MajorizationError> {
    if !(h > 0.0) {
        return Err(MajorizationError::InvalidArgument("step must be positive".into()));
    }
    let n = x.len();
    let domain = f.domain();
    let mut grad = vec![0.0; n];
    let mut probe = x.to_vec();
    for i in 0..n {
        let step = h * (1.0 + x[i].abs());
        probe[i] = x[i] + step;
        if !domain.contains(&probe) {
            return Err(MajorizationError::Domain(format!(
                "x + h e_{i} leaves the domain of {}",
                f.name()
            )));
        }
        let up = f.evaluate(&probe)?;
        probe[i] = x[i] - step;
        if !domain.contains(&probe) {
            return Err(MajorizationError::Domain(format!(
                "x - h e_{i} leaves the domain of {}",
                f.name()
            )));
        }
        let down = f.evaluate(&probe)?;
        probe[i] = x[i];
        grad[i] = (up - down) / (2.0 * step);
    }
    let mut worst_margin = f64::INFINITY;
    for i in 0..n {
        for j in (i + 1)..n {
            let product = (x[i] - x[j]) * (grad[i] - grad[j]);
            let scale = 1.0 + (x[i] - x[j]).abs() * (grad[i].abs() + grad[j].abs());
            if product < -tol * scale {
                return Ok(CheckOutcome::Violated {
                    gap: -product,
                    detail: format!("pair ({i}, {j}) at {x:?}: (x_i-x_j)(g_i-g_j) = {product}"),
                });
            }
            worst_margin = worst_margin.min(product);
        }
    }
    Ok(CheckOutcome::Holds { margin: worst_margin })
}

fn sample_descending(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(lo..hi)).collect();
    x.sort_by(|a, b| b.partial_cmp(a).unwrap());
    x
}

/// Random dual-cone generator: nonnegative prefix sums, zero total.
fn sample_dual_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut prefix: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(0.0..1.0)).collect();
    prefix.push(0.0);
    let mut d = Vec::with_capacity(n);
    let mut prev = 0.0;
    for p in prefix {
        d.push(p - prev);
        prev = p;
    }
    d
}

/// x descending in (lo, hi)ⁿ and y = x + t·d with d a dual-cone generator and
/// t > 0 capped so that y stays descending and inside the box. The
/// construction guarantees the isotone preconditions.
pub fn sample_majorization_pair(
    rng: &mut ChaCha8Rng,
    n: usize,
    lo: f64,
    hi: f64,
) -> (Vec<f64>, Vec<f64>) {
    let x = sample_descending(rng, n, lo, hi);
    if n == 1 {
        return (x.clone(), x);
    }
    let d = sample_dual_direction(rng, n);
    let mut t_max = 0.25 * (hi - lo);
    for i in 0..n - 1 {
        let shrink = d[i + 1] - d[i];
        if shrink > 0.0 {
            t_max = t_max.min(0.9 * (x[i] - x[i + 1]) / shrink);
        }
    }
    for i in 0..n {
        if d[i] > 0.0 {
            t_max = t_max.min(0.9 * (hi - x[i]) / d[i]);
        } else if d[i] < 0.0 {
            t_max = t_max.min(0.9 * (x[i] - lo) / -d[i]);
        }
    }
    let t = rng.gen_range(0.0..1.0) * t_max.max(0.0);
    let y: Vec<f64> = x.iter().zip(&d).map(|(xi, di)| xi + t * di).collect();
    (x, y)
}

/// Campaign over seeded majorization pairs: zero violations expected exactly
/// when f is Schur-convex on the box.
#[allow(clippy::too_many_arguments)]
pub fn isotone_campaign(
    f: &SymmetricFunction,
    n: usize,
    lo: f64,
    hi: f64,
    trials: u64,
    seed: u64,
    tol: f64,
    jobs: usize,
) -> Result<VerificationReport, MajorizationError> {
    validate_box(f, n, lo, hi)?;
    let name = format!("isotone[{}]", f.name());
    Ok(run_trials(&name, trials, tol, seed, jobs, |trial| {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, trial));
        let (x, y) = sample_majorization_pair(&mut rng, n, lo, hi);
        match isotone_pair_check(f, &x, &y, tol) {
            Ok(CheckOutcome::Violated { gap, detail }) => {
                Some(Witness { trial, violation: gap, inputs: detail })
            }
            Ok(_) => None,
            Err(e) => Some(Witness {
                trial,
                violation: f64::INFINITY,
                inputs: format!("evaluation error: {e}"),
            }),
        }
    }))
}

/// Campaign evaluating the derivative criterion at seeded interior points.
#[allow(clippy::too_many_arguments)]
pub fn criterion_campaign(
    f: &SymmetricFunction,
    n: usize,
    lo: f64,
    hi: f64,
    trials: u64,
    seed: u64,
    h: f64,
    tol: f64,
    jobs: usize,
) -> Result<VerificationReport, MajorizationError> {
    validate_box(f, n, lo, hi)?;
    let name = format!("schur-criterion[{}]", f.name());
    Ok(run_trials(&name, trials, tol, seed, jobs, |trial| {
        let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, trial));
        // Keep probes interior: shrink the sampling box by the step size.
        let margin = h * (1.0 + hi.abs()) * 2.0;
        let x = sample_descending(&mut rng, n, lo + margin, hi - margin);
        match schur_criterion_check(f, &x, h, tol) {
            Ok(CheckOutcome::Violated { gap, detail }) => {
                Some(Witness { trial, violation: gap, inputs: detail })
            }
            Ok(_) => None,
            Err(e) => Some(Witness {
                trial,
                violation: f64::INFINITY,
                inputs: format!("evaluation error: {e}"),
            }),
        }
    }))
}

fn validate_box(
    f: &SymmetricFunction,
    n: usize,
    lo: f64,
    hi: f64,
) -> Result<(), MajorizationError> {
    if n == 0 {
        return Err(MajorizationError::InvalidArgument("n must be >= 1".into()));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(MajorizationError::InvalidArgument(format!(
            "invalid sampling box ({lo}, {hi})"
        )));
    }
    let d = f.domain();
    if lo < d.lower || hi > d.upper {
        return Err(MajorizationError::Domain(format!(
            "sampling box ({lo}, {hi}) not inside the domain of {}",
            f.name()
        )));
    }
    Ok(())
}

/// Default central-difference step for criterion campaigns; balances
/// truncation against rounding at double precision.
pub const DEFAULT_CRITERION_STEP: f64 = 1e-5;

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct enumeration of exponent tuples i₁+…+iₙ = r.
    fn complete_symmetric_bruteforce(x: &[f64], r: usize) -> f64 {
        fn rec(x: &[f64], idx: usize, remaining: usize, acc: f64) -> f64 {
            if idx == x.len() - 1 {
                return acc * x[idx].powi(remaining as i32);
            }
            (0..=remaining)
                .map(|k| rec(x, idx + 1, remaining - k, acc * x[idx].powi(k as i32)))
                .sum()
        }
        rec(x, 0, r, 1.0)
    }

    #[test]
    fn descending_cone_membership() {
        assert!(in_descending_cone(&[3.0, 2.0, 2.0, 1.0]));
        assert!(!in_descending_cone(&[1.0, 2.0]));
        assert!(in_descending_cone(&[5.0]));
    }

    #[test]
    fn dual_cone_membership() {
        assert!(in_dual_cone(&[1.0, 0.0, -1.0], 0.0));
        assert!(!in_dual_cone(&[-1.0, 1.0, 0.0], 0.0));
        assert!(in_dual_cone(&[2.0, -1.0, -1.0], 0.0));
    }

    #[test]
    fn dual_cone_pairs_nonnegatively_with_descending_vectors() {
        let mut rng = ChaCha8Rng::seed_from_u64(404);
        for _ in 0..500 {
            let n = rng.gen_range(2..6);
            let y = sample_dual_direction(&mut rng, n);
            assert!(in_dual_cone(&y, 1e-12));
            let x = sample_descending(&mut rng, n, -5.0, 5.0);
            let inner: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
            assert!(inner >= -1e-10, "inner product {inner} for x={x:?}, y={y:?}");
        }
    }

    #[test]
    fn complete_symmetric_examples() {
        // x = (1,1), r = 2: terms x₁², x₁x₂, x₂².
        assert_eq!(complete_symmetric(&[1.0, 1.0], 2).unwrap(), 3.0);
        assert_eq!(complete_symmetric(&[2.0, 3.0], 1).unwrap(), 5.0);
        let t: f64 = 1.7;
        for r in 1..6 {
            let got = complete_symmetric(&[t], r).unwrap();
            assert!((got - t.powi(r as i32)).abs() < 1e-12);
        }
    }

    #[test]
    fn complete_symmetric_matches_bruteforce() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4usize {
            for r in 1..=6usize {
                let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..3.0)).collect();
                let fast = complete_symmetric(&x, r).unwrap();
                let slow = complete_symmetric_bruteforce(&x, r);
                assert!(
                    (fast - slow).abs() <= 1e-12 * (1.0 + slow.abs()),
                    "n={n} r={r}: {fast} vs {slow}"
                );
            }
        }
    }

    #[test]
    fn complete_symmetric_overflow() {
        assert_eq!(complete_symmetric(&[1e300, 1e300], 2), Err(MajorizationError::Overflow));
    }

    #[test]
    fn merkle_divided_difference_examples() {
        let cube = MerkleFunction::cube();
        // (2³ − 1³)/(2 − 1) = 7
        assert_eq!(merkle_divided_difference(&cube, 1.0, 2.0).unwrap(), 7.0);
        for a in [-1.5, 0.0, 2.0] {
            let got = merkle_divided_difference(&cube, a, a).unwrap();
            assert!((got - 3.0 * a * a).abs() < 1e-12);
        }
    }

    #[test]
    fn merkle_tabulated_interpolates() {
        let f = MerkleFunction::tabulated(vec![(0.0, 0.0), (1.0, 2.0), (3.0, 2.0)]).unwrap();
        assert!((f.eval(0.5).unwrap() - 1.0).abs() < 1e-12);
        assert!((f.derivative(0.5).unwrap() - 2.0).abs() < 1e-12);
        assert!((f.derivative(2.0).unwrap() - 0.0).abs() < 1e-12);
        assert!(f.eval(4.0).is_err());
    }

    #[test]
    fn isotone_basic_examples() {
        let f = SymmetricFunction::PowerSum { p: 2.0 };
        // y − x = (1, −1) is a dual-cone direction; 2 ≤ 4.
        let out = isotone_pair_check(&f, &[1.0, 1.0], &[2.0, 0.0], 1e-9).unwrap();
        assert!(out.holds());
        let out = isotone_pair_check(&f, &[1.5, 0.5], &[1.5, 0.5], 1e-9).unwrap();
        match out {
            CheckOutcome::Holds { margin } => assert_eq!(margin, 0.0),
            other => panic!("{other:?}"),
        }
        // Ascending input is inapplicable, not failed.
        let out = isotone_pair_check(&f, &[0.0, 1.0], &[2.0, 0.0], 1e-9).unwrap();
        assert!(matches!(out, CheckOutcome::Inapplicable { .. }));
    }

    #[test]
    fn isotone_campaign_csym2_is_clean() {
        let f = SymmetricFunction::CompleteSymmetric { r: 2 };
        let report = isotone_campaign(&f, 3, 1e-6, 10.0, 1000, 11, 1e-9, 1).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.trials, 1000);
    }

    #[test]
    fn criterion_analytic_examples() {
        let f = SymmetricFunction::PowerSum { p: 2.0 };
        // (3 − 1)(6 − 2) = 8 ≥ 0.
        let out = schur_criterion_check(&f, &[3.0, 1.0], DEFAULT_CRITERION_STEP, 1e-9).unwrap();
        match out {
            CheckOutcome::Holds { margin } => assert!((margin - 8.0).abs() < 1e-5),
            other => panic!("{other:?}"),
        }
        // x₁·x₂ is Schur-concave: (2 − 1)(1 − 2) = −1 < 0.
        let f = SymmetricFunction::Product;
        let out = schur_criterion_check(&f, &[2.0, 1.0], DEFAULT_CRITERION_STEP, 1e-9).unwrap();
        match out {
            CheckOutcome::Violated { gap, .. } => assert!((gap - 1.0).abs() < 1e-5),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn criterion_campaign_csym_ratio_is_clean() {
        let f = SymmetricFunction::CompleteSymmetricRatio { r: 3 };
        let report =
            criterion_campaign(&f, 4, 0.5, 5.0, 500, 3, DEFAULT_CRITERION_STEP, 1e-9, 1).unwrap();
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn merkle_divided_differences_are_schur_convex_where_f_prime_is_convex() {
        // f′ convex on I makes F Schur convex on I²: 3t² is convex on all of
        // ℝ, 4t³ only on t ≥ 0.
        let cube = SymmetricFunction::MerkleDividedDifference(MerkleFunction::cube());
        let report = isotone_campaign(&cube, 2, -10.0, 10.0, 1000, 17, 1e-9, 1).unwrap();
        assert!(report.pass, "{report:?}");

        let quartic = SymmetricFunction::MerkleDividedDifference(MerkleFunction::quartic());
        let report = isotone_campaign(&quartic, 2, 0.0, 10.0, 1000, 17, 1e-9, 1).unwrap();
        assert!(report.pass, "{report:?}");

        // Where 4t³ is concave the monotonicity flips and the check reports
        // it: F(0, −2) = −8 < F(−1, −1) = f′(−1) = −4.
        let out = isotone_pair_check(&quartic, &[-1.0, -1.0], &[0.0, -2.0], 1e-9).unwrap();
        match out {
            CheckOutcome::Violated { gap, .. } => assert!((gap - 4.0).abs() < 1e-12),
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn builtins_are_permutation_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let funcs: Vec<SymmetricFunction> = vec![
            SymmetricFunction::PowerSum { p: 2.0 },
            SymmetricFunction::PowerSum { p: 3.0 },
            SymmetricFunction::CompleteSymmetric { r: 3 },
            SymmetricFunction::CompleteSymmetricRatio { r: 2 },
            SymmetricFunction::Product,
        ];
        for f in &funcs {
            for _ in 0..200 {
                let n = rng.gen_range(2..5);
                let x: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..4.0)).collect();
                let mut perm = x.clone();
                // Fisher-Yates with the campaign RNG.
                for i in (1..n).rev() {
                    let j = rng.gen_range(0..=i);
                    perm.swap(i, j);
                }
                let a = f.evaluate(&x).unwrap();
                let b = f.evaluate(&perm).unwrap();
                assert!(
                    (a - b).abs() <= 1e-12 * (1.0 + a.abs()),
                    "{} at {x:?} vs {perm:?}",
                    f.name()
                );
            }
        }
    }

    #[test]
    fn criterion_and_definition_agree_on_a_box() {
        // Both routes certify Schur convexity of c_2 on (0.5, 5)³; a
        // discrepancy between them indicates an implementation bug.
        let f = SymmetricFunction::CompleteSymmetric { r: 2 };
        let crit =
            criterion_campaign(&f, 3, 0.5, 5.0, 400, 23, DEFAULT_CRITERION_STEP, 1e-9, 1).unwrap();
        let iso = isotone_campaign(&f, 3, 0.5, 5.0, 400, 23, 1e-9, 1).unwrap();
        assert_eq!(crit.violations, 0);
        assert_eq!(iso.violations, 0);
    }

    #[test]
    fn domain_errors_surface() {
        let f = SymmetricFunction::CompleteSymmetric { r: 2 };
        assert!(matches!(f.evaluate(&[1.0, -1.0]), Err(MajorizationError::Domain(_))));
        let err = schur_criterion_check(&f, &[1e-9, 1e-9], 1e-5, 1e-9).unwrap_err();
        assert!(matches!(err, MajorizationError::Domain(_)));
    }

    #[test]
    fn sampled_pairs_satisfy_preconditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        for _ in 0..2000 {
            let (x, y) = sample_majorization_pair(&mut rng, 4, 0.5, 9.5);
            assert!(in_descending_cone(&x));
            assert!(in_descending_cone(&y), "y = {y:?}");
            let diff: Vec<f64> = y.iter().zip(&x).map(|(a, b)| a - b).collect();
            assert!(in_dual_cone(&diff, 1e-10));
            assert!(y.iter().all(|&v| v > 0.5 - 1e-12 && v < 9.5 + 1e-12));
        }
    }
}
