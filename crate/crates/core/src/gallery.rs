//! Operator gallery: second-order finite-difference discretizations of 1-D
//! differential operators and closed-form spectra, producing inputs for the
//! spectral functional machinery.
//!
//! Discretized operators yield a symmetric stiffness matrix K; the compact
//! solution operator S has spectrum 1/Λ for Λ over the spectrum of K, taken
//! by reciprocals of the solved eigenvalues, never by forming K⁻¹.

use std::collections::BinaryHeap;
use std::fmt;

use crate::eigen::Spectrum;
use crate::matrix::{MatrixError, SymmetricMatrix, TridiagonalMatrix};
use crate::spectralfun::{GrowthEnvelope, SpectrumSource};

#[derive(Debug, Clone, PartialEq)]
pub enum GalleryError {
    /// The diffusion coefficient p must stay positive on the interval.
    NonPositiveCoefficient(String),
    /// The shifted stiffness matrix is not positive definite.
    SingularOperator(String),
    InvalidParameter(String),
    /// The operator has no point spectrum for these parameters.
    NoEigenvalues(String),
    Matrix(MatrixError),
}

impl fmt::Display for GalleryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GalleryError::NonPositiveCoefficient(msg) => {
                write!(f, "non-positive coefficient: {msg}")
            }
            GalleryError::SingularOperator(msg) => write!(f, "singular operator: {msg}"),
            GalleryError::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            GalleryError::NoEigenvalues(msg) => write!(f, "{msg}"),
            GalleryError::Matrix(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for GalleryError {}

impl From<MatrixError> for GalleryError {
    fn from(e: MatrixError) -> Self {
        GalleryError::Matrix(e)
    }
}

/// Coefficient function given by samples, evaluated by linear interpolation
/// and clamped outside the sampled range.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl SampledFunction {
    pub fn constant(value: f64) -> Self {
        Self { xs: vec![0.0], ys: vec![value] }
    }

    pub fn from_pairs(mut points: Vec<(f64, f64)>) -> Result<Self, GalleryError> {
        if points.is_empty() {
            return Err(GalleryError::InvalidParameter("empty sample table".into()));
        }
        if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(GalleryError::InvalidParameter("non-finite sample".into()));
        }
        points.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        if points.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(GalleryError::InvalidParameter("duplicate abscissa".into()));
        }
        let (xs, ys) = points.into_iter().unzip();
        Ok(Self { xs, ys })
    }

    pub fn from_fn(f: impl Fn(f64) -> f64, a: f64, b: f64, samples: usize) -> Self {
        let samples = samples.max(2);
        let pairs: Vec<(f64, f64)> = (0..samples)
            .map(|i| {
                let x = a + (b - a) * i as f64 / (samples - 1) as f64;
                (x, f(x))
            })
            .collect();
        Self::from_pairs(pairs).expect("generated samples are valid")
    }

    /// Parses a two-column text table: one `x value` pair per line, blank
    /// lines and `#` comment lines ignored.
    pub fn parse(text: &str) -> Result<Self, GalleryError> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split_whitespace();
            let (Some(a), Some(b)) = (cols.next(), cols.next()) else {
                return Err(GalleryError::InvalidParameter(format!(
                    "line {}: expected two columns",
                    lineno + 1
                )));
            };
            let x: f64 = a.parse().map_err(|_| {
                GalleryError::InvalidParameter(format!("line {}: bad x `{a}`", lineno + 1))
            })?;
            let y: f64 = b.parse().map_err(|_| {
                GalleryError::InvalidParameter(format!("line {}: bad value `{b}`", lineno + 1))
            })?;
            points.push((x, y));
        }
        Self::from_pairs(points)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let xs = &self.xs;
        if xs.len() == 1 || x <= xs[0] {
            return self.ys[0];
        }
        if x >= xs[xs.len() - 1] {
            return self.ys[xs.len() - 1];
        }
        let seg = match xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => return self.ys[i],
            Err(i) => i - 1,
        };
        let w = (x - xs[seg]) / (xs[seg + 1] - xs[seg]);
        self.ys[seg] + w * (self.ys[seg + 1] - self.ys[seg])
    }
}

/// What was built: operator family, parameters, and the positivity shift that
/// was applied to q or V (for reporting).
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSpec {
    pub name: String,
    pub params: Vec<(String, f64)>,
    pub shift: f64,
}

/// Stiffness matrix of −(p u′)′ + (q + C) u on (0, L) with Dirichlet ends,
/// on the uniform interior grid h = L/(N+1); (pu′)′ uses midpoint values
/// p(x ± h/2), which keeps K symmetric tridiagonal and second-order. The
/// shift C = max(0, −min q) makes the zeroth-order coefficient nonnegative
/// and is recorded in the spec.
pub fn build_sturm_liouville(
    p: &SampledFunction,
    q: &SampledFunction,
    length: f64,
    n: usize,
) -> Result<(TridiagonalMatrix, OperatorSpec), GalleryError> {
    if !(length > 0.0) || !length.is_finite() {
        return Err(GalleryError::InvalidParameter(format!("L must be positive, got {length}")));
    }
    if n < 3 {
        return Err(GalleryError::InvalidParameter(format!("N must be at least 3, got {n}")));
    }
    let h = length / (n + 1) as f64;
    let node = |i: usize| (i + 1) as f64 * h;
    // p at the N+1 midpoints x_{i+1/2} = (i + 1/2) h, i = 0..N.
    let p_mid: Vec<f64> = (0..=n).map(|i| p.eval((i as f64 + 0.5) * h)).collect();
    if let Some((i, &bad)) = p_mid.iter().enumerate().find(|(_, &v)| v <= 0.0) {
        return Err(GalleryError::NonPositiveCoefficient(format!(
            "p({}) = {bad}",
            (i as f64 + 0.5) * h
        )));
    }
    let q_grid: Vec<f64> = (0..n).map(|i| q.eval(node(i))).collect();
    let q_min = q_grid.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let shift = (-q_min).max(0.0);
    let h2 = h * h;
    let diagonal: Vec<f64> = (0..n)
        .map(|i| (p_mid[i] + p_mid[i + 1]) / h2 + q_grid[i] + shift)
        .collect();
    let offdiagonal: Vec<f64> = (1..n).map(|i| -p_mid[i] / h2).collect();
    let k = TridiagonalMatrix::new(diagonal, offdiagonal)?;
    let spec = OperatorSpec {
        name: "sl".into(),
        params: vec![("L".into(), length), ("N".into(), n as f64)],
        shift,
    };
    Ok((k, spec))
}

/// Periodic finite-difference matrix of −u″ + (V + C) u on [0, 2π) with
/// u(0) = u(2π): circulant-plus-diagonal with corner couplings. C is chosen
/// so min(V + C) > 0, which makes the discrete operator positive definite.
pub fn build_periodic_schrodinger(
    v: &SampledFunction,
    n: usize,
) -> Result<(SymmetricMatrix, OperatorSpec), GalleryError> {
    if n < 3 {
        return Err(GalleryError::InvalidParameter(format!("N must be at least 3, got {n}")));
    }
    let h = 2.0 * std::f64::consts::PI / n as f64;
    let v_grid: Vec<f64> = (0..n).map(|i| v.eval(i as f64 * h)).collect();
    let v_min = v_grid.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let shift = if v_min > 0.0 { 0.0 } else { 1.0 - v_min };
    let h2 = h * h;
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        data[i * n + i] = 2.0 / h2 + v_grid[i] + shift;
        let right = (i + 1) % n;
        data[i * n + right] += -1.0 / h2;
        data[right * n + i] = data[i * n + right];
    }
    let k = SymmetricMatrix::from_flat(n, &data)?;
    let spec = OperatorSpec {
        name: "schrod-per".into(),
        params: vec![("N".into(), n as f64)],
        shift,
    };
    Ok((k, spec))
}

/// Discretization of d²/dx² + V on (0, 1) with u(0) = u(1) = 0 (the operator
/// itself, not its inverse: eigenvalues sit near −n²π² + ∫V).
pub fn build_dirichlet_schrodinger(
    v: &SampledFunction,
    n: usize,
) -> Result<(TridiagonalMatrix, OperatorSpec), GalleryError> {
    if n < 3 {
        return Err(GalleryError::InvalidParameter(format!("N must be at least 3, got {n}")));
    }
    let h = 1.0 / (n + 1) as f64;
    let h2 = h * h;
    let diagonal: Vec<f64> = (0..n)
        .map(|i| -2.0 / h2 + v.eval((i + 1) as f64 * h))
        .collect();
    let offdiagonal = vec![1.0 / h2; n - 1];
    let k = TridiagonalMatrix::new(diagonal, offdiagonal)?;
    let spec = OperatorSpec {
        name: "schrod-dir".into(),
        params: vec![("N".into(), n as f64)],
        shift: 0.0,
    };
    Ok((k, spec))
}

/// Relative threshold below which the smallest stiffness eigenvalue counts as
/// singular.
const SINGULAR_TOL: f64 = 1e-12;

/// S-spectrum from a solved stiffness spectrum: λ = 1/Λ, sorted descending.
/// Fails when the smallest Λ is not safely positive.
pub fn reciprocal_spectrum(k_spectrum: &Spectrum) -> Result<Vec<f64>, GalleryError> {
    let values = k_spectrum.eigenvalues();
    let max_abs = values.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let smallest = *values.last().expect("non-empty spectrum");
    if smallest <= SINGULAR_TOL * max_abs {
        return Err(GalleryError::SingularOperator(format!(
            "smallest stiffness eigenvalue {smallest:e} is not safely positive"
        )));
    }
    // Λ ascending from the back gives λ = 1/Λ descending.
    Ok(values.iter().rev().map(|l| 1.0 / l).collect())
}

/// Closed-form spectra: λₙ as a pure function of n ≥ 1 plus a growth
/// envelope exponent for convergence checks.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticSpectrum {
    /// λₙ = α/(4n²), α > 0.
    Hydrogen { alpha: f64 },
    /// λₙ = −ħ²π²n²/(2m·width²).
    InfiniteWell { hbar: f64, mass: f64, width: f64 },
    /// λₙ = −ħω(n + ½), indexed from n = 1 (λ₁ = −3ħω/2).
    HarmonicOscillator { hbar_omega: f64 },
    /// λₙ = −2ħπn/L.
    StandingWaves { hbar: f64, length: f64 },
    /// λₙ = L²/(n²π²): the flat Sturm-Liouville solution operator.
    FlatSturmLiouville { length: f64 },
    /// λₙ = −c·nᵍ: synthetic stand-in for unbounded-below spectra.
    SyntheticUnbounded { c: f64, g: f64 },
}

impl AnalyticSpectrum {
    pub fn hydrogen(alpha: f64) -> Result<Self, GalleryError> {
        if alpha < 0.0 {
            return Err(GalleryError::NoEigenvalues("no eigenvalues for alpha<0".into()));
        }
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(GalleryError::InvalidParameter(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        Ok(Self::Hydrogen { alpha })
    }

    pub fn infinite_well(hbar: f64, mass: f64, width: f64) -> Result<Self, GalleryError> {
        for (name, v) in [("hbar", hbar), ("m", mass), ("width", width)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(GalleryError::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(Self::InfiniteWell { hbar, mass, width })
    }

    pub fn harmonic_oscillator(hbar_omega: f64) -> Result<Self, GalleryError> {
        if !(hbar_omega > 0.0) || !hbar_omega.is_finite() {
            return Err(GalleryError::InvalidParameter(format!(
                "hbar*omega must be positive, got {hbar_omega}"
            )));
        }
        Ok(Self::HarmonicOscillator { hbar_omega })
    }

    pub fn standing_waves(hbar: f64, length: f64) -> Result<Self, GalleryError> {
        for (name, v) in [("hbar", hbar), ("L", length)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(GalleryError::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(Self::StandingWaves { hbar, length })
    }

    pub fn flat_sturm_liouville(length: f64) -> Result<Self, GalleryError> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(GalleryError::InvalidParameter(format!(
                "L must be positive, got {length}"
            )));
        }
        Ok(Self::FlatSturmLiouville { length })
    }

    pub fn synthetic_unbounded(c: f64, g: f64) -> Result<Self, GalleryError> {
        for (name, v) in [("c", c), ("g", g)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(GalleryError::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        Ok(Self::SyntheticUnbounded { c, g })
    }

    /// λₙ for n ≥ 1.
    pub fn lambda_n(&self, n: u64) -> f64 {
        assert!(n >= 1, "analytic spectra are indexed from 1");
        let nf = n as f64;
        let pi = std::f64::consts::PI;
        match self {
            AnalyticSpectrum::Hydrogen { alpha } => alpha / (4.0 * nf * nf),
            AnalyticSpectrum::InfiniteWell { hbar, mass, width } => {
                -(hbar * hbar * pi * pi) / (2.0 * mass * width * width) * nf * nf
            }
            AnalyticSpectrum::HarmonicOscillator { hbar_omega } => -hbar_omega * (nf + 0.5),
            AnalyticSpectrum::StandingWaves { hbar, length } => -2.0 * hbar * pi * nf / length,
            AnalyticSpectrum::FlatSturmLiouville { length } => {
                length * length / (nf * nf * pi * pi)
            }
            AnalyticSpectrum::SyntheticUnbounded { c, g } => -c * nf.powf(*g),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AnalyticSpectrum::Hydrogen { .. } => "hydrogen",
            AnalyticSpectrum::InfiniteWell { .. } => "well",
            AnalyticSpectrum::HarmonicOscillator { .. } => "oscillator",
            AnalyticSpectrum::StandingWaves { .. } => "standing",
            AnalyticSpectrum::FlatSturmLiouville { .. } => "sl-flat",
            AnalyticSpectrum::SyntheticUnbounded { .. } => "synthetic",
        }
    }
}

impl SpectrumSource for AnalyticSpectrum {
    fn lambda(&self, j: i64) -> f64 {
        if j >= 1 {
            self.lambda_n(j as u64)
        } else {
            0.0
        }
    }

    fn envelope(&self) -> Option<GrowthEnvelope> {
        let pi = std::f64::consts::PI;
        let (coeff, exponent) = match self {
            AnalyticSpectrum::Hydrogen { alpha } => (alpha / 4.0, -2.0),
            AnalyticSpectrum::InfiniteWell { hbar, mass, width } => {
                ((hbar * hbar * pi * pi) / (2.0 * mass * width * width), 2.0)
            }
            // |−ħω(n + ½)| ≤ 1.5·ħω·n for n ≥ 1.
            AnalyticSpectrum::HarmonicOscillator { hbar_omega } => (1.5 * hbar_omega, 1.0),
            AnalyticSpectrum::StandingWaves { hbar, length } => (2.0 * hbar * pi / length, 1.0),
            AnalyticSpectrum::FlatSturmLiouville { length } => (length * length / (pi * pi), -2.0),
            AnalyticSpectrum::SyntheticUnbounded { c, g } => (*c, *g),
        };
        Some(GrowthEnvelope { coeff, exponent })
    }

    fn finite_rank(&self) -> Option<(usize, usize)> {
        None
    }
}

#[derive(PartialEq)]
struct FrontierEntry {
    value: f64,
    n: u64,
    m: u64,
}

impl Eq for FrontierEntry {}

impl Ord for FrontierEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Max-heap on value; ties pop in (n, m) lexicographic order.
        self.value
            .partial_cmp(&other.value)
            .unwrap()
            .then_with(|| other.n.cmp(&self.n))
            .then_with(|| other.m.cmp(&self.m))
    }
}

impl PartialOrd for FrontierEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// The `count` largest values of λ(n, m) = α/(4n²) + β/(4m²) over the
/// (n, m) ≥ (1, 1) lattice, nonincreasing, by best-first frontier expansion
/// (no truncation box). Each lattice point is enqueued exactly once: (n+1, m)
/// when (n, m) pops, plus (1, m+1) when n = 1.
pub fn merge_double_spectrum(
    alpha: f64,
    beta: f64,
    count: usize,
) -> Result<Vec<f64>, GalleryError> {
    for (name, v) in [("alpha", alpha), ("beta", beta)] {
        if !(v > 0.0) || !v.is_finite() {
            return Err(GalleryError::InvalidParameter(format!(
                "{name} must be positive, got {v}"
            )));
        }
    }
    if count == 0 {
        return Err(GalleryError::InvalidParameter("count must be at least 1".into()));
    }
    let value = |n: u64, m: u64| alpha / (4.0 * (n * n) as f64) + beta / (4.0 * (m * m) as f64);
    let mut heap = BinaryHeap::new();
    heap.push(FrontierEntry { value: value(1, 1), n: 1, m: 1 });
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let FrontierEntry { value: v, n, m } = heap.pop().expect("frontier never empties");
        out.push(v);
        heap.push(FrontierEntry { value: value(n + 1, m), n: n + 1, m });
        if n == 1 {
            heap.push(FrontierEntry { value: value(1, m + 1), n: 1, m: m + 1 });
        }
    }
    Ok(out)
}

/// Two-electron merged spectrum precomputed to a fixed capacity so it can act
/// as a spectrum source. Indexing past the capacity is a caller bug.
#[derive(Debug, Clone)]
pub struct MergedDoubleSpectrum {
    alpha: f64,
    beta: f64,
    values: Vec<f64>,
}

impl MergedDoubleSpectrum {
    pub fn new(alpha: f64, beta: f64, capacity: usize) -> Result<Self, GalleryError> {
        let values = merge_double_spectrum(alpha, beta, capacity.max(1))?;
        Ok(Self { alpha, beta, values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl SpectrumSource for MergedDoubleSpectrum {
    fn lambda(&self, j: i64) -> f64 {
        if j < 1 {
            return 0.0;
        }
        match self.values.get((j - 1) as usize) {
            Some(&v) => v,
            None => panic!(
                "merged spectrum index {j} exceeds precomputed capacity {}",
                self.values.len()
            ),
        }
    }

    fn envelope(&self) -> Option<GrowthEnvelope> {
        Some(GrowthEnvelope { coeff: (self.alpha + self.beta) / 4.0, exponent: 0.0 })
    }

    fn finite_rank(&self) -> Option<(usize, usize)> {
        None
    }
}
