//! Dense symmetric and tridiagonal matrix types, seeded random generators,
//! and the on-disk matrix text format.
//!
//! `SymmetricMatrix` stores the full n×n array row-major and enforces exact
//! symmetry and finiteness at construction, so every downstream consumer can
//! rely on `a[i][j] == a[j][i]` bit for bit.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixError {
    /// Construction rejected the input (non-finite entry, asymmetry, bad shape).
    InvalidMatrix(String),
    /// An argument was outside its documented range.
    InvalidArgument(String),
    /// The iterative eigensolver hit its sweep cap. Must not happen for valid
    /// symmetric input; treated as a bug signal, never silently ignored.
    SolverDivergence { sweeps: usize, off_diagonal: f64 },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::InvalidMatrix(msg) => write!(f, "invalid matrix: {msg}"),
            MatrixError::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            MatrixError::SolverDivergence { sweeps, off_diagonal } => write!(
                f,
                "eigensolver failed to converge after {sweeps} sweeps (off-diagonal {off_diagonal:e})"
            ),
        }
    }
}

impl std::error::Error for MatrixError {}

/// Dense real symmetric n×n matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Builds from a row-major slice of length n². Rejects non-finite entries
    /// and any exact asymmetry, naming the first offending pair.
    pub fn from_flat(n: usize, data: &[f64]) -> Result<Self, MatrixError> {
        if n == 0 {
            return Err(MatrixError::InvalidMatrix("dimension must be positive".into()));
        }
        if data.len() != n * n {
            return Err(MatrixError::InvalidMatrix(format!(
                "expected {} entries for n={n}, got {}",
                n * n,
                data.len()
            )));
        }
        for (idx, &v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(MatrixError::InvalidMatrix(format!(
                    "non-finite entry {v} at ({}, {})",
                    idx / n,
                    idx % n
                )));
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if data[i * n + j] != data[j * n + i] {
                    return Err(MatrixError::InvalidMatrix(format!(
                        "asymmetric at ({i}, {j}): {} != {}",
                        data[i * n + j],
                        data[j * n + i]
                    )));
                }
            }
        }
        Ok(Self { n, data: data.to_vec() })
    }

    /// Symmetrizes an arbitrary square array via (M + Mᵀ)/2.
    pub fn symmetrize(n: usize, data: &[f64]) -> Result<Self, MatrixError> {
        if n == 0 || data.len() != n * n {
            return Err(MatrixError::InvalidMatrix(format!(
                "expected {} entries for n={n}, got {}",
                n * n,
                data.len()
            )));
        }
        let mut sym = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                sym[i * n + j] = 0.5 * (data[i * n + j] + data[j * n + i]);
            }
        }
        Self::from_flat(n, &sym)
    }

    pub fn diagonal(diag: &[f64]) -> Result<Self, MatrixError> {
        let n = diag.len();
        let mut data = vec![0.0; n * n];
        for (i, &d) in diag.iter().enumerate() {
            data[i * n + i] = d;
        }
        Self::from_flat(n, &data)
    }

    pub fn zero(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// y = A·x
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let n = self.n;
        let mut y = vec![0.0; n];
        for i in 0..n {
            let row = &self.data[i * n..(i + 1) * n];
            y[i] = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
        y
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.n != other.n {
            return Err(MatrixError::InvalidArgument(format!(
                "dimension mismatch: {} vs {}",
                self.n, other.n
            )));
        }
        let data: Vec<f64> = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Self::from_flat(self.n, &data)
    }

    pub fn scale(&self, alpha: f64) -> Result<Self, MatrixError> {
        if !alpha.is_finite() {
            return Err(MatrixError::InvalidArgument(format!("non-finite scale {alpha}")));
        }
        let data: Vec<f64> = self.data.iter().map(|a| a * alpha).collect();
        Self::from_flat(self.n, &data)
    }

    /// a·X + b·Y, the convex-combination workhorse.
    pub fn linear_combination(a: f64, x: &Self, b: f64, y: &Self) -> Result<Self, MatrixError> {
        if x.n != y.n {
            return Err(MatrixError::InvalidArgument(format!(
                "dimension mismatch: {} vs {}",
                x.n, y.n
            )));
        }
        let data: Vec<f64> = x
            .data
            .iter()
            .zip(&y.data)
            .map(|(&xi, &yi)| a * xi + b * yi)
            .collect();
        Self::from_flat(x.n, &data)
    }
}

/// Symmetric tridiagonal matrix: `diagonal` of length n, `offdiagonal` of
/// length n−1.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalMatrix {
    diagonal: Vec<f64>,
    offdiagonal: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diagonal: Vec<f64>, offdiagonal: Vec<f64>) -> Result<Self, MatrixError> {
        if diagonal.is_empty() {
            return Err(MatrixError::InvalidMatrix("dimension must be positive".into()));
        }
        if offdiagonal.len() + 1 != diagonal.len() {
            return Err(MatrixError::InvalidMatrix(format!(
                "offdiagonal length {} does not match dimension {}",
                offdiagonal.len(),
                diagonal.len()
            )));
        }
        if let Some(v) = diagonal.iter().chain(offdiagonal.iter()).find(|v| !v.is_finite()) {
            return Err(MatrixError::InvalidMatrix(format!("non-finite entry {v}")));
        }
        Ok(Self { diagonal, offdiagonal })
    }

    pub fn n(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn offdiagonal(&self) -> &[f64] {
        &self.offdiagonal
    }

    /// Adds c to every diagonal entry (spectrum shifts by exactly c).
    pub fn shifted(&self, c: f64) -> Result<Self, MatrixError> {
        Self::new(
            self.diagonal.iter().map(|d| d + c).collect(),
            self.offdiagonal.clone(),
        )
    }

    pub fn to_dense(&self) -> SymmetricMatrix {
        let n = self.n();
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = self.diagonal[i];
        }
        for i in 0..n - 1 {
            data[i * n + i + 1] = self.offdiagonal[i];
            data[(i + 1) * n + i] = self.offdiagonal[i];
        }
        SymmetricMatrix { n, data }
    }
}

/// n×k matrix with orthonormal columns (AᵀA = Iₖ within 1e-10).
#[derive(Debug, Clone, PartialEq)]
pub struct StiefelFrame {
    n: usize,
    k: usize,
    /// Row-major n×k.
    columns: Vec<f64>,
}

/// Orthonormality slack accepted by `StiefelFrame::new`.
pub const ORTHONORMALITY_TOL: f64 = 1e-10;

impl StiefelFrame {
    pub fn new(n: usize, k: usize, columns: Vec<f64>) -> Result<Self, MatrixError> {
        if n == 0 || k == 0 || k > n {
            return Err(MatrixError::InvalidArgument(format!(
                "frame shape {n}x{k} is not valid"
            )));
        }
        if columns.len() != n * k {
            return Err(MatrixError::InvalidArgument(format!(
                "expected {} entries for a {n}x{k} frame, got {}",
                n * k,
                columns.len()
            )));
        }
        let frame = Self { n, k, columns };
        let dev = frame.orthonormality_defect();
        if !dev.is_finite() || dev > ORTHONORMALITY_TOL {
            return Err(MatrixError::InvalidArgument(format!(
                "columns are not orthonormal: max |AᵀA - I| = {dev:e}"
            )));
        }
        Ok(frame)
    }

    /// max |(AᵀA)ᵢⱼ − δᵢⱼ|
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..self.k {
            for b in a..self.k {
                let dot: f64 = (0..self.n)
                    .map(|r| self.columns[r * self.k + a] * self.columns[r * self.k + b])
                    .sum();
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// The first k columns of the n×n identity.
    pub fn identity_columns(n: usize, k: usize) -> Result<Self, MatrixError> {
        let mut columns = vec![0.0; n * k];
        for j in 0..k.min(n) {
            columns[j * k + j] = 1.0;
        }
        Self::new(n, k, columns)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.columns[row * self.k + col]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.n).map(|r| self.get(r, col)).collect()
    }

    /// Keeps the leading k columns.
    pub fn truncated(&self, k: usize) -> Result<Self, MatrixError> {
        if k == 0 || k > self.k {
            return Err(MatrixError::InvalidArgument(format!(
                "cannot keep {k} of {} columns",
                self.k
            )));
        }
        let mut columns = vec![0.0; self.n * k];
        for r in 0..self.n {
            columns[r * k..(r + 1) * k].copy_from_slice(&self.columns[r * self.k..r * self.k + k]);
        }
        Self::new(self.n, k, columns)
    }
}

/// Deterministic random symmetric matrix: i.i.d. uniform(−scale, scale)
/// entries, then (M + Mᵀ)/2. Identical (n, seed, scale) gives bit-identical
/// output.
pub fn random_symmetric(n: usize, seed: u64, scale: f64) -> Result<SymmetricMatrix, MatrixError> {
    if n == 0 {
        return Err(MatrixError::InvalidArgument("n must be >= 1".into()));
    }
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(MatrixError::InvalidArgument(format!("scale must be positive, got {scale}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-scale..scale)).collect();
    SymmetricMatrix::symmetrize(n, &data)
}

/// Deterministic random n×n orthogonal frame: seeded uniform entries pushed
/// through modified Gram-Schmidt with one re-orthogonalization pass.
pub fn random_orthogonal(n: usize, seed: u64) -> Result<StiefelFrame, MatrixError> {
    if n == 0 {
        return Err(MatrixError::InvalidArgument("n must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Column-major scratch: cols[j] is the j-th column being orthogonalized.
    let mut cols: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    for j in 0..n {
        for _pass in 0..2 {
            for q in 0..j {
                let proj: f64 = (0..n).map(|r| cols[j][r] * cols[q][r]).sum();
                for r in 0..n {
                    cols[j][r] -= proj * cols[q][r];
                }
            }
        }
        let mut norm: f64 = cols[j].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm < 1e-12 {
            // Degenerate draw; fall back to a unit vector and redo the sweep.
            for r in 0..n {
                cols[j][r] = if r == j { 1.0 } else { 0.0 };
            }
            for q in 0..j {
                let proj: f64 = (0..n).map(|r| cols[j][r] * cols[q][r]).sum();
                for r in 0..n {
                    cols[j][r] -= proj * cols[q][r];
                }
            }
            norm = cols[j].iter().map(|v| v * v).sum::<f64>().sqrt();
        }
        for r in 0..n {
            cols[j][r] /= norm;
        }
    }
    let mut columns = vec![0.0; n * n];
    for (j, col) in cols.iter().enumerate() {
        for r in 0..n {
            columns[r * n + j] = col[r];
        }
    }
    StiefelFrame::new(n, n, columns)
}

#[derive(Serialize, Deserialize)]
struct MatrixDocument {
    n: usize,
    data: Vec<f64>,
}

/// Writes the matrix text format: a document with fields `n` and `data`
/// (row-major array of n² reals).
pub fn matrix_to_text(m: &SymmetricMatrix) -> String {
    toml::to_string(&MatrixDocument { n: m.n, data: m.data.clone() })
        .expect("matrix serialization cannot fail")
}

/// Parses the matrix text format, validating exact symmetry; an asymmetric
/// document is rejected with a message naming the first asymmetric pair.
pub fn matrix_from_text(text: &str) -> Result<SymmetricMatrix, MatrixError> {
    let doc: MatrixDocument = toml::from_str(text)
        .map_err(|e| MatrixError::InvalidMatrix(format!("malformed matrix document: {e}")))?;
    SymmetricMatrix::from_flat(doc.n, &doc.data)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_enforces_symmetry_and_finiteness() {
        let err = SymmetricMatrix::from_flat(2, &[1.0, 2.0, 3.0, 4.0]).unwrap_err();
        match err {
            MatrixError::InvalidMatrix(msg) => assert!(msg.contains("(0, 1)"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
        assert!(SymmetricMatrix::from_flat(2, &[1.0, f64::NAN, f64::NAN, 4.0]).is_err());
        assert!(SymmetricMatrix::from_flat(2, &[1.0, 2.0, 2.0, 4.0]).is_ok());
    }

    #[test]
    fn symmetrize_averages() {
        let m = SymmetricMatrix::symmetrize(2, &[0.0, 2.0, 4.0, 1.0]).unwrap();
        assert_eq!(m.get(0, 1), 3.0);
        assert_eq!(m.get(1, 0), 3.0);
    }

    #[test]
    fn random_symmetric_is_deterministic() {
        let a = random_symmetric(3, 42, 1.0).unwrap();
        let b = random_symmetric(3, 42, 1.0).unwrap();
        assert_eq!(a.data(), b.data());
        let c = random_symmetric(3, 43, 1.0).unwrap();
        assert_ne!(a.data(), c.data());
    }

    #[test]
    fn random_symmetric_one_by_one_and_symmetric_storage() {
        let m = random_symmetric(1, 0, 1.0).unwrap();
        assert_eq!(m.n(), 1);
        let m = random_symmetric(8, 7, 2.0).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(m.get(i, j), m.get(j, i));
                assert!(m.get(i, j).abs() <= 2.0);
            }
        }
    }

    #[test]
    fn random_orthogonal_frames() {
        let q = random_orthogonal(1, 3).unwrap();
        assert!((q.get(0, 0).abs() - 1.0).abs() < 1e-12);
        let q = random_orthogonal(4, 11).unwrap();
        assert!(q.orthonormality_defect() < 1e-10);
    }

    #[test]
    fn tridiagonal_shapes() {
        assert!(TridiagonalMatrix::new(vec![1.0, 2.0], vec![0.5]).is_ok());
        assert!(TridiagonalMatrix::new(vec![1.0, 2.0], vec![0.5, 0.5]).is_err());
        assert!(TridiagonalMatrix::new(vec![5.0], vec![]).is_ok());
        let t = TridiagonalMatrix::new(vec![2.0, 2.0], vec![-1.0]).unwrap();
        let d = t.to_dense();
        assert_eq!(d.get(0, 1), -1.0);
        assert_eq!(d.get(1, 1), 2.0);
    }

    #[test]
    fn stiefel_rejects_non_orthonormal() {
        let err = StiefelFrame::new(2, 2, vec![1.0, 1.0, 0.0, 0.0]).unwrap_err();
        assert!(matches!(err, MatrixError::InvalidArgument(_)));
        let id = StiefelFrame::identity_columns(3, 2).unwrap();
        assert_eq!(id.column(0), vec![1.0, 0.0, 0.0]);
        assert_eq!(id.column(1), vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn matrix_text_roundtrip_and_asymmetry_message() {
        let m = random_symmetric(4, 9, 1.5).unwrap();
        let text = matrix_to_text(&m);
        let back = matrix_from_text(&text).unwrap();
        assert_eq!(m, back);

        let bad = "n = 2\ndata = [1.0, 2.0, 3.0, 4.0]\n";
        let err = matrix_from_text(bad).unwrap_err();
        match err {
            MatrixError::InvalidMatrix(msg) => assert!(msg.contains("(0, 1)"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
