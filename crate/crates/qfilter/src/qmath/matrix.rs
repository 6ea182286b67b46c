//! Dense complex matrices for dimensions 1, 2, 4, and 8.
//!
//! Everything in this crate lives in Hilbert spaces of at most three qubits,
//! so matrices are stored as plain row-major `Vec<Complex64>` and all
//! eigenwork is done in closed form (2×2) or by cyclic Jacobi sweeps (larger
//! Hermitian spectra, used by checks only).

use std::f64::consts::FRAC_1_SQRT_2;
use std::ops::Mul;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Shorthand complex constructor.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const ALLOWED_DIMS: [usize; 4] = [1, 2, 4, 8];

/// A dense complex matrix with rows and columns restricted to {1, 2, 4, 8}.
///
/// Entries are stored row-major. Construction rejects non-finite entries, so
/// a `ComplexMatrix` always holds finite data.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if !ALLOWED_DIMS.contains(&rows) || !ALLOWED_DIMS.contains(&cols) {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} outside supported sizes {{1,2,4,8}}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "entry count {} does not match {rows}x{cols}",
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix entry"));
        }
        Ok(Self { rows, cols, entries })
    }

    /// Builds a matrix from nested rows.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.iter().flatten().copied().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![Complex64::ZERO; rows * cols])
            .expect("zeros called with supported dimensions")
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(c64(-1.0, 0.0)))
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matvec");
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c) * v[c]).sum())
            .collect()
    }

    /// Largest entry magnitude, the max-norm used by tolerance checks.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ‖U†U − I‖_max; zero exactly for unitary `U`.
    pub fn unitarity_residual(&self) -> f64 {
        assert_eq!(self.rows, self.cols, "unitarity of a non-square matrix");
        let gram = &self.dagger() * self;
        gram.sub(&Self::identity(self.rows)).max_norm()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.rows == self.cols && self.unitarity_residual() < tol
    }

    pub fn trace(&self) -> Complex64 {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// Frobenius inner product ⟨self, other⟩ = tr(self† · other).
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in inner");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = Complex64::ZERO;
                for k in 0..self.cols {
                    acc += self.get(r, k) * rhs.get(k, c);
                }
                out.set(r, c, acc);
            }
        }
        out
    }
}

/// Kronecker product. Fails if the result would exceed 8×8.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let rows = a.rows() * b.rows();
    let cols = a.cols() * b.cols();
    if rows > 8 || cols > 8 {
        return Err(Error::Dimension(format!(
            "kron result {rows}x{cols} exceeds 8x8"
        )));
    }
    let mut out = ComplexMatrix::zeros(rows, cols);
    for ar in 0..a.rows() {
        for ac in 0..a.cols() {
            let av = a.get(ar, ac);
            for br in 0..b.rows() {
                for bc in 0..b.cols() {
                    out.set(ar * b.rows() + br, ac * b.cols() + bc, av * b.get(br, bc));
                }
            }
        }
    }
    Ok(out)
}

/// Pauli matrix σ_k for k in {1, 2, 3}.
pub fn pauli(k: usize) -> ComplexMatrix {
    let entries = match k {
        1 => vec![c64(0.0, 0.0), c64(1.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0)],
        2 => vec![c64(0.0, 0.0), c64(0.0, -1.0), c64(0.0, 1.0), c64(0.0, 0.0)],
        3 => vec![c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(-1.0, 0.0)],
        _ => panic!("pauli index must be 1, 2, or 3"),
    };
    ComplexMatrix::new(2, 2, entries).expect("pauli is 2x2 and finite")
}

/// Hadamard gate; maps |0⟩ → |+⟩ and |1⟩ → |−⟩.
pub fn hadamard() -> ComplexMatrix {
    let s = FRAC_1_SQRT_2;
    ComplexMatrix::new(
        2,
        2,
        vec![c64(s, 0.0), c64(s, 0.0), c64(s, 0.0), c64(-s, 0.0)],
    )
    .expect("hadamard is 2x2 and finite")
}

/// CNOT with the first tensor factor as control and the second as target.
pub fn cnot() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    m.set(0, 0, Complex64::ONE);
    m.set(1, 1, Complex64::ONE);
    m.set(2, 3, Complex64::ONE);
    m.set(3, 2, Complex64::ONE);
    m
}

/// Diagonal 2×2 matrix.
pub fn diag2(d0: Complex64, d1: Complex64) -> ComplexMatrix {
    ComplexMatrix::new(2, 2, vec![d0, Complex64::ZERO, Complex64::ZERO, d1])
        .expect("diag2 is 2x2")
}

/// Closed-form eigendecomposition of a 2×2 Hermitian matrix.
///
/// Returns eigenvalues sorted descending and matching orthonormal
/// eigenvectors, each phase-fixed so its largest-magnitude entry is real
/// and nonnegative. Ties (within 1e-14 relative) keep the computational
/// basis, the rotation closest to identity.
pub fn hermitian_eigen2(m: &ComplexMatrix) -> ([f64; 2], [[Complex64; 2]; 2]) {
    assert_eq!((m.rows(), m.cols()), (2, 2), "hermitian_eigen2 needs 2x2");
    let a = m.get(0, 0).re;
    let d = m.get(1, 1).re;
    let b = m.get(0, 1);
    let scale = a.abs().max(d.abs()).max(b.norm()).max(1e-300);

    if b.norm() <= 1e-15 * scale {
        // Already diagonal; order by eigenvalue.
        return if a >= d {
            ([a, d], [[Complex64::ONE, Complex64::ZERO], [Complex64::ZERO, Complex64::ONE]])
        } else {
            ([d, a], [[Complex64::ZERO, Complex64::ONE], [Complex64::ONE, Complex64::ZERO]])
        };
    }

    let half_tr = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    let l0 = half_tr + disc;
    let l1 = half_tr - disc;

    // Eigenvector for l0: (b, l0 - a) and (l0 - d, conj(b)) are both valid;
    // take the one with the larger norm for stability.
    let v_a = [b, c64(l0 - a, 0.0)];
    let v_b = [c64(l0 - d, 0.0), b.conj()];
    let na = v_a[0].norm_sqr() + v_a[1].norm_sqr();
    let nb = v_b[0].norm_sqr() + v_b[1].norm_sqr();
    let v = if na >= nb { v_a } else { v_b };
    let v0 = phase_fix_2(normalize_2(v));
    // Orthogonal complement.
    let v1 = phase_fix_2([-v0[1].conj(), v0[0].conj()]);
    ([l0, l1], [v0, v1])
}

fn normalize_2(v: [Complex64; 2]) -> [Complex64; 2] {
    let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    [v[0] / n, v[1] / n]
}

/// Rotates a global phase so the largest-magnitude entry is real positive.
pub fn phase_fix_2(v: [Complex64; 2]) -> [Complex64; 2] {
    let lead = if v[0].norm() >= v[1].norm() { v[0] } else { v[1] };
    if lead.norm() < 1e-300 {
        return v;
    }
    let ph = lead.conj() / lead.norm();
    [v[0] * ph, v[1] * ph]
}

/// Eigenvalues (descending) of a Hermitian matrix, by cyclic Jacobi sweeps.
///
/// Only used for spectra of reduced density operators and positivity
/// checks; eigenvectors are never needed beyond 2×2.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    assert_eq!(m.rows(), m.cols(), "hermitian_eigenvalues needs a square matrix");
    let n = m.rows();
    let mut h = m.clone();
    let scale = h.max_norm().max(1e-300);

    for _sweep in 0..50 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += h.get(p, q).norm_sqr();
            }
        }
        if off.sqrt() < 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let hpq = h.get(p, q);
                let r = hpq.norm();
                if r < 1e-300 {
                    continue;
                }
                let alpha = hpq / r;
                let theta = 0.5 * (2.0 * r).atan2(h.get(p, p).re - h.get(q, q).re);
                let (s, c) = theta.sin_cos();
                // Apply R on the right (columns) and R† on the left (rows),
                // with R[pp]=c, R[pq]=-s·alpha, R[qp]=s·conj(alpha), R[qq]=c.
                for i in 0..n {
                    let hip = h.get(i, p);
                    let hiq = h.get(i, q);
                    h.set(i, p, hip * c + hiq * s * alpha.conj());
                    h.set(i, q, -hip * s * alpha + hiq * c);
                }
                for j in 0..n {
                    let hpj = h.get(p, j);
                    let hqj = h.get(q, j);
                    h.set(p, j, hpj * c + hqj * s * alpha);
                    h.set(q, j, -hpj * s * alpha.conj() + hqj * c);
                }
            }
        }
    }

    let mut evals: Vec<f64> = (0..n).map(|i| h.get(i, i).re).collect();
    evals.sort_by(|x, y| y.partial_cmp(x).expect("finite eigenvalues"));
    evals
}

/// Phase-maximized fidelity |tr(A†B)| / (‖A‖_F ‖B‖_F).
///
/// Equals 1 exactly when A and B agree up to a global phase and scale; two
/// (near-)zero operators compare as 1, one zero against one nonzero as 0.
pub fn phase_max_fidelity(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let na = a.frobenius_norm();
    let nb = b.frobenius_norm();
    if na < 1e-14 && nb < 1e-14 {
        return 1.0;
    }
    if na < 1e-14 || nb < 1e-14 {
        return 0.0;
    }
    a.inner(b).norm() / (na * nb)
}

/// Max-norm distance min over global phase φ of ‖e^{iφ}A − B‖_max.
pub fn phase_aligned_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let overlap = a.inner(b);
    let phase = if overlap.norm() < 1e-14 {
        Complex64::ONE
    } else {
        overlap / overlap.norm()
    };
    a.scale(phase).sub(b).max_norm()
}

impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<(f64, f64)>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| (self.get(r, c).re, self.get(r, c).im)).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<(f64, f64)>> = Vec::deserialize(deserializer)?;
        let built: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|row| row.iter().map(|&(re, im)| c64(re, im)).collect())
            .collect();
        ComplexMatrix::from_rows(&built).map_err(D::Error::custom)
    }
}
