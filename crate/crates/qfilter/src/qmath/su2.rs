//! SU(2) parameterization, basis-connecting unitaries, and random elements.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::qmath::matrix::{c64, ComplexMatrix};
use crate::qmath::state::{Label, StateVector};

/// Unit-determinant 2×2 unitary Rz(φ)·Ry(2θ)·Rz(λ).
///
/// The middle rotation is by 2θ so that `(θ, 0, 0)` is the plain real
/// rotation [[cosθ, −sinθ], [sinθ, cosθ]] taking |0⟩ to cosθ|0⟩ + sinθ|1⟩.
pub fn su2_from_angles(theta: f64, phi: f64, lambda: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    let half_sum = Complex64::from_polar(1.0, 0.5 * (phi + lambda));
    let half_diff = Complex64::from_polar(1.0, 0.5 * (phi - lambda));
    ComplexMatrix::new(
        2,
        2,
        vec![
            half_sum.conj() * c,
            -half_diff.conj() * s,
            half_diff * s,
            half_sum * c,
        ],
    )
    .expect("su2 is 2x2 and finite")
}

fn inner2(a: &[Complex64; 2], b: &[Complex64; 2]) -> Complex64 {
    a[0].conj() * b[0] + a[1].conj() * b[1]
}

fn norm2(a: &[Complex64; 2]) -> f64 {
    (a[0].norm_sqr() + a[1].norm_sqr()).sqrt()
}

/// Unitary V with V·sᵢ = tᵢ for two source/target qubit-state pairs.
///
/// Such a V exists exactly when |⟨s₀|s₁⟩| = |⟨t₀|t₁⟩|; the target pair's
/// relative phase is reconciled internally, then both pairs are completed to
/// orthonormal bases by Gram–Schmidt and V = T·S†.
pub fn connecting_unitary(
    sources: ([Complex64; 2], [Complex64; 2]),
    targets: ([Complex64; 2], [Complex64; 2]),
) -> Result<ComplexMatrix> {
    let normalize = |v: [Complex64; 2]| -> [Complex64; 2] {
        let n = norm2(&v);
        [v[0] / n, v[1] / n]
    };
    let s0 = normalize(sources.0);
    let s1 = normalize(sources.1);
    let t0 = normalize(targets.0);
    let mut t1 = normalize(targets.1);

    let gs = inner2(&s0, &s1);
    let gt = inner2(&t0, &t1);
    if (gs.norm() - gt.norm()).abs() > 1e-9 {
        return Err(Error::InfeasibleConnection {
            source_overlap: gs.norm(),
            target_overlap: gt.norm(),
        });
    }
    // Rotate t1's phase so ⟨t0|t1⟩ lands exactly on ⟨s0|s1⟩.
    if gt.norm() > 1e-12 {
        let ph = (gs / gs.norm()) * (gt.conj() / gt.norm());
        t1 = [t1[0] * ph, t1[1] * ph];
    }

    let complete = |u0: &[Complex64; 2], v: &[Complex64; 2]| -> [Complex64; 2] {
        let overlap = inner2(u0, v);
        let mut w = [v[0] - overlap * u0[0], v[1] - overlap * u0[1]];
        let n = norm2(&w);
        if n > 1e-7 {
            [w[0] / n, w[1] / n]
        } else {
            // Degenerate pair; fall back to the canonical complement.
            w = [-u0[1].conj(), u0[0].conj()];
            w
        }
    };
    let s_perp = complete(&s0, &s1);
    let t_perp = complete(&t0, &t1);

    // V = T·S† maps s0 → t0 and s1 → t1 exactly.
    let t = ComplexMatrix::new(2, 2, vec![t0[0], t_perp[0], t0[1], t_perp[1]])?;
    let s = ComplexMatrix::new(2, 2, vec![s0[0], s_perp[0], s0[1], s_perp[1]])?;
    Ok(&t * &s.dagger())
}

/// One standard normal sample via Box–Muller.
fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.random::<f64>().max(1e-300);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Complex standard normal matrix.
pub fn random_gaussian_matrix<R: Rng>(rows: usize, cols: usize, rng: &mut R) -> ComplexMatrix {
    let entries = (0..rows * cols)
        .map(|_| c64(gaussian(rng), gaussian(rng)))
        .collect();
    ComplexMatrix::new(rows, cols, entries).expect("gaussian entries are finite")
}

/// Orthonormalizes the columns in place by modified Gram–Schmidt.
///
/// For square input this produces a Haar-ish unitary when fed Gaussian
/// entries; for tall input, an isometry with W†W = I.
pub fn orthonormalize_columns(m: &ComplexMatrix) -> ComplexMatrix {
    let (rows, cols) = (m.rows(), m.cols());
    let mut out = m.clone();
    for c in 0..cols {
        for prev in 0..c {
            let mut overlap = Complex64::ZERO;
            for r in 0..rows {
                overlap += out.get(r, prev).conj() * out.get(r, c);
            }
            for r in 0..rows {
                let v = out.get(r, c) - overlap * out.get(r, prev);
                out.set(r, c, v);
            }
        }
        let norm: f64 = (0..rows).map(|r| out.get(r, c).norm_sqr()).sum::<f64>().sqrt();
        for r in 0..rows {
            out.set(r, c, out.get(r, c) / norm);
        }
    }
    out
}

/// Haar-distributed random unitary of the given dimension.
pub fn random_unitary<R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix {
    orthonormalize_columns(&random_gaussian_matrix(dim, dim, rng))
}

/// Random normalized pure state over the given labels.
pub fn random_state<R: Rng>(labels: Vec<Label>, rng: &mut R) -> StateVector {
    let dim = 1usize << labels.len();
    let amps: Vec<Complex64> = (0..dim).map(|_| c64(gaussian(rng), gaussian(rng))).collect();
    StateVector::new_unnormalized(labels, amps)
        .expect("gaussian amplitudes are finite")
        .normalized()
        .expect("gaussian vector is nonzero")
        .0
}
