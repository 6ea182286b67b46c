//! Schmidt decomposition, entanglement entropy, and the product-state test.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qmath::matrix::{hermitian_eigen2, ComplexMatrix};
use crate::qmath::state::{partial_trace, Label, StateVector};
use crate::TOL_CONSTRUCT;

/// Schmidt form of a pure state across a cut whose left side is one qubit.
///
/// `coefficients` are sorted descending and square-sum to 1; the two left
/// vectors are orthonormal qubit states and the two right vectors are
/// orthonormal states of the remaining subsystem(s).
#[derive(Debug, Clone)]
pub struct SchmidtForm {
    pub coefficients: [f64; 2],
    pub left_basis: [[Complex64; 2]; 2],
    pub right_basis: [Vec<Complex64>; 2],
}

impl SchmidtForm {
    /// Reassembles Σᵢ cᵢ |lᵢ⟩|rᵢ⟩ as a raw amplitude vector (left label as
    /// the more significant index block).
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let rdim = self.right_basis[0].len();
        let mut amps = vec![Complex64::ZERO; 2 * rdim];
        for i in 0..2 {
            for l in 0..2 {
                for r in 0..rdim {
                    amps[l * rdim + r] +=
                        self.coefficients[i] * self.left_basis[i][l] * self.right_basis[i][r];
                }
            }
        }
        amps
    }
}

/// Amplitude matrix of `state` reshaped by the cut {left} | rest: rows are
/// the left-label bit, columns enumerate the remaining labels in order.
fn amplitude_matrix(state: &StateVector, left: Label) -> Result<ComplexMatrix> {
    let n = state.labels().len();
    let pos = state
        .labels()
        .iter()
        .position(|&l| l == left)
        .ok_or_else(|| Error::LabelMismatch(format!("label {left} not in state")))?;
    if n < 2 {
        return Err(Error::Dimension("cut needs at least two subsystems".into()));
    }
    let shift = n - 1 - pos;
    let rdim = state.dim() / 2;
    let mut m = ComplexMatrix::zeros(2, rdim);
    for (idx, amp) in state.amplitudes().iter().enumerate() {
        let l = (idx >> shift) & 1;
        // Remaining bits, left-to-right, skipping the cut label's bit.
        let mut r = 0usize;
        for p in 0..n {
            if p == pos {
                continue;
            }
            r = (r << 1) | ((idx >> (n - 1 - p)) & 1);
        }
        m.set(l, r, *amp);
    }
    Ok(m)
}

/// Schmidt-decomposes a normalized pure state across the cut {left} | rest.
///
/// Coefficients are the singular values of the reshaped amplitude matrix,
/// sorted descending. At exact degeneracy the left basis stays
/// computational (the rotation closest to identity), which makes the output
/// deterministic.
pub fn schmidt_decompose(state: &StateVector, left: Label) -> Result<SchmidtForm> {
    if !state.is_normalized(TOL_CONSTRUCT) {
        return Err(Error::NotNormalized((state.norm() - 1.0).abs()));
    }
    let m = amplitude_matrix(state, left)?;
    let rdim = m.cols();

    // Eigen-decompose the 2×2 Gram matrix M M†.
    let gram = &m * &m.dagger();
    let (evals, evecs) = hermitian_eigen2(&gram);
    let coefficients = [evals[0].max(0.0).sqrt(), evals[1].max(0.0).sqrt()];

    let mut right_basis: [Vec<Complex64>; 2] =
        [vec![Complex64::ZERO; rdim], vec![Complex64::ZERO; rdim]];
    for i in 0..2 {
        if coefficients[i] > 1e-9 {
            // rᵢ = (uᵢ† M) / cᵢ, which is automatically orthonormal.
            for (r, entry) in right_basis[i].iter_mut().enumerate() {
                *entry = (evecs[i][0].conj() * m.get(0, r) + evecs[i][1].conj() * m.get(1, r))
                    / coefficients[i];
            }
        } else {
            right_basis[i] = orthonormal_completion(&right_basis[1 - i], rdim);
        }
    }

    Ok(SchmidtForm {
        coefficients,
        left_basis: evecs,
        right_basis,
    })
}

/// Deterministic unit vector orthogonal to `against` (Gram–Schmidt over the
/// standard basis, first nonzero entry made real positive).
fn orthonormal_completion(against: &[Complex64], dim: usize) -> Vec<Complex64> {
    for k in 0..dim {
        let mut v = vec![Complex64::ZERO; dim];
        v[k] = Complex64::ONE;
        let overlap: Complex64 = against.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
        for (vi, ai) in v.iter_mut().zip(against) {
            *vi -= overlap * ai;
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.5 {
            for vi in v.iter_mut() {
                *vi /= norm;
            }
            // Phase convention: first entry above threshold real positive.
            let lead = *v.iter().find(|z| z.norm() > 1e-12).expect("unit vector");
            let ph = lead.conj() / lead.norm();
            for vi in v.iter_mut() {
                *vi *= ph;
            }
            return v;
        }
    }
    unreachable!("no orthogonal completion in dimension >= 2");
}

/// Entanglement entropy in ebits across the cut {left} | rest.
///
/// S = −Σ λ log₂ λ over the eigenvalues of the one-qubit reduced state.
pub fn entanglement_entropy(state: &StateVector, left: Label) -> Result<f64> {
    if !state.is_normalized(TOL_CONSTRUCT) {
        return Err(Error::NotNormalized((state.norm() - 1.0).abs()));
    }
    let rho = partial_trace(state, &[left])?;
    let (evals, _) = hermitian_eigen2(&rho);
    Ok(evals
        .iter()
        .map(|&l| {
            let l = l.clamp(0.0, 1.0);
            if l > 0.0 {
                -l * l.log2()
            } else {
                0.0
            }
        })
        .sum())
}

/// Product-state test for a two-qubit pure state.
///
/// The residual is |det M| of the 2×2 amplitude reshape — half the
/// concurrence — and the state is a product exactly when it vanishes.
pub fn is_product(state: &StateVector, tol: f64) -> Result<(bool, f64)> {
    if state.dim() != 4 {
        return Err(Error::Dimension(format!(
            "product test needs two qubits, got dim {}",
            state.dim()
        )));
    }
    let a = state.amplitudes();
    let residual = (a[0] * a[3] - a[1] * a[2]).norm();
    Ok((residual <= tol, residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::matrix::c64;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    use Label::{A, B, E};

    fn schmidt_pair(x: f64) -> StateVector {
        StateVector::new(
            vec![A, B],
            vec![
                c64(x.cos(), 0.0),
                Complex64::ZERO,
                Complex64::ZERO,
                c64(x.sin(), 0.0),
            ],
        )
        .unwrap()
    }

    #[test]
    fn product_state_has_trivial_coefficients() {
        let form = schmidt_decompose(&StateVector::zero(vec![A, B]).unwrap(), A).unwrap();
        assert!((form.coefficients[0] - 1.0).abs() < 1e-14);
        assert!(form.coefficients[1].abs() < 1e-14);
    }

    #[test]
    fn bell_state_is_balanced() {
        let form = schmidt_decompose(&schmidt_pair(PI / 4.0), A).unwrap();
        assert!((form.coefficients[0] - FRAC_1_SQRT_2).abs() < 1e-14);
        assert!((form.coefficients[1] - FRAC_1_SQRT_2).abs() < 1e-14);
    }

    #[test]
    fn coefficients_match_diagonal_reshape() {
        let form = schmidt_decompose(&schmidt_pair(PI / 6.0), A).unwrap();
        assert!((form.coefficients[0] - (PI / 6.0).cos()).abs() < 1e-14);
        assert!((form.coefficients[1] - (PI / 6.0).sin()).abs() < 1e-14);
    }

    #[test]
    fn reconstruction_matches_input() {
        let s = StateVector::new(
            vec![A, B],
            vec![c64(0.5, 0.1), c64(-0.3, 0.2), c64(0.1, 0.6), c64(0.2, -0.44319805)],
        );
        // Normalize whatever the constructor rejects.
        let s = match s {
            Ok(s) => s,
            Err(_) => {
                let raw = StateVector::new_unnormalized(
                    vec![A, B],
                    vec![c64(0.5, 0.1), c64(-0.3, 0.2), c64(0.1, 0.6), c64(0.2, -0.4)],
                )
                .unwrap();
                raw.normalized().unwrap().0
            }
        };
        let form = schmidt_decompose(&s, A).unwrap();
        let rebuilt = form.reconstruct();
        let err: f64 = rebuilt
            .iter()
            .zip(s.amplitudes())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(err < 1e-12, "reconstruction error {err}");
    }

    #[test]
    fn three_qubit_cut_reconstructs() {
        // E | (A,B) cut: right basis vectors live in dimension 4.
        let mut amps = vec![Complex64::ZERO; 8];
        amps[0] = c64(0.6, 0.0);
        amps[5] = c64(0.0, 0.48);
        amps[6] = c64(-0.64, 0.0);
        let s = StateVector::new(vec![E, A, B], amps).unwrap();
        let form = schmidt_decompose(&s, E).unwrap();
        assert_eq!(form.right_basis[0].len(), 4);
        let rebuilt = form.reconstruct();
        let err: f64 = rebuilt
            .iter()
            .zip(s.amplitudes())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!(err < 1e-12);
        // Right vectors orthonormal.
        let dot: Complex64 = form.right_basis[0]
            .iter()
            .zip(&form.right_basis[1])
            .map(|(a, b)| a.conj() * b)
            .sum();
        assert!(dot.norm() < 1e-12);
    }

    #[test]
    fn entropy_of_product_and_bell() {
        assert!(entanglement_entropy(&StateVector::zero(vec![A, B]).unwrap(), A)
            .unwrap()
            .abs()
            < 1e-14);
        let s = schmidt_pair(PI / 4.0);
        assert!((entanglement_entropy(&s, A).unwrap() - 1.0).abs() < 1e-12);
        assert!((entanglement_entropy(&s, B).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entropy_matches_formula_at_pi_over_8() {
        let x = PI / 8.0;
        let (l0, l1) = (x.cos() * x.cos(), x.sin() * x.sin());
        let want = -l0 * l0.log2() - l1 * l1.log2();
        let got = entanglement_entropy(&schmidt_pair(x), A).unwrap();
        assert!((got - want).abs() < 1e-13);
    }

    #[test]
    fn product_test_examples() {
        let basis01 = StateVector::basis(vec![A, B], &[0, 1]).unwrap();
        let (is_prod, res) = is_product(&basis01, 1e-12).unwrap();
        assert!(is_prod);
        assert!(res < 1e-15);

        let (is_prod, res) = is_product(&schmidt_pair(PI / 4.0), 1e-12).unwrap();
        assert!(!is_prod);
        assert!((res - 0.5).abs() < 1e-14);

        let three = StateVector::zero(vec![E, A, B]).unwrap();
        assert!(is_product(&three, 1e-12).is_err());
    }

    #[test]
    fn schmidt_rejects_unnormalized_input() {
        let raw = StateVector::new_unnormalized(
            vec![A, B],
            vec![c64(0.5, 0.0), Complex64::ZERO, Complex64::ZERO, Complex64::ZERO],
        )
        .unwrap();
        assert!(matches!(
            schmidt_decompose(&raw, A),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            entanglement_entropy(&raw, A),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn complementary_cuts_are_isospectral() {
        use crate::qmath::matrix::hermitian_eigenvalues;
        use crate::qmath::su2::random_state;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for _ in 0..50 {
            let s = random_state(vec![E, A, B], &mut rng);
            let rho_e = partial_trace(&s, &[E]).unwrap();
            let rho_ab = partial_trace(&s, &[A, B]).unwrap();
            let small = hermitian_eigenvalues(&rho_e);
            let large = hermitian_eigenvalues(&rho_ab);
            // Nonzero spectra match; the larger side pads with zeros.
            for (i, l) in small.iter().enumerate() {
                assert!((l - large[i]).abs() < 1e-10);
            }
            for l in large.iter().skip(2) {
                assert!(l.abs() < 1e-10);
            }
        }
    }

    #[test]
    fn entropy_is_invariant_under_local_unitaries() {
        use crate::qmath::state::apply_to_subsystems;
        use crate::qmath::su2::{random_state, random_unitary};
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let s = random_state(vec![A, B], &mut rng);
            let base = entanglement_entropy(&s, A).unwrap();
            let u_a = random_unitary(2, &mut rng);
            let u_b = random_unitary(2, &mut rng);
            let rotated = apply_to_subsystems(&u_a, &s, &[A]).unwrap();
            let rotated = apply_to_subsystems(&u_b, &rotated, &[B]).unwrap();
            let after = entanglement_entropy(&rotated.normalized().unwrap().0, A).unwrap();
            assert!((base - after).abs() < 1e-10);
        }
    }

    #[test]
    fn residual_is_half_concurrence() {
        // Residual equals |a·d − b·c| on the raw amplitudes.
        let raw = vec![c64(0.4, 0.1), c64(0.2, -0.3), c64(-0.5, 0.2), c64(0.1, 0.55)];
        let s = StateVector::new_unnormalized(vec![A, B], raw.clone())
            .unwrap()
            .normalized()
            .unwrap()
            .0;
        let (_, res) = is_product(&s, 1e-12).unwrap();
        let a = s.amplitudes();
        let det = (a[0] * a[3] - a[1] * a[2]).norm();
        assert!((res - det).abs() < 1e-15);
    }
}
