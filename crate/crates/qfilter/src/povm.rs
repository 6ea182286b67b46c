//! Two-outcome qubit POVMs and their canonical factorization.
//!
//! A general pair {M₀, M₁} with M₀†M₀ + M₁†M₁ = I factors as Mᵢ = Vᵢ·Dᵢ·U
//! with a shared pre-rotation U, outcome-wise unitaries Vᵢ, and diagonal
//! cores D₀ = diag(cosα, cosβ), D₁ = diag(sinα, sinβ). The angles are made
//! unique by α, β ∈ [0, π/2] with cos²α ≥ cos²β; under that ordering the
//! elementary filter {diag(cos a, 1), diag(sin a, 0)} canonicalizes to
//! (α, β) = (0, a) with U the basis swap.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmath::{
    apply_to_subsystems, c64, diag2, hermitian_eigen2, orthonormalize_columns,
    random_gaussian_matrix, ComplexMatrix, Label, StateVector,
};
use crate::TOL_CONSTRUCT;

/// Completeness residual below which a POVM is accepted by the operations
/// that require a valid one.
pub const POVM_ACCEPT_RESIDUAL: f64 = 1e-9;

/// A two-outcome generalized measurement {M₀, M₁} on one qubit.
///
/// The struct itself does not force completeness (deserialized input is
/// checked where it is used); [`TwoOutcomePovm::new`] and every in-crate
/// constructor do.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwoOutcomePovm {
    pub m0: ComplexMatrix,
    pub m1: ComplexMatrix,
}

impl TwoOutcomePovm {
    /// Builds a POVM, requiring 2×2 operators and completeness within 1e-10.
    pub fn new(m0: ComplexMatrix, m1: ComplexMatrix) -> Result<Self> {
        if (m0.rows(), m0.cols()) != (2, 2) || (m1.rows(), m1.cols()) != (2, 2) {
            return Err(Error::Dimension("POVM operators must be 2x2".into()));
        }
        let p = Self { m0, m1 };
        let residual = check_completeness(&p);
        if residual > 1e-10 {
            return Err(Error::IncompletePovm(residual));
        }
        Ok(p)
    }

    pub fn operator(&self, outcome: usize) -> &ComplexMatrix {
        match outcome {
            0 => &self.m0,
            1 => &self.m1,
            _ => panic!("two-outcome POVM has outcomes 0 and 1"),
        }
    }
}

/// ‖M₀†M₀ + M₁†M₁ − I‖_max. Always reported; callers pick the tolerance.
pub fn check_completeness(p: &TwoOutcomePovm) -> f64 {
    let sum = (&p.m0.dagger() * &p.m0).add(&(&p.m1.dagger() * &p.m1));
    sum.sub(&ComplexMatrix::identity(2)).max_norm()
}

/// The elementary filter parameter: F(α) = {diag(cosα, 1), diag(sinα, 0)}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FilterSpec {
    pub alpha: f64,
}

impl FilterSpec {
    /// Accepts α ∈ [0, π/2]; values within a hair of the boundary are
    /// clamped onto it.
    pub fn new(alpha: f64) -> Result<Self> {
        if !(-crate::ANGLE_SLACK..=FRAC_PI_2 + crate::ANGLE_SLACK).contains(&alpha) {
            return Err(Error::AngleRange(format!(
                "filter angle {alpha} outside [0, pi/2]"
            )));
        }
        Ok(Self {
            alpha: alpha.clamp(0.0, FRAC_PI_2),
        })
    }
}

/// Builds the filter POVM {diag(cosα, 1), diag(sinα, 0)}.
pub fn make_filter(spec: FilterSpec) -> TwoOutcomePovm {
    let (s, c) = spec.alpha.sin_cos();
    TwoOutcomePovm {
        m0: diag2(c64(c, 0.0), Complex64::ONE),
        m1: diag2(c64(s, 0.0), Complex64::ZERO),
    }
}

/// Canonical factorization Mᵢ = Vᵢ·Dᵢ·U of a two-outcome POVM.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CanonicalPovm {
    pub v0: ComplexMatrix,
    pub v1: ComplexMatrix,
    pub u: ComplexMatrix,
    /// First diagonal angle; cos²α ≥ cos²β by convention, so α ≤ β.
    pub alpha: f64,
    pub beta: f64,
}

impl CanonicalPovm {
    pub fn d0(&self) -> ComplexMatrix {
        diag2(c64(self.alpha.cos(), 0.0), c64(self.beta.cos(), 0.0))
    }

    pub fn d1(&self) -> ComplexMatrix {
        diag2(c64(self.alpha.sin(), 0.0), c64(self.beta.sin(), 0.0))
    }

    /// Vᵢ·Dᵢ·U for the given outcome.
    pub fn reconstruct(&self, outcome: usize) -> ComplexMatrix {
        let (v, d) = match outcome {
            0 => (&self.v0, self.d0()),
            1 => (&self.v1, self.d1()),
            _ => panic!("two-outcome POVM has outcomes 0 and 1"),
        };
        &(v * &d) * &self.u
    }

    /// Max-norm reconstruction error against the original pair.
    pub fn reconstruction_residual(&self, p: &TwoOutcomePovm) -> f64 {
        self.reconstruct(0)
            .sub(&p.m0)
            .max_norm()
            .max(self.reconstruct(1).sub(&p.m1).max_norm())
    }
}

/// Reduces {M₀, M₁} to canonical form.
///
/// M₀†M₀ and M₁†M₁ commute (they sum to I), so one unitary U diagonalizes
/// both; its eigenbasis is ordered so cos²α ≥ cos²β. Each Vᵢ comes from
/// dividing Mᵢ·U† by the diagonal; a column facing a (near-)zero diagonal
/// entry is unconstrained and is completed orthonormally with the first
/// nonzero entry made real positive.
pub fn canonical_form(p: &TwoOutcomePovm) -> Result<CanonicalPovm> {
    let residual = check_completeness(p);
    if residual > POVM_ACCEPT_RESIDUAL {
        return Err(Error::IncompletePovm(residual));
    }

    let p0 = &p.m0.dagger() * &p.m0;
    let (evals, evecs) = hermitian_eigen2(&p0);
    // U has the eigenvector conjugates as rows: U P0 U† = diag(λ0, λ1).
    let u = ComplexMatrix::new(
        2,
        2,
        vec![
            evecs[0][0].conj(),
            evecs[0][1].conj(),
            evecs[1][0].conj(),
            evecs[1][1].conj(),
        ],
    )?;

    let l0 = evals[0].clamp(0.0, 1.0);
    let l1 = evals[1].clamp(0.0, 1.0);
    let alpha = l0.sqrt().acos();
    let beta = l1.sqrt().acos();

    let v0 = extract_outcome_unitary(&p.m0, &u, alpha.cos(), beta.cos())?;
    let v1 = extract_outcome_unitary(&p.m1, &u, alpha.sin(), beta.sin())?;

    Ok(CanonicalPovm { v0, v1, u, alpha, beta })
}

/// Solves M = V·diag(d0, d1)·U for unitary V.
fn extract_outcome_unitary(
    m: &ComplexMatrix,
    u: &ComplexMatrix,
    d0: f64,
    d1: f64,
) -> Result<ComplexMatrix> {
    let a = m * &u.dagger();
    let mut cols: [Option<[Complex64; 2]>; 2] = [None, None];
    for (j, d) in [d0, d1].into_iter().enumerate() {
        if d > 1e-10 {
            cols[j] = Some([a.get(0, j) / d, a.get(1, j) / d]);
        }
    }
    let v = match (cols[0], cols[1]) {
        (Some(c0), Some(c1)) => ComplexMatrix::new(2, 2, vec![c0[0], c1[0], c0[1], c1[1]])?,
        (Some(c0), None) => {
            let c1 = complete_column(&c0);
            ComplexMatrix::new(2, 2, vec![c0[0], c1[0], c0[1], c1[1]])?
        }
        (None, Some(c1)) => {
            let c0 = complete_column(&c1);
            ComplexMatrix::new(2, 2, vec![c0[0], c1[0], c0[1], c1[1]])?
        }
        (None, None) => ComplexMatrix::identity(2),
    };
    // Columns from the division are unit only up to rounding; tidy them.
    Ok(orthonormalize_columns(&v))
}

/// Unit column orthogonal to `fixed`, first nonzero entry real positive.
fn complete_column(fixed: &[Complex64; 2]) -> [Complex64; 2] {
    let raw = [-fixed[1].conj(), fixed[0].conj()];
    let lead = if raw[0].norm() > 1e-12 { raw[0] } else { raw[1] };
    let ph = lead.conj() / lead.norm();
    [raw[0] * ph, raw[1] * ph]
}

/// One measurement branch: its probability and the normalized post-state
/// (absent when the branch has zero probability).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PovmBranch {
    pub probability: f64,
    pub post_state: Option<StateVector>,
}

/// Applies the POVM to `target` of a normalized state, returning both
/// outcome branches. Probabilities sum to 1 up to the completeness residual.
pub fn apply_povm(
    p: &TwoOutcomePovm,
    state: &StateVector,
    target: Label,
) -> Result<[PovmBranch; 2]> {
    let residual = check_completeness(p);
    if residual > POVM_ACCEPT_RESIDUAL {
        return Err(Error::IncompletePovm(residual));
    }
    if !state.is_normalized(TOL_CONSTRUCT) {
        return Err(Error::NotNormalized((state.norm() - 1.0).abs()));
    }

    let branch = |m: &ComplexMatrix| -> Result<PovmBranch> {
        let out = apply_to_subsystems(m, state, &[target])?;
        let norm = out.norm();
        let probability = norm * norm;
        let post_state = if norm > 1e-14 {
            Some(out.normalized()?.0)
        } else {
            None
        };
        Ok(PovmBranch { probability, post_state })
    };
    Ok([branch(&p.m0)?, branch(&p.m1)?])
}

/// Random completeness-satisfying POVM: a Gaussian 4×2 matrix is
/// orthonormalized into an isometry W and split into 2×2 blocks, so
/// M₀†M₀ + M₁†M₁ = W†W = I by construction.
pub fn random_povm<R: Rng>(rng: &mut R) -> TwoOutcomePovm {
    let w = orthonormalize_columns(&random_gaussian_matrix(4, 2, rng));
    let block = |row0: usize| {
        ComplexMatrix::new(
            2,
            2,
            vec![
                w.get(row0, 0),
                w.get(row0, 1),
                w.get(row0 + 1, 0),
                w.get(row0 + 1, 1),
            ],
        )
        .expect("2x2 block of a finite isometry")
    };
    TwoOutcomePovm { m0: block(0), m1: block(2) }
}
