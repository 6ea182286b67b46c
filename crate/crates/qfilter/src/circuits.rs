//! CNOT-based ancilla circuits for filters, conversion, dilution, and
//! general two-outcome POVMs.
//!
//! Every circuit here has the same skeleton: prepare the ancilla E with a
//! rotation of |0⟩, rotate the system qubit A, entangle E and A with a CNOT
//! (control on E), optionally rotate both again, measure E projectively, and
//! apply an outcome-dependent correction on A. The choice of angles decides
//! which two-outcome measurement the whole block implements on A.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::povm::{CanonicalPovm, FilterSpec};
use crate::qmath::{
    apply_to_subsystems, c64, cnot, connecting_unitary, hadamard, is_product, kron,
    schmidt_decompose, su2_from_angles, ComplexMatrix, Label, StateVector,
};
use crate::{TOL_CONSTRUCT, TOL_ROUNDTRIP, TOL_SEARCH};

/// A two-qubit pure state by its Schmidt coefficients (α₀ ≥ α₁ ≥ 0,
/// α₀² + α₁² = 1), i.e. α₀|00⟩ + α₁|11⟩ up to local unitaries.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PureState2x2 {
    pub alpha0: f64,
    pub alpha1: f64,
}

impl PureState2x2 {
    pub fn new(alpha0: f64, alpha1: f64) -> Result<Self> {
        if !(alpha0 >= alpha1 && alpha1 >= 0.0) {
            return Err(Error::AngleRange(format!(
                "Schmidt coefficients must satisfy a0 >= a1 >= 0, got ({alpha0}, {alpha1})"
            )));
        }
        let sq = alpha0 * alpha0 + alpha1 * alpha1;
        if (sq - 1.0).abs() > TOL_CONSTRUCT {
            return Err(Error::NotNormalized((sq - 1.0).abs()));
        }
        Ok(Self { alpha0, alpha1 })
    }

    /// (cos x, sin x) for a Schmidt angle x ∈ [0, π/4]; near-boundary
    /// values are clamped.
    pub fn from_angle(x: f64) -> Result<Self> {
        let quarter = std::f64::consts::FRAC_PI_4;
        if !(-crate::ANGLE_SLACK..=quarter + crate::ANGLE_SLACK).contains(&x) {
            return Err(Error::AngleRange(format!(
                "Schmidt angle {x} outside [0, pi/4]"
            )));
        }
        let x = x.clamp(0.0, quarter);
        Self::new(x.cos(), x.sin())
    }

    /// From a bare α₀ ∈ [1/√2, 1], with α₁ = √(1 − α₀²).
    pub fn from_alpha0(alpha0: f64) -> Result<Self> {
        if !(std::f64::consts::FRAC_1_SQRT_2 - 1e-12..=1.0).contains(&alpha0) {
            return Err(Error::AngleRange(format!(
                "alpha0 = {alpha0} outside [1/sqrt(2), 1]"
            )));
        }
        Self::new(alpha0, (1.0 - alpha0 * alpha0).max(0.0).sqrt())
    }

    /// The representative α₀|00⟩ + α₁|11⟩ over (A, B).
    pub fn to_state(self) -> StateVector {
        StateVector::new(
            vec![Label::A, Label::B],
            vec![
                c64(self.alpha0, 0.0),
                Complex64::ZERO,
                Complex64::ZERO,
                c64(self.alpha1, 0.0),
            ],
        )
        .expect("Schmidt coefficients are normalized")
    }
}

mod basis_serde {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        basis: &[[Complex64; 2]; 2],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let repr: [[(f64, f64); 2]; 2] =
            basis.map(|v| v.map(|z| (z.re, z.im)));
        repr.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<[[Complex64; 2]; 2], D::Error> {
        let repr: [[(f64, f64); 2]; 2] = Deserialize::deserialize(d)?;
        Ok(repr.map(|v| v.map(|(re, im)| Complex64::new(re, im))))
    }
}

/// Full recipe for one ancilla-assisted two-outcome measurement block.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AncillaCircuit {
    /// U_E applied to the ancilla's |0⟩.
    pub ancilla_prep: ComplexMatrix,
    /// U_A applied to the system before the interaction.
    pub pre_local: ComplexMatrix,
    /// Two-qubit interaction, control on E, target on A. CNOT for every
    /// synthesized circuit.
    pub interaction: ComplexMatrix,
    /// V_E after the interaction (identity when unused).
    pub post_local_e: ComplexMatrix,
    /// Post-interaction rotation on A (identity when unused).
    pub post_local_a: ComplexMatrix,
    /// Orthonormal measurement basis {|e₀⟩, |e₁⟩} on E.
    #[serde(with = "basis_serde")]
    pub measure_basis: [[Complex64; 2]; 2],
    /// Outcome-dependent corrections on A.
    pub corrections: [ComplexMatrix; 2],
    /// Synthesis angle of the ancilla preparation; 0 for hand-built circuits.
    pub theta: f64,
}

impl AncillaCircuit {
    /// The do-nothing circuit: everything identity, measurement in the
    /// computational basis.
    pub fn identity() -> Self {
        Self {
            ancilla_prep: ComplexMatrix::identity(2),
            pre_local: ComplexMatrix::identity(2),
            interaction: ComplexMatrix::identity(4),
            post_local_e: ComplexMatrix::identity(2),
            post_local_a: ComplexMatrix::identity(2),
            measure_basis: computational_basis(),
            corrections: [ComplexMatrix::identity(2), ComplexMatrix::identity(2)],
            theta: 0.0,
        }
    }

    /// Checks unitarity of every component and orthonormality of the
    /// measurement basis.
    pub fn validate(&self) -> Result<()> {
        for (name, m, dim) in [
            ("ancilla_prep", &self.ancilla_prep, 2),
            ("pre_local", &self.pre_local, 2),
            ("interaction", &self.interaction, 4),
            ("post_local_e", &self.post_local_e, 2),
            ("post_local_a", &self.post_local_a, 2),
            ("correction 0", &self.corrections[0], 2),
            ("correction 1", &self.corrections[1], 2),
        ] {
            if (m.rows(), m.cols()) != (dim, dim) {
                return Err(Error::Dimension(format!("{name} must be {dim}x{dim}")));
            }
            let residual = m.unitarity_residual();
            if residual > TOL_ROUNDTRIP {
                return Err(Error::NotUnitary(residual));
            }
        }
        let [e0, e1] = &self.measure_basis;
        let n0 = (e0[0].norm_sqr() + e0[1].norm_sqr() - 1.0).abs();
        let n1 = (e1[0].norm_sqr() + e1[1].norm_sqr() - 1.0).abs();
        let ortho = (e0[0].conj() * e1[0] + e0[1].conj() * e1[1]).norm();
        if n0 > TOL_CONSTRUCT || n1 > TOL_CONSTRUCT || ortho > TOL_CONSTRUCT {
            return Err(Error::LabelMismatch(
                "measurement basis not orthonormal".into(),
            ));
        }
        Ok(())
    }
}

fn computational_basis() -> [[Complex64; 2]; 2] {
    [
        [Complex64::ONE, Complex64::ZERO],
        [Complex64::ZERO, Complex64::ONE],
    ]
}

/// Measurement basis of the filter construction:
/// |e₀⟩ = cosθ|0⟩ − sinθ|1⟩, |e₁⟩ = sinθ|0⟩ + cosθ|1⟩.
fn filter_basis(theta: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = theta.sin_cos();
    [
        [c64(c, 0.0), c64(-s, 0.0)],
        [c64(s, 0.0), c64(c, 0.0)],
    ]
}

/// One simulated measurement branch.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BranchOutcome {
    pub outcome: u8,
    pub probability: f64,
    /// Corrected post-measurement state; absent for a zero-probability
    /// branch.
    pub post_state: Option<StateVector>,
}

/// Synthesizes the circuit realizing the filter F(α) on A.
///
/// The ancilla is prepared at θ = α/2 so cos2θ = cosα; A is rotated into the
/// {|+⟩, |−⟩} basis before the CNOT and back after it, which makes the
/// effective operators come out diagonal, equal to {diag(cosα, 1),
/// diag(sinα, 0)} exactly.
pub fn synthesize_filter(spec: FilterSpec) -> AncillaCircuit {
    let theta = spec.alpha / 2.0;
    AncillaCircuit {
        ancilla_prep: su2_from_angles(theta, 0.0, 0.0),
        pre_local: hadamard(),
        interaction: cnot(),
        post_local_e: ComplexMatrix::identity(2),
        post_local_a: hadamard(),
        measure_basis: filter_basis(theta),
        corrections: [ComplexMatrix::identity(2), ComplexMatrix::identity(2)],
        theta,
    }
}

/// Synthesizes the optimal conversion of cos x|00⟩ + sin x|11⟩ into
/// cos y|00⟩ + sin y|11⟩ and returns the circuit with its success
/// probability sin²x / sin²y.
///
/// Requires 0 ≤ x ≤ y ≤ π/4 (the source must majorize the target). The
/// filter angle is fixed by cos2θ = tan x / tan y; outcome 0 carries the
/// target and outcome 1 collapses to a product state.
pub fn synthesize_conversion(x: f64, y: f64) -> Result<(AncillaCircuit, f64)> {
    let quarter = std::f64::consts::FRAC_PI_4;
    let slack = crate::ANGLE_SLACK;
    if !(-slack..=quarter + slack).contains(&x) || !(-slack..=quarter + slack).contains(&y) {
        return Err(Error::AngleRange(format!(
            "Schmidt angles ({x}, {y}) outside [0, pi/4]"
        )));
    }
    if x > y + 1e-15 {
        return Err(Error::NotConvertible(format!(
            "source must majorize target (phi ≻ psi requires x <= y), got x = {x} > y = {y}"
        )));
    }
    let x = x.clamp(0.0, quarter);
    let y = y.clamp(0.0, quarter);
    if y == 0.0 {
        // x = 0 as well: nothing to do, succeed with certainty.
        return Ok((synthesize_filter(FilterSpec::new(0.0)?), 1.0));
    }
    let alpha = (x.tan() / y.tan()).clamp(-1.0, 1.0).acos();
    let predicted = (x.sin() / y.sin()).powi(2);
    Ok((synthesize_filter(FilterSpec::new(alpha)?), predicted))
}

/// Dilution circuit with its derived angles and the per-outcome B-side
/// alignment that Bob would apply; Alice's corrections live inside the
/// circuit.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DilutionSynthesis {
    pub circuit: AncillaCircuit,
    pub gamma: f64,
    pub delta: f64,
    pub theta: f64,
    /// Per-outcome unitaries on B that align the post-state with
    /// β₀|00⟩ + β₁|11⟩ exactly. They are reported, not applied: only the
    /// Schmidt coefficients are guaranteed by the circuit itself.
    pub b_corrections: [ComplexMatrix; 2],
}

/// Synthesizes the deterministic dilution of `source` into `target`.
///
/// Requires α₀ ≤ β₀ (the source at least as entangled as the target) and an
/// entangled source. Both measurement outcomes occur with probability 1/2
/// and both yield the target Schmidt coefficients after the corrections.
pub fn synthesize_dilution(
    source: PureState2x2,
    target: PureState2x2,
) -> Result<DilutionSynthesis> {
    if source.alpha0 > target.alpha0 + 1e-12 {
        return Err(Error::NotDilutable(format!(
            "dilution needs phi ≺ psi (alpha0 <= beta0), got {} > {}",
            source.alpha0, target.alpha0
        )));
    }
    if source.alpha1 <= 1e-12 {
        return Err(Error::NotDilutable(
            "source is a product state; nothing to dilute".into(),
        ));
    }

    // alpha0² = (1 + cos γ)/2, so sin γ = 2 α0 α1.
    let gamma = (2.0 * source.alpha0 * source.alpha0 - 1.0).clamp(-1.0, 1.0).acos();
    let ratio = (2.0 * target.alpha0 * target.alpha1 / gamma.sin()).clamp(-1.0, 1.0);
    let delta = 0.5 * ratio.asin();
    let theta = 0.5 * (2.0 * delta).sin().clamp(-1.0, 1.0).acos();

    let (st, ct) = theta.sin_cos();
    let (sd, cd) = delta.sin_cos();
    let v_e = connecting_unitary(
        ([c64(ct, 0.0), c64(st, 0.0)], [c64(ct, 0.0), c64(-st, 0.0)]),
        ([c64(cd, 0.0), c64(sd, 0.0)], [c64(sd, 0.0), c64(cd, 0.0)]),
    )?;

    // The source arrives in Schmidt form, whose A-side basis already matches
    // the protocol state entering the CNOT; the leftover mismatch is a
    // B-side unitary that commutes with everything on (E, A).
    let mut circuit = AncillaCircuit {
        ancilla_prep: su2_from_angles(theta, 0.0, 0.0),
        pre_local: ComplexMatrix::identity(2),
        interaction: cnot(),
        post_local_e: v_e,
        post_local_a: hadamard(),
        measure_basis: computational_basis(),
        corrections: [ComplexMatrix::identity(2), ComplexMatrix::identity(2)],
        theta,
    };

    // Derive the corrections by running the correction-free circuit on the
    // canonical source and Schmidt-matching each branch onto the target.
    let branches = run_circuit(&circuit, &source.to_state())?;
    let mut corrections = [ComplexMatrix::identity(2), ComplexMatrix::identity(2)];
    let mut b_corrections = [ComplexMatrix::identity(2), ComplexMatrix::identity(2)];
    for (i, branch) in branches.iter().enumerate() {
        let post = branch.post_state.as_ref().ok_or_else(|| {
            Error::NotDilutable("degenerate zero-probability branch".into())
        })?;
        let form = schmidt_decompose(post, Label::A)?;
        corrections[i] = ComplexMatrix::new(
            2,
            2,
            vec![
                form.left_basis[0][0].conj(),
                form.left_basis[0][1].conj(),
                form.left_basis[1][0].conj(),
                form.left_basis[1][1].conj(),
            ],
        )?;
        b_corrections[i] = ComplexMatrix::new(
            2,
            2,
            vec![
                form.right_basis[0][0].conj(),
                form.right_basis[0][1].conj(),
                form.right_basis[1][0].conj(),
                form.right_basis[1][1].conj(),
            ],
        )?;
    }
    circuit.corrections = corrections;

    Ok(DilutionSynthesis {
        circuit,
        gamma,
        delta,
        theta,
        b_corrections,
    })
}

/// Synthesizes the circuit realizing a canonical POVM {Vᵢ·Dᵢ·U}.
///
/// The ancilla angle is fixed by cos2θ = cos(α − β) with θ ∈ [0, π/4]; the
/// canonical pre-rotation U is folded into the leading local unitary on A,
/// the post-interaction V_E maps cosθ|0⟩ ± sinθ|1⟩ onto the α/β directions,
/// measurement is computational on E, and the corrections are the Vᵢ. The
/// effective operators equal Vᵢ·Dᵢ·U up to a per-operator phase.
pub fn synthesize_general_povm(canonical: &CanonicalPovm) -> Result<AncillaCircuit> {
    for m in [&canonical.v0, &canonical.v1, &canonical.u] {
        let residual = m.unitarity_residual();
        if residual > TOL_ROUNDTRIP {
            return Err(Error::NotUnitary(residual));
        }
    }
    let half_pi = std::f64::consts::FRAC_PI_2;
    for angle in [canonical.alpha, canonical.beta] {
        if !(-1e-12..=half_pi + 1e-12).contains(&angle) {
            return Err(Error::AngleRange(format!(
                "canonical angle {angle} outside [0, pi/2]"
            )));
        }
    }

    let (alpha, beta) = (canonical.alpha, canonical.beta);
    let theta = 0.5 * (alpha - beta).abs();
    let (st, ct) = theta.sin_cos();
    let v_e = connecting_unitary(
        ([c64(ct, 0.0), c64(st, 0.0)], [c64(ct, 0.0), c64(-st, 0.0)]),
        (
            [c64(alpha.cos(), 0.0), c64(alpha.sin(), 0.0)],
            [c64(beta.cos(), 0.0), c64(beta.sin(), 0.0)],
        ),
    )?;

    Ok(AncillaCircuit {
        ancilla_prep: su2_from_angles(theta, 0.0, 0.0),
        pre_local: &hadamard() * &canonical.u,
        interaction: cnot(),
        post_local_e: v_e,
        post_local_a: hadamard(),
        measure_basis: computational_basis(),
        corrections: [canonical.v0.clone(), canonical.v1.clone()],
        theta,
    })
}

/// Simulates the circuit on an input over (A, B) or just (A).
///
/// The ancilla starts in |0⟩ᴱ; the returned branches carry exact
/// probabilities (they sum to 1) and corrected post-states.
pub fn run_circuit(circuit: &AncillaCircuit, input: &StateVector) -> Result<Vec<BranchOutcome>> {
    circuit.validate()?;
    if input.labels().first() != Some(&Label::A) {
        return Err(Error::LabelMismatch(
            "circuit input must be over (A) or (A, B)".into(),
        ));
    }
    if !input.is_normalized(TOL_CONSTRUCT) {
        return Err(Error::NotNormalized((input.norm() - 1.0).abs()));
    }

    let full = StateVector::zero(vec![Label::E])?.tensor(input)?;
    let full = apply_to_subsystems(&circuit.ancilla_prep, &full, &[Label::E])?;
    let full = apply_to_subsystems(&circuit.pre_local, &full, &[Label::A])?;
    let full = apply_to_subsystems(&circuit.interaction, &full, &[Label::E, Label::A])?;
    let full = apply_to_subsystems(&circuit.post_local_e, &full, &[Label::E])?;
    let full = apply_to_subsystems(&circuit.post_local_a, &full, &[Label::A])?;

    // E is the most significant index, so ⟨eᵢ| contracts the two halves.
    let half = full.dim() / 2;
    let amps = full.amplitudes();
    let mut outcomes = Vec::with_capacity(2);
    for (i, e) in circuit.measure_basis.iter().enumerate() {
        let branch: Vec<Complex64> = (0..half)
            .map(|r| e[0].conj() * amps[r] + e[1].conj() * amps[half + r])
            .collect();
        let probability: f64 = branch.iter().map(|z| z.norm_sqr()).sum();
        let post_state = if probability > 1e-28 {
            let raw = StateVector::new_unnormalized(input.labels().to_vec(), branch)?;
            let (normalized, _) = raw.normalized()?;
            Some(apply_to_subsystems(
                &circuit.corrections[i],
                &normalized,
                &[Label::A],
            )?)
        } else {
            None
        };
        outcomes.push(BranchOutcome {
            outcome: i as u8,
            probability,
            post_state,
        });
    }
    Ok(outcomes)
}

/// Contracts the circuit into its effective Kraus pair on A:
/// Kᵢ = Cᵢ · (⟨eᵢ| ⊗ I) · (V_E ⊗ V_A) · U_int · (U_E|0⟩ ⊗ U_A).
pub fn effective_kraus(circuit: &AncillaCircuit) -> Result<(ComplexMatrix, ComplexMatrix)> {
    circuit.validate()?;
    let chain = &kron(&circuit.post_local_e, &circuit.post_local_a)?
        * &(&circuit.interaction * &kron(&circuit.ancilla_prep, &circuit.pre_local)?);

    let kraus = |i: usize| -> Result<ComplexMatrix> {
        let e = &circuit.measure_basis[i];
        let mut k = ComplexMatrix::zeros(2, 2);
        for a_out in 0..2 {
            for a_in in 0..2 {
                // Ancilla input fixed to |0⟩ (column block 0).
                let val = e[0].conj() * chain.get(a_out, a_in)
                    + e[1].conj() * chain.get(2 + a_out, a_in);
                k.set(a_out, a_in, val);
            }
        }
        Ok(&circuit.corrections[i] * &k)
    };
    Ok((kraus(0)?, kraus(1)?))
}

/// Decomposition of Φ against the measurement direction fixed by Ψ.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremDecomposition {
    pub a0: f64,
    pub a1: f64,
    #[serde(with = "basis_serde")]
    pub e_basis: [[Complex64; 2]; 2],
    pub eta_perp: [[f64; 2]; 2],
    pub eta: Option<[[f64; 2]; 2]>,
    pub mu: Option<[[f64; 2]; 2]>,
}

/// Outcome of checking the universal-filter conditions at one frame.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub psi_is_product: bool,
    pub product_residual: f64,
    pub decomposition: Option<TheoremDecomposition>,
}

fn vec2_repr(v: &[Complex64; 2]) -> [[f64; 2]; 2] {
    [[v[0].re, v[0].im], [v[1].re, v[1].im]]
}

/// Evaluates the two defining conditions of a universal filter frame.
///
/// Computes Ψ = U·(U_E ⊗ U_A)|01⟩ and Φ = U·(U_E ⊗ U_A)|00⟩. If Ψ is a
/// product |e₀⟩|η⊥⟩, the report factors it, completes e₁ ⊥ e₀, and
/// decomposes Φ = a₀|e₀⟩|η⟩ + a₁|e₁⟩|μ⟩ with a₀, a₁ ≥ 0 by phase
/// absorption. A non-product Ψ yields a report without a decomposition.
pub fn verify_theorem_conditions(
    interaction: &ComplexMatrix,
    u_e: &ComplexMatrix,
    u_a: &ComplexMatrix,
) -> Result<TheoremReport> {
    for m in [interaction, u_e, u_a] {
        let residual = m.unitarity_residual();
        if residual > TOL_ROUNDTRIP {
            return Err(Error::NotUnitary(residual));
        }
    }
    if (interaction.rows(), interaction.cols()) != (4, 4) {
        return Err(Error::Dimension("interaction must be 4x4".into()));
    }

    let evolve = |e_bit: u8, a_bit: u8| -> Result<StateVector> {
        let s = StateVector::basis(vec![Label::E, Label::A], &[e_bit, a_bit])?;
        let s = apply_to_subsystems(u_e, &s, &[Label::E])?;
        let s = apply_to_subsystems(u_a, &s, &[Label::A])?;
        apply_to_subsystems(interaction, &s, &[Label::E, Label::A])
    };
    let psi = evolve(0, 1)?;
    let phi = evolve(0, 0)?;

    let (psi_is_product, product_residual) = is_product(&psi, TOL_SEARCH)?;
    if !psi_is_product {
        return Ok(TheoremReport {
            psi_is_product,
            product_residual,
            decomposition: None,
        });
    }

    let form = schmidt_decompose(&psi, Label::E)?;
    let e0 = form.left_basis[0];
    let e1 = form.left_basis[1];
    let eta_perp = [form.right_basis[0][0], form.right_basis[0][1]];

    let contract = |e: &[Complex64; 2]| -> [Complex64; 2] {
        let amps = phi.amplitudes();
        [
            e[0].conj() * amps[0] + e[1].conj() * amps[2],
            e[0].conj() * amps[1] + e[1].conj() * amps[3],
        ]
    };
    let v0 = contract(&e0);
    let v1 = contract(&e1);
    let a0 = (v0[0].norm_sqr() + v0[1].norm_sqr()).sqrt();
    let a1 = (v1[0].norm_sqr() + v1[1].norm_sqr()).sqrt();
    let unit = |v: [Complex64; 2], n: f64| -> Option<[[f64; 2]; 2]> {
        (n > 1e-12).then(|| vec2_repr(&[v[0] / n, v[1] / n]))
    };

    Ok(TheoremReport {
        psi_is_product,
        product_residual,
        decomposition: Some(TheoremDecomposition {
            a0,
            a1,
            e_basis: [e0, e1],
            eta_perp: vec2_repr(&eta_perp),
            eta: unit(v0, a0),
            mu: unit(v1, a1),
        }),
    })
}

/// Seeded Monte Carlo sampling of circuit outcomes, for demonstrating the
/// exact probabilities empirically.
pub fn sample_outcomes(
    circuit: &AncillaCircuit,
    input: &StateVector,
    trials: u64,
    seed: u64,
) -> Result<[u64; 2]> {
    use rand::{Rng, SeedableRng};
    let branches = run_circuit(circuit, input)?;
    let p0 = branches[0].probability;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0u64; 2];
    for _ in 0..trials {
        if rng.random::<f64>() < p0 {
            counts[0] += 1;
        } else {
            counts[1] += 1;
        }
    }
    Ok(counts)
}
