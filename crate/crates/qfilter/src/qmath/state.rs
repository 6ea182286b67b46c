//! Labeled few-qubit state vectors.
//!
//! Subsystems are named E (ancilla), A, and B, with a fixed significance
//! order: whenever E is present it carries the most significant bit, and B
//! the least. Operations address subsystems by label, never by raw index
//! arithmetic at call sites.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qmath::matrix::{c64, ComplexMatrix};
use crate::TOL_CONSTRUCT;

/// Subsystem label. The declaration order fixes bit significance: E > A > B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    E,
    A,
    B,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::E => write!(f, "E"),
            Label::A => write!(f, "A"),
            Label::B => write!(f, "B"),
        }
    }
}

/// A pure state over one, two, or three labeled qubits.
///
/// Amplitudes are indexed with the first label as the most significant bit:
/// a state with labels `[E, A, B]` stores the amplitude of |e a b⟩ at index
/// `4e + 2a + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    labels: Vec<Label>,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Builds a normalized state. Labels must be distinct and listed in
    /// significance order (E before A before B).
    pub fn new(labels: Vec<Label>, amplitudes: Vec<Complex64>) -> Result<Self> {
        let s = Self::new_unnormalized(labels, amplitudes)?;
        let norm = s.norm();
        if (norm - 1.0).abs() > TOL_CONSTRUCT {
            return Err(Error::NotNormalized((norm - 1.0).abs()));
        }
        Ok(s)
    }

    /// Builds a state without the normalization check, for intermediate
    /// measurement branches.
    pub fn new_unnormalized(labels: Vec<Label>, amplitudes: Vec<Complex64>) -> Result<Self> {
        if labels.is_empty() || labels.len() > 3 {
            return Err(Error::Dimension(format!("{} labels", labels.len())));
        }
        if labels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::LabelMismatch(
                "labels must be distinct and ordered E, A, B".into(),
            ));
        }
        let dim = 1usize << labels.len();
        if amplitudes.len() != dim {
            return Err(Error::Dimension(format!(
                "{} amplitudes for {} labels",
                amplitudes.len(),
                labels.len()
            )));
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitude"));
        }
        Ok(Self { labels, amplitudes })
    }

    /// The computational basis state |0…0⟩ over the given labels.
    pub fn zero(labels: Vec<Label>) -> Result<Self> {
        let dim = 1usize << labels.len();
        let mut amps = vec![Complex64::ZERO; dim];
        amps[0] = Complex64::ONE;
        Self::new(labels, amps)
    }

    /// Builds |b_{n-1} … b_0⟩ from bits listed most significant first.
    pub fn basis(labels: Vec<Label>, bits: &[u8]) -> Result<Self> {
        if bits.len() != labels.len() {
            return Err(Error::LabelMismatch("one bit per label required".into()));
        }
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | (b as usize & 1));
        let dim = 1usize << labels.len();
        let mut amps = vec![Complex64::ZERO; dim];
        amps[idx] = Complex64::ONE;
        Self::new(labels, amps)
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm() - 1.0).abs() <= tol
    }

    /// Returns the same state scaled to unit norm, with the norm it had.
    pub fn normalized(&self) -> Result<(Self, f64)> {
        let n = self.norm();
        if n < 1e-150 {
            return Err(Error::NotNormalized(1.0));
        }
        let amps = self.amplitudes.iter().map(|z| z / n).collect();
        Ok((
            Self { labels: self.labels.clone(), amplitudes: amps },
            n,
        ))
    }

    /// |⟨self|other⟩|, defined for states over the same labels.
    pub fn overlap(&self, other: &Self) -> f64 {
        assert_eq!(self.labels, other.labels, "overlap of differently labeled states");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm()
    }

    /// Tensor product; label sets must be disjoint. Factors are interleaved
    /// into canonical significance order.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let mut labels: Vec<Label> = self.labels.iter().chain(&other.labels).copied().collect();
        labels.sort();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::LabelMismatch("tensor of overlapping label sets".into()));
        }
        let n = labels.len();
        let dim = 1usize << n;
        let mut amps = vec![Complex64::ZERO; dim];
        for (idx, amp) in amps.iter_mut().enumerate() {
            let bit_of = |label: Label| -> usize {
                let pos = labels.iter().position(|&l| l == label).expect("label present");
                (idx >> (n - 1 - pos)) & 1
            };
            let self_idx = self
                .labels
                .iter()
                .fold(0usize, |acc, &l| (acc << 1) | bit_of(l));
            let other_idx = other
                .labels
                .iter()
                .fold(0usize, |acc, &l| (acc << 1) | bit_of(l));
            *amp = self.amplitudes[self_idx] * other.amplitudes[other_idx];
        }
        Self::new_unnormalized(labels, amps)
    }

    fn position(&self, label: Label) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::LabelMismatch(format!("label {label} not in state")))
    }
}

/// Applies `gate` to the named subsystems of `state`, identity elsewhere.
///
/// The first target label matches the gate's most significant tensor factor,
/// so a CNOT applied to `[E, A]` is controlled on E.
pub fn apply_to_subsystems(
    gate: &ComplexMatrix,
    state: &StateVector,
    targets: &[Label],
) -> Result<StateVector> {
    if gate.rows() != gate.cols() {
        return Err(Error::Dimension(format!(
            "gate is {}x{}, not square",
            gate.rows(),
            gate.cols()
        )));
    }
    if targets.is_empty() || gate.rows() != 1usize << targets.len() {
        return Err(Error::Dimension(format!(
            "gate dim {} does not match {} targets",
            gate.rows(),
            targets.len()
        )));
    }
    let mut seen = Vec::new();
    for &t in targets {
        if seen.contains(&t) {
            return Err(Error::LabelMismatch(format!("duplicate target {t}")));
        }
        seen.push(t);
    }

    let n = state.labels().len();
    // Bit position (shift) of each target inside the state index.
    let shifts: Vec<usize> = targets
        .iter()
        .map(|&t| state.position(t).map(|p| n - 1 - p))
        .collect::<Result<_>>()?;

    let dim = state.dim();
    let k = targets.len();
    let sub_of = |idx: usize| -> usize {
        shifts
            .iter()
            .fold(0usize, |acc, &sh| (acc << 1) | ((idx >> sh) & 1))
    };
    let rest_of = |idx: usize| -> usize {
        let mut masked = idx;
        for &sh in &shifts {
            masked &= !(1usize << sh);
        }
        masked
    };

    let mut out = vec![Complex64::ZERO; dim];
    for (i, out_amp) in out.iter_mut().enumerate() {
        let sub_i = sub_of(i);
        let rest_i = rest_of(i);
        let mut acc = Complex64::ZERO;
        for (j, amp) in state.amplitudes().iter().enumerate() {
            if rest_of(j) == rest_i {
                acc += gate.get(sub_i, sub_of(j)) * amp;
            }
        }
        let _ = k;
        *out_amp = acc;
    }
    StateVector::new_unnormalized(state.labels().to_vec(), out)
}

/// Reduced density operator over `keep`, tracing out the rest.
///
/// `keep` must be a nonempty proper subset of the state's labels; rows and
/// columns follow the kept labels in their canonical order.
pub fn partial_trace(state: &StateVector, keep: &[Label]) -> Result<ComplexMatrix> {
    let mut keep: Vec<Label> = keep.to_vec();
    keep.sort();
    keep.dedup();
    if keep.is_empty() || keep.len() >= state.labels().len() {
        return Err(Error::LabelMismatch(
            "keep must be a nonempty proper subset of the state labels".into(),
        ));
    }
    let n = state.labels().len();
    let keep_shifts: Vec<usize> = keep
        .iter()
        .map(|&t| state.position(t).map(|p| n - 1 - p))
        .collect::<Result<_>>()?;
    let trace_shifts: Vec<usize> = (0..n)
        .rev()
        .filter(|sh| !keep_shifts.contains(sh))
        .collect();

    let kd = 1usize << keep.len();
    let td = 1usize << trace_shifts.len();
    let compose = |kept: usize, traced: usize| -> usize {
        let mut idx = 0usize;
        for (b, &sh) in keep_shifts.iter().enumerate() {
            idx |= ((kept >> (keep.len() - 1 - b)) & 1) << sh;
        }
        for (b, &sh) in trace_shifts.iter().enumerate() {
            idx |= ((traced >> (trace_shifts.len() - 1 - b)) & 1) << sh;
        }
        idx
    };

    let mut rho = ComplexMatrix::zeros(kd, kd);
    for r in 0..kd {
        for c in 0..kd {
            let mut acc = Complex64::ZERO;
            for t in 0..td {
                acc += state.amplitudes()[compose(r, t)] * state.amplitudes()[compose(c, t)].conj();
            }
            rho.set(r, c, acc);
        }
    }
    Ok(rho)
}

impl Serialize for StateVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            labels: &'a [Label],
            amplitudes: Vec<(f64, f64)>,
        }
        Repr {
            labels: &self.labels,
            amplitudes: self.amplitudes.iter().map(|z| (z.re, z.im)).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for StateVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            labels: Vec<Label>,
            amplitudes: Vec<(f64, f64)>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let amps = repr.amplitudes.iter().map(|&(re, im)| c64(re, im)).collect();
        StateVector::new_unnormalized(repr.labels, amps).map_err(D::Error::custom)
    }
}
