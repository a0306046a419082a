//! Quantities of a pre- and postselected system: ABL amplitudes and
//! probabilities, weak values, detailed versus global probabilities, and
//! transition matrix elements.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{inner, matrix_element, Amplitude, Ket, Operator, ZERO_TOLERANCE};
use crate::projector::{is_projector_within, is_resolution_of_identity_within, ProjectorDiagnostics};

/// Preselected state `|in⟩` and postselected state `|f⟩`; free evolution in
/// between is the identity.
#[derive(Clone, Debug, PartialEq)]
pub struct PrePostSelection {
    pre: Ket,
    post: Ket,
}

impl PrePostSelection {
    pub fn new(pre: Ket, post: Ket) -> Result<Self> {
        if pre.dim() != post.dim() {
            return Err(Error::DimensionMismatch {
                left: pre.dim(),
                right: post.dim(),
            });
        }
        Ok(PrePostSelection { pre, post })
    }

    pub fn pre(&self) -> &Ket {
        &self.pre
    }

    pub fn post(&self) -> &Ket {
        &self.post
    }

    pub fn n_particles(&self) -> usize {
        self.pre.n_particles()
    }

    /// `⟨f|in⟩`.
    pub fn overlap(&self) -> Amplitude {
        inner(&self.post, &self.pre).expect("dimensions checked at construction")
    }
}

/// Ordered list of projectors meant as one complete projective measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementSet {
    projectors: Vec<Operator>,
    labels: Vec<String>,
}

impl MeasurementSet {
    pub fn new(members: Vec<(String, Operator)>) -> Result<Self> {
        let first = members.first().ok_or(Error::Empty("measurement set"))?;
        let dim = first.1.dim();
        if let Some((_, bad)) = members.iter().find(|(_, op)| op.dim() != dim) {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: bad.dim(),
            });
        }
        let (labels, projectors) = members.into_iter().unzip();
        Ok(MeasurementSet { projectors, labels })
    }

    pub fn projectors(&self) -> &[Operator] {
        &self.projectors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.projectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.projectors.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AblResult {
    pub amplitudes: Vec<Amplitude>,
    pub probabilities: Vec<f64>,
    /// `Σ_j |⟨f|Π_j|in⟩|²`.
    pub normalization: f64,
}

/// Weak value of a sum computed both term by term and through the summed
/// operator.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeakValueSum {
    pub termwise: Amplitude,
    pub summed_operator: Amplitude,
}

/// Runs every engine operation against one zero threshold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluator {
    tol: f64,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator { tol: ZERO_TOLERANCE }
    }
}

impl Evaluator {
    pub fn new(tol: f64) -> Self {
        Evaluator { tol }
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn is_vanishing(&self, z: Amplitude) -> bool {
        z.norm() <= self.tol
    }

    pub fn abl_amplitude(&self, sel: &PrePostSelection, op: &Operator) -> Result<Amplitude> {
        matrix_element(&sel.post, op, &sel.pre)
    }

    /// `P(k) = |⟨f|Π_k|in⟩|² / Σ_j |⟨f|Π_j|in⟩|²` over a complete measurement.
    pub fn abl_probabilities(&self, sel: &PrePostSelection, set: &MeasurementSet) -> Result<AblResult> {
        if !is_resolution_of_identity_within(&set.projectors, self.tol)? {
            return Err(Error::IncompleteMeasurement);
        }
        let amplitudes = set
            .projectors
            .iter()
            .map(|op| self.abl_amplitude(sel, op))
            .collect::<Result<Vec<_>>>()?;
        let normalization: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if normalization <= self.tol * self.tol {
            return Err(Error::ImpossiblePostselection);
        }
        let probabilities = amplitudes.iter().map(|a| a.norm_sqr() / normalization).collect();
        Ok(AblResult {
            amplitudes,
            probabilities,
            normalization,
        })
    }

    /// `⟨f|A|in⟩ / ⟨f|in⟩`.
    pub fn weak_value(&self, sel: &PrePostSelection, op: &Operator) -> Result<Amplitude> {
        let overlap = self.nonorthogonal_overlap(sel)?;
        Ok(self.abl_amplitude(sel, op)? / overlap)
    }

    fn nonorthogonal_overlap(&self, sel: &PrePostSelection) -> Result<Amplitude> {
        let overlap = sel.overlap();
        if overlap.norm() <= self.tol {
            return Err(Error::OrthogonalSelection);
        }
        Ok(overlap)
    }

    /// Sum of weak values; legitimate even when the summed operator is not a
    /// projector.
    pub fn weak_value_sum(&self, sel: &PrePostSelection, ops: &[Operator]) -> Result<WeakValueSum> {
        self.nonorthogonal_overlap(sel)?;
        let termwise = ops
            .iter()
            .map(|op| self.weak_value(sel, op))
            .sum::<Result<Amplitude>>()?;
        let summed = Operator::sum(sel.n_particles(), ops)?;
        let summed_operator = self.weak_value(sel, &summed)?;
        Ok(WeakValueSum {
            termwise,
            summed_operator,
        })
    }

    /// Incoherent sum `Σ_i |⟨f|Π_i|in⟩|²`.
    pub fn detailed_probability(&self, sel: &PrePostSelection, set: &[Operator]) -> Result<f64> {
        set.iter().enumerate().try_fold(0.0, |acc, (k, op)| {
            if !is_projector_within(op, self.tol) {
                return Err(Error::NotProjector(format!("member {k}")));
            }
            Ok(acc + self.abl_amplitude(sel, op)?.norm_sqr())
        })
    }

    /// Coherent `|⟨f|Σ_i Π_i|in⟩|²`; the summed operator must be a projector.
    pub fn global_probability(&self, sel: &PrePostSelection, set: &[Operator]) -> Result<f64> {
        let summed = Operator::sum(sel.n_particles(), set)?;
        if !ProjectorDiagnostics::of(&summed).is_projector(self.tol) {
            return Err(Error::NotLegitimate);
        }
        Ok(self.abl_amplitude(sel, &summed)?.norm_sqr())
    }

    /// `⟨f|H|in⟩` for an interaction Hamiltonian. This is a transition
    /// amplitude and says nothing about intermediate presence.
    pub fn transition_element(&self, sel: &PrePostSelection, h: &Operator) -> Result<Amplitude> {
        matrix_element(&sel.post, h, &sel.pre)
    }
}

pub fn abl_amplitude(sel: &PrePostSelection, op: &Operator) -> Result<Amplitude> {
    Evaluator::default().abl_amplitude(sel, op)
}

pub fn abl_probabilities(sel: &PrePostSelection, set: &MeasurementSet) -> Result<AblResult> {
    Evaluator::default().abl_probabilities(sel, set)
}

pub fn weak_value(sel: &PrePostSelection, op: &Operator) -> Result<Amplitude> {
    Evaluator::default().weak_value(sel, op)
}

pub fn weak_value_sum(sel: &PrePostSelection, ops: &[Operator]) -> Result<WeakValueSum> {
    Evaluator::default().weak_value_sum(sel, ops)
}

pub fn detailed_probability(sel: &PrePostSelection, set: &[Operator]) -> Result<f64> {
    Evaluator::default().detailed_probability(sel, set)
}

pub fn global_probability(sel: &PrePostSelection, set: &[Operator]) -> Result<f64> {
    Evaluator::default().global_probability(sel, set)
}

pub fn transition_element(sel: &PrePostSelection, h: &Operator) -> Result<Amplitude> {
    Evaluator::default().transition_element(sel, h)
}
