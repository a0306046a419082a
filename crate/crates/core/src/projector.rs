//! Correlation projectors, Hamiltonians built from them, and the predicates
//! that decide whether an operator poses a legitimate yes/no question.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{check_particles, Amplitude, BasisLabel, Ket, Labeling, Operator, Side, ZERO_TOLERANCE};

/// Box-pattern condition over 1-based particle indices.
///
/// Unmentioned particles are unconstrained (identity factor).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProjectorKind {
    /// The identity, i.e. the question that is always answered "yes".
    Identity,
    /// Product of single-particle box projectors, e.g. `Π1^L Π2^L`.
    Box { at: Vec<(usize, Side)> },
    /// The two particles share a box.
    PairSame { pair: [usize; 2] },
    /// The two particles sit in different boxes.
    PairDiff { pair: [usize; 2] },
    /// All listed particles (default: every particle) share a box.
    AllSame {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        particles: Option<Vec<usize>>,
    },
    /// The pair shares a box while `third` sits in the other one.
    Sd { pair: [usize; 2], third: usize },
}

impl ProjectorKind {
    pub fn pair_same(i: usize, j: usize) -> Self {
        ProjectorKind::PairSame { pair: [i, j] }
    }

    pub fn pair_diff(i: usize, j: usize) -> Self {
        ProjectorKind::PairDiff { pair: [i, j] }
    }

    pub fn all_same() -> Self {
        ProjectorKind::AllSame { particles: None }
    }

    pub fn sd(i: usize, j: usize, third: usize) -> Self {
        ProjectorKind::Sd { pair: [i, j], third }
    }

    pub fn boxes(at: &[(usize, Side)]) -> Self {
        ProjectorKind::Box { at: at.to_vec() }
    }

    /// Indices mentioned by the condition, in declaration order.
    fn indices(&self) -> Vec<usize> {
        match self {
            ProjectorKind::Identity => vec![],
            ProjectorKind::Box { at } => at.iter().map(|(p, _)| *p).collect(),
            ProjectorKind::PairSame { pair } | ProjectorKind::PairDiff { pair } => pair.to_vec(),
            ProjectorKind::AllSame { particles } => particles.clone().unwrap_or_default(),
            ProjectorKind::Sd { pair, third } => vec![pair[0], pair[1], *third],
        }
    }

    /// Checks indices and minimum particle counts against an `n`-particle space.
    pub fn validate(&self, n_particles: usize) -> Result<()> {
        let invalid = |msg: String| Err(Error::InvalidProjector(msg));
        let indices = self.indices();
        for (k, &p) in indices.iter().enumerate() {
            if p == 0 || p > n_particles {
                return invalid(format!("particle index {p} (position {k}) outside 1..={n_particles}"));
            }
            if indices[..k].contains(&p) {
                return invalid(format!("particle index {p} repeated"));
            }
        }
        match self {
            ProjectorKind::Box { at } if at.is_empty() => invalid("box pattern needs at least one particle".into()),
            ProjectorKind::PairSame { .. } | ProjectorKind::PairDiff { .. } if n_particles < 2 => {
                invalid("pair projectors need at least 2 particles".into())
            }
            ProjectorKind::Sd { .. } if n_particles < 3 => invalid("sd projectors need at least 3 particles".into()),
            ProjectorKind::AllSame { particles: Some(ps) } if ps.len() < 2 => {
                invalid("all_same needs at least 2 particles".into())
            }
            _ => Ok(()),
        }
    }

    /// Whether the basis label satisfies the condition.
    pub fn accepts(&self, label: &BasisLabel) -> bool {
        match self {
            ProjectorKind::Identity => true,
            ProjectorKind::Box { at } => at.iter().all(|&(p, side)| label.side(p) == side),
            ProjectorKind::PairSame { pair: [i, j] } => label.side(*i) == label.side(*j),
            ProjectorKind::PairDiff { pair: [i, j] } => label.side(*i) != label.side(*j),
            ProjectorKind::AllSame { particles: None } => label.sides().windows(2).all(|w| w[0] == w[1]),
            ProjectorKind::AllSame { particles: Some(ps) } => ps.iter().all(|&p| label.side(p) == label.side(ps[0])),
            ProjectorKind::Sd { pair: [i, j], third } => {
                label.side(*i) == label.side(*j) && label.side(*third) != label.side(*i)
            }
        }
    }

    /// Display name such as `Π12_same` or `Π1^LΠ2^L`.
    pub fn display(&self, n_particles: usize, labeling: Labeling) -> String {
        let wide = n_particles >= 10;
        let join = |ps: &[usize]| {
            let parts: Vec<String> = ps.iter().map(usize::to_string).collect();
            parts.join(if wide { "," } else { "" })
        };
        match self {
            ProjectorKind::Identity => "1".to_string(),
            ProjectorKind::Box { at } => at.iter().fold(String::new(), |mut s, (p, side)| {
                let _ = write!(s, "Π{p}^{}", side.symbol(labeling));
                s
            }),
            ProjectorKind::PairSame { pair } => format!("Π{}_same", join(pair)),
            ProjectorKind::PairDiff { pair } => format!("Π{}_diff", join(pair)),
            ProjectorKind::AllSame { particles } => {
                let ps = particles.clone().unwrap_or_else(|| (1..=n_particles).collect());
                format!("Π{}_same", join(&ps))
            }
            ProjectorKind::Sd { pair, third } => format!("Π{},{third}_sd", join(pair)),
        }
    }
}

/// A projector condition bound to a particle count.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectorSpec {
    kind: ProjectorKind,
    n_particles: usize,
}

impl ProjectorSpec {
    pub fn new(kind: ProjectorKind, n_particles: usize) -> Result<Self> {
        check_particles(n_particles)?;
        kind.validate(n_particles)?;
        Ok(ProjectorSpec { kind, n_particles })
    }

    pub fn kind(&self) -> &ProjectorKind {
        &self.kind
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn display(&self, labeling: Labeling) -> String {
        self.kind.display(self.n_particles, labeling)
    }
}

/// Diagonal 0/1 operator selecting the basis labels that satisfy `spec`.
pub fn build_projector(spec: &ProjectorSpec) -> Operator {
    let diagonal = BasisLabel::all(spec.n_particles)
        .expect("particle count validated at construction")
        .iter()
        .map(|label| Amplitude::new(if spec.kind.accepts(label) { 1.0 } else { 0.0 }, 0.0))
        .collect();
    Operator::from_diagonal(spec.n_particles, diagonal).expect("diagonal sized from the label set")
}

#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianTerm {
    pub coefficient: Amplitude,
    pub projector: ProjectorSpec,
}

/// Weighted sum of projectors. The coupling constant is carried by each
/// term's coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct HamiltonianSpec {
    pub n_particles: usize,
    pub terms: Vec<HamiltonianTerm>,
}

impl HamiltonianSpec {
    pub fn new(n_particles: usize) -> Self {
        HamiltonianSpec {
            n_particles,
            terms: Vec::new(),
        }
    }

    pub fn term(mut self, coefficient: Amplitude, projector: ProjectorSpec) -> Self {
        self.terms.push(HamiltonianTerm { coefficient, projector });
        self
    }
}

pub fn build_hamiltonian(spec: &HamiltonianSpec) -> Result<Operator> {
    let mut total = Operator::zero(spec.n_particles)?;
    for term in &spec.terms {
        if term.projector.n_particles != spec.n_particles {
            return Err(Error::DimensionMismatch {
                left: 1 << spec.n_particles,
                right: 1 << term.projector.n_particles,
            });
        }
        total = total.checked_add(&build_projector(&term.projector).scaled(term.coefficient))?;
    }
    Ok(total)
}

/// Defect norms (max-entry) behind [`is_projector`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectorDiagnostics {
    pub hermiticity_defect: f64,
    pub idempotency_defect: f64,
}

impl ProjectorDiagnostics {
    pub fn of(op: &Operator) -> Self {
        let hermiticity_defect = op.max_abs_diff(&op.adjoint()).expect("same dimension");
        let idempotency_defect = (op * op).max_abs_diff(op).expect("same dimension");
        ProjectorDiagnostics {
            hermiticity_defect,
            idempotency_defect,
        }
    }

    pub fn is_projector(&self, tol: f64) -> bool {
        self.hermiticity_defect <= tol && self.idempotency_defect <= tol
    }
}

/// Hermitian and idempotent within the global tolerance.
pub fn is_projector(op: &Operator) -> bool {
    is_projector_within(op, ZERO_TOLERANCE)
}

pub fn is_projector_within(op: &Operator, tol: f64) -> bool {
    op.is_hermitian(tol) && ProjectorDiagnostics::of(op).idempotency_defect <= tol
}

pub fn are_orthogonal(a: &Operator, b: &Operator) -> Result<bool> {
    are_orthogonal_within(a, b, ZERO_TOLERANCE)
}

/// Both products `a·b` and `b·a` vanish.
pub fn are_orthogonal_within(a: &Operator, b: &Operator, tol: f64) -> Result<bool> {
    Ok(a.checked_mul(b)?.max_abs() <= tol && b.checked_mul(a)?.max_abs() <= tol)
}

pub fn is_resolution_of_identity(ops: &[Operator]) -> Result<bool> {
    is_resolution_of_identity_within(ops, ZERO_TOLERANCE)
}

/// Projectors, pairwise orthogonal, summing to the identity.
pub fn is_resolution_of_identity_within(ops: &[Operator], tol: f64) -> Result<bool> {
    let first = ops.first().ok_or(Error::Empty("measurement set"))?;
    let n = first.n_particles();
    let total = Operator::sum(n, ops)?;
    if !ops.iter().all(|op| is_projector_within(op, tol)) {
        return Ok(false);
    }
    for (k, a) in ops.iter().enumerate() {
        for b in &ops[k + 1..] {
            if !are_orthogonal_within(a, b, tol)? {
                return Ok(false);
            }
        }
    }
    Ok(total.max_abs_diff(&Operator::identity(n)?)? <= tol)
}

/// Renames the basis from boxes to spin-z states without touching numbers:
/// `L → ↑`, `R → ⇓`, `|±⟩ → |x,±⟩`, `|±i⟩ → |y,±⟩`.
pub trait Relabel {
    fn relabel_to_spin(&self) -> Self;
}

impl Relabel for Ket {
    fn relabel_to_spin(&self) -> Self {
        self.clone().with_labeling(Labeling::Spin)
    }
}

impl Relabel for Operator {
    fn relabel_to_spin(&self) -> Self {
        self.clone().with_labeling(Labeling::Spin)
    }
}
