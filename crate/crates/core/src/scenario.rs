//! Scenario files, the builtin scenarios, and report assembly.
//!
//! A scenario fixes a particle count, product pre- and postselected states,
//! and a list of queries. Running it yields one [`QueryRecord`] per query, in
//! order; a failing query produces an error record and does not stop the run.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::engine::{Evaluator, MeasurementSet, PrePostSelection};
use crate::error::{Error, Result};
use crate::hilbert::{
    apply, check_particles, is_eigenstate_within, tensor, Amplitude, BasisLabel, Ket, Labeling, Operator, Side,
    SingleState, MAX_PARTICLES,
};
use crate::projector::{
    are_orthogonal_within, build_hamiltonian, build_projector, is_projector_within, HamiltonianSpec,
    ProjectorDiagnostics, ProjectorKind, ProjectorSpec, Relabel,
};

/// Single-particle state in a scenario file: a preset name or `(cL, cR)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateSpec {
    Preset(Preset),
    #[allow(non_snake_case)]
    Explicit {
        cL: [f64; 2],
        cR: [f64; 2],
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Preset {
    L,
    R,
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "+i")]
    PlusI,
    #[serde(rename = "-i")]
    MinusI,
}

impl StateSpec {
    pub fn single_state(&self) -> SingleState {
        match *self {
            StateSpec::Preset(Preset::L) => SingleState::L,
            StateSpec::Preset(Preset::R) => SingleState::R,
            StateSpec::Preset(Preset::Plus) => SingleState::Plus,
            StateSpec::Preset(Preset::Minus) => SingleState::Minus,
            StateSpec::Preset(Preset::PlusI) => SingleState::PlusI,
            StateSpec::Preset(Preset::MinusI) => SingleState::MinusI,
            StateSpec::Explicit { cL, cR } => {
                SingleState::Explicit(Amplitude::new(cL[0], cL[1]), Amplitude::new(cR[0], cR[1]))
            }
        }
    }
}

/// A general state: a product of single-particle states or a normalized
/// superposition of basis labels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KetSpec {
    Product(Vec<StateSpec>),
    Superposition { superposition: BTreeMap<String, [f64; 2]> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    #[serde(default = "unit_coeff")]
    pub coeff: [f64; 2],
    pub projector: ProjectorKind,
}

fn unit_coeff() -> [f64; 2] {
    [1.0, 0.0]
}

/// An operator: a bare projector or a weighted sum of projectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    Projector(ProjectorKind),
    Sum(Vec<TermSpec>),
}

impl From<ProjectorKind> for OperatorSpec {
    fn from(kind: ProjectorKind) -> Self {
        OperatorSpec::Projector(kind)
    }
}

impl OperatorSpec {
    pub fn sum(kinds: impl IntoIterator<Item = ProjectorKind>) -> Self {
        OperatorSpec::Sum(
            kinds
                .into_iter()
                .map(|projector| TermSpec {
                    coeff: unit_coeff(),
                    projector,
                })
                .collect(),
        )
    }

    fn terms(&self) -> Vec<TermSpec> {
        match self {
            OperatorSpec::Projector(kind) => vec![TermSpec {
                coeff: unit_coeff(),
                projector: kind.clone(),
            }],
            OperatorSpec::Sum(terms) => terms.clone(),
        }
    }

    pub fn hamiltonian(&self, n_particles: usize) -> Result<HamiltonianSpec> {
        self.terms()
            .into_iter()
            .try_fold(HamiltonianSpec::new(n_particles), |h, t| {
                let coeff = Amplitude::new(t.coeff[0], t.coeff[1]);
                Ok(h.term(coeff, ProjectorSpec::new(t.projector, n_particles)?))
            })
    }

    pub fn display(&self, n_particles: usize, labeling: Labeling) -> String {
        let terms = self.terms();
        if terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = terms
            .iter()
            .map(|t| {
                let name = t.projector.display(n_particles, labeling);
                if t.coeff == unit_coeff() {
                    name
                } else {
                    format!("{}·{name}", Amplitude::new(t.coeff[0], t.coeff[1]))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum PredicateQuery {
    IsProjector {
        operator: OperatorSpec,
    },
    AreOrthogonal {
        a: OperatorSpec,
        b: OperatorSpec,
    },
    ResolutionOfIdentity {
        set: Vec<OperatorSpec>,
    },
    IsEigenstate {
        operator: OperatorSpec,
        state: KetSpec,
        eigenvalue: [f64; 2],
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Query {
    AblAmplitude { projector: ProjectorKind },
    AblProbabilities { set: Vec<ProjectorKind> },
    WeakValue { projector: ProjectorKind },
    WeakValueSum { projectors: Vec<ProjectorKind> },
    DetailedVsGlobal { set: Vec<ProjectorKind> },
    TransitionElement { hamiltonian: OperatorSpec },
    Predicate(PredicateQuery),
}

/// A query plus an optional free-text note echoed into the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuerySpec {
    #[serde(flatten)]
    pub query: Query,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl From<Query> for QuerySpec {
    fn from(query: Query) -> Self {
        QuerySpec { query, note: None }
    }
}

impl QuerySpec {
    pub fn noted(query: Query, note: &str) -> Self {
        QuerySpec {
            query,
            note: Some(note.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub particles: usize,
    #[serde(default, skip_serializing_if = "is_box")]
    pub labeling: Labeling,
    pub pre: Vec<StateSpec>,
    pub post: Vec<StateSpec>,
    pub queries: Vec<QuerySpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn is_box(labeling: &Labeling) -> bool {
    *labeling == Labeling::Box
}

fn schema(path: impl Into<String>, message: impl ToString) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.to_string(),
    }
}

impl Scenario {
    /// Parses and validates a scenario document.
    pub fn from_json(text: &str) -> Result<Scenario> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let scenario: Scenario = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            schema(if path == "." { "$".to_string() } else { path }, e.into_inner())
        })?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serializes")
    }

    /// Semantic checks that the JSON schema alone cannot express.
    pub fn validate(&self) -> Result<()> {
        let n = self.particles;
        if n == 0 || n > MAX_PARTICLES {
            return Err(schema("particles", format!("{n} outside 1..={MAX_PARTICLES}")));
        }
        for (field, states) in [("pre", &self.pre), ("post", &self.post)] {
            if states.len() != n {
                return Err(schema(field, format!("expected {n} states, got {}", states.len())));
            }
            for (k, s) in states.iter().enumerate() {
                s.single_state()
                    .coefficients()
                    .map_err(|e| schema(format!("{field}[{k}]"), e))?;
            }
        }
        for (k, q) in self.queries.iter().enumerate() {
            validate_query(&q.query, n).map_err(|(sub, e)| schema(format!("queries[{k}]{sub}"), e))?;
        }
        Ok(())
    }
}

type Located = (String, Error);

fn at(sub: impl Into<String>) -> impl FnOnce(Error) -> Located {
    let sub = sub.into();
    move |e| (sub, e)
}

fn validate_kinds(field: &str, kinds: &[ProjectorKind], n: usize) -> std::result::Result<(), Located> {
    for (k, kind) in kinds.iter().enumerate() {
        kind.validate(n).map_err(at(format!(".{field}[{k}]")))?;
    }
    Ok(())
}

fn validate_operator(field: &str, op: &OperatorSpec, n: usize) -> std::result::Result<(), Located> {
    op.hamiltonian(n).map(|_| ()).map_err(at(format!(".{field}")))
}

fn validate_query(query: &Query, n: usize) -> std::result::Result<(), Located> {
    match query {
        Query::AblAmplitude { projector } | Query::WeakValue { projector } => {
            projector.validate(n).map_err(at(".projector"))
        }
        Query::AblProbabilities { set } | Query::DetailedVsGlobal { set } => validate_kinds("set", set, n),
        Query::WeakValueSum { projectors } => validate_kinds("projectors", projectors, n),
        Query::TransitionElement { hamiltonian } => validate_operator("hamiltonian", hamiltonian, n),
        Query::Predicate(p) => match p {
            PredicateQuery::IsProjector { operator } => validate_operator("operator", operator, n),
            PredicateQuery::AreOrthogonal { a, b } => {
                validate_operator("a", a, n)?;
                validate_operator("b", b, n)
            }
            PredicateQuery::ResolutionOfIdentity { set } => {
                if set.is_empty() {
                    return Err((".set".into(), Error::Empty("measurement set")));
                }
                set.iter()
                    .enumerate()
                    .try_for_each(|(k, op)| validate_operator(&format!("set[{k}]"), op, n))
            }
            PredicateQuery::IsEigenstate { operator, state, .. } => {
                validate_operator("operator", operator, n)?;
                build_ket(state, n).map(|_| ()).map_err(at(".state"))
            }
        },
    }
}

fn build_product(states: &[StateSpec]) -> Result<Ket> {
    let kets = states
        .iter()
        .map(|s| s.single_state().ket())
        .collect::<Result<Vec<_>>>()?;
    tensor(&kets)
}

fn build_ket(spec: &KetSpec, n: usize) -> Result<Ket> {
    match spec {
        KetSpec::Product(states) => {
            if states.len() != n {
                return Err(Error::WrongLength {
                    expected: n,
                    got: states.len(),
                });
            }
            build_product(states)
        }
        KetSpec::Superposition { superposition } => {
            let dim = check_particles(n)?;
            let mut amplitudes = vec![Amplitude::new(0.0, 0.0); dim];
            for (label, [re, im]) in superposition {
                let label = BasisLabel::parse(label)?;
                if label.n_particles() != n {
                    return Err(Error::InvalidLabel(label.to_string()));
                }
                amplitudes[label.index()] += Amplitude::new(*re, *im);
            }
            Ket::normalized(n, amplitudes)
        }
    }
}

/// Builtin scenario catalogue, in stable order.
pub fn builtin_scenarios() -> Vec<Scenario> {
    vec![
        pigeonhole3(),
        transition(),
        detailed_vs_global(),
        coherent_enhancement(),
        spin_relabel(),
        eigenspace_degeneracy(),
    ]
}

pub fn lookup(name: &str) -> Result<Scenario> {
    builtin_scenarios()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::ScenarioNotFound(name.to_string()))
}

fn sd_set() -> Vec<ProjectorKind> {
    vec![
        ProjectorKind::sd(1, 2, 3),
        ProjectorKind::sd(2, 3, 1),
        ProjectorKind::sd(3, 1, 2),
        ProjectorKind::all_same(),
    ]
}

fn box_pairs() -> Vec<ProjectorKind> {
    vec![
        ProjectorKind::boxes(&[(1, Side::L), (2, Side::L)]),
        ProjectorKind::boxes(&[(1, Side::R), (2, Side::R)]),
    ]
}

fn pigeonhole3() -> Scenario {
    use ProjectorKind as K;
    let pairs = [(1, 2), (2, 3), (3, 1)];
    let mut queries: Vec<QuerySpec> = pairs
        .iter()
        .map(|&(i, j)| {
            QuerySpec::noted(
                Query::AblAmplitude {
                    projector: K::pair_same(i, j),
                },
                "no pair shares a box",
            )
        })
        .collect();
    queries.extend([
        QuerySpec::noted(
            Query::AblProbabilities {
                set: vec![K::pair_same(1, 2), K::pair_diff(1, 2)],
            },
            "pair (1,2) found only in different boxes",
        ),
        QuerySpec::noted(
            Query::AblAmplitude {
                projector: K::all_same(),
            },
            "all three in one box: non-vanishing",
        ),
        QuerySpec::noted(
            Query::AblAmplitude {
                projector: K::sd(1, 2, 3),
            },
            "pair together, third apart: non-vanishing",
        ),
        QuerySpec::noted(
            Query::Predicate(PredicateQuery::IsProjector {
                operator: OperatorSpec::sum([K::pair_same(1, 2), K::pair_same(2, 3)]),
            }),
            "either pair together: not a projector",
        ),
        QuerySpec::noted(
            Query::Predicate(PredicateQuery::AreOrthogonal {
                a: K::sd(1, 2, 3).into(),
                b: K::sd(2, 3, 1).into(),
            }),
            "sd projectors are orthogonal",
        ),
        QuerySpec::noted(
            Query::Predicate(PredicateQuery::AreOrthogonal {
                a: K::pair_same(1, 2).into(),
                b: K::pair_same(2, 3).into(),
            }),
            "pair projectors overlap",
        ),
        QuerySpec::noted(
            Query::Predicate(PredicateQuery::ResolutionOfIdentity {
                set: sd_set().into_iter().map(OperatorSpec::from).collect(),
            }),
            "sd set plus all-same is a complete measurement",
        ),
        QuerySpec::noted(
            Query::AblProbabilities { set: sd_set() },
            "uniform over the sd measurement",
        ),
        Query::WeakValue { projector: K::Identity }.into(),
    ]);
    for (projector, note) in [
        (K::pair_same(1, 2), "weak value vanishes with its ABL amplitude"),
        (K::pair_diff(1, 2), "complement of the vanishing pair weak value"),
        (K::all_same(), "non-vanishing"),
        (K::sd(1, 2, 3), "non-vanishing"),
    ] {
        queries.push(QuerySpec::noted(Query::WeakValue { projector }, note));
    }
    queries.extend([
        QuerySpec::noted(
            Query::WeakValueSum {
                projectors: vec![K::pair_same(1, 2), K::pair_same(2, 3)],
            },
            "adding weak values of overlapping projectors is allowed",
        ),
        QuerySpec::noted(
            Query::WeakValueSum { projectors: sd_set() },
            "sum rule over a resolution of identity",
        ),
    ]);
    Scenario {
        name: "pigeonhole3".into(),
        description: Some("three particles, two boxes: pair, triple and sd correlations".into()),
        particles: 3,
        labeling: Labeling::Box,
        pre: vec![StateSpec::Preset(Preset::Plus); 3],
        post: vec![StateSpec::Preset(Preset::PlusI); 3],
        queries,
        notes: vec![
            "preselection |+>⊗3, postselection |+i>⊗3".into(),
            "postselection fixed to |+i>⊗3; with post = pre = |+>⊗3 each pair amplitude would be 1/2, not 0".into(),
        ],
    }
}

fn transition() -> Scenario {
    use ProjectorKind as K;
    Scenario {
        name: "transition".into(),
        description: Some("transition elements of pair-interaction Hamiltonians".into()),
        particles: 3,
        labeling: Labeling::Box,
        pre: vec![StateSpec::Preset(Preset::Plus); 3],
        post: vec![StateSpec::Preset(Preset::PlusI); 3],
        queries: vec![
            QuerySpec::noted(
                Query::TransitionElement {
                    hamiltonian: OperatorSpec::sum([K::pair_same(1, 2), K::pair_same(2, 3), K::pair_same(3, 1)]),
                },
                "same-box pair interaction: vanishes",
            ),
            QuerySpec::noted(
                Query::TransitionElement {
                    hamiltonian: OperatorSpec::sum([K::sd(1, 2, 3), K::sd(2, 3, 1), K::sd(3, 1, 2)]),
                },
                "sd interaction: non-vanishing",
            ),
        ],
        notes: vec!["coupling constant set to 1; transition-type quantities, not presence".into()],
    }
}

fn detailed_vs_global() -> Scenario {
    Scenario {
        name: "detailed-vs-global".into(),
        description: Some("incoherent versus coherent sums on the pigeonhole selection".into()),
        particles: 3,
        labeling: Labeling::Box,
        pre: vec![StateSpec::Preset(Preset::Plus); 3],
        post: vec![StateSpec::Preset(Preset::PlusI); 3],
        queries: vec![
            QuerySpec::noted(Query::DetailedVsGlobal { set: box_pairs() }, "coherent sum suppressed"),
            QuerySpec::noted(
                Query::DetailedVsGlobal {
                    set: vec![ProjectorKind::Identity],
                },
                "singleton: equal",
            ),
        ],
        notes: vec![],
    }
}

fn coherent_enhancement() -> Scenario {
    Scenario {
        name: "coherent-enhancement".into(),
        description: Some("two particles, pre = post = |+>⊗2: coherent sum enhanced".into()),
        particles: 2,
        labeling: Labeling::Box,
        pre: vec![StateSpec::Preset(Preset::Plus); 2],
        post: vec![StateSpec::Preset(Preset::Plus); 2],
        queries: vec![QuerySpec::noted(
            Query::DetailedVsGlobal { set: box_pairs() },
            "coherent sum enhanced",
        )],
        notes: vec![],
    }
}

fn spin_relabel() -> Scenario {
    let base = pigeonhole3();
    Scenario {
        name: "spin-relabel".into(),
        description: Some("pigeonhole3 with boxes read as spin-z states".into()),
        labeling: Labeling::Spin,
        notes: vec!["L → ↑, R → ⇓, |±> → |x,±>, |±i> → |y,±>; numbers identical to pigeonhole3".into()],
        ..base
    }
}

fn eigenspace_degeneracy() -> Scenario {
    let same = OperatorSpec::from(ProjectorKind::pair_same(1, 2));
    let eigen = |state: KetSpec, note: &str| {
        QuerySpec::noted(
            Query::Predicate(PredicateQuery::IsEigenstate {
                operator: same.clone(),
                state,
                eigenvalue: [1.0, 0.0],
            }),
            note,
        )
    };
    let basis = |label: &str| KetSpec::Superposition {
        superposition: BTreeMap::from([(label.to_string(), [1.0, 0.0])]),
    };
    Scenario {
        name: "eigenspace-degeneracy".into(),
        description: Some("degenerate eigenvalue-1 eigenspace of the two-particle same-box projector".into()),
        particles: 2,
        labeling: Labeling::Box,
        pre: vec![StateSpec::Preset(Preset::Plus); 2],
        post: vec![StateSpec::Preset(Preset::Plus); 2],
        queries: vec![
            eigen(
                KetSpec::Product(vec![StateSpec::Preset(Preset::L); 2]),
                "unentangled eigenstate",
            ),
            eigen(
                KetSpec::Product(vec![StateSpec::Preset(Preset::R); 2]),
                "unentangled eigenstate",
            ),
            eigen(
                KetSpec::Superposition {
                    superposition: BTreeMap::from([("LL".into(), [1.0, 0.0]), ("RR".into(), [1.0, 0.0])]),
                },
                "entangled eigenstate",
            ),
            eigen(basis("LR"), "not an eigenstate"),
        ],
        notes: vec![],
    }
}

/// Complex result plus the derived magnitudes and the vanishing verdict.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AmplitudeValue {
    pub value: Amplitude,
    pub magnitude: f64,
    pub magnitude_squared: f64,
    pub vanishing: bool,
}

impl AmplitudeValue {
    pub fn new(value: Amplitude, tol: f64) -> Self {
        AmplitudeValue {
            value,
            magnitude: value.norm(),
            magnitude_squared: value.norm_sqr(),
            vanishing: value.norm() <= tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledAmplitude {
    pub label: String,
    pub amplitude: AmplitudeValue,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityEntry {
    pub label: String,
    pub amplitude: AmplitudeValue,
    pub probability: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    /// ABL and weak-value quantities about intermediate presence.
    Presence,
    /// Matrix elements of an interaction Hamiltonian.
    Transition,
    Predicate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Amplitude {
        amplitude: AmplitudeValue,
    },
    Probabilities {
        entries: Vec<ProbabilityEntry>,
        normalization: f64,
    },
    WeakValue {
        weak_value: AmplitudeValue,
        numerator: AmplitudeValue,
    },
    WeakValueSum {
        termwise: AmplitudeValue,
        summed_operator: AmplitudeValue,
        terms: Vec<LabeledAmplitude>,
    },
    DetailedVsGlobal {
        detailed: f64,
        global: f64,
        terms: Vec<LabeledAmplitude>,
    },
    Transition {
        amplitude: AmplitudeValue,
    },
    Predicate {
        verdict: bool,
        measures: BTreeMap<String, f64>,
    },
    Error {
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub index: usize,
    pub label: String,
    pub category: Category,
    pub query: QuerySpec,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl QueryRecord {
    pub fn is_error(&self) -> bool {
        matches!(self.outcome, Outcome::Error { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub scenario: String,
    pub particles: usize,
    pub labeling: Labeling,
    pub tolerance: f64,
    pub pre: Vec<String>,
    pub post: Vec<String>,
    pub notes: Vec<String>,
    pub records: Vec<QueryRecord>,
}

impl ScenarioReport {
    pub fn has_errors(&self) -> bool {
        self.records.iter().any(QueryRecord::is_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<ScenarioReport> {
        serde_json::from_str(text).map_err(|e| schema("$", e))
    }
}

/// Evaluates a scenario's queries against its selection.
pub struct Runner<'a> {
    scenario: &'a Scenario,
    sel: PrePostSelection,
    eval: Evaluator,
}

impl<'a> Runner<'a> {
    pub fn new(scenario: &'a Scenario, tol: f64) -> Result<Self> {
        scenario.validate()?;
        let mut pre = build_product(&scenario.pre)?;
        let mut post = build_product(&scenario.post)?;
        if scenario.labeling == Labeling::Spin {
            pre = pre.relabel_to_spin();
            post = post.relabel_to_spin();
        }
        Ok(Runner {
            scenario,
            sel: PrePostSelection::new(pre, post)?,
            eval: Evaluator::new(tol),
        })
    }

    pub fn selection(&self) -> &PrePostSelection {
        &self.sel
    }

    fn n(&self) -> usize {
        self.scenario.particles
    }

    fn labeling(&self) -> Labeling {
        self.scenario.labeling
    }

    fn relabeled(&self, op: Operator) -> Operator {
        match self.labeling() {
            Labeling::Box => op,
            Labeling::Spin => op.relabel_to_spin(),
        }
    }

    pub fn projector(&self, kind: &ProjectorKind) -> Result<Operator> {
        Ok(self.relabeled(build_projector(&ProjectorSpec::new(kind.clone(), self.n())?)))
    }

    pub fn operator(&self, spec: &OperatorSpec) -> Result<Operator> {
        Ok(self.relabeled(build_hamiltonian(&spec.hamiltonian(self.n())?)?))
    }

    fn name(&self, kind: &ProjectorKind) -> String {
        kind.display(self.n(), self.labeling())
    }

    fn names(&self, kinds: &[ProjectorKind]) -> String {
        let names: Vec<String> = kinds.iter().map(|k| self.name(k)).collect();
        format!("{{{}}}", names.join(", "))
    }

    fn amp(&self, z: Amplitude) -> AmplitudeValue {
        AmplitudeValue::new(z, self.eval.tolerance())
    }

    fn label(&self, query: &Query) -> String {
        let n = self.n();
        let lab = self.labeling();
        match query {
            Query::AblAmplitude { projector } => format!("⟨f|{}|in⟩", self.name(projector)),
            Query::AblProbabilities { set } => format!("ABL {}", self.names(set)),
            Query::WeakValue { projector } => format!("({})_w", self.name(projector)),
            Query::WeakValueSum { projectors } => format!("Σ weak {}", self.names(projectors)),
            Query::DetailedVsGlobal { set } => format!("detailed/global {}", self.names(set)),
            Query::TransitionElement { hamiltonian } => format!("⟨f|{}|in⟩", hamiltonian.display(n, lab)),
            Query::Predicate(p) => match p {
                PredicateQuery::IsProjector { operator } => format!("is_projector({})", operator.display(n, lab)),
                PredicateQuery::AreOrthogonal { a, b } => {
                    format!("are_orthogonal({}, {})", a.display(n, lab), b.display(n, lab))
                }
                PredicateQuery::ResolutionOfIdentity { set } => {
                    let names: Vec<String> = set.iter().map(|o| o.display(n, lab)).collect();
                    format!("resolution_of_identity({{{}}})", names.join(", "))
                }
                PredicateQuery::IsEigenstate { operator, state, .. } => {
                    format!(
                        "is_eigenstate({}, {})",
                        operator.display(n, lab),
                        self.describe_ket(state)
                    )
                }
            },
        }
    }

    fn describe_ket(&self, spec: &KetSpec) -> String {
        match spec {
            KetSpec::Product(states) => states
                .iter()
                .map(|s| format!("|{}⟩", s.single_state().name(self.labeling())))
                .collect(),
            KetSpec::Superposition { superposition } => {
                let parts: Vec<String> = superposition
                    .keys()
                    .map(|label| match BasisLabel::parse(label) {
                        Ok(l) => format!("|{}⟩", l.display(self.labeling())),
                        Err(_) => label.clone(),
                    })
                    .collect();
                parts.join("+")
            }
        }
    }

    fn evaluate(&self, query: &Query) -> Result<Outcome> {
        let sel = &self.sel;
        let eval = &self.eval;
        let tol = eval.tolerance();
        Ok(match query {
            Query::AblAmplitude { projector } => Outcome::Amplitude {
                amplitude: self.amp(eval.abl_amplitude(sel, &self.projector(projector)?)?),
            },
            Query::AblProbabilities { set } => {
                let members = set
                    .iter()
                    .map(|k| Ok((self.name(k), self.projector(k)?)))
                    .collect::<Result<Vec<_>>>()?;
                let set = MeasurementSet::new(members)?;
                let result = eval.abl_probabilities(sel, &set)?;
                let entries = set
                    .labels()
                    .iter()
                    .zip(result.amplitudes.iter().zip(&result.probabilities))
                    .map(|(label, (a, p))| ProbabilityEntry {
                        label: label.clone(),
                        amplitude: self.amp(*a),
                        probability: *p,
                    })
                    .collect();
                Outcome::Probabilities {
                    entries,
                    normalization: result.normalization,
                }
            }
            Query::WeakValue { projector } => {
                let op = self.projector(projector)?;
                Outcome::WeakValue {
                    weak_value: self.amp(eval.weak_value(sel, &op)?),
                    numerator: self.amp(eval.abl_amplitude(sel, &op)?),
                }
            }
            Query::WeakValueSum { projectors } => {
                let ops = projectors
                    .iter()
                    .map(|k| self.projector(k))
                    .collect::<Result<Vec<_>>>()?;
                let sum = eval.weak_value_sum(sel, &ops)?;
                let terms = projectors
                    .iter()
                    .zip(&ops)
                    .map(|(k, op)| {
                        Ok(LabeledAmplitude {
                            label: self.name(k),
                            amplitude: self.amp(eval.weak_value(sel, op)?),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Outcome::WeakValueSum {
                    termwise: self.amp(sum.termwise),
                    summed_operator: self.amp(sum.summed_operator),
                    terms,
                }
            }
            Query::DetailedVsGlobal { set } => {
                let ops = set.iter().map(|k| self.projector(k)).collect::<Result<Vec<_>>>()?;
                let detailed = eval.detailed_probability(sel, &ops)?;
                let global = eval.global_probability(sel, &ops)?;
                let terms = set
                    .iter()
                    .zip(&ops)
                    .map(|(k, op)| {
                        Ok(LabeledAmplitude {
                            label: self.name(k),
                            amplitude: self.amp(eval.abl_amplitude(sel, op)?),
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Outcome::DetailedVsGlobal {
                    detailed,
                    global,
                    terms,
                }
            }
            Query::TransitionElement { hamiltonian } => Outcome::Transition {
                amplitude: self.amp(eval.transition_element(sel, &self.operator(hamiltonian)?)?),
            },
            Query::Predicate(p) => self.predicate(p, tol)?,
        })
    }

    fn predicate(&self, p: &PredicateQuery, tol: f64) -> Result<Outcome> {
        let mut measures = BTreeMap::new();
        let verdict = match p {
            PredicateQuery::IsProjector { operator } => {
                let op = self.operator(operator)?;
                let diag = ProjectorDiagnostics::of(&op);
                measures.insert("hermiticity_defect".into(), diag.hermiticity_defect);
                measures.insert("idempotency_defect".into(), diag.idempotency_defect);
                is_projector_within(&op, tol)
            }
            PredicateQuery::AreOrthogonal { a, b } => {
                let (a, b) = (self.operator(a)?, self.operator(b)?);
                measures.insert("product_ab".into(), a.checked_mul(&b)?.max_abs());
                measures.insert("product_ba".into(), b.checked_mul(&a)?.max_abs());
                are_orthogonal_within(&a, &b, tol)?
            }
            PredicateQuery::ResolutionOfIdentity { set } => {
                let ops = set.iter().map(|o| self.operator(o)).collect::<Result<Vec<_>>>()?;
                let total = Operator::sum(self.n(), &ops)?;
                measures.insert(
                    "identity_defect".into(),
                    total.max_abs_diff(&Operator::identity(self.n())?)?,
                );
                crate::projector::is_resolution_of_identity_within(&ops, tol)?
            }
            PredicateQuery::IsEigenstate {
                operator,
                state,
                eigenvalue,
            } => {
                let op = self.operator(operator)?;
                let ket = build_ket(state, self.n())?;
                let lambda = Amplitude::new(eigenvalue[0], eigenvalue[1]);
                let residual = apply(&op, &ket)?.checked_sub(&ket.to_vector().scaled(lambda))?.norm();
                measures.insert("residual".into(), residual);
                is_eigenstate_within(&op, &ket, lambda, tol)?
            }
        };
        Ok(Outcome::Predicate { verdict, measures })
    }

    pub fn run(&self) -> ScenarioReport {
        let records = self
            .scenario
            .queries
            .iter()
            .enumerate()
            .map(|(index, spec)| {
                let outcome = self
                    .evaluate(&spec.query)
                    .unwrap_or_else(|e| Outcome::Error { message: e.to_string() });
                QueryRecord {
                    index,
                    label: self.label(&spec.query),
                    category: category(&spec.query),
                    query: spec.clone(),
                    outcome,
                }
            })
            .collect();
        let names = |states: &[StateSpec]| states.iter().map(|s| s.single_state().name(self.labeling())).collect();
        ScenarioReport {
            scenario: self.scenario.name.clone(),
            particles: self.n(),
            labeling: self.labeling(),
            tolerance: self.eval.tolerance(),
            pre: names(&self.scenario.pre),
            post: names(&self.scenario.post),
            notes: self.scenario.notes.clone(),
            records,
        }
    }
}

fn category(query: &Query) -> Category {
    match query {
        Query::TransitionElement { .. } => Category::Transition,
        Query::Predicate(_) => Category::Predicate,
        _ => Category::Presence,
    }
}

/// Runs every query of `scenario` with zero threshold `tol`.
pub fn run_scenario(scenario: &Scenario, tol: f64) -> Result<ScenarioReport> {
    Ok(Runner::new(scenario, tol)?.run())
}
