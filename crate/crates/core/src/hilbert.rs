//! Dense complex linear algebra on the `2^n`-dimensional space of `n`
//! particles, each of which sits in one of two boxes.
//!
//! Basis ordering: a label `b1 b2 … bn` maps to the index whose binary digits
//! are `b1 … bn` with `L = 0` and `R = 1`, particle 1 being the most
//! significant digit.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Complex scalar used for every amplitude and matrix entry.
pub type Amplitude = Complex64;

/// Global threshold below which a magnitude counts as zero.
pub const ZERO_TOLERANCE: f64 = 1e-12;

/// Largest supported particle count (dimension 4096).
pub const MAX_PARTICLES: usize = 12;

pub(crate) fn check_particles(n: usize) -> Result<usize> {
    if n == 0 || n > MAX_PARTICLES {
        return Err(Error::ParticleCount(n));
    }
    Ok(1 << n)
}

fn check_finite(values: &[Amplitude]) -> Result<()> {
    if values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn check_dims(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { left, right })
    }
}

/// One of the two boxes a particle can occupy.
///
/// Under the spin reading `L` is spin-up along z and `R` spin-down.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn bit(self) -> usize {
        match self {
            Side::L => 0,
            Side::R => 1,
        }
    }

    pub fn from_bit(bit: usize) -> Side {
        if bit & 1 == 0 {
            Side::L
        } else {
            Side::R
        }
    }

    pub fn symbol(self, labeling: Labeling) -> &'static str {
        match (labeling, self) {
            (Labeling::Box, Side::L) => "L",
            (Labeling::Box, Side::R) => "R",
            (Labeling::Spin, Side::L) => "↑",
            (Labeling::Spin, Side::R) => "⇓",
        }
    }
}

/// Which names are attached to the two single-particle basis states.
///
/// Switching labeling never touches numeric content.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Labeling {
    #[default]
    Box,
    Spin,
}

/// Basis label `b1 … bn`, one box per particle.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisLabel(Vec<Side>);

impl BasisLabel {
    pub fn new(sides: Vec<Side>) -> Result<Self> {
        check_particles(sides.len())?;
        Ok(BasisLabel(sides))
    }

    pub fn from_index(index: usize, n_particles: usize) -> Result<Self> {
        let dim = check_particles(n_particles)?;
        if index >= dim {
            return Err(Error::InvalidLabel(format!(
                "index {index} for {n_particles} particles"
            )));
        }
        let sides = (0..n_particles)
            .map(|k| Side::from_bit(index >> (n_particles - 1 - k)))
            .collect();
        Ok(BasisLabel(sides))
    }

    /// Parses a string over `{L, R}`.
    pub fn parse(s: &str) -> Result<Self> {
        let sides = s
            .chars()
            .map(|c| match c {
                'L' => Ok(Side::L),
                'R' => Ok(Side::R),
                _ => Err(Error::InvalidLabel(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        if sides.is_empty() {
            return Err(Error::InvalidLabel(s.to_string()));
        }
        BasisLabel::new(sides)
    }

    pub fn index(&self) -> usize {
        self.0.iter().fold(0, |acc, side| (acc << 1) | side.bit())
    }

    pub fn n_particles(&self) -> usize {
        self.0.len()
    }

    pub fn sides(&self) -> &[Side] {
        &self.0
    }

    /// Box of the 1-based `particle`.
    pub fn side(&self, particle: usize) -> Side {
        self.0[particle - 1]
    }

    pub fn display(&self, labeling: Labeling) -> String {
        self.0.iter().map(|s| s.symbol(labeling)).collect()
    }

    /// All labels of an `n`-particle space, in index order.
    pub fn all(n_particles: usize) -> Result<Vec<BasisLabel>> {
        let dim = check_particles(n_particles)?;
        (0..dim).map(|i| BasisLabel::from_index(i, n_particles)).collect()
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display(Labeling::Box))
    }
}

/// Single-particle state, either a named preset or explicit `(cL, cR)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SingleState {
    L,
    R,
    Plus,
    Minus,
    PlusI,
    MinusI,
    Explicit(Amplitude, Amplitude),
}

impl SingleState {
    /// Normalized coefficients on `(|L⟩, |R⟩)`.
    pub fn coefficients(&self) -> Result<[Amplitude; 2]> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let one = Amplitude::new(1.0, 0.0);
        let zero = Amplitude::new(0.0, 0.0);
        Ok(match *self {
            SingleState::L => [one, zero],
            SingleState::R => [zero, one],
            SingleState::Plus => [Amplitude::new(h, 0.0), Amplitude::new(h, 0.0)],
            SingleState::Minus => [Amplitude::new(h, 0.0), Amplitude::new(-h, 0.0)],
            SingleState::PlusI => [Amplitude::new(h, 0.0), Amplitude::new(0.0, h)],
            SingleState::MinusI => [Amplitude::new(h, 0.0), Amplitude::new(0.0, -h)],
            SingleState::Explicit(cl, cr) => {
                check_finite(&[cl, cr])?;
                let norm = (cl.norm_sqr() + cr.norm_sqr()).sqrt();
                if norm == 0.0 || !norm.is_finite() {
                    return Err(Error::Unnormalizable);
                }
                [cl / norm, cr / norm]
            }
        })
    }

    pub fn name(&self, labeling: Labeling) -> String {
        let named = match (labeling, self) {
            (Labeling::Box, SingleState::L) => "L",
            (Labeling::Box, SingleState::R) => "R",
            (Labeling::Box, SingleState::Plus) => "+",
            (Labeling::Box, SingleState::Minus) => "-",
            (Labeling::Box, SingleState::PlusI) => "+i",
            (Labeling::Box, SingleState::MinusI) => "-i",
            (Labeling::Spin, SingleState::L) => "↑",
            (Labeling::Spin, SingleState::R) => "⇓",
            (Labeling::Spin, SingleState::Plus) => "x,+",
            (Labeling::Spin, SingleState::Minus) => "x,-",
            (Labeling::Spin, SingleState::PlusI) => "y,+",
            (Labeling::Spin, SingleState::MinusI) => "y,-",
            (_, SingleState::Explicit(cl, cr)) => {
                return format!("({}, {})", cl, cr);
            }
        };
        named.to_string()
    }

    pub fn ket(&self) -> Result<Ket> {
        Ket::new(1, self.coefficients()?.to_vec())
    }
}

/// Vector that is not required to be normalized, e.g. a projected state.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_particles: usize,
    amplitudes: Vec<Amplitude>,
}

impl StateVector {
    pub fn new(n_particles: usize, amplitudes: Vec<Amplitude>) -> Result<Self> {
        let dim = check_particles(n_particles)?;
        if amplitudes.len() != dim {
            return Err(Error::WrongLength {
                expected: dim,
                got: amplitudes.len(),
            });
        }
        check_finite(&amplitudes)?;
        Ok(StateVector {
            n_particles,
            amplitudes,
        })
    }

    pub fn zero(n_particles: usize) -> Result<Self> {
        let dim = check_particles(n_particles)?;
        Ok(StateVector {
            n_particles,
            amplitudes: vec![Amplitude::new(0.0, 0.0); dim],
        })
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn amplitude(&self, label: &BasisLabel) -> Amplitude {
        self.amplitudes[label.index()]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scaled(&self, factor: Amplitude) -> StateVector {
        StateVector {
            n_particles: self.n_particles,
            amplitudes: self.amplitudes.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn checked_sub(&self, other: &StateVector) -> Result<StateVector> {
        check_dims(self.dim(), other.dim())?;
        Ok(StateVector {
            n_particles: self.n_particles,
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Rescales to unit norm.
    pub fn normalize(&self) -> Result<Ket> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::Unnormalizable);
        }
        Ok(Ket {
            n_particles: self.n_particles,
            amplitudes: self.amplitudes.iter().map(|z| z / norm).collect(),
            labeling: Labeling::Box,
        })
    }
}

/// Normalized state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket {
    n_particles: usize,
    amplitudes: Vec<Amplitude>,
    labeling: Labeling,
}

impl Ket {
    /// Builds a state from amplitudes that must already be normalized.
    pub fn new(n_particles: usize, amplitudes: Vec<Amplitude>) -> Result<Self> {
        let v = StateVector::new(n_particles, amplitudes)?;
        let norm_sqr = v.norm_sqr();
        if (norm_sqr - 1.0).abs() > ZERO_TOLERANCE {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Ket {
            n_particles,
            amplitudes: v.amplitudes,
            labeling: Labeling::Box,
        })
    }

    /// Builds a state by normalizing arbitrary non-zero amplitudes.
    pub fn normalized(n_particles: usize, amplitudes: Vec<Amplitude>) -> Result<Self> {
        StateVector::new(n_particles, amplitudes)?.normalize()
    }

    pub fn basis(label: &BasisLabel) -> Ket {
        let dim = 1 << label.n_particles();
        let mut amplitudes = vec![Amplitude::new(0.0, 0.0); dim];
        amplitudes[label.index()] = Amplitude::new(1.0, 0.0);
        Ket {
            n_particles: label.n_particles(),
            amplitudes,
            labeling: Labeling::Box,
        }
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn amplitude(&self, label: &BasisLabel) -> Amplitude {
        self.amplitudes[label.index()]
    }

    pub fn labeling(&self) -> Labeling {
        self.labeling
    }

    pub(crate) fn with_labeling(mut self, labeling: Labeling) -> Ket {
        self.labeling = labeling;
        self
    }

    /// Multiplies by a global phase `e^{iθ}`.
    pub fn with_phase(&self, theta: f64) -> Ket {
        let phase = Amplitude::from_polar(1.0, theta);
        Ket {
            n_particles: self.n_particles,
            amplitudes: self.amplitudes.iter().map(|z| z * phase).collect(),
            labeling: self.labeling,
        }
    }

    pub fn to_vector(&self) -> StateVector {
        StateVector {
            n_particles: self.n_particles,
            amplitudes: self.amplitudes.clone(),
        }
    }
}

/// Direct product; particle 1 is the leftmost factor.
pub fn tensor(states: &[Ket]) -> Result<Ket> {
    let (first, rest) = states.split_first().ok_or(Error::Empty("tensor factors"))?;
    let n_particles: usize = states.iter().map(Ket::n_particles).sum();
    check_particles(n_particles)?;
    let mut amplitudes = first.amplitudes.clone();
    for factor in rest {
        amplitudes = amplitudes
            .iter()
            .flat_map(|a| factor.amplitudes.iter().map(move |b| a * b))
            .collect();
    }
    Ok(Ket {
        n_particles,
        amplitudes,
        labeling: first.labeling,
    })
}

/// `⟨bra|ket⟩`, conjugate-linear in `bra`.
pub fn inner(bra: &Ket, ket: &Ket) -> Result<Amplitude> {
    inner_slices(&bra.amplitudes, &ket.amplitudes)
}

fn inner_slices(bra: &[Amplitude], ket: &[Amplitude]) -> Result<Amplitude> {
    check_dims(bra.len(), ket.len())?;
    Ok(bra.iter().zip(ket).map(|(b, k)| b.conj() * k).sum())
}

/// Dense square matrix on an `n`-particle space, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    n_particles: usize,
    entries: Vec<Amplitude>,
    labeling: Labeling,
}

impl Operator {
    pub fn from_entries(n_particles: usize, entries: Vec<Amplitude>) -> Result<Self> {
        let dim = check_particles(n_particles)?;
        if entries.len() != dim * dim {
            return Err(Error::WrongLength {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        check_finite(&entries)?;
        Ok(Operator {
            n_particles,
            entries,
            labeling: Labeling::Box,
        })
    }

    pub fn zero(n_particles: usize) -> Result<Self> {
        let dim = check_particles(n_particles)?;
        Ok(Operator {
            n_particles,
            entries: vec![Amplitude::new(0.0, 0.0); dim * dim],
            labeling: Labeling::Box,
        })
    }

    pub fn identity(n_particles: usize) -> Result<Self> {
        let dim = check_particles(n_particles)?;
        Operator::from_diagonal(n_particles, vec![Amplitude::new(1.0, 0.0); dim])
    }

    pub fn from_diagonal(n_particles: usize, diagonal: Vec<Amplitude>) -> Result<Self> {
        let mut op = Operator::zero(n_particles)?;
        if diagonal.len() != op.dim() {
            return Err(Error::WrongLength {
                expected: op.dim(),
                got: diagonal.len(),
            });
        }
        check_finite(&diagonal)?;
        let dim = op.dim();
        for (i, d) in diagonal.into_iter().enumerate() {
            op.entries[i * dim + i] = d;
        }
        Ok(op)
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn dim(&self) -> usize {
        1 << self.n_particles
    }

    pub fn labeling(&self) -> Labeling {
        self.labeling
    }

    pub(crate) fn with_labeling(mut self, labeling: Labeling) -> Operator {
        self.labeling = labeling;
        self
    }

    pub fn get(&self, row: usize, col: usize) -> Amplitude {
        self.entries[row * self.dim() + col]
    }

    pub fn entries(&self) -> &[Amplitude] {
        &self.entries
    }

    pub fn diagonal(&self) -> Vec<Amplitude> {
        (0..self.dim()).map(|i| self.get(i, i)).collect()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Operator) -> Result<f64> {
        Ok(self.checked_sub(other)?.max_abs())
    }

    pub fn adjoint(&self) -> Operator {
        let dim = self.dim();
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                entries.push(self.get(c, r).conj());
            }
        }
        Operator {
            n_particles: self.n_particles,
            entries,
            labeling: self.labeling,
        }
    }

    pub fn scaled(&self, factor: Amplitude) -> Operator {
        Operator {
            n_particles: self.n_particles,
            entries: self.entries.iter().map(|z| z * factor).collect(),
            labeling: self.labeling,
        }
    }

    fn zip_with(&self, other: &Operator, f: impl Fn(Amplitude, Amplitude) -> Amplitude) -> Result<Operator> {
        check_dims(self.dim(), other.dim())?;
        Ok(Operator {
            n_particles: self.n_particles,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(*a, *b))
                .collect(),
            labeling: self.labeling,
        })
    }

    pub fn checked_add(&self, other: &Operator) -> Result<Operator> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Operator) -> Result<Operator> {
        self.zip_with(other, |a, b| a - b)
    }

    /// Matrix product `self · other`.
    pub fn checked_mul(&self, other: &Operator) -> Result<Operator> {
        check_dims(self.dim(), other.dim())?;
        let dim = self.dim();
        let mut entries = vec![Amplitude::new(0.0, 0.0); dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let a = self.entries[r * dim + k];
                if a == Amplitude::new(0.0, 0.0) {
                    continue;
                }
                let row = &other.entries[k * dim..(k + 1) * dim];
                for (out, b) in entries[r * dim..(r + 1) * dim].iter_mut().zip(row) {
                    *out += a * b;
                }
            }
        }
        Ok(Operator {
            n_particles: self.n_particles,
            entries,
            labeling: self.labeling,
        })
    }

    /// Sum of a list of equally sized operators.
    pub fn sum<'a>(n_particles: usize, ops: impl IntoIterator<Item = &'a Operator>) -> Result<Operator> {
        ops.into_iter()
            .try_fold(Operator::zero(n_particles)?, |acc, op| acc.checked_add(op))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let dim = self.dim();
        (0..dim).all(|r| (r..dim).all(|c| (self.get(r, c) - self.get(c, r).conj()).norm() <= tol))
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let dim = self.dim();
        (0..dim).all(|r| (0..dim).all(|c| r == c || self.get(r, c).norm() <= tol))
    }
}

impl Add for &Operator {
    type Output = Operator;

    /// Panics on mismatched dimensions; see [`Operator::checked_add`].
    fn add(self, rhs: &Operator) -> Operator {
        self.checked_add(rhs).expect("operator dimensions differ")
    }
}

impl Sub for &Operator {
    type Output = Operator;

    fn sub(self, rhs: &Operator) -> Operator {
        self.checked_sub(rhs).expect("operator dimensions differ")
    }
}

impl Mul for &Operator {
    type Output = Operator;

    fn mul(self, rhs: &Operator) -> Operator {
        self.checked_mul(rhs).expect("operator dimensions differ")
    }
}

/// Matrix-vector product; the result is not renormalized.
pub fn apply(op: &Operator, ket: &Ket) -> Result<StateVector> {
    apply_slice(op, &ket.amplitudes).map(|amplitudes| StateVector {
        n_particles: ket.n_particles,
        amplitudes,
    })
}

fn apply_slice(op: &Operator, v: &[Amplitude]) -> Result<Vec<Amplitude>> {
    check_dims(op.dim(), v.len())?;
    Ok(op
        .entries
        .chunks_exact(v.len())
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect())
}

/// `⟨bra|op|ket⟩`.
pub fn matrix_element(bra: &Ket, op: &Operator, ket: &Ket) -> Result<Amplitude> {
    let projected = apply(op, ket)?;
    inner_slices(&bra.amplitudes, projected.amplitudes())
}

pub fn is_eigenstate(op: &Operator, ket: &Ket, eigenvalue: Amplitude) -> Result<bool> {
    is_eigenstate_within(op, ket, eigenvalue, ZERO_TOLERANCE)
}

/// True iff `‖op·ket − λ·ket‖ ≤ tol` (Euclidean norm).
pub fn is_eigenstate_within(op: &Operator, ket: &Ket, eigenvalue: Amplitude, tol: f64) -> Result<bool> {
    let image = apply(op, ket)?;
    let residual = image.checked_sub(&ket.to_vector().scaled(eigenvalue))?;
    Ok(residual.norm() <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Amplitude {
        Amplitude::new(re, im)
    }

    fn close(a: Amplitude, b: Amplitude) -> bool {
        (a - b).norm() <= 1e-12
    }

    #[test]
    fn named_states() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(SingleState::L.coefficients().unwrap(), [c(1.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(SingleState::Plus.coefficients().unwrap(), [c(h, 0.0), c(h, 0.0)]);
        assert_eq!(SingleState::MinusI.coefficients().unwrap(), [c(h, 0.0), c(0.0, -h)]);
    }

    #[test]
    fn explicit_state_is_normalized() {
        let [cl, cr] = SingleState::Explicit(c(3.0, 0.0), c(0.0, 4.0)).coefficients().unwrap();
        assert!(close(cl, c(0.6, 0.0)));
        assert!(close(cr, c(0.0, 0.8)));
    }

    #[test]
    fn zero_state_rejected() {
        let err = SingleState::Explicit(c(0.0, 0.0), c(0.0, 0.0))
            .coefficients()
            .unwrap_err();
        assert_eq!(err, Error::Unnormalizable);
        assert_eq!(err.to_string(), "unnormalizable state");
    }

    #[test]
    fn label_index_round_trip() {
        for n in 1..=4 {
            for i in 0..(1 << n) {
                let label = BasisLabel::from_index(i, n).unwrap();
                assert_eq!(label.index(), i);
                assert_eq!(BasisLabel::parse(&label.to_string()).unwrap(), label);
            }
        }
        assert_eq!(BasisLabel::parse("LLR").unwrap().index(), 1);
        assert_eq!(BasisLabel::parse("RLL").unwrap().index(), 4);
        assert!(BasisLabel::parse("LXR").is_err());
        assert!(BasisLabel::parse("").is_err());
    }

    #[test]
    fn tensor_of_basis_states() {
        let l = SingleState::L.ket().unwrap();
        let lll = tensor(&[l.clone(), l.clone(), l]).unwrap();
        assert_eq!(lll.amplitude(&BasisLabel::parse("LLL").unwrap()), c(1.0, 0.0));
        assert_eq!(lll.amplitudes().iter().filter(|z| z.norm() > 0.0).count(), 1);
        assert_eq!(tensor(&[]).unwrap_err(), Error::Empty("tensor factors"));
    }

    #[test]
    fn tensor_plus_i_amplitude() {
        let p = SingleState::PlusI.ket().unwrap();
        let state = tensor(&[p.clone(), p.clone(), p]).unwrap();
        let expected = c(0.0, 1.0 / (2.0 * 2f64.sqrt()));
        assert!(close(state.amplitude(&BasisLabel::parse("LLR").unwrap()), expected));
    }

    #[test]
    fn inner_products() {
        let l = SingleState::L.ket().unwrap();
        let r = SingleState::R.ket().unwrap();
        assert_eq!(inner(&l, &r).unwrap(), c(0.0, 0.0));
        assert!(close(inner(&l, &l).unwrap(), c(1.0, 0.0)));
        let two = tensor(&[l.clone(), r]).unwrap();
        assert_eq!(
            inner(&l, &two).unwrap_err(),
            Error::DimensionMismatch { left: 2, right: 4 }
        );
    }

    #[test]
    fn apply_zero_and_identity() {
        let p = SingleState::Plus.ket().unwrap();
        let state = tensor(&[p.clone(), p]).unwrap();
        let id = Operator::identity(2).unwrap();
        assert_eq!(apply(&id, &state).unwrap(), state.to_vector());
        let zero = Operator::zero(2).unwrap();
        assert_eq!(apply(&zero, &state).unwrap(), StateVector::zero(2).unwrap());
        assert!(apply(&Operator::identity(3).unwrap(), &state).is_err());
    }

    #[test]
    fn ket_requires_normalization() {
        assert!(matches!(
            Ket::new(1, vec![c(1.0, 0.0), c(1.0, 0.0)]),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(Ket::new(1, vec![c(1.0, 0.0)]), Err(Error::WrongLength { .. })));
        assert_eq!(
            Ket::new(1, vec![c(f64::NAN, 0.0), c(0.0, 0.0)]).unwrap_err(),
            Error::NonFinite
        );
        assert_eq!(
            Ket::normalized(1, vec![c(0.0, 0.0); 2]).unwrap_err(),
            Error::Unnormalizable
        );
    }

    #[test]
    fn particle_cap() {
        assert_eq!(Operator::zero(0).unwrap_err(), Error::ParticleCount(0));
        assert_eq!(Operator::zero(MAX_PARTICLES + 1).unwrap_err(), Error::ParticleCount(13));
    }

    #[test]
    fn matmul_against_hand_computed() {
        // [[1, i], [0, 2]] · [[0, 1], [1, 0]] = [[i, 1], [2, 0]]
        let a = Operator::from_entries(1, vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, 0.0), c(2.0, 0.0)]).unwrap();
        let b = Operator::from_entries(1, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let p = &a * &b;
        assert_eq!(p.entries(), &[c(0.0, 1.0), c(1.0, 0.0), c(2.0, 0.0), c(0.0, 0.0)]);
        assert!(!a.is_hermitian(1e-12));
        assert_eq!(a.adjoint().get(1, 0), c(0.0, -1.0));
    }

    #[test]
    fn eigenstate_residual() {
        let ll = Ket::basis(&BasisLabel::parse("LL").unwrap());
        let lr = Ket::basis(&BasisLabel::parse("LR").unwrap());
        let diag = Operator::from_diagonal(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(is_eigenstate(&diag, &ll, c(1.0, 0.0)).unwrap());
        assert!(!is_eigenstate(&diag, &lr, c(1.0, 0.0)).unwrap());
        assert!(is_eigenstate(&diag, &lr, c(0.0, 0.0)).unwrap());
    }
}
