//! Brute-force reference computations that share no code path with the
//! library's operator and state types: basis labels are plain strings,
//! projector conditions are checked by character comparison, and matrix
//! elements are explicit sums over labels.

#![allow(dead_code)]

use rand::Rng;
use tsvf::{Amplitude, Ket, ProjectorKind, Side};

pub const TOL: f64 = 1e-12;

pub fn c(re: f64, im: f64) -> Amplitude {
    Amplitude::new(re, im)
}

/// All labels over {L, R} of length `n`; particle 1 is the leftmost
/// character and L sorts before R.
pub fn labels(n: usize) -> Vec<String> {
    if n == 0 {
        return vec![String::new()];
    }
    labels(n - 1)
        .into_iter()
        .flat_map(|prefix| [format!("{prefix}L"), format!("{prefix}R")])
        .collect()
}

fn ch(label: &str, particle: usize) -> char {
    label.as_bytes()[particle - 1] as char
}

/// Whether `label` satisfies the projector condition, by string inspection.
pub fn accepts(kind: &ProjectorKind, label: &str) -> bool {
    match kind {
        ProjectorKind::Identity => true,
        ProjectorKind::Box { at } => at.iter().all(|(p, side)| {
            let want = match side {
                Side::L => 'L',
                Side::R => 'R',
            };
            ch(label, *p) == want
        }),
        ProjectorKind::PairSame { pair } => ch(label, pair[0]) == ch(label, pair[1]),
        ProjectorKind::PairDiff { pair } => ch(label, pair[0]) != ch(label, pair[1]),
        ProjectorKind::AllSame { particles: None } => label.chars().all(|x| x == label.chars().next().unwrap()),
        ProjectorKind::AllSame { particles: Some(ps) } => ps.iter().all(|p| ch(label, *p) == ch(label, ps[0])),
        ProjectorKind::Sd { pair, third } => {
            ch(label, pair[0]) == ch(label, pair[1]) && ch(label, *third) != ch(label, pair[0])
        }
    }
}

/// 0/1 diagonal of a projector (or weighted sum), label by label.
pub fn diagonal(terms: &[(Amplitude, ProjectorKind)], n: usize) -> Vec<Amplitude> {
    labels(n)
        .iter()
        .map(|l| terms.iter().filter(|(_, k)| accepts(k, l)).map(|(w, _)| *w).sum())
        .collect()
}

/// Per-particle `(cL, cR)` coefficients of a named single-particle state.
pub fn coeffs(name: &str) -> [Amplitude; 2] {
    let h = 0.5f64.sqrt();
    match name {
        "L" => [c(1.0, 0.0), c(0.0, 0.0)],
        "R" => [c(0.0, 0.0), c(1.0, 0.0)],
        "+" => [c(h, 0.0), c(h, 0.0)],
        "-" => [c(h, 0.0), c(-h, 0.0)],
        "+i" => [c(h, 0.0), c(0.0, h)],
        "-i" => [c(h, 0.0), c(0.0, -h)],
        _ => panic!("unknown state {name}"),
    }
}

/// Amplitudes of a product state, computed label by label.
pub fn product_amplitudes(names: &[&str]) -> Vec<Amplitude> {
    labels(names.len())
        .iter()
        .map(|l| {
            l.chars()
                .zip(names)
                .map(|(x, name)| coeffs(name)[if x == 'L' { 0 } else { 1 }])
                .product()
        })
        .collect()
}

/// `Σ_b conj(bra_b) · diag_b · ket_b`.
pub fn diagonal_element(bra: &[Amplitude], diag: &[Amplitude], ket: &[Amplitude]) -> Amplitude {
    bra.iter().zip(diag).zip(ket).map(|((b, d), k)| b.conj() * d * k).sum()
}

pub fn overlap(bra: &[Amplitude], ket: &[Amplitude]) -> Amplitude {
    bra.iter().zip(ket).map(|(b, k)| b.conj() * k).sum()
}

/// Product-state matrix element of a projector condition.
pub fn product_element(post: &[&str], kind: &ProjectorKind, pre: &[&str]) -> Amplitude {
    let n = pre.len();
    diagonal_element(
        &product_amplitudes(post),
        &diagonal(&[(c(1.0, 0.0), kind.clone())], n),
        &product_amplitudes(pre),
    )
}

pub fn random_amplitudes(rng: &mut impl Rng, dim: usize) -> Vec<Amplitude> {
    (0..dim)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

pub fn random_ket(rng: &mut impl Rng, n: usize) -> Ket {
    loop {
        if let Ok(k) = Ket::normalized(n, random_amplitudes(rng, 1 << n)) {
            return k;
        }
    }
}

pub fn close(a: Amplitude, b: Amplitude) -> bool {
    (a - b).norm() <= TOL
}

/// Every projector condition expressible on three particles.
pub fn all_kinds(n: usize) -> Vec<ProjectorKind> {
    let mut kinds = vec![ProjectorKind::Identity, ProjectorKind::all_same()];
    for i in 1..=n {
        kinds.push(ProjectorKind::boxes(&[(i, Side::L)]));
        kinds.push(ProjectorKind::boxes(&[(i, Side::R)]));
        for j in 1..=n {
            if i == j {
                continue;
            }
            kinds.push(ProjectorKind::pair_same(i, j));
            kinds.push(ProjectorKind::pair_diff(i, j));
            kinds.push(ProjectorKind::boxes(&[(i, Side::L), (j, Side::L)]));
            kinds.push(ProjectorKind::boxes(&[(i, Side::R), (j, Side::R)]));
            for k in 1..=n {
                if k != i && k != j {
                    kinds.push(ProjectorKind::sd(i, j, k));
                }
            }
        }
    }
    kinds
}
