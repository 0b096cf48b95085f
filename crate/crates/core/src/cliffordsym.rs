//! Symmetry testing for qubit circuits of classical reversible gates.
//!
//! A symmetry candidate `S` built from NOT, CNOT and SWAP is tested against a
//! diagonal product state by propagating single-qubit `Z` operators through
//! `S` exactly, stabilizer style, and comparing expectation values.

use std::collections::{BTreeSet, VecDeque};

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactnum::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliffordError {
    #[error("qubit index {index} out of range for {n} qubits")]
    OutOfRange { index: usize, n: usize },
    #[error("non-Hermitian observable: imaginary phase with nonzero value")]
    NonHermitian,
    #[error("support of {0} qubits is too large (at most 2)")]
    SupportTooLarge(usize),
    #[error("invalid state: {0}")]
    InvalidState(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReversibleGate {
    Not(usize),
    Cnot { control: usize, target: usize },
    Swap(usize, usize),
}

impl ReversibleGate {
    fn qubits(&self) -> Vec<usize> {
        match *self {
            Self::Not(q) => vec![q],
            Self::Cnot { control, target } => vec![control, target],
            Self::Swap(a, b) => vec![a, b],
        }
    }

    /// Action on a bit string (one bool per qubit).
    pub fn apply_bits(&self, bits: &mut [bool]) {
        match *self {
            Self::Not(q) => bits[q] = !bits[q],
            Self::Cnot { control, target } => bits[target] ^= bits[control],
            Self::Swap(a, b) => bits.swap(a, b),
        }
    }

    /// `g^dagger P g` for a single generator.
    fn conjugate(&self, p: &PauliProduct) -> PauliProduct {
        let n = p.len();
        let mut out = PauliProduct::identity(n);
        out.phase = p.phase;
        for j in 0..n {
            if p.x[j] {
                out = out.mul(&self.image(j, true, n));
            }
            if p.z[j] {
                out = out.mul(&self.image(j, false, n));
            }
        }
        out
    }

    // Image of X_j (`x = true`) or Z_j under conjugation.
    fn image(&self, j: usize, x: bool, n: usize) -> PauliProduct {
        let single = |q: usize| if x { PauliProduct::x_on(n, q) } else { PauliProduct::z_on(n, q) };
        match *self {
            Self::Not(q) if q == j && !x => single(j).negated(),
            Self::Not(_) => single(j),
            Self::Cnot { control, target } => {
                if x && j == control {
                    PauliProduct::x_on(n, control).mul(&PauliProduct::x_on(n, target))
                } else if !x && j == target {
                    PauliProduct::z_on(n, control).mul(&PauliProduct::z_on(n, target))
                } else {
                    single(j)
                }
            }
            Self::Swap(a, b) if j == a => single(b),
            Self::Swap(a, b) if j == b => single(a),
            Self::Swap(..) => single(j),
        }
    }
}

/// `i^phase * prod_j X^{x_j} Z^{z_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliProduct {
    /// Exponent of `i`, mod 4.
    pub phase: u8,
    pub x: Vec<bool>,
    pub z: Vec<bool>,
}

impl PauliProduct {
    pub fn identity(n: usize) -> Self {
        Self {
            phase: 0,
            x: vec![false; n],
            z: vec![false; n],
        }
    }

    pub fn x_on(n: usize, q: usize) -> Self {
        let mut p = Self::identity(n);
        p.x[q] = true;
        p
    }

    pub fn z_on(n: usize, q: usize) -> Self {
        let mut p = Self::identity(n);
        p.z[q] = true;
        p
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn negated(&self) -> Self {
        let mut p = self.clone();
        p.phase = (p.phase + 2) % 4;
        p
    }

    /// Product `self * o`, using `Z X = -X Z` on each qubit.
    pub fn mul(&self, o: &Self) -> Self {
        let swaps = (0..self.len()).filter(|&j| self.z[j] && o.x[j]).count();
        Self {
            phase: ((self.phase as usize + o.phase as usize + 2 * swaps) % 4) as u8,
            x: self.x.iter().zip(&o.x).map(|(a, b)| a ^ b).collect(),
            z: self.z.iter().zip(&o.z).map(|(a, b)| a ^ b).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReversibleCircuit {
    pub n: usize,
    /// Applied first to last.
    pub gates: Vec<ReversibleGate>,
}

impl ReversibleCircuit {
    pub fn new(n: usize, gates: Vec<ReversibleGate>) -> Result<Self, CliffordError> {
        for g in &gates {
            let qs = g.qubits();
            if let Some(&index) = qs.iter().find(|&&q| q >= n) {
                return Err(CliffordError::OutOfRange { index, n });
            }
            if qs.len() == 2 && qs[0] == qs[1] {
                return Err(CliffordError::OutOfRange { index: qs[0], n });
            }
        }
        Ok(Self { n, gates })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, gates: Vec::new() }
    }

    /// Every generator is an involution, so the inverse is the reversed list.
    pub fn inverse(&self) -> Self {
        Self {
            n: self.n,
            gates: self.gates.iter().rev().copied().collect(),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Self) -> Self {
        let mut gates = self.gates.clone();
        gates.extend(&next.gates);
        Self { n: self.n, gates }
    }

    pub fn apply_bits(&self, bits: &mut [bool]) {
        for g in &self.gates {
            g.apply_bits(bits);
        }
    }

    /// Permutation of basis indices (qubit 0 most significant).
    pub fn permutation(&self) -> Vec<usize> {
        let n = self.n;
        (0..1usize << n)
            .map(|x| {
                let mut bits: Vec<bool> = (0..n).map(|j| x >> (n - 1 - j) & 1 == 1).collect();
                self.apply_bits(&mut bits);
                bits.iter().fold(0, |acc, &b| acc << 1 | b as usize)
            })
            .collect()
    }
}

/// `S^dagger p S`, propagating from the last gate back to the first.
pub fn propagate_pauli(circuit: &ReversibleCircuit, p: &PauliProduct) -> PauliProduct {
    circuit.gates.iter().rev().fold(p.clone(), |acc, g| g.conjugate(&acc))
}

/// `prod_j (I + q_j Z_j) / 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalProductState {
    pub q: Vec<BigRational>,
}

impl DiagonalProductState {
    pub fn new(q: Vec<BigRational>) -> Result<Self, CliffordError> {
        if let Some(v) = q.iter().find(|v| v.abs() > BigRational::one()) {
            return Err(CliffordError::InvalidState(format!("|q| = |{v}| exceeds 1")));
        }
        Ok(Self { q })
    }

    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    /// Probability of each computational basis string.
    pub fn probabilities(&self) -> Vec<BigRational> {
        let n = self.len();
        let half = BigRational::new(1.into(), 2.into());
        (0..1usize << n)
            .map(|x| {
                (0..n).fold(BigRational::one(), |acc, j| {
                    let bit = x >> (n - 1 - j) & 1;
                    let s = if bit == 0 { &self.q[j] + BigRational::one() } else { BigRational::one() - &self.q[j] };
                    acc * s * &half
                })
            })
            .collect()
    }
}

pub fn diagonal_expectation(state: &DiagonalProductState, p: &PauliProduct) -> Result<BigRational, CliffordError> {
    if p.x.iter().any(|&b| b) {
        return Ok(BigRational::zero());
    }
    let value = p
        .z
        .iter()
        .zip(&state.q)
        .filter(|(z, _)| **z)
        .fold(BigRational::one(), |acc, (_, q)| acc * q);
    match p.phase {
        0 => Ok(value),
        2 => Ok(-value),
        _ if value.is_zero() => Ok(value),
        _ => Err(CliffordError::NonHermitian),
    }
}

/// Result of [`symmetry_test_counted`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryReport {
    pub symmetric: bool,
    pub evaluations: usize,
}

/// Whether `S rho S^dagger = rho`.
pub fn symmetry_test(state: &DiagonalProductState, s: &ReversibleCircuit) -> bool {
    symmetry_test_counted(state, s).symmetric
}

/// Compares `<Z_j>` after `S` and after `S^dagger` with `q_j`, for every
/// qubit: 2N propagations and evaluations, no early exit.
pub fn symmetry_test_counted(state: &DiagonalProductState, s: &ReversibleCircuit) -> SymmetryReport {
    let n = state.len();
    let inv = s.inverse();
    let mut evaluations = 0;
    let mut symmetric = true;
    for j in 0..n {
        for c in [s, &inv] {
            let p = propagate_pauli(c, &PauliProduct::z_on(n, j));
            evaluations += 1;
            // Z strings propagate to Z strings, so the phase stays real.
            let e = diagonal_expectation(state, &p).expect("real phase");
            symmetric &= e == state.q[j];
        }
    }
    SymmetryReport { symmetric, evaluations }
}

/// The affine reversible maps on `support`, as circuits: 2 for one qubit,
/// 24 for two.
pub fn affine_group(n: usize, support: &[usize]) -> Result<Vec<ReversibleCircuit>, CliffordError> {
    let gens: Vec<ReversibleGate> = match *support {
        [a] => vec![ReversibleGate::Not(a)],
        [a, b] => vec![
            ReversibleGate::Not(a),
            ReversibleGate::Not(b),
            ReversibleGate::Cnot { control: a, target: b },
            ReversibleGate::Cnot { control: b, target: a },
            ReversibleGate::Swap(a, b),
        ],
        _ => return Err(CliffordError::SupportTooLarge(support.len())),
    };
    // Breadth-first search keyed by the action on the support strings.
    let action = |c: &ReversibleCircuit| -> Vec<usize> {
        let k = support.len();
        (0..1usize << k)
            .map(|x| {
                let mut bits = vec![false; n];
                for (i, &q) in support.iter().enumerate() {
                    bits[q] = x >> (k - 1 - i) & 1 == 1;
                }
                c.apply_bits(&mut bits);
                support.iter().fold(0, |acc, &q| acc << 1 | bits[q] as usize)
            })
            .collect()
    };
    let start = ReversibleCircuit::empty(n);
    let mut seen = BTreeSet::from([action(&start)]);
    let mut out = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for g in &gens {
            let next = c.then(&ReversibleCircuit { n, gates: vec![*g] });
            if seen.insert(action(&next)) {
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}

/// Partition of the support's basis strings (first support qubit most
/// significant) into degeneracy blocks of `history rho history^dagger`.
pub fn diagnose_degeneracy12(
    state: &DiagonalProductState,
    history: &ReversibleCircuit,
    support: &[usize],
) -> Result<Vec<Vec<usize>>, CliffordError> {
    let n = state.len();
    if let Some(&index) = support.iter().find(|&&q| q >= n) {
        return Err(CliffordError::OutOfRange { index, n });
    }
    let group = affine_group(n, support)?;
    let k = support.len();
    let mut parent: Vec<usize> = (0..1usize << k).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let back = history.inverse();
    for p in &group {
        let conjugated = history.then(p).then(&back);
        if !symmetry_test(state, &conjugated) {
            continue;
        }
        for x in 0..1usize << k {
            let mut bits = vec![false; n];
            for (i, &q) in support.iter().enumerate() {
                bits[q] = x >> (k - 1 - i) & 1 == 1;
            }
            p.apply_bits(&mut bits);
            let y = support.iter().fold(0, |acc, &q| acc << 1 | bits[q] as usize);
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for x in 0..1usize << k {
        let r = find(&mut parent, x);
        match blocks.iter_mut().find(|b| find(&mut parent.clone(), b[0]) == r) {
            Some(b) => b.push(x),
            None => blocks.push(vec![x]),
        }
    }
    Ok(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{rat, ratio};

    #[test]
    fn basic_propagation() {
        let c = ReversibleCircuit::new(2, vec![ReversibleGate::Cnot { control: 0, target: 1 }]).unwrap();
        let p = propagate_pauli(&c, &PauliProduct::z_on(2, 1));
        assert_eq!(p, PauliProduct::z_on(2, 0).mul(&PauliProduct::z_on(2, 1)));
        let not = ReversibleCircuit::new(1, vec![ReversibleGate::Not(0)]).unwrap();
        assert_eq!(propagate_pauli(&not, &PauliProduct::z_on(1, 0)), PauliProduct::z_on(1, 0).negated());
    }

    #[test]
    fn expectations() {
        let s = DiagonalProductState::new(vec![rat(1), ratio(1, 2)]).unwrap();
        assert_eq!(diagonal_expectation(&s, &PauliProduct::z_on(2, 0)).unwrap(), rat(1));
        let t = DiagonalProductState::new(vec![ratio(1, 2), ratio(1, 3)]).unwrap();
        let zz = PauliProduct::z_on(2, 0).mul(&PauliProduct::z_on(2, 1));
        assert_eq!(diagonal_expectation(&t, &zz).unwrap(), ratio(1, 6));
        assert!(diagonal_expectation(&t, &PauliProduct::x_on(2, 0)).unwrap().is_zero());
        let mut iz = PauliProduct::z_on(2, 0);
        iz.phase = 1;
        assert_eq!(diagonal_expectation(&t, &iz), Err(CliffordError::NonHermitian));
    }

    #[test]
    fn group_sizes() {
        assert_eq!(affine_group(3, &[1]).unwrap().len(), 2);
        assert_eq!(affine_group(3, &[0, 2]).unwrap().len(), 24);
        assert!(affine_group(3, &[0, 1, 2]).is_err());
    }
}
