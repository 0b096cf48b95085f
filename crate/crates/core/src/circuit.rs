//! Registers, gates, local bases, initial states and the circuit document.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{BigRational, ExactMatrix, Field, GaussianRational, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index out of range: {0}")]
    OutOfRange(String),
}

fn invalid(msg: impl Into<String>) -> CircuitError {
    CircuitError::Validation(msg.into())
}

/// Per-qudit dimensions; qudit 0 is the most significant digit of an index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuditRegister {
    dims: Vec<usize>,
}

impl QuditRegister {
    pub fn new(dims: Vec<usize>) -> Result<Self, CircuitError> {
        if dims.is_empty() {
            return Err(invalid("register has no qudits"));
        }
        if let Some(j) = dims.iter().position(|&d| d < 2) {
            return Err(invalid(format!("qudit {j} has dimension below 2")));
        }
        Ok(Self { dims })
    }

    pub fn qubits(n: usize) -> Self {
        Self { dims: vec![2; n] }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Dimension of the joint space of `support`.
    pub fn support_dim(&self, support: &[usize]) -> usize {
        support.iter().map(|&j| self.dims[j]).product()
    }

    pub fn support_dims(&self, support: &[usize]) -> Vec<usize> {
        support.iter().map(|&j| self.dims[j]).collect()
    }

    pub fn check_support(&self, support: &[usize]) -> Result<(), CircuitError> {
        if support.is_empty() {
            return Err(invalid("empty support"));
        }
        for (i, &j) in support.iter().enumerate() {
            if j >= self.dims.len() {
                return Err(CircuitError::OutOfRange(format!("qudit {j}")));
            }
            if support[..i].contains(&j) {
                return Err(invalid(format!("qudit {j} repeated in support")));
            }
        }
        Ok(())
    }
}

/// Mixed-radix digits of `index`, most significant first.
pub fn digits_of(index: usize, dims: &[usize]) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    let mut rest = index;
    for (k, &d) in dims.iter().enumerate().rev() {
        out[k] = rest % d;
        rest /= d;
    }
    out
}

pub fn index_of(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&x, &d)| acc * d + x)
}

/// Dit string text: digits concatenated, comma-separated once any dimension exceeds 10.
pub fn format_dits(digits: &[usize], dims: &[usize]) -> String {
    let parts: Vec<String> = digits.iter().map(ToString::to_string).collect();
    if dims.iter().any(|&d| d > 10) {
        parts.join(",")
    } else {
        parts.concat()
    }
}

pub fn parse_dits(text: &str, dims: &[usize]) -> Result<Vec<usize>, CircuitError> {
    let bad = || CircuitError::Parse(format!("malformed dit string `{text}`"));
    let digits: Vec<usize> = if text.contains(',') || dims.iter().any(|&d| d > 10) {
        text.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    } else {
        text.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect::<Result<_, _>>()?
    };
    if digits.len() != dims.len() || digits.iter().zip(dims).any(|(x, d)| x >= d) {
        return Err(bad());
    }
    Ok(digits)
}

/// Unitary `M / sqrt(n)` with Gaussian-integer `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    support: Vec<usize>,
    matrix: ExactMatrix,
    radicand: u64,
}

impl Gate {
    pub fn new(support: Vec<usize>, matrix: ExactMatrix, radicand: u64) -> Result<Self, CircuitError> {
        if radicand == 0 {
            return Err(invalid("radicand must be positive"));
        }
        if !matrix.is_square() {
            return Err(invalid("gate matrix is not square"));
        }
        if let Some(z) = matrix.entries().iter().find(|z| !z.is_gaussian_integer()) {
            return Err(invalid(format!("gate entry {z} is not a Gaussian integer")));
        }
        let n = GaussianRational::from(BigRational::from_integer(radicand.into()));
        let expected = Matrix::identity_like(matrix.rows(), &n).scale(&n);
        if matrix.adjoint().mul(&matrix) != expected {
            return Err(invalid("M^dagger M differs from n I (gate is not unitary)"));
        }
        Ok(Self {
            support,
            matrix,
            radicand,
        })
    }

    /// Gate from integer rows (real entries).
    pub fn from_int_rows(support: Vec<usize>, rows: &[&[i64]], radicand: u64) -> Result<Self, CircuitError> {
        let m = ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| GaussianRational::from_int(x)).collect())
                .collect(),
        );
        Self::new(support, m, radicand)
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `M p M^dagger / n`, exactly rational.
    pub fn conjugate_projector(&self, p: &ExactMatrix) -> Result<ExactMatrix, CircuitError> {
        if p.rows() != self.dim() || p.cols() != self.dim() {
            return Err(CircuitError::DimensionMismatch {
                expected: self.dim(),
                found: p.rows(),
            });
        }
        let inv_n = GaussianRational::from(BigRational::new(1.into(), self.radicand.into()));
        Ok(self.matrix.mul(p).mul(&self.matrix.adjoint()).scale(&inv_n))
    }

    /// `M^dagger p M / n`, the inverse conjugation.
    pub fn conjugate_projector_inverse(&self, p: &ExactMatrix) -> Result<ExactMatrix, CircuitError> {
        let adj = Self {
            support: self.support.clone(),
            matrix: self.matrix.adjoint(),
            radicand: self.radicand,
        };
        adj.conjugate_projector(p)
    }
}

/// Per-qudit complete sets of orthogonal rank-1 projectors.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalBasis {
    per_qudit: Vec<Vec<ExactMatrix>>,
}

impl LocalBasis {
    pub fn new(per_qudit: Vec<Vec<ExactMatrix>>) -> Result<Self, CircuitError> {
        for (j, projs) in per_qudit.iter().enumerate() {
            validate_qudit_basis(projs).map_err(|m| invalid(format!("basis of qudit {j}: {m}")))?;
        }
        Ok(Self { per_qudit })
    }

    pub fn computational(dims: &[usize]) -> Self {
        Self {
            per_qudit: dims.iter().map(|&d| computational_projectors(d)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.per_qudit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_qudit.is_empty()
    }

    pub fn qudit(&self, j: usize) -> &[ExactMatrix] {
        &self.per_qudit[j]
    }

    pub fn projector(&self, j: usize, k: usize) -> &ExactMatrix {
        &self.per_qudit[j][k]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.per_qudit.iter().map(Vec::len).collect()
    }

    pub fn set_qudit(&mut self, j: usize, projs: Vec<ExactMatrix>) {
        self.per_qudit[j] = projs;
    }

    pub fn into_inner(self) -> Vec<Vec<ExactMatrix>> {
        self.per_qudit
    }

    /// Tensor product of the selected projectors on `support`.
    pub fn embed_projector(&self, support: &[usize], dits: &[usize]) -> Result<ExactMatrix, CircuitError> {
        if dits.len() != support.len() {
            return Err(CircuitError::DimensionMismatch {
                expected: support.len(),
                found: dits.len(),
            });
        }
        let mut out = Matrix::identity_like(1, &GaussianRational::zero());
        for (&j, &k) in support.iter().zip(dits) {
            let projs = self
                .per_qudit
                .get(j)
                .ok_or_else(|| CircuitError::OutOfRange(format!("qudit {j}")))?;
            let p = projs
                .get(k)
                .ok_or_else(|| CircuitError::OutOfRange(format!("basis element {k} of qudit {j}")))?;
            out = out.kron(p);
        }
        Ok(out)
    }

    /// Sum of the product projectors for every dit string in `subset`.
    pub fn embed_subset(&self, support: &[usize], subset: &[Vec<usize>]) -> Result<ExactMatrix, CircuitError> {
        let d: usize = support.iter().map(|&j| self.per_qudit.get(j).map_or(0, Vec::len)).product();
        let mut out = Matrix::filled(d, d, GaussianRational::zero());
        for dits in subset {
            out = out.plus(&self.embed_projector(support, dits)?);
        }
        Ok(out)
    }
}

pub fn computational_projectors(d: usize) -> Vec<ExactMatrix> {
    (0..d)
        .map(|k| {
            Matrix::from_fn(d, d, |r, c| {
                if r == k && c == k {
                    GaussianRational::one()
                } else {
                    GaussianRational::zero()
                }
            })
        })
        .collect()
}

fn validate_qudit_basis(projs: &[ExactMatrix]) -> Result<(), String> {
    let d = projs.len();
    if d < 2 {
        return Err("fewer than two projectors".into());
    }
    for (k, p) in projs.iter().enumerate() {
        if p.rows() != d || p.cols() != d {
            return Err(format!("projector {k} is not {d}x{d}"));
        }
        if !p.is_hermitian() {
            return Err(format!("projector {k} is not Hermitian"));
        }
        if p.mul(p) != *p {
            return Err(format!("projector {k} is not idempotent"));
        }
        if !p.trace().is_one() {
            return Err(format!("projector {k} does not have trace 1"));
        }
        for (l, q) in projs.iter().enumerate().skip(k + 1) {
            if !p.mul(q).is_zero() {
                return Err(format!("projectors {k} and {l} are not orthogonal"));
            }
        }
    }
    let sum = projs.iter().skip(1).fold(projs[0].clone(), |acc, p| acc.plus(p));
    if sum != Matrix::identity_like(d, &GaussianRational::zero()) {
        return Err("projectors do not sum to the identity".into());
    }
    Ok(())
}

/// Product state `rho_0 = (x)_j sum_k p_k pi_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialState {
    basis: LocalBasis,
    probs: Vec<Vec<BigRational>>,
}

impl InitialState {
    pub fn new(basis: LocalBasis, probs: Vec<Vec<BigRational>>) -> Result<Self, CircuitError> {
        if probs.len() != basis.len() {
            return Err(CircuitError::DimensionMismatch {
                expected: basis.len(),
                found: probs.len(),
            });
        }
        for (j, p) in probs.iter().enumerate() {
            if p.len() != basis.qudit(j).len() {
                return Err(invalid(format!("qudit {j} has {} probabilities", p.len())));
            }
            if p.iter().any(Signed::is_negative) {
                return Err(invalid(format!("qudit {j} has a negative probability")));
            }
            let total = p.iter().fold(BigRational::zero(), |a, b| a + b);
            if !One::is_one(&total) {
                return Err(invalid(format!("probabilities of qudit {j} do not sum to 1")));
            }
        }
        Ok(Self { basis, probs })
    }

    pub fn basis(&self) -> &LocalBasis {
        &self.basis
    }

    pub fn probs(&self) -> &[Vec<BigRational>] {
        &self.probs
    }

    /// Local density matrix of qudit `j`.
    pub fn local_state(&self, j: usize) -> ExactMatrix {
        let projs = self.basis.qudit(j);
        let d = projs.len();
        projs.iter().zip(&self.probs[j]).fold(
            Matrix::filled(d, d, GaussianRational::zero()),
            |acc, (p, w)| acc.plus(&p.scale(&GaussianRational::from(w.clone()))),
        )
    }

    /// Full density matrix (desk-scale registers only).
    pub fn density_matrix(&self) -> ExactMatrix {
        (0..self.probs.len()).fold(Matrix::identity_like(1, &GaussianRational::zero()), |acc, j| {
            acc.kron(&self.local_state(j))
        })
    }
}

/// A bijection on the dit strings of `support`, as a table of mixed-radix indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationGate {
    support: Vec<usize>,
    map: Vec<usize>,
}

impl PermutationGate {
    pub fn new(support: Vec<usize>, map: Vec<usize>) -> Result<Self, CircuitError> {
        let mut seen = vec![false; map.len()];
        for &y in &map {
            if y >= map.len() || std::mem::replace(&mut seen[y], true) {
                return Err(invalid("permutation map is not a bijection"));
            }
        }
        Ok(Self { support, map })
    }

    pub fn identity(support: Vec<usize>, dim: usize) -> Self {
        Self {
            support,
            map: (0..dim).collect(),
        }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, index: usize) -> usize {
        self.map[index]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Self {
            support: self.support.clone(),
            map: inv,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    register: QuditRegister,
    initial: InitialState,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(register: QuditRegister, initial: InitialState, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        if initial.basis().dims() != register.dims() {
            return Err(invalid("initial basis dimensions differ from the register"));
        }
        for (t, g) in gates.iter().enumerate() {
            register
                .check_support(g.support())
                .map_err(|e| invalid(format!("gate {t}: {e}")))?;
            let d = register.support_dim(g.support());
            if g.dim() != d {
                return Err(invalid(format!("gate {t} is {}x{0} on a {d}-dimensional support", g.dim())));
            }
        }
        Ok(Self {
            register,
            initial,
            gates,
        })
    }

    pub fn register(&self) -> &QuditRegister {
        &self.register
    }

    pub fn initial(&self) -> &InitialState {
        &self.initial
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn to_document(&self) -> CircuitDocument {
        CircuitDocument {
            dims: self.register.dims().to_vec(),
            initial: InitialDocument {
                probs: self
                    .initial
                    .probs()
                    .iter()
                    .map(|p| p.iter().map(crate::exactnum::rational::format_rational).collect())
                    .collect(),
                basis: self
                    .initial
                    .basis()
                    .per_qudit
                    .iter()
                    .map(|ps| ps.iter().map(ExactMatrix::to_rows).collect())
                    .collect(),
            },
            gates: self
                .gates
                .iter()
                .map(|g| GateDocument {
                    support: g.support.clone(),
                    radicand: g.radicand,
                    matrix: g.matrix.to_rows(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("documents always serialize")
    }
}

/// A matrix as rows of scalar literals, the JSON layout used in files.
pub type GaussianRows = Vec<Vec<GaussianRational>>;
type MatrixRows = GaussianRows;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitDocument {
    pub dims: Vec<usize>,
    pub initial: InitialDocument,
    pub gates: Vec<GateDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialDocument {
    pub probs: Vec<Vec<String>>,
    pub basis: Vec<Vec<MatrixRows>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateDocument {
    pub support: Vec<usize>,
    pub radicand: u64,
    pub matrix: MatrixRows,
}

pub fn matrix_from_rows(rows: MatrixRows) -> Result<ExactMatrix, CircuitError> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || rows.iter().any(|r| r.len() != cols) {
        return Err(CircuitError::Parse("ragged or empty matrix".into()));
    }
    Ok(ExactMatrix::from_rows(rows))
}

impl CircuitDocument {
    pub fn into_circuit(self) -> Result<Circuit, CircuitError> {
        let register = QuditRegister::new(self.dims)?;
        let basis = self
            .initial
            .basis
            .into_iter()
            .map(|ps| ps.into_iter().map(matrix_from_rows).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let basis = LocalBasis::new(basis)?;
        let probs = self
            .initial
            .probs
            .iter()
            .map(|ps| {
                ps.iter()
                    .map(|p| {
                        crate::exactnum::rational::parse_rational(p).map_err(|e| CircuitError::Parse(e.to_string()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let initial = InitialState::new(basis, probs)?;
        let gates = self
            .gates
            .into_iter()
            .enumerate()
            .map(|(t, g)| {
                let m = matrix_from_rows(g.matrix)?;
                Gate::new(g.support, m, g.radicand).map_err(|e| invalid(format!("gate {t}: {e}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Circuit::new(register, initial, gates)
    }
}

pub fn load_circuit(document: &str) -> Result<Circuit, CircuitError> {
    let doc: CircuitDocument = serde_json::from_str(document).map_err(|e| CircuitError::Parse(e.to_string()))?;
    doc.into_circuit()
}
