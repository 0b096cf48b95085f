//! Subsystem eigenprojectors of explicitly stored states.
//!
//! A state is quantum-classical on `b` when it can be written as
//! `sum_k rho_k (x) Pi_k` with orthogonal projectors `Pi_k` on `b`. The
//! full-rank subsystem eigenprojectors (FRASEs) are the coarsest such
//! projectors whose conditional operators `rho_k` are pairwise distinct.

use thiserror::Error;

use crate::circuit::{digits_of, CircuitError, InitialState, LocalBasis, QuditRegister};
use crate::exactnum::eigen::spectral_blocks;
use crate::exactnum::{
    canonical_order, BigRational, ExactMatrix, ExactNumError, GaussianRational, Matrix,
};
use crate::tensor::{expand, partial_trace, slices};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FraseError {
    #[error("projector does not commute with the state")]
    NotAnEigenprojector,
    #[error("state is not quantum-classical on the chosen subsystem")]
    NotQuantumClassical,
    #[error("subsystem eigenprojectors are not rational")]
    NonRationalFrase,
    #[error("state is invalid: {0}")]
    InvalidState(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Exact(#[from] ExactNumError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    register: QuditRegister,
    matrix: ExactMatrix,
}

impl DenseState {
    pub fn new(register: QuditRegister, matrix: ExactMatrix) -> Result<Self, FraseError> {
        let n = register.total_dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(FraseError::InvalidState(format!("expected a {n}x{n} matrix")));
        }
        if !matrix.is_hermitian() {
            return Err(FraseError::InvalidState("matrix is not Hermitian".into()));
        }
        if matrix.trace() != GaussianRational::one() {
            return Err(FraseError::InvalidState("trace differs from 1".into()));
        }
        Ok(Self { register, matrix })
    }

    pub fn from_initial(register: QuditRegister, initial: &InitialState) -> Result<Self, FraseError> {
        Self::new(register, initial.density_matrix())
    }

    pub fn register(&self) -> &QuditRegister {
        &self.register
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.matrix
    }

    /// Qudits outside `b`, ascending.
    pub fn complement(&self, b: &[usize]) -> Vec<usize> {
        (0..self.register.len()).filter(|j| !b.contains(j)).collect()
    }
}

/// Unnormalized conditional state on the complement of `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sove {
    pub operator: ExactMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Frase {
    pub projector: ExactMatrix,
    pub rank: usize,
    pub sove: Sove,
}

fn rank_of(p: &ExactMatrix) -> usize {
    p.trace().re.to_integer().try_into().unwrap_or(0)
}

/// `Tr_b[(1 (x) se) rho] / rank(se)`; `b` lists the qudits `se` acts on.
pub fn sove_of(state: &DenseState, b: &[usize], se: &ExactMatrix) -> Result<Sove, FraseError> {
    state.register.check_support(b)?;
    let dims = state.register.dims();
    let full = expand(dims, b, se);
    let rho = &state.matrix;
    if !full.commutes_with(rho) {
        return Err(FraseError::NotAnEigenprojector);
    }
    let a = state.complement(b);
    let weighted = full.mul(rho);
    let mut op = if a.is_empty() {
        Matrix::from_rows(vec![vec![weighted.trace()]])
    } else {
        partial_trace(dims, &a, &weighted)
    };
    let r = rank_of(se);
    if r > 1 {
        op = op.scale(&GaussianRational::from(BigRational::new(1.into(), r.into())));
    }
    Ok(Sove { operator: op })
}

/// True iff `Tr(P1 P2) = 0`.
pub fn orthogonality_check(f1: &Frase, f2: &Frase) -> bool {
    f1.projector.mul(&f2.projector).trace().is_zero()
}

/// Hermitian generators of the algebra spanned by the slices of `rho` on `b`.
pub fn hermitian_slices(dims: &[usize], b: &[usize], rho: &ExactMatrix) -> Vec<ExactMatrix> {
    let y = slices(dims, b, rho);
    let i = GaussianRational::i();
    let mut out = Vec::new();
    for r in 0..y.len() {
        out.push(y[r][r].clone());
        for s in r + 1..y.len() {
            out.push(y[r][s].plus(&y[s][r]));
            out.push(y[r][s].minus(&y[s][r]).scale(&i));
        }
    }
    out.retain(|h| !h.is_zero());
    out
}

/// Minimal projectors of the commutative *-algebra generated by `generators`
/// and the identity. Fails when the generators do not commute or when the
/// minimal projectors are not rational.
pub fn commutative_atoms(n: usize, generators: &[ExactMatrix]) -> Result<Vec<ExactMatrix>, FraseError> {
    for (k, g) in generators.iter().enumerate() {
        for h in &generators[k + 1..] {
            if !g.commutes_with(h) {
                return Err(FraseError::NotQuantumClassical);
            }
        }
    }
    let mut blocks = vec![Matrix::identity_like(n, &GaussianRational::zero())];
    for h in generators {
        if blocks.iter().all(|p| rank_of(p) == 1) {
            break;
        }
        // Skip generators already constant on every block.
        let constant = blocks.iter().all(|p| {
            let hp = h.mul(p);
            let c = hp.trace().scale(&BigRational::new(1.into(), rank_of(p).into()));
            hp == p.scale(&c)
        });
        if constant {
            continue;
        }
        let spectrum = spectral_blocks(h)?;
        let mut next = Vec::new();
        for p in &blocks {
            let pieces: Vec<ExactMatrix> = spectrum
                .iter()
                .map(|s| (s, p.mul(&s.projector)))
                .filter(|(_, q)| !q.is_zero())
                .map(|(s, q)| if s.is_rational() { Ok(q) } else { Err(FraseError::NonRationalFrase) })
                .collect::<Result<_, _>>()?;
            next.extend(pieces);
        }
        blocks = next;
    }
    blocks.sort_by(canonical_order);
    Ok(blocks)
}

fn assemble(state: &DenseState, b: &[usize], projectors: Vec<ExactMatrix>) -> Result<Vec<Frase>, FraseError> {
    projectors
        .into_iter()
        .map(|p| {
            let sove = sove_of(state, b, &p)?;
            Ok(Frase {
                rank: rank_of(&p),
                projector: p,
                sove,
            })
        })
        .collect()
}

/// FRASE decomposition on `b`, discovering the eigenprojectors from the state.
pub fn frase_decompose(state: &DenseState, b: &[usize]) -> Result<Vec<Frase>, FraseError> {
    state.register.check_support(b)?;
    let dims = state.register.dims();
    let gens = hermitian_slices(dims, b, &state.matrix);
    let atoms = commutative_atoms(state.register.support_dim(b), &gens)?;
    assemble(state, b, atoms)
}

/// FRASE decomposition when a product basis on `b` is known: rank-1 SEs are
/// enumerated in that basis and grouped by exact SOVE equality.
pub fn frase_decompose_in_basis(
    state: &DenseState,
    b: &[usize],
    basis: &LocalBasis,
) -> Result<Vec<Frase>, FraseError> {
    state.register.check_support(b)?;
    let local_dims: Vec<usize> = (0..b.len()).map(|k| basis.qudit(k).len()).collect();
    let local: Vec<usize> = (0..b.len()).collect();
    let d: usize = local_dims.iter().product();
    let mut groups: Vec<(Sove, ExactMatrix)> = Vec::new();
    for x in 0..d {
        let pi = basis.embed_projector(&local, &digits_of(x, &local_dims))?;
        let sove = sove_of(state, b, &pi).map_err(|e| match e {
            FraseError::NotAnEigenprojector => FraseError::NotQuantumClassical,
            e => e,
        })?;
        match groups.iter_mut().find(|(s, _)| *s == sove) {
            Some((_, p)) => *p = p.plus(&pi),
            None => groups.push((sove, pi)),
        }
    }
    let mut projectors: Vec<ExactMatrix> = groups.into_iter().map(|(_, p)| p).collect();
    projectors.sort_by(canonical_order);
    assemble(state, b, projectors)
}

/// `sum_k rho_k (x) Pi_k` embedded back into the register (with `b` placed
/// where it lives); used to check a decomposition.
pub fn reconstruct(state: &DenseState, b: &[usize], frases: &[Frase]) -> ExactMatrix {
    let dims = state.register.dims();
    let a = state.complement(b);
    let n = state.register.total_dim();
    let mut out = Matrix::filled(n, n, GaussianRational::zero());
    for f in frases {
        let term = if a.is_empty() {
            expand(dims, b, &f.projector).scale(&f.sove.operator.get(0, 0).clone())
        } else {
            let mut support = a.clone();
            support.extend_from_slice(b);
            let local = f.sove.operator.kron(&f.projector);
            expand(dims, &support, &local)
        };
        out = out.plus(&term);
    }
    out
}

pub fn total_rank(frases: &[Frase]) -> usize {
    frases.iter().map(|f| f.rank).sum()
}
