//! Dense reference evolution for small registers.

use std::collections::BTreeMap;

use num_traits::Zero;
use thiserror::Error;

use crate::circuit::{digits_of, format_dits, Circuit, Gate, LocalBasis, QuditRegister};
use crate::exactnum::rational::common_denominator;
use crate::exactnum::{BigRational, ExactMatrix, GaussianRational, Matrix};
use crate::frase::{DenseState, FraseError};
use crate::simulator::MeasurementSpec;
use crate::tensor::{apply_left, conjugate, partial_trace};

pub const DEFAULT_DENSE_CAP: usize = 1 << 10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("register dimension {dim} exceeds the dense cap {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error(transparent)]
    State(#[from] FraseError),
    #[error("measurement targets must be distinct qudits")]
    RepeatedTarget,
}

/// The state is kept as `scale * scaled` with Gaussian-integer `scaled`, so
/// evolution never reduces big fractions entry by entry.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseEvolution {
    register: QuditRegister,
    scaled: ExactMatrix,
    scale: BigRational,
    /// Number of gates applied so far.
    pub history: usize,
}

fn integer_multiple(m: &ExactMatrix) -> (ExactMatrix, BigRational) {
    let den = common_denominator(m.entries().iter().flat_map(|z| [&z.re, &z.im]));
    let scaled = m.scale(&GaussianRational::from(BigRational::from_integer(den.clone())));
    (scaled, BigRational::new(1.into(), den))
}

impl DenseEvolution {
    pub fn start(circuit: &Circuit, cap: usize) -> Result<Self, OracleError> {
        let dim = circuit.register().total_dim();
        if dim > cap {
            return Err(OracleError::TooLarge { dim, cap });
        }
        let state = DenseState::from_initial(circuit.register().clone(), circuit.initial())?;
        let (scaled, scale) = integer_multiple(state.matrix());
        Ok(Self {
            register: circuit.register().clone(),
            scaled,
            scale,
            history: 0,
        })
    }

    pub fn register(&self) -> &QuditRegister {
        &self.register
    }

    /// The current density matrix.
    pub fn state(&self) -> DenseState {
        let m = self.scaled.scale(&GaussianRational::from(self.scale.clone()));
        DenseState::new(self.register.clone(), m).expect("unitary evolution keeps a valid state")
    }
}

/// `rho <- M rho M^dagger / n` on the gate's support.
pub fn evolve(d: &DenseEvolution, g: &Gate) -> Result<DenseEvolution, OracleError> {
    let scaled = conjugate(d.register.dims(), g.support(), g.matrix(), &d.scaled);
    Ok(DenseEvolution {
        register: d.register.clone(),
        scaled,
        scale: &d.scale / BigRational::from_integer(g.radicand().into()),
        history: d.history + 1,
    })
}

/// Whether `rho` is diagonal in the product basis, i.e. commutes with every
/// local basis projector. For Hermitian `P` and `rho`, `[P, rho] = 0` exactly
/// when `P rho` is Hermitian.
pub fn check_concordant(d: &DenseEvolution, basis: &LocalBasis) -> bool {
    let dims = d.register.dims();
    (0..dims.len()).all(|j| {
        let projs = basis.qudit(j);
        // The last projector is the complement of the others.
        projs[..projs.len() - 1].iter().all(|p| {
            let (p, _) = integer_multiple(p);
            apply_left(dims, &[j], &p, &d.scaled).is_hermitian()
        })
    })
}

/// `Tr(rho (B_1 (x) ... (x) B_k))` for every joint outcome, zeros omitted.
pub fn dense_marginals(d: &DenseEvolution, spec: &MeasurementSpec) -> Result<BTreeMap<String, BigRational>, OracleError> {
    let keep: Vec<usize> = spec.targets.iter().map(|t| t.qudit).collect();
    let mut sorted = keep.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != keep.len() {
        return Err(OracleError::RepeatedTarget);
    }
    let reduced = partial_trace(d.register.dims(), &keep, &d.scaled);
    let odims: Vec<usize> = spec.targets.iter().map(|t| t.basis.len()).collect();
    let total: usize = odims.iter().product();
    let mut out = BTreeMap::new();
    for o in 0..total {
        let digits = digits_of(o, &odims);
        let op = spec
            .targets
            .iter()
            .zip(&digits)
            .fold(Matrix::identity_like(1, &GaussianRational::zero()), |acc, (t, &k)| acc.kron(&t.basis[k]));
        let p = reduced.trace_of_product(&op).re * &d.scale;
        if !p.is_zero() {
            out.insert(format_dits(&digits, &odims), p);
        }
    }
    Ok(out)
}
