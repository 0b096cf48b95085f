//! The local-basis finder.
//!
//! Given a gate `G` on support `b` and the previous local basis `L` there, find
//! a new rank-1 product basis `L'` and a dit-string permutation `D` with
//! `G L X L^dagger G^dagger = L' D X D^dagger L'^dagger` for every block `X` of
//! a partition of the dit strings, or herald that none is determined.

pub mod solve;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::circuit::{digits_of, format_dits, CircuitError, Gate, LocalBasis, PermutationGate};
use crate::exactnum::matrix::rank_one_projector;
use crate::exactnum::{
    canonical_order, rational_gram_schmidt, ExactMatrix, ExactNumError, GaussianRational, Matrix,
};
use crate::tensor::expand;

use solve::{instance_blocks, overlap_components, random_instance, solution_space};

pub const DEFAULT_MAX_SUPPORT_DIM: usize = 64;
const INSTANCE_TRIES: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LbfError {
    #[error("gate support dimension {dim} exceeds the cap {cap}")]
    GateTooLarge { dim: usize, cap: usize },
    #[error("concordance promise violated: {0}")]
    PromiseViolation(String),
    #[error("no consistent permutation: {0}")]
    NoPermutation(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Exact(#[from] ExactNumError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LbfConfig {
    pub max_support_dim: usize,
    pub seed: u64,
}

impl Default for LbfConfig {
    fn default() -> Self {
        Self {
            max_support_dim: DEFAULT_MAX_SUPPORT_DIM,
            seed: 0,
        }
    }
}

/// A gate together with the previous basis on its support (qudit `k` of the
/// basis is support position `k`).
#[derive(Debug, Clone)]
pub struct LbfInput<'a> {
    pub gate: &'a Gate,
    pub prev: &'a LocalBasis,
}

impl LbfInput<'_> {
    pub fn local_dims(&self) -> Vec<usize> {
        self.prev.dims()
    }

    pub fn dim(&self) -> usize {
        self.local_dims().iter().product()
    }

    /// `G pi_x G^dagger` for every previous-basis product projector.
    pub fn images(&self) -> Result<Vec<ExactMatrix>, LbfError> {
        let dims = self.local_dims();
        let support: Vec<usize> = (0..dims.len()).collect();
        (0..self.dim())
            .into_par_iter()
            .map(|x| {
                let p = self.prev.embed_projector(&support, &digits_of(x, &dims))?;
                Ok(self.gate.conjugate_projector(&p)?)
            })
            .collect()
    }
}

/// `X_k`: a set of dit strings (mixed-radix indices over the support).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateProjector {
    pub subset: Vec<usize>,
}

impl CandidateProjector {
    pub fn rank(&self) -> usize {
        self.subset.len()
    }

    pub fn matrix(&self, dim: usize) -> ExactMatrix {
        Matrix::from_fn(dim, dim, |r, c| {
            GaussianRational::from_int(i64::from(r == c && self.subset.contains(&r)))
        })
    }

    pub fn complement(&self, dim: usize) -> Self {
        Self {
            subset: (0..dim).filter(|x| !self.subset.contains(x)).collect(),
        }
    }
}

/// Candidates of rank `r`, one per complementary pair.
pub fn candidates_of_rank(dim: usize, r: usize) -> Vec<CandidateProjector> {
    if r == 0 || 2 * r > dim {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        if 2 * r < dim || idx[0] == 0 {
            out.push(CandidateProjector { subset: idx.clone() });
        }
        let Some(i) = (0..r).rev().find(|&i| idx[i] != i + dim - r) else {
            return out;
        };
        idx[i] += 1;
        for k in i + 1..r {
            idx[k] = idx[k - 1] + 1;
        }
    }
}

/// All candidates in rank order 1, 2, ..., floor(d/2).
pub fn enumerate_candidates(dim: usize, cap: usize) -> Result<Vec<CandidateProjector>, LbfError> {
    if dim > cap {
        return Err(LbfError::GateTooLarge { dim, cap });
    }
    Ok((1..=dim / 2).flat_map(|r| candidates_of_rank(dim, r)).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct LocalBasisSolution {
    /// Rational spectral blocks of a random solution, per support qudit.
    pub per_qudit: Vec<Vec<ExactMatrix>>,
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct XkUniqueBasis {
    pub per_qudit: Vec<Vec<ExactMatrix>>,
}

/// Solution and uniquely determined blocks for one candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSolution {
    pub candidate: CandidateProjector,
    pub solution: LocalBasisSolution,
    pub unique: Option<XkUniqueBasis>,
}

fn candidate_image(images: &[ExactMatrix], x: &CandidateProjector) -> ExactMatrix {
    let d = images[0].rows();
    x.subset
        .iter()
        .fold(Matrix::filled(d, d, GaussianRational::zero()), |acc, &k| acc.plus(&images[k]))
}

fn solve_with_images(
    local_dims: &[usize],
    y: &ExactMatrix,
    candidate: &CandidateProjector,
    rng: &mut ChaCha20Rng,
) -> Result<CandidateSolution, LbfError> {
    let mut first = Vec::new();
    let mut unique = Vec::new();
    let mut complete = true;
    for j in 0..local_dims.len() {
        let space = solution_space(local_dims, j, y);
        if space.len() <= 1 {
            complete = false;
            first.push(vec![Matrix::identity_like(local_dims[j], &GaussianRational::zero())]);
            break;
        }
        // A nondegenerate instance proves completeness; a degenerate one may
        // be an unlucky draw, so redraw a few times before giving up.
        let mut found = Vec::new();
        for _ in 0..INSTANCE_TRIES * 2 {
            let inst = instance_blocks(&random_instance(&space, rng))?;
            if inst.nondegenerate {
                found.push(inst.projectors);
                if found.len() == 2 {
                    break;
                }
            }
        }
        match found.len() {
            0 => {
                complete = false;
                first.push(vec![Matrix::identity_like(local_dims[j], &GaussianRational::zero())]);
            }
            1 => {
                unique.push(found[0].clone());
                first.push(found.swap_remove(0));
            }
            _ => {
                unique.push(overlap_components(&found[0], &found[1]));
                first.push(found.swap_remove(0));
            }
        }
        if !complete {
            break;
        }
    }
    let unique = complete.then(|| XkUniqueBasis {
        per_qudit: unique
            .into_iter()
            .map(|mut ps| {
                ps.sort_by(canonical_order);
                ps
            })
            .collect(),
    });
    Ok(CandidateSolution {
        candidate: candidate.clone(),
        solution: LocalBasisSolution {
            per_qudit: first,
            complete,
        },
        unique,
    })
}

/// Solve the local-basis equations for one candidate.
pub fn solve_local_basis(
    input: &LbfInput<'_>,
    x: &CandidateProjector,
    seed: u64,
) -> Result<CandidateSolution, LbfError> {
    let images = input.images()?;
    let y = candidate_image(&images, x);
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    solve_with_images(&input.local_dims(), &y, x, &mut rng)
}

/// A failed cross-commutation `[1 (x) rho_u, Y_{k'}] != 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub k: CandidateProjector,
    pub k_prime: CandidateProjector,
    pub qudit: usize,
    pub projector: ExactMatrix,
    pub commutator: ExactMatrix,
}

/// Literal check of every unique block against every candidate image.
pub fn compatibility_check(
    solutions: &[CandidateSolution],
    images: &[ExactMatrix],
    local_dims: &[usize],
) -> Result<(), Box<Witness>> {
    for s in solutions {
        let Some(u) = &s.unique else { continue };
        for (j, projs) in u.per_qudit.iter().enumerate() {
            for p in projs {
                let full = expand(local_dims, &[j], p);
                for t in solutions {
                    let y = candidate_image(images, &t.candidate);
                    let c = full.commutator(&y);
                    if !c.is_zero() {
                        return Err(Box::new(Witness {
                            k: s.candidate.clone(),
                            k_prime: t.candidate.clone(),
                            qudit: j,
                            projector: p.clone(),
                            commutator: c,
                        }));
                    }
                }
            }
        }
    }
    Ok(())
}

/// Common refinement of commuting projector families; `None` if two
/// projectors fail to commute.
fn refine(families: &[&Vec<ExactMatrix>], d: usize) -> Option<Vec<ExactMatrix>> {
    let mut blocks = vec![Matrix::identity_like(d, &GaussianRational::zero())];
    for fam in families {
        let mut next = Vec::new();
        for p in &blocks {
            for q in fam.iter() {
                let pq = p.mul(q);
                if pq != q.mul(p) {
                    return None;
                }
                if !pq.is_zero() {
                    next.push(pq);
                }
            }
        }
        blocks = next;
    }
    Some(blocks)
}

/// Rank-1 projectors splitting `block`, from its columns by Gram-Schmidt.
pub fn split_block(block: &ExactMatrix) -> Vec<ExactMatrix> {
    let cols: Vec<Vec<GaussianRational>> = (0..block.cols()).map(|c| block.column(c)).collect();
    rational_gram_schmidt(&cols).iter().map(|v| rank_one_projector(v)).collect()
}

/// Fine-grained rank-1 basis per qudit, in canonical order.
pub fn fine_grain(solutions: &[CandidateSolution], local_dims: &[usize]) -> Option<Vec<Vec<ExactMatrix>>> {
    let mut out = Vec::new();
    for (j, &d) in local_dims.iter().enumerate() {
        let fams: Vec<&Vec<ExactMatrix>> = solutions
            .iter()
            .filter_map(|s| s.unique.as_ref().map(|u| &u.per_qudit[j]))
            .collect();
        let blocks = refine(&fams, d)?;
        let mut rank1: Vec<ExactMatrix> = blocks.iter().flat_map(split_block).collect();
        rank1.sort_by(canonical_order);
        out.push(rank1);
    }
    Some(out)
}

/// Atoms of the set algebra generated by the candidate subsets.
pub fn atoms(dim: usize, chi: &[CandidateProjector]) -> Vec<Vec<usize>> {
    let mut groups: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
    for x in 0..dim {
        let sig: Vec<bool> = chi.iter().map(|c| c.subset.contains(&x)).collect();
        match groups.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, g)) => g.push(x),
            None => groups.push((sig, vec![x])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// The lexicographically least `D` mapping each atom onto the new-basis dit
/// strings its image occupies, or why none exists.
pub fn find_permutation(
    images: &[ExactMatrix],
    new_basis: &[Vec<ExactMatrix>],
    partition: &[Vec<usize>],
) -> Result<Vec<usize>, String> {
    let dims: Vec<usize> = new_basis.iter().map(Vec::len).collect();
    let support: Vec<usize> = (0..dims.len()).collect();
    let basis = LocalBasis::new(new_basis.to_vec()).map_err(|e| e.to_string())?;
    let d = images.len();
    let products: Vec<ExactMatrix> = (0..d)
        .map(|y| basis.embed_projector(&support, &digits_of(y, &dims)).expect("in range"))
        .collect();
    let mut map = vec![usize::MAX; d];
    for block in partition {
        let image = block
            .iter()
            .fold(Matrix::filled(d, d, GaussianRational::zero()), |acc, &x| acc.plus(&images[x]));
        let targets: Vec<usize> = (0..d)
            .filter(|&y| !products[y].trace_of_product(&image).is_zero())
            .collect();
        if targets.len() != block.len() {
            return Err(format!("block of size {} overlaps {} new basis states", block.len(), targets.len()));
        }
        let sum = targets
            .iter()
            .fold(Matrix::filled(d, d, GaussianRational::zero()), |acc, &y| acc.plus(&products[y]));
        if sum != image {
            return Err("block image is not a sum of new product projectors".into());
        }
        for (&x, &y) in block.iter().zip(&targets) {
            map[x] = y;
        }
    }
    Ok(map)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LbfSuccess {
    /// New rank-1 basis per support qudit.
    pub basis: Vec<Vec<ExactMatrix>>,
    /// `D` on support-local dit strings.
    pub permutation: PermutationGate,
    /// The uniquely determined blocks of dit strings.
    pub partition: Vec<Vec<usize>>,
    /// Candidates with complete solutions.
    pub chi: Vec<CandidateSolution>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LbfOutcome {
    Success(LbfSuccess),
    Incompatible(Box<Witness>),
}

enum Attempt {
    Done(LbfSuccess),
    Incompatible(Box<Witness>),
    Undetermined(String),
}

fn attempt(
    input: &LbfInput<'_>,
    chi: &[CandidateSolution],
    images: &[ExactMatrix],
) -> Attempt {
    let dims = input.local_dims();
    let fast = fine_grain(chi, &dims).ok_or_else(|| "unique blocks do not commute".to_string());
    let partition = atoms(images.len(), &chi.iter().map(|c| c.candidate.clone()).collect::<Vec<_>>());
    let result = fast.and_then(|basis| {
        let map = find_permutation(images, &basis, &partition)?;
        Ok((basis, map))
    });
    match result {
        Ok((basis, map)) => {
            let support = input.gate.support().to_vec();
            let permutation = PermutationGate::new(support, map).expect("blocks are disjoint");
            Attempt::Done(LbfSuccess {
                basis,
                permutation,
                partition,
                chi: chi.to_vec(),
            })
        }
        Err(why) => match compatibility_check(chi, images, &dims) {
            Err(w) => Attempt::Incompatible(w),
            Ok(()) => Attempt::Undetermined(why),
        },
    }
}

/// Run the finder end to end.
pub fn run_lbf(input: &LbfInput<'_>, config: &LbfConfig) -> Result<LbfOutcome, LbfError> {
    let dim = input.dim();
    if dim > config.max_support_dim {
        return Err(LbfError::GateTooLarge {
            dim,
            cap: config.max_support_dim,
        });
    }
    let dims = input.local_dims();
    let images = input.images()?;
    let mut chi: Vec<CandidateSolution> = Vec::new();
    let mut last_reason = String::from("no candidate has a complete solution");
    let mut ordinal = 0u64;
    for r in 1..=dim / 2 {
        let level = candidates_of_rank(dim, r);
        let base = ordinal;
        ordinal += level.len() as u64;
        let solved: Vec<CandidateSolution> = level
            .par_iter()
            .enumerate()
            .map(|(i, c)| {
                let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
                rng.set_stream(base + i as u64);
                let y = candidate_image(&images, c);
                solve_with_images(&dims, &y, c, &mut rng)
            })
            .collect::<Result<_, _>>()?;
        chi.extend(solved.into_iter().filter(|s| s.solution.complete));
        if chi.is_empty() {
            continue;
        }
        let cands: Vec<CandidateProjector> = chi.iter().map(|c| c.candidate.clone()).collect();
        let widest = atoms(dim, &cands).iter().map(Vec::len).max().unwrap_or(0);
        if widest > r && r < dim / 2 {
            continue;
        }
        match attempt(input, &chi, &images) {
            Attempt::Done(s) => return Ok(LbfOutcome::Success(s)),
            Attempt::Incompatible(w) => return Ok(LbfOutcome::Incompatible(w)),
            Attempt::Undetermined(why) => last_reason = why,
        }
    }
    if chi.is_empty() {
        if dim == 1 {
            return Ok(LbfOutcome::Success(LbfSuccess {
                basis: input.prev.clone().into_inner(),
                permutation: PermutationGate::identity(input.gate.support().to_vec(), 1),
                partition: vec![vec![0]],
                chi,
            }));
        }
        return Err(LbfError::PromiseViolation(last_reason));
    }
    Err(LbfError::NoPermutation(last_reason))
}

/// Diagnostic dump of one finder run.
#[derive(Debug, Clone, Serialize)]
pub struct LbfDump {
    pub support: Vec<usize>,
    pub chi: Vec<Vec<String>>,
    pub unique_bases: Vec<Vec<Vec<Vec<Vec<GaussianRational>>>>>,
    pub basis: Vec<Vec<Vec<Vec<GaussianRational>>>>,
    pub partition: Vec<Vec<String>>,
    pub permutation: Vec<(String, String)>,
}

impl LbfSuccess {
    pub fn dump(&self, local_dims: &[usize]) -> LbfDump {
        let dit = |x: usize| format_dits(&digits_of(x, local_dims), local_dims);
        let mats = |ps: &Vec<ExactMatrix>| ps.iter().map(ExactMatrix::to_rows).collect::<Vec<_>>();
        LbfDump {
            support: self.permutation.support().to_vec(),
            chi: self
                .chi
                .iter()
                .map(|c| c.candidate.subset.iter().map(|&x| dit(x)).collect())
                .collect(),
            unique_bases: self
                .chi
                .iter()
                .map(|c| c.unique.as_ref().map(|u| u.per_qudit.iter().map(mats).collect()).unwrap_or_default())
                .collect(),
            basis: self.basis.iter().map(mats).collect(),
            partition: self.partition.iter().map(|b| b.iter().map(|&x| dit(x)).collect()).collect(),
            permutation: self
                .permutation
                .map()
                .iter()
                .enumerate()
                .map(|(x, &y)| (dit(x), dit(y)))
                .collect(),
        }
    }
}
