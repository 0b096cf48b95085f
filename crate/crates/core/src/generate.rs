//! Test fixtures and random concordant gates and circuits with known ground truth.
//!
//! Random gates have the form `G = L D B L'`: `L'` undoes the previous local
//! basis, `B` mixes dit strings inside blocks, `D` permutes dit strings and
//! `L` installs a fresh local basis. Every unitary is a rational Cayley
//! transform, optionally times one common surd, so `G = M / sqrt(n)`.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::circuit::{digits_of, index_of, Circuit, Gate, InitialState, LocalBasis, QuditRegister};
use crate::exactnum::matrix::rank_one_projector;
use crate::exactnum::rational::common_denominator;
use crate::exactnum::{BigRational, ExactMatrix, GaussianRational as G, Matrix};

fn gi(re: i64, im: i64) -> G {
    G::from_ints(re, im)
}

fn int_matrix(rows: &[&[(i64, i64)]]) -> ExactMatrix {
    ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| gi(a, b)).collect()).collect())
}

/// `|j,k> -> (Z^j (x) X^k)(|00> + |11>)/sqrt2`.
pub fn g_exc1(support: Vec<usize>) -> Gate {
    Gate::from_int_rows(support, &[&[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 1, 0, -1], &[1, 0, -1, 0]], 2)
        .expect("unitary")
}

/// Controlled Hadamard on the second qubit; the control-0 branch carries the
/// phase `(1+i)/sqrt2` so the whole gate has a single radicand.
pub fn g_exc2(support: Vec<usize>) -> Gate {
    let m = int_matrix(&[
        &[(1, 1), (0, 0), (0, 0), (0, 0)],
        &[(0, 0), (1, 1), (0, 0), (0, 0)],
        &[(0, 0), (0, 0), (1, 0), (1, 0)],
        &[(0, 0), (0, 0), (1, 0), (-1, 0)],
    ]);
    Gate::new(support, m, 2).expect("unitary")
}

/// Controlled version of a rational unitary `u` (first support qudit controls
/// on its last level).
pub fn controlled_rational(support: Vec<usize>, control_dim: usize, u: &ExactMatrix) -> Gate {
    let t = u.rows();
    let q = BigRational::from_integer(common_denominator(u.entries().iter().flat_map(|z| [&z.re, &z.im])));
    let scaled = u.scale(&G::from(q.clone()));
    let d = control_dim * t;
    let m = Matrix::from_fn(d, d, |r, c| {
        let (cr, tr) = (r / t, r % t);
        let (cc, tc) = (c / t, c % t);
        if cr != cc {
            G::zero()
        } else if cr == control_dim - 1 {
            scaled.get(tr, tc).clone()
        } else if tr == tc {
            G::from(q.clone())
        } else {
            G::zero()
        }
    });
    let n = (&q * &q).to_integer().to_u64().expect("small denominator");
    Gate::new(support, m, n).expect("unitary")
}

pub fn hadamard(support: Vec<usize>) -> Gate {
    Gate::from_int_rows(support, &[&[1, 1], &[1, -1]], 2).expect("unitary")
}

pub fn cnot(support: Vec<usize>) -> Gate {
    Gate::from_int_rows(support, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]], 1)
        .expect("unitary")
}

pub fn not_gate(support: Vec<usize>) -> Gate {
    Gate::from_int_rows(support, &[&[0, 1], &[1, 0]], 1).expect("unitary")
}

pub fn identity_gate(support: Vec<usize>, dim: usize) -> Gate {
    Gate::new(support, Matrix::identity_like(dim, &G::zero()), 1).expect("unitary")
}

pub fn computational_basis(d: usize) -> Vec<ExactMatrix> {
    crate::circuit::computational_projectors(d)
}

/// `|+><+|, |-><-|`.
pub fn plus_minus_basis() -> Vec<ExactMatrix> {
    vec![
        rank_one_projector(&[G::one(), G::one()]),
        rank_one_projector(&[G::one(), -G::one()]),
    ]
}

/// Random rational unitary `(I - A)(I + A)^-1` for a small skew-Hermitian `A`.
pub fn cayley_unitary(d: usize, rng: &mut ChaCha20Rng) -> ExactMatrix {
    let mut a = Matrix::filled(d, d, G::zero());
    for r in 0..d {
        a.set(r, r, gi(0, rng.gen_range(-2..=2)));
        for c in r + 1..d {
            let z = gi(rng.gen_range(-1..=1), rng.gen_range(-1..=1));
            a.set(c, r, -z.conj());
            a.set(r, c, z);
        }
    }
    let id = Matrix::identity_like(d, &G::zero());
    let inv = id.plus(&a).inverse().expect("I + A is invertible for skew-Hermitian A");
    id.minus(&a).mul(&inv)
}

/// Rank-1 projectors onto the columns of a unitary.
pub fn basis_of(u: &ExactMatrix) -> Vec<ExactMatrix> {
    (0..u.cols()).map(|c| rank_one_projector(&u.column(c))).collect()
}

/// A random rational basis whose projectors are all distinct from the
/// computational ones half of the time.
pub fn random_basis(d: usize, rng: &mut ChaCha20Rng) -> (ExactMatrix, Vec<ExactMatrix>) {
    let u = if rng.gen_bool(0.25) {
        Matrix::identity_like(d, &G::zero())
    } else {
        cayley_unitary(d, rng)
    };
    let b = basis_of(&u);
    (u, b)
}

fn permutation_matrix(map: &[usize]) -> ExactMatrix {
    let d = map.len();
    Matrix::from_fn(d, d, |r, c| if map[c] == r { G::one() } else { G::zero() })
}

/// Whether the dit strings `set` form a product set.
pub fn is_rectangle(set: &[usize], dims: &[usize]) -> bool {
    let digits: Vec<Vec<usize>> = set.iter().map(|&x| digits_of(x, dims)).collect();
    let mut size = 1usize;
    for j in 0..dims.len() {
        let mut vals: Vec<usize> = digits.iter().map(|d| d[j]).collect();
        vals.sort_unstable();
        vals.dedup();
        size *= vals.len();
    }
    size == set.len()
}

/// Whether the partition `blocks` (image-side dit strings) determines every
/// qudit's rank-1 projectors: for each qudit, any two levels are separated by
/// some block and some setting of the other qudits.
pub fn is_pinned(blocks: &[Vec<usize>], dims: &[usize]) -> bool {
    let d: usize = dims.iter().product();
    let mut owner = vec![0; d];
    for (k, b) in blocks.iter().enumerate() {
        for &x in b {
            owner[x] = k;
        }
    }
    for j in 0..dims.len() {
        for a in 0..dims[j] {
            for a2 in a + 1..dims[j] {
                let separated = (0..d).any(|x| {
                    let mut dig = digits_of(x, dims);
                    if dig[j] != a {
                        return false;
                    }
                    dig[j] = a2;
                    owner[x] != owner[index_of(&dig, dims)]
                });
                if !separated {
                    return false;
                }
            }
        }
    }
    true
}

/// Unitary block `B~` with `B~^dagger B~ = s I` whose columns have no zero
/// entries and no two entries of equal modulus. Either coincidence can put a
/// sub-block candidate's image on a product subspace, making it accidentally
/// complete.
fn block_unitary(m: usize, surd: u64, rng: &mut ChaCha20Rng) -> ExactMatrix {
    loop {
        let b = block_unitary_once(m, surd, rng);
        if m == 1 || generic_columns(&b) {
            return b;
        }
    }
}

fn generic_columns(b: &ExactMatrix) -> bool {
    (0..b.cols()).all(|c| {
        let mut norms: Vec<BigRational> = b.column(c).iter().map(G::norm_sqr).collect();
        norms.sort();
        norms.dedup();
        norms.len() == b.rows() && !norms[0].is_zero()
    })
}

fn block_unitary_once(m: usize, surd: u64, rng: &mut ChaCha20Rng) -> ExactMatrix {
    let u = cayley_unitary(m, rng);
    if surd == 1 {
        return u;
    }
    u.scale(&gi(1, 1))
}

/// Ground truth for one synthesized gate.
#[derive(Debug, Clone)]
pub struct GateTruth {
    pub gate: Gate,
    pub prev: LocalBasis,
    /// New basis projectors per support qudit (columns of `L`).
    pub next: Vec<Vec<ExactMatrix>>,
    /// Unitaries whose columns are the new basis vectors.
    pub next_units: Vec<ExactMatrix>,
    /// The planted `D` on support-local dit strings.
    pub permutation: Vec<usize>,
    /// `B` blocks in the previous-basis labelling.
    pub blocks: Vec<Vec<usize>>,
}

/// Options for [`random_gate`].
#[derive(Debug, Clone)]
pub struct GateSpec<'a> {
    pub support: Vec<usize>,
    pub local_dims: Vec<usize>,
    /// Previous basis unitaries (columns are the basis vectors).
    pub prev: Vec<ExactMatrix>,
    /// Allowed B-block groups: dit strings may share a block only if they
    /// share a class. `None` allows any grouping.
    pub classes: Option<&'a [usize]>,
}

fn max_block(d: usize) -> usize {
    if d > 9 {
        2
    } else {
        3
    }
}

fn choose_blocks(
    dims: &[usize],
    perm: &[usize],
    classes: Option<&[usize]>,
    rng: &mut ChaCha20Rng,
) -> Vec<Vec<usize>> {
    let d = perm.len();
    let mut order: Vec<usize> = (0..d).collect();
    order.shuffle(rng);
    let mut used = vec![false; d];
    let mut blocks = Vec::new();
    for &x in &order {
        if used[x] {
            continue;
        }
        used[x] = true;
        let mut block = vec![x];
        let want = rng.gen_range(1..=max_block(d));
        for &y in &order {
            if block.len() >= want {
                break;
            }
            if used[y] || classes.is_some_and(|c| c[y] != c[x]) {
                continue;
            }
            let mut trial = block.clone();
            trial.push(y);
            let image: Vec<usize> = trial.iter().map(|&z| perm[z]).collect();
            if !is_rectangle(&image, dims) {
                used[y] = true;
                block = trial;
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    blocks.sort();
    blocks
}

/// Synthesize `G = L D B L'` on `spec.support`. Returns `None` if the
/// radicand does not fit in 64 bits.
pub fn random_gate(spec: &GateSpec<'_>, rng: &mut ChaCha20Rng) -> Option<GateTruth> {
    let dims = &spec.local_dims;
    let d: usize = dims.iter().product();
    let one = Matrix::identity_like(1, &G::zero());
    let mut perm: Vec<usize> = (0..d).collect();
    let mut blocks;
    let mut tries = 0;
    loop {
        perm.shuffle(rng);
        blocks = choose_blocks(dims, &perm, spec.classes, rng);
        let images: Vec<Vec<usize>> = blocks.iter().map(|b| b.iter().map(|&x| perm[x]).collect()).collect();
        if is_pinned(&images, dims) {
            break;
        }
        tries += 1;
        if tries > 20 {
            blocks = (0..d).map(|x| vec![x]).collect();
            break;
        }
    }
    let surd = if rng.gen_bool(0.5) { 2 } else { 1 };
    let mut b = Matrix::filled(d, d, G::zero());
    for block in &blocks {
        let u = block_unitary(block.len(), surd, rng);
        for (i, &r) in block.iter().enumerate() {
            for (k, &c) in block.iter().enumerate() {
                b.set(r, c, u.get(i, k).clone());
            }
        }
    }
    let mut l = one.clone();
    let mut next = Vec::new();
    let mut next_units = Vec::new();
    for &dj in dims {
        let (u, basis) = random_basis(dj, rng);
        l = l.kron(&u);
        next.push(basis);
        next_units.push(u);
    }
    let l_prev = spec.prev.iter().fold(one, |acc, u| acc.kron(u));
    let g = l.mul(&permutation_matrix(&perm)).mul(&b).mul(&l_prev.adjoint());
    let q = common_denominator(g.entries().iter().flat_map(|z| [&z.re, &z.im]));
    let m = g.scale(&G::from(BigRational::from_integer(q.clone())));
    let n = BigInt::from(surd) * &q * &q;
    let n = n.to_u64()?;
    let prev = LocalBasis::new(spec.prev.iter().map(basis_of).collect()).expect("valid basis");
    let gate = Gate::new(spec.support.clone(), m, n).expect("synthesized gate is unitary");
    Some(GateTruth {
        gate,
        prev,
        next,
        next_units,
        permutation: perm,
        blocks,
    })
}

/// A standalone random gate on qudits of the given dimensions, with a random
/// previous basis.
pub fn random_lbf_gate(local_dims: &[usize], rng: &mut ChaCha20Rng) -> GateTruth {
    loop {
        let prev: Vec<ExactMatrix> = local_dims.iter().map(|&d| random_basis(d, rng).0).collect();
        let spec = GateSpec {
            support: (0..local_dims.len()).collect(),
            local_dims: local_dims.to_vec(),
            prev,
            classes: None,
        };
        if let Some(t) = random_gate(&spec, rng) {
            return t;
        }
    }
}

/// Per-step ground truth of a synthesized circuit.
#[derive(Debug, Clone)]
pub struct CircuitTruth {
    pub circuit: Circuit,
    /// Local basis per qudit after each gate (index 0 is the initial basis).
    pub bases: Vec<Vec<Vec<ExactMatrix>>>,
}

/// Options for [`random_circuit`].
#[derive(Debug, Clone)]
pub struct CircuitSpec {
    pub dims: Vec<usize>,
    pub gates: usize,
    pub max_support: usize,
    pub max_support_dim: usize,
}

fn random_probs(d: usize, rng: &mut ChaCha20Rng) -> Vec<BigRational> {
    match rng.gen_range(0..3) {
        0 => {
            let k = rng.gen_range(0..d);
            (0..d).map(|i| BigRational::from_integer(BigInt::from(i64::from(i == k)))).collect()
        }
        1 => vec![BigRational::new(BigInt::one(), BigInt::from(d)); d],
        _ => {
            let w: Vec<i64> = (0..d).map(|_| rng.gen_range(1..=3)).collect();
            let total: i64 = w.iter().sum();
            w.iter().map(|&x| BigRational::new(x.into(), total.into())).collect()
        }
    }
}

/// Degeneracy classes of support strings `z`: `z ~ z'` iff `p(y, z) = p(y, z')`
/// for every setting `y` of the other qudits.
fn degeneracy_classes(p: &[BigRational], dims: &[usize], support: &[usize]) -> Vec<usize> {
    let split = crate::tensor::Split::new(dims, support);
    let d = split.support_offset.len();
    let column = |z: usize| -> Vec<&BigRational> {
        (0..split.rest_offset.len()).map(|y| &p[split.full(y, z)]).collect()
    };
    let mut reps: Vec<usize> = Vec::new();
    let mut class = vec![0; d];
    for z in 0..d {
        match reps.iter().position(|&r| column(r) == column(z)) {
            Some(k) => class[z] = k,
            None => {
                class[z] = reps.len();
                reps.push(z);
            }
        }
    }
    class
}

/// A random concordant circuit: each gate keeps the state diagonal in a
/// product basis, and B blocks only mix dit strings of equal weight.
pub fn random_circuit(spec: &CircuitSpec, seed: u64) -> CircuitTruth {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let dims = &spec.dims;
    let register = QuditRegister::new(dims.clone()).expect("valid dims");
    let mut units: Vec<ExactMatrix> = Vec::new();
    let mut probs = Vec::new();
    for &d in dims {
        units.push(random_basis(d, &mut rng).0);
        probs.push(random_probs(d, &mut rng));
    }
    let basis = LocalBasis::new(units.iter().map(basis_of).collect()).expect("valid basis");
    let initial = InitialState::new(basis, probs.clone()).expect("valid state");
    // Joint distribution over dit strings in the current basis labelling.
    let total: usize = dims.iter().product();
    let mut p: Vec<BigRational> = (0..total)
        .map(|x| {
            digits_of(x, dims)
                .iter()
                .enumerate()
                .fold(BigRational::one(), |acc, (j, &k)| acc * &probs[j][k])
        })
        .collect();
    let mut bases = vec![units.iter().map(basis_of).collect::<Vec<_>>()];
    let mut gates = Vec::new();
    while gates.len() < spec.gates {
        let mut qudits: Vec<usize> = (0..dims.len()).collect();
        qudits.shuffle(&mut rng);
        let size = rng.gen_range(1..=spec.max_support.min(dims.len()));
        let mut support: Vec<usize> = qudits[..size].to_vec();
        while support.iter().map(|&j| dims[j]).product::<usize>() > spec.max_support_dim {
            support.pop();
        }
        let local_dims: Vec<usize> = support.iter().map(|&j| dims[j]).collect();
        let classes = degeneracy_classes(&p, dims, &support);
        let gspec = GateSpec {
            support: support.clone(),
            local_dims: local_dims.clone(),
            prev: support.iter().map(|&j| units[j].clone()).collect(),
            classes: Some(&classes),
        };
        let Some(truth) = random_gate(&gspec, &mut rng) else { continue };
        // Transport the distribution: p'(y, D z) = p(y, z).
        let split = crate::tensor::Split::new(dims, &support);
        let mut next = p.clone();
        for y in 0..split.rest_offset.len() {
            for z in 0..split.support_offset.len() {
                next[split.full(y, truth.permutation[z])] = p[split.full(y, z)].clone();
            }
        }
        p = next;
        for (k, &j) in support.iter().enumerate() {
            units[j] = truth.next_units[k].clone();
        }
        bases.push(units.iter().map(basis_of).collect());
        gates.push(truth.gate);
    }
    let circuit = Circuit::new(register, initial, gates).expect("valid circuit");
    CircuitTruth { circuit, bases }
}

/// DQC1 fixture: a control qubit prepared in `|+>` followed by `n` maximally
/// mixed register qubits, and controlled phase flips `(-1)^{c f_k(x)}` for
/// monomials `f_k` on at most three register bits.
pub fn dqc1_circuit(n: usize, monomials: &[Vec<usize>]) -> Circuit {
    let dims = vec![2; n + 1];
    let register = QuditRegister::new(dims.clone()).expect("valid");
    let mut per_qudit = vec![plus_minus_basis()];
    let mut probs = vec![vec![BigRational::one(), BigRational::default()]];
    for _ in 0..n {
        per_qudit.push(computational_basis(2));
        probs.push(vec![BigRational::new(1.into(), 2.into()); 2]);
    }
    let initial = InitialState::new(LocalBasis::new(per_qudit).expect("valid"), probs).expect("valid");
    let gates = monomials
        .iter()
        .map(|mono| {
            let mut support = vec![0];
            support.extend(mono.iter().map(|&b| b + 1));
            let d = 1 << support.len();
            let m = Matrix::from_fn(d, d, |r, c| {
                if r != c {
                    return G::zero();
                }
                let on = r == d - 1;
                G::from_int(if on { -1 } else { 1 })
            });
            Gate::new(support, m, 1).expect("diagonal sign gate")
        })
        .collect();
    Circuit::new(register, initial, gates).expect("valid")
}

/// `f(x) = XOR_k prod_{b in f_k} x_b` for register bits `x` (bit 0 is the
/// most significant register qubit).
pub fn dqc1_function(monomials: &[Vec<usize>], x: &[usize]) -> usize {
    monomials
        .iter()
        .map(|m| m.iter().all(|&b| x[b] == 1) as usize)
        .fold(0, |a, b| a ^ b)
}

/// Three fixed monomial sets over six register bits.
pub fn dqc1_fixtures() -> Vec<Vec<Vec<usize>>> {
    vec![
        vec![vec![0, 1], vec![2], vec![3, 4, 5]],
        vec![vec![0, 2, 4], vec![1, 3], vec![5], vec![0, 5]],
        vec![vec![0], vec![1, 2, 3], vec![3, 4], vec![2, 5], vec![0, 1, 5]],
    ]
}
