//! Per-candidate local-basis equations and their random-instance solutions.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha20Rng;

use crate::exactnum::bareiss::{bareiss_eliminate, primitive_integer_vector};
use crate::exactnum::eigen::spectral_blocks;
use crate::exactnum::rational::common_denominator;
use crate::exactnum::{BigRational, ExactMatrix, ExactNumError, GaussianRational, Matrix};
use crate::tensor::slices;

/// Integer Hermitian basis of d x d matrices: `E_aa`, then for `a < b`
/// `E_ab + E_ba` and `i (E_ab - E_ba)`.
pub fn hermitian_basis(d: usize) -> Vec<ExactMatrix> {
    let unit = |a: usize, b: usize, z: GaussianRational| {
        Matrix::from_fn(d, d, |r, c| if r == a && c == b { z.clone() } else { GaussianRational::zero() })
    };
    let mut out: Vec<ExactMatrix> = (0..d).map(|a| unit(a, a, GaussianRational::one())).collect();
    for a in 0..d {
        for b in a + 1..d {
            out.push(unit(a, b, GaussianRational::one()).plus(&unit(b, a, GaussianRational::one())));
            out.push(unit(a, b, GaussianRational::i()).plus(&unit(b, a, -GaussianRational::i())));
        }
    }
    out
}

/// `[E_ab, s]`: row `a` gains row `b` of `s`, column `b` loses column `a`.
fn unit_commutator(s: &ExactMatrix, a: usize, b: usize) -> ExactMatrix {
    let d = s.rows();
    let mut m = Matrix::filled(d, d, GaussianRational::zero());
    for c in 0..d {
        *m.get_mut(a, c) += s.get(b, c);
    }
    for r in 0..d {
        *m.get_mut(r, b) -= s.get(r, a);
    }
    m
}

/// `[sigma_l, s]` for every element of [`hermitian_basis`], in the same order.
fn basis_commutators(s: &ExactMatrix) -> Vec<ExactMatrix> {
    let d = s.rows();
    let mut out: Vec<ExactMatrix> = (0..d).map(|a| unit_commutator(s, a, a)).collect();
    for a in 0..d {
        for b in a + 1..d {
            let (ab, ba) = (unit_commutator(s, a, b), unit_commutator(s, b, a));
            out.push(ab.plus(&ba));
            out.push(ab.minus(&ba).scale(&GaussianRational::i()));
        }
    }
    out
}

/// Real integer equations in the coefficients `c_l` of `rho = sum c_l sigma_l`
/// expressing `[rho, s] = 0`.
fn commutation_rows(s: &ExactMatrix) -> Vec<Vec<GaussianRational>> {
    let comms = basis_commutators(s);
    let d = s.rows();
    let mut rows = Vec::new();
    for a in 0..d {
        for b in 0..d {
            for part in 0..2 {
                let row: Vec<BigRational> = comms
                    .iter()
                    .map(|c| {
                        let z = c.get(a, b);
                        if part == 0 { z.re.clone() } else { z.im.clone() }
                    })
                    .collect();
                if row.iter().all(Zero::is_zero) {
                    continue;
                }
                let den = BigRational::from_integer(common_denominator(&row));
                rows.push(row.into_iter().map(|x| GaussianRational::from(x * &den)).collect());
            }
        }
    }
    rows
}

/// The slices of `y` seen by qudit `j`: `y = sum_rs |r><s| (x) Y_rs` with
/// `r, s` over the other support qudits.
pub fn qudit_slices(local_dims: &[usize], j: usize, y: &ExactMatrix) -> Vec<ExactMatrix> {
    slices(local_dims, &[j], y).into_iter().flatten().filter(|m| !m.is_zero()).collect()
}

/// Full linear system for qudit `j`: rows are integer equations, columns
/// the Hermitian-basis coefficients.
pub fn build_linear_system(local_dims: &[usize], j: usize, y: &ExactMatrix) -> ExactMatrix {
    let sigma = hermitian_basis(local_dims[j]);
    let mut rows = Vec::new();
    for s in qudit_slices(local_dims, j, y) {
        rows.extend(commutation_rows(&s));
    }
    if rows.is_empty() {
        rows.push(vec![GaussianRational::zero(); sigma.len()]);
    }
    ExactMatrix::from_rows(rows)
}

/// Integer Hermitian matrices spanning the solutions of `[1 (x) rho, y] = 0`
/// on qudit `j`. Slices are added one at a time and solving stops once only
/// multiples of the identity remain.
pub fn solution_space(local_dims: &[usize], j: usize, y: &ExactMatrix) -> Vec<ExactMatrix> {
    let d = local_dims[j];
    let sigma = hermitian_basis(d);
    // Current solutions as coefficient vectors over sigma.
    let mut basis: Vec<Vec<GaussianRational>> = (0..sigma.len())
        .map(|l| (0..sigma.len()).map(|m| GaussianRational::from_int(i64::from(l == m))).collect())
        .collect();
    for s in qudit_slices(local_dims, j, y) {
        if basis.len() <= 1 {
            break;
        }
        let rows = commutation_rows(&s);
        if rows.is_empty() {
            continue;
        }
        // Restrict the equations to the current solution span.
        let restricted = ExactMatrix::from_fn(rows.len(), basis.len(), |r, c| {
            rows[r]
                .iter()
                .zip(&basis[c])
                .fold(GaussianRational::zero(), |acc, (a, b)| acc + a * b)
        });
        let kernel = bareiss_eliminate(&restricted).null_space;
        basis = kernel
            .iter()
            .map(|k| {
                let v: Vec<GaussianRational> = (0..sigma.len())
                    .map(|m| {
                        k.iter()
                            .zip(&basis)
                            .fold(GaussianRational::zero(), |acc, (kc, b)| acc + kc * &b[m])
                    })
                    .collect();
                primitive_integer_vector(&v)
            })
            .collect();
    }
    basis
        .iter()
        .map(|v| {
            v.iter()
                .zip(&sigma)
                .fold(Matrix::filled(d, d, GaussianRational::zero()), |acc, (c, g)| acc.plus(&g.scale(c)))
        })
        .collect()
}

const INSTANCE_WEIGHT: i64 = 1 << 10;

/// Random integer combination of the solution space. Weights are kept small
/// so the characteristic polynomial stays cheap to isolate; an unlucky
/// degenerate draw is simply redrawn by the caller.
pub fn random_instance(space: &[ExactMatrix], rng: &mut ChaCha20Rng) -> ExactMatrix {
    let d = space[0].rows();
    space.iter().fold(Matrix::filled(d, d, GaussianRational::zero()), |acc, g| {
        let c: i64 = rng.gen_range(-INSTANCE_WEIGHT..=INSTANCE_WEIGHT);
        acc.plus(&g.scale(&GaussianRational::from(BigRational::from_integer(BigInt::from(c)))))
    })
}

/// Rational spectral blocks of one instance and whether it is nondegenerate.
pub struct InstanceBlocks {
    pub projectors: Vec<ExactMatrix>,
    pub nondegenerate: bool,
}

pub fn instance_blocks(rho: &ExactMatrix) -> Result<InstanceBlocks, ExactNumError> {
    let blocks = spectral_blocks(rho)?;
    let distinct: usize = blocks.iter().map(|b| b.eigenvalues.len()).sum();
    Ok(InstanceBlocks {
        nondegenerate: distinct == rho.rows(),
        projectors: blocks.into_iter().map(|b| b.projector).collect(),
    })
}

/// Sums of the connected components of the "P Q != 0" overlap between two
/// families of projectors that each resolve the identity.
pub fn overlap_components(a: &[ExactMatrix], b: &[ExactMatrix]) -> Vec<ExactMatrix> {
    let n = a.len();
    let mut parent: Vec<usize> = (0..n + b.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (i, p) in a.iter().enumerate() {
        for (k, q) in b.iter().enumerate() {
            if !p.mul(q).is_zero() {
                let (x, y) = (find(&mut parent, i), find(&mut parent, n + k));
                parent[x] = y;
            }
        }
    }
    let mut groups: Vec<(usize, ExactMatrix)> = Vec::new();
    for (i, p) in a.iter().enumerate() {
        let root = find(&mut parent, i);
        match groups.iter_mut().find(|(r, _)| *r == root) {
            Some((_, m)) => *m = m.plus(p),
            None => groups.push((root, p.clone())),
        }
    }
    groups.into_iter().map(|(_, m)| m).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| GaussianRational::from_int(x)).collect()).collect())
    }

    #[test]
    fn sparse_commutators_match_products() {
        let s = ExactMatrix::from_rows(vec![
            vec![GaussianRational::from_int(2), GaussianRational::from_ints(1, -3), GaussianRational::from_int(0)],
            vec![GaussianRational::from_ints(1, 3), GaussianRational::from_int(-1), GaussianRational::from_ints(0, 2)],
            vec![GaussianRational::from_int(0), GaussianRational::from_ints(0, -2), GaussianRational::from_int(5)],
        ]);
        let dense: Vec<ExactMatrix> = hermitian_basis(3).iter().map(|g| g.commutator(&s)).collect();
        assert_eq!(basis_commutators(&s), dense);
    }

    #[test]
    fn hermitian_basis_size() {
        let b = hermitian_basis(3);
        assert_eq!(b.len(), 9);
        assert!(b.iter().all(ExactMatrix::is_hermitian));
    }

    #[test]
    fn plus_projector_solutions() {
        // H|0><0|H = |+><+| (scaled by 2 to stay integral): span{I, X}.
        let y = real(&[&[1, 1], &[1, 1]]);
        let space = solution_space(&[2], 0, &y);
        assert_eq!(space.len(), 2);
        let x = real(&[&[0, 1], &[1, 0]]);
        let id = real(&[&[1, 0], &[0, 1]]);
        for s in &space {
            assert!(s.commutes_with(&y));
        }
        // I and X both lie in the span.
        let stacked: Vec<Vec<GaussianRational>> =
            space.iter().chain([&x, &id]).map(|m| m.entries().to_vec()).collect();
        assert_eq!(ExactMatrix::from_rows(stacked).rank(), 2);
    }
}
