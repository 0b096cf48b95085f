//! Index bookkeeping for operators acting on a subset of a qudit register.

use crate::exactnum::{ExactMatrix, GaussianRational, Matrix};

/// Splits full-register indices into (support, rest) parts.
///
/// `full = rest_offset[r] + support_offset[s]` for the mixed-radix indices
/// `s` over the support (in the given order) and `r` over the remaining
/// qudits in increasing order.
#[derive(Clone, Debug)]
pub struct Split {
    pub support_offset: Vec<usize>,
    pub rest_offset: Vec<usize>,
}

impl Split {
    pub fn new(dims: &[usize], support: &[usize]) -> Self {
        let mut stride = vec![1; dims.len()];
        for j in (0..dims.len().saturating_sub(1)).rev() {
            stride[j] = stride[j + 1] * dims[j + 1];
        }
        let rest: Vec<usize> = (0..dims.len()).filter(|j| !support.contains(j)).collect();
        Self {
            support_offset: offsets(dims, &stride, support),
            rest_offset: offsets(dims, &stride, &rest),
        }
    }

    pub fn full(&self, rest: usize, support: usize) -> usize {
        self.rest_offset[rest] + self.support_offset[support]
    }
}

fn offsets(dims: &[usize], stride: &[usize], qudits: &[usize]) -> Vec<usize> {
    let mut out = vec![0];
    for &j in qudits {
        out = out
            .iter()
            .flat_map(|&o| (0..dims[j]).map(move |k| o + k * stride[j]))
            .collect();
    }
    out
}

/// `op` on `support` tensored with the identity elsewhere.
pub fn expand(dims: &[usize], support: &[usize], op: &ExactMatrix) -> ExactMatrix {
    let split = Split::new(dims, support);
    let n: usize = dims.iter().product();
    let mut out = Matrix::filled(n, n, GaussianRational::zero());
    for r in 0..split.rest_offset.len() {
        for x in 0..op.rows() {
            for y in 0..op.cols() {
                let v = op.get(x, y);
                if !v.is_zero() {
                    out.set(split.full(r, x), split.full(r, y), v.clone());
                }
            }
        }
    }
    out
}

/// `(op (x) 1) m` without forming the expanded operator.
pub fn apply_left(dims: &[usize], support: &[usize], op: &ExactMatrix, m: &ExactMatrix) -> ExactMatrix {
    let split = Split::new(dims, support);
    let mut out = Matrix::filled(m.rows(), m.cols(), GaussianRational::zero());
    for r in 0..split.rest_offset.len() {
        for x in 0..op.rows() {
            let row = split.full(r, x);
            for y in 0..op.cols() {
                let a = op.get(x, y);
                if a.is_zero() {
                    continue;
                }
                let src = split.full(r, y);
                for c in 0..m.cols() {
                    let b = m.get(src, c);
                    if !b.is_zero() {
                        *out.get_mut(row, c) += &(a * b);
                    }
                }
            }
        }
    }
    out
}

/// `A m A^dagger` with `A = op (x) 1`.
pub fn conjugate(dims: &[usize], support: &[usize], op: &ExactMatrix, m: &ExactMatrix) -> ExactMatrix {
    let left = apply_left(dims, support, op, m);
    apply_left(dims, support, op, &left.adjoint()).adjoint()
}

/// Partial trace keeping `keep` (in the given order).
pub fn partial_trace(dims: &[usize], keep: &[usize], m: &ExactMatrix) -> ExactMatrix {
    let split = Split::new(dims, keep);
    let d = split.support_offset.len();
    Matrix::from_fn(d, d, |x, y| {
        let mut acc = GaussianRational::zero();
        for r in 0..split.rest_offset.len() {
            let v = m.get(split.full(r, x), split.full(r, y));
            if !v.is_zero() {
                acc += v;
            }
        }
        acc
    })
}

/// The operators `Y_ij` on `b` with `m = sum_ij |i><j| (x) Y_ij`, where `i, j`
/// index the complement of `b`. Returned row-major over `(i, j)`.
pub fn slices(dims: &[usize], b: &[usize], m: &ExactMatrix) -> Vec<Vec<ExactMatrix>> {
    let split = Split::new(dims, b);
    let (na, nb) = (split.rest_offset.len(), split.support_offset.len());
    (0..na)
        .map(|i| {
            (0..na)
                .map(|j| Matrix::from_fn(nb, nb, |x, y| m.get(split.full(i, x), split.full(j, y)).clone()))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| GaussianRational::from_int(x)).collect()).collect())
    }

    #[test]
    fn expand_matches_kron() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let i2 = Matrix::identity_like(2, &GaussianRational::zero());
        assert_eq!(expand(&[2, 2], &[0], &a), a.kron(&i2));
        assert_eq!(expand(&[2, 2], &[1], &a), i2.kron(&a));
        let swap = m(&[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        // Reversed support order swaps the tensor factors.
        let ab = a.kron(&b);
        assert_eq!(expand(&[2, 2], &[1, 0], &ab), swap.mul(&ab).mul(&swap));
    }

    #[test]
    fn local_application_and_traces() {
        let a = m(&[&[0, 1], &[1, 0]]);
        let rho = m(&[&[1, 0], &[0, 0]]).kron(&m(&[&[0, 0], &[0, 1]])).kron(&m(&[&[1, 1], &[1, 1]]));
        let dims = [2, 2, 2];
        let full = expand(&dims, &[1], &a);
        assert_eq!(apply_left(&dims, &[1], &a, &rho), full.mul(&rho));
        assert_eq!(conjugate(&dims, &[1], &a, &rho), full.mul(&rho).mul(&full.adjoint()));
        assert_eq!(partial_trace(&dims, &[1], &rho), m(&[&[0, 0], &[0, 2]]));
        let s = slices(&dims, &[2], &rho);
        assert_eq!(s.len(), 4);
        assert_eq!(s[1][1], m(&[&[1, 1], &[1, 1]]));
        assert!(s[0][0].is_zero());
    }
}
