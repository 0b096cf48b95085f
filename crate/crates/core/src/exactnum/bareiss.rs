//! Fraction-free Gaussian elimination over the Gaussian integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::common_denominator;
use super::{BigRational, ExactMatrix, GaussianRational};

#[derive(Clone, Debug, PartialEq)]
pub struct Elimination {
    /// Fraction-free row echelon form; every entry is a Gaussian integer.
    pub echelon: ExactMatrix,
    pub pivot_columns: Vec<usize>,
    /// Primitive Gaussian-integer basis of the null space, one per free column.
    pub null_space: Vec<Vec<GaussianRational>>,
}

/// Clear denominators and divide out the integer content.
pub fn primitive_integer_vector(v: &[GaussianRational]) -> Vec<GaussianRational> {
    let den = common_denominator(v.iter().flat_map(|z| [&z.re, &z.im]));
    let d = BigRational::from_integer(den);
    let scaled: Vec<GaussianRational> = v.iter().map(|z| z.scale(&d)).collect();
    let g = scaled
        .iter()
        .flat_map(|z| [z.re.to_integer(), z.im.to_integer()])
        .fold(BigInt::zero(), |acc, x| acc.gcd(&x));
    if g.is_zero() || g.is_one() {
        return scaled;
    }
    let g = BigRational::from_integer(g).recip();
    scaled.iter().map(|z| z.scale(&g)).collect()
}

pub fn bareiss_eliminate(system: &ExactMatrix) -> Elimination {
    let (rows, cols) = (system.rows(), system.cols());
    let mut a: Vec<Vec<GaussianRational>> =
        system.to_rows().iter().map(|r| primitive_integer_vector(r)).collect();
    let mut prev = GaussianRational::one();
    let mut pivots = Vec::new();
    let mut k = 0;
    for c in 0..cols {
        if k == rows {
            break;
        }
        let Some(p) = (k..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(k, p);
        let prev_inv = prev.inv().expect("nonzero pivot");
        for i in k + 1..rows {
            for j in c + 1..cols {
                let v = &(&a[k][c] * &a[i][j]) - &(&a[i][c] * &a[k][j]);
                a[i][j] = &v * &prev_inv;
                debug_assert!(a[i][j].is_gaussian_integer());
            }
            a[i][c] = GaussianRational::zero();
        }
        prev = a[k][c].clone();
        pivots.push(c);
        k += 1;
    }
    let echelon = ExactMatrix::from_rows(a);
    let null_space = back_substitute(&echelon, &pivots);
    Elimination {
        echelon,
        pivot_columns: pivots,
        null_space,
    }
}

fn back_substitute(e: &ExactMatrix, pivots: &[usize]) -> Vec<Vec<GaussianRational>> {
    let cols = e.cols();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![GaussianRational::zero(); cols];
        v[free] = GaussianRational::one();
        for (i, &p) in pivots.iter().enumerate().rev() {
            let mut acc = GaussianRational::zero();
            for j in p + 1..cols {
                if !v[j].is_zero() {
                    acc += &(e.get(i, j) * &v[j]);
                }
            }
            v[p] = -(&acc * &e.get(i, p).inv().expect("pivot"));
        }
        basis.push(primitive_integer_vector(&v));
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| GaussianRational::from_int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let e = bareiss_eliminate(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]));
        assert!(e.null_space.is_empty());
        assert_eq!(e.pivot_columns, vec![0, 1, 2]);
    }

    #[test]
    fn rank_one() {
        let e = bareiss_eliminate(&m(&[&[1, 1], &[2, 2]]));
        assert_eq!(e.null_space.len(), 1);
        let v = &e.null_space[0];
        assert_eq!(v[0], -v[1].clone());
    }

    #[test]
    fn gaussian_entries() {
        let i = GaussianRational::i();
        let one = GaussianRational::one();
        let a = ExactMatrix::from_rows(vec![vec![one.clone(), i.clone()], vec![-i.clone(), one]]);
        let e = bareiss_eliminate(&a);
        assert_eq!(e.null_space.len(), 1);
        assert!(a.mul_vec(&e.null_space[0]).iter().all(GaussianRational::is_zero));
    }
}
