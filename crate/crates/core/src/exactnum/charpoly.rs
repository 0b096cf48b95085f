//! Division-free characteristic polynomials (Berkowitz).

use super::{Field, Matrix};

/// Coefficients of `det(xI - A)`, lowest degree first.
pub fn berkowitz<T: Field>(a: &Matrix<T>) -> Vec<T> {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return Vec::new();
    }
    let template = a.get(0, 0);
    let one = template.one_like();
    // Highest degree first while building.
    let mut p = vec![one.clone()];
    for k in 0..n {
        let mut t = Vec::with_capacity(k + 2);
        t.push(one.clone());
        t.push(a.get(k, k).negated());
        let mut v: Vec<T> = (0..k).map(|i| a.get(i, k).clone()).collect();
        for _ in 2..=k + 1 {
            let mut rv = template.zero_like();
            for (i, vi) in v.iter().enumerate() {
                rv = rv.plus(&a.get(k, i).times(vi));
            }
            t.push(rv.negated());
            v = (0..k)
                .map(|i| {
                    let mut acc = template.zero_like();
                    for (j, vj) in v.iter().enumerate() {
                        acc = acc.plus(&a.get(i, j).times(vj));
                    }
                    acc
                })
                .collect();
        }
        let next: Vec<T> = (0..=k + 1)
            .map(|i| {
                let mut acc = template.zero_like();
                for (j, pj) in p.iter().enumerate().take(i + 1) {
                    acc = acc.plus(&t[i - j].times(pj));
                }
                acc
            })
            .collect();
        p = next;
    }
    p.reverse();
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;
    use crate::exactnum::BigRational;

    fn m(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn two_by_two() {
        // x^2 - 5x - 2 for [[1,2],[3,4]]
        assert_eq!(berkowitz(&m(&[&[1, 2], &[3, 4]])), vec![rat(-2), rat(-5), rat(1)]);
    }

    #[test]
    fn three_by_three_matches_expansion() {
        let a = m(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        // x^3 - 6x^2 + 10x - 4
        assert_eq!(berkowitz(&a), vec![rat(-4), rat(10), rat(-6), rat(1)]);
    }
}
