//! Orthogonalization without square roots.

use super::matrix::inner;
use super::Field;

/// Orthogonal (unnormalized) basis of the span of `vectors`, in input order.
///
/// Uses the division-free recurrence
/// `v'_k = (prod N_j) v_k - sum_j <v'_j, v_k> (prod_{i != j} N_i) v'_j`
/// with `N_j = <v'_j, v'_j>`. Vectors that come out zero are dropped.
pub fn rational_gram_schmidt<T: Field>(vectors: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = Vec::new();
    let mut norms: Vec<T> = Vec::new();
    for v in vectors {
        let Some(first) = v.first() else { continue };
        let zero = first.zero_like();
        let total = norms.iter().fold(first.one_like(), |acc, n| acc.times(n));
        let mut w: Vec<T> = v.iter().map(|x| x.times(&total)).collect();
        for (j, u) in out.iter().enumerate() {
            let c = inner(u, v);
            if c.is_zero() {
                continue;
            }
            let others = norms
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != j)
                .fold(c, |acc, (_, n)| acc.times(n));
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi = wi.minus(&others.times(ui));
            }
        }
        if w.iter().all(|x| x.is_zero()) {
            continue;
        }
        // Scale down by the leading nonzero entry's size to keep numbers small.
        let pivot = w.iter().find(|x| !x.is_zero()).cloned().unwrap_or(zero);
        let scale = pivot.times(&pivot.conjugate());
        let w: Vec<T> = match scale.inverse() {
            Some(s) if !scale.is_one() => w.iter().map(|x| x.times(&s)).collect(),
            _ => w,
        };
        norms.push(inner(&w, &w));
        out.push(w);
    }
    out
}
