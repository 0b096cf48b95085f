//! Rational spectral decomposition of Hermitian matrices.
//!
//! Eigenvalues are grouped by the irreducible rational factor of the
//! characteristic polynomial they belong to. Each group owns a rational
//! projector: the sum of the eigenprojectors of its conjugate eigenvalues.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::charpoly::berkowitz;
use super::matrix::rank_one_projector;
use super::{
    isolate_real_roots, rational_gram_schmidt, AlgebraicNumber, BigRational, ExactMatrix,
    ExactNumError, Field, FieldElement, GaussianRational, IntPolynomial, Matrix, NumberField,
};

#[derive(Clone, Debug)]
pub struct SpectralBlock {
    /// Primitive irreducible factor; linear for rational eigenvalues.
    pub factor: IntPolynomial,
    /// Roots of `factor`, ascending.
    pub eigenvalues: Vec<AlgebraicNumber>,
    /// Orthogonal projector onto the sum of the eigenspaces.
    pub projector: ExactMatrix,
}

impl SpectralBlock {
    pub fn is_rational(&self) -> bool {
        self.factor.degree() == 1
    }

    pub fn rank(&self) -> usize {
        self.projector.trace().re.to_integer().try_into().unwrap_or(0)
    }
}

/// `det(xI - m)` as a primitive integer polynomial.
pub fn hermitian_charpoly(m: &ExactMatrix) -> Result<IntPolynomial, ExactNumError> {
    if !m.is_square() || !m.is_hermitian() {
        return Err(ExactNumError::NotHermitian);
    }
    let coeffs = berkowitz(m);
    debug_assert!(coeffs.iter().all(GaussianRational::is_real));
    let re: Vec<BigRational> = coeffs.into_iter().map(|c| c.re).collect();
    Ok(IntPolynomial::from_rationals(&re))
}

/// Split the distinct roots of a real-rooted polynomial into the root sets of
/// its irreducible rational factors, ordered by smallest root.
pub fn rational_factor_groups(
    p: &IntPolynomial,
) -> Result<Vec<(IntPolynomial, Vec<AlgebraicNumber>)>, ExactNumError> {
    let mut q = p.square_free();
    let roots = isolate_real_roots(&q)?;
    if roots.len() != q.degree() {
        return Err(ExactNumError::NonRealRoots);
    }
    let mut groups = Vec::new();
    let mut irrational = Vec::new();
    for r in roots {
        match r.as_rational() {
            Some(x) => {
                let f = IntPolynomial::linear_for(x);
                q = q.div_exact(&f).expect("rational root divides");
                groups.push((f, vec![r]));
            }
            None => irrational.push(r),
        }
    }
    if !irrational.is_empty() {
        groups.extend(split_irrational(&q, irrational));
    }
    groups.sort_by(|a, b| a.1[0].compare(&b.1[0]));
    Ok(groups)
}

type Interval = (BigRational, BigRational);

fn interval_mul(a: &Interval, b: &Interval) -> Interval {
    let c = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    (
        c.iter().min().unwrap().clone(),
        c.iter().max().unwrap().clone(),
    )
}

/// Enclosures of the coefficients of `prod (y - mu_i)`, lowest degree first.
fn product_coefficients(mus: &[Interval]) -> Vec<Interval> {
    let zero = || (BigRational::zero(), BigRational::zero());
    let mut c = vec![(BigRational::one(), BigRational::one())];
    for mu in mus {
        let neg = (-&mu.1, -&mu.0);
        let mut next = vec![zero(); c.len() + 1];
        for (k, ck) in c.iter().enumerate() {
            next[k + 1] = (&next[k + 1].0 + &ck.0, &next[k + 1].1 + &ck.1);
            let t = interval_mul(ck, &neg);
            next[k] = (&next[k].0 + &t.0, &next[k].1 + &t.1);
        }
        c = next;
    }
    c
}

enum Rounded {
    NotAFactor,
    Candidate(Vec<BigInt>),
    TooWide,
}

fn round_coefficients(c: &[Interval]) -> Rounded {
    let mut out = Vec::with_capacity(c.len());
    for (lo, hi) in c {
        if hi - lo >= BigRational::one() {
            return Rounded::TooWide;
        }
        let k = hi.floor();
        if &k < lo {
            return Rounded::NotAFactor;
        }
        out.push(k.to_integer());
    }
    Rounded::Candidate(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Group irrational roots of `q` (all its roots) by rational factor.
fn split_irrational(
    q: &IntPolynomial,
    mut roots: Vec<AlgebraicNumber>,
) -> Vec<(IntPolynomial, Vec<AlgebraicNumber>)> {
    // With L = lc(q), the numbers L*lambda are roots of a monic integer
    // polynomial, so every factor has integer coefficients in that scaling.
    let lc = BigRational::from_integer(q.leading().abs());
    let lc_int = q.leading().abs();
    let mut h = q.clone();
    let mut groups = Vec::new();
    let mut size = 2;
    while 2 * size <= roots.len() {
        let mut found = None;
        'subsets: for subset in combinations(roots.len(), size) {
            loop {
                let mus: Vec<Interval> = subset
                    .iter()
                    .map(|&i| {
                        let (lo, hi) = roots[i].enclosure();
                        (lo * &lc, hi * &lc)
                    })
                    .collect();
                match round_coefficients(&product_coefficients(&mus)) {
                    Rounded::NotAFactor => continue 'subsets,
                    Rounded::TooWide => {
                        for &i in &subset {
                            roots[i].bisect();
                        }
                    }
                    Rounded::Candidate(g) => {
                        // Undo the scaling: f(x) = g(L x).
                        let mut scale = BigInt::one();
                        let f: Vec<BigInt> = g
                            .iter()
                            .map(|c| {
                                let out = c * &scale;
                                scale *= &lc_int;
                                out
                            })
                            .collect();
                        let f = IntPolynomial::new(f).primitive();
                        if let Some(rest) = h.div_exact(&f) {
                            found = Some((subset.clone(), f, rest));
                            break 'subsets;
                        }
                        continue 'subsets;
                    }
                }
            }
        }
        match found {
            Some((subset, f, rest)) => {
                h = rest;
                let mut members = Vec::new();
                for &i in subset.iter().rev() {
                    members.push(roots.remove(i));
                }
                members.reverse();
                groups.push((f, members));
            }
            None => size += 1,
        }
    }
    if !roots.is_empty() {
        groups.push((h.primitive(), roots));
    }
    groups
}

/// Orthogonal projector onto the span of `vectors`.
pub fn span_projector<T: Field>(vectors: &[Vec<T>], template: &T) -> Matrix<T> {
    let n = vectors.first().map_or(0, Vec::len);
    let mut p = Matrix::filled(n, n, template.zero_like());
    for u in rational_gram_schmidt(vectors) {
        p = p.plus(&rank_one_projector(&u));
    }
    p
}

/// Projector onto the kernel of `m - lambda` for rational `lambda`.
pub fn rational_eigenprojector(m: &ExactMatrix, lambda: &BigRational) -> ExactMatrix {
    let shift = GaussianRational::from(lambda.clone());
    let a = Matrix::from_fn(m.rows(), m.cols(), |r, c| {
        if r == c {
            m.get(r, c) - &shift
        } else {
            m.get(r, c).clone()
        }
    });
    let n = m.rows();
    let kernel = a.null_space();
    if kernel.is_empty() {
        return Matrix::filled(n, n, GaussianRational::zero());
    }
    span_projector(&kernel, &GaussianRational::zero())
}

/// Sum of the eigenprojectors of all roots of the irreducible `f`, computed
/// from the eigenprojector over Q(i)[x]/(f) and its relative trace.
pub fn conjugate_block_projector(m: &ExactMatrix, f: &IntPolynomial) -> ExactMatrix {
    let k = NumberField::new(f);
    let x = FieldElement::generator(&k);
    let embed = |z: &GaussianRational| FieldElement::constant(&k, z.clone());
    let a = Matrix::from_fn(m.rows(), m.cols(), |r, c| {
        let e = embed(m.get(r, c));
        if r == c {
            e.minus(&x)
        } else {
            e
        }
    });
    let kernel = a.null_space();
    let n = m.rows();
    if kernel.is_empty() {
        return Matrix::filled(n, n, GaussianRational::zero());
    }
    span_projector(&kernel, &x).map(FieldElement::trace)
}

pub fn spectral_blocks(m: &ExactMatrix) -> Result<Vec<SpectralBlock>, ExactNumError> {
    let p = hermitian_charpoly(m)?;
    let groups = rational_factor_groups(&p)?;
    Ok(groups
        .into_iter()
        .map(|(factor, eigenvalues)| {
            let projector = match eigenvalues[0].as_rational() {
                Some(r) if eigenvalues.len() == 1 => rational_eigenprojector(m, r),
                _ => conjugate_block_projector(m, &factor),
            };
            SpectralBlock {
                factor,
                eigenvalues,
                projector,
            }
        })
        .collect())
}

/// Whether every eigenvalue of `m` is rational.
pub fn has_rational_spectrum(m: &ExactMatrix) -> Result<bool, ExactNumError> {
    let p = hermitian_charpoly(m)?;
    let roots = isolate_real_roots(&p)?;
    Ok(roots.iter().all(AlgebraicNumber::is_rational))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn herm(rows: &[&[(i64, i64)]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&(a, b)| GaussianRational::from_ints(a, b)).collect())
                .collect(),
        )
    }

    fn check_resolution(m: &ExactMatrix, blocks: &[SpectralBlock]) {
        let n = m.rows();
        let mut sum = Matrix::filled(n, n, GaussianRational::zero());
        for (i, b) in blocks.iter().enumerate() {
            assert!(b.projector.is_projector());
            assert!(b.projector.commutes_with(m));
            for c in &blocks[i + 1..] {
                assert!(b.projector.mul(&c.projector).is_zero());
            }
            sum = sum.plus(&b.projector);
        }
        assert_eq!(sum, Matrix::identity_like(n, &GaussianRational::zero()));
    }

    #[test]
    fn rational_spectrum() {
        let m = herm(&[&[(2, 0), (1, 0)], &[(1, 0), (2, 0)]]);
        let blocks = spectral_blocks(&m).unwrap();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(SpectralBlock::is_rational));
        check_resolution(&m, &blocks);
    }

    #[test]
    fn irrational_pair_forms_one_block() {
        // eigenvalues 1 +- sqrt2 and 5
        let m = herm(&[
            &[(1, 0), (0, 1), (0, 0)],
            &[(0, -1), (1, 0), (0, 0)],
            &[(0, 0), (0, 0), (5, 0)],
        ]);
        let m = m.plus(&herm(&[
            &[(0, 0), (1, 0), (0, 0)],
            &[(1, 0), (0, 0), (0, 0)],
            &[(0, 0), (0, 0), (0, 0)],
        ]));
        let blocks = spectral_blocks(&m).unwrap();
        assert_eq!(blocks.len(), 2);
        let irr = blocks.iter().find(|b| !b.is_rational()).unwrap();
        assert_eq!(irr.eigenvalues.len(), 2);
        assert_eq!(irr.rank(), 2);
        check_resolution(&m, &blocks);
    }

    #[test]
    fn splits_product_of_quadratics() {
        // (x^2 - 2)(x^2 - 3): two conjugate pairs.
        let p = IntPolynomial::from_i64(&[-2, 0, 1]).mul(&IntPolynomial::from_i64(&[-3, 0, 1]));
        let groups = rational_factor_groups(&p).unwrap();
        assert_eq!(groups.len(), 2);
        assert!(groups.iter().all(|(f, r)| f.degree() == 2 && r.len() == 2));
    }

    #[test]
    fn non_monic_factors() {
        // (2x^2 - 1)(3x^2 - 1)
        let p = IntPolynomial::from_i64(&[-1, 0, 2]).mul(&IntPolynomial::from_i64(&[-1, 0, 3]));
        let groups = rational_factor_groups(&p).unwrap();
        let mut factors: Vec<_> = groups.iter().map(|(f, _)| f.clone()).collect();
        factors.sort_by_key(|f| f.leading());
        assert_eq!(factors[0], IntPolynomial::from_i64(&[-1, 0, 2]));
        assert_eq!(factors[1], IntPolynomial::from_i64(&[-1, 0, 3]));
    }
}
