//! Sturm sequences for counting distinct real roots.

use std::cmp::Ordering;

use super::{BigRational, ExactNumError, IntPolynomial};

/// Signed remainder sequence of the square-free part of a polynomial.
///
/// Each element is a positive multiple of the classical Sturm remainder, kept
/// primitive so coefficients stay small.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    polynomials: Vec<IntPolynomial>,
}

impl SturmChain {
    pub fn new(p: &IntPolynomial) -> Result<Self, ExactNumError> {
        if p.is_zero() {
            return Err(ExactNumError::ZeroPolynomial);
        }
        let p0 = p.square_free();
        let mut chain = vec![p0.clone()];
        if p0.degree() == 0 {
            return Ok(Self { polynomials: chain });
        }
        chain.push(p0.derivative().primitive());
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            if b.degree() == 0 {
                break;
            }
            let mut r = a.pseudo_rem(b);
            // prem multiplies by lc(b)^(δ+1); undo a negative factor.
            let delta = a.degree() - b.degree();
            if b.leading() < 0.into() && delta % 2 == 0 {
                r = r.neg();
            }
            if r.is_zero() {
                break;
            }
            let content = r.content();
            let next = IntPolynomial::new(r.neg().coeffs().iter().map(|c| c / &content).collect());
            chain.push(next);
        }
        Ok(Self { polynomials: chain })
    }

    pub fn polynomials(&self) -> &[IntPolynomial] {
        &self.polynomials
    }

    pub fn len(&self) -> usize {
        self.polynomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polynomials.is_empty()
    }

    /// The square-free polynomial the chain was built for.
    pub fn base(&self) -> &IntPolynomial {
        &self.polynomials[0]
    }

    /// Sign variations of the chain at `x`, zeros skipped.
    pub fn variations_at(&self, x: &BigRational) -> usize {
        count_variations(self.polynomials.iter().map(|p| p.sign_at(x)))
    }

    /// Sign variations at +∞ (`positive`) or -∞.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        count_variations(self.polynomials.iter().map(|p| {
            let s = p.leading().cmp(&0.into());
            if positive || p.degree() % 2 == 0 {
                s
            } else {
                s.reverse()
            }
        }))
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_roots(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations_at(lo) - self.variations_at(hi)
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }
}

fn count_variations(signs: impl Iterator<Item = Ordering>) -> usize {
    let mut last = Ordering::Equal;
    let mut n = 0;
    for s in signs.filter(|s| *s != Ordering::Equal) {
        if last != Ordering::Equal && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    #[test]
    fn small_chains() {
        let c = SturmChain::new(&IntPolynomial::from_i64(&[-1, 0, 1])).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.count_all(), 2);
        let s = SturmChain::new(&IntPolynomial::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(s.variations_at(&rat(0)) - s.variations_at(&rat(2)), 1);
        assert!(SturmChain::new(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn repeated_roots_count_once() {
        // (x-1)^2 (x+2)
        let p = IntPolynomial::from_i64(&[2, -3, 0, 1]);
        let c = SturmChain::new(&p).unwrap();
        assert_eq!(c.count_all(), 2);
        assert_eq!(c.count_roots(&rat(0), &rat(1)), 1);
    }
}
