//! Dense univariate polynomials with big-integer coefficients.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::common_denominator;
use super::BigRational;

/// Coefficients lowest degree first; trailing zeros are always trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}x"),
                _ => format!("{c}x^{k}"),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl From<IntPolynomial> for Vec<String> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl TryFrom<Vec<String>> for IntPolynomial {
    type Error = String;
    fn try_from(v: Vec<String>) -> Result<Self, String> {
        v.iter()
            .map(|s| s.parse::<BigInt>().map_err(|_| format!("bad coefficient {s:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(IntPolynomial::new)
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `q x - p` for the rational `p/q`.
    pub fn linear_for(r: &BigRational) -> Self {
        Self::new(vec![-r.numer().clone(), r.denom().clone()])
    }

    /// Clears denominators and returns the primitive integer multiple.
    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        let den = common_denominator(coeffs);
        let p = Self::new(
            coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
                .collect(),
        );
        p.primitive()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `x^deg p(1/x)`
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `p(x)` without building the rational value's denominator twice.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        // Homogenised Horner: q^n p(p'/q) is an integer with the same sign as p(x).
        let (num, den) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * num + c * &den_pow;
            den_pow *= den;
        }
        acc.sign_cmp()
    }

    /// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b`. Panics if `b` is zero.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "division by zero polynomial");
        if self.degree() < b.degree() || self.is_zero() {
            return self.clone();
        }
        let lb = b.leading();
        let db = b.degree();
        let mut r = self.coeffs.clone();
        let mut steps = self.degree() - db + 1;
        while r.len() > db && !r.is_empty() {
            let lr = r.last().cloned().unwrap();
            let shift = r.len() - 1 - db;
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (k, bc) in b.coeffs.iter().enumerate() {
                r[shift + k] -= &lr * bc;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            steps -= 1;
        }
        let mut out = Self::new(r);
        if steps > 0 {
            out = out.scale(&lb.pow(steps as u32));
        }
        out
    }

    /// Primitive part of the quotient `self / b` when `b` divides `self` in Q[x].
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        assert!(!b.is_zero());
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < b.degree() {
            return None;
        }
        let lb = BigRational::from_integer(b.leading());
        let mut r: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let db = b.degree();
        let mut q = vec![BigRational::zero(); self.degree() - db + 1];
        for k in (0..q.len()).rev() {
            let f = &r[k + db] / &lb;
            for (j, bc) in b.coeffs.iter().enumerate() {
                r[k + j] -= &f * BigRational::from_integer(bc.clone());
            }
            q[k] = f;
        }
        r.iter().all(Zero::is_zero).then(|| Self::from_rationals(&q))
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), o.primitive());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// `p / gcd(p, p')`, primitive.
    pub fn square_free(&self) -> Self {
        if self.degree() == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").primitive()
    }

    pub fn is_square_free(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// Bound B with every real root in (-B, B], as a power of two.
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = BigRational::from_integer(self.leading().abs());
        let mut m = BigRational::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let q = BigRational::from_integer(c.abs()) / &lead;
            if q > m {
                m = q;
            }
        }
        let bound = m + BigRational::one();
        let mut b = BigRational::one();
        while b <= bound {
            b *= BigRational::from_integer(2.into());
        }
        b
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{rat, ratio};

    #[test]
    fn gcd_and_square_free() {
        let a = IntPolynomial::from_i64(&[-1, 0, 1]); // x^2-1
        let b = IntPolynomial::from_i64(&[1, 2, 1]); // (x+1)^2
        assert_eq!(a.gcd(&b), IntPolynomial::from_i64(&[1, 1]));
        assert_eq!(b.square_free(), IntPolynomial::from_i64(&[1, 1]));
        let c = a.mul(&b); // (x-1)(x+1)^3
        assert_eq!(c.square_free(), a);
    }

    #[test]
    fn eval_and_sign() {
        let p = IntPolynomial::from_i64(&[-2, 0, 1]);
        assert_eq!(p.eval(&ratio(3, 2)), ratio(1, 4));
        assert_eq!(p.sign_at(&ratio(3, 2)), Ordering::Greater);
        assert_eq!(p.sign_at(&rat(1)), Ordering::Less);
        assert_eq!(p.sign_at(&ratio(-3, 2)), Ordering::Greater);
    }

    #[test]
    fn exact_division() {
        let a = IntPolynomial::from_i64(&[-1, 0, 1]);
        let b = IntPolynomial::from_i64(&[2, 2]);
        assert_eq!(a.div_exact(&b), Some(IntPolynomial::from_i64(&[-1, 1])));
        assert_eq!(a.div_exact(&IntPolynomial::from_i64(&[1, 0, 1])), None);
    }
}
