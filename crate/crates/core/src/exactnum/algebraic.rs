//! Real algebraic numbers as (square-free defining polynomial, isolating
//! interval), with exact field operations and comparison.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::charpoly::berkowitz;
use super::rational::{format_rational, parse_rational, simplest_in_closed};
use super::{BigRational, ExactNumError, IntPolynomial, Matrix, SturmChain};

/// A real root of `defining`.
///
/// Irrational values sit strictly inside `(lo, hi)`, which contains no other
/// root of `defining`. Rational values are stored exactly with `lo == hi`.
#[derive(Clone)]
pub struct AlgebraicNumber {
    defining: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
    exact: Option<BigRational>,
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(r) => write!(f, "{}", format_rational(r)),
            None => write!(
                f,
                "root of {:?} in ({}, {})",
                self.defining,
                format_rational(&self.lo),
                format_rational(&self.hi)
            ),
        }
    }
}

fn two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

/// Distinct real roots of `p` in increasing order.
pub fn isolate_real_roots(p: &IntPolynomial) -> Result<Vec<AlgebraicNumber>, ExactNumError> {
    let chain = SturmChain::new(p)?;
    let base = chain.base().clone();
    if base.degree() == 0 {
        return Ok(Vec::new());
    }
    let b = base.cauchy_bound();
    let mut pending = vec![(-b.clone(), b)];
    let mut found = Vec::new();
    while let Some((lo, hi)) = pending.pop() {
        match chain.count_roots(&lo, &hi) {
            0 => {}
            1 => found.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / two();
                pending.push((lo, mid.clone()));
                pending.push((mid, hi));
            }
        }
    }
    found.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(found
        .into_iter()
        .map(|(lo, hi)| AlgebraicNumber::from_half_open(&base, &chain, lo, hi))
        .collect())
}

impl AlgebraicNumber {
    pub fn from_rational(r: BigRational) -> Self {
        Self {
            defining: IntPolynomial::linear_for(&r),
            lo: r.clone(),
            hi: r.clone(),
            exact: Some(r),
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// The unique root of square-free `p` in `(lo, hi]`.
    fn from_half_open(
        p: &IntPolynomial,
        chain: &SturmChain,
        mut lo: BigRational,
        mut hi: BigRational,
    ) -> Self {
        if p.sign_at(&hi) == Ordering::Equal {
            return Self::from_rational(hi);
        }
        // A rational root a/b has b | lc, so once the interval is narrower than
        // 1/(2 lc^2) the simplest fraction inside is the only candidate.
        let lc = BigRational::from_integer(p.leading().abs());
        let target = BigRational::one() / (two() * &lc * &lc);
        while &hi - &lo >= target {
            let mid = (&lo + &hi) / two();
            if chain.count_roots(&lo, &mid) == 1 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        // `lo` itself may be a neighbouring root, which is excluded here.
        let candidate = simplest_in_closed(&lo, &hi);
        if candidate > lo && p.sign_at(&candidate) == Ordering::Equal {
            return Self::from_rational(candidate);
        }
        if p.sign_at(&hi) == Ordering::Equal {
            return Self::from_rational(hi);
        }
        Self {
            defining: p.clone(),
            lo,
            hi,
            exact: None,
        }
    }

    /// Build from a defining polynomial and an interval that contains the
    /// value; the polynomial need not be square-free.
    pub fn from_interval(
        p: &IntPolynomial,
        lo: BigRational,
        hi: BigRational,
    ) -> Result<Self, ExactNumError> {
        let chain = SturmChain::new(p)?;
        let base = chain.base().clone();
        if lo == hi {
            return if base.sign_at(&lo) == Ordering::Equal {
                Ok(Self::from_rational(lo))
            } else {
                Err(ExactNumError::MalformedAlgebraic("point is not a root".into()))
            };
        }
        if lo > hi {
            return Err(ExactNumError::MalformedAlgebraic("empty interval".into()));
        }
        if base.sign_at(&lo) == Ordering::Equal && chain.count_roots(&lo, &hi) == 0 {
            return Ok(Self::from_rational(lo));
        }
        if chain.count_roots(&lo, &hi) != 1 {
            return Err(ExactNumError::MalformedAlgebraic(
                "interval does not isolate exactly one root".into(),
            ));
        }
        Ok(Self::from_half_open(&base, &chain, lo, hi))
    }

    pub fn is_rational(&self) -> bool {
        self.exact.is_some()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    pub fn defining_polynomial(&self) -> &IntPolynomial {
        &self.defining
    }

    /// Degree of the defining polynomial (an upper bound on the algebraic degree).
    pub fn degree(&self) -> usize {
        self.defining.degree()
    }

    /// Closed rational enclosure; open on both sides for irrationals.
    pub fn enclosure(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Halve the isolating interval once.
    pub fn bisect(&mut self) {
        if self.exact.is_some() {
            return;
        }
        let mid = (&self.lo + &self.hi) / two();
        let sm = self.defining.sign_at(&mid);
        if sm == Ordering::Equal {
            *self = Self::from_rational(mid);
            return;
        }
        // Endpoints may be neighbouring roots; only a nonzero sign is usable.
        let below = match (self.defining.sign_at(&self.lo), self.defining.sign_at(&self.hi)) {
            (Ordering::Equal, Ordering::Equal) => {
                let chain = SturmChain::new(&self.defining).expect("nonzero");
                chain.count_roots(&self.lo, &mid) == 1
            }
            (_, sh) if sh != Ordering::Equal => sm == sh,
            (sl, _) => sm != sl,
        };
        if below {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    /// Shrink the enclosure below `width`.
    pub fn refine_to(&mut self, width: &BigRational) {
        while self.exact.is_none() && &self.width() >= width {
            self.bisect();
        }
    }

    pub fn neg(&self) -> Self {
        match &self.exact {
            Some(r) => Self::from_rational(-r),
            None => Self {
                defining: self.defining.reflect().primitive(),
                lo: -&self.hi,
                hi: -&self.lo,
                exact: None,
            },
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        if let (Some(a), Some(b)) = (&self.exact, &o.exact) {
            return Self::from_rational(a + b);
        }
        let c = companion(&self.defining);
        let d = companion(&o.defining);
        let sum = c
            .kron(&Matrix::identity_like(d.rows(), &BigRational::one()))
            .plus(&Matrix::identity_like(c.rows(), &BigRational::one()).kron(&d));
        let poly = IntPolynomial::from_rationals(&berkowitz(&sum));
        locate(&poly, vec![self.clone(), o.clone()], |ops| {
            (&ops[0].lo + &ops[1].lo, &ops[0].hi + &ops[1].hi)
        })
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if let (Some(a), Some(b)) = (&self.exact, &o.exact) {
            return Self::from_rational(a * b);
        }
        for (x, y) in [(self, o), (o, self)] {
            if let Some(r) = &x.exact {
                if r.is_zero() {
                    return Self::from_integer(0);
                }
                // Scale the defining polynomial of y by r.
                let n = y.defining.degree();
                let coeffs: Vec<BigRational> = y
                    .defining
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, c)| BigRational::from_integer(c.clone()) * pow(r, n - k))
                    .collect();
                let poly = IntPolynomial::from_rationals(&coeffs);
                let (lo, hi) = if r.is_positive() {
                    (r * &y.lo, r * &y.hi)
                } else {
                    (r * &y.hi, r * &y.lo)
                };
                return Self {
                    defining: poly.square_free(),
                    lo,
                    hi,
                    exact: None,
                };
            }
        }
        let prod = companion(&self.defining).kron(&companion(&o.defining));
        let poly = IntPolynomial::from_rationals(&berkowitz(&prod));
        locate(&poly, vec![self.clone(), o.clone()], |ops| {
            let corners = [
                &ops[0].lo * &ops[1].lo,
                &ops[0].lo * &ops[1].hi,
                &ops[0].hi * &ops[1].lo,
                &ops[0].hi * &ops[1].hi,
            ];
            let lo = corners.iter().min().unwrap().clone();
            let hi = corners.iter().max().unwrap().clone();
            (lo, hi)
        })
    }

    /// `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if let Some(r) = &self.exact {
            return (!r.is_zero()).then(|| Self::from_rational(r.recip()));
        }
        let mut x = self.clone();
        while !(x.lo.is_positive() || x.hi.is_negative()) {
            x.bisect();
            if let Some(r) = &x.exact {
                return Some(Self::from_rational(r.recip()));
            }
        }
        Some(Self {
            defining: x.defining.reversed().primitive(),
            lo: x.hi.recip(),
            hi: x.lo.recip(),
            exact: None,
        })
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        o.recip().map(|r| self.mul(&r))
    }

    pub fn signum(&self) -> Ordering {
        self.compare(&Self::from_integer(0))
    }

    pub fn compare(&self, o: &Self) -> Ordering {
        if let (Some(a), Some(b)) = (&self.exact, &o.exact) {
            return a.cmp(b);
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        if a.exact.is_none() && b.exact.is_none() {
            let g = a.defining.gcd(&b.defining);
            if g.degree() > 0 {
                let lo = (&a.lo).max(&b.lo).clone();
                let hi = (&a.hi).min(&b.hi).clone();
                if lo < hi {
                    let chain = SturmChain::new(&g).expect("nonzero gcd");
                    let at_hi = usize::from(g.sign_at(&hi) == Ordering::Equal);
                    if chain.count_roots(&lo, &hi) > at_hi {
                        return Ordering::Equal;
                    }
                }
            }
        }
        loop {
            if a.hi <= b.lo && !(a.exact.is_some() && b.exact.is_some()) {
                return Ordering::Less;
            }
            if b.hi <= a.lo && !(a.exact.is_some() && b.exact.is_some()) {
                return Ordering::Greater;
            }
            if let (Some(x), Some(y)) = (&a.exact, &b.exact) {
                return x.cmp(y);
            }
            a.bisect();
            b.bisect();
        }
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, o: &Self) -> bool {
        self.compare(o) == Ordering::Equal
    }
}

impl Eq for AlgebraicNumber {}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for AlgebraicNumber {
    fn cmp(&self, o: &Self) -> Ordering {
        self.compare(o)
    }
}

fn pow(r: &BigRational, k: usize) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..k {
        out *= r;
    }
    out
}

/// Companion matrix of the monic normalization of `p`.
fn companion(p: &IntPolynomial) -> Matrix<BigRational> {
    let n = p.degree();
    let lc = BigRational::from_integer(p.leading());
    Matrix::from_fn(n, n, |r, c| {
        if c == n - 1 {
            -BigRational::from_integer(p.coeff(r)) / &lc
        } else if r == c + 1 {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    })
}

/// The root of `poly` inside the enclosure computed from irrational-aware
/// operands, refining the operands until exactly one root remains.
fn locate(
    poly: &IntPolynomial,
    mut ops: Vec<AlgebraicNumber>,
    enclosure: impl Fn(&[AlgebraicNumber]) -> (BigRational, BigRational),
) -> AlgebraicNumber {
    let chain = SturmChain::new(poly).expect("resultant polynomial is nonzero");
    let base = chain.base().clone();
    loop {
        let (lo, hi) = enclosure(&ops);
        // The value lies strictly inside (lo, hi); a root at lo is another one.
        let count = chain.count_roots(&lo, &hi);
        let hi_is_root = base.sign_at(&hi) == Ordering::Equal;
        if count == 1 && !hi_is_root {
            return AlgebraicNumber::from_half_open(&base, &chain, lo, hi);
        }
        assert!(count >= 1, "enclosure lost the root");
        for op in &mut ops {
            op.bisect();
        }
        if ops.iter().all(|o| o.exact.is_some()) {
            let (lo, hi) = enclosure(&ops);
            debug_assert_eq!(lo, hi);
            return AlgebraicNumber::from_rational(lo);
        }
    }
}

/// Serialized form: defining polynomial and a closed isolating interval.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraicDoc {
    polynomial: IntPolynomial,
    lo: String,
    hi: String,
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        AlgebraicDoc {
            polynomial: self.defining.clone(),
            lo: format_rational(&self.lo),
            hi: format_rational(&self.hi),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let doc = AlgebraicDoc::deserialize(d)?;
        let lo = parse_rational(&doc.lo).map_err(D::Error::custom)?;
        let hi = parse_rational(&doc.hi).map_err(D::Error::custom)?;
        Self::from_interval(&doc.polynomial, lo, hi).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{rat, ratio};

    fn sqrt(n: i64) -> AlgebraicNumber {
        let roots = isolate_real_roots(&IntPolynomial::from_i64(&[-n, 0, 1])).unwrap();
        roots.last().unwrap().clone()
    }

    #[test]
    fn isolates_and_detects_rational_roots() {
        // (2x - 1)(x^2 - 2)(x + 3)
        let p = IntPolynomial::from_i64(&[-1, 2])
            .mul(&IntPolynomial::from_i64(&[-2, 0, 1]))
            .mul(&IntPolynomial::from_i64(&[3, 1]));
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 4);
        assert_eq!(roots[0].as_rational(), Some(&rat(-3)));
        assert!(!roots[1].is_rational());
        assert_eq!(roots[2].as_rational(), Some(&ratio(1, 2)));
        assert!(!roots[3].is_rational());
        assert!(roots.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn surd_arithmetic() {
        let s2 = sqrt(2);
        let s3 = sqrt(3);
        assert_eq!(s2.mul(&s2), AlgebraicNumber::from_integer(2));
        assert_eq!(s2.sub(&s2), AlgebraicNumber::from_integer(0));
        let s6 = sqrt(6);
        assert_eq!(s2.mul(&s3), s6);
        let sum = s2.add(&s3);
        // (sqrt2 + sqrt3)^2 = 5 + 2 sqrt6
        assert_eq!(sum.mul(&sum), AlgebraicNumber::from_integer(5).add(&s6.add(&s6)));
        assert_eq!(s2.recip().unwrap().mul(&s2), AlgebraicNumber::from_integer(1));
        assert!(s2 < s3);
        assert_eq!(s2.neg().signum(), Ordering::Less);
    }

    #[test]
    fn serde_round_trip() {
        let s2 = sqrt(2);
        let text = serde_json::to_string(&s2).unwrap();
        let back: AlgebraicNumber = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s2);
    }
}
