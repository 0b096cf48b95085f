//! The extension Q(i)[x]/(f) for an irreducible rational polynomial f.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{BigRational, ExactNumError, Field, GaussianRational, IntPolynomial};

/// Modulus data shared by all elements of one extension.
#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    /// Monic modulus, lowest degree first, `degree + 1` entries.
    modulus: Vec<BigRational>,
    /// Power sums of the roots of the modulus, `p_0 ..= p_{n-1}`.
    power_sums: Vec<BigRational>,
}

impl NumberField {
    /// `f` must be irreducible over Q; it stays irreducible over Q(i) when
    /// it has a real root, which is how it is used here.
    pub fn new(f: &IntPolynomial) -> Arc<Self> {
        assert!(f.degree() >= 1);
        let lc = BigRational::from_integer(f.leading());
        let modulus: Vec<BigRational> = f
            .coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()) / &lc)
            .collect();
        let n = f.degree();
        // Newton's identities for the monic modulus.
        let c = |k: usize| &modulus[k];
        let mut p = vec![BigRational::from_integer((n as i64).into())];
        for k in 1..n {
            let mut acc = BigRational::from_integer((k as i64).into()) * c(n - k);
            for i in 1..k {
                acc += c(n - i) * &p[k - i];
            }
            p.push(-acc);
        }
        Arc::new(Self {
            modulus,
            power_sums: p,
        })
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    fn reduce(&self, mut c: Vec<GaussianRational>) -> Vec<GaussianRational> {
        let n = self.degree();
        while c.len() > n {
            let top = c.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let base = c.len() - n;
            for (k, m) in self.modulus[..n].iter().enumerate() {
                c[base + k] = &c[base + k] - &top.scale(m);
            }
        }
        trim(&mut c);
        c
    }
}

fn trim(c: &mut Vec<GaussianRational>) {
    while c.last().is_some_and(GaussianRational::is_zero) {
        c.pop();
    }
}

#[derive(Clone)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<GaussianRational>,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, o: &Self) -> bool {
        self.coeffs == o.coeffs
    }
}

impl FieldElement {
    pub fn constant(field: &Arc<NumberField>, c: GaussianRational) -> Self {
        let mut coeffs = vec![c];
        trim(&mut coeffs);
        Self {
            field: field.clone(),
            coeffs,
        }
    }

    /// The class of x, a root of the modulus.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self {
            field: field.clone(),
            coeffs: field.reduce(vec![GaussianRational::zero(), GaussianRational::one()]),
        }
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    /// The relative trace down to Q(i).
    pub fn trace(&self) -> GaussianRational {
        self.coeffs
            .iter()
            .zip(&self.field.power_sums)
            .fold(GaussianRational::zero(), |acc, (c, p)| acc + c.scale(p))
    }

    fn with(&self, coeffs: Vec<GaussianRational>) -> Self {
        Self {
            field: self.field.clone(),
            coeffs: self.field.reduce(coeffs),
        }
    }

    pub fn try_inverse(&self) -> Result<Self, ExactNumError> {
        if self.coeffs.is_empty() {
            return Err(ExactNumError::NotInvertible);
        }
        // (a + ib)^-1 = (a - ib) / (a^2 + b^2) with a, b real polynomials.
        let conj = self.with(self.coeffs.iter().map(GaussianRational::conj).collect());
        let norm = self.times(&conj);
        debug_assert!(norm.coeffs.iter().all(GaussianRational::is_real));
        let real: Vec<BigRational> = norm.coeffs.iter().map(|c| c.re.clone()).collect();
        let inv = invert_mod(&real, &self.field.modulus).ok_or(ExactNumError::NotInvertible)?;
        let inv = self.with(inv.into_iter().map(GaussianRational::from).collect());
        Ok(conj.times(&inv))
    }
}

type RatPoly = Vec<BigRational>;

fn rtrim(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rmul(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rtrim(out)
}

fn rsub(a: &[BigRational], b: &[BigRational]) -> RatPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    rtrim(
        (0..n)
            .map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z))
            .collect(),
    )
}

fn rdivmod(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), rtrim(r));
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let f = &r[k + db] / &b[db];
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &f * bc;
        }
        q[k] = f;
    }
    (rtrim(q), rtrim(r))
}

/// Inverse of `a` modulo `m` over Q, if gcd(a, m) = 1.
fn invert_mod(a: &[BigRational], m: &[BigRational]) -> Option<RatPoly> {
    let (mut r0, mut r1) = (m.to_vec(), rtrim(a.to_vec()));
    let (mut s0, mut s1): (RatPoly, RatPoly) = (Vec::new(), vec![BigRational::one()]);
    while !r1.is_empty() {
        let (q, r) = rdivmod(&r0, &r1);
        let s = rsub(&s0, &rmul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    Some(s0.iter().map(|x| x * &c).collect())
}

impl Field for FieldElement {
    fn zero_like(&self) -> Self {
        self.with(Vec::new())
    }
    fn one_like(&self) -> Self {
        self.with(vec![GaussianRational::one()])
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = GaussianRational::zero();
        self.with(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&z) + o.coeffs.get(k).unwrap_or(&z))
                .collect(),
        )
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negated())
    }
    fn times(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return self.zero_like();
        }
        let mut out = vec![GaussianRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        self.with(out)
    }
    fn negated(&self) -> Self {
        self.with(self.coeffs.iter().map(|c| -c).collect())
    }
    fn inverse(&self) -> Option<Self> {
        self.try_inverse().ok()
    }
    fn conjugate(&self) -> Self {
        // The generator is real, so conjugation acts on coefficients only.
        self.with(self.coeffs.iter().map(GaussianRational::conj).collect())
    }
    fn from_rational_like(&self, r: &BigRational) -> Self {
        self.with(vec![GaussianRational::from(r.clone())])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::rat;

    #[test]
    fn sqrt_two_field() {
        let k = NumberField::new(&IntPolynomial::from_i64(&[-2, 0, 1]));
        let x = FieldElement::generator(&k);
        let two = x.from_rational_like(&rat(2));
        assert_eq!(x.times(&x), two);
        let y = x.plus(&x.one_like()).plus(&FieldElement::constant(&k, GaussianRational::i()));
        assert!(y.times(&y.inverse().unwrap()).is_one());
        // Tr(a + b sqrt2) = 2a
        assert_eq!(y.trace(), GaussianRational::from_ints(2, 2));
        assert_eq!(x.trace(), GaussianRational::zero());
        assert_eq!(x.times(&x).trace(), GaussianRational::from_int(4));
    }

    #[test]
    fn cubic_power_sums() {
        // x^3 - 3x + 1: p1 = 0, p2 = 6
        let k = NumberField::new(&IntPolynomial::from_i64(&[1, -3, 0, 1]));
        let x = FieldElement::generator(&k);
        assert_eq!(x.trace(), GaussianRational::zero());
        assert_eq!(x.times(&x).trace(), GaussianRational::from_int(6));
        assert_eq!(x.times(&x).times(&x).trace(), GaussianRational::from_int(-3));
    }
}
