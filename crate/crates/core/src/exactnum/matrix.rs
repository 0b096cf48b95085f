//! Dense exact matrices over any [`Field`].

use std::fmt;

use super::{Field, GaussianRational};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Matrices over the Gaussian rationals, the common case.
pub type ExactMatrix = Matrix<GaussianRational>;

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut T {
        &mut self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Self {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<T>>
    where
        T: Clone,
    {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }
}

impl<T: Field> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, v: T) -> Self {
        Self {
            rows,
            cols,
            data: vec![v; rows * cols],
        }
    }

    /// Identity with entries modelled on `template`.
    pub fn identity_like(n: usize, template: &T) -> Self {
        let (z, o) = (template.zero_like(), template.one_like());
        Self::from_fn(n, n, |r, c| if r == c { o.clone() } else { z.clone() })
    }

    pub fn zero_like(&self) -> Self {
        let z = self.template().zero_like();
        Self::filled(self.rows, self.cols, z)
    }

    fn template(&self) -> &T {
        self.data.first().expect("template of an empty matrix")
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conjugate())
    }

    pub fn plus(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn minus(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.minus(b)).collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|a| a.times(s))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let z = self.template().zero_like();
        let mut out = Self::filled(self.rows, o.cols, z);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(r, c).plus(&a.times(b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = v[0].zero_like();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.plus(&a.times(b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> T {
        assert!(self.is_square());
        let mut acc = self.template().zero_like();
        for i in 0..self.rows {
            acc = acc.plus(self.get(i, i));
        }
        acc
    }

    /// `Tr(self * o)` without forming the product.
    pub fn trace_of_product(&self, o: &Self) -> T {
        assert_eq!((self.rows, self.cols), (o.cols, o.rows), "shape mismatch");
        let mut acc = self.template().zero_like();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let (a, b) = (self.get(r, c), o.get(c, r));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.plus(&a.times(b));
                }
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Field::is_zero)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (r..self.cols).all(|c| *self.get(r, c) == self.get(c, r).conjugate()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.get(r, c).is_zero()))
    }

    /// `self * o - o * self`
    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).minus(&o.mul(self))
    }

    pub fn commutes_with(&self, o: &Self) -> bool {
        self.commutator(o).is_zero()
    }

    /// Idempotent and Hermitian.
    pub fn is_projector(&self) -> bool {
        self.is_hermitian() && self.mul(self) == *self
    }

    /// Kronecker product `self ⊗ o`.
    pub fn kron(&self, o: &Self) -> Self {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |r, c| {
            self.get(r / o.rows, c / o.cols)
                .times(o.get(r % o.rows, c % o.cols))
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inverse().expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(row, c).times(&inv);
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let f = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c).minus(&f.times(m.get(row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// Inverse via row reduction of `[A | I]`; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let t = self.template();
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                t.one_like()
            } else {
                t.zero_like()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| red.get(r, n + c).clone()))
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : self * v = 0}`, one vector per free column.
    pub fn null_space(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let template = self.template();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![template.zero_like(); self.cols];
            v[free] = template.one_like();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r.get(i, free).negated();
            }
            basis.push(v);
        }
        basis
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Canonical order on projectors: descending lexicographic order of the
/// flattened `(re, im)` entries, so `|0><0|` precedes `|1><1|`.
pub fn canonical_order(a: &ExactMatrix, b: &ExactMatrix) -> std::cmp::Ordering {
    let key = |m: &ExactMatrix| -> Vec<(super::BigRational, super::BigRational)> {
        m.entries().iter().map(|z| (z.re.clone(), z.im.clone())).collect()
    };
    key(b).cmp(&key(a))
}

/// `⟨u, v⟩ = Σ conj(u_i) v_i`
pub fn inner<T: Field>(u: &[T], v: &[T]) -> T {
    let mut acc = u[0].zero_like();
    for (a, b) in u.iter().zip(v) {
        if !a.is_zero() && !b.is_zero() {
            acc = acc.plus(&a.conjugate().times(b));
        }
    }
    acc
}

/// `|v⟩⟨v| / ⟨v, v⟩`
pub fn rank_one_projector<T: Field>(v: &[T]) -> Matrix<T> {
    let n = inner(v, v).inverse().expect("projector onto the zero vector");
    Matrix::from_fn(v.len(), v.len(), |r, c| v[r].times(&v[c].conjugate()).times(&n))
}
