//! Dense exact linear algebra over the rationals.
//!
//! Everything in the crate is small (graded pieces of a few dimensions), so a
//! plain row-major `Vec` with Gauss-Jordan elimination is all we need.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

/// Scalar field used throughout.
pub type Q = Rational64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                write!(f, "{} ", self[(r, c)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        Self {
            rows,
            cols,
            data: entries.iter().map(|&x| Q::from_integer(x)).collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = *x;
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0 || self.cols == 0
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)])
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Kronecker product; basis of the result is `(a, b) -> a * other_dim + b`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self[(r1, c1)];
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other[(r2, c2)];
                        if !b.is_zero() {
                            out[(r1 * other.rows + r2, c1 * other.cols + c2)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Block diagonal sum.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)];
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out[(self.rows + r, self.cols + c)] = other[(r, c)];
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)]
            } else {
                other[(r, c - self.cols)]
            }
        })
    }

    /// Selects the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.rows, cols.len(), |r, c| self[(r, cols[c])])
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        Rref { matrix: m, pivots }
    }

    /// Gauss-Jordan elimination; returns pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            // prefer a unit pivot to keep entries small
            let mut best: Option<usize> = None;
            for r in pr..rows {
                let x = self.data[r * cols + c];
                if x.is_zero() {
                    continue;
                }
                if x.abs().is_one() {
                    best = Some(r);
                    break;
                }
                if best.is_none() {
                    best = Some(r);
                }
            }
            let Some(r) = best else { continue };
            if r != pr {
                for k in 0..cols {
                    self.data.swap(r * cols + k, pr * cols + k);
                }
            }
            let inv = self.data[pr * cols + c].recip();
            if !inv.is_one() {
                for k in c..cols {
                    let v = self.data[pr * cols + k];
                    if !v.is_zero() {
                        self.data[pr * cols + k] = v * inv;
                    }
                }
            }
            for r2 in 0..rows {
                if r2 == pr {
                    continue;
                }
                let f = self.data[r2 * cols + c];
                if f.is_zero() {
                    continue;
                }
                for k in c..cols {
                    let p = self.data[pr * cols + k];
                    if !p.is_zero() {
                        let cur = self.data[r2 * cols + k];
                        self.data[r2 * cols + k] = cur - f * p;
                    }
                }
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.is_empty() {
            return 0;
        }
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let cols = self.cols;
        if self.rows == 0 {
            return (0..cols)
                .map(|c| {
                    let mut v = vec![Q::zero(); cols];
                    v[c] = Q::one();
                    v
                })
                .collect();
        }
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Q::zero(); cols];
            v[free] = Q::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -matrix[(row, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of the column space, as the columns of a matrix (full column rank).
    pub fn column_space(&self) -> Matrix {
        if self.is_empty() {
            return Matrix::zeros(self.rows, 0);
        }
        let pivots = self.rref().pivots;
        self.select_columns(&pivots)
    }

    /// Kernel basis as the columns of a matrix.
    pub fn kernel_matrix(&self) -> Matrix {
        Matrix::from_columns(self.cols, &self.nullspace())
    }

    /// Solves `self * x = rhs` column by column. Returns `None` if inconsistent.
    /// When `self` has dependent columns the free variables are set to zero.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let aug = self.hcat(rhs);
        let Rref { matrix, pivots } = aug.rref();
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (row, &p) in pivots.iter().enumerate() {
            if p >= self.cols {
                return None;
            }
            for c in 0..rhs.cols {
                x[(p, c)] = matrix[(row, self.cols + c)];
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        if self.rank() != self.rows {
            return None;
        }
        self.solve(&Matrix::identity(self.rows))
    }
}

/// Quotient data for `V / im(rel)` where `V` has dimension `rel.rows()`.
///
/// `projection` maps `V` onto the quotient (in the basis of non-pivot
/// coordinates) and `section` embeds the quotient back, with
/// `projection * section = 1`.
#[derive(Debug, Clone)]
pub struct Cokernel {
    pub projection: Matrix,
    pub section: Matrix,
    pub image_rank: usize,
}

pub fn cokernel(rel: &Matrix) -> Cokernel {
    let dim = rel.rows();
    if rel.cols() == 0 || rel.is_zero() {
        return Cokernel {
            projection: Matrix::identity(dim),
            section: Matrix::identity(dim),
            image_rank: 0,
        };
    }
    // rows of the rref of rel^T span the image
    let Rref { matrix, pivots } = rel.transpose().rref();
    let mut is_pivot = vec![false; dim];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..dim).filter(|&c| !is_pivot[c]).collect();
    let mut projection = Matrix::zeros(free.len(), dim);
    let mut section = Matrix::zeros(dim, free.len());
    for (q, &c) in free.iter().enumerate() {
        projection[(q, c)] = Q::one();
        section[(c, q)] = Q::one();
        for (row, &p) in pivots.iter().enumerate() {
            let v = matrix[(row, c)];
            if !v.is_zero() {
                projection[(q, p)] = -v;
            }
        }
    }
    Cokernel {
        projection,
        section,
        image_rank: pivots.len(),
    }
}

/// Rational roots of the characteristic polynomial of a square matrix.
///
/// Uses Faddeev-LeVerrier for the coefficients and the rational root test on
/// the integer-scaled polynomial. Roots whose candidate set would be too large
/// to enumerate are skipped; callers only use this to look for splittings.
pub fn rational_eigenvalues(m: &Matrix) -> Vec<Q> {
    let n = m.rows();
    assert_eq!(n, m.cols());
    if n == 0 {
        return Vec::new();
    }
    let coeffs = char_poly(m);
    let mut poly = coeffs;
    let mut roots = Vec::new();
    // strip zero roots
    while poly.len() > 1 && poly[0].is_zero() {
        poly.remove(0);
        if !roots.contains(&Q::zero()) {
            roots.push(Q::zero());
        }
    }
    if poly.len() <= 1 {
        return roots;
    }
    // scale to integers
    let mut lcm: i64 = 1;
    for c in &poly {
        lcm = num_integer_lcm(lcm, *c.denom());
    }
    let ints: Vec<i64> = poly.iter().map(|c| (c * Q::from_integer(lcm)).to_integer()).collect();
    let a0 = ints[0].abs();
    let an = ints[ints.len() - 1].abs();
    const LIMIT: i64 = 1_000_000;
    if a0 > LIMIT || an > LIMIT {
        return roots;
    }
    let divisors = |x: i64| -> Vec<i64> { (1..=x).filter(|d| x % d == 0).collect() };
    for p in divisors(a0) {
        for q in divisors(an) {
            for s in [1, -1] {
                let cand = Q::new(s * p, q);
                if roots.contains(&cand) {
                    continue;
                }
                let val = poly.iter().rev().fold(Q::zero(), |acc, c| acc * cand + c);
                if val.is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    fn gcd(mut a: i64, mut b: i64) -> i64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a.abs()
    }
    a / gcd(a, b) * b
}

/// Coefficients `c_0 .. c_n` (ascending) of `det(xI - m)`.
pub fn char_poly(m: &Matrix) -> Vec<Q> {
    let n = m.rows();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = m.mul(&mk);
        let c_prev = coeffs[n - k + 1];
        for i in 0..n {
            next[(i, i)] += c_prev;
        }
        mk = next;
        let am = m.mul(&mk);
        let trace = (0..n).fold(Q::zero(), |acc, i| acc + am[(i, i)]);
        coeffs[n - k] = -trace / Q::from_integer(k as i64);
    }
    coeffs
}
