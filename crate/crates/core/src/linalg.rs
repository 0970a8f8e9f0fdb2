//! Dense exact linear algebra over [`QScalar`] entries.
//!
//! Everything here is deterministic: elimination always takes the first
//! non-zero pivot in row order, so reduced forms, kernel bases, and
//! eigenspace bases are canonical for a given input. No pivoting for
//! "numerical quality" happens anywhere; the arithmetic is exact.

use crate::error::{Error, Result};
use crate::scalar::QScalar;

pub type QVector = Vec<QScalar>;

/// Row-major dense matrix with exact entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<QScalar>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<QScalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
        QMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![QScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = QScalar::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> QScalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<QScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        assert!(rows.iter().all(|v| v.len() == c), "ragged rows");
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer literal matrix, handy in tests and fixed operator tables.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| QScalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[QScalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> QVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn entries(&self) -> &[QScalar] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map(&self, f: impl Fn(&QScalar) -> QScalar) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        self.map(|x| x * c)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimension mismatch");
        Self::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = QScalar::zero();
            for k in 0..self.cols {
                acc = &acc + &(&self[(i, k)] * &rhs[(k, j)]);
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[QScalar]) -> QVector {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = QScalar::zero();
                for k in 0..self.cols {
                    acc = &acc + &(&self[(i, k)] * &v[k]);
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> QScalar {
        assert!(self.is_square());
        let mut acc = QScalar::zero();
        for i in 0..self.rows {
            acc = &acc + &self[(i, i)];
        }
        acc
    }

    /// The joined quadratic context of all entries.
    pub fn field(&self) -> Result<Option<u64>> {
        let mut d = None;
        for x in &self.data {
            match (d, x.field()) {
                (None, f) => d = f,
                (Some(_), None) => {}
                (Some(p), Some(q)) if p == q => {}
                (Some(p), Some(q)) => return Err(Error::MixedContexts(p, q)),
            }
        }
        Ok(d)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Row echelon reduction in place; returns pivot columns.
    /// Pivot choice: first row (from the top) with a non-zero entry.
    fn reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].inv().expect("pivot is non-zero");
            for j in c..self.cols {
                self[(r, j)] = &self[(r, j)] * &inv;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        self[(i, j)] = &self[(i, j)] - &(&f * &self[(r, j)]);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.reduce();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> QScalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = QScalar::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return QScalar::zero();
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].inv().expect("pivot is non-zero");
            for i in c + 1..n {
                if !m[(i, c)].is_zero() {
                    let f = &m[(i, c)] * &inv;
                    for j in c..n {
                        m[(i, j)] = &m[(i, j)] - &(&f * &m[(c, j)]);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                QScalar::one()
            } else {
                QScalar::zero()
            }
        });
        let pivots = aug.reduce();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::SingularMatrix);
        }
        Ok(Self::from_fn(n, n, |i, j| aug[(i, j + n)].clone()))
    }

    /// Canonical basis of the right kernel `{v : Av = 0}`.
    ///
    /// One vector per free column of the reduced form, with a `1` in the
    /// free coordinate, listed in increasing free-column order.
    pub fn right_kernel(&self) -> Vec<QVector> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let mut pivot_of_col = vec![None; self.cols];
        for (row, col) in pivots.iter().copied().enumerate() {
            pivot_of_col[col] = Some(row);
        }
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![QScalar::zero(); self.cols];
            v[free] = QScalar::one();
            for (col, pivot_row) in pivot_of_col.iter().enumerate() {
                if let Some(row) = pivot_row {
                    v[col] = -&r[(*row, free)];
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `Ax = b` when a solution exists; `None` for inconsistent
    /// systems. Free coordinates are set to zero.
    pub fn solve(&self, b: &[QScalar]) -> Option<QVector> {
        assert_eq!(self.rows, b.len());
        let mut aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let pivots = aug.reduce();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![QScalar::zero(); self.cols];
        for (row, col) in pivots.iter().copied().enumerate() {
            x[col] = aug[(row, self.cols)].clone();
        }
        Some(x)
    }

    /// Signature `(n_plus, n_minus, n_zero)` of a symmetric matrix, by
    /// exact congruence diagonalization.
    pub fn signature(&self) -> Result<(usize, usize, usize)> {
        assert!(self.is_square());
        let n = self.rows;
        if *self != self.transpose() {
            return Err(Error::Invalid("signature of a non-symmetric matrix".into()));
        }
        let mut a = self.clone();
        for k in 0..n {
            if a[(k, k)].is_zero() {
                // Prefer a later index with non-zero diagonal.
                if let Some(i) = (k + 1..n).find(|&i| !a[(i, i)].is_zero()) {
                    a.swap_rows(k, i);
                    for r in 0..n {
                        a.data.swap(r * n + k, r * n + i);
                    }
                } else if let Some((i, j)) = (k..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[(i, j)].is_zero())
                {
                    // All-zero diagonal in the block: fold column j into i
                    // to surface 2*a_ij on the diagonal, then move it up.
                    for c in 0..n {
                        a[(i, c)] = &a[(i, c)] + &a[(j, c)].clone();
                    }
                    for r in 0..n {
                        a[(r, i)] = &a[(r, i)] + &a[(r, j)].clone();
                    }
                    a.swap_rows(k, i);
                    for r in 0..n {
                        a.data.swap(r * n + k, r * n + i);
                    }
                } else {
                    break; // the rest of the block is zero
                }
            }
            let inv = a[(k, k)].inv().expect("diagonal pivot is non-zero");
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = &a[(i, k)] * &inv;
                for c in 0..n {
                    a[(i, c)] = &a[(i, c)] - &(&f * &a[(k, c)]);
                }
                for r in 0..n {
                    a[(r, i)] = &a[(r, i)] - &(&f * &a[(r, k)].clone());
                }
            }
        }
        let mut sig = (0, 0, 0);
        for i in 0..n {
            match a[(i, i)].signum() {
                1 => sig.0 += 1,
                -1 => sig.1 += 1,
                _ => sig.2 += 1,
            }
        }
        Ok(sig)
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = QScalar;
    fn index(&self, (i, j): (usize, usize)) -> &QScalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut QScalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

/// Eigenspace bases of an operator `K` with `K^2 = lambda * I`.
#[derive(Debug, Clone)]
pub struct Eigensplit {
    /// The positive square root of `lambda` actually used.
    pub root: QScalar,
    /// The field parameter of the computation after any extension.
    pub field: Option<u64>,
    /// Basis of `ker(K - root*I)`.
    pub plus: Vec<QVector>,
    /// Basis of `ker(K + root*I)`.
    pub minus: Vec<QVector>,
}

/// Kernels of `K -+ sqrt(lambda) I` for `lambda > 0`.
///
/// When `sqrt(lambda)` already lies in the operator's field the split is
/// computed there. When everything is rational and `lambda` is not a
/// square, the field is extended by the square-free part of `lambda`.
/// A root that would need a second irrationality is rejected.
pub fn eigensplit_sqrt(k: &QMatrix, lambda: &QScalar) -> Result<Eigensplit> {
    assert!(k.is_square(), "eigensplit of a non-square operator");
    let ctx = match (k.field()?, lambda.field()) {
        (None, f) | (f, None) => f,
        (Some(p), Some(q)) if p == q => Some(p),
        (Some(p), Some(q)) => return Err(Error::MixedContexts(p, q)),
    };
    if lambda.signum() <= 0 {
        return Err(Error::NonPositiveSplit);
    }
    let (root, field) = match lambda.sqrt_in(ctx) {
        Some(t) => (t, ctx),
        None => {
            if ctx.is_some() {
                // Would need sqrt of a Q(sqrt(d)) element outside the field.
                return Err(Error::SqrtNotInField);
            }
            let (c, m) = lambda.rational_sqrt_parts()?;
            debug_assert!(m > 1);
            let t = QScalar::new(num_traits::Zero::zero(), c, m)?;
            (t, Some(m))
        }
    };
    let n = k.nrows();
    let shift = |sign: i32| {
        QMatrix::from_fn(n, n, |i, j| {
            if i == j {
                if sign > 0 {
                    &k[(i, j)] - &root
                } else {
                    &k[(i, j)] + &root
                }
            } else {
                k[(i, j)].clone()
            }
        })
    };
    Ok(Eigensplit {
        root: root.clone(),
        field,
        plus: shift(1).right_kernel(),
        minus: shift(-1).right_kernel(),
    })
}
