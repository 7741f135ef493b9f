//! Dense matrices over a [`Scalar`] domain, and edge-indexed square matrices.

use serde_json::{json, Value};

use super::laurent::LaurentQT;
use super::scalar::{Field, JsonScalar, Scalar};
use crate::error::{Error, Result};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, size, |r, c| if r == c { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        DenseMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n_rows = rows.len();
        Ok(DenseMatrix { rows: n_rows, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: S) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> DenseMatrix<T> {
        DenseMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<DenseMatrix<T>> {
        let data = self.data.iter().map(f).collect::<Result<Vec<T>>>()?;
        Ok(DenseMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, rhs: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        Ok(out)
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(S::zero(), |acc, (a, x)| acc.add_ref(&a.mul_ref(x)))
            })
            .collect())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let want = if r == c { S::one() } else { S::zero() };
                    self.get(r, c).approx_eq(&want)
                })
            })
    }

    /// Entrywise domain equality (tolerant in the float domain).
    pub fn approx_eq(&self, rhs: &Self) -> bool {
        self.rows == rhs.rows
            && self.cols == rhs.cols
            && self.data.iter().zip(&rhs.data).all(|(a, b)| a.approx_eq(b))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn require_square(&self) -> Result<()> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        Ok(())
    }
}

impl<F: Field> DenseMatrix<F> {
    /// Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = DenseMatrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                F::one()
            } else {
                F::zero()
            }
        });
        for k in 0..n {
            let pivot_row = (k..n)
                .filter(|&r| !aug.get(r, k).is_zero())
                .max_by(|&a, &b| aug.get(a, k).magnitude().total_cmp(&aug.get(b, k).magnitude()))
                .ok_or(Error::Singular)?;
            aug.swap_rows(k, pivot_row);
            let inv_pivot = aug.get(k, k).recip();
            for c in 0..2 * n {
                let v = aug.get(k, c).mul_ref(&inv_pivot);
                aug.set(k, c, v);
            }
            for r in 0..n {
                if r == k || aug.get(r, k).is_zero() {
                    continue;
                }
                let factor = aug.get(r, k).clone();
                for c in 0..2 * n {
                    let v = aug.get(r, c).sub_ref(&factor.mul_ref(aug.get(k, c)));
                    aug.set(r, c, v);
                }
            }
        }
        Ok(DenseMatrix::from_fn(n, n, |r, c| aug.get(r, n + c).clone()))
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> Result<F> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = F::one();
        for k in 0..n {
            let Some(p) = (k..n)
                .filter(|&r| !m.get(r, k).is_zero())
                .max_by(|&a, &b| m.get(a, k).magnitude().total_cmp(&m.get(b, k).magnitude()))
            else {
                return Ok(F::zero());
            };
            if p != k {
                m.swap_rows(k, p);
                det = det.neg_ref();
            }
            let pivot = m.get(k, k).clone();
            det = det.mul_ref(&pivot);
            for r in k + 1..n {
                if m.get(r, k).is_zero() {
                    continue;
                }
                let factor = m.get(r, k).div_ref(&pivot);
                for c in k..n {
                    let v = m.get(r, c).sub_ref(&factor.mul_ref(m.get(k, c)));
                    m.set(r, c, v);
                }
            }
        }
        Ok(det)
    }
}

impl DenseMatrix<LaurentQT> {
    /// Inverse over the Laurent ring.
    ///
    /// Runs fraction-free (Bareiss) Gauss-Jordan elimination on `[A | I]`, which
    /// ends at `[d I | B]` with `d = ±det A` and `A^-1 = B / d`. Every entry of
    /// `B` must then divide exactly by `d`, otherwise the inverse leaves the
    /// Laurent ring and [`Error::NonLaurentEntry`] is returned.
    pub fn inverse(&self) -> Result<Self> {
        self.require_square()?;
        let n = self.rows;
        let mut aug = DenseMatrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self.get(r, c).clone()
            } else if c - n == r {
                LaurentQT::one()
            } else {
                LaurentQT::zero()
            }
        });
        let mut prev = LaurentQT::one();
        for k in 0..n {
            let pivot_row = (k..n)
                .filter(|&r| !aug.get(r, k).is_zero())
                .min_by_key(|&r| aug.get(r, k).terms().len())
                .ok_or(Error::Singular)?;
            aug.swap_rows(k, pivot_row);
            let pivot = aug.get(k, k).clone();
            for r in 0..n {
                if r == k {
                    continue;
                }
                let factor = aug.get(r, k).clone();
                for c in 0..2 * n {
                    if c == k {
                        continue;
                    }
                    let mut v = &pivot * aug.get(r, c);
                    if !factor.is_zero() {
                        v = &v - &(&factor * aug.get(k, c));
                    }
                    let v = v
                        .div_exact(&prev)
                        .ok_or_else(|| Error::NonLaurentEntry(format!("elimination step divisor {prev}")))?;
                    aug.set(r, c, v);
                }
                aug.set(r, k, LaurentQT::zero());
            }
            prev = pivot;
        }
        let det = aug.get(n - 1, n - 1).clone();
        let mut out = DenseMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let entry = aug
                    .get(r, n + c)
                    .div_exact(&det)
                    .ok_or_else(|| Error::NonLaurentEntry(det.to_string()))?;
                out.set(r, c, entry);
            }
        }
        Ok(out)
    }

    /// Determinant by Bareiss elimination.
    pub fn determinant(&self) -> Result<LaurentQT> {
        self.require_square()?;
        let n = self.rows;
        let mut m = self.clone();
        let mut prev = LaurentQT::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !m.get(r, k).is_zero()) else {
                return Ok(LaurentQT::zero());
            };
            if p != k {
                m.swap_rows(k, p);
                negate = !negate;
            }
            let pivot = m.get(k, k).clone();
            for r in k + 1..n {
                for c in k + 1..n {
                    let v = &(&pivot * m.get(r, c)) - &(m.get(r, k) * m.get(k, c));
                    let v = v
                        .div_exact(&prev)
                        .ok_or_else(|| Error::NonLaurentEntry(format!("Bareiss divisor {prev}")))?;
                    m.set(r, c, v);
                }
                m.set(r, k, LaurentQT::zero());
            }
            prev = pivot;
        }
        let det = m.get(n - 1, n - 1).clone();
        Ok(if negate { -det } else { det })
    }
}

/// An `N x N` matrix indexed by the edges of an `n`-vertex simplex, `N = n(n-1)/2`,
/// rows and columns in lexicographic edge order.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeMatrix<S> {
    n: usize,
    inner: DenseMatrix<S>,
}

pub fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl<S: Scalar> EdgeMatrix<S> {
    pub fn identity(n: usize) -> Self {
        EdgeMatrix { n, inner: DenseMatrix::identity(edge_count(n)) }
    }

    pub fn zeros(n: usize) -> Self {
        let dim = edge_count(n);
        EdgeMatrix { n, inner: DenseMatrix::zeros(dim, dim) }
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize, usize) -> S) -> Self {
        let dim = edge_count(n);
        EdgeMatrix { n, inner: DenseMatrix::from_fn(dim, dim, f) }
    }

    pub fn from_dense(n: usize, inner: DenseMatrix<S>) -> Result<Self> {
        let dim = edge_count(n);
        if inner.rows() != dim || inner.cols() != dim {
            return Err(Error::DimensionMismatch(format!(
                "n = {n} needs a {dim}x{dim} matrix, got {}x{}",
                inner.rows(),
                inner.cols()
            )));
        }
        Ok(EdgeMatrix { n, inner })
    }

    pub fn from_rows(n: usize, rows: Vec<Vec<S>>) -> Result<Self> {
        Self::from_dense(n, DenseMatrix::from_rows(rows)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.inner.rows()
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        self.inner.get(r, c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: S) {
        self.inner.set(r, c, value)
    }

    pub fn row(&self, r: usize) -> &[S] {
        self.inner.row(r)
    }

    pub fn as_dense(&self) -> &DenseMatrix<S> {
        &self.inner
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        self.inner.to_rows()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> EdgeMatrix<T> {
        EdgeMatrix { n: self.n, inner: self.inner.map(f) }
    }

    pub fn try_map<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<EdgeMatrix<T>> {
        Ok(EdgeMatrix { n: self.n, inner: self.inner.try_map(f)? })
    }

    fn check_same_n(&self, rhs: &Self) -> Result<()> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch(format!("n = {} vs n = {}", self.n, rhs.n)));
        }
        Ok(())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_same_n(rhs)?;
        Ok(EdgeMatrix { n: self.n, inner: self.inner.mul(&rhs.inner)? })
    }

    pub fn mul_vec(&self, v: &[S]) -> Result<Vec<S>> {
        self.inner.mul_vec(v)
    }

    pub fn transpose(&self) -> Self {
        EdgeMatrix { n: self.n, inner: self.inner.transpose() }
    }

    pub fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    pub fn approx_eq(&self, rhs: &Self) -> bool {
        self.n == rhs.n && self.inner.approx_eq(&rhs.inner)
    }
}

impl<F: Field> EdgeMatrix<F> {
    pub fn inverse(&self) -> Result<Self> {
        Ok(EdgeMatrix { n: self.n, inner: self.inner.inverse()? })
    }

    pub fn determinant(&self) -> Result<F> {
        self.inner.determinant()
    }
}

impl EdgeMatrix<LaurentQT> {
    /// Inverse over `Z[q^±1, t^±1]`; see [`DenseMatrix::inverse`].
    pub fn inverse(&self) -> Result<Self> {
        Ok(EdgeMatrix { n: self.n, inner: self.inner.inverse()? })
    }

    pub fn determinant(&self) -> Result<LaurentQT> {
        self.inner.determinant()
    }

    /// Substitutes numeric values for `q` and `t`.
    pub fn eval<F: Field>(&self, q0: &F, t0: &F) -> Result<EdgeMatrix<F>> {
        self.try_map(|p| p.eval(q0, t0))
    }

    pub fn invert_q(&self) -> Self {
        self.map(LaurentQT::invert_q)
    }

    pub fn set_t_one(&self) -> Self {
        self.map(LaurentQT::set_t_one)
    }

    pub fn set_q_one(&self) -> Self {
        self.map(LaurentQT::set_q_one)
    }

    /// Largest power of `q` over all entries (0 for the zero matrix).
    pub fn max_q_degree(&self) -> i32 {
        (0..self.dim())
            .flat_map(|r| self.row(r).iter().filter_map(LaurentQT::max_q_degree))
            .max()
            .unwrap_or(0)
    }
}

impl<S: Scalar + JsonScalar> EdgeMatrix<S> {
    /// `{"n": n, "rows": [[scalar, ...], ...]}`.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.dim())
            .map(|r| Value::Array(self.row(r).iter().map(JsonScalar::to_json).collect()))
            .collect();
        json!({ "n": self.n, "rows": rows })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("matrix JSON needs an integer \"n\"".into()))? as usize;
        let rows = value
            .get("rows")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("matrix JSON needs \"rows\"".into()))?;
        let rows = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?
                    .iter()
                    .map(S::from_json)
                    .collect::<Result<Vec<S>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(n, rows)
    }
}
