//! Labeled euclidean simplices, their squared edge lengths and Gram matrices.

use serde_json::{json, Value};

use crate::disc::{edge_rank, rank_edge};
use crate::error::{Error, Result};
use crate::exactalg::{edge_count, DenseMatrix, Field, JsonScalar};

/// Squared edge lengths `a_ij` in lexicographic edge order.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeNormVector<S> {
    n: usize,
    a: Vec<S>,
}

impl<S: Field> EdgeNormVector<S> {
    pub fn new(n: usize, a: Vec<S>) -> Result<Self> {
        if a.len() != edge_count(n) {
            return Err(Error::DimensionMismatch(format!(
                "{} edge norms for n = {n}, expected {}",
                a.len(),
                edge_count(n)
            )));
        }
        Ok(EdgeNormVector { n, a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[S] {
        &self.a
    }

    pub fn into_entries(self) -> Vec<S> {
        self.a
    }

    /// `a_ij`, with `a_ii = 0`.
    pub fn get(&self, i: usize, j: usize) -> S {
        if i == j {
            return S::zero();
        }
        let e = edge_rank(i, j, self.n).expect("vertex labels in range");
        self.a[e.rank].clone()
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> EdgeNormVector<T> {
        EdgeNormVector { n: self.n, a: self.a.iter().map(f).collect() }
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.n == other.n && self.a.iter().zip(&other.a).all(|(x, y)| x.approx_eq(y))
    }

    /// Position of the first entry that is not strictly positive.
    pub fn first_nonpositive(&self) -> Option<usize> {
        self.a.iter().position(|x| !x.is_positive())
    }
}

impl<S: Field + JsonScalar> EdgeNormVector<S> {
    pub fn to_json(&self) -> Value {
        json!({ "n": self.n, "a": self.a.iter().map(JsonScalar::to_json).collect::<Vec<_>>() })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let n = value["n"].as_u64().ok_or_else(|| Error::Parse("edge norms need integer \"n\"".into()))?;
        let a = value["a"]
            .as_array()
            .ok_or_else(|| Error::Parse("edge norms need array \"a\"".into()))?
            .iter()
            .map(S::from_json)
            .collect::<Result<Vec<S>>>()?;
        Self::new(n as usize, a)
    }
}

/// `⟨v_ij, v_kl⟩ = (a_il + a_jk - a_ik - a_jl) / 2` where `v_ij = p_j - p_i`.
pub fn inner_product_from_norms<S: Field>(v: &EdgeNormVector<S>, i: usize, j: usize, k: usize, l: usize) -> S {
    let twice = v.get(i, l).add_ref(&v.get(j, k)).sub_ref(&v.get(i, k)).sub_ref(&v.get(j, l));
    twice.div_ref(&S::from_i64(2))
}

/// `G[r][c] = ⟨v_{1,r+2}, v_{1,c+2}⟩` (zero-based `r`, `c`), of size `(n-1)×(n-1)`.
pub fn gram_from_norms<S: Field>(v: &EdgeNormVector<S>) -> DenseMatrix<S> {
    let m = v.n().saturating_sub(1);
    DenseMatrix::from_fn(m, m, |r, c| inner_product_from_norms(v, 1, r + 2, 1, c + 2))
}

/// `G = L·diag(d)·Lᵀ` with `L` unit lower triangular.
#[derive(Clone, Debug, PartialEq)]
pub struct Ldl<S> {
    pub l: DenseMatrix<S>,
    pub d: Vec<S>,
}

/// LDLᵀ of a symmetric matrix, or `None` as soon as a pivot fails to be
/// (significantly) positive.
pub fn ldl_positive<S: Field>(g: &DenseMatrix<S>) -> Option<Ldl<S>> {
    let m = g.rows();
    let scale = (0..m).map(|k| g.get(k, k).clone()).fold(S::zero(), |acc, x| {
        if x.magnitude() > acc.magnitude() {
            x
        } else {
            acc
        }
    });
    let mut l: DenseMatrix<S> = DenseMatrix::identity(m);
    let mut d: Vec<S> = Vec::with_capacity(m);
    for j in 0..m {
        let mut pivot = g.get(j, j).clone();
        for k in 0..j {
            let ljk: &S = l.get(j, k);
            pivot = pivot.sub_ref(&ljk.mul_ref(ljk).mul_ref(&d[k]));
        }
        if !pivot.is_significant_pivot(&scale) {
            return None;
        }
        for i in j + 1..m {
            let mut s = g.get(i, j).clone();
            for k in 0..j {
                s = s.sub_ref(&l.get(i, k).mul_ref(l.get(j, k)).mul_ref(&d[k]));
            }
            l.set(i, j, s.div_ref(&pivot));
        }
        d.push(pivot);
    }
    Some(Ldl { l, d })
}

fn check_positive<S: Field>(v: &EdgeNormVector<S>) -> Result<()> {
    match v.first_nonpositive() {
        Some(rank) => Err(Error::NonPositiveEntry(rank)),
        None => Ok(()),
    }
}

/// True iff the Gram matrix is positive definite.
pub fn is_nondegenerate<S: Field>(v: &EdgeNormVector<S>) -> Result<bool> {
    check_positive(v)?;
    Ok(ldl_positive(&gram_from_norms(v)).is_some())
}

/// `n` points given in a frame with axis weights: the squared distance
/// between `x` and `y` is `Σ w_m (x_m - y_m)²`.
///
/// Exact embeddings use the LDLᵀ pivots as weights so no square roots are
/// needed; user-supplied points use unit weights.
#[derive(Clone, Debug, PartialEq)]
pub struct PointConfig<S> {
    points: Vec<Vec<S>>,
    weights: Vec<S>,
}

impl<S: Field> PointConfig<S> {
    /// Points in an orthonormal frame.
    pub fn new(points: Vec<Vec<S>>) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        Self::with_weights(points, vec![S::one(); dim])
    }

    pub fn with_weights(points: Vec<Vec<S>>, weights: Vec<S>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != weights.len()) {
            return Err(Error::DimensionMismatch(format!(
                "point of dimension {} in a frame of dimension {}",
                p.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::DegenerateInput);
        }
        Ok(PointConfig { points, weights })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn points(&self) -> &[Vec<S>] {
        &self.points
    }

    /// Point `x`, 1-based.
    pub fn point(&self, x: usize) -> &[S] {
        &self.points[x - 1]
    }

    pub fn weights(&self) -> &[S] {
        &self.weights
    }

    /// Weighted inner product of two coordinate vectors.
    pub fn dot(&self, x: &[S], y: &[S]) -> S {
        x.iter()
            .zip(y)
            .zip(&self.weights)
            .fold(S::zero(), |acc, ((a, b), w)| acc.add_ref(&a.mul_ref(b).mul_ref(w)))
    }

    pub fn squared_distance(&self, a: usize, b: usize) -> S {
        let diff = sub(self.point(a), self.point(b));
        self.dot(&diff, &diff)
    }

    /// Gram matrix of `p_{r+2} - p_1` computed from coordinates.
    pub fn gram(&self) -> DenseMatrix<S> {
        let m = self.n().saturating_sub(1);
        let diffs: Vec<Vec<S>> = (2..=self.n()).map(|x| sub(self.point(x), self.point(1))).collect();
        DenseMatrix::from_fn(m, m, |r, c| self.dot(&diffs[r], &diffs[c]))
    }

    /// Coordinates in an orthonormal frame.
    pub fn euclidean_f64(&self) -> Vec<Vec<f64>> {
        let scale: Vec<f64> = self.weights.iter().map(|w| w.to_f64().sqrt()).collect();
        self.points
            .iter()
            .map(|p| p.iter().zip(&scale).map(|(x, s)| x.to_f64() * s).collect())
            .collect()
    }

    pub fn map<T: Field>(&self, f: impl Fn(&S) -> T) -> PointConfig<T> {
        PointConfig {
            points: self.points.iter().map(|p| p.iter().map(&f).collect()).collect(),
            weights: self.weights.iter().map(&f).collect(),
        }
    }
}

pub(crate) fn sub<S: Field>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| a.sub_ref(b)).collect()
}

pub fn norms_from_points<S: Field>(p: &PointConfig<S>) -> EdgeNormVector<S> {
    let n = p.n();
    let a = (0..edge_count(n))
        .map(|r| {
            let e = rank_edge(r, n).expect("rank in range");
            p.squared_distance(e.i, e.j)
        })
        .collect();
    EdgeNormVector { n, a }
}

/// Places `p_1` at the origin and `p_{r+2}` at row `r` of the unit
/// lower-triangular LDLᵀ factor, with the pivots as axis weights.
pub fn embed<S: Field>(v: &EdgeNormVector<S>) -> Result<PointConfig<S>> {
    check_positive(v).map_err(|_| Error::DegenerateInput)?;
    let Ldl { l, d } = ldl_positive(&gram_from_norms(v)).ok_or(Error::DegenerateInput)?;
    let m = d.len();
    let mut points = vec![vec![S::zero(); m]];
    points.extend((0..m).map(|r| l.row(r).to_vec()));
    Ok(PointConfig { points, weights: d })
}
