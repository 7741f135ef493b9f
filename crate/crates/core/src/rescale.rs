//! q-rescaling maps `R^σ_τ`: blocks of `σ` are stretched by `q`, blocks of `τ` kept rigid.

use std::fmt;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::disc::{edge_rank, rank_edge, EdgeIndex};
use crate::error::{Error, Result};
use crate::exactalg::{edge_count, EdgeMatrix, Field, LaurentQT};
use crate::noncrossing::NcPartition;
use crate::simplex::{is_nondegenerate, norms_from_points, sub, PointConfig};

/// A pair of partitions whose non-singleton blocks form a planar spanning hypertree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RescalingSpec {
    n: usize,
    scaled: NcPartition,
    fixed: NcPartition,
}

impl RescalingSpec {
    pub fn new(scaled: NcPartition, fixed: NcPartition) -> Result<Self> {
        if scaled.n() != fixed.n() {
            return Err(Error::DimensionMismatch(format!("NC_{} vs NC_{}", scaled.n(), fixed.n())));
        }
        let n = scaled.n();
        let blocks: Vec<&Vec<usize>> = scaled.nonsingleton_blocks().chain(fixed.nonsingleton_blocks()).collect();
        let edges: usize = blocks.iter().map(|b| b.len() - 1).sum();
        if edges != n - 1 {
            return Err(Error::NotHypertree(format!(
                "blocks carry {edges} independent edges, a spanning hypertree on {n} vertices needs {}",
                n - 1
            )));
        }
        let mut component: Vec<usize> = (0..=n).collect();
        for block in &blocks {
            let target = component[block[0]];
            let merged: Vec<usize> = block.iter().map(|&x| component[x]).collect();
            for c in component.iter_mut() {
                if merged.contains(c) {
                    *c = target;
                }
            }
        }
        if (2..=n).any(|x| component[x] != component[1]) {
            return Err(Error::NotHypertree("blocks do not connect all vertices".into()));
        }
        for (k, a) in blocks.iter().enumerate() {
            for b in &blocks[k + 1..] {
                if blocks_cross(a, b) {
                    return Err(Error::NotHypertree(format!("blocks {a:?} and {b:?} cross")));
                }
            }
        }
        Ok(RescalingSpec { n, scaled, fixed })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn scaled(&self) -> &NcPartition {
        &self.scaled
    }

    pub fn fixed(&self) -> &NcPartition {
        &self.fixed
    }

    /// Parses `"R{1,2}^fix{2,3,4}"`; the `^fix{..}` part may be omitted.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = s
            .strip_prefix('R')
            .ok_or_else(|| Error::Parse(format!("rescaling must look like R{{..}}^fix{{..}}: {s:?}")))?;
        let (scaled, fixed) = match body.split_once("^fix") {
            Some((a, b)) => (a, b),
            None => (body, "{}"),
        };
        Self::new(NcPartition::parse(scaled, n)?, NcPartition::parse(fixed, n)?)
    }
}

fn nonsingleton_text(p: &NcPartition) -> String {
    let blocks: Vec<String> = p
        .nonsingleton_blocks()
        .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .collect();
    format!("{{{}}}", blocks.join("|"))
}

impl fmt::Display for RescalingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R{}^fix{}", nonsingleton_text(&self.scaled), nonsingleton_text(&self.fixed))
    }
}

/// Two blocks cross if four distinct elements interleave.
fn blocks_cross(a: &[usize], b: &[usize]) -> bool {
    let only_a: Vec<usize> = a.iter().copied().filter(|x| !b.contains(x)).collect();
    let only_b: Vec<usize> = b.iter().copied().filter(|x| !a.contains(x)).collect();
    only_a.iter().any(|&x| {
        only_a.iter().any(|&y| {
            x < y && only_b.iter().any(|&u| x < u && u < y) && only_b.iter().any(|&w| w < x || w > y)
        })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Q,
    One,
}

impl Factor {
    pub fn eval<F: Field>(self, q0: &F) -> F {
        match self {
            Factor::Q => q0.clone(),
            Factor::One => F::one(),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Factor::Q => "q",
            Factor::One => "1",
        })
    }
}

/// A tree edge traversed from `from` to `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TreeEdge {
    pub from: usize,
    pub to: usize,
    pub factor: Factor,
}

impl TreeEdge {
    pub fn edge(&self, n: usize) -> EdgeIndex {
        edge_rank(self.from, self.to, n).expect("tree edge endpoints in range")
    }
}

/// `n - 1` oriented, tagged edges forming a spanning tree on `{1..n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTreePlan {
    pub n: usize,
    pub edges: Vec<TreeEdge>,
}

fn tagged_blocks(spec: &RescalingSpec) -> impl Iterator<Item = (&Vec<usize>, Factor)> {
    spec.scaled
        .nonsingleton_blocks()
        .map(|b| (b, Factor::Q))
        .chain(spec.fixed.nonsingleton_blocks().map(|b| (b, Factor::One)))
}

impl SpanningTreePlan {
    /// A random tree inside the blocks of `spec`, with random edge orientations.
    pub fn random<R: Rng + ?Sized>(spec: &RescalingSpec, rng: &mut R) -> Self {
        let mut edges = Vec::with_capacity(spec.n - 1);
        for (block, factor) in tagged_blocks(spec) {
            let mut order = block.clone();
            order.shuffle(rng);
            for k in 1..order.len() {
                let (a, b) = (order[rng.random_range(0..k)], order[k]);
                let (from, to) = if rng.random_bool(0.5) { (a, b) } else { (b, a) };
                edges.push(TreeEdge { from, to, factor });
            }
        }
        SpanningTreePlan { n: spec.n, edges }
    }

    /// For each vertex: `(neighbour, factor)`.
    fn adjacency(&self) -> Result<Vec<Vec<(usize, Factor)>>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for e in &self.edges {
            adj[e.from].push((e.to, e.factor));
            adj[e.to].push((e.from, e.factor));
        }
        if self.edges.len() + 1 != self.n {
            return Err(Error::NotHypertree(format!("{} tree edges for {} vertices", self.edges.len(), self.n)));
        }
        Ok(adj)
    }

    /// Parent pointers of the tree rooted at `root`; fails if not spanning.
    fn parents(&self, adj: &[Vec<(usize, Factor)>], root: usize) -> Result<Vec<Option<(usize, Factor)>>> {
        let mut parent = vec![None; self.n + 1];
        let mut seen = vec![false; self.n + 1];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &(y, f) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, f));
                    stack.push(y);
                }
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::NotHypertree("tree edges do not span all vertices".into()));
        }
        Ok(parent)
    }

    pub fn matrix(&self) -> Result<EdgeMatrix<LaurentQT>> {
        matrix_from_tree(self)
    }
}

/// Path edges `(b_1,b_2), (b_2,b_3), ...` inside each non-singleton block.
pub fn build_tree(spec: &RescalingSpec) -> SpanningTreePlan {
    let edges = tagged_blocks(spec)
        .flat_map(|(block, factor)| block.windows(2).map(move |w| TreeEdge { from: w[0], to: w[1], factor }))
        .collect();
    SpanningTreePlan { n: spec.n, edges }
}

pub fn rescaling_matrix(spec: &RescalingSpec) -> Result<EdgeMatrix<LaurentQT>> {
    matrix_from_tree(&build_tree(spec))
}

/// Expands each rescaled `|v'_kl|²` along the tree path from `k` to `l` into
/// a combination of the original squared edge lengths.
pub fn matrix_from_tree(plan: &SpanningTreePlan) -> Result<EdgeMatrix<LaurentQT>> {
    let n = plan.n;
    let adj = plan.adjacency()?;
    let dim = edge_count(n);
    let mut out = EdgeMatrix::zeros(n);
    let mut parents_by_root: Vec<Option<Vec<Option<(usize, Factor)>>>> = vec![None; n + 1];
    for r in 0..dim {
        let e = rank_edge(r, n)?;
        let parent = match &parents_by_root[e.i] {
            Some(p) => p.clone(),
            None => {
                let p = plan.parents(&adj, e.i)?;
                parents_by_root[e.i] = Some(p.clone());
                p
            }
        };
        // steps (x, y, factor) with v_kl = Σ (p_y - p_x)
        let mut steps = Vec::new();
        let mut y = e.j;
        while let Some((x, f)) = parent[y] {
            steps.push((x, y, f));
            y = x;
        }
        // twice the coefficient of a_col * q^deg, deg in 0..=2
        let mut twice = vec![[0i64; 3]; dim];
        let mut add = |a: usize, b: usize, deg: usize, sign: i64| {
            if a != b {
                let col = edge_rank(a, b, n).expect("labels in range").rank;
                twice[col][deg] += sign;
            }
        };
        for &(xs, ys, fs) in &steps {
            for &(xt, yt, ft) in &steps {
                let deg = (fs == Factor::Q) as usize + (ft == Factor::Q) as usize;
                add(xs, yt, deg, 1);
                add(ys, xt, deg, 1);
                add(xs, xt, deg, -1);
                add(ys, yt, deg, -1);
            }
        }
        for (col, coeffs) in twice.iter().enumerate() {
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            assert!(coeffs.iter().all(|c| c % 2 == 0), "odd expansion coefficient in row {e}");
            let entry = LaurentQT::from_terms(
                coeffs.iter().enumerate().map(|(deg, &c)| (deg as i32, 0, BigInt::from(c / 2))),
            );
            out.set(r, col, entry);
        }
    }
    Ok(out)
}

/// Moves each vertex so every tree edge keeps its direction and gets scaled
/// by its factor at `q0`; vertex 1 stays put.
pub fn rescale_points<S: Field>(p: &PointConfig<S>, plan: &SpanningTreePlan, q0: &S) -> Result<PointConfig<S>> {
    if !q0.is_positive() {
        return Err(Error::OutOfRange("rescaling factor must be positive".into()));
    }
    let factors: Vec<(usize, usize, S)> = plan.edges.iter().map(|e| (e.from, e.to, e.factor.eval(q0))).collect();
    rescale_points_by(p, plan.n, &factors)
}

/// General rescaling with an arbitrary positive factor per tree edge `(from, to, factor)`.
pub fn rescale_points_by<S: Field>(p: &PointConfig<S>, n: usize, factors: &[(usize, usize, S)]) -> Result<PointConfig<S>> {
    if p.n() != n {
        return Err(Error::DimensionMismatch(format!("{} points for a tree on {n} vertices", p.n())));
    }
    if factors.iter().any(|(_, _, f)| !f.is_positive()) {
        return Err(Error::OutOfRange("rescaling factors must be positive".into()));
    }
    if !is_nondegenerate(&norms_from_points(p)).unwrap_or(false) {
        return Err(Error::DegenerateInput);
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for (k, (a, b, _)) in factors.iter().enumerate() {
        adj[*a].push((*b, k));
        adj[*b].push((*a, k));
    }
    let mut placed: Vec<Option<Vec<S>>> = vec![None; n + 1];
    placed[1] = Some(p.point(1).to_vec());
    let mut stack = vec![1];
    while let Some(x) = stack.pop() {
        let base = placed[x].clone().expect("placed before visiting");
        for &(y, k) in &adj[x] {
            if placed[y].is_some() {
                continue;
            }
            let f = &factors[k].2;
            let step = sub(p.point(y), p.point(x));
            placed[y] = Some(base.iter().zip(&step).map(|(b, d)| b.add_ref(&d.mul_ref(f))).collect());
            stack.push(y);
        }
    }
    let points = placed
        .into_iter()
        .skip(1)
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::NotHypertree("tree edges do not span all vertices".into()))?;
    PointConfig::with_weights(points, p.weights().to_vec())
}
