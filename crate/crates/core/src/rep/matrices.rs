use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::disc::{edge_rank, rank_edge};
use crate::error::{Error, Result};
use crate::exactalg::{edge_count, EdgeMatrix, LaurentQT, Scalar};
use crate::noncrossing::{NcPartition, Permutation};
use crate::rescale::{rescaling_matrix, RescalingSpec};

/// LKB matrix of the standard generator `s_{i,i+1}` with generic `q` and `t`.
///
/// Row `e_kl` is the image of the basis edge `e_kl`; the matrix acts on
/// edge-norm columns from the left.
pub fn lkb_generator_matrix(i: usize, n: usize) -> Result<EdgeMatrix<LaurentQT>> {
    if i == 0 || i >= n {
        return Err(Error::OutOfRange(format!("s_{i},{} is not a standard generator for n = {n}", i + 1)));
    }
    let j = i + 1;
    let q = LaurentQT::q;
    let t = LaurentQT::t;
    let q2_minus_q = || LaurentQT::from_q_coeffs(&[0, -1, 1]);
    let one_minus_q = || LaurentQT::from_q_coeffs(&[1, -1]);
    let col = |a: usize, b: usize| edge_rank(a, b, n).expect("labels in range").rank;
    let mut m = EdgeMatrix::zeros(n);
    for r in 0..edge_count(n) {
        let e = rank_edge(r, n)?;
        let (k, l) = (e.i, e.j);
        let mut put = |c: usize, v: LaurentQT| m.set(r, c, v);
        if (k, l) == (i, j) {
            put(r, &t() * &(&q() * &q()));
        } else if ![k, l].contains(&i) && ![k, l].contains(&j) {
            put(r, LaurentQT::one());
        } else if i == k && j < l {
            put(col(j, l), LaurentQT::one());
        } else if i == l {
            put(col(k, j), LaurentQT::one());
        } else if k < i && j == l {
            put(col(i, j), &t() * &q2_minus_q());
            put(col(k, i), q());
            put(r, one_minus_q());
        } else if j == k {
            put(col(i, j), q2_minus_q());
            put(col(i, l), q());
            put(r, one_minus_q());
        } else {
            unreachable!("rows of s_{i}{j} cover all edges");
        }
    }
    Ok(m)
}

/// Edge relabeling induced by `perm`: the squared length on `e_kl` moves to
/// `e_{σ(k)σ(l)}`, so row `e_kl` has its 1 in column `e_{σ⁻¹(k)σ⁻¹(l)}`.
/// With this choice `P_{στ} = P_σ P_τ`.
pub fn permutation_matrix<S: Scalar>(perm: &Permutation) -> EdgeMatrix<S> {
    let n = perm.n();
    let inv = perm.inverse();
    let mut m = EdgeMatrix::zeros(n);
    for r in 0..edge_count(n) {
        let e = rank_edge(r, n).expect("rank in range");
        let c = edge_rank(inv.apply(e.i), inv.apply(e.j), n).expect("labels in range").rank;
        m.set(r, c, S::one());
    }
    m
}

fn single_block(n: usize, block: Vec<usize>) -> Result<NcPartition> {
    NcPartition::from_nonsingleton_blocks(n, vec![block])
}

/// `S_ij = P_(i,j) · R^{ij}_{rc(i,j)}` for any dual generator.
pub fn simplicial_generator_matrix(i: usize, j: usize, n: usize) -> Result<EdgeMatrix<LaurentQT>> {
    if i == 0 || j > n || i >= j {
        return Err(Error::OutOfRange(format!("s_{i},{j} is not a dual generator for n = {n}")));
    }
    dual_simple_matrix(&single_block(n, vec![i, j])?)
}

fn cached(key: (bool, NcPartition), build: impl FnOnce() -> Result<EdgeMatrix<LaurentQT>>) -> Result<EdgeMatrix<LaurentQT>> {
    static CACHE: OnceLock<Mutex<HashMap<(bool, NcPartition), EdgeMatrix<LaurentQT>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().expect("cache lock").get(&key) {
        return Ok(m.clone());
    }
    let m = build()?;
    let mut guard = cache.lock().expect("cache lock");
    if guard.len() > 4096 {
        guard.clear();
    }
    guard.insert(key, m.clone());
    Ok(m)
}

/// `S_σ = P_σ · R^σ_{rc(σ)}`.
pub fn dual_simple_matrix(sigma: &NcPartition) -> Result<EdgeMatrix<LaurentQT>> {
    cached((false, sigma.clone()), || {
        let r = rescaling_matrix(&RescalingSpec::new(sigma.clone(), sigma.rc()?)?)?;
        permutation_matrix(&sigma.to_permutation()).mul(&r)
    })
}

/// `R^σ_{lc(σ)} · P_σ`, the other side of the relabel-and-rescale factorization.
pub fn dual_simple_matrix_left(sigma: &NcPartition) -> Result<EdgeMatrix<LaurentQT>> {
    cached((true, sigma.clone()), || {
        let r = rescaling_matrix(&RescalingSpec::new(sigma.clone(), sigma.lc()?)?)?;
        r.mul(&permutation_matrix(&sigma.to_permutation()))
    })
}

/// `s_ab` written in standard generators: `s_{a+1,b}⁻¹ s_{a,a+1} s_{a+1,b}`,
/// as `(i, ±1)` meaning `s_{i,i+1}^{±1}`.
pub fn dual_generator_word(a: usize, b: usize) -> Vec<(usize, i8)> {
    if b == a + 1 {
        return vec![(a, 1)];
    }
    let inner = dual_generator_word(a + 1, b);
    let mut out: Vec<(usize, i8)> = inner.iter().rev().map(|&(i, p)| (i, -p)).collect();
    out.push((a, 1));
    out.extend(inner);
    out
}

/// `s_σ` in standard generators: each block `b_1 < ... < b_m` contributes
/// `s_{b1b2} s_{b2b3} ... s_{b(m-1)bm}`.
pub fn dual_simple_word(sigma: &NcPartition) -> Vec<(usize, i8)> {
    sigma
        .nonsingleton_blocks()
        .flat_map(|block| block.windows(2).flat_map(|w| dual_generator_word(w[0], w[1])).collect::<Vec<_>>())
        .collect()
}
