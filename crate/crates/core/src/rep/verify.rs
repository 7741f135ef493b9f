//! Mechanical checks of the representation: relations, the two structural
//! theorems, and supporting consistency properties.

use std::collections::HashMap;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exactalg::{format_rational, EdgeMatrix, LaurentQT, Rational, Scalar};
use crate::noncrossing::{enumerate_nc, five_permutations, NcPartition, Permutation};
use crate::rescale::{rescaling_matrix, RescalingSpec};
use crate::simplex::{is_nondegenerate, norms_from_points, EdgeNormVector, PointConfig};

use super::matrices::{
    dual_simple_matrix, dual_simple_matrix_left, dual_simple_word, lkb_generator_matrix, permutation_matrix,
    simplicial_generator_matrix,
};
use super::word::{generator_matrix, BraidWord, Generator, RepMode, Token};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool) -> Self {
        Check { name: name.into(), passed, detail: None }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        if !self.passed {
            self.detail = Some(detail.into());
        }
        self
    }
}

/// Ordered pass/fail list for one verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub title: String,
    pub n: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.passed).count()
    }

    pub fn total(&self) -> usize {
        self.checks.len()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        format!("{}: {}/{} pass", self.title, self.passed(), self.total())
    }
}

fn std_gen(mode: RepMode, i: usize, n: usize) -> Result<EdgeMatrix<LaurentQT>> {
    generator_matrix(&Generator::Dual(i, i + 1), n, mode)
}

/// Subsets of `{1..n}` of size at least `min` as increasing vectors.
fn subsets(n: usize, min: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .map(|mask| (1..=n).filter(|x| mask & (1 << (x - 1)) != 0).collect::<Vec<_>>())
        .filter(|s| s.len() >= min)
        .collect()
}

/// Triples `(B, i, C)` with `B, i, C` in clockwise order around a block `A`:
/// `C` is the first `r` elements after `i` cyclically, `B` the rest.
pub fn dual_rule_triples(n: usize) -> Vec<(Vec<usize>, usize, Vec<usize>)> {
    let mut out = Vec::new();
    for a in subsets(n, 3) {
        let m = a.len();
        for (pos, &i) in a.iter().enumerate() {
            let after: Vec<usize> = (1..m).map(|k| a[(pos + k) % m]).collect();
            for r in 1..m - 1 {
                out.push((after[r..].to_vec(), i, after[..r].to_vec()));
            }
        }
    }
    out
}

fn block_partition(n: usize, block: &[usize]) -> Result<NcPartition> {
    NcPartition::from_nonsingleton_blocks(n, vec![block.to_vec()])
}

/// Braid relations and far commutation of the standard generators, plus the
/// dual rule `S_{Bi} S_{iC} = S_{BiC}` outside LKB mode.
pub fn verify_relations(n: usize, mode: RepMode) -> Result<Report> {
    let gens = (1..n).map(|i| std_gen(mode, i, n)).collect::<Result<Vec<_>>>()?;
    let mut checks = Vec::new();
    for i in 1..n.saturating_sub(1) {
        let (a, b) = (&gens[i - 1], &gens[i]);
        let lhs = a.mul(b)?.mul(a)?;
        let rhs = b.mul(a)?.mul(b)?;
        checks.push(Check::new(format!("s{i} s{} s{i} = s{} s{i} s{}", i + 1, i + 1, i + 1), lhs == rhs));
    }
    for i in 1..n {
        for j in i + 2..n {
            let (a, b) = (&gens[i - 1], &gens[j - 1]);
            checks.push(Check::new(format!("s{i} s{j} = s{j} s{i}"), a.mul(b)? == b.mul(a)?));
        }
    }
    if mode != RepMode::Lkb {
        let triples = dual_rule_triples(n);
        let dual: Vec<Check> = triples
            .par_iter()
            .map(|(b, i, c)| -> Result<Check> {
                let mut bi = b.clone();
                bi.push(*i);
                bi.sort_unstable();
                let mut ic = c.clone();
                ic.push(*i);
                ic.sort_unstable();
                let mut bic = bi.clone();
                bic.extend(c);
                bic.sort_unstable();
                let simple = |blk: &[usize]| -> Result<EdgeMatrix<LaurentQT>> {
                    generator_matrix(&Generator::Simple(block_partition(n, blk)?), n, mode)
                };
                let lhs = simple(&bi)?.mul(&simple(&ic)?)?;
                let name = format!("S{:?} S{:?} = S{:?}", bi, ic, bic);
                Ok(Check::new(name, lhs == simple(&bic)?))
            })
            .collect::<Result<Vec<_>>>()?;
        checks.extend(dual);
    }
    Ok(Report { title: format!("relations ({mode}, n = {n})"), n, checks })
}

/// Product of `t = 1` LKB matrices along the standard-generator spelling of `σ`.
pub fn dual_simple_via_standard(sigma: &NcPartition) -> Result<EdgeMatrix<LaurentQT>> {
    let n = sigma.n();
    let mut gens: HashMap<(usize, i8), EdgeMatrix<LaurentQT>> = HashMap::new();
    let mut acc = EdgeMatrix::identity(n);
    for (i, p) in dual_simple_word(sigma) {
        if !gens.contains_key(&(i, p)) {
            let m = lkb_generator_matrix(i, n)?.set_t_one();
            let m = if p < 0 { m.inverse()? } else { m };
            gens.insert((i, p), m);
        }
        acc = acc.mul(&gens[&(i, p)])?;
    }
    Ok(acc)
}

/// For every `σ ∈ NC_n`: the standard-generator product equals both
/// `P_σ R^σ_{rc σ}` and `R^σ_{lc σ} P_σ`.
pub fn verify_theorem_b(n: usize) -> Result<Report> {
    let checks = enumerate_nc(n)?
        .par_iter()
        .map(|sigma| -> Result<Check> {
            let direct = dual_simple_via_standard(sigma)?;
            let right = dual_simple_matrix(sigma)?;
            let left = dual_simple_matrix_left(sigma)?;
            let (ok_r, ok_l) = (direct == right, direct == left);
            let detail = match (ok_r, ok_l) {
                (false, false) => "both factorizations differ",
                (false, true) => "P R_rc differs",
                _ => "R_lc P differs",
            };
            Ok(Check::new(sigma.to_string(), ok_r && ok_l).with_detail(detail))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report { title: format!("theorem B (n = {n})"), n, checks })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremAViolation {
    pub trial: usize,
    pub word: String,
    pub q: String,
    pub input: Vec<String>,
    pub output: Vec<String>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremAReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub q_values: Vec<String>,
    pub evaluations: usize,
    pub violations: Vec<TheoremAViolation>,
}

impl TheoremAReport {
    pub fn all_passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn summary(&self) -> String {
        format!(
            "theorem A (n = {}): {} trials, {} evaluations, {} violations",
            self.n,
            self.trials,
            self.evaluations,
            self.violations.len()
        )
    }
}

/// A nondegenerate simplex with rational vertices: integer points in
/// `[-10, 10]^(n-1)` nudged by multiples of `1/16`, rejection sampled.
pub fn random_rational_simplex<R: Rng + ?Sized>(n: usize, rng: &mut R) -> PointConfig<Rational> {
    loop {
        let points: Vec<Vec<Rational>> = (0..n)
            .map(|_| {
                (0..n - 1)
                    .map(|_| {
                        let whole: i64 = rng.random_range(-10..=10);
                        let nudge: i64 = rng.random_range(-7..=7);
                        Rational::new((16 * whole + nudge).into(), 16.into())
                    })
                    .collect()
            })
            .collect();
        let p = PointConfig::new(points).expect("uniform dimension");
        if is_nondegenerate(&norms_from_points(&p)).unwrap_or(false) {
            return p;
        }
    }
}

/// A word of length `1..=max_len` over all dual generators and their inverses.
pub fn random_dual_word<R: Rng + ?Sized>(n: usize, max_len: usize, rng: &mut R) -> BraidWord {
    let len = rng.random_range(1..=max_len.max(1));
    let tokens = (0..len)
        .map(|_| {
            let i = rng.random_range(1..n);
            let j = rng.random_range(i + 1..=n);
            let token = Token::dual(i, j);
            if rng.random_bool(0.5) {
                token.inv()
            } else {
                token
            }
        })
        .collect();
    BraidWord { n, tokens }
}

/// Evaluated simplicial generator matrices and their inverses at one `q`.
struct EvaluatedGenerators {
    q: Rational,
    forward: HashMap<(usize, usize), EdgeMatrix<Rational>>,
    backward: HashMap<(usize, usize), EdgeMatrix<Rational>>,
}

impl EvaluatedGenerators {
    fn new(n: usize, q: &Rational) -> Result<Self> {
        let one = Rational::one();
        let mut forward = HashMap::new();
        let mut backward = HashMap::new();
        for i in 1..n {
            for j in i + 1..=n {
                let m = simplicial_generator_matrix(i, j, n)?.eval(q, &one)?;
                backward.insert((i, j), m.inverse()?);
                forward.insert((i, j), m);
            }
        }
        Ok(EvaluatedGenerators { q: q.clone(), forward, backward })
    }

    /// `M_w · v`, applying the rightmost token first.
    fn act(&self, w: &BraidWord, v: &[Rational]) -> Result<Vec<Rational>> {
        let mut out = v.to_vec();
        for token in w.tokens.iter().rev() {
            let Generator::Dual(i, j) = token.generator else {
                unreachable!("random words use dual generators only")
            };
            let table = if token.inverse { &self.backward } else { &self.forward };
            out = table[&(i, j)].mul_vec(&out)?;
        }
        Ok(out)
    }
}

/// Random simplices pushed through random words at each `q`: every image must
/// have positive entries and a positive definite Gram matrix.
pub fn verify_theorem_a(
    n: usize,
    q_values: &[Rational],
    word_length: usize,
    trials: usize,
    seed: u64,
) -> Result<TheoremAReport> {
    let tables = q_values.iter().map(|q| EvaluatedGenerators::new(n, q)).collect::<Result<Vec<_>>>()?;
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let trial_seeds: Vec<u64> = (0..trials).map(|_| master.next_u64()).collect();
    let per_trial = trial_seeds
        .par_iter()
        .enumerate()
        .map(|(trial, &s)| -> Result<Vec<TheoremAViolation>> {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let input = norms_from_points(&random_rational_simplex(n, &mut rng));
            let word = random_dual_word(n, word_length, &mut rng);
            let mut found = Vec::new();
            for table in &tables {
                let image = EdgeNormVector::new(n, table.act(&word, input.entries())?)?;
                let reason = match image.first_nonpositive() {
                    Some(r) => Some(format!("entry {r} is not positive")),
                    None if !is_nondegenerate(&image)? => Some("Gram matrix not positive definite".into()),
                    None => None,
                };
                if let Some(reason) = reason {
                    found.push(TheoremAViolation {
                        trial,
                        word: word.to_string(),
                        q: format_rational(&table.q),
                        input: input.entries().iter().map(format_rational).collect(),
                        output: image.entries().iter().map(format_rational).collect(),
                        reason,
                    });
                }
            }
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TheoremAReport {
        n,
        trials,
        seed,
        q_values: q_values.iter().map(format_rational).collect(),
        evaluations: trials * q_values.len(),
        violations: per_trial.into_iter().flatten().collect(),
    })
}

/// LKB at `t = 1` is simplicial on standard generators; simplicial at `q = 1`
/// is the edge permutation on every dual generator.
pub fn verify_specialization(n: usize) -> Result<Report> {
    let mut checks = Vec::new();
    for i in 1..n {
        let lkb = lkb_generator_matrix(i, n)?.set_t_one();
        checks.push(Check::new(format!("lkb s{i}{} at t=1", i + 1), lkb == simplicial_generator_matrix(i, i + 1, n)?));
    }
    for i in 1..n {
        for j in i + 1..=n {
            let s = simplicial_generator_matrix(i, j, n)?.set_q_one();
            let p = permutation_matrix(&Permutation::transposition(n, i, j)?);
            checks.push(Check::new(format!("simplicial s{i}{j} at q=1"), s == p));
        }
    }
    Ok(Report { title: format!("specialization (n = {n})"), n, checks })
}

/// Every LKB standard generator and simplicial dual generator has determinant `±q^a t^b`.
pub fn verify_unit_determinants(n: usize) -> Result<Report> {
    let mut checks = Vec::new();
    for i in 1..n {
        let det = lkb_generator_matrix(i, n)?.determinant()?;
        checks.push(Check::new(format!("det lkb s{i}{} = {det}", i + 1), det.as_unit_monomial().is_some()));
    }
    for i in 1..n {
        for j in i + 1..=n {
            let det = simplicial_generator_matrix(i, j, n)?.determinant()?;
            checks.push(Check::new(format!("det S{i}{j} = {det}"), det.as_unit_monomial().is_some()));
        }
    }
    Ok(Report { title: format!("unit determinants (n = {n})"), n, checks })
}

/// All hypertree pairs `(a, b)` of partitions of `{1..n}`.
pub fn valid_rescaling_specs(n: usize) -> Result<Vec<RescalingSpec>> {
    let all = enumerate_nc(n)?;
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            if let Ok(spec) = RescalingSpec::new(a.clone(), b.clone()) {
                out.push(spec);
            }
        }
    }
    Ok(out)
}

/// `P_ρ R^a_b P_ρ⁻¹ = R^{ρ(a)}_{ρ(b)}` for every rotation `ρ = δ^k`.
pub fn verify_conjugation_coherence(n: usize) -> Result<Report> {
    let specs = valid_rescaling_specs(n)?;
    let delta = Permutation::delta(n);
    let mut rho = Permutation::identity(n);
    let mut checks = Vec::new();
    for k in 1..n {
        rho = rho.compose(&delta)?;
        let p: EdgeMatrix<LaurentQT> = permutation_matrix(&rho);
        let p_inv = p.transpose();
        let rotated = specs
            .par_iter()
            .map(|spec| -> Result<bool> {
                let lhs = p.mul(&rescaling_matrix(spec)?)?.mul(&p_inv)?;
                let moved = RescalingSpec::new(spec.scaled().relabel(&rho)?, spec.fixed().relabel(&rho)?)?;
                Ok(lhs == rescaling_matrix(&moved)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let bad = rotated.iter().filter(|ok| !**ok).count();
        checks.push(
            Check::new(format!("rotation δ^{k} over {} specs", specs.len()), bad == 0)
                .with_detail(format!("{bad} specs fail")),
        );
    }
    Ok(Report { title: format!("conjugation coherence (n = {n})"), n, checks })
}

/// Reduced factorizations `σ1 σ2` with noncrossing product.
pub fn reduced_factorizations(n: usize) -> Result<Vec<(NcPartition, NcPartition)>> {
    let all = enumerate_nc(n)?;
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            if five_permutations(a, b).is_ok() {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    Ok(out)
}

/// Re-derives `S_{σ2} = (R^{σ1}_{σ4σ2})⁻¹ P_{σ1}⁻¹ S_{σ1σ2}` on up to
/// `samples` reduced factorizations (all of them if fewer).
pub fn verify_two_of_three(n: usize, samples: usize, seed: u64) -> Result<Report> {
    let mut pairs = reduced_factorizations(n)?;
    if pairs.len() > samples {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        pairs = rand::seq::index::sample(&mut rng, pairs.len(), samples)
            .into_iter()
            .map(|k| pairs[k].clone())
            .collect();
    }
    let checks = pairs
        .par_iter()
        .map(|(s1, s2)| -> Result<Check> {
            let five = five_permutations(s1, s2)?;
            let product = NcPartition::from_permutation(&s1.to_permutation().compose(&s2.to_permutation())?)?;
            let r = rescaling_matrix(&RescalingSpec::new(s1.clone(), five.s4.block_union(s2)?)?)?;
            let p_inv: EdgeMatrix<LaurentQT> = permutation_matrix(&s1.to_permutation().inverse());
            let derived = r.inverse()?.mul(&p_inv)?.mul(&dual_simple_matrix(&product)?)?;
            Ok(Check::new(format!("{s1} * {s2}"), derived == dual_simple_matrix(s2)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report { title: format!("two of three (n = {n})"), n, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_rule_triples_small() {
        let triples = dual_rule_triples(3);
        assert!(triples.contains(&(vec![1], 2, vec![3])));
        assert_eq!(triples.len(), 3);
        assert!(dual_rule_triples(4).contains(&(vec![1], 2, vec![4])));
        for n in 3..=5 {
            for (b, i, c) in dual_rule_triples(n) {
                let mut bi = b.clone();
                bi.push(i);
                bi.sort_unstable();
                let mut ic = c.clone();
                ic.push(i);
                ic.sort_unstable();
                let mut all = bi.clone();
                all.extend(&c);
                all.sort_unstable();
                let pb = Permutation::from_cycles(n, &[bi]).unwrap();
                let pc = Permutation::from_cycles(n, &[ic]).unwrap();
                let pa = Permutation::from_cycles(n, &[all]).unwrap();
                assert_eq!(pb.compose(&pc).unwrap(), pa);
            }
        }
    }
}
