//! Greedy normal forms for dual-positive braids over the noncrossing partition lattice.

use std::fmt;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{EdgeMatrix, LaurentQT};
use crate::noncrossing::{enumerate_nc, NcPartition};
use crate::rep::{dual_simple_matrix, BraidWord, Generator};

/// A product of dual simples `s_{σ1} s_{σ2} ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualPositiveWord {
    n: usize,
    factors: Vec<NcPartition>,
}

impl DualPositiveWord {
    /// Discrete factors are dropped.
    pub fn new(n: usize, factors: Vec<NcPartition>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|f| f.n() != n) {
            return Err(Error::DimensionMismatch(format!("factor on {} points in B_{n}", bad.n())));
        }
        Ok(DualPositiveWord { n, factors: factors.into_iter().filter(|f| !f.is_discrete()).collect() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn factors(&self) -> &[NcPartition] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Parses positive tokens of the braid-word grammar (`s13`, `d{1,2,3}`).
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let word = BraidWord::parse(s, n)?;
        Self::try_from(&word)
    }

    /// `Π S_{σk}` in the simplicial representation.
    pub fn matrix(&self) -> Result<EdgeMatrix<LaurentQT>> {
        let mut acc = EdgeMatrix::identity(self.n);
        for f in &self.factors {
            acc = acc.mul(&dual_simple_matrix(f)?)?;
        }
        Ok(acc)
    }

    pub fn to_braid_word(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            tokens: self.factors.iter().cloned().map(crate::rep::Token::simple).collect(),
        }
    }
}

impl TryFrom<&BraidWord> for DualPositiveWord {
    type Error = Error;
    fn try_from(word: &BraidWord) -> Result<Self> {
        let factors = word
            .tokens
            .iter()
            .map(|token| {
                if token.inverse {
                    return Err(Error::Parse("dual-positive words cannot contain inverses".into()));
                }
                match &token.generator {
                    Generator::Dual(i, j) => NcPartition::from_nonsingleton_blocks(word.n, vec![vec![*i, *j]]),
                    Generator::Simple(sigma) => Ok(sigma.clone()),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(word.n, factors)
    }
}

impl fmt::Display for DualPositiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.factors.iter().map(NcPartition::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

/// `(a, b)` is left-weighted: `rc(a) ∧ b` is discrete.
pub fn is_normal_pair(a: &NcPartition, b: &NcPartition) -> Result<bool> {
    Ok(a.rc()?.meet(b)?.is_discrete())
}

fn slide(a: &NcPartition, b: &NcPartition) -> Result<Option<(NcPartition, NcPartition)>> {
    let m = a.rc()?.meet(b)?;
    if m.is_discrete() {
        return Ok(None);
    }
    let pm = m.to_permutation();
    let head = a.to_permutation().compose(&pm)?;
    let tail = pm.inverse().compose(&b.to_permutation())?;
    let as_nc = |p| {
        NcPartition::from_permutation(&p)
            .map_err(|e| Error::SlidingFailure(format!("sliding {m} across ({a}, {b}): {e}")))
    };
    Ok(Some((as_nc(head)?, as_nc(tail)?)))
}

/// Slides material leftwards until every adjacent pair is normal.
pub fn normal_form(w: &DualPositiveWord) -> Result<DualPositiveWord> {
    let mut factors = w.factors.clone();
    loop {
        let mut changed = false;
        for k in 0..factors.len().saturating_sub(1) {
            if let Some((head, tail)) = slide(&factors[k], &factors[k + 1])? {
                factors[k] = head;
                factors[k + 1] = tail;
                changed = true;
            }
        }
        let before = factors.len();
        factors.retain(|f| !f.is_discrete());
        if !changed && factors.len() == before {
            return Ok(DualPositiveWord { n: w.n, factors });
        }
    }
}

pub fn dual_length(w: &DualPositiveWord) -> Result<usize> {
    Ok(normal_form(w)?.len())
}

/// Largest `q` exponent over all entries, 0 for the zero matrix.
pub fn max_q_degree(m: &EdgeMatrix<LaurentQT>) -> i32 {
    m.max_q_degree()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QDegreeWitness {
    pub trial: usize,
    pub word: String,
    pub normal_form: String,
    pub dual_length: usize,
    pub max_q_degree: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QDegreeReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub agreements: usize,
    pub mismatches: Vec<QDegreeWitness>,
}

impl QDegreeReport {
    pub fn agreement_rate(&self) -> f64 {
        if self.trials == 0 {
            1.0
        } else {
            self.agreements as f64 / self.trials as f64
        }
    }

    pub fn summary(&self) -> String {
        format!(
            "q-degree vs 2 x dual length (n = {}): {}/{} agree, {} mismatches",
            self.n,
            self.agreements,
            self.trials,
            self.mismatches.len()
        )
    }
}

/// Random dual-positive words with `1..=max_factors` non-trivial factors.
pub fn random_positive_word<R: Rng + ?Sized>(simples: &[NcPartition], max_factors: usize, rng: &mut R) -> DualPositiveWord {
    let n = simples[0].n();
    let count = rng.random_range(1..=max_factors.max(1));
    let factors = (0..count).map(|_| simples[rng.random_range(0..simples.len())].clone()).collect();
    DualPositiveWord { n, factors }
}

/// Compares the top `q` power of each word's matrix with twice its dual length.
pub fn qdegree_experiment(n: usize, trials: usize, max_factors: usize, seed: u64) -> Result<QDegreeReport> {
    let simples: Vec<NcPartition> = enumerate_nc(n)?.into_iter().filter(|p| !p.is_discrete()).collect();
    if simples.is_empty() {
        return Err(Error::OutOfRange("n must be at least 2".into()));
    }
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<u64> = (0..trials).map(|_| master.next_u64()).collect();
    let outcomes = seeds
        .par_iter()
        .enumerate()
        .map(|(trial, &s)| -> Result<(bool, QDegreeWitness)> {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let w = random_positive_word(&simples, max_factors, &mut rng);
            let nf = normal_form(&w)?;
            let degree = max_q_degree(&w.matrix()?);
            let witness = QDegreeWitness {
                trial,
                word: w.to_string(),
                normal_form: nf.to_string(),
                dual_length: nf.len(),
                max_q_degree: degree,
            };
            Ok((degree == 2 * nf.len() as i32, witness))
        })
        .collect::<Result<Vec<_>>>()?;
    let agreements = outcomes.iter().filter(|(ok, _)| *ok).count();
    let mismatches = outcomes.into_iter().filter(|(ok, _)| !ok).map(|(_, w)| w).collect();
    Ok(QDegreeReport { n, trials, seed, agreements, mismatches })
}
