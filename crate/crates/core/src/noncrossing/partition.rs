use std::fmt;

use serde::{Deserialize, Serialize};

use super::perm::{parse_label_list, Permutation};
use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_nc`]; `C_12 = 208012`.
pub const ENUMERATION_CAP: usize = 12;

/// A noncrossing partition of `{1..n}`.
///
/// Canonical form: each block ascending, blocks ordered by their minimum,
/// singletons stored explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPartition", into = "RawPartition")]
pub struct NcPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RawPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl TryFrom<RawPartition> for NcPartition {
    type Error = Error;
    fn try_from(raw: RawPartition) -> Result<Self> {
        NcPartition::new(raw.n, raw.blocks)
    }
}

impl From<NcPartition> for RawPartition {
    fn from(p: NcPartition) -> Self {
        RawPartition { n: p.n, blocks: p.blocks }
    }
}

fn canonicalize(n: usize, blocks: Vec<Vec<usize>>) -> Result<Vec<Vec<usize>>> {
    let mut seen = vec![false; n];
    let mut out = Vec::with_capacity(blocks.len());
    for mut block in blocks {
        if block.is_empty() {
            return Err(Error::NotAPartition { n, reason: "empty block".into() });
        }
        block.sort_unstable();
        for &x in &block {
            if x == 0 || x > n {
                return Err(Error::NotAPartition { n, reason: format!("{x} is out of range") });
            }
            if seen[x - 1] {
                return Err(Error::NotAPartition { n, reason: format!("{x} appears twice") });
            }
            seen[x - 1] = true;
        }
        out.push(block);
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(Error::NotAPartition { n, reason: format!("{} is not covered", missing + 1) });
    }
    out.sort_unstable_by_key(|block| block[0]);
    Ok(out)
}

fn first_crossing(n: usize, blocks: &[Vec<usize>]) -> Option<(usize, usize, usize, usize)> {
    let mut label = vec![0; n + 1];
    for (id, block) in blocks.iter().enumerate() {
        for &x in block {
            label[x] = id;
        }
    }
    for a in 1..=n {
        for c in a + 1..=n {
            if label[c] == label[a] {
                continue;
            }
            for b in c + 1..=n {
                if label[b] != label[a] {
                    continue;
                }
                for d in b + 1..=n {
                    if label[d] == label[c] {
                        return Some((a, c, b, d));
                    }
                }
            }
        }
    }
    None
}

/// True iff no two blocks interleave as `a < c < b < d`.
///
/// Errors with [`Error::NotAPartition`] if `blocks` does not partition `{1..n}`.
pub fn is_noncrossing(blocks: &[Vec<usize>], n: usize) -> Result<bool> {
    let canonical = canonicalize(n, blocks.to_vec())?;
    Ok(first_crossing(n, &canonical).is_none())
}

impl NcPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let blocks = canonicalize(n, blocks)?;
        if let Some((a, c, b, d)) = first_crossing(n, &blocks) {
            return Err(Error::Crossing(format!("{a} < {c} < {b} < {d} interleave")));
        }
        Ok(NcPartition { n, blocks })
    }

    /// Like [`NcPartition::new`] but uncovered elements become singletons.
    pub fn from_nonsingleton_blocks(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut covered = vec![false; n + 1];
        for &x in blocks.iter().flatten() {
            if x == 0 || x > n {
                return Err(Error::NotAPartition { n, reason: format!("{x} is out of range") });
            }
            covered[x] = true;
        }
        let mut all = blocks;
        all.extend((1..=n).filter(|&x| !covered[x]).map(|x| vec![x]));
        Self::new(n, all)
    }

    pub fn discrete(n: usize) -> Self {
        NcPartition { n, blocks: (1..=n).map(|x| vec![x]).collect() }
    }

    /// The single block `{1..n}`, identified with `δ`.
    pub fn full(n: usize) -> Self {
        NcPartition { n, blocks: vec![(1..=n).collect()] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn nonsingleton_blocks(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.blocks.iter().filter(|block| block.len() > 1)
    }

    /// Rank in the lattice: `n - #blocks` (the number of transpositions needed).
    pub fn rank(&self) -> usize {
        self.n - self.blocks.len()
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.n
    }

    pub fn is_full(&self) -> bool {
        self.blocks.len() == 1
    }

    pub fn block_of(&self, x: usize) -> Option<&[usize]> {
        self.blocks.iter().find(|block| block.contains(&x)).map(Vec::as_slice)
    }

    /// Product of the increasing cycles on each block.
    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.n, &self.blocks).expect("blocks partition 1..n")
    }

    /// Inverse of [`NcPartition::to_permutation`].
    pub fn from_permutation(perm: &Permutation) -> Result<Self> {
        let n = perm.n();
        let mut blocks = Vec::new();
        for cycle in perm.cycles() {
            if cycle.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::NotNoncrossingPermutation(format!(
                    "cycle {perm} does not list its support in increasing order"
                )));
            }
            blocks.push(cycle);
        }
        Self::from_nonsingleton_blocks(n, blocks).map_err(|e| match e {
            Error::Crossing(why) => Error::NotNoncrossingPermutation(format!("{perm}: {why}")),
            other => other,
        })
    }

    /// Applies `perm` to every label; fails if the image is crossing.
    pub fn relabel(&self, perm: &Permutation) -> Result<Self> {
        if perm.n() != self.n {
            return Err(Error::DimensionMismatch(format!("S_{} acting on NC_{}", perm.n(), self.n)));
        }
        let blocks = self.blocks.iter().map(|block| block.iter().map(|&x| perm.apply(x)).collect()).collect();
        Self::new(self.n, blocks)
    }

    /// Parses `"{1,3,6|2|4,5}"`; elements not mentioned become singletons.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix('{')
            .and_then(|rest| rest.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("partition must look like {{1,2|3}}: {s:?}")))?;
        let blocks = body
            .split('|')
            .map(|block| parse_label_list(block, n))
            .filter(|block| !matches!(block, Ok(b) if b.is_empty()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_nonsingleton_blocks(n, blocks)
    }
}

impl fmt::Display for NcPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|block| block.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{{{}}}", blocks.join("|"))
    }
}

/// Catalan number `C_n`.
pub fn catalan(n: usize) -> u64 {
    (0..n as u64).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// All noncrossing partitions of `{1..n}` in lexicographic order of their
/// canonical block lists.
pub fn enumerate_nc(n: usize) -> Result<Vec<NcPartition>> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded { n, cap: ENUMERATION_CAP });
    }
    let labels: Vec<usize> = (1..=n).collect();
    let mut out: Vec<NcPartition> = nc_blocks_of(&labels)
        .into_iter()
        .map(|mut blocks| {
            blocks.sort_unstable_by_key(|block| block[0]);
            NcPartition { n, blocks }
        })
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Noncrossing block lists of an increasing label sequence: choose the block of
/// the first element, then recurse independently into each gap it leaves.
fn nc_blocks_of(labels: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = labels.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for mask in 0u32..(1 << rest.len()) {
        let mut block = vec![first];
        let mut gaps: Vec<&[usize]> = Vec::new();
        let mut gap_start = 0;
        for (k, &x) in rest.iter().enumerate() {
            if mask & (1 << k) != 0 {
                block.push(x);
                gaps.push(&rest[gap_start..k]);
                gap_start = k + 1;
            }
        }
        gaps.push(&rest[gap_start..]);
        let mut partial: Vec<Vec<Vec<usize>>> = vec![vec![block]];
        for gap in gaps {
            let options = nc_blocks_of(gap);
            partial = partial
                .into_iter()
                .flat_map(|acc| {
                    options.iter().map(move |opt| {
                        let mut next = acc.clone();
                        next.extend(opt.iter().cloned());
                        next
                    })
                })
                .collect();
        }
        out.extend(partial);
    }
    out
}
