use std::fmt;
use std::str::FromStr;

use super::partition::NcPartition;
use super::perm::Permutation;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" | "lc" => Ok(Side::Left),
            "right" | "r" | "rc" => Ok(Side::Right),
            _ => Err(Error::Parse(format!("side must be left or right, got {s:?}"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

fn same_n(a: &NcPartition, b: &NcPartition) -> Result<()> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch(format!("NC_{} vs NC_{}", a.n(), b.n())));
    }
    Ok(())
}

fn checked_nc(perm: &Permutation) -> Result<NcPartition> {
    NcPartition::from_permutation(perm).map_err(|e| Error::ComplementNotNoncrossing(format!("{perm}: {e}")))
}

impl NcPartition {
    /// Left: `δσ⁻¹`, right: `σ⁻¹δ`.
    pub fn complement(&self, side: Side) -> Result<NcPartition> {
        let sigma_inv = self.to_permutation().inverse();
        let delta = Permutation::delta(self.n());
        let perm = match side {
            Side::Left => delta.compose(&sigma_inv)?,
            Side::Right => sigma_inv.compose(&delta)?,
        };
        checked_nc(&perm)
    }

    pub fn lc(&self) -> Result<NcPartition> {
        self.complement(Side::Left)
    }

    pub fn rc(&self) -> Result<NcPartition> {
        self.complement(Side::Right)
    }

    /// Every block of `self` sits inside a block of `other`.
    pub fn leq(&self, other: &NcPartition) -> Result<bool> {
        same_n(self, other)?;
        Ok(self.blocks().iter().all(|block| {
            other.block_of(block[0]).is_some_and(|outer| block.iter().all(|x| outer.contains(x)))
        }))
    }

    /// Common refinement.
    pub fn meet(&self, other: &NcPartition) -> Result<NcPartition> {
        same_n(self, other)?;
        let mut blocks = Vec::new();
        for a in self.blocks() {
            for b in other.blocks() {
                let common: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
                if !common.is_empty() {
                    blocks.push(common);
                }
            }
        }
        NcPartition::new(self.n(), blocks)
    }

    /// Least upper bound, `lc(rc(a) ∧ rc(b))`.
    pub fn join(&self, other: &NcPartition) -> Result<NcPartition> {
        same_n(self, other)?;
        self.rc()?.meet(&other.rc()?)?.lc()
    }

    /// Merges blocks that overlap into connected components; this is the
    /// partition of a product `σ1σ2` when ranks add.
    pub fn block_union(&self, other: &NcPartition) -> Result<NcPartition> {
        same_n(self, other)?;
        let n = self.n();
        let mut parent: Vec<usize> = (0..=n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut root = x;
            while parent[root] != root {
                root = parent[root];
            }
            let mut y = x;
            while parent[y] != root {
                let next = parent[y];
                parent[y] = root;
                y = next;
            }
            root
        }
        for block in self.blocks().iter().chain(other.blocks()) {
            for &x in &block[1..] {
                let (ra, rb) = (find(&mut parent, block[0]), find(&mut parent, x));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
        for x in 1..=n {
            let root = find(&mut parent, x);
            groups[root].push(x);
        }
        NcPartition::new(n, groups.into_iter().filter(|g| !g.is_empty()).collect())
    }
}

/// The complementary permutations of a factorization `σ1σ2` of a dual simple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FivePermutations {
    pub s3: NcPartition,
    pub s4: NcPartition,
    pub s5: NcPartition,
}

/// Given `σ1`, `σ2` with `σ1σ2` noncrossing and `rank(σ1σ2) = rank σ1 + rank σ2`,
/// returns `σ3, σ4, σ5` with `δ = σ1σ2σ3 = σ1σ4σ2 = σ5σ1σ2`.
pub fn five_permutations(s1: &NcPartition, s2: &NcPartition) -> Result<FivePermutations> {
    same_n(s1, s2)?;
    let n = s1.n();
    let (p1, p2) = (s1.to_permutation(), s2.to_permutation());
    let p12 = p1.compose(&p2)?;
    let s12 = NcPartition::from_permutation(&p12)
        .map_err(|e| Error::ProductNotNoncrossing(format!("{p1} * {p2} = {p12}: {e}")))?;
    if s12.rank() != s1.rank() + s2.rank() {
        return Err(Error::ProductNotNoncrossing(format!(
            "{p1} * {p2} = {p12} is not a reduced product (ranks {} + {} != {})",
            s1.rank(),
            s2.rank(),
            s12.rank()
        )));
    }
    let delta = Permutation::delta(n);
    let s3 = s12.rc()?;
    let s5 = s12.lc()?;
    let s4 = checked_nc(&p1.inverse().compose(&delta)?.compose(&p2.inverse())?)?;
    let (p3, p4, p5) = (s3.to_permutation(), s4.to_permutation(), s5.to_permutation());
    let products = [
        p12.compose(&p3)?,
        p1.compose(&p4)?.compose(&p2)?,
        p5.compose(&p12)?,
    ];
    if products.iter().any(|p| *p != delta) {
        return Err(Error::ComplementNotNoncrossing(format!("five-permutation identity fails for {p1}, {p2}")));
    }
    Ok(FivePermutations { s3, s4, s5 })
}
