use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1..n}` in one-line notation.
///
/// Products compose right to left as functions: `a.compose(&b)` maps `x` to `a(b(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// The `n`-cycle `(1, 2, ..., n)`.
    pub fn delta(n: usize) -> Self {
        Permutation { images: (1..=n).map(|x| if x == n { 1 } else { x + 1 }).collect() }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        Self::from_cycles(n, &[vec![i, j]])
    }

    /// `images[x - 1] = σ(x)`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y == 0 || y > n || seen[y - 1] {
                return Err(Error::Parse(format!("{images:?} is not a permutation of 1..{n}")));
            }
            seen[y - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Product of the given cycles; each cycle maps its entries to their successors.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for &x in cycle {
                if x == 0 || x > n {
                    return Err(Error::OutOfRange(format!("{x} is not in 1..{n}")));
                }
                if used[x - 1] {
                    return Err(Error::Parse(format!("{x} appears in more than one cycle")));
                }
                used[x - 1] = true;
            }
            for (k, &x) in cycle.iter().enumerate() {
                images[x - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &y)| y == k + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (k, &y) in self.images.iter().enumerate() {
            images[y - 1] = k + 1;
        }
        Permutation { images }
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &Permutation) -> Result<Self> {
        if self.n() != rhs.n() {
            return Err(Error::DimensionMismatch(format!("S_{} vs S_{}", self.n(), rhs.n())));
        }
        Ok(Permutation { images: rhs.images.iter().map(|&x| self.apply(x)).collect() })
    }

    /// Nontrivial cycles, each read from its minimum, ordered by minimum.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 1..=self.n() {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x - 1] = true;
                cycle.push(x);
                x = self.apply(x);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Parses cycle notation such as `"(1,3,6)(2,4)"`, `"(136)"` or `"()"`.
    ///
    /// Cycles without separators are read digit by digit, which only makes
    /// sense for `n <= 9`.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" || s == "id" || s == "1" {
            return Ok(Self::identity(n));
        }
        let mut cycles = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = open.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            cycles.push(parse_label_list(&open[..close], n)?);
            rest = open[close + 1..].trim_start();
        }
        Self::from_cycles(n, &cycles)
    }
}

/// Parses `"1,3,6"`, `"1 3 6"` or (for `n <= 9`) `"136"`.
pub(crate) fn parse_label_list(body: &str, n: usize) -> Result<Vec<usize>> {
    let body = body.trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    let bad = |tok: &str| Error::Parse(format!("bad vertex label {tok:?}"));
    let items: Vec<usize> = if body.contains([',', ' ']) {
        body.split([',', ' '])
            .filter(|tok| !tok.is_empty())
            .map(|tok| tok.trim().parse().map_err(|_| bad(tok)))
            .collect::<Result<_>>()?
    } else if n <= 9 && body.bytes().all(|b| b.is_ascii_digit()) {
        body.bytes().map(|b| (b - b'0') as usize).collect()
    } else {
        vec![body.parse().map_err(|_| bad(body))?]
    };
    if let Some(&bad_label) = items.iter().find(|&&x| x == 0 || x > n) {
        return Err(Error::OutOfRange(format!("{bad_label} is not in 1..{n}")));
    }
    Ok(items)
}

impl fmt::Display for Permutation {
    /// Cycle notation, `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            let body: Vec<String> = cycle.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}
