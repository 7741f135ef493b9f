use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactalg::{EdgeMatrix, Field, LaurentQT};
use crate::noncrossing::{NcPartition, Permutation};
use crate::simplex::EdgeNormVector;

use super::matrices::{dual_simple_matrix, lkb_generator_matrix, permutation_matrix, simplicial_generator_matrix};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// `s_ij`, `i < j`.
    Dual(usize, usize),
    /// `s_σ` for a noncrossing partition.
    Simple(NcPartition),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    pub generator: Generator,
    pub inverse: bool,
}

impl Token {
    pub fn dual(i: usize, j: usize) -> Self {
        Token { generator: Generator::Dual(i.min(j), i.max(j)), inverse: false }
    }

    pub fn simple(sigma: NcPartition) -> Self {
        Token { generator: Generator::Simple(sigma), inverse: false }
    }

    pub fn inv(self) -> Self {
        Token { inverse: !self.inverse, ..self }
    }

    /// The underlying permutation of the generator, ignoring the sign.
    pub fn permutation(&self, n: usize) -> Permutation {
        match &self.generator {
            Generator::Dual(i, j) => Permutation::transposition(n, *i, *j).expect("validated labels"),
            Generator::Simple(sigma) => sigma.to_permutation(),
        }
    }

    fn parse(tok: &str, n: usize) -> Result<Self> {
        let (body, inverse) = if let Some(b) = tok.strip_suffix("^-1") {
            (b, true)
        } else if let Some(b) = tok.strip_suffix('\'') {
            (b, true)
        } else {
            (tok, false)
        };
        let bad = || Error::Parse(format!("bad braid token {tok:?}"));
        let generator = if let Some(rest) = body.strip_prefix('s') {
            let rest = rest.strip_prefix('_').unwrap_or(rest);
            let rest = rest.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(rest);
            let (i, j): (usize, usize) = if let Some((a, b)) = rest.split_once(',') {
                (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)
            } else if rest.len() == 2 && rest.bytes().all(|b| b.is_ascii_digit()) {
                ((rest.as_bytes()[0] - b'0') as usize, (rest.as_bytes()[1] - b'0') as usize)
            } else {
                return Err(bad());
            };
            if i == j || i == 0 || j == 0 || i.max(j) > n {
                return Err(Error::OutOfRange(format!("s_{i},{j} is not a dual generator for n = {n}")));
            }
            Generator::Dual(i.min(j), i.max(j))
        } else if let Some(rest) = body.strip_prefix('d') {
            Generator::Simple(NcPartition::parse(rest, n)?)
        } else {
            return Err(bad());
        };
        Ok(Token { generator, inverse })
    }

    fn label(&self, n: usize) -> String {
        let base = match &self.generator {
            Generator::Dual(i, j) if n <= 9 => format!("s{i}{j}"),
            Generator::Dual(i, j) => format!("s{i},{j}"),
            Generator::Simple(sigma) => {
                let blocks: Vec<String> = sigma
                    .nonsingleton_blocks()
                    .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
                    .collect();
                format!("d{{{}}}", blocks.join("|"))
            }
        };
        if self.inverse {
            base + "'"
        } else {
            base
        }
    }
}

/// A word in dual generators and dual simples, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    pub n: usize,
    pub tokens: Vec<Token>,
}

impl BraidWord {
    pub fn new(n: usize, tokens: Vec<Token>) -> Result<Self> {
        for token in &tokens {
            match &token.generator {
                Generator::Dual(i, j) if *i == 0 || i >= j || *j > n => {
                    return Err(Error::OutOfRange(format!("s_{i},{j} for n = {n}")));
                }
                Generator::Simple(sigma) if sigma.n() != n => {
                    return Err(Error::DimensionMismatch(format!("dual simple on {} points in B_{n}", sigma.n())));
                }
                _ => {}
            }
        }
        Ok(BraidWord { n, tokens })
    }

    pub fn identity(n: usize) -> Self {
        BraidWord { n, tokens: Vec::new() }
    }

    /// Whitespace-separated tokens: `s12`, `s1,3`, `s10,12`, `d{1,3,4|5,6}`,
    /// with an optional `'` or `^-1` suffix for inverses.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let tokens = s.split_whitespace().map(|tok| Token::parse(tok, n)).collect::<Result<Vec<_>>>()?;
        Ok(BraidWord { n, tokens })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWord { n: self.n, tokens: self.tokens.iter().rev().cloned().map(Token::inv).collect() }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!("B_{} vs B_{}", self.n, other.n)));
        }
        let mut tokens = self.tokens.clone();
        tokens.extend(other.tokens.iter().cloned());
        Ok(BraidWord { n: self.n, tokens })
    }

    /// `w^k` for `k >= 0`.
    pub fn power(&self, k: usize) -> Self {
        BraidWord { n: self.n, tokens: self.tokens.iter().cloned().cycle().take(self.len() * k).collect() }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.tokens.iter().map(|t| t.label(self.n)).collect();
        f.write_str(&labels.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepMode {
    /// Generic `t`; standard generators only.
    Lkb,
    /// `t = 1`.
    Simplicial,
    /// `t = q = 1`.
    Permutation,
}

impl FromStr for RepMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lkb" => Ok(RepMode::Lkb),
            "simplicial" | "simp" => Ok(RepMode::Simplicial),
            "perm" | "permutation" => Ok(RepMode::Permutation),
            _ => Err(Error::Parse(format!("representation must be lkb, simplicial or perm, got {s:?}"))),
        }
    }
}

impl fmt::Display for RepMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepMode::Lkb => "lkb",
            RepMode::Simplicial => "simplicial",
            RepMode::Permutation => "perm",
        })
    }
}

/// Matrix of a single generator (sign ignored) in the given representation.
pub fn generator_matrix(generator: &Generator, n: usize, mode: RepMode) -> Result<EdgeMatrix<LaurentQT>> {
    match (mode, generator) {
        (RepMode::Lkb, Generator::Dual(i, j)) if *j == i + 1 => lkb_generator_matrix(*i, n),
        (RepMode::Lkb, _) => Err(Error::UnsupportedToken(format!(
            "{} in LKB mode (only standard generators s_i,i+1 are defined)",
            Token { generator: generator.clone(), inverse: false }.label(n)
        ))),
        (RepMode::Simplicial, Generator::Dual(i, j)) => simplicial_generator_matrix(*i, *j, n),
        (RepMode::Simplicial, Generator::Simple(sigma)) => dual_simple_matrix(sigma),
        (RepMode::Permutation, g) => {
            Ok(permutation_matrix(&Token { generator: g.clone(), inverse: false }.permutation(n)))
        }
    }
}

fn token_matrix(token: &Token, n: usize, mode: RepMode) -> Result<EdgeMatrix<LaurentQT>> {
    let m = generator_matrix(&token.generator, n, mode)?;
    if token.inverse {
        m.inverse()
    } else {
        Ok(m)
    }
}

/// Product of the token matrices in written order, symbolic in `q` (and `t` for LKB).
pub fn evaluate_word(w: &BraidWord, mode: RepMode) -> Result<EdgeMatrix<LaurentQT>> {
    let mut acc = EdgeMatrix::identity(w.n);
    for token in &w.tokens {
        acc = acc.mul(&token_matrix(token, w.n, mode)?)?;
    }
    Ok(acc)
}

/// Like [`evaluate_word`] but every generator is specialized at `(q0, t0)`
/// first and inverted in the field, which is much cheaper for long words.
pub fn evaluate_word_at<F: Field>(w: &BraidWord, mode: RepMode, q0: &F, t0: &F) -> Result<EdgeMatrix<F>> {
    let mut acc = EdgeMatrix::identity(w.n);
    for token in &w.tokens {
        let m = generator_matrix(&token.generator, w.n, mode)?.eval(q0, t0)?;
        let m = if token.inverse { m.inverse()? } else { m };
        acc = acc.mul(&m)?;
    }
    Ok(acc)
}

/// `M · v` on an edge-norm column.
pub fn act_on_norms<S: Field>(m: &EdgeMatrix<S>, v: &EdgeNormVector<S>) -> Result<EdgeNormVector<S>> {
    if m.n() != v.n() {
        return Err(Error::DimensionMismatch(format!("matrix for n = {} on norms for n = {}", m.n(), v.n())));
    }
    EdgeNormVector::new(v.n(), m.mul_vec(v.entries())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::Rational;

    #[test]
    fn word_grammar() {
        let w = BraidWord::parse("s12 s2,3' d{1,3,4|5,6} s10,12^-1", 12).unwrap();
        assert_eq!(w.tokens[0], Token::dual(1, 2));
        assert_eq!(w.tokens[1], Token::dual(2, 3).inv());
        assert_eq!(w.tokens[3], Token::dual(10, 12).inv());
        assert_eq!(w.to_string(), "s1,2 s2,3' d{1,3,4|5,6} s10,12'");
        let short = BraidWord::parse("s13 d{1,2,3}'", 4).unwrap();
        assert_eq!(short.to_string(), "s13 d{1,2,3}'");
        assert_eq!(BraidWord::parse(&short.to_string(), 4).unwrap(), short);
        assert!(BraidWord::parse("s15", 4).is_err());
        assert!(BraidWord::parse("x12", 4).is_err());
        assert!(BraidWord::parse("d{1,3|2,4}", 4).is_err());
        assert!(BraidWord::parse("", 4).unwrap().is_empty());
    }

    #[test]
    fn empty_word_is_identity() {
        for mode in [RepMode::Lkb, RepMode::Simplicial, RepMode::Permutation] {
            assert!(evaluate_word(&BraidWord::identity(4), mode).unwrap().is_identity());
        }
    }

    #[test]
    fn lkb_rejects_dual_generators() {
        let w = BraidWord::parse("s13", 3).unwrap();
        assert!(matches!(evaluate_word(&w, RepMode::Lkb), Err(Error::UnsupportedToken(_))));
    }

    #[test]
    fn s12_on_equilateral_triangle() {
        let w = BraidWord::parse("s12", 3).unwrap();
        let two = Rational::from_integer(2.into());
        let m = evaluate_word_at(&w, RepMode::Simplicial, &two, &Rational::from_integer(1.into())).unwrap();
        let v = EdgeNormVector::new(3, vec![Rational::from_integer(1.into()); 3]).unwrap();
        let out = act_on_norms(&m, &v).unwrap();
        let expect: Vec<Rational> = [4, 1, 3].iter().map(|&k| Rational::from_integer(k.into())).collect();
        assert_eq!(out.entries(), expect.as_slice());
    }
}
