#![allow(dead_code)]

use braid_simplex_core::exactalg::{EdgeMatrix, LaurentQT, Rational};
use braid_simplex_core::noncrossing::{NcPartition, Permutation};
use num_bigint::BigInt;

/// Reads a univariate polynomial such as `q^2-q`, `1-q`, `-2*q+3` or `0`.
pub fn poly(s: &str) -> LaurentQT {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let sign = if rest.starts_with('-') { -1 } else { 1 };
        rest = rest.trim_start_matches(['+', '-']);
        let end = rest.find(['+', '-']).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        rest = tail;
        let (coeff, exp) = match term.split_once('q') {
            None => (term.parse::<i64>().unwrap(), 0),
            Some((c, e)) => {
                let c = c.trim_end_matches('*');
                let c = if c.is_empty() { 1 } else { c.parse().unwrap() };
                let e = if e.is_empty() { 1 } else { e.trim_start_matches('^').parse().unwrap() };
                (c, e)
            }
        };
        terms.push((exp, 0, BigInt::from(sign * coeff)));
    }
    LaurentQT::from_terms(terms)
}

pub fn poly_matrix(n: usize, rows: &[&[&str]]) -> EdgeMatrix<LaurentQT> {
    let rows = rows.iter().map(|r| r.iter().map(|s| poly(s)).collect()).collect();
    EdgeMatrix::from_rows(n, rows).unwrap()
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn int(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

pub fn nc(perm: &str, n: usize) -> NcPartition {
    NcPartition::from_permutation(&Permutation::parse(perm, n).unwrap()).unwrap()
}

pub fn part(s: &str, n: usize) -> NcPartition {
    NcPartition::parse(s, n).unwrap()
}
