//! Bivariate Laurent polynomials in `q` and `t` with big-integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::scalar::Field;
use crate::error::{Error, Result};

/// One monomial `c * q^q * t^t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub q: i32,
    pub t: i32,
    pub c: BigInt,
}

/// An element of `Z[q, q^-1, t, t^-1]`.
///
/// Terms are kept sorted by `(q, t)` exponent with no zero coefficients, so
/// structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentQT {
    terms: Vec<Term>,
}

impl LaurentQT {
    pub fn zero() -> Self {
        LaurentQT { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(BigInt::from(c), 0, 0)
    }

    pub fn monomial(c: BigInt, q: i32, t: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentQT { terms: vec![Term { q, t, c }] }
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(BigInt::one(), e, 0)
    }

    /// Builds a polynomial from arbitrary `(qexp, texp, coeff)` triples,
    /// combining repeated exponents.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, i32, BigInt)>,
    {
        let mut raw: Vec<Term> = terms.into_iter().map(|(q, t, c)| Term { q, t, c }).collect();
        raw.sort_unstable_by_key(|term| (term.q, term.t));
        let mut out: Vec<Term> = Vec::with_capacity(raw.len());
        for term in raw {
            match out.last_mut() {
                Some(last) if last.q == term.q && last.t == term.t => last.c += term.c,
                _ => out.push(term),
            }
        }
        out.retain(|term| !term.c.is_zero());
        LaurentQT { terms: out }
    }

    /// Univariate polynomial in `q` from ascending coefficients `c0 + c1 q + ...`.
    pub fn from_q_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(e, &c)| (e as i32, 0, BigInt::from(c))),
        )
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].q == 0 && self.terms[0].t == 0 && self.terms[0].c.is_one()
    }

    /// Coefficient of `q^qe t^te`.
    pub fn coeff(&self, qe: i32, te: i32) -> BigInt {
        self.terms
            .binary_search_by_key(&(qe, te), |term| (term.q, term.t))
            .map(|k| self.terms[k].c.clone())
            .unwrap_or_default()
    }

    /// Highest power of `q` that appears, if any.
    pub fn max_q_degree(&self) -> Option<i32> {
        self.terms.iter().map(|term| term.q).max()
    }

    pub fn min_q_degree(&self) -> Option<i32> {
        self.terms.iter().map(|term| term.q).min()
    }

    pub fn max_t_degree(&self) -> Option<i32> {
        self.terms.iter().map(|term| term.t).max()
    }

    /// True when no term carries a power of `t`.
    pub fn is_t_free(&self) -> bool {
        self.terms.iter().all(|term| term.t == 0)
    }

    /// `Some((c, qe, te))` when the polynomial is `c q^qe t^te` with `c = ±1`.
    pub fn as_unit_monomial(&self) -> Option<(i8, i32, i32)> {
        match self.terms.as_slice() {
            [term] if term.c.is_one() => Some((1, term.q, term.t)),
            [term] if (-&term.c).is_one() => Some((-1, term.q, term.t)),
            _ => None,
        }
    }

    fn map_exponents(&self, f: impl Fn(i32, i32) -> (i32, i32)) -> Self {
        Self::from_terms(self.terms.iter().map(|term| {
            let (q, t) = f(term.q, term.t);
            (q, t, term.c.clone())
        }))
    }

    /// Substitutes `q -> 1/q`.
    pub fn invert_q(&self) -> Self {
        self.map_exponents(|q, t| (-q, t))
    }

    /// Substitutes `t -> 1`.
    pub fn set_t_one(&self) -> Self {
        self.map_exponents(|q, _| (q, 0))
    }

    /// Substitutes `q -> 1`.
    pub fn set_q_one(&self) -> Self {
        self.map_exponents(|_, t| (0, t))
    }

    /// Substitutes `t -> -t` (switches between the two sign conventions for `t`).
    pub fn negate_t(&self) -> Self {
        LaurentQT {
            terms: self
                .terms
                .iter()
                .map(|term| Term {
                    q: term.q,
                    t: term.t,
                    c: if term.t.is_odd() { -&term.c } else { term.c.clone() },
                })
                .collect(),
        }
    }

    /// Multiplies by `c q^qe t^te`.
    pub fn scale_monomial(&self, c: &BigInt, qe: i32, te: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentQT {
            terms: self
                .terms
                .iter()
                .map(|term| Term { q: term.q + qe, t: term.t + te, c: &term.c * c })
                .collect(),
        }
    }

    /// Exact division in the Laurent ring; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &LaurentQT) -> Option<LaurentQT> {
        let lead_d = divisor.terms.last()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.terms.len() == 1 {
            let (quo, rem) = self_div_mono(self, lead_d);
            return rem.then_some(quo);
        }
        // Any exact quotient has its exponents inside this box.
        let (rq, rt) = exponent_box(self);
        let (dq, dt) = exponent_box(divisor);
        let q_range = (rq.0 - dq.0, rq.1 - dq.1);
        let t_range = (rt.0 - dt.0, rt.1 - dt.1);

        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some(lead) = rem.terms.last() {
            let (c, r) = lead.c.div_rem(&lead_d.c);
            if !r.is_zero() {
                return None;
            }
            let (qe, te) = (lead.q - lead_d.q, lead.t - lead_d.t);
            if qe < q_range.0 || qe > q_range.1 || te < t_range.0 || te > t_range.1 {
                return None;
            }
            rem = &rem - &divisor.scale_monomial(&c, qe, te);
            quotient.push((qe, te, c));
        }
        Some(Self::from_terms(quotient))
    }

    /// Evaluates at `q = q0`, `t = t0` in any field.
    pub fn eval<F: Field>(&self, q0: &F, t0: &F) -> Result<F> {
        let mut acc = F::zero();
        for term in &self.terms {
            let c = F::from_bigint(&term.c);
            let value = c.mul_ref(&pow_field(q0, term.q)?).mul_ref(&pow_field(t0, term.t)?);
            acc = acc.add_ref(&value);
        }
        Ok(acc)
    }
}

fn self_div_mono(p: &LaurentQT, m: &Term) -> (LaurentQT, bool) {
    let mut terms = Vec::with_capacity(p.terms.len());
    for term in &p.terms {
        let (c, r) = term.c.div_rem(&m.c);
        if !r.is_zero() {
            return (LaurentQT::zero(), false);
        }
        terms.push(Term { q: term.q - m.q, t: term.t - m.t, c });
    }
    (LaurentQT { terms }, true)
}

fn exponent_box(p: &LaurentQT) -> ((i32, i32), (i32, i32)) {
    let qs = p.terms.iter().map(|term| term.q);
    let ts = p.terms.iter().map(|term| term.t);
    (
        (qs.clone().min().unwrap_or(0), qs.max().unwrap_or(0)),
        (ts.clone().min().unwrap_or(0), ts.max().unwrap_or(0)),
    )
}

fn pow_field<F: Field>(base: &F, exp: i32) -> Result<F> {
    if exp == 0 {
        return Ok(F::one());
    }
    if base.is_zero() {
        return if exp > 0 { Ok(F::zero()) } else { Err(Error::ZeroBase) };
    }
    let mut acc = F::one();
    let mut b = if exp < 0 { base.recip() } else { base.clone() };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul_ref(&b);
        }
        b = b.mul_ref(&b);
        e >>= 1;
    }
    Ok(acc)
}

fn merge(a: &[Term], b: &[Term], negate_b: bool) -> LaurentQT {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let sign = |c: &BigInt| if negate_b { -c } else { c.clone() };
    while i < a.len() && j < b.len() {
        let (ka, kb) = ((a[i].q, a[i].t), (b[j].q, b[j].t));
        if ka < kb {
            out.push(a[i].clone());
            i += 1;
        } else if kb < ka {
            out.push(Term { q: b[j].q, t: b[j].t, c: sign(&b[j].c) });
            j += 1;
        } else {
            let c = if negate_b { &a[i].c - &b[j].c } else { &a[i].c + &b[j].c };
            if !c.is_zero() {
                out.push(Term { q: a[i].q, t: a[i].t, c });
            }
            i += 1;
            j += 1;
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|term| Term { q: term.q, t: term.t, c: sign(&term.c) }));
    LaurentQT { terms: out }
}

impl<'a> Add<&'a LaurentQT> for &'a LaurentQT {
    type Output = LaurentQT;
    fn add(self, rhs: &LaurentQT) -> LaurentQT {
        merge(&self.terms, &rhs.terms, false)
    }
}

impl<'a> Sub<&'a LaurentQT> for &'a LaurentQT {
    type Output = LaurentQT;
    fn sub(self, rhs: &LaurentQT) -> LaurentQT {
        merge(&self.terms, &rhs.terms, true)
    }
}

impl<'a> Mul<&'a LaurentQT> for &'a LaurentQT {
    type Output = LaurentQT;
    fn mul(self, rhs: &LaurentQT) -> LaurentQT {
        if self.is_zero() || rhs.is_zero() {
            return LaurentQT::zero();
        }
        if let [m] = rhs.terms.as_slice() {
            return self.scale_monomial(&m.c, m.q, m.t);
        }
        if let [m] = self.terms.as_slice() {
            return rhs.scale_monomial(&m.c, m.q, m.t);
        }
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                raw.push((a.q + b.q, a.t + b.t, &a.c * &b.c));
            }
        }
        LaurentQT::from_terms(raw)
    }
}

impl Neg for &LaurentQT {
    type Output = LaurentQT;
    fn neg(self) -> LaurentQT {
        LaurentQT {
            terms: self.terms.iter().map(|term| Term { q: term.q, t: term.t, c: -&term.c }).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentQT> for LaurentQT {
            type Output = LaurentQT;
            fn $m(self, rhs: LaurentQT) -> LaurentQT {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a LaurentQT> for LaurentQT {
            type Output = LaurentQT;
            fn $m(self, rhs: &LaurentQT) -> LaurentQT {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentQT {
    type Output = LaurentQT;
    fn neg(self) -> LaurentQT {
        -&self
    }
}

impl From<i64> for LaurentQT {
    fn from(c: i64) -> Self {
        LaurentQT::constant(c)
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, name: &str, e: i32, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str("*")?;
    }
    *first = false;
    if e == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "{name}^{e}")
    }
}

impl fmt::Display for LaurentQT {
    /// Highest `q` power first, e.g. `q^2 - q`, `t*q^2 - 2*q + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, term) in self.terms.iter().rev().enumerate() {
            let negative = term.c.is_negative();
            let abs = term.c.abs();
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let monomial = term.q != 0 || term.t != 0;
            let mut first = true;
            if !abs.is_one() || !monomial {
                write!(f, "{abs}")?;
                first = false;
            }
            write_var(f, "t", term.t, &mut first)?;
            write_var(f, "q", term.q, &mut first)?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    q: i32,
    t: i32,
    c: String,
}

impl Serialize for LaurentQT {
    /// A list of `{"q": int, "t": int, "c": "decimal"}` objects in ascending exponent order.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .map(|term| JsonTerm { q: term.q, t: term.t, c: term.c.to_string() })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentQT {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<JsonTerm>::deserialize(deserializer)?;
        let parsed = terms
            .into_iter()
            .map(|term| {
                term.c
                    .parse::<BigInt>()
                    .map(|c| (term.q, term.t, c))
                    .map_err(|e| D::Error::custom(format!("bad coefficient {:?}: {e}", term.c)))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(LaurentQT::from_terms(parsed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q() -> LaurentQT {
        LaurentQT::q()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn multiply_by_one_and_monomials() {
        let p = &(&q() * &q()) - &q();
        assert_eq!(&p * &LaurentQT::one(), p);
        assert_eq!(&q() * &q(), LaurentQT::q_pow(2));
    }

    #[test]
    fn square_of_q_minus_one() {
        let qm1 = &q() - &LaurentQT::one();
        assert_eq!(&qm1 * &qm1, LaurentQT::from_q_coeffs(&[1, -2, 1]));
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let p = &q() - &q();
        assert!(p.is_zero());
        assert_eq!(p.terms().len(), 0);
    }

    #[test]
    fn evaluation_examples() {
        let q2 = LaurentQT::q_pow(2);
        let one = rat(1, 1);
        assert_eq!(q2.eval(&rat(2, 1), &one).unwrap(), rat(4, 1));
        let q2mq = LaurentQT::from_q_coeffs(&[0, -1, 1]);
        assert_eq!(q2mq.eval(&one, &one).unwrap(), rat(0, 1));
        // (q^2 - q) + q + (1 - q) at q = 2.
        let sum = &(&q2mq + &q()) + &LaurentQT::from_q_coeffs(&[1, -1]);
        assert_eq!(sum.eval(&rat(2, 1), &one).unwrap(), rat(3, 1));
    }

    #[test]
    fn zero_base_with_negative_power_errors() {
        let p = LaurentQT::q_pow(-1);
        assert_eq!(p.eval(&rat(0, 1), &rat(1, 1)), Err(Error::ZeroBase));
        assert_eq!(LaurentQT::q_pow(2).eval(&rat(0, 1), &rat(1, 1)).unwrap(), rat(0, 1));
    }

    #[test]
    fn exact_division() {
        let a = LaurentQT::from_q_coeffs(&[1, -1]);
        let b = LaurentQT::from_q_coeffs(&[2, 0, 1]) + LaurentQT::t();
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
        assert_eq!(LaurentQT::one().div_exact(&a), None);
        let mono = LaurentQT::monomial((-3).into(), -2, 1);
        assert_eq!((&prod * &mono).div_exact(&mono), Some(prod));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(LaurentQT::from_q_coeffs(&[0, -1, 1]).to_string(), "q^2 - q");
        assert_eq!(LaurentQT::from_q_coeffs(&[1, -2, 1]).to_string(), "q^2 - 2*q + 1");
        let p = &(&LaurentQT::t() * &LaurentQT::q_pow(2)) - &LaurentQT::q_pow(-1);
        assert_eq!(p.to_string(), "t*q^2 - q^-1");
        assert_eq!(LaurentQT::zero().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let p = LaurentQT::from_q_coeffs(&[1, -1]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[{"q":0,"t":0,"c":"1"},{"q":1,"t":0,"c":"-1"}]"#);
        let back: LaurentQT = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
