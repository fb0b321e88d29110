//! Exact scalars: rationals, Laurent polynomials in `v`, Gaussian binomials.
//!
//! Every braiding coefficient in this crate is an element of `Q[v, v^-1]`.
//! [`LaurentScalar`] keeps a reduced sparse representation (no stored zero
//! coefficients), so structural equality is mathematical equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ExactError;

/// Arbitrary precision rational, always reduced with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders `p/q`, or `p` for integers.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serde adapter rendering rationals as `"p/q"` strings.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>` as strings.
pub mod rational_vec_str {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for rational matrices as nested string arrays.
pub mod rational_mat_str {
    use super::*;

    pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = m
            .iter()
            .map(|r| r.iter().map(fmt_rational).collect())
            .collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}

/// An element of `Q[v, v^-1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentScalar {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(int(1), 0)
    }

    /// `v^k`
    pub fn v_pow(k: i64) -> Self {
        Self::monomial(int(1), k)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in it {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// `(coefficient, exponent)` of a monomial.
    pub fn as_monomial(&self) -> Option<(&Rational, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (c, *k))
        } else {
            None
        }
    }

    /// Exponent `k` if the scalar is exactly `v^k`.
    pub fn unit_monomial_exponent(&self) -> Option<i64> {
        match self.as_monomial() {
            Some((c, k)) if c.is_one() => Some(k),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Substitutes `v -> v^m`.
    pub fn dilate(&self, m: i64) -> Self {
        assert!(m != 0, "dilation by zero");
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * m, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power of a nonzero monomial, negative exponents allowed.
    pub fn monomial_pow(&self, n: i64) -> Result<Self, ExactError> {
        let (c, k) = self.as_monomial().ok_or(ExactError::NotMonomial)?;
        let cpow = if n >= 0 {
            num_traits::pow(c.clone(), n as usize)
        } else {
            num_traits::pow(c.recip(), (-n) as usize)
        };
        Ok(Self::monomial(cpow, k * n))
    }

    /// Exact division in `Q[v, v^-1]`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, ExactError> {
        if divisor.is_zero() {
            return Err(ExactError::DivisionNotExact);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let dmin = divisor.min_exp().unwrap();
        let dmax = divisor.max_exp().unwrap();
        let lead = divisor.terms[&dmax].clone();
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Long division from the top; the remainder must vanish before its
        // span drops below the divisor's span.
        while let Some(rmax) = rem.max_exp() {
            let rmin = rem.min_exp().unwrap();
            if rmax - rmin < dmax - dmin {
                return Err(ExactError::DivisionNotExact);
            }
            let k = rmax - dmax;
            let c = &rem.terms[&rmax] / &lead;
            quot.add_term(k, c.clone());
            for (e, dc) in divisor.terms() {
                rem.add_term(e + k, -(dc * &c));
            }
        }
        Ok(quot)
    }

    /// Multiplies by the least common multiple of the coefficient
    /// denominators, giving integer coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// Evaluates at a rational point `v = t != 0`.
    pub fn eval(&self, t: &Rational) -> Rational {
        assert!(!t.is_zero(), "evaluation at v = 0");
        self.terms.iter().fold(Rational::zero(), |acc, (k, c)| {
            let tp = if *k >= 0 {
                num_traits::pow(t.clone(), *k as usize)
            } else {
                num_traits::pow(t.recip(), (-*k) as usize)
            };
            acc + c * tp
        })
    }

    /// Evaluates modulo a prime at `v = t` (t a unit mod p). Returns `None`
    /// if some coefficient denominator is divisible by `p`.
    pub fn eval_mod(&self, t: u64, p: u64) -> Option<u64> {
        let tinv = crate::shuffle::modp::inv(t, p);
        let mut acc = 0u64;
        for (k, c) in &self.terms {
            let num = crate::shuffle::modp::reduce_bigint(c.numer(), p);
            let den = crate::shuffle::modp::reduce_bigint(c.denom(), p);
            if den == 0 {
                return None;
            }
            let coef = crate::shuffle::modp::mul(num, crate::shuffle::modp::inv(den, p), p);
            let base = if *k >= 0 { t } else { tinv };
            let tp = crate::shuffle::modp::pow(base, k.unsigned_abs(), p);
            acc = crate::shuffle::modp::add(acc, crate::shuffle::modp::mul(coef, tp, p), p);
        }
        Some(acc)
    }
}

impl fmt::Debug for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Canonical text: terms `c*v^k` by descending exponent, e.g. `1*v^2 - 1*v^0`.
impl fmt::Display for LaurentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let body = format!("{}*v^{}", fmt_rational(&c.abs()), k);
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentScalar {
    type Err = ExactError;

    /// Accepts sums of `c*v^k`, `c*v`, `v^k`, `v` and bare rationals `c`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ExactError::Parse("empty Laurent scalar".into()));
        }
        // Split into signed terms, ignoring the sign of an exponent (`v^-2`).
        let mut pieces = Vec::new();
        let mut cur = String::new();
        let bytes: Vec<char> = compact.chars().collect();
        for (i, ch) in bytes.iter().enumerate() {
            if (*ch == '+' || *ch == '-') && i > 0 && bytes[i - 1] != '^' {
                pieces.push(std::mem::take(&mut cur));
            }
            cur.push(*ch);
        }
        pieces.push(cur);
        let mut out = Self::zero();
        for piece in pieces {
            let (neg, body) = match piece.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, piece.strip_prefix('+').unwrap_or(&piece)),
            };
            let (coef, exp) = parse_term(body)?;
            out.add_term(exp, if neg { -coef } else { coef });
        }
        Ok(out)
    }
}

fn parse_term(body: &str) -> Result<(Rational, i64), ExactError> {
    let bad = || ExactError::Parse(format!("bad Laurent term {body:?}"));
    if body == "0" {
        return Ok((Rational::zero(), 0));
    }
    let (coef_str, var_str) = match body.split_once('*') {
        Some((c, v)) => (Some(c), Some(v)),
        None if body.starts_with('v') => (None, Some(body)),
        None => (Some(body), None),
    };
    let coef = match coef_str {
        Some(c) => parse_rational(c)?,
        None => int(1),
    };
    let exp = match var_str {
        None => 0,
        Some("v") => 1,
        Some(v) => v
            .strip_prefix("v^")
            .ok_or_else(bad)?
            .trim_matches(|c| c == '(' || c == ')')
            .parse::<i64>()
            .map_err(|_| bad())?,
    };
    Ok((coef, exp))
}

impl Serialize for LaurentScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Add for &LaurentScalar {
    type Output = LaurentScalar;
    fn add(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentScalar {
    type Output = LaurentScalar;
    fn add(mut self, rhs: LaurentScalar) -> LaurentScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentScalar> for LaurentScalar {
    fn add_assign(&mut self, rhs: &LaurentScalar) {
        for (k, c) in &rhs.terms {
            self.add_term(*k, c.clone());
        }
    }
}

impl Sub for &LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Sub for LaurentScalar {
    type Output = LaurentScalar;
    fn sub(self, rhs: LaurentScalar) -> LaurentScalar {
        &self - &rhs
    }
}

impl Neg for &LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        LaurentScalar {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentScalar {
    type Output = LaurentScalar;
    fn neg(self) -> LaurentScalar {
        -&self
    }
}

impl Mul for &LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: &LaurentScalar) -> LaurentScalar {
        let mut out = LaurentScalar::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Mul for LaurentScalar {
    type Output = LaurentScalar;
    fn mul(self, rhs: LaurentScalar) -> LaurentScalar {
        &self * &rhs
    }
}

/// Polynomial in an abstract variable `γ` with integer coefficients;
/// index `i` holds the coefficient of `γ^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaPoly {
    pub coeffs: Vec<BigInt>,
}

impl GammaPoly {
    fn trimmed(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::trimmed(c.iter().map(|x| BigInt::from(*x)).collect())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Substitutes a Laurent scalar for `γ`.
    pub fn substitute(&self, gamma: &LaurentScalar) -> LaurentScalar {
        // Horner
        let mut acc = LaurentScalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * gamma;
            acc += &LaurentScalar::constant(BigRational::from_integer(c.clone()));
        }
        acc
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                self.coeffs.get(i).cloned().unwrap_or_default()
                    + other.coeffs.get(i).cloned().unwrap_or_default()
            })
            .collect();
        Self::trimmed(c)
    }

    fn shift(&self, k: usize) -> Self {
        if self.coeffs.is_empty() {
            return self.clone();
        }
        let mut c = vec![BigInt::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Self { coeffs: c }
    }
}

/// Gaussian binomial `[n s]_γ`, built from the Pascal recursion
/// `[n s] = [n-1 s-1] + γ^s [n-1 s]`.
pub fn q_binomial(n: u32, s: u32) -> Result<GammaPoly, ExactError> {
    if s > n {
        return Err(ExactError::OutOfRange { n, s });
    }
    let s = s as usize;
    let mut row: Vec<GammaPoly> = vec![GammaPoly::from_i64(&[1])];
    for m in 1..=n as usize {
        let mut next = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let left = if k >= 1 {
                row.get(k - 1).cloned()
            } else {
                None
            };
            let right = row.get(k).map(|p| p.shift(k));
            next.push(match (left, right) {
                (Some(a), Some(b)) => a.add(&b),
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => unreachable!(),
            });
        }
        row = next;
    }
    Ok(row.swap_remove(s))
}

/// `[n]_γ = 1 + γ + ... + γ^(n-1)` evaluated at a Laurent scalar.
pub fn q_number(n: u32, gamma: &LaurentScalar) -> LaurentScalar {
    let mut acc = LaurentScalar::zero();
    let mut p = LaurentScalar::one();
    for _ in 0..n {
        acc += &p;
        p = &p * gamma;
    }
    acc
}

/// Symmetric quantum integer `[n]_q = (q^n - q^-n)/(q - q^-1)` with `q = v^d`.
pub fn sym_q_integer(n: i64, d: i64) -> LaurentScalar {
    if n == 0 {
        return LaurentScalar::zero();
    }
    let sign = if n < 0 { -1 } else { 1 };
    let m = n.abs();
    let s = LaurentScalar::from_terms((0..m).map(|j| (d * (m - 1 - 2 * j), int(1))));
    s.scale(&int(sign))
}

/// Symmetric quantum factorial `[n]_q!` with `q = v^d`.
pub fn sym_q_factorial(n: u32, d: i64) -> LaurentScalar {
    (1..=n as i64).fold(LaurentScalar::one(), |acc, k| &acc * &sym_q_integer(k, d))
}

/// `Σ_{s=0}^{n} (-1)^s [n s]_γ γ^{s(s+1)/2} γ^{-sn}`, which vanishes for
/// every nonzero monomial `γ`.
pub fn a5_sum(n: u32, gamma: &LaurentScalar) -> Result<LaurentScalar, ExactError> {
    if !gamma.is_monomial() {
        return Err(ExactError::NotMonomial);
    }
    let mut acc = LaurentScalar::zero();
    let n_i = n as i64;
    for s in 0..=n {
        let s_i = s as i64;
        let bin = q_binomial(n, s)?.substitute(gamma);
        let pw = gamma.monomial_pow(s_i * (s_i + 1) / 2 - s_i * n_i)?;
        let term = &bin * &pw;
        if s % 2 == 0 {
            acc += &term;
        } else {
            acc += &(-term);
        }
    }
    Ok(acc)
}

/// Reads an `i64` out of an integral rational.
pub fn rational_to_i64(r: &Rational) -> Option<i64> {
    if r.denom().is_one() {
        r.numer().to_i64()
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> LaurentScalar {
        s.parse().unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&l("v + 1") * &l("v - 1"), l("v^2 - 1"));
        assert_eq!(l("v^2 - 1").div_exact(&l("v - 1")).unwrap(), l("v + 1"));
        assert_eq!(&l("v^-2") + &l("v^-2"), l("2*v^-2"));
    }

    #[test]
    fn div_exact_rejects_remainder() {
        assert_eq!(
            l("v^2 + 1").div_exact(&l("v - 1")),
            Err(ExactError::DivisionNotExact)
        );
        assert!(l("1").div_exact(&LaurentScalar::zero()).is_err());
        assert_eq!(l("v^-3 + v^5").div_exact(&l("v^-3")).unwrap(), l("1 + v^8"));
    }

    #[test]
    fn display_round_trip() {
        let x = l("3/2*v^4 - v^-1 + 7");
        assert_eq!(x.to_string(), "3/2*v^4 + 7*v^0 - 1*v^-1");
        assert_eq!(x.to_string().parse::<LaurentScalar>().unwrap(), x);
        assert_eq!(LaurentScalar::zero().to_string(), "0");
        assert_eq!(l("0"), LaurentScalar::zero());
    }

    #[test]
    fn zero_is_empty() {
        let z = &l("v") - &l("v");
        assert!(z.is_zero());
        assert_eq!(z, LaurentScalar::default());
        assert!(!l("v + 1").is_monomial());
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(q_binomial(2, 1).unwrap(), GammaPoly::from_i64(&[1, 1]));
        assert_eq!(
            q_binomial(4, 2).unwrap(),
            GammaPoly::from_i64(&[1, 1, 2, 1, 1])
        );
        for n in 0..6 {
            assert_eq!(q_binomial(n, 0).unwrap(), GammaPoly::from_i64(&[1]));
        }
        assert_eq!(q_binomial(2, 3), Err(ExactError::OutOfRange { n: 2, s: 3 }));
    }

    #[test]
    fn a5_examples() {
        assert!(a5_sum(1, &l("v^2")).unwrap().is_zero());
        assert!(a5_sum(2, &l("v^2")).unwrap().is_zero());
        assert!(a5_sum(3, &l("v^-4")).unwrap().is_zero());
        assert_eq!(a5_sum(2, &l("v + 1")), Err(ExactError::NotMonomial));
    }

    #[test]
    fn symmetric_integers() {
        assert_eq!(sym_q_integer(2, 1), l("v + v^-1"));
        assert_eq!(sym_q_integer(3, 2), l("v^4 + 1 + v^-4"));
        assert_eq!(sym_q_integer(-2, 1), l("-v - v^-1"));
        assert_eq!(sym_q_factorial(3, 1), l("v^3 + 2*v + 2*v^-1 + v^-3"));
    }

    #[test]
    fn evaluation() {
        assert_eq!(l("v^2 - v^-1").eval(&rat(2, 1)), rat(7, 2));
        let p = 1_000_000_007;
        assert_eq!(
            l("v^2 - v^-1").eval_mod(2, p),
            Some((4 + p - p.div_ceil(2)) % p)
        );
        assert_eq!(l("1/3*v").eval_mod(1, 3), None);
    }
}
