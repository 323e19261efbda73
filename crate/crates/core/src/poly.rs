//! Exact Laurent polynomials in `A` and unreduced quotients of them.
//!
//! `A` is the only variable carried internally; `q = A^-4` appears only in
//! [`QPresentation`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("minimum degree of the zero function is undefined")]
    ZeroDegree,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("inexact division: divisor does not divide dividend")]
    InexactDivision,
    #[error("odd power A^{0} cannot be presented in q = A^-4")]
    OddExponent(i64),
    #[error("Laurent expansion leaves the integers (leading denominator coefficient {0})")]
    NonIntegralSeries(BigInt),
    #[error("cannot parse polynomial at offset {offset}: {msg}")]
    Parse { offset: usize, msg: String },
}

/// Sparse Laurent polynomial in `A` with big-integer coefficients.
///
/// Terms are kept sorted by exponent and never store a zero coefficient, so
/// structural equality is value equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, c)] }
        }
    }

    /// `A^exp`.
    pub fn a_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs in any order;
    /// repeated exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Self { terms: out }
    }

    /// Dense coefficients starting at `A^offset`.
    fn from_dense(offset: i64, dense: Vec<BigInt>) -> Self {
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (offset + i as i64, c))
            .collect();
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(i64, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |t| t.0) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Lowest exponent, `d(p)`.
    pub fn min_degree(&self) -> Result<i64, PolyError> {
        self.terms.first().map(|t| t.0).ok_or(PolyError::ZeroDegree)
    }

    pub fn max_degree(&self) -> Result<i64, PolyError> {
        self.terms.last().map(|t| t.0).ok_or(PolyError::ZeroDegree)
    }

    /// Multiplication by `A^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// Substitutes `A -> A^-1`.
    pub fn mirror(&self) -> Self {
        Self {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `±A^e` raised to any integer power. `None` unless `self` is a signed
    /// monomial.
    pub fn monomial_pow(&self, k: i64) -> Option<Self> {
        if self.terms.len() != 1 || self.terms[0].1.abs() != BigInt::one() {
            return None;
        }
        let (e, c) = &self.terms[0];
        let c = if k.is_odd() { c.clone() } else { BigInt::one() };
        Some(Self::monomial(c, e * k))
    }

    /// `self += other * A^shift`.
    pub fn add_shifted(&mut self, other: &LaurentPoly, shift: i64) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.shift(shift);
            return;
        }
        let a = std::mem::take(&mut self.terms);
        let mut out = Vec::with_capacity(a.len() + other.terms.len());
        let mut ia = a.into_iter().peekable();
        let mut ib = other.terms.iter().peekable();
        loop {
            match (ia.peek(), ib.peek()) {
                (Some(x), Some(y)) => match x.0.cmp(&(y.0 + shift)) {
                    Ordering::Less => out.push(ia.next().unwrap()),
                    Ordering::Greater => {
                        let (e, c) = ib.next().unwrap();
                        out.push((e + shift, c.clone()));
                    }
                    Ordering::Equal => {
                        let (e, mut c) = ia.next().unwrap();
                        c += &ib.next().unwrap().1;
                        if !c.is_zero() {
                            out.push((e, c));
                        }
                    }
                },
                (Some(_), None) => out.push(ia.next().unwrap()),
                (None, Some(_)) => {
                    let (e, c) = ib.next().unwrap();
                    out.push((e + shift, c.clone()));
                }
                (None, None) => break,
            }
        }
        self.terms = out;
    }

    /// Exact quotient `self / divisor`.
    pub fn exact_divide(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (pmin, pmax) = (self.terms[0].0, self.terms.last().unwrap().0);
        let (dmin, dmax) = (divisor.terms[0].0, divisor.terms.last().unwrap().0);
        let (qmin, qmax) = (pmin - dmin, pmax - dmax);
        if qmax < qmin {
            return Err(PolyError::InexactDivision);
        }
        let mut rem = vec![BigInt::zero(); (pmax - pmin + 1) as usize];
        for (e, c) in &self.terms {
            rem[(e - pmin) as usize] = c.clone();
        }
        let lead = &divisor.terms.last().unwrap().1;
        let mut quot = vec![BigInt::zero(); (qmax - qmin + 1) as usize];
        // Peel off the top term of the remainder until the quotient range is exhausted.
        for qe in (qmin..=qmax).rev() {
            let top = (qe + dmax - pmin) as usize;
            if rem[top].is_zero() {
                continue;
            }
            let (t, r) = rem[top].div_rem(lead);
            if !r.is_zero() {
                return Err(PolyError::InexactDivision);
            }
            for (e, c) in &divisor.terms {
                let idx = (qe + e - pmin) as usize;
                rem[idx] -= &t * c;
            }
            quot[(qe - qmin) as usize] = t;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::InexactDivision);
        }
        Ok(Self::from_dense(qmin, quot))
    }

    /// Presents `self` as `sign * A^shift * sum c_i q^(i*step)` with `q = A^-4`.
    pub fn to_q(&self) -> Result<QPresentation, PolyError> {
        let top = self.max_degree()?;
        if let Some((e, _)) = self.terms.iter().find(|t| t.0.is_odd()) {
            return Err(PolyError::OddExponent(*e));
        }
        let step_a = if self.terms.iter().all(|t| (top - t.0) % 4 == 0) { 4 } else { 2 };
        let lead = &self.terms.last().unwrap().1;
        let sign: i8 = if lead.is_negative() { -1 } else { 1 };
        let len = ((top - self.terms[0].0) / step_a) as usize + 1;
        let mut coeffs = vec![BigInt::zero(); len];
        for (e, c) in &self.terms {
            let idx = ((top - e) / step_a) as usize;
            coeffs[idx] = if sign < 0 { -c } else { c.clone() };
        }
        Ok(QPresentation {
            sign,
            a_shift: top,
            step_a,
            coeffs,
        })
    }
}

impl fmt::Display for LaurentPoly {
    /// Increasing exponent, e.g. `-A^-2-A^2`, `3`, `2*A^5`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("A")?,
                (1, false) => write!(f, "{mag}*A")?,
                (e, true) => write!(f, "A^{e}")?,
                (e, false) => write!(f, "{mag}*A^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    /// Parses the canonical rendering (whitespace tolerated).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |offset: usize, msg: &str| PolyError::Parse {
            offset,
            msg: msg.to_string(),
        };
        let bytes: Vec<(usize, u8)> = s.bytes().enumerate().filter(|(_, b)| !b.is_ascii_whitespace()).collect();
        if bytes.is_empty() {
            return Err(err(0, "empty input"));
        }
        let mut terms = Vec::new();
        let mut i = 0;
        let read_int = |i: &mut usize| -> Option<BigInt> {
            let start = *i;
            while *i < bytes.len() && bytes[*i].1.is_ascii_digit() {
                *i += 1;
            }
            if start == *i {
                return None;
            }
            let digits: String = bytes[start..*i].iter().map(|b| b.1 as char).collect();
            digits.parse().ok()
        };
        while i < bytes.len() {
            let at = bytes[i].0;
            let mut neg = false;
            match bytes[i].1 {
                b'+' => i += 1,
                b'-' => {
                    neg = true;
                    i += 1
                }
                _ if i > 0 => return Err(err(at, "expected '+' or '-'")),
                _ => {}
            }
            let coef = read_int(&mut i);
            let mut exp = 0i64;
            let has_var = if coef.is_some() {
                let star = i < bytes.len() && bytes[i].1 == b'*';
                if star {
                    i += 1;
                }
                star
            } else {
                i < bytes.len() && bytes[i].1 == b'A'
            };
            if has_var {
                if i >= bytes.len() || bytes[i].1 != b'A' {
                    return Err(err(bytes.get(i).map_or(s.len(), |b| b.0), "expected 'A'"));
                }
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i].1 == b'^' {
                    i += 1;
                    let eneg = i < bytes.len() && bytes[i].1 == b'-';
                    if eneg {
                        i += 1;
                    }
                    let v = read_int(&mut i).ok_or_else(|| err(bytes.get(i).map_or(s.len(), |b| b.0), "expected exponent"))?;
                    let v: i64 = v.try_into().map_err(|_| err(at, "exponent out of range"))?;
                    exp = if eneg { -v } else { v };
                }
            } else if coef.is_none() {
                return Err(err(at, "expected coefficient or 'A'"));
            }
            let mut c = coef.unwrap_or_else(BigInt::one);
            if neg {
                c = -c;
            }
            terms.push((exp, c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_shifted(rhs, 0);
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_shifted(&rhs, 0);
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_shifted(rhs, 0);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        self.add_shifted(&-rhs, 0);
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for t in &mut self.terms {
            t.1 = -std::mem::take(&mut t.1);
        }
        self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let (small, big) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        if small.len() == 1 {
            let (e, c) = &small.terms[0];
            return LaurentPoly {
                terms: big.terms.iter().map(|(be, bc)| (be + e, bc * c)).collect(),
            };
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms.last().unwrap().0 + rhs.terms.last().unwrap().0;
        let mut dense = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                dense[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        LaurentPoly::from_dense(lo, dense)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// `sign * A^a_shift * sum_i coeffs[i] * A^(-step_a * i)`, i.e. a `q`-series
/// in increasing powers of `q = A^-4` with positive constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPresentation {
    pub sign: i8,
    /// Power of `A` factored out (the highest `A`-exponent of the input).
    pub a_shift: i64,
    /// Spacing of consecutive coefficients in powers of `A`: 4 (one power of
    /// `q`) or 2 (one power of `q^(1/2)`).
    pub step_a: i64,
    pub coeffs: Vec<BigInt>,
}

impl QPresentation {
    /// Exponent of `q` carried by `coeffs[0]`, in halves.
    pub fn min_exponent_halves(&self) -> i64 {
        -self.a_shift / 2
    }

    /// Spacing between coefficients, in halves of a `q`-power.
    pub fn step_halves(&self) -> i64 {
        self.step_a / 2
    }

    /// True when some exponent of `q` is not an integer.
    pub fn is_half_integral(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .any(|(i, c)| !c.is_zero() && (self.min_exponent_halves() + self.step_halves() * i as i64).is_odd())
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().enumerate().map(|(i, c)| {
            let c = if self.sign < 0 { -c } else { c.clone() };
            (self.a_shift - self.step_a * i as i64, c)
        }))
    }
}

impl fmt::Display for QPresentation {
    /// The polynomial in `q`, increasing exponent, e.g. `1-2*q+q^(5/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = if self.sign < 0 { -c } else { c.clone() };
            let halves = self.min_exponent_halves() + self.step_halves() * i as i64;
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let mag = c.abs();
            let exp = if halves.is_even() {
                format!("{}", halves / 2)
            } else {
                format!("({halves}/2)")
            };
            match (halves, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (2, true) => f.write_str("q")?,
                (2, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{exp}")?,
                (_, false) => write!(f, "{mag}*q^{exp}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Quotient of Laurent polynomials, kept unreduced.
///
/// Equality is value equality (cross multiplication), not structural.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `d(num) - d(den)`, independent of common factors.
    pub fn min_degree(&self) -> Result<i64, PolyError> {
        Ok(self.num.min_degree()? - self.den.min_degree()?)
    }

    /// Exact polynomial value, when the denominator divides the numerator.
    pub fn to_poly(&self) -> Result<LaurentPoly, PolyError> {
        self.num.exact_divide(&self.den)
    }

    pub fn recip(&self) -> Result<Self, PolyError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Divides numerator and denominator by `factor` as long as both stay exact.
    pub fn cancel(&mut self, factor: &LaurentPoly) {
        loop {
            let (Ok(n), Ok(d)) = (self.num.exact_divide(factor), self.den.exact_divide(factor)) else {
                return;
            };
            self.num = n;
            self.den = d;
        }
    }

    /// Laurent-series expansion from `d(self)` up to, but excluding,
    /// `d(self) + order`.
    pub fn truncate(&self, order: usize) -> Result<LaurentPoly, PolyError> {
        let d = self.min_degree()?;
        let n0 = self.num.min_degree()?;
        let d0 = self.den.min_degree()?;
        // Work with num = A^n0 * N(A), den = A^d0 * D(A), N(0), D(0) != 0.
        let den_c: Vec<BigInt> = {
            let mut v = vec![BigInt::zero(); order];
            for (e, c) in self.den.terms() {
                let i = (e - d0) as usize;
                if i < order {
                    v[i] = c.clone();
                }
            }
            v
        };
        let mut rem: Vec<BigInt> = vec![BigInt::zero(); order];
        for (e, c) in self.num.terms() {
            let i = (e - n0) as usize;
            if i < order {
                rem[i] = c.clone();
            }
        }
        let lead = den_c.first().cloned().unwrap_or_else(BigInt::zero);
        let mut out = Vec::with_capacity(order);
        for i in 0..order {
            let (t, r) = rem[i].div_rem(&lead);
            if !r.is_zero() {
                return Err(PolyError::NonIntegralSeries(lead));
            }
            for j in 0..order - i {
                if !den_c[j].is_zero() {
                    rem[i + j] -= &t * &den_c[j];
                }
            }
            out.push(t);
        }
        Ok(LaurentPoly::from_dense(d, out))
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFn {}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl<'a> Add<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.den == rhs.den {
            return RationalFn {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        RationalFn {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl<'a> Sub<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<'a> Mul<&'a RationalFn> for &'a RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        RationalFn {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&p("A^2") + &p("A^-2"), p("A^-2+A^2"));
        let d = p("-A^2-A^-2");
        assert_eq!(&d * &d, p("A^4+2+A^-4"));
        assert!((&d * &LaurentPoly::zero()).is_zero());
        assert!((&d - &d).is_zero());
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(p("-A^2-A^-2").min_degree(), Ok(-2));
        let f = RationalFn::new(p("A^4-A^-4"), p("A^2-A^-2")).unwrap();
        assert_eq!(f.min_degree(), Ok(-2));
        assert_eq!(LaurentPoly::zero().min_degree(), Err(PolyError::ZeroDegree));
        assert_eq!(RationalFn::zero().min_degree(), Err(PolyError::ZeroDegree));
    }

    #[test]
    fn exact_divide_examples() {
        let d1 = p("-A^2-A^-2");
        let d2 = p("A^4+1+A^-4");
        assert_eq!((&d2 * &d1).exact_divide(&d1), Ok(d2));
        assert_eq!(d1.exact_divide(&d1), Ok(LaurentPoly::one()));
        assert_eq!(p("A").exact_divide(&p("A^2+1")), Err(PolyError::InexactDivision));
        assert_eq!(p("A").exact_divide(&LaurentPoly::zero()), Err(PolyError::ZeroDenominator));
        assert_eq!(p("2*A^3+1").exact_divide(&p("2")), Err(PolyError::InexactDivision));
    }

    #[test]
    fn mirror_examples() {
        assert_eq!(p("A^3").mirror(), p("A^-3"));
        let d = p("-A^2-A^-2");
        assert_eq!(d.mirror(), d);
        let x = p("3*A^-5+A-7*A^4");
        assert_eq!(x.mirror().mirror(), x);
    }

    #[test]
    fn to_q_examples() {
        let q = p("A^-4").to_q().unwrap();
        assert_eq!(q.sign, 1);
        assert_eq!(q.coeffs, vec![BigInt::from(1)]);
        assert_eq!(q.min_exponent_halves(), 2);
        assert_eq!(q.to_string(), "q");

        let q = p("-A^4-A^-4").to_q().unwrap();
        assert_eq!(q.sign, -1);
        assert_eq!(q.a_shift, 4);
        assert_eq!(q.coeffs, vec![1, 0, 1].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert!(!q.is_half_integral());

        let q = p("-A^2-A^-2").to_q().unwrap();
        assert_eq!(q.sign, -1);
        assert_eq!(q.a_shift, 2);
        assert_eq!(q.coeffs, vec![BigInt::from(1), BigInt::from(1)]);
        assert!(q.is_half_integral());
        assert_eq!(q.to_string(), "-q^(-1/2)-q^(1/2)");

        assert_eq!(p("A^3+A").to_q(), Err(PolyError::OddExponent(1)));
        assert_eq!(LaurentPoly::zero().to_q(), Err(PolyError::ZeroDegree));
    }

    #[test]
    fn mixed_step_presentation() {
        let x = p("A^2+A^4");
        let q = x.to_q().unwrap();
        assert_eq!(q.step_a, 2);
        assert_eq!(q.to_laurent(), x);
    }

    #[test]
    fn truncate_examples() {
        let geo = RationalFn::new(LaurentPoly::one(), p("1-A")).unwrap();
        assert_eq!(geo.truncate(3), Ok(p("1+A+A^2")));
        let poly = RationalFn::from_poly(p("A^-3+5+2*A^7"));
        assert_eq!(poly.truncate(2), Ok(p("A^-3")));
        assert_eq!(poly.truncate(11), Ok(p("A^-3+5+2*A^7")));
        assert_eq!(RationalFn::zero().truncate(3), Err(PolyError::ZeroDegree));
        let bad = RationalFn::new(LaurentPoly::one(), p("2+A")).unwrap();
        assert!(matches!(bad.truncate(2), Err(PolyError::NonIntegralSeries(_))));
    }

    /// Independent check of 1/Δ₁: the expansion r must satisfy r·Δ₁ ≡ 1
    /// below the truncation order.
    #[test]
    fn truncate_inverse_delta_by_residual() {
        let delta1 = p("-A^2-A^-2");
        let f = RationalFn::new(LaurentPoly::one(), delta1.clone()).unwrap();
        assert_eq!(f.min_degree(), Ok(2));
        for order in 1..12usize {
            let r = f.truncate(order).unwrap();
            let prod = &r * &delta1;
            // r·Δ₁ = 1 + (terms of degree ≥ order)
            for (e, c) in prod.terms() {
                if *e < order as i64 {
                    assert_eq!((*e, c.clone()), (0, BigInt::one()), "order {order}");
                }
            }
            assert_eq!(prod.coeff(0), BigInt::one());
        }
        // frozen from the residual check: -A^2 + A^6 - A^10 + ...
        assert_eq!(f.truncate(2), Ok(p("-A^2")));
        assert_eq!(f.truncate(5), Ok(p("-A^2+A^6")));
        assert_eq!(f.truncate(9), Ok(p("-A^2+A^6-A^10")));
    }

    #[test]
    fn render_and_parse() {
        for s in ["-A^-2-A^2", "0", "3", "A", "2*A-7*A^-3", "A^-1+1"] {
            let x = p(s);
            assert_eq!(p(&x.to_string()), x);
        }
        assert_eq!(p("-A^-2-A^2").to_string(), "-A^-2-A^2");
        assert_eq!(p("2*A-7*A^-3").to_string(), "-7*A^-3+2*A");
        assert!("A^".parse::<LaurentPoly>().is_err());
        assert!("3A".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn rational_equality_ignores_common_factors() {
        let f = RationalFn::new(p("A+1"), p("A^2-A^-2")).unwrap();
        let g = RationalFn::new(&p("A+1") * &p("A^3+2"), &p("A^2-A^-2") * &p("A^3+2")).unwrap();
        assert_eq!(f, g);
        assert_eq!(f.min_degree(), g.min_degree());
        let mut h = g.clone();
        h.cancel(&p("A^3+2"));
        assert_eq!(h.num(), f.num());
    }

    #[test]
    fn monomial_pow() {
        let g = p("-A^3");
        assert_eq!(g.monomial_pow(2), Some(p("A^6")));
        assert_eq!(g.monomial_pow(-1), Some(p("-A^-3")));
        assert_eq!(p("A+1").monomial_pow(2), None);
    }
}
