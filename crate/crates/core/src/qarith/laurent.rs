//! Sparse Laurent polynomials in `q` with arbitrary-precision integer
//! coefficients.
//!
//! Storage is a vector of `(exponent, coefficient)` pairs sorted by
//! ascending exponent with no zero coefficients, so structural equality is
//! ring equality. Products and exact quotients run on `i128` lanes whenever
//! the inputs fit in `i64` and fall back to `BigInt` otherwise.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, BigInt)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c.into(), 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(exp, c)] }
        }
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// merging repeated exponents and dropping zeros.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut v: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        v.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i64, BigInt)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        LaurentPoly { terms: out }
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + ExactSizeIterator {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// `Some(e)` when the polynomial is `±q^e`.
    pub fn as_unit(&self) -> Option<(bool, i64)> {
        match self.terms.as_slice() {
            [(e, c)] if c.abs().is_one() => Some((c.is_negative(), *e)),
            _ => None,
        }
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Coefficient of the highest power of `q`.
    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.last().map(|(_, c)| c)
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// The image under `q ↦ q⁻¹`.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    /// gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `d`, which must divide each of them.
    pub(crate) fn div_scalar_exact(&self, d: &BigInt) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c / d)).collect(),
        }
    }

    /// Exact quotient `self / divisor` in `Z[q, q⁻¹]`, or `None` when the
    /// division leaves a remainder.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if let Some((neg, e)) = divisor.as_unit() {
            let s = self.shift(-e);
            return Some(if neg { -s } else { s });
        }
        let a_low = self.min_exp().unwrap_or(0);
        let b_low = divisor.min_exp().unwrap_or(0);
        let a = self.to_dense_big(a_low);
        let b = divisor.to_dense_big(b_low);
        let q = dense_div_exact(&a, &b)?;
        Some(Self::from_dense(a_low - b_low, q))
    }

    /// Value at a nonzero rational point that is not on the unit circle.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational> {
        if q0.is_zero() {
            return Err(Error::Domain("cannot evaluate at q = 0".into()));
        }
        if q0.abs().is_one() {
            return Err(Error::Domain(format!("cannot evaluate at |q| = 1 (q = {q0})")));
        }
        Ok(self.eval_unchecked(q0))
    }

    pub(crate) fn eval_unchecked(&self, q0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        // Horner from the top exponent down.
        let Some(top) = self.max_exp() else {
            return acc;
        };
        let low = self.min_exp().unwrap_or(top);
        let mut prev = top;
        for (e, c) in self.terms.iter().rev() {
            let gap = prev - e;
            if gap > 0 {
                acc *= pow_rat(q0, gap);
            }
            acc += BigRational::from_integer(c.clone());
            prev = *e;
        }
        acc * pow_rat(q0, low)
    }

    // ---- dense conversions -------------------------------------------------

    pub(crate) fn to_dense_big(&self, low: i64) -> Vec<BigInt> {
        let Some(high) = self.max_exp() else {
            return Vec::new();
        };
        let mut v = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - low) as usize] = c.clone();
        }
        v
    }

    pub(crate) fn from_dense(low: i64, v: Vec<BigInt>) -> Self {
        LaurentPoly {
            terms: v
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (low + i as i64, c))
                .collect(),
        }
    }

    fn small_terms(&self) -> Option<Vec<(i64, i64)>> {
        self.terms.iter().map(|(e, c)| c.to_i64().map(|c| (*e, c))).collect()
    }

    fn max_abs_u128(&self) -> Option<u128> {
        let mut m = 0u128;
        for (_, c) in &self.terms {
            m = m.max(c.to_i64()?.unsigned_abs() as u128);
        }
        Some(m)
    }
}

fn pow_rat(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow::pow(x.clone(), e as usize)
    } else {
        num_traits::pow::pow(x.recip(), (-e) as usize)
    }
}

// ---- accumulator -----------------------------------------------------------

/// Dense accumulator for sums of (shifted) products of Laurent polynomials.
///
/// Runs on `i128` lanes while a conservative magnitude bound stays below
/// 2^125 and every input fits in `i64`; otherwise it promotes to `BigInt`.
#[derive(Clone, Debug, Default)]
pub(crate) struct PolyAcc {
    low: i64,
    small: Vec<i128>,
    big: Option<Vec<BigInt>>,
    bound: u128,
}

const SMALL_LIMIT: u128 = 1 << 125;

impl PolyAcc {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    fn len(&self) -> usize {
        match &self.big {
            Some(b) => b.len(),
            None => self.small.len(),
        }
    }

    fn ensure_range(&mut self, lo: i64, hi: i64) {
        let len = self.len();
        if len == 0 {
            self.low = lo;
            let n = (hi - lo + 1) as usize;
            match &mut self.big {
                Some(b) => b.resize(n, BigInt::zero()),
                None => self.small.resize(n, 0),
            }
            return;
        }
        let cur_hi = self.low + len as i64 - 1;
        if lo < self.low {
            let extra = (self.low - lo) as usize;
            match &mut self.big {
                Some(b) => {
                    b.splice(0..0, std::iter::repeat_with(BigInt::zero).take(extra));
                }
                None => {
                    self.small.splice(0..0, std::iter::repeat_n(0, extra));
                }
            }
            self.low = lo;
        }
        if hi > cur_hi {
            let n = (hi - self.low + 1) as usize;
            match &mut self.big {
                Some(b) => b.resize(n, BigInt::zero()),
                None => self.small.resize(n, 0),
            }
        }
    }

    fn promote(&mut self) {
        if self.big.is_none() {
            let small = std::mem::take(&mut self.small);
            self.big = Some(small.into_iter().map(BigInt::from).collect());
        }
    }

    /// `self += a`.
    pub(crate) fn add(&mut self, a: &LaurentPoly) {
        self.add_shifted(a, 0);
    }

    /// `self += q^shift · a`.
    pub(crate) fn add_shifted(&mut self, a: &LaurentPoly, shift: i64) {
        let (Some(lo), Some(hi)) = (a.min_exp(), a.max_exp()) else {
            return;
        };
        self.ensure_range(lo + shift, hi + shift);
        if self.big.is_none() {
            if let Some(m) = a.max_abs_u128() {
                if self.bound.saturating_add(m) < SMALL_LIMIT {
                    self.bound += m;
                    for (e, c) in &a.terms {
                        let i = (e + shift - self.low) as usize;
                        self.small[i] += c.to_i64().unwrap() as i128;
                    }
                    return;
                }
            }
            self.promote();
        }
        let big = self.big.as_mut().unwrap();
        for (e, c) in &a.terms {
            big[(e + shift - self.low) as usize] += c;
        }
    }

    /// `self += q^shift · a · b`.
    pub(crate) fn add_product(&mut self, a: &LaurentPoly, b: &LaurentPoly, shift: i64) {
        let (Some(alo), Some(ahi), Some(blo), Some(bhi)) =
            (a.min_exp(), a.max_exp(), b.min_exp(), b.max_exp())
        else {
            return;
        };
        self.ensure_range(alo + blo + shift, ahi + bhi + shift);
        if self.big.is_none() {
            if let (Some(ma), Some(mb)) = (a.max_abs_u128(), b.max_abs_u128()) {
                let inc = ma
                    .saturating_mul(mb)
                    .saturating_mul(a.len().min(b.len()) as u128);
                if self.bound.saturating_add(inc) < SMALL_LIMIT {
                    self.bound += inc;
                    let sa = a.small_terms().unwrap();
                    let sb = b.small_terms().unwrap();
                    let base = shift - self.low;
                    for (ea, ca) in &sa {
                        let ca = *ca as i128;
                        for (eb, cb) in &sb {
                            self.small[(ea + eb + base) as usize] += ca * (*cb as i128);
                        }
                    }
                    return;
                }
            }
            self.promote();
        }
        let big = self.big.as_mut().unwrap();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                big[(ea + eb + shift - self.low) as usize] += ca * cb;
            }
        }
    }

    pub(crate) fn finish(self) -> LaurentPoly {
        match self.big {
            Some(b) => LaurentPoly::from_dense(self.low, b),
            None => LaurentPoly {
                terms: self
                    .small
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != 0)
                    .map(|(i, c)| (self.low + i as i64, BigInt::from(c)))
                    .collect(),
            },
        }
    }
}

// ---- dense exact division --------------------------------------------------

/// Exact quotient of dense polynomials (index = exponent), `None` on a
/// nonzero remainder. `b` must have a nonzero top coefficient.
pub(crate) fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let a = trim(a);
    let b = trim(b);
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    if let Some(r) = dense_div_exact_small(a, b) {
        return r;
    }
    let db = b.len() - 1;
    let lc = &b[db];
    let nz: Vec<(usize, &BigInt)> = b.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let mut rem: Vec<BigInt> = a.to_vec();
    let qlen = a.len() - b.len() + 1;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let r = &rem[i + db];
        if r.is_zero() {
            continue;
        }
        let (qi, rr) = r.div_rem(lc);
        if !rr.is_zero() {
            return None;
        }
        for (j, bj) in &nz {
            rem[i + j] -= &qi * *bj;
        }
        quot[i] = qi;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(quot)
}

/// `i128` version; the outer `None` means "overflowed, retry in BigInt".
fn dense_div_exact_small(a: &[BigInt], b: &[BigInt]) -> Option<Option<Vec<BigInt>>> {
    let a: Vec<i128> = a.iter().map(|c| c.to_i64().map(i128::from)).collect::<Option<_>>()?;
    let b: Vec<i128> = b.iter().map(|c| c.to_i64().map(i128::from)).collect::<Option<_>>()?;
    let db = b.len() - 1;
    let lc = b[db];
    let nz: Vec<(usize, i128)> = b.iter().copied().enumerate().filter(|(_, c)| *c != 0).collect();
    let mut rem = a.clone();
    let qlen = a.len() - b.len() + 1;
    let mut quot = vec![0i128; qlen];
    for i in (0..qlen).rev() {
        let r = rem[i + db];
        if r == 0 {
            continue;
        }
        if r % lc != 0 {
            return Some(None);
        }
        let qi = r / lc;
        for &(j, bj) in &nz {
            let p = qi.checked_mul(bj)?;
            rem[i + j] = rem[i + j].checked_sub(p)?;
        }
        quot[i] = qi;
    }
    if rem.iter().any(|c| *c != 0) {
        return Some(None);
    }
    Some(Some(quot.into_iter().map(BigInt::from).collect()))
}

pub(crate) fn trim(v: &[BigInt]) -> &[BigInt] {
    let mut n = v.len();
    while n > 0 && v[n - 1].is_zero() {
        n -= 1;
    }
    &v[..n]
}

// ---- operators -------------------------------------------------------------

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        merge(self, rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if self.len() == 1 {
            let (e, c) = &self.terms[0];
            return rhs.scale(c).shift(*e);
        }
        if rhs.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return self.scale(c).shift(*e);
        }
        let mut acc = PolyAcc::new();
        acc.add_product(self, rhs, 0);
        acc.finish()
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
        for (_, c) in &mut self.terms {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = merge(self, rhs, false);
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        *self = merge(self, rhs, true);
    }
}

fn merge(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() || j < b.terms.len() {
        let ord = match (a.terms.get(i), b.terms.get(j)) {
            (Some((ea, _)), Some((eb, _))) => ea.cmp(eb),
            (Some(_), None) => Ordering::Less,
            _ => Ordering::Greater,
        };
        match ord {
            Ordering::Less => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let (e, c) = &b.terms[j];
                out.push((*e, if negate_b { -c } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let (e, ca) = &a.terms[i];
                let cb = &b.terms[j].1;
                let c = if negate_b { ca - cb } else { ca + cb };
                if !c.is_zero() {
                    out.push((*e, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    LaurentPoly { terms: out }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        LaurentPoly::constant(c)
    }
}

// ---- text ------------------------------------------------------------------

fn write_monomial(f: &mut fmt::Formatter<'_>, abs: &BigInt, e: i64) -> fmt::Result {
    if e == 0 {
        return write!(f, "{abs}");
    }
    if !abs.is_one() {
        write!(f, "{abs}*")?;
    }
    match e {
        1 => write!(f, "q"),
        _ => write!(f, "q^{e}"),
    }
}

/// Canonical form: descending exponents, `c*q^e`, ` + ` / ` - ` joiners.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let abs = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_monomial(f, &abs, *e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes = compact.as_bytes();
        let mut terms: Vec<(i64, BigInt)> = Vec::new();
        let mut start = 0;
        let mut i = 0;
        while i <= bytes.len() {
            let at_split = i == bytes.len()
                || (i > start && (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
            if at_split {
                terms.push(parse_term(&compact[start..i])?);
                start = i;
            }
            i += 1;
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

fn parse_term(t: &str) -> Result<(i64, BigInt)> {
    let bad = || Error::Parse(format!("bad term `{t}`"));
    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (coeff, var) = match body.find('q') {
        None => (body, None),
        Some(p) => {
            let c = body[..p].strip_suffix('*').unwrap_or(&body[..p]);
            (c, Some(&body[p + 1..]))
        }
    };
    let c: BigInt = if coeff.is_empty() {
        if var.is_none() {
            return Err(bad());
        }
        BigInt::one()
    } else {
        coeff.parse().map_err(|_| bad())?
    };
    let e = match var {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .ok_or_else(bad)?
            .parse::<i64>()
            .map_err(|_| bad())?,
    };
    Ok((e, if neg { -c } else { c }))
}
