//! Exact arithmetic in `Z[q, q^-1]` and its fraction field `Q(q)`.
//!
//! [`LaurentPoly`] is a sparse map from exponent to arbitrary-precision
//! integer coefficient. [`RatFn`] keeps a fraction in a canonical reduced
//! form: the numerator and denominator have unit gcd, the denominator has
//! lowest exponent 0 and a positive leading coefficient. Equality of
//! rational functions is therefore field-wise equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rootdata::Permutation;

/// An element of `Z[q, q^-1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs, merging repeats.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (C, i64)>) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(e, &c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    /// Returns the constant coefficient if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.coeffs.len() {
            0 => Some(BigInt::zero()),
            1 => self.coeffs.get(&0).cloned(),
            _ => None,
        }
    }

    pub(crate) fn add_term(&mut self, e: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// The bar involution `q -> q^-1`.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_symmetric(&self) -> bool {
        *self == self.bar()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The part with strictly positive exponents.
    pub fn positive_part(&self) -> Self {
        Self {
            coeffs: self.coeffs.range(1..).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Terms with exponent at most `cutoff`.
    pub fn truncate(&self, cutoff: i64) -> Self {
        Self {
            coeffs: self.coeffs.range(..=cutoff).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    /// Membership in `q Z[q]`.
    pub fn in_q_z_q(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 1)
    }

    /// Membership in `q N[q]`.
    pub fn in_q_n_q(&self) -> bool {
        self.in_q_z_q() && self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    fn content(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn to_dense(&self) -> (i64, Vec<BigInt>) {
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.coeffs {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(shift: i64, v: &[BigInt]) -> Self {
        Self {
            coeffs: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as i64 + shift, c.clone()))
                .collect(),
        }
    }

    /// Exact quotient in `Z[q, q^-1]`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if d.num_terms() == 1 {
            let (e, c) = d.terms().next().unwrap();
            let mut out = BTreeMap::new();
            for (k, a) in &self.coeffs {
                let (quo, rem) = a.div_rem(c);
                if !rem.is_zero() {
                    return None;
                }
                out.insert(k - e, quo);
            }
            return Some(Self { coeffs: out });
        }
        let (sa, a) = self.to_dense();
        let (sd, b) = d.to_dense();
        let q = dense_div_exact(&a, &b)?;
        Some(Self::from_dense(sa - sd, &q))
    }

    /// Greatest common divisor, normalized to lowest exponent 0 and a
    /// positive leading coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() && other.is_zero() {
            return Self::zero();
        }
        if self.is_zero() {
            return other.normalized_associate();
        }
        if other.is_zero() {
            return self.normalized_associate();
        }
        if self.num_terms() == 1 || other.num_terms() == 1 {
            return Self::constant(self.content().gcd(&other.content()));
        }
        let (_, a) = self.to_dense();
        let (_, b) = other.to_dense();
        Self::from_dense(0, &dense_gcd(&a, &b))
    }

    /// The associate `±q^k * self` with lowest exponent 0 and positive
    /// leading coefficient.
    fn normalized_associate(&self) -> LaurentPoly {
        let lo = self.min_exp().unwrap_or(0);
        let p = self.shift(-lo);
        if p.leading_coeff().is_some_and(|c| c.is_negative()) {
            -p
        } else {
            p
        }
    }

    /// Power-series inverse truncated at `cutoff`; `self` must have lowest
    /// exponent 0 with constant term `±1`.
    pub fn series_inverse(&self, cutoff: i64) -> Result<LaurentPoly> {
        let c0 = self.coeff(0);
        if self.min_exp() != Some(0) || !(c0.is_one() || (-&c0).is_one()) {
            return Err(Error::NotDivisible(format!(
                "series inverse of {self} needs a unit constant term"
            )));
        }
        let mut inv: Vec<BigInt> = Vec::new();
        if cutoff < 0 {
            return Ok(Self::zero());
        }
        for k in 0..=cutoff {
            let mut s = if k == 0 { BigInt::one() } else { BigInt::zero() };
            for j in 1..=k {
                let a = self.coeff(j);
                if !a.is_zero() {
                    s -= a * &inv[(k - j) as usize];
                }
            }
            inv.push(s * &c0);
        }
        Ok(Self::from_dense(0, &inv))
    }
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() < b.len() {
        return if r.is_empty() { Some(vec![]) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let (c, rem) = r[dr].div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        let s = dr - db;
        for (i, bi) in b.iter().enumerate() {
            r[s + i] -= &c * bi;
        }
        q[s] = c;
        trim(&mut r);
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

fn dense_content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive_part(v: &[BigInt]) -> Vec<BigInt> {
    let c = dense_content(v);
    if c.is_zero() {
        return vec![];
    }
    let mut out: Vec<BigInt> = v.iter().map(|x| x / &c).collect();
    trim(&mut out);
    out
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let s = dr - db;
        for x in r.iter_mut() {
            *x *= lb;
        }
        for (i, bi) in b.iter().enumerate() {
            r[s + i] -= &lr * bi;
        }
        trim(&mut r);
        r = primitive_part(&r);
    }
    r
}

/// Primitive polynomial remainder sequence over `Z`.
fn dense_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let c = dense_content(a).gcd(&dense_content(b));
    let mut x = primitive_part(a);
    let mut y = primitive_part(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive_part(&r);
    }
    // strip powers of q: the Laurent gcd ignores them
    let lead_zeros = x.iter().take_while(|c| c.is_zero()).count();
    let mut g: Vec<BigInt> = x[lead_zeros..].iter().map(|v| v * &c).collect();
    if g.last().is_some_and(|v| v.is_negative()) {
        for v in g.iter_mut() {
            *v = -&*v;
        }
    }
    g
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c);
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, &-c);
        }
    }
}

impl MulAssign<&LaurentPoly> for LaurentPoly {
    fn mul_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self * rhs;
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        Self {
            coeffs: self.coeffs.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($ty:ty, $tr:ident, $m:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(LaurentPoly, Add, add);
forward_owned!(LaurentPoly, Sub, sub);
forward_owned!(LaurentPoly, Mul, mul);

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, c: &BigInt, e: i64) -> fmt::Result {
    let one = c.is_one();
    match (e, one) {
        (0, _) => write!(f, "{c}"),
        (1, true) => write!(f, "q"),
        (1, false) => write!(f, "{c}*q"),
        (_, true) => write!(f, "q^{e}"),
        (_, false) => write!(f, "{c}*q^{e}"),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            fmt_term(f, &abs, *e)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

fn parse_term(t: &str) -> Result<(BigInt, i64)> {
    let bad = || Error::Parse(format!("bad polynomial term {t:?}"));
    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    if body.is_empty() {
        return Err(bad());
    }
    let (coeff, rest) = match body.find('q') {
        None => (body.parse::<BigInt>().map_err(|_| bad())?, None),
        Some(0) => (BigInt::one(), Some(&body[1..])),
        Some(i) => {
            let c = body[..i].strip_suffix('*').ok_or_else(bad)?;
            (c.parse::<BigInt>().map_err(|_| bad())?, Some(&body[i + 1..]))
        }
    };
    let exp = match rest {
        None => 0,
        Some("") => 1,
        Some(r) => r
            .strip_prefix('^')
            .ok_or_else(bad)?
            .parse::<i64>()
            .map_err(|_| bad())?,
    };
    Ok((if neg { -coeff } else { coeff }, exp))
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Parses the textual form produced by `Display`, e.g. `q^3 + 2*q - q^-1`.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bytes = compact.as_bytes();
        let mut out = LaurentPoly::zero();
        let mut start = 0;
        for i in 1..=bytes.len() {
            let boundary = i == bytes.len()
                || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
            if boundary {
                let (c, e) = parse_term(&compact[start..i])?;
                out.add_term(e, &c);
                start = i;
            }
        }
        Ok(out)
    }
}

/// Quantum integer `[n] = (q^n - q^-n) / (q - q^-1)`.
pub fn qint(n: i64) -> LaurentPoly {
    if n < 0 {
        return -qint(-n);
    }
    LaurentPoly::from_terms((0..n).map(|k| (1, n - 1 - 2 * k)))
}

/// Quantum factorial `[n]! = [n][n-1]...[1]`.
pub fn qfact(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeArgument(n));
    }
    Ok((1..=n).fold(LaurentPoly::one(), |acc, k| &acc * &qint(k)))
}

pub fn bar(p: &LaurentPoly) -> LaurentPoly {
    p.bar()
}

/// `Σ_{w ∈ S_n} q^{2ℓ(w)}`, by enumerating the symmetric group.
pub fn poincare(n: usize) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for w in Permutation::all(n) {
        out.add_term(2 * w.length() as i64, &BigInt::one());
    }
    out
}

/// An element of `Q(q)` in canonical reduced form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
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

    /// The value as a Laurent polynomial, if the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_one() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lo = den.min_exp().unwrap_or(0);
        let (mut num, mut den) = (num.shift(-lo), den.shift(-lo));
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            num = -num;
            den = -den;
        }
        Self { num, den }
    }

    pub fn bar(&self) -> Self {
        Self::normalize(self.num.bar(), self.den.bar())
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn scale_poly(&self, p: &LaurentPoly) -> Self {
        if self.den.is_one() {
            return Self::from_poly(&self.num * p);
        }
        Self::normalize(&self.num * p, self.den.clone())
    }

    pub fn checked_div(&self, rhs: &RatFn) -> Result<RatFn> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::normalize(&self.num * &rhs.den, &self.den * &rhs.num))
    }
}

impl Default for RatFn {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for RatFn {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add<&RatFn> for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFn::normalize(&self.num + &rhs.num, self.den.clone());
        }
        RatFn::normalize(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RatFn> for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul<&RatFn> for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFn::from_poly(&self.num * &rhs.num);
        }
        RatFn::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RatFn> for &RatFn {
    type Output = RatFn;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: &RatFn) -> RatFn {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

impl AddAssign<&RatFn> for RatFn {
    fn add_assign(&mut self, rhs: &RatFn) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RatFn> for RatFn {
    fn sub_assign(&mut self, rhs: &RatFn) {
        *self = &*self - rhs;
    }
}

forward_owned!(RatFn, Add, add);
forward_owned!(RatFn, Sub, sub);
forward_owned!(RatFn, Mul, mul);
forward_owned!(RatFn, Div, div);

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

impl FromStr for RatFn {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(idx) = s.find(")/(") {
            let num = s[..idx]
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("bad fraction {s:?}")))?;
            let den = s[idx + 3..]
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("bad fraction {s:?}")))?;
            RatFn::new(num.parse()?, den.parse()?)
        } else {
            Ok(RatFn::from_poly(s.parse()?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn qint_examples() {
        assert_eq!(qint(0), LaurentPoly::zero());
        assert_eq!(qint(1), LaurentPoly::one());
        // [2] by dividing q^2 - q^-2 by q - q^-1
        let num = lp("q^2 - q^-2");
        let den = lp("q - q^-1");
        assert_eq!(qint(2), num.div_exact(&den).unwrap());
        assert_eq!(qint(2), lp("q + q^-1"));
        assert_eq!(qint(-3), -qint(3));
        for n in 0..8 {
            let num = &LaurentPoly::monomial(1, n) - &LaurentPoly::monomial(1, -n);
            assert_eq!(qint(n), num.div_exact(&den).unwrap());
        }
    }

    #[test]
    fn qfact_examples() {
        assert_eq!(qfact(0).unwrap(), LaurentPoly::one());
        assert_eq!(qfact(2).unwrap(), qint(2));
        assert_eq!(qfact(3).unwrap(), &qint(3) * &qint(2));
        assert_eq!(qfact(3).unwrap(), lp("q^3 + 2*q + 2*q^-1 + q^-3"));
        assert_eq!(qfact(-1), Err(Error::NegativeArgument(-1)));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(bar(&lp("q^2 + 1")), lp("q^-2 + 1"));
        assert_eq!(bar(&LaurentPoly::zero()), LaurentPoly::zero());
        let f3 = qfact(3).unwrap();
        assert_eq!(bar(&f3), f3);
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare(1), LaurentPoly::one());
        assert_eq!(poincare(2), lp("q^2 + 1"));
        assert_eq!(poincare(3), lp("q^6 + 2*q^4 + 2*q^2 + 1"));
    }

    #[test]
    fn poincare_factorization() {
        for n in 1..=7usize {
            let rhs = qfact(n as i64).unwrap().shift((n * (n - 1) / 2) as i64);
            assert_eq!(poincare(n), rhs, "n = {n}");
        }
    }

    #[test]
    fn display_and_parse() {
        let p = lp("q^3 + 2*q + 2*q^-1 + q^-3");
        assert_eq!(p.to_string(), "q^3 + 2*q + 2*q^-1 + q^-3");
        assert_eq!(lp("-q^2 + 1").to_string(), "-q^2 + 1");
        assert_eq!(lp("3 - 2*q").to_string(), "-2*q + 3");
        assert_eq!(lp("0"), LaurentPoly::zero());
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("2q".parse::<LaurentPoly>().is_err());
        let r = RatFn::new(lp("1 - q^2"), lp("1 + q^2")).unwrap();
        assert_eq!(r.to_string(), "(-q^2 + 1)/(q^2 + 1)");
        assert_eq!(r.to_string().parse::<RatFn>().unwrap(), r);
    }

    #[test]
    fn ratfn_canonical_form() {
        // (q^2 - 1)/(q - 1) = q + 1
        let r = RatFn::new(lp("q^2 - 1"), lp("q - 1")).unwrap();
        assert_eq!(r, RatFn::from_poly(lp("q + 1")));
        // content and shifts are divided out
        let a = RatFn::new(lp("2*q^3"), lp("4*q^5 + 4*q^3")).unwrap();
        let b = RatFn::new(lp("1"), lp("2*q^2 + 2")).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.den(), &lp("2*q^2 + 2"));
        // sign normalization
        let c = RatFn::new(lp("1"), lp("-q")).unwrap();
        assert_eq!(c, RatFn::from_poly(lp("-q^-1")));
        assert_eq!(RatFn::new(lp("1"), LaurentPoly::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn gcd_examples() {
        let a = lp("q^2 - 1");
        let b = lp("q^3 - q");
        assert_eq!(a.gcd(&b), lp("q^2 - 1"));
        let c = lp("q^4 + 2*q^2 + 1");
        assert_eq!(c.gcd(&lp("q^2 + 1")), lp("q^2 + 1"));
        assert_eq!(lp("6*q").gcd(&lp("4")), lp("2"));
    }

    #[test]
    fn series_inverse_of_one_minus_q2_squared() {
        let d = lp("1 - q^2").pow(2);
        assert_eq!(d.series_inverse(4).unwrap(), lp("1 + 2*q^2 + 3*q^4"));
        assert!(lp("2 + q").series_inverse(3).is_err());
    }

    fn arb_laurent() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-4i64..=4, -3i64..=3), 0..5)
            .prop_map(LaurentPoly::from_terms)
    }

    fn arb_nonzero() -> impl Strategy<Value = LaurentPoly> {
        arb_laurent().prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #[test]
        fn bar_is_ring_involution(a in arb_laurent(), b in arb_laurent()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }

        #[test]
        fn ratfn_inverse_pairs(a in arb_nonzero(), b in arb_nonzero()) {
            let x = RatFn::new(a.clone(), b.clone()).unwrap();
            let y = RatFn::new(b, a).unwrap();
            prop_assert_eq!(&x * &y, RatFn::one());
        }

        #[test]
        fn ratfn_equivalent_fractions_agree(a in arb_laurent(), b in arb_nonzero(),
                                            c in arb_nonzero(), d in arb_nonzero()) {
            // a/b, ac/bc and ad/bd are the same element and compare equal
            let x = RatFn::new(a.clone(), b.clone()).unwrap();
            let y = RatFn::new(&a * &c, &b * &c).unwrap();
            let z = RatFn::new(&a * &d, &b * &d).unwrap();
            prop_assert_eq!(&x, &y);
            prop_assert_eq!(&y, &z);
            prop_assert_eq!(&x, &z);
        }

        #[test]
        fn div_exact_recovers_factor(a in arb_laurent(), b in arb_nonzero()) {
            let p = &a * &b;
            prop_assert_eq!(p.div_exact(&b), Some(a));
        }

        #[test]
        fn text_round_trip(a in arb_laurent()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
