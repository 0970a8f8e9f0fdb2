//! Exact scalars in Q and real quadratic fields Q(sqrt(d)).
//!
//! A [`QScalar`] is `u + w*sqrt(d)` with `u`, `w` arbitrary-precision
//! rationals and `d` a square-free integer >= 2. The field parameter is
//! carried per value but normalized away whenever `w == 0`, so plain
//! rationals mix freely with any context. Two values with different
//! irrational parts never combine: mixing `sqrt(2)` and `sqrt(3)` is a
//! hard error, not a silent tower extension.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// True iff `d` is square-free and at least 2.
pub fn is_valid_field_parameter(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Square-free part decomposition: `n = s^2 * m` with `m` square-free.
/// Returns `(s, m)`.
fn square_free_part(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive());
    let mut m = n.clone();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let p2 = &p * &p;
        while (&m % &p2).is_zero() {
            m /= &p2;
            s *= &p;
        }
        p += 1;
    }
    (s, m)
}

fn is_perfect_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a non-negative rational, if it is rational.
fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    let p = is_perfect_square(x.numer())?;
    let q = is_perfect_square(x.denom())?;
    Some(BigRational::new(p, q))
}

/// An exact element `u + w*sqrt(d)` of Q or of a real quadratic field.
///
/// Invariant: `d.is_none()` iff `w == 0`; when present, `d` is square-free
/// and >= 2. `sqrt(d)` always denotes the positive real root, so scalars
/// are totally ordered as real numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    u: BigRational,
    w: BigRational,
    d: Option<u64>,
}

impl QScalar {
    pub fn new(u: BigRational, w: BigRational, d: u64) -> Result<Self> {
        if !is_valid_field_parameter(d) {
            return Err(Error::BadFieldParameter(d));
        }
        Ok(Self::normalized(u, w, Some(d)))
    }

    fn normalized(u: BigRational, w: BigRational, d: Option<u64>) -> Self {
        if w.is_zero() {
            QScalar { u, w, d: None }
        } else {
            debug_assert!(d.is_some(), "irrational part without field parameter");
            QScalar { u, w, d }
        }
    }

    pub fn from_rational(u: BigRational) -> Self {
        Self::normalized(u, BigRational::zero(), None)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` as an exact scalar. Panics if `q == 0`.
    pub fn rational(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// The positive square root of `d` itself.
    pub fn sqrt_d(d: u64) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.u
    }

    pub fn sqrt_part(&self) -> &BigRational {
        &self.w
    }

    /// Field parameter, `None` for plain rationals.
    pub fn field(&self) -> Option<u64> {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.w.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.u.is_one() && self.w.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.w.is_zero()
    }

    /// The underlying rational when `w == 0`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.u)
        } else {
            None
        }
    }

    /// The shared field parameter of two operands, or an error when both
    /// carry distinct irrationalities.
    pub fn join_field(a: Option<u64>, b: Option<u64>) -> Result<Option<u64>> {
        match (a, b) {
            (None, x) | (x, None) => Ok(x),
            (Some(p), Some(q)) if p == q => Ok(Some(p)),
            (Some(p), Some(q)) => Err(Error::MixedContexts(p, q)),
        }
    }

    fn join(&self, rhs: &Self) -> Option<u64> {
        Self::join_field(self.d, rhs.d).expect("mixed quadratic contexts in scalar arithmetic")
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let d = Self::join_field(self.d, rhs.d)?;
        Ok(Self::normalized(&self.u + &rhs.u, &self.w + &rhs.w, d))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        let d = Self::join_field(self.d, rhs.d)?;
        // (u1 + w1 s)(u2 + w2 s) = u1 u2 + d w1 w2 + (u1 w2 + u2 w1) s
        let dd = match d {
            Some(d) => BigRational::from_integer(BigInt::from(d)),
            None => BigRational::zero(),
        };
        let u = &self.u * &rhs.u + &dd * &self.w * &rhs.w;
        let w = &self.u * &rhs.w + &rhs.u * &self.w;
        Ok(Self::normalized(u, w, d))
    }

    /// Galois conjugate `u - w*sqrt(d)`; identity on rationals.
    pub fn conj(&self) -> Self {
        Self::normalized(self.u.clone(), -self.w.clone(), self.d)
    }

    /// Field norm `u^2 - d w^2`, a rational. Zero iff the scalar is zero.
    pub fn norm(&self) -> BigRational {
        match self.d {
            None => &self.u * &self.u,
            Some(d) => {
                &self.u * &self.u - BigRational::from_integer(BigInt::from(d)) * &self.w * &self.w
            }
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // 1/(u + w s) = (u - w s) / norm; norm != 0 since d is not a square.
        let n = self.norm();
        debug_assert!(!n.is_zero());
        Ok(Self::normalized(&self.u / &n, -&self.w / &n, self.d))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(&rhs.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }

    /// Exact sign as a real number: -1, 0, or +1.
    pub fn signum(&self) -> i32 {
        let su = match self.u.cmp(&BigRational::zero()) {
            std::cmp::Ordering::Less => -1,
            std::cmp::Ordering::Equal => 0,
            std::cmp::Ordering::Greater => 1,
        };
        if self.w.is_zero() {
            return su;
        }
        let sw = if self.w.is_positive() { 1 } else { -1 };
        if su == 0 {
            return sw;
        }
        if su == sw {
            return su;
        }
        // Opposite signs: compare u^2 against d w^2.
        let d = BigRational::from_integer(BigInt::from(self.d.unwrap()));
        let u2 = &self.u * &self.u;
        let dw2 = d * &self.w * &self.w;
        match u2.cmp(&dw2) {
            std::cmp::Ordering::Greater => su,
            std::cmp::Ordering::Less => sw,
            // u^2 = d w^2 with w != 0 would make d a rational square.
            std::cmp::Ordering::Equal => unreachable!("square-free d cannot be a rational square"),
        }
    }

    /// Lossy conversion at the very end of exact pipelines.
    pub fn to_f64(&self) -> f64 {
        let u = self.u.to_f64().unwrap_or(f64::NAN);
        if self.w.is_zero() {
            return u;
        }
        let w = self.w.to_f64().unwrap_or(f64::NAN);
        u + w * (self.d.unwrap() as f64).sqrt()
    }

    /// The positive square root inside `Q(sqrt(ctx_d))`, when it exists.
    ///
    /// `ctx_d` must already be compatible with the scalar's own field (the
    /// caller joins contexts first). Returns `None` when the root lives in
    /// a larger field.
    pub fn sqrt_in(&self, ctx_d: Option<u64>) -> Option<QScalar> {
        if self.is_zero() {
            return Some(QScalar::zero());
        }
        if self.signum() < 0 {
            return None;
        }
        if self.w.is_zero() {
            // Rational radicand: either a rational square, or d * (square).
            if let Some(r) = rational_sqrt(&self.u) {
                return Some(QScalar::from_rational(r));
            }
            if let Some(d) = ctx_d {
                let quot = &self.u / BigRational::from_integer(BigInt::from(d));
                if let Some(y) = rational_sqrt(&quot) {
                    return Some(QScalar::normalized(BigRational::zero(), y, Some(d)));
                }
            }
            return None;
        }
        // t = x + y sqrt(d), t^2 = a + b sqrt(d): x^2 = (a +- n)/2 with
        // n = sqrt(a^2 - d b^2), and y = b / (2x).
        let d = self.d.unwrap();
        if ctx_d != Some(d) {
            return None;
        }
        let n = rational_sqrt(&self.norm())?;
        let two = BigRational::from_integer(BigInt::from(2));
        for n_signed in [n.clone(), -n] {
            let x2 = (&self.u + &n_signed) / &two;
            if let Some(x) = rational_sqrt(&x2) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.w / (&two * &x);
                let t = QScalar::normalized(x, y, Some(d));
                if t.checked_mul(&t).map(|sq| sq == *self).unwrap_or(false) {
                    return Some(if t.signum() > 0 { t } else { -&t });
                }
            }
        }
        None
    }

    /// For a positive rational scalar, `sqrt = (s/q) * sqrt(m)` with `m`
    /// square-free: returns `(s/q, m)` where `m == 1` means the root is
    /// rational.
    pub fn rational_sqrt_parts(&self) -> Result<(BigRational, u64)> {
        let r = self.as_rational().ok_or(Error::SqrtNotInField)?;
        if !r.is_positive() {
            return Err(Error::NonPositiveSplit);
        }
        // sqrt(p/q) = sqrt(p q)/q
        let pq = r.numer() * r.denom();
        let (s, m) = square_free_part(&pq);
        let m_u64 = m.to_u64().ok_or_else(|| {
            Error::Invalid("square-free part too large for a field parameter".into())
        })?;
        Ok((BigRational::new(s, r.denom().clone()), m_u64))
    }
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for QScalar {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar::normalized(-self.u.clone(), -self.w.clone(), self.d)
    }
}

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        let d = self.join(rhs);
        QScalar::normalized(&self.u + &rhs.u, &self.w + &rhs.w, d)
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        let d = self.join(rhs);
        QScalar::normalized(&self.u - &rhs.u, &self.w - &rhs.w, d)
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        self.checked_mul(rhs)
            .expect("mixed quadratic contexts in scalar arithmetic")
    }
}

impl Div for &QScalar {
    type Output = QScalar;
    fn div(self, rhs: &QScalar) -> QScalar {
        self.checked_div(rhs)
            .expect("scalar division failed (zero divisor or mixed contexts)")
    }
}

macro_rules! forward_value_binop {
    ($($t:ident :: $f:ident),*) => {$(
        impl $t for QScalar {
            type Output = QScalar;
            fn $f(self, rhs: QScalar) -> QScalar {
                (&self).$f(&rhs)
            }
        }
        impl $t<&QScalar> for QScalar {
            type Output = QScalar;
            fn $f(self, rhs: &QScalar) -> QScalar {
                (&self).$f(rhs)
            }
        }
        impl $t<QScalar> for &QScalar {
            type Output = QScalar;
            fn $f(self, rhs: QScalar) -> QScalar {
                self.$f(&rhs)
            }
        }
    )*};
}
forward_value_binop!(Add::add, Sub::sub, Mul::mul, Div::div);

impl PartialOrd for QScalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        // Comparable only within one field (or rational vs anything).
        QScalar::join_field(self.d, other.d).ok()?;
        Some(match (self - other).signum() {
            -1 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        })
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QScalar {
    /// Canonical textual form: `p/q`, `r/s*sqrt(D)`, or `p/q + r/s*sqrt(D)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.w.is_zero() {
            return fmt_rational(&self.u, f);
        }
        let d = self.d.unwrap();
        if !self.u.is_zero() {
            fmt_rational(&self.u, f)?;
            if self.w.is_positive() {
                write!(f, " + ")?;
                fmt_rational(&self.w, f)?;
            } else {
                write!(f, " - ")?;
                fmt_rational(&-self.w.clone(), f)?;
            }
        } else {
            fmt_rational(&self.w, f)?;
        }
        write!(f, "*sqrt({})", d)
    }
}

// ---------------------------------------------------------------------------
// Textual scalar syntax
// ---------------------------------------------------------------------------

/// Parses the textual scalar syntax `p/q` / `p/q+r/s*sqrt(D)`.
///
/// Whitespace-insensitive. When `ctx_d` is given, any `sqrt(D)` must have
/// `D == ctx_d`; with `ctx_d == None` any valid square-free `D` is accepted.
pub fn parse_scalar(input: &str, ctx_d: Option<u64>) -> Result<QScalar> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let bytes = s.as_bytes();
    let mut pos = 0usize;
    let mut total = QScalar::zero();
    let mut first = true;
    while pos < bytes.len() {
        let mut sign = 1i64;
        if bytes[pos] == b'+' || bytes[pos] == b'-' {
            if bytes[pos] == b'-' {
                sign = -1;
            }
            pos += 1;
        } else if !first {
            return Err(Error::Parse(format!("expected '+' or '-' in `{input}`")));
        }
        first = false;
        let (term, next) = parse_term(&s, pos, ctx_d)?;
        let term = if sign < 0 { -term } else { term };
        total = total.checked_add(&term)?;
        pos = next;
    }
    Ok(total)
}

/// One unsigned term: `digits[/digits]`, `coef*sqrt(D)`, or `sqrt(D)`.
fn parse_term(s: &str, start: usize, ctx_d: Option<u64>) -> Result<(QScalar, usize)> {
    let bytes = s.as_bytes();
    let mut pos = start;
    let coef = if s[pos..].starts_with("sqrt(") {
        BigRational::one()
    } else {
        let (num, next) = parse_digits(s, pos)?;
        pos = next;
        let den = if pos < bytes.len() && bytes[pos] == b'/' {
            let (den, next) = parse_digits(s, pos + 1)?;
            pos = next;
            den
        } else {
            BigInt::one()
        };
        if den.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        BigRational::new(num, den)
    };
    if s[pos..].starts_with("*sqrt(") || s[pos..].starts_with("sqrt(") {
        if bytes[pos] == b'*' {
            pos += 1;
        }
        pos += "sqrt(".len();
        let (d_int, next) = parse_digits(s, pos)?;
        pos = next;
        if pos >= bytes.len() || bytes[pos] != b')' {
            return Err(Error::Parse(format!("missing ')' in `{s}`")));
        }
        pos += 1;
        let d = d_int
            .to_u64()
            .ok_or_else(|| Error::Parse("sqrt argument out of range".into()))?;
        if let Some(expect) = ctx_d {
            if d != expect {
                return Err(Error::Parse(format!(
                    "sqrt({d}) does not match the context's field parameter sqrt({expect})"
                )));
            }
        }
        let root = QScalar::new(BigRational::zero(), coef, d)?;
        Ok((root, pos))
    } else {
        Ok((QScalar::from_rational(coef), pos))
    }
}

fn parse_digits(s: &str, start: usize) -> Result<(BigInt, usize)> {
    let bytes = s.as_bytes();
    let mut pos = start;
    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
        pos += 1;
    }
    if pos == start {
        return Err(Error::Parse(format!(
            "expected digits at position {start} of `{s}`"
        )));
    }
    let n: BigInt = s[start..pos]
        .parse()
        .map_err(|_| Error::Parse("bad integer".into()))?;
    Ok((n, pos))
}

impl std::str::FromStr for QScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s, None)
    }
}

// ---------------------------------------------------------------------------
// Float-to-rational reconstruction
// ---------------------------------------------------------------------------

/// Continued-fraction screening of a float for a hidden rational.
///
/// Returns the first convergent `p/q` with `q <= bound` and
/// `|x - p/q| < 1/(q^2 * bound)`, or `None` when no convergent of the
/// float's exact value passes the test.
pub fn rational_reconstruct(x: f64, denominator_bound: u64) -> Result<Option<BigRational>> {
    if !x.is_finite() {
        return Err(Error::NonFiniteInput);
    }
    if denominator_bound < 1 {
        return Err(Error::Invalid("denominator bound must be >= 1".into()));
    }
    let exact = BigRational::from_float(x).ok_or(Error::NonFiniteInput)?;
    let bound = BigInt::from(denominator_bound);

    // Convergents p_k/q_k of the continued fraction of `exact`.
    let mut p_prev = BigInt::one();
    let mut q_prev = BigInt::zero();
    let mut p = exact.floor().to_integer();
    let mut q = BigInt::one();
    let mut rem = &exact - BigRational::from_integer(p.clone());
    loop {
        if q <= bound {
            let conv = BigRational::new(p.clone(), q.clone());
            let err = (&exact - &conv).abs();
            let tol = BigRational::new(BigInt::one(), &q * &q * &bound);
            if err < tol {
                return Ok(Some(conv));
            }
        } else {
            return Ok(None);
        }
        if rem.is_zero() {
            return Ok(None);
        }
        let inv = rem.recip();
        let a = inv.floor().to_integer();
        rem = &inv - BigRational::from_integer(a.clone());
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
    }
}
