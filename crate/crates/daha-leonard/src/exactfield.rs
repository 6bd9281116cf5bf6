//! Exact arithmetic over the rationals and over one quadratic extension `Q(√D)`.
//!
//! Every scalar in the crate is a [`FieldElement`] `x + y√D` with `x, y` in
//! [`Rational`]. The discriminant `D` lives in a [`FieldContext`]; `D = 1`
//! means the field is `Q` itself and the irrational part is always zero.
//!
//! Rational elements embed in every context, so a value built over `Q` can be
//! combined with a value over `Q(√D)`. Combining two elements that carry
//! different non-trivial discriminants is a [`FieldError::ContextMismatch`].

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Largest trial divisor used when extracting square-free parts.
const TRIAL_DIVISION_LIMIT: u64 = 10_000_000;

/// Errors raised by field arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("context mismatch: Q(sqrt({0})) and Q(sqrt({1})) cannot be combined")]
    ContextMismatch(i64, i64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("square roots are only taken of rational elements")]
    IrrationalRadicand,
    #[error("invalid discriminant {0}: expected a square-free integer other than 0")]
    InvalidDiscriminant(String),
    #[error("cannot parse field element: {0}")]
    Parse(String),
}

/// The field `Q(√D)` in which a computation runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldContext {
    disc: i64,
}

impl FieldContext {
    /// The rational field `Q`.
    pub const RATIONAL: FieldContext = FieldContext { disc: 1 };

    /// Creates `Q(√d)`; `d` must be a nonzero square-free integer.
    pub fn new(disc: i64) -> Result<Self, FieldError> {
        if disc == 0 || !is_square_free(&BigInt::from(disc)) {
            return Err(FieldError::InvalidDiscriminant(disc.to_string()));
        }
        Ok(FieldContext { disc })
    }

    /// The context `Q(√D)` where `D` is the square-free part of `r`.
    ///
    /// `r` must be nonzero. When `r` is a rational square the result is `Q`.
    pub fn for_radicand(r: &Rational) -> Result<Self, FieldError> {
        if r.is_zero() {
            return Err(FieldError::InvalidDiscriminant("0".into()));
        }
        let m = r.numer() * r.denom();
        let sf = square_free_part(&m)?;
        let disc = sf
            .to_i64()
            .ok_or_else(|| FieldError::InvalidDiscriminant(sf.to_string()))?;
        Ok(FieldContext { disc })
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn is_rational(&self) -> bool {
        self.disc == 1
    }

    /// The smallest context containing both, when one exists.
    pub fn join(self, other: FieldContext) -> Result<FieldContext, FieldError> {
        if self == other || other.is_rational() {
            Ok(self)
        } else if self.is_rational() {
            Ok(other)
        } else {
            Err(FieldError::ContextMismatch(self.disc, other.disc))
        }
    }
}

impl Default for FieldContext {
    fn default() -> Self {
        FieldContext::RATIONAL
    }
}

/// An element `rat + irr·√D` of `Q(√D)`.
#[derive(Clone, Debug)]
pub struct FieldElement {
    rat: Rational,
    irr: Rational,
    ctx: FieldContext,
}

impl FieldElement {
    /// Builds `rat + irr·√D`; `irr` must vanish over `Q`.
    pub fn new(rat: Rational, irr: Rational, ctx: FieldContext) -> Result<Self, FieldError> {
        if ctx.is_rational() && !irr.is_zero() {
            return Err(FieldError::Parse(
                "nonzero irrational part over the rationals".into(),
            ));
        }
        Ok(FieldElement { rat, irr, ctx })
    }

    /// The rational `r` viewed in context `ctx`.
    pub fn from_rational_in(r: Rational, ctx: FieldContext) -> Self {
        FieldElement {
            rat: r,
            irr: Rational::zero(),
            ctx,
        }
    }

    /// The rational `r` over `Q`.
    pub fn from_rational(r: Rational) -> Self {
        Self::from_rational_in(r, FieldContext::RATIONAL)
    }

    /// The integer `n` over `Q`.
    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// The fraction `n/d` over `Q`. Panics when `d = 0`.
    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// `√D` itself in context `ctx`.
    pub fn sqrt_disc(ctx: FieldContext) -> Self {
        if ctx.is_rational() {
            return Self::one_in(ctx);
        }
        FieldElement {
            rat: Rational::zero(),
            irr: Rational::one(),
            ctx,
        }
    }

    pub fn zero_in(ctx: FieldContext) -> Self {
        Self::from_rational_in(Rational::zero(), ctx)
    }

    pub fn one_in(ctx: FieldContext) -> Self {
        Self::from_rational_in(Rational::one(), ctx)
    }

    pub fn zero() -> Self {
        Self::zero_in(FieldContext::RATIONAL)
    }

    pub fn one() -> Self {
        Self::one_in(FieldContext::RATIONAL)
    }

    pub fn rat_part(&self) -> &Rational {
        &self.rat
    }

    pub fn irr_part(&self) -> &Rational {
        &self.irr
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    /// The same value carried in a (compatible) larger context.
    pub fn in_context(&self, ctx: FieldContext) -> Result<Self, FieldError> {
        let joined = self.ctx.join(ctx)?;
        if joined != ctx {
            return Err(FieldError::ContextMismatch(self.ctx.disc, ctx.disc));
        }
        Ok(FieldElement {
            rat: self.rat.clone(),
            irr: self.irr.clone(),
            ctx,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.irr.is_zero()
    }

    /// True when the irrational part vanishes.
    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    /// The value as a rational, when it is one.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.irr.is_zero() {
            Some(&self.rat)
        } else {
            None
        }
    }

    /// Galois conjugate `rat − irr·√D`.
    pub fn conj(&self) -> Self {
        FieldElement {
            rat: self.rat.clone(),
            irr: -self.irr.clone(),
            ctx: self.ctx,
        }
    }

    /// Field norm `rat² − D·irr²`.
    pub fn norm(&self) -> Rational {
        if self.irr.is_zero() {
            return &self.rat * &self.rat;
        }
        let d = Rational::from_integer(BigInt::from(self.ctx.disc));
        &self.rat * &self.rat - d * &self.irr * &self.irr
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, FieldError> {
        let ctx = self.ctx.join(other.ctx)?;
        Ok(FieldElement {
            rat: &self.rat + &other.rat,
            irr: &self.irr + &other.irr,
            ctx,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, FieldError> {
        let ctx = self.ctx.join(other.ctx)?;
        Ok(FieldElement {
            rat: &self.rat - &other.rat,
            irr: &self.irr - &other.irr,
            ctx,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, FieldError> {
        let ctx = self.ctx.join(other.ctx)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero_in(ctx));
        }
        if self.irr.is_zero() && other.irr.is_zero() {
            return Ok(Self::from_rational_in(&self.rat * &other.rat, ctx));
        }
        let d = Rational::from_integer(BigInt::from(ctx.disc));
        let rat = &self.rat * &other.rat + d * &self.irr * &other.irr;
        let irr = &self.rat * &other.irr + &self.irr * &other.rat;
        Ok(FieldElement { rat, irr, ctx })
    }

    /// Multiplicative inverse, rationalised by the conjugate.
    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.irr.is_zero() {
            return Ok(Self::from_rational_in(self.rat.recip(), self.ctx));
        }
        let n = self.norm();
        Ok(FieldElement {
            rat: &self.rat / &n,
            irr: -(&self.irr / &n),
            ctx: self.ctx,
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, FieldError> {
        self.checked_mul(&other.inv()?)
    }

    /// `self^e` for any integer `e`; `self^0 = 1`.
    pub fn int_pow(&self, e: i64) -> Result<Self, FieldError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut exp = e.unsigned_abs();
        let mut acc = Self::one_in(self.ctx);
        let mut sq = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.checked_mul(&sq)?;
            }
            exp >>= 1;
            if exp > 0 {
                sq = sq.checked_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// `self^e`, panicking on a zero base with negative exponent.
    pub fn pow(&self, e: i64) -> Self {
        self.int_pow(e).expect("zero raised to a negative power")
    }

    /// Inverse, panicking on zero. Used where nonvanishing is a checked precondition.
    pub fn recip(&self) -> Self {
        self.inv().expect("inverse of zero")
    }

    /// `self + self⁻¹`.
    pub fn plus_inverse(&self) -> Self {
        self + &self.recip()
    }

    /// A square root of a rational element inside the current field.
    ///
    /// Returns `Some(s)` with `s² = self` when `self` is a rational square
    /// (`s` rational, nonnegative) or `self/D` is a rational square
    /// (`s = y√D`, `y > 0`). Returns `None` otherwise, which signals the caller
    /// to rebuild its context with `D` the square-free part of `self`.
    pub fn sqrt_in_field(&self) -> Result<Option<Self>, FieldError> {
        if !self.irr.is_zero() {
            return Err(FieldError::IrrationalRadicand);
        }
        if let Some(s) = rational_sqrt(&self.rat) {
            return Ok(Some(Self::from_rational_in(s, self.ctx)));
        }
        if !self.ctx.is_rational() {
            let d = Rational::from_integer(BigInt::from(self.ctx.disc));
            if let Some(y) = rational_sqrt(&(&self.rat / d)) {
                return Ok(Some(FieldElement {
                    rat: Rational::zero(),
                    irr: y,
                    ctx: self.ctx,
                }));
            }
        }
        Ok(None)
    }

    /// A square root of an arbitrary element of `Q(√D)` inside the same field.
    ///
    /// For `x + y√D` with `y ≠ 0` this solves `u² + Dv² = x`, `2uv = y`.
    pub fn sqrt_element(&self) -> Option<Self> {
        if self.irr.is_zero() {
            return self.sqrt_in_field().ok().flatten();
        }
        let n = rational_sqrt(&self.norm())?;
        let two = Rational::from_integer(BigInt::from(2));
        for cand in [(&self.rat + &n) / &two, (&self.rat - &n) / &two] {
            if let Some(u) = rational_sqrt(&cand) {
                if u.is_zero() {
                    continue;
                }
                let v = &self.irr / (&two * &u);
                let s = FieldElement {
                    rat: u,
                    irr: v,
                    ctx: self.ctx,
                };
                if &(&s * &s) == self {
                    return Some(s);
                }
            }
        }
        None
    }

    /// Parses a rational written as `p/q` or `p`.
    pub fn parse_rational(s: &str) -> Result<Rational, FieldError> {
        let s = s.trim();
        let bad = || FieldError::Parse(format!("not a rational: {s:?}"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(FieldError::DivisionByZero);
                }
                Ok(Rational::new(p, q))
            }
            None => Ok(Rational::from_integer(
                BigInt::from_str(s).map_err(|_| bad())?,
            )),
        }
    }

    /// Canonical JSON string; used for deterministic tie-breaking.
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("field elements always serialize")
    }
}

/// True iff `x` is rational and not in `{0, 1, −1}`; for rationals this is
/// exactly "nonzero and not a root of unity".
pub fn is_valid_q(x: &FieldElement) -> bool {
    match x.as_rational() {
        Some(r) => !r.is_zero() && !r.abs().is_one(),
        None => false,
    }
}

/// Nonnegative rational square root, when it exists.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = integer_sqrt(r.numer())?;
    let d = integer_sqrt(r.denom())?;
    Some(Rational::new(n, d))
}

fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let s = n.sqrt();
    if &(&s * &s) == n {
        Some(s)
    } else {
        None
    }
}

/// The square-free part of a nonzero integer, keeping its sign.
pub fn square_free_part(m: &BigInt) -> Result<BigInt, FieldError> {
    if m.is_zero() {
        return Err(FieldError::InvalidDiscriminant("0".into()));
    }
    let sign = if m.is_negative() { -1 } else { 1 };
    let mut rest = m.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(TRIAL_DIVISION_LIMIT);
    while &p * &p <= rest {
        if p > limit {
            return Err(FieldError::InvalidDiscriminant(format!(
                "{m}: too large to factor by trial division"
            )));
        }
        let mut e = 0u32;
        while Integer::is_multiple_of(&rest, &p) {
            rest /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    out *= rest;
    Ok(out * sign)
}

fn is_square_free(m: &BigInt) -> bool {
    matches!(square_free_part(m), Ok(sf) if &sf == m)
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.rat == other.rat
            && self.irr == other.irr
            && (self.ctx == other.ctx || self.irr.is_zero())
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rat.hash(state);
        self.irr.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order on (rational part, irrational part); used only to make
/// outputs deterministic, not as the real ordering of the field.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rat
            .cmp(&other.rat)
            .then_with(|| self.irr.cmp(&other.irr))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return write!(f, "{}", self.rat);
        }
        if self.rat.is_zero() {
            return write!(f, "{}*sqrt({})", self.irr, self.ctx.disc);
        }
        write!(f, "{} + {}*sqrt({})", self.rat, self.irr, self.ctx.disc)
    }
}

impl From<i64> for FieldElement {
    fn from(n: i64) -> Self {
        FieldElement::from_int(n)
    }
}

impl From<Rational> for FieldElement {
    fn from(r: Rational) -> Self {
        FieldElement::from_rational(r)
    }
}

fn fraction_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FieldElement", 3)?;
        st.serialize_field("rat", &fraction_string(&self.rat))?;
        st.serialize_field("irr", &fraction_string(&self.irr))?;
        st.serialize_field("disc", &self.ctx.disc)?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FieldElementRepr {
    Full {
        rat: String,
        #[serde(default)]
        irr: Option<String>,
        #[serde(default)]
        disc: Option<i64>,
    },
    Short(String),
    Int(i64),
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = FieldElementRepr::deserialize(deserializer)?;
        let parsed = match repr {
            FieldElementRepr::Full { rat, irr, disc } => (|| {
                let ctx = FieldContext::new(disc.unwrap_or(1))?;
                let rat = FieldElement::parse_rational(&rat)?;
                let irr = match irr {
                    Some(s) => FieldElement::parse_rational(&s)?,
                    None => Rational::zero(),
                };
                FieldElement::new(rat, irr, ctx)
            })(),
            FieldElementRepr::Short(s) => {
                FieldElement::parse_rational(&s).map(FieldElement::from_rational)
            }
            FieldElementRepr::Int(n) => Ok(FieldElement::from_int(n)),
        };
        parsed.map_err(de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            rat: -self.rat.clone(),
            irr: -self.irr.clone(),
            ctx: self.ctx,
        }
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}
