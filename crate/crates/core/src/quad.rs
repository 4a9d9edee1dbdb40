//! Exact arithmetic in the real quadratic field `Q(sqrt(D))`.
//!
//! An element is stored as `a + b*sqrt(D)` with `a`, `b` in the scalar field
//! and `D` a positive non-square integer carried with every value. Binary
//! operations refuse to mix different `D`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{OrderedScalar, Scalar};
use crate::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad<T> {
    a: T,
    b: T,
    d: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn is_perfect_square(v: i64) -> bool {
    if v < 0 {
        return false;
    }
    let r = v.sqrt();
    r * r == v
}

impl<T: Scalar> Quad<T> {
    pub fn new(a: T, b: T, d: i64) -> Result<Self> {
        if d <= 0 || is_perfect_square(d) {
            return Err(Error::domain(
                "quadratic field",
                format!("D = {d} must be a positive non-square"),
            ));
        }
        Ok(Quad { a, b, d })
    }

    pub fn from_scalar(a: T, d: i64) -> Result<Self> {
        Self::new(a, T::zero(), d)
    }

    pub fn zero(d: i64) -> Result<Self> {
        Self::from_scalar(T::zero(), d)
    }

    pub fn one(d: i64) -> Result<Self> {
        Self::from_scalar(T::one(), d)
    }

    /// Rational part.
    pub fn a(&self) -> &T {
        &self.a
    }

    /// Coefficient of `sqrt(D)`.
    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn discriminant(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the `sqrt(D)` part vanishes.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::MismatchedField {
                left: self.d,
                right: other.d,
            });
        }
        Ok(())
    }

    fn with(&self, a: T, b: T) -> Self {
        Quad { a, b, d: self.d }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.a.clone() + other.a.clone(), self.b.clone() + other.b.clone()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.a.clone() - other.a.clone(), self.b.clone() - other.b.clone()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let d = T::from_int(self.d);
        let a = self.a.clone() * other.a.clone() + d * self.b.clone() * other.b.clone();
        let b = self.a.clone() * other.b.clone() + self.b.clone() * other.a.clone();
        Ok(self.with(a, b))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        self.mul(&other.inverse()?)
    }

    pub fn arith(&self, other: &Self, op: ArithOp) -> Result<Self> {
        match op {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
            ArithOp::Div => self.div(other),
        }
    }

    pub fn neg(&self) -> Self {
        self.with(-self.a.clone(), -self.b.clone())
    }

    pub fn conjugate(&self) -> Self {
        self.with(self.a.clone(), -self.b.clone())
    }

    /// `a^2 - D*b^2`.
    pub fn norm(&self) -> T {
        self.a.clone() * self.a.clone() - T::from_int(self.d) * self.b.clone() * self.b.clone()
    }

    pub fn scale(&self, c: &T) -> Self {
        self.with(self.a.clone() * c.clone(), self.b.clone() * c.clone())
    }

    pub fn add_scalar(&self, c: &T) -> Self {
        self.with(self.a.clone() + c.clone(), self.b.clone())
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        let c = self.conjugate();
        Ok(self.with(c.a / n.clone(), c.b / n))
    }

    /// Exact integer power; negative exponents go through the inverse.
    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            if self.is_zero() {
                return Err(Error::ZeroToNegativePower);
            }
            return self.inverse()?.pow(-n);
        }
        let mut result = Self::one(self.d)?;
        let mut base = self.clone();
        let mut e = n as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }
}

impl<T: OrderedScalar> Quad<T> {
    /// Exact sign of `a + b*sqrt(D)`, decided by comparing `a^2` with `D*b^2`.
    pub fn sign(&self) -> i8 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let a2 = self.a.clone() * self.a.clone();
        let db2 = T::from_int(self.d) * self.b.clone() * self.b.clone();
        match a2.partial_cmp(&db2) {
            Some(Ordering::Greater) => sa,
            Some(Ordering::Less) => sb,
            _ => 0,
        }
    }

    pub fn cmp_exact(&self, other: &Self) -> Result<Ordering> {
        Ok(match self.sub(other)?.sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        })
    }
}

fn sign_of<T: OrderedScalar>(v: &T) -> i8 {
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// The field constants attached to an integer parameter `k`.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
#[serde(bound = "Quad<T>: serde::Serialize")]
pub struct FieldConstants<T> {
    pub k: i64,
    pub d: i64,
    /// `(k + sqrt(D))/2`, the positive root of `x^2 - kx - 1`.
    pub e_theta: Quad<T>,
    /// `(-k + sqrt(D))/2 = 1/e_theta`.
    pub e_neg_theta: Quad<T>,
    /// `-1/e_theta^2`.
    pub q: Quad<T>,
}

/// Field constants over an arbitrary scalar type.
pub fn constants_in<T: Scalar>(k: i64) -> Result<FieldConstants<T>> {
    if k < 1 {
        return Err(Error::domain("field constants", format!("k = {k} must be >= 1")));
    }
    let d = k
        .checked_mul(k)
        .and_then(|v| v.checked_add(4))
        .ok_or_else(|| Error::domain("field constants", format!("k = {k} too large")))?;
    if is_perfect_square(d) {
        return Err(Error::Inconsistent(format!("k^2 + 4 = {d} is a perfect square")));
    }
    let half = T::one() / T::from_int(2);
    let e_theta = Quad::new(T::from_int(k) * half.clone(), half.clone(), d)?;
    let e_neg_theta = Quad::new(-T::from_int(k) * half.clone(), half, d)?;
    let q = e_theta.pow(-2)?.neg();

    let kk = Quad::from_scalar(T::from_int(k), d)?;
    let lhs = e_theta.mul(&e_theta)?;
    let rhs = kk.mul(&e_theta)?.add_scalar(&T::one());
    if lhs != rhs || !e_theta.mul(&e_neg_theta)?.sub(&Quad::one(d)?)?.is_zero() {
        return Err(Error::Inconsistent(format!("e^theta fails x^2 = kx + 1 at k = {k}")));
    }
    Ok(FieldConstants {
        k,
        d,
        e_theta,
        e_neg_theta,
        q,
    })
}

/// Exact field constants for `k`.
pub fn constants(k: i64) -> Result<FieldConstants<Rat>> {
    constants_in::<Rat>(k)
}

fn floor_rat(r: &Rat) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// `floor(sqrt(v))` for non-negative rational `v`.
fn floor_sqrt_rat(v: &Rat) -> BigInt {
    floor_rat(v).sqrt()
}

fn pow10(e: i64) -> Rat {
    let p = Rat::from_integer(BigInt::from(10u8).pow(e.unsigned_abs() as u32));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

fn approx_log10(r: &Rat) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    let (n, d) = (r.numer().abs(), r.denom().clone());
    let shift = n.bits().max(d.bits()).saturating_sub(60) as i32;
    let nf = (n >> shift as usize).to_f64().unwrap_or(f64::MAX);
    let df = (d >> shift as usize).to_f64().unwrap_or(f64::MAX);
    nf.log10() - df.log10()
}

impl Quad<Rat> {
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }

    /// True when the value is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        (self.b.is_zero() && self.a.is_integer()).then(|| self.a.to_integer())
    }

    /// `floor(self)`, exact.
    pub fn floor(&self) -> BigInt {
        // b*sqrt(D) = sign(b)*sqrt(b^2 D); the estimate is within 2 of the truth.
        let b2d = self.b.clone() * self.b.clone() * Rat::from_integer(BigInt::from(self.d));
        let root = floor_sqrt_rat(&b2d);
        let irr = if self.b.is_negative() { -root - 1 } else { root };
        let mut n = floor_rat(&self.a) + irr;
        let le = |n: &BigInt| self.add_scalar(&-Rat::from_integer(n.clone())).sign() >= 0;
        while !le(&n) {
            n -= 1;
        }
        while le(&(&n + 1)) {
            n += 1;
        }
        n
    }

    /// Decimal rendering rounded to `digits` significant digits (ties away
    /// from zero). Exact: every comparison is done in the field.
    pub fn to_decimal(&self, digits: u32) -> Result<String> {
        if digits == 0 {
            return Err(Error::domain("to_decimal", "digits must be >= 1"));
        }
        let s = self.sign();
        if s == 0 {
            return Ok("0".to_string());
        }
        let x = if s < 0 { self.neg() } else { self.clone() };

        let b_mag = self.b.abs() * Rat::from_integer(BigInt::from(self.d).sqrt() + 1);
        let est = approx_log10(&self.a.abs()).max(approx_log10(&b_mag));
        let mut e = if est.is_finite() { est.floor() as i64 } else { 0 };
        let ge = |e: i64| x.add_scalar(&-pow10(e)).sign() >= 0;
        while !ge(e) {
            e -= 1;
        }
        while ge(e + 1) {
            e += 1;
        }

        let mut scale = digits as i64 - 1 - e;
        let y = x.scale(&pow10(scale));
        let mut n = y.floor();
        let half = Rat::new(BigInt::one(), BigInt::from(2));
        let frac = y.add_scalar(&-(Rat::from_integer(n.clone()) + half));
        if frac.sign() >= 0 {
            n += 1;
        }
        if n == BigInt::from(10u8).pow(digits) {
            n /= 10;
            scale -= 1;
        }

        let body = n.to_string();
        let mut out = String::new();
        if s < 0 {
            out.push('-');
        }
        if scale <= 0 {
            out.push_str(&body);
            out.extend(std::iter::repeat_n('0', (-scale) as usize));
        } else {
            let scale = scale as usize;
            if scale < body.len() {
                let (int, fr) = body.split_at(body.len() - scale);
                out.push_str(int);
                out.push('.');
                out.push_str(fr);
            } else {
                out.push_str("0.");
                out.extend(std::iter::repeat_n('0', scale - body.len()));
                out.push_str(&body);
            }
        }
        Ok(out)
    }
}

impl<T: fmt::Display + Scalar> fmt::Display for Quad<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({})*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl serde::Serialize for Quad<Rat> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Quad", 3)?;
        st.serialize_field("a", &self.a.to_string())?;
        st.serialize_field("b", &self.b.to_string())?;
        st.serialize_field("D", &self.d)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    fn quad(a: Rat, b: Rat, d: i64) -> Quad<Rat> {
        Quad::new(a, b, d).unwrap()
    }

    #[test]
    fn golden_pair_multiplies_to_one() {
        let phi = quad(r(1, 2), r(1, 2), 5);
        let inv = quad(r(-1, 2), r(1, 2), 5);
        assert_eq!(phi.mul(&inv).unwrap(), Quad::one(5).unwrap());
    }

    #[test]
    fn two_cosh_theta_is_sqrt5() {
        let c = constants(1).unwrap();
        let s = c.e_theta.add(&c.e_neg_theta).unwrap();
        assert_eq!(s, quad(r(0, 1), r(1, 1), 5));
    }

    #[test]
    fn inverse_of_e_theta_at_k3() {
        let c = constants(3).unwrap();
        let one = Quad::one(13).unwrap();
        let inv = one.div(&c.e_theta).unwrap();
        assert_eq!(inv, quad(r(-3, 2), r(1, 2), 13));
        assert_eq!(c.e_theta.norm(), r(-1, 1));
    }

    #[test]
    fn powers() {
        let c = constants(1).unwrap();
        assert_eq!(c.e_theta.pow(2).unwrap(), quad(r(3, 2), r(1, 2), 5));
        assert_eq!(c.q.pow(1).unwrap(), quad(r(-3, 2), r(1, 2), 5));
        assert_eq!(c.q.pow(0).unwrap(), Quad::one(5).unwrap());
        assert_eq!(Quad::<Rat>::zero(5).unwrap().pow(-1), Err(Error::ZeroToNegativePower));
    }

    #[test]
    fn constants_k2_and_k3() {
        let c2 = constants(2).unwrap();
        assert_eq!(c2.d, 8);
        assert_eq!(c2.e_theta, quad(r(1, 1), r(1, 2), 8));
        let c3 = constants(3).unwrap();
        assert_eq!(c3.q, quad(r(-11, 2), r(3, 2), 13));
        assert_eq!(c3.q.sign(), -1);
        let e2 = c3.e_theta.pow(2).unwrap();
        assert_eq!(c3.q.mul(&e2).unwrap(), Quad::one(13).unwrap().neg());
        assert!(constants(0).is_err());
    }

    #[test]
    fn signs() {
        let c = constants(1).unwrap();
        let one = Quad::one(5).unwrap();
        assert_eq!(c.e_neg_theta.sub(&one).unwrap().sign(), -1);
        assert_eq!(Quad::<Rat>::zero(5).unwrap().sign(), 0);
        for k in 1..10 {
            assert_eq!(constants(k).unwrap().q.sign(), -1);
        }
    }

    #[test]
    fn field_mismatch_and_zero_division() {
        let a = Quad::<Rat>::one(5).unwrap();
        let b = Quad::<Rat>::one(8).unwrap();
        assert_eq!(a.add(&b), Err(Error::MismatchedField { left: 5, right: 8 }));
        assert_eq!(a.div(&Quad::zero(5).unwrap()), Err(Error::DivisionByZero));
        assert!(Quad::<Rat>::one(4).is_err());
    }

    #[test]
    fn decimals() {
        let c = constants(1).unwrap();
        assert_eq!(c.e_theta.to_decimal(10).unwrap(), "1.618033989");
        assert_eq!(c.q.to_decimal(6).unwrap(), "-0.381966");
        assert_eq!(Quad::<Rat>::zero(5).unwrap().to_decimal(3).unwrap(), "0");
        let big = Quad::from_scalar(r(123456, 1), 5).unwrap();
        assert_eq!(big.to_decimal(3).unwrap(), "123000");
        let tiny = Quad::from_scalar(r(1, 2000), 5).unwrap();
        assert_eq!(tiny.to_decimal(2).unwrap(), "0.00050");
        let carry = Quad::from_scalar(r(9999, 1000), 5).unwrap();
        assert_eq!(carry.to_decimal(2).unwrap(), "10");
    }

    #[test]
    fn f64_instantiation_agrees() {
        let c = constants_in::<f64>(1).unwrap();
        let v = c.e_theta.a() + c.e_theta.b() * 5f64.sqrt();
        assert!((v - 1.618_033_988_749_895).abs() < 1e-15);
    }
}
