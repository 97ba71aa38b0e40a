//! Scalar abstraction shared by every solver in the crate.
//!
//! Two backends exist: [`Rational`] (arbitrary precision, never rounds) and
//! `f64` (fast, every comparison goes through [`Tolerances`]).

use std::cmp::Ordering;
use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

/// Exact rational number used by the arbiter backend.
pub type Rational = BigRational;

/// Numeric tolerances. All zero for exact scalars.
#[derive(Clone, Debug, PartialEq)]
pub struct Tolerances<S> {
    /// Absolute primal feasibility tolerance.
    pub feasibility: S,
    /// Reduced-cost tolerance.
    pub optimality: S,
    /// Smallest pivot magnitude accepted in a ratio test.
    pub pivot: S,
    /// Relative tolerance for comparing objective values.
    pub objective_rel: S,
    /// Distance to the nearest integer still treated as integral.
    pub integrality: S,
}

impl<S: Scalar> Tolerances<S> {
    /// `a <= b` up to the feasibility tolerance.
    pub fn le(&self, a: &S, b: &S) -> bool {
        *a <= b.clone() + self.feasibility.clone()
    }

    /// `a >= b` up to the relative objective tolerance.
    pub fn obj_ge(&self, a: &S, b: &S) -> bool {
        let scale = if b.abs() > S::one() { b.abs() } else { S::one() };
        a.clone() >= b.clone() - self.objective_rel.clone() * scale
    }

    /// Whether `v` is integral up to the integrality tolerance.
    pub fn is_integral(&self, v: &S) -> bool {
        let down = v.floor();
        let up = v.ceil();
        let dist = {
            let a = v.clone() - down;
            let b = up - v.clone();
            if a < b {
                a
            } else {
                b
            }
        };
        dist <= self.integrality
    }
}

/// Field operations plus the conversions and rounding the solvers need.
pub trait Scalar: Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// True for arithmetic without rounding.
    const EXACT: bool;
    /// Backend name used in logs and manifests.
    const NAME: &'static str;

    fn from_rational(r: &Rational) -> Self;
    fn to_rational(&self) -> Rational;
    fn to_f64(&self) -> f64;
    fn floor(&self) -> Self;
    fn ceil(&self) -> Self;
    fn default_tolerances() -> Tolerances<Self>;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    /// Floor as a machine integer, `None` on overflow.
    fn floor_i64(&self) -> Option<i64> {
        self.floor().to_rational().to_integer().to_i64()
    }

    /// Lossless text form (`p/q` for rationals, shortest round-trip decimal for floats).
    fn to_text(&self) -> String;

    /// `self -= a * b`.
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self = self.clone() - a.clone() * b.clone();
    }

    /// `self /= d`.
    fn div_by(&mut self, d: &Self) {
        *self = self.clone() / d.clone();
    }

    fn parse_text(text: &str) -> Option<Self> {
        parse_rational(text).map(|r| Self::from_rational(&r))
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const NAME: &'static str = "exact";

    fn sub_mul(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }

    fn div_by(&mut self, d: &Self) {
        *self /= d;
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        })
    }

    fn floor(&self) -> Self {
        BigRational::floor(self)
    }

    fn ceil(&self) -> Self {
        BigRational::ceil(self)
    }

    fn default_tolerances() -> Tolerances<Self> {
        Tolerances {
            feasibility: Rational::zero(),
            optimality: Rational::zero(),
            pivot: Rational::zero(),
            objective_rel: Rational::zero(),
            integrality: Rational::zero(),
        }
    }

    fn to_text(&self) -> String {
        if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const NAME: &'static str = "float";

    fn from_rational(r: &Rational) -> Self {
        <Rational as Scalar>::to_f64(r)
    }

    fn to_rational(&self) -> Rational {
        Rational::from_f64(*self).unwrap_or_else(Rational::zero)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn floor(&self) -> Self {
        f64::floor(*self)
    }

    fn ceil(&self) -> Self {
        f64::ceil(*self)
    }

    fn default_tolerances() -> Tolerances<Self> {
        Tolerances {
            feasibility: 1e-7,
            optimality: 1e-7,
            pivot: 1e-9,
            objective_rel: 1e-9,
            integrality: 1e-6,
        }
    }

    fn to_text(&self) -> String {
        format!("{self}")
    }

    fn parse_text(text: &str) -> Option<Self> {
        let t = text.trim();
        if t.contains('/') {
            parse_rational(t).map(|r| <Rational as Scalar>::to_f64(&r))
        } else {
            f64::from_str(t).ok().filter(|v| v.is_finite())
        }
    }
}

/// Parses `p/q`, integers and decimal literals (with optional exponent) exactly.
///
/// `"0.2"` becomes `1/5`; `"1.5e-3"` becomes `3/2000`.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    let (negative, body) = match t.as_bytes()[0] {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (mantissa, exponent) = match body.find(['e', 'E', 'd', 'D']) {
        Some(pos) => (&body[..pos], i64::from_str(&body[pos + 1..]).ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let scale = exponent - frac_part.len() as i64;
    if scale.unsigned_abs() > 4096 {
        return None;
    }
    let ten = BigInt::from(10u32);
    let mut value = Rational::from_integer(numer);
    let pow = num_traits::pow(ten, scale.unsigned_abs() as usize);
    if scale >= 0 {
        value *= Rational::from_integer(pow);
    } else {
        value /= Rational::from_integer(pow);
    }
    Some(if negative { -value } else { value })
}

/// Renders a rational as a terminating decimal, or `None` if its expansion repeats.
pub fn rational_to_decimal(r: &Rational) -> Option<String> {
    let mut den = r.denom().clone();
    let two = BigInt::from(2u32);
    let five = BigInt::from(5u32);
    let mut twos = 0usize;
    let mut fives = 0usize;
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return None;
    }
    let places = twos.max(fives);
    if places == 0 {
        return Some(r.numer().to_string());
    }
    let scaled = r * Rational::from_integer(num_traits::pow(BigInt::from(10u32), places));
    let digits = scaled.to_integer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let frac_part = frac_part.trim_end_matches('0');
    let sign = if r.is_negative() { "-" } else { "" };
    if frac_part.is_empty() {
        Some(format!("{sign}{int_part}"))
    } else {
        Some(format!("{sign}{int_part}.{frac_part}"))
    }
}

/// Value on the extended real line; `PosInf` is the minimum over an empty set.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtendedValue<S> {
    NegInf,
    Finite(S),
    PosInf,
}

impl<S: Scalar> ExtendedValue<S> {
    pub fn finite(&self) -> Option<&S> {
        match self {
            ExtendedValue::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedValue::Finite(_))
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    pub fn map<T: Scalar>(&self, f: impl FnOnce(&S) -> T) -> ExtendedValue<T> {
        match self {
            ExtendedValue::NegInf => ExtendedValue::NegInf,
            ExtendedValue::Finite(v) => ExtendedValue::Finite(f(v)),
            ExtendedValue::PosInf => ExtendedValue::PosInf,
        }
    }

    pub fn convert<T: Scalar>(&self) -> ExtendedValue<T> {
        self.map(|v| T::from_rational(&v.to_rational()))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedValue::NegInf => f64::NEG_INFINITY,
            ExtendedValue::Finite(v) => v.to_f64(),
            ExtendedValue::PosInf => f64::INFINITY,
        }
    }

    /// `|self - other|`; infinite whenever either side is infinite.
    pub fn abs_diff(&self, other: &Self) -> ExtendedValue<S> {
        match (self, other) {
            (ExtendedValue::Finite(a), ExtendedValue::Finite(b)) => {
                ExtendedValue::Finite((a.clone() - b.clone()).abs())
            }
            _ => ExtendedValue::PosInf,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            ExtendedValue::NegInf => "-inf".to_string(),
            ExtendedValue::Finite(v) => v.to_text(),
            ExtendedValue::PosInf => "inf".to_string(),
        }
    }

    pub fn parse_text(text: &str) -> Option<Self> {
        match text.trim().to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" => Some(ExtendedValue::PosInf),
            "-inf" | "-infinity" => Some(ExtendedValue::NegInf),
            other => S::parse_text(other).map(ExtendedValue::Finite),
        }
    }

    /// Total-order comparison; panics only on NaN payloads.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).expect("NaN in extended value")
    }
}

impl<S: Scalar> PartialOrd for ExtendedValue<S> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use ExtendedValue::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Some(Ordering::Equal),
            (NegInf, _) | (_, PosInf) => Some(Ordering::Less),
            (_, NegInf) | (PosInf, _) => Some(Ordering::Greater),
            (Finite(a), Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl<S: Scalar> From<S> for ExtendedValue<S> {
    fn from(v: S) -> Self {
        ExtendedValue::Finite(v)
    }
}

impl<S: Scalar> Display for ExtendedValue<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Shorthand for building exact rationals in tests and fixtures.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Converts a vector between scalar backends.
pub fn convert_vec<A: Scalar, B: Scalar>(v: &[A]) -> Vec<B> {
    v.iter().map(|x| B::from_rational(&x.to_rational())).collect()
}

pub(crate) fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter()
        .zip(b)
        .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_literals_parse_exactly() {
        assert_eq!(parse_rational("0.2"), Some(ratio(1, 5)));
        assert_eq!(parse_rational("-1.5e-3"), Some(ratio(-3, 2000)));
        assert_eq!(parse_rational("12"), Some(ratio(12, 1)));
        assert_eq!(parse_rational(".5"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("3/6"), Some(ratio(1, 2)));
        assert_eq!(parse_rational("1E2"), Some(ratio(100, 1)));
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rational_to_decimal(&ratio(1, 5)).as_deref(), Some("0.2"));
        assert_eq!(rational_to_decimal(&ratio(-3, 2000)).as_deref(), Some("-0.0015"));
        assert_eq!(rational_to_decimal(&ratio(7, 1)).as_deref(), Some("7"));
        assert_eq!(rational_to_decimal(&ratio(1, 3)), None);
    }

    #[test]
    fn extended_order() {
        let a: ExtendedValue<Rational> = ExtendedValue::NegInf;
        let b = ExtendedValue::Finite(ratio(-2, 5));
        let c = ExtendedValue::PosInf;
        assert!(a < b && b < c && a < c);
        assert_eq!(b.clone().min(c.clone()), b);
        assert_eq!(
            ExtendedValue::<Rational>::parse_text("inf"),
            Some(ExtendedValue::PosInf)
        );
        assert_eq!(ExtendedValue::<Rational>::parse_text("-2/5"), Some(b));
    }

    #[test]
    fn float_tolerances() {
        let tol = f64::default_tolerances();
        assert!(tol.is_integral(&(3.0 + 1e-7)));
        assert!(!tol.is_integral(&3.1));
        let exact = Rational::default_tolerances();
        assert!(!exact.is_integral(&ratio(1_000_001, 1_000_000)));
    }

    #[test]
    fn text_round_trip() {
        for r in [ratio(1, 5), ratio(-7, 3), ratio(4, 1)] {
            assert_eq!(Rational::parse_text(&r.to_text()), Some(r));
        }
        for x in [0.1f64, -2.5e-9, 1.0 / 3.0] {
            assert_eq!(f64::parse_text(&x.to_text()), Some(x));
        }
    }
}
