//! Exact rational scalars and homogeneous bivariate polynomials.
//!
//! A [`HomPoly`] of degree `n` stores `n + 1` coefficients where `coeffs[i]`
//! multiplies `x^(n-i) y^i`, so the index is the y-degree (Pauli weight).

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always held in lowest terms with a positive
/// denominator.
///
/// Values whose numerator and denominator fit in `i64` are stored inline and
/// use 128-bit intermediate arithmetic; anything larger spills to a
/// [`BigRational`]. The representation is canonical: a value is `Small`
/// exactly when it fits.
#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Clone)]
enum Repr {
    /// `(numer, denom)` with `denom > 0` and `gcd(|numer|, denom) = 1`
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(Rational::from_big(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Rational::from_big(BigRational::from_integer(v.into()))
    }

    /// Reduces `numer / denom` (with `denom != 0`) into canonical form.
    fn from_i128(numer: i128, denom: i128) -> Self {
        debug_assert!(denom != 0);
        let g = gcd_u128(numer.unsigned_abs(), denom.unsigned_abs());
        // signs go through u128 magnitudes so i128::MIN never gets negated
        let neg = (numer < 0) != (denom < 0) && numer != 0;
        let num_mag = numer.unsigned_abs() / g;
        let den_mag = denom.unsigned_abs() / g;
        // num_mag <= 2^127, so the signed value always fits in i128 except
        // for +2^127, which is not an i64 anyway
        let signed = if neg {
            0i128.wrapping_sub_unsigned(num_mag)
        } else {
            i128::try_from(num_mag).unwrap_or(i128::MAX)
        };
        if let (Ok(n), Ok(d)) = (i64::try_from(signed), i64::try_from(den_mag)) {
            return Rational(Repr::Small(n, d));
        }
        let n = BigInt::from(num_mag);
        let n = if neg { -n } else { n };
        Rational(Repr::Big(BigRational::new_raw(n, BigInt::from(den_mag))))
    }

    fn from_big(v: BigRational) -> Self {
        match (v.numer().to_i64(), v.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(v)),
        }
    }

    fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => b.clone(),
        }
    }

    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn recip(&self) -> Result<Self> {
        match &self.0 {
            Repr::Small(0, _) => Err(Error::Domain("reciprocal of zero".into())),
            Repr::Small(n, d) => Ok(Rational::from_i128(*d as i128, *n as i128)),
            Repr::Big(b) => Ok(Rational::from_big(b.recip())),
        }
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Self> {
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Rational::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// The value as a `u64` when it is a nonnegative integer that fits.
    pub fn to_u64(&self) -> Option<u64> {
        match &self.0 {
            Repr::Small(n, 1) => u64::try_from(*n).ok(),
            Repr::Small(..) => None,
            Repr::Big(b) if b.is_integer() => b.numer().to_u64(),
            Repr::Big(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
        }
    }

    fn add_ref(&self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(0, _), _) => rhs.clone(),
            (_, Repr::Small(0, _)) => self.clone(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    return Rational::from_i128(a + c, b);
                }
                // |a·d|, |c·b| < 2^126, so the sum cannot overflow
                Rational::from_i128(a * d + c * b, b * d)
            }
            _ => Rational::from_big(self.to_big() + rhs.to_big()),
        }
    }

    fn mul_ref(&self, rhs: &Rational) -> Rational {
        match (&self.0, &rhs.0) {
            (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Rational::zero(),
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * rhs.to_big()),
        }
    }

    fn neg_ref(&self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational::from_i128(-(*n as i128), *d as i128),
            Repr::Big(b) => Rational::from_big(-b),
        }
    }

    fn div_ref(&self, rhs: &Rational) -> Rational {
        self.mul_ref(&rhs.recip().expect("division by zero"))
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            // canonical representation: a small value never equals a big one
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => b.hash(state),
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational(Repr::Small(v, 1))
    }
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        Rational::from_i128(v as i128, 1)
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Rational(Repr::Small(v as i64, 1))
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigRational> for Rational {
    fn from(v: BigRational) -> Self {
        Rational::from_big(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.denom().is_one() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::new(n, d).map_err(|_| bad())
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(Rational::from_integer(n))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$imp(&rhs)
            }
        }
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                self.$imp(rhs)
            }
        }
    };
}

impl Rational {
    fn sub_ref(&self, rhs: &Rational) -> Rational {
        self.add_ref(&rhs.neg_ref())
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);
// Panics on a zero divisor, like the integer types; use `checked_div` on
// untrusted input.
forward_binop!(Div, div, div_ref);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        *self = self.add_ref(rhs);
    }
}

impl AddAssign<Rational> for Rational {
    fn add_assign(&mut self, rhs: Rational) {
        *self = self.add_ref(&rhs);
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        *self = self.sub_ref(rhs);
    }
}

impl SubAssign<Rational> for Rational {
    fn sub_assign(&mut self, rhs: Rational) {
        *self = self.sub_ref(&rhs);
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, v| acc + v)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, v| acc + v)
    }
}

/// `n choose k` as an exact integer.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Homogeneous polynomial in `x, y` of a fixed degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomPoly {
    coeffs: Vec<Rational>,
}

impl HomPoly {
    /// Builds a polynomial from `coeffs`, where `coeffs[i]` multiplies
    /// `x^(n-i) y^i`. The degree is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse("a polynomial needs at least one coefficient".into()));
        }
        Ok(HomPoly { coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        HomPoly {
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    /// The monomial `c · x^(n-i) y^i`.
    pub fn monomial(degree: usize, i: usize, c: Rational) -> Self {
        let mut p = HomPoly::zero(degree);
        p.coeffs[i] = c;
        p
    }

    /// Convenience constructor from integers.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        HomPoly::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
            .expect("from_ints needs at least one coefficient")
    }

    /// `(a x + b y)^n`, expanded.
    pub fn linear_power(a: &Rational, b: &Rational, n: usize) -> Self {
        let coeffs = (0..=n)
            .map(|i| {
                Rational::from_integer(binomial(n, i)) * a.pow((n - i) as u32) * b.pow(i as u32)
            })
            .collect();
        HomPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Value at the point `(x, y)`.
    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let n = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| c * x.pow((n - i) as u32) * y.pow(i as u32))
            .sum()
    }

    pub fn add(&self, other: &HomPoly) -> Result<HomPoly> {
        self.same_degree(other)?;
        Ok(HomPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &HomPoly) -> Result<HomPoly> {
        self.same_degree(other)?;
        Ok(HomPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> HomPoly {
        HomPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: &Rational, other: &HomPoly, b: &Rational) -> Result<HomPoly> {
        self.same_degree(other)?;
        Ok(HomPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(p, q)| a * p + b * q)
                .collect(),
        })
    }

    /// Product of two homogeneous polynomials (degrees add).
    pub fn mul(&self, other: &HomPoly) -> HomPoly {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        HomPoly { coeffs }
    }

    /// `p(-x, y)`.
    pub fn reflect_x(&self) -> HomPoly {
        let n = self.degree();
        HomPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if (n - i) % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Index of the first negative coefficient, if any.
    pub fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(Rational::is_negative)
    }

    /// Substitutes `x -> a x + b y`, `y -> c x + d y`.
    pub fn substitute_linear(&self, m: &LinearMap2) -> HomPoly {
        let n = self.degree();
        // powers of the two linear forms, as polynomials of growing degree
        let mut x_pows = vec![HomPoly::from_rationals(vec![Rational::one()])];
        let mut y_pows = vec![HomPoly::from_rationals(vec![Rational::one()])];
        let xf = HomPoly::from_rationals(vec![m.a.clone(), m.b.clone()]);
        let yf = HomPoly::from_rationals(vec![m.c.clone(), m.d.clone()]);
        for k in 1..=n {
            x_pows.push(x_pows[k - 1].mul(&xf));
            y_pows.push(y_pows[k - 1].mul(&yf));
        }
        let mut out = HomPoly::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = x_pows[n - i].mul(&y_pows[i]);
            for (acc, t) in out.coeffs.iter_mut().zip(term.coeffs) {
                *acc += c * t;
            }
        }
        out
    }

    fn from_rationals(coeffs: Vec<Rational>) -> HomPoly {
        HomPoly { coeffs }
    }

    fn same_degree(&self, other: &HomPoly) -> Result<()> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomPoly{:?}", self.coeffs)
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mono = monomial_str(n - i, i);
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn monomial_str(xe: usize, ye: usize) -> String {
    let part = |v: &str, e: usize| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    format!("{}{}", part("x", xe), part("y", ye))
}

/// Wire form of a polynomial: `{"degree": n, "coeffs": ["p/q", ...]}`.
#[derive(Serialize, Deserialize)]
struct PolyJson {
    degree: usize,
    coeffs: Vec<Rational>,
}

impl Serialize for HomPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            degree: self.degree(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HomPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        if raw.coeffs.len() != raw.degree + 1 {
            return Err(serde::de::Error::custom(format!(
                "degree {} needs {} coefficients, got {}",
                raw.degree,
                raw.degree + 1,
                raw.coeffs.len()
            )));
        }
        Ok(HomPoly { coeffs: raw.coeffs })
    }
}

/// The substitution `x -> a x + b y`, `y -> c x + d y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap2 {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl LinearMap2 {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        LinearMap2 { a, b, c, d }
    }

    /// `x -> (x + 3y)/2`, `y -> (x - y)/2`. Squares to the identity.
    pub fn macwilliams() -> Self {
        let h = |n: i64| Rational::new(n, 2).unwrap();
        LinearMap2::new(h(1), h(3), h(1), h(-1))
    }

    /// `x -> (x + 3y)/2`, `y -> (y - x)/2`.
    pub fn shadow() -> Self {
        let h = |n: i64| Rational::new(n, 2).unwrap();
        LinearMap2::new(h(1), h(3), h(-1), h(1))
    }

    /// Composition: substituting `self` then `other` equals substituting
    /// `self.then(other)`.
    pub fn then(&self, other: &LinearMap2) -> LinearMap2 {
        // p(M(x,y)) then q(x,y) = p(M(N(x,y))): x -> a(N x) + b(N y)
        LinearMap2 {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    /// Coefficient matrix `T` of the substitution on degree-`n` polynomials:
    /// `substitute_linear(p)[j] = sum_i T[j][i] * p[i]`.
    pub fn matrix(&self, n: usize) -> Vec<Vec<Rational>> {
        let mut t = vec![vec![Rational::zero(); n + 1]; n + 1];
        for i in 0..=n {
            let image = HomPoly::monomial(n, i, Rational::one()).substitute_linear(self);
            for (j, c) in image.coeffs.into_iter().enumerate() {
                t[j][i] = c;
            }
        }
        t
    }
}
