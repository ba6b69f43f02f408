//! Exact scalars over ℚ, ℚ(i) and 𝔽_p for odd primes p.
//!
//! A [`Scalar`] carries its field with it, so values from different fields
//! can never be combined silently. The operator impls (`+`, `*`, ...) panic on
//! mixed fields; [`arith`] is the checked entry point.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rational,
    GaussianRational,
    /// 𝔽_p, p an odd prime. Construct through [`FieldSpec::prime`].
    Prime(u64),
}

/// Cardinality of a possibly infinite set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Cardinality {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Cardinality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cardinality::Finite(n) => write!(f, "{n}"),
            Cardinality::Infinite => f.write_str("infinite"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl FieldSpec {
    /// 𝔽_p. Rejects p = 2 and composites.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidCharacteristic(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational | FieldSpec::GaussianRational => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
            .expect("integers embed in every supported field")
    }

    /// Image of a rational number. Fails only in 𝔽_p when p divides the
    /// denominator.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match *self {
            FieldSpec::Rational => Ok(Scalar::Rational(q.clone())),
            FieldSpec::GaussianRational => Ok(Scalar::Gaussian(q.clone(), BigRational::zero())),
            FieldSpec::Prime(p) => {
                let pb = BigInt::from(p);
                let num = q.numer().mod_floor(&pb).to_u64().unwrap();
                let den = q.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                let inv = pow_mod(den, p - 2, p);
                Ok(Scalar::Prime {
                    value: mul_mod(num, inv, p),
                    p,
                })
            }
        }
    }

    /// ℚ(i) unit `i`; `None` in the other fields.
    pub fn imaginary_unit(&self) -> Option<Scalar> {
        match self {
            FieldSpec::GaussianRational => {
                Some(Scalar::Gaussian(BigRational::zero(), BigRational::one()))
            }
            _ => None,
        }
    }

    /// |𝔽*|.
    pub fn unit_count(&self) -> Cardinality {
        match self {
            FieldSpec::Prime(p) => Cardinality::Finite(p - 1),
            _ => Cardinality::Infinite,
        }
    }

    /// |𝔽*/(𝔽*)²|.
    pub fn square_class_count(&self) -> Cardinality {
        match self {
            // x ↦ x² is 2-to-1 on 𝔽_p*, so the squares have index 2.
            FieldSpec::Prime(_) => Cardinality::Finite(2),
            // distinct rational primes are pairwise inequivalent mod squares;
            // the same holds in ℚ(i) for the primes 3 mod 4.
            FieldSpec::Rational | FieldSpec::GaussianRational => Cardinality::Infinite,
        }
    }

    /// Every element, in residue order. `None` for infinite fields.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match *self {
            FieldSpec::Prime(p) => Some((0..p).map(|value| Scalar::Prime { value, p }).collect()),
            _ => None,
        }
    }

    /// A pseudorandom element: uniform in 𝔽_p, small-height fractions in
    /// the characteristic-zero fields.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        let small = |rng: &mut R| {
            let n: i64 = rng.gen_range(-5..=5);
            let d: i64 = rng.gen_range(1..=3);
            BigRational::new(BigInt::from(n), BigInt::from(d))
        };
        match *self {
            FieldSpec::Rational => Scalar::Rational(small(rng)),
            FieldSpec::GaussianRational => Scalar::Gaussian(small(rng), small(rng)),
            FieldSpec::Prime(p) => Scalar::Prime {
                value: rng.gen_range(0..p),
                p,
            },
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Parses a scalar literal whose field is fixed by context: `"3/4"`,
    /// `"-2"`, and in ℚ(i) also `"1/2-3i"`, `"i"`. In 𝔽_p a fraction is read
    /// as numerator times inverse denominator; `"5 mod 7"` is accepted when
    /// the modulus agrees.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let text = s.trim();
        if let Some((v, m)) = text.split_once("mod") {
            let p: u64 = m
                .trim()
                .parse()
                .map_err(|_| Error::parse("scalar", s, "bad modulus"))?;
            if *self != FieldSpec::Prime(p) {
                return Err(Error::parse("scalar", s, format!("modulus does not match field {self}")));
            }
            return self.from_rational(&parse_fraction(v.trim(), s)?);
        }
        match self {
            FieldSpec::GaussianRational => parse_gaussian(text, s),
            _ => {
                if text.contains('i') {
                    return Err(Error::parse("scalar", s, format!("no imaginary unit in {self}")));
                }
                self.from_rational(&parse_fraction(text, s)?)
                    .map_err(|_| Error::parse("scalar", s, "denominator vanishes mod p"))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("Q"),
            FieldSpec::GaussianRational => f.write_str("Qi"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" => Ok(FieldSpec::Rational),
            "Qi" | "Q(i)" => Ok(FieldSpec::GaussianRational),
            other => {
                let digits = other
                    .strip_prefix('F')
                    .or_else(|| other.strip_prefix("Fp"))
                    .ok_or_else(|| Error::parse("field", s, "expected Q, Qi or F<p>"))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::parse("field", s, "expected Q, Qi or F<p>"))?;
                FieldSpec::prime(p)
            }
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn parse_fraction(text: &str, whole: &str) -> Result<BigRational> {
    let bad = |reason: &str| Error::parse("scalar", whole, reason.to_string());
    let t = text.trim();
    if t.is_empty() {
        return Err(bad("empty literal"));
    }
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

fn parse_gaussian(text: &str, whole: &str) -> Result<Scalar> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.trim_start_matches('(').trim_end_matches(')');
    if !t.ends_with('i') {
        return Ok(Scalar::Gaussian(parse_fraction(t, whole)?, BigRational::zero()));
    }
    let body = t[..t.len() - 1].trim_end_matches('*');
    // split at the last sign that is not the leading one
    let split = body
        .char_indices()
        .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
        .map(|(k, _)| k)
        .last();
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("", body),
    };
    let re = if re.is_empty() {
        BigRational::zero()
    } else {
        parse_fraction(re, whole)?
    };
    let im = match im {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        other => parse_fraction(other.trim_start_matches('+'), whole)?,
    };
    Ok(Scalar::Gaussian(re, im))
}

/// An exact field element tagged with its field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    /// `re + im·i` in ℚ(i).
    Gaussian(BigRational, BigRational),
    /// Residue in `[0, p)`.
    Prime { value: u64, p: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    if a.field() != b.field() {
        return Err(Error::MixedFields(a.field(), b.field()));
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a.checked_div(b)?,
    })
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Gaussian(..) => FieldSpec::GaussianRational,
            Scalar::Prime { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Gaussian(a, b) => a.is_zero() && b.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Gaussian(a, b) => a.is_one() && b.is_zero(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn zero_like(&self) -> Scalar {
        self.field().zero()
    }

    pub fn one_like(&self) -> Scalar {
        self.field().one()
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Gaussian(a, b) => {
                let norm = a * a + b * b;
                Scalar::Gaussian(a / &norm, -(b / &norm))
            }
            Scalar::Prime { value, p } => Scalar::Prime {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = self.one_like();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// The rational value if this scalar lies in the prime subfield ℚ
    /// (for ℚ and ℚ(i)); `None` otherwise.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self {
            Scalar::Rational(q) => Some(q.clone()),
            Scalar::Gaussian(a, b) if b.is_zero() => Some(a.clone()),
            _ => None,
        }
    }

    /// Some `λ` with `λ² = self`, if one exists in the field.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(self.clone());
        }
        match self {
            Scalar::Rational(q) => rational_sqrt(q).map(Scalar::Rational),
            Scalar::Gaussian(a, b) => {
                let zero = BigRational::zero();
                if b.is_zero() {
                    if let Some(r) = rational_sqrt(a) {
                        return Some(Scalar::Gaussian(r, zero));
                    }
                    return rational_sqrt(&-a).map(|r| Scalar::Gaussian(zero, r));
                }
                // (x+yi)² = a+bi  ⇒  x² = (a + |a+bi|)/2, y = b/(2x)
                let modulus = rational_sqrt(&(a * a + b * b))?;
                let two = BigRational::from_integer(BigInt::from(2));
                let x = rational_sqrt(&((a + &modulus) / &two))?;
                if x.is_zero() {
                    return None;
                }
                let y = b / (&two * &x);
                Some(Scalar::Gaussian(x, y))
            }
            Scalar::Prime { value, p } => (1..*p)
                .find(|l| mul_mod(*l, *l, *p) == *value)
                .map(|l| Scalar::Prime { value: l, p: *p }),
        }
    }

    /// Canonical literal without the field tag (`"2"` for 2 mod 3). Parses
    /// back with [`FieldSpec::parse_scalar`] for this scalar's field.
    pub fn literal(&self) -> String {
        match self {
            Scalar::Prime { value, .. } => value.to_string(),
            other => other.to_string(),
        }
    }
}

/// Whether `x` is a square in its field.
///
/// 𝔽_p uses Euler's criterion, ℚ tests numerator and denominator, ℚ(i)
/// solves for the square root explicitly.
pub fn is_square(x: &Scalar) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(match x {
        Scalar::Prime { value, p } => pow_mod(*value, (p - 1) / 2, *p) == 1,
        other => other.sqrt().is_some(),
    })
}

pub fn square_class_count(f: FieldSpec) -> Cardinality {
    f.square_class_count()
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => f.write_str(&fmt_rational(q)),
            Scalar::Gaussian(a, b) => {
                if b.is_zero() {
                    return f.write_str(&fmt_rational(a));
                }
                let im = if b.is_one() {
                    "i".to_string()
                } else if (-b).is_one() {
                    "-i".to_string()
                } else {
                    format!("{}i", fmt_rational(b))
                };
                if a.is_zero() {
                    f.write_str(&im)
                } else if im.starts_with('-') {
                    write!(f, "{}{}", fmt_rational(a), im)
                } else {
                    write!(f, "{}+{}", fmt_rational(a), im)
                }
            }
            Scalar::Prime { value, p } => write!(f, "{value} mod {p}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Self-describing form: `"5 mod 7"` is in 𝔽₇, anything with an `i` is
    /// in ℚ(i), everything else in ℚ.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some((_, m)) = t.split_once("mod") {
            let p: u64 = m
                .trim()
                .parse()
                .map_err(|_| Error::parse("scalar", s, "bad modulus"))?;
            return FieldSpec::prime(p)?.parse_scalar(t);
        }
        if t.contains('i') {
            FieldSpec::GaussianRational.parse_scalar(t)
        } else {
            FieldSpec::Rational.parse_scalar(t)
        }
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("mixed-field arithmetic: {} vs {}", a.field(), b.field())
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian(a, b), Scalar::Gaussian(c, d)) => Scalar::Gaussian(a + c, b + d),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                Scalar::Prime {
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    p: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gaussian(a, b), Scalar::Gaussian(c, d)) => {
                Scalar::Gaussian(a * c - b * d, a * d + b * c)
            }
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, p: q }) if p == q => {
                Scalar::Prime {
                    value: mul_mod(*a, *b, *p),
                    p: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Gaussian(a, b) => Scalar::Gaussian(-a, -b),
            Scalar::Prime { value, p } => Scalar::Prime {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        FieldSpec::Rational.parse_scalar(s).unwrap()
    }

    #[test]
    fn fraction_arithmetic() {
        assert_eq!(&q("1/2") + &q("1/3"), q("5/6"));
        assert_eq!(q("6/8"), q("3/4"));
        assert_eq!(q("3/-4").to_string(), "-3/4");
    }

    #[test]
    fn gaussian_unit_squares_to_minus_one() {
        let i = FieldSpec::GaussianRational.imaginary_unit().unwrap();
        assert_eq!(&i * &i, FieldSpec::GaussianRational.from_i64(-1));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f3 = FieldSpec::prime(3).unwrap();
        let two = f3.from_i64(2);
        assert_eq!(&two * &two, f3.one());
        assert_eq!(f3.parse_scalar("1/2").unwrap(), two);
        assert_eq!(two.inv().unwrap(), two);
    }

    #[test]
    fn rejects_even_and_composite_characteristic() {
        assert_eq!(FieldSpec::prime(2), Err(Error::InvalidCharacteristic(2)));
        assert!(FieldSpec::prime(9).is_err());
        assert!("F2".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::prime(7).unwrap().characteristic(), 7);
        assert_eq!(FieldSpec::Rational.characteristic(), 0);
    }

    #[test]
    fn checked_arith_errors() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(matches!(
            arith(&q("1"), &f3.one(), ArithOp::Add),
            Err(Error::MixedFields(..))
        ));
        assert_eq!(arith(&q("1"), &q("0"), ArithOp::Div), Err(Error::DivisionByZero));
        assert_eq!(arith(&q("1"), &q("2"), ArithOp::Div).unwrap(), q("1/2"));
    }

    #[test]
    fn squares() {
        let f3 = FieldSpec::prime(3).unwrap();
        let f7 = FieldSpec::prime(7).unwrap();
        assert!(is_square(&f3.one()).unwrap());
        assert!(!is_square(&f3.from_i64(2)).unwrap());
        assert!(is_square(&f7.from_i64(2)).unwrap());
        assert!(is_square(&q("4/9")).unwrap());
        assert!(!is_square(&q("2")).unwrap());
        assert!(!is_square(&q("-1")).unwrap());
        assert_eq!(is_square(&q("0")), Err(Error::ZeroInput));
        let qi = FieldSpec::GaussianRational;
        assert!(is_square(&qi.from_i64(-1)).unwrap());
        // 2i = (1+i)²
        assert!(is_square(&qi.parse_scalar("2i").unwrap()).unwrap());
        assert!(!is_square(&qi.from_i64(3)).unwrap());
        assert!(!is_square(&qi.parse_scalar("1+i").unwrap()).unwrap());
    }

    #[test]
    fn square_class_counts() {
        assert_eq!(FieldSpec::prime(3).unwrap().square_class_count(), Cardinality::Finite(2));
        assert_eq!(FieldSpec::prime(7).unwrap().square_class_count(), Cardinality::Finite(2));
        assert_eq!(FieldSpec::Rational.square_class_count(), Cardinality::Infinite);
        assert_eq!(FieldSpec::GaussianRational.square_class_count(), Cardinality::Infinite);
    }

    #[test]
    fn nonzero_square_count_by_exhaustion() {
        for p in (3..=101).filter(|&p| is_prime(p)) {
            let f = FieldSpec::prime(p).unwrap();
            let squares: std::collections::BTreeSet<u64> = (1..p).map(|x| x * x % p).collect();
            assert_eq!(squares.len() as u64, (p - 1) / 2);
            for x in f.elements().unwrap().into_iter().skip(1) {
                let v = match x {
                    Scalar::Prime { value, .. } => value,
                    _ => unreachable!(),
                };
                assert_eq!(is_square(&x).unwrap(), squares.contains(&v), "p={p} x={v}");
            }
        }
    }

    #[test]
    fn text_format() {
        let s: Scalar = "3/4+1/2i".parse().unwrap();
        assert_eq!(s.field(), FieldSpec::GaussianRational);
        assert_eq!(s.to_string(), "3/4+1/2i");
        let m: Scalar = "5 mod 7".parse().unwrap();
        assert_eq!(m, FieldSpec::Prime(7).from_i64(5));
        assert_eq!(m.to_string(), "5 mod 7");
        assert_eq!(m.literal(), "5");
        for text in ["i", "-i", "1-i", "-2/3i", "7", "0"] {
            let s: Scalar = FieldSpec::GaussianRational.parse_scalar(text).unwrap();
            assert_eq!(FieldSpec::GaussianRational.parse_scalar(&s.to_string()).unwrap(), s);
        }
        assert_eq!(
            FieldSpec::GaussianRational.parse_scalar("3/4").unwrap(),
            FieldSpec::GaussianRational.from_rational(&BigRational::new(3.into(), 4.into())).unwrap()
        );
        assert!(FieldSpec::Rational.parse_scalar("2i").is_err());
        assert!(FieldSpec::Prime(7).parse_scalar("1 mod 5").is_err());
    }

    #[test]
    fn field_spec_text() {
        for f in [FieldSpec::Rational, FieldSpec::GaussianRational, FieldSpec::Prime(13)] {
            assert_eq!(f.to_string().parse::<FieldSpec>().unwrap(), f);
        }
    }
}
