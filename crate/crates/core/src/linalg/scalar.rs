use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinalgError;

/// The base field of every structure in the crate: either the rationals or a
/// prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        // products of two residues must fit in a u64
        if p < (1 << 31) && is_prime(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(LinalgError::NotPrime(p))
        }
    }

    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: 0,
                modulus: *p,
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    /// `num / den` in this field; `None` when `den` vanishes in the field.
    pub fn ratio(&self, num: i64, den: i64) -> Option<Scalar> {
        let d = self.from_i64(den);
        d.inverse().map(|inv| &self.from_i64(num) * &inv)
    }

    pub fn residue(&self, value: u64) -> Scalar {
        match self {
            FieldSpec::Rationals => self.from_i64(value as i64),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: value % p,
                modulus: *p,
            },
        }
    }

    /// All elements of a finite field in canonical order `0, 1, ..., p-1`.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some((0..*p).map(|v| self.residue(v)).collect()),
        }
    }

    pub fn zeros(&self, n: usize) -> Vec<Scalar> {
        vec![self.zero(); n]
    }

    /// Standard basis vector `e_i` of length `n`.
    pub fn unit_vector(&self, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = self.zeros(n);
        v[i] = self.one();
        v
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, LinalgError> {
        Scalar::parse(s, *self)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        match t {
            "Q" | "QQ" | "rationals" | "Rationals" => return Ok(FieldSpec::Rationals),
            _ => {}
        }
        let digits = t
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("F_"))
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix("GF"))
            .ok_or_else(|| LinalgError::Parse(format!("unknown field `{s}`")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| LinalgError::Parse(format!("unknown field `{s}`")))?;
        FieldSpec::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

pub(crate) fn mod_inv(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(mod_pow(a, p - 2, p))
    }
}

/// An exact field element. Rationals are kept in lowest terms with a positive
/// denominator; residues are canonical representatives in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => (!q.is_zero()).then(|| Scalar::Rational(q.recip())),
            Scalar::Residue { value, modulus } => {
                mod_inv(*value, *modulus).map(|v| Scalar::Residue {
                    value: v,
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// Canonical residue, if this is a prime-field element.
    pub fn residue_value(&self) -> Option<u64> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            Scalar::Rational(q) => {
                q.denom().is_positive() && num_integer::Integer::gcd(q.numer(), q.denom()).is_one()
            }
            Scalar::Residue { value, modulus } => value < modulus,
        }
    }

    pub fn parse(s: &str, field: FieldSpec) -> Result<Scalar, LinalgError> {
        let t = s.trim();
        let bad = || LinalgError::Parse(format!("cannot parse scalar `{s}` over {field}"));
        match field {
            FieldSpec::Rationals => {
                if t.contains("mod") {
                    return Err(bad());
                }
                let q = match t.split_once('/') {
                    Some((n, d)) => {
                        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                        if d.is_zero() {
                            return Err(bad());
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(t.parse().map_err(|_| bad())?),
                };
                Ok(Scalar::Rational(q))
            }
            FieldSpec::Prime(p) => {
                let (v, m) = match t.split_once("mod") {
                    Some((v, m)) => (v.trim(), Some(m.trim())),
                    None => (t, None),
                };
                if let Some(m) = m {
                    let m: u64 = m.parse().map_err(|_| bad())?;
                    if m != p {
                        return Err(LinalgError::FieldMismatch {
                            expected: field,
                            found: FieldSpec::Prime(m),
                        });
                    }
                }
                let v: i64 = v.parse().map_err(|_| bad())?;
                Ok(field.from_i64(v))
            }
        }
    }

    fn expect_same(&self, other: &Scalar) -> u64 {
        match (self, other) {
            (Scalar::Residue { modulus: a, .. }, Scalar::Residue { modulus: b, .. }) if a == b => {
                *a
            }
            _ => panic!("field mismatch: {} vs {}", self.field(), other.field()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, .. }, Scalar::Residue { value: b, .. }) => {
                let p = self.expect_same(rhs);
                Scalar::Residue {
                    value: (a + b) % p,
                    modulus: p,
                }
            }
            _ => panic!("field mismatch: {} vs {}", self.field(), rhs.field()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, .. }, Scalar::Residue { value: b, .. }) => {
                let p = self.expect_same(rhs);
                Scalar::Residue {
                    value: (a + p - b) % p,
                    modulus: p,
                }
            }
            _ => panic!("field mismatch: {} vs {}", self.field(), rhs.field()),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, .. }, Scalar::Residue { value: b, .. }) => {
                let p = self.expect_same(rhs);
                Scalar::Residue {
                    value: ((*a as u128 * *b as u128) % p as u128) as u64,
                    modulus: p,
                }
            }
            _ => panic!("field mismatch: {} vs {}", self.field(), rhs.field()),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &'a Scalar) -> Scalar {
        let inv = rhs.inverse().expect("division by zero");
        self * &inv
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
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

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (
                Scalar::Residue { value, modulus },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if modulus == q => {
                *value = (*value + b) % *modulus;
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            _ => panic!("field mismatch: {} vs {}", self.field(), rhs.field()),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (
                Scalar::Residue { value, modulus },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if modulus == q => {
                *value = (*value + *modulus - b) % *modulus;
            }
            (Scalar::Rational(a), Scalar::Rational(b)) => *a -= b,
            _ => panic!("field mismatch: {} vs {}", self.field(), rhs.field()),
        }
    }
}

impl Scalar {
    /// `self += a * b`, the inner loop of every contraction in the crate.
    pub fn add_product(&mut self, a: &Scalar, b: &Scalar) {
        match (&mut *self, a, b) {
            (
                Scalar::Residue { value, modulus },
                Scalar::Residue { value: x, .. },
                Scalar::Residue { value: y, .. },
            ) => {
                let p = *modulus as u128;
                *value = ((*value as u128 + *x as u128 * *y as u128) % p) as u64;
            }
            (Scalar::Rational(acc), Scalar::Rational(x), Scalar::Rational(y)) => {
                if !x.is_zero() && !y.is_zero() {
                    *acc += x * y;
                }
            }
            _ => panic!("field mismatch in add_product"),
        }
    }
}
