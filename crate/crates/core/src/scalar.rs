//! Exact field elements: arbitrary-precision rationals and prime fields.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Largest prime modulus accepted; keeps products of residues inside `u64`.
pub const MAX_PRIME: u64 = (1 << 32) - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a prime below 2^32")]
    NotPrime(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("mixed-field operands: {0} and {1}")]
    MixedField(Field, Field),
}

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if p <= MAX_PRIME && is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Prime { value: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Prime(p) => Scalar::Prime { value: 1 % p, p },
        }
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Prime {
                value: v.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Prime {
                    value: r.to_u64().expect("residue fits"),
                    p,
                }
            }
        }
    }

    /// `num / den` in this field.
    pub fn from_ratio(self, num: &BigInt, den: &BigInt) -> Result<Scalar, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num.clone(), den.clone()))),
            Field::Prime(_) => {
                let d = self.from_bigint(den);
                self.from_bigint(num).checked_div(&d)
            }
        }
    }

    /// Parses an integer (`"-3"`) or a fraction (`"p/q"`).
    pub fn parse(self, s: &str) -> Result<Scalar, ScalarError> {
        let s = s.trim();
        let bad = || ScalarError::Parse(s.to_string());
        match s.split_once('/') {
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(self.from_bigint(&n))
            }
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                self.from_ratio(&n, &d)
            }
        }
    }
}

/// An exact field element tagged with its field.
///
/// Arithmetic between elements of different fields is a programming error and
/// panics; every public entry point that accepts externally built matrices
/// checks field agreement first and reports [`ScalarError::MixedField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Prime { value, p } => Scalar::Prime {
                value: pow_mod(*value, *p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_same(rhs)?;
        Ok(self * &rhs.inv()?)
    }

    pub fn check_same(&self, rhs: &Scalar) -> Result<(), ScalarError> {
        if self.field() == rhs.field() {
            Ok(())
        } else {
            Err(ScalarError::MixedField(self.field(), rhs.field()))
        }
    }

    /// `self += a * b`.
    pub fn add_product(&mut self, a: &Scalar, b: &Scalar) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if a.is_one() {
            *self += b;
        } else if b.is_one() {
            *self += a;
        } else {
            *self += &(a * b);
        }
    }

    /// Integer numerator and denominator (denominator 1 for prime fields).
    pub fn to_ratio(&self) -> (BigInt, BigInt) {
        match self {
            Scalar::Rational(r) => (r.numer().clone(), r.denom().clone()),
            Scalar::Prime { value, .. } => (BigInt::from(*value), BigInt::one()),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_integer(),
            Scalar::Prime { .. } => true,
        }
    }

    /// Size of the stored representation, used to keep sampled coefficients small.
    pub fn height(&self) -> u64 {
        match self {
            Scalar::Rational(r) => r.numer().abs().bits().max(r.denom().bits()),
            Scalar::Prime { .. } => 0,
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn mixed(a: &Scalar, b: &Scalar) -> ! {
    panic!("mixed-field arithmetic between {} and {}", a.field(), b.field())
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (Scalar::Prime { value, p }, Scalar::Prime { value: v, p: q }) if p == q => {
                *value = (*value + v) % *p;
            }
            _ => mixed(self, rhs),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a -= b,
            (Scalar::Prime { value, p }, Scalar::Prime { value: v, p: q }) if p == q => {
                *value = (*value + *p - v) % *p;
            }
            _ => mixed(self, rhs),
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a *= b,
            (Scalar::Prime { value, p }, Scalar::Prime { value: v, p: q }) if p == q => {
                *value = *value * v % *p;
            }
            _ => mixed(self, rhs),
        }
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value, p }, Scalar::Prime { value: v, p: q }) if p == q => {
                Scalar::Prime {
                    value: value * v % p,
                    p: *p,
                }
            }
            _ => mixed(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
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

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `(-1)^e` as a field element.
pub fn sign(field: Field, exponent: usize) -> Scalar {
    if exponent.is_multiple_of(2) {
        field.one()
    } else {
        -field.one()
    }
}
