use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::Rational;
use super::LinalgError;

/// The ground field: the rationals or a prime field `F_p` with `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    // Fermat; p is prime
    let a = a % p;
    if a == 0 {
        return None;
    }
    Some(mod_pow(a, p - 2, p))
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
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

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// `F_p`, checking that `p` is a prime below `2^31`.
    pub fn prime(p: u64) -> Result<Self, LinalgError> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(LinalgError::NotAPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(Rational::zero()),
            Field::Prime(p) => Scalar::Residue { value: 0, modulus: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(Rational::from_integer(n)),
            Field::Prime(p) => Scalar::Residue { value: n.rem_euclid(*p as i64) as u32, modulus: *p },
        }
    }

    /// Maps a rational into the field; fails over `F_p` when `p` divides the denominator.
    pub fn from_rational(&self, q: &Rational) -> Result<Scalar, LinalgError> {
        match self {
            Field::Rationals => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => q
                .residue(*p)
                .map(|value| Scalar::Residue { value, modulus: *p })
                .ok_or_else(|| LinalgError::NotInField { value: q.to_string(), field: *self }),
        }
    }

    /// Parses `"n"` or `"n/d"`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, LinalgError> {
        let q: Rational = text.parse().map_err(|_| LinalgError::BadLiteral(text.to_string()))?;
        self.from_rational(&q)
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rationals, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Residue { modulus, .. }) => p == modulus,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An element of a [`Field`]. Residues carry their modulus so arithmetic needs no context.
///
/// Mixing elements of different fields is a logic error and panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
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
            Scalar::Rational(q) => q.recip().map(Scalar::Rational),
            Scalar::Residue { value, modulus } => mod_inverse(*value as u64, *modulus as u64)
                .map(|v| Scalar::Residue { value: v as u32, modulus: *modulus }),
        }
    }
}

#[cold]
fn mixed() -> ! {
    panic!("arithmetic between scalars of different fields")
}

macro_rules! residue_op {
    ($a:expr, $b:expr, $p:expr, $q:expr, $f:expr) => {{
        if $p != $q {
            mixed()
        }
        let f: fn(u64, u64, u64) -> u64 = $f;
        Scalar::Residue { value: f($a as u64, $b as u64, $p as u64) as u32, modulus: $p }
    }};
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                residue_op!(*a, *b, *p, *q, |a, b, p| (a + b) % p)
            }
            _ => mixed(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                residue_op!(*a, *b, *p, *q, |a, b, p| (a + p - b) % p)
            }
            _ => mixed(),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) => {
                residue_op!(*a, *b, *p, *q, |a, b, p| a * b % p)
            }
            _ => mixed(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => {
                Scalar::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => q.fmt(f),
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}
