//! Prime fields GF(p).
//!
//! Scalars carry their modulus so that values from different fields can never
//! be combined silently. GF(2) additionally has a one-bit representation,
//! [`Gf2`], used by the packed dense backend.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use crate::error::{Error, Result};

/// A prime modulus. Construction checks primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec(u32);

impl FieldSpec {
    /// The field of booleans.
    pub const GF2: FieldSpec = FieldSpec(2);

    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_gf2(self) -> bool {
        self.0 == 2
    }

    pub fn zero(self) -> Scalar {
        Scalar { value: 0, field: self }
    }

    pub fn one(self) -> Scalar {
        Scalar { value: 1, field: self }
    }

    /// The scalar `value mod p`.
    pub fn scalar(self, value: u64) -> Scalar {
        Scalar {
            value: (value % u64::from(self.0)) as u32,
            field: self,
        }
    }

    /// All `p` elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = Scalar> {
        (0..self.0).map(move |value| Scalar { value, field: self })
    }

    pub(crate) fn check_same(self, other: FieldSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::MixedFields {
                left: self.0,
                right: other.0,
            })
        }
    }

    // Raw arithmetic on residues already reduced mod p.
    #[inline]
    pub(crate) fn add_raw(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % u64::from(self.0)) as u32
    }

    #[inline]
    pub(crate) fn mul_raw(self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.0)) as u32
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = u64::from(p);
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: u32,
    field: FieldSpec,
}

// Arithmetic is fallible (mixed fields), so these are inherent methods
// rather than the std operator traits.
#[allow(clippy::should_implement_trait)]
impl Scalar {
    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn field(self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn add(self, other: Scalar) -> Result<Scalar> {
        self.field.check_same(other.field)?;
        Ok(Scalar {
            value: self.field.add_raw(self.value, other.value),
            field: self.field,
        })
    }

    pub fn sub(self, other: Scalar) -> Result<Scalar> {
        self.add(other.neg())
    }

    pub fn mul(self, other: Scalar) -> Result<Scalar> {
        self.field.check_same(other.field)?;
        Ok(Scalar {
            value: self.field.mul_raw(self.value, other.value),
            field: self.field,
        })
    }

    /// Additive inverse. In GF(2) every element is its own inverse.
    pub fn neg(self) -> Scalar {
        let p = self.field.0;
        Scalar {
            value: (p - self.value) % p,
            field: self.field,
        }
    }

    /// Multiplicative inverse via Fermat: a^(p-2).
    pub fn inv(self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(u64::from(self.field.0) - 2))
    }

    pub fn pow(self, mut exp: u64) -> Scalar {
        let mut base = self.value;
        let mut acc = 1 % self.field.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.field.mul_raw(acc, base);
            }
            base = self.field.mul_raw(base, base);
            exp >>= 1;
        }
        Scalar {
            value: acc,
            field: self.field,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// One-bit GF(2) scalar: `+` is exclusive-or, `*` is conjunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Gf2(pub bool);

impl Gf2 {
    pub const ZERO: Gf2 = Gf2(false);
    pub const ONE: Gf2 = Gf2(true);
}

impl Add for Gf2 {
    type Output = Gf2;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 ^ rhs.0)
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Gf2) -> Gf2 {
        Gf2(self.0 & rhs.0)
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    #[inline]
    fn neg(self) -> Gf2 {
        self
    }
}

impl From<Gf2> for Scalar {
    fn from(b: Gf2) -> Scalar {
        FieldSpec::GF2.scalar(u64::from(b.0))
    }
}

impl TryFrom<Scalar> for Gf2 {
    type Error = Error;

    fn try_from(s: Scalar) -> Result<Gf2> {
        if s.field.is_gf2() {
            Ok(Gf2(s.value == 1))
        } else {
            Err(Error::UnsupportedField { p: s.field.modulus() })
        }
    }
}
