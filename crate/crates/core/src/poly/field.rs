use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::PolyError;

/// A prime field `F_p` with `3 < p < 2^31`, chosen at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const DEFAULT_PRIME: u32 = 32003;

    pub fn new(p: u32) -> Result<Self, PolyError> {
        if p <= 3 || p >= (1 << 31) || !is_prime(p) {
            return Err(PolyError::BadPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse by Fermat. `a` must be nonzero.
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn pow(&self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1u32;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    pub fn elem(&self, v: i64) -> Fp {
        Fp {
            value: self.reduce(v),
            field: *self,
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self {
            p: Self::DEFAULT_PRIME,
        }
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = PolyError;
    fn try_from(p: u32) -> Result<Self, Self::Error> {
        Self::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n as u64 {
        if (n as u64).is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// A field scalar: canonical residue in `[0, p)` tagged with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    field: PrimeField,
}

impl Fp {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn inv(&self) -> Option<Fp> {
        (self.value != 0).then(|| Fp {
            value: self.field.inv(self.value),
            field: self.field,
        })
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.signed(self.value))
    }
}

macro_rules! fp_binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl $tr for Fp {
            type Output = Fp;
            fn $method(self, rhs: Fp) -> Fp {
                debug_assert_eq!(self.field, rhs.field, "mixed prime fields");
                Fp {
                    value: self.field.$op(self.value, rhs.value),
                    field: self.field,
                }
            }
        }
    };
}

fp_binop!(Add, add, add);
fp_binop!(Sub, sub, sub);
fp_binop!(Mul, mul, mul);

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        let inv = rhs.inv().expect("division by zero in prime field");
        self * inv
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp {
            value: self.field.neg(self.value),
            field: self.field,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_small_and_composite() {
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(3).is_err());
        assert!(PrimeField::new(32001).is_err());
        assert!(PrimeField::new(5).is_ok());
        assert!(PrimeField::new(32003).is_ok());
    }

    #[test]
    fn signed_representative() {
        let f = PrimeField::default();
        assert_eq!(f.signed(f.reduce(-2)), -2);
        assert_eq!(f.signed(4), 4);
    }

    proptest! {
        #[test]
        fn field_axioms(a in 0u32..32003, b in 0u32..32003, c in 0u32..32003) {
            let f = PrimeField::default();
            let (a, b, c) = (f.elem(a as i64), f.elem(b as i64), f.elem(c as i64));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!((a - b) + b, a);
            prop_assert_eq!(a + (-a), f.elem(0));
            if !a.is_zero() {
                prop_assert_eq!(a * a.inv().unwrap(), f.elem(1));
            }
        }
    }
}
