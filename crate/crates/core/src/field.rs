//! Arithmetic in `Z_q` for the Mersenne prime `q = 2^61 - 1`.

use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

/// The modulus `2^61 - 1`.
pub const MODULUS: u64 = (1 << 61) - 1;

/// An element of `Z_q`, always reduced to `0..q`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fp(u64);

impl Fp {
    pub const ZERO: Fp = Fp(0);
    pub const ONE: Fp = Fp(1);

    pub const fn new(x: u64) -> Fp {
        Fp(x % MODULUS)
    }

    /// Maps a signed integer to its residue.
    pub fn from_i64(x: i64) -> Fp {
        let r = x.rem_euclid(MODULUS as i64);
        Fp(r as u64)
    }

    pub const fn value(self) -> u64 {
        self.0
    }

    fn reduce(x: u128) -> u64 {
        let mut s = (x & MODULUS as u128) as u64 + (x >> 61) as u64;
        while s >= MODULUS {
            s -= MODULUS;
        }
        s
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(self) -> Option<Fp> {
        (self.0 != 0).then(|| self.pow(MODULUS - 2))
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let s = self.0 + rhs.0;
        Fp(if s >= MODULUS { s - MODULUS } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + MODULUS - rhs.0 })
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp::ZERO - self
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        Fp(Fp::reduce(self.0 as u128 * rhs.0 as u128))
    }
}

impl AddAssign for Fp {
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_arithmetic() {
        assert_eq!(Fp::new(MODULUS), Fp::ZERO);
        assert_eq!(Fp::from_i64(-1), Fp::new(MODULUS - 1));
        assert_eq!(Fp::new(3) * Fp::new(5), Fp::new(15));
        assert_eq!(Fp::new(2).pow(61), Fp::ONE);
        assert_eq!(Fp::ZERO.inverse(), None);
    }

    proptest! {
        #[test]
        fn matches_u128_reference(a in 0..MODULUS, b in 0..MODULUS) {
            let q = MODULUS as u128;
            let (x, y) = (Fp::new(a), Fp::new(b));
            prop_assert_eq!((x * y).value() as u128, (a as u128 * b as u128) % q);
            prop_assert_eq!((x + y).value() as u128, (a as u128 + b as u128) % q);
            prop_assert_eq!((x - y).value() as u128, (a as u128 + q - b as u128) % q);
        }

        #[test]
        fn inverse_roundtrip(a in 1..MODULUS) {
            let x = Fp::new(a);
            prop_assert_eq!(x * x.inverse().unwrap(), Fp::ONE);
        }
    }
}
