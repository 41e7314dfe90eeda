use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prime field `F_p`.
///
/// Residues are stored as `u32` in `[0, p)`. The characteristic is capped at
/// `2^16` so that a product of two residues never overflows a `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fp {
    p: u32,
}

pub const MAX_CHARACTERISTIC: u32 = 1 << 16;

impl Fp {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || p >= MAX_CHARACTERISTIC || !is_prime(p) {
            return Err(Error::InvalidField(p));
        }
        Ok(Fp { p })
    }

    /// `F_2`, the default field.
    pub const fn two() -> Self {
        Fp { p: 2 }
    }

    #[inline]
    pub fn characteristic(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(self, mut a: u32, mut e: u32) -> u32 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Reduce an arbitrary integer into `[0, p)`.
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }
}

impl Default for Fp {
    fn default() -> Self {
        Fp::two()
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_primes() {
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(0).is_err());
        assert!(Fp::new(65537).is_err());
        assert!(Fp::new(7).is_ok());
    }

    #[test]
    fn inverses() {
        for p in [2u32, 3, 5, 7, 101] {
            let f = Fp::new(p).unwrap();
            for a in 1..p {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn reduce_negative() {
        let f = Fp::new(3).unwrap();
        assert_eq!(f.reduce(-1), 2);
        assert_eq!(f.reduce(-6), 0);
        assert_eq!(f.reduce(7), 1);
    }
}
