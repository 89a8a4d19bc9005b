//! Finite fields `GF(p^a)` in a polynomial basis, as needed by the affine
//! and linear group constructors.

use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};

/// Defining polynomials for the non-prime fields, lowest coefficient first
/// and without the leading 1. These are the Conway polynomials.
const POLYNOMIALS: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 1, 1, 0]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (7, 2, &[3, 6]),
    (11, 2, &[2, 7]),
];

/// Field elements are integers `0..q` whose base-`p` digits are the
/// coordinates in the basis `1, x, …, x^(a-1)`.
#[derive(Clone, Debug)]
pub struct Gf {
    p: u32,
    a: u32,
    q: u32,
    poly: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Gf {
    pub fn new(q: u32) -> Result<Gf> {
        let f = factorize(q as u64);
        if f.len() != 1 {
            return Err(Error::InvalidSpec(format!("{q} is not a prime power")));
        }
        let (p, a) = (f[0].0 as u32, f[0].1 as u32);
        let poly = if a == 1 {
            Vec::new()
        } else {
            POLYNOMIALS
                .iter()
                .find(|&&(pp, aa, _)| pp == p && aa == a)
                .map(|&(_, _, c)| c.to_vec())
                .ok_or_else(|| Error::InvalidSpec(format!("no defining polynomial for GF({q})")))?
        };
        let mut field = Gf {
            p,
            a,
            q,
            poly,
            exp: Vec::new(),
            log: Vec::new(),
        };
        // A primitive element exists only if the polynomial is irreducible.
        let g = (2..q.max(2))
            .chain(std::iter::once(1))
            .find(|&g| field.slow_order(g) == q - 1)
            .ok_or_else(|| Error::InvalidSpec(format!("defining polynomial for GF({q}) is reducible")))?;
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0; q as usize];
        let mut x = 1;
        for i in 0..q - 1 {
            exp.push(x);
            log[x as usize] = i;
            x = field.slow_mul(x, g);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.a
    }

    /// Defining polynomial, lowest coefficient first, monic.
    pub fn polynomial(&self) -> Vec<u32> {
        let mut c = self.poly.clone();
        if self.a == 1 {
            c = vec![0];
        }
        c.push(1);
        c
    }

    fn digits(&self, mut x: u32) -> Vec<u32> {
        (0..self.a)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn from_digits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        if self.a == 1 {
            return (x + y) % self.p;
        }
        let (dx, dy) = (self.digits(x), self.digits(y));
        let s: Vec<u32> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % self.p).collect();
        self.from_digits(&s)
    }

    pub fn neg(&self, x: u32) -> u32 {
        let d: Vec<u32> = self.digits(x).iter().map(|&c| (self.p - c) % self.p).collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    fn slow_mul(&self, x: u32, y: u32) -> u32 {
        if self.a == 1 {
            return ((x as u64 * y as u64) % self.p as u64) as u32;
        }
        let a = self.a as usize;
        let (dx, dy) = (self.digits(x), self.digits(y));
        let mut prod = vec![0u32; 2 * a - 1];
        for (i, &u) in dx.iter().enumerate() {
            for (j, &v) in dy.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        // x^a = -Σ poly[i] x^i
        for k in (a..prod.len()).rev() {
            let c = prod[k];
            if c != 0 {
                prod[k] = 0;
                for (i, &pc) in self.poly.iter().enumerate() {
                    let t = (c * pc) % self.p;
                    prod[k - a + i] = (prod[k - a + i] + self.p - t) % self.p;
                }
            }
        }
        self.from_digits(&prod[..a])
    }

    fn slow_order(&self, g: u32) -> u32 {
        if g == 0 {
            return 0;
        }
        let mut x = g;
        for k in 1..self.q {
            if x == 1 {
                return k;
            }
            x = self.slow_mul(x, g);
        }
        0
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if x == 0 || y == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[x as usize] + self.log[y as usize]) % n) as usize]
    }

    pub fn inv(&self, x: u32) -> u32 {
        assert!(x != 0, "zero has no inverse");
        let n = self.q - 1;
        self.exp[((n - self.log[x as usize]) % n) as usize]
    }

    pub fn pow(&self, x: u32, e: u64) -> u32 {
        if x == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[x as usize] as u64 * (e % n)) % n) as usize]
    }

    /// The generator of the multiplicative group used for the log tables.
    pub fn primitive(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }

    pub fn is_prime_field(&self) -> bool {
        is_prime(self.q as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_arithmetic() {
        let f = Gf::new(4).unwrap();
        // x·x = x + 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 3), 1);
        assert_eq!(f.inv(2), 3);
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Gf::new(12).is_err());
        assert!(Gf::new(256).is_err());
    }
}
