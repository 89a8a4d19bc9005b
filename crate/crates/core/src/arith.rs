//! Small integer helpers shared by the modular and cyclotomic code.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn small_primes_dividing(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: u64, p: u64) -> u64 {
    let mut m = n;
    let mut out = 1;
    while m % p == 0 {
        m /= p;
        out *= p;
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime `p`.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "no inverse of 0 mod {p}");
    pow_mod(a, p - 2, p)
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
