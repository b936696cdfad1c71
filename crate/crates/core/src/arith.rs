//! Integer number theory: Möbius, Euler phi, factorization, checked powers.
//!
//! Factorization is trial division up to a small bound followed by Brent's
//! variant of Pollard rho with a fixed seed schedule, so results are
//! reproducible. Primality is deterministic Miller-Rabin over 64-bit inputs.

use crate::error::{Error, Result};

const LIMIT: u128 = 1 << 63;
const TRIAL_BOUND: u64 = 1 << 12;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Overflow)
}

/// `base^exp` if it stays below 2^63.
pub fn checked_pow(base: u64, exp: u64) -> Result<u64> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc *= base as u128;
        if acc >= LIMIT {
            return Err(Error::Overflow);
        }
    }
    Ok(acc as u64)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality by trial division, as used when constructing prime fields.
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Brent's cycle finding; `c` comes from the fixed seed schedule.
fn rho(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
    let mut q = 1u64;
    let mut r = 1u64;
    let mut ys = 2u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..(r - k).min(128) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += 128;
        }
        r *= 2;
        if r > 1 << 24 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    for c in 1u64.. {
        if let Some(d) = rho(n, c) {
            split_large(d, out);
            split_large(n / d, out);
            return;
        }
    }
}

/// Prime factorization of `n`, sorted by prime.
pub fn factor_integer(n: u128) -> Result<Vec<(u64, u32)>> {
    if n >= LIMIT {
        return Err(Error::FactorizationOverflow(n));
    }
    if n == 0 {
        return Err(Error::DomainBound("cannot factor 0".into()));
    }
    let mut n = n as u64;
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d < TRIAL_BOUND && d * d <= n {
        while n.is_multiple_of(d) {
            primes.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        if n < d * d {
            primes.push(n);
        } else {
            split_large(n, &mut primes);
        }
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius(0) undefined");
    let fac = factor_integer(n as u128).expect("u64 below 2^63");
    if fac.iter().any(|&(_, e)| e > 1) {
        0
    } else if fac.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::DomainBound("euler_phi(0)".into()));
    }
    let mut phi = n;
    for (p, _) in factor_integer(n as u128)? {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Splits a prime power `q` into `(p, k)` with `q = p^k`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let fac = factor_integer(q as u128).ok()?;
    match fac.as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}
