//! Exact integer number theory at desk scale.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn product(&self) -> u128 {
        self.factors.iter().map(|&(p, e)| (p as u128).pow(e)).product()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// `Some((p, k))` when the factored number is p^k with k ≥ 1.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [(p, e)] => Some((*p, *e)),
            _ => None,
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// All primes ≤ `limit` (sieve of Eratosthenes).
pub fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i.saturating_mul(i);
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Trial-division factorization; `factorize(1)` is empty.
pub fn factorize(n: u64) -> Factorization {
    assert!(n >= 1, "factorize needs n >= 1");
    let mut factors = Vec::new();
    let mut n = n;
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut d = 5u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        push(d, &mut n);
        push(d + 2, &mut n);
        d += 6;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Factorization { factors }
}

/// ν_p(n), the exponent of p in n.
pub fn padic_val(p: u64, n: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::Precondition("p-adic valuation of 0".into()));
    }
    let mut n = n;
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    Ok(e)
}

pub fn mod_pow(base: u64, exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut result: u128 = 1;
    let mut b = base as u128 % m;
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    result as u64
}

/// Whether `g` generates ℤ_p^× for the prime `p`.
pub fn is_primitive_root(g: u64, p: u64) -> Result<bool> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let g = g % p;
    if g == 0 {
        return Ok(false);
    }
    if p == 2 {
        return Ok(g == 1);
    }
    let phi = p - 1;
    Ok(factorize(phi).primes().all(|q| mod_pow(g, phi / q, p) != 1))
}

/// The smallest primitive root of an odd prime.
pub fn primitive_root(p: u64) -> Result<u64> {
    if p == 2 || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    for g in 2..p {
        if is_primitive_root(g, p)? {
            return Ok(g);
        }
    }
    Err(Error::Internal(format!("no primitive root found for {p}")))
}

/// The canonical base used for classification: 1 for p = 2, otherwise the smallest primitive root.
pub fn canonical_root(p: u64) -> Result<u64> {
    if p == 2 {
        Ok(1)
    } else {
        primitive_root(p)
    }
}

/// The unique e in [0, p−1) with g^e ≡ a (mod p), by enumerating powers.
pub fn discrete_log(g: u64, a: u64, p: u64) -> Result<u64> {
    if !is_primitive_root(g, p)? {
        return Err(Error::NotPrimitiveRoot { g, p });
    }
    let a = a % p;
    if a == 0 {
        return Err(Error::NotCoprime { a, m: p });
    }
    let g = g % p;
    let mut x = 1u64;
    for e in 0..p - 1 {
        if x == a {
            return Ok(e);
        }
        x = ((x as u128 * g as u128) % p as u128) as u64;
    }
    Err(Error::Internal(format!("discrete log of {a} base {g} mod {p} not found")))
}

/// The table of log_g(i) for i = 1..p−1 (index 0 unused and set to 0).
pub fn log_table(g: u64, p: u64) -> Result<Vec<u64>> {
    if !is_primitive_root(g, p)? {
        return Err(Error::NotPrimitiveRoot { g, p });
    }
    let mut table = vec![0u64; p as usize];
    let mut x = 1u64;
    for e in 0..p - 1 {
        table[x as usize] = e;
        x = ((x as u128 * (g % p) as u128) % p as u128) as u64;
    }
    Ok(table)
}

/// ord_b(r): the least m ≥ 1 with r^m ≡ 1 (mod b).
pub fn multiplicative_order(r: u64, b: u64) -> Result<u64> {
    if b == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    if b == 1 {
        return Ok(1);
    }
    if r.gcd(&b) != 1 {
        return Err(Error::NotCoprime { a: r, m: b });
    }
    let mut x = r % b;
    let mut m = 1u64;
    while x != 1 {
        x = ((x as u128 * r as u128) % b as u128) as u64;
        m += 1;
    }
    Ok(m)
}

/// Splits b = b1·b2 where b1 collects the prime powers of b whose prime does not divide r.
pub fn coprime_split(b: u64, r: u64) -> (u64, u64) {
    let mut b1 = 1u64;
    for (p, e) in factorize(b).factors {
        if !r.is_multiple_of(p) {
            b1 *= p.pow(e);
        }
    }
    (b1, b / b1)
}
