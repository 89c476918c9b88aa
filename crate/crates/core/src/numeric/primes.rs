//! Small-prime utilities: sieving and Legendre symbols.

/// All primes ≤ `bound`, ascending (sieve of Eratosthenes).
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        let mut q = p * p;
        while q <= n {
            composite[q] = true;
            q += p;
        }
    }
    primes
}

/// Legendre symbol (a | p) for an odd prime p, via Euler's criterion:
/// a^((p−1)/2) mod p, mapped to {−1, 0, 1}.
pub fn legendre(a: i64, p: u64) -> i32 {
    debug_assert!(p > 2 && p % 2 == 1, "legendre needs an odd prime");
    let a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let e = powmod(a, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}
