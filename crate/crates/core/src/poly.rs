//! Rational-root extraction for exact polynomials of small degree.
//!
//! The route is: clear denominators, split off zero roots, reduce to the
//! squarefree part with a polynomial gcd, and transform y = lc·x so that all
//! remaining rational roots become integer roots of a monic polynomial. Those
//! are recovered by Hensel lifting: pick a prime p where the polynomial stays
//! squarefree mod p, read off its roots mod p, and Newton-lift each residue
//! until the modulus exceeds twice the Cauchy root bound; the symmetric lift
//! is then checked exactly. Every reported root is verified by evaluation, so
//! the only failure mode this construction has to exclude — and does, via the
//! squarefree reduction — is a missed root.

use crate::numeric::{BigInt, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// All distinct rational roots of the polynomial with the given coefficients
/// (ascending degree), in increasing order. Panics on the zero polynomial.
pub fn rational_roots(coeffs: &[Rat]) -> Vec<Rat> {
    let ints = clear_denominators(coeffs);
    assert!(!ints.is_empty(), "rational_roots: zero polynomial");

    let mut roots: Vec<Rat> = Vec::new();
    // x = 0 divides out first.
    let mut ints = ints;
    if ints[0].is_zero() {
        roots.push(Rat::zero());
        while ints[0].is_zero() {
            ints.remove(0);
        }
    }
    let sf = squarefree_part(&ints);
    match sf.len() - 1 {
        0 => {}
        1 => {
            roots.push(Rat::new(-&sf[0], sf[1].clone()).expect("nonzero lead"));
        }
        2 => roots.extend(quadratic_roots(&sf)),
        _ => roots.extend(lifted_roots(&sf)),
    }
    roots.sort();
    roots.dedup();
    debug_assert!(roots.iter().all(|r| eval_rat(coeffs, r).is_zero()));
    roots
}

/// Horner evaluation of a rational-coefficient polynomial.
pub fn eval_rat(coeffs: &[Rat], x: &Rat) -> Rat {
    let mut acc = Rat::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Scales to integer coefficients and divides out the content; trims leading
/// zeros so the last coefficient is nonzero (empty = zero polynomial).
fn clear_denominators(coeffs: &[Rat]) -> Vec<BigInt> {
    let mut end = coeffs.len();
    while end > 0 && coeffs[end - 1].is_zero() {
        end -= 1;
    }
    let coeffs = &coeffs[..end];
    let mut lcm = BigInt::one();
    for c in coeffs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    let mut content = BigInt::zero();
    for c in &ints {
        content = content.gcd(c);
    }
    if content.is_zero() || content.is_one() {
        return ints;
    }
    ints.iter().map(|c| c / &content).collect()
}

fn eval_int(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// The squarefree part P / gcd(P, P′) of a nonzero integer polynomial,
/// again with integer coprime coefficients.
fn squarefree_part(ints: &[BigInt]) -> Vec<BigInt> {
    let p: Vec<Rat> = ints.iter().map(|c| Rat::from(c.clone())).collect();
    let dp = derivative(&p);
    if dp.is_empty() {
        return ints.to_vec(); // constant; no roots either way
    }
    let g = poly_gcd(&p, &dp);
    let (q, r) = poly_div_rem(&p, &g);
    debug_assert!(r.is_empty(), "gcd must divide");
    clear_denominators(&q)
}

fn derivative(p: &[Rat]) -> Vec<Rat> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * &Rat::from(i as i64))
        .collect()
}

/// Monic gcd by the Euclidean chain; inputs trimmed, output trimmed & monic.
fn poly_gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = poly_div_rem(&a, &b);
        a = b;
        b = r;
    }
    let lead = a.last().expect("gcd of zero polynomials").clone();
    a.iter().map(|c| c / &lead).collect()
}

/// Long division; remainder has degree < deg(divisor). Panics on zero divisor.
fn poly_div_rem(num: &[Rat], den: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let den = trim(den.to_vec());
    assert!(!den.is_empty(), "polynomial division by zero");
    let mut rem = trim(num.to_vec());
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - den.len() + 1];
    let lead = den.last().unwrap();
    while rem.len() >= den.len() {
        let k = rem.len() - den.len();
        let q = rem.last().unwrap() / lead;
        for (i, d) in den.iter().enumerate() {
            let v = &rem[k + i] - &(&q * d);
            rem[k + i] = v;
        }
        quot[k] = q;
        rem = trim(rem);
    }
    (quot, rem)
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.last().is_some_and(Rat::is_zero) {
        p.pop();
    }
    p
}

fn quadratic_roots(sf: &[BigInt]) -> Vec<Rat> {
    let (c, b, a) = (&sf[0], &sf[1], &sf[2]);
    let disc = b * b - BigInt::from(4) * a * c;
    if disc.is_negative() {
        return Vec::new();
    }
    let Some(s) = crate::numeric::int_sqrt(&disc) else {
        return Vec::new();
    };
    let two_a = BigInt::from(2) * a;
    [&s - b, -b - &s]
        .into_iter()
        .map(|n| Rat::new(n, two_a.clone()).expect("a nonzero"))
        .collect()
}

/// Integer-root recovery for a squarefree integer polynomial of degree ≥ 1
/// after the monic transform y = lc·x; returns the x-roots.
fn lifted_roots(sf: &[BigInt]) -> Vec<Rat> {
    let n = sf.len() - 1;
    let lc = sf[n].clone();
    // q(y) = y^n + Σ sf[i]·lc^(n-1-i) y^i  has roots y = lc·x.
    let mut monic = vec![BigInt::zero(); n + 1];
    monic[n] = BigInt::one();
    for i in 0..n {
        monic[i] = &sf[i] * lc.pow((n - 1 - i) as u32);
    }
    let bound = cauchy_bound(&monic);
    let p = pick_prime(&monic);
    let mut roots = Vec::new();
    for r in roots_mod_p(&monic, p) {
        if let Some(y) = hensel_lift(&monic, p, r, &bound) {
            if eval_int(&monic, &y).is_zero() {
                roots.push(Rat::new(y, lc.clone()).expect("lc nonzero"));
            }
        }
    }
    roots
}

/// For a monic integer polynomial, every root y satisfies |y| ≤ 1 + max|cᵢ|.
fn cauchy_bound(monic: &[BigInt]) -> BigInt {
    let mut m = BigInt::zero();
    for c in &monic[..monic.len() - 1] {
        let a = c.abs();
        if a > m {
            m = a;
        }
    }
    m + 1
}

/// First odd prime where the polynomial stays squarefree mod p. Such a prime
/// exists because the discriminant of a squarefree polynomial is nonzero.
fn pick_prime(monic: &[BigInt]) -> u64 {
    let mut p: u64 = 3;
    loop {
        if is_small_prime(p) && squarefree_mod_p(monic, p) {
            return p;
        }
        p += 2;
    }
}

fn is_small_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn reduce_mod_p(poly: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = poly
        .iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            u64::try_from(r).expect("reduced below p")
        })
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn squarefree_mod_p(monic: &[BigInt], p: u64) -> bool {
    let a = reduce_mod_p(monic, p);
    if a.len() != monic.len() {
        return false; // monic lead can't vanish, but stay defensive
    }
    let da: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| (i as u64 % p) * c % p)
        .collect();
    gcd_mod_p(&a, &da, p).len() == 1
}

fn gcd_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let trim = |mut v: Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let inv = crate::numeric::powmod(*b.last().unwrap(), p - 2, p);
        let mut r = a.clone();
        while r.len() >= b.len() {
            let k = r.len() - b.len();
            let q = *r.last().unwrap() as u128 * inv as u128 % p as u128;
            for (i, c) in b.iter().enumerate() {
                let sub = q * *c as u128 % p as u128;
                r[k + i] = ((r[k + i] as u128 + p as u128 - sub) % p as u128) as u64;
            }
            r = trim(r);
        }
        a = b;
        b = r;
    }
    a // caller only asks whether this is a nonzero constant
}

fn roots_mod_p(monic: &[BigInt], p: u64) -> Vec<u64> {
    let a = reduce_mod_p(monic, p);
    (0..p)
        .filter(|&x| {
            let mut acc: u64 = 0;
            for c in a.iter().rev() {
                acc = (acc as u128 * x as u128 % p as u128) as u64;
                acc = (acc + c) % p;
            }
            acc == 0
        })
        .collect()
}

/// Newton-lifts a simple root mod p until the modulus exceeds 2·bound + 1,
/// then returns the symmetric representative.
fn hensel_lift(monic: &[BigInt], p: u64, r: u64, bound: &BigInt) -> Option<BigInt> {
    let target = BigInt::from(2) * bound + 1;
    let mut modulus = BigInt::from(p);
    let mut y = BigInt::from(r);
    let dcoeffs: Vec<BigInt> = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    while modulus <= target {
        modulus = &modulus * &modulus;
        let fy = eval_int(monic, &y).mod_floor(&modulus);
        let dy = eval_int(&dcoeffs, &y).mod_floor(&modulus);
        let inv = mod_inverse(&dy, &modulus)?;
        y = (&y - fy * inv).mod_floor(&modulus);
    }
    if &y * 2 > modulus {
        y -= &modulus;
    }
    Some(y)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}
