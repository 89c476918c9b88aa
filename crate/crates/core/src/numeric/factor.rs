//! Integer factorization under an explicit effort budget.
//!
//! Strategy: trial division by every prime below a fixed bound, then Brent's
//! cycle variant of Pollard rho with a fixed parameter schedule. The whole
//! pipeline is deterministic for a fixed budget; when the budget runs out the
//! unfactored composite part is surfaced as a cofactor instead of being
//! silently dropped.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::primes::primes_up_to;
use super::rat::int_sqrt;

/// Effort knobs for [`factorize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorBudget {
    /// Trial-divide by all primes below this bound.
    pub trial_bound: u64,
    /// Brent-rho iterations allowed per attempt.
    pub rho_iterations: u64,
    /// Rho attempts per stubborn composite, each with the next polynomial
    /// offset c = 1, 2, 3, … in x ↦ x² + c.
    pub rho_attempts: u32,
}

impl Default for FactorBudget {
    fn default() -> FactorBudget {
        FactorBudget {
            trial_bound: 100_000,
            rho_iterations: 1 << 21,
            rho_attempts: 8,
        }
    }
}

/// Outcome of [`factorize`]: sign · Π pᵢ^eᵢ · cofactor reconstructs the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub negative: bool,
    /// Prime factors in ascending order with their exponents.
    pub factors: Vec<(BigInt, u32)>,
    /// 1 when fully factored, otherwise the remaining composite part.
    pub cofactor: BigInt,
    pub complete: bool,
}

impl Factorization {
    /// Number of distinct prime factors; the flag marks a lower bound (an
    /// unfactored cofactor counts once but may hide several primes).
    ///
    /// ω(1) = 0, and the sign is ignored, so ω(-1) = 0 as well.
    pub fn omega(&self) -> (u32, bool) {
        let mut count = self.factors.len() as u32;
        if !self.complete {
            count += 1;
        }
        (count, !self.complete)
    }

    /// Reconstructs the factored integer, sign included.
    pub fn value(&self) -> BigInt {
        let mut v = self.cofactor.clone();
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        if self.negative {
            -v
        } else {
            v
        }
    }
}

/// Factors a nonzero integer. Panics on zero input.
pub fn factorize(n: &BigInt, budget: &FactorBudget) -> Factorization {
    assert!(!n.is_zero(), "factorize: zero input");
    let negative = n.is_negative();
    let mut m = n.abs();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let push = |p: BigInt, factors: &mut Vec<(BigInt, u32)>| {
        match factors.iter_mut().find(|(q, _)| *q == p) {
            Some((_, e)) => *e += 1,
            None => factors.push((p, 1)),
        }
    };

    for p in trial_primes(budget.trial_bound) {
        if m.is_one() {
            break;
        }
        let pb = BigInt::from(p);
        while (&m % &pb).is_zero() {
            m /= &pb;
            push(pb.clone(), &mut factors);
        }
        // No remaining factor below p², so the rest is prime.
        if &pb * &pb > m {
            break;
        }
    }

    let mut cofactor = BigInt::one();
    let mut complete = true;
    let mut stack = vec![m];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            push(m, &mut factors);
        } else if let Some(r) = int_sqrt(&m) {
            stack.push(r.clone());
            stack.push(r);
        } else if let Some(d) = rho_split(&m, budget) {
            stack.push(&m / &d);
            stack.push(d);
        } else {
            cofactor *= m;
            complete = false;
        }
    }

    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Factorization {
        negative,
        factors,
        cofactor,
        complete,
    }
}

const MR_WITNESSES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic below 3317044064679887385961981 (≈ 3.3·10²⁴); fixed-witness
/// Miller–Rabin above.
pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for w in MR_WITNESSES {
        let w = BigInt::from(w);
        if *n == w {
            return true;
        }
        if (n % &w).is_zero() {
            return false;
        }
    }
    // n odd and > 37 from here on.
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().expect("nonzero");
    let d = &n_minus_1 >> s;
    'witness: for w in MR_WITNESSES {
        let mut x = BigInt::from(w).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigInt::from(2u32), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn trial_primes(bound: u64) -> Vec<u64> {
    primes_up_to(bound)
}

/// One nontrivial divisor of an odd composite, or None if the budget is
/// exhausted. Brent's variant with batched gcds; the polynomial offset runs
/// through c = 1, 2, 3, … so the search is deterministic.
fn rho_split(n: &BigInt, budget: &FactorBudget) -> Option<BigInt> {
    if let Some(small) = n.to_u64() {
        return rho_split_u64(small, budget).map(BigInt::from);
    }
    for c in 1..=budget.rho_attempts {
        if let Some(d) = brent_attempt(n, &BigInt::from(c), budget.rho_iterations) {
            return Some(d);
        }
    }
    None
}

fn brent_attempt(n: &BigInt, c: &BigInt, max_iters: u64) -> Option<BigInt> {
    let step = |x: &BigInt| (x * x + c) % n;
    let mut y = BigInt::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigInt::one();
    let mut spent: u64 = 0;
    loop {
        let x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r {
            let ys = y.clone();
            let batch = 128.min(r - k);
            for _ in 0..batch {
                y = step(&y);
                q = (&q * (&x - &y).abs()) % n;
            }
            let g = q.gcd(n);
            if !g.is_one() {
                if g != *n {
                    return Some(g);
                }
                // Batch overshot a factor; replay one step at a time.
                let mut z = ys;
                loop {
                    z = step(&z);
                    let g = (&x - &z).abs().gcd(n);
                    if !g.is_one() {
                        return if g == *n { None } else { Some(g) };
                    }
                }
            }
            k += batch;
            spent += batch;
            if spent >= max_iters {
                return None;
            }
        }
        r *= 2;
    }
}

fn rho_split_u64(n: u64, budget: &FactorBudget) -> Option<u64> {
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let gcd = |mut a: u64, mut b: u64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    for c in 1..=budget.rho_attempts as u64 {
        let step = |x: u64| (mul(x, x) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let mut spent = 0u64;
        let (mut x, mut ys);
        'outer: loop {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r {
                ys = y;
                let batch = 128.min(r - k);
                for _ in 0..batch {
                    y = step(y);
                    q = mul(q, x.abs_diff(y));
                }
                let g = gcd(q, n);
                if g != 1 {
                    if g != n {
                        return Some(g);
                    }
                    let mut z = ys;
                    loop {
                        z = step(z);
                        let g = gcd(x.abs_diff(z), n);
                        if g != 1 {
                            if g == n {
                                break 'outer; // cycle degenerate for this c
                            }
                            return Some(g);
                        }
                    }
                }
                k += batch;
                spent += batch;
                if spent >= budget.rho_iterations {
                    break 'outer;
                }
            }
            r *= 2;
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fz(n: i64) -> Factorization {
        factorize(&BigInt::from(n), &FactorBudget::default())
    }

    #[test]
    fn small_values() {
        let f = fz(1);
        assert!(f.factors.is_empty() && f.complete && !f.negative);
        let f = fz(-1);
        assert!(f.factors.is_empty() && f.complete && f.negative);
        assert_eq!(f.omega(), (0, false));
        let f = fz(-7);
        assert!(f.negative);
        assert_eq!(f.factors, vec![(BigInt::from(7), 1)]);
    }

    #[test]
    fn known_factorizations() {
        // 183456 = 2^5 · 3^2 · 7^2 · 13 and 354025 = 5^2 · 7^2 · 17^2
        let f = fz(183456);
        assert_eq!(
            f.factors,
            [(2, 5), (3, 2), (7, 2), (13, 1)]
                .map(|(p, e)| (BigInt::from(p), e))
                .to_vec()
        );
        assert!(f.complete);
        let f = fz(354025);
        assert_eq!(
            f.factors,
            [(5, 2), (7, 2), (17, 2)]
                .map(|(p, e)| (BigInt::from(p), e))
                .to_vec()
        );
        assert_eq!(f.omega(), (3, false));
    }

    #[test]
    fn value_round_trips() {
        for n in [2i64, 360, -360, 1009, 2 * 3 * 5 * 7 * 11 * 13, -897_473_216] {
            let f = fz(n);
            assert_eq!(f.value(), BigInt::from(n), "n = {n}");
            assert!(f.complete);
        }
    }

    #[test]
    fn rho_splits_semiprimes_beyond_trial_division() {
        // both primes above the default trial bound
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let f = factorize(&(&p * &q), &FactorBudget::default());
        assert_eq!(f.factors, vec![(p, 1), (q, 1)]);
        assert!(f.complete);
    }

    #[test]
    fn big_prime_power_detected() {
        let p = BigInt::from(1_000_003u64);
        let f = factorize(&(&p * &p), &FactorBudget::default());
        assert_eq!(f.factors, vec![(p, 2)]);
    }

    #[test]
    fn budget_exhaustion_reports_cofactor() {
        // A semiprime of two 40-digit primes is far beyond any rho budget
        // this small; the cofactor must come back composite and flagged.
        let p: BigInt = "2425967623052370772757633156976982469681".parse().unwrap();
        let q: BigInt = "5991810554633396517767024967580894321153".parse().unwrap();
        let n = &p * &q;
        let tight = FactorBudget {
            trial_bound: 1000,
            rho_iterations: 512,
            rho_attempts: 2,
        };
        let f = factorize(&n, &tight);
        assert!(!f.complete);
        assert_eq!(f.cofactor, n);
        assert_eq!(f.omega(), (1, true));
        assert_eq!(f.value(), n);
    }

    #[test]
    #[should_panic(expected = "zero input")]
    fn zero_input_panics() {
        factorize(&BigInt::zero(), &FactorBudget::default());
    }

    #[test]
    fn primality() {
        assert!(is_prime(&BigInt::from(2)));
        assert!(is_prime(&BigInt::from(37)));
        assert!(is_prime(&BigInt::from(1_000_003)));
        assert!(!is_prime(&BigInt::from(1)));
        assert!(!is_prime(&BigInt::from(0)));
        assert!(!is_prime(&BigInt::from(-5)));
        assert!(!is_prime(&BigInt::from(3215031751u64))); // strong pseudoprime to 2,3,5,7
        let p: BigInt = "2425967623052370772757633156976982469681".parse().unwrap();
        assert!(is_prime(&p));
        assert!(!is_prime(&(&p * &p)));
    }
}
