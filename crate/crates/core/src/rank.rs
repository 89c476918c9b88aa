//! Rank-sieving primitives: traces of Frobenius over small primes,
//! deterministic fixed-point Mestre–Nagao sums, the factor-count rank bound
//! ω(B) + ω(A²−4B), and naive search for rational points of small height.

use crate::curve::{j_from_coefficients, Curve, CurveError, Point, PointOrder};
use crate::numeric::{factorize, primes_up_to, BigInt, FactorBudget, Rat};
use crate::torsion::{count_points_integer, TorsionError};
use num_integer::{Integer, Roots};
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use std::sync::OnceLock;

/// y² = x³ + Ax² + Bx with integral coefficients: the denominator-cleared
/// model of a [`Curve`] that every mod-p computation runs on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerModel {
    a: BigInt,
    b: BigInt,
}

impl IntegerModel {
    /// Clears denominators by (x, y) → (xs², ys³) with s the lcm of the
    /// denominators of p1, p2; the j-invariant is preserved exactly.
    pub fn new(c: &Curve) -> IntegerModel {
        let (a, b, _) = c.integer_coefficients();
        IntegerModel { a, b }
    }

    /// A model from raw coefficients; rejects the singular shapes B = 0 and
    /// A² = 4B.
    pub fn from_parts(a: BigInt, b: BigInt) -> Result<IntegerModel, CurveError> {
        if b.is_zero() {
            return Err(CurveError::Singular("B = 0"));
        }
        if &a * &a == BigInt::from(4) * &b {
            return Err(CurveError::Singular("A^2 = 4B"));
        }
        Ok(IntegerModel { a, b })
    }

    /// Coefficient A of x².
    pub fn a(&self) -> &BigInt {
        &self.a
    }

    /// Coefficient B of x.
    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// j-invariant of the model, equal to that of any curve it cleared.
    pub fn j_invariant(&self) -> Rat {
        j_from_coefficients(&Rat::from(self.a.clone()), &Rat::from(self.b.clone()))
    }
}

/// a_p = p + 1 − #E(F_p) for an odd prime p of good reduction.
pub fn trace_ap(m: &IntegerModel, p: u64) -> Result<i64, TorsionError> {
    let n = count_points_integer(&m.a, &m.b, p)?;
    let ap = p as i64 + 1 - n as i64;
    debug_assert!(ap * ap <= 4 * p as i64, "Hasse bound violated at p = {p}");
    Ok(ap)
}

/// S(N) = Σ ((2 − a_p) · ln p)/p over good odd primes p ≤ N, evaluated in
/// exact fixed-point arithmetic so the result is bit-for-bit reproducible
/// regardless of thread count or platform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MestreNagaoScore {
    value_fixed: BigInt,
    value: String,
    cutoff: u64,
    skipped: Vec<u64>,
}

impl MestreNagaoScore {
    /// The sum scaled by 10³⁰ — the exact quantity the accumulator holds.
    pub fn value_fixed(&self) -> &BigInt {
        &self.value_fixed
    }

    /// Decimal rendering at 15 significant digits, round-half-even.
    pub fn value(&self) -> &str {
        &self.value
    }

    /// The prime cutoff N.
    pub fn cutoff(&self) -> u64 {
        self.cutoff
    }

    /// Primes ≤ N left out of the sum, ascending: 2 always (the sum ranges
    /// over odd primes only) plus every prime of bad reduction.
    pub fn skipped(&self) -> &[u64] {
        &self.skipped
    }
}

/// Mestre–Nagao sum S(N) for the model. Larger values suggest higher rank;
/// scores are only comparable at equal N. Bad primes are skipped and listed.
pub fn mestre_nagao_sum(m: &IntegerModel, n: u64) -> MestreNagaoScore {
    assert!(n >= 2, "Mestre-Nagao cutoff must be at least 2");
    let per_prime: Vec<(u64, Option<BigInt>)> = primes_up_to(n)
        .into_par_iter()
        .map(|p| {
            let term = trace_ap(m, p)
                .ok()
                .map(|ap| BigInt::from(2 - ap) * ln_fixed(p) / BigInt::from(p));
            (p, term)
        })
        .collect();
    let mut value_fixed = BigInt::zero();
    let mut skipped = Vec::new();
    for (p, term) in per_prime {
        match term {
            Some(t) => value_fixed += t,
            None => skipped.push(p),
        }
    }
    let value = format_significant(&value_fixed, 15);
    MestreNagaoScore {
        value_fixed,
        value,
        cutoff: n,
        skipped,
    }
}

/// ω(B) + ω(A² − 4B), the factor-count upper bound for the rank. The flag is
/// set when either factorization ran out of budget, making the bound itself
/// only a lower bound of the true bound.
pub fn trivial_rank_bound(m: &IntegerModel, budget: &FactorBudget) -> (u32, bool) {
    let (wb, b_incomplete) = factorize(&m.b, budget).omega();
    let disc = &m.a * &m.a - BigInt::from(4) * &m.b;
    let (wd, d_incomplete) = factorize(&disc, budget).omega();
    (wb + wd, b_incomplete || d_incomplete)
}

/// Every curve point with x = m/e², |m| ≤ bound, 1 ≤ e ≤ ⌈√bound⌉, tagged
/// with its order and sorted by (x, y). Non-torsion hits witness positive
/// rank without computing the rank itself.
pub fn naive_point_search(c: &Curve, height_bound: u64) -> Vec<(Point, PointOrder)> {
    assert!(height_bound >= 1, "need a positive height bound");
    let hb = i64::try_from(height_bound).expect("height bound fits in i64");
    let root = height_bound.sqrt();
    let e_max = if root * root == height_bound {
        root
    } else {
        root + 1
    };
    let mut found: Vec<(Rat, Rat)> = Vec::new();
    for e in 1..=e_max {
        let den = BigInt::from(e) * BigInt::from(e);
        for m in -hb..=hb {
            if m.unsigned_abs().gcd(&e) != 1 {
                continue;
            }
            let x = Rat::new(BigInt::from(m), den.clone()).expect("denominator is nonzero");
            let Some(y) = c.rhs(&x).square_root() else {
                continue;
            };
            if !y.is_zero() {
                found.push((x.clone(), -&y));
            }
            found.push((x, y));
        }
    }
    found.sort();
    found
        .into_iter()
        .map(|(x, y)| {
            let pt = Point::Affine(x, y);
            let order = c.point_order(&pt);
            (pt, order)
        })
        .collect()
}

/// Fixed-point scale 10³⁰ shared by the logarithm series and the sums.
fn scale() -> &'static BigInt {
    static SCALE: OnceLock<BigInt> = OnceLock::new();
    SCALE.get_or_init(|| BigInt::from(10u32).pow(30))
}

/// floor(ln 2 · 10³⁰), the anchor of the logarithm decomposition.
fn ln2_fixed() -> &'static BigInt {
    static LN2: OnceLock<BigInt> = OnceLock::new();
    LN2.get_or_init(|| "693147180559945309417232121458".parse().unwrap())
}

/// ln p at scale 10³⁰ by a deterministic series: with e = ⌊log₂ p⌋ and
/// z = (p − 2^e)/(p + 2^e) ≤ 1/3, ln p = e·ln 2 + 2·atanh z; every step
/// truncates, so the result is exact arithmetic on integers (a few units
/// low in the 30th decimal place, identically on every platform).
fn ln_fixed(p: u64) -> BigInt {
    assert!(p >= 2, "logarithm of a prime");
    let e = p.ilog2();
    let pow2 = BigInt::from(1u64) << e;
    let pb = BigInt::from(p);
    let z = (&pb - &pow2) * scale() / (&pb + &pow2);
    let z2 = &z * &z / scale();
    let mut total = BigInt::zero();
    let mut term = z;
    let mut k = 0u32;
    loop {
        let contrib = &term / BigInt::from(2 * k + 1);
        if contrib.is_zero() {
            break;
        }
        total += contrib;
        term = term * &z2 / scale();
        k += 1;
    }
    BigInt::from(e) * ln2_fixed() + 2 * total
}

/// `fixed`/10³⁰ rendered with `digits` significant digits, round-half-even.
fn format_significant(fixed: &BigInt, digits: usize) -> String {
    if fixed.is_zero() {
        return "0".to_string();
    }
    let sign = if fixed.is_negative() { "-" } else { "" };
    let abs = fixed.abs();
    let s = abs.to_string();
    let mut dropped = s.len().saturating_sub(digits);
    let mut mant = if dropped == 0 {
        abs
    } else {
        let divisor = BigInt::from(10u32).pow(dropped as u32);
        let (q, r) = abs.div_rem(&divisor);
        let twice = r * 2;
        if twice > divisor || (twice == divisor && q.is_odd()) {
            q + 1
        } else {
            q
        }
    };
    // A carry out of all-nines (999… → 1000…) grows the mantissa by one
    // digit ending in zero; shift it back to keep exactly `digits` digits.
    if mant.to_string().len() > digits {
        mant /= 10;
        dropped += 1;
    }
    let mant = mant.to_string();
    let int_digits = mant.len() as i64 + dropped as i64 - 30;
    if int_digits <= 0 {
        format!("{sign}0.{}{mant}", "0".repeat(-int_digits as usize))
    } else if (int_digits as usize) >= mant.len() {
        format!("{sign}{mant}{}", "0".repeat(int_digits as usize - mant.len()))
    } else {
        let (ip, fp) = mant.split_at(int_digits as usize);
        format!("{sign}{ip}.{fp}")
    }
}
