//! Torsion classification for curves with full rational 2-torsion: the
//! 2-descent square criterion, point halving, 3-torsion via the division
//! polynomial, and reduction-mod-p cross-checks. Mazur's theorem restricts
//! these groups to Z/2×Z/2k with k ≤ 4, which the classifier decides exactly.

use crate::curve::{Curve, Point, PointOrder};
use crate::numeric::{is_prime, BigInt, Rat};
use crate::poly::rational_roots;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorsionError {
    #[error("p = {0} is not an odd prime of good reduction for this curve")]
    BadReduction(u64),
}

/// Exact square roots witnessing membership in 2E(Q):
/// α² = x, β² = x + p1, γ² = x + p2 for a point with x-coordinate x.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareTriple {
    pub alpha: Rat,
    pub beta: Rat,
    pub gamma: Rat,
}

/// The torsion subgroup Z/2 × Z/2k, k ∈ {1,2,3,4}, with a generator of the
/// cyclic part as witness when k > 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionClass {
    k: u32,
    witness: Option<Point>,
}

impl TorsionClass {
    /// The subgroup Z/2 × Z/2k without a witness point, for stating a
    /// lower bound guaranteed by a construction rather than classified.
    pub(crate) fn subgroup(k: u32) -> TorsionClass {
        assert!((1..=4).contains(&k), "torsion subgroups have k in 1..=4");
        TorsionClass { k, witness: None }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Group order 4k.
    pub fn order(&self) -> u32 {
        4 * self.k
    }

    /// A point of order 2k generating the cyclic factor, when k > 1.
    pub fn witness(&self) -> Option<&Point> {
        self.witness.as_ref()
    }
}

impl fmt::Display for TorsionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/2 x Z/{}", 2 * self.k)
    }
}

/// 2-descent criterion: an affine point lies in 2E(Q) iff x, x+p1, x+p2 are
/// all rational squares; returns the three square roots when it does.
/// Panics on O (vacuously in 2E(Q), no certificate exists) or off-curve input.
pub fn in_double_subgroup(c: &Curve, pt: &Point) -> Option<SquareTriple> {
    assert!(c.contains(pt), "in_double_subgroup: point is off the curve");
    let (x, _) = pt
        .xy()
        .expect("in_double_subgroup: O is in 2E(Q) vacuously; pass an affine point");
    let alpha = x.square_root()?;
    let beta = (x + c.p1()).square_root()?;
    let gamma = (x + c.p2()).square_root()?;
    Some(SquareTriple { alpha, beta, gamma })
}

/// All rational points R with 2R = q, for affine q. The x-coordinates are
/// rational roots of (x²−B)² − 4·x(q)·(x³+Ax²+Bx); every candidate is
/// verified by doubling, so the result is exact. Either empty (q ∉ 2E(Q))
/// or a full coset of the 2-torsion, four points.
pub fn halve_point(c: &Curve, q: &Point) -> Vec<Point> {
    assert!(c.contains(q), "halve_point: point is off the curve");
    let (xq, _) = q.xy().expect("halve_point: O has no affine halving quartic");
    if in_double_subgroup(c, q).is_none() {
        return Vec::new();
    }
    let (a, b) = (c.a(), c.b());
    let quartic = [
        b.square(),
        Rat::from(-4) * xq * b,
        Rat::from(-2) * b - Rat::from(4) * xq * a,
        Rat::from(-4) * xq,
        Rat::one(),
    ];
    let mut halves = Vec::new();
    for x0 in rational_roots(&quartic) {
        let Some(y0) = c.rhs(&x0).square_root() else {
            continue;
        };
        for y in [y0.clone(), -y0] {
            let r = Point::Affine(x0.clone(), y);
            if c.add(&r, &r) == *q {
                halves.push(r);
            }
        }
    }
    halves.dedup();
    debug_assert_eq!(halves.len(), 4, "square criterion passed; halves must be a coset");
    halves
}

/// All affine rational points of order 3: rational roots x₀ of the division
/// polynomial ψ₃ = 3x⁴ + 4Ax³ + 6Bx² − B² with f(x₀) a nonzero square,
/// taken with both y signs.
pub fn three_torsion(c: &Curve) -> Vec<Point> {
    let (a, b) = (c.a(), c.b());
    let psi3 = [
        -b.square(),
        Rat::zero(),
        Rat::from(6) * b,
        Rat::from(4) * a,
        Rat::from(3),
    ];
    let mut pts = Vec::new();
    for x0 in rational_roots(&psi3) {
        let fx = c.rhs(&x0);
        if fx.is_zero() {
            continue;
        }
        if let Some(y0) = fx.square_root() {
            pts.push(Point::Affine(x0.clone(), y0.clone()));
            pts.push(Point::Affine(x0, -y0));
        }
    }
    debug_assert!(pts
        .iter()
        .all(|t| c.point_order(t) == PointOrder::Finite(3)));
    pts
}

/// Decides the full torsion subgroup. 3-torsion first (k=3), then double
/// halving for an order-8 witness (k=4), then a single halving (k=2),
/// else k=1; the Mazur exclusion (no Z/2×Z/12) is asserted along the way.
pub fn torsion_group(c: &Curve) -> TorsionClass {
    let three = three_torsion(c);
    if let Some(t3) = three.first() {
        for t2 in &c.two_torsion() {
            assert!(
                in_double_subgroup(c, t2).is_none(),
                "3- and 4-torsion cannot coexist over Q"
            );
        }
        let witness = c.add(t3, &c.two_torsion()[0]);
        assert_eq!(c.point_order(&witness), PointOrder::Finite(6));
        return TorsionClass {
            k: 3,
            witness: Some(witness),
        };
    }
    let mut order_four: Vec<Point> = Vec::new();
    for t2 in &c.two_torsion() {
        order_four.extend(halve_point(c, t2));
    }
    if order_four.is_empty() {
        return TorsionClass {
            k: 1,
            witness: None,
        };
    }
    for r in &order_four {
        if in_double_subgroup(c, r).is_some() {
            let s = halve_point(c, r)
                .into_iter()
                .next()
                .expect("criterion passed; a half exists");
            assert_eq!(c.point_order(&s), PointOrder::Finite(8));
            return TorsionClass {
                k: 4,
                witness: Some(s),
            };
        }
    }
    let witness = order_four.into_iter().next().unwrap();
    assert_eq!(c.point_order(&witness), PointOrder::Finite(4));
    TorsionClass {
        k: 2,
        witness: Some(witness),
    }
}

/// #E(F_p) for an odd prime of good reduction, by enumerating x and counting
/// square roots of f(x) from a residue table. Intended for p ≤ 10⁵.
pub fn count_points_mod_p(c: &Curve, p: u64) -> Result<u64, TorsionError> {
    let (a, b, s) = c.integer_coefficients();
    if p != 0 && (&s % BigInt::from(p)).is_zero() {
        return Err(TorsionError::BadReduction(p));
    }
    count_points_integer(&a, &b, p)
}

/// #E(F_p) for the integral model y² = x³ + Ax² + Bx.
pub(crate) fn count_points_integer(a: &BigInt, b: &BigInt, p: u64) -> Result<u64, TorsionError> {
    if p < 3 || p.is_multiple_of(2) {
        return Err(TorsionError::BadReduction(p));
    }
    debug_assert!(is_prime(&BigInt::from(p)));
    let disc = b * b * (a * a - BigInt::from(4) * b);
    if (&disc % BigInt::from(p)).is_zero() {
        return Err(TorsionError::BadReduction(p));
    }
    let am = mod_u64(a, p);
    let bm = mod_u64(b, p);
    let mut root_count = vec![0u64; p as usize];
    for y in 0..p {
        root_count[(y as u128 * y as u128 % p as u128) as usize] += 1;
    }
    let mut n = 1; // the point at infinity
    for x in 0..p {
        let x = x as u128;
        let fx = ((x + am as u128) * x % p as u128 + bm as u128) * x % p as u128;
        n += root_count[fx as usize];
    }
    Ok(n)
}

/// gcd of #E(F_p) over the first `prime_budget` good odd primes — an upper
/// bound that the torsion order divides (torsion injects into E(F_p)).
pub fn torsion_order_bound(c: &Curve, prime_budget: usize) -> u64 {
    assert!(prime_budget >= 2, "need at least two primes for a useful gcd");
    let mut g: u64 = 0;
    let mut used = 0;
    let mut p: u64 = 3;
    while used < prime_budget {
        if is_prime(&BigInt::from(p)) {
            if let Ok(n) = count_points_mod_p(c, p) {
                g = g.gcd(&n);
                used += 1;
            }
        }
        p += 2;
    }
    g
}

fn mod_u64(n: &BigInt, p: u64) -> u64 {
    u64::try_from(n.mod_floor(&BigInt::from(p))).expect("residue fits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::t_form_curve;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn fermat_curve() -> Curve {
        Curve::new(r("224"), r("819")).unwrap()
    }

    /// Curve induced by {9/2, 16/9, 5/2, -2/9}: p1 = (49/18)², p2 = 4.
    fn order_four_sample() -> Curve {
        Curve::new(r("2401/324"), r("4")).unwrap()
    }

    /// Curve with 3-torsion, from a quadruple whose cyclic factor is Z/6.
    fn order_six_sample() -> Curve {
        Curve::new(
            r("12770379245496239950625/25791292051890186609216"),
            r("14561833448898560000/14530606989641282241"),
        )
        .unwrap()
    }

    #[test]
    fn square_criterion_with_certificate() {
        let e = fermat_curve();
        let q = Point::Affine(r("3025"), r("194370"));
        let t = in_double_subgroup(&e, &q).unwrap();
        assert_eq!((&t.alpha, &t.beta, &t.gamma), (&r("55"), &r("57"), &r("62")));
        assert_eq!(t.alpha.square(), r("3025"));
        assert_eq!(t.beta.square(), r("3025") + e.p1());
        assert_eq!(t.gamma.square(), r("3025") + e.p2());
        // x = 0 but p1 = 224 is not a square
        let zero = Point::Affine(r("0"), r("0"));
        assert!(in_double_subgroup(&e, &zero).is_none());
    }

    #[test]
    fn halving_a_two_torsion_point() {
        let e = order_four_sample();
        let zero = Point::Affine(r("0"), r("0"));
        let halves = halve_point(&e, &zero);
        let expect: Vec<Point> = [
            ("-49/9", "637/162"),
            ("-49/9", "-637/162"),
            ("49/9", "4165/162"),
            ("49/9", "-4165/162"),
        ]
        .iter()
        .map(|(x, y)| Point::Affine(r(x), r(y)))
        .collect();
        assert_eq!(halves.len(), 4);
        for h in &expect {
            assert!(halves.contains(h), "missing half {h}");
            assert_eq!(e.point_order(h), PointOrder::Finite(4));
            assert_eq!(e.mul(2, h), zero);
        }
        // the halves form a coset of the 2-torsion
        let shifted: Vec<Point> = e
            .two_torsion()
            .iter()
            .map(|t| e.add(&halves[0], t))
            .chain([halves[0].clone()])
            .collect();
        for s in &shifted {
            assert!(halves.contains(s));
        }
    }

    #[test]
    fn halving_fails_without_square_certificate() {
        let e = fermat_curve();
        let zero = Point::Affine(r("0"), r("0"));
        assert!(halve_point(&e, &zero).is_empty());
    }

    #[test]
    fn three_torsion_points() {
        assert!(three_torsion(&fermat_curve()).is_empty());
        assert!(three_torsion(&t_form_curve(&r("2")).unwrap()).is_empty());
        let e = order_six_sample();
        let pts = three_torsion(&e);
        assert_eq!(pts.len(), 2);
        let x0 = r("775989038325760000/3330487093477555089");
        let y0 = r("114947923112774640000000000/251108396963024955944692817");
        assert!(pts.contains(&Point::Affine(x0.clone(), y0.clone())));
        assert!(pts.contains(&Point::Affine(x0, -y0)));
    }

    #[test]
    fn torsion_classification_all_four_classes() {
        let t1 = torsion_group(&fermat_curve());
        assert_eq!((t1.k(), t1.order()), (1, 4));
        assert!(t1.witness().is_none());
        assert_eq!(t1.to_string(), "Z/2 x Z/2");

        let t2 = torsion_group(&order_four_sample());
        assert_eq!(t2.k(), 2);
        let e = order_four_sample();
        assert_eq!(e.point_order(t2.witness().unwrap()), PointOrder::Finite(4));

        let t3 = torsion_group(&order_six_sample());
        assert_eq!(t3.k(), 3);
        let e = order_six_sample();
        assert_eq!(e.point_order(t3.witness().unwrap()), PointOrder::Finite(6));
        assert_eq!(t3.to_string(), "Z/2 x Z/6");

        let e = t_form_curve(&r("2")).unwrap();
        let t4 = torsion_group(&e);
        assert_eq!(t4.k(), 4);
        assert_eq!(e.point_order(t4.witness().unwrap()), PointOrder::Finite(8));
        assert_eq!(t4.to_string(), "Z/2 x Z/8");
    }

    #[test]
    fn point_counts_mod_p() {
        // y² = x(x+1)(x+2) over F_5
        let e = Curve::new(r("1"), r("2")).unwrap();
        assert_eq!(count_points_mod_p(&e, 5), Ok(8));

        let f = fermat_curve();
        for p in [11u64, 19, 23, 29, 31] {
            let n = count_points_mod_p(&f, p).unwrap();
            assert_eq!(n % 4, 0, "full 2-torsion injects");
            // Hasse: |p + 1 − n| ≤ 2√p
            let d = (p as i64 + 1 - n as i64).unsigned_abs();
            assert!(d * d <= 4 * p, "Hasse bound violated at p={p}");
        }
    }

    #[test]
    fn point_counts_reject_bad_reduction() {
        let f = fermat_curve();
        for p in [2u64, 3, 5, 7, 13, 17] {
            assert_eq!(count_points_mod_p(&f, p), Err(TorsionError::BadReduction(p)));
        }
        // denominators matter too: s = 144 kills p = 3
        let e = t_form_curve(&r("2")).unwrap();
        assert_eq!(count_points_mod_p(&e, 3), Err(TorsionError::BadReduction(3)));
    }

    #[test]
    fn torsion_order_bounds() {
        assert_eq!(torsion_order_bound(&fermat_curve(), 10), 4);
        assert_eq!(torsion_order_bound(&order_four_sample(), 10), 8);
        assert_eq!(torsion_order_bound(&order_six_sample(), 10), 12);
        assert_eq!(torsion_order_bound(&t_form_curve(&r("2")).unwrap(), 10), 16);

        // a budget of two uses exactly the first two good odd primes
        let f = fermat_curve();
        let g = count_points_mod_p(&f, 11)
            .unwrap()
            .gcd(&count_points_mod_p(&f, 19).unwrap());
        assert_eq!(torsion_order_bound(&f, 2), g);
    }
}
