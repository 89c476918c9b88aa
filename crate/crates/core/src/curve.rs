//! The elliptic-curve model y² = x(x+p1)(x+p2) with exact rational
//! coordinates: chord-tangent group law, point orders, and the j-invariant.

use crate::numeric::{BigInt, Rat};
use num_integer::Integer;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    /// The model would have a repeated root (p1=0, p2=0, or p1=p2).
    #[error("singular model: {0}")]
    Singular(&'static str),
    #[error("degenerate parameter T = {0}: T must avoid 0, 1, -1")]
    DegenerateT(Rat),
    #[error("malformed point: {0}")]
    MalformedPoint(String),
}

/// y² = x(x+p1)(x+p2), expanded y² = x³ + Ax² + Bx with A = p1+p2, B = p1·p2.
/// Nonsingular by construction: the roots 0, −p1, −p2 are pairwise distinct,
/// so the curve always has full rational 2-torsion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    p1: Rat,
    p2: Rat,
    a: Rat,
    b: Rat,
}

/// A rational point: the identity O or an affine pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Infinity,
    Affine(Rat, Rat),
}

/// Order of a point in the Mordell–Weil group. Mazur's theorem caps rational
/// torsion orders at 12, so "no multiple up to 12 is O" already proves
/// infinite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointOrder {
    Finite(u32),
    Infinite,
}

impl PointOrder {
    pub fn as_finite(self) -> Option<u32> {
        match self {
            PointOrder::Finite(n) => Some(n),
            PointOrder::Infinite => None,
        }
    }
}

impl Curve {
    pub fn new(p1: Rat, p2: Rat) -> Result<Curve, CurveError> {
        if p1.is_zero() {
            return Err(CurveError::Singular("p1 = 0"));
        }
        if p2.is_zero() {
            return Err(CurveError::Singular("p2 = 0"));
        }
        if p1 == p2 {
            return Err(CurveError::Singular("p1 = p2"));
        }
        let a = &p1 + &p2;
        let b = &p1 * &p2;
        Ok(Curve { p1, p2, a, b })
    }

    pub fn p1(&self) -> &Rat {
        &self.p1
    }

    pub fn p2(&self) -> &Rat {
        &self.p2
    }

    /// Coefficient A = p1 + p2 of the expanded model.
    pub fn a(&self) -> &Rat {
        &self.a
    }

    /// Coefficient B = p1 · p2 of the expanded model.
    pub fn b(&self) -> &Rat {
        &self.b
    }

    /// Right-hand side f(x) = x(x+p1)(x+p2).
    pub fn rhs(&self, x: &Rat) -> Rat {
        x * &(x + &self.p1) * (x + &self.p2)
    }

    pub fn contains(&self, pt: &Point) -> bool {
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => y * y == self.rhs(x),
        }
    }

    /// The three affine points of order 2: (0,0), (−p1,0), (−p2,0).
    pub fn two_torsion(&self) -> [Point; 3] {
        [
            Point::Affine(Rat::zero(), Rat::zero()),
            Point::Affine(-&self.p1, Rat::zero()),
            Point::Affine(-&self.p2, Rat::zero()),
        ]
    }

    /// Chord-tangent sum. Panics if either point is off the curve.
    pub fn add(&self, p: &Point, q: &Point) -> Point {
        assert!(self.contains(p), "add: first point is off the curve");
        assert!(self.contains(q), "add: second point is off the curve");
        let (x1, y1) = match p {
            Point::Infinity => return q.clone(),
            Point::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            Point::Infinity => return p.clone(),
            Point::Affine(x, y) => (x, y),
        };
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                // inverse pair, or doubling a 2-torsion point
                return Point::Infinity;
            }
            // tangent: dy/dx of y² = x³ + Ax² + Bx
            (Rat::from(3) * x1 * x1 + Rat::from(2) * &self.a * x1 + &self.b)
                / (Rat::from(2) * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &lambda * &lambda - &self.a - x1 - x2;
        let y3 = lambda * (x1 - &x3) - y1;
        Point::Affine(x3, y3)
    }

    /// n-fold sum by double-and-add; mul(−n, pt) = mul(n, −pt).
    pub fn mul(&self, n: i64, pt: &Point) -> Point {
        assert!(self.contains(pt), "mul: point is off the curve");
        let base = if n < 0 { -pt } else { pt.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Point::Infinity;
        let mut run = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &run);
            }
            k >>= 1;
            if k > 0 {
                run = self.add(&run, &run);
            }
        }
        acc
    }

    /// Exact order, capped by Mazur's bound: Finite(n) with n ≤ 12, or
    /// Infinite when no multiple up to 12 vanishes.
    pub fn point_order(&self, pt: &Point) -> PointOrder {
        assert!(self.contains(pt), "point_order: point is off the curve");
        let mut acc = pt.clone();
        for n in 1..=12u32 {
            if acc == Point::Infinity {
                return PointOrder::Finite(n);
            }
            acc = self.add(&acc, pt);
        }
        PointOrder::Infinite
    }

    pub fn j_invariant(&self) -> Rat {
        j_from_coefficients(&self.a, &self.b)
    }

    /// Integer coefficients (A·s², B·s⁴, s) of the isomorphic model obtained
    /// by (x,y) → (xs², ys³), with s the lcm of the denominators of p1, p2.
    pub fn integer_coefficients(&self) -> (BigInt, BigInt, BigInt) {
        let s = Rat::from(self.p1.denom().lcm(self.p2.denom()));
        let a = &self.a * &s.pow(2);
        let b = &self.b * &s.pow(4);
        debug_assert!(a.is_integer() && b.is_integer());
        (a.numer().clone(), b.numer().clone(), s.numer().clone())
    }
}

/// j of y² = x³ + Ax² + Bx: 256(A²−3B)³ / (B²(A²−4B)).
/// Panics on a singular model (B or A²−4B zero).
pub fn j_from_coefficients(a: &Rat, b: &Rat) -> Rat {
    let a2 = a * a;
    let disc = &a2 - &(Rat::from(4) * b);
    assert!(
        !b.is_zero() && !disc.is_zero(),
        "j-invariant of a singular model"
    );
    let c = a2 - Rat::from(3) * b;
    Rat::from(256) * &c * &c * &c / (b * b * disc)
}

/// The reference curve with p1 = (2T/(T²−1))², p2 = ((T²−1)/(2T))².
pub fn t_form_curve(t: &Rat) -> Result<Curve, CurveError> {
    let t2 = t * t;
    if t.is_zero() || t2.is_one() {
        return Err(CurveError::DegenerateT(t.clone()));
    }
    let u = Rat::from(2) * t / (&t2 - &Rat::one());
    let p1 = u.square();
    let p2 = u.recip().square();
    Curve::new(p1, p2)
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn xy(&self) -> Option<(&Rat, &Rat)> {
        match self {
            Point::Infinity => None,
            Point::Affine(x, y) => Some((x, y)),
        }
    }
}

impl std::ops::Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        match self {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => Point::Affine(x.clone(), -y),
        }
    }
}

impl std::ops::Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        -&self
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Infinity => write!(f, "inf"),
            Point::Affine(x, y) => write!(f, "({x},{y})"),
        }
    }
}

impl FromStr for Point {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Point, CurveError> {
        if s == "inf" {
            return Ok(Point::Infinity);
        }
        let bad = || CurveError::MalformedPoint(s.to_string());
        let inner = s
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (xs, ys) = inner.split_once(',').ok_or_else(bad)?;
        let x = xs.trim().parse().map_err(|_| bad())?;
        let y = ys.trim().parse().map_err(|_| bad())?;
        Ok(Point::Affine(x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn fermat_curve() -> Curve {
        Curve::new(r("224"), r("819")).unwrap()
    }

    #[test]
    fn constructor_rejects_singular_models() {
        assert_eq!(
            Curve::new(r("1"), r("1")),
            Err(CurveError::Singular("p1 = p2"))
        );
        assert_eq!(
            Curve::new(r("0"), r("5")),
            Err(CurveError::Singular("p1 = 0"))
        );
        assert_eq!(
            Curve::new(r("5"), r("0")),
            Err(CurveError::Singular("p2 = 0"))
        );
    }

    #[test]
    fn membership_is_exact() {
        let e = fermat_curve();
        assert_eq!(e.a(), &r("1043"));
        assert_eq!(e.b(), &r("183456"));
        assert!(e.contains(&Point::Affine(r("14"), r("1666"))));
        assert!(!e.contains(&Point::Affine(r("14"), r("1667"))));
        assert!(e.contains(&Point::Infinity));
    }

    #[test]
    fn group_law_special_cases() {
        let e = fermat_curve();
        let p = Point::Affine(r("14"), r("1666"));
        let zero = Point::Affine(r("0"), r("0"));
        assert_eq!(e.add(&p, &Point::Infinity), p);
        assert_eq!(e.add(&Point::Infinity, &p), p);
        assert_eq!(e.add(&zero, &zero), Point::Infinity);
        assert_eq!(e.add(&p, &-&p), Point::Infinity);
        // chord and tangent results stay on the curve
        let q = Point::Affine(r("3025"), r("194370"));
        assert!(e.contains(&e.add(&p, &q)));
        assert!(e.contains(&e.add(&p, &p)));
    }

    #[test]
    fn two_torsion_forms_klein_four_group() {
        let e = fermat_curve();
        let pts = e.two_torsion();
        for t in &pts {
            assert_eq!(e.point_order(t), PointOrder::Finite(2));
        }
        // the sum of two distinct involutions is the third
        for i in 0..3 {
            for j in 0..3 {
                let s = e.add(&pts[i], &pts[j]);
                if i == j {
                    assert_eq!(s, Point::Infinity);
                } else {
                    assert_eq!(s, pts[3 - i - j]);
                }
            }
        }
    }

    #[test]
    fn associativity_spot_check() {
        let e = fermat_curve();
        let p = Point::Affine(r("14"), r("1666"));
        let q = Point::Affine(r("3025"), r("194370"));
        let s = e.add(&p, &p);
        assert_eq!(e.add(&e.add(&p, &q), &s), e.add(&p, &e.add(&q, &s)));
    }

    #[test]
    fn multiplication_and_order() {
        let e = fermat_curve();
        let p = Point::Affine(r("14"), r("1666"));
        let zero = Point::Affine(r("0"), r("0"));
        assert_eq!(e.mul(0, &p), Point::Infinity);
        assert_eq!(e.mul(1, &p), p);
        assert_eq!(e.mul(2, &zero), Point::Infinity);
        assert_eq!(e.mul(-3, &p), -&e.mul(3, &p));
        assert_eq!(e.mul(5, &p), e.add(&e.mul(2, &p), &e.mul(3, &p)));

        assert_eq!(e.point_order(&Point::Infinity), PointOrder::Finite(1));
        assert_eq!(e.point_order(&zero), PointOrder::Finite(2));
        let q = Point::Affine(r("3025"), r("194370"));
        assert_eq!(e.point_order(&q), PointOrder::Infinite);
    }

    #[test]
    fn j_invariant_values() {
        // CM curve y² = x³ + x
        assert_eq!(j_from_coefficients(&r("0"), &r("1")), r("1728"));
        let e = fermat_curve();
        assert_eq!(e.j_invariant(), r("1319778683209/395612100"));
        // root relabeling does not change j
        let swapped = Curve::new(r("819"), r("224")).unwrap();
        assert_eq!(swapped.j_invariant(), e.j_invariant());
    }

    #[test]
    fn t_form_curve_parameters() {
        let e = t_form_curve(&r("2")).unwrap();
        assert_eq!(e.p1(), &r("16/9"));
        assert_eq!(e.p2(), &r("9/16"));
        let e3 = t_form_curve(&r("3")).unwrap();
        assert_eq!(e3.p1(), &r("9/16"));
        assert_eq!(e3.p2(), &r("16/9"));
        assert_eq!(e.j_invariant(), r("135487869158881/51438240000"));
        for bad in ["0", "1", "-1"] {
            assert!(matches!(
                t_form_curve(&r(bad)),
                Err(CurveError::DegenerateT(_))
            ));
        }
    }

    #[test]
    fn integer_coefficients_clear_denominators() {
        let e = fermat_curve();
        let (a, b, s) = e.integer_coefficients();
        assert_eq!((a, b, s), (1043.into(), 183456.into(), 1.into()));
        let f = Curve::new(r("1/2"), r("1/3")).unwrap();
        let (a, b, s) = f.integer_coefficients();
        assert_eq!((a, b, s), (30.into(), 216.into(), 6.into()));
        assert_eq!(
            j_from_coefficients(&r("30"), &r("216")),
            f.j_invariant()
        );
    }

    #[test]
    fn point_text_round_trip() {
        for s in ["inf", "(14,1666)", "(49/9,-637/162)"] {
            let pt: Point = s.parse().unwrap();
            assert_eq!(pt.to_string(), s);
        }
        assert!("(14)".parse::<Point>().is_err());
        assert!("14,1666".parse::<Point>().is_err());
        assert!("(a,b)".parse::<Point>().is_err());
    }
}
