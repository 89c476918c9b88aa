//! Parametric families of rational Diophantine quadruples whose induced
//! curves carry a prescribed torsion subgroup Z/2 × Z/2k, together with
//! named degeneracy guards, the quartic-model coefficients of the full
//! 2-torsion family, and the T-parameter map of the Z/2 × Z/8 family.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::diophantine::DioTuple;
use crate::numeric::Rat;
use crate::torsion::TorsionClass;

/// Identifies one of the five family constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyName {
    Z2z2,
    Z2z2V,
    Z2z4,
    Z2z6,
    Z2z8,
}

impl FamilyName {
    /// The k of the torsion subgroup Z/2 × Z/2k the construction guarantees.
    pub fn advertised_k(self) -> u32 {
        match self {
            FamilyName::Z2z2 | FamilyName::Z2z2V => 1,
            FamilyName::Z2z4 => 2,
            FamilyName::Z2z6 => 3,
            FamilyName::Z2z8 => 4,
        }
    }

    /// Parameter names the family expects, in canonical order.
    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            FamilyName::Z2z2 => &["t", "a"],
            FamilyName::Z2z2V => &["t", "v"],
            FamilyName::Z2z4 => &["t", "u"],
            FamilyName::Z2z6 => &["k"],
            FamilyName::Z2z8 => &["u", "v"],
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyName::Z2z2 => "z2z2",
            FamilyName::Z2z2V => "z2z2v",
            FamilyName::Z2z4 => "z2z4",
            FamilyName::Z2z6 => "z2z6",
            FamilyName::Z2z8 => "z2z8",
        })
    }
}

impl FromStr for FamilyName {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<FamilyName, FamilyError> {
        match s {
            "z2z2" => Ok(FamilyName::Z2z2),
            "z2z2v" => Ok(FamilyName::Z2z2V),
            "z2z4" => Ok(FamilyName::Z2z4),
            "z2z6" => Ok(FamilyName::Z2z6),
            "z2z8" => Ok(FamilyName::Z2z8),
            other => Err(FamilyError::Params(format!("unknown family {other:?}"))),
        }
    }
}

/// How the fourth element of a z2z4 quadruple is completed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CMode {
    /// c solving the regularity equation (a+b−c−d)² = 4(ab+1)(cd+1).
    #[default]
    Regular,
    /// c = 8(d−a−b)(a+d−b)(b+d−a) / (a²+b²+d²−2ab−2ad−2bd)².
    Prop3,
}

impl fmt::Display for CMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CMode::Regular => "regular",
            CMode::Prop3 => "prop3",
        })
    }
}

impl FromStr for CMode {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<CMode, FamilyError> {
        match s {
            "regular" => Ok(CMode::Regular),
            "prop3" => Ok(CMode::Prop3),
            other => Err(FamilyError::Params(format!("unknown c-mode {other:?}"))),
        }
    }
}

/// The parameter point at which a family was evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyParams {
    Z2z2 { t: Rat, a: Rat },
    Z2z2V { t: Rat, v: Rat },
    Z2z4 { t: Rat, u: Rat, c_mode: CMode },
    Z2z6 { k: Rat },
    Z2z8 { u: Rat, v: Rat },
}

impl FamilyParams {
    pub fn family(&self) -> FamilyName {
        match self {
            FamilyParams::Z2z2 { .. } => FamilyName::Z2z2,
            FamilyParams::Z2z2V { .. } => FamilyName::Z2z2V,
            FamilyParams::Z2z4 { .. } => FamilyName::Z2z4,
            FamilyParams::Z2z6 { .. } => FamilyName::Z2z6,
            FamilyParams::Z2z8 { .. } => FamilyName::Z2z8,
        }
    }

    /// The named parameter values, in canonical order.
    pub fn pairs(&self) -> Vec<(&'static str, &Rat)> {
        match self {
            FamilyParams::Z2z2 { t, a } => vec![("t", t), ("a", a)],
            FamilyParams::Z2z2V { t, v } => vec![("t", t), ("v", v)],
            FamilyParams::Z2z4 { t, u, .. } => vec![("t", t), ("u", u)],
            FamilyParams::Z2z6 { k } => vec![("k", k)],
            FamilyParams::Z2z8 { u, v } => vec![("u", u), ("v", v)],
        }
    }

    /// Binds parsed name/value pairs to the family's parameter slots.
    pub fn from_pairs(
        family: FamilyName,
        pairs: &[(String, Rat)],
        c_mode: CMode,
    ) -> Result<FamilyParams, FamilyError> {
        let expected = family.parameter_names();
        for (i, (name, _)) in pairs.iter().enumerate() {
            if !expected.contains(&name.as_str()) {
                return Err(FamilyError::Params(format!(
                    "unknown parameter {name:?} for family {family}"
                )));
            }
            if pairs[..i].iter().any(|(seen, _)| seen == name) {
                return Err(FamilyError::Params(format!("duplicate parameter {name:?}")));
            }
        }
        let fetch = |name: &str| -> Result<Rat, FamilyError> {
            pairs
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| {
                    FamilyError::Params(format!(
                        "missing parameter {name:?} for family {family}"
                    ))
                })
        };
        Ok(match family {
            FamilyName::Z2z2 => FamilyParams::Z2z2 { t: fetch("t")?, a: fetch("a")? },
            FamilyName::Z2z2V => FamilyParams::Z2z2V { t: fetch("t")?, v: fetch("v")? },
            FamilyName::Z2z4 => FamilyParams::Z2z4 { t: fetch("t")?, u: fetch("u")?, c_mode },
            FamilyName::Z2z6 => FamilyParams::Z2z6 { k: fetch("k")? },
            FamilyName::Z2z8 => FamilyParams::Z2z8 { u: fetch("u")?, v: fetch("v")? },
        })
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyParams::Z2z2 { t, a } => write!(f, "t={t}, a={a}"),
            FamilyParams::Z2z2V { t, v } => write!(f, "t={t}, v={v}"),
            FamilyParams::Z2z4 { t, u, c_mode } => write!(f, "t={t}, u={u}, mode={c_mode}"),
            FamilyParams::Z2z6 { k } => write!(f, "k={k}"),
            FamilyParams::Z2z8 { u, v } => write!(f, "u={u}, v={v}"),
        }
    }
}

/// A quadruple produced by a family construction, with the parameters that
/// produced it and the torsion subgroup the construction guarantees.
#[derive(Debug, Clone)]
pub struct FamilyOutput {
    quadruple: DioTuple,
    provenance: FamilyParams,
    advertised: TorsionClass,
}

impl FamilyOutput {
    pub fn quadruple(&self) -> &DioTuple {
        &self.quadruple
    }

    pub fn provenance(&self) -> &FamilyParams {
        &self.provenance
    }

    /// Lower bound on the induced curve's torsion group; the containment
    /// is forced by the construction, not classified.
    pub fn advertised_torsion(&self) -> &TorsionClass {
        &self.advertised
    }
}

/// Errors from family evaluation and parameter parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    /// A forbidden factor of the family's parameter domain vanishes.
    #[error("degenerate {family} parameters: {factor} = 0")]
    Degenerate { family: FamilyName, factor: String },
    /// The parameter string does not match the grammar.
    #[error("invalid parameters: {0}")]
    Params(String),
}

/// Fails with the first named factor that vanishes.
fn guard(family: FamilyName, factors: Vec<(&'static str, Rat)>) -> Result<(), FamilyError> {
    match factors.into_iter().find(|(_, value)| value.is_zero()) {
        Some((name, _)) => Err(FamilyError::Degenerate { family, factor: name.to_string() }),
        None => Ok(()),
    }
}

/// Fails with the first coinciding pair of named elements.
fn guard_distinct(family: FamilyName, elems: &[(&str, &Rat)]) -> Result<(), FamilyError> {
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            if elems[i].1 == elems[j].1 {
                return Err(FamilyError::Degenerate {
                    family,
                    factor: format!("{} - {}", elems[i].0, elems[j].0),
                });
            }
        }
    }
    Ok(())
}

fn finish(elems: [Rat; 4], provenance: FamilyParams) -> FamilyOutput {
    let advertised = TorsionClass::subgroup(provenance.family().advertised_k());
    let quadruple = DioTuple::new(elems.to_vec())
        .expect("family formulas make every pairwise product plus one a square");
    FamilyOutput { quadruple, provenance, advertised }
}

/// Two-parameter family built from a chain of two regular triples; the
/// induced curve always has full rational 2-torsion.
pub fn family_z2z2(t: Rat, a: Rat) -> Result<FamilyOutput, FamilyError> {
    let fam = FamilyName::Z2z2;
    let (one, three) = (Rat::one(), Rat::from(3));
    let tt = t.square();
    let at2 = Rat::from(2) * &a * &t;
    let t4 = Rat::from(4) * &t;
    let b_lo = &tt - &at2 - &t4 + &three;
    let b_hi = &tt - &at2 + &t4 + &three;
    let c_hi = &tt + &at2 + &t4 + &three;
    let c_lo = &tt + &at2 - &t4 + &three;
    guard(
        fam,
        vec![
            ("t", t.clone()),
            ("a", a.clone()),
            ("t^2 - 2at - 4t + 3", b_lo.clone()),
            ("t^2 - 2at + 4t + 3", b_hi.clone()),
            ("t^2 + 2at + 4t + 3", c_hi.clone()),
            ("t^2 + 2at - 4t + 3", c_lo.clone()),
            ("t - 1", &t - &one),
            ("t + 3", &t + &three),
            ("t - 3", &t - &three),
            ("t + 1", &t + &one),
        ],
    )?;
    let den = Rat::from(16) * &tt * &a;
    let b = b_lo * b_hi / &den;
    let c = c_hi * c_lo / &den;
    let d = (&t - &one) * (&t + &three) * (&t - &three) * (&t + &one) / (Rat::from(4) * &tt * &a);
    guard_distinct(fam, &[("a", &a), ("b", &b), ("c", &c), ("d", &d)])?;
    let params = FamilyParams::Z2z2 { t, a: a.clone() };
    Ok(finish([a, b, c, d], params))
}

/// family_z2z2 with a = (v²−1)/(2v), which makes a²+1 a rational square and
/// splits four quadratic factors of the curve coefficient B1.
pub fn family_z2z2_v(t: Rat, v: Rat) -> Result<FamilyOutput, FamilyError> {
    let fam = FamilyName::Z2z2V;
    let one = Rat::one();
    guard(
        fam,
        vec![("v", v.clone()), ("v - 1", &v - &one), ("v + 1", &v + &one)],
    )?;
    let a = (v.square() - one) / (Rat::from(2) * &v);
    let mut out = family_z2z2(t.clone(), a).map_err(|e| match e {
        FamilyError::Degenerate { factor, .. } => FamilyError::Degenerate { family: fam, factor },
        other => other,
    })?;
    out.provenance = FamilyParams::Z2z2V { t, v };
    Ok(out)
}

/// Coefficients (A1, B1) of the model y² = x³ + A1x² + B1x equivalent to
/// the induced curve of family_z2z2(t, a). Polynomial in (t, a), so defined
/// everywhere; the j-invariants agree wherever the family is nondegenerate.
pub fn z2z2_curve_coeffs(t: &Rat, a: &Rat) -> (Rat, Rat) {
    let t2 = t.square();
    let t4 = t2.square();
    let t6 = &t4 * &t2;
    let t8 = t4.square();
    let a2 = a.square();
    let a4 = a2.square();
    let a1 = Rat::from(6) * &t8 - Rat::from(48) * &t6 * &a2 + Rat::from(96) * &t4 * &a4
        - Rat::from(120) * &t6
        + Rat::from(992) * &t4 * &a2
        + Rat::from(708) * &t4
        - Rat::from(432) * &t2 * &a2
        - Rat::from(1080) * &t2
        + Rat::from(486);
    let at = a * t;
    let quad = |c2: i64, c1: i64, c0: i64| Rat::from(c2) * &t2 + Rat::from(c1) * &at + Rat::from(c0);
    let b1 = quad(1, 2, -1)
        * quad(1, -6, -9)
        * quad(3, 2, -3)
        * quad(1, -2, -9)
        * quad(1, 6, -9)
        * quad(1, -2, -1)
        * quad(1, 2, -9)
        * quad(3, -2, -3);
    (a1, b1)
}

/// Two-parameter family with d = −1/a, which puts (0,0) into 2E(Q) and
/// forces torsion containing Z/2 × Z/4.
pub fn family_z2z4(t: Rat, u: Rat, c_mode: CMode) -> Result<FamilyOutput, FamilyError> {
    let fam = FamilyName::Z2z4;
    let one = Rat::one();
    let ut1 = &u * &t + &one;
    let tmu = &t - &u;
    guard(
        fam,
        vec![
            ("t", t.clone()),
            ("u", u.clone()),
            ("t - u", tmu.clone()),
            ("ut + 1", ut1.clone()),
            ("t - 1", &t - &one),
            ("t + 1", &t + &one),
            ("u - 1", &u - &one),
            ("u + 1", &u + &one),
        ],
    )?;
    let a = &ut1 / &tmu;
    let b = Rat::from(4) * &t * &u / (&ut1 * &tmu);
    let d = -(&tmu / &ut1);
    let c = match c_mode {
        CMode::Regular => (&u - &one) * (&u + &one) * (&t - &one) * (&t + &one) / (&ut1 * &tmu),
        CMode::Prop3 => prop3_extension(fam, &a, &b, &d)?,
    };
    guard_distinct(fam, &[("a", &a), ("b", &b), ("c", &c), ("d", &d)])?;
    let params = FamilyParams::Z2z4 { t, u, c_mode };
    Ok(finish([a, b, c, d], params))
}

/// The fourth element extending {a, b, d} to a quadruple:
/// 8(d−a−b)(a+d−b)(b+d−a) / (a²+b²+d²−2ab−2ad−2bd)².
fn prop3_extension(family: FamilyName, a: &Rat, b: &Rat, d: &Rat) -> Result<Rat, FamilyError> {
    let f1 = d - a - b;
    let f2 = a + d - b;
    let f3 = b + d - a;
    let two = Rat::from(2);
    let den =
        a.square() + b.square() + d.square() - &two * (a * b) - &two * (a * d) - &two * (b * d);
    guard(
        family,
        vec![
            ("d - a - b", f1.clone()),
            ("a + d - b", f2.clone()),
            ("b + d - a", f3.clone()),
            ("a^2 + b^2 + d^2 - 2ab - 2ad - 2bd", den.clone()),
        ],
    )?;
    Ok(Rat::from(8) * f1 * f2 * f3 / den.square())
}

/// One-parameter family of regular quadruples with a built-in 3-torsion
/// condition; forces torsion Z/2 × Z/6.
pub fn family_z2z6(k: Rat) -> Result<FamilyOutput, FamilyError> {
    let fam = FamilyName::Z2z6;
    let one = Rat::one();
    let two = Rat::from(2);
    let k2 = k.square();
    let k3 = &k2 * &k;
    let fa = Rat::from(3) * &k3 - &two * &k2 + &two * &k - &two;
    let fb = Rat::from(4) * &k2 - &k + Rat::from(4);
    let fc = &two * &k3 - &two * &k2 + &two * &k - Rat::from(3);
    guard(
        fam,
        vec![
            ("k", k.clone()),
            ("k - 1", &k - &one),
            ("k + 1", &k + &one),
            ("3k^3 - 2k^2 + 2k - 2", fa.clone()),
            ("2k^3 - 2k^2 + 2k - 3", fc.clone()),
            ("4k^2 - k + 4", fb.clone()),
        ],
    )?;
    // positive-definite cofactors, nonzero for every rational k
    let q1 = &two * &k2 + &one;
    let q2 = &k2 + &two;
    let q3 = &two * &k2 + &k + &two;
    let q4sq = (&k2 - &k + &one).square();
    let e1 = &k + &one;
    let e2 = &k - &one;
    let a = -(&two * &k * &q2 * &fa) / (&e1 * &e2 * &q1 * &q3);
    let b = -(&k * &e1 * &e2 * &q3 * &fb) / (&two * &q2 * &q4sq * &q1);
    let c = &two * &q1 * &fc / (&e1 * &e2 * &q3 * &q2);
    let d = &q1 * &e1 * &q2 * &e2 / (&two * &q4sq * &q3);
    guard_distinct(fam, &[("a", &a), ("b", &b), ("c", &c), ("d", &d)])?;
    Ok(finish([a, b, c, d], FamilyParams::Z2z6 { k }))
}

/// The substitution chain behind family_z2z6, exposed read-only so the
/// derivation can be checked against the closed forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z2z6Derivation {
    t1: Rat,
    t2: Rat,
    t3: Rat,
    m: Rat,
    elements: [Rat; 4],
}

impl Z2z6Derivation {
    pub fn t1(&self) -> &Rat {
        &self.t1
    }

    pub fn t2(&self) -> &Rat {
        &self.t2
    }

    pub fn t3(&self) -> &Rat {
        &self.t3
    }

    pub fn m(&self) -> &Rat {
        &self.m
    }

    pub fn elements(&self) -> &[Rat; 4] {
        &self.elements
    }
}

/// Evaluates the z2z6 chain at k: t3 and m from k, t2 = m − 1/t3,
/// t1 = k/(t2·t3), the three-parameter triple, and the regularity solution
/// for d. Its output coincides with family_z2z6's closed forms.
pub fn z2z6_derivation(k: &Rat) -> Result<Z2z6Derivation, FamilyError> {
    let fam = FamilyName::Z2z6;
    let one = Rat::one();
    let two = Rat::from(2);
    guard(
        fam,
        vec![("k", k.clone()), ("k - 1", k - &one), ("k + 1", k + &one)],
    )?;
    let k2 = k.square();
    let t3 = -((&two * &k2 + &one) / (k * (&k2 + &two)));
    let m = Rat::from(3) * k * (&k2 * k - &two * &k2 + k - &two)
        / (&two * (&two * &k2 + &one) * (&k2 - k + &one));
    let t2 = &m - t3.recip();
    // t2's numerator is k(k−1)(k+1)(2k²+k+2), nonzero past the guards
    debug_assert!(!t2.is_zero());
    let t1 = k / (&t2 * &t3);
    let prod = &t1 * &t2 * &t3;
    debug_assert_eq!(&prod, k);
    let den = (&prod - &one) * (&prod + &one);
    let a = &two * &t1 * (&one + &t1 * &t2 * (&one + &t2 * &t3)) / &den;
    let b = &two * &t2 * (&one + &t2 * &t3 * (&one + &t3 * &t1)) / &den;
    let c = &two * &t3 * (&one + &t3 * &t1 * (&one + &t1 * &t2)) / &den;
    let d = -(&two
        * (&one - &t1 + &t3 * &t1)
        * (-&t3 + &t2 * &t3 + &one)
        * (-&t2 + &one + &t1 * &t2)
        * (&prod - &one))
        / (&prod + &one).pow(3);
    Ok(Z2z6Derivation { t1, t2, t3, m, elements: [a, b, c, d] })
}

/// Two-parameter family forcing the halving point of (0,0) back into
/// 2E(Q); the induced curve has torsion Z/2 × Z/8.
pub fn family_z2z8(u: Rat, v: Rat) -> Result<FamilyOutput, FamilyError> {
    let fam = FamilyName::Z2z8;
    let one = Rat::one();
    let two = Rat::from(2);
    let u2 = u.square();
    let uv = &u2 - &u * &v;
    let g = &u2 * &u + &u * v.square() - &two * &u2 * &v + &u - &two * &v;
    let w = &u2 + &one - v.square();
    let umv = &u - &v;
    guard(
        fam,
        vec![
            ("u", u.clone()),
            ("v", v.clone()),
            ("u + 1", &u + &one),
            ("u - 1", &u - &one),
            ("u^2 - uv + v + 1", &uv + &v + &one),
            ("u^2 - uv + 1", &uv + &one),
            ("u^2 - uv - v + 1", &uv - &v + &one),
            ("u - v + 1", &umv + &one),
            ("u - v", umv.clone()),
            ("u - v - 1", &umv - &one),
            ("u^2 + 1 - v^2", w.clone()),
            ("u^3 + uv^2 - 2u^2v + u - 2v", g.clone()),
            ("u^3 + uv^2 - 2u^2v + u - 2v - u^2 - 1 + v^2", &g - &w),
            ("u^3 + uv^2 - 2u^2v + u - 2v + u^2 + 1 - v^2", &g + &w),
        ],
    )?;
    let s2 = (&u2 + &one).square();
    let up = &umv + &one;
    let um = &umv - &one;
    let a = &up * &um / (&two * &umv);
    let b = -(&two * &w * &u * &g) / (&s2 * &umv * &up * &um);
    let c = (&g - &w) * (&g + &w) * (&u + &one) * (&u - &one) / (&two * &s2 * &umv * &up * &um);
    let d = -(&two * &umv) / (&up * &um);
    guard_distinct(fam, &[("a", &a), ("b", &b), ("c", &c), ("d", &d)])?;
    Ok(finish([a, b, c, d], FamilyParams::Z2z8 { u, v }))
}

/// The parameter T = v/(uv − u² − 1) for which the T-form model shares its
/// j-invariant with the induced curve of family_z2z8(u, v).
pub fn z2z8_t(u: &Rat, v: &Rat) -> Result<Rat, FamilyError> {
    let fam = FamilyName::Z2z8;
    let den = u * v - u.square() - Rat::one();
    guard(
        fam,
        vec![
            ("v", v.clone()),
            ("uv - u^2 - 1", den.clone()),
            ("uv - u^2 - 1 - v", &den - v),
            ("uv - u^2 - 1 + v", &den + v),
        ],
    )?;
    Ok(v / den)
}

/// Evaluates whichever family the parameters select.
pub fn evaluate_family(params: &FamilyParams) -> Result<FamilyOutput, FamilyError> {
    match params {
        FamilyParams::Z2z2 { t, a } => family_z2z2(t.clone(), a.clone()),
        FamilyParams::Z2z2V { t, v } => family_z2z2_v(t.clone(), v.clone()),
        FamilyParams::Z2z4 { t, u, c_mode } => family_z2z4(t.clone(), u.clone(), *c_mode),
        FamilyParams::Z2z6 { k } => family_z2z6(k.clone()),
        FamilyParams::Z2z8 { u, v } => family_z2z8(u.clone(), v.clone()),
    }
}

/// One axis of a parameter grid: a name and the values it ranges over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamAxis {
    pub name: String,
    pub values: Vec<Rat>,
}

/// Parses comma-separated axes: "name=value" or "name=from..to step s"
/// (step defaults to 1; the range is inclusive and exact).
pub fn parse_param_grid(s: &str) -> Result<Vec<ParamAxis>, FamilyError> {
    let mut axes: Vec<ParamAxis> = Vec::new();
    for piece in s.split(',') {
        let piece = piece.trim();
        let (name, value) = piece
            .split_once('=')
            .ok_or_else(|| FamilyError::Params(format!("expected name=value in {piece:?}")))?;
        let name = name.trim();
        if name.is_empty() {
            return Err(FamilyError::Params(format!("missing name in {piece:?}")));
        }
        if axes.iter().any(|axis| axis.name == name) {
            return Err(FamilyError::Params(format!("duplicate parameter {name:?}")));
        }
        let value = value.trim();
        let values = match value.split_once("..") {
            None => vec![parse_rat(value)?],
            Some((from, rest)) => {
                let from = parse_rat(from.trim())?;
                let (to, step) = match rest.split_once("step") {
                    None => (parse_rat(rest.trim())?, Rat::one()),
                    Some((to, step)) => (parse_rat(to.trim())?, parse_rat(step.trim())?),
                };
                expand_range(&from, &to, &step)?
            }
        };
        axes.push(ParamAxis { name: name.to_string(), values });
    }
    Ok(axes)
}

/// Parses comma-separated "name=value" pairs; ranges are rejected.
pub fn parse_param_list(s: &str) -> Result<Vec<(String, Rat)>, FamilyError> {
    if s.contains("..") {
        return Err(FamilyError::Params(
            "ranges are only valid in sweeps; give single values".into(),
        ));
    }
    parse_param_grid(s)?
        .into_iter()
        .map(|axis| {
            let mut values = axis.values;
            Ok((axis.name, values.pop().expect("single value per axis")))
        })
        .collect()
}

fn parse_rat(s: &str) -> Result<Rat, FamilyError> {
    s.parse()
        .map_err(|e| FamilyError::Params(format!("bad rational {s:?}: {e}")))
}

fn expand_range(from: &Rat, to: &Rat, step: &Rat) -> Result<Vec<Rat>, FamilyError> {
    if step.is_zero() || step.is_negative() {
        return Err(FamilyError::Params(format!("range step must be positive, got {step}")));
    }
    if to < from {
        return Err(FamilyError::Params(format!("empty range {from}..{to}")));
    }
    let mut values = Vec::new();
    let mut x = from.clone();
    while &x <= to {
        values.push(x.clone());
        if values.len() > 100_000 {
            return Err(FamilyError::Params("range produces more than 100000 values".into()));
        }
        x = &x + step;
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{j_from_coefficients, t_form_curve, Point};
    use crate::diophantine::{induced_curve, is_regular_quadruple};
    use crate::torsion::halve_point;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn rs(strs: &[&str]) -> Vec<Rat> {
        strs.iter().map(|s| r(s)).collect()
    }

    fn elems(out: &FamilyOutput) -> Vec<Rat> {
        out.quadruple().elements().to_vec()
    }

    fn factor_of(err: FamilyError) -> String {
        match err {
            FamilyError::Degenerate { factor, .. } => factor,
            other => panic!("expected a degeneracy error, got {other}"),
        }
    }

    #[test]
    fn z2z2_builds_quadruples() {
        let out = family_z2z2(r("2"), r("1/2")).unwrap();
        assert_eq!(elems(&out), rs(&["1/2", "-39/32", "17/32", "-15/8"]));
        assert_eq!(out.advertised_torsion().order(), 4);
        assert_eq!(out.provenance().to_string(), "t=2, a=1/2");
    }

    #[test]
    fn z2z2_names_vanishing_factors() {
        assert_eq!(factor_of(family_z2z2(r("1"), r("1")).unwrap_err()), "t - 1");
        assert_eq!(factor_of(family_z2z2(r("3"), r("1")).unwrap_err()), "t - 3");
        assert_eq!(factor_of(family_z2z2(r("0"), r("1")).unwrap_err()), "t");
        assert_eq!(factor_of(family_z2z2(r("2"), r("0")).unwrap_err()), "a");
        assert_eq!(
            factor_of(family_z2z2(r("2"), r("-1/4")).unwrap_err()),
            "t^2 - 2at - 4t + 3"
        );
    }

    #[test]
    fn z2z2_v_reproduces_high_rank_quadruples() {
        let out = family_z2z2_v(r("142/53"), r("142/23")).unwrap();
        assert_eq!(
            elems(&out),
            rs(&["19635/6532", "-46592463/201832268", "84196064/50458067", "-1144273/8775316"])
        );
        assert_eq!(out.provenance().to_string(), "t=142/53, v=142/23");

        let out = family_z2z2_v(r("59/4"), r("59/34")).unwrap();
        assert_eq!(
            elems(&out),
            rs(&["2325/4012", "187020623/9949760", "261411943/9949760", "13104399/146320"])
        );

        assert_eq!(factor_of(family_z2z2_v(r("2"), r("1")).unwrap_err()), "v - 1");
        assert_eq!(factor_of(family_z2z2_v(r("2"), r("0")).unwrap_err()), "v");
    }

    #[test]
    fn curve_coeffs_match_induced_j_invariant() {
        assert_eq!(z2z2_curve_coeffs(&r("1"), &r("1")), (r("608"), r("26880")));
        for (t, a) in [("2", "1/2"), ("5/3", "7/2"), ("-7/4", "2/5")] {
            let out = family_z2z2(r(t), r(a)).unwrap();
            let bundle = induced_curve(out.quadruple()).unwrap();
            let (a1, b1) = z2z2_curve_coeffs(&r(t), &r(a));
            assert_eq!(j_from_coefficients(&a1, &b1), bundle.curve().j_invariant());
        }
    }

    #[test]
    fn z2z2_v_substitution_splits_coefficient_factors() {
        // with a=(v²−1)/(2v) the B1 factors t²±2at−1 and t²±6at−9 get square
        // discriminants 4(a²+1) and 36(a²+1), so they split into linear parts
        for v in ["9/5", "3", "-7/2"] {
            let v = r(v);
            let a = (v.square() - Rat::one()) / (Rat::from(2) * &v);
            let a2p1 = a.square() + Rat::one();
            assert!((Rat::from(4) * &a2p1).square_root().is_some());
            assert!((Rat::from(36) * &a2p1).square_root().is_some());
        }
    }

    #[test]
    fn z2z4_regular_and_prop3_modes() {
        let out = family_z2z4(r("4"), r("2"), CMode::Regular).unwrap();
        assert_eq!(elems(&out), rs(&["9/2", "16/9", "5/2", "-2/9"]));
        assert_eq!(out.advertised_torsion().to_string(), "Z/2 x Z/4");
        let e = out.quadruple().elements();
        assert_eq!(&e[0] * &e[3], -Rat::one());

        let out = family_z2z4(r("4"), r("2"), CMode::Prop3).unwrap();
        assert_eq!(elems(&out), rs(&["9/2", "16/9", "55120/15129", "-2/9"]));
        assert_eq!(out.provenance().to_string(), "t=4, u=2, mode=prop3");
    }

    #[test]
    fn z2z4_rejects_degenerate_parameters() {
        assert_eq!(
            factor_of(family_z2z4(r("2"), r("2"), CMode::Regular).unwrap_err()),
            "t - u"
        );
        assert_eq!(
            factor_of(family_z2z4(r("2"), r("-1/2"), CMode::Regular).unwrap_err()),
            "ut + 1"
        );
        // 4tu = (u²−1)(t²−1) coincidence makes b = c
        assert_eq!(
            factor_of(family_z2z4(r("3"), r("2"), CMode::Regular).unwrap_err()),
            "b - c"
        );
    }

    #[test]
    fn z2z4_curve_halves_origin_to_parametric_point() {
        // the halvings of (0,0) include the point with
        //   x = (u+t)²(ut−1)² / ((ut+1)²(t−u)²)
        //   y = (u²+1)(t²+1)(u+t)²(ut−1)² / ((ut+1)³(t−u)³)
        for (t, u) in [("4", "2"), ("7/2", "-3/5")] {
            let (t, u) = (r(t), r(u));
            let out = family_z2z4(t.clone(), u.clone(), CMode::Regular).unwrap();
            let bundle = induced_curve(out.quadruple()).unwrap();
            assert_eq!(bundle.point_q(), &Point::Affine(Rat::zero(), Rat::zero()));
            let ut1 = &u * &t + Rat::one();
            let tmu = &t - &u;
            let num = ((&u + &t) * (&u * &t - Rat::one())).square();
            let x = &num / (&ut1 * &tmu).square();
            let y = (u.square() + Rat::one()) * (t.square() + Rat::one()) * &num
                / (ut1.pow(3) * tmu.pow(3));
            let halves = halve_point(bundle.curve(), bundle.point_q());
            assert!(halves.contains(&Point::Affine(x, y)));
        }
    }

    #[test]
    fn z2z6_reproduces_published_quadruples() {
        let out = family_z2z6(r("23")).unwrap();
        assert_eq!(
            elems(&out),
            rs(&[
                "-16051953/11214104",
                "-170244712/1784519841",
                "914623/5622936",
                "5498328/10310521"
            ])
        );
        assert_eq!(out.advertised_torsion().to_string(), "Z/2 x Z/6");

        let out = family_z2z6(r("-22/13")).unwrap();
        assert_eq!(
            elems(&out),
            rs(&[
                "-18873668/3382575",
                "821921100/5086844387",
                "-26226421/4890900",
                "1090383/6661892"
            ])
        );
    }

    #[test]
    fn z2z6_derivation_chain_matches_closed_forms() {
        let der = z2z6_derivation(&r("23")).unwrap();
        assert_eq!(der.t3(), &r("-353/4071"));
        assert_eq!(der.m(), &r("42665/59657"));
        assert_eq!(der.t2(), &r("730664/59657"));
        assert_eq!(der.t1(), &r("-687999/31768"));
        for k in ["23", "-22/13", "5/7"] {
            let der = z2z6_derivation(&r(k)).unwrap();
            let out = family_z2z6(r(k)).unwrap();
            assert_eq!(der.elements().as_slice(), out.quadruple().elements());
        }
    }

    #[test]
    fn z2z6_outputs_are_regular() {
        for k in ["23", "5/7", "-9/4"] {
            let out = family_z2z6(r(k)).unwrap();
            let e = out.quadruple().elements();
            assert!(is_regular_quadruple(&e[0], &e[1], &e[2], &e[3]));
        }
    }

    #[test]
    fn z2z6_rejects_degenerate_k() {
        assert_eq!(factor_of(family_z2z6(r("0")).unwrap_err()), "k");
        assert_eq!(factor_of(family_z2z6(r("1")).unwrap_err()), "k - 1");
        assert_eq!(factor_of(family_z2z6(r("-1")).unwrap_err()), "k + 1");
    }

    #[test]
    fn z2z8_sample_quadruple() {
        let out = family_z2z8(r("2"), r("1/2")).unwrap();
        assert_eq!(elems(&out), rs(&["5/12", "-836/375", "123/500", "-12/5"]));
        assert_eq!(out.advertised_torsion().to_string(), "Z/2 x Z/8");
        let e = out.quadruple().elements();
        assert_eq!(&e[0] * &e[3], -Rat::one());
    }

    #[test]
    fn z2z8_is_z2z4_after_substitution() {
        // eliminating t via t = −g/(u²+1−v²) with g = u³+uv²−2u²v+u−2v turns
        // the z2z4 regular family into the z2z8 formulas
        for (u, v) in [("2", "1/2"), ("3", "5/7"), ("-5/2", "4/3")] {
            let (u, v) = (r(u), r(v));
            let g = u.pow(3) + &u * v.square() - Rat::from(2) * u.square() * &v + &u
                - Rat::from(2) * &v;
            let w = u.square() + Rat::one() - v.square();
            let t = -(&g / &w);
            let out8 = family_z2z8(u.clone(), v.clone()).unwrap();
            let out4 = family_z2z4(t, u, CMode::Regular).unwrap();
            assert_eq!(out8.quadruple().elements(), out4.quadruple().elements());
        }
    }

    #[test]
    fn z2z8_rejects_degenerate_parameters() {
        assert_eq!(factor_of(family_z2z8(r("2"), r("2")).unwrap_err()), "u - v");
        assert_eq!(factor_of(family_z2z8(r("2"), r("0")).unwrap_err()), "v");
        assert_eq!(factor_of(family_z2z8(r("2"), r("1")).unwrap_err()), "u - v - 1");
        assert_eq!(factor_of(family_z2z8(r("2"), r("3")).unwrap_err()), "u - v + 1");
        assert_eq!(factor_of(family_z2z8(r("0"), r("2")).unwrap_err()), "u");
    }

    #[test]
    fn t_parameter_matches_j_invariants() {
        assert_eq!(z2z8_t(&r("2"), &r("1/2")).unwrap(), r("-1/8"));
        for (u, v) in [("2", "1/2"), ("3", "5/7")] {
            let (u, v) = (r(u), r(v));
            let t = z2z8_t(&u, &v).unwrap();
            let model = t_form_curve(&t).unwrap();
            let out = family_z2z8(u, v).unwrap();
            let bundle = induced_curve(out.quadruple()).unwrap();
            assert_eq!(model.j_invariant(), bundle.curve().j_invariant());
        }
        assert_eq!(factor_of(z2z8_t(&r("1"), &r("2")).unwrap_err()), "uv - u^2 - 1");
    }

    #[test]
    fn family_names_and_modes_round_trip() {
        for name in ["z2z2", "z2z2v", "z2z4", "z2z6", "z2z8"] {
            assert_eq!(name.parse::<FamilyName>().unwrap().to_string(), name);
        }
        assert!("z2z3".parse::<FamilyName>().is_err());
        assert_eq!("prop3".parse::<CMode>().unwrap(), CMode::Prop3);
        assert_eq!(CMode::default(), CMode::Regular);
    }

    #[test]
    fn parameter_grammar_parses_singles_and_ranges() {
        let pairs = parse_param_list("t=142/53, v=142/23").unwrap();
        assert_eq!(
            pairs,
            vec![("t".to_string(), r("142/53")), ("v".to_string(), r("142/23"))]
        );
        let params = FamilyParams::from_pairs(FamilyName::Z2z2V, &pairs, CMode::default()).unwrap();
        assert_eq!(params.family(), FamilyName::Z2z2V);
        assert!(evaluate_family(&params).is_ok());

        let axes = parse_param_grid("k=2..4 step 1/2").unwrap();
        assert_eq!(axes.len(), 1);
        assert_eq!(axes[0].name, "k");
        assert_eq!(axes[0].values, rs(&["2", "5/2", "3", "7/2", "4"]));

        let axes = parse_param_grid("u=-1..1,v=5").unwrap();
        assert_eq!(axes[0].values, rs(&["-1", "0", "1"]));
        assert_eq!(axes[1].values, rs(&["5"]));
    }

    #[test]
    fn parameter_grammar_rejects_malformed_input() {
        assert!(parse_param_list("t").is_err());
        assert!(parse_param_list("t=1..3").is_err());
        assert!(parse_param_grid("k=4..2 step 1").is_err());
        assert!(parse_param_grid("k=1..3 step 0").is_err());
        assert!(parse_param_grid("k=1, k=2").is_err());
        assert!(parse_param_grid("=3").is_err());
        assert!(parse_param_grid("k=x/y").is_err());

        let pairs = parse_param_list("q=3").unwrap();
        assert!(FamilyParams::from_pairs(FamilyName::Z2z6, &pairs, CMode::default()).is_err());
        assert!(FamilyParams::from_pairs(FamilyName::Z2z6, &[], CMode::default()).is_err());
        let dup = vec![("k".to_string(), r("2")), ("k".to_string(), r("3"))];
        assert!(FamilyParams::from_pairs(FamilyName::Z2z6, &dup, CMode::default()).is_err());
    }
}
