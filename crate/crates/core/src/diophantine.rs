//! Rational Diophantine tuples and their certificates, the elliptic curve a
//! quadruple induces, the distinguished points P and Q, regularity, and the
//! quadruple→quintuple extension maps.

use crate::curve::{Curve, CurveError, Point};
use crate::numeric::Rat;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DioError {
    #[error("a Diophantine tuple needs at least two elements, got {0}")]
    TooShort(usize),
    #[error("element {0} is zero")]
    ZeroElement(usize),
    #[error("elements {0} and {1} are equal")]
    DuplicateElement(usize, usize),
    #[error("product of elements {i} and {j} plus 1 is {value}, not a square")]
    NotDiophantine { i: usize, j: usize, value: Rat },
    #[error("induced curves need exactly four elements, got {0}")]
    WrongArity(usize),
    #[error(transparent)]
    SingularCurve(#[from] CurveError),
    #[error("X = {0} is a pole of the substitution (dX + 1 = 0)")]
    SubstitutionPole(Rat),
    #[error("(aX+1)(bX+1)(cX+1)(dX+1) is not a rational square at X = {0}")]
    NoSquareRoot(Rat),
    #[error("malformed tuple: {0}")]
    ParseTuple(String),
    #[error("line {line}: malformed tuple: {msg}")]
    ParseFile { line: usize, msg: String },
}

/// Certificate for one pair: root² = elements[i]·elements[j] + 1, root ≥ 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairSquare {
    pub i: usize,
    pub j: usize,
    pub root: Rat,
}

/// Checks the full Diophantine-tuple property: distinct nonzero elements
/// whose pairwise products plus 1 are rational squares (0 counts as 0²).
/// Returns one certificate per pair in lexicographic (i,j) order, or the
/// first violation found.
pub fn check_tuple(elems: &[Rat]) -> Result<Vec<PairSquare>, DioError> {
    if elems.len() < 2 {
        return Err(DioError::TooShort(elems.len()));
    }
    if let Some(i) = elems.iter().position(Rat::is_zero) {
        return Err(DioError::ZeroElement(i));
    }
    let mut roots = Vec::with_capacity(elems.len() * (elems.len() - 1) / 2);
    for i in 0..elems.len() {
        for j in (i + 1)..elems.len() {
            if elems[i] == elems[j] {
                return Err(DioError::DuplicateElement(i, j));
            }
            let value = &elems[i] * &elems[j] + Rat::one();
            match value.square_root() {
                Some(root) => roots.push(PairSquare { i, j, root }),
                None => return Err(DioError::NotDiophantine { i, j, value }),
            }
        }
    }
    Ok(roots)
}

/// A verified rational Diophantine m-tuple with its square certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DioTuple {
    elems: Vec<Rat>,
    roots: Vec<PairSquare>,
}

impl DioTuple {
    pub fn new(elems: Vec<Rat>) -> Result<DioTuple, DioError> {
        let roots = check_tuple(&elems)?;
        Ok(DioTuple { elems, roots })
    }

    pub fn elements(&self) -> &[Rat] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// The nonnegative root of elements[i]·elements[j] + 1 for i ≠ j.
    pub fn pair_root(&self, i: usize, j: usize) -> &Rat {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        &self
            .roots
            .iter()
            .find(|ps| ps.i == i && ps.j == j)
            .expect("pair_root: indices out of range or equal")
            .root
    }

    pub fn certificates(&self) -> &[PairSquare] {
        &self.roots
    }
}

/// Exact regularity test for the pairing (a,b)|(c,d):
/// (a+b−c−d)² = 4(ab+1)(cd+1).
pub fn is_regular_quadruple(a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> bool {
    let lhs = (a + b - c - d).square();
    let rhs = Rat::from(4) * (a * b + Rat::one()) * (c * d + Rat::one());
    lhs == rhs
}

/// Regularity of all three pairings: (a,b)|(c,d), (a,c)|(b,d), (a,d)|(b,c).
pub fn regular_pairings(a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> [bool; 3] {
    [
        is_regular_quadruple(a, b, c, d),
        is_regular_quadruple(a, c, b, d),
        is_regular_quadruple(a, d, b, c),
    ]
}

/// The curve y² = x(x+p1)(x+p2) induced by an ordered quadruple (a,b,c,d),
/// with p1 = (b−a)(d−c), p2 = (c−a)(d−b), together with the distinguished
/// points P = ((b−a)(c−a), (b−a)(c−a)(d−a)) and Q = ((ad+1)(bc+1), ·),
/// where y(Q) is the product of the six pair roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedCurveBundle {
    quad: [Rat; 4],
    curve: Curve,
    p: Point,
    q: Point,
    roots: [Rat; 6],
}

pub fn induced_curve(t: &DioTuple) -> Result<InducedCurveBundle, DioError> {
    let [a, b, c, d] = match t.elements() {
        [a, b, c, d] => [a, b, c, d],
        other => return Err(DioError::WrongArity(other.len())),
    };
    let p1 = (b - a) * (d - c);
    let p2 = (c - a) * (d - b);
    let curve = Curve::new(p1, p2)?;
    let xp = (b - a) * (c - a);
    let p = Point::Affine(xp.clone(), xp * (d - a));
    let roots = [
        t.pair_root(0, 1).clone(), // ab
        t.pair_root(0, 2).clone(), // ac
        t.pair_root(0, 3).clone(), // ad
        t.pair_root(1, 2).clone(), // bc
        t.pair_root(1, 3).clone(), // bd
        t.pair_root(2, 3).clone(), // cd
    ];
    let xq = (a * d + Rat::one()) * (b * c + Rat::one());
    let yq = roots.iter().fold(Rat::one(), |acc, r| acc * r);
    let q = Point::Affine(xq, yq);
    debug_assert!(curve.contains(&p) && curve.contains(&q));
    Ok(InducedCurveBundle {
        quad: [a.clone(), b.clone(), c.clone(), d.clone()],
        curve,
        p,
        q,
        roots,
    })
}

/// One inverse-mapped extension candidate and its verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionCandidate {
    pub x: Rat,
    /// Which of aX+1, bX+1, cX+1, dX+1 are rational squares.
    pub square_conditions: [bool; 4],
    /// All four conditions hold and X is nonzero and distinct from a,b,c,d —
    /// adjoining X yields a rational Diophantine quintuple.
    pub is_extension: bool,
}

impl InducedCurveBundle {
    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    /// The ordered quadruple (a,b,c,d) this curve came from.
    pub fn elements(&self) -> &[Rat; 4] {
        &self.quad
    }

    pub fn point_p(&self) -> &Point {
        &self.p
    }

    pub fn point_q(&self) -> &Point {
        &self.q
    }

    /// Pair roots in the order ab, ac, ad, bc, bd, cd.
    pub fn six_roots(&self) -> &[Rat; 6] {
        &self.roots
    }

    /// Maps an extension candidate X to the curve point
    /// x = (aX+1)(d−b)(d−c)/(dX+1), y = Y(d−a)(d−b)(d−c)/(dX+1)²
    /// with Y the nonnegative root of (aX+1)(bX+1)(cX+1)(dX+1).
    pub fn extension_forward(&self, x_new: &Rat) -> Result<Point, DioError> {
        let [a, b, c, d] = &self.quad;
        let va = a * x_new + Rat::one();
        let vb = b * x_new + Rat::one();
        let vc = c * x_new + Rat::one();
        let vd = d * x_new + Rat::one();
        if vd.is_zero() {
            return Err(DioError::SubstitutionPole(x_new.clone()));
        }
        let y_quartic = (&va * &vb * &vc * &vd)
            .square_root()
            .ok_or_else(|| DioError::NoSquareRoot(x_new.clone()))?;
        let k = (d - b) * (d - c);
        let x = &va * &k / &vd;
        let y = y_quartic * (d - a) * k / (&vd * &vd);
        let pt = Point::Affine(x, y);
        debug_assert!(self.curve.contains(&pt));
        Ok(pt)
    }

    /// Inverts the substitution on x-coordinates: X = (K−x)/(dx−aK) with
    /// K = (d−b)(d−c); None at the exceptional point dx = aK (and at O).
    pub fn extension_inverse(&self, pt: &Point) -> Option<Rat> {
        let (x, _) = pt.xy()?;
        let [a, b, c, d] = &self.quad;
        let k = (d - b) * (d - c);
        let den = d * x - a * &k;
        if den.is_zero() {
            return None;
        }
        Some((&k - x) / den)
    }

    /// Inverse-maps each point and tests the four square conditions; the
    /// result is aligned with the input (None where the inverse is undefined).
    pub fn quintuple_candidates(&self, pts: &[Point]) -> Vec<Option<ExtensionCandidate>> {
        pts.iter()
            .map(|pt| {
                let x = self.extension_inverse(pt)?;
                let square_conditions: [bool; 4] = std::array::from_fn(|i| {
                    (&self.quad[i] * &x + Rat::one()).square_root().is_some()
                });
                let is_extension = square_conditions.iter().all(|&ok| ok)
                    && !x.is_zero()
                    && !self.quad.contains(&x);
                Some(ExtensionCandidate {
                    x,
                    square_conditions,
                    is_extension,
                })
            })
            .collect()
    }
}

/// All 24 role assignments (a,b,c,d) of a 4-element set, in lexicographic
/// index order. Different orderings induce different curve models.
pub fn quadruple_orderings(elems: &[Rat; 4]) -> Vec<[Rat; 4]> {
    let mut out = Vec::with_capacity(24);
    for i in 0..4 {
        for j in 0..4 {
            if j == i {
                continue;
            }
            for k in 0..4 {
                if k == i || k == j {
                    continue;
                }
                let l = 6 - i - j - k;
                out.push([
                    elems[i].clone(),
                    elems[j].clone(),
                    elems[k].clone(),
                    elems[l].clone(),
                ]);
            }
        }
    }
    out
}

/// One line of a tuple file: comma-separated fractions, 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleFileEntry {
    pub line: usize,
    pub elements: Vec<Rat>,
}

/// Parses a comma-separated list of fractions ("1,3,8,120").
pub fn parse_tuple_str(s: &str) -> Result<Vec<Rat>, DioError> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<Rat>()
                .map_err(|e| DioError::ParseTuple(format!("{:?}: {e}", tok.trim())))
        })
        .collect()
}

/// Parses a tuple file: one tuple per line, '#' lines and blank lines
/// skipped, elements unvalidated (run check_tuple on each entry).
pub fn parse_tuple_file(text: &str) -> Result<Vec<TupleFileEntry>, DioError> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let elements = parse_tuple_str(trimmed).map_err(|e| match e {
            DioError::ParseTuple(msg) => DioError::ParseFile { line, msg },
            other => other,
        })?;
        entries.push(TupleFileEntry { line, elements });
    }
    Ok(entries)
}
