//! Contraction classes and their exact optimal coefficients.
//!
//! Every class is defined by an inequality `numerator <= λ · denominator`
//! that must hold for all pairs (or all triples) of pairwise distinct points.
//! On a finite space the supremum of `numerator / denominator` is attained,
//! so the map belongs to the class iff that maximum, `λ*`, is strictly below
//! the class bound.
//!
//! | class                   | arity | numerator      | denominator                       | bound |
//! |-------------------------|-------|----------------|-----------------------------------|-------|
//! | Banach                  | 2     | d(Tx,Ty)       | d(x,y)                            | 1     |
//! | Kannan                  | 2     | d(Tx,Ty)       | d(x,Tx)+d(y,Ty)                   | 1/2   |
//! | generalized Kannan      | 3     | M(x,y,z)       | d(x,Tx)+d(y,Ty)+d(z,Tz)           | 2/3   |
//! | Chatterjea              | 2     | d(Tx,Ty)       | d(x,Ty)+d(y,Tx)                   | 1/2   |
//! | generalized Chatterjea  | 3     | M(x,y,z)       | N(x,y,z)                          | 1/2   |
//! | perimeter contracting   | 3     | M(x,y,z)       | d(x,y)+d(y,z)+d(z,x)              | 1     |
//!
//! Here `M` is the perimeter of the image triangle and `N` is the sum of the
//! six cross distances from a point to the image of another point.
//!
//! The generalized Kannan denominator is the displacement sum. The defining
//! inequality is sometimes printed with the perimeter `d(x,y)+d(y,z)+d(z,x)`
//! on the right, which would make it the perimeter class with a looser
//! bound; the worked examples of that class all test displacement sums, and
//! that is what is implemented here.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::mapping::SelfMap;
use crate::rational::Rational;
use crate::space::PointId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ContractionClass {
    Banach,
    Kannan,
    GeneralizedKannan,
    Chatterjea,
    GeneralizedChatterjea,
    PerimeterContracting,
}

impl ContractionClass {
    pub const ALL: [ContractionClass; 6] = [
        ContractionClass::Banach,
        ContractionClass::Kannan,
        ContractionClass::GeneralizedKannan,
        ContractionClass::Chatterjea,
        ContractionClass::GeneralizedChatterjea,
        ContractionClass::PerimeterContracting,
    ];

    /// Bound as `(numerator, denominator)`.
    fn bound_parts(self) -> (i64, i64) {
        match self {
            ContractionClass::Banach | ContractionClass::PerimeterContracting => (1, 1),
            ContractionClass::Kannan
            | ContractionClass::Chatterjea
            | ContractionClass::GeneralizedChatterjea => (1, 2),
            ContractionClass::GeneralizedKannan => (2, 3),
        }
    }

    /// Membership requires `λ* < bound`.
    pub fn bound(self) -> Rational {
        let (n, d) = self.bound_parts();
        Rational::new(n, d)
    }

    pub fn arity(self) -> usize {
        match self {
            ContractionClass::Banach | ContractionClass::Kannan | ContractionClass::Chatterjea => 2,
            _ => 3,
        }
    }

    /// Kebab-case name used on the command line and in JSON reports.
    pub fn name(self) -> &'static str {
        match self {
            ContractionClass::Banach => "banach",
            ContractionClass::Kannan => "kannan",
            ContractionClass::GeneralizedKannan => "generalized-kannan",
            ContractionClass::Chatterjea => "chatterjea",
            ContractionClass::GeneralizedChatterjea => "generalized-chatterjea",
            ContractionClass::PerimeterContracting => "perimeter",
        }
    }
}

impl fmt::Display for ContractionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ContractionClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ContractionClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown class {s:?}")))
    }
}

impl Serialize for ContractionClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Arithmetic needed by the ratio computations. Implemented for exact
/// rationals and for integer-scaled distances; every class ratio is
/// homogeneous of degree one in the distances, so scaling all of them by a
/// common factor leaves each ratio unchanged.
trait Scalar: Clone + Ord {
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn times_int(&self, k: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn to_rational(&self, scale: &Rational) -> Rational;
    /// `self / other` for positive `other`.
    fn ratio(&self, other: &Self) -> Rational;
}

impl Scalar for i128 {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn times_int(&self, k: i64) -> Self {
        self * k as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn to_rational(&self, scale: &Rational) -> Rational {
        &Rational::from(num_bigint::BigInt::from(*self)) / scale
    }
    fn ratio(&self, other: &Self) -> Rational {
        Rational::from_parts((*self).into(), (*other).into())
    }
}

impl Scalar for Rational {
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn times_int(&self, k: i64) -> Self {
        self * &Rational::from_integer(k)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn to_rational(&self, _scale: &Rational) -> Rational {
        self.clone()
    }
    fn ratio(&self, other: &Self) -> Rational {
        self / other
    }
}

/// Full distance matrix plus the map's image table.
struct View<'a, S> {
    n: usize,
    d: &'a [S],
    img: &'a [usize],
}

impl<S: Scalar> View<'_, S> {
    #[inline]
    fn d(&self, i: usize, j: usize) -> &S {
        &self.d[i * self.n + j]
    }

    fn m(&self, x: usize, y: usize, z: usize) -> S {
        let (tx, ty, tz) = (self.img[x], self.img[y], self.img[z]);
        self.d(tx, ty).plus(self.d(ty, tz)).plus(self.d(tz, tx))
    }

    fn n(&self, x: usize, y: usize, z: usize) -> S {
        let (tx, ty, tz) = (self.img[x], self.img[y], self.img[z]);
        self.d(x, ty)
            .plus(self.d(y, tx))
            .plus(self.d(y, tz))
            .plus(self.d(z, tx))
            .plus(self.d(z, ty))
            .plus(self.d(x, tz))
    }

    fn displacement(&self, x: usize) -> &S {
        self.d(x, self.img[x])
    }

    fn terms(&self, class: ContractionClass, t: &[usize]) -> (S, S) {
        match (class, t) {
            (ContractionClass::Banach, &[x, y]) => (
                self.d(self.img[x], self.img[y]).clone(),
                self.d(x, y).clone(),
            ),
            (ContractionClass::Kannan, &[x, y]) => (
                self.d(self.img[x], self.img[y]).clone(),
                self.displacement(x).plus(self.displacement(y)),
            ),
            (ContractionClass::Chatterjea, &[x, y]) => (
                self.d(self.img[x], self.img[y]).clone(),
                self.d(x, self.img[y]).plus(self.d(y, self.img[x])),
            ),
            (ContractionClass::GeneralizedKannan, &[x, y, z]) => (
                self.m(x, y, z),
                self.displacement(x)
                    .plus(self.displacement(y))
                    .plus(self.displacement(z)),
            ),
            (ContractionClass::GeneralizedChatterjea, &[x, y, z]) => {
                (self.m(x, y, z), self.n(x, y, z))
            }
            (ContractionClass::PerimeterContracting, &[x, y, z]) => (
                self.m(x, y, z),
                self.d(x, y).plus(self.d(y, z)).plus(self.d(z, x)),
            ),
            _ => unreachable!("arity checked by caller"),
        }
    }
}

fn exact_matrix(map: &SelfMap) -> Vec<Rational> {
    let space = map.space();
    let n = space.len();
    let mut d = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            d.push(space.dist(i, j).clone());
        }
    }
    d
}

/// Runs `f` with the fastest exact view of the map's distances available.
macro_rules! with_view {
    ($map:expr, |$view:ident, $scale:ident| $body:expr) => {{
        let map: &SelfMap = $map;
        let n = map.space().len();
        match map.space().scaled() {
            Some(scaled) => {
                let $view = View {
                    n,
                    d: &scaled.matrix,
                    img: map.table(),
                };
                let $scale = &scaled.scale;
                $body
            }
            None => {
                let d = exact_matrix(map);
                let $view = View {
                    n,
                    d: &d,
                    img: map.table(),
                };
                let one = Rational::one();
                let $scale = &one;
                $body
            }
        }
    }};
}

fn resolve_distinct(map: &SelfMap, names: &[&str]) -> Result<Vec<usize>> {
    let idx = names
        .iter()
        .map(|n| map.space().require_index(n))
        .collect::<Result<Vec<_>>>()?;
    for (a, &i) in idx.iter().enumerate() {
        if idx[..a].contains(&i) {
            return Err(Error::NotDistinct(
                names.iter().map(|s| s.to_string()).collect(),
            ));
        }
    }
    Ok(idx)
}

/// `M` and `N` of an unordered triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleScores {
    /// The triple in lexicographic order.
    pub triple: [PointId; 3],
    /// Perimeter of the image triangle.
    pub m: Rational,
    /// Sum of the six cross distances `d(p, Tq)`, `p != q`.
    pub n: Rational,
}

pub fn triple_scores(map: &SelfMap, x: &str, y: &str, z: &str) -> Result<TripleScores> {
    let mut idx = resolve_distinct(map, &[x, y, z])?;
    idx.sort_unstable();
    let (m, n) = with_view!(map, |v, scale| {
        let (a, b) = (v.m(idx[0], idx[1], idx[2]), v.n(idx[0], idx[1], idx[2]));
        (a.to_rational(scale), b.to_rational(scale))
    });
    let p = |i: usize| map.space().point(idx[i]).clone();
    Ok(TripleScores {
        triple: [p(0), p(1), p(2)],
        m,
        n,
    })
}

/// The class-defining `(numerator, denominator)` at one tuple of distinct
/// points.
pub fn class_ratio_terms(
    map: &SelfMap,
    class: ContractionClass,
    tuple: &[&str],
) -> Result<(Rational, Rational)> {
    if tuple.len() != class.arity() {
        return Err(Error::ArityMismatch {
            class: class.to_string(),
            expected: class.arity(),
            got: tuple.len(),
        });
    }
    let mut idx = resolve_distinct(map, tuple)?;
    idx.sort_unstable();
    Ok(with_view!(map, |v, scale| {
        let (a, b) = v.terms(class, &idx);
        (a.to_rational(scale), b.to_rational(scale))
    }))
}

/// Optimal coefficient: a finite maximum, or unbounded when some tuple has a
/// zero denominator under a positive numerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coefficient {
    Finite(Rational),
    Unbounded,
}

impl Coefficient {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Coefficient::Finite(r) => Some(r),
            Coefficient::Unbounded => None,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Finite(r) => fmt::Display::fmt(r, f),
            Coefficient::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub tuple: Vec<PointId>,
    pub numerator: Rational,
    pub denominator: Rational,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.tuple.iter().map(PointId::as_str).collect();
        write!(
            f,
            "({}) num={} den={}",
            names.join(","),
            self.numerator,
            self.denominator
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub class: ContractionClass,
    pub bound: Rational,
    pub lambda_star: Coefficient,
    pub member: bool,
    /// Tuple attaining `lambda_star` (the first degenerate tuple when
    /// degenerate). `None` only when every tuple is `0/0`.
    pub witness: Option<Witness>,
    pub degenerate: bool,
    /// The space samples the real line, so `lambda_star` is a lower bound on
    /// the coefficient over the whole line.
    pub sampled: bool,
}

/// Calls `f` on every increasing index tuple of the class arity, in
/// lexicographic order; stops early when `f` returns `false`.
fn for_each_tuple(n: usize, arity: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if arity == 2 {
        for i in 0..n {
            for j in i + 1..n {
                if !f(&[i, j]) {
                    return;
                }
            }
        }
    } else {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if !f(&[i, j, k]) {
                        return;
                    }
                }
            }
        }
    }
}

fn check_size(map: &SelfMap, class: ContractionClass) -> Result<()> {
    let needed = class.arity().max(3);
    let got = map.space().len();
    if got < needed {
        return Err(Error::TooFewPoints { needed, got });
    }
    Ok(())
}

struct Extremum<S> {
    tuple: Vec<usize>,
    num: S,
    den: S,
}

fn reduce<S: Scalar>(v: &View<'_, S>, class: ContractionClass) -> (Option<Extremum<S>>, bool) {
    let mut best: Option<Extremum<S>> = None;
    let mut degenerate: Option<Extremum<S>> = None;
    for_each_tuple(v.n, class.arity(), |t| {
        let (num, den) = v.terms(class, t);
        if den.is_zero() {
            if !num.is_zero() {
                degenerate = Some(Extremum {
                    tuple: t.to_vec(),
                    num,
                    den,
                });
                return false;
            }
            return true;
        }
        let better = match &best {
            None => true,
            Some(b) => num.times(&b.den).cmp(&b.num.times(&den)) == Ordering::Greater,
        };
        if better {
            best = Some(Extremum {
                tuple: t.to_vec(),
                num,
                den,
            });
        }
        true
    });
    match degenerate {
        Some(d) => (Some(d), true),
        None => (best, false),
    }
}

/// Exact optimal coefficient, membership and extremal witness for one class.
///
/// Ties between maximal tuples go to the lexicographically smallest tuple.
pub fn classify(map: &SelfMap, class: ContractionClass) -> Result<ClassReport> {
    check_size(map, class)?;
    let space = map.space();
    let (lambda_star, witness, degenerate) = with_view!(map, |v, scale| {
        let (ext, degenerate) = reduce(&v, class);
        let lambda = match (&ext, degenerate) {
            (_, true) => Coefficient::Unbounded,
            (Some(e), false) => Coefficient::Finite(e.num.ratio(&e.den)),
            (None, false) => Coefficient::Finite(Rational::zero()),
        };
        let witness = ext.map(|e| Witness {
            tuple: e.tuple.iter().map(|&i| space.point(i).clone()).collect(),
            numerator: e.num.to_rational(scale),
            denominator: e.den.to_rational(scale),
        });
        (lambda, witness, degenerate)
    });
    let bound = class.bound();
    let member = match &lambda_star {
        Coefficient::Finite(l) => !degenerate && *l < bound,
        Coefficient::Unbounded => false,
    };
    Ok(ClassReport {
        class,
        bound,
        lambda_star,
        member,
        witness,
        degenerate,
        sampled: space.is_line_sample(),
    })
}

/// Reports for all six classes, in [`ContractionClass::ALL`] order.
pub fn classify_all(map: &SelfMap) -> Result<Vec<ClassReport>> {
    ContractionClass::ALL
        .into_iter()
        .map(|c| classify(map, c))
        .collect()
}

/// Membership only, stopping at the first tuple that breaks the bound.
///
/// Agrees with `classify(map, class)?.member`.
pub fn is_member(map: &SelfMap, class: ContractionClass) -> Result<bool> {
    check_size(map, class)?;
    let (bn, bd) = class.bound_parts();
    Ok(with_view!(map, |v, _scale| {
        let mut ok = true;
        for_each_tuple(v.n, class.arity(), |t| {
            let (num, den) = v.terms(class, t);
            if num.is_zero() && den.is_zero() {
                return true;
            }
            // num/den < bn/bd, and den = 0 with num > 0 fails here too
            ok = num.times_int(bd) < den.times_int(bn);
            ok
        });
        ok
    }))
}
