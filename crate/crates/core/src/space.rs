//! Finite metric spaces with exact rational distances.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Name of a point. Ordering is byte-lexicographic and drives every
/// tie-break in the crate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct PointId(String);

impl PointId {
    /// Accepts letters, digits, `_`, `.`, `-` and `/` (the last so that points
    /// of a sampled line can be named by their exact value, e.g. `19/10`).
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        let ok = !name.is_empty()
            && name
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || matches!(b, b'_' | b'.' | b'-' | b'/'));
        if ok {
            Ok(PointId(name))
        } else {
            Err(Error::InvalidPointId(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::str::FromStr for PointId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        PointId::new(s)
    }
}

/// Declaration order is the sort order of violation reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ViolationKind {
    NonZeroDiagonal,
    NonPositive,
    Asymmetric,
    TriangleViolation,
    TooFewPoints,
    MissingPair,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct MetricViolation {
    pub kind: ViolationKind,
    pub witness: Vec<PointId>,
    pub values: Vec<Rational>,
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<&str> = self.witness.iter().map(PointId::as_str).collect();
        let v: Vec<String> = self.values.iter().map(Rational::to_string).collect();
        match self.kind {
            ViolationKind::TriangleViolation => write!(
                f,
                "TriangleViolation({}): d({},{}) = {} > {} + {}",
                w.join(","),
                w[0],
                w[2],
                v[0],
                v[1],
                v[2]
            ),
            ViolationKind::TooFewPoints => {
                write!(
                    f,
                    "TooFewPoints: {} point(s), at least 3 required",
                    v.join("")
                )
            }
            kind => write!(f, "{:?}({}) [{}]", kind, w.join(","), v.join(", ")),
        }
    }
}

/// Raw, unvalidated distance entries keyed by ordered point pairs.
///
/// Both orientations of a pair may be present; [`validate_metric`] reports
/// them as asymmetric when they disagree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DistanceTable {
    entries: BTreeMap<(PointId, PointId), Rational>,
}

impl DistanceTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the previous value for the same ordered pair, if any.
    pub fn insert(&mut self, a: PointId, b: PointId, value: Rational) -> Option<Rational> {
        self.entries.insert((a, b), value)
    }

    pub fn get(&self, a: &PointId, b: &PointId) -> Option<&Rational> {
        self.entries.get(&(a.clone(), b.clone()))
    }

    /// Value for an unordered pair, preferring the `(min, max)` orientation.
    fn lookup(&self, a: &PointId, b: &PointId) -> Option<&Rational> {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        self.get(lo, hi).or_else(|| self.get(hi, lo))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Checks every metric axiom and returns all violations, sorted by kind and
/// then witness. An empty result means the candidate is a valid space.
///
/// Entries naming points outside `points` are ignored. A missing diagonal
/// entry counts as zero.
pub fn validate_metric(points: &[PointId], table: &DistanceTable) -> Vec<MetricViolation> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let mut out = Vec::new();

    if pts.len() < 3 {
        out.push(MetricViolation {
            kind: ViolationKind::TooFewPoints,
            witness: Vec::new(),
            values: vec![Rational::from_integer(pts.len() as i64)],
        });
    }

    for p in &pts {
        if let Some(v) = table.get(p, p) {
            if !v.is_zero() {
                out.push(MetricViolation {
                    kind: ViolationKind::NonZeroDiagonal,
                    witness: vec![p.clone()],
                    values: vec![v.clone()],
                });
            }
        }
    }

    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            match (table.get(p, q), table.get(q, p)) {
                (None, None) => out.push(MetricViolation {
                    kind: ViolationKind::MissingPair,
                    witness: vec![p.clone(), q.clone()],
                    values: Vec::new(),
                }),
                (a, b) => {
                    if let (Some(a), Some(b)) = (a, b) {
                        if a != b {
                            out.push(MetricViolation {
                                kind: ViolationKind::Asymmetric,
                                witness: vec![p.clone(), q.clone()],
                                values: vec![a.clone(), b.clone()],
                            });
                        }
                    }
                    let v = a.or(b).expect("one orientation present");
                    if !v.is_positive() {
                        out.push(MetricViolation {
                            kind: ViolationKind::NonPositive,
                            witness: vec![p.clone(), q.clone()],
                            values: vec![v.clone()],
                        });
                    }
                }
            }
        }
    }

    for (i, p) in pts.iter().enumerate() {
        for r in &pts[i + 1..] {
            let Some(pr) = table.lookup(p, r) else {
                continue;
            };
            for q in &pts {
                if q == p || q == r {
                    continue;
                }
                let (Some(pq), Some(qr)) = (table.lookup(p, q), table.lookup(q, r)) else {
                    continue;
                };
                if pr > &(pq + qr) {
                    out.push(MetricViolation {
                        kind: ViolationKind::TriangleViolation,
                        witness: vec![p.clone(), q.clone(), r.clone()],
                        values: vec![pr.clone(), pq.clone(), qr.clone()],
                    });
                }
            }
        }
    }

    out.sort();
    out
}

/// A validated finite metric space.
///
/// Points are kept in lexicographic order and addressed by index; distances
/// are stored once per unordered pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    points: Vec<PointId>,
    dist: Vec<Rational>,
    zero: Rational,
    coordinates: Option<Vec<Rational>>,
    scaled: Option<ScaledDistances>,
}

/// All distances multiplied by the least common multiple of their
/// denominators, as a full row-major matrix of machine integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ScaledDistances {
    pub(crate) scale: Rational,
    pub(crate) matrix: Vec<i128>,
}

/// Keeps sums of six entries and pairwise products of such sums inside i128.
const SCALED_LIMIT: i128 = 1 << 58;

fn scale_distances(n: usize, dist: &[Rational]) -> Option<ScaledDistances> {
    use num_integer::Integer;
    let mut lcm = num_bigint::BigInt::from(1);
    for d in dist {
        lcm = lcm.lcm(d.denominator());
    }
    let scale = Rational::from(lcm);
    let mut matrix = vec![0i128; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = &dist[pair_index(n, i, j)] * &scale;
            let v = i128::try_from(v.numerator())
                .ok()
                .filter(|v| *v < SCALED_LIMIT)?;
            matrix[i * n + j] = v;
            matrix[j * n + i] = v;
        }
    }
    Some(ScaledDistances { scale, matrix })
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

impl FiniteMetricSpace {
    /// Builds a space from a point list and distance table, failing with
    /// [`Error::InvalidMetric`] when [`validate_metric`] finds anything.
    pub fn from_table(points: Vec<PointId>, table: &DistanceTable) -> Result<Self> {
        let mut points = points;
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint(w[0].to_string()));
        }
        let violations = validate_metric(&points, table);
        if !violations.is_empty() {
            return Err(Error::InvalidMetric(violations));
        }
        let n = points.len();
        let mut dist = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                dist.push(
                    table
                        .lookup(&points[i], &points[j])
                        .expect("validated")
                        .clone(),
                );
            }
        }
        let scaled = scale_distances(n, &dist);
        Ok(FiniteMetricSpace {
            points,
            dist,
            zero: Rational::zero(),
            coordinates: None,
            scaled,
        })
    }

    /// Builds from a full distance function over already sorted, distinct
    /// points, then validates.
    fn from_fn(points: Vec<PointId>, mut d: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let mut table = DistanceTable::new();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                table.insert(points[i].clone(), points[j].clone(), d(i, j));
            }
        }
        Self::from_table(points, &table)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[PointId] {
        &self.points
    }

    pub fn point(&self, index: usize) -> &PointId {
        &self.points[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.points.binary_search_by(|p| p.as_str().cmp(name)).ok()
    }

    pub fn require_index(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownPoint(name.to_string()))
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => &self.zero,
            std::cmp::Ordering::Less => &self.dist[pair_index(self.len(), i, j)],
            std::cmp::Ordering::Greater => &self.dist[pair_index(self.len(), j, i)],
        }
    }

    pub fn dist_by_name(&self, a: &str, b: &str) -> Result<&Rational> {
        Ok(self.dist(self.require_index(a)?, self.require_index(b)?))
    }

    /// Unordered pairs `(i, j)` with `i < j` and their distances.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        let n = self.len();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j, self.dist(i, j))))
    }

    pub(crate) fn scaled(&self) -> Option<&ScaledDistances> {
        self.scaled.as_ref()
    }

    /// `true` when the space is a finite sample of the real line.
    pub fn is_line_sample(&self) -> bool {
        self.coordinates.is_some()
    }

    /// Real-line coordinate of a point, for sampled line spaces.
    pub fn coordinate(&self, index: usize) -> Option<&Rational> {
        self.coordinates.as_ref().map(|c| &c[index])
    }
}

/// Shortest-path closure of a positively weighted graph.
///
/// Repeated edges keep the smaller weight.
pub fn metric_closure(
    points: &[PointId],
    edges: &[(PointId, PointId, Rational)],
) -> Result<FiniteMetricSpace> {
    let mut pts = points.to_vec();
    pts.sort();
    if let Some(w) = pts.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoint(w[0].to_string()));
    }
    let n = pts.len();
    let index = |p: &PointId| {
        pts.binary_search(p)
            .map_err(|_| Error::UnknownPoint(p.to_string()))
    };
    let mut d: Vec<Vec<Option<Rational>>> = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(Rational::zero());
    }
    for (a, b, w) in edges {
        let (i, j) = (index(a)?, index(b)?);
        if i == j {
            return Err(Error::InvalidArgument(format!("self-loop at {a}")));
        }
        if !w.is_positive() {
            return Err(Error::NonPositiveWeight {
                a: a.to_string(),
                b: b.to_string(),
                weight: w.to_string(),
            });
        }
        if d[i][j].as_ref().is_none_or(|cur| w < cur) {
            d[i][j] = Some(w.clone());
            d[j][i] = Some(w.clone());
        }
    }
    #[allow(clippy::needless_range_loop)]
    for k in 0..n {
        for i in 0..n {
            let Some(ik) = d[i][k].clone() else { continue };
            for j in 0..n {
                let Some(kj) = &d[k][j] else { continue };
                let via = &ik + kj;
                if d[i][j].as_ref().is_none_or(|cur| via < *cur) {
                    d[i][j] = Some(via);
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if d[i][j].is_none() {
                return Err(Error::DisconnectedGraph(
                    pts[i].to_string(),
                    pts[j].to_string(),
                ));
            }
        }
    }
    FiniteMetricSpace::from_fn(pts, |i, j| d[i][j].clone().expect("connected"))
}

/// Denominator of the grid random weights are drawn from.
pub const WEIGHT_GRID: i64 = 100;

/// Seeded random space: a complete graph with weights drawn uniformly from
/// the `1/100` grid inside `[low, high]`, closed under shortest paths.
///
/// Points are named `p0`, `p1`, ... zero-padded so that name order matches
/// index order.
pub fn random_metric_space(
    n: usize,
    seed: u64,
    low: &Rational,
    high: &Rational,
) -> Result<FiniteMetricSpace> {
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let grid = Rational::from_integer(WEIGHT_GRID);
    let lo_k = (low * &grid).ceil();
    let hi_k = (high * &grid).floor();
    if !low.is_positive() || lo_k > hi_k {
        return Err(Error::InvalidArgument(format!(
            "weight range [{low}, {high}] has no positive grid point"
        )));
    }
    let to_i64 = |v: &num_bigint::BigInt| {
        i64::try_from(v).map_err(|_| Error::InvalidArgument("weight range too wide".into()))
    };
    let (lo_k, hi_k) = (to_i64(&lo_k)?, to_i64(&hi_k)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = numbered_points("p", n);
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let k = rng.gen_range(lo_k..=hi_k);
            edges.push((
                points[i].clone(),
                points[j].clone(),
                Rational::new(k, WEIGHT_GRID),
            ));
        }
    }
    metric_closure(&points, &edges)
}

/// `prefix0 .. prefix{n-1}`, zero-padded to a common width.
pub fn numbered_points(prefix: &str, n: usize) -> Vec<PointId> {
    let width = n.saturating_sub(1).to_string().len();
    (0..n)
        .map(|i| PointId::new(format!("{prefix}{i:0width$}")).expect("valid name"))
        .collect()
}

/// Finite sample of the real line with `d(x, y) = |x - y|`.
///
/// The grid runs from `start` to `stop` inclusive in steps of `step`; extra
/// points are merged in and duplicates dropped. Each point is named by its
/// canonical rational value (`2`, `19/10`, `-1/2`).
pub fn line_sample_space(
    start: &Rational,
    stop: &Rational,
    step: &Rational,
    extra_points: &[Rational],
) -> Result<FiniteMetricSpace> {
    if !step.is_positive() {
        return Err(Error::InvalidGrid(format!("step {step} must be positive")));
    }
    if start >= stop {
        return Err(Error::InvalidGrid(format!(
            "start {start} must be below stop {stop}"
        )));
    }
    let mut values = BTreeMap::new();
    let mut x = start.clone();
    while &x <= stop {
        values.insert(x.to_string(), x.clone());
        x = x + step;
    }
    for v in extra_points {
        values.insert(v.to_string(), v.clone());
    }
    if values.len() < 3 {
        return Err(Error::TooFewPoints {
            needed: 3,
            got: values.len(),
        });
    }
    let points = values
        .keys()
        .map(|k| PointId::new(k.clone()))
        .collect::<Result<Vec<_>>>()?;
    let coords: Vec<Rational> = values.into_values().collect();
    let mut space = FiniteMetricSpace::from_fn(points, |i, j| (&coords[i] - &coords[j]).abs())?;
    space.coordinates = Some(coords);
    Ok(space)
}
