//! Test-only oracles and generators, written independently of the library's
//! classification code.
#![allow(dead_code)]

use std::sync::Arc;

use contraction_core::{
    metric_closure, ContractionClass, FiniteMetricSpace, PointId, Rational, SelfMap,
};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Q = Ratio<i64>;

pub fn to_q(r: &Rational) -> Q {
    let n = i64::try_from(r.numerator()).expect("small numerator");
    let d = i64::try_from(r.denominator()).expect("small denominator");
    Q::new(n, d)
}

pub fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

/// Full distance matrix as machine rationals.
pub fn matrix(space: &FiniteMetricSpace) -> Vec<Vec<Q>> {
    let n = space.len();
    (0..n)
        .map(|i| (0..n).map(|j| to_q(space.dist(i, j))).collect())
        .collect()
}

/// Defining `(numerator, denominator)` of each class at an ordered tuple,
/// spelled out from the definitions.
pub fn oracle_terms(class: ContractionClass, d: &[Vec<Q>], t: &[usize], x: &[usize]) -> (Q, Q) {
    use ContractionClass::*;
    match class {
        Banach => (d[t[x[0]]][t[x[1]]], d[x[0]][x[1]]),
        Kannan => (d[t[x[0]]][t[x[1]]], d[x[0]][t[x[0]]] + d[x[1]][t[x[1]]]),
        Chatterjea => (d[t[x[0]]][t[x[1]]], d[x[0]][t[x[1]]] + d[x[1]][t[x[0]]]),
        GeneralizedKannan | GeneralizedChatterjea | PerimeterContracting => {
            let (a, b, c) = (x[0], x[1], x[2]);
            let m = d[t[a]][t[b]] + d[t[b]][t[c]] + d[t[c]][t[a]];
            let den = match class {
                GeneralizedKannan => d[a][t[a]] + d[b][t[b]] + d[c][t[c]],
                GeneralizedChatterjea => {
                    d[a][t[b]] + d[b][t[a]] + d[b][t[c]] + d[c][t[a]] + d[c][t[b]] + d[a][t[c]]
                }
                _ => d[a][b] + d[b][c] + d[c][a],
            };
            (m, den)
        }
    }
}

/// All ordered tuples of pairwise distinct indices.
pub fn ordered_tuples(n: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if b == a {
                continue;
            }
            if arity == 2 {
                out.push(vec![a, b]);
                continue;
            }
            for c in 0..n {
                if c != a && c != b {
                    out.push(vec![a, b, c]);
                }
            }
        }
    }
    out
}

/// Sorted grid `{p/q : 1 <= q <= max_den, 0 <= p/q <= max_value}`.
pub fn lambda_grid(max_den: i64, max_value: i64) -> Vec<Q> {
    let mut g: Vec<Q> = (1..=max_den)
        .flat_map(|q| (0..=max_value * q).map(move |p| Q::new(p, q)))
        .collect();
    g.sort();
    g.dedup();
    g
}

pub fn bound_q(class: ContractionClass) -> Q {
    use ContractionClass::*;
    match class {
        Banach | PerimeterContracting => Q::new(1, 1),
        Kannan | Chatterjea | GeneralizedChatterjea => Q::new(1, 2),
        GeneralizedKannan => Q::new(2, 3),
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    /// Smallest grid value for which the inequality holds on every tuple.
    pub lambda: Option<Q>,
    /// Some grid value in `[0, bound)` satisfies every inequality.
    pub member: bool,
}

/// Evaluates `num <= λ · den` over every ordered tuple for grid values of λ.
/// Feasibility is monotone in λ, so the smallest feasible value is found by
/// bisection over the sorted grid.
pub fn grid_oracle(map: &SelfMap, class: ContractionClass, grid: &[Q]) -> OracleVerdict {
    let d = matrix(map.space());
    let t = map.table();
    let tuples = ordered_tuples(map.space().len(), class.arity());
    let terms: Vec<(Q, Q)> = tuples
        .iter()
        .map(|x| oracle_terms(class, &d, t, x))
        .collect();
    let feasible = |l: &Q| terms.iter().all(|(num, den)| *num <= l * den);
    let first = grid.partition_point(|l| !feasible(l));
    let lambda = grid.get(first).copied();
    let bound = bound_q(class);
    let member = grid.iter().filter(|l| **l < bound).any(feasible);
    OracleVerdict { lambda, member }
}

pub fn pid(s: &str) -> PointId {
    PointId::new(s).unwrap()
}

/// Complete graph on `n` points with integer weights in `1..=max_weight`,
/// closed under shortest paths.
pub fn integer_space(n: usize, max_weight: i64, rng: &mut ChaCha8Rng) -> Arc<FiniteMetricSpace> {
    let pts = contraction_core::space::numbered_points("q", n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((
                pts[i].clone(),
                pts[j].clone(),
                Rational::from_integer(rng.gen_range(1..=max_weight)),
            ));
        }
    }
    Arc::new(metric_closure(&pts, &edges).unwrap())
}

pub fn uniform_map(space: Arc<FiniteMetricSpace>, rng: &mut ChaCha8Rng) -> SelfMap {
    let n = space.len();
    let table = (0..n).map(|_| rng.gen_range(0..n)).collect();
    SelfMap::from_indices(space, table).unwrap()
}

/// Maps into a random subset of at most `k` points; such maps land in the
/// contractive classes far more often than uniform ones.
pub fn narrow_map(space: Arc<FiniteMetricSpace>, k: usize, rng: &mut ChaCha8Rng) -> SelfMap {
    let n = space.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    idx.truncate(k.clamp(1, n));
    let table = (0..n).map(|_| *idx.choose(rng).unwrap()).collect();
    SelfMap::from_indices(space, table).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shortest path lengths by enumerating every simple path.
pub fn simple_path_distances(n: usize, edges: &[(usize, usize, Q)]) -> Vec<Vec<Option<Q>>> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b, w) in edges {
        adj[a].push((b, w));
        adj[b].push((a, w));
    }
    let mut best = vec![vec![None; n]; n];
    fn dfs(
        at: usize,
        len: Q,
        visited: &mut Vec<bool>,
        adj: &[Vec<(usize, Q)>],
        row: &mut Vec<Option<Q>>,
    ) {
        if row[at].is_none_or(|b: Q| len < b) {
            row[at] = Some(len);
        }
        for &(next, w) in &adj[at] {
            if !visited[next] {
                visited[next] = true;
                dfs(next, len + w, visited, adj, row);
                visited[next] = false;
            }
        }
    }
    for s in 0..n {
        let mut visited = vec![false; n];
        visited[s] = true;
        dfs(s, Q::from_integer(0), &mut visited, &adj, &mut best[s]);
    }
    best
}

/// Random connected graph: a random spanning tree plus extra edges, weights
/// on the 1/100 grid.
pub fn random_connected_graph(
    n: usize,
    rng: &mut ChaCha8Rng,
) -> (Vec<PointId>, Vec<(PointId, PointId, Rational)>) {
    let pts = contraction_core::space::numbered_points("v", n);
    let mut edges = Vec::new();
    let w = |rng: &mut ChaCha8Rng| Rational::new(rng.gen_range(1..=500), 100);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((pts[j].clone(), pts[i].clone(), w(rng)));
    }
    let extra = rng.gen_range(0..=n);
    for _ in 0..extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            edges.push((pts[a].clone(), pts[b].clone(), w(rng)));
        }
    }
    (pts, edges)
}
