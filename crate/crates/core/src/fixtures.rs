//! Built-in instances: the three worked examples and a few small maps used
//! across tests and the command line.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::mapping::SelfMap;
use crate::rational::Rational;
use crate::space::{line_sample_space, metric_closure, FiniteMetricSpace, PointId};

fn pid(name: &str) -> PointId {
    PointId::new(name).expect("valid built-in name")
}

/// Three points `x, y, z` at mutual distance 1.
pub fn equilateral() -> Arc<FiniteMetricSpace> {
    let pts: Vec<PointId> = ["x", "y", "z"].into_iter().map(pid).collect();
    let one = Rational::one();
    let edges = vec![
        (pid("x"), pid("y"), one.clone()),
        (pid("y"), pid("z"), one.clone()),
        (pid("x"), pid("z"), one),
    ];
    Arc::new(metric_closure(&pts, &edges).expect("equilateral triangle"))
}

/// Equilateral triangle with `Tx = x, Ty = y, Tz = x`: two fixed points,
/// generalized Chatterjea with coefficient 2/5, not Chatterjea.
pub fn equilateral_map() -> SelfMap {
    SelfMap::from_pairs(equilateral(), [("x", "x"), ("y", "y"), ("z", "x")]).expect("total map")
}

/// `Tx = y, Ty = x, Tz = z` on the equilateral triangle.
pub fn swap_map() -> SelfMap {
    SelfMap::from_pairs(equilateral(), [("x", "y"), ("y", "x"), ("z", "z")]).expect("total map")
}

/// Six points `A..F` with the graph metric of the unit-edge graph
/// AB, AC, BC, BD, CE, DE, DF, EF.
pub fn six_point_space() -> Arc<FiniteMetricSpace> {
    let pts: Vec<PointId> = ["A", "B", "C", "D", "E", "F"]
        .into_iter()
        .map(pid)
        .collect();
    let edges: Vec<_> = ["AB", "AC", "BC", "BD", "CE", "DE", "DF", "EF"]
        .iter()
        .map(|e| (pid(&e[..1]), pid(&e[1..]), Rational::one()))
        .collect();
    Arc::new(metric_closure(&pts, &edges).expect("connected graph"))
}

/// `TA = TD = TE = TF = F`, `TB = D`, `TC = E` on [`six_point_space`]:
/// generalized Chatterjea with coefficient 1/3 and in none of the other five
/// classes.
pub fn six_point_map() -> SelfMap {
    SelfMap::from_pairs(
        six_point_space(),
        [
            ("A", "F"),
            ("B", "D"),
            ("C", "E"),
            ("D", "F"),
            ("E", "F"),
            ("F", "F"),
        ],
    )
    .expect("total map")
}

/// Step map `T x = 0` for `x < 2`, `T x = 1` for `x >= 2` on a sampled line.
/// The sample must contain the points 0 and 1.
pub fn step2(space: Arc<FiniteMetricSpace>) -> Result<SelfMap> {
    if !space.is_line_sample() {
        return Err(Error::InvalidArgument("step2 needs a sampled line".into()));
    }
    let zero = space.require_index("0")?;
    let one = space.require_index("1")?;
    let two = Rational::from_integer(2);
    let table = (0..space.len())
        .map(|i| {
            if space.coordinate(i).expect("line sample") < &two {
                zero
            } else {
                one
            }
        })
        .collect();
    SelfMap::from_indices(space, table)
}

/// [`step2`] on the grid `0, 1/10, ..., 4` with `19/10` and `21/10` listed
/// as extra points.
pub fn step2_default() -> Result<SelfMap> {
    let space = line_sample_space(
        &Rational::zero(),
        &Rational::from_integer(4),
        &Rational::new(1, 10),
        &[Rational::new(19, 10), Rational::new(21, 10)],
    )?;
    step2(Arc::new(space))
}
