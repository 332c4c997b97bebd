//! Self-maps of a finite metric space and their orbits.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::space::{FiniteMetricSpace, PointId};

/// A total map `T: X -> X`, stored as an image index per point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfMap {
    space: Arc<FiniteMetricSpace>,
    table: Vec<usize>,
}

impl SelfMap {
    /// `table[i]` is the index of `T(point i)`.
    pub fn from_indices(space: Arc<FiniteMetricSpace>, table: Vec<usize>) -> Result<Self> {
        if table.len() != space.len() {
            return Err(Error::InvalidArgument(format!(
                "map table has {} entries for {} points",
                table.len(),
                space.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= space.len()) {
            return Err(Error::InvalidArgument(format!(
                "image index {bad} out of range"
            )));
        }
        Ok(SelfMap { space, table })
    }

    /// Builds the map from `(x, T(x))` name pairs. Every point must appear
    /// exactly once as a source.
    pub fn from_pairs<'a>(
        space: Arc<FiniteMetricSpace>,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Self> {
        let mut table = vec![None; space.len()];
        for (x, y) in pairs {
            let i = space.require_index(x)?;
            let j = space.require_index(y)?;
            if table[i].replace(j).is_some() {
                return Err(Error::DuplicateImage(x.to_string()));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(i, t)| t.ok_or_else(|| Error::IncompleteMap(space.point(i).to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(SelfMap { space, table })
    }

    pub fn from_fn(space: Arc<FiniteMetricSpace>, f: impl Fn(usize) -> usize) -> Result<Self> {
        let table = (0..space.len()).map(f).collect();
        Self::from_indices(space, table)
    }

    pub fn identity(space: Arc<FiniteMetricSpace>) -> Self {
        let table = (0..space.len()).collect();
        SelfMap { space, table }
    }

    pub fn constant(space: Arc<FiniteMetricSpace>, target: usize) -> Result<Self> {
        Self::from_fn(space, |_| target)
    }

    pub fn space(&self) -> &FiniteMetricSpace {
        &self.space
    }

    pub fn space_arc(&self) -> &Arc<FiniteMetricSpace> {
        &self.space
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, index: usize) -> usize {
        self.table[index]
    }

    pub fn apply_by_name(&self, name: &str) -> Result<&PointId> {
        let i = self.space.require_index(name)?;
        Ok(self.space.point(self.table[i]))
    }
}

/// Points `p` with `T(p) = p`, in lexicographic order.
pub fn fixed_points(map: &SelfMap) -> Vec<PointId> {
    (0..map.space().len())
        .filter(|&i| map.apply(i) == i)
        .map(|i| map.space().point(i).clone())
        .collect()
}

/// Points of prime period 2: `T(T(p)) = p` and `T(p) != p`.
pub fn period_two_points(map: &SelfMap) -> Vec<PointId> {
    (0..map.space().len())
        .filter(|&i| {
            let t = map.apply(i);
            t != i && map.apply(t) == i
        })
        .map(|i| map.space().point(i).clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Terminus {
    /// The orbit reached a fixed point after `steps` applications of `T`.
    ReachedFixedPoint {
        point: PointId,
        steps: usize,
    },
    /// The orbit entered a cycle of length at least 2; `entry` is the
    /// sequence index of the first cycle point.
    EnteredCycle {
        cycle: Vec<PointId>,
        entry: usize,
    },
    Truncated {
        max_steps: usize,
    },
}

/// Picard orbit `x_0, x_1 = T x_0, ...`.
///
/// The sequence stops at the first repeated point, which is included once:
/// from `B` under a map with `B -> D -> F -> F` the sequence is `B, D, F, F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub start: usize,
    pub sequence: Vec<usize>,
    pub terminus: Terminus,
}

impl Orbit {
    /// Number of distinct points visited.
    pub fn distinct_len(&self) -> usize {
        match self.terminus {
            Terminus::Truncated { .. } => self.sequence.len(),
            _ => self.sequence.len() - 1,
        }
    }

    pub fn names<'a>(&self, space: &'a FiniteMetricSpace) -> Vec<&'a PointId> {
        self.sequence.iter().map(|&i| space.point(i)).collect()
    }
}

/// Iterates `T` from `start` until a point repeats or `max_steps`
/// applications have been made.
pub fn iterate_orbit(map: &SelfMap, start: &str, max_steps: usize) -> Result<Orbit> {
    let space = map.space();
    let start = space.require_index(start)?;
    if max_steps == 0 {
        return Err(Error::InvalidArgument(
            "max_steps must be at least 1".into(),
        ));
    }
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut sequence = vec![start];
    seen.insert(start, 0);
    let mut current = start;
    for step in 1..=max_steps {
        let next = map.apply(current);
        sequence.push(next);
        if let Some(&entry) = seen.get(&next) {
            let terminus = if next == current {
                Terminus::ReachedFixedPoint {
                    point: space.point(next).clone(),
                    steps: step - 1,
                }
            } else {
                let cycle = sequence[entry..step]
                    .iter()
                    .map(|&i| space.point(i).clone())
                    .collect();
                Terminus::EnteredCycle { cycle, entry }
            };
            return Ok(Orbit {
                start,
                sequence,
                terminus,
            });
        }
        seen.insert(next, step);
        current = next;
    }
    Ok(Orbit {
        start,
        sequence,
        terminus: Terminus::Truncated { max_steps },
    })
}
