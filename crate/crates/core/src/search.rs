//! Searching for maps that separate contraction classes.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify_all, is_member, ClassReport, ContractionClass};
use crate::error::{Error, Result};
use crate::mapping::{period_two_points, SelfMap};
use crate::rational::Rational;
use crate::solver::{theorem_check, TheoremVerdict};
use crate::space::{random_metric_space, FiniteMetricSpace};

/// Default cap on `|X|^|X|` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// Weight range of the random spaces drawn by [`random_search`].
pub fn search_weight_range() -> (Rational, Rational) {
    (Rational::one(), Rational::from_integer(10))
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeparationPredicate {
    require_member: BTreeSet<ContractionClass>,
    require_nonmember: BTreeSet<ContractionClass>,
    require_hypothesis_i: Option<bool>,
}

impl SeparationPredicate {
    pub fn new(
        require_member: impl IntoIterator<Item = ContractionClass>,
        require_nonmember: impl IntoIterator<Item = ContractionClass>,
        require_hypothesis_i: Option<bool>,
    ) -> Result<Self> {
        let require_member: BTreeSet<_> = require_member.into_iter().collect();
        let require_nonmember: BTreeSet<_> = require_nonmember.into_iter().collect();
        if let Some(c) = require_member.intersection(&require_nonmember).next() {
            return Err(Error::ContradictoryPredicate(c.to_string()));
        }
        Ok(SeparationPredicate {
            require_member,
            require_nonmember,
            require_hypothesis_i,
        })
    }

    pub fn require_member(&self) -> &BTreeSet<ContractionClass> {
        &self.require_member
    }

    pub fn require_nonmember(&self) -> &BTreeSet<ContractionClass> {
        &self.require_nonmember
    }

    pub fn require_hypothesis_i(&self) -> Option<bool> {
        self.require_hypothesis_i
    }

    pub fn matches(&self, map: &SelfMap) -> Result<bool> {
        if let Some(want) = self.require_hypothesis_i {
            if period_two_points(map).is_empty() != want {
                return Ok(false);
            }
        }
        for &c in &self.require_member {
            if !is_member(map, c)? {
                return Ok(false);
            }
        }
        for &c in &self.require_nonmember {
            if is_member(map, c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Every self-map of `space` satisfying `predicate`, in lexicographic order
/// of the image table.
pub fn enumerate_maps(
    space: Arc<FiniteMetricSpace>,
    predicate: &SeparationPredicate,
    cap: u64,
) -> Result<Vec<SelfMap>> {
    let n = space.len();
    let total = u32::try_from(n)
        .ok()
        .and_then(|e| (n as u64).checked_pow(e));
    if total.is_none_or(|t| t > cap) {
        return Err(Error::SpaceTooLarge { points: n, cap });
    }
    let mut out = Vec::new();
    let mut table = vec![0usize; n];
    loop {
        let map = SelfMap::from_indices(space.clone(), table.clone())?;
        if predicate.matches(&map)? {
            out.push(map);
        }
        // odometer, position 0 most significant
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            table[pos] += 1;
            if table[pos] < n {
                break;
            }
            table[pos] = 0;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoundInstance {
    pub map: SelfMap,
    pub reports: Vec<ClassReport>,
    pub verdict: TheoremVerdict,
    /// Zero-based index of the matching trial.
    pub trial: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub found: Option<FoundInstance>,
    pub trials_used: u64,
    pub seed: u64,
}

/// Draws one `(space, map)` pair for trial `trial`. Each trial has its own
/// generator stream, so trials are independent of each other.
pub fn random_trial(n: usize, seed: u64, trial: u64) -> Result<SelfMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let (low, high) = search_weight_range();
    let space = Arc::new(random_metric_space(n, rng.gen(), &low, &high)?);
    let table = (0..n).map(|_| rng.gen_range(0..n)).collect();
    SelfMap::from_indices(space, table)
}

/// Seeded random search; returns the match with the smallest trial index.
pub fn random_search(
    n: usize,
    trials: u64,
    seed: u64,
    predicate: &SeparationPredicate,
) -> Result<SearchResult> {
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    for trial in 0..trials {
        let map = random_trial(n, seed, trial)?;
        if predicate.matches(&map)? {
            let reports = classify_all(&map)?;
            let verdict = theorem_check(&map)?;
            return Ok(SearchResult {
                found: Some(FoundInstance {
                    map,
                    reports,
                    verdict,
                    trial,
                }),
                trials_used: trial + 1,
                seed,
            });
        }
    }
    Ok(SearchResult {
        found: None,
        trials_used: trials,
        seed,
    })
}
