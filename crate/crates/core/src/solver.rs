//! Picard iteration with a geometric-decay certificate, and an instance-level
//! check of the fixed point theorem for generalized Chatterjea maps.
//!
//! Along an orbit `x_0, x_1 = T x_0, ...` let
//!
//! ```text
//! d_n = d(x_n, x_{n+1}) + d(x_n, x_{n+2}) + d(x_{n+1}, x_{n+2})
//! ```
//!
//! Whenever `x_{n-1}, x_n, x_{n+1}` are pairwise distinct, the generalized
//! Chatterjea inequality on that triple together with the triangle
//! inequality gives `d_n <= α d_{n-1}` with `α = λ / (1 - λ)`. The
//! certificate records every `d_n`, whether that step is covered, and any
//! covered step where the decay fails.

use serde::Serialize;

use crate::classify::{classify, Coefficient, ContractionClass};
use crate::error::Result;
use crate::mapping::{fixed_points, iterate_orbit, period_two_points, Orbit, SelfMap};
use crate::rational::Rational;
use crate::space::PointId;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecayStep {
    pub index: usize,
    pub d: Rational,
    /// `x_{n-1}, x_n, x_{n+1}` pairwise distinct; never true at `n = 0`.
    pub applicable: bool,
    /// `α · d_{n-1}`, when `n >= 1` and `α` is defined.
    pub bound: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecayCertificate {
    pub lambda: Coefficient,
    /// `λ / (1 - λ)`; undefined for `λ >= 1` or unbounded `λ`.
    pub alpha: Option<Rational>,
    /// `λ < 1/2`, i.e. `α < 1`. Outside that range the decay steps are still
    /// evaluated but certify nothing.
    pub in_range: bool,
    pub d_sequence: Vec<DecayStep>,
    /// Indices `n` that are applicable with `d_n > α · d_{n-1}`.
    pub violations: Vec<usize>,
}

impl DecayCertificate {
    pub fn holds(&self) -> bool {
        self.in_range && self.violations.is_empty()
    }
}

pub fn alpha_for(lambda: &Rational) -> Option<Rational> {
    let one = Rational::one();
    if lambda.is_negative() || *lambda >= one {
        return None;
    }
    Some(lambda / &(&one - lambda))
}

/// Builds the certificate for an already computed orbit.
pub fn decay_certificate(map: &SelfMap, orbit: &Orbit, lambda: Coefficient) -> DecayCertificate {
    let space = map.space();
    let half = Rational::new(1, 2);
    let alpha = lambda.finite().and_then(alpha_for);
    let in_range = matches!(lambda.finite(), Some(l) if !l.is_negative() && *l < half);
    let x = &orbit.sequence;
    let mut d_sequence: Vec<DecayStep> = Vec::new();
    let mut violations = Vec::new();
    for n in 0..x.len().saturating_sub(2) {
        let d = space.dist(x[n], x[n + 1])
            + space.dist(x[n], x[n + 2])
            + space.dist(x[n + 1], x[n + 2]);
        let applicable = n >= 1 && x[n - 1] != x[n] && x[n] != x[n + 1] && x[n - 1] != x[n + 1];
        let bound = match (&alpha, d_sequence.last()) {
            (Some(a), Some(prev)) => Some(a * &prev.d),
            _ => None,
        };
        if applicable {
            if let Some(b) = &bound {
                if d > *b {
                    violations.push(n);
                }
            }
        }
        d_sequence.push(DecayStep {
            index: n,
            d,
            applicable,
            bound,
        });
    }
    DecayCertificate {
        lambda,
        alpha,
        in_range,
        d_sequence,
        violations,
    }
}

/// Picard iteration from `start` with the certificate at the map's optimal
/// generalized Chatterjea coefficient.
pub fn picard_solve(
    map: &SelfMap,
    start: &str,
    max_steps: usize,
) -> Result<(Orbit, DecayCertificate)> {
    picard_solve_with_lambda(map, start, max_steps, None)
}

/// As [`picard_solve`], certifying with `lambda` instead of the optimal
/// coefficient when given.
pub fn picard_solve_with_lambda(
    map: &SelfMap,
    start: &str,
    max_steps: usize,
    lambda: Option<Rational>,
) -> Result<(Orbit, DecayCertificate)> {
    let orbit = iterate_orbit(map, start, max_steps)?;
    let lambda = match lambda {
        Some(l) => Coefficient::Finite(l),
        None => classify(map, ContractionClass::GeneralizedChatterjea)?.lambda_star,
    };
    let cert = decay_certificate(map, &orbit, lambda);
    Ok((orbit, cert))
}

/// Outcome of checking the theorem's hypotheses and conclusion on one map.
/// A finite check corroborates or falsifies; it proves nothing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    /// No points of prime period 2.
    pub hypothesis_i: bool,
    /// Generalized Chatterjea member.
    pub hypothesis_ii: bool,
    pub fixed_point_set: Vec<PointId>,
    /// One or two fixed points.
    pub conclusion_holds: bool,
    /// Set when both hypotheses hold but the conclusion does not.
    pub counterexample: Option<String>,
}

impl TheoremVerdict {
    pub fn hypotheses_hold(&self) -> bool {
        self.hypothesis_i && self.hypothesis_ii
    }

    pub fn falsified(&self) -> bool {
        self.hypotheses_hold() && !self.conclusion_holds
    }
}

pub fn theorem_check(map: &SelfMap) -> Result<TheoremVerdict> {
    let period_two = period_two_points(map);
    let hypothesis_i = period_two.is_empty();
    let hypothesis_ii = classify(map, ContractionClass::GeneralizedChatterjea)?.member;
    let fixed_point_set = fixed_points(map);
    let conclusion_holds = (1..=2).contains(&fixed_point_set.len());
    let counterexample = (hypothesis_i && hypothesis_ii && !conclusion_holds).then(|| {
        let names: Vec<&str> = fixed_point_set.iter().map(PointId::as_str).collect();
        format!(
            "both hypotheses hold but the map has {} fixed point(s): {{{}}}",
            fixed_point_set.len(),
            names.join(", ")
        )
    });
    Ok(TheoremVerdict {
        hypothesis_i,
        hypothesis_ii,
        fixed_point_set,
        conclusion_holds,
        counterexample,
    })
}
