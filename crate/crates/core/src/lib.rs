//! Classification of self-maps of finite metric spaces into contraction
//! classes (Banach, Kannan, generalized Kannan, Chatterjea, generalized
//! Chatterjea, perimeter contracting), with exact optimal coefficients, and
//! Picard iteration with decay certificates for generalized Chatterjea maps.
//!
//! All arithmetic is exact; see [`Rational`].

pub mod classify;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod mapping;
pub mod rational;
pub mod search;
pub mod solver;
pub mod space;

pub use classify::{
    class_ratio_terms, classify, classify_all, is_member, triple_scores, ClassReport, Coefficient,
    ContractionClass, TripleScores, Witness,
};
pub use error::{Error, Result};
pub use format::{parse_document, parse_instance, write_instance, write_space, Document, Instance};
pub use mapping::{fixed_points, iterate_orbit, period_two_points, Orbit, SelfMap, Terminus};
pub use rational::Rational;
pub use search::{enumerate_maps, random_search, SearchResult, SeparationPredicate};
pub use solver::{
    decay_certificate, picard_solve, picard_solve_with_lambda, theorem_check, DecayCertificate,
    TheoremVerdict,
};
pub use space::{
    line_sample_space, metric_closure, random_metric_space, validate_metric, DistanceTable,
    FiniteMetricSpace, MetricViolation, PointId, ViolationKind,
};
