//! Exact rational toolkit for constructing, verifying and certifying
//! blocking sets of Delaunay triangulations.
//!
//! Everything that decides a predicate works over arbitrary-precision
//! rationals; floating point is only used to explore candidate positions,
//! which are always re-verified exactly before they are accepted.

pub mod construct;
pub mod cover;
pub mod delaunay;
pub mod error;
pub mod geom;
pub mod hull;
pub mod lb;
pub mod perturb;
pub mod poly;
pub mod rational;
pub mod region;
pub mod solver;

pub use construct::{
    build_alt_3k, build_c0, build_c0_prime, build_p0, perturb, CircleFamily, FamilyCircle, Gadget, PerturbedSet, Role,
};
pub use delaunay::{
    blocks, delaunay_edges, is_blocked_edge, witness_interval, BlockingInstance, Bound, PointSet, Verdict,
    WitnessInterval,
};
pub use error::{Error, Result};
pub use geom::{
    circle_from_diameter, circle_through_tangent_at, compare_sqrt_expr, in_circle_sign, orient, ExactCircle,
    ExactPoint, Sign,
};
pub use hull::{convex_hull, ConvexChain};
pub use lb::{
    areas_disjoint, best_bound, certify_construction, construction_instance, disjointness_bound, hitting_set_bound,
    BlockingArea, CellHypergraph, Certificate, Construction, Method,
};
pub use perturb::{
    certify_epsilon, certify_epsilon_with, cocircularity_poly, collinearity_poly, general_position_violations,
    positive_root_bound, vandermonde_b, vandermonde_d, CertifyOptions, EpsilonCertificate, PolyKind, TauPolynomial,
};
pub use rational::Rational;
pub use solver::{
    conjecture_probe, exhaustive_cell_search, greedy_cover_solve, meets_size_bound, midpoint_heuristic, regular_ngon,
    CellSearch, ProbeReport, SolveResult, SolverConfig,
};
