//! Computable corona theory on the closed unit disk.
//!
//! The library works with polynomial data throughout: polynomial function
//! tuples, atomic measures supported on the unit circle, and the
//! Dirichlet-type norms they induce. On top of that base it provides
//! certified enclosures for circle suprema and disk minima, local Dirichlet
//! integrals, Koszul-complex machinery for corona solutions with norm
//! certificates, and stable-rank-one reduction of unimodular pairs.

pub mod bounds;
pub mod corona;
pub mod dirichlet;
pub mod koszul;
pub mod measure;
pub mod poly;
pub mod quadrature;
pub mod roots;
pub mod sample;
pub mod stable_rank;
pub mod tuple;

pub use bounds::{
    certified_disk_min, default_resolution, min_modulus_closed_disk, sup_circle,
    sup_circle_default, sup_sum_sq_circle, sup_sum_sq_circle_default, CertifiedBound, DiskMin,
};
pub use corona::{
    bezout_base, default_degree_cap, estimate_epsilon, lift, lift_anchor, normalize, solve,
    tuple_gcd, verify_certificate, BezoutMode, CertificateReport, ChainRecord, CoronaCertificate,
    CoronaError, CoronaProblem, EpsilonCertificate,
};
pub use dirichlet::{
    dmu_norm_sq, local_dirichlet, local_dirichlet_quadrature, mult_norm, mult_norm_lower,
    mult_norm_upper, product_rule_slacks, tuple_dmu_norm_sq, DirichletError, EstimateDetail,
    MultiplierNormEstimate, ProductRuleSlacks, DEFAULT_TRIAL_SEED,
};
pub use koszul::{
    build_q, check_identities, koszul_solution_form, KoszulDeviations, KoszulError, KoszulMatrix,
};
pub use measure::{Atom, AtomicMeasure, MeasureError, UnitCirclePoint, OFF_CIRCLE_TOL};
pub use poly::{Polynomial, PolyError};
pub use quadrature::dirichlet_integral;
pub use roots::{cluster_roots, root_margin, roots};
pub use sample::{exact_corona_instances, ExactInstance};
pub use stable_rank::{
    case1_transform, case2_transform, eta, reduce, search_g, verify_witness, Budget, CaseTag,
    ReductionWitness, StableRankError, UnimodularPair, WitnessReport,
};
pub use tuple::FunctionTuple;

/// Scalar type used for all coefficients and point evaluations.
pub type ComplexScalar = num_complex::Complex64;
