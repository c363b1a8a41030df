//! Numerical certification of injectivity for analytic functions on
//! origin-centered disks.
//!
//! The toolkit estimates the injectivity constant K (the infimum of the
//! difference-quotient modulus over the disk), applies three certification
//! criteria — perturbation against a reference function, the enclosing-disk
//! condition on f', and coefficient-sum bounds for power series — and
//! cross-checks every verdict against a brute-force collision oracle.
//!
//! With the default `parallel` feature the pair scans run on rayon
//! (`RAYON_NUM_THREADS` overrides the pool size); building with
//! `--no-default-features` selects the sequential kernels.

// Domain guards are written `!(x < y)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod certify;
pub mod error;
pub mod kconstant;
pub mod oracle;
pub mod scan;
pub mod suite;
pub(crate) mod util;

pub use analytic::{
    difference_quotient, make_grid, parse_complex_list, parse_fn_spec, sub_deriv, AnalyticFn,
    Disk, GridScheme, SampleGrid, DEFAULT_SWITCH_EPS,
};
pub use certify::{
    certify_linear_disk, certify_perturbation, check_nww, enclosing_disk_parameter,
    linear_disk_margin_on_samples, sup_deriv_gap, taylor_sum_criterion, zeta, zeta_criterion,
    CertStatus, Certificate, CriterionKind, Witness,
};
pub use error::{Error, ParseError, Result};
pub use kconstant::{
    closed_form_k, estimate_k, estimate_k_seeded, k_lower_bound_certified, KEstimate, KSource,
};
pub use oracle::{local_univalence, pairwise_scan, quadratic_collision, CollisionReport};
