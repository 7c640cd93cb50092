//! Realizability of branch triplets: two sufficient conditions, an exact
//! search, and certificate auditing.
//!
//! A triplet is treated as realizable exactly when a monodromy certificate
//! exists for it (the Riemann existence theorem).

mod certificate;
mod search;

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::triplet::{BranchTriplet, GenusResult};

pub use certificate::{
    check, genus_of_certificate, verify, CertificateFile, CertificateFileError, IntegrityError,
    MonodromyCertificate, Violation,
};
pub use search::{Budget, Decision, SearchOptions, SearchStats, Verdict};

/// Which sufficient condition proved a triplet realizable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FastPath {
    /// Edmonds–Kulkarni–Stong: some partition is `[d]`, `nd - m` is even and
    /// at least `2d - 2`.
    Eks,
    /// Barański: `n ≥ d` and the triplet is compatible with the sphere.
    Baranski,
}

impl fmt::Display for FastPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FastPath::Eks => "EKS",
            FastPath::Baranski => "Baranski",
        })
    }
}

pub fn check_eks(t: &BranchTriplet) -> bool {
    let (d, n, m) = (t.degree(), t.branch_points(), t.total_length());
    let excess = (n * d) as i64 - m as i64;
    t.partitions().iter().any(|p| p.len() == 1) && excess % 2 == 0 && excess >= 2 * d as i64 - 2
}

pub fn check_baranski(t: &BranchTriplet) -> bool {
    t.branch_points() >= t.degree() && t.compatible_genus() == GenusResult::Compatible(0)
}

/// The first sufficient condition that holds, EKS before Barański.
pub fn fast_path(t: &BranchTriplet) -> Option<FastPath> {
    if check_eks(t) {
        Some(FastPath::Eks)
    } else if check_baranski(t) {
        Some(FastPath::Baranski)
    } else {
        None
    }
}

/// Exact decision by exhaustive search. Incompatible triplets are rejected
/// without searching.
pub fn decide(t: &BranchTriplet, budget: &Budget) -> Decision {
    decide_with(t, budget, SearchOptions::default())
}

pub fn decide_with(t: &BranchTriplet, budget: &Budget, options: SearchOptions) -> Decision {
    if t.compatible_genus() == GenusResult::Incompatible {
        return Decision {
            verdict: Verdict::NotRealizable,
            stats: SearchStats::default(),
        };
    }
    let decision = search::run(t, budget, options);
    if let Verdict::Realizable(cert) = &decision.verdict {
        debug_assert_eq!(check(cert, t), Ok(()));
    }
    decision
}

/// Decides every triplet, in parallel; results are in input order.
pub fn decide_all(triplets: &[BranchTriplet], budget: &Budget) -> Vec<Decision> {
    triplets.par_iter().map(|t| decide(t, budget)).collect()
}
