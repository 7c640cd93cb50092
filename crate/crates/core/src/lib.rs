//! Branch data of branched coverings of the Riemann sphere.
//!
//! Given an abstract branch triplet `(d, n, Π)` (a degree, a number of branch
//! points and one nontrivial partition of `d` per branch point), this crate
//! decides whether it is realized by a branched covering `M → P¹`, producing
//! a monodromy certificate when it is, and computes the complexity
//! invariants built from such coverings: the covering complexity
//! `2πd(n - 2)`, and its minima over coverings of a fixed genus (the
//! topological and simple topological complexities, and the minimum total
//! length).

pub mod complexity;
pub mod partition;
pub mod perm;
pub mod realize;
pub mod triplet;

pub use complexity::{
    c_simp_closed, c_simp_search, c_top_closed, c_top_search, cov_complexity, hyperbolic_area,
    m_min_search, ComplexityValue, Exhaustiveness, MinLength, SearchWitness, SweepConfig,
    SweepError, SweptTriplet, VerdictKind,
};
pub use partition::{enumerate_partitions, Partition, PartitionError};
pub use perm::{is_transitive, PermError, Permutation};
pub use realize::{
    check, check_baranski, check_eks, decide, decide_all, decide_with, fast_path,
    genus_of_certificate, verify, Budget, CertificateFile, CertificateFileError, Decision,
    FastPath, IntegrityError, MonodromyCertificate, SearchOptions, SearchStats, Verdict, Violation,
};
pub use triplet::{genus_from_counts, BranchTriplet, GenusResult, TripletError};
