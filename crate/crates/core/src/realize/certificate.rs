use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{is_transitive, PermError, Permutation};
use crate::triplet::{genus_from_counts, BranchTriplet, GenusResult, TripletError};

/// A tuple of permutations `σ_1, .., σ_n` of `{1..d}` whose left-to-right
/// product is the identity and which generate a transitive group. The cycle
/// types of the `σ_i` are the branch partitions of the covering it encodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonodromyCertificate {
    degree: usize,
    monodromies: Vec<Permutation>,
}

/// First certificate invariant found broken by [`check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("branch count")]
    BranchCount,
    #[error("cycle types")]
    CycleTypes,
    #[error("product")]
    Product,
    #[error("transitivity")]
    Transitivity,
    #[error("genus")]
    Genus,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegrityError {
    #[error("certificate has no monodromies")]
    Empty,
    #[error("monodromy {index} has degree {found}, expected {expected}")]
    Degree {
        index: usize,
        found: usize,
        expected: usize,
    },
    #[error("product of monodromies is not the identity")]
    Product,
    #[error("monodromies do not act transitively")]
    Transitivity,
    #[error("Riemann-Hurwitz count gives no nonnegative integer genus")]
    Genus,
}

#[derive(Debug, Error)]
pub enum CertificateFileError {
    #[error("malformed certificate JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("certificate triplet: {0}")]
    Triplet(#[from] TripletError),
    #[error("monodromy {index}: {source}")]
    Monodromy { index: usize, source: PermError },
    #[error(transparent)]
    Integrity(#[from] IntegrityError),
}

impl MonodromyCertificate {
    /// Checks only that all monodromies share the stated degree; the other
    /// invariants are audited by [`check`] and [`genus_of_certificate`].
    pub fn new(degree: usize, monodromies: Vec<Permutation>) -> Result<Self, IntegrityError> {
        if monodromies.is_empty() {
            return Err(IntegrityError::Empty);
        }
        if let Some((index, p)) = monodromies
            .iter()
            .enumerate()
            .find(|(_, p)| p.degree() != degree)
        {
            return Err(IntegrityError::Degree {
                index,
                found: p.degree(),
                expected: degree,
            });
        }
        Ok(Self {
            degree,
            monodromies,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn monodromies(&self) -> &[Permutation] {
        &self.monodromies
    }

    /// Total number of cycles over all monodromies (fixed points included).
    pub fn total_cycles(&self) -> usize {
        self.monodromies.iter().map(Permutation::cycle_count).sum()
    }

    pub fn product_is_identity(&self) -> bool {
        let mut acc = Permutation::identity(self.degree).expect("degree >= 1");
        for p in &self.monodromies {
            acc = acc.compose(p).expect("degrees checked at construction");
        }
        acc.is_identity()
    }

    pub fn is_transitive(&self) -> bool {
        is_transitive(&self.monodromies, self.degree)
    }

    /// The branch triplet this certificate realizes: the cycle types of the
    /// non-identity monodromies.
    pub fn induced_triplet(&self) -> Result<BranchTriplet, TripletError> {
        let partitions = self
            .monodromies
            .iter()
            .filter(|p| !p.is_identity())
            .map(Permutation::cycle_type)
            .collect();
        BranchTriplet::new(self.degree, partitions)
    }

    /// Serialized form with stable field order:
    /// `{"degree":..,"monodromies":[..],"triplet":".."}`.
    pub fn to_json(&self, triplet: &BranchTriplet) -> String {
        serde_json::to_string(&self.to_file(triplet)).expect("plain data serializes")
    }

    pub fn to_file(&self, triplet: &BranchTriplet) -> CertificateFile {
        CertificateFile {
            degree: self.degree,
            monodromies: self.monodromies.iter().map(ToString::to_string).collect(),
            triplet: triplet.to_string(),
        }
    }

    pub fn from_json(text: &str) -> Result<(Self, BranchTriplet), CertificateFileError> {
        let file: CertificateFile = serde_json::from_str(text)?;
        file.decode()
    }
}

impl fmt::Display for MonodromyCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.monodromies.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// On-disk certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub degree: usize,
    pub monodromies: Vec<String>,
    pub triplet: String,
}

impl CertificateFile {
    pub fn decode(&self) -> Result<(MonodromyCertificate, BranchTriplet), CertificateFileError> {
        let triplet: BranchTriplet = self.triplet.parse()?;
        let monodromies = self
            .monodromies
            .iter()
            .enumerate()
            .map(|(index, text)| {
                Permutation::parse_cycles(text, self.degree)
                    .map_err(|source| CertificateFileError::Monodromy { index, source })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((
            MonodromyCertificate::new(self.degree, monodromies)?,
            triplet,
        ))
    }
}

/// Genus of the covering surface: `2 - 2g = m + d(2 - n)` with `m` the total
/// cycle count. Errors if the certificate is not a valid constellation.
pub fn genus_of_certificate(cert: &MonodromyCertificate) -> Result<u32, IntegrityError> {
    if !cert.product_is_identity() {
        return Err(IntegrityError::Product);
    }
    if !cert.is_transitive() {
        return Err(IntegrityError::Transitivity);
    }
    genus_from_counts(cert.degree, cert.monodromies.len(), cert.total_cycles())
        .genus()
        .ok_or(IntegrityError::Genus)
}

/// Audits `cert` against `triplet`, reporting the first broken invariant.
/// A degree that differs from the triplet's shows up as a cycle-type
/// mismatch, since the cycle types then partition the wrong integer.
pub fn check(cert: &MonodromyCertificate, triplet: &BranchTriplet) -> Result<(), Violation> {
    if cert.monodromies.len() != triplet.branch_points() {
        return Err(Violation::BranchCount);
    }
    let mut types: Vec<_> = cert
        .monodromies
        .iter()
        .map(Permutation::cycle_type)
        .collect();
    types.sort_unstable_by(|a, b| b.cmp(a));
    if cert.degree != triplet.degree() || types != triplet.partitions() {
        return Err(Violation::CycleTypes);
    }
    if !cert.product_is_identity() {
        return Err(Violation::Product);
    }
    if !cert.is_transitive() {
        return Err(Violation::Transitivity);
    }
    let genus = genus_from_counts(cert.degree, cert.monodromies.len(), cert.total_cycles());
    match (genus, triplet.compatible_genus()) {
        (GenusResult::Compatible(a), GenusResult::Compatible(b)) if a == b => Ok(()),
        _ => Err(Violation::Genus),
    }
}

pub fn verify(cert: &MonodromyCertificate, triplet: &BranchTriplet) -> bool {
    check(cert, triplet).is_ok()
}
