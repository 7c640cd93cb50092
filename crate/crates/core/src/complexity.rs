//! Complexity invariants, all of them exact integer multiples of π (or ∞).
//!
//! Every search here sweeps a finite candidate set that is derived inside the
//! operation and recorded in the returned [`Exhaustiveness`], so a reported
//! minimum can be audited triplet by triplet.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;
use crate::realize::{decide_all, verify, Budget, MonodromyCertificate, Verdict};
use crate::triplet::BranchTriplet;

/// `Finite(k)` is `kπ`. Ordered with every finite value below `Infinite`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComplexityValue {
    Finite(u64),
    Infinite,
}

impl ComplexityValue {
    pub fn pi_coefficient(self) -> Option<u64> {
        match self {
            ComplexityValue::Finite(k) => Some(k),
            ComplexityValue::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ComplexityValue::Finite(_))
    }
}

impl fmt::Display for ComplexityValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexityValue::Finite(k) => write!(f, "{k}*pi"),
            ComplexityValue::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("expected \"<k>*pi\" or \"inf\", found {0:?}")]
pub struct ComplexityParseError(String);

impl FromStr for ComplexityValue {
    type Err = ComplexityParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "inf" {
            return Ok(ComplexityValue::Infinite);
        }
        s.strip_suffix("*pi")
            .filter(|k| !k.is_empty() && k.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|k| k.parse().ok())
            .map(ComplexityValue::Finite)
            .ok_or_else(|| ComplexityParseError(s.to_string()))
    }
}

impl Serialize for ComplexityValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(1))?;
        match self {
            ComplexityValue::Finite(k) => map.serialize_entry("pi_coefficient", k)?,
            ComplexityValue::Infinite => map.serialize_entry("infinite", &true)?,
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for ComplexityValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Repr {
            pi_coefficient: Option<u64>,
            infinite: Option<bool>,
        }
        match Repr::deserialize(deserializer)? {
            Repr {
                pi_coefficient: Some(k),
                infinite: None | Some(false),
            } => Ok(ComplexityValue::Finite(k)),
            Repr {
                pi_coefficient: None,
                infinite: Some(true),
            } => Ok(ComplexityValue::Infinite),
            _ => Err(de::Error::custom(
                "expected {\"pi_coefficient\": k} or {\"infinite\": true}",
            )),
        }
    }
}

/// Hyperbolic area of the sphere minus `n` points: `2π(n - 2)` for `n ≥ 3`.
pub fn hyperbolic_area(n: usize) -> ComplexityValue {
    if n >= 3 {
        ComplexityValue::Finite(2 * (n as u64 - 2))
    } else {
        ComplexityValue::Infinite
    }
}

/// Degree times hyperbolic area: `2πd(n - 2)`, or `∞` when `n < 3`.
pub fn cov_complexity(t: &BranchTriplet) -> ComplexityValue {
    match hyperbolic_area(t.branch_points()) {
        ComplexityValue::Finite(k) => ComplexityValue::Finite(k * t.degree() as u64),
        ComplexityValue::Infinite => ComplexityValue::Infinite,
    }
}

/// Topological complexity of the closed orientable surface of genus `g`.
pub fn c_top_closed(genus: u32) -> ComplexityValue {
    match genus {
        0 => ComplexityValue::Finite(6),
        g => ComplexityValue::Finite(2 * (2 * g as u64 + 1)),
    }
}

/// Simple topological complexity of the closed orientable surface of genus `g`.
pub fn c_simp_closed(genus: u32) -> ComplexityValue {
    match genus {
        0 => ComplexityValue::Finite(12),
        g => ComplexityValue::Finite(8 * g as u64),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub budget: Budget,
    /// Largest covering degree any sweep may visit.
    pub max_degree: usize,
    /// Largest genus accepted without an explicit override.
    pub max_genus: u32,
    /// Largest total length visited by [`m_min_search`].
    pub max_total_length: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            budget: Budget::default(),
            max_degree: 9,
            max_genus: 3,
            max_total_length: 12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Realizable,
    NotRealizable,
    Undecided,
}

impl VerdictKind {
    pub fn of(verdict: &Verdict) -> Self {
        match verdict {
            Verdict::Realizable(_) => VerdictKind::Realizable,
            Verdict::NotRealizable => VerdictKind::NotRealizable,
            Verdict::Undecided => VerdictKind::Undecided,
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Realizable => "realizable",
            VerdictKind::NotRealizable => "not_realizable",
            VerdictKind::Undecided => "undecided",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweptTriplet {
    pub triplet: BranchTriplet,
    pub verdict: VerdictKind,
    pub nodes: u64,
}

/// The finite candidate set a search decided, and the rule that made it
/// complete.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exhaustiveness {
    pub domain: String,
    pub swept: Vec<SweptTriplet>,
}

impl Exhaustiveness {
    fn new(domain: String) -> Self {
        Self {
            domain,
            swept: Vec::new(),
        }
    }

    pub fn nodes(&self) -> u64 {
        self.swept.iter().map(|s| s.nodes).sum()
    }
}

/// A minimum together with the covering that attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchWitness {
    pub value: ComplexityValue,
    pub triplet: BranchTriplet,
    pub certificate: MonodromyCertificate,
    pub exhaustiveness: Exhaustiveness,
}

impl SearchWitness {
    fn new(
        triplet: BranchTriplet,
        certificate: MonodromyCertificate,
        exhaustiveness: Exhaustiveness,
    ) -> Self {
        assert!(
            verify(&certificate, &triplet),
            "witness certificate must verify"
        );
        Self {
            value: cov_complexity(&triplet),
            triplet,
            certificate,
            exhaustiveness,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinLength {
    pub m_min: usize,
    pub witness: SearchWitness,
    /// False for genus 0, where the length formula for the complexity of a
    /// Riemann surface is not asserted.
    pub within_hypotheses: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("genus {genus} exceeds the configured maximum {max}")]
    GenusOutOfRange { genus: u32, max: u32 },
    #[error("search budget exhausted on {triplet}")]
    Undecided { triplet: BranchTriplet },
    #[error("shape d={degree}, n={branch_points} exceeds the degree cap {max_degree}")]
    DegreeCap {
        degree: usize,
        branch_points: usize,
        max_degree: usize,
    },
    #[error("no realizable candidate within the sweep bounds ({domain})")]
    NotFound { domain: String },
}

impl SweepConfig {
    fn check_genus(&self, genus: u32) -> Result<(), SweepError> {
        if genus > self.max_genus {
            Err(SweepError::GenusOutOfRange {
                genus,
                max: self.max_genus,
            })
        } else {
            Ok(())
        }
    }
}

/// Decides one batch of candidates and returns the first realizable one in
/// candidate order. Any undecided candidate fails the whole search.
fn sweep_batch(
    candidates: Vec<BranchTriplet>,
    config: &SweepConfig,
    record: &mut Exhaustiveness,
) -> Result<Option<(BranchTriplet, MonodromyCertificate)>, SweepError> {
    let decisions = decide_all(&candidates, &config.budget);
    let mut found = None;
    let mut undecided = None;
    for (t, d) in candidates.into_iter().zip(decisions) {
        if let Some(g) = t.compatible_genus().genus() {
            // C_Cov = 2π(m + 2g - 2) on every compatible hyperbolic triplet
            if t.is_hyperbolic() {
                let m = t.total_length() as u64;
                assert_eq!(
                    cov_complexity(&t),
                    ComplexityValue::Finite(2 * (m + 2 * g as u64 - 2))
                );
            }
        }
        record.swept.push(SweptTriplet {
            triplet: t.clone(),
            verdict: VerdictKind::of(&d.verdict),
            nodes: d.stats.nodes,
        });
        match d.verdict {
            Verdict::Realizable(c) if found.is_none() => found = Some((t, c)),
            Verdict::Undecided if undecided.is_none() => undecided = Some(t),
            _ => {}
        }
    }
    match undecided {
        Some(triplet) => Err(SweepError::Undecided { triplet }),
        None => Ok(found),
    }
}

/// Minimum covering complexity over realizable triplets of genus `g`.
///
/// Candidates are visited in increasing `k = d(n - 2)`, so the first
/// realizable batch gives the minimum `2kπ`. Every shape with a given `k` has
/// `2 ≤ d ≤ k`, so batches up to `k = max_degree` are complete.
pub fn c_top_search(genus: u32, config: &SweepConfig) -> Result<SearchWitness, SweepError> {
    config.check_genus(genus)?;
    let domain = format!(
        "genus-{genus} triplets by increasing k = d(n-2) for k <= {}, \
         shapes d | k with n = k/d + 2 and m = k + 2 - 2g",
        config.max_degree
    );
    let mut record = Exhaustiveness::new(domain);
    for k in 1..=config.max_degree {
        let mut candidates = Vec::new();
        for d in (2..=k).filter(|d| k % d == 0) {
            let n = k / d + 2;
            let m = k as i64 + 2 - 2 * genus as i64;
            if m < n as i64 || m > (n * (d - 1)) as i64 {
                continue;
            }
            candidates.extend(BranchTriplet::enumerate_with_length(d, n, m as usize));
        }
        if let Some((t, c)) = sweep_batch(candidates, config, &mut record)? {
            let witness = SearchWitness::new(t, c, record);
            debug_assert_eq!(witness.value, ComplexityValue::Finite(2 * k as u64));
            return Ok(witness);
        }
    }
    Err(SweepError::NotFound {
        domain: record.domain,
    })
}

/// Minimum covering complexity over realizable simple triplets of genus `g`.
///
/// A simple triplet of genus `g` is `(d, n, {[2,1,..,1] × n})` with
/// `n = 2d + 2g - 2`. Its complexity `4πd(d + g - 2)` increases with `d`, so
/// the first realizable hyperbolic one in increasing `d` is the minimum.
pub fn c_simp_search(genus: u32, config: &SweepConfig) -> Result<SearchWitness, SweepError> {
    config.check_genus(genus)?;
    let domain = format!(
        "simple genus-{genus} triplets (d, 2d+2g-2, [2,1..1]^n) for d = 2..={}; \
         complexity 4d(d+g-2)pi increases in d",
        config.max_degree
    );
    let mut record = Exhaustiveness::new(domain);
    for d in 2..=config.max_degree {
        let n = 2 * d + 2 * genus as usize - 2;
        let transposition = Partition::hook(d, 2).expect("d >= 2");
        let t = BranchTriplet::new(d, vec![transposition; n]).expect("valid simple triplet");
        debug_assert!(t.is_simple());
        debug_assert_eq!(t.compatible_genus().genus(), Some(genus));
        if let Some((t, c)) = sweep_batch(vec![t], config, &mut record)? {
            if t.is_hyperbolic() {
                return Ok(SearchWitness::new(t, c, record));
            }
        }
    }
    Err(SweepError::NotFound {
        domain: record.domain,
    })
}

/// Minimum total length `m` over realizable hyperbolic triplets of genus `g`.
///
/// For each candidate `m` the shapes are `3 ≤ n ≤ m` with
/// `d = (m + 2g - 2) / (n - 2)` an integer `≥ 2`.
pub fn m_min_search(genus: u32, config: &SweepConfig) -> Result<MinLength, SweepError> {
    config.check_genus(genus)?;
    let domain = format!(
        "hyperbolic genus-{genus} triplets by increasing m <= {}, \
         shapes 3 <= n <= m with d = (m+2g-2)/(n-2)",
        config.max_total_length
    );
    let mut record = Exhaustiveness::new(domain);
    for m in 3..=config.max_total_length {
        let mut candidates = Vec::new();
        let excess = m + 2 * genus as usize - 2;
        for n in 3..=m {
            if !excess.is_multiple_of(n - 2) {
                continue;
            }
            let d = excess / (n - 2);
            if d < 2 {
                continue;
            }
            if d > config.max_degree {
                return Err(SweepError::DegreeCap {
                    degree: d,
                    branch_points: n,
                    max_degree: config.max_degree,
                });
            }
            candidates.extend(BranchTriplet::enumerate_with_length(d, n, m));
        }
        if let Some((t, c)) = sweep_batch(candidates, config, &mut record)? {
            return Ok(MinLength {
                m_min: m,
                witness: SearchWitness::new(t, c, record),
                within_hypotheses: genus >= 1,
            });
        }
    }
    Err(SweepError::NotFound {
        domain: record.domain,
    })
}
