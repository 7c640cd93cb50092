//! Abstract branch triplets `(d, n, Π)` and the arithmetic predicates on
//! them.
//!
//! Text grammar: `d ":" n ":" partition ("/" partition)*`, where a partition
//! is `part ("+" part)*` or the bracket form `[a,b,..]`. No whitespace.
//! Canonical output sorts the partitions in descending lexicographic order
//! and writes each one in `+` form with non-increasing parts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::partition::{enumerate_partitions, Partition, PartitionError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TripletError {
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("a triplet needs at least one partition")]
    NoPartitions,
    #[error("partition {index} sums to {sum}, expected {degree}")]
    SumMismatch {
        index: usize,
        sum: usize,
        degree: usize,
    },
    #[error("partition {index} is trivial")]
    TrivialPartition { index: usize },
    #[error("declared n={declared} but {found} partitions given")]
    CountMismatch { declared: usize, found: usize },
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
}

impl TripletError {
    /// 1-based column of a syntax error, if the error has one.
    pub fn column(&self) -> Option<usize> {
        match self {
            TripletError::Syntax { column, .. } => Some(*column),
            _ => None,
        }
    }
}

/// `(d, n, Π)`: a degree `d ≥ 2` and a multiset of `n` nontrivial partitions
/// of `d`. The partitions are stored sorted, so two triplets that differ only
/// in the order of `Π` compare equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchTriplet {
    degree: usize,
    partitions: Vec<Partition>,
}

/// Genus forced by the Riemann–Hurwitz relation `χ(M) - m = d(2 - n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenusResult {
    Compatible(u32),
    Incompatible,
}

impl GenusResult {
    pub fn genus(self) -> Option<u32> {
        match self {
            GenusResult::Compatible(g) => Some(g),
            GenusResult::Incompatible => None,
        }
    }
}

/// Solves `2 - 2g = m + d(2 - n)` for `g`, if the solution is a
/// nonnegative integer.
pub fn genus_from_counts(degree: usize, branch_points: usize, total_length: usize) -> GenusResult {
    let twice_genus = degree as i64 * (branch_points as i64 - 2) - total_length as i64 + 2;
    if twice_genus >= 0 && twice_genus % 2 == 0 {
        GenusResult::Compatible((twice_genus / 2) as u32)
    } else {
        GenusResult::Incompatible
    }
}

impl BranchTriplet {
    pub fn new(degree: usize, partitions: Vec<Partition>) -> Result<Self, TripletError> {
        if degree < 2 {
            return Err(TripletError::DegreeTooSmall(degree));
        }
        if partitions.is_empty() {
            return Err(TripletError::NoPartitions);
        }
        for (index, p) in partitions.iter().enumerate() {
            if p.sum() != degree {
                return Err(TripletError::SumMismatch {
                    index,
                    sum: p.sum(),
                    degree,
                });
            }
            if p.is_trivial() {
                return Err(TripletError::TrivialPartition { index });
            }
        }
        Ok(Self::from_valid(degree, partitions))
    }

    fn from_valid(degree: usize, mut partitions: Vec<Partition>) -> Self {
        partitions.sort_unstable_by(|a, b| b.cmp(a));
        Self { degree, partitions }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of branch points `n`.
    pub fn branch_points(&self) -> usize {
        self.partitions.len()
    }

    /// The partitions, in canonical (descending) order.
    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    /// `m`, the sum of the partition lengths.
    pub fn total_length(&self) -> usize {
        self.partitions.iter().map(Partition::len).sum()
    }

    pub fn compatible_genus(&self) -> GenusResult {
        genus_from_counts(self.degree, self.branch_points(), self.total_length())
    }

    /// The sphere minus `n` points is hyperbolic iff `n ≥ 3`.
    pub fn is_hyperbolic(&self) -> bool {
        self.branch_points() >= 3
    }

    /// Every fiber has at least `d - 1` points, i.e. each partition is
    /// `[2, 1, .., 1]`.
    pub fn is_simple(&self) -> bool {
        self.partitions.iter().all(|p| p.len() + 1 >= self.degree)
    }

    /// All triplets of degree `d` with `n` branch points.
    pub fn enumerate(degree: usize, branch_points: usize) -> Vec<BranchTriplet> {
        Self::enumerate_filtered(degree, branch_points, None)
    }

    /// All triplets of degree `d` with `n` branch points and total length `m`.
    pub fn enumerate_with_length(
        degree: usize,
        branch_points: usize,
        total_length: usize,
    ) -> Vec<BranchTriplet> {
        Self::enumerate_filtered(degree, branch_points, Some(total_length))
    }

    fn enumerate_filtered(
        degree: usize,
        branch_points: usize,
        total_length: Option<usize>,
    ) -> Vec<BranchTriplet> {
        if degree < 2 || branch_points == 0 {
            return Vec::new();
        }
        let menu: Vec<Partition> = enumerate_partitions(degree)
            .filter(|p| !p.is_trivial())
            .collect();
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(branch_points);
        multisets(
            &menu,
            0,
            branch_points,
            total_length,
            &mut chosen,
            &mut |pick| {
                out.push(Self::from_valid(degree, pick.to_vec()));
            },
        );
        out
    }
}

/// Non-increasing index selections from `menu`, optionally with a fixed
/// total of partition lengths.
fn multisets(
    menu: &[Partition],
    from: usize,
    left: usize,
    length_left: Option<usize>,
    chosen: &mut Vec<Partition>,
    emit: &mut dyn FnMut(&[Partition]),
) {
    if left == 0 {
        if length_left.is_none_or(|l| l == 0) {
            emit(chosen);
        }
        return;
    }
    for i in from..menu.len() {
        let len = menu[i].len();
        let next_length = match length_left {
            Some(l) if l < len + (left - 1) => continue,
            Some(l) => Some(l - len),
            None => None,
        };
        chosen.push(menu[i].clone());
        multisets(menu, i, left - 1, next_length, chosen, emit);
        chosen.pop();
    }
}

impl fmt::Display for BranchTriplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:", self.degree, self.branch_points())?;
        for (i, p) in self.partitions.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BranchTriplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BranchTriplet({self})")
    }
}

fn parse_count(field: &str, column: usize, what: &str) -> Result<usize, TripletError> {
    if field.is_empty() || !field.bytes().all(|b| b.is_ascii_digit()) {
        return Err(TripletError::Syntax {
            column,
            message: format!("expected {what} as a decimal integer, found {field:?}"),
        });
    }
    field.parse().map_err(|_| TripletError::Syntax {
        column,
        message: format!("{what} too large"),
    })
}

impl FromStr for BranchTriplet {
    type Err = TripletError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut fields = s.splitn(3, ':');
        let d_text = fields.next().unwrap_or("");
        let degree = parse_count(d_text, 1, "degree d")?;
        let n_column = d_text.len() + 2;
        let n_text = fields.next().ok_or(TripletError::Syntax {
            column: n_column - 1,
            message: "expected ':' after d".into(),
        })?;
        let declared = parse_count(n_text, n_column, "branch count n")?;
        let pi_column = n_column + n_text.len() + 1;
        let pi_text = fields.next().ok_or(TripletError::Syntax {
            column: pi_column - 1,
            message: "expected ':' after n".into(),
        })?;

        let mut partitions = Vec::new();
        let mut column = pi_column;
        for token in pi_text.split('/') {
            let p = token.parse::<Partition>().map_err(|e| match e {
                PartitionError::Syntax { column: c, message } => TripletError::Syntax {
                    column: column + c - 1,
                    message,
                },
                other => TripletError::Syntax {
                    column,
                    message: other.to_string(),
                },
            })?;
            partitions.push(p);
            column += token.len() + 1;
        }
        if partitions.len() != declared {
            return Err(TripletError::CountMismatch {
                declared,
                found: partitions.len(),
            });
        }
        BranchTriplet::new(degree, partitions)
    }
}

impl Serialize for BranchTriplet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BranchTriplet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(text: &str) -> BranchTriplet {
        text.parse().unwrap()
    }

    #[test]
    fn total_lengths() {
        assert_eq!(t("3:3:3/1+2/1+2").total_length(), 5);
        for d in 2..9 {
            assert_eq!(t(&format!("{d}:3:{d}/{d}/{d}")).total_length(), 3);
        }
        assert_eq!(t("3:4:2+1/2+1/2+1/2+1").total_length(), 8);
    }

    #[test]
    fn genus() {
        assert_eq!(
            t("3:3:3/1+2/1+2").compatible_genus(),
            GenusResult::Compatible(0)
        );
        for g in 1..=3 {
            let d = 2 * g + 1;
            assert_eq!(
                t(&format!("{d}:3:{d}/{d}/{d}")).compatible_genus(),
                GenusResult::Compatible(g as u32)
            );
        }
        assert_eq!(
            t("3:3:2+1/2+1/2+1").compatible_genus(),
            GenusResult::Incompatible
        );
        for g in 0..=4usize {
            let n = 2 * g + 2;
            let text = format!("2:{n}:{}", vec!["2"; n].join("/"));
            assert_eq!(
                t(&text).compatible_genus(),
                GenusResult::Compatible(g as u32)
            );
        }
    }

    #[test]
    fn negative_genus_is_incompatible() {
        // m = 4 > d(n-2) + 2 = 2
        assert_eq!(t("2:2:2/2").compatible_genus(), GenusResult::Compatible(0));
        assert_eq!(
            t("3:2:2+1/2+1").compatible_genus(),
            GenusResult::Incompatible
        );
        assert_eq!(
            t("4:2:2+2/2+2").compatible_genus(),
            GenusResult::Incompatible
        );
    }

    #[test]
    fn hyperbolicity() {
        assert!(!t("2:2:2/2").is_hyperbolic());
        assert!(t("5:3:5/5/5").is_hyperbolic());
        assert!(t("2:4:2/2/2/2").is_hyperbolic());
    }

    #[test]
    fn simplicity() {
        assert!(t("3:4:2+1/2+1/2+1/2+1").is_simple());
        assert!(t("2:6:2/2/2/2/2/2").is_simple());
        assert!(!t("3:3:3/2+1/2+1").is_simple());
        assert!(!t("4:4:2+2/2+1+1/2+1+1/2+1+1").is_simple());
    }

    #[test]
    fn parse_and_format() {
        let x = t("3:3:3/1+2/1+2");
        assert_eq!(x.degree(), 3);
        assert_eq!(x.branch_points(), 3);
        assert_eq!(x.to_string(), "3:3:3/2+1/2+1");
        assert_eq!(t("3:3:1+2/3/[2,1]"), x);
        assert_eq!(t("5:3:5/5/5").to_string(), "5:3:5/5/5");
        assert_eq!(t(&x.to_string()), x);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            "3:3:3/1+2".parse::<BranchTriplet>(),
            Err(TripletError::CountMismatch {
                declared: 3,
                found: 2
            })
        );
        assert_eq!(
            "3:2:3/1+1+1".parse::<BranchTriplet>(),
            Err(TripletError::TrivialPartition { index: 1 })
        );
        assert_eq!(
            "3:2:3/2+2".parse::<BranchTriplet>(),
            Err(TripletError::SumMismatch {
                index: 1,
                sum: 4,
                degree: 3
            })
        );
        assert_eq!(
            "1:1:1".parse::<BranchTriplet>(),
            Err(TripletError::DegreeTooSmall(1))
        );
        assert_eq!(
            "x:1:1".parse::<BranchTriplet>().unwrap_err().column(),
            Some(1)
        );
        assert_eq!(
            "3:y:3".parse::<BranchTriplet>().unwrap_err().column(),
            Some(3)
        );
        assert_eq!(
            "3:2:3/2+".parse::<BranchTriplet>().unwrap_err().column(),
            Some(9)
        );
        assert_eq!(
            "3:2".parse::<BranchTriplet>().unwrap_err().column(),
            Some(4)
        );
        assert!("3:2:3/ 3".parse::<BranchTriplet>().is_err());
        assert!("3:1:".parse::<BranchTriplet>().is_err());
    }

    #[test]
    fn degree_one_rejected() {
        assert_eq!(
            BranchTriplet::new(1, vec![Partition::new(vec![1]).unwrap()]),
            Err(TripletError::DegreeTooSmall(1))
        );
    }

    #[test]
    fn enumeration_counts() {
        // nontrivial partitions of 4: 4 of them; multisets of size 3: C(6,3) = 20
        assert_eq!(BranchTriplet::enumerate(4, 3).len(), 20);
        assert_eq!(BranchTriplet::enumerate(2, 5).len(), 1);
        let with_len = BranchTriplet::enumerate_with_length(3, 3, 5);
        assert_eq!(with_len, vec![t("3:3:3/2+1/2+1")]);
        for x in BranchTriplet::enumerate_with_length(5, 4, 9) {
            assert_eq!(x.total_length(), 9);
        }
    }

    #[test]
    fn json_form_is_the_canonical_string() {
        let x = t("3:3:1+2/3/1+2");
        assert_eq!(serde_json::to_string(&x).unwrap(), "\"3:3:3/2+1/2+1\"");
        let back: BranchTriplet = serde_json::from_str("\"3:3:3/1+2/1+2\"").unwrap();
        assert_eq!(back, x);
    }
}
