//! Integer partitions, stored with parts in non-increasing order.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("a partition needs at least one part")]
    Empty,
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("malformed partition at column {column}: {message}")]
    Syntax { column: usize, message: String },
}

/// A multiset of positive integers, kept in canonical non-increasing order.
/// Equality, ordering and hashing all use that canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
    sum: usize,
}

impl Partition {
    /// Accepts parts in any order.
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::Empty);
        }
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self::from_sorted_unchecked(parts))
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(!parts.is_empty() && parts.windows(2).all(|w| w[0] >= w[1]));
        let sum = parts.iter().sum();
        Self { parts, sum }
    }

    /// The partition `[k, 1, .., 1]` of `d`.
    pub fn hook(d: usize, k: usize) -> Result<Self, PartitionError> {
        if k == 0 || k > d {
            return Err(PartitionError::ZeroPart);
        }
        let mut parts = vec![k];
        parts.extend(std::iter::repeat_n(1, d - k));
        Ok(Self::from_sorted_unchecked(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn sum(&self) -> usize {
        self.sum
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// Always false; a partition has at least one part.
    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// All parts equal to 1.
    pub fn is_trivial(&self) -> bool {
        self.parts.len() == self.sum
    }

    /// Size of the conjugacy class of cycle type `self` in the symmetric
    /// group: `d! / prod(part^mult * mult!)`.
    pub fn class_size(&self) -> u128 {
        let mut centralizer: u128 = 1;
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let mult = self.parts[i..].iter().take_while(|&&p| p == part).count();
            for k in 1..=mult as u128 {
                centralizer *= part as u128 * k;
            }
            i += mult;
        }
        factorial(self.sum) / centralizer
    }
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

/// Accepts `2+1+1` or the bracket form `[1,1,2]`.
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (body, offset, sep) = match s.strip_prefix('[') {
            Some(rest) => match rest.strip_suffix(']') {
                Some(inner) => (inner, 1, ','),
                None => {
                    return Err(PartitionError::Syntax {
                        column: s.len() + 1,
                        message: "expected ']'".into(),
                    })
                }
            },
            None => (s, 0, '+'),
        };
        let mut parts = Vec::new();
        let mut column = offset + 1;
        for token in body.split(sep) {
            if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
                return Err(PartitionError::Syntax {
                    column,
                    message: format!("expected a positive integer, found {token:?}"),
                });
            }
            let value: usize = token.parse().map_err(|_| PartitionError::Syntax {
                column,
                message: "part too large".into(),
            })?;
            parts.push(value);
            column += token.len() + 1;
        }
        Partition::new(parts)
    }
}

/// All partitions of `d` in reverse-lexicographic order, starting at `[d]`.
pub fn enumerate_partitions(d: usize) -> Partitions {
    Partitions {
        next: (d > 0).then(|| vec![d]),
    }
}

pub struct Partitions {
    next: Option<Vec<usize>>,
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        // successor: decrement the last part > 1, refill the tail greedily
        if let Some(pos) = current.iter().rposition(|&p| p > 1) {
            let mut succ = current[..pos].to_vec();
            let value = current[pos] - 1;
            let mut rest = current[pos..].iter().sum::<usize>() - value;
            succ.push(value);
            while rest > 0 {
                let take = rest.min(value);
                succ.push(take);
                rest -= take;
            }
            self.next = Some(succ);
        }
        Some(Partition::from_sorted_unchecked(current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_small() {
        let one: Vec<_> = enumerate_partitions(1).collect();
        assert_eq!(one, vec![part(&[1])]);
        let four: Vec<_> = enumerate_partitions(4).collect();
        assert_eq!(
            four,
            vec![
                part(&[4]),
                part(&[3, 1]),
                part(&[2, 2]),
                part(&[2, 1, 1]),
                part(&[1, 1, 1, 1])
            ]
        );
        assert_eq!(enumerate_partitions(7).count(), 15);
        assert_eq!(enumerate_partitions(0).count(), 0);
    }

    #[test]
    fn triviality() {
        assert!(part(&[1, 1, 1]).is_trivial());
        assert!(!part(&[2, 1]).is_trivial());
        for d in 2..8 {
            assert!(!part(&[d]).is_trivial());
        }
    }

    #[test]
    fn canonical_order_and_equality() {
        assert_eq!(part(&[1, 2]), part(&[2, 1]));
        assert_eq!(part(&[1, 2]).parts(), &[2, 1]);
        assert_eq!(part(&[1, 3, 1]).to_string(), "3+1+1");
    }

    #[test]
    fn parse_both_forms() {
        assert_eq!("2+1+1".parse::<Partition>().unwrap(), part(&[2, 1, 1]));
        assert_eq!("1+2".parse::<Partition>().unwrap(), part(&[2, 1]));
        assert_eq!("[1,2]".parse::<Partition>().unwrap(), part(&[2, 1]));
        assert_eq!("7".parse::<Partition>().unwrap(), part(&[7]));
        assert_eq!("0+1".parse::<Partition>(), Err(PartitionError::ZeroPart));
        assert!(matches!(
            "2++1".parse::<Partition>(),
            Err(PartitionError::Syntax { column: 3, .. })
        ));
        assert!(matches!(
            "[1,2".parse::<Partition>(),
            Err(PartitionError::Syntax { .. })
        ));
        assert!(matches!(
            "".parse::<Partition>(),
            Err(PartitionError::Syntax { .. })
        ));
    }

    #[test]
    fn rejects_empty() {
        assert_eq!(Partition::new(vec![]), Err(PartitionError::Empty));
    }

    #[test]
    fn class_sizes() {
        assert_eq!(part(&[2]).class_size(), 1);
        assert_eq!(part(&[3]).class_size(), 2);
        assert_eq!(part(&[2, 1, 1]).class_size(), 6);
        assert_eq!(part(&[2, 2]).class_size(), 3);
        assert_eq!(part(&[1, 1, 1, 1]).class_size(), 1);
    }

    #[test]
    fn hooks() {
        assert_eq!(Partition::hook(4, 2).unwrap(), part(&[2, 1, 1]));
        assert_eq!(Partition::hook(2, 2).unwrap(), part(&[2]));
    }
}
