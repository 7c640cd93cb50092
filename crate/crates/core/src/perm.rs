//! Permutations of `{1..d}` and the handful of group operations monodromy
//! search needs.
//!
//! Points are 1-based in every external format (cycle notation, the
//! `from_images` constructor, `image`). Internally images are stored 0-based.
//!
//! Composition is left-to-right: `compose(a, b)` applies `a` first, then `b`.

use std::fmt;

use thiserror::Error;

use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutation degree must be at least 1")]
    ZeroDegree,
    #[error("image sequence is not a bijection of 1..={0}")]
    NotBijection(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cycle notation, column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),
}

/// A bijection of `{1..d}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        Ok(Self {
            images: (0..degree).collect(),
        })
    }

    /// Builds a permutation from 1-based images: position `i` holds the image
    /// of point `i + 1`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let d = images.len();
        if d == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; d];
        let mut zero_based = Vec::with_capacity(d);
        for &x in images {
            if x == 0 || x > d || seen[x - 1] {
                return Err(PermError::NotBijection(d));
            }
            seen[x - 1] = true;
            zero_based.push(x - 1);
        }
        Ok(Self { images: zero_based })
    }

    /// Builds a permutation from disjoint cycles given in 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self, PermError> {
        let mut images: Vec<usize> = Self::identity(degree)?.images;
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for &p in cycle {
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if seen[p - 1] {
                    return Err(PermError::RepeatedPoint(p));
                }
                seen[p - 1] = true;
            }
            for (i, &p) in cycle.iter().enumerate() {
                let q = cycle[(i + 1) % cycle.len()];
                images[p - 1] = q - 1;
            }
        }
        Ok(Self { images })
    }

    /// Wraps 0-based images already known to form a bijection.
    pub(crate) fn from_raw(images: Vec<usize>) -> Self {
        debug_assert!(is_bijection(&images));
        Self { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based `point`.
    pub fn image(&self, point: usize) -> usize {
        self.images[point - 1] + 1
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// "Apply `self`, then `other`."
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), other.degree()));
        }
        let mut out = vec![0; self.degree()];
        compose_into(&self.images, &other.images, &mut out);
        Ok(Self { images: out })
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0; self.degree()];
        invert_into(&self.images, &mut out);
        Self { images: out }
    }

    /// Disjoint cycles in 1-based points, each starting at its smallest
    /// point, ordered by that point. Fixed points are included as 1-cycles.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut cycles = Vec::new();
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn cycle_count(&self) -> usize {
        cycle_count(&self.images)
    }

    pub fn cycle_type(&self) -> Partition {
        Partition::from_sorted_unchecked(cycle_lengths(&self.images))
    }

    /// Parses cycle notation such as `"(1 2)(3 4)"`. Omitted points are fixed;
    /// `"()"` and the empty string both denote the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self, PermError> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut number: Option<(usize, usize)> = None;
        let syntax = |column: usize, message: &str| PermError::Syntax {
            column,
            message: message.to_string(),
        };

        for (i, ch) in text
            .char_indices()
            .chain(std::iter::once((text.len(), ' ')))
        {
            let column = i + 1;
            if let Some(digit) = ch.to_digit(10) {
                if current.is_none() {
                    return Err(syntax(column, "point outside parentheses"));
                }
                let (start, value) = number.unwrap_or((column, 0));
                let value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(digit as usize))
                    .ok_or_else(|| syntax(start, "point too large"))?;
                number = Some((start, value));
                continue;
            }
            if let Some((_, value)) = number.take() {
                current.as_mut().expect("number inside cycle").push(value);
            }
            match ch {
                '(' => {
                    if current.is_some() {
                        return Err(syntax(column, "nested '('"));
                    }
                    current = Some(Vec::new());
                }
                ')' => match current.take() {
                    Some(cycle) => {
                        if !cycle.is_empty() {
                            cycles.push(cycle);
                        }
                    }
                    None => return Err(syntax(column, "unmatched ')'")),
                },
                c if c.is_whitespace() => {}
                _ => return Err(syntax(column, &format!("unexpected character {ch:?}"))),
            }
        }
        if current.is_some() {
            return Err(syntax(text.len() + 1, "unterminated cycle"));
        }
        Self::from_cycles(degree, &cycles)
    }

    /// The permutation whose cycles are consecutive blocks of `{1..d}`, in
    /// the partition's (non-increasing) part order.
    pub fn canonical_of_type(t: &Partition) -> Permutation {
        let mut images = Vec::with_capacity(t.sum());
        let mut start = 0;
        for &len in t.parts() {
            for j in 0..len {
                images.push(start + (j + 1) % len);
            }
            start += len;
        }
        Self { images }
    }

    /// Every permutation with cycle type `t`, each once, in lexicographic
    /// order of the image sequence.
    pub fn enumerate_of_type(t: &Partition) -> Vec<Permutation> {
        ClassEnumerator::new(t).collect_all()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            f.write_str("(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
            wrote = true;
        }
        if !wrote {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// True iff the group generated by `perms` has a single orbit on `{1..d}`.
pub fn is_transitive(perms: &[Permutation], degree: usize) -> bool {
    let mut orbits = Orbits::new(degree);
    for p in perms {
        debug_assert_eq!(p.degree(), degree);
        orbits.absorb(p.raw());
    }
    orbits.count() == 1
}

/// Union-find over points, merged along the functional graphs of absorbed
/// permutations.
#[derive(Clone, Debug)]
pub(crate) struct Orbits {
    parent: Vec<usize>,
    count: usize,
}

impl Orbits {
    pub(crate) fn new(degree: usize) -> Self {
        Self {
            parent: (0..degree).collect(),
            count: degree,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn absorb(&mut self, images: &[usize]) {
        for (i, &j) in images.iter().enumerate() {
            let (a, b) = (self.find(i), self.find(j));
            if a != b {
                self.parent[a] = b;
                self.count -= 1;
            }
        }
    }

    pub(crate) fn count(&self) -> usize {
        self.count
    }

    pub(crate) fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
        self.count = self.parent.len();
    }

    pub(crate) fn copy_from(&mut self, other: &Orbits) {
        self.parent.copy_from_slice(&other.parent);
        self.count = other.count;
    }
}

pub(crate) fn compose_into(a: &[usize], b: &[usize], out: &mut [usize]) {
    for (o, &x) in out.iter_mut().zip(a) {
        *o = b[x];
    }
}

pub(crate) fn invert_into(a: &[usize], out: &mut [usize]) {
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
}

pub(crate) fn cycle_count(images: &[usize]) -> usize {
    let mut seen = vec![false; images.len()];
    let mut count = 0;
    for start in 0..images.len() {
        if !seen[start] {
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = images[x];
            }
        }
    }
    count
}

/// Cycle lengths, non-increasing.
pub(crate) fn cycle_lengths(images: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; images.len()];
    let mut lengths = Vec::new();
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

fn is_bijection(images: &[usize]) -> bool {
    let mut seen = vec![false; images.len()];
    images
        .iter()
        .all(|&x| x < images.len() && !std::mem::replace(&mut seen[x], true))
}

const NONE: usize = usize::MAX;

/// Backtracking generator for a conjugacy class. Images are assigned point by
/// point, smallest available value first, so output is in lexicographic
/// order. A partial assignment is a set of closed cycles plus open paths; a
/// branch dies when it closes a cycle whose length is no longer available or
/// grows a path longer than the largest remaining part.
struct ClassEnumerator {
    degree: usize,
    images: Vec<usize>,
    preimage: Vec<usize>,
    // remaining[len] = number of cycles of length `len` still to be closed
    remaining: Vec<usize>,
    out: Vec<Permutation>,
}

impl ClassEnumerator {
    fn new(t: &Partition) -> Self {
        let d = t.sum();
        let mut remaining = vec![0; d + 1];
        for &p in t.parts() {
            remaining[p] += 1;
        }
        Self {
            degree: d,
            images: vec![NONE; d],
            preimage: vec![NONE; d],
            remaining,
            out: Vec::new(),
        }
    }

    fn collect_all(mut self) -> Vec<Permutation> {
        self.extend(0);
        self.out
    }

    fn max_remaining(&self) -> usize {
        (1..=self.degree)
            .rev()
            .find(|&l| self.remaining[l] > 0)
            .unwrap_or(0)
    }

    fn extend(&mut self, point: usize) {
        if point == self.degree {
            self.out.push(Permutation::from_raw(self.images.clone()));
            return;
        }
        // Path currently ending at `point` (which has no image yet).
        let mut head = point;
        let mut back_len = 1;
        while self.preimage[head] != NONE {
            head = self.preimage[head];
            back_len += 1;
        }
        for target in 0..self.degree {
            if self.preimage[target] != NONE {
                continue;
            }
            if target == head {
                if self.remaining[back_len] == 0 {
                    continue;
                }
                self.remaining[back_len] -= 1;
                self.assign(point, target);
                self.extend(point + 1);
                self.unassign(point, target);
                self.remaining[back_len] += 1;
            } else {
                let mut fwd_len = 1;
                let mut x = target;
                while self.images[x] != NONE {
                    x = self.images[x];
                    fwd_len += 1;
                }
                if back_len + fwd_len > self.max_remaining() {
                    continue;
                }
                self.assign(point, target);
                self.extend(point + 1);
                self.unassign(point, target);
            }
        }
    }

    fn assign(&mut self, from: usize, to: usize) {
        self.images[from] = to;
        self.preimage[to] = from;
    }

    fn unassign(&mut self, from: usize, to: usize) {
        self.images[from] = NONE;
        self.preimage[to] = NONE;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, d: usize) -> Permutation {
        Permutation::parse_cycles(text, d).unwrap()
    }

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn compose_is_left_to_right() {
        // (1 2) then (1 3): 1->2->2, 2->1->3, 3->3->1
        let c = p("(1 2)", 3).compose(&p("(1 3)", 3)).unwrap();
        assert_eq!(c.images(), vec![2, 3, 1]);
        assert_eq!(c.to_string(), "(1 2 3)");
        // the right-to-left reading would give (1 3 2)
        assert_ne!(c, p("(1 3 2)", 3));
    }

    #[test]
    fn compose_involution_and_identity() {
        let t = p("(1 2)", 2);
        assert!(t.compose(&t).unwrap().is_identity());
        let x = p("(1 3 2)(4 5)", 5);
        let id = Permutation::identity(5).unwrap();
        assert_eq!(id.compose(&x).unwrap(), x);
        assert_eq!(x.compose(&id).unwrap(), x);
    }

    #[test]
    fn compose_degree_mismatch() {
        assert_eq!(
            p("(1 2)", 2).compose(&p("(1 2)", 3)),
            Err(PermError::DegreeMismatch(2, 3))
        );
    }

    #[test]
    fn cycle_types() {
        assert_eq!(
            Permutation::identity(3).unwrap().cycle_type(),
            part(&[1, 1, 1])
        );
        assert_eq!(p("(1 2 3)", 3).cycle_type(), part(&[3]));
        assert_eq!(p("(1 2)(3 4)", 5).cycle_type(), part(&[2, 2, 1]));
    }

    #[test]
    fn transitivity() {
        assert!(is_transitive(&[p("(1 2)", 2)], 2));
        assert!(!is_transitive(&[p("(1 2)", 3)], 3));
        assert!(is_transitive(&[p("(1 2)", 3), p("(1 3)", 3)], 3));
    }

    #[test]
    fn canonical_representatives() {
        assert_eq!(
            Permutation::canonical_of_type(&part(&[3])).to_string(),
            "(1 2 3)"
        );
        let c = Permutation::canonical_of_type(&part(&[2, 1]));
        assert_eq!(c.to_string(), "(1 2)");
        assert_eq!(c.image(3), 3);
        assert_eq!(
            Permutation::canonical_of_type(&part(&[2, 2])).to_string(),
            "(1 2)(3 4)"
        );
    }

    #[test]
    fn class_enumeration_small() {
        let all = Permutation::enumerate_of_type(&part(&[2]));
        assert_eq!(all, vec![p("(1 2)", 2)]);
        assert_eq!(Permutation::enumerate_of_type(&part(&[3])).len(), 2);
        assert_eq!(Permutation::enumerate_of_type(&part(&[2, 1, 1])).len(), 6);
    }

    #[test]
    fn class_enumeration_is_lexicographic() {
        let all = Permutation::enumerate_of_type(&part(&[3, 2, 1]));
        let images: Vec<_> = all.iter().map(|x| x.images()).collect();
        let mut sorted = images.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(images, sorted);
    }

    #[test]
    fn cycle_notation_round_trip() {
        let x = p("(2 4)(1 3 5)", 6);
        assert_eq!(x.to_string(), "(1 3 5)(2 4)");
        assert_eq!(p(&x.to_string(), 6), x);
        assert_eq!(Permutation::identity(4).unwrap().to_string(), "()");
        assert!(p("()", 4).is_identity());
        assert!(p("", 4).is_identity());
        assert!(p(" (1  2) (3) ", 3)
            .compose(&p("(1 2)", 3))
            .unwrap()
            .is_identity());
    }

    #[test]
    fn cycle_notation_errors() {
        assert!(matches!(
            Permutation::parse_cycles("(1 2", 3),
            Err(PermError::Syntax { .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("(1 2))", 3),
            Err(PermError::Syntax { column: 6, .. })
        ));
        assert!(matches!(
            Permutation::parse_cycles("1 2", 3),
            Err(PermError::Syntax { column: 1, .. })
        ));
        assert_eq!(
            Permutation::parse_cycles("(1 4)", 3),
            Err(PermError::PointOutOfRange {
                point: 4,
                degree: 3
            })
        );
        assert_eq!(
            Permutation::parse_cycles("(1 2)(2 3)", 3),
            Err(PermError::RepeatedPoint(2))
        );
        assert!(matches!(
            Permutation::parse_cycles("(1,2)", 3),
            Err(PermError::Syntax { column: 3, .. })
        ));
    }

    #[test]
    fn from_images_validation() {
        assert_eq!(Permutation::from_images(&[]), Err(PermError::ZeroDegree));
        assert_eq!(
            Permutation::from_images(&[1, 1]),
            Err(PermError::NotBijection(2))
        );
        assert_eq!(
            Permutation::from_images(&[0, 1]),
            Err(PermError::NotBijection(2))
        );
        assert_eq!(
            Permutation::from_images(&[2, 3, 1]).unwrap().to_string(),
            "(1 2 3)"
        );
    }
}
