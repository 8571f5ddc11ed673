//! Finitely supported permutations of the positive integers.
//!
//! A [`Permutation`] is stored in one-line notation on `0..deg`; every point
//! at or beyond `deg` is implicitly fixed. Equality, ordering and hashing
//! ignore trailing fixed points, so permutations of different ambient degree
//! compare as elements of the infinite symmetric group.
//!
//! The Rust API is 0-based. Text and JSON forms are 1-based, matching the
//! usual mathematical notation: `(1 2 3)(4 5)`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Images = SmallVec<[u16; 16]>;

/// A bijection of `{0, .., deg-1}`, extended by the identity.
#[derive(Clone)]
pub struct Permutation {
    images: Images,
}

impl Permutation {
    pub fn identity(deg: usize) -> Self {
        Permutation {
            images: (0..deg as u16).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(Error::InvalidPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range 1..={n}",
                    x + 1
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!(
                    "image {} repeated",
                    x + 1
                )));
            }
        }
        Ok(Permutation {
            images: images.iter().map(|&x| x as u16).collect(),
        })
    }

    /// Builds a permutation from 1-based images.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("point 0 in 1-based images".into()));
        }
        let zero: Vec<usize> = images.iter().map(|&x| x - 1).collect();
        Self::from_images(&zero)
    }

    pub(crate) fn from_raw(images: Images) -> Self {
        debug_assert!(Self::from_images(&images.iter().map(|&x| x as usize).collect::<Vec<_>>()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation of degree `deg` from disjoint 0-based cycles.
    pub fn from_cycles(deg: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let top = cycles.iter().flatten().map(|&x| x + 1).max().unwrap_or(0);
        let deg = deg.max(top);
        let mut images: Vec<usize> = (0..deg).collect();
        let mut touched = vec![false; deg];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                if std::mem::replace(&mut touched[x], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} appears in two cycles",
                        x + 1
                    )));
                }
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    pub fn deg(&self) -> usize {
        self.images.len()
    }

    /// Image of a 0-based point; points beyond the degree are fixed.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        match self.images.get(x) {
            Some(&y) => y as usize,
            None => x,
        }
    }

    pub fn images(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.images.iter().map(|&x| x as usize)
    }

    pub(crate) fn raw(&self) -> &[u16] {
        &self.images
    }

    /// One-line notation with trailing fixed points removed.
    fn trimmed(&self) -> &[u16] {
        let mut end = self.images.len();
        while end > 0 && self.images[end - 1] as usize == end - 1 {
            end -= 1;
        }
        &self.images[..end]
    }

    /// Smallest degree on which the permutation is defined.
    pub fn support_bound(&self) -> usize {
        self.trimmed().len()
    }

    pub fn is_identity(&self) -> bool {
        self.trimmed().is_empty()
    }

    /// The same permutation viewed at a larger ambient degree.
    pub fn padded(&self, deg: usize) -> Permutation {
        let mut images = self.images.clone();
        for x in images.len()..deg {
            images.push(x as u16);
        }
        Permutation { images }
    }

    /// Shrinks the ambient degree to `deg`; fails if a moved point would be cut.
    pub fn truncated(&self, deg: usize) -> Result<Permutation> {
        if self.support_bound() > deg {
            return Err(Error::DegreeMismatch {
                expected: deg,
                found: self.support_bound(),
            });
        }
        Ok(Permutation {
            images: self.images.iter().take(deg).copied().chain(
                (self.images.len()..deg).map(|x| x as u16),
            ).collect(),
        })
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let deg = self.deg().max(other.deg());
        let images = (0..deg).map(|x| self.apply(other.apply(x)) as u16).collect();
        Permutation { images }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images: Images = SmallVec::from_elem(0, self.deg());
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u16;
        }
        Permutation { images }
    }

    /// `h ∘ self ∘ h⁻¹`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        h.compose(self).compose(&h.inverse())
    }

    /// Disjoint cycles partitioning `carrier`, each starting at its minimal
    /// element, sorted by minimal element.
    pub fn cycles(&self, carrier: &[usize]) -> Result<Vec<Vec<usize>>> {
        let mut sorted: Vec<usize> = carrier.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        for &x in &sorted {
            let y = self.apply(x);
            if sorted.binary_search(&y).is_err() {
                return Err(Error::NotInvariant(x + 1));
            }
        }
        let mut done = std::collections::HashSet::new();
        let mut out = Vec::new();
        for &start in &sorted {
            if !done.insert(start) {
                continue;
            }
            let mut cycle = vec![start];
            let mut x = self.apply(start);
            while x != start {
                done.insert(x);
                cycle.push(x);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        Ok(out)
    }

    /// Cycles on the whole ambient set `0..deg`.
    pub fn all_cycles(&self) -> Vec<Vec<usize>> {
        let carrier: Vec<usize> = (0..self.deg()).collect();
        self.cycles(&carrier).expect("0..deg is invariant")
    }

    /// Number of cycles on `0..deg`, fixed points included.
    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.deg()];
        let mut count = 0;
        for start in 0..self.deg() {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
            }
        }
        count
    }

    /// Cycle lengths sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.all_cycles().iter().map(Vec::len).collect();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// All permutations of `0..deg` fixing `0..fixed` pointwise, in
    /// lexicographic order of their one-line notation.
    pub fn all_fixing(fixed: usize, deg: usize) -> AllPermutations {
        AllPermutations {
            fixed: fixed.min(deg),
            current: Some((0..deg).collect()),
        }
    }

    /// All permutations of `0..deg`.
    pub fn all(deg: usize) -> AllPermutations {
        Self::all_fixing(0, deg)
    }
}

/// Iterator over a symmetric group in lexicographic order.
pub struct AllPermutations {
    fixed: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.current.take()?;
        let out = Permutation {
            images: cur.iter().map(|&x| x as u16).collect(),
        };
        let mut next = cur;
        let tail = &mut next[self.fixed..];
        if next_lexicographic(tail) {
            self.current = Some(next);
        }
        Some(out)
    }
}

fn next_lexicographic(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

impl PartialEq for Permutation {
    fn eq(&self, other: &Self) -> bool {
        self.trimmed() == other.trimmed()
    }
}

impl Eq for Permutation {}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.trimmed().hash(state);
    }
}

impl PartialOrd for Permutation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Permutation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.trimmed().cmp(other.trimmed())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.deg(), self)
    }
}

/// Cycle notation, 1-based, fixed points omitted; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.all_cycles() {
            if cycle.len() < 2 {
                continue;
            }
            any = true;
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Parses 1-based cycle notation such as `(1 2 3)(4 5)`; commas are accepted
/// as separators. The degree is the largest point mentioned.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parenthesis in {s:?}")))?;
            let mut cycle = Vec::new();
            for tok in body[..close].split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let x: usize = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point {tok:?}")))?;
                if x == 0 {
                    return Err(Error::Parse("points are 1-based".into()));
                }
                cycle.push(x - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = body[close + 1..].trim_start();
        }
        Permutation::from_cycles(0, &cycles)
    }
}

#[derive(Serialize, Deserialize)]
struct PermutationJson {
    deg: usize,
    images: Vec<usize>,
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PermutationJson {
            deg: self.deg(),
            images: self.images().map(|x| x + 1).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PermutationJson::deserialize(deserializer)?;
        if raw.images.len() != raw.deg {
            return Err(serde::de::Error::custom(format!(
                "deg {} but {} images",
                raw.deg,
                raw.images.len()
            )));
        }
        Permutation::from_one_based(&raw.images).map_err(serde::de::Error::custom)
    }
}
