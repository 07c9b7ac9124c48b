//! Finite chains with a restricted range, their gap structure, and
//! order-(anti-)isomorphisms between chain pairs.
//!
//! A chain of size `n` is always the index set `0..n` with the natural order.
//! A [`ChainPair`] adds the restricted range `X'`, stored as a strictly
//! increasing index list. Everything downstream (enumeration, Cayley tables,
//! the decision procedure) is computed from a `ChainPair`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite chain `0 < 1 < ... < size - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    size: usize,
}

impl Chain {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidPair("chain size must be at least 1".into()));
        }
        Ok(Chain { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Whether `subset` is convex: nothing outside it lies strictly between two
    /// of its members. Empty subsets are rejected.
    pub fn is_convex(&self, subset: &[usize]) -> Result<bool> {
        let set = self.check_subset(subset)?;
        let lo = *set.first().unwrap();
        let hi = *set.last().unwrap();
        Ok(hi - lo + 1 == set.len())
    }

    fn check_subset(&self, subset: &[usize]) -> Result<BTreeSet<usize>> {
        if subset.is_empty() {
            return Err(Error::InvalidSubset("convexity is defined for nonempty subsets".into()));
        }
        if let Some(&x) = subset.iter().find(|&&x| x >= self.size) {
            return Err(Error::InvalidSubset(format!(
                "element {x} outside chain of size {}",
                self.size
            )));
        }
        Ok(subset.iter().copied().collect())
    }
}

/// Direction of a chain bijection: order-preserving or order-reversing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Forward,
    Reversed,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Forward => Orientation::Reversed,
            Orientation::Reversed => Orientation::Forward,
        }
    }
}

/// A chain `X` together with its restricted range `X' ⊆ X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct ChainPair {
    chain: Chain,
    range: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawPair {
    size: usize,
    range: Vec<usize>,
}

impl TryFrom<RawPair> for ChainPair {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        ChainPair::new(raw.size, raw.range)
    }
}

impl From<ChainPair> for RawPair {
    fn from(pair: ChainPair) -> Self {
        RawPair { size: pair.chain.size, range: pair.range }
    }
}

impl ChainPair {
    /// Builds a pair, requiring a nonempty, strictly increasing, in-bounds range.
    pub fn new(size: usize, range: Vec<usize>) -> Result<Self> {
        let chain = Chain::new(size)?;
        if range.is_empty() {
            return Err(Error::InvalidPair("range must be nonempty".into()));
        }
        if let Some(&x) = range.iter().find(|&&x| x >= size) {
            return Err(Error::InvalidPair(format!(
                "range element {x} is outside the chain of size {size}"
            )));
        }
        if range.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPair("range must be strictly increasing".into()));
        }
        Ok(ChainPair { chain, range })
    }

    /// The pair with `X' = X`.
    pub fn full(size: usize) -> Result<Self> {
        ChainPair::new(size, (0..size).collect())
    }

    pub fn chain(&self) -> Chain {
        self.chain
    }

    pub fn size(&self) -> usize {
        self.chain.size
    }

    pub fn range(&self) -> &[usize] {
        &self.range
    }

    pub fn rank(&self) -> usize {
        self.range.len()
    }

    pub fn in_range(&self, x: usize) -> bool {
        self.range.binary_search(&x).is_ok()
    }

    /// Position of `x` inside the range list, if `x ∈ X'`.
    pub fn range_position(&self, x: usize) -> Option<usize> {
        self.range.binary_search(&x).ok()
    }

    /// The same pair read through the chain reversal `x ↦ n - 1 - x`.
    pub fn reversed(&self) -> ChainPair {
        let n = self.size();
        let range = self.range.iter().rev().map(|&x| n - 1 - x).collect();
        ChainPair { chain: self.chain, range }
    }

    /// Cardinalities of the maximal runs of `X ∖ X'`, one slot before the
    /// first range element, one between each consecutive pair and one after
    /// the last. Empty slots are reported as zero.
    pub fn gap_signature(&self) -> GapSignature {
        let mut gaps = Vec::with_capacity(self.range.len() + 1);
        let mut prev: Option<usize> = None;
        for &r in &self.range {
            gaps.push(match prev {
                None => r,
                Some(p) => r - p - 1,
            });
            prev = Some(r);
        }
        gaps.push(self.size() - 1 - prev.unwrap());
        GapSignature(gaps)
    }

    /// The nonempty gap blocks in chain order.
    pub fn gap_blocks(&self) -> Vec<GapBlock> {
        let mut out = Vec::new();
        let mut lo = 0;
        for (position, &gap) in self.gap_signature().0.iter().enumerate() {
            if gap > 0 {
                out.push(GapBlock { lo, hi: lo + gap - 1, position });
            }
            lo += gap + 1;
        }
        out
    }

    /// The gap block containing `x`, if `x ∉ X'`.
    pub fn block_of(&self, x: usize) -> Option<GapBlock> {
        self.gap_blocks().into_iter().find(|b| b.contains(x))
    }

    /// The unique order-(anti-)isomorphism `θ : X → Y` with `(X')θ = Y'`,
    /// returned as an image array, or `None` when none exists.
    pub fn isomorphism_to(&self, other: &ChainPair, orientation: Orientation) -> Option<Vec<usize>> {
        if self.size() != other.size() {
            return None;
        }
        let n = self.size();
        let theta: Vec<usize> = match orientation {
            Orientation::Forward => (0..n).collect(),
            Orientation::Reversed => (0..n).rev().collect(),
        };
        let mut mapped: Vec<usize> = self.range.iter().map(|&x| theta[x]).collect();
        mapped.sort_unstable();
        (mapped == other.range).then_some(theta)
    }
}

impl fmt::Display for ChainPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} range=", self.size())?;
        for (i, r) in self.range.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Free-function form of [`ChainPair::isomorphism_to`].
pub fn pair_isomorphism(a: &ChainPair, b: &ChainPair, orientation: Orientation) -> Option<Vec<usize>> {
    a.isomorphism_to(b, orientation)
}

/// Gap cardinalities of a chain pair, length `|X'| + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GapSignature(pub Vec<usize>);

impl GapSignature {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn reversed(&self) -> GapSignature {
        GapSignature(self.0.iter().rev().copied().collect())
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_palindrome(&self) -> bool {
        *self == self.reversed()
    }
}

/// A maximal run `[lo, hi]` of `X ∖ X'`, with its slot in the gap signature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GapBlock {
    pub lo: usize,
    pub hi: usize,
    pub position: usize,
}

impl GapBlock {
    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: usize) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn elements(&self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }

    fn check_subset(&self, subset: &[usize]) -> Result<BTreeSet<usize>> {
        if subset.is_empty() {
            return Err(Error::InvalidSubset("convexity is defined for nonempty subsets".into()));
        }
        if let Some(&x) = subset.iter().find(|&&x| !self.contains(x)) {
            return Err(Error::InvalidSubset(format!(
                "element {x} is not in block [{}, {}]",
                self.lo, self.hi
            )));
        }
        Ok(subset.iter().copied().collect())
    }

    pub fn is_convex(&self, subset: &[usize]) -> Result<bool> {
        let set = self.check_subset(subset)?;
        Ok(set.last().unwrap() - set.first().unwrap() + 1 == set.len())
    }

    /// Every block element outside `subset` lies above every member.
    pub fn is_lower_convex(&self, subset: &[usize]) -> Result<bool> {
        let set = self.check_subset(subset)?;
        Ok(*set.first().unwrap() == self.lo && self.is_convex(subset)?)
    }

    /// Every block element outside `subset` lies below every member.
    pub fn is_upper_convex(&self, subset: &[usize]) -> Result<bool> {
        let set = self.check_subset(subset)?;
        Ok(*set.last().unwrap() == self.hi && self.is_convex(subset)?)
    }
}

impl fmt::Display for GapBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for x in self.elements() {
            if x > self.lo {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Checks that `map` is a bijection `0..n → 0..n` that is monotone
/// (`Forward`) or antitone (`Reversed`).
pub fn is_chain_bijection(map: &[usize], orientation: Orientation) -> bool {
    let n = map.len();
    let mut seen = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    map.windows(2).all(|w| match orientation {
        Orientation::Forward => w[0] < w[1],
        Orientation::Reversed => w[0] > w[1],
    })
}
