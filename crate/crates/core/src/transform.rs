//! Transformations `X → X'` and the semigroup `T_OP(X, X')`.
//!
//! Composition acts on the right: `x(αβ) = (xα)β`, so [`compose`]`(α, β)`
//! applies `α` first. Reading products right to left would invert every
//! product table here.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain::{ChainPair, GapBlock};
use crate::error::{Error, Result};

/// Default limit on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 10_000;

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "ORDSEMI_CAP";

/// The enumeration cap: `ORDSEMI_CAP` when set to a valid integer, otherwise
/// [`DEFAULT_CAP`].
pub fn cap_from_env() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

/// Read access shared by order-preserving and arbitrary range-restricted maps.
pub trait RangeMap {
    fn pair(&self) -> &ChainPair;

    /// `image()[x]` is `xα`.
    fn image(&self) -> &[usize];

    fn apply(&self, x: usize) -> usize {
        self.image()[x]
    }

    /// `Fix(α) = { x : xα = x }`.
    fn fixpoints(&self) -> BTreeSet<usize> {
        self.image().iter().enumerate().filter(|&(x, &y)| x == y).map(|(x, _)| x).collect()
    }

    /// `ran α`, computed over the whole domain.
    fn range_set(&self) -> BTreeSet<usize> {
        self.image().iter().copied().collect()
    }

    /// The table `x ↦ xα` for `x ∈ X'`.
    fn restrict_to_range(&self) -> Vec<(usize, usize)> {
        self.pair().range().iter().map(|&x| (x, self.apply(x))).collect()
    }

    /// `aα⁻¹ ∩ X'`.
    fn range_preimage(&self, a: usize) -> BTreeSet<usize> {
        self.pair().range().iter().copied().filter(|&x| self.apply(x) == a).collect()
    }

    fn is_order_preserving(&self) -> bool {
        self.image().windows(2).all(|w| w[0] <= w[1])
    }

    fn is_idempotent(&self) -> bool {
        let img = self.image();
        img.iter().all(|&y| img[y] == y)
    }

    fn is_constant(&self) -> bool {
        self.image().windows(2).all(|w| w[0] == w[1])
    }

    /// Two-row matrix form: the domain over the image.
    fn two_row(&self) -> String {
        let img = self.image();
        let width = img.len().saturating_sub(1).to_string().len();
        let row = |f: &dyn Fn(usize) -> usize| {
            (0..img.len()).map(|x| format!("{:>width$}", f(x))).collect::<Vec<_>>().join(" ")
        };
        format!("( {} )\n( {} )", row(&|x| x), row(&|x| img[x]))
    }
}

fn check_image(pair: &ChainPair, image: &[usize]) -> Result<()> {
    if image.len() != pair.size() {
        return Err(Error::InvalidTransformation(format!(
            "image has length {} but the chain has {} elements",
            image.len(),
            pair.size()
        )));
    }
    if let Some((x, &y)) = image.iter().enumerate().find(|&(_, &y)| !pair.in_range(y)) {
        return Err(Error::InvalidTransformation(format!("{x} maps to {y}, which is not in the range")));
    }
    Ok(())
}

/// An element of `T(X, X')`: any total map into the restricted range.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct FullMap {
    pair: ChainPair,
    image: Vec<usize>,
}

impl FullMap {
    pub fn new(pair: ChainPair, image: Vec<usize>) -> Result<Self> {
        check_image(&pair, &image)?;
        Ok(FullMap { pair, image })
    }

    pub fn compose(&self, other: &FullMap) -> Result<FullMap> {
        if self.pair != other.pair {
            return Err(Error::PairMismatch);
        }
        let image = self.image.iter().map(|&y| other.image[y]).collect();
        Ok(FullMap { pair: self.pair.clone(), image })
    }

    /// The order-preserving view, when this map is monotone.
    pub fn to_order_preserving(&self) -> Result<Transformation> {
        Transformation::new(self.pair.clone(), self.image.clone())
    }
}

impl RangeMap for FullMap {
    fn pair(&self) -> &ChainPair {
        &self.pair
    }

    fn image(&self) -> &[usize] {
        &self.image
    }
}

/// An element of `T_OP(X, X')`: a weakly monotone map into `X'`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawMap", into = "RawMap")]
pub struct Transformation {
    pair: ChainPair,
    image: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawMap {
    pair: ChainPair,
    image: Vec<usize>,
}

impl TryFrom<RawMap> for Transformation {
    type Error = Error;

    fn try_from(raw: RawMap) -> Result<Self> {
        Transformation::new(raw.pair, raw.image)
    }
}

impl From<Transformation> for RawMap {
    fn from(t: Transformation) -> Self {
        RawMap { pair: t.pair, image: t.image }
    }
}

impl TryFrom<RawMap> for FullMap {
    type Error = Error;

    fn try_from(raw: RawMap) -> Result<Self> {
        FullMap::new(raw.pair, raw.image)
    }
}

impl From<FullMap> for RawMap {
    fn from(t: FullMap) -> Self {
        RawMap { pair: t.pair, image: t.image }
    }
}

impl Transformation {
    /// Validates range membership and monotonicity.
    pub fn new(pair: ChainPair, image: Vec<usize>) -> Result<Self> {
        check_image(&pair, &image)?;
        if let Some(x) = image.windows(2).position(|w| w[0] > w[1]) {
            return Err(Error::InvalidTransformation(format!(
                "not order-preserving: {x} ↦ {} but {} ↦ {}",
                image[x],
                x + 1,
                image[x + 1]
            )));
        }
        Ok(Transformation { pair, image })
    }

    pub(crate) fn from_parts_unchecked(pair: ChainPair, image: Vec<usize>) -> Self {
        debug_assert!(Transformation::new(pair.clone(), image.clone()).is_ok());
        Transformation { pair, image }
    }

    pub fn into_image(self) -> Vec<usize> {
        self.image
    }

    pub fn to_full(&self) -> FullMap {
        FullMap { pair: self.pair.clone(), image: self.image.clone() }
    }
}

impl RangeMap for Transformation {
    fn pair(&self) -> &ChainPair {
        &self.pair
    }

    fn image(&self) -> &[usize] {
        &self.image
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.two_row())
    }
}

/// `αβ`, acting left to right: `x(αβ) = (xα)β`.
pub fn compose(alpha: &Transformation, beta: &Transformation) -> Result<Transformation> {
    if alpha.pair != beta.pair {
        return Err(Error::PairMismatch);
    }
    let image = alpha.image.iter().map(|&y| beta.image[y]).collect();
    Ok(Transformation { pair: alpha.pair.clone(), image })
}

/// `|T_OP(X, X')| = C(n + k - 1, n)` for `|X| = n`, `|X'| = k`.
pub fn count_top(pair: &ChainPair) -> u128 {
    let n = pair.size() as u128;
    let k = pair.rank() as u128;
    // C(n + k - 1, k - 1), accumulated so every intermediate is an integer.
    let mut c: u128 = 1;
    for i in 1..k {
        c = c * (n + i) / i;
    }
    c
}

/// All elements of `T_OP(X, X')`, each once, in lexicographic order of their
/// image arrays. This order is the canonical element indexing.
pub fn enumerate_top(pair: &ChainPair, cap: usize) -> Result<Vec<Transformation>> {
    let count = count_top(pair);
    if count > cap as u128 {
        return Err(Error::CapExceeded { count, cap });
    }
    let n = pair.size();
    let k = pair.rank();
    let range = pair.range();
    let mut out = Vec::with_capacity(count as usize);
    // positions into the range list, weakly increasing
    let mut pos = vec![0usize; n];
    loop {
        out.push(Transformation {
            pair: pair.clone(),
            image: pos.iter().map(|&p| range[p]).collect(),
        });
        // successor in lex order: bump the last position that can grow and
        // reset everything after it to the same value
        let Some(i) = (0..n).rev().find(|&i| pos[i] + 1 < k) else {
            break;
        };
        let v = pos[i] + 1;
        pos[i..].iter_mut().for_each(|p| *p = v);
    }
    debug_assert_eq!(out.len() as u128, count);
    Ok(out)
}

/// The constant map `X_a`.
pub fn constant_map(pair: &ChainPair, a: usize) -> Result<Transformation> {
    if !pair.in_range(a) {
        return Err(Error::Precondition(format!("{a} is not a range element")));
    }
    Ok(Transformation { pair: pair.clone(), image: vec![a; pair.size()] })
}

fn require_range(pair: &ChainPair, xs: &[usize]) -> Result<()> {
    match xs.iter().find(|&&x| !pair.in_range(x)) {
        Some(x) => Err(Error::Precondition(format!("{x} is not a range element"))),
        None => Ok(()),
    }
}

fn require_block(pair: &ChainPair, block: &GapBlock) -> Result<()> {
    if !pair.gap_blocks().contains(block) {
        return Err(Error::Precondition(format!("{block} is not a gap block of {pair}")));
    }
    Ok(())
}

/// `ω_{a:A;b:c}`: everything below `A` goes to `a`, `A` goes to `b`, and
/// everything above `A` goes to `c`.
///
/// Requires `a ≤ b < block < c` or `a < block < b ≤ c`, with `A` a nonempty
/// convex subset of `block`.
pub fn omega_three(
    pair: &ChainPair,
    block: &GapBlock,
    subset: &[usize],
    a: usize,
    b: usize,
    c: usize,
) -> Result<Transformation> {
    require_range(pair, &[a, b, c])?;
    require_block(pair, block)?;
    if !block.is_convex(subset)? {
        return Err(Error::Precondition("A must be convex".into()));
    }
    let below = a <= b && b < block.lo && block.hi < c;
    let above = a < block.lo && block.hi < b && b <= c;
    if !(below || above) {
        return Err(Error::Precondition(format!(
            "need a ≤ b < {block} < c or a < {block} < b ≤ c, got a={a} b={b} c={c}"
        )));
    }
    let lo = *subset.iter().min().unwrap();
    let hi = *subset.iter().max().unwrap();
    let image = (0..pair.size())
        .map(|x| if x < lo { a } else if x <= hi { b } else { c })
        .collect();
    Ok(Transformation::from_parts_unchecked(pair.clone(), image))
}

/// `ω_{L:a;b}`: the lower-convex part `L` of the minimum gap block goes to
/// `a`, everything else to `b`. Requires `block < a < b`.
pub fn omega_low(pair: &ChainPair, lower: &[usize], a: usize, b: usize) -> Result<Transformation> {
    require_range(pair, &[a, b])?;
    let block = pair
        .gap_blocks()
        .into_iter()
        .find(|blk| blk.position == 0)
        .ok_or_else(|| Error::Precondition("no gap block below the range".into()))?;
    if !block.is_lower_convex(lower)? {
        return Err(Error::Precondition("L must be lower-convex in the minimum block".into()));
    }
    if a >= b {
        return Err(Error::Precondition(format!("need a < b, got a={a} b={b}")));
    }
    let cut = *lower.iter().max().unwrap();
    let image = (0..pair.size()).map(|x| if x <= cut { a } else { b }).collect();
    Ok(Transformation::from_parts_unchecked(pair.clone(), image))
}

/// `ω_{a:U;b}`: the upper-convex part `U` of the maximum gap block goes to
/// `b`, everything else to `a`. Requires `a < b < block`.
pub fn omega_high(pair: &ChainPair, upper: &[usize], a: usize, b: usize) -> Result<Transformation> {
    require_range(pair, &[a, b])?;
    let block = pair
        .gap_blocks()
        .into_iter()
        .find(|blk| blk.position == pair.rank())
        .ok_or_else(|| Error::Precondition("no gap block above the range".into()))?;
    if !block.is_upper_convex(upper)? {
        return Err(Error::Precondition("U must be upper-convex in the maximum block".into()));
    }
    if a >= b {
        return Err(Error::Precondition(format!("need a < b, got a={a} b={b}")));
    }
    let cut = *upper.iter().min().unwrap();
    let image = (0..pair.size()).map(|x| if x < cut { a } else { b }).collect();
    Ok(Transformation::from_parts_unchecked(pair.clone(), image))
}
