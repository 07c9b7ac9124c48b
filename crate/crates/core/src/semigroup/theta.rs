//! The range bijection `θ_φ` induced by a semigroup isomorphism, its
//! extension to adjusted chains, and the structural transport checks.
//!
//! Every right zero of `T_OP(X, X')` is a constant map, and an isomorphism
//! carries right zeros to right zeros, so `φ` sends the constant at `a` to
//! the constant at some `ā`. The map `a ↦ ā` is `θ_φ`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::cayley::CayleyTable;
use super::oracle::{verify_iso, SemigroupIso};
use crate::chain::{GapBlock, Orientation};
use crate::error::{Error, Result};
use crate::structures::{AdjustedChain, KKey, Node, PartialGraph};
use crate::transform::RangeMap;

/// A bijection `X' → Y'` that is monotone (`Forward`) or antitone
/// (`Reversed`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeBijection {
    pub map: BTreeMap<usize, usize>,
    pub orientation: Orientation,
}

impl RangeBijection {
    pub fn apply(&self, a: usize) -> usize {
        self.map[&a]
    }

    pub fn inverse(&self) -> RangeBijection {
        RangeBijection {
            map: self.map.iter().map(|(&a, &b)| (b, a)).collect(),
            orientation: self.orientation,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(a, b)| a == b)
    }

    fn image_set(&self, xs: &BTreeSet<usize>) -> BTreeSet<usize> {
        xs.iter().map(|&x| self.apply(x)).collect()
    }

    /// Transports a K-class key along `θ`.
    pub fn transport_key(&self, key: &KKey) -> KKey {
        let mut restriction: Vec<(usize, usize)> =
            key.restriction.iter().map(|&(x, y)| (self.apply(x), self.apply(y))).collect();
        restriction.sort_unstable();
        let mut range: Vec<usize> = key.range.iter().map(|&y| self.apply(y)).collect();
        range.sort_unstable();
        KKey { restriction, range }
    }
}

fn require_verified(a: &CayleyTable, b: &CayleyTable, m: &SemigroupIso) -> Result<()> {
    if verify_iso(a.table(), b.table(), m) {
        Ok(())
    } else {
        Err(Error::NotAnIsomorphism(format!("{} → {}", a.pair(), b.pair())))
    }
}

/// `θ_φ`: `a ↦ ā` where `φ` sends the constant at `a` to the constant at `ā`.
///
/// Fails if `m` is not a verified isomorphism, or if the induced bijection is
/// neither monotone nor antitone.
pub fn extract_theta(a: &CayleyTable, b: &CayleyTable, m: &SemigroupIso) -> Result<RangeBijection> {
    require_verified(a, b, m)?;
    let mut map = BTreeMap::new();
    for &x in a.pair().range() {
        let ci = a.constant_index(x).expect("constant maps are enumerated");
        let target = m.apply(ci);
        if !b.info(target).constant {
            return Err(Error::Violation(format!("constant at {x} is sent to a non-constant map")));
        }
        map.insert(x, b.element(target).apply(0));
    }
    let values: Vec<usize> = map.values().copied().collect();
    let orientation = if values.windows(2).all(|w| w[0] < w[1]) {
        Orientation::Forward
    } else if values.windows(2).all(|w| w[0] > w[1]) {
        Orientation::Reversed
    } else {
        return Err(Error::Violation(format!("θ_φ = {map:?} is neither monotone nor antitone")));
    };
    Ok(RangeBijection { map, orientation })
}

/// One matched gap block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockMatch {
    pub source: GapBlock,
    pub target: GapBlock,
    /// `|K|` of the witnessing K-class in the source and its image class.
    pub witness_class_size: usize,
}

/// The extension of `θ_φ` to the adjusted chains.
///
/// With `Forward` orientation the node map is order-preserving onto the
/// adjusted chain of `Y`; with `Reversed` it is order-preserving onto that
/// chain read backwards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjustedChainIso {
    pub orientation: Orientation,
    pub nodes: Vec<(Node, Node)>,
    pub blocks: Vec<BlockMatch>,
}

impl AdjustedChainIso {
    pub fn is_identity(&self) -> bool {
        self.nodes.iter().all(|(s, t)| s == t)
    }
}

/// K-class key whose class size measures the block in signature slot `slot`:
/// the two-valued cut maps that separate the range around that slot.
fn witness_key(range: &[usize], slot: usize) -> KKey {
    let k = range.len();
    let (restriction, lo, hi): (Vec<(usize, usize)>, usize, usize) = if slot == 0 {
        // ω_{L:a;b}: X' ↦ b, L ↦ a
        let (a, b) = (range[0], range[1]);
        (range.iter().map(|&x| (x, b)).collect(), a, b)
    } else if slot == k {
        // ω_{a:U;b}: X' ↦ a, U ↦ b
        let (a, b) = (range[k - 2], range[k - 1]);
        (range.iter().map(|&x| (x, a)).collect(), a, b)
    } else {
        let (a, b) = (range[slot - 1], range[slot]);
        (range.iter().map(|&x| (x, if x <= a { a } else { b })).collect(), a, b)
    };
    KKey { restriction, range: vec![lo, hi] }
}

/// Block size predicted by the witness class size for a given slot.
fn block_size_from_witness(slot: usize, rank: usize, class_size: usize) -> usize {
    if slot == 0 || slot == rank {
        class_size
    } else {
        class_size - 1
    }
}

/// `θ̂_φ`: matches every gap block of `X` to a block of `Y` of the same size.
///
/// Partners are chosen positionally from `θ_φ` (after normalizing an antitone
/// `θ_φ` through the reversal of `Y`), then validated against `φ`: the
/// K-class measuring each source block must map onto the K-class measuring
/// its partner, and the two blocks must have equal cardinality.
pub fn extend_theta_hat(a: &CayleyTable, b: &CayleyTable, m: &SemigroupIso) -> Result<AdjustedChainIso> {
    let theta = extract_theta(a, b, m)?;
    let k = a.pair().rank();
    if k < 2 {
        return Err(Error::Precondition(
            "adjusted-chain extension needs at least two range elements".into(),
        ));
    }
    let orientation = theta.orientation;
    let sig_a = a.pair().gap_signature();
    let sig_b = b.pair().gap_signature();
    // slot i of X corresponds to slot i of Y, or of reversed Y
    let partner_slot = |i: usize| match orientation {
        Orientation::Forward => i,
        Orientation::Reversed => k - i,
    };
    let blocks_b: BTreeMap<usize, GapBlock> =
        b.pair().gap_blocks().into_iter().map(|blk| (blk.position, blk)).collect();

    let mut matches = Vec::new();
    for src in a.pair().gap_blocks() {
        let slot = partner_slot(src.position);
        let target = *blocks_b.get(&slot).ok_or_else(|| {
            Error::Violation(format!("block {src} of {} has no partner in {}", a.pair(), b.pair()))
        })?;
        let key_a = witness_key(a.pair().range(), src.position);
        let class_a = a.class_members(&key_a);
        let expected_key = theta.transport_key(&key_a);
        let mut image: Vec<usize> = class_a.iter().map(|&i| m.apply(i)).collect();
        image.sort_unstable();
        let class_b = b.class_members(&expected_key);
        if image != class_b {
            return Err(Error::Violation(format!(
                "K-class measuring block {src} is not carried onto the class of {target}"
            )));
        }
        if block_size_from_witness(src.position, k, class_a.len()) != src.len()
            || block_size_from_witness(slot, k, class_b.len()) != target.len()
        {
            return Err(Error::Violation(format!("witness class size disagrees with block {src}")));
        }
        if src.len() != target.len() || sig_a.0[src.position] != sig_b.0[slot] {
            return Err(Error::Violation(format!(
                "block {src} has {} elements but its partner {target} has {}",
                src.len(),
                target.len()
            )));
        }
        matches.push(BlockMatch { source: src, target, witness_class_size: class_a.len() });
    }
    if a.pair().gap_blocks().len() != blocks_b.len() {
        return Err(Error::Violation("some gap block of the codomain has no partner".into()));
    }

    let by_source: BTreeMap<GapBlock, GapBlock> = matches.iter().map(|bm| (bm.source, bm.target)).collect();
    let nodes = AdjustedChain::new(a.pair())
        .nodes
        .into_iter()
        .map(|node| {
            let image = match node {
                Node::Element(x) => Node::Element(theta.apply(x)),
                Node::Block(blk) => Node::Block(by_source[&blk]),
            };
            (node, image)
        })
        .collect();
    Ok(AdjustedChainIso { orientation, nodes, blocks: matches })
}

/// Outcome of [`check_preservation`]: every violated transport, by element.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservationReport {
    pub elements_checked: usize,
    pub violations: Vec<String>,
}

impl PreservationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every `α`, checks that `θ_φ` carries onto `αφ`:
/// `Fix(α)`, `ran α`, each `aα⁻¹ ∩ X'`, the partial graph `Γ_α` with its
/// component order (reversed when `θ_φ` is antitone), and the K-class of `α`.
pub fn check_preservation(
    a: &CayleyTable,
    b: &CayleyTable,
    m: &SemigroupIso,
    theta: &RangeBijection,
) -> PreservationReport {
    let mut report = PreservationReport { elements_checked: a.order(), violations: Vec::new() };
    let mut note = |i: usize, what: String| {
        report.violations.push(format!("element {i} ({:?}): {what}", a.element(i).image()))
    };
    for i in 0..a.order() {
        let alpha = a.element(i);
        let beta = b.element(m.apply(i));

        let fix = theta.image_set(&alpha.fixpoints());
        if fix != beta.fixpoints() {
            note(i, format!("Fix transports to {fix:?}, found {:?}", beta.fixpoints()));
        }
        let ran = theta.image_set(&alpha.range_set());
        if ran != beta.range_set() {
            note(i, format!("range transports to {ran:?}, found {:?}", beta.range_set()));
        }
        for &r in &alpha.range_set() {
            let pre = theta.image_set(&alpha.range_preimage(r));
            let found = beta.range_preimage(theta.apply(r));
            if pre != found {
                note(i, format!("X'-preimage of {r} transports to {pre:?}, found {found:?}"));
            }
        }

        let ga = PartialGraph::of(alpha);
        let gb = PartialGraph::of(beta);
        let mut edges: Vec<(usize, usize)> =
            ga.edges.iter().map(|&(x, y)| (theta.apply(x), theta.apply(y))).collect();
        edges.sort_unstable();
        if edges != gb.edges {
            note(i, format!("edges transport to {edges:?}, found {:?}", gb.edges));
        }
        let mut comps_a: Vec<(BTreeSet<usize>, usize)> = ga
            .components()
            .into_iter()
            .map(|(up, low)| (up.iter().map(|&x| theta.apply(x)).collect(), theta.apply(low)))
            .collect();
        if theta.orientation == Orientation::Reversed {
            comps_a.reverse();
        }
        let comps_b: Vec<(BTreeSet<usize>, usize)> =
            gb.components().into_iter().map(|(up, low)| (up.into_iter().collect(), low)).collect();
        if comps_a != comps_b {
            note(i, "component order is not preserved".into());
        }

        let class_a = a.class_members(&a.info(i).key);
        let mut image: Vec<usize> = class_a.iter().map(|&j| m.apply(j)).collect();
        image.sort_unstable();
        let class_b = b.class_members(&b.info(m.apply(i)).key);
        if image != class_b {
            note(i, format!("K-class {class_a:?} maps to {image:?}, expected {class_b:?}"));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainPair;
    use crate::semigroup::oracle::{find_all_isos, find_iso, SearchOptions};
    use crate::transform::DEFAULT_CAP;

    fn build(n: usize, r: &[usize]) -> CayleyTable {
        CayleyTable::build(&ChainPair::new(n, r.to_vec()).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn identity_automorphism() {
        let t = build(6, &[1, 4]);
        let id = SemigroupIso::identity(t.order());
        let theta = extract_theta(&t, &t, &id).unwrap();
        assert!(theta.is_identity());
        assert_eq!(theta.orientation, Orientation::Forward);
        assert!(check_preservation(&t, &t, &id, &theta).is_clean());
        assert!(extend_theta_hat(&t, &t, &id).unwrap().is_identity());
    }

    #[test]
    fn mirror_pair() {
        let a = build(3, &[1, 2]);
        let b = build(3, &[0, 1]);
        let m = find_iso(a.table(), b.table(), SearchOptions::default()).unwrap().unwrap();
        let theta = extract_theta(&a, &b, &m).unwrap();
        assert_eq!(theta.map, [(1, 1), (2, 0)].into_iter().collect());
        assert_eq!(theta.orientation, Orientation::Reversed);
        assert!(check_preservation(&a, &b, &m, &theta).is_clean());
        let hat = extend_theta_hat(&a, &b, &m).unwrap();
        assert_eq!(hat.blocks.len(), 1);
        assert_eq!(hat.blocks[0].source.elements().collect::<Vec<_>>(), vec![0]);
        assert_eq!(hat.blocks[0].target.elements().collect::<Vec<_>>(), vec![2]);
    }

    #[test]
    fn automorphism_thetas() {
        let t = build(5, &[1, 3]);
        let autos = find_all_isos(t.table(), t.table(), SearchOptions::default(), 100).unwrap();
        let mut seen = BTreeSet::new();
        for m in &autos {
            let theta = extract_theta(&t, &t, m).unwrap();
            seen.insert(theta.map.clone());
        }
        let id: BTreeMap<usize, usize> = [(1, 1), (3, 3)].into_iter().collect();
        let swap: BTreeMap<usize, usize> = [(1, 3), (3, 1)].into_iter().collect();
        assert_eq!(seen, [id, swap].into_iter().collect());
    }

    #[test]
    fn theta_of_inverse_is_inverse() {
        let a = build(5, &[0, 2, 3]);
        let b = build(5, &[1, 2, 4]);
        let m = find_iso(a.table(), b.table(), SearchOptions::default()).unwrap().unwrap();
        let forward = extract_theta(&a, &b, &m).unwrap();
        let back = extract_theta(&b, &a, &m.inverse()).unwrap();
        assert_eq!(back, forward.inverse());
    }

    #[test]
    fn rejects_unverified_mapping() {
        let t = build(5, &[1, 3]);
        let mut m = SemigroupIso::identity(t.order());
        m.mapping.swap(0, 1);
        assert!(matches!(extract_theta(&t, &t, &m), Err(Error::NotAnIsomorphism(_))));
    }

    #[test]
    fn single_point_range_has_no_extension() {
        let a = build(3, &[0]);
        let b = build(2, &[1]);
        let m = SemigroupIso::identity(1);
        assert_eq!(extract_theta(&a, &b, &m).unwrap().map.len(), 1);
        assert!(matches!(extend_theta_hat(&a, &b, &m), Err(Error::Precondition(_))));
    }
}
