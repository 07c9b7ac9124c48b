//! Adjusted chains, partial graphs, the K-equivalence, and the five
//! K-class shapes of `T_OP(X, X')` when `|X'| = 2`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chain::{ChainPair, GapBlock};
use crate::error::{Error, Result};
use crate::transform::{compose, enumerate_top, RangeMap, Transformation};

/// A node of the adjusted chain: a range element or a whole gap block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Node {
    Element(usize),
    Block(GapBlock),
}

/// `X'` together with the gap blocks of `X ∖ X'`, in chain order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjustedChain {
    pub nodes: Vec<Node>,
}

impl AdjustedChain {
    pub fn new(pair: &ChainPair) -> Self {
        let mut nodes = Vec::with_capacity(2 * pair.rank() + 1);
        let mut blocks = pair.gap_blocks().into_iter().peekable();
        for (i, &r) in pair.range().iter().enumerate() {
            if let Some(b) = blocks.next_if(|b| b.position == i) {
                nodes.push(Node::Block(b));
            }
            nodes.push(Node::Element(r));
        }
        nodes.extend(blocks.map(Node::Block));
        AdjustedChain { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn blocks(&self) -> impl Iterator<Item = &GapBlock> {
        self.nodes.iter().filter_map(|n| match n {
            Node::Block(b) => Some(b),
            Node::Element(_) => None,
        })
    }
}

impl fmt::Display for AdjustedChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, node) in self.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match node {
                Node::Element(x) => write!(f, "{x}")?,
                Node::Block(b) => write!(f, "[{b}]")?,
            }
        }
        Ok(())
    }
}

pub fn adjusted_chain(pair: &ChainPair) -> AdjustedChain {
    AdjustedChain::new(pair)
}

/// The partial graph `Γ_α`: upper vertices `X'`, lower vertices `ran α`, and
/// an edge `x → xα` for each `x ∈ X'`.
///
/// Lower vertices come from the whole domain, edges only from `X'`, so a
/// value reached only from outside `X'` is an isolated lower vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialGraph {
    pub upper: Vec<usize>,
    pub lower: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl PartialGraph {
    pub fn of<M: RangeMap + ?Sized>(alpha: &M) -> Self {
        PartialGraph {
            upper: alpha.pair().range().to_vec(),
            lower: alpha.range_set().into_iter().collect(),
            edges: alpha.restrict_to_range(),
        }
    }

    /// Weakly connected components, each given as (upper vertices, lower
    /// vertex), ordered left to right by lower vertex.
    pub fn components(&self) -> Vec<(Vec<usize>, usize)> {
        // vertices: upper i -> i, lower j -> upper.len() + j
        let nu = self.upper.len();
        let mut parent: Vec<usize> = (0..nu + self.lower.len()).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for &(x, y) in &self.edges {
            let u = self.upper.binary_search(&x).expect("edge source is an upper vertex");
            let l = nu + self.lower.binary_search(&y).expect("edge target is a lower vertex");
            let (ru, rl) = (find(&mut parent, u), find(&mut parent, l));
            parent[ru] = rl;
        }
        let mut groups: BTreeMap<usize, (Vec<usize>, Option<usize>)> = BTreeMap::new();
        for v in 0..parent.len() {
            let root = find(&mut parent, v);
            let entry = groups.entry(root).or_default();
            if v < nu {
                entry.0.push(self.upper[v]);
            } else {
                entry.1 = Some(self.lower[v - nu]);
            }
        }
        let mut comps: Vec<(Vec<usize>, usize)> = groups
            .into_values()
            .map(|(up, low)| (up, low.expect("every edge ends at a lower vertex")))
            .collect();
        comps.sort_by_key(|c| c.1);
        comps
    }

    pub fn component_count(&self) -> usize {
        self.components().len()
    }

    /// Graphviz rendering with the two vertex rows rank-pinned and ordered.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph partial_graph {\n  rankdir=TB;\n  node [shape=circle];\n");
        let row = |prefix: &str, vs: &[usize]| {
            let names: Vec<String> = vs.iter().map(|v| format!("{prefix}{v}")).collect();
            let mut out = format!("  {{ rank=same; {} }}\n", names.join("; "));
            for (v, name) in vs.iter().zip(&names) {
                out.push_str(&format!("  {name} [label=\"{v}\"];\n"));
            }
            if names.len() > 1 {
                out.push_str(&format!("  {} [style=invis];\n", names.join(" -> ")));
            }
            out
        };
        s.push_str(&row("u", &self.upper));
        s.push_str(&row("l", &self.lower));
        for (x, y) in &self.edges {
            s.push_str(&format!("  u{x} -> l{y};\n"));
        }
        s.push_str("}\n");
        s
    }
}

pub fn partial_graph<M: RangeMap + ?Sized>(alpha: &M) -> PartialGraph {
    PartialGraph::of(alpha)
}

/// The K-class key: restriction to `X'` together with the range.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KKey {
    pub restriction: Vec<(usize, usize)>,
    pub range: Vec<usize>,
}

impl KKey {
    pub fn of<M: RangeMap + ?Sized>(alpha: &M) -> Self {
        KKey {
            restriction: alpha.restrict_to_range(),
            range: alpha.range_set().into_iter().collect(),
        }
    }
}

pub fn k_equivalent<M: RangeMap + ?Sized>(alpha: &M, beta: &M) -> bool {
    KKey::of(alpha) == KKey::of(beta)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KClass {
    pub key: KKey,
    /// Canonical element indices, ascending.
    pub members: Vec<usize>,
}

/// K-classes of the enumerated semigroup, ordered by their first member.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KClassPartition {
    pub classes: Vec<KClass>,
}

impl KClassPartition {
    pub fn from_elements(elements: &[Transformation]) -> Self {
        let mut by_key: BTreeMap<KKey, Vec<usize>> = BTreeMap::new();
        for (i, e) in elements.iter().enumerate() {
            by_key.entry(KKey::of(e)).or_default().push(i);
        }
        let mut classes: Vec<KClass> =
            by_key.into_iter().map(|(key, members)| KClass { key, members }).collect();
        classes.sort_by_key(|c| c.members[0]);
        KClassPartition { classes }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.members.len()).collect()
    }

    /// Index of the class holding `element`.
    pub fn class_of(&self, element: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(&element))
    }
}

pub fn k_classes(pair: &ChainPair, cap: usize) -> Result<KClassPartition> {
    Ok(KClassPartition::from_elements(&enumerate_top(pair, cap)?))
}

/// The five K-class shapes when `X' = {p < q}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LambdaShape {
    /// constant at `p`
    L1,
    /// constant at `q`
    L2,
    /// fixes `p` and `q`
    L3,
    /// `p, q ↦ p`, range `{p, q}`
    L4,
    /// `p, q ↦ q`, range `{p, q}`
    L5,
}

impl LambdaShape {
    pub const ALL: [LambdaShape; 5] =
        [LambdaShape::L1, LambdaShape::L2, LambdaShape::L3, LambdaShape::L4, LambdaShape::L5];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Class of `αβ` for `α` of shape `self` and `β` of shape `rhs`. `None`
    /// means `αβ = α`.
    pub fn product(self, rhs: LambdaShape) -> Option<LambdaShape> {
        use LambdaShape::*;
        match rhs {
            L1 | L4 => Some(L1),
            L2 | L5 => Some(L2),
            L3 => None,
        }
    }

    /// The class of `αβ` as a shape, resolving `αβ = α`.
    pub fn product_class(self, rhs: LambdaShape) -> LambdaShape {
        self.product(rhs).unwrap_or(self)
    }
}

impl fmt::Display for LambdaShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ{}", self.index() + 1)
    }
}

fn two_point_range(pair: &ChainPair) -> Result<(usize, usize)> {
    match pair.range() {
        &[p, q] => Ok((p, q)),
        r => Err(Error::Precondition(format!("λ-shapes need |X'| = 2, got {}", r.len()))),
    }
}

pub fn classify_lambda<M: RangeMap + ?Sized>(alpha: &M) -> Result<LambdaShape> {
    let (p, q) = two_point_range(alpha.pair())?;
    let two_valued = alpha.range_set().len() == 2;
    Ok(match (alpha.apply(p), alpha.apply(q), two_valued) {
        (x, y, false) if x == p && y == p => LambdaShape::L1,
        (x, y, false) if x == q && y == q => LambdaShape::L2,
        (x, y, true) if x == p && y == q => LambdaShape::L3,
        (x, y, true) if x == p && y == p => LambdaShape::L4,
        (x, y, true) if x == q && y == q => LambdaShape::L5,
        _ => unreachable!("a map into a two-point range has one of five shapes"),
    })
}

/// `(|K_λ1|, ..., |K_λ5|) = (1, 1, |M₂| + 1, |M₃|, |M₁|)`.
pub fn lambda_class_sizes(pair: &ChainPair) -> Result<[usize; 5]> {
    two_point_range(pair)?;
    let m = pair.gap_signature().0;
    Ok([1, 1, m[1] + 1, m[2], m[0]])
}

/// A product whose class disagrees with the λ multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMismatch {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub product: Vec<usize>,
    pub expected: String,
    pub found: LambdaShape,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub pair: ChainPair,
    pub products_checked: usize,
    pub mismatches: Vec<TableMismatch>,
}

impl TableReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks every product `αβ` against the λ multiplication table, and that
/// `αβ = α` exactly whenever `β` has shape λ3.
pub fn lambda_mult_table_check(pair: &ChainPair, cap: usize) -> Result<TableReport> {
    two_point_range(pair)?;
    let elements = enumerate_top(pair, cap)?;
    let shapes: Vec<LambdaShape> =
        elements.iter().map(classify_lambda).collect::<Result<_>>()?;
    let mut mismatches = Vec::new();
    for (alpha, &sa) in elements.iter().zip(&shapes) {
        for (beta, &sb) in elements.iter().zip(&shapes) {
            let prod = compose(alpha, beta)?;
            let found = classify_lambda(&prod)?;
            let ok = match sa.product(sb) {
                Some(expected) => found == expected,
                None => &prod == alpha,
            };
            if !ok {
                mismatches.push(TableMismatch {
                    left: alpha.image().to_vec(),
                    right: beta.image().to_vec(),
                    product: prod.image().to_vec(),
                    expected: match sa.product(sb) {
                        Some(e) => e.to_string(),
                        None => "α".into(),
                    },
                    found,
                });
            }
        }
    }
    Ok(TableReport { pair: pair.clone(), products_checked: elements.len().pow(2), mismatches })
}
