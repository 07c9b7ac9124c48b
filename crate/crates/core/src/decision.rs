//! Deciding `T_OP(X, X') ≅ T_OP(Y, Y')` from the chain pairs alone, building
//! explicit isomorphisms, and checking both against the exhaustive oracle.
//!
//! For finite chains the criterion is:
//!
//! * `|X'| = |Y'| = 1`: both semigroups are trivial, hence isomorphic.
//! * `|X'| ≠ |Y'|`: never isomorphic, since `θ_φ` would be a bijection
//!   `X' → Y'`.
//! * otherwise: isomorphic iff the gap signature of one pair equals the gap
//!   signature of the other or its reverse.
//!
//! The reversed case (the "mirror clause") matters already for `|X'| = 2`:
//! `(|M₁|, |M₂|, |M₃|) = (1, 0, 0)` and `(0, 0, 1)` give isomorphic semigroups
//! through the chain reversal, though the triples differ.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chain::{is_chain_bijection, ChainPair, Orientation};
use crate::error::{Error, Result};
use crate::semigroup::{
    check_preservation, extend_theta_hat, extract_theta, find_iso, verify_iso, CayleyTable, SearchOptions,
    SemigroupIso,
};
use crate::structures::{classify_lambda, lambda_class_sizes, LambdaShape};
use crate::transform::RangeMap;

/// Logged on every decision that relies on the reversed-signature clause
/// for a two-point range.
pub const MIRROR_NOTE: &str = "isomorphic through the chain reversal: the gap triple of one pair is the \
     reverse of the other's, a case not covered by matching |M_i| = |N_i| term by term";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Isomorphic,
    NotIsomorphic,
}

/// Which criterion produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `|X'| = |Y'| = 1`.
    TrivialX1,
    /// `|X'| ≠ |Y'|`.
    RangeSize,
    /// `|X'| = |Y'| = 2`, decided by the gap triples.
    SignatureX2,
    /// `|X'| = |Y'| ≥ 3`, decided by the gap signatures.
    SignatureGeneral,
}

/// Evidence for an isomorphic verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Both semigroups have one element.
    Trivial,
    /// An order-(anti-)isomorphism `θ : X → Y` with `(X')θ = Y'`, as an image
    /// array; the semigroup isomorphism is conjugation by `θ`.
    Chain { theta: Vec<usize>, orientation: Orientation },
    /// The union of bijections between matching λ-classes, with classes of
    /// sizes `class_sizes` paired in enumeration order.
    LambdaUnion { class_sizes: [usize; 5] },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub rule: Rule,
    pub mirror_clause_used: bool,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Decision {
    pub fn is_isomorphic(&self) -> bool {
        self.verdict == Verdict::Isomorphic
    }

    fn negative(rule: Rule) -> Self {
        Decision { verdict: Verdict::NotIsomorphic, rule, mirror_clause_used: false, witness: None, note: None }
    }
}

pub fn decide_iso(a: &ChainPair, b: &ChainPair) -> Decision {
    let (ka, kb) = (a.rank(), b.rank());
    if ka != kb {
        return Decision::negative(Rule::RangeSize);
    }
    if ka == 1 {
        return Decision {
            verdict: Verdict::Isomorphic,
            rule: Rule::TrivialX1,
            mirror_clause_used: false,
            witness: Some(Witness::Trivial),
            note: None,
        };
    }
    let rule = if ka == 2 { Rule::SignatureX2 } else { Rule::SignatureGeneral };
    let (sa, sb) = (a.gap_signature(), b.gap_signature());
    if sa == sb {
        let witness = if ka == 2 {
            Witness::LambdaUnion { class_sizes: lambda_class_sizes(a).expect("two-point range") }
        } else {
            let theta = a.isomorphism_to(b, Orientation::Forward).expect("equal signatures");
            Witness::Chain { theta, orientation: Orientation::Forward }
        };
        return Decision {
            verdict: Verdict::Isomorphic,
            rule,
            mirror_clause_used: false,
            witness: Some(witness),
            note: None,
        };
    }
    if sa == sb.reversed() {
        let theta = a.isomorphism_to(b, Orientation::Reversed).expect("reversed signatures");
        return Decision {
            verdict: Verdict::Isomorphic,
            rule,
            mirror_clause_used: ka == 2,
            witness: Some(Witness::Chain { theta, orientation: Orientation::Reversed }),
            note: (ka == 2).then(|| MIRROR_NOTE.to_string()),
        };
    }
    Decision::negative(rule)
}

/// Conjugation by `θ`: `α ↦ θ⁻¹αθ`, so `y ↦ ((yθ⁻¹)α)θ`.
pub fn construct_iso_from_theta(
    a: &CayleyTable,
    b: &CayleyTable,
    theta: &[usize],
    orientation: Orientation,
) -> Result<SemigroupIso> {
    let (pa, pb) = (a.pair(), b.pair());
    if theta.len() != pa.size() || pa.size() != pb.size() || !is_chain_bijection(theta, orientation) {
        return Err(Error::Precondition(format!("θ = {theta:?} is not an {orientation:?} chain bijection")));
    }
    let mut mapped: Vec<usize> = pa.range().iter().map(|&x| theta[x]).collect();
    mapped.sort_unstable();
    if mapped != pb.range() {
        return Err(Error::Precondition(format!("θ does not carry {pa} onto {pb}")));
    }
    let mut inv = vec![0; theta.len()];
    for (x, &y) in theta.iter().enumerate() {
        inv[y] = x;
    }
    let mut mapping = Vec::with_capacity(a.order());
    for alpha in a.elements() {
        let image: Vec<usize> = inv.iter().map(|&x| theta[alpha.apply(x)]).collect();
        let j = b.index_of(&image).ok_or_else(|| {
            Error::NotAnIsomorphism(format!("conjugate {image:?} is not in T_OP of {pb}"))
        })?;
        mapping.push(j);
    }
    let m = SemigroupIso { mapping };
    if !verify_iso(a.table(), b.table(), &m) {
        return Err(Error::NotAnIsomorphism("conjugation by θ".into()));
    }
    Ok(m)
}

fn lambda_classes(t: &CayleyTable) -> Result<[Vec<usize>; 5]> {
    let mut classes: [Vec<usize>; 5] = Default::default();
    for (i, e) in t.elements().iter().enumerate() {
        classes[classify_lambda(e)?.index()].push(i);
    }
    Ok(classes)
}

fn check_perm(p: &[usize], n: usize, name: &str) -> Result<()> {
    let mut seen = vec![false; n];
    if p.len() != n || p.iter().any(|&j| j >= n || std::mem::replace(&mut seen[j], true)) {
        return Err(Error::Precondition(format!("{name} = {p:?} is not a bijection of {n} elements")));
    }
    Ok(())
}

/// `φ = f₁ ∪ ... ∪ f₅` for two-point ranges with matching gap triples.
///
/// Each `f` is a permutation of class positions: the `j`-th element of a
/// source λ-class (in enumeration order) goes to the `f[j]`-th element of the
/// target class. `None` pairs classes in enumeration order. `f₁` and `f₂`
/// are forced, the constants being alone in their classes.
pub fn construct_iso_x2(
    a: &CayleyTable,
    b: &CayleyTable,
    f3: Option<&[usize]>,
    f4: Option<&[usize]>,
    f5: Option<&[usize]>,
) -> Result<SemigroupIso> {
    let sa = lambda_class_sizes(a.pair())?;
    let sb = lambda_class_sizes(b.pair())?;
    if sa != sb {
        return Err(Error::Precondition(format!("λ-class sizes differ: {sa:?} vs {sb:?}")));
    }
    let ca = lambda_classes(a)?;
    let cb = lambda_classes(b)?;
    let mut mapping = vec![usize::MAX; a.order()];
    for shape in LambdaShape::ALL {
        let i = shape.index();
        let n = ca[i].len();
        let identity: Vec<usize> = (0..n).collect();
        let f = match shape {
            LambdaShape::L3 => f3,
            LambdaShape::L4 => f4,
            LambdaShape::L5 => f5,
            _ => None,
        }
        .unwrap_or(&identity);
        check_perm(f, n, &format!("f{}", i + 1))?;
        for (j, &x) in ca[i].iter().enumerate() {
            mapping[x] = cb[i][f[j]];
        }
    }
    let m = SemigroupIso { mapping };
    if !verify_iso(a.table(), b.table(), &m) {
        return Err(Error::NotAnIsomorphism("union of λ-class bijections".into()));
    }
    Ok(m)
}

/// Builds the semigroup isomorphism a decision's witness describes.
pub fn materialize_witness(a: &CayleyTable, b: &CayleyTable, witness: &Witness) -> Result<SemigroupIso> {
    match witness {
        Witness::Trivial => {
            let m = SemigroupIso::identity(a.order());
            if verify_iso(a.table(), b.table(), &m) {
                Ok(m)
            } else {
                Err(Error::NotAnIsomorphism("trivial witness on nontrivial semigroups".into()))
            }
        }
        Witness::Chain { theta, orientation } => construct_iso_from_theta(a, b, theta, *orientation),
        Witness::LambdaUnion { .. } => construct_iso_x2(a, b, None, None, None),
    }
}

/// A set of instances to cross-validate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Explicit(Vec<ChainPair>),
    /// Every pair with `min_size ≤ |X| ≤ max_size` and `|X'| ≥ min_rank`.
    All { min_size: usize, max_size: usize, min_rank: usize },
}

impl Family {
    /// Instances in canonical order: by size, then by range list.
    pub fn expand(&self) -> Vec<ChainPair> {
        match self {
            Family::Explicit(v) => v.clone(),
            Family::All { min_size, max_size, min_rank } => (*min_size.max(&1)..=*max_size)
                .flat_map(|n| all_ranges(n, *min_rank))
                .collect(),
        }
    }
}

/// All chain pairs of size `n` with `|X'| ≥ min_rank`, ordered by range list.
pub fn all_ranges(n: usize, min_rank: usize) -> Vec<ChainPair> {
    let mut out: Vec<ChainPair> = (1u64..(1u64 << n))
        .filter(|mask| mask.count_ones() as usize >= min_rank)
        .map(|mask| ChainPair::new(n, (0..n).filter(|&i| mask >> i & 1 == 1).collect()).unwrap())
        .collect();
    out.sort();
    out
}

/// Every `step`-th element of `instances`, starting at `offset`.
pub fn sample(instances: &[ChainPair], step: usize, offset: usize) -> Vec<ChainPair> {
    instances.iter().skip(offset).step_by(step.max(1)).cloned().collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleOutcome {
    Isomorphic,
    NotIsomorphic,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOutcome {
    pub a: ChainPair,
    pub b: ChainPair,
    pub decision: Verdict,
    pub mirror_clause_used: bool,
    pub oracle: OracleOutcome,
    pub agree: bool,
    /// Problems with the decision witness, the induced `θ_φ`, its transport
    /// properties, or the adjusted-chain extension.
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossReport {
    pub instances: usize,
    pub pairs: usize,
    pub isomorphic_pairs: usize,
    pub mismatches: usize,
    pub violations: usize,
    pub budget_exceeded: usize,
    pub outcomes: Vec<PairOutcome>,
}

impl CrossReport {
    pub fn is_clean(&self) -> bool {
        self.mismatches == 0 && self.violations == 0 && self.budget_exceeded == 0
    }

    /// 0 clean, 1 mismatch or violation, 2 incomplete.
    pub fn exit_code(&self) -> i32 {
        if self.mismatches > 0 || self.violations > 0 {
            1
        } else if self.budget_exceeded > 0 {
            2
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CrossOptions {
    pub cap: usize,
    pub search: SearchOptions,
    /// Keep outcomes for agreeing, violation-free pairs in the report.
    pub keep_all: bool,
}

impl Default for CrossOptions {
    fn default() -> Self {
        CrossOptions { cap: crate::transform::DEFAULT_CAP, search: SearchOptions::default(), keep_all: false }
    }
}

/// Oracle-side checks for one ordered pair.
pub fn cross_check_pair(a: &CayleyTable, b: &CayleyTable, search: SearchOptions) -> PairOutcome {
    let decision = decide_iso(a.pair(), b.pair());
    let mut violations = Vec::new();
    if let Some(w) = &decision.witness {
        if let Err(e) = materialize_witness(a, b, w) {
            violations.push(format!("decision witness: {e}"));
        }
    }
    let oracle = match find_iso(a.table(), b.table(), search) {
        Ok(Some(m)) => {
            match extract_theta(a, b, &m) {
                Ok(theta) => {
                    violations.extend(check_preservation(a, b, &m, &theta).violations);
                    if a.pair().rank() >= 2 {
                        if let Err(e) = extend_theta_hat(a, b, &m) {
                            violations.push(format!("adjusted-chain extension: {e}"));
                        }
                    }
                }
                Err(e) => violations.push(format!("θ_φ: {e}")),
            }
            OracleOutcome::Isomorphic
        }
        Ok(None) => OracleOutcome::NotIsomorphic,
        Err(_) => OracleOutcome::BudgetExceeded,
    };
    let agree = match oracle {
        OracleOutcome::Isomorphic => decision.is_isomorphic(),
        OracleOutcome::NotIsomorphic => !decision.is_isomorphic(),
        OracleOutcome::BudgetExceeded => true,
    };
    PairOutcome {
        a: a.pair().clone(),
        b: b.pair().clone(),
        decision: decision.verdict,
        mirror_clause_used: decision.mirror_clause_used,
        oracle,
        agree,
        violations,
    }
}

/// Runs [`decide_iso`] and the oracle on every ordered pair of the family.
/// Pairs are processed in parallel; the report order is fixed by instance
/// order.
pub fn cross_validate(family: &Family, opts: CrossOptions) -> Result<CrossReport> {
    let instances = family.expand();
    let tables: Vec<CayleyTable> = instances
        .par_iter()
        .map(|p| CayleyTable::build(p, opts.cap))
        .collect::<Result<_>>()?;
    let n = tables.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let outcomes: Vec<PairOutcome> = pairs
        .par_iter()
        .map(|&(i, j)| cross_check_pair(&tables[i], &tables[j], opts.search))
        .collect();

    let mut report = CrossReport {
        instances: n,
        pairs: outcomes.len(),
        isomorphic_pairs: 0,
        mismatches: 0,
        violations: 0,
        budget_exceeded: 0,
        outcomes: Vec::new(),
    };
    for o in outcomes {
        report.isomorphic_pairs += (o.oracle == OracleOutcome::Isomorphic) as usize;
        report.mismatches += (!o.agree) as usize;
        report.violations += o.violations.len();
        report.budget_exceeded += (o.oracle == OracleOutcome::BudgetExceeded) as usize;
        if opts.keep_all || !o.agree || !o.violations.is_empty() || o.oracle == OracleOutcome::BudgetExceeded {
            report.outcomes.push(o);
        }
    }
    Ok(report)
}

/// Counts isomorphism classes of a family under [`decide_iso`], keyed by the
/// representative listed first.
pub fn decision_classes(instances: &[ChainPair]) -> BTreeMap<ChainPair, Vec<ChainPair>> {
    let mut classes: BTreeMap<ChainPair, Vec<ChainPair>> = BTreeMap::new();
    'outer: for p in instances {
        for (rep, members) in classes.iter_mut() {
            if decide_iso(rep, p).is_isomorphic() {
                members.push(p.clone());
                continue 'outer;
            }
        }
        classes.insert(p.clone(), vec![p.clone()]);
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::DEFAULT_CAP;

    fn pair(n: usize, r: &[usize]) -> ChainPair {
        ChainPair::new(n, r.to_vec()).unwrap()
    }

    fn build(p: &ChainPair) -> CayleyTable {
        CayleyTable::build(p, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn reflexive() {
        let p = pair(7, &[0, 3, 4, 6]);
        let d = decide_iso(&p, &p);
        assert!(d.is_isomorphic());
        assert_eq!(d.rule, Rule::SignatureGeneral);
        assert_eq!(d.witness, Some(Witness::Chain { theta: (0..7).collect(), orientation: Orientation::Forward }));
    }

    #[test]
    fn mirror_decision() {
        let d = decide_iso(&pair(3, &[1, 2]), &pair(3, &[0, 1]));
        assert!(d.is_isomorphic());
        assert_eq!(d.rule, Rule::SignatureX2);
        assert!(d.mirror_clause_used);
        assert!(d.note.is_some());
        let d = decide_iso(&pair(3, &[0, 1]), &pair(3, &[0, 2]));
        assert_eq!(d.verdict, Verdict::NotIsomorphic);
    }

    #[test]
    fn range_size_and_trivial() {
        let d = decide_iso(&pair(4, &[1]), &pair(2, &[0]));
        assert_eq!((d.verdict, d.rule), (Verdict::Isomorphic, Rule::TrivialX1));
        let d = decide_iso(&pair(4, &[1, 2]), &pair(4, &[0, 1, 2]));
        assert_eq!((d.verdict, d.rule), (Verdict::NotIsomorphic, Rule::RangeSize));
    }

    #[test]
    fn decision_json() {
        let d = decide_iso(&pair(3, &[1, 2]), &pair(3, &[0, 1]));
        let v: serde_json::Value = serde_json::to_value(&d).unwrap();
        assert_eq!(v["verdict"], "isomorphic");
        assert_eq!(v["rule"], "signature_x2");
        assert_eq!(v["mirror_clause_used"], true);
        assert_eq!(v["witness"]["kind"], "chain");
        assert_eq!(v["witness"]["orientation"], "reversed");
    }

    #[test]
    fn conjugation() {
        let p = pair(5, &[1, 3]);
        let t = build(&p);
        let id = construct_iso_from_theta(&t, &t, &[0, 1, 2, 3, 4], Orientation::Forward).unwrap();
        assert!(id.is_identity());
        let rev = construct_iso_from_theta(&t, &t, &[4, 3, 2, 1, 0], Orientation::Reversed).unwrap();
        assert!(!rev.is_identity());
        assert!(construct_iso_from_theta(&t, &t, &[0, 1, 2, 4, 3], Orientation::Forward).is_err());
        let q = build(&pair(5, &[1, 2]));
        assert!(construct_iso_from_theta(&t, &q, &[0, 1, 2, 3, 4], Orientation::Forward).is_err());
    }

    #[test]
    fn mirror_conjugation_is_antitone() {
        let a = build(&pair(3, &[1, 2]));
        let b = build(&pair(3, &[0, 1]));
        let m = construct_iso_from_theta(&a, &b, &[2, 1, 0], Orientation::Reversed).unwrap();
        assert_eq!(extract_theta(&a, &b, &m).unwrap().orientation, Orientation::Reversed);
    }

    #[test]
    fn lambda_union_any_f3() {
        let t = build(&pair(5, &[1, 3]));
        construct_iso_x2(&t, &t, None, None, None).unwrap();
        let m = construct_iso_x2(&t, &t, Some(&[1, 0]), None, None).unwrap();
        assert!(!m.is_identity());
        assert!(construct_iso_x2(&t, &t, Some(&[0, 0]), None, None).is_err());
        let other = build(&pair(5, &[0, 3]));
        assert!(construct_iso_x2(&t, &other, None, None, None).is_err());
    }

    #[test]
    fn family_expansion() {
        let f = Family::All { min_size: 1, max_size: 5, min_rank: 2 };
        assert_eq!(f.expand().len(), 1 + 4 + 11 + 26);
        assert_eq!(all_ranges(3, 1).len(), 7);
        assert_eq!(sample(&all_ranges(6, 2), 4, 0).len(), 15);
    }

    #[test]
    fn small_cross_validation() {
        let f = Family::All { min_size: 1, max_size: 4, min_rank: 1 };
        let r = cross_validate(&f, CrossOptions::default()).unwrap();
        assert!(r.is_clean(), "{:#?}", r.outcomes);
        assert_eq!(r.pairs, r.instances * r.instances);
    }

    #[test]
    fn self_family() {
        let f = Family::Explicit(vec![pair(6, &[1, 4])]);
        let r = cross_validate(&f, CrossOptions { keep_all: true, ..Default::default() }).unwrap();
        assert_eq!(r.pairs, 1);
        assert!(r.is_clean());
        assert_eq!(r.outcomes[0].oracle, OracleOutcome::Isomorphic);
    }
}
