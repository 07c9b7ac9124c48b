//! Exhaustive semigroup-isomorphism search.
//!
//! Elements of both tables are first colored by isomorphism-invariant
//! fingerprints (idempotent, right/left zero, right identity, the color of
//! `x²`, and the multiset of `(color y, color xy, color yx)` over all `y`),
//! refined jointly until the number of colors stops growing. A mismatch in
//! color multisets refutes isomorphism outright. Otherwise a depth-first
//! search assigns elements of `A` in index order, trying targets of the same
//! color in ascending order, and closes every assignment under the
//! homomorphism constraint `m(xy) = m(x)m(y)`. Because branching follows
//! index order and propagation only derives forced values, the first witness
//! found is the lexicographically least one.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::cayley::MulTable;
use crate::error::{Error, Result};

/// Default limit on branching decisions per search.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of branching decisions before giving up.
    pub budget: u64,
    /// Use invariant coloring to prune candidates. Turning this off leaves
    /// only homomorphism propagation, which is slower but changes no answer.
    pub pruning: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: DEFAULT_BUDGET, pruning: true }
    }
}

/// A bijection between the element indices of two tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SemigroupIso {
    pub mapping: Vec<usize>,
}

impl SemigroupIso {
    pub fn identity(order: usize) -> Self {
        SemigroupIso { mapping: (0..order).collect() }
    }

    pub fn apply(&self, i: usize) -> usize {
        self.mapping[i]
    }

    /// Inverse mapping; assumes `self` is a bijection.
    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.mapping.len()];
        for (i, &j) in self.mapping.iter().enumerate() {
            inv[j] = i;
        }
        SemigroupIso { mapping: inv }
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &SemigroupIso) -> Self {
        SemigroupIso { mapping: self.mapping.iter().map(|&j| then.mapping[j]).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// Bijectivity plus the full `n²` homomorphism check.
pub fn verify_iso(a: &MulTable, b: &MulTable, m: &SemigroupIso) -> bool {
    let n = a.order();
    if b.order() != n || m.mapping.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &j in &m.mapping {
        if j >= n || std::mem::replace(&mut hit[j], true) {
            return false;
        }
    }
    (0..n).all(|i| (0..n).all(|j| m.mapping[a.mul(i, j)] == b.mul(m.mapping[i], m.mapping[j])))
}

/// Joint color refinement. Returns `None` when the color multisets differ,
/// which proves the tables non-isomorphic.
fn refine(a: &MulTable, b: &MulTable) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = a.order();
    let base = |t: &MulTable, x: usize| {
        vec![
            t.is_idempotent(x) as u32,
            t.is_right_zero(x) as u32,
            t.is_left_zero(x) as u32,
            t.is_right_identity(x) as u32,
            (0..n).filter(|&y| t.mul(x, y) == x).count() as u32,
            (0..n).filter(|&y| t.mul(y, x) == x).count() as u32,
        ]
    };
    let sa: Vec<Vec<u32>> = (0..n).map(|x| base(a, x)).collect();
    let sb: Vec<Vec<u32>> = (0..n).map(|x| base(b, x)).collect();
    let (mut ca, mut cb, mut classes) = recolor(sa, sb)?;
    loop {
        let sig = |t: &MulTable, c: &[u32], x: usize| {
            let mut around: Vec<(u32, u32, u32)> =
                (0..n).map(|y| (c[y], c[t.mul(x, y)], c[t.mul(y, x)])).collect();
            around.sort_unstable();
            let mut s = Vec::with_capacity(2 + 3 * n);
            s.push(c[x]);
            s.push(c[t.mul(x, x)]);
            s.extend(around.into_iter().flat_map(|(p, q, r)| [p, q, r]));
            s
        };
        let sa: Vec<Vec<u32>> = (0..n).map(|x| sig(a, &ca, x)).collect();
        let sb: Vec<Vec<u32>> = (0..n).map(|x| sig(b, &cb, x)).collect();
        let (na, nb, k) = recolor(sa, sb)?;
        if k == classes {
            return Some((na, nb));
        }
        (ca, cb, classes) = (na, nb, k);
    }
}

/// Names signatures by their rank among all distinct signatures of both
/// tables, and checks that both tables have the same color multiset.
fn recolor(sa: Vec<Vec<u32>>, sb: Vec<Vec<u32>>) -> Option<(Vec<u32>, Vec<u32>, usize)> {
    let mut distinct: Vec<&Vec<u32>> = sa.iter().chain(sb.iter()).collect();
    distinct.sort_unstable();
    distinct.dedup();
    let ids: HashMap<&Vec<u32>, u32> =
        distinct.iter().enumerate().map(|(i, s)| (*s, i as u32)).collect();
    let ca: Vec<u32> = sa.iter().map(|s| ids[s]).collect();
    let cb: Vec<u32> = sb.iter().map(|s| ids[s]).collect();
    let mut ha = ca.clone();
    let mut hb = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    (ha == hb).then_some((ca, cb, distinct.len()))
}

const UNSET: usize = usize::MAX;

struct Search<'t> {
    a: &'t MulTable,
    b: &'t MulTable,
    color_a: Vec<u32>,
    color_b: Vec<u32>,
    map: Vec<usize>,
    inv: Vec<usize>,
    /// Assigned elements of `A`, in assignment order; doubles as undo log.
    trail: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl<'t> Search<'t> {
    fn assign(&mut self, x: usize, y: usize, queue: &mut Vec<usize>) -> bool {
        if self.map[x] != UNSET {
            return self.map[x] == y;
        }
        if self.inv[y] != UNSET || self.color_a[x] != self.color_b[y] {
            return false;
        }
        self.map[x] = y;
        self.inv[y] = x;
        self.trail.push(x);
        queue.push(x);
        true
    }

    /// Closes the current partial map under the homomorphism constraint.
    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(x) = queue.pop() {
            let mx = self.map[x];
            let mut k = 0;
            // the trail grows while we walk it; newly added entries are also
            // queued, so either side of each pair gets visited
            while k < self.trail.len() {
                let z = self.trail[k];
                let mz = self.map[z];
                if !self.assign(self.a.mul(x, z), self.b.mul(mx, mz), &mut queue)
                    || !self.assign(self.a.mul(z, x), self.b.mul(mz, mx), &mut queue)
                {
                    return false;
                }
                k += 1;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.inv[self.map[x]] = UNSET;
            self.map[x] = UNSET;
        }
    }

    /// Depth-first search; `visit` returns `false` to stop the search.
    fn dfs(&mut self, next: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<bool> {
        let n = self.map.len();
        let Some(x) = (next..n).find(|&x| self.map[x] == UNSET) else {
            return Ok(visit(&self.map));
        };
        for y in 0..n {
            if self.inv[y] != UNSET || self.color_a[x] != self.color_b[y] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            let mark = self.trail.len();
            let mut queue = Vec::new();
            if self.assign(x, y, &mut queue) && self.propagate(queue) && !self.dfs(x + 1, visit)? {
                self.undo(mark);
                return Ok(false);
            }
            self.undo(mark);
        }
        Ok(true)
    }
}

fn search(
    a: &MulTable,
    b: &MulTable,
    opts: SearchOptions,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<()> {
    let n = a.order();
    if b.order() != n {
        return Ok(());
    }
    let (color_a, color_b) = if opts.pruning {
        match refine(a, b) {
            Some(c) => c,
            None => return Ok(()),
        }
    } else {
        (vec![0; n], vec![0; n])
    };
    let mut s = Search {
        a,
        b,
        color_a,
        color_b,
        map: vec![UNSET; n],
        inv: vec![UNSET; n],
        trail: Vec::with_capacity(n),
        nodes: 0,
        budget: opts.budget,
    };
    s.dfs(0, visit)?;
    Ok(())
}

/// The lexicographically least isomorphism `A → B`, or `None` after an
/// exhaustive refusal. Running out of budget is an error, not a refusal.
pub fn find_iso(a: &MulTable, b: &MulTable, opts: SearchOptions) -> Result<Option<SemigroupIso>> {
    let mut found = None;
    search(a, b, opts, &mut |m| {
        found = Some(SemigroupIso { mapping: m.to_vec() });
        false
    })?;
    Ok(found)
}

/// Up to `limit` isomorphisms `A → B`, in lexicographic order.
pub fn find_all_isos(
    a: &MulTable,
    b: &MulTable,
    opts: SearchOptions,
    limit: usize,
) -> Result<Vec<SemigroupIso>> {
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    search(a, b, opts, &mut |m| {
        out.push(SemigroupIso { mapping: m.to_vec() });
        out.len() < limit
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainPair;
    use crate::semigroup::cayley::CayleyTable;
    use crate::transform::DEFAULT_CAP;

    fn table(n: usize, r: &[usize]) -> MulTable {
        CayleyTable::build(&ChainPair::new(n, r.to_vec()).unwrap(), DEFAULT_CAP)
            .unwrap()
            .table()
            .clone()
    }

    #[test]
    fn self_iso_is_identity() {
        let t = table(5, &[1, 3]);
        let m = find_iso(&t, &t, SearchOptions::default()).unwrap().unwrap();
        assert!(m.is_identity());
        assert!(verify_iso(&t, &t, &m));
    }

    #[test]
    fn mirror_pair() {
        let a = table(3, &[1, 2]);
        let b = table(3, &[0, 1]);
        let m = find_iso(&a, &b, SearchOptions::default()).unwrap().unwrap();
        assert!(verify_iso(&a, &b, &m));
    }

    #[test]
    fn refuses_distinct_gap_shapes() {
        let a = table(3, &[0, 1]);
        let b = table(3, &[0, 2]);
        assert_eq!(a.order(), 4);
        assert_eq!(b.order(), 4);
        let ra = (0..4).filter(|&e| a.is_right_identity(e)).count();
        let rb = (0..4).filter(|&e| b.is_right_identity(e)).count();
        assert_eq!((ra, rb), (1, 2));
        assert_eq!(find_iso(&a, &b, SearchOptions::default()).unwrap(), None);
        let no_prune = SearchOptions { pruning: false, ..Default::default() };
        assert_eq!(find_iso(&a, &b, no_prune).unwrap(), None);
    }

    #[test]
    fn automorphisms_of_small_two_point_range() {
        let t = table(5, &[1, 3]);
        let all = find_all_isos(&t, &t, SearchOptions::default(), 1000).unwrap();
        // λ3 has two elements that may be swapped, and the signature (1,1,1)
        // is a palindrome, so the reversal contributes a factor of two
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|m| verify_iso(&t, &t, m)));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn verify_rejects_broken_maps() {
        let t = table(5, &[1, 3]);
        let mut m = SemigroupIso::identity(6);
        m.mapping.swap(0, 1);
        assert!(!verify_iso(&t, &t, &m));
        assert!(!verify_iso(&t, &t, &SemigroupIso { mapping: vec![0, 0, 2, 3, 4, 5] }));
        assert!(!verify_iso(&t, &t, &SemigroupIso { mapping: vec![0, 1, 2] }));
    }

    #[test]
    fn budget_is_distinct_from_refusal() {
        let t = table(4, &[0, 1, 2, 3]);
        let tight = SearchOptions { budget: 1, pruning: false };
        assert_eq!(find_iso(&t, &t, tight), Err(Error::BudgetExceeded(1)));
    }

    #[test]
    fn inverse_and_then() {
        let m = SemigroupIso { mapping: vec![2, 0, 1] };
        assert!(m.then(&m.inverse()).is_identity());
        assert!(m.inverse().then(&m).is_identity());
    }
}
