//! Command implementations behind the `ordsemi` binary.
//!
//! Each command returns its full stdout text so the binary stays a thin
//! argument parser and the output can be tested byte for byte. Exit codes:
//! 0 success, 1 semantic mismatch, 2 resource cap or search budget, 3 invalid
//! input.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::chain::ChainPair;
use crate::decision::{cross_validate, decide_iso, CrossOptions, Family};
use crate::error::{Error, Result};
use crate::semigroup::{find_iso, verify_iso, CayleyTable, SearchOptions, SemigroupIso};
use crate::structures::{
    adjusted_chain, classify_lambda, k_classes, lambda_class_sizes, partial_graph, PartialGraph,
};
use crate::transform::{enumerate_top, FullMap, RangeMap, Transformation};

/// Parses an instance from inline syntax (`"n=9 range=0,2,4,6,8"`), inline
/// JSON (`{"size": 9, "range": [...]}`), or a path to a JSON file.
pub fn parse_instance(text: &str) -> Result<ChainPair> {
    let s = text.trim();
    if s.starts_with('{') {
        return serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()));
    }
    if s.contains('=') {
        let mut size = None;
        let mut range = None;
        for tok in s.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got `{tok}`")))?;
            match k {
                "n" | "size" => {
                    size = Some(v.parse().map_err(|_| Error::Parse(format!("bad size `{v}`")))?)
                }
                "range" => range = Some(parse_list(v)?),
                _ => return Err(Error::Parse(format!("unknown key `{k}`"))),
            }
        }
        let size = size.ok_or_else(|| Error::Parse("missing n=<size>".into()))?;
        let range = range.ok_or_else(|| Error::Parse("missing range=<i,j,...>".into()))?;
        return ChainPair::new(size, range);
    }
    let text = std::fs::read_to_string(Path::new(s))
        .map_err(|e| Error::Parse(format!("cannot read instance file `{s}`: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{s}: {e}")))
}

/// Comma-separated indices; the empty string is the empty list.
pub fn parse_list(v: &str) -> Result<Vec<usize>> {
    if v.trim().is_empty() {
        return Ok(Vec::new());
    }
    v.split(',')
        .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad index `{x}`"))))
        .collect()
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

pub fn enumerate(pair: &ChainPair, cap: usize, count_only: bool, json: bool) -> Result<String> {
    let all = enumerate_top(pair, cap)?;
    let mut out = String::new();
    if json {
        if count_only {
            out = to_json(&serde_json::json!({ "count": all.len() }));
        } else {
            let images: Vec<&[usize]> = all.iter().map(|t| t.image()).collect();
            out = to_json(&serde_json::json!({ "pair": pair, "count": all.len(), "images": images }));
        }
        return Ok(out);
    }
    if !count_only {
        for (i, t) in all.iter().enumerate() {
            writeln!(out, "#{i}\n{}", t.two_row()).unwrap();
        }
    }
    writeln!(out, "{}", all.len()).unwrap();
    Ok(out)
}

pub fn adjusted(pair: &ChainPair, json: bool) -> String {
    let chain = adjusted_chain(pair);
    if json {
        to_json(&chain)
    } else {
        format!("{chain}\n")
    }
}

/// Partial graph of a map given as an image array. With `full` the map may
/// be any element of `T(X, X')`; otherwise it must be order-preserving.
pub fn graph(pair: &ChainPair, image: Vec<usize>, full: bool) -> Result<PartialGraph> {
    let map = FullMap::new(pair.clone(), image)?;
    if !full {
        map.to_order_preserving()?;
    }
    Ok(partial_graph(&map))
}

#[derive(Serialize)]
struct ClassRow {
    index: usize,
    size: usize,
    shape: Option<String>,
    restriction: Vec<(usize, usize)>,
    range: Vec<usize>,
    members: Vec<Vec<usize>>,
}

pub fn kclasses(pair: &ChainPair, cap: usize, json: bool) -> Result<String> {
    let elements = enumerate_top(pair, cap)?;
    let parts = k_classes(pair, cap)?;
    let rows: Vec<ClassRow> = parts
        .classes
        .iter()
        .enumerate()
        .map(|(index, c)| {
            let rep: &Transformation = &elements[c.members[0]];
            ClassRow {
                index,
                size: c.members.len(),
                shape: (pair.rank() == 2).then(|| classify_lambda(rep).unwrap().to_string()),
                restriction: c.key.restriction.clone(),
                range: c.key.range.clone(),
                members: c.members.iter().map(|&i| elements[i].image().to_vec()).collect(),
            }
        })
        .collect();
    let sizes_check = lambda_class_sizes(pair).ok().map(|expected| {
        let mut observed = [0usize; 5];
        for r in &rows {
            let shape = classify_lambda(&elements[parts.classes[r.index].members[0]]).unwrap();
            observed[shape.index()] += r.size;
        }
        (expected, observed)
    });
    if json {
        return Ok(to_json(&serde_json::json!({
            "pair": pair,
            "classes": rows,
            "lambda_sizes": sizes_check.map(|(e, o)| serde_json::json!({ "expected": e, "observed": o })),
        })));
    }
    let mut out = String::new();
    for r in &rows {
        let tag = r.shape.as_deref().map(|s| format!(" {s}")).unwrap_or_default();
        let restr: Vec<String> = r.restriction.iter().map(|(x, y)| format!("{x}->{y}")).collect();
        writeln!(
            out,
            "class {}{tag}: size {} restriction [{}] range {:?}",
            r.index,
            r.size,
            restr.join(" "),
            r.range
        )
        .unwrap();
    }
    writeln!(out, "{} classes, {} elements", rows.len(), elements.len()).unwrap();
    if let Some((expected, observed)) = sizes_check {
        let verdict = if expected == observed { "ok" } else { "MISMATCH" };
        writeln!(out, "lambda sizes expected {expected:?} observed {observed:?}: {verdict}").unwrap();
    }
    Ok(out)
}

pub fn decide(a: &ChainPair, b: &ChainPair) -> String {
    to_json(&decide_iso(a, b))
}

pub fn cayley(pair: &ChainPair, cap: usize) -> Result<String> {
    Ok(to_json(CayleyTable::build(pair, cap)?.table()))
}

/// Runs the exhaustive search. A refusal prints `{"isomorphic": false}`.
pub fn oracle(a: &ChainPair, b: &ChainPair, cap: usize, search: SearchOptions) -> Result<String> {
    let ta = CayleyTable::build(a, cap)?;
    let tb = CayleyTable::build(b, cap)?;
    Ok(match find_iso(ta.table(), tb.table(), search)? {
        Some(m) => to_json(&m),
        None => to_json(&serde_json::json!({ "isomorphic": false })),
    })
}

/// Checks a stored isomorphism between two instances. Exit code 0 when it
/// verifies, 1 otherwise.
pub fn verify_mapping(a: &ChainPair, b: &ChainPair, m: &SemigroupIso, cap: usize) -> Result<(String, i32)> {
    let ta = CayleyTable::build(a, cap)?;
    let tb = CayleyTable::build(b, cap)?;
    let ok = verify_iso(ta.table(), tb.table(), m);
    Ok((to_json(&serde_json::json!({ "verified": ok })), if ok { 0 } else { 1 }))
}

/// Cross-validation over a family; returns the report text and exit code.
pub fn verify_family(family: &Family, opts: CrossOptions, json: bool) -> Result<(String, i32)> {
    let report = cross_validate(family, opts)?;
    let code = report.exit_code();
    if json {
        return Ok((to_json(&report), code));
    }
    let mut out = String::new();
    for o in &report.outcomes {
        writeln!(
            out,
            "{} | {}: decide={:?} oracle={:?}{}",
            o.a,
            o.b,
            o.decision,
            o.oracle,
            if o.agree { "" } else { " MISMATCH" }
        )
        .unwrap();
        for v in &o.violations {
            writeln!(out, "  {v}").unwrap();
        }
    }
    writeln!(
        out,
        "instances {} pairs {} isomorphic {} mismatches {} violations {} budget_exceeded {}",
        report.instances,
        report.pairs,
        report.isomorphic_pairs,
        report.mismatches,
        report.violations,
        report.budget_exceeded
    )
    .unwrap();
    writeln!(out, "{}", if report.is_clean() { "clean" } else { "NOT CLEAN" }).unwrap();
    Ok((out, code))
}
