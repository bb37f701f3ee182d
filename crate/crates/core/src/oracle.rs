//! Brute-force reference for the constructed order.
//!
//! The universe at depth `d` is every surface type whose arguments are
//! `?`, `? extends x`, `? super x` or `x` for `x` in the depth `d - 1`
//! universe, kept when the decider finds it well formed. The order is the
//! decider's verdict on every pair. Only canonicalization is shared with the
//! constructor.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::decider::{well_formed_with, Decider, Mutation};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::table::ValidatedClassTable;
use crate::types::{ArgInterval, TypeTerm};

const UNIVERSE_CAP: usize = 50_000;

/// Canonical well-formed types of depth at most `depth`, sorted.
pub fn universe(table: &ValidatedClassTable, depth: usize, dec: &Decider<'_>) -> Result<Vec<TypeTerm>> {
    let mut level: BTreeSet<TypeTerm> = BTreeSet::new();
    level.insert(TypeTerm::Null);
    level.insert(TypeTerm::object());
    for c in table.non_generic_classes() {
        level.insert(TypeTerm::simple(c.name.clone()));
    }
    for _ in 0..depth {
        let mut next = level.clone();
        for c in table.generic_classes() {
            let per_arg: Vec<Vec<ArgInterval>> = (0..c.arity())
                .map(|j| {
                    let bound = table.bound_type(&c.name, j).clone();
                    let mut v = vec![ArgInterval::unbounded(bound.clone())];
                    for x in &level {
                        v.push(ArgInterval::extends(x.clone()));
                        v.push(ArgInterval::super_of(x.clone(), bound.clone()));
                        v.push(ArgInterval::invariant(x.clone()));
                    }
                    v
                })
                .collect();
            let total = per_arg.iter().map(Vec::len).try_fold(1usize, |a, n| a.checked_mul(n));
            if total.is_none_or(|n| n > UNIVERSE_CAP) {
                return Err(Error::ResourceLimit {
                    what: format!("oracle instantiations of `{}`", c.name),
                    limit: UNIVERSE_CAP,
                });
            }
            let mut idx = vec![0usize; per_arg.len()];
            'tuples: loop {
                let args = idx.iter().enumerate().map(|(j, &i)| per_arg[j][i].clone()).collect();
                let t = TypeTerm::class(c.name.clone(), args);
                if well_formed_with(dec, &t).is_ok() {
                    next.insert(table.canonical(&t));
                }
                for j in (0..idx.len()).rev() {
                    idx[j] += 1;
                    if idx[j] < per_arg[j].len() {
                        continue 'tuples;
                    }
                    idx[j] = 0;
                }
                break;
            }
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

/// Strict pairs `(a, b)`, `a != b`, the decider relates among `nodes`.
pub fn decided_pairs(nodes: &[TypeTerm], dec: &Decider<'_>) -> BTreeSet<(TypeTerm, TypeTerm)> {
    let mut out = BTreeSet::new();
    for a in nodes {
        for b in nodes {
            if a != b && dec.is_subtype(a, b) {
                out.insert((a.clone(), b.clone()));
            }
        }
    }
    out
}

/// Differences between the oracle and a constructed level.
#[derive(Clone, Debug, Default, Serialize)]
pub struct OracleReport {
    pub depth: usize,
    pub oracle_nodes: usize,
    pub constructed_nodes: usize,
    pub oracle_edges: usize,
    pub constructed_edges: usize,
    pub missing_nodes: Vec<String>,
    pub extra_nodes: Vec<String>,
    pub missing_edges: Vec<(String, String)>,
    pub extra_edges: Vec<(String, String)>,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.missing_nodes.is_empty()
            && self.extra_nodes.is_empty()
            && self.missing_edges.is_empty()
            && self.extra_edges.is_empty()
    }
}

/// Compares `level`, built to `depth`, against the oracle. `missing_*` are
/// in the oracle only, `extra_*` in the construction only.
pub fn compare_with_oracle(
    table: &ValidatedClassTable,
    level: &Poset<TypeTerm>,
    depth: usize,
    mutation: Option<Mutation>,
) -> Result<OracleReport> {
    let dec = Decider::with_mutation(table, mutation);
    let nodes = universe(table, depth, &dec)?;
    let oracle_pairs = decided_pairs(&nodes, &dec);
    let built: BTreeSet<(TypeTerm, TypeTerm)> = level
        .strict_pairs()
        .into_iter()
        .map(|(i, j)| (level.nodes()[i].clone(), level.nodes()[j].clone()))
        .collect();

    let ours: BTreeSet<&TypeTerm> = nodes.iter().collect();
    let theirs: BTreeSet<&TypeTerm> = level.nodes().iter().collect();
    let show = |s: &BTreeSet<(TypeTerm, TypeTerm)>, o: &BTreeSet<(TypeTerm, TypeTerm)>| {
        s.difference(o).map(|(a, b)| (a.to_string(), b.to_string())).collect()
    };
    Ok(OracleReport {
        depth,
        oracle_nodes: nodes.len(),
        constructed_nodes: level.len(),
        oracle_edges: oracle_pairs.len(),
        constructed_edges: built.len(),
        missing_nodes: ours.difference(&theirs).map(|t| t.to_string()).collect(),
        extra_nodes: theirs.difference(&ours).map(|t| t.to_string()).collect(),
        missing_edges: show(&oracle_pairs, &built),
        extra_edges: show(&built, &oracle_pairs),
    })
}
