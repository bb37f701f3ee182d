//! Law suites run by `gensub check`.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;
#[cfg(not(target_arch = "wasm32"))]
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::construct::{
    construct, copy_transform, flip_transform, step_intermediates, unlabel, ConstructOptions,
    SubtypingGraph,
};
use crate::decider::Mutation;
use crate::erasure::{galois_check_on, monad_laws_check_on};
use crate::error::{Error, Result};
use crate::oracle::compare_with_oracle;
use crate::poset::{flatten_by, Digraph, Poset, Provenance};
use crate::table::ValidatedClassTable;
use crate::types::TypeTerm;

pub const RANDOM_POSETS: usize = 100;
pub const RANDOM_POSET_MAX: usize = 8;
pub const OPERAD_SEED: u64 = 0x005e_ed0f_0be7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum LawSuite {
    Galois,
    Monad,
    Operad,
    Oracle,
}

impl LawSuite {
    pub const ALL: [LawSuite; 4] = [LawSuite::Galois, LawSuite::Monad, LawSuite::Operad, LawSuite::Oracle];

    pub fn as_str(self) -> &'static str {
        match self {
            LawSuite::Galois => "galois",
            LawSuite::Monad => "monad",
            LawSuite::Operad => "operad",
            LawSuite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for LawSuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LawSuite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        LawSuite::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| format!("unknown law suite `{s}` (expected galois, monad, operad or oracle)"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LawOutcome {
    pub suite: LawSuite,
    pub law: String,
    pub checked: usize,
    pub violations: usize,
    /// The first few violations, rendered.
    pub examples: Vec<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl LawOutcome {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for LawOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<28} checked {:>7}  violations {:>5}",
            if self.passed() { "PASS" } else { "FAIL" },
            format!("{}/{}", self.suite, self.law),
            self.checked,
            self.violations
        )
    }
}

const EXAMPLES: usize = 5;

// no monotonic clock on bare wasm; timings read zero there
#[derive(Clone, Copy)]
struct Clock(#[cfg(not(target_arch = "wasm32"))] Instant);

impl Clock {
    fn start() -> Self {
        #[cfg(not(target_arch = "wasm32"))]
        return Clock(Instant::now());
        #[cfg(target_arch = "wasm32")]
        Clock()
    }

    fn elapsed(self) -> Duration {
        #[cfg(not(target_arch = "wasm32"))]
        return self.0.elapsed();
        #[cfg(target_arch = "wasm32")]
        Duration::ZERO
    }
}

struct Tally {
    suite: LawSuite,
    law: &'static str,
    checked: usize,
    violations: usize,
    examples: Vec<String>,
    start: Clock,
}

impl Tally {
    fn new(suite: LawSuite, law: &'static str) -> Self {
        Tally {
            suite,
            law,
            checked: 0,
            violations: 0,
            examples: Vec::new(),
            start: Clock::start(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.examples.len() < EXAMPLES {
                self.examples.push(what());
            }
        }
    }

    fn done(self) -> LawOutcome {
        LawOutcome {
            suite: self.suite,
            law: self.law.to_string(),
            checked: self.checked,
            violations: self.violations,
            examples: self.examples,
            elapsed: self.start.elapsed(),
        }
    }
}

/// A random poset on `0..n`, `n ≤ max`, from a random DAG on that order.
pub fn random_poset(rng: &mut impl Rng, max: usize) -> Poset<u32> {
    let n = rng.gen_range(1..=max) as u32;
    let p = rng.gen_range(0.1..0.6);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                pairs.push((i, j));
            }
        }
    }
    match Poset::from_pairs(0..n, pairs) {
        Ok(q) => q,
        Err(_) => unreachable!("edges follow the index order"),
    }
}

/// A random digraph on the same kind of order and a quotient that respects
/// it: nodes are grouped into consecutive blocks.
pub fn random_flatten_input(rng: &mut impl Rng, max: usize) -> (Digraph<u32>, u32) {
    let p = random_poset(rng, max);
    let mut g = Digraph::new();
    for &x in p.nodes() {
        g.add_node(x);
    }
    for (i, j) in p.hasse() {
        g.add_edge(p.nodes()[i], p.nodes()[j], Provenance::Copy);
    }
    (g, rng.gen_range(1..=3))
}

fn block(k: u32) -> impl Fn(&u32) -> u32 {
    move |x| x - x % k
}

fn same_graph<T: Clone + Ord + std::hash::Hash>(a: &Poset<T>, b: &Poset<T>) -> bool {
    a == b && a.strict_pairs() == b.strict_pairs()
}

fn copy_law<T: Clone + Ord + std::hash::Hash>(p: &Poset<T>) -> bool {
    same_graph(&unlabel(&copy_transform(p)), p)
}

fn flip_law<T: Clone + Ord + std::hash::Hash>(p: &Poset<T>) -> bool {
    same_graph(&unlabel(&unlabel(&flip_transform(&flip_transform(p)))), p)
}

pub fn operad_laws(table: &ValidatedClassTable, graph: &SubtypingGraph) -> Result<Vec<LawOutcome>> {
    let mut copy = Tally::new(LawSuite::Operad, "copy=id");
    let mut flip = Tally::new(LawSuite::Operad, "flip∘flip=copy");
    let mut flat = Tally::new(LawSuite::Operad, "flatten∘flatten=flatten");

    let mut rng = ChaCha8Rng::seed_from_u64(OPERAD_SEED);
    for i in 0..RANDOM_POSETS {
        let p = random_poset(&mut rng, RANDOM_POSET_MAX);
        copy.check(copy_law(&p), || format!("random poset #{i}"));
        flip.check(flip_law(&p), || format!("random poset #{i}"));
        let (g, k) = random_flatten_input(&mut rng, RANDOM_POSET_MAX);
        let once = flatten_by(&g, block(k)).ok();
        let twice = once.as_ref().and_then(|o| flatten_by(&o.to_digraph(), block(k)).ok());
        flat.check(
            matches!((&once, &twice), (Some(a), Some(b)) if same_graph(a, b)),
            || format!("random digraph #{i}"),
        );
    }

    let flatten_twice = |g: &Digraph<TypeTerm>| -> bool {
        let canon = |t: &TypeTerm| table.canonical(t);
        match flatten_by(g, canon) {
            Ok(a) => flatten_by(&a.to_digraph(), canon).is_ok_and(|b| same_graph(&a, &b)),
            Err(_) => false,
        }
    };
    for (d, level) in graph.levels.iter().enumerate() {
        copy.check(copy_law(level), || format!("level {d}"));
        flip.check(flip_law(level), || format!("level {d}"));
        flat.check(flatten_twice(&level.to_digraph()), || format!("level {d}"));
        if d == graph.depth() {
            continue;
        }
        let inter = step_intermediates(table, level)?;
        for (class, pos, base) in &inter.bases {
            let what = || format!("step {d}, base of {class} parameter {}", pos + 1);
            copy.check(copy_law(base), what);
            flip.check(flip_law(base), what);
        }
        for (class, merged) in &inter.merged {
            flat.check(flatten_twice(merged), || format!("step {d}, merged {class}"));
        }
    }
    Ok(vec![copy.done(), flip.done(), flat.done()])
}

pub fn oracle_laws(
    table: &ValidatedClassTable,
    graph: &SubtypingGraph,
    mutation: Option<Mutation>,
) -> Result<Vec<LawOutcome>> {
    let mut nodes = Tally::new(LawSuite::Oracle, "node set");
    let mut edges = Tally::new(LawSuite::Oracle, "edge set");
    let mut mono = Tally::new(LawSuite::Oracle, "levels nest");
    for (d, level) in graph.levels.iter().enumerate() {
        let r = compare_with_oracle(table, level, d, mutation)?;
        nodes.checked += r.oracle_nodes.max(r.constructed_nodes);
        for n in &r.missing_nodes {
            nodes.check(false, || format!("depth {d}: {n} missing"));
        }
        for n in &r.extra_nodes {
            nodes.check(false, || format!("depth {d}: {n} unexpected"));
        }
        edges.checked += r.oracle_edges.max(r.constructed_edges);
        for (a, b) in &r.missing_edges {
            edges.check(false, || format!("depth {d}: {a} <: {b} missing"));
        }
        for (a, b) in &r.extra_edges {
            edges.check(false, || format!("depth {d}: {a} <: {b} unexpected"));
        }
        if d > 0 {
            mono.check(graph.levels[d - 1].is_induced_suborder_of(level), || {
                format!("level {} is not an induced suborder of level {d}", d - 1)
            });
        }
    }
    Ok(vec![nodes.done(), edges.done(), mono.done()])
}

fn adjunction_outcome(
    suite: LawSuite,
    law: &'static str,
    report: &crate::erasure::AdjunctionReport,
    start: Clock,
) -> LawOutcome {
    LawOutcome {
        suite,
        law: law.to_string(),
        checked: report.checked_pairs,
        violations: report.violations.len(),
        examples: report
            .violations
            .iter()
            .take(EXAMPLES)
            .map(|v| format!("{:?}: {} / {}", v.side, v.a, v.b))
            .collect(),
        elapsed: start.elapsed(),
    }
}

/// Runs `suites` at `depth`. The mutation only affects the oracle.
pub fn run_laws(
    table: &ValidatedClassTable,
    depth: usize,
    suites: &[LawSuite],
    opts: &ConstructOptions,
    mutation: Option<Mutation>,
) -> Result<Vec<LawOutcome>> {
    let graph = construct(table, depth, opts)?;
    let mut out = Vec::new();
    for &suite in suites {
        let start = Clock::start();
        match suite {
            LawSuite::Galois => {
                let r = galois_check_on(table, graph.last(), depth)?;
                out.push(adjunction_outcome(suite, "F(a)≤b iff a<:G(b)", &r, start));
            }
            LawSuite::Monad => {
                let r = monad_laws_check_on(table, graph.last(), depth)?;
                out.push(adjunction_outcome(suite, "unit/counit/closure", &r, start));
            }
            LawSuite::Operad => out.extend(operad_laws(table, &graph)?),
            LawSuite::Oracle => out.extend(oracle_laws(table, &graph, mutation)?),
        }
    }
    Ok(out)
}

/// Parses a comma-separated suite list; empty means all.
pub fn parse_suites(s: &str) -> Result<Vec<LawSuite>> {
    if s.trim().is_empty() {
        return Ok(LawSuite::ALL.to_vec());
    }
    let mut v = s
        .split(',')
        .map(|p| p.trim().parse::<LawSuite>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(Error::InvalidPresentation)?;
    v.sort();
    v.dedup();
    Ok(v)
}
