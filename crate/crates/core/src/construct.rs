//! Level-wise construction of the subtyping order.
//!
//! Level 0 is the frame: `Null` and the non-generic classes ordered by
//! subclassing. Each step takes the current level as the poset of candidate
//! argument endpoints and, for every generic class and parameter,
//!
//! * `copy`s it into covariant arguments `? extends x`,
//! * `flip`s it into contravariant arguments `? super x`,
//! * adds the invariant arguments `x` below both wildcards (`merge`),
//!
//! then lifts the argument orders to the class, links every type to its
//! substituted declared supertype, and `flatten`s the union: identify equal
//! canonical forms, union edges, close transitively.
//!
//! Nothing here consults the subtype decider. The only shared machinery is
//! canonicalization, which is syntactic.

use std::collections::BTreeSet;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poset::{flatten_by, CycleError, Digraph, Poset, Provenance};
use crate::table::{ArgExpr, TypeExpr, ValidatedClassTable};
use crate::types::{ArgInterval, Surface, TypeTerm};

pub const DEFAULT_NODE_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    Cov,
    Con,
    Inv,
    Plain,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeled<T> {
    pub tag: Tag,
    pub payload: T,
}

pub type LabeledPoset<T> = Poset<Labeled<T>>;

/// Order-isomorphic copy with every node tagged `Cov`.
pub fn copy_transform<T: Clone + Ord + Hash>(p: &Poset<T>) -> LabeledPoset<T> {
    p.relabel(
        |x| Labeled {
            tag: Tag::Cov,
            payload: x.clone(),
        },
        false,
    )
}

/// Order-dual copy with every node tagged `Con`.
pub fn flip_transform<T: Clone + Ord + Hash>(p: &Poset<T>) -> LabeledPoset<T> {
    p.relabel(
        |x| Labeled {
            tag: Tag::Con,
            payload: x.clone(),
        },
        true,
    )
}

/// Discrete antichain of `Inv`-tagged nodes, skipping those `keep` rejects.
pub fn inv_transform<T: Clone + Ord + Hash>(p: &Poset<T>, keep: impl Fn(&T) -> bool) -> LabeledPoset<T> {
    let nodes = p.nodes().iter().filter(|x| keep(x)).map(|x| Labeled {
        tag: Tag::Inv,
        payload: x.clone(),
    });
    match Poset::from_pairs(nodes, std::iter::empty()) {
        Ok(a) => a,
        Err(_) => unreachable!("an antichain has no cycles"),
    }
}

pub fn unlabel<T: Clone + Ord + Hash>(p: &LabeledPoset<T>) -> Poset<T> {
    p.relabel(|x| x.payload.clone(), false)
}

/// Quotient by `canon`, union, transitive closure.
pub fn flatten_transform<T, F>(g: &Digraph<T>, canon: F) -> Result<Poset<T>>
where
    T: Clone + Ord + Hash + std::fmt::Display,
    F: Fn(&T) -> T,
{
    flatten_by(g, canon).map_err(|CycleError(a, b)| Error::QuotientNotAntisymmetric(a.to_string(), b.to_string()))
}

/// Flattens a digraph of types under canonical forms.
pub fn flatten_types(table: &ValidatedClassTable, g: &Digraph<TypeTerm>) -> Result<Poset<TypeTerm>> {
    flatten_transform(g, |t| table.canonical(t))
}

/// The copy/flip/inv images of one parameter's endpoint base.
#[derive(Clone, Debug)]
pub struct ArgumentPosets {
    pub cov: LabeledPoset<TypeTerm>,
    pub con: LabeledPoset<TypeTerm>,
    pub inv: LabeledPoset<TypeTerm>,
}

impl ArgumentPosets {
    pub fn from_base(base: &Poset<TypeTerm>) -> Self {
        ArgumentPosets {
            cov: copy_transform(base),
            con: flip_transform(base),
            inv: inv_transform(base, |x| !x.is_null()),
        }
    }
}

/// Order of one parameter's arguments built from its three images.
fn argument_graph(table: &ValidatedClassTable, class: &str, pos: usize, p: &ArgumentPosets) -> Result<Digraph<ArgInterval>> {
    let base = unlabel(&p.cov);
    if unlabel(&p.con).relabel(|x| x.clone(), true) != base {
        return Err(Error::BaseMismatch);
    }
    let non_null: Vec<&TypeTerm> = base.nodes().iter().filter(|x| !x.is_null()).collect();
    let inv_nodes: Vec<&TypeTerm> = p.inv.nodes().iter().map(|x| &x.payload).collect();
    if inv_nodes != non_null || p.inv.relation_size() != p.inv.len() {
        return Err(Error::BaseMismatch);
    }

    let bound = table.bound_type(class, pos).clone();
    let canon = |a: ArgInterval| table.canonical_arg(class, pos, &a);
    let cov_of = |x: &TypeTerm| canon(ArgInterval::extends(x.clone()));
    let con_of = |x: &TypeTerm| canon(ArgInterval::super_of(x.clone(), bound.clone()));
    let inv_of = |x: &TypeTerm| canon(ArgInterval::invariant(x.clone()));
    let top = canon(ArgInterval::unbounded(bound.clone()));

    let mut g = Digraph::new();
    g.add_node(top.clone());
    for (i, j) in p.cov.strict_pairs() {
        let (x, y) = (&p.cov.nodes()[i].payload, &p.cov.nodes()[j].payload);
        if !x.is_null() {
            g.add_edge(cov_of(x), cov_of(y), Provenance::Copy);
        }
    }
    for (i, j) in p.con.strict_pairs() {
        let (x, y) = (&p.con.nodes()[i].payload, &p.con.nodes()[j].payload);
        g.add_edge(con_of(x), con_of(y), Provenance::Flip);
    }
    for x in &non_null {
        // `? extends x` sits below `?` even when the bound itself is not a
        // candidate endpoint at this level
        g.add_edge(cov_of(x), top.clone(), Provenance::Merge);
        g.add_edge(inv_of(x), cov_of(x), Provenance::Merge);
        g.add_edge(inv_of(x), con_of(x), Provenance::Merge);
    }
    Ok(g)
}

/// Merges per-parameter argument images into instantiations of `class`,
/// ordered pointwise and identified by canonical form.
pub fn merge_transform(table: &ValidatedClassTable, class: &str, positions: &[ArgumentPosets]) -> Result<Poset<TypeTerm>> {
    let g = merge_graph(table, class, positions, usize::MAX)?;
    flatten_types(table, &g)
}

fn merge_graph(table: &ValidatedClassTable, class: &str, positions: &[ArgumentPosets], cap: usize) -> Result<Digraph<TypeTerm>> {
    let info = table.require(class)?;
    if positions.len() != info.arity() {
        return Err(Error::ArityMismatch {
            class: class.to_string(),
            expected: info.arity(),
            found: positions.len(),
        });
    }
    let arg_graphs = positions
        .iter()
        .enumerate()
        .map(|(j, p)| argument_graph(table, class, j, p))
        .collect::<Result<Vec<_>>>()?;

    let size = arg_graphs
        .iter()
        .try_fold(1usize, |acc, g| acc.checked_mul(g.nodes().len()))
        .unwrap_or(usize::MAX);
    if size > cap {
        return Err(Error::ResourceLimit {
            what: format!("instantiations of `{class}`"),
            limit: cap,
        });
    }

    // enumerate tuples in mixed radix
    let radices: Vec<usize> = arg_graphs.iter().map(|g| g.nodes().len()).collect();
    let tuple_of = |mut k: usize| -> Vec<usize> {
        let mut t = vec![0; radices.len()];
        for j in (0..radices.len()).rev() {
            t[j] = k % radices[j];
            k /= radices[j];
        }
        t
    };
    let type_of = |t: &[usize]| {
        let args = t.iter().enumerate().map(|(j, &i)| arg_graphs[j].nodes()[i].clone()).collect();
        TypeTerm::class(class, args)
    };
    let mut g = Digraph::new();
    for k in 0..size {
        let t = tuple_of(k);
        g.add_node(type_of(&t));
        for (j, ag) in arg_graphs.iter().enumerate() {
            for &(a, b, prov) in ag.edges() {
                if t[j] == a {
                    let mut u = t.clone();
                    u[j] = b;
                    g.add_edge(type_of(&t), type_of(&u), prov);
                }
            }
        }
    }
    Ok(g)
}

/// Level 0: `Null` below the non-generic classes in subclass order.
pub fn frame(table: &ValidatedClassTable) -> Poset<TypeTerm> {
    let mut g = Digraph::new();
    frame_into(table, &mut g);
    bottom_edges(&mut g);
    flatten_types(table, &g).expect("subclassing is acyclic")
}

fn frame_into(table: &ValidatedClassTable, g: &mut Digraph<TypeTerm>) {
    g.add_node(TypeTerm::Null);
    let plain: Vec<&str> = table.non_generic_classes().map(|c| c.name.as_str()).collect();
    for &c in &plain {
        g.add_node(TypeTerm::simple(c));
    }
    let order = table.subclass_poset();
    for (i, j) in order.hasse() {
        let (a, b) = (&order.nodes()[i], &order.nodes()[j]);
        if plain.contains(&a.as_str()) && plain.contains(&b.as_str()) {
            g.add_edge(TypeTerm::simple(a.clone()), TypeTerm::simple(b.clone()), Provenance::Superclass);
        }
    }
    // hasse edges through generic classes skip plain-to-plain pairs
    for &a in &plain {
        for &b in &plain {
            if a != b && table.is_subclass(a, b) {
                g.add_edge(TypeTerm::simple(a), TypeTerm::simple(b), Provenance::Superclass);
            }
        }
    }
}

fn bottom_edges(g: &mut Digraph<TypeTerm>) {
    let null = g.add_node(TypeTerm::Null);
    for i in 0..g.nodes().len() {
        if i != null {
            g.add_edge_idx(null, i, Provenance::Closure);
        }
    }
}

/// Candidate endpoints for parameter `pos` of `class`: the elements of
/// `sigma` within the parameter's bound.
pub fn argument_base(table: &ValidatedClassTable, sigma: &Poset<TypeTerm>, class: &str, pos: usize) -> Result<Poset<TypeTerm>> {
    match table.bound_type(class, pos) {
        TypeTerm::SelfBound(sb) => Ok(sigma.restrict(|x| match x {
            TypeTerm::Null => true,
            TypeTerm::Class { name, .. } => table.is_subclass(name, &sb.bound_class),
            TypeTerm::SelfBound(o) => table.is_subclass(&o.bound_class, &sb.bound_class),
        })),
        b @ TypeTerm::Class { args, .. } if args.is_empty() => {
            let b = b.clone();
            Ok(sigma.restrict(|x| sigma.leq(x, &b)))
        }
        b => Err(Error::UnsupportedBound {
            class: class.to_string(),
            param: pos + 1,
            reason: format!("generic bound {b} is not F-bounded"),
        }),
    }
}

/// Checks the table is in the fragment the constructor handles: bounds are
/// non-generic classes or F-bounded, and superclass arguments are
/// parameters, wildcards over parameters, or non-generic classes.
pub fn check_constructible(table: &ValidatedClassTable) -> Result<()> {
    for c in table.classes() {
        for j in 0..c.arity() {
            let b = table.bound_type(&c.name, j);
            if !matches!(b, TypeTerm::SelfBound(_)) && !b.args().is_empty() {
                return Err(Error::UnsupportedBound {
                    class: c.name.clone(),
                    param: j + 1,
                    reason: format!("generic bound {b} is not F-bounded"),
                });
            }
        }
        let Some(TypeExpr::Class { name: sup, args }) = &c.superclass else {
            continue;
        };
        for (k, a) in args.iter().enumerate() {
            let unsupported = |reason: String| Error::UnsupportedSuperclass {
                class: c.name.clone(),
                reason,
            };
            let inner = match a {
                ArgExpr::Wildcard => continue,
                ArgExpr::Exact(e) | ArgExpr::Extends(e) | ArgExpr::Super(e) => e,
            };
            match inner {
                TypeExpr::Class { args, .. } if args.is_empty() => {}
                TypeExpr::Param(p) => {
                    let j = c.params.iter().position(|q| &q.name == p).expect("validated");
                    let own = table.bound_type(&c.name, j).clone();
                    let moved = table.canonical_arg(sup, k, &ArgInterval::extends(own));
                    let fits = moved.surface == Surface::Unbounded || moved.upper.depth() == 0;
                    if !fits {
                        return Err(unsupported(format!(
                            "bound of `{p}` does not fit parameter {} of `{sup}`",
                            k + 1
                        )));
                    }
                }
                other => {
                    return Err(unsupported(format!("argument `{other}` nests types")));
                }
            }
        }
    }
    Ok(())
}

/// Direct supertypes of `t` that are expressible in surface syntax: the
/// substituted declared supertype, or, when substitution produces a
/// doubly-bounded argument, the covering `? extends` / `? super` types and
/// then the supertypes above those.
pub fn superclass_targets(table: &ValidatedClassTable, t: &TypeTerm) -> Vec<TypeTerm> {
    let mut out = Vec::new();
    let mut cur = t.clone();
    while let Some(s) = table.supertype_of(&cur) {
        let s = table.canonical(&s);
        if s.args().iter().all(|a| a.surface != Surface::Between) {
            out.push(s);
            break;
        }
        out.extend(covers(table, &s));
        cur = s;
    }
    out
}

fn covers(table: &ValidatedClassTable, s: &TypeTerm) -> Vec<TypeTerm> {
    let TypeTerm::Class { name, args } = s else {
        return Vec::new();
    };
    let choices: Vec<Vec<ArgInterval>> = args
        .iter()
        .enumerate()
        .map(|(k, a)| {
            if a.surface != Surface::Between {
                return vec![a.clone()];
            }
            let bound = table.bound_type(name, k).clone();
            vec![
                table.canonical_arg(name, k, &ArgInterval::extends(a.upper.clone())),
                table.canonical_arg(name, k, &ArgInterval::super_of(a.lower.clone(), bound)),
            ]
        })
        .collect();
    let mut out = vec![Vec::new()];
    for options in choices {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<ArgInterval>| {
                options.iter().map(move |o| {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(|args| TypeTerm::class(name.clone(), args)).collect()
}

#[derive(Clone, Copy, Debug)]
pub struct ConstructOptions {
    pub node_cap: usize,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        ConstructOptions {
            node_cap: DEFAULT_NODE_CAP,
        }
    }
}

/// One construction step: the next level from the current one.
pub fn jsm_step(table: &ValidatedClassTable, sigma: &Poset<TypeTerm>, opts: &ConstructOptions) -> Result<Poset<TypeTerm>> {
    check_constructible(table)?;
    let mut g = Digraph::new();
    frame_into(table, &mut g);
    for n in sigma.nodes() {
        g.add_node(n.clone());
    }
    for c in table.generic_classes() {
        let positions = (0..c.arity())
            .map(|j| argument_base(table, sigma, &c.name, j).map(|b| ArgumentPosets::from_base(&b)))
            .collect::<Result<Vec<_>>>()?;
        let remaining = opts.node_cap.saturating_sub(g.nodes().len());
        let m = merge_graph(table, &c.name, &positions, remaining).map_err(|e| match e {
            Error::ResourceLimit { .. } => Error::ResourceLimit {
                what: "level size".into(),
                limit: opts.node_cap,
            },
            e => e,
        })?;
        g.absorb(&m);
    }
    if g.nodes().len() > opts.node_cap {
        return Err(Error::ResourceLimit {
            what: "level size".into(),
            limit: opts.node_cap,
        });
    }

    let nodes: Vec<TypeTerm> = g.nodes().to_vec();
    for n in &nodes {
        if n.is_null() || n.is_object() {
            continue;
        }
        for target in superclass_targets(table, n) {
            if g.node_id(&target).is_none() {
                return Err(Error::UnsupportedSuperclass {
                    class: n.head().unwrap_or_default().to_string(),
                    reason: format!("supertype {target} of {n} lies outside the level"),
                });
            }
            g.add_edge(n.clone(), target, Provenance::Superclass);
        }
    }
    bottom_edges(&mut g);
    let next = flatten_types(table, &g)?;
    debug_assert!(sigma.is_induced_suborder_of(&next));
    Ok(next)
}

/// The levels `0..=depth` of the constructed order.
#[derive(Clone, Debug)]
pub struct SubtypingGraph {
    pub table_name: String,
    pub levels: Vec<Poset<TypeTerm>>,
}

impl SubtypingGraph {
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn last(&self) -> &Poset<TypeTerm> {
        self.levels.last().expect("level 0 always exists")
    }

    /// First level at which `t` appears.
    pub fn level_of(&self, t: &TypeTerm) -> Option<usize> {
        self.levels.iter().position(|l| l.contains(t))
    }

    /// Node and strict-pair counts per level.
    pub fn level_sizes(&self) -> Vec<(usize, usize)> {
        self.levels
            .iter()
            .map(|l| (l.len(), l.relation_size() - l.len()))
            .collect()
    }
}

pub fn construct(table: &ValidatedClassTable, depth: usize, opts: &ConstructOptions) -> Result<SubtypingGraph> {
    check_constructible(table)?;
    let mut levels = vec![frame(table)];
    for _ in 0..depth {
        let next = jsm_step(table, levels.last().unwrap(), opts)?;
        levels.push(next);
    }
    Ok(SubtypingGraph {
        table_name: table.name().to_string(),
        levels,
    })
}

/// Everything a step builds on, for law checks: the endpoint base of every
/// generic parameter and the merged instantiations of every generic class.
pub struct StepIntermediates {
    pub bases: Vec<(String, usize, Poset<TypeTerm>)>,
    pub merged: Vec<(String, Digraph<TypeTerm>)>,
}

pub fn step_intermediates(table: &ValidatedClassTable, sigma: &Poset<TypeTerm>) -> Result<StepIntermediates> {
    let mut bases = Vec::new();
    let mut merged = Vec::new();
    for c in table.generic_classes() {
        let mut positions = Vec::new();
        for j in 0..c.arity() {
            let b = argument_base(table, sigma, &c.name, j)?;
            positions.push(ArgumentPosets::from_base(&b));
            bases.push((c.name.clone(), j, b));
        }
        merged.push((c.name.clone(), merge_graph(table, &c.name, &positions, DEFAULT_NODE_CAP)?));
    }
    Ok(StepIntermediates { bases, merged })
}

/// Distinct head classes of a level, sorted.
pub fn heads(level: &Poset<TypeTerm>) -> BTreeSet<String> {
    level.nodes().iter().filter_map(|t| t.head().map(str::to_string)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{load_class_table, parse_type, SourceText};

    fn tbl(src: &str) -> ValidatedClassTable {
        load_class_table(&SourceText::inline(src)).unwrap()
    }

    fn ty(t: &ValidatedClassTable, s: &str) -> TypeTerm {
        t.canonical(&parse_type(&SourceText::inline(s), t).unwrap())
    }

    fn texts(p: &Poset<TypeTerm>) -> Vec<String> {
        let mut v: Vec<String> = p.nodes().iter().map(|t| t.to_string()).collect();
        v.sort();
        v
    }

    fn chain_null_a_object() -> Poset<TypeTerm> {
        Poset::from_pairs(
            [TypeTerm::Null, TypeTerm::simple("A"), TypeTerm::object()],
            [
                (TypeTerm::Null, TypeTerm::simple("A")),
                (TypeTerm::simple("A"), TypeTerm::object()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn copy_of_singleton() {
        let p = Poset::from_pairs([TypeTerm::object()], []).unwrap();
        let c = copy_transform(&p);
        assert_eq!(c.len(), 1);
        assert_eq!(c.nodes()[0].tag, Tag::Cov);
        assert_eq!(c.relation_size(), 1);
    }

    #[test]
    fn flip_reverses_chain() {
        let p = chain_null_a_object();
        let f = flip_transform(&p);
        let label = |t: TypeTerm| Labeled { tag: Tag::Con, payload: t };
        assert!(f.leq(&label(TypeTerm::object()), &label(TypeTerm::simple("A"))));
        assert!(f.leq(&label(TypeTerm::simple("A")), &label(TypeTerm::Null)));
        assert!(!f.leq(&label(TypeTerm::Null), &label(TypeTerm::object())));
        let c = copy_transform(&p);
        assert!(c.leq(
            &Labeled { tag: Tag::Cov, payload: TypeTerm::Null },
            &Labeled { tag: Tag::Cov, payload: TypeTerm::object() }
        ));
    }

    #[test]
    fn merge_over_null_object() {
        let t = tbl("class List<T>");
        let base = Poset::from_pairs([TypeTerm::Null, TypeTerm::object()], [(TypeTerm::Null, TypeTerm::object())]).unwrap();
        let m = merge_transform(&t, "List", &[ArgumentPosets::from_base(&base)]).unwrap();
        assert_eq!(texts(&m), vec!["List<?>", "List<Object>"]);
        assert!(m.leq(&ty(&t, "List<Object>"), &ty(&t, "List<?>")));
    }

    #[test]
    fn merge_over_null_a_object_is_diamond() {
        let t = tbl("class A class List<T>");
        let m = merge_transform(&t, "List", &[ArgumentPosets::from_base(&chain_null_a_object())]).unwrap();
        assert_eq!(
            texts(&m),
            vec!["List<? extends A>", "List<? super A>", "List<?>", "List<A>", "List<Object>"]
        );
        let s = |x: &str| ty(&t, x);
        assert!(m.leq(&s("List<A>"), &s("List<? extends A>")));
        assert!(m.leq(&s("List<A>"), &s("List<? super A>")));
        assert!(m.leq(&s("List<Object>"), &s("List<? super A>")));
        assert!(!m.leq(&s("List<Object>"), &s("List<? extends A>")));
        assert_eq!(m.relation_size(), 5 + 7);
    }

    #[test]
    fn merge_over_null_only() {
        let t = tbl("class List<T>");
        let base = Poset::from_pairs([TypeTerm::Null], []).unwrap();
        let m = merge_transform(&t, "List", &[ArgumentPosets::from_base(&base)]).unwrap();
        assert_eq!(texts(&m), vec!["List<?>"]);
    }

    #[test]
    fn mismatched_bases_are_rejected() {
        let t = tbl("class A class List<T>");
        let mut p = ArgumentPosets::from_base(&chain_null_a_object());
        p.con = flip_transform(&Poset::from_pairs([TypeTerm::Null], []).unwrap());
        assert_eq!(merge_transform(&t, "List", &[p]).unwrap_err(), Error::BaseMismatch);
    }

    #[test]
    fn flatten_merges_equal_denotations() {
        let t = tbl("class A class List<T>");
        let raw = parse_type(&SourceText::inline("List<? extends Object>"), &t).unwrap();
        let mut g = Digraph::new();
        g.add_edge(ty(&t, "List<A>"), raw.clone(), Provenance::Merge);
        g.add_edge(ty(&t, "List<Object>"), ty(&t, "List<?>"), Provenance::Merge);
        let p = flatten_types(&t, &g).unwrap();
        assert_eq!(texts(&p), vec!["List<?>", "List<A>", "List<Object>"]);
        assert!(p.leq(&ty(&t, "List<A>"), &ty(&t, "List<?>")));
        let again = flatten_types(&t, &p.to_digraph()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn step_over_a_list_has_eight_nodes() {
        let t = tbl("class A class List<T>");
        let g = construct(&t, 1, &ConstructOptions::default()).unwrap();
        assert_eq!(g.levels[0].len(), 3);
        assert_eq!(g.levels[1].len(), 8);
        g.levels[1].check_partial_order().unwrap();
        assert!(g.levels[0].is_induced_suborder_of(&g.levels[1]));
    }

    #[test]
    fn no_generics_is_a_fixed_point() {
        let t = tbl("class A class B extends A");
        let s0 = frame(&t);
        assert_eq!(jsm_step(&t, &s0, &ConstructOptions::default()).unwrap(), s0);
    }

    #[test]
    fn linked_list_instances_reach_list_wildcard() {
        let t = tbl(
            "class Number class Integer extends Number class String \
             class List<T> class LinkedList<T> extends List<T>",
        );
        let g = construct(&t, 1, &ConstructOptions::default()).unwrap();
        assert_eq!(texts(&g.levels[0]), vec!["Integer", "Null", "Number", "Object", "String"]);
        let l1 = &g.levels[1];
        assert!(l1.leq(&ty(&t, "LinkedList<String>"), &ty(&t, "List<?>")));
        assert_eq!(l1.len(), 27);
    }

    #[test]
    fn doubly_bounded_supertypes_use_covers() {
        let t = tbl(
            "class Number class Integer extends Number class List<T> \
             class NumList<T extends Number> extends List<T>",
        );
        let targets = superclass_targets(&t, &ty(&t, "NumList<? super Integer>"));
        let shown: Vec<String> = targets.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, vec!["List<? extends Number>", "List<? super Integer>", "Object"]);
    }

    #[test]
    fn unsupported_tables_are_reported() {
        let t = tbl("class List<T> class M<T extends List<Object>>");
        assert!(matches!(construct(&t, 1, &ConstructOptions::default()), Err(Error::UnsupportedBound { .. })));
        let t = tbl("class List<T> class F<T> extends List<List<T>>");
        assert!(matches!(
            construct(&t, 1, &ConstructOptions::default()),
            Err(Error::UnsupportedSuperclass { .. })
        ));
    }

    #[test]
    fn node_cap_is_enforced() {
        let t = tbl("class A class List<T>");
        let opts = ConstructOptions { node_cap: 10 };
        assert!(matches!(construct(&t, 2, &opts), Err(Error::ResourceLimit { .. })));
    }
}
