//! Finite partial orders stored as reflexive-transitive closure bitsets, and
//! the plain edge-labelled digraphs they are built from.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

/// Which transformation introduced an order edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    Copy,
    Flip,
    Merge,
    Flatten,
    Superclass,
    Closure,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Copy => "Copy",
            Provenance::Flip => "Flip",
            Provenance::Merge => "Merge",
            Provenance::Flatten => "Flatten",
            Provenance::Superclass => "Superclass",
            Provenance::Closure => "Closure",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "Copy" => Provenance::Copy,
            "Flip" => Provenance::Flip,
            "Merge" => Provenance::Merge,
            "Flatten" => Provenance::Flatten,
            "Superclass" => Provenance::Superclass,
            "Closure" => Provenance::Closure,
            _ => return None,
        })
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A directed graph whose edges mean "is below". Node labels are unique, but
/// distinct labels may still denote the same element; it need not be closed
/// or antisymmetric.
#[derive(Clone, Debug)]
pub struct Digraph<T> {
    nodes: Vec<T>,
    index: HashMap<T, usize>,
    edges: Vec<(usize, usize, Provenance)>,
}

impl<T: Clone + Eq + Hash> Default for Digraph<T> {
    fn default() -> Self {
        Digraph {
            nodes: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
        }
    }
}

impl<T: Clone + Eq + Hash> Digraph<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, t: T) -> usize {
        if let Some(&i) = self.index.get(&t) {
            return i;
        }
        let i = self.nodes.len();
        self.index.insert(t.clone(), i);
        self.nodes.push(t);
        i
    }

    pub fn add_edge(&mut self, below: T, above: T, prov: Provenance) {
        let a = self.add_node(below);
        let b = self.add_node(above);
        self.edges.push((a, b, prov));
    }

    pub fn add_edge_idx(&mut self, below: usize, above: usize, prov: Provenance) {
        self.edges.push((below, above, prov));
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize, Provenance)] {
        &self.edges
    }

    pub fn node_id(&self, t: &T) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Copies every node and edge of `other` into `self`.
    pub fn absorb(&mut self, other: &Digraph<T>) {
        let ids: Vec<usize> = other.nodes.iter().map(|n| self.add_node(n.clone())).collect();
        for &(a, b, p) in &other.edges {
            self.edges.push((ids[a], ids[b], p));
        }
    }
}

/// A finite partial order. Nodes are kept sorted so that two posets over the
/// same elements with the same order compare equal regardless of how they
/// were built.
#[derive(Clone)]
pub struct Poset<T> {
    nodes: Vec<T>,
    index: HashMap<T, usize>,
    // up[i] holds j iff nodes[i] <= nodes[j]
    up: Vec<FixedBitSet>,
    prov: BTreeMap<(usize, usize), Provenance>,
}

impl<T: fmt::Debug> fmt::Debug for Poset<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pairs = Vec::new();
        for (i, row) in self.up.iter().enumerate() {
            for j in row.ones() {
                if i != j {
                    pairs.push((&self.nodes[i], &self.nodes[j]));
                }
            }
        }
        f.debug_struct("Poset")
            .field("nodes", &self.nodes)
            .field("lt", &pairs)
            .finish()
    }
}

impl<T: PartialEq> PartialEq for Poset<T> {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.up == other.up
    }
}

impl<T: Eq> Eq for Poset<T> {}

/// Two distinct nodes found below each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleError<T>(pub T, pub T);

impl<T: Clone + Ord + Hash> Poset<T> {
    /// Closes `pairs` reflexively and transitively over `nodes`. Endpoints of
    /// pairs are added as nodes. Fails if the closure is not antisymmetric.
    pub fn from_pairs<I, P>(nodes: I, pairs: P) -> Result<Self, CycleError<T>>
    where
        I: IntoIterator<Item = T>,
        P: IntoIterator<Item = (T, T)>,
    {
        let mut g = Digraph::new();
        for n in nodes {
            g.add_node(n);
        }
        for (a, b) in pairs {
            g.add_edge(a, b, Provenance::Closure);
        }
        Self::from_digraph(&g)
    }

    /// Closes a digraph whose labels are already distinct elements.
    pub fn from_digraph(g: &Digraph<T>) -> Result<Self, CycleError<T>> {
        flatten_by(g, |t| t.clone())
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn index_of(&self, t: &T) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn contains(&self, t: &T) -> bool {
        self.index.contains_key(t)
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// `a <= b`; false when either is absent.
    pub fn leq(&self, a: &T, b: &T) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.leq_idx(i, j),
            _ => false,
        }
    }

    /// Indices of everything above node `i`, including `i`.
    pub fn up_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.up[i].ones()
    }

    /// All strictly ordered index pairs `(below, above)`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.up.iter().enumerate() {
            out.extend(row.ones().filter(|&j| j != i).map(|j| (i, j)));
        }
        out
    }

    pub fn relation_size(&self) -> usize {
        self.up.iter().map(|r| r.count_ones(..)).sum()
    }

    /// Covering pairs of the order (the Hasse diagram).
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            let mut strict = self.up[i].clone();
            strict.set(i, false);
            let mut reachable_in_two = FixedBitSet::with_capacity(n);
            for k in strict.ones() {
                let mut above_k = self.up[k].clone();
                above_k.set(k, false);
                reachable_in_two.union_with(&above_k);
            }
            strict.difference_with(&reachable_in_two);
            out.extend(strict.ones().map(|j| (i, j)));
        }
        out
    }

    /// Recorded provenance of a strict pair; pairs only implied by
    /// transitivity report `Closure`.
    pub fn provenance(&self, i: usize, j: usize) -> Provenance {
        self.prov.get(&(i, j)).copied().unwrap_or(Provenance::Closure)
    }

    /// Induced sub-order on the nodes satisfying `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&T) -> bool) -> Poset<T> {
        let kept: Vec<usize> = (0..self.len()).filter(|&i| keep(&self.nodes[i])).collect();
        let mut remap = vec![usize::MAX; self.len()];
        for (new, &old) in kept.iter().enumerate() {
            remap[old] = new;
        }
        let nodes: Vec<T> = kept.iter().map(|&i| self.nodes[i].clone()).collect();
        let up = kept
            .iter()
            .map(|&i| {
                let mut row = FixedBitSet::with_capacity(kept.len());
                for j in self.up[i].ones() {
                    if remap[j] != usize::MAX {
                        row.insert(remap[j]);
                    }
                }
                row
            })
            .collect();
        let prov = self
            .prov
            .iter()
            .filter(|((a, b), _)| remap[*a] != usize::MAX && remap[*b] != usize::MAX)
            .map(|(&(a, b), &p)| ((remap[a], remap[b]), p))
            .collect();
        Self::assemble(nodes, up, prov)
    }

    /// Relabels every node with `f` and optionally reverses the order. `f`
    /// must be injective; label order may change, so nodes are re-sorted.
    pub fn relabel<U: Clone + Ord + Hash>(&self, f: impl Fn(&T) -> U, reverse: bool) -> Poset<U> {
        let labels: Vec<U> = self.nodes.iter().map(f).collect();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
        let mut pos = vec![0; self.len()];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let n = self.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in self.up[i].ones() {
                if reverse {
                    up[pos[j]].insert(pos[i]);
                } else {
                    up[pos[i]].insert(pos[j]);
                }
            }
        }
        let prov = self
            .prov
            .iter()
            .map(|(&(a, b), &p)| if reverse { ((pos[b], pos[a]), p) } else { ((pos[a], pos[b]), p) })
            .collect();
        let nodes = order.into_iter().map(|i| labels[i].clone()).collect();
        Poset::assemble(nodes, up, prov)
    }

    /// Every strict pair as an explicit edge, carrying its provenance.
    pub fn to_digraph(&self) -> Digraph<T> {
        let mut g = Digraph::new();
        for n in &self.nodes {
            g.add_node(n.clone());
        }
        for (i, j) in self.strict_pairs() {
            g.add_edge_idx(i, j, self.provenance(i, j));
        }
        g
    }

    /// Same as [`Poset::to_digraph`] but with only the covering edges.
    pub fn hasse_digraph(&self) -> Digraph<T> {
        let mut g = Digraph::new();
        for n in &self.nodes {
            g.add_node(n.clone());
        }
        for (i, j) in self.hasse() {
            g.add_edge_idx(i, j, self.provenance(i, j));
        }
        g
    }

    /// Reflexivity, transitivity and antisymmetry by enumeration.
    pub fn check_partial_order(&self) -> Result<(), String> {
        let n = self.len();
        for i in 0..n {
            if !self.leq_idx(i, i) {
                return Err(format!("not reflexive at node {i}"));
            }
        }
        for i in 0..n {
            for j in self.up[i].ones() {
                if i != j && self.leq_idx(j, i) {
                    return Err(format!("not antisymmetric at nodes {i}, {j}"));
                }
                for k in self.up[j].ones() {
                    if !self.leq_idx(i, k) {
                        return Err(format!("not transitive at nodes {i}, {j}, {k}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// `self` is `other` restricted to `self`'s nodes.
    pub fn is_induced_suborder_of(&self, other: &Poset<T>) -> bool {
        let Some(ids): Option<Vec<usize>> = self.nodes.iter().map(|n| other.index_of(n)).collect()
        else {
            return false;
        };
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.leq_idx(i, j) == other.leq_idx(ids[i], ids[j])))
    }

    fn assemble(nodes: Vec<T>, up: Vec<FixedBitSet>, prov: BTreeMap<(usize, usize), Provenance>) -> Self {
        let index = nodes.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
        Poset {
            nodes,
            index,
            up,
            prov,
        }
    }
}

/// Quotients `g` by `canon`, unions the edges of identified nodes and closes
/// the result. Edges whose endpoints were renamed by the quotient are
/// attributed to `Flatten`. Fails if two canonically distinct nodes end up
/// below each other.
pub fn flatten_by<T, F>(g: &Digraph<T>, canon: F) -> Result<Poset<T>, CycleError<T>>
where
    T: Clone + Ord + Hash,
    F: Fn(&T) -> T,
{
    let keys: Vec<T> = g.nodes().iter().map(&canon).collect();
    let mut sorted: Vec<T> = keys.clone();
    sorted.sort();
    sorted.dedup();
    let index: HashMap<T, usize> = sorted.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
    let class_of: Vec<usize> = keys.iter().map(|k| index[k]).collect();
    let renamed: Vec<bool> = g.nodes().iter().zip(&keys).map(|(n, k)| n != k).collect();

    let n = sorted.len();
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    for (i, row) in up.iter_mut().enumerate() {
        row.insert(i);
    }
    let mut prov = BTreeMap::new();
    for &(a, b, p) in g.edges() {
        let (ca, cb) = (class_of[a], class_of[b]);
        if ca == cb {
            continue;
        }
        up[ca].insert(cb);
        let p = if renamed[a] || renamed[b] { Provenance::Flatten } else { p };
        prov.entry((ca, cb)).or_insert(p);
    }
    close(&mut up);
    for i in 0..n {
        for j in up[i].ones() {
            if i != j && up[j].contains(i) {
                return Err(CycleError(sorted[i].clone(), sorted[j].clone()));
            }
        }
    }
    Ok(Poset::assemble(sorted, up, prov))
}

fn close(up: &mut [FixedBitSet]) {
    let n = up.len();
    for k in 0..n {
        let row_k = up[k].clone();
        for row in up.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
}
