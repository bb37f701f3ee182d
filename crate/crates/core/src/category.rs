//! Finitely presented categories, set-valued functors and a brute-force
//! Yoneda check.
//!
//! Paths are generator sequences in application order: `[f, g]` is `f`
//! followed by `g`. Hom-sets are enumerated up to a length cap and
//! quotiented by the relations; whenever the cap could hide paths the
//! result says so.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_HOM_CAP: usize = 8;
pub const DEFAULT_SEARCH_LIMIT: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub src: String,
    pub dst: String,
}

/// `lhs = rhs` as generator-name paths. An empty side is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryPresentation {
    pub objects: Vec<String>,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
    pub hom_cap: usize,
}

/// A morphism given by one of its representing paths.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub src: usize,
    pub gens: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct HomSet {
    /// Shortest representative of each class, sorted.
    pub paths: Vec<Path>,
    pub cap_sensitive: bool,
}

impl CategoryPresentation {
    pub fn new(
        objects: impl IntoIterator<Item = impl Into<String>>,
        generators: impl IntoIterator<Item = (impl Into<String>, impl Into<String>, impl Into<String>)>,
        relations: impl IntoIterator<Item = Relation>,
        hom_cap: usize,
    ) -> Result<Self> {
        let mut objects: Vec<String> = objects.into_iter().map(Into::into).collect();
        objects.sort();
        objects.dedup();
        let cat = CategoryPresentation {
            objects,
            generators: generators
                .into_iter()
                .map(|(n, s, d)| Generator {
                    name: n.into(),
                    src: s.into(),
                    dst: d.into(),
                })
                .collect(),
            relations: relations.into_iter().collect(),
            hom_cap,
        };
        cat.validate()?;
        Ok(cat)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidPresentation(m));
        if self.hom_cap == 0 {
            return bad("hom cap must be at least 1".into());
        }
        let mut names = BTreeSet::new();
        for g in &self.generators {
            self.object_index(&g.src)?;
            self.object_index(&g.dst)?;
            if !names.insert(&g.name) {
                return bad(format!("generator `{}` is declared twice", g.name));
            }
        }
        for r in &self.relations {
            let (l, r2) = (self.resolve(&r.lhs)?, self.resolve(&r.rhs)?);
            match (self.endpoints(&l), self.endpoints(&r2)) {
                (None, None) => return bad("relation between two identities".into()),
                (Some(e), None) | (None, Some(e)) if e.0 != e.1 => {
                    return bad(format!("relation {} equates a non-endomorphism with an identity", show_rel(r)))
                }
                (Some(a), Some(b)) if a != b => return bad(format!("relation {} sides are not parallel", show_rel(r))),
                _ => {}
            }
        }
        Ok(())
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.objects
            .binary_search_by(|o| o.as_str().cmp(name))
            .map_err(|_| Error::UnknownObject(name.to_string()))
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::InvalidPresentation(format!("unknown generator `{name}`")))
    }

    fn gen_src(&self, g: usize) -> usize {
        self.object_index(&self.generators[g].src).expect("validated")
    }

    fn gen_dst(&self, g: usize) -> usize {
        self.object_index(&self.generators[g].dst).expect("validated")
    }

    /// Generator indices of a composable name path.
    fn resolve(&self, names: &[String]) -> Result<Vec<usize>> {
        let gens = names.iter().map(|n| self.generator_index(n)).collect::<Result<Vec<_>>>()?;
        for w in gens.windows(2) {
            if self.gen_dst(w[0]) != self.gen_src(w[1]) {
                return Err(Error::InvalidPresentation(format!(
                    "`{}` then `{}` is not composable",
                    self.generators[w[0]].name, self.generators[w[1]].name
                )));
            }
        }
        Ok(gens)
    }

    fn endpoints(&self, gens: &[usize]) -> Option<(usize, usize)> {
        Some((self.gen_src(*gens.first()?), self.gen_dst(*gens.last()?)))
    }

    pub fn path_dst(&self, p: &Path) -> usize {
        p.gens.last().map_or(p.src, |&g| self.gen_dst(g))
    }

    pub fn render_path(&self, p: &Path) -> String {
        if p.gens.is_empty() {
            return format!("id_{}", self.objects[p.src]);
        }
        // written in composition order, last applied first
        p.gens
            .iter()
            .rev()
            .map(|&g| self.generators[g].name.as_str())
            .collect::<Vec<_>>()
            .join("∘")
    }

    fn paths_from(&self, src: usize) -> PathSpace {
        PathSpace::build(self, src)
    }

    pub fn hom_set(&self, x: &str, y: &str) -> Result<HomSet> {
        let (x, y) = (self.object_index(x)?, self.object_index(y)?);
        let space = self.paths_from(x);
        Ok(HomSet {
            paths: space.classes_to(self, y),
            cap_sensitive: space.escaped || self.unbounded_between(x, y),
        })
    }

    /// Whether paths from `x` to `y` longer than the cap exist.
    fn unbounded_between(&self, x: usize, y: usize) -> bool {
        let n = self.objects.len();
        let reach = |from: usize, forward: bool| {
            let mut seen = vec![false; n];
            let mut stack = vec![from];
            seen[from] = true;
            while let Some(v) = stack.pop() {
                for g in 0..self.generators.len() {
                    let (a, b) = (self.gen_src(g), self.gen_dst(g));
                    let (a, b) = if forward { (a, b) } else { (b, a) };
                    if a == v && !seen[b] {
                        seen[b] = true;
                        stack.push(b);
                    }
                }
            }
            seen
        };
        let (fwd, bwd) = (reach(x, true), reach(y, false));
        let live: Vec<bool> = (0..n).map(|v| fwd[v] && bwd[v]).collect();
        // longest path over live objects; a cycle makes it unbounded
        let mut longest: Vec<Option<usize>> = vec![None; n];
        let mut state = vec![0u8; n];
        fn visit(
            cat: &CategoryPresentation,
            v: usize,
            live: &[bool],
            state: &mut [u8],
            longest: &mut [Option<usize>],
        ) -> Option<usize> {
            match state[v] {
                1 => return None,
                2 => return longest[v],
                _ => {}
            }
            state[v] = 1;
            let mut best = Some(0usize);
            for g in 0..cat.generators.len() {
                if cat.gen_src(g) == v && live[cat.gen_dst(g)] {
                    best = match (best, visit(cat, cat.gen_dst(g), live, state, longest)) {
                        (Some(b), Some(l)) => Some(b.max(l + 1)),
                        _ => None,
                    };
                }
            }
            state[v] = 2;
            longest[v] = best;
            best
        }
        if !live[x] {
            return false;
        }
        match visit(self, x, &live, &mut state, &mut longest) {
            Some(l) => l > self.hom_cap,
            None => true,
        }
    }

    /// `hom(c, -)` with post-composition.
    pub fn representable(&self, c: &str) -> Result<FunctorInstance> {
        let ci = self.object_index(c)?;
        let space = self.paths_from(ci);
        let mut sensitive = space.escaped;
        let mut object_map = BTreeMap::new();
        let mut reps: HashMap<usize, String> = HashMap::new();
        for (y, obj) in self.objects.iter().enumerate() {
            sensitive |= self.unbounded_between(ci, y);
            let tokens: Vec<String> = space
                .classes_to(self, y)
                .iter()
                .map(|p| {
                    let class = space.class_of(p).expect("enumerated");
                    let t = self.render_path(p);
                    reps.insert(class, t.clone());
                    t
                })
                .collect();
            object_map.insert(obj.clone(), tokens);
        }
        let mut arrow_map = BTreeMap::new();
        for (g, gen) in self.generators.iter().enumerate() {
            let mut f = BTreeMap::new();
            for p in space.classes_to(self, self.gen_src(g)) {
                let from = reps[&space.class_of(&p).expect("enumerated")].clone();
                match space.post_compose(&p, g) {
                    Some(class) => {
                        f.insert(from, reps[&class].clone());
                    }
                    None => return Err(Error::CapExceeded(self.hom_cap)),
                }
            }
            arrow_map.insert(gen.name.clone(), f);
        }
        let mut f = FunctorInstance::new(object_map, arrow_map)?;
        f.cap_sensitive = sensitive;
        Ok(f)
    }
}

fn show_rel(r: &Relation) -> String {
    format!("{:?} = {:?}", r.lhs, r.rhs)
}

/// All paths out of one object up to the cap, with relation-generated
/// equivalence classes.
struct PathSpace {
    paths: Vec<Path>,
    index: HashMap<Vec<usize>, usize>,
    parent: Vec<usize>,
    /// Some rewrite left the capped space, so classes may be too fine.
    escaped: bool,
}

impl PathSpace {
    fn build(cat: &CategoryPresentation, src: usize) -> Self {
        let mut paths = vec![Path { src, gens: vec![] }];
        let mut frontier = vec![0usize];
        for _ in 0..cat.hom_cap {
            let mut next = Vec::new();
            for &i in &frontier {
                let end = cat.path_dst(&paths[i]);
                for g in 0..cat.generators.len() {
                    if cat.gen_src(g) == end {
                        let mut gens = paths[i].gens.clone();
                        gens.push(g);
                        next.push(paths.len());
                        paths.push(Path { src, gens });
                    }
                }
            }
            frontier = next;
        }
        let index = paths.iter().enumerate().map(|(i, p)| (p.gens.clone(), i)).collect();
        let mut space = PathSpace {
            parent: (0..paths.len()).collect(),
            paths,
            index,
            escaped: false,
        };
        let rules: Vec<(Vec<usize>, Vec<usize>)> = cat
            .relations
            .iter()
            .map(|r| (cat.resolve(&r.lhs).expect("validated"), cat.resolve(&r.rhs).expect("validated")))
            .flat_map(|(l, r)| [(l.clone(), r.clone()), (r, l)])
            .collect();
        for i in 0..space.paths.len() {
            let gens = space.paths[i].gens.clone();
            for (from, to) in &rules {
                if from.is_empty() {
                    // identity side: insert `to` wherever it is composable
                    let obj = cat.gen_src(to[0]);
                    for k in 0..=gens.len() {
                        let here = if k == 0 { src } else { cat.gen_dst(gens[k - 1]) };
                        if here == obj {
                            let mut w = gens[..k].to_vec();
                            w.extend(to);
                            w.extend(&gens[k..]);
                            space.link(i, &w);
                        }
                    }
                    continue;
                }
                for k in 0..gens.len() {
                    if gens[k..].starts_with(from) {
                        let mut w = gens[..k].to_vec();
                        w.extend(to);
                        w.extend(&gens[k + from.len()..]);
                        space.link(i, &w);
                    }
                }
            }
        }
        space
    }

    fn find(&mut self, i: usize) -> usize {
        let mut r = i;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut j = i;
        while self.parent[j] != r {
            let next = self.parent[j];
            self.parent[j] = r;
            j = next;
        }
        r
    }

    fn link(&mut self, i: usize, gens: &[usize]) {
        match self.index.get(gens) {
            Some(&j) => {
                let (a, b) = (self.find(i), self.find(j));
                // keep the smallest index, which is a shortest path, as root
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                self.parent[hi] = lo;
            }
            None => self.escaped = true,
        }
    }

    fn class_of(&self, p: &Path) -> Option<usize> {
        let mut r = *self.index.get(&p.gens)?;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        Some(r)
    }

    fn classes_to(&self, cat: &CategoryPresentation, y: usize) -> Vec<Path> {
        let mut roots: BTreeSet<usize> = BTreeSet::new();
        for p in &self.paths {
            if cat.path_dst(p) == y {
                roots.insert(self.class_of(p).expect("enumerated"));
            }
        }
        roots.into_iter().map(|r| self.paths[r].clone()).collect()
    }

    /// Class of `p` followed by `g`, trying every member of `p`'s class.
    fn post_compose(&self, p: &Path, g: usize) -> Option<usize> {
        let class = self.class_of(p)?;
        self.paths.iter().find_map(|q| {
            if self.class_of(q) != Some(class) {
                return None;
            }
            let mut gens = q.gens.clone();
            gens.push(g);
            self.class_of(&Path { src: q.src, gens })
        })
    }
}

/// A functor into finite sets, by element tokens.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorInstance {
    pub object_map: BTreeMap<String, Vec<String>>,
    pub arrow_map: BTreeMap<String, BTreeMap<String, String>>,
    /// Set when built from a hom-set enumeration the cap may have cut.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub cap_sensitive: bool,
}

impl FunctorInstance {
    /// Sorts and dedups element sets.
    pub fn new(
        object_map: BTreeMap<String, Vec<String>>,
        arrow_map: BTreeMap<String, BTreeMap<String, String>>,
    ) -> Result<Self> {
        let object_map = object_map
            .into_iter()
            .map(|(k, mut v)| {
                v.sort();
                v.dedup();
                (k, v)
            })
            .collect();
        Ok(FunctorInstance {
            object_map,
            arrow_map,
            cap_sensitive: false,
        })
    }

    pub fn set(&self, obj: &str) -> &[String] {
        self.object_map.get(obj).map_or(&[], Vec::as_slice)
    }

    /// The generator's function as indices into the sorted element sets.
    fn function(&self, cat: &CategoryPresentation, g: usize) -> Result<Vec<usize>> {
        let gen = &cat.generators[g];
        let (from, to) = (self.set(&gen.src), self.set(&gen.dst));
        let map = self.arrow_map.get(&gen.name);
        from.iter()
            .map(|e| {
                let image = map.and_then(|m| m.get(e)).ok_or_else(|| {
                    Error::InvalidFunctor(format!("`{}` does not map element `{e}`", gen.name))
                })?;
                to.binary_search(image).map_err(|_| {
                    Error::InvalidFunctor(format!("`{}` maps `{e}` outside the image of {}", gen.name, gen.dst))
                })
            })
            .collect()
    }

    fn functions(&self, cat: &CategoryPresentation) -> Result<Vec<Vec<usize>>> {
        (0..cat.generators.len()).map(|g| self.function(cat, g)).collect()
    }

    /// Every generator is a total function between the mapped sets and both
    /// sides of every relation act the same.
    pub fn check_functoriality(&self, cat: &CategoryPresentation) -> Result<()> {
        for k in self.object_map.keys() {
            cat.object_index(k)?;
        }
        let fns = self.functions(cat)?;
        for r in &cat.relations {
            let (l, rr) = (cat.resolve(&r.lhs)?, cat.resolve(&r.rhs)?);
            let start = cat.endpoints(&l).or(cat.endpoints(&rr)).expect("validated").0;
            let apply = |path: &[usize], e: usize| path.iter().fold(e, |x, &g| fns[g][x]);
            for e in 0..self.set(&cat.objects[start]).len() {
                if apply(&l, e) != apply(&rr, e) {
                    return Err(Error::InvalidFunctor(format!(
                        "relation {} fails on `{}`",
                        show_rel(r),
                        self.set(&cat.objects[start])[e]
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Components by object, as indices from the source set into the target set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct NaturalTransformation {
    pub components: Vec<Vec<usize>>,
}

impl NaturalTransformation {
    pub fn is_natural(&self, cat: &CategoryPresentation, f: &FunctorInstance, g: &FunctorInstance) -> Result<bool> {
        let (ff, gf) = (f.functions(cat)?, g.functions(cat)?);
        Ok((0..cat.generators.len()).all(|u| {
            let (x, y) = (cat.gen_src(u), cat.gen_dst(u));
            (0..self.components[x].len()).all(|e| self.components[y][ff[u][e]] == gf[u][self.components[x][e]])
        }))
    }

    pub fn render(&self, cat: &CategoryPresentation, f: &FunctorInstance, g: &FunctorInstance) -> String {
        let mut parts = Vec::new();
        for (x, comp) in self.components.iter().enumerate() {
            let obj = &cat.objects[x];
            if comp.is_empty() {
                continue;
            }
            let maps: Vec<String> = comp
                .iter()
                .enumerate()
                .map(|(e, &i)| format!("{} ↦ {}", f.set(obj)[e], g.set(obj)[i]))
                .collect();
            parts.push(format!("{obj}: {{{}}}", maps.join(", ")));
        }
        parts.join("; ")
    }
}

/// Every natural transformation `f ⇒ g`, by backtracking over elements.
pub fn natural_transformations(
    cat: &CategoryPresentation,
    f: &FunctorInstance,
    g: &FunctorInstance,
    search_limit: usize,
) -> Result<Vec<NaturalTransformation>> {
    f.check_functoriality(cat)?;
    g.check_functoriality(cat)?;
    let (ff, gf) = (f.functions(cat)?, g.functions(cat)?);
    let n = cat.objects.len();
    let sizes: Vec<(usize, usize)> = cat
        .objects
        .iter()
        .map(|o| (f.set(o).len(), g.set(o).len()))
        .collect();
    let vars: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..sizes[x].0).map(move |e| (x, e))).collect();
    let mut comps: Vec<Vec<Option<usize>>> = sizes.iter().map(|&(s, _)| vec![None; s]).collect();
    let mut out = Vec::new();
    let mut steps = 0usize;

    struct Ctx<'a> {
        cat: &'a CategoryPresentation,
        ff: &'a [Vec<usize>],
        gf: &'a [Vec<usize>],
        sizes: &'a [(usize, usize)],
        vars: &'a [(usize, usize)],
        limit: usize,
    }

    fn consistent(cx: &Ctx<'_>, comps: &[Vec<Option<usize>>], x: usize, e: usize) -> bool {
        for u in 0..cx.cat.generators.len() {
            let (s, d) = (cx.cat.gen_src(u), cx.cat.gen_dst(u));
            // squares where (x, e) is the source element
            if s == x {
                if let (Some(a), Some(b)) = (comps[x][e], comps[d][cx.ff[u][e]]) {
                    if b != cx.gf[u][a] {
                        return false;
                    }
                }
            }
            // squares where (x, e) is the image of a source element
            if d == x {
                for e0 in 0..comps[s].len() {
                    if cx.ff[u][e0] == e {
                        if let (Some(a), Some(b)) = (comps[s][e0], comps[x][e]) {
                            if b != cx.gf[u][a] {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    fn go(
        cx: &Ctx<'_>,
        k: usize,
        comps: &mut Vec<Vec<Option<usize>>>,
        out: &mut Vec<NaturalTransformation>,
        steps: &mut usize,
    ) -> Result<()> {
        *steps += 1;
        if *steps > cx.limit {
            return Err(Error::ResourceLimit {
                what: "natural transformation search".into(),
                limit: cx.limit,
            });
        }
        let Some(&(x, e)) = cx.vars.get(k) else {
            out.push(NaturalTransformation {
                components: comps.iter().map(|c| c.iter().map(|v| v.expect("assigned")).collect()).collect(),
            });
            return Ok(());
        };
        for choice in 0..cx.sizes[x].1 {
            comps[x][e] = Some(choice);
            if consistent(cx, comps, x, e) {
                go(cx, k + 1, comps, out, steps)?;
            }
        }
        comps[x][e] = None;
        Ok(())
    }

    let cx = Ctx {
        cat,
        ff: &ff,
        gf: &gf,
        sizes: &sizes,
        vars: &vars,
        limit: search_limit,
    };
    go(&cx, 0, &mut comps, &mut out, &mut steps)?;
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct YonedaReport {
    pub object: String,
    pub nat_count: usize,
    pub element_count: usize,
    pub injective: bool,
    pub surjective: bool,
    pub cap_sensitive: bool,
    /// `(transformation, element it sends id to)`, sorted by element.
    pub witnesses: Vec<(String, String)>,
}

impl YonedaReport {
    /// Bijective and not invalidated by the hom cap.
    pub fn holds(&self) -> bool {
        self.injective && self.surjective && !self.cap_sensitive
    }
}

impl fmt::Display for YonedaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "|Nat(hom({}, -), f)| = {}, |f({})| = {}, {}",
            self.object,
            self.nat_count,
            self.object,
            self.element_count,
            if self.holds() {
                "bijective"
            } else if self.cap_sensitive {
                "inconclusive: hom cap reached"
            } else {
                "NOT bijective"
            }
        )
    }
}

/// Checks that `α ↦ α_c(id_c)` is a bijection `Nat(hom(c, -), f) → f(c)`.
pub fn yoneda_check(cat: &CategoryPresentation, f: &FunctorInstance, c: &str) -> Result<YonedaReport> {
    let ci = cat.object_index(c)?;
    let rep = cat.representable(c)?;
    let nats = natural_transformations(cat, &rep, f, DEFAULT_SEARCH_LIMIT)?;
    let id = cat.render_path(&Path { src: ci, gens: vec![] });
    let id_index = rep.set(c).binary_search(&id).expect("identity is in hom(c, c)");
    let elements = f.set(c);
    let mut hit = vec![0usize; elements.len()];
    let mut witnesses = Vec::new();
    for a in &nats {
        let e = a.components[ci][id_index];
        hit[e] += 1;
        witnesses.push((a.render(cat, &rep, f), elements[e].clone()));
    }
    witnesses.sort_by(|x, y| (&x.1, &x.0).cmp(&(&y.1, &y.0)));
    Ok(YonedaReport {
        object: c.to_string(),
        nat_count: nats.len(),
        element_count: elements.len(),
        injective: hit.iter().all(|&h| h <= 1),
        surjective: hit.iter().all(|&h| h >= 1),
        cap_sensitive: rep.cap_sensitive,
        witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list_object() -> CategoryPresentation {
        CategoryPresentation::new(["Object", "List"], [("u", "List", "Object")], [], 4).unwrap()
    }

    fn square() -> CategoryPresentation {
        CategoryPresentation::new(
            ["A", "B", "C", "D"],
            [("f", "A", "B"), ("g", "B", "D"), ("h", "A", "C"), ("k", "C", "D")],
            [Relation {
                lhs: vec!["f".into(), "g".into()],
                rhs: vec!["h".into(), "k".into()],
            }],
            4,
        )
        .unwrap()
    }

    fn constant(cat: &CategoryPresentation, token: &str) -> FunctorInstance {
        let objects = cat.objects.iter().map(|o| (o.clone(), vec![token.to_string()])).collect();
        let arrows = cat
            .generators
            .iter()
            .map(|g| (g.name.clone(), BTreeMap::from([(token.to_string(), token.to_string())])))
            .collect();
        FunctorInstance::new(objects, arrows).unwrap()
    }

    #[test]
    fn hom_sets() {
        let d = CategoryPresentation::new(["Object"], Vec::<(&str, &str, &str)>::new(), [], 3).unwrap();
        let h = d.hom_set("Object", "Object").unwrap();
        assert_eq!(h.paths.len(), 1);
        assert_eq!(d.render_path(&h.paths[0]), "id_Object");
        let c = list_object();
        let h = c.hom_set("List", "Object").unwrap();
        assert_eq!(h.paths.iter().map(|p| c.render_path(p)).collect::<Vec<_>>(), vec!["u"]);
        assert!(c.hom_set("Object", "List").unwrap().paths.is_empty());
        assert!(!h.cap_sensitive);
    }

    #[test]
    fn relations_quotient_paths() {
        let s = square();
        assert_eq!(s.hom_set("A", "D").unwrap().paths.len(), 1);
        let free = CategoryPresentation {
            relations: vec![],
            ..square()
        };
        assert_eq!(free.hom_set("A", "D").unwrap().paths.len(), 2);
    }

    #[test]
    fn loops_are_cap_sensitive() {
        let c = CategoryPresentation::new(["M"], [("s", "M", "M")], [], 3).unwrap();
        let h = c.hom_set("M", "M").unwrap();
        assert_eq!(h.paths.len(), 4);
        assert!(h.cap_sensitive);
        let idem = CategoryPresentation::new(
            ["M"],
            [("s", "M", "M")],
            [Relation {
                lhs: vec!["s".into(), "s".into()],
                rhs: vec!["s".into()],
            }],
            3,
        )
        .unwrap();
        assert_eq!(idem.hom_set("M", "M").unwrap().paths.len(), 2);
    }

    #[test]
    fn invalid_presentations() {
        assert!(matches!(
            CategoryPresentation::new(["A"], [("f", "A", "B")], [], 2),
            Err(Error::UnknownObject(_))
        ));
        assert!(matches!(
            CategoryPresentation::new(
                ["A", "B"],
                [("f", "A", "B"), ("g", "A", "B")],
                [Relation {
                    lhs: vec!["f".into(), "g".into()],
                    rhs: vec![]
                }],
                2
            ),
            Err(Error::InvalidPresentation(_))
        ));
        assert!(CategoryPresentation::new(["A"], Vec::<(&str, &str, &str)>::new(), [], 0).is_err());
    }

    #[test]
    fn representables() {
        let c = list_object();
        let r = c.representable("List").unwrap();
        assert_eq!(r.set("List"), ["id_List"]);
        assert_eq!(r.set("Object"), ["u"]);
        r.check_functoriality(&c).unwrap();
        let s = square();
        let r = s.representable("A").unwrap();
        assert_eq!(r.set("D").len(), 1);
        r.check_functoriality(&s).unwrap();
    }

    #[test]
    fn nat_counts() {
        let c = list_object();
        let k = constant(&c, "*");
        assert_eq!(natural_transformations(&c, &k, &k, 1000).unwrap().len(), 1);
        let r = c.representable("List").unwrap();
        let nats = natural_transformations(&c, &r, &r, 1000).unwrap();
        assert_eq!(nats.len(), 1);
        assert!(nats[0].is_natural(&c, &r, &r).unwrap());
        let empty = FunctorInstance::new(
            BTreeMap::from([("List".into(), vec![]), ("Object".into(), vec!["x".into()])]),
            BTreeMap::from([("u".into(), BTreeMap::new())]),
        )
        .unwrap();
        assert_eq!(natural_transformations(&c, &empty, &k, 1000).unwrap().len(), 1);
    }

    #[test]
    fn yoneda_on_square() {
        let s = square();
        for obj in ["A", "B", "C", "D"] {
            let r = s.representable(obj).unwrap();
            let rep = yoneda_check(&s, &r, obj).unwrap();
            assert!(rep.holds(), "{rep}");
            assert!(rep.witnesses.iter().any(|(_, e)| e == &format!("id_{obj}")));
        }
    }

    #[test]
    fn broken_functor_is_rejected() {
        let s = square();
        let mut f = s.representable("A").unwrap();
        f.object_map.get_mut("D").unwrap().push("extra".into());
        f.arrow_map.get_mut("k").unwrap().insert("h".into(), "extra".into());
        assert!(matches!(f.check_functoriality(&s), Err(Error::InvalidFunctor(_))));
    }

    #[test]
    fn json_round_trip() {
        let s = square();
        let f = s.representable("B").unwrap();
        let back: FunctorInstance = serde_json::from_str(&serde_json::to_string(&f).unwrap()).unwrap();
        assert_eq!(back, f);
        let cat: CategoryPresentation = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(cat, s);
    }
}
