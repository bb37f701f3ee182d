//! Class tables: declarations, validation, bounds and the subclass order.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::types::{ArgInterval, SelfBound, Surface, TypeTerm, OBJECT};

/// A type as written in a class header. Unlike [`TypeTerm`] it may mention
/// the declaring class's parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TypeExpr {
    Null,
    Param(String),
    Class { name: String, args: Vec<ArgExpr> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ArgExpr {
    Wildcard,
    Extends(TypeExpr),
    Super(TypeExpr),
    Exact(TypeExpr),
}

impl TypeExpr {
    pub fn class(name: impl Into<String>, args: Vec<ArgExpr>) -> Self {
        TypeExpr::Class {
            name: name.into(),
            args,
        }
    }

    pub fn mentions_param(&self, p: &str) -> bool {
        match self {
            TypeExpr::Null => false,
            TypeExpr::Param(q) => q == p,
            TypeExpr::Class { args, .. } => args.iter().any(|a| match a {
                ArgExpr::Wildcard => false,
                ArgExpr::Extends(e) | ArgExpr::Super(e) | ArgExpr::Exact(e) => e.mentions_param(p),
            }),
        }
    }

    fn for_each_class(&self, f: &mut impl FnMut(&str, usize)) {
        if let TypeExpr::Class { name, args } = self {
            f(name, args.len());
            for a in args {
                if let ArgExpr::Extends(e) | ArgExpr::Super(e) | ArgExpr::Exact(e) = a {
                    e.for_each_class(f);
                }
            }
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeExpr::Null => f.write_str("Null"),
            TypeExpr::Param(p) => f.write_str(p),
            TypeExpr::Class { name, args } => {
                f.write_str(name)?;
                if !args.is_empty() {
                    f.write_str("<")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        match a {
                            ArgExpr::Wildcard => f.write_str("?")?,
                            ArgExpr::Extends(e) => write!(f, "? extends {e}")?,
                            ArgExpr::Super(e) => write!(f, "? super {e}")?,
                            ArgExpr::Exact(e) => write!(f, "{e}")?,
                        }
                    }
                    f.write_str(">")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeParam {
    pub name: String,
    /// `None` means `Object`.
    pub bound: Option<TypeExpr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassDecl {
    pub name: String,
    pub params: Vec<TypeParam>,
    /// `None` means `Object`.
    pub superclass: Option<TypeExpr>,
}

/// Class declarations as written. `Object` is implicit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassTable {
    pub decls: Vec<ClassDecl>,
}

#[derive(Clone, Debug)]
pub struct ParamInfo {
    pub name: String,
    pub bound: TypeExpr,
    pub f_bounded: bool,
}

#[derive(Clone, Debug)]
pub struct ClassInfo {
    pub name: String,
    pub params: Vec<ParamInfo>,
    /// `None` only for `Object`.
    pub superclass: Option<TypeExpr>,
}

impl ClassInfo {
    pub fn arity(&self) -> usize {
        self.params.len()
    }

    pub fn is_generic(&self) -> bool {
        !self.params.is_empty()
    }

    pub fn f_bounded(&self) -> bool {
        self.params.iter().any(|p| p.f_bounded)
    }

    pub fn superclass_name(&self) -> Option<&str> {
        match &self.superclass {
            Some(TypeExpr::Class { name, .. }) => Some(name),
            _ => None,
        }
    }
}

/// A class table that passed validation, with its bounds resolved to ground
/// types and its subclass order computed.
#[derive(Clone, Debug)]
pub struct ValidatedClassTable {
    name: String,
    classes: Vec<ClassInfo>,
    index: HashMap<String, usize>,
    bounds: Vec<Vec<Option<TypeTerm>>>,
    subclass: Poset<String>,
}

pub fn validate_class_table(table: &ClassTable) -> Result<ValidatedClassTable> {
    ValidatedClassTable::new(table, "<inline>")
}

/// Reflexive-transitive closure of the extends edges over class names.
pub fn subclass_order(table: &ValidatedClassTable) -> Poset<String> {
    table.subclass.clone()
}

impl ValidatedClassTable {
    pub fn new(table: &ClassTable, name: &str) -> Result<Self> {
        let mut classes = vec![ClassInfo {
            name: OBJECT.to_string(),
            params: Vec::new(),
            superclass: None,
        }];
        let mut index = HashMap::from([(OBJECT.to_string(), 0)]);
        for d in &table.decls {
            if index.contains_key(&d.name) || d.name == "Null" {
                return Err(Error::DuplicateClass(d.name.clone()));
            }
            index.insert(d.name.clone(), classes.len());
            let params = d
                .params
                .iter()
                .map(|p| {
                    let bound = p.bound.clone().unwrap_or_else(|| TypeExpr::class(OBJECT, vec![]));
                    ParamInfo {
                        f_bounded: bound.mentions_param(&p.name),
                        name: p.name.clone(),
                        bound,
                    }
                })
                .collect();
            classes.push(ClassInfo {
                name: d.name.clone(),
                params,
                superclass: Some(d.superclass.clone().unwrap_or_else(|| TypeExpr::class(OBJECT, vec![]))),
            });
        }

        let arity_of = |n: &str| index.get(n).map(|&i| classes[i].arity());
        for c in &classes {
            let mut exprs: Vec<&TypeExpr> = c.params.iter().map(|p| &p.bound).collect();
            if let Some(s) = &c.superclass {
                exprs.push(s);
            }
            for e in exprs {
                match e {
                    TypeExpr::Class { .. } => {}
                    TypeExpr::Null => return Err(Error::UnknownClass("Null".into())),
                    TypeExpr::Param(p) => return Err(Error::UnknownClass(p.clone())),
                }
                let mut err = None;
                e.for_each_class(&mut |name, n| {
                    if err.is_some() {
                        return;
                    }
                    match arity_of(name) {
                        None => err = Some(Error::UnknownClass(name.to_string())),
                        Some(k) if k != n => {
                            err = Some(Error::ArityMismatch {
                                class: name.to_string(),
                                expected: k,
                                found: n,
                            })
                        }
                        _ => {}
                    }
                });
                if let Some(e) = err {
                    return Err(e);
                }
            }
        }

        // extends graph is a forest rooted at Object iff following supers
        // from every class terminates
        for c in &classes {
            let mut path = vec![c.name.clone()];
            let mut seen = HashSet::from([c.name.as_str()]);
            let mut cur = c;
            while let Some(s) = cur.superclass_name() {
                path.push(s.to_string());
                if !seen.insert(s) {
                    let start = path.iter().position(|p| p == s).unwrap();
                    return Err(Error::CyclicSubclassing(path[start..].to_vec()));
                }
                cur = &classes[index[s]];
            }
        }

        let subclass = Poset::from_pairs(
            classes.iter().map(|c| c.name.clone()),
            classes
                .iter()
                .filter_map(|c| c.superclass_name().map(|s| (c.name.clone(), s.to_string()))),
        )
        .expect("acyclic extends graph");

        let bounds = classes.iter().map(|c| vec![None; c.arity()]).collect();
        let mut vt = ValidatedClassTable {
            name: name.to_string(),
            classes,
            index,
            bounds,
            subclass,
        };
        vt.resolve_bounds()?;
        Ok(vt)
    }

    /// Fills in ground bounds. F-bounded parameters get a self-bound marker;
    /// the others are desugared and canonicalized once every bound they
    /// depend on is known.
    fn resolve_bounds(&mut self) -> Result<()> {
        let mut pending = Vec::new();
        for ci in 0..self.classes.len() {
            for j in 0..self.classes[ci].arity() {
                let p = &self.classes[ci].params[j];
                if p.f_bounded {
                    let TypeExpr::Class { name, args } = &p.bound else {
                        unreachable!("bound heads are checked to be classes")
                    };
                    self.bounds[ci][j] = Some(TypeTerm::SelfBound(SelfBound {
                        owner: self.classes[ci].name.clone(),
                        param: j,
                        bound_class: name.clone(),
                        bound_arity: args.len(),
                    }));
                } else {
                    pending.push((ci, j));
                }
            }
        }
        while !pending.is_empty() {
            let mut next = Vec::new();
            let mut last_err = None;
            for &(ci, j) in &pending {
                let expr = self.classes[ci].params[j].bound.clone();
                match self.ground(&expr, &[]).and_then(|t| self.canon(&t)) {
                    Ok(t) => self.bounds[ci][j] = Some(t),
                    Err(Error::CyclicBound(_)) => {
                        last_err = Some(Error::CyclicBound(self.classes[ci].name.clone()));
                        next.push((ci, j));
                    }
                    Err(e) => return Err(e),
                }
            }
            if next.len() == pending.len() {
                return Err(last_err.expect("no progress implies a pending error"));
            }
            pending = next;
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class(&self, name: &str) -> Option<&ClassInfo> {
        self.index.get(name).map(|&i| &self.classes[i])
    }

    pub fn require(&self, name: &str) -> Result<&ClassInfo> {
        self.class(name).ok_or_else(|| Error::UnknownClass(name.to_string()))
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.class(name).map(ClassInfo::arity)
    }

    /// Arity of every declared class, keyed by name.
    pub fn arities(&self) -> BTreeMap<&str, usize> {
        self.classes.iter().map(|c| (c.name.as_str(), c.arity())).collect()
    }

    pub fn generic_classes(&self) -> impl Iterator<Item = &ClassInfo> {
        self.classes.iter().filter(|c| c.is_generic())
    }

    pub fn non_generic_classes(&self) -> impl Iterator<Item = &ClassInfo> {
        self.classes.iter().filter(|c| !c.is_generic())
    }

    pub fn is_subclass(&self, sub: &str, sup: &str) -> bool {
        self.subclass.leq(&sub.to_string(), &sup.to_string())
    }

    pub fn subclass_poset(&self) -> &Poset<String> {
        &self.subclass
    }

    fn bound_opt(&self, class: &str, pos: usize) -> Result<TypeTerm> {
        let ci = self.index[class];
        self.bounds[ci][pos]
            .clone()
            .ok_or_else(|| Error::CyclicBound(class.to_string()))
    }

    /// Ground upper bound of parameter `pos` of `class`.
    pub fn bound_type(&self, class: &str, pos: usize) -> &TypeTerm {
        self.bounds[self.index[class]][pos]
            .as_ref()
            .expect("bounds are resolved during validation")
    }

    /// Erased class of a parameter's declared bound.
    pub fn bound_class(&self, class: &str, pos: usize) -> &str {
        match self.bound_type(class, pos) {
            TypeTerm::SelfBound(sb) => &sb.bound_class,
            t => t.head().expect("bounds are class types"),
        }
    }

    /// `class<?, .., ?>`, or `class` itself when it takes no arguments.
    pub fn wildcard_instance(&self, class: &str) -> Result<TypeTerm> {
        let info = self.require(class)?;
        let args = (0..info.arity())
            .map(|j| self.bound_opt(class, j).map(ArgInterval::unbounded))
            .collect::<Result<_>>()?;
        Ok(TypeTerm::class(class, args))
    }

    /// The type a self-bound marker stands for.
    pub fn unfold_self_bound(&self, sb: &SelfBound) -> TypeTerm {
        self.wildcard_instance(&sb.bound_class)
            .expect("self-bound classes are declared")
    }

    /// Desugars a header type under `env`, which supplies the arguments for
    /// the declaring class's parameters. A parameter used as a whole argument
    /// is replaced by the full interval; one used as a wildcard bound is
    /// replaced by the matching endpoint.
    pub fn instantiate(&self, e: &TypeExpr, env: &[(String, ArgInterval)]) -> Result<TypeTerm> {
        self.ground(e, env)
    }

    fn ground(&self, e: &TypeExpr, env: &[(String, ArgInterval)]) -> Result<TypeTerm> {
        match e {
            TypeExpr::Null => Ok(TypeTerm::Null),
            TypeExpr::Param(p) => Err(Error::UnknownClass(p.clone())),
            TypeExpr::Class { name, args } => {
                let info = self.require(name)?;
                if info.arity() != args.len() {
                    return Err(Error::ArityMismatch {
                        class: name.clone(),
                        expected: info.arity(),
                        found: args.len(),
                    });
                }
                let lookup = |p: &str| env.iter().find(|(n, _)| n == p).map(|(_, a)| a.clone());
                let mut out = Vec::with_capacity(args.len());
                for (j, a) in args.iter().enumerate() {
                    let arg = match a {
                        ArgExpr::Wildcard => ArgInterval::unbounded(self.bound_opt(name, j)?),
                        ArgExpr::Extends(TypeExpr::Param(p)) => {
                            let iv = lookup(p).ok_or_else(|| Error::UnknownClass(p.clone()))?;
                            ArgInterval::extends(iv.upper)
                        }
                        ArgExpr::Super(TypeExpr::Param(p)) => {
                            let iv = lookup(p).ok_or_else(|| Error::UnknownClass(p.clone()))?;
                            ArgInterval::super_of(iv.lower, self.bound_opt(name, j)?)
                        }
                        ArgExpr::Exact(TypeExpr::Param(p)) => {
                            lookup(p).ok_or_else(|| Error::UnknownClass(p.clone()))?
                        }
                        ArgExpr::Extends(t) => ArgInterval::extends(self.ground(t, env)?),
                        ArgExpr::Super(t) => ArgInterval::super_of(self.ground(t, env)?, self.bound_opt(name, j)?),
                        ArgExpr::Exact(t) => ArgInterval::invariant(self.ground(t, env)?),
                    };
                    out.push(arg);
                }
                Ok(TypeTerm::class(name.clone(), out))
            }
        }
    }

    /// The declared supertype of `t`'s class with `t`'s arguments substituted
    /// for the parameters. `None` for `Object` and non-class terms.
    pub fn supertype_of(&self, t: &TypeTerm) -> Option<TypeTerm> {
        let TypeTerm::Class { name, args } = t else {
            return None;
        };
        let info = self.class(name)?;
        let sup = info.superclass.as_ref()?;
        let env: Vec<(String, ArgInterval)> = info
            .params
            .iter()
            .zip(args)
            .map(|(p, a)| (p.name.clone(), a.clone()))
            .collect();
        Some(self.ground(sup, &env).expect("superclass references are validated"))
    }

    /// Desugars a ground type written without parameters.
    pub fn ground_type(&self, e: &TypeExpr) -> Result<TypeTerm> {
        self.ground(e, &[])
    }

    /// Canonical form: endpoints canonicalized recursively, self-bounds
    /// normalized per position, and surface tags recomputed from endpoints.
    pub fn canonical(&self, t: &TypeTerm) -> TypeTerm {
        self.canon(t).expect("bounds are resolved during validation")
    }

    fn canon(&self, t: &TypeTerm) -> Result<TypeTerm> {
        match t {
            TypeTerm::Null | TypeTerm::SelfBound(_) => Ok(t.clone()),
            TypeTerm::Class { name, args } => {
                let args = args
                    .iter()
                    .enumerate()
                    .map(|(j, a)| self.canon_arg(name, j, a))
                    .collect::<Result<_>>()?;
                Ok(TypeTerm::class(name.clone(), args))
            }
        }
    }

    /// Canonical form of one argument interval at parameter `pos` of `class`.
    pub fn canonical_arg(&self, class: &str, pos: usize, a: &ArgInterval) -> ArgInterval {
        self.canon_arg(class, pos, a).expect("bounds are resolved during validation")
    }

    fn canon_arg(&self, class: &str, pos: usize, a: &ArgInterval) -> Result<ArgInterval> {
        let lower = self.canon_endpoint(&a.lower, class, pos)?;
        let upper = self.canon_endpoint(&a.upper, class, pos)?;
        let bound = self.bound_opt(class, pos)?;
        let surface = if lower == upper {
            Surface::Invariant
        } else if lower.is_null() && upper == bound {
            Surface::Unbounded
        } else if lower.is_null() {
            Surface::Extends
        } else if upper == bound {
            Surface::Super
        } else {
            Surface::Between
        };
        Ok(ArgInterval { lower, upper, surface })
    }

    fn canon_endpoint(&self, x: &TypeTerm, class: &str, pos: usize) -> Result<TypeTerm> {
        let mut x = self.canon(x)?;
        let own = self.bound_opt(class, pos)?;
        if x == own || x.is_null() {
            return Ok(x);
        }
        if let TypeTerm::SelfBound(sb) = &x {
            if TypeTerm::SelfBound(sb.clone()) != own {
                x = self.canon(&self.wildcard_instance(&sb.bound_class)?)?;
            }
        }
        if let TypeTerm::SelfBound(sb) = &own {
            if x == self.canon(&self.wildcard_instance(&sb.bound_class)?)? {
                x = own;
            }
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn obj() -> TypeExpr {
        TypeExpr::class(OBJECT, vec![])
    }

    fn decl(name: &str, params: &[&str], sup: Option<TypeExpr>) -> ClassDecl {
        ClassDecl {
            name: name.into(),
            params: params
                .iter()
                .map(|p| TypeParam {
                    name: p.to_string(),
                    bound: None,
                })
                .collect(),
            superclass: sup,
        }
    }

    #[test]
    fn empty_table_has_only_object() {
        let t = validate_class_table(&ClassTable::default()).unwrap();
        assert_eq!(t.classes().len(), 1);
        let order = subclass_order(&t);
        assert_eq!(order.len(), 1);
        assert_eq!(order.relation_size(), 1);
    }

    #[test]
    fn two_cycle_is_rejected() {
        let t = ClassTable {
            decls: vec![
                decl("A", &[], Some(TypeExpr::class("B", vec![]))),
                decl("B", &[], Some(TypeExpr::class("A", vec![]))),
            ],
        };
        assert!(matches!(validate_class_table(&t), Err(Error::CyclicSubclassing(_))));
    }

    #[test]
    fn duplicates_unknowns_and_arity() {
        let dup = ClassTable {
            decls: vec![decl("A", &[], None), decl("A", &[], None)],
        };
        assert_eq!(validate_class_table(&dup).unwrap_err(), Error::DuplicateClass("A".into()));
        let object_again = ClassTable {
            decls: vec![decl("Object", &[], None)],
        };
        assert!(matches!(validate_class_table(&object_again), Err(Error::DuplicateClass(_))));
        let unknown = ClassTable {
            decls: vec![decl("A", &[], Some(TypeExpr::class("B", vec![])))],
        };
        assert_eq!(validate_class_table(&unknown).unwrap_err(), Error::UnknownClass("B".into()));
        let arity = ClassTable {
            decls: vec![
                decl("List", &["T"], None),
                decl("A", &[], Some(TypeExpr::class("List", vec![]))),
            ],
        };
        assert_eq!(
            validate_class_table(&arity).unwrap_err(),
            Error::ArityMismatch {
                class: "List".into(),
                expected: 1,
                found: 0
            }
        );
    }

    #[test]
    fn three_chain_closure() {
        let t = ClassTable {
            decls: vec![
                decl("C", &[], None),
                decl("B", &[], Some(TypeExpr::class("C", vec![]))),
                decl("A", &[], Some(TypeExpr::class("B", vec![]))),
            ],
        };
        let t = validate_class_table(&t).unwrap();
        let order = subclass_order(&t);
        // 4 reflexive + A<B, A<C, B<C + 3 pairs into Object
        assert_eq!(order.relation_size(), 10);
        let chain = order.restrict(|n| n != OBJECT);
        assert_eq!(chain.relation_size(), 6);
        assert!(t.is_subclass("A", "C"));
        order.check_partial_order().unwrap();
    }

    #[test]
    fn f_bounded_is_flagged_and_marked() {
        let t = ClassTable {
            decls: vec![ClassDecl {
                name: "Comparable".into(),
                params: vec![TypeParam {
                    name: "T".into(),
                    bound: Some(TypeExpr::class(
                        "Comparable",
                        vec![ArgExpr::Exact(TypeExpr::Param("T".into()))],
                    )),
                }],
                superclass: Some(obj()),
            }],
        };
        let t = validate_class_table(&t).unwrap();
        let info = t.class("Comparable").unwrap();
        assert!(info.f_bounded());
        assert!(matches!(t.bound_type("Comparable", 0), TypeTerm::SelfBound(_)));
        assert_eq!(t.bound_class("Comparable", 0), "Comparable");
        assert_eq!(t.wildcard_instance("Comparable").unwrap().to_string(), "Comparable<?>");
    }

    #[test]
    fn mutually_recursive_bounds_are_rejected() {
        let wild = |c: &str| TypeExpr::class(c, vec![ArgExpr::Wildcard]);
        let t = ClassTable {
            decls: vec![
                ClassDecl {
                    name: "A".into(),
                    params: vec![TypeParam {
                        name: "T".into(),
                        bound: Some(wild("B")),
                    }],
                    superclass: None,
                },
                ClassDecl {
                    name: "B".into(),
                    params: vec![TypeParam {
                        name: "S".into(),
                        bound: Some(wild("A")),
                    }],
                    superclass: None,
                },
            ],
        };
        assert!(matches!(validate_class_table(&t), Err(Error::CyclicBound(_))));
    }
}
