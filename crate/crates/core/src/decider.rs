//! Declarative subtyping for ground generic types.
//!
//! `sub <: sup` holds iff one of the following derives it:
//!
//! * R1 `sub == sup`
//! * R2 `sub` is `Null`
//! * R3 `sup` is `Object`
//! * R4 same head class and every argument of `sub` is contained in the
//!   corresponding argument of `sup`
//! * R5 the declared supertype of `sub`'s class, with `sub`'s arguments
//!   substituted, is a subtype of `sup`
//!
//! Containment is interval inclusion: `[l1, u1] ⊑ [l2, u2]` iff `l2 <: l1`
//! and `u1 <: u2`. It covers covariant (`? extends`), contravariant
//! (`? super`) and invariant-into-wildcard arguments with one rule.
//!
//! An F-bounded parameter's bound is the self-bound marker. A class type is
//! below it iff its class is a subclass of the bound's erasure; the marker
//! itself is below whatever its `?`-instantiation is below.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::table::ValidatedClassTable;
use crate::types::{ArgInterval, TypeTerm};

/// Deliberate defects used to show that the oracle checks can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Containment compares lower endpoints covariantly.
    ReversedLowerEndpoint,
}

/// A memoizing subtype decider over one class table. Safe to share across
/// threads; the memo is internally locked.
pub struct Decider<'t> {
    table: &'t ValidatedClassTable,
    memo: Mutex<HashMap<(TypeTerm, TypeTerm), bool>>,
    mutation: Option<Mutation>,
}

impl<'t> Decider<'t> {
    pub fn new(table: &'t ValidatedClassTable) -> Self {
        Decider {
            table,
            memo: Mutex::new(HashMap::new()),
            mutation: None,
        }
    }

    pub fn with_mutation(table: &'t ValidatedClassTable, mutation: Option<Mutation>) -> Self {
        Decider {
            mutation,
            ..Decider::new(table)
        }
    }

    pub fn table(&self) -> &'t ValidatedClassTable {
        self.table
    }

    pub fn contains(&self, a1: &ArgInterval, a2: &ArgInterval) -> bool {
        let lower_ok = match self.mutation {
            Some(Mutation::ReversedLowerEndpoint) => self.is_subtype(&a1.lower, &a2.lower),
            None => self.is_subtype(&a2.lower, &a1.lower),
        };
        lower_ok && self.is_subtype(&a1.upper, &a2.upper)
    }

    pub fn is_subtype(&self, sub: &TypeTerm, sup: &TypeTerm) -> bool {
        if sub == sup || sub.is_null() || sup.is_object() {
            return true;
        }
        match (sub, sup) {
            (_, TypeTerm::Null) => false,
            (_, TypeTerm::SelfBound(target)) => {
                let class = match sub {
                    TypeTerm::SelfBound(sb) => &sb.bound_class,
                    TypeTerm::Class { name, .. } => name,
                    TypeTerm::Null => unreachable!(),
                };
                self.table.is_subclass(class, &target.bound_class)
            }
            (TypeTerm::SelfBound(sb), _) => self.is_subtype(&self.table.unfold_self_bound(sb), sup),
            (TypeTerm::Class { .. }, TypeTerm::Class { .. }) => {
                let key = (sub.clone(), sup.clone());
                if let Some(&hit) = self.memo.lock().unwrap().get(&key) {
                    return hit;
                }
                let answer = self.class_subtype(sub, sup);
                self.memo.lock().unwrap().insert(key, answer);
                answer
            }
            (TypeTerm::Null, _) => unreachable!(),
        }
    }

    fn class_subtype(&self, sub: &TypeTerm, sup: &TypeTerm) -> bool {
        let (TypeTerm::Class { name: c, args: a }, TypeTerm::Class { name: d, args: b }) = (sub, sup) else {
            unreachable!()
        };
        if c == d {
            // R5 climbs to strictly higher classes and never returns to `c`
            return a.len() == b.len() && a.iter().zip(b).all(|(x, y)| self.contains(x, y));
        }
        if !self.table.is_subclass(c, d) {
            return false;
        }
        match self.table.supertype_of(sub) {
            Some(s) => self.is_subtype(&s, sup),
            None => false,
        }
    }

    pub fn canonical_form(&self, t: &TypeTerm) -> TypeTerm {
        self.table.canonical(t)
    }
}

pub fn contains(table: &ValidatedClassTable, a1: &ArgInterval, a2: &ArgInterval) -> bool {
    Decider::new(table).contains(a1, a2)
}

pub fn is_subtype(table: &ValidatedClassTable, sub: &TypeTerm, sup: &TypeTerm) -> bool {
    Decider::new(table).is_subtype(sub, sup)
}

/// Canonical representative: equal denotations, such as `List<?>` and
/// `List<? extends Object>`, become structurally identical. Idempotent.
pub fn canonical_form(table: &ValidatedClassTable, t: &TypeTerm) -> TypeTerm {
    table.canonical(t)
}

/// Checks arities and that every argument interval is non-empty and within
/// its parameter's bound.
pub fn check_well_formed(table: &ValidatedClassTable, t: &TypeTerm) -> Result<()> {
    well_formed_with(&Decider::new(table), t)
}

pub(crate) fn well_formed_with(dec: &Decider<'_>, t: &TypeTerm) -> Result<()> {
    let TypeTerm::Class { name, args } = t else {
        return Ok(());
    };
    let table = dec.table();
    let info = table.require(name)?;
    if info.arity() != args.len() {
        return Err(Error::ArityMismatch {
            class: name.clone(),
            expected: info.arity(),
            found: args.len(),
        });
    }
    let ill = |reason: String| Error::IllFormedArgument {
        ty: t.to_string(),
        reason,
    };
    for (j, a) in args.iter().enumerate() {
        well_formed_with(dec, &a.lower)?;
        well_formed_with(dec, &a.upper)?;
        if a.upper.is_null() {
            return Err(ill(format!("argument {} has upper endpoint Null", j + 1)));
        }
        if !dec.is_subtype(&a.lower, &a.upper) {
            return Err(ill(format!("argument {} is empty: {} is not below {}", j + 1, a.lower, a.upper)));
        }
        let bound = table.bound_type(name, j);
        if !dec.is_subtype(&a.upper, bound) {
            return Err(ill(format!("argument {} exceeds the bound {}", j + 1, bound)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{load_class_table, parse_type, SourceText};

    const ALIST: &str = "class A class List<T>";
    const SAMPLE: &str = "class Number class Integer extends Number class String \
                          class List<T> class LinkedList<T> extends List<T>";

    fn tbl(src: &str) -> ValidatedClassTable {
        load_class_table(&SourceText::inline(src)).unwrap()
    }

    fn ty(t: &ValidatedClassTable, s: &str) -> TypeTerm {
        parse_type(&SourceText::inline(s), t).unwrap()
    }

    #[test]
    fn containment_examples() {
        let t = tbl(SAMPLE);
        let d = Decider::new(&t);
        let s = ArgInterval::invariant(TypeTerm::simple("String"));
        assert!(d.contains(&s, &ArgInterval::unbounded(TypeTerm::object())));
        assert!(d.contains(&s, &s));
        let ext_int = ArgInterval::extends(TypeTerm::simple("Integer"));
        let ext_num = ArgInterval::extends(TypeTerm::simple("Number"));
        assert!(d.contains(&ext_int, &ext_num));
        assert!(!d.contains(&ext_num, &ext_int));
    }

    #[test]
    fn linked_list_instances_below_list_wildcard() {
        let t = tbl(SAMPLE);
        let d = Decider::new(&t);
        let top = ty(&t, "List<? extends Object>");
        for arg in ["String", "Integer", "? extends Number", "? super Integer", "?"] {
            let a = ty(&t, &format!("LinkedList<{arg}>"));
            assert!(d.is_subtype(&a, &top), "{a}");
        }
        assert!(!d.is_subtype(&ty(&t, "List<String>"), &ty(&t, "LinkedList<String>")));
    }

    #[test]
    fn wildcard_lattice_over_a() {
        let t = tbl(ALIST);
        let d = Decider::new(&t);
        let s = |x: &str| ty(&t, x);
        assert!(d.is_subtype(&s("List<A>"), &s("List<? extends A>")));
        assert!(d.is_subtype(&s("List<? extends A>"), &s("List<?>")));
        assert!(d.is_subtype(&s("List<A>"), &s("List<? super A>")));
        assert!(d.is_subtype(&s("List<? super A>"), &s("List<?>")));
        assert!(d.is_subtype(&s("List<Object>"), &s("List<? super A>")));
        assert!(!d.is_subtype(&s("List<? extends A>"), &s("List<A>")));
        assert!(!d.is_subtype(&s("List<Object>"), &s("List<A>")));
        assert!(!d.is_subtype(&s("List<A>"), &s("List<Object>")));
    }

    #[test]
    fn canonical_examples() {
        let t = tbl(ALIST);
        let d = Decider::new(&t);
        let c = d.canonical_form(&ty(&t, "List<? extends Object>"));
        assert_eq!(c, ty(&t, "List<?>"));
        assert_eq!(c.to_string(), "List<?>");
        let sup_obj = ty(&t, "List<? super Object>");
        let c = d.canonical_form(&sup_obj);
        assert_eq!(c.to_string(), "List<Object>");
        assert!(d.is_subtype(&sup_obj, &ty(&t, "List<Object>")));
        assert!(d.is_subtype(&ty(&t, "List<Object>"), &sup_obj));
        assert_eq!(d.canonical_form(&c), c);
    }

    #[test]
    fn f_bounded_marker_semantics() {
        let t = tbl("class Comparable<T extends Comparable<T>> class MyStr extends Comparable<MyStr>");
        let d = Decider::new(&t);
        let any = ty(&t, "Comparable<?>");
        assert!(d.is_subtype(&ty(&t, "MyStr"), &any));
        assert!(d.is_subtype(&ty(&t, "Comparable<MyStr>"), &any));
        assert!(d.is_subtype(&ty(&t, "Comparable<? super MyStr>"), &any));
        // one unfolding of the bound, then cut
        let unfolded = ty(&t, "Comparable<? extends Comparable<?>>");
        assert_eq!(d.canonical_form(&unfolded), d.canonical_form(&any));
        assert!(d.is_subtype(&unfolded, &any) && d.is_subtype(&any, &unfolded));
        assert!(matches!(
            parse_type(&SourceText::inline("Comparable<Object>"), &t),
            Err(Error::IllFormedArgument { .. })
        ));
    }

    #[test]
    fn mutation_breaks_contravariance() {
        let t = tbl(ALIST);
        let d = Decider::with_mutation(&t, Some(Mutation::ReversedLowerEndpoint));
        assert!(!d.is_subtype(&ty(&t, "List<? super A>"), &ty(&t, "List<?>")));
    }
}
