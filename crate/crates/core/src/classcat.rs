//! The category of classes: one arrow from each generic class to the
//! erasure of each parameter bound, and the functor sending a class to its
//! instantiations.

use std::collections::BTreeMap;
use std::fmt;

use crate::category::{CategoryPresentation, FunctorInstance, DEFAULT_HOM_CAP};
use crate::construct::{construct, ConstructOptions};
use crate::error::{Error, Result};
use crate::table::ValidatedClassTable;
use crate::types::{ArgInterval, Surface, TypeTerm};

/// Generator name for parameter `param` of `class`, e.g. `List.T`.
pub fn generator_name(table: &ValidatedClassTable, class: &str, param: usize) -> String {
    let info = table.class(class).expect("declared class");
    format!("{class}.{}", info.params[param].name)
}

/// Objects are all classes, `Object` included. No relations; F-bounded
/// parameters give self-loops.
pub fn build_class_category(table: &ValidatedClassTable, hom_cap: usize) -> Result<CategoryPresentation> {
    let objects = table.subclass_poset().nodes().to_vec();
    let mut gens = Vec::new();
    for c in table.generic_classes() {
        for j in 0..c.arity() {
            gens.push((generator_name(table, &c.name, j), c.name.clone(), table.bound_class(&c.name, j).to_string()));
        }
    }
    CategoryPresentation::new(objects, gens, [], hom_cap)
}

pub fn default_class_category(table: &ValidatedClassTable) -> Result<CategoryPresentation> {
    build_class_category(table, DEFAULT_HOM_CAP)
}

fn require_object_bounds(table: &ValidatedClassTable) -> Result<()> {
    for c in table.generic_classes() {
        for j in 0..c.arity() {
            if !table.bound_type(&c.name, j).is_object() {
                return Err(Error::UnsupportedBound {
                    class: c.name.clone(),
                    param: j + 1,
                    reason: format!("bound {} is not Object", table.bound_type(&c.name, j)),
                });
            }
        }
    }
    Ok(())
}

/// Sends a class to its instantiations in the depth-`depth` order, `Object`
/// to every non-`Null` type, and `C.T` to the upper endpoint of that
/// argument. Only defined when every bound is `Object`.
pub fn instantiation_functor(table: &ValidatedClassTable, depth: usize) -> Result<FunctorInstance> {
    require_object_bounds(table)?;
    let graph = construct(table, depth, &ConstructOptions::default())?;
    let level = graph.last();
    let mut object_map: BTreeMap<String, Vec<String>> = table
        .subclass_poset()
        .nodes()
        .iter()
        .map(|c| (c.clone(), Vec::new()))
        .collect();
    for t in level.nodes() {
        if t.is_null() {
            continue;
        }
        object_map.get_mut("Object").expect("Object is a class").push(t.to_string());
        if let Some(h) = t.head() {
            if h != "Object" {
                object_map.get_mut(h).expect("head is a class").push(t.to_string());
            }
        }
    }
    let mut arrow_map = BTreeMap::new();
    for c in table.generic_classes() {
        for j in 0..c.arity() {
            let f = level
                .nodes()
                .iter()
                .filter(|t| t.head() == Some(c.name.as_str()))
                .map(|t| (t.to_string(), t.args()[j].upper.to_string()))
                .collect();
            arrow_map.insert(generator_name(table, &c.name, j), f);
        }
    }
    FunctorInstance::new(object_map, arrow_map)
}

/// The most generic instance `C<X_1 extends B_1, …>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkolemTemplate {
    pub class: String,
    /// Placeholder name and its bound.
    pub vars: Vec<(String, TypeTerm)>,
}

impl fmt::Display for SkolemTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.class)?;
        if self.vars.is_empty() {
            return Ok(());
        }
        let parts: Vec<String> = self.vars.iter().map(|(x, b)| format!("{x} extends {b}")).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

impl SkolemTemplate {
    /// Fills the placeholders. Returns `None` when an argument is not a
    /// well-formed interval within its placeholder's bound.
    pub fn fill(&self, table: &ValidatedClassTable, args: &[ArgInterval]) -> Option<TypeTerm> {
        if args.len() != self.vars.len() {
            return None;
        }
        let t = if args.is_empty() {
            TypeTerm::simple(self.class.clone())
        } else {
            TypeTerm::class(self.class.clone(), args.to_vec())
        };
        crate::decider::check_well_formed(table, &t).ok()?;
        Some(table.canonical(&t))
    }

    /// Every filling whose argument endpoints come from `endpoints`, in
    /// canonical form, sorted and deduplicated.
    pub fn fillings(&self, table: &ValidatedClassTable, endpoints: &[TypeTerm]) -> Vec<TypeTerm> {
        let choices: Vec<Vec<ArgInterval>> = self
            .vars
            .iter()
            .map(|(_, b)| {
                let mut v = vec![ArgInterval::unbounded(b.clone())];
                for x in endpoints {
                    v.push(ArgInterval::extends(x.clone()));
                    v.push(ArgInterval::super_of(x.clone(), b.clone()));
                    v.push(ArgInterval::invariant(x.clone()));
                }
                v.retain(|a| a.surface != Surface::Between);
                v
            })
            .collect();
        let mut out = Vec::new();
        let mut tuple: Vec<ArgInterval> = Vec::new();
        fn rec(
            t: &SkolemTemplate,
            table: &ValidatedClassTable,
            choices: &[Vec<ArgInterval>],
            tuple: &mut Vec<ArgInterval>,
            out: &mut Vec<TypeTerm>,
        ) {
            if tuple.len() == choices.len() {
                out.extend(t.fill(table, tuple));
                return;
            }
            for a in &choices[tuple.len()] {
                tuple.push(a.clone());
                rec(t, table, choices, tuple, out);
                tuple.pop();
            }
        }
        rec(self, table, &choices, &mut tuple, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

pub fn skolem_template(table: &ValidatedClassTable, c: &str) -> Result<SkolemTemplate> {
    let info = table.require(c)?;
    let vars = (0..info.arity())
        .map(|j| (format!("X_{}", j + 1), table.bound_type(c, j).clone()))
        .collect();
    Ok(SkolemTemplate {
        class: c.to_string(),
        vars,
    })
}
