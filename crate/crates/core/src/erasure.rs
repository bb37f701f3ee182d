//! Erasure and `?`-instantiation between types and classes.
//!
//! `erase` keeps a type's head class. `canonical_instantiation` goes back
//! with every parameter set to `?`. Between the type order and the subclass
//! order they form a Galois connection:
//!
//! ```text
//! erase(a) ≤ b   iff   a <: canonical_instantiation(b)
//! ```

use serde::{Deserialize, Serialize};

use crate::construct::{construct, ConstructOptions};
use crate::decider::Decider;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::table::ValidatedClassTable;
use crate::types::TypeTerm;

pub fn erase(t: &TypeTerm) -> Result<String> {
    match t {
        TypeTerm::Null => Err(Error::NullHasNoErasure),
        TypeTerm::Class { name, .. } => Ok(name.clone()),
        TypeTerm::SelfBound(sb) => Ok(sb.bound_class.clone()),
    }
}

/// `c<?, …, ?>` for a generic class, `c` otherwise. F-bounded parameters
/// take their bound once, with `?` inside, and stop there.
pub fn canonical_instantiation(table: &ValidatedClassTable, c: &str) -> Result<TypeTerm> {
    Ok(table.canonical(&table.wildcard_instance(c)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// `erase(a) ≤ b` but not `a <: G(b)`.
    ForwardFailed,
    /// `a <: G(b)` but not `erase(a) ≤ b`.
    BackwardFailed,
    UnitFailed,
    CounitFailed,
    CounitEqualityFailed,
    ClosureIdempotenceFailed,
    ErasureNotMonotone,
    InstantiationNotMonotone,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub a: String,
    pub b: String,
    pub side: Side,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionReport {
    pub checked_pairs: usize,
    pub violations: Vec<Violation>,
    pub depth: usize,
    /// Pairs whose class is generic; the rest use the plain embedding.
    #[serde(skip)]
    pub generic_pairs: usize,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    fn push(&mut self, a: impl ToString, b: impl ToString, side: Side) {
        self.violations.push(Violation {
            a: a.to_string(),
            b: b.to_string(),
            side,
        });
    }

    fn finish(mut self) -> Self {
        self.violations.sort();
        self
    }
}

fn level(table: &ValidatedClassTable, depth: usize) -> Result<Poset<TypeTerm>> {
    let g = construct(table, depth, &ConstructOptions::default())?;
    Ok(g.last().clone())
}

fn class_names(table: &ValidatedClassTable) -> Vec<&str> {
    table.subclass_poset().nodes().iter().map(String::as_str).collect()
}

/// Both sides of the biconditional for one pair.
pub fn galois_sides(table: &ValidatedClassTable, dec: &Decider<'_>, a: &TypeTerm, b: &str) -> Result<(bool, bool)> {
    let left = table.is_subclass(&erase(a)?, b);
    let right = dec.is_subtype(a, &canonical_instantiation(table, b)?);
    Ok((left, right))
}

pub fn galois_check(table: &ValidatedClassTable, depth: usize) -> Result<AdjunctionReport> {
    galois_check_on(table, &level(table, depth)?, depth)
}

/// The biconditional for every non-`Null` type of `level` and every class,
/// plus monotonicity of both maps.
pub fn galois_check_on(table: &ValidatedClassTable, level: &Poset<TypeTerm>, depth: usize) -> Result<AdjunctionReport> {
    let dec = Decider::new(table);
    let mut r = AdjunctionReport {
        depth,
        ..Default::default()
    };
    let classes = class_names(table);
    for a in level.nodes().iter().filter(|a| !a.is_null()) {
        for &b in &classes {
            r.checked_pairs += 1;
            if table.class(b).is_some_and(|c| c.is_generic()) {
                r.generic_pairs += 1;
            }
            match galois_sides(table, &dec, a, b)? {
                (true, false) => r.push(a, b, Side::ForwardFailed),
                (false, true) => r.push(a, b, Side::BackwardFailed),
                _ => {}
            }
        }
    }
    for (i, j) in level.strict_pairs() {
        let (s, t) = (&level.nodes()[i], &level.nodes()[j]);
        if s.is_null() {
            continue;
        }
        if !table.is_subclass(&erase(s)?, &erase(t)?) {
            r.push(s, erase(t)?, Side::ErasureNotMonotone);
        }
    }
    for &b in &classes {
        for &b2 in &classes {
            if b != b2 && table.is_subclass(b, b2) {
                let (gb, gb2) = (canonical_instantiation(table, b)?, canonical_instantiation(table, b2)?);
                if !dec.is_subtype(&gb, &gb2) {
                    r.push(gb, b2, Side::InstantiationNotMonotone);
                }
            }
        }
    }
    Ok(r.finish())
}

pub fn monad_laws_check(table: &ValidatedClassTable, depth: usize) -> Result<AdjunctionReport> {
    monad_laws_check_on(table, &level(table, depth)?, depth)
}

/// Unit `a <: G(F(a))`, counit `F(G(b)) = b`, and idempotence of the
/// closure `G∘F`.
pub fn monad_laws_check_on(table: &ValidatedClassTable, level: &Poset<TypeTerm>, depth: usize) -> Result<AdjunctionReport> {
    let dec = Decider::new(table);
    let mut r = AdjunctionReport {
        depth,
        ..Default::default()
    };
    let close = |t: &TypeTerm| -> Result<TypeTerm> { canonical_instantiation(table, &erase(t)?) };
    for a in level.nodes().iter().filter(|a| !a.is_null()) {
        r.checked_pairs += 1;
        let fa = erase(a)?;
        let gfa = close(a)?;
        if !dec.is_subtype(a, &gfa) {
            r.push(a, &fa, Side::UnitFailed);
        }
        if table.canonical(&close(&gfa)?) != table.canonical(&gfa) {
            r.push(a, &fa, Side::ClosureIdempotenceFailed);
        }
    }
    for b in class_names(table) {
        r.checked_pairs += 1;
        if table.class(b).is_some_and(|c| c.is_generic()) {
            r.generic_pairs += 1;
        }
        let gb = canonical_instantiation(table, b)?;
        let fgb = erase(&gb)?;
        if !table.is_subclass(&fgb, b) {
            r.push(&gb, b, Side::CounitFailed);
        }
        if fgb != b {
            r.push(&gb, b, Side::CounitEqualityFailed);
        }
    }
    Ok(r.finish())
}
