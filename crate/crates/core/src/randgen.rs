//! Seeded generators for random types and token soup.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::decider::check_well_formed;
use crate::table::ValidatedClassTable;
use crate::types::{ArgInterval, TypeTerm};

const ATTEMPTS: usize = 64;

/// A random well-formed type of depth at most `max_depth`, or `None` if
/// repeated draws keep producing ill-formed types.
pub fn random_type(rng: &mut impl Rng, table: &ValidatedClassTable, max_depth: usize) -> Option<TypeTerm> {
    (0..ATTEMPTS).find_map(|_| {
        let t = draw(rng, table, max_depth, false);
        check_well_formed(table, &t).ok().map(|_| t)
    })
}

fn draw(rng: &mut impl Rng, table: &ValidatedClassTable, depth: usize, allow_null: bool) -> TypeTerm {
    let classes = table.classes();
    let generic = depth > 0 && classes.iter().any(|c| c.is_generic()) && rng.gen_bool(0.6);
    if allow_null && rng.gen_bool(0.1) {
        return TypeTerm::Null;
    }
    let pool: Vec<_> = classes.iter().filter(|c| c.is_generic() == generic).collect();
    let Some(c) = pool.choose(rng) else {
        return TypeTerm::object();
    };
    if !generic {
        return TypeTerm::simple(c.name.clone());
    }
    let args = (0..c.arity())
        .map(|j| {
            let bound = table.bound_type(&c.name, j).clone();
            let x = draw(rng, table, depth - 1, true);
            match rng.gen_range(0..4) {
                0 => ArgInterval::unbounded(bound),
                1 => ArgInterval::extends(x),
                2 => ArgInterval::super_of(x, bound),
                _ => ArgInterval::invariant(x),
            }
        })
        .collect();
    TypeTerm::class(c.name.clone(), args)
}

const VOCAB: &[&str] = &[
    "class", "extends", "super", "Null", "<", ">", ",", "?", "A", "B", "List", "T", "Object", "//", "\n", " ", "@",
    "{", "}", "1", "x_", ";", "<<", "Comparable",
];

/// `len` tokens drawn uniformly from a small vocabulary, space-joined.
pub fn random_tokens(rng: &mut impl Rng, len: usize) -> String {
    (0..len).map(|_| *VOCAB.choose(rng).expect("nonempty")).collect::<Vec<_>>().join(" ")
}
