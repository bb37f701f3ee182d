//! Generic nominal subtyping with use-site wildcards, modelled over ground
//! types and finite class tables.
//!
//! The crate provides a declarative subtype decider, a level-wise
//! construction of the subtyping order out of copy/flip/merge/flatten graph
//! transformations, the erasure/instantiation Galois connection between
//! generic subtyping and subclassing, and a brute-force Yoneda check over
//! the category of generic classes.

pub mod category;
pub mod classcat;
pub mod construct;
pub mod corpus;
pub mod decider;
pub mod erasure;
pub mod error;
pub mod export;
pub mod laws;
pub mod oracle;
pub mod parser;
pub mod poset;
pub mod randgen;
pub mod table;
pub mod types;

pub use decider::{canonical_form, check_well_formed, contains, is_subtype, Decider, Mutation};
pub use error::{Error, ErrorKind, Result};
pub use parser::{load_class_table, parse_class_table, parse_type, SourceText};
pub use poset::{Digraph, Poset, Provenance};
pub use table::{subclass_order, validate_class_table, ClassTable, ValidatedClassTable};
pub use types::{render_type, type_depth, ArgInterval, Surface, TypeTerm};

pub use category::{natural_transformations, yoneda_check, CategoryPresentation, FunctorInstance};
pub use classcat::{build_class_category, instantiation_functor, skolem_template};
pub use construct::{construct, jsm_step, ConstructOptions, SubtypingGraph};
pub use erasure::{canonical_instantiation, erase, galois_check, monad_laws_check, AdjunctionReport};
pub use export::{ExportOptions, GraphExport};
pub use laws::{run_laws, LawOutcome, LawSuite};
