//! Class tables shipped with the crate, used by tests and the demo.

use crate::error::Result;
use crate::parser::{load_class_table, SourceText};
use crate::table::ValidatedClassTable;

pub struct CorpusTable {
    pub name: &'static str,
    pub source: &'static str,
    /// Deepest level that stays small enough for exhaustive checks.
    pub max_depth: usize,
}

impl CorpusTable {
    pub fn load(&self) -> Result<ValidatedClassTable> {
        load_class_table(&SourceText::new(self.source, self.name))
    }
}

pub const CORPUS: &[CorpusTable] = &[
    CorpusTable {
        name: "alist",
        source: include_str!("../corpus/alist.gs"),
        max_depth: 2,
    },
    CorpusTable {
        name: "sample",
        source: include_str!("../corpus/sample.gs"),
        max_depth: 2,
    },
    CorpusTable {
        name: "fbounded",
        source: include_str!("../corpus/fbounded.gs"),
        max_depth: 2,
    },
    CorpusTable {
        name: "bounded",
        source: include_str!("../corpus/bounded.gs"),
        max_depth: 2,
    },
    CorpusTable {
        name: "boxes",
        source: include_str!("../corpus/boxes.gs"),
        max_depth: 2,
    },
    CorpusTable {
        name: "pair",
        source: include_str!("../corpus/pair.gs"),
        max_depth: 1,
    },
];

pub fn corpus_table(name: &str) -> Option<&'static CorpusTable> {
    CORPUS.iter().find(|t| t.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_tables_load() {
        for t in CORPUS {
            t.load().unwrap_or_else(|e| panic!("{}: {e}", t.name));
        }
        assert_eq!(corpus_table("sample").unwrap().load().unwrap().classes().len(), 6);
    }
}
