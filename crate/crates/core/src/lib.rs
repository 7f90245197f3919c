//! Three-way decision rule induction from complete and incomplete
//! information tables.
//!
//! The crate covers two routes from a table to accept / reject / non-commit
//! rules:
//!
//! * the computational route, built on equivalence classes (complete tables)
//!   and graded similarity between objects (incomplete tables);
//! * the conceptual route, built on meaning sets of conjunctive formulas
//!   (complete tables) and graded satisfiability (incomplete tables).
//!
//! All degrees are exact rationals ([`Degree`]), so thresholds such as
//! `0.3` against `1/3` compare without rounding.
//!
//! ```
//! use threeway_core::{parse_table, similarity, TNormKind};
//!
//! let src = "@attributes a b\n@domain a 0 1\n@domain b 0 1\n@objects\nx 0 *\ny 0 1\n";
//! let st = parse_table(src).unwrap().to_set_valued().unwrap();
//! let (x, y) = (st.universe().id("x").unwrap(), st.universe().id("y").unwrap());
//! let g = similarity::similarity(&st, &st.schema().all(), TNormKind::Product, x, y);
//! assert_eq!(g.to_string(), "1/2");
//! ```

pub mod complete;
pub mod error;
pub mod fuzzy;
pub mod language;
pub mod oracle;
pub mod rules;
pub mod satisfiability;
pub mod similarity;
pub mod table;

pub use complete::{DescribedSet, Partition, StructuredRegions};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use fuzzy::{Connectives, Degree, ImplicationKind, TNormKind};
pub use language::{enumerate_cdl, Atom, Formula, Mode};
pub use rules::{Decision, DescriptionRegions, Method, Provenance, Rule, RuleSet};
pub use table::{
    parse_table, AttrId, AttrSet, AttributeSchema, Cell, CompleteTable, IncompleteTable,
    ObjectId, ObjectSet, Schema, SetValuedTable, Token, Universe, ValueId,
};

/// Enumeration guards shared by every exhaustive computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_worlds: u64,
    pub max_formulas: u64,
    pub max_closure_subsets: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_worlds: table::DEFAULT_MAX_WORLDS,
            max_formulas: language::DEFAULT_MAX_FORMULAS,
            max_closure_subsets: complete::DEFAULT_MAX_CLOSURE_SUBSETS,
        }
    }
}

#[cfg(test)]
mod testing;
