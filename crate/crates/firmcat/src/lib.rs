//! A finite-category engine for monoidal categories with subunits and
//! restriction structure.
//!
//! Everything here is a table: a category is a composition table over dense
//! indices, monoidal structure is a pair of tensor tables plus explicit
//! coherence components, and restriction structure is one more column. All
//! laws (associativity, coherence, the restriction axioms, the tensor
//! restriction axioms) are checked by exhaustive enumeration and reported
//! with explicit witnesses, never assumed.
//!
//! The headline construction is [`sconstr::build_s_construction`]: given a
//! strict firm braided monoidal category it builds a new category whose
//! morphisms are equivalence classes of pairs `[s, f]` of a subunit `s` and
//! a base morphism `f : A (x) S -> B`. The result carries a restriction and
//! a corestriction, and the round trip theorems relating it to the
//! subcategory of total maps are verified by [`sconstr::roundtrip_ts`] and
//! [`sconstr::roundtrip_st`].
//!
//! # Quick start
//!
//! ```
//! use firmcat::examples;
//! use firmcat::monoidal::enumerate_subunits;
//!
//! let chain = examples::chain_semilattice(3).unwrap();
//! let data = examples::from_semilattice(&chain);
//! let m = data.monoidal.as_ref().unwrap();
//! let subs = enumerate_subunits(&data.cat, m);
//! assert_eq!(subs.len(), 3);
//! ```

#![warn(missing_docs)]

pub mod cli;
pub mod examples;
pub mod fincat;
pub mod format;
pub mod iso;
pub mod monoidal;
pub mod restriction;
pub mod sconstr;

use fincat::FinCategory;
use monoidal::MonoidalData;
use restriction::{CorestrictionData, RestrictionData};

/// Crate-wide error type.
///
/// Shape errors (`MalformedTables`) are raised by constructors; semantic
/// law failures are never errors, they are reported as violations inside a
/// [`fincat::LawReport`]. Operations whose preconditions are themselves law
/// suites raise `PrerequisiteFailed` naming the first suite that failed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A table has the wrong length, an index is out of range, or a stored
    /// morphism has the wrong domain or codomain.
    #[error("malformed tables: {0}")]
    MalformedTables(String),
    /// An enumeration or search hit its configured node budget.
    #[error("search budget exceeded after {0} nodes")]
    SearchBudgetExceeded(u64),
    /// A generator was asked for an instance above its size cap.
    #[error("size budget exceeded: {0}")]
    SizeBudgetExceeded(String),
    /// The category is not firm, so the requested semilattice operation on
    /// subunits is unavailable.
    #[error("not a firm monoidal category: {0}")]
    NotFirm(String),
    /// The monoidal data has non-identity unitor or associator components.
    #[error("monoidal structure is not strict: {0}")]
    NotStrict(String),
    /// The monoidal data carries no braiding.
    #[error("no braiding present")]
    NotBraided,
    /// The given morphism is not a mono into the unit with invertible
    /// tensor action, so it names no subunit.
    #[error("morphism {0} is not a subunit")]
    NotASubunit(fincat::MorId),
    /// A law suite that the requested operation depends on has violations.
    #[error("prerequisite suite {0} failed")]
    PrerequisiteFailed(&'static str),
    /// An internal consistency check failed; the message names it.
    #[error("check failed: {0}")]
    CheckFailed(String),
}

/// A category together with whatever structure it carries.
///
/// Generators in [`examples`] return this, and the document format in
/// [`format`] compiles to and from it. `monoidal` must be present whenever
/// `restriction`-aware monoidal suites or the S-construction are requested;
/// plain categorical checks need only `cat`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryData {
    /// The underlying finite category.
    pub cat: FinCategory,
    /// Tensor tables and coherence components, if the category is monoidal.
    pub monoidal: Option<MonoidalData>,
    /// The restriction operator, if one is declared.
    pub restriction: Option<RestrictionData>,
    /// The corestriction operator, if one is declared.
    pub corestriction: Option<CorestrictionData>,
}

impl CategoryData {
    /// Wraps a bare category with no extra structure.
    pub fn bare(cat: FinCategory) -> Self {
        CategoryData { cat, monoidal: None, restriction: None, corestriction: None }
    }
}

#[cfg(doctest)]
mod book_doctests {
    //! Keeps the guide's code blocks compiling: every chapter is included
    //! here verbatim, so `cargo test` runs the same snippets the book shows.
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(categories, "../../../book/src/categories.md");
    chapter!(monoidal, "../../../book/src/monoidal.md");
    chapter!(restriction, "../../../book/src/restriction.md");
    chapter!(sconstruction, "../../../book/src/sconstruction.md");
    chapter!(tensor_restriction, "../../../book/src/tensor-restriction.md");
    chapter!(roundtrips, "../../../book/src/roundtrips.md");
    chapter!(file_format, "../../../book/src/file-format.md");
    chapter!(cli, "../../../book/src/cli.md");
}
