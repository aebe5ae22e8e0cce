//! Undefinability proofs by truth-set saturation.
//!
//! Pick a semantics, a set of seed formulas and a set of connectives.
//! [`closure::saturate`] closes the seeds' truth sets under the connectives;
//! any truth set outside the result belongs to no formula of that fragment.
//!
//! ```
//! use truthset::{parse, prove_undefinable, BooleanSemantics, Connective, Verdict};
//!
//! let sem = BooleanSemantics::new(["p", "q"]).unwrap();
//! let seeds = [parse("p").unwrap(), parse("q").unwrap()];
//! let cert = prove_undefinable(&sem, &parse("p & q").unwrap(), &seeds, &[Connective::Imp], 4096)
//!     .unwrap();
//! assert_eq!(cert.len(), 6);
//! assert_eq!(cert.target.verdict, Verdict::Excluded);
//! ```

pub mod boolean;
pub mod closure;
pub mod error;
pub mod formula;
pub mod kripke;
pub mod render;
pub mod semantics;
pub mod temporal;
pub mod three_valued;

pub use boolean::{bool_equivalent, bool_truth_set, BoolTruthSet, BooleanSemantics};
pub use closure::{
    anchor_naming, prove_undefinable, saturate, search_definition, verify_certificate,
    ClosureCertificate, Verdict, DEFAULT_CAP,
};
pub use error::Error;
pub use formula::{census, enumerate, parse, Connective, Constant, Formula, Signature};
pub use kripke::{search_kripke_witness, KripkeModel, KripkeSemantics, WorldSet};
pub use semantics::{Semantics, SemanticsKind};
pub use temporal::{PeriSet, TemporalSemantics, TemporalValuation};
pub use three_valued::{fuzzy_equivalent, FuzzyTruthSet, ThreeValuedSemantics, Trit};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/formulas.md")]
    struct Formulas;
    #[doc = include_str!("../../../book/src/closure.md")]
    struct Closure;
    #[doc = include_str!("../../../book/src/many-valued.md")]
    struct ManyValued;
    #[doc = include_str!("../../../book/src/kripke.md")]
    struct Kripke;
    #[doc = include_str!("../../../book/src/temporal.md")]
    struct Temporal;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
