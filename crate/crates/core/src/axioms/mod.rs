//! Laws of pre-meadows, common meadows and their extensions, checked
//! exhaustively on finite carriers or by seeded sampling.

mod characterize;
mod check;
mod laws;

pub use characterize::{
    check_characterizations, find_counterexample, is_field_by_search, Characterization,
    CharacterizationReport, Property,
};
pub use check::{
    check_axioms, check_laws, holds_everywhere, law_by_name, AxiomReport, CheckMode, LawResult,
    ReportMode, Witness, DEFAULT_SAMPLES, EXHAUSTIVE_LIMIT,
};
pub use laws::{Atom, Law, Suite};
