pub mod axioms;
pub mod cli;
pub mod directed;
pub mod error;
pub mod file;
pub mod lattice;
pub mod meadow;
pub mod morphism;
pub mod report;
pub mod ring;
pub mod signature;
pub mod term;

pub use axioms::{
    check_axioms, check_characterizations, find_counterexample, AxiomReport, Characterization,
    CheckMode, Law, Property, Suite,
};
pub use directed::{dl_validate, DirectedLattice};
pub use error::{Error, Result};
pub use lattice::{lattice_validate, Lattice};
pub use meadow::{
    build_meadow, decompose, format_element, BuildMode, Decomposition, InverseWitness,
    InvertibilityStatus, Meadow, MeadowElement,
};
pub use report::{Confidence, ValidationReport, Violation, ViolationKind};
pub use signature::{FiniteAlgebra, MeadowSignature};
pub use term::{eval_term, parse, Environment, Term};
