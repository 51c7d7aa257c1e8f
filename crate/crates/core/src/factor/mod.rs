//! Atoms, factorizations, length sets and bounded property probes.

mod atoms;
mod enumerate;
pub mod kernel;
mod probe;

pub use atoms::{atoms, atoms_in_box, check_atom, AtomCheck, AtomSet};
pub use enumerate::{
    factorizations, factorizations_over, is_atomic_element, length_set, lengths_of, AtomicVerdict, Factorization,
    FactorizationSet, LengthSet, DEFAULT_MAX_COUNT,
};
pub use probe::{
    default_bound, length_function_check, members_below, probe_property, ProbeBound, ProbeResult, Property,
    DEFAULT_LEX_BOX,
};
