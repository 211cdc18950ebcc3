//! Total Milnor invariants of links.
//!
//! A link is given combinatorially, either as a C-complex (clasps with an
//! explicit pairing of endpoints) or as a surface system (one clasp-word per
//! component plus signed triple-point counts). From a surface system one
//! computes `m − t ∈ Λ³Zⁿ`; its class in the quotient by the indeterminacy
//! lattice is the total Milnor invariant.

pub mod error;
pub mod format;
pub mod invariant;
pub mod lattice;
pub mod nilpotent;
pub mod system;
#[cfg(feature = "testing")]
pub mod testing;
pub mod word;

pub use error::{Error, Result};
pub use format::{parse_link_file, serialize_link, serialize_link_file, LinkBody, LinkEntry};
pub use invariant::{
    classical_mu, indeterminacy_vector, invariants_equal, realize_family, total_invariant,
    MilnorClass, TotalMilnorQuotient, WedgeVector,
};
pub use lattice::{cokernel_structure, hnf, snf, Cokernel, IntMatrix};
pub use nilpotent::{
    check_longitude_identity, e_ij_of_word, emit_presentation, f3_equal, longitude_word,
    magnus_mul, magnus_of_word, FreeWord, LongitudeData, MagnusSeries,
};
pub use system::{
    CComplexData, Clasp, ClaspEndpoint, LinkingMatrix, MoveRecord, SurfaceSystemData, Validation,
};
pub use word::{CyclicWord, Letter, LinearWord, Sign};
