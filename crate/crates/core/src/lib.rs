//! Salvetti complexes and Garside categories of metrical-hemisphere complexes.
//!
//! The crate is layered bottom-up:
//!
//! * [`complex`]: regular cell complexes as graded face posets.
//! * [`mh`]: nearest/farthest vertex maps and the QMH, LMH, MH properties.
//! * [`salvetti`]: the Salvetti complex and positive paths.
//! * [`arrangement`]: hyperplane arrangements, covectors, dual complexes and circuits.
//! * [`oracle`]: brute-force path equivalence, used as ground truth.
//! * [`garside`]: normal forms, lattice operations, the word problem and presentations.
//! * [`fixtures`]: bundled arrangements and covector data.

pub mod complex;
pub mod mh;

pub use complex::{
    build_complex, parse_complex, polygon, CellComplex, CellDescriptor, CellId, ComplexError,
    Vertex,
};
pub use mh::{
    check_lmh, check_mh, check_qmh, farthest_vertex, find_involution, nearest_vertex, Extremum,
    HemisphereMaps, Involution, MhError, MhReport, QmhReport, Verdict, Witness,
};
pub mod salvetti;
pub use salvetti::{
    build_salvetti, opposite_path, Letter, PositivePath, SalCell, SalvettiComplex, SalvettiError,
};
pub mod arrangement;
pub use arrangement::{
    check_proper, covectors_from_hyperplanes, dual_complex, Arrangement, ArrangementError,
    DualComplex, FaceLattice, Sign, SignVector,
};
pub mod fixtures;
pub mod garside;
pub mod oracle;
pub mod wiring;
pub use fixtures::{FixtureData, FixtureId};
pub use garside::{
    abelianization, make_context, presentation, verify_garside, GarsideContext, GarsideError,
    GarsideReport, GroupoidElement, Morphism, Presentation, Simple,
};
pub use oracle::{OracleElement, OracleError, PathClass, PathOracle};
