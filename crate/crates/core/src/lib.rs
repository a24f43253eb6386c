//! Multipartite entanglement toolkit: dense states, three-qubit invariants,
//! stellar representation, local-spectra polytopes, uniformity measures,
//! code-derived states and matrix product states.

pub mod codes;
pub mod error;
pub mod invariants3;
pub mod io;
pub mod linalg;
pub mod mps;
pub mod parallel;
pub mod polytope;
pub mod sampling;
pub mod state;
pub mod stellar;
pub mod uniformity;

pub use codes::{hamming_distance, knill_laflamme_check, parse_code, KnillLaflamme, LinearCode};
pub use error::{Error, Result};
pub use invariants3::{
    canonical_form3, lu_invariants, slocc_classify3, tangle_report, CanonicalForm3, LuInvariants, SloccClass, SloccLabel,
    TangleReport,
};
pub use linalg::CMatrix;
pub use mps::{
    dmrg_ground_state, overlap, peps_1d, scaling_experiment, Boundary, GroundStateResult, MpsState, NnHamiltonian,
    ScalingSource, ScalingTable,
};
pub use polytope::{local_spectra, polygon_check, realize_spectra3, LocalSpectra, PolygonCheck};
pub use state::{
    apply_local, entanglement_entropy, page_exact_entropy, page_expected_entropy, partial_trace, random_state, schmidt,
    spectra_report, Bipartition, DensityMatrix, LocalMode, PureState, SchmidtDecomposition, SpectraReport,
};
pub use stellar::{classify_sym, Constellation, Star, SymmetricClassification, SymmetricState};
pub use uniformity::{catalog_state, k_uniform_level, q_measure, uniformity_report, PauliString, UniformityReport};
