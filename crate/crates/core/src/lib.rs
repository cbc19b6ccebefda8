//! Random k-dimensional complexes containing the full (k-1)-skeleton of the
//! simplex on `[n]`, exact reduced cohomology `H^{k-1}(Y; R)` over finite
//! abelian groups, the cochain quantities that control its vanishing, and
//! partial domination of uniform hypergraphs.

pub mod cochain;
pub mod complex;
pub mod domination;
pub mod error;
pub mod group;
pub mod homology;
pub mod simplex;
pub mod unionfind;

pub use cochain::{partition_cochain, Cochain};
pub use complex::{
    derive_seed, expected_isolated, isolated_count, isolated_variance, parse_complex,
    sample_complex, write_complex, Complex, RngSeed,
};
pub use domination::{
    beta_sigma, beta_total, find_partial_dominating_set, gamma, is_connected_family,
    sample_partial_dominating_set, DominationOutcome, UniformFamily,
};
pub use error::{Error, Result};
pub use group::{FiniteAbelianGroup, GroupElement};
pub use homology::{
    brute_force_cohomology_order, coboundary_matrix, cohomology_order, cohomology_report,
    rank_mod_p, smith_normal_form, vanishes, CohomologyReport, IntMatrix, SnfResult,
};
pub use simplex::{
    cofaces, faces_with_signs, rank_simplex, unrank_simplex, CanonicalSimplex, SimplexRank,
    VertexId,
};
