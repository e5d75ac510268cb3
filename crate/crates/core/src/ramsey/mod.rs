//! Ramsey-side experiments: explicit colorings, exhaustive arrowing, and
//! spectral refutation of 3-goodness.

mod arrow;
mod coloring;
mod spectral;

pub use arrow::{
    check_arrowing, contains_subgraph, ramsey_number, verify_witness, ArrowResult, RamseyResult,
    RamseyStep, MAX_ARROW_ORDER,
};
pub use coloring::{
    goodness_lower_coloring, pentagon_coloring, pentagon_hole, pentagon_parts, pentagon_q,
    pentagon_q_sampled, PentagonQ, TwoColoring, PENTAGON_SUBSET_LIMIT,
};
pub use spectral::{
    bipartite_hole_max, expander_mixing_check, refutation_from_sigma2, refute_3_goodness,
    second_singular_value, HoleResult, MixingMode, MixingReport, RefutationReport, Verdict,
    DENSE_EIGEN_LIMIT, HOLE_EXHAUSTIVE_LIMIT, HOLE_SLACK, MIXING_EXHAUSTIVE_LIMIT,
};
